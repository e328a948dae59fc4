"""Named benchmark networks.

The karate-club friendship graph ships with the package (34 nodes, 78
unweighted edges, the canonical sociogram).  The other named networks are
loaded from files the user drops into a data directory (``$NETCOMM_DATA``,
an explicit ``data_dir``, or ``data/`` at the repository root): Matrix
Market ``<name>.mtx`` or whitespace edge lists ``<name>.txt`` / ``.tsv`` /
``.edges``.  Loaders always return the largest connected component of the
underlying simple undirected graph, except where a collection matrix
conventionally retains its unit diagonal.
"""

from __future__ import annotations

import os
from pathlib import Path

from .graph import Graph, is_connected, largest_component
from .io import read_edge_list, read_matrix_market

ZACHARY_EDGES: tuple[tuple[int, int], ...] = (
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 10),
    (0, 11), (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31), (1, 2),
    (1, 3), (1, 7), (1, 13), (1, 17), (1, 19), (1, 21), (1, 30), (2, 3),
    (2, 7), (2, 8), (2, 9), (2, 13), (2, 27), (2, 28), (2, 32), (3, 7),
    (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16), (6, 16),
    (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33),
    (15, 32), (15, 33), (18, 32), (18, 33), (19, 33), (20, 32), (20, 33),
    (22, 32), (22, 33), (23, 25), (23, 27), (23, 29), (23, 32), (23, 33),
    (24, 25), (24, 27), (24, 31), (25, 31), (26, 29), (26, 33), (27, 33),
    (28, 31), (28, 33), (29, 32), (29, 33), (30, 32), (30, 33), (31, 32),
    (31, 33), (32, 33),
)

#: networks addressable by name; all but zachary need a file on disk
NAMED_DATASETS = ("zachary", "sawmill", "social3", "dolphins", "usair97",
                  "minnesota", "as735")

#: datasets whose source matrices keep explicit ones on the diagonal
_KEEP_LOOPS = {"as735"}

_EXTENSIONS = (".mtx", ".mm", ".txt", ".tsv", ".edges")


class DatasetMissingError(FileNotFoundError):
    """A named dataset has no file in the data directory."""


def zachary() -> Graph:
    """The 34-node karate-club friendship network (unweighted)."""
    return Graph(34, ZACHARY_EDGES)


def default_data_dir() -> Path:
    env = os.environ.get("NETCOMM_DATA")
    if env:
        return Path(env)
    # repository checkout: src/netcomm/datasets.py -> <root>/data
    return Path(__file__).resolve().parents[2] / "data"


def _find_file(name: str, data_dir: Path) -> Path | None:
    for ext in _EXTENSIONS:
        p = data_dir / f"{name}{ext}"
        if p.is_file():
            return p
    return None


def load_named(name: str, data_dir: str | Path | None = None) -> Graph:
    """Load a named benchmark network.

    Unknown names raise ``ValueError``; known names without a backing file
    raise :class:`DatasetMissingError` with provisioning instructions.
    """
    key = name.lower()
    if key == "zachary":
        return zachary()
    if key not in NAMED_DATASETS:
        raise ValueError(f"unknown dataset {name!r}; known: {', '.join(NAMED_DATASETS)}")
    base = Path(data_dir) if data_dir is not None else default_data_dir()
    path = _find_file(key, base)
    if path is None:
        raise DatasetMissingError(
            f"dataset {key!r} needs a file {key}.mtx (or .txt/.tsv/.edges) under "
            f"{base}; no copy is bundled, so drop in the adjacency from your own "
            f"copy of the public collection (e.g. the Pajek or SuiteSparse "
            f"distribution of {name})")
    loops = key in _KEEP_LOOPS
    if path.suffix.lower() in (".mtx", ".mm"):
        g = read_matrix_market(path, allow_self_loops=loops)
    else:
        g = read_edge_list(path, allow_self_loops=loops)
    if not is_connected(g):
        g, _ = largest_component(g)
    return g
