"""Reading and writing graphs: Matrix Market coordinate files and TSV edge lists.

Matrix Market uses 1-based indices; TSV edge lists are 0-based.  Readers are
lenient by default (duplicates collapse, values are ignored, self-loops are
dropped unless retained); ``strict=True`` turns irregularities into errors.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, TextIO

from .graph import Graph, GraphError, from_edge_list


def _open(path, mode="r") -> TextIO:
    if hasattr(path, "read") or hasattr(path, "write"):
        return path
    return open(Path(path), mode)


def read_matrix_market(path, *, allow_self_loops: bool = False, strict: bool = False) -> Graph:
    """Read a graph from a Matrix Market ``coordinate`` file.

    The symmetry must be ``symmetric`` or ``general``; for ``general`` files
    both orientations of each edge collapse.  Numeric fields (``real``,
    ``integer``) are accepted and their values discarded; ``pattern`` files
    carry no values.  Entries on the diagonal become retained self-loops
    when ``allow_self_loops`` is set and are otherwise dropped (lenient) or
    rejected (strict).
    """
    fh = _open(path)
    close = fh is not path
    try:
        header = fh.readline()
        if not header.startswith("%%MatrixMarket"):
            raise GraphError("missing %%MatrixMarket header")
        parts = header.strip().split()
        if len(parts) < 5:
            raise GraphError(f"malformed header: {header.strip()!r}")
        _, obj, fmt, field, sym = (p.lower() for p in parts[:5])
        if obj != "matrix" or fmt != "coordinate":
            raise GraphError(f"unsupported Matrix Market type {obj}/{fmt}")
        if field not in ("pattern", "real", "integer"):
            raise GraphError(f"unsupported field {field!r}")
        if sym not in ("symmetric", "general"):
            raise GraphError(f"unsupported symmetry {sym!r}")
        line = fh.readline()
        while line.startswith("%"):
            line = fh.readline()
        dims = line.split()
        if len(dims) != 3:
            raise GraphError(f"malformed size line: {line.strip()!r}")
        nrows, ncols, nnz = (int(x) for x in dims)
        if nrows != ncols:
            raise GraphError(f"adjacency matrix must be square, got {nrows}x{ncols}")
        pairs = []
        count = 0
        for line in fh:
            line = line.strip()
            if not line or line.startswith("%"):
                continue
            toks = line.split()
            if field != "pattern" and len(toks) < 3:
                raise GraphError(f"entry missing value: {line!r}")
            i, j = int(toks[0]), int(toks[1])
            if not (1 <= i <= nrows and 1 <= j <= ncols):
                raise GraphError(f"entry ({i},{j}) out of range")
            if field != "pattern" and float(toks[2]) == 0.0:
                count += 1
                continue  # explicit zero: no edge
            pairs.append((i - 1, j - 1))
            count += 1
        if count != nnz:
            msg = f"expected {nnz} entries, found {count}"
            if strict:
                raise GraphError(msg)
        return from_edge_list(nrows, pairs, allow_self_loops=allow_self_loops,
                              strict=strict and sym == "symmetric")
    finally:
        if close:
            fh.close()


def write_matrix_market(g: Graph, path, comments: Iterable[str] = ()) -> None:
    """Write ``g`` as ``coordinate pattern symmetric`` (lower triangle)."""
    fh = _open(path, "w")
    close = fh is not path
    try:
        fh.write("%%MatrixMarket matrix coordinate pattern symmetric\n")
        for c in comments:
            fh.write(f"% {c}\n")
        entries = [(j + 1, i + 1) for i, j in g.edges]  # row >= col
        entries.extend((v + 1, v + 1) for v in sorted(g.loops))
        entries.sort()
        fh.write(f"{g.n} {g.n} {len(entries)}\n")
        for r, c in entries:
            fh.write(f"{r} {c}\n")
    finally:
        if close:
            fh.close()


def read_edge_list(path, *, n: int | None = None, allow_self_loops: bool = False,
                   strict: bool = False) -> Graph:
    """Read a whitespace-separated 0-based edge list (``#`` comments).

    ``n`` overrides the inferred node count (max index + 1), so trailing
    isolated nodes can be represented.
    """
    fh = _open(path)
    close = fh is not path
    try:
        pairs = []
        hi = -1
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) < 2:
                raise GraphError(f"line {lineno}: expected two indices, got {line!r}")
            i, j = int(toks[0]), int(toks[1])
            if i < 0 or j < 0:
                raise GraphError(f"line {lineno}: negative index")
            pairs.append((i, j))
            hi = max(hi, i, j)
        size = hi + 1 if n is None else int(n)
        if size < hi + 1:
            raise GraphError(f"n={size} too small for max index {hi}")
        return from_edge_list(size, pairs, allow_self_loops=allow_self_loops, strict=strict)
    finally:
        if close:
            fh.close()


def write_edge_list(g: Graph, path, comments: Iterable[str] = ()) -> None:
    """Write the canonical 0-based edge list, one ``i<TAB>j`` pair per line."""
    fh = _open(path, "w")
    close = fh is not path
    try:
        for c in comments:
            fh.write(f"# {c}\n")
        fh.write(f"# n={g.n} m={g.m}\n")
        for v in sorted(g.loops):
            fh.write(f"{v}\t{v}\n")
        for i, j in g.edges:
            fh.write(f"{i}\t{j}\n")
    finally:
        if close:
            fh.close()


def load_graph(path, **kw) -> Graph:
    """Dispatch on extension: ``.mtx`` -> Matrix Market, else edge list."""
    p = Path(path)
    if p.suffix.lower() in (".mtx", ".mm"):
        return read_matrix_market(p, **kw)
    return read_edge_list(p, **kw)
