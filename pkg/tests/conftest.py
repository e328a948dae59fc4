"""Shared fixtures: small named graphs and the mixed random corpus."""

from __future__ import annotations

import numpy as np
import pytest

from netcomm import Graph, GenSpec, generate, zachary

#: one line per acceptance criterion, echoed after the test summary
ACCEPTANCE_LINES: list[str] = []


def record_acceptance(num: int, label: str, ok: bool, detail: str = "") -> str:
    status = "PASS" if ok else "FAIL"
    line = f"[acceptance] criterion {num} ({label}): {status}"
    if detail:
        line += f" -- {detail}"
    ACCEPTANCE_LINES.append(line)
    return line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    return Graph(n, [(0, i) for i in range(1, n)])


def corpus_specs(count: int = 200, max_n: int = 200) -> list[GenSpec]:
    """A deterministic mix of attachment and ring models, all connected."""
    rng = np.random.default_rng(20240915)
    specs = []
    for k in range(count):
        if k % 2 == 0:
            n = int(rng.integers(10, max_n + 1))
            d = int(rng.integers(1, 4))
            n = max(n, d + 1)
            specs.append(GenSpec("pref", n=n, d=d, seed=1000 + k))
        else:
            kk = int(rng.integers(1, 4))
            n = int(rng.integers(max(10, 2 * kk + 1), max_n + 1))
            p = float(rng.uniform(0.0, 0.3))
            specs.append(GenSpec("smallw", n=n, k=kk, p=p, seed=1000 + k))
    return specs


@pytest.fixture(scope="session")
def corpus() -> list[Graph]:
    return [generate(s) for s in corpus_specs()]


@pytest.fixture(scope="session")
def small_corpus(corpus) -> list[Graph]:
    return [g for g in corpus if g.n <= 50]


@pytest.fixture(scope="session")
def karate() -> Graph:
    return zachary()


@pytest.fixture
def p3() -> Graph:
    return path_graph(3)


@pytest.fixture
def k3() -> Graph:
    return complete_graph(3)
