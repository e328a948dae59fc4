"""Degree-moment Gauss-Radau bounds on normalized total communicability.

One symmetric Lanczos step on ``-A`` started from the normalized all-ones
vector produces coefficients that are pure degree statistics: the diagonal
entry is minus the mean degree and the coupling is the degree standard
deviation.  Bordering that one-step tridiagonal with a prescribed node at
either end of a spectrum inclusion interval gives closed-form two-point
quadrature rules that bracket ``1^T exp(A) 1 / n`` from below and above.
The same moment algebra tracks exactly how a single edge removal or
addition shifts the coefficients, so bounds for the modified graph come for
free, without touching the matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Graph

_RADICAND_SLACK = 1e-10


class BoundsError(ValueError):
    """Raised for degenerate quadrature input (coincident nodes, bad moments)."""


@dataclass(frozen=True)
class DegreeMoments:
    """First two degree moments in Lanczos form.

    ``omega1`` is minus the mean adjacency row sum and ``gamma1`` the row-sum
    standard deviation: exactly the coefficients of a single Lanczos step on
    ``-A`` from ``1/sqrt(n)``.  ``gamma1 == 0`` iff the graph is regular.

    ``sum1``/``sum2`` are the exact integer row-sum power sums when known.
    The closed-form moment shifts below are algebraically equivalent to
    updating these sums, and evaluating them that way sidesteps the
    catastrophic cancellation the float form hits when a modification lands
    on (or near) a regular graph, where the variance must vanish exactly.
    """

    omega1: float
    gamma1: float
    n: int
    sum1: int | None = None
    sum2: int | None = None


@dataclass(frozen=True)
class SpectrumInterval:
    """Inclusion interval ``[alpha, beta]`` for the spectrum of ``-A``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha <= self.beta:
            raise BoundsError(f"empty interval [{self.alpha}, {self.beta}]")

    def as_tuple(self) -> tuple[float, float]:
        return (self.alpha, self.beta)


@dataclass(frozen=True)
class BoundsPair:
    """Lower/upper bracket of normalized total communicability."""

    lower: float
    upper: float
    interval: SpectrumInterval
    moments: DegreeMoments


def _moments_from_sums(n: int, s1: int, s2: int) -> DegreeMoments:
    # variance = (n*s2 - s1^2) / n^2 with an exact integer numerator
    num = n * s2 - s1 * s1
    if num < 0:  # impossible for true power sums
        raise BoundsError(f"inconsistent power sums (n={n}, s1={s1}, s2={s2})")
    return DegreeMoments(omega1=-s1 / n, gamma1=math.sqrt(num) / n, n=n,
                         sum1=s1, sum2=s2)


def degree_moments(g: Graph) -> DegreeMoments:
    """Degree moments of ``g`` (row sums, so retained loops count once)."""
    if g.n == 0:
        raise BoundsError("moments undefined for the empty vertex set")
    r = g.row_sums
    s1 = int(round(float(r.sum())))
    s2 = int(round(float((r * r).sum())))
    return _moments_from_sums(g.n, s1, s2)


def phi(x: float, y: float, c: float) -> float:
    """Two-node quadrature of ``exp(-t)`` with nodes ``x != y``.

    Evaluates ``[c (e^{-x} - e^{-y}) + x e^{-y} - y e^{-x}] / (x - y)``,
    the value ``e_1^T exp(-J) e_1`` for any symmetric 2x2 ``J`` with
    eigenvalues ``x, y`` and leading diagonal entry ``c``.
    """
    if abs(x - y) <= 1e-12 * max(1.0, abs(x), abs(y)):
        raise BoundsError(f"coincident quadrature nodes x={x}, y={y}")
    ex, ey = math.exp(-x), math.exp(-y)
    return (c * (ex - ey) + x * ey - y * ex) / (x - y)


def radau_2x2_value(omega1: float, gamma1: float, tau1: float, c: float | None = None) -> float:
    """Gauss-Radau value from one Lanczos step with prescribed node ``tau1``.

    The bordered 2x2 tridiagonal has eigenvalues ``tau1`` and
    ``omega1 + gamma1^2 / (omega1 - tau1)``; its (1,1) entry is ``omega1``,
    so the quadrature value is ``phi`` at those nodes with ``c = omega1``.
    For ``gamma1 == 0`` (regular graphs) the matrix is diagonal and the
    value degenerates to ``exp(-omega1)`` independently of ``tau1``.
    """
    if c is None:
        c = omega1
    if gamma1 < 0:
        raise BoundsError(f"negative coupling gamma1={gamma1}")
    if gamma1 == 0.0:
        return math.exp(-omega1)
    if abs(omega1 - tau1) <= 1e-14 * max(1.0, abs(omega1), abs(tau1)):
        raise BoundsError("prescribed node collides with omega1 while gamma1 > 0")
    other = omega1 + gamma1 * gamma1 / (omega1 - tau1)
    return phi(tau1, other, c)


def tc_bounds(m: DegreeMoments, iv: SpectrumInterval | tuple[float, float]) -> BoundsPair:
    """Bracket ``TC(A)/n`` from degree moments and a ``-A`` spectrum interval.

    The right endpoint prescribed as quadrature node yields the lower bound,
    the left endpoint the upper bound.
    """
    if not isinstance(iv, SpectrumInterval):
        iv = SpectrumInterval(*iv)
    if m.gamma1 == 0.0 and iv.alpha == iv.beta:
        val = math.exp(-m.omega1)
        return BoundsPair(lower=val, upper=val, interval=iv, moments=m)
    lower = radau_2x2_value(m.omega1, m.gamma1, iv.beta)
    upper = radau_2x2_value(m.omega1, m.gamma1, iv.alpha)
    if lower > upper:
        lower, upper = upper, lower  # guard against roundoff inversion
    return BoundsPair(lower=lower, upper=upper, interval=iv, moments=m)


def graph_tc_bounds(g: Graph, iv: SpectrumInterval | tuple[float, float] | None = None) -> BoundsPair:
    """Convenience wrapper computing moments and a default interval from ``g``."""
    from .spectral import spectrum_interval

    m = degree_moments(g)
    if iv is None:
        iv = SpectrumInterval(*spectrum_interval(g))
    return tc_bounds(m, iv)


def _shifted_gamma(gamma1: float, delta: float) -> float:
    rad = gamma1 * gamma1 + delta
    if rad < -_RADICAND_SLACK:
        raise BoundsError(f"negative radicand {rad} in shifted second moment")
    return math.sqrt(max(rad, 0.0))


def downdated_moments(m: DegreeMoments, d_i: float, d_j: float) -> DegreeMoments:
    """Moments after removing edge ``(i, j)``, from pre-removal degrees.

    The mean row sum drops by ``2/n`` and the variance by
    ``(2/n) (d_i + d_j - 1 + 2 omega1 + 2/n)``.  With integer power sums
    available the shift is applied to them exactly; otherwise the float
    form of the same algebra is used.
    """
    n = m.n
    if m.sum1 is not None and m.sum2 is not None:
        di, dj = int(round(d_i)), int(round(d_j))
        return _moments_from_sums(n, m.sum1 - 2, m.sum2 - 2 * (di + dj) + 2)
    omega = m.omega1 + 2.0 / n
    delta = -(2.0 / n) * (d_i + d_j - 1.0 + 2.0 * m.omega1 + 2.0 / n)
    return DegreeMoments(omega1=omega, gamma1=_shifted_gamma(m.gamma1, delta), n=n)


def updated_moments(m: DegreeMoments, d_i: float, d_j: float) -> DegreeMoments:
    """Moments after adding edge ``(i, j)``, from pre-addition degrees."""
    n = m.n
    if m.sum1 is not None and m.sum2 is not None:
        di, dj = int(round(d_i)), int(round(d_j))
        return _moments_from_sums(n, m.sum1 + 2, m.sum2 + 2 * (di + dj) + 2)
    omega = m.omega1 - 2.0 / n
    delta = (2.0 / n) * (d_i + d_j + 1.0 + 2.0 * m.omega1 - 2.0 / n)
    return DegreeMoments(omega1=omega, gamma1=_shifted_gamma(m.gamma1, delta), n=n)


def interval_after(kind: str, iv: SpectrumInterval | tuple[float, float]) -> SpectrumInterval:
    """Spectrum interval of ``-A`` valid after one edge modification.

    Removing an edge can only shrink the spectral radius and raise the
    smallest eigenvalue by at most one in the Weyl sense, so ``[alpha,
    beta+1]`` still encloses the spectrum of the downdated ``-A``;
    symmetrically ``[alpha-1, beta]`` covers an update.
    """
    if not isinstance(iv, SpectrumInterval):
        iv = SpectrumInterval(*iv)
    if kind == "downdate":
        return SpectrumInterval(iv.alpha, iv.beta + 1.0)
    if kind == "update":
        return SpectrumInterval(iv.alpha - 1.0, iv.beta)
    raise ValueError(f"unknown modification kind {kind!r}")


def modified_bounds(m: DegreeMoments, iv: SpectrumInterval | tuple[float, float],
                    kind: str, d_i: float, d_j: float) -> BoundsPair:
    """Bracket ``TC/n`` of the graph after one modification, matrix-free."""
    if kind == "downdate":
        m2 = downdated_moments(m, d_i, d_j)
    elif kind == "update":
        m2 = updated_moments(m, d_i, d_j)
    else:
        raise ValueError(f"unknown modification kind {kind!r}")
    return tc_bounds(m2, interval_after(kind, iv))
