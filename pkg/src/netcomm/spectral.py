"""Sparse symmetric spectral kernels.

Everything here works on the adjacency matrix of a :class:`~netcomm.graph.Graph`
(or on ``-A`` for the quadrature routines, where the integrand ``exp(-x)``
is completely monotonic and Gauss-type rules give one-sided estimates).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.sparse.linalg as spla

from .graph import Graph

DEFAULT_TOL = 1e-8
ORACLE_CAP = 2000
MAX_KRYLOV = 100


class SpectralError(RuntimeError):
    """Raised on iteration failure (no convergence, breakdown misuse)."""


@dataclass
class LanczosResult:
    """Tridiagonalization data from ``p`` symmetric Lanczos steps.

    ``omega`` holds the diagonal entries (length ``p``), ``gamma`` the
    off-diagonal couplings inside J_p (length ``p-1``, all positive), and
    ``next_gamma`` the residual norm after the last step, i.e. the coupling
    that a (p+1)-th step would use.  ``breakdown`` marks an invariant
    subspace: the run stopped early and ``next_gamma`` is exactly zero,
    so J_p reproduces the Krylov restriction of the operator exactly.
    """

    omega: np.ndarray
    gamma: np.ndarray
    next_gamma: float
    breakdown: bool
    basis: np.ndarray | None = None

    @property
    def steps(self) -> int:
        return self.omega.shape[0]

    def tridiagonal(self) -> np.ndarray:
        p = self.steps
        J = np.zeros((p, p))
        J[np.arange(p), np.arange(p)] = self.omega
        if p > 1:
            J[np.arange(p - 1), np.arange(1, p)] = self.gamma
            J[np.arange(1, p), np.arange(p - 1)] = self.gamma
        return J


def lanczos(
    matvec: Callable[[np.ndarray], np.ndarray],
    v0: np.ndarray,
    steps: int,
    *,
    reorth: bool = True,
    keep_basis: bool = False,
) -> LanczosResult:
    """Run ``steps`` symmetric Lanczos iterations from the unit vector ``v0``.

    With ``reorth`` every new direction is re-orthogonalized against the full
    stored basis (twice, which suffices in floating point); this forces basis
    retention.  Breakdown (residual below a scale-relative threshold) stops
    the run early with ``breakdown=True``.
    """
    v0 = np.asarray(v0, dtype=np.float64)
    nrm = np.linalg.norm(v0)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"v0 must have unit norm, got {nrm}")
    n = v0.shape[0]
    if steps < 1:
        raise ValueError("need at least one step")
    store = reorth or keep_basis
    V = np.empty((n, steps), dtype=np.float64) if store else None
    omega = np.empty(steps)
    gamma = np.empty(steps)
    v_prev = np.zeros(n)
    v = v0 / nrm
    scale = 1.0
    p = steps
    breakdown = False
    for k in range(steps):
        if store:
            V[:, k] = v
        w = matvec(v)
        if k > 0:
            w = w - gamma[k - 1] * v_prev
        omega[k] = float(v @ w)
        w = w - omega[k] * v
        if reorth and k > 0:
            for _ in range(2):
                w = w - V[:, :k + 1] @ (V[:, :k + 1].T @ w)
        g = float(np.linalg.norm(w))
        scale = max(scale, abs(omega[k]), g)
        gamma[k] = g
        if g <= 1e-12 * scale:
            gamma[k] = 0.0
            p = k + 1
            breakdown = True
            break
        v_prev, v = v, w / g
    basis = V[:, :p].copy() if (store and keep_basis) else None
    return LanczosResult(
        omega=omega[:p].copy(),
        gamma=gamma[:p - 1].copy(),
        next_gamma=float(gamma[p - 1]),
        breakdown=breakdown,
        basis=basis,
    )


@dataclass
class EigenpairSet:
    """Leading eigenpairs of an adjacency matrix, sorted descending.

    ``vectors[:, k]`` belongs to ``values[k]``; ``residuals[k]`` is
    ``||A q - lambda q||_2``.  The first vector is sign-fixed to have a
    nonnegative sum (Perron orientation on connected graphs).
    """

    values: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray

    @property
    def lambda1(self) -> float:
        return float(self.values[0])


def top_eigenpairs(
    g: Graph,
    t: int = 1,
    *,
    tol: float = DEFAULT_TOL,
    dense_threshold: int = 500,
) -> EigenpairSet:
    """Compute the ``t`` algebraically largest adjacency eigenpairs.

    Small graphs go through a dense solve; larger ones through implicitly
    restarted Lanczos with a fixed starting vector so repeated runs agree to
    machine precision.  A residual exceeding ``tol * max(1, |lambda_1|)``
    raises; a (near) degenerate leading pair only warns, since ranking by
    the Perron vector remains well defined for the connected inputs used
    downstream.
    """
    n = g.n
    if not 1 <= t <= max(n, 1):
        raise ValueError(f"t={t} out of range for n={n}")
    A = g.adjacency()
    if n <= dense_threshold or t >= n - 1:
        w, Q = np.linalg.eigh(A.toarray())
        idx = np.argsort(w)[::-1][:t]
        values = w[idx]
        vectors = Q[:, idx]
    else:
        v0 = np.full(n, 1.0 / np.sqrt(n))
        try:
            w, Q = spla.eigsh(A, k=t, which="LA", v0=v0, maxiter=max(2000, 40 * t))
        except spla.ArpackNoConvergence as exc:  # pragma: no cover - rare
            raise SpectralError(f"eigensolver did not converge: {exc}") from exc
        idx = np.argsort(w)[::-1]
        values = w[idx]
        vectors = Q[:, idx]
    scale = max(1.0, abs(values[0]))
    residuals = np.array([
        float(np.linalg.norm(A @ vectors[:, k] - values[k] * vectors[:, k]))
        for k in range(t)
    ])
    if np.any(residuals > max(tol, 1e-10) * scale * 10):
        raise SpectralError(f"eigenpair residuals too large: {residuals}")
    # deterministic sign: each vector's largest-magnitude entry positive,
    # leading vector oriented by its sum (Perron direction)
    for k in range(t):
        q = vectors[:, k]
        pivot = np.argmax(np.abs(q))
        if q[pivot] < 0:
            vectors[:, k] = -q
    if vectors[:, 0].sum() < 0:
        vectors[:, 0] = -vectors[:, 0]
    if t >= 2 and abs(values[0] - values[1]) <= 1e-10 * scale:
        warnings.warn("near-degenerate leading eigenvalues; Perron ranking may be ambiguous",
                      RuntimeWarning, stacklevel=2)
    return EigenpairSet(values=values, vectors=vectors, residuals=residuals)


def expm_action(
    g: Graph,
    v: np.ndarray,
    *,
    tol: float = DEFAULT_TOL,
    max_dim: int = MAX_KRYLOV,
) -> np.ndarray:
    """Apply the matrix exponential of the adjacency matrix: ``exp(A) v``.

    Builds a Krylov subspace by symmetric Lanczos with full
    reorthogonalization and returns ``||v|| V_p exp(T_p) e_1``, growing the
    subspace until the relative change between successive approximants drops
    below ``tol``.  Invariant-subspace breakdown yields the exact result.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (g.n,):
        raise ValueError(f"vector has shape {v.shape}, expected ({g.n},)")
    beta0 = float(np.linalg.norm(v))
    if beta0 == 0.0 or g.n == 0:
        return np.zeros_like(v)
    A = g.adjacency()
    n = g.n
    cap = min(max_dim, n)
    V = np.empty((n, cap))
    alpha = np.empty(cap)
    beta = np.empty(cap)
    V[:, 0] = v / beta0
    prev = None
    p = 0
    exhausted = False
    for k in range(cap):
        w = A @ V[:, k]
        if k > 0:
            w -= beta[k - 1] * V[:, k - 1]
        alpha[k] = float(V[:, k] @ w)
        w -= alpha[k] * V[:, k]
        for _ in range(2):
            w -= V[:, :k + 1] @ (V[:, :k + 1].T @ w)
        b = float(np.linalg.norm(w))
        beta[k] = b
        p = k + 1
        T = np.diag(alpha[:p])
        if p > 1:
            od = beta[:p - 1]
            T[np.arange(p - 1), np.arange(1, p)] = od
            T[np.arange(1, p), np.arange(p - 1)] = od
        theta, U = np.linalg.eigh(T)
        coeff = U @ (np.exp(theta) * U[0, :])
        approx = beta0 * (V[:, :p] @ coeff)
        if prev is not None:
            diff = float(np.linalg.norm(approx - prev))
            if diff <= tol * max(float(np.linalg.norm(approx)), 1e-300):
                return approx
        prev = approx
        if b <= 1e-12 * max(1.0, float(np.max(np.abs(alpha[:p]))), float(np.max(beta[:p]))):
            exhausted = True
            break
        if p < cap:
            V[:, p] = w / b
    if exhausted or p >= n:
        return prev
    raise SpectralError(f"expm_action: no convergence within {cap} Krylov steps (tol={tol})")


def dense_expm_oracle(g: Graph, *, cap: int = ORACLE_CAP) -> np.ndarray:
    """Dense ``exp(A)`` via full symmetric eigendecomposition.

    Reference-quality but O(n^3); refuses graphs above ``cap`` nodes.
    """
    if g.n > cap:
        raise ValueError(f"dense oracle capped at n={cap}, got n={g.n}")
    if g.n == 0:
        return np.zeros((0, 0))
    w, Q = np.linalg.eigh(g.adjacency().toarray())
    E = (Q * np.exp(w)) @ Q.T
    return (E + E.T) / 2.0


@dataclass
class DiagEstimate:
    """Bracketing estimates of one diagonal entry of ``exp(A)``.

    ``lower <= (exp A)_{ii} <= upper`` up to quadrature-node validity;
    ``exact`` marks Lanczos breakdown, where both ends collapse to the true
    value.  ``estimate`` is the midpoint (or the exact value).
    """

    node: int
    lower: float
    upper: float
    exact: bool = False

    @property
    def estimate(self) -> float:
        return 0.5 * (self.lower + self.upper)


def _radau_from_lanczos(res: LanczosResult, tau: float) -> float:
    """Gauss-Radau value of ``exp(-x)`` with prescribed node ``tau``.

    Borders J_p with the Golub-Meurant modified last diagonal so that
    ``tau`` becomes an eigenvalue of the extended tridiagonal matrix, then
    evaluates the quadrature from the extended eigen decomposition.
    """
    p = res.steps
    J = res.tridiagonal()
    gp = res.next_gamma
    if gp <= 0.0:
        raise SpectralError("cannot border after breakdown; value is already exact")
    # solve (J_p - tau I) y = gamma_p^2 e_p for the modified corner entry
    rhs = np.zeros(p)
    rhs[p - 1] = gp * gp
    try:
        y = np.linalg.solve(J - tau * np.eye(p), rhs)
    except np.linalg.LinAlgError:
        y = np.linalg.solve(J - (tau + 1e-12 * max(1.0, abs(tau))) * np.eye(p), rhs)
    omega_ext = tau + y[p - 1]
    Jx = np.zeros((p + 1, p + 1))
    Jx[:p, :p] = J
    Jx[p, p] = omega_ext
    Jx[p - 1, p] = Jx[p, p - 1] = gp
    theta, U = np.linalg.eigh(Jx)
    return float(np.sum(U[0, :] ** 2 * np.exp(-theta)))


def diag_expm_estimate(
    g: Graph,
    nodes: Sequence[int] | None = None,
    *,
    quad_steps: int = 5,
    interval: tuple[float, float] | None = None,
) -> list[DiagEstimate]:
    """Bracket ``(exp A)_{ii}`` for each requested node by Gauss-Radau rules.

    Runs ``quad_steps`` Lanczos steps on ``-A`` from ``e_i``, then borders
    the tridiagonal once with each end of ``interval`` (an inclusion
    interval for the spectrum of ``-A``) as prescribed node: the left end
    gives the upper estimate, the right end the lower one.  Breakdown short
    of the requested steps means ``e_i`` spans an invariant subspace and the
    quadrature is exact.
    """
    if nodes is None:
        nodes = range(g.n)
    if interval is None:
        interval = spectrum_interval(g)
    a, b = interval
    A = g.adjacency()
    out = []
    for i in nodes:
        e = np.zeros(g.n)
        e[int(i)] = 1.0
        res = lanczos(lambda x: -(A @ x), e, quad_steps, reorth=False)
        if res.breakdown:
            theta, U = np.linalg.eigh(res.tridiagonal())
            val = float(np.sum(U[0, :] ** 2 * np.exp(-theta)))
            out.append(DiagEstimate(node=int(i), lower=val, upper=val, exact=True))
            continue
        upper = _radau_from_lanczos(res, a)
        lower = _radau_from_lanczos(res, b)
        out.append(DiagEstimate(node=int(i), lower=lower, upper=upper))
    return out


def spectrum_interval(g: Graph, *, pad: float = 1e-8) -> tuple[float, float]:
    """An inclusion interval ``[a, b]`` for the spectrum of ``-A``.

    Uses ``a = -(lambda_1 + pad')`` from the leading eigenvalue and the
    Gershgorin bound ``b = max row sum`` (every adjacency eigenvalue is at
    least ``-lambda_1`` in magnitude for symmetric nonnegative A, and at
    most the maximum row sum).
    """
    if g.n == 0:
        return (0.0, 0.0)
    if g.m == 0:
        b = 1.0 if g.loops else 0.0
        return (-b, b)
    lam1 = top_eigenpairs(g, 1).lambda1
    pad_abs = pad * max(1.0, lam1)
    b = float(np.max(g.row_sums))
    return (-(lam1 + pad_abs), b)
