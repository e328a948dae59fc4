import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcomm import (Graph, SpectralError, degree_moments, dense_expm_oracle,
                     diag_expm_estimate, expm_action, lanczos,
                     spectrum_interval, top_eigenpairs)
from conftest import complete_graph, cycle_graph, path_graph, star_graph
from test_graph import graphs

S2 = math.sqrt(2)

# closed-form exp(A) for the 3-path via exp(A) = I + A sinh(s2)/s2 + A^2 (cosh(s2)-1)/2
P3_EXPM = np.array([
    [1 + (math.cosh(S2) - 1) / 2, math.sinh(S2) / S2, (math.cosh(S2) - 1) / 2],
    [math.sinh(S2) / S2, math.cosh(S2), math.sinh(S2) / S2],
    [(math.cosh(S2) - 1) / 2, math.sinh(S2) / S2, 1 + (math.cosh(S2) - 1) / 2],
])


class TestLanczos:
    def test_one_step_reproduces_degree_moments(self, karate):
        A = karate.adjacency()
        v0 = np.full(karate.n, 1 / math.sqrt(karate.n))
        res = lanczos(lambda x: -(A @ x), v0, 1)
        m = degree_moments(karate)
        assert res.omega[0] == pytest.approx(m.omega1, abs=1e-12)
        assert res.next_gamma == pytest.approx(m.gamma1, abs=1e-12)

    @given(graphs(min_n=2, max_n=14))
    @settings(max_examples=40, deadline=None)
    def test_moment_identity_random(self, g):
        A = g.adjacency()
        v0 = np.full(g.n, 1 / math.sqrt(g.n))
        res = lanczos(lambda x: -(A @ x), v0, 1)
        m = degree_moments(g)
        assert res.omega[0] == pytest.approx(m.omega1, abs=1e-10)
        assert res.next_gamma == pytest.approx(m.gamma1, abs=1e-10)

    def test_tridiagonal_matches_projection(self):
        g = path_graph(8)
        A = g.adjacency()
        v0 = np.zeros(8)
        v0[0] = 1.0
        res = lanczos(lambda x: A @ x, v0, 4, keep_basis=True)
        V = res.basis
        J = res.tridiagonal()
        assert np.allclose(V.T @ V, np.eye(4), atol=1e-12)
        assert np.allclose(V.T @ (A @ V), J, atol=1e-10)

    def test_breakdown_on_invariant_subspace(self, k3):
        # ones spans a 1-d invariant subspace of the complete graph
        A = k3.adjacency()
        v0 = np.full(3, 1 / math.sqrt(3))
        res = lanczos(lambda x: A @ x, v0, 5)
        assert res.breakdown and res.steps == 1
        assert res.omega[0] == pytest.approx(2.0)
        assert res.next_gamma == 0.0

    def test_rejects_nonunit_start(self):
        g = path_graph(3)
        with pytest.raises(ValueError):
            lanczos(lambda x: g.adjacency() @ x, np.ones(3), 2)

    def test_gamma_positive_until_breakdown(self, karate):
        A = karate.adjacency()
        v0 = np.full(34, 1 / math.sqrt(34))
        res = lanczos(lambda x: A @ x, v0, 10)
        assert np.all(res.gamma > 0)


class TestTopEigenpairs:
    def test_star_closed_form(self):
        pairs = top_eigenpairs(star_graph(4), 1)
        assert pairs.lambda1 == pytest.approx(math.sqrt(3), abs=1e-12)
        q = pairs.vectors[:, 0]
        assert q[0] == pytest.approx(1 / math.sqrt(2), abs=1e-10)
        assert np.allclose(q[1:], 1 / math.sqrt(6), atol=1e-10)

    def test_cycle_perron_uniform(self):
        pairs = top_eigenpairs(cycle_graph(5), 2)
        assert pairs.lambda1 == pytest.approx(2.0, abs=1e-12)
        assert np.allclose(pairs.vectors[:, 0], 1 / math.sqrt(5), atol=1e-10)
        assert pairs.values[1] == pytest.approx(2 * math.cos(2 * math.pi / 5), abs=1e-10)

    def test_sparse_path_matches_dense(self):
        from netcomm.generators import GenSpec, generate
        g = generate(GenSpec("pref", n=700, d=2, seed=4))
        sparse = top_eigenpairs(g, 3)
        w = np.linalg.eigvalsh(g.adjacency().toarray())
        assert np.allclose(sparse.values, w[::-1][:3], atol=1e-8)
        assert np.all(sparse.residuals < 1e-6)

    def test_perron_vector_positive_on_connected(self, corpus):
        for g in corpus[:12]:
            q = top_eigenpairs(g, 1).vectors[:, 0]
            assert np.all(q > 0)

    def test_degenerate_warns(self):
        twin = Graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
        with pytest.warns(RuntimeWarning):
            top_eigenpairs(twin, 2)

    def test_t_out_of_range(self, p3):
        with pytest.raises(ValueError):
            top_eigenpairs(p3, 4)

    def test_residuals_reported(self, karate):
        pairs = top_eigenpairs(karate, 2)
        A = karate.adjacency()
        for k in range(2):
            r = np.linalg.norm(A @ pairs.vectors[:, k] - pairs.values[k] * pairs.vectors[:, k])
            assert pairs.residuals[k] == pytest.approx(r, abs=1e-12)


class TestExpmAction:
    def test_path3_closed_form(self, p3):
        got = expm_action(p3, np.ones(3))
        assert np.allclose(got, P3_EXPM.sum(axis=1), atol=1e-10)

    def test_k2_closed_form(self):
        g = path_graph(2)
        got = expm_action(g, np.array([1.0, 0.0]))
        assert got[0] == pytest.approx(math.cosh(1), abs=1e-12)
        assert got[1] == pytest.approx(math.sinh(1), abs=1e-12)

    def test_zero_vector(self, karate):
        assert np.array_equal(expm_action(karate, np.zeros(34)), np.zeros(34))

    def test_shape_mismatch(self, karate):
        with pytest.raises(ValueError):
            expm_action(karate, np.ones(7))

    def test_empty_graph_identity(self):
        g = Graph(6, [])
        v = np.arange(6, dtype=float)
        assert np.allclose(expm_action(g, v), v, atol=1e-14)

    def test_matches_oracle_on_corpus(self, corpus):
        rng = np.random.default_rng(7)
        for g in corpus[:20]:
            v = rng.standard_normal(g.n)
            exact = dense_expm_oracle(g) @ v
            got = expm_action(g, v)
            assert np.linalg.norm(got - exact) <= 1e-7 * np.linalg.norm(exact)

    def test_respects_max_dim(self):
        from netcomm.generators import GenSpec, generate
        g = generate(GenSpec("pref", n=400, d=2, seed=11))
        with pytest.raises(SpectralError):
            expm_action(g, np.ones(400), tol=1e-30, max_dim=3)

    def test_loop_diagonal_contributes(self):
        from netcomm import from_edge_list
        g = from_edge_list(2, [(0, 1), (0, 0)], allow_self_loops=True)
        A = np.array([[1.0, 1.0], [1.0, 0.0]])
        w, Q = np.linalg.eigh(A)
        exact = (Q * np.exp(w)) @ Q.T @ np.ones(2)
        assert np.allclose(expm_action(g, np.ones(2)), exact, atol=1e-10)


class TestDenseOracle:
    def test_path3(self, p3):
        assert np.allclose(dense_expm_oracle(p3), P3_EXPM, atol=1e-12)

    def test_complete3(self, k3):
        E = dense_expm_oracle(k3)
        d = (math.exp(2) + 2 * math.exp(-1)) / 3
        o = (math.exp(2) - math.exp(-1)) / 3
        assert np.allclose(np.diag(E), d, atol=1e-12)
        assert E[0, 1] == pytest.approx(o, abs=1e-12)

    def test_cap_enforced(self):
        g = Graph(10, [])
        with pytest.raises(ValueError):
            dense_expm_oracle(g, cap=5)

    def test_symmetric_output(self, karate):
        E = dense_expm_oracle(karate)
        assert np.array_equal(E, E.T)


class TestDiagEstimates:
    def test_brackets_contain_truth(self, corpus):
        for g in corpus[:8]:
            exact = np.diag(dense_expm_oracle(g))
            for est in diag_expm_estimate(g, quad_steps=5):
                assert est.lower <= exact[est.node] + 1e-8
                assert exact[est.node] <= est.upper + 1e-8

    def test_lower_bound_at_least_one(self, corpus):
        # (exp A)_{ii} >= exp(A_{ii}) = 1 by Jensen; the quadrature keeps that
        for g in corpus[:8]:
            for est in diag_expm_estimate(g, quad_steps=5):
                assert est.lower >= 1.0 - 1e-9

    def test_breakdown_exact_on_complete(self, k3):
        ests = diag_expm_estimate(k3, quad_steps=5)
        d = (math.exp(2) + 2 * math.exp(-1)) / 3
        for est in ests:
            assert est.exact
            assert est.estimate == pytest.approx(d, abs=1e-10)

    def test_subset_of_nodes(self, karate):
        ests = diag_expm_estimate(karate, nodes=[0, 33], quad_steps=5)
        assert [e.node for e in ests] == [0, 33]

    def test_more_steps_tighter(self, karate):
        wide = diag_expm_estimate(karate, nodes=[0], quad_steps=2)[0]
        tight = diag_expm_estimate(karate, nodes=[0], quad_steps=6)[0]
        assert tight.upper - tight.lower <= wide.upper - wide.lower + 1e-12


class TestSpectrumInterval:
    def test_contains_spectrum(self, corpus):
        for g in corpus[:10]:
            a, b = spectrum_interval(g)
            w = np.linalg.eigvalsh(g.adjacency().toarray())
            assert a <= -w[-1] and -w[0] <= b

    def test_empty_graph(self):
        assert spectrum_interval(Graph(4, [])) == (0.0, 0.0)
