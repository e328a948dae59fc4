import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcomm import (BoundsError, DegreeMoments, SpectrumInterval,
                     degree_moments, downdate_edge, downdated_moments,
                     graph_tc_bounds, interval_after, modified_bounds, phi,
                     radau_2x2_value, tc_bounds, total_communicability,
                     update_edge, updated_moments)
from conftest import complete_graph, cycle_graph, path_graph, star_graph
from test_graph import graphs

# one-step coefficients of the 3-path: mean degree 4/3, std sqrt(2)/3
P3_OMEGA = -4.0 / 3.0
P3_GAMMA = math.sqrt(2.0) / 3.0
# Gauss-Radau values for the 3-path on [-3/2, 3/2], derived by hand:
# prescribing -3/2 makes the free node land exactly at 0, so the upper bound
# collapses to 1 + (8/9)(e^{3/2} - 1); prescribing 3/2 puts it at -24/17
P3_UPPER = 1.0 + (8.0 / 9.0) * (math.exp(1.5) - 1.0)
P3_LOWER = 3.9986765474022468


class TestMoments:
    def test_path3(self, p3):
        m = degree_moments(p3)
        assert m.omega1 == pytest.approx(P3_OMEGA, abs=1e-15)
        assert m.gamma1 == pytest.approx(P3_GAMMA, abs=1e-15)
        assert (m.sum1, m.sum2) == (4, 6)

    def test_regular_gamma_zero(self):
        for g in (cycle_graph(6), complete_graph(5)):
            assert degree_moments(g).gamma1 == 0.0

    def test_loops_count_once(self):
        from netcomm import from_edge_list
        g = from_edge_list(3, [(0, 1), (2, 2)], allow_self_loops=True)
        m = degree_moments(g)
        assert m.sum1 == 3  # row sums 1, 1, 1
        assert m.gamma1 == 0.0

    @given(graphs(min_n=1, max_n=14))
    @settings(max_examples=40, deadline=None)
    def test_matches_row_sum_statistics(self, g):
        m = degree_moments(g)
        r = g.row_sums
        assert m.omega1 == pytest.approx(-float(np.mean(r)), abs=1e-12)
        assert m.gamma1 == pytest.approx(float(np.std(r)), abs=1e-12)


class TestPhi:
    def test_symmetric_in_nodes(self):
        assert phi(0.3, -1.2, -0.5) == pytest.approx(phi(-1.2, 0.3, -0.5), abs=1e-15)

    def test_weight_collapses_at_node(self):
        # c equal to one node puts all weight there: phi = exp(-x)
        for x, y in ((0.5, -1.0), (-2.0, 3.0)):
            assert phi(x, y, x) == pytest.approx(math.exp(-x), abs=1e-12)

    def test_coincident_nodes_raise(self):
        with pytest.raises(BoundsError):
            phi(1.0, 1.0 + 1e-15, 0.0)

    def test_convex_combination_property(self):
        # phi is a convex combination of exp(-x), exp(-y) when c lies between
        x, y, c = -1.0, 2.0, 0.5
        val = phi(x, y, c)
        assert min(math.exp(-x), math.exp(-y)) <= val <= max(math.exp(-x), math.exp(-y))


class TestRadau2x2:
    def test_matches_bordered_eigendecomposition(self):
        omega1, gamma1, tau = -1.7, 0.8, 2.5
        other = omega1 + gamma1 ** 2 / (omega1 - tau)
        # the bordered 2x2 with eigenvalues {tau, other}: trace fixes J[1,1]
        J = np.array([[omega1, gamma1], [gamma1, tau + other - omega1]])
        w, U = np.linalg.eigh(J)
        direct = float(np.sum(U[0, :] ** 2 * np.exp(-w)))
        assert radau_2x2_value(omega1, gamma1, tau) == pytest.approx(direct, abs=1e-12)

    def test_regular_degenerates(self):
        assert radau_2x2_value(-2.0, 0.0, 99.0) == pytest.approx(math.exp(2.0), abs=1e-15)

    def test_node_collision_raises(self):
        with pytest.raises(BoundsError):
            radau_2x2_value(-1.0, 0.5, -1.0)

    def test_negative_coupling_raises(self):
        with pytest.raises(BoundsError):
            radau_2x2_value(-1.0, -0.1, 2.0)


class TestTcBounds:
    def test_path3_closed_forms(self, p3):
        pair = tc_bounds(degree_moments(p3), (-1.5, 1.5))
        assert pair.upper == pytest.approx(P3_UPPER, abs=1e-12)
        assert pair.lower == pytest.approx(P3_LOWER, abs=1e-12)
        _, tcn = total_communicability(p3)
        assert pair.lower <= tcn <= pair.upper

    def test_regular_collapse_to_exact(self):
        # vertex-transitive graphs: TC/n = e^d exactly, bracket width zero
        for g, d in ((cycle_graph(5), 2), (complete_graph(4), 3)):
            pair = graph_tc_bounds(g)
            _, tcn = total_communicability(g)
            assert pair.lower == pytest.approx(math.exp(d), abs=1e-12)
            assert pair.upper == pytest.approx(math.exp(d), abs=1e-12)
            assert tcn == pytest.approx(math.exp(d), rel=1e-10)

    def test_brackets_on_corpus_sample(self, corpus):
        for g in corpus[:25]:
            pair = graph_tc_bounds(g)
            _, tcn = total_communicability(g)
            assert pair.lower <= tcn * (1 + 1e-10)
            assert tcn <= pair.upper * (1 + 1e-10)

    def test_interval_validation(self):
        with pytest.raises(BoundsError):
            SpectrumInterval(2.0, 1.0)


class TestMomentShifts:
    def test_downdate_exact(self, small_corpus):
        for g in small_corpus[:10]:
            m = degree_moments(g)
            r = g.row_sums
            for e in g.edges:
                got = downdated_moments(m, r[e.i], r[e.j])
                want = degree_moments(downdate_edge(g, e))
                assert got.omega1 == pytest.approx(want.omega1, abs=1e-13)
                assert got.gamma1 == pytest.approx(want.gamma1, abs=1e-13)

    def test_update_exact(self, small_corpus):
        for g in small_corpus[:10]:
            m = degree_moments(g)
            r = g.row_sums
            for e in g.virtual_edges():
                got = updated_moments(m, r[e.i], r[e.j])
                want = degree_moments(update_edge(g, e))
                assert got.omega1 == pytest.approx(want.omega1, abs=1e-13)
                assert got.gamma1 == pytest.approx(want.gamma1, abs=1e-13)

    def test_update_onto_regular_is_exact_zero(self, p3):
        # adding (0, 2) completes the triangle: variance must vanish exactly
        m = updated_moments(degree_moments(p3), 1, 1)
        assert m.gamma1 == 0.0

    def test_float_fallback_close(self, karate):
        m = degree_moments(karate)
        bare = DegreeMoments(omega1=m.omega1, gamma1=m.gamma1, n=m.n)
        d = karate.degrees
        e = karate.edges[0]
        got = downdated_moments(bare, d[e.i], d[e.j])
        want = degree_moments(downdate_edge(karate, e))
        assert got.gamma1 == pytest.approx(want.gamma1, abs=1e-7)

    def test_radicand_guard(self):
        bare = DegreeMoments(omega1=-1.0, gamma1=0.0, n=4)
        with pytest.raises(BoundsError):
            downdated_moments(bare, 50, 50)


class TestIntervalAfter:
    def test_downdate_widens_right(self):
        iv = interval_after("downdate", (-3.0, 4.0))
        assert (iv.alpha, iv.beta) == (-3.0, 5.0)

    def test_update_widens_left(self):
        iv = interval_after("update", (-3.0, 4.0))
        assert (iv.alpha, iv.beta) == (-4.0, 4.0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            interval_after("mangle", (-1.0, 1.0))


class TestModifiedBounds:
    def test_downdate_bracket(self, karate):
        m = degree_moments(karate)
        iv = graph_tc_bounds(karate).interval
        d = karate.degrees
        for e in list(karate.edges)[:10]:
            pair = modified_bounds(m, iv, "downdate", d[e.i], d[e.j])
            _, tcn = total_communicability(downdate_edge(karate, e))
            assert pair.lower <= tcn <= pair.upper

    def test_update_bracket(self, karate):
        m = degree_moments(karate)
        iv = graph_tc_bounds(karate).interval
        d = karate.degrees
        for e in karate.virtual_edges()[:10]:
            pair = modified_bounds(m, iv, "update", d[e.i], d[e.j])
            _, tcn = total_communicability(update_edge(karate, e))
            assert pair.lower <= tcn <= pair.upper
