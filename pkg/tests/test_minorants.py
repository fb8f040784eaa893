import math
import random

import pytest

from isobound import (
    Breakpoint,
    ConvexMinorant,
    Graph,
    build_minorant,
    cartesian_product,
    generate,
    parse_product_spec,
    petersen,
    profile_bruteforce,
    profile_closed_form,
    regular_summary,
)
from isobound.minorants import LEFT_INFINITE

# Frozen golden values, derived independently before the library existed.
K3_AT_LOG2 = 0.7381404928570852
P5_SLOPES = (-0.7213475204444817, -0.5456783339686457)
C5_Y_INTERCEPT = 1.75647079736603
C5_CHORD_SLOPE = -1.0913566679372915
PETERSEN_Y_INTERCEPT = 2.8613531161467862


def path_minorant(m):
    return build_minorant(profile_closed_form("path", m))


class TestHullShapes:
    @pytest.mark.parametrize("m", range(3, 11))
    def test_complete_graph_is_one_chord(self, m):
        psi = build_minorant(profile_closed_form("complete", m))
        assert [b.k for b in psi.breakpoints] == [1, m]
        assert psi.breakpoints[0].y == float(m - 1)
        assert psi.breakpoints[-1].y == 0.0
        rng = random.Random(m)
        for _ in range(10):
            x = rng.uniform(0, psi.domain_end)
            expected = (m - 1) * (1 - x / math.log(m))
            assert psi.evaluate(x) == pytest.approx(expected, abs=1e-12)

    def test_path3(self):
        psi = path_minorant(3)
        assert [(b.k, b.y) for b in psi.breakpoints] == [(1, 1.0), (3, 0.0)]
        assert psi.domain_end == math.log(3)

    def test_path5(self):
        psi = path_minorant(5)
        assert [(b.k, b.y) for b in psi.breakpoints] == [(1, 1.0), (2, 0.5), (5, 0.0)]
        assert psi.slopes() == pytest.approx(P5_SLOPES, rel=1e-15)

    def test_k3_evaluate_golden(self):
        psi = build_minorant(profile_closed_form("complete", 3))
        assert psi.evaluate(math.log(2)) == pytest.approx(K3_AT_LOG2, rel=1e-14)

    @pytest.mark.parametrize("m", range(3, 12))
    def test_cycle_doubles_path(self, m):
        pp = path_minorant(m)
        cc = build_minorant(profile_closed_form("cycle", m))
        assert [b.k for b in cc.breakpoints] == [b.k for b in pp.breakpoints]
        for bc, bp in zip(cc.breakpoints, pp.breakpoints):
            assert bc.y == pytest.approx(2 * bp.y, abs=1e-15)

    def test_collinear_points_merge(self):
        # The 4-cube's hull points (log 2^t, 4 - t) are all collinear with
        # slope -1/log 2, so the hull must collapse to a single chord.
        q4 = cartesian_product(parse_product_spec("complete:2^4"))
        psi = build_minorant(profile_bruteforce(q4))
        assert [b.k for b in psi.breakpoints] == [1, 16]
        assert psi.evaluate(math.log(8)) == pytest.approx(1.0, abs=1e-9)


class TestEvaluate:
    def test_breakpoint_values(self):
        psi = path_minorant(5)
        for b in psi.breakpoints:
            assert psi.evaluate(b.x) == pytest.approx(b.y, abs=1e-15)

    def test_domain_endpoints_with_tolerance(self):
        psi = path_minorant(5)
        assert psi.evaluate(0.0) == 1.0
        assert psi.evaluate(-1e-13) == 1.0
        assert psi.evaluate(psi.domain_end + 1e-13) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("x", [-1e-3, math.log(5) + 1e-3])
    def test_out_of_domain(self, x):
        with pytest.raises(ValueError, match="outside"):
            path_minorant(5).evaluate(x)


class TestHullInvariants:
    def graphs(self):
        yield petersen()
        for fam, m in [("path", 7), ("cycle", 9), ("complete", 6)]:
            yield generate(fam, m)
        rng = random.Random(7)
        for _ in range(3):
            m = rng.randint(4, 9)
            edges = [(v, rng.randrange(v)) for v in range(1, m)]
            edges += [(0, m - 1)]
            yield Graph.from_edges(m, edges)

    def test_minorant_and_convexity(self):
        for g in self.graphs():
            prof = profile_bruteforce(g)
            psi = build_minorant(prof)
            # below every profile point
            for e in prof.entries:
                assert psi.evaluate(math.log(e.k)) <= float(e.ratio) + 1e-12
            # convex: slopes strictly increase across breakpoints
            slopes = psi.slopes()
            assert all(s2 > s1 for s1, s2 in zip(slopes, slopes[1:]))
            # maximal: every breakpoint touches its profile point
            for b in psi.breakpoints:
                assert b.y == float(prof.ratio(b.k))
            # pinned endpoints
            assert psi.breakpoints[0].k == 1
            assert psi.breakpoints[-1].k == g.vertex_count
            assert psi.breakpoints[-1].y == 0.0

    def test_raising_any_vertex_breaks_minorance(self):
        prof = profile_bruteforce(petersen())
        psi = build_minorant(prof)
        for b in psi.breakpoints:
            assert b.y + 1e-6 > float(prof.ratio(b.k))


class TestDerivatives:
    def test_path5_all_knots(self):
        psi = path_minorant(5)
        s1, s2 = P5_SLOPES
        left, right = psi.one_sided_derivatives(0.0)
        assert left == LEFT_INFINITE
        assert right == pytest.approx(s1, rel=1e-15)
        left, right = psi.one_sided_derivatives(math.log(2))
        assert (left, right) == pytest.approx((s1, s2), rel=1e-15)
        left, right = psi.one_sided_derivatives(psi.domain_end)
        assert left == pytest.approx(s2, rel=1e-15)
        assert right == 0.0

    def test_interior_point(self):
        psi = path_minorant(5)
        left, right = psi.one_sided_derivatives(1.0)
        assert left == right == pytest.approx(P5_SLOPES[1], rel=1e-15)

    def test_segments_widths_cover_domain(self):
        psi = build_minorant(profile_bruteforce(petersen()))
        assert sum(w for _, w in psi.segments()) == pytest.approx(psi.domain_end, rel=1e-15)

    def test_last_segment_start(self):
        assert path_minorant(3).last_segment_start_k() == 1
        assert path_minorant(5).last_segment_start_k() == 2
        single = ConvexMinorant(0.0, (Breakpoint(1, 0.0, 0.0),))
        assert single.last_segment_start_k() == 1


class TestRegularSummary:
    @pytest.mark.parametrize("m", range(2, 9))
    def test_complete(self, m):
        g = generate("complete", m)
        s = regular_summary(g, profile_bruteforce(g))
        assert s.degree == m - 1
        assert s.k_star == 1
        assert s.y_intercept == pytest.approx(float(m - 1), rel=1e-15)
        assert s.chord_slope == pytest.approx(-(m - 1) / math.log(m), rel=1e-15)

    def test_cycle5_golden(self):
        g = generate("cycle", 5)
        s = regular_summary(g, profile_bruteforce(g))
        assert s.k_star == 2
        assert s.y_intercept == pytest.approx(C5_Y_INTERCEPT, rel=1e-12)
        assert s.chord_slope == pytest.approx(C5_CHORD_SLOPE, rel=1e-12)

    def test_cycle6(self):
        g = generate("cycle", 6)
        s = regular_summary(g, profile_bruteforce(g))
        assert s.k_star == 2
        assert s.y_intercept == pytest.approx(math.log(6) / math.log(3), rel=1e-12)

    def test_petersen_beats_degree(self):
        g = petersen()
        s = regular_summary(g, profile_bruteforce(g))
        assert s.k_star == 2
        assert s.y_intercept == pytest.approx(PETERSEN_Y_INTERCEPT, rel=1e-12)
        assert s.y_intercept < s.degree

    def test_shallowest_chord_property(self):
        # the chord through (log k*, i_{k*}) must dominate every other chord
        g = petersen()
        prof = profile_bruteforce(g)
        s = regular_summary(g, prof)
        log_m = math.log(10)
        for k in range(1, 10):
            slope_k = -float(prof.ratio(k)) / (log_m - math.log(k))
            assert slope_k <= s.chord_slope + 1e-15

    def test_rejects_irregular(self):
        g = generate("path", 4)
        with pytest.raises(ValueError, match="not regular"):
            regular_summary(g, profile_bruteforce(g))

    def test_rejects_disconnected(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(ValueError, match="not connected"):
            regular_summary(g, profile_bruteforce(g))

    def test_rejects_mismatched_profile(self):
        g = generate("cycle", 5)
        with pytest.raises(ValueError, match="does not match"):
            regular_summary(g, profile_closed_form("cycle", 6))

    def test_rejects_single_vertex(self):
        g = Graph.from_edges(1, [])
        with pytest.raises(ValueError, match="at least 2"):
            regular_summary(g, profile_bruteforce(g))
