import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbirad.corners import Boundary, ConeAngle, ConeOrder, CornerWeights, Cusp, parse_corner
from orbirad.errors import DomainError, InvalidTriangle, NoSignChange, NonPositiveLength
from orbirad.hypgeom import TriangleAngles
from orbirad.solver import (
    CONE_BRACKET_HI,
    F_eval,
    f_eval,
    max_disk_radii,
    max_disk_radius,
    rho_T,
    rho_T_cubic_root,
    solve_full,
    system_residuals,
)

import reference_values as ref

W237 = CornerWeights.from_corners([ConeOrder(2), ConeOrder(3), ConeOrder(7)])


def angles_weights(angles):
    return CornerWeights.from_angles(TriangleAngles(*angles))


def random_angles(rng, n, cusp_fraction=0.1):
    out = []
    while len(out) < n:
        a = rng.uniform(0.0, math.pi / 2, 3)
        a[rng.random(3) < cusp_fraction] = 0.0
        if a.sum() < math.pi - 1e-3:
            out.append(tuple(a))
    return out


class TestCorners:
    def test_weights(self):
        assert ConeOrder(2).weight == 0.0
        assert ConeOrder(3).weight == pytest.approx(0.5, abs=1e-15)
        assert Cusp().weight == 1.0
        assert Boundary(2.0).weight == pytest.approx(math.cosh(1.0))

    @pytest.mark.parametrize("text,kind", [("7", ConeOrder), ("cusp", Cusp), ("inf", Cusp),
                                           ("angle:0.4", ConeAngle), ("boundary:1.5", Boundary)])
    def test_parse(self, text, kind):
        assert isinstance(parse_corner(text), kind)

    @pytest.mark.parametrize("text", ["1", "x", "angle:2.0"])
    def test_parse_bad(self, text):
        with pytest.raises(DomainError):
            parse_corner(text)

    def test_boundary_positive(self):
        with pytest.raises(NonPositiveLength):
            Boundary(0.0)

    def test_negative_weight(self):
        with pytest.raises(DomainError):
            CornerWeights(-0.1, 0.5, 0.5)


class TestF:
    def test_at_one(self):
        # at x = 1 the expression collapses to 2 (cos(gamma) + cos(alpha + beta))
        assert f_eval(W237, 1.0) == pytest.approx(ref.F237_AT_1, rel=1e-13)
        expect = 2 * (math.cos(math.pi / 7) + math.cos(math.pi / 2 + math.pi / 3))
        assert f_eval(W237, 1.0) == pytest.approx(expect, rel=1e-13)

    def test_zero_at_rho_t(self):
        assert abs(f_eval(W237, math.cosh(0.187728))) < 5e-5
        assert abs(F_eval(W237, ref.RHO_T)) < 1e-14

    def test_leading_behaviour(self):
        vals = f_eval(W237, np.array([10.0, 100.0, 1000.0]))
        assert np.all(np.diff(vals) < 0) and vals[-1] < -1e9

    def test_domain(self):
        with pytest.raises(DomainError):
            f_eval((1.2, 1.3, 1.5), 1.1)
        with pytest.raises(DomainError):
            F_eval(W237, -0.1)

    def test_rho_y_negative(self):
        assert F_eval(W237, math.log(3) / 2) == pytest.approx(ref.F237_AT_RHO_Y, rel=1e-12)

    def test_at_zero(self):
        w = angles_weights((0.4, 0.9, 1.2))
        assert F_eval(sorted(w), 0.0) == f_eval(sorted(w), 1.0) > 0

    def test_sign_characterisation(self):
        rng = np.random.default_rng(11)
        for angles in random_angles(rng, 200):
            w = CornerWeights(*sorted(angles_weights(angles)))
            r = max_disk_radius(w)
            assert F_eval(w, r / 2) > 0
            assert F_eval(w, min(1.5 * r, CONE_BRACKET_HI)) < 0


class TestMaxDiskRadius:
    def test_rho_t(self):
        assert max_disk_radius(W237) == pytest.approx(0.187728, abs=5e-6)
        assert max_disk_radius(W237) == pytest.approx(ref.RHO_T, abs=1e-14)

    def test_cusps(self):
        assert max_disk_radius((1, 1, 1)) == pytest.approx(ref.RHO_S, abs=1e-14)

    def test_permutation_invariant(self):
        rs = {max_disk_radius(p) for p in itertools.permutations(tuple(W237))}
        assert max(rs) - min(rs) < 1e-15

    @pytest.mark.parametrize("angles,value", [
        ((math.pi / 2, math.pi / 4, math.pi / 5), ref.R_245),
        ((math.pi / 3, math.pi / 3, math.pi / 4), ref.R_334),
        ((0.0, math.pi / 3, math.pi / 7), ref.R_CUSP_3_7),
        ((0.0, math.pi / 2, math.pi / 3), ref.R_CUSP_2_3),
    ])
    def test_values(self, angles, value):
        assert max_disk_radius(angles_weights(angles)) == pytest.approx(value, abs=1e-13)

    def test_larger_angles_smaller_radius(self):
        r1 = max_disk_radius(angles_weights((math.pi / 4,) * 3))
        r2 = max_disk_radius(angles_weights((math.pi / 3, math.pi / 4, math.pi / 4)))
        assert r1 > r2

    def test_no_sign_change(self):
        with pytest.raises(NoSignChange):
            max_disk_radius(W237, bracket_hi=0.1)

    def test_degenerate(self):
        with pytest.raises(InvalidTriangle):
            max_disk_radius(angles_weights((math.pi / 2, math.pi / 3, math.pi / 6 + 1e-8)).__class__(
                0.0, 0.5, math.cos(math.pi / 6)))

    def test_batch_matches_scalar(self):
        rng = np.random.default_rng(3)
        W = np.array([tuple(angles_weights(a)) for a in random_angles(rng, 50)])
        batch = max_disk_radii(W)
        single = [max_disk_radius(w) for w in W]
        np.testing.assert_array_equal(batch, single)

    def test_batch_status(self):
        r, status = max_disk_radii(np.array([tuple(W237)]), bracket_hi=0.1, strict=False)
        assert status[0] == 1 and np.isnan(r[0])

    def test_monotone_in_angles(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 100:
            hi = np.array(random_angles(rng, 1, cusp_fraction=0.0)[0])
            lo = hi * rng.uniform(0.0, 1.0, 3)
            r_lo = max_disk_radius(angles_weights(lo))
            r_hi = max_disk_radius(angles_weights(hi))
            assert r_lo > r_hi
            checked += 1

    def test_triple_domination(self):
        # every orbifold triple sits below one of three minimal triples
        orders = list(range(2, 51)) + [math.inf]
        anchors = [(2, 3, 7), (2, 4, 5), (3, 3, 4)]
        for t in itertools.combinations_with_replacement(orders, 3):
            if sum(0 if p == math.inf else 1 / p for p in t) >= 1 - 1e-12:
                continue
            assert any(all(p >= q for p, q in zip(t, a)) for a in anchors), t

    def test_continuity(self):
        prev = math.inf
        for k in range(1, 21):
            scale = 1.0 - 2.0 ** -k
            w = angles_weights((scale * math.pi / 2, scale * math.pi / 3, scale * math.pi / 7))
            gap = abs(max_disk_radius(w) - ref.RHO_T)
            assert gap < prev
            prev = gap
        assert prev < 1e-5

    def test_boundary_weights(self):
        w = CornerWeights.from_corners([Boundary(1.0), Boundary(1.2), Boundary(2.0)])
        r = max_disk_radius(w)
        # boundary weights exceed the cusp weight, so the disk is larger than for three cusps
        assert r > ref.RHO_S
        assert abs(F_eval(sorted(w), r)) < 1e-9


class TestSolveFull:
    def test_237(self):
        s = solve_full(W237)
        assert s.alpha_tilde == 0.0
        assert s.beta_tilde == pytest.approx(ref.BETA_TILDE_237, abs=1e-12)
        assert s.theta == pytest.approx(ref.THETA_237, abs=1e-12)
        assert s.gamma_tilde == pytest.approx(ref.GAMMA_TILDE_237, abs=1e-12)
        assert s.residual_max <= 1e-10

    def test_cusps(self):
        s = solve_full((1, 1, 1))
        for a in s.loop_angles:
            assert a == pytest.approx(2 * math.asin(math.sqrt(3 / 7)), abs=1e-10)
        assert s.theta == pytest.approx(math.acos(11 / 14), abs=1e-10)

    def test_equal_weights_symmetric(self):
        s = solve_full((0.7, 0.7, 0.7))
        assert max(s.loop_angles) - min(s.loop_angles) < 1e-9

    def test_order_restored(self):
        s = solve_full((0.9, 0.1, 0.5))
        assert s.alpha_tilde > s.gamma_tilde > s.beta_tilde

    def test_to_dict_keys(self):
        keys = set(solve_full(W237).to_dict())
        assert {"weights", "r", "alpha_tilde", "beta_tilde", "gamma_tilde", "theta",
                "residual_max", "iterations"} <= keys

    @given(st.lists(st.floats(0.0, 1.0), min_size=3, max_size=3))
    @settings(max_examples=200, deadline=None)
    def test_residuals(self, w):
        if sum(math.acos(x) for x in w) >= math.pi - 1e-6:
            return
        s = solve_full(w)
        assert max(abs(v) for v in s.residuals()) <= 1e-10
        assert abs(sum(s.loop_angles) + 3 * s.theta - 2 * math.pi) <= 1e-10
        assert 0 < s.theta < math.pi / 3

    def test_boundary_residuals(self):
        rng = np.random.default_rng(2)
        for L in rng.uniform(0.2, 3.0, (30, 3)):
            s = solve_full(CornerWeights.from_corners([Boundary(x) for x in L]))
            assert s.residual_max <= 1e-10

    def test_system_residuals_detect_error(self):
        s = solve_full(W237)
        bad = system_residuals(s.weights, s.r + 1e-3, s.loop_angles, s.theta)
        assert max(map(abs, bad)) > 1e-5


class TestRhoT:
    def test_cubic_root(self):
        assert rho_T_cubic_root() == pytest.approx(ref.T0, abs=1e-15)

    def test_value(self):
        assert rho_T() == pytest.approx(0.187728, abs=5e-7)
        assert rho_T() == pytest.approx(ref.RHO_T, abs=1e-15)

    def test_single_real_root(self):
        c = math.cos(math.pi / 7) ** 2
        t = np.linspace(0.0, 3.0, 30001)
        vals = (4 - c) * t ** 3 - 5 * t ** 2 + 2 * t - 0.25
        assert np.count_nonzero(np.diff(np.sign(vals))) == 1

    def test_routes_agree(self):
        assert abs(rho_T() - max_disk_radius(W237)) <= 1e-10
