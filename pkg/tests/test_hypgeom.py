import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbirad.corners import ConeAngle, ConeOrder, Cusp
from orbirad.errors import (
    DegenerateTriangle,
    IdealVertex,
    InvalidTriangle,
    NegativeDistance,
    NonPositiveLength,
    OffModel,
)
from orbirad.hypgeom import (
    TriangleAngles,
    angle_from_sides,
    collar_half_width,
    exp_map,
    from_klein,
    half_angle_sine,
    horocycle_embedded_length,
    hpoint,
    hyp_distance,
    inscribed_radius,
    loop_length,
    minkowski,
    place_double_triangle,
    tangent_frame,
    to_klein,
    triangle_sides_from_angles,
)

import reference_values as ref

T237 = TriangleAngles(math.pi / 2, math.pi / 3, math.pi / 7)


@st.composite
def admissible_angles(draw, allow_zero=False):
    lo = 0.0 if allow_zero else 0.05
    a = draw(st.floats(lo, math.pi / 2))
    b = draw(st.floats(lo, math.pi / 2))
    room = math.pi - a - b - 1e-3
    if room <= lo:
        a, b = a / 2, b / 2
        room = math.pi - a - b - 1e-3
    c = draw(st.floats(lo, min(math.pi / 2, room)))
    return (a, b, c)


class TestTriangleAngles:
    def test_orders(self):
        t = TriangleAngles.from_orders(2, 3, math.inf)
        assert tuple(t) == (math.pi / 2, math.pi / 3, 0.0)

    @pytest.mark.parametrize("angles", [(1.6, 0.1, 0.1), (-0.1, 0.5, 0.5), (math.pi / 2, math.pi / 2, 0.0)])
    def test_rejects(self, angles):
        with pytest.raises(InvalidTriangle):
            TriangleAngles(*angles)

    def test_near_degenerate_rejected(self):
        with pytest.raises(InvalidTriangle):
            TriangleAngles(math.pi / 2, math.pi / 3, math.pi / 6 - 1e-10)


class TestSides:
    def test_237(self):
        np.testing.assert_allclose(triangle_sides_from_angles(T237), ref.SIDES_237, rtol=1e-14)

    def test_equilateral(self):
        a, b, c = triangle_sides_from_angles((math.pi / 3.5,) * 3)
        assert a == pytest.approx(b, rel=1e-15) and b == pytest.approx(c, rel=1e-15)

    def test_ideal_vertex(self):
        with pytest.raises(IdealVertex):
            triangle_sides_from_angles((0.0, math.pi / 3, math.pi / 7))

    @given(admissible_angles())
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, angles):
        a, b, c = triangle_sides_from_angles(angles)
        back = (angle_from_sides(a, b, c), angle_from_sides(b, c, a), angle_from_sides(c, a, b))
        np.testing.assert_allclose(back, angles, atol=1e-10)


class TestInradius:
    def test_cusp_closed_form(self):
        assert inscribed_radius(0.0, math.pi / 2, math.pi / 3) == pytest.approx(ref.INRADIUS_0_2_3, rel=1e-14)

    def test_routes_agree(self):
        t = (0.0, math.pi / 3, math.pi / 7)
        assert inscribed_radius(*t) == pytest.approx(inscribed_radius(*t, general=True), abs=1e-12)

    def test_right_angles_collapse(self):
        assert inscribed_radius(0.0, math.pi / 2 - 1e-9, math.pi / 2 - 1e-9) < 1e-8

    @given(admissible_angles())
    @settings(max_examples=100, deadline=None)
    def test_general_matches_incenter(self, angles):
        m = place_double_triangle(angles)
        d = m.side_distance(np.array([1.0, 0.0, 0.0]))
        np.testing.assert_allclose(d, inscribed_radius(*angles, general=True), rtol=1e-9, atol=1e-12)

    def test_invalid(self):
        with pytest.raises(InvalidTriangle):
            inscribed_radius(math.pi / 2, math.pi / 3, math.pi / 6)


class TestHorocycle:
    def test_value(self):
        assert horocycle_embedded_length(math.pi / 2, math.pi / 3) == pytest.approx(ref.HOROCYCLE_2_3, rel=1e-14)

    def test_symmetric(self):
        assert horocycle_embedded_length(0.4, 1.1) == horocycle_embedded_length(1.1, 0.4)

    def test_decreasing_in_angle(self):
        h = [horocycle_embedded_length(math.pi / 3, t) for t in np.linspace(0.1, math.pi / 2, 50)]
        assert np.all(np.diff(h) < 0)


class TestCollar:
    def test_fixed_point(self):
        assert collar_half_width(2 * math.asinh(1.0)) == pytest.approx(math.asinh(1.0), rel=1e-15)

    def test_five_quarters(self):
        assert math.asinh(9 / 40) == pytest.approx(math.log(1.25), abs=1e-15)
        assert collar_half_width(2 * math.asinh(40 / 9)) == pytest.approx(math.log(1.25), abs=1e-15)

    def test_decreasing(self):
        w = collar_half_width(np.linspace(0.01, 30.0, 1000))
        assert np.all(np.diff(w) < 0) and w[-1] < 1e-6

    def test_non_positive(self):
        with pytest.raises(NonPositiveLength):
            collar_half_width(0.0)


class TestDistance:
    def test_basic(self):
        o = np.array([1.0, 0.0, 0.0])
        assert hyp_distance(o, o) == 0.0
        assert hyp_distance(o, [math.cosh(1), math.sinh(1), 0.0]) == pytest.approx(1.0, rel=1e-15)

    def test_off_model(self):
        with pytest.raises(OffModel):
            hyp_distance([1.0, 0.1, 0.0], [1.0, 0.0, 0.0])

    def test_small_separation_precision(self):
        p = hpoint(0.3, 0.2)
        e1, _ = tangent_frame(p)
        q = exp_map(p, 1e-9 * e1)
        assert hyp_distance(p, q) == pytest.approx(1e-9, rel=1e-6)

    @given(st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=3, max_size=3))
    @settings(max_examples=200, deadline=None)
    def test_metric(self, xy):
        p, q, s = (hpoint(*c) for c in xy)
        assert hyp_distance(p, q) == pytest.approx(hyp_distance(q, p), abs=1e-12)
        assert hyp_distance(p, s) <= hyp_distance(p, q) + hyp_distance(q, s) + 1e-9


class TestAngleFromSides:
    def test_rho_s_equilateral(self):
        r = math.asinh(2 / math.sqrt(3))
        assert angle_from_sides(2 * r, 2 * r, 2 * r) == pytest.approx(math.acos(11 / 14), abs=1e-12)
        assert half_angle_sine(2 * r, 2 * r, 2 * r) == pytest.approx(math.sqrt(3 / 28), abs=1e-15)

    def test_collapsing_side(self):
        assert angle_from_sides(1e-8, 1.0, 1.0) < 1e-7

    def test_degenerate(self):
        with pytest.raises(DegenerateTriangle):
            angle_from_sides(3.0, 1.0, 1.0)


class TestKlein:
    @given(st.floats(-0.99, 0.99), st.floats(-0.99, 0.99))
    def test_round_trip(self, x, y):
        if x * x + y * y >= 0.98:
            return
        P = from_klein(np.array([x, y]))
        assert minkowski(P, P) == pytest.approx(1.0, abs=1e-9)
        np.testing.assert_allclose(to_klein(P), [x, y], atol=1e-12)


class TestPlacement:
    def test_237_sides(self):
        m = place_double_triangle(T237)
        V = m.vertices
        d = [hyp_distance(V[1], V[2]), hyp_distance(V[2], V[0]), hyp_distance(V[0], V[1])]
        np.testing.assert_allclose(d, ref.SIDES_237, atol=1e-12)

    def test_equilateral_symmetry(self):
        m = place_double_triangle((math.pi / 4,) * 3)
        V = m.vertices
        d = [hyp_distance(V[i], V[j]) for i, j in ((0, 1), (1, 2), (2, 0))]
        assert max(d) - min(d) < 1e-12

    def test_cusp_side(self):
        m = place_double_triangle((0.0, math.pi / 3, math.pi / 7))
        assert m.ideal == (True, False, False)
        assert minkowski(m.vertices[0], m.vertices[0]) == pytest.approx(0.0, abs=1e-12)
        # side between the two finite vertices: law of cosines with one angle zero
        expect = math.acosh((1 + math.cos(math.pi / 3) * math.cos(math.pi / 7))
                            / (math.sin(math.pi / 3) * math.sin(math.pi / 7)))
        assert hyp_distance(m.vertices[1], m.vertices[2]) == pytest.approx(expect, rel=1e-12)

    def test_corner_kinds(self):
        m = place_double_triangle((0.0, math.pi / 2, math.pi / 5))
        assert isinstance(m.corners[0], Cusp) and isinstance(m.corners[1], ConeAngle)

    def test_normals(self):
        m = place_double_triangle(T237)
        np.testing.assert_allclose(minkowski(m.normals, m.normals), -1.0, atol=1e-12)
        # vertex i lies on both sides through it
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert abs(minkowski(m.vertices[i], m.normals[j])) < 1e-12

    def test_holonomy_displacement_equals_loop(self):
        m = place_double_triangle((0.0, math.pi / 3, math.pi / 7))
        rng = np.random.default_rng(5)
        for lam in rng.dirichlet([2, 2, 2], size=20):
            P = m.from_barycentric(lam)
            dist = m.corner_distance(P)
            for i in range(3):
                H = m.holonomy(i)
                loop = loop_length(m.corners[i], float(dist[i]), horocycle=m.horocycles[i])
                assert hyp_distance(P, H @ P) == pytest.approx(loop, rel=1e-9)

    def test_barycentric_round_trip(self):
        m = place_double_triangle(T237)
        lam = np.array([0.2, 0.5, 0.3])
        np.testing.assert_allclose(m.barycentric(m.from_barycentric(lam)), lam, atol=1e-12)


class TestLoopLength:
    def test_order_two(self):
        assert loop_length(ConeOrder(2), 0.3) == pytest.approx(0.6, abs=1e-15)

    def test_zero(self):
        assert loop_length(ConeOrder(3), 0.0) == 0.0

    def test_sixty_degrees(self):
        assert loop_length(ConeOrder(3), 1.0) == pytest.approx(ref.LOOP_60_AT_1, rel=1e-14)

    def test_negative(self):
        with pytest.raises(NegativeDistance):
            loop_length(ConeOrder(3), -0.1)

    def test_cusp_needs_horocycle(self):
        with pytest.raises(NonPositiveLength):
            loop_length(Cusp(), 0.0)

    def test_cusp_sine_law(self):
        # 1 = cosh(l/2) sin(loop angle / 2) at the reference horocycle
        h = 1.3
        l = loop_length(Cusp(), 0.0, horocycle=h)
        assert math.sinh(l / 2) == pytest.approx(h / 2, rel=1e-15)

    @pytest.mark.parametrize("corner", [ConeOrder(3), ConeOrder(2), ConeAngle(0.3), Cusp()])
    def test_increasing(self, corner):
        d = np.linspace(0.0, 3.0, 200)
        l = [loop_length(corner, float(x), horocycle=1.0) for x in d]
        assert np.all(np.diff(l) > 0)
