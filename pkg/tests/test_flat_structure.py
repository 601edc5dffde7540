import math

import numpy as np
import pytest
from scipy import integrate

from conefold.cone_geometry import StringTension
from conefold.flat_structure import (
    FlatStructureError,
    LocalModel,
    PlanarLoop,
    cone_metric_length,
    convention_cone_angle_mismatch,
    half_plane_count,
    holonomy_around_point,
    natural_coordinate_closed_form,
    natural_coordinate_quadrature,
    order_from_tension,
    phi_circumference,
    pole_admissibility,
    radial_quadrature,
)


def scipy_natural_coordinate(n, z_end):
    """Independent oracle: scipy's adaptive QUADPACK on the radial parametrisation."""
    length = abs(z_end)
    u = z_end / length
    c = (n + 2) / 2

    def f(t, part):
        v = c * (t * u) ** (n / 2) * u
        return v.real if part == 0 else v.imag

    opts = dict(epsabs=0, epsrel=1e-13, limit=500)
    re, _ = integrate.quad(f, 0, length, args=(0,), **opts)
    im, _ = integrate.quad(f, 0, length, args=(1,), **opts)
    return complex(re, im)


def test_local_model():
    m = LocalModel(1)
    assert m.c == 1.5 and m.coefficient == 2.25 == m.c**2
    assert m.cone_angle == pytest.approx(3 * math.pi)
    with pytest.raises(FlatStructureError):
        LocalModel(-2)


class TestClosedForm:
    def test_examples(self):
        assert natural_coordinate_closed_form(1, 1) == pytest.approx(1)
        assert natural_coordinate_closed_form(1, 4) == pytest.approx(8, rel=1e-15)
        for z in (0.3 - 2j, -1 + 1j, 5):
            assert natural_coordinate_closed_form(0, z) == z

    def test_zero_only_for_integer_exponent(self):
        assert natural_coordinate_closed_form(2, 0) == 0
        with pytest.raises(FlatStructureError):
            natural_coordinate_closed_form(1, 0)

    def test_rejects_order_at_or_below_minus_two(self):
        with pytest.raises(FlatStructureError):
            natural_coordinate_closed_form(-2, 1)

    @pytest.mark.parametrize("n", [-1, 0, 1, 2, 3, 0.5, -1.5])
    def test_pulls_back_phi(self, n):
        # (dw/dz)^2 == phi, by central differences
        z, h = 0.7 + 0.4j, 1e-6
        dw = (natural_coordinate_closed_form(n, z + h) - natural_coordinate_closed_form(n, z - h)) / (2 * h)
        assert dw**2 == pytest.approx(complex(LocalModel(n).phi(z)), rel=1e-8)


class TestQuadrature:
    def test_examples(self):
        assert natural_coordinate_quadrature(0, 1 + 0j) == pytest.approx(1, rel=1e-12)
        assert natural_coordinate_quadrature(1, 4) == pytest.approx(8, rel=1e-8)
        assert natural_coordinate_quadrature(-1, 1) == pytest.approx(1, rel=1e-8)

    @pytest.mark.parametrize("n", [-1, 0, 1, 2, 3, -1.5, 0.7])
    @pytest.mark.parametrize("z", [0.5, 1, 4, 2j, -1 + 1j, 0.3 - 3j])
    def test_agrees_with_oracle_and_closed_form(self, n, z):
        q = natural_coordinate_quadrature(n, z)
        assert q == pytest.approx(scipy_natural_coordinate(n, z), rel=1e-10)
        assert q == pytest.approx(natural_coordinate_closed_form(n, z), rel=1e-8)

    @pytest.mark.parametrize("n", [-1, 1, 3])
    def test_cutoff_base_point(self, n):
        z, eps = 4 * np.exp(0.3j), 1e-6
        want = natural_coordinate_closed_form(n, z) - natural_coordinate_closed_form(n, eps * z / abs(z))
        assert natural_coordinate_quadrature(n, z, cutoff=eps) == pytest.approx(want, rel=1e-8)

    @pytest.mark.parametrize("n", [-1, -1.5, 1])
    def test_error_decreases_with_samples(self, n):
        exact = natural_coordinate_closed_form(n, 1)
        errs = [abs(radial_quadrature(n, 1, s) - exact) for s in (16, 32, 64, 128, 256)]
        for a, b in zip(errs, errs[1:]):
            assert b <= a or b < 1e-14

    def test_rejects_origin(self):
        with pytest.raises(FlatStructureError):
            natural_coordinate_quadrature(1, 0)


def test_half_plane_count():
    assert half_plane_count(1) == 3
    assert half_plane_count(0) == 2
    assert half_plane_count(-1) == 1
    counts = [half_plane_count(n) for n in range(-1, 8)]
    assert counts == sorted(set(counts))
    with pytest.raises(FlatStructureError):
        half_plane_count(-2)
    with pytest.raises(FlatStructureError):
        half_plane_count(0.5)


class TestOrder:
    def test_examples(self):
        assert order_from_tension(StringTension(1 / 16), "paper") == -1
        assert order_from_tension(StringTension(0.0), "paper") == 0
        assert order_from_tension(StringTension(0.0), "self_consistent") == 0
        assert order_from_tension(StringTension(1e-6), "self_consistent") == pytest.approx(-8e-6, rel=1e-15)

    @pytest.mark.parametrize("g", [0.0, 1e-7, 1e-3, 0.05, 0.12])
    def test_self_consistent_matches_cone_angle(self, g):
        t = StringTension(g)
        n = order_from_tension(t)
        assert (n + 2) * math.pi == pytest.approx(2 * math.pi * (1 - 4 * g), rel=1e-15)
        assert convention_cone_angle_mismatch(t, "self_consistent") == pytest.approx(0, abs=1e-15)

    def test_paper_convention_doubles_deficit(self):
        t = StringTension(0.01)
        assert convention_cone_angle_mismatch(t, "paper") == pytest.approx(-8 * math.pi * 0.01, rel=1e-12)

    def test_unknown_convention(self):
        with pytest.raises(FlatStructureError):
            order_from_tension(StringTension(0.0), "other")


def test_pole_admissibility():
    assert pole_admissibility(StringTension(1 / 16), "paper")
    assert not pole_admissibility(StringTension(0.07), "paper")
    assert pole_admissibility(StringTension(3.2e-7), "paper")
    assert not pole_admissibility(StringTension(math.nextafter(1 / 16, 1)), "paper")
    assert pole_admissibility(StringTension(1 / 8), "self_consistent")


class TestLoops:
    def test_parse_and_winding(self):
        loop = PlanarLoop.parse("1,0:1,1.5707963267948966:1,3.141592653589793:1,4.71238898038469")
        assert loop.winding() == pytest.approx(1)
        assert PlanarLoop.circle(turns=3).winding() == pytest.approx(3)

    @pytest.mark.parametrize("verts", [((0.0, 0.0), (1.0, 1.0)), ((1.0, 0.0), (1.0, 7.0)), ((1.0, 0.0),)])
    def test_invalid(self, verts):
        with pytest.raises(FlatStructureError):
            PlanarLoop(verts)

    def test_half_turn_step_is_ambiguous(self):
        with pytest.raises(FlatStructureError):
            PlanarLoop(((1.0, 0.0), (1.0, math.pi)))


class TestLength:
    def test_quarter_arc(self):
        arc = PlanarLoop(((1.0, 0.0), (1.0, math.pi / 2)), closed=False)
        assert cone_metric_length(1, arc) == pytest.approx(math.pi / 2, rel=1e-14)

    def test_full_circle_half_cone(self):
        assert cone_metric_length(0.5, PlanarLoop.circle(1.0)) == pytest.approx(math.pi, rel=1e-14)

    def test_radial_segment(self):
        seg = PlanarLoop(((1.0, 0.3), (2.0, 0.3)), closed=False)
        assert cone_metric_length(1.5, seg) == pytest.approx(1.0, rel=1e-14)

    def test_unit_cone_is_euclidean(self):
        # chart-straight segment in (r, angle) is a spiral arc; compare against
        # the Euclidean length of a finely sampled polyline
        seg = PlanarLoop(((1.0, 0.0), (2.0, 1.2)), closed=False)
        s = np.linspace(0, 1, 200001)
        r, a = 1 + s, 1.2 * s
        xy = np.stack([r * np.cos(a), r * np.sin(a)])
        poly = np.sum(np.hypot(*np.diff(xy, axis=1)))
        assert cone_metric_length(1.0, seg) == pytest.approx(poly, rel=1e-9)

    def test_rejects_bad_c(self):
        with pytest.raises(FlatStructureError):
            cone_metric_length(0, PlanarLoop.circle())


@pytest.mark.parametrize("n", [-1, 0, 1, 2, 3])
def test_cone_angle_consistency(n):
    rho = 0.8
    r = abs(natural_coordinate_closed_form(n, rho))
    assert phi_circumference(n, rho) / r == pytest.approx((n + 2) * math.pi, rel=1e-8)
    c = LocalModel(n).c
    assert cone_metric_length(c, PlanarLoop.circle(r)) / r == pytest.approx((n + 2) * math.pi, rel=1e-8)


def scipy_holonomy(g, turns=1):
    """Second integrator (DOP853) for transport around the unit circle."""
    a = 1 - 4 * g

    def rhs(theta, v):
        return [a * a * v[1], -v[0]]

    sol = integrate.solve_ivp(rhs, (0, 2 * math.pi * turns), [1.0, 0.0], method="DOP853", rtol=1e-13, atol=1e-14)
    vr, vt = sol.y[:, -1]
    # orthonormal components rotate at rate -a: angle = -2 pi a turns
    phase = math.atan2(a * vt, vr)
    k = round((-2 * math.pi * a * turns - phase) / (2 * math.pi))
    return phase + 2 * math.pi * k + 2 * math.pi * turns


class TestHolonomy:
    def test_flat_plane(self):
        assert abs(holonomy_around_point(StringTension(0.0), PlanarLoop.circle())) < 1e-12

    @pytest.mark.parametrize("g", [1e-6, 0.05])
    def test_matches_deficit(self, g):
        hol = holonomy_around_point(StringTension(g), PlanarLoop.circle())
        assert hol == pytest.approx(8 * math.pi * g, abs=1e-9)

    def test_examples(self):
        assert holonomy_around_point(StringTension(1e-6), PlanarLoop.circle()) == pytest.approx(2.513274e-5, abs=1e-9)
        assert holonomy_around_point(StringTension(0.05), PlanarLoop.circle()) == pytest.approx(1.256637, abs=1e-6)

    @pytest.mark.parametrize("g", [1e-3, 0.05, 0.2])
    def test_agrees_with_scipy_transport(self, g):
        assert holonomy_around_point(StringTension(g), PlanarLoop.circle()) == pytest.approx(scipy_holonomy(g), abs=1e-9)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_k_fold(self, k):
        t = StringTension(0.05)
        hol = holonomy_around_point(t, PlanarLoop.circle(turns=k))
        assert hol == pytest.approx(k * 8 * math.pi * 0.05, abs=3e-9)

    @pytest.mark.parametrize("lam", [1e-3, 0.5, 7.0, 1e4])
    def test_scale_invariant(self, lam):
        t = StringTension(0.03)
        loop = PlanarLoop(((1.0, 0.0), (2.0, 1.0), (0.5, 2.5), (3.0, 4.0), (1.0, 5.5)))
        assert holonomy_around_point(t, loop.scaled(lam)) == pytest.approx(holonomy_around_point(t, loop), abs=1e-12)

    def test_irregular_loop(self):
        loop = PlanarLoop(((1.0, 0.0), (2.0, 1.0), (0.5, 2.5), (3.0, 4.0), (1.0, 5.5)))
        assert holonomy_around_point(StringTension(0.05), loop) == pytest.approx(0.4 * math.pi, abs=1e-9)

    def test_loop_not_enclosing_point_rejected(self):
        loop = PlanarLoop(((1.0, 0.1), (2.0, 0.2), (1.5, 0.4)))
        with pytest.raises(FlatStructureError):
            holonomy_around_point(StringTension(0.01), loop)

    def test_open_loop_rejected(self):
        with pytest.raises(FlatStructureError):
            holonomy_around_point(StringTension(0.01), PlanarLoop(((1.0, 0.0), (1.0, 1.0)), closed=False))
