import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conefold.cone_geometry import StringTension
from conefold.observational import (
    BUILTIN_CATALOG,
    CatalogError,
    ObservationalBound,
    euler_bound_report,
    find_bound,
    gut_scale_estimate,
    load_bound_catalog,
    nearest_even_integer,
    parse_bound_catalog,
    sample_network,
    verdict_from_chi,
)

SPT = find_bound(BUILTIN_CATALOG, "SPT")


def test_catalog_values_verbatim():
    got = {b.name: b.g_mu_max for b in load_bound_catalog("builtin")}
    assert got == {"COBE": 2.0e-6, "Planck": 3.2e-7, "WMAP": 0.5e-6, "SPT": 1.7e-7}
    assert min(got.values()) == 1.7e-7


def test_catalog_file(tmp_path):
    p = tmp_path / "bounds.txt"
    p.write_text('# custom\nbound mybound 1e-8 "test"\n')
    (b,) = load_bound_catalog(p)
    assert (b.name, b.g_mu_max, b.source) == ("mybound", 1e-8, "test")


@pytest.mark.parametrize(
    "text, line",
    [
        ('bound bad -1 "x"\n', 1),
        ('# ok\nbound a 1e-7 "x"\nbund b 1e-7 "y"\n', 3),
        ('bound a nope "x"\n', 1),
        ('bound a 1e-7 "unterminated\n', 1),
    ],
)
def test_catalog_errors(text, line):
    with pytest.raises(CatalogError) as exc:
        parse_bound_catalog(text)
    assert exc.value.line == line


def test_bound_invariant():
    with pytest.raises(CatalogError):
        ObservationalBound("x", 0.0)


class TestGut:
    def test_grand_unification(self):
        t = gut_scale_estimate(1e16, 1.22e19)
        assert t.g_mu == pytest.approx(6.718624025799516e-07, rel=1e-14)
        assert round(math.log10(t.g_mu)) == -6

    def test_ratio_cases(self):
        assert gut_scale_estimate(5.0, 5.0).g_mu == 1.0
        assert not gut_scale_estimate(5.0, 5.0).physical
        assert gut_scale_estimate(0.5, 1.0).g_mu == 0.25

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            gut_scale_estimate(0.0, 1.0)


class TestSample:
    def test_fixed_at_bound(self):
        net = sample_network(123, 10, SPT, "fixed_at_bound")
        assert [t.g_mu for t in net.tensions] == [1.7e-7] * 10

    def test_empty(self):
        assert sample_network(1, 0, SPT).tensions == ()

    def test_deterministic(self):
        a = sample_network(2**64 - 1, 10, SPT, "uniform")
        b = sample_network(2**64 - 1, 10, SPT, "uniform")
        assert a == b
        assert a != sample_network(5, 10, SPT, "uniform")

    @settings(max_examples=50)
    @given(st.integers(0, 2**64 - 1), st.integers(0, 10))
    def test_uniform_within_bound(self, seed, count):
        net = sample_network(seed, count, SPT, "uniform")
        assert len(net.tensions) == count
        assert all(0 < t.g_mu <= SPT.g_mu_max for t in net.tensions)

    def test_cap(self):
        with pytest.raises(ValueError):
            sample_network(0, 11, SPT)
        assert len(sample_network(0, 11, SPT, override_cap=True).tensions) == 11

    def test_bad_seed_and_distribution(self):
        with pytest.raises(ValueError):
            sample_network(-1, 1, SPT)
        with pytest.raises(ValueError):
            sample_network(0, 1, SPT, "gaussian")


def test_nearest_even_integer():
    assert nearest_even_integer(6.8e-6) == 0
    assert nearest_even_integer(1.2) == 2
    assert nearest_even_integer(-0.9) == 0
    assert nearest_even_integer(-1.1) == -2
    assert nearest_even_integer(1.0) is None
    assert verdict_from_chi(1.0) == (None, "none")
    assert verdict_from_chi(4.2) == (4, "none")
    assert verdict_from_chi(-2.3) == (-2, 2)


class TestReport:
    def test_worst_case_spt(self):
        rep = euler_bound_report(sample_network(0, 10, SPT, "fixed_at_bound"))
        assert rep.chi_derived == pytest.approx(6.8e-6, rel=1e-12)
        assert rep.chi_paper == pytest.approx(4.272566008882118804e-05, rel=1e-12)
        assert rep.nearest_even_integer == 0 and rep.genus_verdict == 1

    def test_empty(self):
        rep = euler_bound_report(sample_network(0, 0, SPT))
        assert rep.chi_derived == rep.chi_paper == 0.0
        assert rep.genus_verdict == 1

    def test_huge_tension_flips(self):
        big = ObservationalBound("hypothetical", 0.3)
        rep = euler_bound_report(sample_network(0, 1, big, "fixed_at_bound"))
        assert rep.chi_derived == pytest.approx(1.2)
        assert rep.nearest_even_integer == 2 and rep.genus_verdict == 0

    @settings(max_examples=200)
    @given(st.lists(st.floats(0, 1e-3), max_size=10))
    def test_small_sums_are_tori_under_both(self, gs):
        rep = euler_bound_report([StringTension(g) for g in gs])
        assert verdict_from_chi(rep.chi_derived)[1] == 1
        assert verdict_from_chi(rep.chi_paper)[1] == 1

    @settings(max_examples=200)
    @given(st.lists(st.floats(0, 0.2), min_size=1, max_size=6), st.integers(0, 5), st.floats(0, 0.05))
    def test_monotone(self, gs, i, bump):
        i %= len(gs)
        base = euler_bound_report([StringTension(g) for g in gs])
        gs2 = list(gs)
        gs2[i] += bump
        up = euler_bound_report([StringTension(g) for g in gs2])
        assert up.chi_derived >= base.chi_derived
        assert up.chi_paper >= base.chi_paper

    def test_rounding_thresholds(self):
        just_below = euler_bound_report([StringTension(0.2499)])
        assert verdict_from_chi(just_below.chi_derived)[1] == 1
        paper_edge = 1 / (8 * math.pi)
        assert verdict_from_chi(euler_bound_report([StringTension(paper_edge * 0.999)]).chi_paper)[1] == 1
        assert verdict_from_chi(euler_bound_report([StringTension(paper_edge * 1.001)]).chi_paper)[1] == 0

    @pytest.mark.parametrize("bound", BUILTIN_CATALOG, ids=lambda b: b.name)
    def test_every_catalog_bound_gives_torus(self, bound):
        rep = euler_bound_report(sample_network(0, 10, bound, "fixed_at_bound"))
        assert nearest_even_integer(rep.chi_derived) == nearest_even_integer(rep.chi_paper) == 0
