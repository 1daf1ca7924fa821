"""Spectrum classification: golden verdicts, table rules, duality."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spectral_ssmp.exponents import WienerHopfPair
from spectral_ssmp.families import make_bernstein
from spectral_ssmp.spectrum import (
    FactorTails,
    SpectrumReport,
    classify,
    spectrum_values,
    table_rule,
)
from spectral_ssmp.transform import GridSpec, multiplier_h

SPEC = GridSpec()
PHI_ID = make_bernstein("drift", d=1.0)
PHI_AFF = make_bernstein("affine", d=1.0, c=1.0)


def gamma_pair(at, al, rho):
    return WienerHopfPair(
        make_bernstein("gamma-ratio-plus", alpha_tilde=at),
        make_bernstein("gamma-ratio-minus", alpha=al, rho=rho))


GOLDEN = [
    (WienerHopfPair(PHI_ID, PHI_ID), "Continuous"),
    (gamma_pair(0.7, 0.3, 1.0), "Point"),
    (gamma_pair(0.3, 0.7, 1.0), "Residual"),
    (gamma_pair(0.5, 0.5, 0.75), "Point"),
]


@pytest.mark.parametrize("pair,want", GOLDEN)
def test_golden_verdicts(pair, want):
    rep = classify(pair, SPEC)
    assert rep.verdict == want


def test_verdict_stable_under_grid_doubling():
    fine = GridSpec(-20.0, 40.0, 8192)
    for pair, want in GOLDEN:
        assert classify(pair, fine).verdict == want


def test_point_residual_duality():
    for pair, want in GOLDEN:
        if want not in ("Point", "Residual"):
            continue
        swapped = WienerHopfPair(pair.phi_minus, pair.phi_plus)
        got = classify(swapped, SPEC).verdict
        assert got == ("Residual" if want == "Point" else "Point")


def test_theta_gap_soundness():
    # a theta-gap Point verdict implies a 10x drop of |m| between
    # xi_max/4 and xi_max
    pair = gamma_pair(0.7, 0.3, 1.0)
    rep = classify(pair, SPEC, xi_max=200.0)
    assert rep.verdict == "Point" and rep.branch == "theta-gap"
    m = multiplier_h(pair, SPEC)
    xi = np.abs(SPEC.xi)
    lvl = lambda c: np.median(np.abs(m.values[(xi > 0.9 * c) & (xi < 1.1 * c)]))
    assert lvl(50.0) / lvl(200.0) >= 10.0


def test_affine_pair_is_point_via_bands():
    rep = classify(WienerHopfPair(PHI_ID, PHI_AFF), SPEC)
    assert rep.verdict == "Point"
    assert rep.branch == "band-decay"
    assert rep.l2_mass_m_finite and not rep.l2_mass_inv_finite


def test_approximate_only_polynomial_ratio():
    # both factors share the exponential rate; the ratio decays like
    # |xi|^{rho_plus - rho_minus} = |xi|^{-0.45}: slow enough to miss the
    # square-integrability fit, fast enough to lose two-sided boundedness
    p_plus = make_bernstein("gamma-ratio-minus", alpha=0.5, rho=0.3)
    p_minus = make_bernstein("gamma-ratio-minus", alpha=0.5, rho=0.75)
    rep = classify(WienerHopfPair(p_plus, p_minus), SPEC)
    assert rep.verdict == "ApproximateOnly"
    assert rep.bounded_above and not rep.bounded_below


def test_report_invariants():
    rep = classify(gamma_pair(0.7, 0.3, 1.0), SPEC)
    assert rep.l2_mass_m_finite
    assert not rep.l2_mass_inv_finite
    d = rep.to_dict()
    assert d["verdict"] == "Point"
    assert set(d) >= {"verdict", "theta_plus", "theta_minus", "branch"}


def test_report_rejects_unknown_verdict():
    with pytest.raises(Exception):
        SpectrumReport("Bogus", (0, 1), (0, 1), 1.0, False, 1.0, False,
                       True, True, None, SPEC, "none")


# ---------------------------------------------------------------------------
# table rules
# ---------------------------------------------------------------------------

def test_table2_row1():
    mp = FactorTails(drift=1.0, nu_bar_at_zero=2.0)
    mm = FactorTails(drift=0.0, nu_bar_at_zero=math.inf)
    assert table_rule(mp, mm) == "Point"
    assert table_rule(mm, mp) == "Residual"


def test_table1_row1():
    mp = FactorTails(0.0, math.inf, rv_index=0.8, quasi_monotone=True)
    mm = FactorTails(0.0, math.inf, rv_index=0.3, quasi_monotone=True)
    assert table_rule(mp, mm) == "Point"
    assert table_rule(mm, mp) == "Residual"


def test_table1_row2():
    mp = FactorTails(drift=0.5, nu_bar_at_zero=math.inf)
    mm = FactorTails(0.0, math.inf, rv_index=0.4, quasi_monotone=True)
    assert table_rule(mp, mm) == "Point"


def test_table2_row2():
    mp = FactorTails(drift=1.0, nu_bar_at_zero=3.0)
    mm = FactorTails(drift=0.5, nu_bar_at_zero=math.inf)
    assert table_rule(mp, mm) == "Point"


def test_table_no_match():
    same = FactorTails(drift=1.0, nu_bar_at_zero=0.0)
    assert table_rule(same, same) is None
    assert table_rule(None, same) is None
    # equal regular-variation indices never fire the strict inequality row
    eq = FactorTails(0.0, math.inf, rv_index=0.5, quasi_monotone=True)
    assert table_rule(eq, eq) is None


def test_table_rule_consistency_with_bands():
    # when the symbolic rule would fire, the direct band diagnostic agrees
    pair = WienerHopfPair(
        make_bernstein("compound-poisson", atoms=[[1.0, 2.0]], d=1.0),
        make_bernstein("stable", beta=0.5))
    tails_p = FactorTails.from_phi(pair.phi_plus)
    tails_m = FactorTails.from_phi(pair.phi_minus)
    assert table_rule(tails_p, tails_m) == "Point"
    rep = classify(pair, SPEC)
    assert rep.verdict == "Point"


# ---------------------------------------------------------------------------
# spectral ray
# ---------------------------------------------------------------------------

def test_spectrum_values():
    y = np.array([-1.0, 0.0, 1.0, 50.0])
    vals = spectrum_values(0.0, y)
    assert_allclose(vals, 1.0)
    assert spectrum_values(1.0, np.array([0.0]))[0] == pytest.approx(
        np.exp(-1.0))
    assert spectrum_values(1.0, np.array([60.0]))[0] == pytest.approx(1.0)
    assert np.all(np.diff(spectrum_values(2.0, np.linspace(-3, 3, 20))) >= 0)
