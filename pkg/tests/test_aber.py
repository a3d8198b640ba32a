"""Closed-form ABER expressions and the sweep driver.

The two frozen anchors were produced by 50-digit mpmath quadrature of
A * sum_i p_i e^{-q_i B g} against densities written directly from the
textbook definitions — no package code involved.
"""

import math

import pytest

from conftest import closed_aber, density_for, scenario_batch

from gfaber import aber, fading, modulation, noise, quadrature

BPSK = modulation.parse_modulation("bpsk")
FIT2 = noise.builtin_fit(2.0)
MIMO1 = fading.MimoConfig(nt=1, nr=1)
MIMO2 = fading.MimoConfig(nt=2, nr=1)
MIMO4 = fading.MimoConfig(nt=2, nr=2)

# EtaMuParams(0.5, 1), 2x2, per-branch power 10, BPSK, a=2 table fit.
ETA_ABER_REF = 8.6197586862094818e-8
# KappaMuShadowedParams(2, 2, 1), same setup.
KMS_ABER_REF = 2.8434591040615501e-7


def test_eta_mu_frozen_anchor():
    params = fading.EtaMuParams(shape=0.5, mu=1.0, mean_power=10.0)
    got = aber.aber_closed(params, MIMO4, FIT2, 1.0, 2.0)
    assert math.isclose(got, ETA_ABER_REF, rel_tol=1e-10)


def test_kms_frozen_anchor():
    params = fading.KappaMuShadowedParams(kappa=2.0, mu=2.0, m=1.0,
                                          mean_power=10.0)
    got = aber.aber_closed(params, MIMO4, FIT2, 1.0, 2.0)
    assert math.isclose(got, KMS_ABER_REF, rel_tol=1e-10)


def test_closed_equals_reduced_across_batch():
    """Full and simplified expressions are the same function."""
    for family in ("eta-mu", "kappa-mu-shadowed"):
        for params, mimo, fit, a_const, b_const in scenario_batch(
                family, 10, seed=20240211):
            full = closed_aber(params, mimo, fit, a_const, b_const)
            red = closed_aber(params, mimo, fit, a_const, b_const,
                              reduced=True)
            assert math.isclose(full, red, rel_tol=1e-12, abs_tol=1e-300), (
                family, params)


def test_closed_equals_reduced_on_boundaries():
    """Degenerate eta = 1 and kappa = 0 keep the identity intact."""
    compact = fading.compact_eta_mu(
        fading.EtaMuParams(shape=1.0, mu=1.5, mean_power=5.0), MIMO2)
    full = aber.aber_eta_mu_closed(compact, FIT2, 1.0, 2.0)
    red = aber.aber_eta_mu_reduced(compact, FIT2, 1.0, 2.0)
    assert math.isclose(full, red, rel_tol=1e-12)
    compact = fading.compact_kms(
        fading.KappaMuShadowedParams(kappa=0.0, mu=1.5, m=2.0,
                                     mean_power=5.0), MIMO2)
    full = aber.aber_kms_closed(compact, FIT2, 1.0, 2.0)
    red = aber.aber_kms_reduced(compact, FIT2, 1.0, 2.0)
    assert math.isclose(full, red, rel_tol=1e-12)


def test_kappa_zero_matches_gamma_mgf():
    """kappa = 0 collapses to a gamma MGF: A sum p_i (b/(b+q_i B))^muN."""
    mu, m, gbar = 1.5, 3.0, 4.0
    params = fading.KappaMuShadowedParams(kappa=0.0, mu=mu, m=m,
                                          mean_power=gbar)
    for mimo in (MIMO1, MIMO4):
        n = mimo.branches
        shape = mu * n
        beta = shape / (n * gbar)
        for a_const, b_const in ((1.0, 2.0), (2.0, 1.0)):
            want = a_const * sum(
                p * (beta / (beta + q * b_const)) ** shape
                for p, q in zip(FIT2.p, FIT2.q))
            got = aber.aber_closed(params, mimo, FIT2, a_const, b_const)
            assert math.isclose(got, want, rel_tol=1e-12), (n, a_const)


def test_eta_one_matches_gamma_mgf():
    """eta = 1 (h=1, H=0) collapses to a gamma MGF with shape 2 mu N."""
    mu, gbar = 1.25, 3.0
    params = fading.EtaMuParams(shape=1.0, mu=mu, mean_power=gbar)
    for mimo in (MIMO1, MIMO2):
        n = mimo.branches
        shape = 2.0 * mu * n
        beta = 2.0 * mu / gbar
        want = sum(
            p * (beta / (beta + q * 2.0)) ** shape
            for p, q in zip(FIT2.p, FIT2.q))
        got = aber.aber_closed(params, mimo, FIT2, 1.0, 2.0)
        assert math.isclose(got, want, rel_tol=1e-12), n


def test_family_mapping_agrees():
    """Native eta-mu and its unified-family image give one answer."""
    for eta, mu in ((0.1, 0.5), (0.5, 1.0), (0.9, 2.0)):
        native = fading.EtaMuParams(shape=eta, mu=mu, mean_power=10.0)
        mapped = fading.special_case_params("eta-mu", eta=eta, mu=mu,
                                            mean_power=10.0)
        a = aber.aber_closed(native, MIMO1, FIT2, 1.0, 2.0)
        b = aber.aber_closed(mapped, MIMO1, FIT2, 1.0, 2.0)
        assert math.isclose(a, b, rel_tol=1e-9), (eta, mu)


def test_more_branches_lower_aber():
    eta_params = fading.EtaMuParams(shape=0.5, mu=1.0, mean_power=10.0)
    values = [
        aber.aber_closed(eta_params, mimo, FIT2, 1.0, 2.0)
        for mimo in (MIMO1, MIMO2, MIMO4)
    ]
    assert values[0] > values[1] > values[2]


def test_zero_amplitude_returns_zero():
    params = fading.EtaMuParams(shape=0.5, mu=1.0)
    compact = fading.compact_eta_mu(params, MIMO1)
    assert aber.aber_eta_mu_closed(compact, FIT2, 0.0, 2.0) == 0.0
    kparams = fading.KappaMuShadowedParams(kappa=1.0, mu=1.0, m=1.0)
    kcompact = fading.compact_kms(kparams, MIMO1)
    assert aber.aber_kms_closed(kcompact, FIT2, 0.0, 2.0) == 0.0


def test_negative_weight_row_stays_accurate():
    """The a = 2.5 table row carries a negative weight; the signed
    log-space assembly must still match the quadrature oracle."""
    fit = noise.builtin_fit(2.5)
    params = fading.KappaMuShadowedParams(kappa=1.0, mu=2.0, m=2.0,
                                          mean_power=10.0)
    closed = aber.aber_closed(params, MIMO2, fit, 2.0, 1.0)
    oracle = quadrature.aber_oracle(
        density_for(params, MIMO2), fit, 2.0, 1.0, rel_tol=1e-11)
    assert math.isclose(closed, oracle, rel_tol=1e-10)


def test_aber_closed_dispatches_by_family():
    eta_params = fading.EtaMuParams(shape=0.5, mu=1.0, mean_power=10.0)
    assert aber.aber_closed(eta_params, MIMO4, FIT2, 1.0, 2.0) == \
        aber.aber_eta_mu_closed(
            fading.compact_eta_mu(eta_params, MIMO4), FIT2, 1.0, 2.0)
    kms_params = fading.KappaMuShadowedParams(kappa=2.0, mu=2.0, m=1.0,
                                              mean_power=10.0)
    assert aber.aber_closed(kms_params, MIMO4, FIT2, 1.0, 2.0) == \
        aber.aber_kms_closed(
            fading.compact_kms(kms_params, MIMO4), FIT2, 1.0, 2.0)


def scenario(params, snr_grid=(0.0, 4.0, 8.0, 12.0, 16.0, 20.0)):
    return aber.AberScenario(
        fading=params, mimo=MIMO2, noise=FIT2, modulation=BPSK,
        snr_grid=snr_grid)


def test_sweep_closed_matches_pointwise_calls():
    sc = scenario(fading.EtaMuParams(shape=0.4, mu=1.0))
    curve = aber.sweep(sc)
    assert curve.method == aber.METHOD_CLOSED
    assert [snr for snr, _ in curve.points] == list(sc.snr_grid)
    for snr_db, value in curve.points:
        assert value == aber.aber_point(sc, snr_db, aber.METHOD_CLOSED)
    assert curve.monotone
    assert curve.values() == tuple(v for _, v in curve.points)


def test_sweep_oracle_methods_agree_with_closed():
    sc = scenario(fading.KappaMuShadowedParams(kappa=1.0, mu=1.0, m=2.0),
                  snr_grid=(0.0, 10.0, 20.0))
    closed = aber.sweep(sc, aber.METHOD_CLOSED)
    approx = aber.sweep(sc, aber.METHOD_ORACLE_APPROX, rel_tol=1e-11)
    exact = aber.sweep(sc, aber.METHOD_ORACLE_EXACT, rel_tol=1e-11)
    for (_, c), (_, ap), (_, ex) in zip(closed.points, approx.points,
                                        exact.points):
        assert math.isclose(c, ap, rel_tol=1e-8)
        # The fit itself is only ~percent accurate against the true
        # Q-function, so exact-weight values differ at that scale.
        assert math.isclose(c, ex, rel_tol=0.05)


def test_sweep_thread_settings_do_not_change_values():
    sc = scenario(fading.EtaMuParams(shape=0.7, mu=2.0))
    serial = aber.sweep(sc, threads=1)
    pooled = aber.sweep(sc, threads=2)
    auto = aber.sweep(sc, threads=0)
    assert serial.points == pooled.points == auto.points


def test_sweep_empty_grid():
    sc = scenario(fading.EtaMuParams(shape=0.4, mu=1.0), snr_grid=())
    curve = aber.sweep(sc)
    assert curve.points == ()
    assert curve.monotone


def test_sweep_records_gap_and_diagnostic_for_failing_point():
    """Extreme asymmetry (eta -> 0 with integer mu N) defeats the series
    term cap at low SNR; the sweep must degrade point-wise, not fail."""
    sc = scenario(fading.EtaMuParams(shape=1e-5, mu=1.0),
                  snr_grid=(0.0, 30.0))
    curve = aber.sweep(sc)
    assert curve.points[0][1] is None
    assert curve.points[1][1] is not None
    assert len(curve.diagnostics) == 1
    assert curve.diagnostics[0].startswith("snr_db=0")


def test_scenario_validation():
    params = fading.EtaMuParams(shape=0.4, mu=1.0)
    with pytest.raises(ValueError):
        aber.AberScenario(fading=params, mimo=MIMO1, noise=FIT2,
                          modulation=BPSK, snr_grid=(0.0, 0.0, 5.0))
    with pytest.raises(ValueError):
        aber.AberScenario(fading="rayleigh", mimo=MIMO1, noise=FIT2,
                          modulation=BPSK, snr_grid=(0.0,))
    with pytest.raises(ValueError):
        aber.aber_point(scenario(params), 0.0, method="guesswork")
