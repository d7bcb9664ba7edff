"""Sum-machinery tests: regimes, mixture weights, densities, transforms."""

import json
import math

import numpy as np
import pytest

from p3family.errors import DomainError, MomentDivergenceError, SupportError
from p3family.mc import empirical_moment, ks_distance, ks_threshold, sample_sum
from p3family.pearson3 import Pearson3Params, p3_cdf, p3_pdf
from p3family.sums import (
    DISTINCT_RATES,
    EQUAL_RATES,
    SumSpec,
    logitsum_cdf,
    logitsum_moment,
    logitsum_pdf,
    logsum_cdf,
    logsum_moment,
    logsum_pdf,
    spec_from_json,
    spec_to_json,
    sum_cdf,
    sum_moment,
    sum_pdf,
    xi0_closed,
    xi0_recursive,
    xi_shifted,
)

P = Pearson3Params

HYPOEXP = SumSpec((P(1.0, 1.0, 0.0), P(1.0, 2.0, 0.0)))
MIXED_L3 = SumSpec((P(2.0, 1.3, 0.5), P(1.0, 2.2, -0.2), P(3.0, 3.7, 1.0)))
NEG_L2 = SumSpec((P(2.0, -1.1, 0.0), P(1.0, -2.5, -1.0)))


def test_construction_rejections():
    with pytest.raises(DomainError):
        SumSpec(())
    with pytest.raises(DomainError):
        SumSpec((P(1.5, 1.0, 0.0),))  # non-integer shape
    with pytest.raises(DomainError):
        SumSpec((P(1.0, 1.0, 0.0), P(1.0, -2.0, 0.0)))  # mixed signs
    with pytest.raises(DomainError) as exc:
        SumSpec((P(1.0, 1.0, 0.0), P(1.0, 1.0, 0.0), P(1.0, 3.0, 0.0)))
    assert "coincident" in str(exc.value)


def test_regime_classification():
    assert HYPOEXP.regime == DISTINCT_RATES
    eq = SumSpec((P(1.0, 2.0, 0.0), P(3.0, 2.0, 1.0)))
    assert eq.regime == EQUAL_RATES and not eq.snapped
    snapped = SumSpec((P(1.0, 1.0, 0.0), P(1.0, 1.0 + 1e-7, 0.0)))
    assert snapped.regime == EQUAL_RATES and snapped.snapped
    single = SumSpec((P(2.0, -1.0, 0.5),))
    assert single.regime == EQUAL_RATES and single.L == 1
    assert eq.reduced == P(4.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        HYPOEXP.reduced


def test_hypoexp_weights():
    # partial-fraction oracle: b1 b2/(b2-b1) (e^(-b1 x) - e^(-b2 x))
    assert xi0_recursive(HYPOEXP, 1, 1) == pytest.approx(2.0, rel=1e-13)
    assert xi0_recursive(HYPOEXP, 2, 1) == pytest.approx(-1.0, rel=1e-13)
    assert xi0_closed(HYPOEXP, 1, 1) == pytest.approx(2.0, rel=1e-13)
    assert xi0_closed(HYPOEXP, 2, 1) == pytest.approx(-1.0, rel=1e-13)


def test_three_exponential_weights_partial_fractions():
    # symbolic partial fractions of prod b_i/(s + b_i) for b = (1, 2, 3):
    # residues give weights 3, -3, 1.
    spec = SumSpec((P(1.0, 1.0, 0.0), P(1.0, 2.0, 0.0), P(1.0, 3.0, 0.0)))
    assert xi0_recursive(spec, 1, 1) == pytest.approx(3.0, rel=1e-12)
    assert xi0_recursive(spec, 2, 1) == pytest.approx(-3.0, rel=1e-12)
    assert xi0_recursive(spec, 3, 1) == pytest.approx(1.0, rel=1e-12)


def _random_distinct_spec(rng, L=None, sign=None, with_shifts=True):
    L = L if L is not None else int(rng.integers(2, 6))
    sign = sign if sign is not None else (1.0 if rng.random() < 0.5 else -1.0)
    # well separated rates: geometric spacing keeps the partial fractions
    # away from the catastrophic-cancellation zone
    bs = [sign * (1.5 + rng.random()) * 2.2 ** i for i in range(L)]
    return SumSpec(
        tuple(
            P(
                float(rng.integers(1, 5)),
                bs[i],
                float(rng.normal() if with_shifts else 0.0),
            )
            for i in range(L)
        )
    )


def test_weight_sum_and_recursion_vs_closed_randomized():
    rng = np.random.default_rng(2024)
    for _ in range(30):
        spec = _random_distinct_spec(rng)
        total = math.fsum(
            xi0_recursive(spec, i, k)
            for i in range(1, spec.L + 1)
            for k in range(1, spec.shape(i) + 1)
        )
        assert total == pytest.approx(1.0, abs=1e-10)
        for i in range(1, spec.L + 1):
            for k in range(1, spec.shape(i) + 1):
                assert xi0_recursive(spec, i, k) == pytest.approx(
                    xi0_closed(spec, i, k), rel=1e-10
                )


def test_weight_index_errors():
    with pytest.raises(DomainError):
        xi0_recursive(HYPOEXP, 3, 1)
    with pytest.raises(DomainError):
        xi0_recursive(HYPOEXP, 1, 2)
    eq = SumSpec((P(1.0, 2.0, 0.0), P(1.0, 2.0, 0.0)))
    with pytest.raises(DomainError):
        xi0_recursive(eq, 1, 1)


def test_xi_shifted_collapse_and_reconstruction():
    # all m_i = 0: only l = k survives
    assert xi_shifted(HYPOEXP, 1, 1, 1) == pytest.approx(
        xi0_recursive(HYPOEXP, 1, 1), rel=0
    )
    spec = SumSpec((P(1.0, 1.0, 1.0), P(1.0, 2.0, -1.0)))
    # expanding every component back onto its own shift reproduces the sum
    # density; the identity is an analytic rearrangement, valid where the
    # component formulas are all live (x above every shift)
    x_min = max(t.m for t in spec.terms)
    for x in np.linspace(x_min + 0.1, x_min + 6.0, 20):
        recon = math.fsum(
            xi_shifted(spec, i, k, l)
            * p3_pdf(P(float(l), spec.rate(i), spec.terms[i - 1].m), float(x))
            for i in range(1, spec.L + 1)
            for k in range(1, spec.shape(i) + 1)
            for l in range(1, k + 1)
        )
        assert recon == pytest.approx(sum_pdf(spec, float(x)), abs=1e-10)


def test_sum_pdf_values():
    # analytic hypoexponential convolution at x = 1
    assert sum_pdf(HYPOEXP, 1.0) == pytest.approx(
        2.0 * (math.exp(-1.0) - math.exp(-2.0)), rel=1e-12
    )
    # equal-rate reduction
    eq = SumSpec((P(1.0, 2.0, 0.0), P(2.0, 2.0, 0.0), P(3.0, 2.0, 1.0)))
    assert sum_pdf(eq, 2.0) == pytest.approx(p3_pdf(P(6.0, 2.0, 1.0), 2.0), rel=0)
    with pytest.raises(SupportError):
        sum_pdf(HYPOEXP, -0.5)


def test_sum_cdf_values():
    # analytic hypoexponential CDF at x = 1
    assert sum_cdf(HYPOEXP, 1.0) == pytest.approx(
        1.0 - 2.0 * math.exp(-1.0) + math.exp(-2.0), rel=1e-12
    )
    assert sum_cdf(HYPOEXP, 0.0) == 0.0
    assert sum_cdf(HYPOEXP, 1e9) == 1.0
    assert sum_cdf(NEG_L2, 5.0) == 1.0


@pytest.mark.parametrize("spec", [HYPOEXP, MIXED_L3, NEG_L2])
def test_sum_cdf_vs_mc(spec):
    samples = sample_sum(spec, 404, 300_000)
    assert ks_distance(samples, lambda x: sum_cdf(spec, x)) < ks_threshold(samples.size)


@pytest.mark.parametrize("spec", [HYPOEXP, MIXED_L3, NEG_L2])
def test_sum_moment_linearity_and_mc(spec):
    expected = math.fsum(t.a / t.b + t.m for t in spec.terms)
    assert sum_moment(spec, 1) == pytest.approx(expected, rel=1e-10)
    assert sum_moment(spec, 0) == pytest.approx(1.0, abs=1e-12)
    samples = sample_sum(spec, 505, 300_000)
    emp, se = empirical_moment(samples, 2)
    assert abs(sum_moment(spec, 2) - emp) < 3.0 * se


def test_near_equal_rate_stability():
    # rates 1 and 1.001: still distinct, but the mixture must hug the
    # equal-rate density to the genuine O(rate gap) offset
    close = SumSpec((P(1.0, 1.0, 0.0), P(1.0, 1.001, 0.0)))
    assert close.regime == DISTINCT_RATES
    ref = SumSpec((P(1.0, 1.0, 0.0), P(1.0, 1.0, 0.0)))
    xs = np.linspace(0.05, 10.0, 100)  # central 99% of mass
    gap = max(abs(sum_pdf(close, float(x)) - sum_pdf(ref, float(x))) for x in xs)
    assert gap < 1e-3


def test_near_coincident_rates_high_precision_path():
    # a 1e-5 relative gap with shape-3 components drives the weights past
    # 1e12; the evaluation must stay a valid CDF and hug the equal-rate one
    close = SumSpec((P(3.0, 2.0, 0.0), P(3.0, 2.0 * (1 + 1e-5), 0.0)))
    assert close.regime == DISTINCT_RATES
    assert close._weight_scale > 1e10
    ref = SumSpec((P(3.0, 2.0, 0.0), P(3.0, 2.0, 0.0)))
    for x in (0.5, 1.5, 3.0, 6.0):
        v = sum_cdf(close, x)
        assert 0.0 <= v <= 1.0
        assert v == pytest.approx(sum_cdf(ref, x), abs=1e-4)
        assert sum_pdf(close, x) == pytest.approx(sum_pdf(ref, x), abs=1e-4)


def test_logsum():
    assert logsum_cdf(HYPOEXP, 1.0) == 0.0  # e^(sm) endpoint
    assert logsum_cdf(NEG_L2, math.exp(NEG_L2.sm)) == 1.0
    with pytest.raises(DomainError):
        logsum_cdf(HYPOEXP, 0.0)
    # transform coherence: exact reuse of the base CDF
    for x in (0.3, 1.0, 2.5):
        assert logsum_cdf(HYPOEXP, math.exp(x)) == sum_cdf(HYPOEXP, x)
    # equal-rate moment reduction
    eq = SumSpec((P(1.0, 5.0, 0.1), P(2.0, 5.0, 0.2)))
    assert logsum_moment(eq, 1) == pytest.approx(
        math.exp(eq.sm) * (5.0 / 4.0) ** 3.0, rel=1e-12
    )
    with pytest.raises(MomentDivergenceError):
        logsum_moment(HYPOEXP, 1)  # b_1 = 1 <= n
    # b < 0 distinct: moment vs MC
    emp, se = empirical_moment(np.exp(sample_sum(NEG_L2, 606, 300_000)), 1)
    assert abs(logsum_moment(NEG_L2, 1) - emp) < 3.0 * se
    # pdf change of variables
    for y in (1.5, 3.0):
        assert logsum_pdf(HYPOEXP, y) == pytest.approx(
            sum_pdf(HYPOEXP, math.log(y)) / y, rel=1e-12
        )


def test_logitsum():
    for x in (0.3, 1.0, 2.5):
        z = 1.0 / (1.0 + math.exp(-x))
        # logit(logistic(x)) round-trips only to rounding
        assert logitsum_cdf(HYPOEXP, z) == pytest.approx(sum_cdf(HYPOEXP, x), rel=1e-12)
    with pytest.raises(DomainError):
        logitsum_cdf(HYPOEXP, 1.0)
    # equal-rate regime delegates to the reduced logit distribution
    eq = SumSpec((P(1.0, 2.0, 0.0), P(2.0, 2.0, 0.0)))
    from p3family.logitp3 import ltp3_moment

    assert logitsum_moment(eq, 1) == pytest.approx(
        ltp3_moment(P(3.0, 2.0, 0.0), 1), rel=0
    )
    # distinct: moment vs MC
    z = 1.0 / (1.0 + np.exp(-sample_sum(HYPOEXP, 707, 300_000)))
    emp, se = empirical_moment(z, 1)
    assert abs(logitsum_moment(HYPOEXP, 1) - emp) < 3.0 * se
    with pytest.raises(DomainError):
        logitsum_moment(NEG_L2, 1)
    # pdf change of variables
    for zz in (0.75, 0.9):
        x = math.log(zz / (1.0 - zz))
        assert logitsum_pdf(HYPOEXP, zz) == pytest.approx(
            sum_pdf(HYPOEXP, x) / (zz * (1.0 - zz)), rel=1e-12
        )


def test_json_round_trip():
    doc = spec_to_json(MIXED_L3)
    back = spec_from_json(doc)
    assert back.terms == MIXED_L3.terms
    assert json.loads(doc)["terms"][0]["a"] == 2
    with pytest.raises(DomainError):
        spec_from_json("{not json")
    with pytest.raises(DomainError):
        spec_from_json('{"no_terms": []}')
