"""Coefficient sequences, rearrangements, and the weighted quasi-norm."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from restapprox import (
    CoeffSeq,
    ContractViolationError,
    Cube,
    LorentzParams,
    MeasureSpec,
    StepRearrangement,
    WeightFn,
    distribution,
    lorentz_norm,
    lorentz_norm_via_distribution,
    rearrange,
)

from conftest import seq_strategy

Q0 = Cube(0, (0,))
Q1 = Cube(1, (0,))
Q2 = Cube(1, (1,))
Q3 = Cube(2, (0,))


def test_coeffseq_drops_zeros_and_indexes():
    s = CoeffSeq({Q0: 1.0, Q1: 0.0, Q2: -2.0})
    assert len(s) == 2
    assert s[Q1] == 0.0
    assert s[Q2] == -2.0
    assert s.support == (Q0, Q2)
    assert s.d == 1


def test_coeffseq_rejects_bad_values():
    with pytest.raises(ContractViolationError):
        CoeffSeq({Q0: math.inf})
    with pytest.raises(ContractViolationError):
        CoeffSeq({Q0: 1.0, Cube(0, (0, 0)): 1.0})


def test_coeffseq_algebra():
    s = CoeffSeq({Q0: 2.0, Q1: -1.0})
    t = CoeffSeq({Q1: 1.0, Q2: 3.0})
    assert s.plus(t).entries == {Q0: 2.0, Q2: 3.0}  # Q1 cancels exactly
    assert s.minus(t).entries == {Q0: 2.0, Q1: -2.0, Q2: -3.0}
    assert s.scaled(-2.0).entries == {Q0: -4.0, Q1: 2.0}
    assert s.restricted([Q0]).entries == {Q0: 2.0}
    assert s.without([Q0]).entries == {Q1: -1.0}
    assert s.restricted([Q0]).plus(s.without([Q0])).entries == s.entries


def test_abs_domination():
    s = CoeffSeq({Q0: 1.0, Q1: -0.5})
    t = CoeffSeq({Q0: -2.0, Q1: 1.0, Q2: 5.0})
    assert s.abs_dominated_by(t)
    assert not t.abs_dominated_by(s)


def test_indicator_uses_reciprocal_weights():
    u = {Q0: 2.0, Q2: 0.5}
    ind = CoeffSeq.indicator([Q0, Q2], u)
    assert ind.entries == {Q0: 0.5, Q2: 2.0}


def test_step_rearrangement_validation():
    with pytest.raises(ContractViolationError):
        StepRearrangement((1.0, 0.5), (2.0, 1.0))  # masses must increase
    with pytest.raises(ContractViolationError):
        StepRearrangement((0.5, 1.0), (1.0, 2.0))  # values must decrease
    r = StepRearrangement((0.5, 1.5), (2.0, 1.0))
    assert r.total_mass == 1.5
    assert r.value_at(0.0) == 2.0
    assert r.value_at(0.49) == 2.0
    assert r.value_at(0.5) == 1.0
    assert r.value_at(1.5) == 0.0
    assert list(r.pieces()) == [(0.0, 0.5, 2.0), (0.5, 1.5, 1.0)]


def test_rearrange_hand_case_with_ties():
    # |values| 3, 2, 2, 1 with measure alpha=1: masses 1, 0.5, 0.25, 0.5.
    s = CoeffSeq({Q0: 3.0, Q1: -2.0, Q3: 2.0, Q2: 1.0})
    r = rearrange(s, MeasureSpec(1.0))
    assert r.values == (3.0, 2.0, 1.0)  # the tied magnitude 2 merges
    assert r.masses == (1.0, 1.75, 2.25)


def test_rearrange_with_u_weights():
    u = {Q0: 0.5, Q1: 4.0}
    s = CoeffSeq({Q0: 4.0, Q1: 1.0})  # u|s|: 2.0 and 4.0 — order flips
    r = rearrange(s, MeasureSpec(1.0), u)
    assert r.values == (4.0, 2.0)
    assert r.masses == (0.5, 1.5)


def test_distribution_counts_strict_super_level():
    s = CoeffSeq({Q0: 3.0, Q1: -2.0, Q2: 1.0})
    m = MeasureSpec(1.0)
    assert distribution(s, m, 0.0) == 2.0  # all of mass 1 + .5 + .5
    assert distribution(s, m, 1.0) == 1.5  # strictly above 1
    assert distribution(s, m, 2.5) == 1.0
    assert distribution(s, m, 3.0) == 0.0


@given(seq_strategy(max_size=8), st.floats(-1.5, 1.5), st.floats(0.0, 100.0))
def test_distribution_matches_rearrangement(s, alpha, lam):
    m = MeasureSpec(alpha)
    r = rearrange(s, m)
    got = distribution(s, m, lam)
    # d(lam) = sup {T : value_at(T) > lam}, which for a step function is the
    # cumulative mass of the steps with value > lam.
    want = 0.0
    for start, end, value in r.pieces():
        if value > lam:
            want = end
    assert got == pytest.approx(want, rel=1e-12, abs=0.0)


def test_lorentz_params_validation():
    with pytest.raises(ContractViolationError):
        LorentzParams(WeightFn.power(2.0), mu=0.0)
    with pytest.raises(ContractViolationError):
        LorentzParams(WeightFn.power(2.0), mu=1.0, xi=-0.5)


def test_lorentz_norm_hand_case():
    # Steps: value 3 on mass [0,1), 2 on [1,1.5), 1 on [1.5,2).
    s = CoeffSeq({Q0: 3.0, Q1: -1.0, Q2: 2.0})
    params = LorentzParams(WeightFn.power(2.0), mu=2.0, xi=0.5)
    # combined weight t^(1/2+1/2) = t; norm^2 = sum v^2 (T_k^2 - T_{k-1}^2)/2.
    want = math.sqrt(
        9.0 * (1.0 - 0.0) / 2.0 + 4.0 * (2.25 - 1.0) / 2.0 + 1.0 * (4.0 - 2.25) / 2.0
    )
    got = lorentz_norm(s, MeasureSpec(1.0), params)
    assert got == pytest.approx(want, rel=1e-14)


def test_lorentz_norm_sup_form_hand_case():
    s = CoeffSeq({Q0: 3.0, Q1: -1.0, Q2: 2.0})
    params = LorentzParams(WeightFn.power(2.0), mu=math.inf, xi=0.5)
    # sup over pieces of value * sup_{[T_{k-1},T_k]} t: right endpoints.
    want = max(3.0 * 1.0, 2.0 * 1.5, 1.0 * 2.0)
    assert lorentz_norm(s, MeasureSpec(1.0), params) == pytest.approx(want, rel=1e-14)


@given(
    seq_strategy(max_size=10),
    st.floats(-1.0, 1.0),
    st.floats(0.4, 4.0),
    st.floats(0.0, 1.5),
    st.floats(0.4, 4.0),
)
def test_two_norm_routes_exact_power_ratio(s, alpha, p_eta, xi, mu):
    """For a pure power weight t^c the two forms differ by exactly c^(-1/mu):

    the rearrangement form integrates t^(c*mu) dt/t (antiderivative divided by
    c*mu) while the distribution form uses eta(T)^mu / mu.
    """
    params = LorentzParams(WeightFn.power(p_eta), mu=mu, xi=xi)
    m = MeasureSpec(alpha)
    a = lorentz_norm(s, m, params)
    b = lorentz_norm_via_distribution(s, m, params)
    c = xi + 1.0 / p_eta
    assert a == pytest.approx(b * c ** (-1.0 / mu), rel=1e-12)


@given(
    seq_strategy(max_size=10),
    st.floats(-1.0, 1.0),
    st.floats(0.4, 4.0),
    st.floats(0.0, 1.5),
)
def test_two_norm_routes_equal_sup_form(s, alpha, p_eta, xi):
    """With mu = inf both forms take the same sup over right endpoints."""
    params = LorentzParams(WeightFn.power(p_eta), mu=math.inf, xi=xi)
    m = MeasureSpec(alpha)
    assert lorentz_norm(s, m, params) == lorentz_norm_via_distribution(s, m, params)


@given(seq_strategy(max_size=8), st.floats(1e-3, 1e3), st.booleans())
def test_lorentz_norm_homogeneous(s, mag, neg):
    c = -mag if neg else mag
    params = LorentzParams(WeightFn.power(1.7), mu=1.3, xi=0.4)
    m = MeasureSpec(0.7)
    assert lorentz_norm(s.scaled(c), m, params) == pytest.approx(
        abs(c) * lorentz_norm(s, m, params), rel=1e-12
    )


def test_lorentz_norm_empty_is_zero():
    params = LorentzParams(WeightFn.power(2.0), mu=2.0)
    assert lorentz_norm(CoeffSeq({}), MeasureSpec(1.0), params) == 0.0
    assert lorentz_norm_via_distribution(CoeffSeq({}), MeasureSpec(1.0), params) == 0.0


def test_powerlog_routes_within_equivalence_constants():
    """The two forms agree up to constants depending only on the weight.

    For a nondecreasing weight, bracketing each dyadic slice of the integral
    gives, at the norm level,

        (mu ln2 / C_dbl^mu)^(1/mu) <= rearranged/distribution
                                   <= (mu ln2 sum_j M(2^-j)^mu)^(1/mu)

    with M the dilation function and C_dbl the doubling constant.
    """
    s = CoeffSeq({Q0: 2.0, Q1: -0.7, Q3: 1.1})
    mu = 1.5
    params = LorentzParams(WeightFn.power_log(2.0, 0.5), mu=mu, xi=0.3)
    m = MeasureSpec(0.5)
    a = lorentz_norm(s, m, params)
    b = lorentz_norm_via_distribution(s, m, params)
    w = params.combined_weight
    dilation_tail = math.fsum(
        w.dilation_closed_form(2.0**-j) ** mu for j in range(1, 81)
    )
    hi = (mu * math.log(2.0) * (1.0 + dilation_tail)) ** (1.0 / mu)
    lo = (mu * math.log(2.0)) ** (1.0 / mu) / w.doubling_constant
    assert lo * (1 - 1e-9) <= a / b <= hi * (1 + 1e-9)
