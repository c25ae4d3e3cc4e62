"""Indicator-functional comparisons across structured cube families."""

from __future__ import annotations

import math

import numpy as np
import pytest

from restapprox import (
    CapabilityError,
    ContractViolationError,
    Cube,
    DemocracyCase,
    GammaFamily,
    MeasureSpec,
    SpaceParams,
    admissible_spread,
    democracy_ratio_sweep,
    democracy_value,
    divergence_exponent,
    nu_measure,
    predicted_admissible,
    random_cube_set,
)


def _case(s1=0.0, p1=1.7, q1=1.7, s2=0.3, p2=2.0, q2=2.0, d=1, alpha=None):
    f1 = SpaceParams(s1, p1, q1, d, "tl")
    f2 = SpaceParams(s2, p2, q2, d, "besov")
    case = DemocracyCase(f1, f2, 0.0 if alpha is None else alpha)
    if alpha is None:
        case = DemocracyCase(f1, f2, case.formula_alpha)
    return case


def test_case_exponents_by_hand():
    case = _case(s1=0.0, p1=1.7, s2=0.3, p2=2.0)
    assert case.coefficient_exponent == pytest.approx(0.3 - 0.5, rel=1e-15)
    assert case.formula_alpha == pytest.approx(1.7 * (-0.2) + 1.0, rel=1e-14)
    assert case.d == 1
    assert isinstance(case.measure, MeasureSpec)


def test_case_validation():
    f_b = SpaceParams(0.0, 2.0, 2.0, 1, "besov")
    f_t = SpaceParams(0.0, 2.0, 2.0, 1, "tl")
    with pytest.raises(ContractViolationError):
        DemocracyCase(f_b, f_b, 1.0)
    with pytest.raises(ContractViolationError):
        DemocracyCase(f_t, SpaceParams(0.0, 2.0, 2.0, 2, "besov"), 1.0)


def test_predicted_admissible_truth_table():
    matched = _case()
    assert predicted_admissible(matched).ok
    off = DemocracyCase(matched.f1, matched.f2, matched.formula_alpha + 0.1)
    verdict = predicted_admissible(off)
    assert not verdict.ok
    assert "differs" in verdict.reason
    # e == 0 pushes the matching exponent to 1, where the aggregation
    # exponents must agree for nested towers to stay comparable.
    balanced = _case(s1=0.0, p1=1.7, q1=1.7, s2=0.5, p2=2.0)
    assert balanced.formula_alpha == pytest.approx(1.0, abs=1e-15)
    assert predicted_admissible(balanced).ok
    skew = _case(s1=0.0, p1=1.2, q1=2.8, s2=0.5, p2=2.0)
    verdict = predicted_admissible(skew)
    assert not verdict.ok
    assert "p1" in verdict.reason


def test_family_counts():
    assert GammaFamily("grid", 3, L=2, d=2).count == 9
    assert GammaFamily("tower", 4, d=1).count == 15  # 1 + 2 + 4 + 8
    assert GammaFamily("tower", 3, d=2).count == 21  # 1 + 4 + 16
    assert GammaFamily("row", 7, d=2).count == 7


def test_family_validation():
    with pytest.raises(ContractViolationError):
        GammaFamily("ladder", 3)
    with pytest.raises(ContractViolationError):
        GammaFamily("grid", 0)
    with pytest.raises(ContractViolationError):
        GammaFamily("grid", 3, L=3)
    with pytest.raises(ContractViolationError):
        GammaFamily("tower", 3, L=2)
    with pytest.raises(ContractViolationError):
        GammaFamily("row", 3, L=2)


def test_generate_shapes():
    grid = GammaFamily("grid", 2, L=2, d=2).generate()
    assert len(grid) == 4
    assert all(q.j == -1 and q.d == 2 for q in grid)
    tower = GammaFamily("tower", 3, d=1).generate()
    assert len(tower) == 7
    assert sorted({q.j for q in tower}) == [0, 1, 2]
    row = GammaFamily("row", 4, d=3).generate()
    assert [q.k[0] for q in row] == [0, 1, 2, 3]
    assert all(q.j == 0 for q in row)


@pytest.mark.parametrize(
    "fam",
    [
        GammaFamily("grid", 4, L=2, d=1),
        GammaFamily("grid", 3, L=1, d=2),
        GammaFamily("tower", 4, d=1),
        GammaFamily("tower", 3, d=2),
        GammaFamily("row", 6, d=1),
        GammaFamily("row", 4, d=2),
    ],
)
def test_closed_forms_match_direct_evaluation(fam):
    case = _case(s1=0.2, p1=1.6, q1=2.3, s2=0.7, p2=1.9, q2=3.1, d=fam.d, alpha=0.8)
    cubes = fam.generate()
    assert len(cubes) == fam.count
    assert democracy_value(cubes, case) == pytest.approx(
        fam.closed_form_value(case), rel=1e-12
    )
    for alpha in (0.8, 1.0, 1.3):
        assert nu_measure(cubes, MeasureSpec(alpha)) == pytest.approx(
            fam.closed_form_mass(alpha), rel=1e-12
        )


@pytest.mark.parametrize("s2", [1.2, -0.3])
def test_tower_sup_aggregation_closed_form(s2):
    # q1 = inf: the deepest chain dominates, in either direction of e.
    fam = GammaFamily("tower", 4, d=1)
    case = _case(s1=0.2, p1=1.6, q1=math.inf, s2=s2, p2=2.0, d=1, alpha=1.0)
    got = democracy_value(fam.generate(), case)
    assert got == pytest.approx(fam.closed_form_value(case), rel=1e-12)


def test_generate_cap():
    fam = GammaFamily("tower", 10, d=2)
    assert fam.count == (4**10 - 1) // 3
    with pytest.raises(CapabilityError):
        fam.generate()
    # closed forms keep working far beyond the materialization cap
    case = _case(d=2)
    assert fam.closed_form_value(case) > 0.0
    assert fam.closed_form_mass(1.0) > 0.0


def test_sweep_switches_sources():
    case = _case()
    fam = GammaFamily("grid", 3, L=1, d=1)
    direct = democracy_ratio_sweep(case, [fam], materialize_limit=4096)[0]
    closed = democracy_ratio_sweep(case, [fam], materialize_limit=2)[0]
    assert direct.source == "direct"
    assert closed.source == "closed-form"
    assert direct.ratio == pytest.approx(closed.ratio, rel=1e-12)
    assert direct.count == closed.count == 3


def test_divergence_slope_admissible_is_flat():
    case = _case(s1=0.0, p1=1.7, q1=1.7, s2=0.5, p2=2.0)  # e = 0, alpha = 1
    slope, rows = divergence_exponent(case, [4, 8, 16, 32])
    assert abs(slope) < 1e-9
    assert {r.family for r in rows} == {"tower", "row"}


def test_divergence_slope_matches_exponent_gap():
    case = _case(s1=0.0, p1=1.2, q1=2.8, s2=0.5, p2=2.0, alpha=1.0)
    slope, _ = divergence_exponent(case, [4, 8, 16, 32])
    assert slope == pytest.approx(abs(1.0 / 2.8 - 1.0 / 1.2), abs=1e-9)


def test_divergence_needs_two_sizes():
    with pytest.raises(ContractViolationError):
        divergence_exponent(_case(), [8])


def test_random_cube_set_properties():
    rng = np.random.default_rng(0)
    box = Cube(-2, (0, 0))
    cubes = random_cube_set(rng, 25, 2, -2, 3)
    assert len(cubes) == len(set(cubes)) == 25
    assert all(-2 <= q.j <= 3 for q in cubes)
    assert all(box.contains(q) for q in cubes)
    with pytest.raises(ContractViolationError):
        random_cube_set(rng, 3, 1, 2, 1)
    with pytest.raises(ContractViolationError):
        random_cube_set(rng, 10, 1, 0, 0)  # only one cube exists in the window


def test_admissible_spread_is_bounded():
    case = _case(s1=0.0, p1=2.0, q1=2.0, s2=0.5, p2=2.0)  # e = 0, alpha = 1
    mn, mx = admissible_spread(case, np.random.default_rng(7), 5, 30)
    assert 0.2 < mn <= mx < 5.0
