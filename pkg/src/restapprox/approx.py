"""Best approximation under a measure budget on the chosen support.

For a finite-support coefficient sequence, an approximant may use any subset
of cubes whose total measure stays within the budget; the optimal error is the
norm of the complement (restriction is optimal by lattice monotonicity of the
norms, so the search is over subsets of the support).  When the error norm has
equal inner and aggregation exponents it is additive across cubes, and the
search is a 0/1 knapsack: maximize captured additive weight subject to the
mass budget.

Provided solvers: exhaustive enumeration ("brute"), depth-first
branch-and-bound with a fractional relaxation bound ("knapsack"), and
threshold greedy ("greedy", an upper bound on the optimal error).  Profiles
tabulate the error as a step function of the budget, which the norm and
constant computations consume.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .dyadic import Cube, MeasureSpec, pow2
from .errors import CapabilityError, ContractViolationError
from .lorentz import CoeffSeq, LorentzParams, UWeights, lorentz_norm, u_value
from .spaces import SpaceParams, space_norm

__all__ = [
    "ApproxParams",
    "SigmaResult",
    "SigmaProfile",
    "DecomposeResult",
    "sigma_exact",
    "sigma_greedy",
    "sigma_profile",
    "approx_norm",
    "approx_norm_dyadic",
    "decompose",
    "jackson_constant",
    "bernstein_constant",
]

_BRUTE_MAX = 20
_BRUTE_MAX_NONADDITIVE = 12
_BNB_NODE_CAP = 500_000
_ENUM_CHUNK = 1 << 16


@dataclass(frozen=True)
class ApproxParams:
    """Rate exponent xi, integrability mu, error space, and support measure."""

    xi: float
    mu: float
    space: SpaceParams
    measure: MeasureSpec

    def __post_init__(self) -> None:
        if not (self.xi > 0 and math.isfinite(self.xi)):
            raise ContractViolationError("xi must be finite and > 0")
        if not self.mu > 0:
            raise ContractViolationError("mu must be > 0 (math.inf allowed)")


@dataclass(frozen=True)
class SigmaResult:
    """Error, chosen support, and provenance of one budgeted approximation."""

    error: float
    support: tuple[Cube, ...]
    certified: bool
    mode: str
    nodes: int = 0


@dataclass(frozen=True)
class SigmaProfile:
    """Step function of the budget: error ``errors[k]`` holds on
    ``[breakpoints[k], breakpoints[k+1])`` and 0 from the last breakpoint on.
    """

    breakpoints: tuple[float, ...]
    errors: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.breakpoints) != len(self.errors) + 1:
            raise ContractViolationError("need exactly one more breakpoint than errors")
        if not self.breakpoints or self.breakpoints[0] != 0.0:
            raise ContractViolationError("breakpoints must start at 0")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not b > a:
                raise ContractViolationError("breakpoints must strictly increase")
        slack = 1e-9 * max(1.0, self.errors[0] if self.errors else 0.0)
        for e0, e1 in zip(self.errors, self.errors[1:]):
            if e1 > e0 + slack:
                raise ContractViolationError("profile errors must not increase")

    @property
    def total_mass(self) -> float:
        return self.breakpoints[-1]

    def value_at(self, t: float) -> float:
        if t < 0:
            raise ContractViolationError("budget must be >= 0")
        idx = bisect_right(self.breakpoints, t) - 1
        return self.errors[idx] if idx < len(self.errors) else 0.0


@dataclass(frozen=True)
class DecomposeResult:
    """Dyadic-budget pieces (k, s_k) with sum s, and their rate score."""

    pieces: tuple[tuple[int, CoeffSeq], ...]
    score: float


def _is_additive(space: SpaceParams) -> bool:
    return space.p == space.q and math.isfinite(space.p)


def _additive_weights(cubes: list[Cube], values: list[float], space: SpaceParams):
    ae = space.atom_exponent
    return [
        (q.volume_power(ae) * abs(v)) ** space.p for q, v in zip(cubes, values)
    ]


def _sorted_entries(s: CoeffSeq) -> tuple[list[Cube], list[float]]:
    cubes = sorted(s.entries)
    return cubes, [s[q] for q in cubes]


def _enumerate_best(masses: np.ndarray, weights: np.ndarray, budget: float):
    """Feasible subset with maximal weight, by chunked exhaustive enumeration.

    Returns (best_weight, best_mask); the empty set is always feasible.  Ties
    resolve to the smallest bitmask, so results are deterministic.
    """
    n = len(masses)
    shifts = np.arange(n, dtype=np.uint64)
    best_w = -math.inf
    best_mask = 0
    for start in range(0, 1 << n, _ENUM_CHUNK):
        rows = np.arange(start, min(start + _ENUM_CHUNK, 1 << n), dtype=np.uint64)
        bits = ((rows[:, None] >> shifts[None, :]) & 1).astype(np.float64)
        mass = bits @ masses
        total = bits @ weights
        total[mass > budget] = -math.inf
        j = int(np.argmax(total))
        if total[j] > best_w:
            best_w = float(total[j])
            best_mask = int(rows[j])
    return best_w, best_mask


def _enumerate_frontier(masses: np.ndarray, weights: np.ndarray):
    """All Pareto-optimal (mass, captured-weight) subsets, mass-ascending.

    Returns a list of bitmasks whose captured weights strictly increase with
    mass; the first is the empty set and the last the full set.
    """
    n = len(masses)
    shifts = np.arange(n, dtype=np.uint64)
    all_mass = []
    all_w = []
    all_rows = []
    for start in range(0, 1 << n, _ENUM_CHUNK):
        rows = np.arange(start, min(start + _ENUM_CHUNK, 1 << n), dtype=np.uint64)
        bits = ((rows[:, None] >> shifts[None, :]) & 1).astype(np.float64)
        all_mass.append(bits @ masses)
        all_w.append(bits @ weights)
        all_rows.append(rows)
    mass = np.concatenate(all_mass)
    w = np.concatenate(all_w)
    rows = np.concatenate(all_rows)
    order = np.lexsort((-w, mass))
    frontier: list[int] = []
    best = -math.inf
    for idx in order:
        if w[idx] > best:
            best = float(w[idx])
            frontier.append(int(rows[idx]))
    return frontier


def _fractional_bound(
    level: int,
    cur_mass: float,
    cur_w: float,
    masses: list[float],
    weights: list[float],
    budget: float,
) -> float:
    room = budget - cur_mass
    bound = cur_w
    for i in range(level, len(masses)):
        if masses[i] <= room:
            room -= masses[i]
            bound += weights[i]
        else:
            bound += weights[i] * (room / masses[i])
            break
    return bound


def _branch_and_bound(masses: list[float], weights: list[float], budget: float):
    """Depth-first 0/1 knapsack with a fractional relaxation bound.

    Items are visited in decreasing weight density; the include branch is
    explored first so the incumbent improves early.  Returns
    (best_weight, chosen original indices, certified, nodes); ``certified`` is
    False when the node cap stopped the search before exhausting it.
    """
    n = len(masses)
    order = sorted(range(n), key=lambda i: (-(weights[i] / masses[i]), i))
    m = [masses[i] for i in order]
    w = [weights[i] for i in order]
    best_w = 0.0
    best_sel: tuple[int, ...] = ()
    nodes = 0
    certified = True
    # Stack of (level, mass so far, weight so far, chosen levels); the include
    # branch is pushed last so it pops first.
    stack: list[tuple[int, float, float, tuple[int, ...]]] = [(0, 0.0, 0.0, ())]
    while stack:
        nodes += 1
        if nodes > _BNB_NODE_CAP:
            certified = False
            break
        level, cur_mass, cur_w, sel = stack.pop()
        if cur_w > best_w:
            best_w = cur_w
            best_sel = sel
        if level == n:
            continue
        # Inflating the bound by 1e-12 relative dominates its float
        # accumulation error (< 64 ulp), so pruning never discards a subtree
        # that could beat the incumbent.
        bound = _fractional_bound(level, cur_mass, cur_w, m, w, budget)
        if bound * (1.0 + 1e-12) <= best_w:
            continue
        stack.append((level + 1, cur_mass, cur_w, sel))
        if cur_mass + m[level] <= budget:
            stack.append(
                (level + 1, cur_mass + m[level], cur_w + w[level], sel + (level,))
            )
    chosen = tuple(order[i] for i in best_sel)
    return best_w, chosen, certified, nodes


def sigma_exact(
    s: CoeffSeq, budget: float, params: ApproxParams, mode: str = "knapsack"
) -> SigmaResult:
    """Optimal budgeted approximation error and an optimal support.

    ``mode="brute"`` enumerates every subset (support size <= 20; <= 12 when
    the error norm is not additive).  ``mode="knapsack"`` runs branch and
    bound and requires an additive error norm (p == q); its ``certified`` flag
    reports whether the search completed within the node cap.
    """
    if not (budget >= 0 and math.isfinite(budget)):
        raise ContractViolationError("budget must be finite and >= 0")
    cubes, values = _sorted_entries(s)
    n = len(cubes)
    if n == 0:
        return SigmaResult(0.0, (), True, mode)
    masses = [params.measure(q) for q in cubes]
    additive = _is_additive(params.space)
    if mode == "brute":
        if n > _BRUTE_MAX:
            raise CapabilityError(f"brute mode handles at most {_BRUTE_MAX} cubes")
        if additive:
            weights = _additive_weights(cubes, values, params.space)
            _, best_mask = _enumerate_best(
                np.asarray(masses), np.asarray(weights), budget
            )
            support = [cubes[i] for i in range(n) if best_mask >> i & 1]
            nodes = 1 << n
        else:
            if n > _BRUTE_MAX_NONADDITIVE:
                raise CapabilityError(
                    "brute mode with a non-additive error norm handles at most "
                    f"{_BRUTE_MAX_NONADDITIVE} cubes"
                )
            best_err = math.inf
            best_mask = 0
            for mask in range(1 << n):
                mass = math.fsum(masses[i] for i in range(n) if mask >> i & 1)
                if mass > budget:
                    continue
                err = space_norm(
                    s.without(cubes[i] for i in range(n) if mask >> i & 1),
                    params.space,
                )
                if err < best_err:
                    best_err = err
                    best_mask = mask
            support = [cubes[i] for i in range(n) if best_mask >> i & 1]
            nodes = 1 << n
        certified = True
    elif mode == "knapsack":
        if not additive:
            raise CapabilityError(
                "knapsack mode requires an additive error norm (p == q < inf)"
            )
        weights = _additive_weights(cubes, values, params.space)
        _, chosen, certified, nodes = _branch_and_bound(masses, weights, budget)
        support = [cubes[i] for i in chosen]
    else:
        raise ContractViolationError("mode must be 'brute' or 'knapsack'")
    support = tuple(sorted(support))
    error = space_norm(s.without(support), params.space)
    return SigmaResult(error, support, certified, mode, nodes)


def sigma_greedy(
    s: CoeffSeq, budget: float, params: ApproxParams, u: UWeights = None
) -> SigmaResult:
    """Threshold greedy: admit cubes in decreasing |u_Q s_Q| while they fit.

    A cube that does not fit is skipped and later (smaller-mass) cubes are
    still considered.  The error is an upper bound on the optimum, so the
    result is never marked certified.
    """
    if not (budget >= 0 and math.isfinite(budget)):
        raise ContractViolationError("budget must be finite and >= 0")
    cubes, values = _sorted_entries(s)
    order = sorted(
        range(len(cubes)), key=lambda i: (-abs(u_value(u, cubes[i]) * values[i]), i)
    )
    kept: list[Cube] = []
    kept_masses: list[float] = []
    for i in order:
        mass = params.measure(cubes[i])
        if math.fsum(kept_masses) + mass <= budget:
            kept.append(cubes[i])
            kept_masses.append(mass)
    support = tuple(sorted(kept))
    error = space_norm(s.without(support), params.space)
    return SigmaResult(error, support, certified=False, mode="greedy")


def sigma_profile(
    s: CoeffSeq, params: ApproxParams, solver: str = "greedy", u: UWeights = None
) -> SigmaProfile:
    """Error as a step function of the budget.

    Exact solvers ("brute"/"knapsack") tabulate the full Pareto frontier of
    (support mass, captured weight) by enumeration, so the profile is the true
    optimal error at every budget.  "greedy" tabulates the threshold prefixes
    in decreasing |u_Q s_Q|, giving the greedy upper bound at every budget.
    """
    cubes, values = _sorted_entries(s)
    n = len(cubes)
    if n == 0:
        return SigmaProfile((0.0,), ())
    masses = [params.measure(q) for q in cubes]
    if solver == "greedy":
        order = sorted(
            range(n), key=lambda i: (-abs(u_value(u, cubes[i]) * values[i]), i)
        )
        raw = [(0.0, space_norm(s, params.space))]
        for count in range(1, n + 1):
            prefix = order[:count]
            raw.append(
                (
                    math.fsum(masses[i] for i in prefix),
                    space_norm(s.without(cubes[i] for i in prefix), params.space),
                )
            )
    elif solver in ("brute", "knapsack"):
        if n > _BRUTE_MAX:
            raise CapabilityError(
                f"exact profiles enumerate subsets and handle at most {_BRUTE_MAX} cubes"
            )
        if _is_additive(params.space):
            weights = _additive_weights(cubes, values, params.space)
            candidates = _enumerate_frontier(np.asarray(masses), np.asarray(weights))
        else:
            if n > _BRUTE_MAX_NONADDITIVE:
                raise CapabilityError(
                    "exact profiles with a non-additive error norm handle at most "
                    f"{_BRUTE_MAX_NONADDITIVE} cubes"
                )
            candidates = range(1 << n)
        raw = [
            (
                math.fsum(masses[i] for i in range(n) if mask >> i & 1),
                space_norm(
                    s.without(cubes[i] for i in range(n) if mask >> i & 1),
                    params.space,
                ),
            )
            for mask in candidates
        ]
    else:
        raise ContractViolationError("solver must be 'greedy', 'brute', or 'knapsack'")
    # Lower envelope of the tabulated points.  Re-sorting by the compensated
    # masses and keeping strict error improvements makes the step function
    # well defined even when two supports round to the same total mass.
    raw.sort()
    points: list[tuple[float, float]] = []
    best = math.inf
    for mass, err in raw:
        if err < best:
            best = err
            points.append((mass, err))
    breakpoints = tuple(mass for mass, _ in points)
    errors = tuple(err for _, err in points[:-1])
    return SigmaProfile(breakpoints, errors)


def approx_norm(
    s: CoeffSeq, params: ApproxParams, solver: str = "greedy", u: UWeights = None
) -> float:
    """Budget-weighted aggregate of the error profile.

    Finite mu integrates [t^xi * sigma(t)]^mu dt/t piecewise in closed form;
    mu = inf takes the sup, attained at right endpoints because xi > 0 and
    sigma is constant on each piece.
    """
    profile = sigma_profile(s, params, solver, u)
    if not profile.errors:
        return 0.0
    bp = profile.breakpoints
    if math.isinf(params.mu):
        return max(
            err * bp[k + 1] ** params.xi for k, err in enumerate(profile.errors)
        )
    x = params.xi * params.mu
    total = math.fsum(
        err**params.mu * (bp[k + 1] ** x - bp[k] ** x) / x
        for k, err in enumerate(profile.errors)
        if err > 0
    )
    return total ** (1.0 / params.mu)


def approx_norm_dyadic(
    s: CoeffSeq, params: ApproxParams, solver: str = "greedy", u: UWeights = None
) -> float:
    """Dyadic-budget aggregate: sum of [2^(k xi) sigma(2^k)]^mu over integers k.

    Budgets at or above the first breakpoint are evaluated explicitly; the
    infinite tail of smaller budgets, where the error is constantly the full
    norm, is summed as a geometric series in closed form.
    """
    profile = sigma_profile(s, params, solver, u)
    if not profile.errors:
        return 0.0
    first_mass = profile.breakpoints[1]
    last_mass = profile.breakpoints[-1]
    k_min = math.floor(math.log2(first_mass))
    while pow2(k_min) > first_mass:
        k_min -= 1
    k_up = math.ceil(math.log2(last_mass))
    while pow2(k_up) < last_mass:
        k_up += 1
    full = profile.errors[0]
    if math.isinf(params.mu):
        best = full * pow2((k_min - 1) * params.xi)
        for k in range(k_min, k_up):
            best = max(best, profile.value_at(pow2(k)) * pow2(k * params.xi))
        return best
    x = params.xi * params.mu
    tail = full**params.mu * pow2(k_min * x) / math.expm1(x * math.log(2.0))
    explicit = math.fsum(
        (profile.value_at(pow2(k)) * pow2(k * params.xi)) ** params.mu
        for k in range(k_min, k_up)
    )
    return (tail + explicit) ** (1.0 / params.mu)


def _support_at_budget(
    s: CoeffSeq, budget: float, params: ApproxParams, solver: str, u: UWeights
) -> frozenset[Cube]:
    if solver == "greedy":
        return frozenset(sigma_greedy(s, budget, params, u).support)
    return frozenset(sigma_exact(s, budget, params, mode=solver).support)


def decompose(
    s: CoeffSeq, params: ApproxParams, solver: str = "greedy", u: UWeights = None
) -> DecomposeResult:
    """Split s into pieces s_k of near-doubling support mass.

    With phi_k the chosen approximant at budget 2^(k-1), the piece
    s_k = phi_k - phi_{k-1} has support mass at most 2^(k-1) + 2^(k-2) <= 2^k,
    and the pieces telescope exactly back to s.  The score aggregates
    2^(k xi) ||s_k|| with exponent mu.
    """
    cubes, _ = _sorted_entries(s)
    if not cubes:
        return DecomposeResult((), 0.0)
    masses = [params.measure(q) for q in cubes]
    total = math.fsum(masses)
    smallest = min(masses)
    k_lo = math.floor(math.log2(smallest)) + 1
    while pow2(k_lo - 1) >= smallest:
        k_lo -= 1
    while pow2(k_lo) < smallest:
        k_lo += 1
    k_hi = math.floor(math.log2(total)) + 1
    while pow2(k_hi - 1) < total:
        k_hi += 1
    while k_hi - 1 > k_lo and pow2(k_hi - 2) >= total:
        k_hi -= 1
    previous: frozenset[Cube] = frozenset()
    pieces: list[tuple[int, CoeffSeq]] = []
    for k in range(k_lo + 1, k_hi + 1):
        current = _support_at_budget(s, pow2(k - 1), params, solver, u)
        entries = {q: s[q] for q in current - previous}
        entries.update({q: -s[q] for q in previous - current})
        piece = CoeffSeq(entries)
        if piece:
            pieces.append((k, piece))
        previous = current
    if previous != frozenset(cubes):
        raise ContractViolationError(
            "final budget did not capture the full support"
        )
    norms = [
        pow2(k * params.xi) * space_norm(piece, params.space) for k, piece in pieces
    ]
    if not norms:
        score = 0.0
    elif math.isinf(params.mu):
        score = max(norms)
    else:
        score = math.fsum(v**params.mu for v in norms) ** (1.0 / params.mu)
    return DecomposeResult(tuple(pieces), score)


def _profile_sup(profile: SigmaProfile, xi: float) -> float:
    """sup over budgets of t^xi * sigma(t), from a tabulated profile."""
    bp = profile.breakpoints
    return max(
        (err * bp[k + 1] ** xi for k, err in enumerate(profile.errors)),
        default=0.0,
    )


def jackson_constant(
    suite: Iterable[CoeffSeq],
    params: ApproxParams,
    lorentz: LorentzParams,
    solver: str = "greedy",
) -> float:
    """Largest ratio sup_t t^xi sigma(t) / ||s||_Lorentz over the suite.

    Greedy profiles overestimate sigma, so the returned constant is an upper
    bound for the true one; exact solvers give it exactly on small supports.
    """
    best = 0.0
    for s in suite:
        if not s:
            continue
        profile = sigma_profile(s, params, solver, u=lorentz.u)
        numerator = _profile_sup(profile, params.xi)
        denominator = lorentz_norm(s, params.measure, lorentz)
        if denominator == 0:
            raise ContractViolationError("suite member with zero Lorentz norm")
        best = max(best, numerator / denominator)
    return best


def bernstein_constant(
    suite: Iterable[CoeffSeq],
    params: ApproxParams,
    lorentz: LorentzParams,
) -> float:
    """Largest ratio ||s||_Lorentz / (nu(supp s)^xi ||s||_error) over the suite."""
    best = 0.0
    for s in suite:
        if not s:
            continue
        numerator = lorentz_norm(s, params.measure, lorentz)
        mass = math.fsum(params.measure(q) for q in s.support)
        denominator = mass**params.xi * space_norm(s, params.space)
        if denominator == 0:
            raise ContractViolationError("suite member with zero error norm")
        best = max(best, numerator / denominator)
    return best
