"""Coefficient sequences, rearrangements with respect to a cube measure, and
discrete Lorentz quasi-norms.

A finite-support sequence assigns a real coefficient to each cube of a finite
family.  Its rearrangement with respect to the measure ``nu`` is the
nonincreasing step function taking value ``v`` on an interval of length equal
to the total ``nu``-mass of the cubes whose (optionally weighted) magnitude
equals ``v``.  Both quasi-norm forms below — the rearrangement form and the
distribution-function form — reduce to finite sums over those steps, exactly
for power weights and to quadrature accuracy for power-log weights.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .dyadic import Cube, MeasureSpec
from .errors import ContractViolationError
from .weights import WeightFn, weight_integral, weight_sup_on_interval

__all__ = [
    "CoeffSeq",
    "StepRearrangement",
    "LorentzParams",
    "rearrange",
    "distribution",
    "lorentz_norm",
    "lorentz_norm_via_distribution",
]

# A per-cube weight: absent (all ones), a mapping, or a callable.
UWeights = Mapping[Cube, float] | Callable[[Cube], float] | None


def u_value(u: UWeights, cube: Cube) -> float:
    if u is None:
        return 1.0
    value = u[cube] if isinstance(u, Mapping) else u(cube)
    if not (value > 0 and math.isfinite(value)):
        raise ContractViolationError(f"weight for cube {cube} must be finite and > 0")
    return value


@dataclass(frozen=True)
class CoeffSeq:
    """Finite-support map from cubes to real coefficients; zeros are dropped."""

    entries: dict[Cube, float]

    def __post_init__(self) -> None:
        cleaned: dict[Cube, float] = {}
        d: int | None = None
        for cube, value in self.entries.items():
            value = float(value)
            if not math.isfinite(value):
                raise ContractViolationError(f"non-finite coefficient at {cube}")
            if value == 0.0:
                continue
            if d is None:
                d = cube.d
            elif cube.d != d:
                raise ContractViolationError("all cubes must share one dimension")
            cleaned[cube] = value
        object.__setattr__(self, "entries", cleaned)

    # -- constructors ------------------------------------------------------

    @classmethod
    def unit(cls, cube: Cube, value: float = 1.0) -> "CoeffSeq":
        """The single-atom sequence ``value`` at ``cube``."""
        return cls({cube: value})

    @classmethod
    def indicator(cls, cubes: Iterable[Cube], u: UWeights = None) -> "CoeffSeq":
        """Entries 1/u(Q) on the given cubes (the normalized indicator)."""
        return cls({q: 1.0 / u_value(u, q) for q in cubes})

    # -- basic access ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __getitem__(self, cube: Cube) -> float:
        return self.entries.get(cube, 0.0)

    def items(self):
        return self.entries.items()

    @property
    def support(self) -> tuple[Cube, ...]:
        return tuple(sorted(self.entries))

    @property
    def d(self) -> int | None:
        for cube in self.entries:
            return cube.d
        return None

    # -- lattice and vector operations ------------------------------------

    def scaled(self, c: float) -> "CoeffSeq":
        return CoeffSeq({q: c * v for q, v in self.entries.items()})

    def plus(self, other: "CoeffSeq") -> "CoeffSeq":
        merged = dict(self.entries)
        for q, v in other.entries.items():
            merged[q] = merged.get(q, 0.0) + v
        return CoeffSeq(merged)

    def minus(self, other: "CoeffSeq") -> "CoeffSeq":
        return self.plus(other.scaled(-1.0))

    def restricted(self, cubes: Iterable[Cube]) -> "CoeffSeq":
        keep = set(cubes)
        return CoeffSeq({q: v for q, v in self.entries.items() if q in keep})

    def without(self, cubes: Iterable[Cube]) -> "CoeffSeq":
        drop = set(cubes)
        return CoeffSeq({q: v for q, v in self.entries.items() if q not in drop})

    def abs_dominated_by(self, other: "CoeffSeq") -> bool:
        """Entrywise |self| <= |other|."""
        return all(abs(v) <= abs(other[q]) for q, v in self.entries.items())


@dataclass(frozen=True)
class StepRearrangement:
    """Nonincreasing right-continuous step function.

    Value ``values[k]`` is taken on ``[masses[k-1], masses[k])`` (with
    ``masses[-1]`` read as 0), and 0 from ``masses[-1]`` on.
    """

    masses: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.masses) != len(self.values):
            raise ContractViolationError("masses and values must align")
        prev = 0.0
        for mass in self.masses:
            if not mass > prev:
                raise ContractViolationError("cumulative masses must increase")
            prev = mass
        for earlier, later in zip(self.values, self.values[1:]):
            if not later < earlier:
                raise ContractViolationError("step values must strictly decrease")
        if self.values and not self.values[-1] > 0:
            raise ContractViolationError("step values must be positive")

    @property
    def total_mass(self) -> float:
        return self.masses[-1] if self.masses else 0.0

    def value_at(self, t: float) -> float:
        if t < 0:
            raise ContractViolationError("argument must be >= 0")
        idx = bisect_right(self.masses, t)
        return self.values[idx] if idx < len(self.values) else 0.0

    def pieces(self) -> Iterable[tuple[float, float, float]]:
        """Yield (start, end, value) for each step interval."""
        start = 0.0
        for mass, value in zip(self.masses, self.values):
            yield start, mass, value
            start = mass


def rearrange(
    s: CoeffSeq, measure: MeasureSpec, u: UWeights = None
) -> StepRearrangement:
    """Rearrangement of ``{u_I * s_I}`` with respect to the cube measure.

    Entries with equal magnitude are merged into a single step whose length is
    their combined mass, which keeps the closed-form norm accumulation
    unambiguous.
    """
    by_magnitude: dict[float, list[float]] = {}
    for cube, value in s.items():
        magnitude = abs(u_value(u, cube) * value)
        if magnitude > 0:
            by_magnitude.setdefault(magnitude, []).append(measure(cube))
    magnitudes = sorted(by_magnitude, reverse=True)
    all_masses: list[float] = []
    cumulative: list[float] = []
    for magnitude in magnitudes:
        all_masses.extend(by_magnitude[magnitude])
        cumulative.append(math.fsum(all_masses))
    return StepRearrangement(tuple(cumulative), tuple(magnitudes))


def distribution(
    s: CoeffSeq, measure: MeasureSpec, lam: float, u: UWeights = None
) -> float:
    """Mass of the strict super-level set { I : |u_I * s_I| > lam }."""
    if lam < 0:
        raise ContractViolationError("level must be >= 0")
    return math.fsum(
        measure(cube)
        for cube, value in s.items()
        if abs(u_value(u, cube) * value) > lam
    )


@dataclass(frozen=True)
class LorentzParams:
    """Parameters of the Lorentz quasi-norm.

    ``eta`` is the base weight; ``mu`` the integrability exponent (``math.inf``
    turns the integral into a sup); ``xi`` shifts the weight to t^xi * eta(t);
    ``u`` premultiplies each coefficient before rearranging.
    """

    eta: WeightFn
    mu: float
    xi: float = 0.0
    u: UWeights = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise ContractViolationError("mu must be > 0 (math.inf allowed)")
        if self.xi < 0:
            raise ContractViolationError("xi must be >= 0")

    @property
    def combined_weight(self) -> WeightFn:
        return self.eta.times_power(self.xi)


def lorentz_norm(s: CoeffSeq, measure: MeasureSpec, params: LorentzParams) -> float:
    """The rearrangement-form quasi-norm.

    For finite ``mu`` the integral splits over the rearrangement steps into
    weight integrals computed by :func:`restapprox.weights.weight_integral`
    (closed form for power weights).  For ``mu = inf`` the sup over each step
    is the step value times the exact sup of the weight on that interval.
    """
    steps = rearrange(s, measure, params.u)
    if not steps.masses:
        return 0.0
    w = params.combined_weight
    if math.isinf(params.mu):
        return max(
            value * weight_sup_on_interval(w, start, end)
            for start, end, value in steps.pieces()
        )
    mu = params.mu
    total = math.fsum(
        value**mu * weight_integral(w, mu, start, end)
        for start, end, value in steps.pieces()
    )
    return total ** (1.0 / mu)


def lorentz_norm_via_distribution(
    s: CoeffSeq,
    measure: MeasureSpec,
    params: LorentzParams,
    tol: float = 1e-12,
) -> float:
    """The distribution-function form of the quasi-norm.

    The super-level mass is a step function of the level, so the integral is a
    finite sum of monomial integrals between consecutive distinct magnitudes —
    no quadrature is needed and ``tol`` is accepted only for interface
    stability.  Equals the rearrangement form up to equivalence constants
    depending only on the weight, not on the sequence.
    """
    del tol  # the step-function reduction below is already exact
    steps = rearrange(s, measure, params.u)
    if not steps.masses:
        return 0.0
    w = params.combined_weight
    values = steps.values + (0.0,)
    if math.isinf(params.mu):
        return max(
            value * w.value(mass) for value, mass in zip(steps.values, steps.masses)
        )
    mu = params.mu
    total = math.fsum(
        w.value(mass) ** mu * (values[k] ** mu - values[k + 1] ** mu) / mu
        for k, mass in enumerate(steps.masses)
    )
    return total ** (1.0 / mu)
