"""Dyadic cubes, cube-set measures, and exact integration of piecewise-constant
functions built from finite cube families.

A cube with scale ``j`` and integer position vector ``k`` of length ``d`` is the
half-open box ``2^(-j) * ([0,1)^d + k)`` with volume ``2^(-j*d)``.  Any two such
cubes are either disjoint or nested, which lets a finite family be organised
into a containment forest whose leaf-to-root chains describe exactly where each
cube contributes.  Integrals of ``(sum of per-cube constants)^theta`` over
``R^d`` are then finite sums over forest regions — no sampling, no quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ConfigError, ContractViolationError, ScaleRangeError

__all__ = [
    "Cube",
    "MeasureSpec",
    "ContainmentForest",
    "pow2",
    "cube_volume",
    "nu_measure",
    "cube_sum",
    "biggest_smallest_cube",
    "integrate_power_of_cube_sum",
    "cubes_to_text",
    "cubes_from_text",
]

# Exponents beyond this leave the range where 2^e is a normal float (and where
# products |Q|^a stay well conditioned); callers get an explicit error instead
# of silent overflow/underflow.
_MAX_EXP = 1000.0


def pow2(exponent: float) -> float:
    """2**exponent with exact results for integral exponents.

    Raises ScaleRangeError outside the safe exponent range.
    """
    if abs(exponent) > _MAX_EXP:
        raise ScaleRangeError(
            f"2^{exponent:g} is outside the supported float exponent range"
        )
    n = round(exponent)
    if exponent == n:
        return math.ldexp(1.0, int(n))
    return 2.0**exponent


@dataclass(frozen=True, order=True)
class Cube:
    """The dyadic cube ``2^(-j) * ([0,1)^d + k)``.

    ``j`` may be negative (big cubes); ``k`` components may be negative.
    """

    j: int
    k: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.k:
            raise ContractViolationError("cube position vector must be non-empty")
        object.__setattr__(self, "k", tuple(int(c) for c in self.k))

    @property
    def d(self) -> int:
        return len(self.k)

    @property
    def volume(self) -> float:
        return cube_volume(self)

    def side(self) -> float:
        """Edge length 2^(-j)."""
        return pow2(-self.j)

    def volume_power(self, exponent: float) -> float:
        """|Q|^exponent = 2^(-j*d*exponent), computed in one exponential."""
        return pow2(-self.j * self.d * exponent)

    def contains(self, other: "Cube") -> bool:
        """Whether this cube contains ``other`` (non-strict)."""
        if other.d != self.d:
            raise ContractViolationError("cubes of different dimension")
        shift = other.j - self.j
        if shift < 0:
            return False
        return all((ko >> shift) == ks for ko, ks in zip(other.k, self.k))

    def contains_point(self, x: Sequence[float] | float) -> bool:
        """Whether the point ``x`` lies in the half-open cube."""
        coords = (x,) if isinstance(x, (int, float)) else tuple(x)
        if len(coords) != self.d:
            raise ContractViolationError("point dimension does not match cube")
        for xi, ki in zip(coords, self.k):
            # 2^j * x is an exact float scaling, so the floor test is reliable.
            if math.floor(math.ldexp(xi, self.j)) != ki:
                return False
        return True

    def ancestor(self, levels: int = 1) -> "Cube":
        """The cube ``levels`` scales coarser that contains this one."""
        if levels < 0:
            raise ContractViolationError("levels must be >= 0")
        return Cube(self.j - levels, tuple(c >> levels for c in self.k))

    def __str__(self) -> str:
        return " ".join(str(v) for v in (self.j, *self.k))


def cube_volume(cube: Cube) -> float:
    """Lebesgue volume 2^(-j*d); exact, with an explicit range error."""
    return pow2(-cube.j * cube.d)


@dataclass(frozen=True)
class MeasureSpec:
    """The measure assigning each cube the mass |Q|^alpha.

    ``alpha = 0`` is the counting measure; ``alpha = 1`` is Lebesgue volume.
    """

    alpha: float = 0.0

    def __call__(self, cube: Cube) -> float:
        return cube.volume_power(self.alpha)


def nu_measure(cubes: Iterable[Cube], measure: MeasureSpec) -> float:
    """Total mass sum_Q |Q|^alpha over the family.

    Uses exact compensated summation (math.fsum), which is order-independent
    and at least as accurate as any fixed summation order.
    """
    return math.fsum(measure(q) for q in cubes)


def cube_sum(cubes: Iterable[Cube], gamma: float, x: Sequence[float] | float) -> float:
    """sum over cubes containing ``x`` of |Q|^gamma (a layered-cake sample)."""
    return math.fsum(q.volume_power(gamma) for q in cubes if q.contains_point(x))


def biggest_smallest_cube(
    cubes: Iterable[Cube], x: Sequence[float] | float
) -> tuple[Cube | None, Cube | None]:
    """The coarsest and finest cube of the family containing ``x``.

    Returns ``(None, None)`` when no cube contains the point.  At any fixed
    scale at most one dyadic cube contains a point, so both answers are unique.
    """
    biggest: Cube | None = None
    smallest: Cube | None = None
    for q in cubes:
        if not q.contains_point(x):
            continue
        if biggest is None or q.j < biggest.j:
            biggest = q
        if smallest is None or q.j > smallest.j:
            smallest = q
    return biggest, smallest


@dataclass
class _Node:
    cube: Cube
    parent: int | None
    children: list[int] = field(default_factory=list)


class ContainmentForest:
    """Nesting structure of a finite cube family.

    Nodes are stored in an order where every parent precedes its children
    (sorted by scale), so single forward passes can accumulate chain values.
    The parent of a node is the *tightest* strictly-containing cube present in
    the family; siblings are pairwise disjoint, hence every region
    (cube minus its children) has non-negative measure by construction —
    verified exactly in integer units of the finest cube volume.
    """

    def __init__(self, cubes: Iterable[Cube]):
        unique = sorted(set(cubes))
        if unique:
            d = unique[0].d
            if any(q.d != d for q in unique):
                raise ContractViolationError("all cubes must share one dimension")
        # Sort by scale so parents (coarser, smaller j) come first.
        unique.sort(key=lambda q: (q.j, q.k))
        self.nodes: list[_Node] = []
        self.roots: list[int] = []
        index: dict[Cube, int] = {}
        min_j = unique[0].j if unique else 0
        for cube in unique:
            parent: int | None = None
            walker = cube
            while walker.j > min_j:
                walker = walker.ancestor()
                hit = index.get(walker)
                if hit is not None:
                    parent = hit
                    break
            i = len(self.nodes)
            self.nodes.append(_Node(cube, parent))
            index[cube] = i
            if parent is None:
                self.roots.append(i)
            else:
                self.nodes[parent].children.append(i)
        self._check_regions()

    def __len__(self) -> int:
        return len(self.nodes)

    def _check_regions(self) -> None:
        if not self.nodes:
            return
        j_max = max(n.cube.j for n in self.nodes)
        d = self.nodes[0].cube.d

        def units(node: _Node) -> int:
            return 1 << ((j_max - node.cube.j) * d)

        for node in self.nodes:
            region = units(node) - sum(units(self.nodes[c]) for c in node.children)
            if region < 0:  # structurally impossible; guards construction bugs
                raise ContractViolationError(
                    f"negative region measure at cube {node.cube}"
                )

    def chain_values(self, per_cube: Mapping[Cube, float]) -> list[float]:
        """For each node, the sum of ``per_cube`` along its ancestor chain
        (the node itself included)."""
        out = [0.0] * len(self.nodes)
        for i, node in enumerate(self.nodes):
            base = out[node.parent] if node.parent is not None else 0.0
            out[i] = base + per_cube[node.cube]
        return out

    def chain_maxima(self, per_cube: Mapping[Cube, float]) -> list[float]:
        """For each node, the max of ``per_cube`` along its ancestor chain."""
        out = [0.0] * len(self.nodes)
        for i, node in enumerate(self.nodes):
            base = out[node.parent] if node.parent is not None else -math.inf
            out[i] = max(base, per_cube[node.cube])
        return out

    def region_integral(self, constants: Sequence[float]) -> float:
        """Integral of the function equal to ``constants[i]`` on region i.

        Region i is node i's cube minus its children.  Each region's measure is
        entered as one positive term and one negative term per child, and the
        whole collection is combined with math.fsum, so the only rounding is
        one multiply per term.
        """
        terms: list[float] = []
        for i, node in enumerate(self.nodes):
            c = constants[i]
            if c == 0.0:
                continue
            terms.append(c * node.cube.volume)
            for child in node.children:
                terms.append(-c * self.nodes[child].cube.volume)
        return math.fsum(terms)


def integrate_power_of_cube_sum(
    terms: Mapping[Cube, float], theta: float, outer_p: float
) -> float:
    """( integral of [sum_Q a_Q chi_Q(x)]^theta dx )^(1/outer_p), exactly.

    The integrand is constant on each forest region (cube minus nested
    children), where it equals the theta-th power of the ancestor-chain sum of
    the coefficients; the integral is the finite sum of constant*measure terms.
    """
    if theta <= 0 or outer_p <= 0:
        raise ContractViolationError("theta and outer_p must be positive")
    for cube, a in terms.items():
        if a < 0:
            raise ContractViolationError(f"negative coefficient {a!r} at cube {cube}")
    if not terms:
        return 0.0
    forest = ContainmentForest(terms.keys())
    chains = forest.chain_values(terms)
    constants = [c**theta if c > 0.0 else 0.0 for c in chains]
    integral = forest.region_integral(constants)
    # Rounding can leave a tiny negative residue when the integral is zero.
    integral = max(integral, 0.0)
    return integral ** (1.0 / outer_p)


def cubes_to_text(cubes: Iterable[Cube]) -> str:
    """One cube per line: ``j k1 [k2 ...]``, sorted for determinism."""
    return "\n".join(str(q) for q in sorted(cubes)) + "\n"


def cubes_from_text(text: str, source: str = "<string>") -> list[Cube]:
    """Parse the one-cube-per-line format; errors carry the line number."""
    cubes: list[Cube] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ConfigError(
                f"{source}:{lineno}: expected 'j k1 [k2 ...]', got {raw!r}"
            )
        try:
            values = [int(p) for p in parts]
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: non-integer field: {exc}") from exc
        cubes.append(Cube(values[0], tuple(values[1:])))
    return cubes
