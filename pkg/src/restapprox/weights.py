"""Weight functions for Lorentz-type quasi-norms.

Two concrete families are provided:

* ``power``      -- t^(1/p)
* ``powerlog``   -- t^(1/p) * (1 + |log t|)^b

Both vanish at 0 and are doubling.  The power family is always nondecreasing;
the powerlog family is nondecreasing exactly when |b| <= 1/p, and construction
records that membership instead of rejecting the others (the non-monotone
members are still useful: their dilation function is contracting, which is the
property the geometric-sum machinery actually consumes).

For both families the dilation function

    M(s) = sup_{t>0} eta(s*t) / eta(t)

has the closed form ``s^(1/p) * (1 + |log s|)^|b|``: the inner sup of
``(1 + |u + x|) / (1 + |x|)`` over x equals ``1 + |u|`` (attained at x = 0),
and for negative exponents the infimum ``1/(1+|u|)`` is attained instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from scipy.integrate import quad

from .errors import (
    CapabilityError,
    ConfigError,
    ContractViolationError,
    DivergenceError,
    QuadratureError,
)

__all__ = [
    "WeightFn",
    "dilation",
    "geometric_sum_bound",
    "smoothed_weight",
    "boyd_lower_index",
    "weight_integral",
    "weight_sup_on_interval",
]

# Certification scan: first s0 = 2^-m with M(s0) below this margin is stored.
# A margin well under 1 keeps the geometric tails short (factor-2 decay or
# better per step) without pushing s0 unnecessarily deep.
_DELTA_MARGIN = 0.5
_CERT_MAX_LEVEL = 60


@dataclass(frozen=True)
class WeightFn:
    """One member of the power / powerlog weight families.

    Derived structural constants are computed at construction:

    * ``doubling_constant`` -- exact sup of eta(2t)/eta(t);
    * ``s0``, ``delta``     -- a certified contraction step: delta = M(s0) < 1;
    * ``nondecreasing``     -- monotonicity (the extra membership the
      smoothing bounds need).
    """

    family: str
    p: float
    b: float = 0.0

    def __post_init__(self) -> None:
        if self.family not in ("power", "powerlog"):
            raise ContractViolationError(f"unknown weight family {self.family!r}")
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ContractViolationError("weight parameter p must be finite and > 0")
        if self.family == "power" and self.b != 0.0:
            raise ContractViolationError("power family takes no log exponent")
        if not math.isfinite(self.b):
            raise ContractViolationError("log exponent b must be finite")

    # -- constructors ------------------------------------------------------

    @classmethod
    def power(cls, p: float) -> "WeightFn":
        return cls("power", float(p))

    @classmethod
    def power_log(cls, p: float, b: float) -> "WeightFn":
        return cls("powerlog", float(p), float(b))

    @classmethod
    def parse(cls, spec: str) -> "WeightFn":
        """Parse ``power:p=2`` or ``powerlog:p=2,b=1``."""
        try:
            family, _, params = spec.partition(":")
            family = family.strip()
            kv = {}
            for item in params.split(","):
                if not item.strip():
                    continue
                key, _, value = item.partition("=")
                kv[key.strip()] = float(value)
            if family == "power":
                return cls.power(kv.pop("p"))
            if family == "powerlog":
                return cls.power_log(kv.pop("p"), kv.pop("b"))
        except (KeyError, ValueError, ContractViolationError) as exc:
            raise ConfigError(f"bad weight spec {spec!r}: {exc}") from exc
        raise ConfigError(f"bad weight spec {spec!r}: unknown family")

    def spec_string(self) -> str:
        # repr keeps full float precision so parse() round-trips exactly
        if self.family == "power":
            return f"power:p={self.p!r}"
        return f"powerlog:p={self.p!r},b={self.b!r}"

    # -- basic structure ---------------------------------------------------

    @property
    def power_exponent(self) -> float:
        """The exponent 1/p of the pure power part."""
        return 1.0 / self.p

    @property
    def nondecreasing(self) -> bool:
        """Monotone on [0, oo); for powerlog this is exactly |b| <= 1/p."""
        if self.family == "power":
            return True
        return abs(self.b) <= self.power_exponent

    @property
    def doubling_constant(self) -> float:
        """Exact sup of eta(2t)/eta(t) = 2^(1/p) * (1 + log 2)^|b|."""
        base = 2.0**self.power_exponent
        if self.family == "power":
            return base
        return base * (1.0 + math.log(2.0)) ** abs(self.b)

    def value(self, t: float) -> float:
        if t < 0:
            raise ContractViolationError("weight argument must be >= 0")
        if t == 0.0:
            return 0.0
        tv = float(t) ** self.power_exponent
        if self.family == "power":
            return tv
        return tv * (1.0 + abs(math.log(t))) ** self.b

    def values(self, ts: Iterable[float]) -> list[float]:
        return [self.value(t) for t in ts]

    def times_power(self, xi: float) -> "WeightFn":
        """The weight t^xi * eta(t), which stays inside the same family."""
        if xi < 0:
            raise ContractViolationError("extra power exponent must be >= 0")
        if xi == 0.0:
            return self
        new_p = 1.0 / (xi + self.power_exponent)
        if self.family == "power":
            return WeightFn.power(new_p)
        return WeightFn.power_log(new_p, self.b)

    # -- dilation and certification ---------------------------------------

    def dilation_closed_form(self, s: float) -> float:
        """M(s) = s^(1/p) * (1 + |log s|)^|b|, exact for both families."""
        if s <= 0:
            raise ContractViolationError("dilation argument must be > 0")
        base = float(s) ** self.power_exponent
        if self.family == "power":
            return base
        return base * (1.0 + abs(math.log(s))) ** abs(self.b)

    @property
    def certified_contraction(self) -> tuple[float, float] | None:
        """A pair (s0, delta) with delta = M(s0) < 1, or None.

        Found by scanning s0 = 2^-1, 2^-2, ... and accepting the first level
        whose dilation value clears a safety margin below 1.
        """
        for m in range(1, _CERT_MAX_LEVEL + 1):
            s0 = math.ldexp(1.0, -m)
            delta = self.dilation_closed_form(s0)
            if delta <= _DELTA_MARGIN:
                return s0, delta
        return None

    @property
    def in_class_w(self) -> bool:
        """Vanishes at 0, nondecreasing, doubling."""
        return self.nondecreasing

    @property
    def in_class_w_plus(self) -> bool:
        """Class membership plus a certified contracting dilation step."""
        return self.in_class_w and self.certified_contraction is not None


def dilation(
    w: WeightFn, s: float, grid: tuple[float, float, int] | None = None
) -> float:
    """The dilation function M(s) = sup_t eta(s*t)/eta(t).

    With ``grid=None`` the exact closed form is returned.  With a grid
    ``(t_min, t_max, n)`` the sup is taken over n log-spaced sample points —
    a lower bound of the true sup, kept as an independent cross-check.
    """
    if grid is None:
        return w.dilation_closed_form(s)
    t_min, t_max, n = grid
    if not (0 < t_min < t_max) or n < 2:
        raise ContractViolationError("grid must satisfy 0 < t_min < t_max, n >= 2")
    lo, hi = math.log(t_min), math.log(t_max)
    best = 0.0
    for i in range(n):
        t = math.exp(lo + (hi - lo) * i / (n - 1))
        denom = w.value(t)
        if denom > 0:
            best = max(best, w.value(s * t) / denom)
    return best


def geometric_sum_bound(w: WeightFn, t: float, J: int) -> tuple[float, float]:
    """Partial sum sum_{j=0..J} eta(s0^j * t) and its bound eta(t)/(1-delta).

    The bound needs only the certified contraction: eta(s0^j t) <= M(s0^j)
    eta(t) <= delta^j eta(t) because M is submultiplicative on our families.
    """
    cert = w.certified_contraction
    if cert is None:
        raise CapabilityError(
            f"{w.spec_string()} has no certified contracting dilation step"
        )
    if J < 0:
        raise ContractViolationError("cutoff J must be >= 0")
    if t < 0:
        raise ContractViolationError("t must be >= 0")
    if t == 0.0:
        return 0.0, 0.0
    s0, delta = cert
    total = math.fsum(w.value((s0**j) * t) for j in range(J + 1))
    bound = w.value(t) / (1.0 - delta)
    return total, bound


def weight_sup_on_interval(w: WeightFn, a: float, b: float) -> float:
    """max of eta over [a, b] (0 <= a <= b), via endpoints, the kink at t=1,
    and the interior critical points of the powerlog family."""
    if not (0 <= a <= b):
        raise ContractViolationError("need 0 <= a <= b")
    candidates = [a, b]
    if w.family == "powerlog":
        c = w.power_exponent
        if a < 1.0 < b:
            candidates.append(1.0)
        if w.b > c:  # critical point of t^c (1 - log t)^b on (0, 1)
            candidates.append(math.exp(1.0 - w.b / c))
        if w.b < -c:  # critical point of t^c (1 + log t)^b on (1, oo)
            candidates.append(math.exp(-1.0 - w.b / c))
    return max(w.value(t) for t in candidates if a <= t <= b)


def _max_dilation_on(w: WeightFn, lo: float, hi: float) -> float:
    """max of M over [lo, hi]; M of (p, b) is the weight (p, |b|)."""
    if w.family == "power":
        return w.dilation_closed_form(hi)
    twin = WeightFn.power_log(w.p, abs(w.b))
    return weight_sup_on_interval(twin, lo, hi)


def _segment_integral(w: WeightFn, mu: float, a: float, b: float) -> float:
    """integral over [a, b] of eta(t)^mu dt/t; a may be 0.

    Power family: closed form.  Powerlog: the substitutions t = e^(-x) on
    (0, 1] and t = e^x on [1, oo) turn each part into a smooth, rapidly
    decaying integrand handled by adaptive quadrature.
    """
    c = w.power_exponent
    if c * mu <= 0:
        raise DivergenceError("eta(t)^mu / t is not integrable at 0")
    if a == b:
        return 0.0
    if w.family == "power":
        e = c * mu
        return (b**e - (a**e if a > 0 else 0.0)) / e

    def piece(f, lo, hi) -> float:
        val, err = quad(f, lo, hi, epsabs=1e-300, epsrel=1e-11, limit=400)
        if err > 1e-8 * abs(val) + 1e-250:
            raise QuadratureError(
                "weight integral did not converge",
                achieved=err / abs(val) if val else math.inf,
            )
        return val

    total = 0.0
    bm = w.b * mu
    cm = c * mu
    if a < 1.0:
        # t in [a, min(b,1)]  ->  x = -log t in [max(0,-log b), -log a]
        x_lo = -math.log(min(b, 1.0))
        x_hi = math.inf if a == 0.0 else -math.log(a)
        total += piece(lambda x: math.exp(-cm * x) * (1.0 + x) ** bm, x_lo, x_hi)
    if b > 1.0:
        # t in [max(a,1), b]  ->  x = log t
        x_lo = math.log(max(a, 1.0))
        x_hi = math.log(b)
        total += piece(lambda x: math.exp(cm * x) * (1.0 + x) ** bm, x_lo, x_hi)
    return total


def weight_integral(w: WeightFn, mu: float, a: float, b: float) -> float:
    """integral over [a, b] of eta(t)^mu dt/t, with a = 0 allowed."""
    if not (0 <= a <= b):
        raise ContractViolationError("need 0 <= a <= b")
    if mu <= 0 or not math.isfinite(mu):
        raise ContractViolationError("mu must be finite and > 0")
    return _segment_integral(w, mu, a, b)


def smoothed_weight(w: WeightFn, t: float, tol: float = 1e-10) -> float:
    """g(t) = integral over (0, t] of eta(s)/s ds, to relative accuracy tol.

    The power family has the closed form p * t^(1/p).  Otherwise the integral
    is accumulated over the dyadic-in-s0 subintervals [s0^(j+1) t, s0^j t]
    until the geometric tail bound (via the contracting dilation) drops below
    tolerance.
    """
    if t <= 0:
        raise ContractViolationError("t must be > 0")
    if tol <= 0:
        raise ContractViolationError("tol must be > 0")
    if w.family == "power":
        return w.p * t**w.power_exponent
    cert = w.certified_contraction
    if cert is None:
        raise CapabilityError(
            f"{w.spec_string()} has no certified contracting dilation step"
        )
    s0, delta = cert
    # eta(u) for u in [s0^(j+1) t, s0^j t] is at most delta^j * K * eta(t)
    # where K bounds M on [s0, 1]; each subinterval then contributes at most
    # delta^j * K * eta(t) * log(1/s0), a geometric tail.
    k_factor = _max_dilation_on(w, s0, 1.0)
    tail_unit = w.value(t) * math.log(1.0 / s0) * k_factor / (1.0 - delta)
    total = 0.0
    max_pieces = 10_000
    for j in range(max_pieces):
        hi = (s0**j) * t
        lo = s0 * hi
        if hi == 0.0:
            return total
        total += _segment_integral(w, 1.0, lo, hi)
        tail = delta ** (j + 1) * tail_unit
        if total > 0 and tail <= tol * total:
            return total
    raise QuadratureError(
        "smoothing integral tail did not fall below tolerance",
        achieved=tail / total if total else math.inf,
    )


def boyd_lower_index(w: WeightFn, t_min: float) -> float:
    """log M(t_min) / log t_min — the small-t dilation growth exponent.

    Exactly 1/p for the power family; for powerlog the closed-form dilation
    is used in log form, so very small ``t_min`` (down to ~2^-1000) is fine.
    """
    if not (0 < t_min < 1):
        raise ContractViolationError("t_min must lie in (0, 1)")
    if w.family == "power":
        return w.power_exponent
    log_t = math.log(t_min)
    log_m = w.power_exponent * log_t + abs(w.b) * math.log1p(abs(log_t))
    return log_m / log_t
