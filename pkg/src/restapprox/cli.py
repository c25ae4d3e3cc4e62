"""Command-line front end.

Subcommands
-----------

``norm``
    All four quasi-norms of a coefficient file: the aggregated lattice norm,
    the per-scale norm, the weighted rearrangement norm, and the
    budget-weighted approximation norm.
``sigma``
    Best restricted approximation error at one mass budget.
``approx-norm``
    Integral and dyadic budget aggregates plus their sandwich check.
``democracy``
    Structured-family values and masses against their closed forms.
``jackson`` / ``bernstein``
    Comparison constants over random suites of growing size, with a drift
    check.
``lorentz-besov``
    The rearrangement-versus-per-scale norm identity on random draws.
``verify-all``
    The full ten-criterion verification suite.

Every subcommand accepts ``--config`` (flat ``key=value`` lines), ``--out``
(report directory), ``--format`` (``csv`` or ``json``) and ``--seed``.  The
command-line seed overrides the config seed; the committed default is
``verify.DEFAULT_SEED``.  Reports are written as ``<command>.<format>`` with
rows sorted by id; the wall-time column is last so byte comparison modulo
that column is a plain text diff.

Exit codes: 0 — success, all property rows pass; 1 — at least one property
row failed; 2 — usage, config, or parameter error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .approx import (
    ApproxParams,
    approx_norm,
    approx_norm_dyadic,
    bernstein_constant,
    jackson_constant,
    sigma_exact,
    sigma_greedy,
)
from .democracy import (
    DemocracyCase,
    GammaFamily,
    predicted_admissible,
    democracy_value,
)
from .dyadic import Cube, MeasureSpec, nu_measure, pow2
from .errors import (
    CapabilityError,
    ConfigError,
    ContractViolationError,
    DivergenceError,
    QuadratureError,
    ScaleRangeError,
)
from .lorentz import CoeffSeq, LorentzParams, lorentz_norm
from .report import ReportRow, failure_count, format_number, write_report
from .spaces import SpaceParams, lorentz_equals_besov_check, space_norm
from .verify import DEFAULT_SEED, results_to_rows, run_all
from .weights import WeightFn

__all__ = ["main", "run_norm", "run_democracy", "run_verify_all"]

_PACKAGE_ERRORS = (
    ScaleRangeError,
    ContractViolationError,
    CapabilityError,
    DivergenceError,
    QuadratureError,
    ConfigError,
)


# --------------------------------------------------------------------------
# config and data files
# --------------------------------------------------------------------------


def load_config(path: str | Path) -> dict[str, str]:
    """Flat ``key=value`` lines; ``#`` starts a comment; blank lines ignored."""
    values: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key=value', got {raw!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value
    return values


class Settings:
    """Typed, range-checked access to a flat config mapping."""

    def __init__(self, values: dict[str, str], allowed: set[str], source: str):
        unknown = sorted(set(values) - allowed - {"seed"})
        if unknown:
            raise ConfigError(
                f"{source}: unknown keys {', '.join(unknown)}; "
                f"allowed: {', '.join(sorted(allowed))}"
            )
        self._values = values
        self._source = source

    def _fail(self, key: str, message: str) -> ConfigError:
        return ConfigError(f"{self._source}: key {key!r} {message}")

    def get_float(
        self,
        key: str,
        default: float,
        *,
        lo: float | None = None,
        hi: float | None = None,
        allow_inf: bool = False,
    ) -> float:
        raw = self._values.get(key)
        if raw is None:
            return default
        try:
            value = float(raw)
        except ValueError:
            raise self._fail(key, f"is not a number: {raw!r}") from None
        if math.isnan(value):
            raise self._fail(key, "must not be NaN")
        if math.isinf(value) and not allow_inf:
            raise self._fail(key, "must be finite")
        if lo is not None and value < lo:
            raise self._fail(key, f"must be >= {lo:g}, got {value:g}")
        if hi is not None and value > hi:
            raise self._fail(key, f"must be <= {hi:g}, got {value:g}")
        return value

    def get_int(self, key: str, default: int, *, lo: int, hi: int) -> int:
        raw = self._values.get(key)
        if raw is None:
            return default
        try:
            value = int(raw)
        except ValueError:
            raise self._fail(key, f"is not an integer: {raw!r}") from None
        if not lo <= value <= hi:
            raise self._fail(key, f"must be in [{lo}, {hi}], got {value}")
        return value

    def get_choice(self, key: str, default: str, choices: tuple[str, ...]) -> str:
        value = self._values.get(key, default)
        if value not in choices:
            raise self._fail(key, f"must be one of {choices}, got {value!r}")
        return value

    def get_weight(self, key: str, default: str) -> WeightFn:
        return WeightFn.parse(self._values.get(key, default))

    def get_seed(self, override: int | None) -> int:
        if override is not None:
            return override
        return self.get_int("seed", DEFAULT_SEED, lo=0, hi=2**64 - 1)


def read_sequence(path: str | Path) -> CoeffSeq:
    """Parse ``j k1 ... kd value`` lines into a coefficient sequence.

    The dimension is inferred from the first data line and must be constant.
    """
    entries: dict[Cube, float] = {}
    d: int | None = None
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 3:
            raise ConfigError(
                f"{path}:{lineno}: expected 'j k1 ... kd value', got {raw!r}"
            )
        if d is None:
            d = len(parts) - 2
        elif len(parts) - 2 != d:
            raise ConfigError(
                f"{path}:{lineno}: expected dimension {d}, got {len(parts) - 2}"
            )
        try:
            j = int(parts[0])
            k = tuple(int(v) for v in parts[1:-1])
            value = float(parts[-1])
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad number in {raw!r}") from None
        if not math.isfinite(value):
            raise ConfigError(f"{path}:{lineno}: coefficient must be finite")
        cube = Cube(j, k)
        if cube in entries:
            raise ConfigError(f"{path}:{lineno}: duplicate cube {cube}")
        entries[cube] = value
    if not entries:
        raise ConfigError(f"{path}: no coefficients found")
    return CoeffSeq(entries)


def _space_from(cfg: Settings, d: int, *, kind_default: str = "tl") -> SpaceParams:
    kind = cfg.get_choice("kind", kind_default, ("tl", "besov"))
    allow_inf_p = kind == "besov"
    return SpaceParams(
        cfg.get_float("s", 0.0, lo=-64.0, hi=64.0),
        cfg.get_float("p", 2.0, lo=0.01, allow_inf=allow_inf_p),
        cfg.get_float("q", 2.0, lo=0.01, allow_inf=True),
        d,
        kind,
    )


# --------------------------------------------------------------------------
# subcommand handlers; each returns (rows, n_property_failures)
# --------------------------------------------------------------------------

_RowsAndFailures = tuple[list[ReportRow], int]


def run_norm(seq: CoeffSeq, cfg: Settings, seed: int) -> _RowsAndFailures:
    del seed  # fully determined by the input file and config
    space = _space_from(cfg, seq.d)
    besov = SpaceParams(space.s, space.p, space.q, seq.d, "besov")
    alpha = cfg.get_float("alpha", 1.0, lo=-16.0, hi=16.0)
    measure = MeasureSpec(alpha)
    lorentz = LorentzParams(
        cfg.get_weight("eta", "power:p=2"),
        mu=cfg.get_float("mu", 2.0, lo=0.01, allow_inf=True),
        xi=cfg.get_float("lorentz_xi", 0.0, lo=0.0, hi=16.0),
    )
    approx = ApproxParams(
        cfg.get_float("approx_xi", 0.5, lo=1e-6, hi=16.0),
        cfg.get_float("approx_mu", 2.0, lo=0.01, allow_inf=True),
        space,
        measure,
    )
    solver = cfg.get_choice("solver", "greedy", ("greedy", "knapsack", "brute"))
    space_desc = f"s={space.s:g} p={space.p:g} q={space.q:g} d={seq.d}"
    rows = [
        ReportRow(
            "norm/aggregated",
            space_desc,
            "norm",
            format_number(space_norm(seq, space)),
        ),
        ReportRow(
            "norm/per-scale",
            space_desc,
            "norm",
            format_number(space_norm(seq, besov)),
        ),
        ReportRow(
            "norm/rearranged",
            f"eta={lorentz.eta.spec_string()} mu={lorentz.mu:g} "
            f"xi={lorentz.xi:g} alpha={alpha:g}",
            "norm",
            format_number(lorentz_norm(seq, measure, lorentz)),
        ),
        ReportRow(
            "norm/budgeted",
            f"{space_desc} xi={approx.xi:g} mu={approx.mu:g} "
            f"alpha={alpha:g} solver={solver}",
            "norm",
            format_number(approx_norm(seq, approx, solver)),
        ),
    ]
    return rows, 0


def run_sigma(seq: CoeffSeq, cfg: Settings, seed: int) -> _RowsAndFailures:
    del seed
    space = _space_from(cfg, seq.d)
    measure = MeasureSpec(cfg.get_float("alpha", 1.0, lo=-16.0, hi=16.0))
    params = ApproxParams(1.0, 1.0, space, measure)
    budget = cfg.get_float("budget", 1.0, lo=0.0)
    solver = cfg.get_choice("solver", "greedy", ("greedy", "knapsack", "brute"))
    if solver == "greedy":
        result = sigma_greedy(seq, budget, params)
    else:
        result = sigma_exact(seq, budget, params, mode=solver)
    desc = f"budget={budget:g} solver={solver}"
    rows = [
        ReportRow("sigma/error", desc, "error", format_number(result.error)),
        ReportRow(
            "sigma/certified", desc, "certified", "1" if result.certified else "0"
        ),
        ReportRow(
            "sigma/support",
            desc,
            "cubes",
            "; ".join(str(c) for c in result.support),
        ),
    ]
    return rows, 0


def run_approx_norm(seq: CoeffSeq, cfg: Settings, seed: int) -> _RowsAndFailures:
    del seed
    space = _space_from(cfg, seq.d)
    measure = MeasureSpec(cfg.get_float("alpha", 1.0, lo=-16.0, hi=16.0))
    xi = cfg.get_float("xi", 0.5, lo=1e-6, hi=16.0)
    mu = cfg.get_float("mu", 2.0, lo=0.01, allow_inf=True)
    params = ApproxParams(xi, mu, space, measure)
    solver = cfg.get_choice("solver", "greedy", ("greedy", "knapsack", "brute"))
    integral = approx_norm(seq, params, solver)
    dyadic = approx_norm_dyadic(seq, params, solver)
    desc = f"xi={xi:g} mu={mu:g} solver={solver}"
    rows = [
        ReportRow("approx-norm/integral", desc, "norm", format_number(integral)),
        ReportRow("approx-norm/dyadic", desc, "norm", format_number(dyadic)),
    ]
    failures = 0
    ratio = integral / dyadic if dyadic > 0 else math.nan
    # The two-sided window is guaranteed when the combined exponent xi*mu is
    # at least 1 (always, for the sup form); below that the lower constant
    # degrades and the row is informational only.
    checkable = math.isinf(mu) or xi * mu >= 1.0
    lo, hi = pow2(-xi) * (1 - 1e-9), pow2(xi) * (1 + 1e-9)
    if checkable:
        ok = dyadic > 0 and lo <= ratio <= hi
        failures += 0 if ok else 1
        rows.append(
            ReportRow(
                "approx-norm/sandwich",
                "approx:integral-dyadic-sandwich",
                "ratio",
                format_number(ratio),
                status="pass" if ok else "fail",
                tolerance=f"within [2^-xi, 2^xi] = [{lo:.6g}, {hi:.6g}]",
            )
        )
    else:
        rows.append(
            ReportRow(
                "approx-norm/sandwich",
                "approx:integral-dyadic-sandwich",
                "ratio",
                format_number(ratio),
                status="info",
                tolerance="window not guaranteed for xi*mu < 1",
            )
        )
    return rows, failures


def run_democracy(cfg: Settings, seed: int) -> _RowsAndFailures:
    del seed
    d = cfg.get_int("d", 1, lo=1, hi=3)
    f1 = SpaceParams(
        cfg.get_float("s1", 0.3, lo=-64.0, hi=64.0),
        cfg.get_float("p1", 1.5, lo=0.01),
        cfg.get_float("q1", 2.2, lo=0.01, allow_inf=True),
        d,
        "tl",
    )
    f2 = SpaceParams(
        cfg.get_float("s2", 0.8, lo=-64.0, hi=64.0),
        cfg.get_float("p2", 2.5, lo=0.01, allow_inf=True),
        cfg.get_float("q2", 3.0, lo=0.01, allow_inf=True),
        d,
        "besov",
    )
    formula = DemocracyCase(f1, f2, 1.0).formula_alpha
    alpha = cfg.get_float("alpha", formula, lo=-64.0, hi=64.0)
    alpha += cfg.get_float("alpha_perturb", 0.0, lo=-8.0, hi=8.0)
    case = DemocracyCase(f1, f2, alpha)
    adm = predicted_admissible(case)
    rows = [
        ReportRow(
            "democracy/admissible",
            f"alpha={alpha:g} formula={formula:g}",
            "predicted",
            "1" if adm.ok else "0",
            tolerance=adm.reason,
        )
    ]
    failures = 0
    tol = 1e-9
    for tag in ("grid", "tower", "row"):
        for n in (1, 2, 4, 8):
            l_values = (1, 2, 4) if tag == "grid" else (1,)
            for l_val in l_values:
                fam = GammaFamily(tag, n, L=l_val, d=d)
                cubes = fam.generate()
                suffix = f"-L{l_val}" if tag == "grid" else ""
                base_id = f"democracy/{tag}-N{n}{suffix}"
                checks = (
                    ("value", democracy_value(cubes, case), fam.closed_form_value(case)),
                    ("mass", nu_measure(cubes, case.measure), fam.closed_form_mass(formula)),
                )
                for metric, got, want in checks:
                    err = abs(got - want) / max(abs(want), 1e-300)
                    ok = err <= tol
                    failures += 0 if ok else 1
                    rows.append(
                        ReportRow(
                            f"{base_id}/{metric}",
                            "democracy:closed-form",
                            metric,
                            format_number(got),
                            status="pass" if ok else "fail",
                            tolerance=f"rel<=1e-9 want={format_number(want)}",
                        )
                    )
    return rows, failures


def _random_suites(seed: int, salt: int) -> list[tuple[int, list[CoeffSeq]]]:
    import numpy as np

    from .democracy import random_cube_set

    rng = np.random.default_rng([seed, salt])
    suites = []
    for size in (16, 32, 64):
        suite = []
        for _ in range(5):
            cubes = random_cube_set(rng, size, 1, -4, 8)
            signs = 1 - 2 * rng.integers(0, 2, size=size)
            exponents = rng.uniform(-1.0, 1.0, size=size)
            values = [float(s) * 10.0 ** float(e) for s, e in zip(signs, exponents)]
            suite.append(CoeffSeq(dict(zip(cubes, values))))
        suites.append((size, suite))
    return suites


def _run_constant(name: str, cfg: Settings, seed: int) -> _RowsAndFailures:
    space = SpaceParams(
        cfg.get_float("s", 0.0, lo=-64.0, hi=64.0),
        cfg.get_float("p", 2.0, lo=0.01),
        cfg.get_float("q", 2.0, lo=0.01, allow_inf=True),
        1,
        "tl",
    )
    params = ApproxParams(
        cfg.get_float("xi", 0.5, lo=1e-6, hi=16.0),
        cfg.get_float("mu", math.inf, lo=0.01, allow_inf=True),
        space,
        MeasureSpec(cfg.get_float("alpha", 0.0, lo=-16.0, hi=16.0)),
    )
    lorentz = LorentzParams(
        cfg.get_weight("eta", "power:p=2"),
        mu=cfg.get_float("lorentz_mu", 1.0, lo=0.01, allow_inf=True),
        xi=cfg.get_float("lorentz_xi", 0.5, lo=0.0, hi=16.0),
    )
    fn = jackson_constant if name == "jackson" else bernstein_constant
    rows = []
    constants = []
    for size, suite in _random_suites(seed, 107 if name == "jackson" else 108):
        value = fn(suite, params, lorentz)
        constants.append(value)
        rows.append(
            ReportRow(
                f"{name}/size-{size:03d}",
                f"suite of 5, {size} cubes each",
                "constant",
                format_number(value),
            )
        )
    drift = max(constants) / min(constants)
    ok = math.isfinite(drift) and drift < 4.0
    rows.append(
        ReportRow(
            f"{name}/drift",
            "constants:drift",
            "max/min",
            format_number(drift),
            status="pass" if ok else "fail",
            tolerance="x<4 across sizes 16/32/64",
        )
    )
    return rows, 0 if ok else 1


def run_jackson(cfg: Settings, seed: int) -> _RowsAndFailures:
    return _run_constant("jackson", cfg, seed)


def run_bernstein(cfg: Settings, seed: int) -> _RowsAndFailures:
    return _run_constant("bernstein", cfg, seed)


def run_lorentz_besov(cfg: Settings, seed: int) -> _RowsAndFailures:
    import numpy as np

    from .democracy import random_cube_set

    draws = cfg.get_int("draws", 50, lo=1, hi=500)
    rng = np.random.default_rng([seed, 104])
    taus = (0.5, 1.0, 1.7, 3.0)
    rows = []
    failures = 0
    for i in range(draws):
        tau = taus[i % 4]
        d = 1 if i % 2 == 0 else 2
        while True:
            s1 = float(rng.uniform(-1, 1))
            p1 = float(rng.uniform(1, 3))
            s2 = float(rng.uniform(-1, 1))
            p2 = float(rng.uniform(1, 3))
            alpha = p1 * ((s2 - s1) / d - 1.0 / p2) + 1.0
            gamma = s1 + d * (1.0 / tau - 1.0 / p1) * (1.0 - alpha)
            if abs(alpha) <= 6.0 and abs(gamma) <= 5.0:
                break
        f2 = SpaceParams(s2, p2, p2, d, "tl")
        count = int(rng.integers(3, 18))
        cubes = random_cube_set(rng, count, d, -4, 4)
        signs = 1 - 2 * rng.integers(0, 2, size=count)
        exponents = rng.uniform(-1.0, 1.0, size=count)
        values = [float(s) * 10.0 ** float(e) for s, e in zip(signs, exponents)]
        seq = CoeffSeq(dict(zip(cubes, values)))
        lhs, rhs, ok = lorentz_equals_besov_check(seq, s1, p1, f2, tau)
        failures += 0 if ok else 1
        gap = abs(lhs - rhs) / max(lhs, rhs, 1.0)
        rows.append(
            ReportRow(
                f"lorentz-besov/draw-{i:03d}",
                f"tau={tau:g} d={d} alpha={alpha:.6g} gamma={gamma:.6g}",
                "relative-gap",
                format_number(gap),
                status="pass" if ok else "fail",
                tolerance="lorentz-besov:identity rel<=1e-10",
            )
        )
    return rows, failures


def run_verify_all(cfg: Settings, seed: int) -> _RowsAndFailures:
    alpha_perturb = cfg.get_float("alpha_perturb", 0.0, lo=-8.0, hi=8.0)
    results = run_all(seed, alpha_perturb)
    for result in results:
        print(result.line())
    rows = results_to_rows(results)
    return rows, sum(0 if r.passed else 1 for r in results)


# --------------------------------------------------------------------------
# argument parsing and dispatch
# --------------------------------------------------------------------------

_NEEDS_INPUT = ("norm", "sigma", "approx-norm")
_NO_INPUT = ("democracy", "jackson", "bernstein", "lorentz-besov", "verify-all")

_ALLOWED_KEYS = {
    "norm": {
        "s", "p", "q", "kind", "alpha", "eta", "mu", "lorentz_xi",
        "approx_xi", "approx_mu", "solver",
    },
    "sigma": {"s", "p", "q", "kind", "alpha", "budget", "solver"},
    "approx-norm": {"s", "p", "q", "kind", "alpha", "xi", "mu", "solver"},
    "democracy": {
        "d", "s1", "p1", "q1", "s2", "p2", "q2", "alpha", "alpha_perturb",
    },
    "jackson": {
        "s", "p", "q", "alpha", "xi", "mu", "eta", "lorentz_mu", "lorentz_xi",
    },
    "bernstein": {
        "s", "p", "q", "alpha", "xi", "mu", "eta", "lorentz_mu", "lorentz_xi",
    },
    "lorentz-besov": {"draws"},
    "verify-all": {"alpha_perturb"},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="restapprox",
        description="Restricted nonlinear approximation toolkit.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--out", default="out", help="report directory")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, help="overrides the config seed")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in _NEEDS_INPUT:
        sp = sub.add_parser(command, parents=[common])
        sp.add_argument("input", help="coefficient file: 'j k1 ... kd value' lines")
    for command in _NO_INPUT:
        sub.add_parser(command, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        raw = load_config(ns.config) if ns.config else {}
        source = ns.config or "<defaults>"
        cfg = Settings(raw, _ALLOWED_KEYS[ns.command], source)
        if ns.seed is not None and not 0 <= ns.seed < 2**64:
            raise ConfigError("--seed must fit in an unsigned 64-bit integer")
        seed = cfg.get_seed(ns.seed)
        if ns.command in _NEEDS_INPUT:
            seq = read_sequence(ns.input)
            handler = {
                "norm": run_norm,
                "sigma": run_sigma,
                "approx-norm": run_approx_norm,
            }[ns.command]
            rows, failures = handler(seq, cfg, seed)
        else:
            handler = {
                "democracy": run_democracy,
                "jackson": run_jackson,
                "bernstein": run_bernstein,
                "lorentz-besov": run_lorentz_besov,
                "verify-all": run_verify_all,
            }[ns.command]
            rows, failures = handler(cfg, seed)
        path = write_report(rows, ns.out, ns.command, ns.format)
    except _PACKAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    recorded_failures = failure_count(rows)
    print(f"{len(rows)} rows -> {path} ({recorded_failures} failing)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
