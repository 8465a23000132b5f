"""Config-driven command line interface.

Commands
--------
validate    check the structural hypotheses of the configured potential
bracket     two-sided bracket at one level
sweep       bracket + phase-space sum (+ ground truth) over a level grid
oracle      finite-difference ground truth at one level
example33   the worked two-piece-envelope operator, end to end

The config file is JSON with ``potential``, ``run``, ``oracle`` and
``output`` sections (see README); command-line flags override config values.
Exit codes: 0 success, 2 configuration error, 3 admissibility error,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

from ._parallel import ordered_map
from ._quad import QuadratureError
from .bounds import SpectralBracket, assemble_bracket
from .oracle import GridPolicy, OracleResult, PivotBreakdownError, negative_tail
from .partition import AdmissibilityError, DEFAULT_A, build_partition, \
    refine_delta_sequence
from .potential import (
    BranchFamily,
    CoefficientP,
    Example33Envelope,
    ExplicitCoefficients,
    GeometricCoefficients,
    InverseSquareCoefficients,
    LinearCutoffEnvelope,
    LogDecay,
    PowerDecay,
    PowerEnvelope,
    Unclassified,
    alpha_eval,
    l_epsilon,
    psi,
    validate_family,
)
from .semiclassical import weyl_tail_sum

__all__ = ["ConfigError", "RunConfig", "EpsGrid", "main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ADMISSIBILITY = 3
EXIT_NUMERIC = 4


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EpsGrid:
    """Geometric level grid from start down to stop."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.start <= 0.0 or self.stop <= 0.0:
            raise ConfigError("eps grid endpoints must be positive")
        if self.count < 1:
            raise ConfigError("eps grid needs count >= 1")

    def points(self) -> list[float]:
        if self.count == 1:
            return [self.start]
        ratio = self.stop / self.start
        return [self.start * ratio ** (k / (self.count - 1)) for k in range(self.count)]


@dataclass(frozen=True)
class RunConfig:
    family: BranchFamily
    p: CoefficientP
    eps: float | None = None
    eps_grid: EpsGrid | None = None
    a: float = DEFAULT_A
    refine_depth: int | None = None
    C1: float = 3.0
    C2: float = 3.0
    oracle_enabled: bool = True
    grid_policy: GridPolicy = GridPolicy()
    out_format: str = "csv"
    out_path: str | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        pot = _section(raw, "potential", required=True)
        family = _parse_family(pot)
        p = _parse_p(_field(pot, "p", dict, "potential.p", required=True))

        run = _section(raw, "run", required=False)
        eps = _field(run, "eps", (int, float), "run.eps", required=False)
        grid_raw = _field(run, "eps_grid", dict, "run.eps_grid", required=False)
        eps_grid = None
        if grid_raw is not None:
            eps_grid = EpsGrid(
                start=_field(grid_raw, "start", (int, float), "run.eps_grid.start", required=True),
                stop=_field(grid_raw, "stop", (int, float), "run.eps_grid.stop", required=True),
                count=int(_field(grid_raw, "count", int, "run.eps_grid.count", required=True)),
            )
        a = _field(run, "a", (int, float), "run.a", required=False, default=DEFAULT_A)
        if not 0.0 < a < 1.0:
            raise ConfigError(f"run.a must lie in (0, 1), got {a}")
        refine = _field(run, "refine_depth", int, "run.refine_depth", required=False)
        c1 = _field(run, "C1", (int, float), "run.C1", required=False, default=3.0)
        c2 = _field(run, "C2", (int, float), "run.C2", required=False, default=3.0)
        if c1 < 0.0 or c2 < 0.0:
            raise ConfigError("run.C1 and run.C2 must be nonnegative")

        orc = _section(raw, "oracle", required=False)
        enabled = _field(orc, "enabled", bool, "oracle.enabled", required=False, default=True)
        policy = GridPolicy(
            h=_field(orc, "h", (int, float), "oracle.h", required=False, default=0.01),
            pad=_field(orc, "pad", (int, float), "oracle.pad", required=False, default=0.5),
            richardson=_field(orc, "richardson", bool, "oracle.richardson",
                              required=False, default=True),
        )

        out = _section(raw, "output", required=False)
        fmt = _field(out, "format", str, "output.format", required=False, default="csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"output.format must be 'csv' or 'json', got {fmt!r}")
        path = _field(out, "path", str, "output.path", required=False)

        return cls(family=family, p=p, eps=eps, eps_grid=eps_grid, a=float(a),
                   refine_depth=refine, C1=float(c1), C2=float(c2),
                   oracle_enabled=enabled, grid_policy=policy,
                   out_format=fmt, out_path=path)

    def to_dict(self) -> dict:
        d: dict = {"potential": _family_dict(self.family)}
        d["potential"]["p"] = _p_dict(self.p)
        run: dict = {"a": self.a, "C1": self.C1, "C2": self.C2}
        if self.eps is not None:
            run["eps"] = self.eps
        if self.eps_grid is not None:
            run["eps_grid"] = {"start": self.eps_grid.start,
                               "stop": self.eps_grid.stop,
                               "count": self.eps_grid.count}
        if self.refine_depth is not None:
            run["refine_depth"] = self.refine_depth
        d["run"] = run
        d["oracle"] = {"enabled": self.oracle_enabled,
                       "h": self.grid_policy.h,
                       "pad": self.grid_policy.pad,
                       "richardson": self.grid_policy.richardson}
        out: dict = {"format": self.out_format}
        if self.out_path is not None:
            out["path"] = self.out_path
        d["output"] = out
        return d


def _section(raw: dict, name: str, required: bool) -> dict:
    sec = raw.get(name)
    if sec is None:
        if required:
            raise ConfigError(f"missing config section {name!r}")
        return {}
    if not isinstance(sec, dict):
        raise ConfigError(f"config section {name!r} must be an object")
    return sec


def _field(sec: dict, key: str, types, path: str, required: bool, default=None):
    if key not in sec or sec[key] is None:
        if required:
            raise ConfigError(f"missing config field {path!r}")
        return default
    val = sec[key]
    if types is (int, float) or types == (int, float):
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ConfigError(f"config field {path!r} must be a number, got {val!r}")
        return float(val)
    if types is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise ConfigError(f"config field {path!r} must be an integer, got {val!r}")
        return val
    if not isinstance(val, types):
        raise ConfigError(f"config field {path!r} has wrong type: {val!r}")
    return val


def _parse_family(pot: dict) -> BranchFamily:
    env_raw = _field(pot, "envelope", dict, "potential.envelope", required=True)
    kind = _field(env_raw, "kind", str, "potential.envelope.kind", required=True)
    try:
        if kind == "power":
            envelope = PowerEnvelope(
                a0=_field(env_raw, "a0", (int, float), "potential.envelope.a0", required=True),
                scale=_field(env_raw, "scale", (int, float), "potential.envelope.scale",
                             required=False, default=1.0))
        elif kind == "linear-cutoff":
            envelope = LinearCutoffEnvelope(
                x0=_field(env_raw, "x0", (int, float), "potential.envelope.x0", required=True))
        elif kind == "example33":
            envelope = Example33Envelope(
                b=_field(env_raw, "b", (int, float), "potential.envelope.b", required=True))
        else:
            raise ConfigError(f"unknown envelope kind {kind!r}")

        coef_raw = _field(pot, "coefficients", dict, "potential.coefficients", required=True)
        ckind = _field(coef_raw, "kind", str, "potential.coefficients.kind", required=True)
        if ckind == "inverse-square":
            coefficients = InverseSquareCoefficients()
        elif ckind == "geometric":
            coefficients = GeometricCoefficients(
                ratio=_field(coef_raw, "ratio", (int, float),
                             "potential.coefficients.ratio", required=True))
        elif ckind == "explicit":
            vals = coef_raw.get("values")
            if not isinstance(vals, list) or not vals:
                raise ConfigError("potential.coefficients.values must be a nonempty list")
            coefficients = ExplicitCoefficients(tuple(float(v) for v in vals))
        else:
            raise ConfigError(f"unknown coefficients kind {ckind!r}")

        dc_raw = _field(pot, "decay_class", dict, "potential.decay_class", required=False)
        if dc_raw is None:
            decay: LogDecay | PowerDecay | Unclassified = Unclassified()
        else:
            dkind = _field(dc_raw, "kind", str, "potential.decay_class.kind", required=True)
            if dkind == "log":
                decay = LogDecay(
                    xi=_field(dc_raw, "xi", (int, float), "potential.decay_class.xi", required=True),
                    n=_field(dc_raw, "n", int, "potential.decay_class.n", required=True))
            elif dkind == "power":
                decay = PowerDecay(
                    a0=_field(dc_raw, "a0", (int, float), "potential.decay_class.a0", required=True))
            elif dkind == "unclassified":
                decay = Unclassified()
            else:
                raise ConfigError(f"unknown decay_class kind {dkind!r}")

        m = _field(pot, "m", (int, float), "potential.m", required=True)
        return BranchFamily(envelope=envelope, coefficients=coefficients,
                            decay_class=decay, m=m)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_p(p_raw: dict) -> CoefficientP:
    kind = _field(p_raw, "kind", str, "potential.p.kind", required=True)
    try:
        if kind == "constant":
            return CoefficientP.constant(
                _field(p_raw, "value", (int, float), "potential.p.value", required=True))
        if kind == "piecewise-linear":
            knots = p_raw.get("knots")
            if not isinstance(knots, list) or not knots:
                raise ConfigError("potential.p.knots must be a nonempty list of [x, value]")
            return CoefficientP.piecewise_linear([(k[0], k[1]) for k in knots])
        raise ConfigError(f"unknown p kind {kind!r}")
    except ConfigError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise ConfigError(f"potential.p: {exc}") from exc


def _family_dict(family: BranchFamily) -> dict:
    env = family.envelope
    if isinstance(env, PowerEnvelope):
        env_d = {"kind": "power", "a0": env.a0, "scale": env.scale}
    elif isinstance(env, LinearCutoffEnvelope):
        env_d = {"kind": "linear-cutoff", "x0": env.x0}
    else:
        env_d = {"kind": "example33", "b": env.b}
    coef = family.coefficients
    if isinstance(coef, InverseSquareCoefficients):
        coef_d: dict = {"kind": "inverse-square"}
    elif isinstance(coef, GeometricCoefficients):
        coef_d = {"kind": "geometric", "ratio": coef.ratio}
    else:
        coef_d = {"kind": "explicit", "values": list(coef.values_seq)}
    dc = family.decay_class
    if isinstance(dc, LogDecay):
        dc_d = {"kind": "log", "xi": dc.xi, "n": dc.n}
    elif isinstance(dc, PowerDecay):
        dc_d = {"kind": "power", "a0": dc.a0}
    else:
        dc_d = {"kind": "unclassified"}
    return {"envelope": env_d, "coefficients": coef_d, "decay_class": dc_d,
            "m": family.m}


def _p_dict(p: CoefficientP) -> dict:
    if len(p.knots_x) == 1:
        return {"kind": "constant", "value": p.knots_v[0]}
    return {"kind": "piecewise-linear",
            "knots": [[x, v] for x, v in zip(p.knots_x, p.knots_v)]}


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: line {exc.lineno}, "
                          f"column {exc.colno}: {exc.msg}") from exc
    return RunConfig.from_dict(raw)


# --------------------------------------------------------------------------
# emission
# --------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit_csv(tables: list[tuple[list[str], list[list]]]) -> str:
    blocks = []
    for header, rows in tables:
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def _emit_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_out(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


BRACKET_COLUMNS = ["eps", "M", "delta", "n_lower", "n_upper",
                   "s_lower", "s_upper", "l_eps"]
SWEEP_COLUMNS = ["eps", "s_lower", "s_upper", "weyl", "oracle_sum",
                 "ratio_lower", "ratio_upper", "ratio_oracle", "oracle_err"]
CELL_COLUMNS = ["cell", "dirichlet_count", "dirichlet_sum",
                "neumann_count", "neumann_sum"]


def _check_bracket(br: SpectralBracket) -> None:
    if br.n_lower > br.n_upper or br.s_lower > br.s_upper:
        raise RuntimeError(
            f"bracket inconsistency at eps = {br.eps}: "
            f"[{br.n_lower}, {br.n_upper}] / [{br.s_lower}, {br.s_upper}]"
        )


def _bracket_row(br: SpectralBracket, l_eps: int) -> list:
    return [br.eps, br.M, br.delta, br.n_lower, br.n_upper,
            br.s_lower, br.s_upper, l_eps]


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_validate(cfg: RunConfig) -> int:
    report = validate_family(cfg.family, cfg.p)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_CONFIG


def cmd_bracket(cfg: RunConfig, eps: float, per_cell: bool = False) -> int:
    bracket = assemble_bracket(cfg.family, cfg.p, eps, cfg.a)
    _check_bracket(bracket)
    l_eps = l_epsilon(cfg.family, eps)
    tables = [(BRACKET_COLUMNS, [_bracket_row(bracket, l_eps)])]
    if per_cell:
        rows = [[i, d.count, d.sum, n.count, n.sum] for i, d, n in bracket.per_cell]
        tables.append((CELL_COLUMNS, rows))
    deltas = None
    if cfg.refine_depth is not None and bracket.M > 0:
        part = build_partition(cfg.family, eps, cfg.a)
        deltas = refine_delta_sequence(part, cfg.refine_depth).deltas
        tables.append((["i", "delta_i"], [[i, d] for i, d in enumerate(deltas)]))
    if cfg.out_format == "json":
        payload = dict(zip(BRACKET_COLUMNS, _bracket_row(bracket, l_eps)))
        if per_cell:
            payload["per_cell"] = [
                dict(zip(CELL_COLUMNS, [i, d.count, d.sum, n.count, n.sum]))
                for i, d, n in bracket.per_cell]
        if deltas is not None:
            payload["refined_deltas"] = list(deltas)
        _write_out(_emit_json(payload), cfg.out_path)
    else:
        _write_out(_emit_csv(tables), cfg.out_path)
    return EXIT_OK


def _sweep_row(cfg: RunConfig, eps: float):
    try:
        bracket = assemble_bracket(cfg.family, cfg.p, eps, cfg.a, threads=1)
    except AdmissibilityError as exc:
        return ("skip", f"eps = {eps:.8g} skipped: {exc}")
    _check_bracket(bracket)
    weyl = weyl_tail_sum(cfg.family, cfg.p, eps, threads=1)
    w = weyl.total
    row: dict = {
        "eps": eps,
        "s_lower": bracket.s_lower,
        "s_upper": bracket.s_upper,
        "weyl": w,
        "oracle_sum": None,
        "ratio_lower": bracket.s_lower / w if w > 0.0 else None,
        "ratio_upper": bracket.s_upper / w if w > 0.0 else None,
        "ratio_oracle": None,
        "oracle_err": None,
    }
    if cfg.oracle_enabled:
        result = negative_tail(cfg.family, cfg.p, eps, cfg.grid_policy, threads=1)
        row["oracle_sum"] = result.sum
        row["ratio_oracle"] = result.sum / w if w > 0.0 else None
        row["oracle_err"] = result.sum_error
    return ("row", row)


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.eps_grid is None:
        raise ConfigError("sweep needs run.eps_grid (or --eps-grid START:STOP:COUNT)")
    points = cfg.eps_grid.points()
    outcomes = ordered_map(lambda e: _sweep_row(cfg, e), points)
    rows = []
    for kind, payload in outcomes:
        if kind == "skip":
            print(f"warning: {payload}", file=sys.stderr)
        else:
            rows.append(payload)
    if cfg.out_format == "json":
        _write_out(_emit_json(rows), cfg.out_path)
    else:
        table_rows = [[r[c] for c in SWEEP_COLUMNS] for r in rows]
        _write_out(_emit_csv([(SWEEP_COLUMNS, table_rows)]), cfg.out_path)
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, eps: float) -> int:
    result = negative_tail(cfg.family, cfg.p, eps, cfg.grid_policy)
    header = ["eps", "l_eps", "count", "sum", "discretization_err", "truncation_err"]
    row = [eps, l_epsilon(cfg.family, eps), result.count, result.sum,
           result.error.discretization, result.error.truncation]
    if cfg.out_format == "json":
        payload = dict(zip(header, row))
        payload["per_branch"] = [
            {"j": j, "eigenvalues": list(vals)} for j, vals in result.per_branch]
        _write_out(_emit_json(payload), cfg.out_path)
    else:
        _write_out(_emit_csv([(header, [row])]), cfg.out_path)
    return EXIT_OK


def example33_family(b: float) -> BranchFamily:
    """The worked operator: branches alpha(x) / j^2 with the two-piece
    envelope and iterated-log decay class."""
    return BranchFamily(
        envelope=Example33Envelope(b=b),
        coefficients=InverseSquareCoefficients(),
        decay_class=LogDecay(xi=1.0, n=2),
        m=0.6,
    )


def cmd_example33(eps: float, b: float, policy: GridPolicy = GridPolicy(),
                  oracle_flag: bool | None = None, out_format: str = "csv",
                  out_path: str | None = None) -> int:
    if b <= math.exp(3.0):
        print(f"error: b = {b} violates the constraint b > e^3 ~= {math.exp(3.0):.6g}",
              file=sys.stderr)
        return EXIT_CONFIG
    if eps <= 0.0:
        print("error: eps must be positive", file=sys.stderr)
        return EXIT_CONFIG
    family = example33_family(b)
    p = CoefficientP.constant(1.0)
    alpha1_0 = alpha_eval(family, 1, 0.0)
    # the ground-truth run explodes in cost once psi_1 leaves the desk
    # scale, so it defaults on only for eps >= 0.5
    run_oracle = oracle_flag if oracle_flag is not None else eps >= 0.5

    l_eps = l_epsilon(family, eps)
    branch_rows = [[j, psi(family, j, eps)] for j in range(1, l_eps + 1)]

    bracket = assemble_bracket(family, p, eps)
    _check_bracket(bracket)
    weyl = weyl_tail_sum(family, p, eps)
    result: OracleResult | None = None
    if run_oracle:
        result = negative_tail(family, p, eps, policy)

    summary_header = BRACKET_COLUMNS + ["weyl", "oracle_count", "oracle_sum", "oracle_err"]
    summary_row = _bracket_row(bracket, l_eps) + [
        weyl.total,
        result.count if result else None,
        result.sum if result else None,
        result.sum_error if result else None,
    ]
    if out_format == "json":
        payload = {
            "b": b,
            "alpha1_at_zero": alpha1_0,
            "branches": [{"j": j, "psi": pj} for j, pj in branch_rows],
        }
        payload.update(dict(zip(summary_header, summary_row)))
        _write_out(_emit_json(payload), out_path)
    else:
        tables = [(["j", "psi"], branch_rows), (summary_header, [summary_row])]
        _write_out(_emit_csv(tables), out_path)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing and dispatch
# --------------------------------------------------------------------------

def _parse_eps_grid(text: str) -> EpsGrid:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--eps-grid expects START:STOP:COUNT, got {text!r}")
    try:
        return EpsGrid(start=float(parts[0]), stop=float(parts[1]), count=int(parts[2]))
    except ValueError as exc:
        raise ConfigError(f"--eps-grid {text!r}: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-tail",
        description="Two-sided brackets and phase-space estimates for the "
                    "negative-spectrum tail of half-line operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_config=True):
        if with_config:
            sp.add_argument("--config", required=True, help="JSON config file")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("validate", help="check potential hypotheses")
    sp.add_argument("--config", required=True)

    sp = sub.add_parser("bracket", help="two-sided bracket at one level")
    add_common(sp)
    sp.add_argument("--epsilon", type=float, default=None)
    sp.add_argument("--a", type=float, default=None)
    sp.add_argument("--per-cell", action="store_true")
    sp.add_argument("--refine-depth", type=int, default=None,
                    help="append the refined cell-width sequence to this depth")

    sp = sub.add_parser("sweep", help="bracket/weyl/oracle over a level grid")
    add_common(sp)
    sp.add_argument("--eps-grid", default=None, metavar="START:STOP:COUNT")
    sp.add_argument("--a", type=float, default=None)
    sp.add_argument("--oracle", choices=("on", "off"), default=None)
    sp.add_argument("--h", type=float, default=None)
    sp.add_argument("--pad", type=float, default=None)

    sp = sub.add_parser("oracle", help="finite-difference ground truth")
    add_common(sp)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--h", type=float, default=None)
    sp.add_argument("--pad", type=float, default=None)

    sp = sub.add_parser("example33", help="worked two-piece-envelope operator")
    add_common(sp, with_config=False)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--b", type=float, default=25.0)
    sp.add_argument("--oracle", choices=("on", "off"), default=None)
    sp.add_argument("--h", type=float, default=None)
    sp.add_argument("--pad", type=float, default=None)

    return parser


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if getattr(args, "a", None) is not None:
        if not 0.0 < args.a < 1.0:
            raise ConfigError(f"--a must lie in (0, 1), got {args.a}")
        cfg = replace(cfg, a=args.a)
    if getattr(args, "refine_depth", None) is not None:
        if args.refine_depth < 1:
            raise ConfigError(f"--refine-depth must be >= 1, got {args.refine_depth}")
        cfg = replace(cfg, refine_depth=args.refine_depth)
    if getattr(args, "eps_grid", None):
        cfg = replace(cfg, eps_grid=_parse_eps_grid(args.eps_grid))
    if getattr(args, "oracle", None) is not None:
        cfg = replace(cfg, oracle_enabled=args.oracle == "on")
    policy = cfg.grid_policy
    if getattr(args, "h", None) is not None:
        policy = replace(policy, h=args.h)
    if getattr(args, "pad", None) is not None:
        policy = replace(policy, pad=args.pad)
    cfg = replace(cfg, grid_policy=policy)
    if getattr(args, "format", None) is not None:
        cfg = replace(cfg, out_format=args.format)
    if getattr(args, "out", None) is not None:
        cfg = replace(cfg, out_path=args.out)
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "example33":
            policy = GridPolicy(h=args.h if args.h is not None else 0.01,
                                pad=args.pad if args.pad is not None else 0.5)
            oracle_flag = None if args.oracle is None else args.oracle == "on"
            return cmd_example33(args.epsilon, args.b, policy=policy,
                                 oracle_flag=oracle_flag,
                                 out_format=args.format or "csv",
                                 out_path=args.out)

        cfg = _apply_overrides(load_config(args.config), args)
        if args.command == "validate":
            return cmd_validate(cfg)
        if args.command == "bracket":
            eps = args.epsilon if args.epsilon is not None else cfg.eps
            if eps is None:
                raise ConfigError("bracket needs --epsilon or run.eps in the config")
            return cmd_bracket(cfg, eps, per_cell=args.per_cell)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "oracle":
            return cmd_oracle(cfg, args.epsilon)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AdmissibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except (QuadratureError, PivotBreakdownError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # construction/domain errors surfacing straight from the library
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
