"""Command-line front end.

Exit codes: 0 success, 1 validation disagreement, 2 usage error,
3 file I/O error, 4 domain error (message passed through verbatim).
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence, TextIO

import numpy as np

from . import bounds, mode_spectrum, observables, regularization, sme_tensors

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

__all__ = ["RunConfig", "build_parser", "parse_invocation", "run", "main"]

SUBCOMMANDS = ("kappa", "modes", "energy", "force", "bound", "sweep", "validate")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_DOMAIN = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    units: str = "natural"
    output: str = "pretty"
    input_path: str | None = None
    config_path: str | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def echo(self) -> dict[str, Any]:
        return {"subcommand": self.subcommand, "units": self.units, "output": self.output,
                "input_path": self.input_path, "config_path": self.config_path, **self.params}


# --- argument types ---------------------------------------------------------

def _float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return v


def _positive(name: str):
    def conv(text: str) -> float:
        v = _float(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{name} must be > 0, got {text!r}")
        return v
    conv.__name__ = name
    return conv


def _liv(text: str) -> float:
    v = _float(text)
    if not v > -1:
        raise argparse.ArgumentTypeError(f"L must be > -1, got {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text!r}")
    return v


def _floats(name: str, positive: bool = True, n: int | None = None):
    def conv(text: str) -> tuple[float, ...]:
        parts = [p for p in text.replace(" ", "").split(",") if p]
        vals = tuple((_positive(name) if positive else _float)(p) for p in parts)
        if not vals:
            raise argparse.ArgumentTypeError(f"{name} needs at least one value")
        if n is not None and len(vals) != n:
            raise argparse.ArgumentTypeError(f"{name} needs {n} comma-separated values, got {len(vals)}")
        return vals
    conv.__name__ = name
    return conv


# --- parser -----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    u = p.add_mutually_exclusive_group()
    u.add_argument("--si", dest="units", action="store_const", const="SI",
                   help="SI units: lengths in m, results in Pa / N / J/m^2")
    u.add_argument("--natural", dest="units", action="store_const", const="natural",
                   help="natural units hbar = c = 1 (default)")
    p.add_argument("--format", dest="output", choices=("json", "csv", "pretty"), default="pretty")
    p.add_argument("--config", dest="config_path", metavar="PATH",
                   help="TOML file of option values; command-line flags take precedence")
    return p


def _area_group(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--area", type=_positive("area"), help="plate area A")
    g.add_argument("--disk-diameter", type=_positive("disk diameter"), help="circular plate diameter")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-liv",
        description="Casimir energy, pressure and force with a Lorentz-violation factor L.",
    )
    sub = parser.add_subparsers(dest="subcommand", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    sub.required = True
    common = _common()

    p = sub.add_parser("kappa", parents=[common], help="kappa matrices (and optionally L) from a k_F file")
    p.add_argument("--input", dest="input_path", metavar="PATH", help="k_F coefficient file (TOML)")
    p.add_argument("--e-sq", type=_floats("E_sq", positive=False), help="<E^2>: scalar or 3 comma-separated components")
    p.add_argument("--b-sq", type=_floats("B_sq", positive=False), help="<B^2>: scalar or 3 comma-separated components")
    p.add_argument("--e-dir", type=_floats("E direction", positive=False, n=3))
    p.add_argument("--b-dir", type=_floats("B direction", positive=False, n=3))
    p.add_argument("--isotropic", action="store_true", default=None, help="use the rotational average tr(kappa)/3")
    p.add_argument("--bianchi", action="store_true", default=None, help="also check the cyclic identity")
    p.add_argument("--double-trace", action="store_true", default=None, help="also check double tracelessness")

    p = sub.add_parser("modes", parents=[common], help="enumerate Dirichlet/Neumann plate modes")
    p.add_argument("--a", type=_positive("a"), help="plate separation")
    p.add_argument("--omega-max", type=_positive("omega_max"), help="highest frequency to list")
    p.add_argument("--k-samples", type=_positive_int, default=1, help="transverse samples per branch")
    p.add_argument("--L", type=_liv, default=0.0, help="LIV factor for the shifted frequencies")

    for name, text in (("energy", "Casimir energy per area and pressure"),
                       ("force", "Casimir pressure and force on finite plates")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--a", type=_positive("a"), help="plate separation")
        p.add_argument("--L", type=_liv, default=0.0, help="LIV factor (default 0)")
        _area_group(p)

    p = sub.add_parser("bound", parents=[common], help="upper bound on L from a force accuracy")
    p.add_argument("--preset", help="measurement preset name, e.g. paper_inputs")
    p.add_argument("--variant", help="preset variant, e.g. dF_1pN or dF_1p6pN")
    p.add_argument("--a", type=_positive("a"), help="plate separation (m)")
    p.add_argument("--delta-F", type=_positive("delta_F"), help="force accuracy (N)")
    _area_group(p)

    p = sub.add_parser("sweep", parents=[common], help="cutoff convergence table or bound-vs-separation table")
    p.add_argument("--kind", choices=("convergence", "bound"), default="convergence")
    p.add_argument("--a", type=_positive("a"), help="separation for the convergence table")
    p.add_argument("--deltas", type=_floats("deltas"), help="cutoff schedule, decreasing, comma-separated")
    p.add_argument("--n-max", type=_positive_int, help="mode-sum truncation")
    p.add_argument("--extrapolation-order", type=_positive_int, default=2)
    p.add_argument("--a-grid", type=_floats("a grid"), help="separations for the bound table")
    p.add_argument("--a-min", type=_positive("a_min"))
    p.add_argument("--a-max", type=_positive("a_max"))
    p.add_argument("--points", type=_positive_int, default=10)
    p.add_argument("--preset", help="measurement preset for the bound table")
    p.add_argument("--variant")
    p.add_argument("--delta-F", type=_positive("delta_F"))
    _area_group(p)

    p = sub.add_parser("validate", parents=[common], help="check the cutoff oracle against the zeta result")
    p.add_argument("--a-min", type=_positive("a_min"), default=0.1)
    p.add_argument("--a-max", type=_positive("a_max"), default=10.0)
    p.add_argument("--points", type=_positive_int, default=10)
    p.add_argument("--rtol", type=_positive("rtol"), default=1e-3)
    return parser


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def _apply_config_file(parser: argparse.ArgumentParser, sp: argparse.ArgumentParser, path: str) -> None:
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise FileNotFoundError(f"cannot read config file {path!r}: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        sp.error(f"config file {path!r} is not valid TOML: {exc}")
    actions = {a.dest: a for a in sp._actions if a.dest not in ("help", "config_path")}
    defaults = {}
    for key, value in doc.items():
        dest = key.replace("-", "_")
        if dest not in actions:
            sp.error(f"unknown key in config file {path!r}: {key!r}")
        action = actions[dest]
        if isinstance(value, list):
            value = ",".join(str(v) for v in value)
        if action.type is not None:
            try:
                value = action.type(str(value))
            except argparse.ArgumentTypeError as exc:
                sp.error(f"config key {key!r}: {exc}")
        if action.choices is not None and value not in action.choices:
            sp.error(f"config key {key!r}: invalid choice {value!r}")
        defaults[dest] = value
    sp.set_defaults(**defaults)


def parse_invocation(argv: Sequence[str]) -> RunConfig:
    """Map command-line arguments to a :class:`RunConfig`.

    Usage errors raise ``SystemExit(2)`` after printing a one-line reason;
    ``--help`` raises ``SystemExit(0)``.
    """
    parser = build_parser()
    ns = parser.parse_args(list(argv))
    if ns.config_path:
        sp = _subparser(parser, ns.subcommand)
        _apply_config_file(parser, sp, ns.config_path)
        ns = parser.parse_args(list(argv))
    sp = _subparser(parser, ns.subcommand)
    if getattr(ns, "area", None) is not None and getattr(ns, "disk_diameter", None) is not None:
        sp.error("give either --area or --disk-diameter, not both")
    units = ns.units or "natural"
    if ns.subcommand == "bound" or (ns.subcommand == "sweep" and ns.kind == "bound"):
        if ns.units == "natural":
            sp.error("bounds compare forces in newtons; natural units are not supported here")
        units = "SI"
    params = {k: v for k, v in vars(ns).items()
              if k not in ("subcommand", "units", "output", "input_path", "config_path")}
    cfg = RunConfig(ns.subcommand, units, ns.output,
                    getattr(ns, "input_path", None), ns.config_path, params)
    _check_required(sp, cfg)
    return cfg


_REQUIRED = {
    "kappa": ("input_path",),
    "modes": ("a", "omega_max"),
    "energy": ("a",),
    "force": ("a",),
}


def _check_required(sp: argparse.ArgumentParser, cfg: RunConfig):
    p = cfg.params
    for key in _REQUIRED.get(cfg.subcommand, ()):
        val = cfg.input_path if key == "input_path" else p.get(key)
        if val is None:
            sp.error(f"missing required option --{key.replace('_', '-').replace('input-path', 'input')}")
    if cfg.subcommand == "force" and p.get("area") is None and p.get("disk_diameter") is None:
        sp.error("force needs --area or --disk-diameter")
    if cfg.subcommand == "kappa":
        if (p.get("e_sq") is None) != (p.get("b_sq") is None):
            sp.error("give both --e-sq and --b-sq to compute L")
    if cfg.subcommand == "sweep" and p["kind"] == "convergence" and p.get("a") is None:
        sp.error("sweep --kind convergence needs --a")
    if cfg.subcommand == "validate" and p["a_max"] < p["a_min"]:
        sp.error("--a-max must be >= --a-min")


# --- commands ---------------------------------------------------------------

def _geometry(p: dict, a: float) -> observables.PlateGeometry:
    return observables.PlateGeometry(a, area_A=p.get("area"), disk_diameter=p.get("disk_diameter"))


def _measurement(p: dict) -> bounds.MeasurementRecord:
    overrides = any(p.get(k) is not None for k in ("a", "area", "disk_diameter", "delta_F"))
    if p.get("preset") is None and overrides:
        missing = [f for f, k in (("--a", "a"), ("--delta-F", "delta_F")) if p.get(k) is None]
        if p.get("area") is None and p.get("disk_diameter") is None:
            missing.append("--area/--disk-diameter")
        if missing:
            raise ValueError(f"explicit measurement needs {', '.join(missing)} (or use --preset)")
        return bounds.MeasurementRecord(p["delta_F"], _geometry(p, p["a"]), source_label="command line")
    m = bounds.load_preset(p.get("preset") or "paper_inputs", p.get("variant"))
    if overrides:
        g = m.geometry
        if p.get("area") is not None or p.get("disk_diameter") is not None:
            g = _geometry(p, g.separation_a)
        if p.get("a") is not None:
            g = g.with_separation(p["a"])
        m = dataclasses.replace(m, geometry=g, delta_F=p.get("delta_F") or m.delta_F,
                                source_label=m.source_label + " (overridden)", reported_L_max=None)
    return m


def _cmd_kappa(cfg: RunConfig) -> tuple[int, dict]:
    p = cfg.params
    kf, kaf, medium = sme_tensors.load_kf_file(cfg.input_path)
    report = sme_tensors.validate_kf(kf, bianchi=bool(p.get("bianchi")), double_trace=bool(p.get("double_trace")))
    k = sme_tensors.kappa_from_kf(kf)
    basis = np.eye(3)
    cross = max(abs(sme_tensors.cross_term(k, e, b)) for e in basis for b in basis)
    result = {
        "kappa": k.as_dict(),
        "validation": {"ok": report.ok,
                       "violations": [dataclasses.asdict(v) for v in report.violations],
                       "warnings": list(report.warnings)},
        "kaf": list(kaf.components) if kaf else None,
        "medium": dataclasses.asdict(medium),
        "max_cross_term": cross,
    }
    if p.get("e_sq") is not None:
        e_sq, b_sq = p["e_sq"], p["b_sq"]
        fs = sme_tensors.FieldStats(
            e_sq[0] if len(e_sq) == 1 else e_sq, b_sq[0] if len(b_sq) == 1 else b_sq,
            E_dir=p.get("e_dir"), B_dir=p.get("b_dir"), isotropic=bool(p.get("isotropic")))
        result["L"] = sme_tensors.liv_factor(k, fs, medium)
    return (EXIT_OK if report.ok else EXIT_DOMAIN), result


def _cmd_modes(cfg: RunConfig) -> tuple[int, list]:
    p = cfg.params
    rows = []
    for spec, omega in mode_spectrum.enumerate_modes(p["a"], p["omega_max"], p["k_samples"]):
        rows.append({"bc": spec.bc.value, "n": spec.n, "k_T": spec.k_T, "omega": omega,
                     "omega_shifted": mode_spectrum.shifted_frequency(omega, p["L"])})
    return EXIT_OK, rows


def _cmd_energy(cfg: RunConfig) -> tuple[int, dict]:
    p = cfg.params
    u = observables.UnitSystem(cfg.units)
    if p.get("area") is not None or p.get("disk_diameter") is not None:
        return EXIT_OK, observables.casimir_record(_geometry(p, p["a"]), p["L"], u)
    warn = observables.PlateGeometry(p["a"], area_A=1.0).warnings(u)
    return EXIT_OK, {
        "a": p["a"], "A": None, "L": p["L"],
        "pressure": observables.casimir_pressure(p["a"], p["L"], u),
        "force": None,
        "energy_per_area": observables.energy_per_area_physical(p["a"], p["L"], u),
        "units": {"mode": u.mode, **u.labels},
        "warnings": warn,
    }


def _cmd_force(cfg: RunConfig) -> tuple[int, dict]:
    p = cfg.params
    return EXIT_OK, observables.casimir_record(_geometry(p, p["a"]), p["L"], observables.UnitSystem(cfg.units))


def _cmd_bound(cfg: RunConfig) -> tuple[int, dict]:
    m = _measurement(cfg.params)
    res = bounds.liv_upper_bound(m, observables.SI)
    out = res.as_dict()
    out["units"] = {"mode": "SI", "L_max": "dimensionless", "reference_force": "N", "delta_F": "N", "a": "m"}
    return EXIT_OK, out


def _cmd_sweep(cfg: RunConfig) -> tuple[int, list]:
    p = cfg.params
    if p["kind"] == "convergence":
        sched = None
        if p.get("deltas") is not None:
            sched = regularization.RegulatorSchedule(p["deltas"], p.get("n_max"), p["extrapolation_order"])
        return EXIT_OK, regularization.convergence_table(p["a"], sched)
    m = _measurement(p)
    if p.get("a_grid") is not None:
        grid = p["a_grid"]
    else:
        lo = p.get("a_min") or m.geometry.separation_a
        hi = p.get("a_max") or 100 * lo
        if hi < lo:
            raise ValueError("a_max must be >= a_min")
        grid = np.geomspace(lo, hi, p["points"]).tolist()
    rows = [{"a": r.inputs_echo.geometry.separation_a, "F": -r.reference_force, "L_max": r.L_max}
            for r in bounds.bound_sweep(m, grid, observables.SI)]
    return EXIT_OK, rows


def _cmd_validate(cfg: RunConfig) -> tuple[int, dict]:
    p = cfg.params
    rows = []
    for a in np.geomspace(p["a_min"], p["a_max"], p["points"]):
        a = float(a)
        ext = regularization.extrapolated_cutoff_energy(a)
        ref = regularization.zeta_energy_per_area(a).energy_per_area
        rel = abs(ext.value - ref) / abs(ref)
        rows.append({"a": a, "extrapolated": ext.value, "error_estimate": ext.error,
                     "zeta_reference": ref, "rel_diff": rel, "pass": rel < p["rtol"]})
    anchors = []
    for s in (4.0, 5.0, 6.0, 7.0):
        d = regularization.direct_regulated_sum(s, 1.0)
        c = regularization.regulated_closed_form(s, 1.0)
        anchors.append({"s": s, "direct": d, "closed_form": c, "rel_diff": abs(d - c) / abs(c),
                        "pass": abs(d - c) <= 1e-8 * abs(c)})
    ok = all(r["pass"] for r in rows) and all(r["pass"] for r in anchors)
    return (EXIT_OK if ok else EXIT_FAIL), {"ok": ok, "rtol": p["rtol"], "grid": rows, "anchors": anchors}


_COMMANDS = {
    "kappa": _cmd_kappa, "modes": _cmd_modes, "energy": _cmd_energy, "force": _cmd_force,
    "bound": _cmd_bound, "sweep": _cmd_sweep, "validate": _cmd_validate,
}


# --- rendering --------------------------------------------------------------

def _num(x: float) -> str:
    return f"{x:.17g}"


def _flatten(d: dict, prefix: str = "") -> dict[str, Any]:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = ";".join(_cell(x) for x in np.ravel(np.asarray(v, dtype=object)))
        else:
            out[key] = v
    return out


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return _num(v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _render_csv(result) -> str:
    rows = result if isinstance(result, list) else [result]
    flat = [_flatten(r) for r in rows]
    cols = list(dict.fromkeys(k for r in flat for k in r))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in flat:
        w.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def _render_json(cfg: RunConfig, result) -> str:
    payload = {"command": cfg.subcommand, "config": cfg.echo(), "result": result}
    return json.dumps(payload, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, (tuple, np.ndarray)):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _sign_label(x: float) -> str:
    return "attractive" if x < 0 else "repulsive" if x > 0 else "zero"


def _render_pretty(cfg: RunConfig, result) -> str:
    lines = []
    if cfg.subcommand in ("energy", "force"):
        u = result["units"]
        lines.append(f"separation a      = {result['a']:.6g} {u['a']}")
        if result["A"] is not None:
            lines.append(f"plate area A      = {result['A']:.6g} {u['A']}")
        lines.append(f"LIV factor L      = {result['L']:.6g}")
        lines.append(f"energy per area   = {result['energy_per_area']:.10g} {u['energy_per_area']}")
        p = result["pressure"]
        lines.append(f"pressure          = {p:.10g} {u['pressure']}  ({_sign_label(p)}, |P| = {abs(p):.6g})")
        if result["force"] is not None:
            f = result["force"]
            lines.append(f"force             = {f:.10g} {u['force']}  ({_sign_label(f)}, |F| = {abs(f):.6g} {u['force']})")
        lines += [f"warning: {w}" for w in result["warnings"]]
    elif cfg.subcommand == "bound":
        inp = result["inputs"]
        g = inp["geometry"]
        lines.append(f"measurement       = {inp['source_label']}")
        lines.append(f"separation a      = {g['separation_a']:.6g} m, plate area A = {g['area_A']:.6g} m^2")
        lines.append(f"force accuracy    = {inp['delta_F']:.6g} N")
        lines.append(f"|F(L=0)|          = {result['reference_force']:.10g} N (attractive)")
        lines.append(f"L_max             = {result['L_max']:.6g}")
        if "paper_discrepancy" in result:
            lines.append(f"note: {result['paper_discrepancy']['note']}")
    elif cfg.subcommand == "kappa":
        for name, m in result["kappa"].items():
            lines.append(f"{name} =")
            lines += ["  [" + ", ".join(f"{x: .6g}" for x in row) + "]" for row in m]
        v = result["validation"]
        lines.append("validation: ok" if v["ok"] else f"validation: {len(v['violations'])} violation(s)")
        lines += [f"  {x['relation']} at {x['indices']}: {x['detail']}" for x in v["violations"]]
        lines += [f"warning: {w}" for w in v["warnings"]]
        lines.append(f"max cross term    = {result['max_cross_term']:.3g}")
        if "L" in result:
            lines.append(f"L                 = {result['L']:.10g}")
    elif cfg.subcommand == "validate":
        for r in result["grid"]:
            lines.append(f"a = {r['a']:<10.4g} cutoff = {r['extrapolated']: .10e}  zeta = {r['zeta_reference']: .10e}"
                         f"  rel = {r['rel_diff']:.2e}  {'PASS' if r['pass'] else 'FAIL'}")
        for r in result["anchors"]:
            lines.append(f"s = {r['s']:<4g} direct sum vs closed form  rel = {r['rel_diff']:.2e}  "
                         f"{'PASS' if r['pass'] else 'FAIL'}")
        lines.append("all checks passed" if result["ok"] else "validation FAILED")
    else:
        rows = result
        if rows:
            cols = list(rows[0])
            lines.append("  ".join(f"{c:>14}" for c in cols))
            for r in rows:
                lines.append("  ".join(f"{r[c]:>14.8g}" if isinstance(r[c], float) else f"{r[c]!s:>14}" for c in cols))
    return "\n".join(lines) + "\n"


def run(config: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one command, write its output, return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        code, result = _COMMANDS[config.subcommand](config)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    if config.output == "json":
        out.write(_render_json(config, result))
    elif config.output == "csv":
        out.write(_render_csv(result))
    else:
        out.write(_render_pretty(config, result))
    return code


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_invocation(argv)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
