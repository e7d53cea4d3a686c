"""Command-line front end: ``generate``, ``verify`` and ``spectrum``.

Exit codes: 0 success, 1 a verification or reference comparison failed,
2 invalid configuration, 3 numerical failure. Data go to files, a short
human summary to stdout, errors to stderr.
"""
import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import checks
from . import families as fm
from .darboux import biorthogonal_state
from .errors import ExcludedBranch, NonFinitePotential, NumericalError, ParameterError
from .quadrature import Grid
from .spectral import discretize, spectrum
from .superpotential import Branch

SCHEMA_VERSION = 1

FAMILY_KEYS = {
    "periodic": {"k", "lambda", "variant"},
    "hyperbolic": {"kappa", "lambda"},
    "oscillator": {"a", "b", "c", "lambda_sign"},
}
DEFAULT_PARAMS = {
    "periodic": {"k": 1.0, "lambda": 0.5, "variant": "cos"},
    "hyperbolic": {"kappa": 1.0, "lambda": 0.45},
    "oscillator": {"a": math.pi / 4, "b": math.sqrt(math.pi) / 2, "c": 1.0, "lambda_sign": 1},
}


# -- serialization -------------------------------------------------------------


def fmt(x):
    """17 significant digits: round-trip exact for doubles."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _to_json(obj, indent=0):
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return _to_json({"re": obj.real, "im": obj.imag}, indent)
    if isinstance(obj, (float, np.floating)):
        s = fmt(obj)
        return s if math.isfinite(obj) else json.dumps(s)
    return json.dumps(str(obj))


def dumps(obj):
    return _to_json(obj) + "\n"


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def table_text(columns, fmt_name):
    """Columns as CSV (header, LF) or as a JSON object of arrays."""
    names = list(columns)
    if fmt_name == "json":
        return dumps({"schema_version": SCHEMA_VERSION,
                      "columns": {k: [float(v) for v in columns[k]] for k in names}})
    rows = [",".join(names)]
    data = [np.asarray(columns[k], dtype=float) for k in names]
    for i in range(len(data[0])):
        rows.append(",".join(fmt(col[i]) for col in data))
    return "\n".join(rows) + "\n"


# -- configuration ---------------------------------------------------------------


@dataclass
class RunConfig:
    family: str
    params: dict
    grid: Grid = None
    fmt: str = "csv"
    out: str = None
    states: tuple = ()
    tolerance: float = None
    extra: dict = field(default_factory=dict)


def _load_params(text):
    """Returns (payload, from_file)."""
    if text is None:
        return {}, False
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            try:
                return json.load(fh), True
            except json.JSONDecodeError as exc:
                raise ParameterError(f"{text}: invalid JSON ({exc})") from exc
    try:
        return json.loads(text), False
    except json.JSONDecodeError as exc:
        raise ParameterError(f"--params is neither a file nor valid JSON: {exc}") from exc


def _parse_states(text):
    if text is None:
        return ()
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise ParameterError(f"--states must look like n0..n1, got {text!r}") from exc
    if lo < 0 or hi < lo:
        raise ParameterError(f"--states range {text!r} is empty or negative")
    return tuple(range(lo, hi + 1))


def build_config(args):
    payload, from_file = _load_params(args.params)
    if not isinstance(payload, dict):
        raise ParameterError("parameters must be a JSON object")
    family = args.family
    if "family" in payload or "params" in payload:
        file_family = payload.get("family")
        if family is not None and file_family is not None and family != file_family:
            where = "parameter file" if from_file else "--params"
            raise ParameterError(f"--family {family!r} conflicts with {where} family {file_family!r}")
        family = file_family or family
        params = payload.get("params", {})
    else:
        params = payload
    if family is None:
        raise ParameterError("no family given (use --family or a parameter file)")
    if family not in FAMILY_KEYS:
        raise ParameterError(f"unknown family {family!r}; choose from {sorted(FAMILY_KEYS)}")
    unknown = set(params) - FAMILY_KEYS[family]
    if unknown:
        raise ParameterError(f"unknown {family} parameters: {sorted(unknown)}")
    merged = dict(DEFAULT_PARAMS[family])
    merged.update(params)
    grid = Grid.parse(args.grid) if getattr(args, "grid", None) else None
    return RunConfig(family, merged, grid, getattr(args, "format", "csv"), args.out,
                     _parse_states(getattr(args, "states", None)), getattr(args, "tolerance", None))


def validate(cfg):
    """Family preconditions, checked before any computation."""
    branch = checks.branch_of(cfg.family, cfg.params)
    if branch is Branch.EXCLUDED:
        raise ExcludedBranch("lambda0 < 0: branch Excluded (imaginary lambda is not constructed)")
    p = cfg.params
    if cfg.family == "periodic":
        fm.PeriodicFamily(float(p["k"]), float(p["lambda"]), p["variant"])
    elif cfg.family == "hyperbolic":
        fm.HyperbolicFamily(float(p["kappa"]), float(p["lambda"]))
        if float(p["lambda"]) == 0:
            return branch
    elif branch is not Branch.CONVENTIONAL:
        fm.OscillatorFamily(float(p["a"]), float(p["b"]), float(p["c"]))
    return branch


# -- commands ------------------------------------------------------------------


def _default_grid(cfg, purpose):
    p = cfg.params
    if cfg.family == "hyperbolic":
        return Grid(-25.0, 25.0, 1500 if purpose == "spectrum" else 1001)
    if cfg.family == "oscillator":
        return Grid(-8.0, 8.0, 1200 if purpose == "spectrum" else 1001)
    per = math.pi / float(p["k"])
    return Grid(-4 * per, 4 * per, 1500 if purpose == "spectrum" else 1001)


def _family_objects(cfg):
    p = cfg.params
    if cfg.family == "periodic":
        alpha, bet, vt = fm.periodic(float(p["k"]), float(p["lambda"]), p["variant"])
        return alpha, bet, vt, None
    if cfg.family == "hyperbolic":
        return fm.hyperbolic(float(p["kappa"]), float(p["lambda"]))
    alpha, bet, vt = fm.osc_family(float(p["a"]), float(p["b"]), float(p["c"]),
                                   p.get("lambda_sign", 1))
    return alpha, bet, vt, None


def _require_finite(x, columns, what):
    for name, col in columns.items():
        bad = np.nonzero(~np.isfinite(np.asarray(col)))[0]
        if bad.size:
            if name in ("re_V", "im_V"):
                raise NonFinitePotential(int(bad[0]), x[bad[0]])
            raise NumericalError(f"{what}: column {name} is not finite at x = {fmt(x[bad[0]])}")


def cmd_generate(cfg):
    grid = cfg.grid or _default_grid(cfg, "generate")
    alpha, bet, vt, missing = _family_objects(cfg)
    x = grid.points
    out = cfg.out or "."
    os.makedirs(out, exist_ok=True)
    ext = cfg.fmt
    written = []
    v = np.asarray(vt(x))
    cols = {"x": x, "re_V": v.real, "im_V": v.imag, "alpha": alpha(x)}
    _require_finite(x, cols, "potential")
    path = os.path.join(out, f"potential.{ext}")
    write_text(path, table_text(cols, ext))
    written.append(path)
    if cfg.family == "oscillator":
        from .darboux import missing_state
        from .superpotential import transformation_function

        missing = missing_state(transformation_function(alpha, bet.lam), Grid(-8.0, 8.0, 4001))
    if missing is not None and missing.normalizable:
        psi = np.asarray(missing(x))
        cols = {"x": x, "re_psi": psi.real, "im_psi": psi.imag, "rho": np.abs(psi) ** 2}
        _require_finite(x, cols, "missing state")
        path = os.path.join(out, f"missing_state.{ext}")
        write_text(path, table_text(cols, ext))
        written.append(path)
    if cfg.states:
        if cfg.family != "oscillator":
            raise ParameterError("--states is only defined for the oscillator family")
        for n in cfg.states:
            psi_n, energy = fm.oscillator_eigenstate(n)
            st = biorthogonal_state(psi_n, energy, bet)
            psi = np.asarray(st.psi_tilde(x))
            cols = {"x": x, "re_psi": psi.real, "im_psi": psi.imag, "rho": np.abs(psi) ** 2}
            _require_finite(x, cols, f"state {n}")
            path = os.path.join(out, f"state_{n}.{ext}")
            write_text(path, table_text(cols, ext))
            written.append(path)
    print(f"{cfg.family}: wrote {len(written)} file(s) to {out}")
    for w in written:
        print(f"  {w}")
    return 0


def cmd_verify(cfg, branch):
    if branch is Branch.CONVENTIONAL:
        p = cfg.params
        if cfg.family == "oscillator":
            alpha = fm.oscillator_alpha(float(p["a"]), float(p["b"]), float(p["c"]))
        else:
            _, alpha = fm.hyperbolic_alpha(float(p["kappa"]), 0.0)
        results = checks.conventional_checks(alpha)
    else:
        results = checks.run_suite(cfg.family, cfg.params)
    ok = all(r.passed for r in results)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "family": cfg.family,
        "params": cfg.params,
        "branch": branch.value,
        "passed": ok,
        "checks": [r.as_dict() for r in results],
    }
    _emit_report(cfg, report)
    print(f"{cfg.family} [{branch.value}]: {sum(r.passed for r in results)}/{len(results)} checks passed")
    for r in results:
        if not r.passed:
            print(f"  FAIL {r.name}: {fmt(r.value)} (threshold {fmt(r.threshold)})")
    return 0 if ok else 1


def _references(cfg, count):
    if cfg.family == "hyperbolic":
        return [-0.25 * float(cfg.params["kappa"]) ** 2], 1e-3
    if cfg.family == "oscillator":
        return [-1.0] + [2.0 * n + 1.0 for n in range(count - 1)], 2e-2
    return [], None


def cmd_spectrum(cfg, count=5, method="dense"):
    grid = cfg.grid or _default_grid(cfg, "spectrum")
    _, _, vt, _ = _family_objects(cfg)
    refs, tol = _references(cfg, count)
    if cfg.tolerance is not None:
        tol = cfg.tolerance
    rep = spectrum(discretize(vt, grid), count, refs, tol, method=method)
    ok = rep.passed() if refs else True
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "spectrum",
        "family": cfg.family,
        "params": cfg.params,
        "grid": {"x_min": grid.x_min, "x_max": grid.x_max, "n": grid.n},
        "method": method,
        "lowest": [{"re": e.real, "im": e.imag, "abs_im": abs(e.imag)} for e in rep.lowest],
        "max_imag_low_m": rep.max_imag_low_m,
        "reference": [{"expected": r[0].real, "found": r[1], "delta": r[2]}
                      for r in rep.matched_reference],
        "tolerance": rep.tolerance if refs else None,
        "passed": ok,
    }
    _emit_report(cfg, report)
    print(f"{cfg.family}: lowest {count} eigenvalues on [{fmt(grid.x_min)}, {fmt(grid.x_max)}], "
          f"n = {grid.n}")
    for e in rep.lowest:
        print(f"  {e.real: .10f}  |Im| = {abs(e.imag):.2e}")
    if refs:
        print(f"  reference match within {fmt(tol)}: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def _emit_report(cfg, report):
    if cfg.out:
        parent = os.path.dirname(cfg.out)
        if parent:
            os.makedirs(parent, exist_ok=True)
        write_text(cfg.out, dumps(report))
    else:
        sys.stdout.write(dumps(report))


# -- entry point ---------------------------------------------------------------


def make_parser():
    parser = argparse.ArgumentParser(
        prog="ermakov-susy",
        description="Complex Darboux partners of real potentials: data, checks and spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--family", choices=sorted(FAMILY_KEYS))
        p.add_argument("--params", help="JSON object or path to a JSON file")
        p.add_argument("--grid", help='"xmin,xmax,n"')
        p.add_argument("--out", help="output directory (generate) or report file")

    g = sub.add_parser("generate", help="write potential and wave-function tables")
    common(g)
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--states", help="oscillator partner states n0..n1")

    v = sub.add_parser("verify", help="run the invariant suite and report pass/fail")
    common(v)

    s = sub.add_parser("spectrum", help="eigenvalues of the discretized partner Hamiltonian")
    common(s)
    s.add_argument("--count", type=int, default=5, help="number of lowest eigenvalues")
    s.add_argument("--tolerance", type=float, help="reference-match tolerance override")
    s.add_argument("--method", choices=("dense", "tridiagonal"), default="dense")
    return parser


def _dispatch(args):
    cfg = build_config(args)
    branch = validate(cfg)
    if args.command == "verify":
        return cmd_verify(cfg, branch)
    if branch is Branch.CONVENTIONAL:
        raise ParameterError("lambda = 0 (branch Conventional): no complex partner to build")
    if args.command == "generate":
        return cmd_generate(cfg)
    return cmd_spectrum(cfg, args.count, args.method)


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        # non-finite values are detected explicitly and reported as exit 3
        with np.errstate(all="ignore"):
            return _dispatch(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
