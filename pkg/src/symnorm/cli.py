"""Command-line front end.

``symnorm COMMAND [options]`` loads grid functions and norm specs from JSON,
runs one computation and writes a canonical JSON report.  Exit codes: 0 ok,
1 property failure, 2 usage, 3 I/O, 4 validation.

Reports are deterministic: identical arguments give byte-identical output.
Wall-clock time is included only with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .duality import dual_norm
from .errors import DomainError
from .fourier import cesaro_mean, frequencies, poisson_extension, poisson_truncation_term, to_fourier
from .grid import Grid, GridFunction
from .hardy import FactorizationError, beurling_check, inner_outer_factor, is_outer, smirnov_decompose
from .io import canonical_dumps, gridfunction_from_dict, to_jsonable
from .norms import KyFan, Lp, Marcinkiewicz, NormSpec, eval_norm, spec_from_dict
from .sampling import GENERATOR, band_limited, builtin_specs, factorization_fixtures, smirnov_fixtures
from .suites import run_suites

COMMANDS = ("norm", "dual", "factor", "converge", "beurling", "smirnov", "verify")
TOLERANCES = {"dual": 1e-8, "factor": 1e-6, "outer": 1e-6}

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_VALIDATION = 0, 1, 2, 3, 4


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(EXIT_USAGE, message)


@dataclass
class RunConfig:
    command: str
    grid_n: int | None = None
    spec_path: str | None = None
    input_paths: list[str] = field(default_factory=list)
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=dict)
    output_path: str | None = None
    K: int = 16
    csv_path: str | None = None
    timing: bool = False

    def canonical(self) -> dict:
        """Everything that affects the results; destination paths are left out."""
        d = asdict(self)
        del d["output_path"], d["csv_path"]
        d["tolerances"] = {**TOLERANCES, **self.tolerances}
        return d

    def hash(self) -> str:
        """sha256 of the config as compact JSON with sorted keys."""
        text = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"), allow_nan=False)
        return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class Report:
    command: str
    config: dict
    config_hash: str
    results: list = field(default_factory=list)
    properties: list = field(default_factory=list)
    exit_code: int = EXIT_OK
    error: str | None = None
    version: str = __version__
    generator: str = GENERATOR
    wall_clock_s: float | None = None
    csv: str | None = None

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k not in ("csv", "wall_clock_s")}
        if self.wall_clock_s is not None:
            d["wall_clock_s"] = self.wall_clock_s
        return d


def _parser() -> _Parser:
    p = _Parser(prog="symnorm", description="Gauge norms, duality and Hardy-space factorization on the circle grid.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, dest="grid_n", help="grid size (power of two)")
    p.add_argument("--spec", dest="spec_path", help="norm spec JSON file, or builtin:NAME")
    p.add_argument("--in", dest="input_paths", action="append", default=[], help="grid function JSON (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                   help=f"override a tolerance ({', '.join(TOLERANCES)})")
    p.add_argument("--out", dest="output_path", help="write the JSON report here instead of stdout")
    p.add_argument("--K", type=int, default=16, help="number of shifts for beurling")
    p.add_argument("--csv", dest="csv_path", help="converge: write the CSV curves here")
    p.add_argument("--timing", action="store_true", help="record wall-clock time in the report")
    return p


def parse_config(argv) -> RunConfig:
    """Parse and validate arguments; raises :class:`CLIError` with the exit code."""
    ns = _parser().parse_args(list(argv))
    tols = {}
    for item in ns.tol:
        name, sep, value = item.partition("=")
        if not sep or name not in TOLERANCES:
            raise CLIError(EXIT_USAGE, f"bad --tol {item!r}; known names: {', '.join(TOLERANCES)}")
        try:
            tols[name] = float(value)
        except ValueError:
            raise CLIError(EXIT_VALIDATION, f"tolerance {name} is not a number: {value!r}") from None
        if not tols[name] > 0:
            raise CLIError(EXIT_VALIDATION, f"tolerance {name} must be positive")
    cfg = RunConfig(ns.command, ns.grid_n, ns.spec_path, list(ns.input_paths), ns.seed, tols,
                    ns.output_path, ns.K, ns.csv_path, ns.timing)
    if cfg.grid_n is not None:
        try:
            Grid(cfg.grid_n)
        except DomainError as exc:
            raise CLIError(EXIT_VALIDATION, str(exc)) from None
    if cfg.K < 1:
        raise CLIError(EXIT_VALIDATION, "--K must be positive")
    if cfg.command in ("norm", "dual") and not cfg.input_paths:
        raise CLIError(EXIT_USAGE, f"{cfg.command} needs at least one --in")
    if cfg.command in ("norm", "dual") and not cfg.spec_path:
        raise CLIError(EXIT_USAGE, f"{cfg.command} needs --spec")
    if cfg.command == "smirnov" and len(cfg.input_paths) % 2:
        raise CLIError(EXIT_USAGE, "smirnov takes inputs in (numerator, denominator) pairs")
    # load once here so that bad files fail at parse time with the right code
    _load_inputs(cfg)
    if cfg.spec_path:
        _load_spec(cfg.spec_path, cfg.grid_n or 64)
    return cfg


def _read_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CLIError(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CLIError(EXIT_VALIDATION, f"{path} is not valid JSON: {exc}") from None


def _load_spec(path: str, n: int) -> NormSpec:
    if path.startswith("builtin:"):
        specs = builtin_specs(n)
        name = path[len("builtin:"):]
        if name not in specs:
            raise CLIError(EXIT_VALIDATION, f"unknown builtin spec {name!r}; choose from {', '.join(specs)}")
        return specs[name]
    try:
        return spec_from_dict(_read_json(path))
    except DomainError as exc:
        raise CLIError(EXIT_VALIDATION, f"{path}: {exc}") from None


def _load_inputs(cfg: RunConfig) -> list[GridFunction]:
    out = []
    for path in cfg.input_paths:
        try:
            f = gridfunction_from_dict(_read_json(path))
        except DomainError as exc:
            raise CLIError(EXIT_VALIDATION, f"{path}: {exc}") from None
        if cfg.grid_n is not None and f.n != cfg.grid_n:
            raise CLIError(EXIT_VALIDATION, f"{path} has n = {f.n} but --n is {cfg.grid_n}")
        out.append(f)
    if len({f.n for f in out}) > 1:
        raise CLIError(EXIT_VALIDATION, "inputs live on different grids")
    return out


def _grid_size(cfg: RunConfig, inputs, default: int = 64) -> int:
    if cfg.grid_n is not None:
        return cfg.grid_n
    return inputs[0].n if inputs else default


def _tol(cfg: RunConfig, name: str) -> float:
    return cfg.tolerances.get(name, TOLERANCES[name])


# -- commands ------------------------------------------------------------------

def _cmd_norm(cfg, inputs, spec):
    return [{"input": p, "alpha": eval_norm(spec, f)} for p, f in zip(cfg.input_paths, inputs)], True


def _cmd_dual(cfg, inputs, spec):
    rows, ok = [], True
    for p, f in zip(cfg.input_paths, inputs):
        ev = dual_norm(spec, f, tol=_tol(cfg, "dual"))
        ok &= ev.gap <= _tol(cfg, "dual") * max(1.0, ev.value)
        rows.append({"input": p, "value": ev.value, "gap": ev.gap, "method": ev.method,
                     "iterations": ev.iterations, "witness": ev.witness})
    return rows, ok


def _named_inputs(cfg, inputs, fixtures):
    if inputs:
        return list(zip(cfg.input_paths, inputs))
    return [(name, f) for name, (f, _) in fixtures.items()]


def _cmd_factor(cfg, inputs, spec):
    rows, ok = [], True
    fixtures = {} if inputs else factorization_fixtures(Grid(_grid_size(cfg, inputs, 256)))
    for name, f in _named_inputs(cfg, inputs, fixtures):
        res = inner_outer_factor(f, tol=_tol(cfg, "factor"))
        test = is_outer(f, tol=_tol(cfg, "outer"))
        ok &= res.success
        rows.append({"input": name, "factorization": res, "input_is_outer": test.outer,
                     "input_jensen_defect": test.jensen_defect})
    return rows, ok


def _cmd_beurling(cfg, inputs, spec):
    rows, ok = [], True
    fixtures = {} if inputs else factorization_fixtures(Grid(_grid_size(cfg, inputs, 256)))
    for name, f in _named_inputs(cfg, inputs, fixtures):
        try:
            cmp = beurling_check(f, cfg.K)
        except FactorizationError as exc:
            rows.append({"input": name, "error": str(exc), "factorization": exc.result})
            ok = False
            continue
        ok &= cmp.principal_angle <= _tol(cfg, "factor")
        rows.append({"input": name, "K": cmp.truncation, "principal_angle": cmp.principal_angle,
                     "inner": cmp.generator_inner})
    return rows, ok


def _cmd_smirnov(cfg, inputs, spec):
    if inputs:
        pairs = [(f"{cfg.input_paths[i]} / {cfg.input_paths[i + 1]}", inputs[i], inputs[i + 1])
                 for i in range(0, len(inputs), 2)]
    else:
        fx = smirnov_fixtures(Grid(_grid_size(cfg, inputs, 256)))
        pairs = [(k, a, b) for k, (a, b) in fx.items()]
    rows, ok = [], True
    for name, f1, f2 in pairs:
        d = smirnov_decompose(f1, f2)
        worst = max(d.partition_residual, d.reconstruction_residual, d.unimodularity_residual, d.outer_defect)
        ok &= worst <= _tol(cfg, "factor")
        rows.append({"input": name, "decomposition": d})
    return rows, ok


def _convergence_rows(name, f, specs):
    n = f.n
    k = np.abs(frequencies(n))
    c = np.abs(to_fourier(f).coeffs)
    rows = []
    ms = sorted({0, *(2 ** j - 1 for j in range(1, int(math.log2(n)))), n // 2 - 1})
    for m in ms:
        bound = float(np.sum(np.minimum(k, m + 1) / (m + 1) * c))
        diff = f - cesaro_mean(f, m)
        for sname, s in specs.items():
            rows.append({"input": name, "method": "cesaro", "parameter": m, "spec": sname,
                         "error": eval_norm(s, diff), "bound": bound})
    for r in (0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99, 0.999):
        fr = poisson_extension(f, r)
        excess = poisson_truncation_term(r, f.grid)
        for sname, s in specs.items():
            a = eval_norm(s, f)
            rows.append({"input": name, "method": "poisson", "parameter": r, "spec": sname,
                         "error": eval_norm(s, f - fr), "bound": 2.0 * a * (1.0 + excess)})
    return rows


def _cmd_converge(cfg, inputs, spec):
    n = _grid_size(cfg, inputs)
    if spec is not None:
        specs = {cfg.spec_path: spec}
    else:
        specs = {"l1": Lp(1), "l2": Lp(2), "linf": Lp(np.inf), "kyfan_1/2": KyFan(0.5),
                 "marcinkiewicz_sqrt": Marcinkiewicz.from_function(np.sqrt, n)}
    if inputs:
        named = list(zip(cfg.input_paths, inputs))
    else:
        rng = np.random.default_rng(cfg.seed)
        named = [(f"band_limited(seed={cfg.seed})", band_limited(Grid(n), n // 4, rng))]
    rows = []
    for name, f in named:
        rows.extend(_convergence_rows(name, f, specs))
    ok = all(r["error"] <= r["bound"] + 1e-10 * max(1.0, r["bound"]) for r in rows if r["method"] == "cesaro")
    return rows, ok


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["input", "method", "parameter", "spec", "error", "bound"])
    for r in rows:
        w.writerow([r["input"], r["method"], r["parameter"], r["spec"],
                    format(r["error"], ".17g"), format(r["bound"], ".17g")])
    return buf.getvalue()


def run(cfg: RunConfig) -> Report:
    """Execute ``cfg`` and return the report (its ``exit_code`` is the process exit code)."""
    start = time.perf_counter()
    report = Report(cfg.command, cfg.canonical(), cfg.hash())
    try:
        inputs = _load_inputs(cfg)
        n = _grid_size(cfg, inputs)
        spec = _load_spec(cfg.spec_path, n) if cfg.spec_path else None
        if spec is not None:
            spec.check_grid(n)
        if cfg.command == "verify":
            results = run_suites(n, cfg.seed)
            report.properties = [asdict(r) for r in results]
            ok = all(r.passed for r in results)
        else:
            handler = {"norm": _cmd_norm, "dual": _cmd_dual, "factor": _cmd_factor,
                       "beurling": _cmd_beurling, "smirnov": _cmd_smirnov,
                       "converge": _cmd_converge}[cfg.command]
            rows, ok = handler(cfg, inputs, spec)
            report.results = to_jsonable(rows)
            if cfg.command == "converge":
                report.csv = _csv_text(rows)
        report.exit_code = EXIT_OK if ok else EXIT_FAIL
    except CLIError as exc:
        report.exit_code, report.error = exc.code, str(exc)
    except DomainError as exc:
        report.exit_code, report.error = EXIT_VALIDATION, f"{type(exc).__name__}: {exc}"
    if cfg.timing:
        report.wall_clock_s = time.perf_counter() - start
    return report


def _table(report: Report) -> str:
    lines = [f"symnorm {report.version}  {report.command}  exit {report.exit_code}"]
    if report.error:
        lines.append(f"error: {report.error}")
    if report.properties:
        width = max(len(p["name"]) for p in report.properties)
        for p in report.properties:
            flag = "PASS" if p["passed"] else "FAIL"
            lines.append(f"{flag}  {p['module']:<20} {p['name']:<{width}}  worst slack {p['worst_slack']:+.3e}"
                         + (f"  {p['error']}" if p["error"] else ""))
    for r in report.results:
        scalars = {}
        for k, v in r.items():
            # one level of nested records (factorization, decomposition) is flattened
            for kk, vv in (v.items() if isinstance(v, dict) else [(k, v)]):
                if isinstance(vv, (int, float, str, bool)):
                    scalars[kk] = vv
        lines.append("  ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                               for k, v in scalars.items()))
    return "\n".join(lines) + "\n"


def emit_report(report: Report, path: str | None, stdout=None) -> None:
    """Write the canonical JSON report to ``path`` (stdout when ``None``).

    With a path, stdout gets a human-readable summary instead (for
    ``converge``, the CSV curves unless they were written to ``--csv``).
    """
    stdout = stdout or sys.stdout
    text = canonical_dumps(report.to_dict()) + "\n"
    if path is None:
        stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from None
    stdout.write(report.csv if report.csv is not None else _table(report))


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except CLIError as exc:
        print(f"symnorm: {exc}", file=sys.stderr)
        return exc.code
    report = run(cfg)
    try:
        if report.csv is not None and cfg.csv_path:
            try:
                with open(cfg.csv_path, "w") as fh:
                    fh.write(report.csv)
            except OSError as exc:
                raise CLIError(EXIT_IO, f"cannot write {cfg.csv_path}: {exc.strerror or exc}") from None
            report.csv = None
        emit_report(report, cfg.output_path)
    except CLIError as exc:
        print(f"symnorm: {exc}", file=sys.stderr)
        return exc.code
    if report.error:
        print(f"symnorm: {report.error}", file=sys.stderr)
    return report.exit_code
