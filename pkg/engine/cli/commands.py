from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from core.bounds import check_eigen_gross, check_semigroup, eigen_bound_check, evaluate_check
from core.cube import CubeFunction, weights
from core.enums import NONNEGATIVE_CHECKS, SUITE_CHECKS, CheckName, EvaluationMode, TightnessKind
from core.errors import DomainError, InputFormatError, ParamOutOfRangeError
from core.events import Event
from core.extremal import tightness_trend
from core.generators import function_from_payload
from core.models.report import CheckReport
from core.special import (
    big_phi,
    binary_entropy,
    eps_threshold,
    inv_binary_entropy,
    kappa_2q,
    log_sobolev_C,
    mgl_psi,
    phi_eps,
    phi_prime,
    psi_2q,
    x_threshold,
    y_coupling,
)
from engine.cli.renderer import (
    emit_json_line,
    fmt_human,
    render_check_summary,
    render_note,
    render_suite_summary,
)
from engine.runtime_logger import RuntimeCheckLogger
from engine.suite import SuiteConfig, run_suite
from util.json_schema_validator import load_validated_json, parse_json_text, validate_function_input
from util.report_io import (
    TREND_COLUMNS,
    export_reports_csv,
    export_rows_csv,
    export_trend_csv,
    write_reports_csv,
    write_rows_csv,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

SWEEP_COLUMNS = ["fn", "x", "eps", "q", "value"]


@dataclass(frozen=True)
class EvalFunction:
    name: str
    needs: Tuple[str, ...]
    compute: Callable[[Optional[float], Optional[float], Optional[float]], float]


EVAL_FUNCTIONS: Dict[str, EvalFunction] = {
    item.name: item
    for item in (
        EvalFunction("H", ("x",), lambda x, eps, q: binary_entropy(x)),
        EvalFunction("Hinv", ("x",), lambda x, eps, q: inv_binary_entropy(x)),
        EvalFunction("y", ("x", "eps"), lambda x, eps, q: y_coupling(x, eps)),
        # Phi takes the smoothing parameter itself through --eps
        EvalFunction("Phi", ("x", "eps"), lambda x, eps, q: big_phi(x, eps)),
        EvalFunction("phi", ("x", "eps"), lambda x, eps, q: phi_eps(x, eps)),
        EvalFunction("phi_prime", ("x", "eps"), lambda x, eps, q: phi_prime(x, eps)),
        EvalFunction("psi2q", ("x", "eps", "q"), lambda x, eps, q: psi_2q(x, eps, q)),
        EvalFunction("kappa2q", ("x", "eps", "q"), lambda x, eps, q: kappa_2q(x, eps, q)),
        EvalFunction("C", ("x",), lambda x, eps, q: log_sobolev_C(x)),
        EvalFunction("mgl_psi", ("x", "eps"), lambda x, eps, q: mgl_psi(x, eps)),
        EvalFunction("x_threshold", ("eps", "q"), lambda x, eps, q: x_threshold(q, eps)),
        EvalFunction("eps_threshold", ("q",), lambda x, eps, q: eps_threshold(q)),
    )
}

CHECK_CHOICES = [check.value for check in SUITE_CHECKS] + [CheckName.SEMIGROUP.value]


@dataclass
class CommandContext:
    stdout: Optional[TextIO] = None
    stderr: Optional[TextIO] = None
    check_logger: Optional[RuntimeCheckLogger] = None
    event_logger: Any = None

    @property
    def out(self) -> TextIO:
        return self.stdout or sys.stdout

    @property
    def err(self) -> TextIO:
        return self.stderr or sys.stderr

    def record(self, report: CheckReport, command: str) -> None:
        if self.check_logger is not None:
            self.check_logger.log_check(report, command=command)
        if self.event_logger is not None:
            self.event_logger.log(Event.check(report, source=command))


def _resolve_eval_function(fn_name: str) -> EvalFunction:
    item = EVAL_FUNCTIONS.get(fn_name)
    if item is None:
        known = ", ".join(EVAL_FUNCTIONS)
        raise ParamOutOfRangeError(f"unknown function '{fn_name}' (known: {known})", {"fn": fn_name})
    return item


def _evaluate(item: EvalFunction, x: Optional[float], eps: Optional[float], q: Optional[float]) -> float:
    given = {"x": x, "eps": eps, "q": q}
    missing = [name for name in item.needs if given[name] is None]
    if missing:
        flags = ", ".join(f"--{name}" for name in missing)
        raise ParamOutOfRangeError(f"'{item.name}' requires {flags}", {"fn": item.name, "missing": missing})
    return float(item.compute(x, eps, q))


def cmd_eval(
    fn_name: str,
    x: Optional[float] = None,
    eps: Optional[float] = None,
    q: Optional[float] = None,
    ctx: Optional[CommandContext] = None,
) -> int:
    ctx = ctx or CommandContext()
    value = _evaluate(_resolve_eval_function(fn_name), x, eps, q)
    print(fmt_human(value), file=ctx.out)
    return EXIT_OK


def load_function_input(source: str) -> CubeFunction:
    """A file path, '-' for standard input, or inline JSON text."""
    if source == "-":
        payload = parse_json_text(sys.stdin.read(), source="stdin")
        label = "stdin"
    elif source.lstrip().startswith("{"):
        payload = parse_json_text(source, source="argument")
        label = "argument"
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputFormatError(f"Cannot read '{path}': {exc}", {"path": str(path)}) from exc
        payload = parse_json_text(text, source=path.name)
        label = path.name
    validate_function_input(payload, source=label)
    return function_from_payload(payload)


def _selected_checks(which: str, f: CubeFunction) -> List[CheckName]:
    if which == "all":
        return [check for check in SUITE_CHECKS if f.nonnegative or check not in NONNEGATIVE_CHECKS]
    selected: List[CheckName] = []
    for raw in which.split(","):
        name = raw.strip()
        if name not in CHECK_CHOICES:
            raise ParamOutOfRangeError(
                f"unknown check '{name}' (known: all, {', '.join(CHECK_CHOICES)})",
                {"check": name},
            )
        selected.append(CheckName(name))
    return selected


def cmd_check(
    source: str,
    eps: float = 0.1,
    q: float = 2.0,
    which: str = "all",
    eps2: Optional[float] = None,
    fmt: str = "json",
    ctx: Optional[CommandContext] = None,
) -> int:
    ctx = ctx or CommandContext()
    f = load_function_input(source)
    reports: List[CheckReport] = []
    for check in _selected_checks(which, f):
        if check == CheckName.SEMIGROUP:
            if eps2 is None:
                raise ParamOutOfRangeError("check 'semigroup' requires --eps2")
            report = check_semigroup(f, eps, eps2)
        else:
            report = evaluate_check(check, f, eps=eps, q=q)
        ctx.record(report, "check")
        reports.append(report)

    _write_reports(reports, fmt, ctx)
    render_check_summary(reports, ctx.err)
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def _write_reports(reports: Sequence[CheckReport], fmt: str, ctx: CommandContext) -> None:
    if fmt == "csv":
        write_reports_csv(reports, ctx.out)
        return
    for report in reports:
        emit_json_line(report.to_dict(), ctx.out)


def grid(start: float, stop: float, count: int) -> List[float]:
    if count < 0:
        raise ParamOutOfRangeError(f"grid size must be >= 0, got {count}", {"count": count})
    if count == 1:
        return [float(start)]
    return [float(v) for v in np.linspace(start, stop, count)]


def sweep_rows(
    fn_name: str,
    xs: Sequence[float],
    eps_values: Sequence[float],
    q_values: Sequence[float],
) -> List[Dict[str, Any]]:
    item = _resolve_eval_function(fn_name)
    # unused axes collapse to a single blank column so row-major order stays (x, eps, q)
    x_axis: Sequence[Optional[float]] = xs if "x" in item.needs else [None]
    eps_axis: Sequence[Optional[float]] = eps_values if "eps" in item.needs else [None]
    q_axis: Sequence[Optional[float]] = q_values if "q" in item.needs else [None]
    rows: List[Dict[str, Any]] = []
    for x in x_axis:
        for eps in eps_axis:
            for q in q_axis:
                rows.append({"fn": fn_name, "x": x, "eps": eps, "q": q, "value": _evaluate(item, x, eps, q)})
    return rows


def cmd_sweep(
    fn_name: str,
    xs: Sequence[float],
    eps_values: Sequence[float] = (),
    q_values: Sequence[float] = (),
    out: Optional[str] = None,
    fmt: str = "csv",
    ctx: Optional[CommandContext] = None,
) -> int:
    ctx = ctx or CommandContext()
    rows = sweep_rows(fn_name, xs, eps_values, q_values)
    if fmt == "json":
        if out:
            _write_json_lines(rows, out)
        else:
            for row in rows:
                emit_json_line(row, ctx.out)
    elif out:
        export_rows_csv(SWEEP_COLUMNS, rows, out)
    else:
        write_rows_csv(SWEEP_COLUMNS, rows, ctx.out)
    render_note("sweep", f"{fn_name}: {len(rows)} rows" + (f" -> {out}" if out else ""), ctx.err)
    return EXIT_OK


def _write_json_lines(rows: Iterable[Dict[str, Any]], path: str | Path) -> None:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8") as handle:
            for row in rows:
                emit_json_line(row, handle)
    except OSError as exc:
        raise InputFormatError(f"Cannot write '{target}': {exc}", {"path": str(target)}) from exc


def ball_points(n: int, r: int) -> np.ndarray:
    return np.flatnonzero(weights(n) <= r)


def cmd_eigen(
    n: int,
    radii: Optional[Sequence[int]] = None,
    fmt: str = "json",
    ctx: Optional[CommandContext] = None,
) -> int:
    ctx = ctx or CommandContext()
    n = int(n)
    if n < 1:
        raise DomainError(f"the eigenvalue bound needs n >= 1, got {n}", {"n": n})
    radii = list(range(n)) if radii is None else [int(r) for r in radii]
    reports: List[CheckReport] = []
    for r in radii:
        if not (0 <= r < n):
            raise ParamOutOfRangeError(f"ball radius {r} must lie in [0, {n - 1}]", {"r": r, "n": n})
        points = ball_points(n, r)
        for report in (eigen_bound_check(points, n), check_eigen_gross(points, n)):
            ctx.record(report, "eigen")
            reports.append(report)

    _write_reports(reports, fmt, ctx)
    render_check_summary(reports, ctx.err)
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def cmd_tightness(
    kinds: Sequence[str],
    q: float,
    eps: float,
    x: float,
    dimensions: Sequence[int],
    mode: str = EvaluationMode.ANALYTIC.value,
    out: Optional[str] = None,
    fmt: str = "json",
    ctx: Optional[CommandContext] = None,
) -> int:
    ctx = ctx or CommandContext()
    trends: Dict[str, List[Dict[str, Any]]] = {}
    for kind in kinds:
        results = tightness_trend(TightnessKind(kind), q, eps, x, dimensions, mode)
        trends[kind] = [{key: result.to_dict()[key] for key in TREND_COLUMNS[1:]} for result in results]
        if fmt == "json" and not out:
            for result in results:
                emit_json_line(result.to_dict(), ctx.out)

    if out:
        export_trend_csv(trends, out)
    elif fmt == "csv":
        write_rows_csv(TREND_COLUMNS, [{"kind": k, **row} for k in sorted(trends) for row in trends[k]], ctx.out)

    for kind, rows in trends.items():
        slacks = [row["slack"] for row in rows]
        decreasing = all(b < a for a, b in zip(slacks, slacks[1:]))
        rendered = ", ".join(f"n={row['n']}:{fmt_human(row['slack'])}" for row in rows)
        render_note("tightness", f"{kind} slack {rendered} (decreasing={decreasing})", ctx.err)
    return EXIT_OK


def load_suite_config(path: Optional[str], overrides: Dict[str, Any]) -> SuiteConfig:
    data: Dict[str, Any] = {}
    if path:
        data = dict(load_validated_json(Path(path), "suite_config"))
    data.update({key: value for key, value in overrides.items() if value is not None})
    return SuiteConfig.from_dict(data)


def cmd_suite(
    config: SuiteConfig,
    out: Optional[str] = None,
    trend_out: Optional[str] = None,
    witness_out: Optional[str] = None,
    ctx: Optional[CommandContext] = None,
) -> int:
    ctx = ctx or CommandContext()
    report = run_suite(config, event_logger=ctx.event_logger)
    text = report.to_json()
    if out:
        target = Path(out)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            raise InputFormatError(f"Cannot write '{target}': {exc}", {"path": str(target)}) from exc
    else:
        ctx.out.write(text + "\n")
    if trend_out and report.trends:
        export_trend_csv(report.trends, trend_out)
    if witness_out:
        witnesses = [stats.witness for _, stats in sorted(report.checks.items()) if stats.witness is not None]
        export_reports_csv([CheckReport.from_dict(witness["report"]) for witness in witnesses], witness_out)

    render_suite_summary(report.to_dict(), ctx.err)
    return EXIT_OK if report.passed else EXIT_FAILED

