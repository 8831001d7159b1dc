from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from core.bounds import (
    check_bounded_support,
    check_hc_baseline,
    check_log_sobolev,
    check_mgl,
    check_mgl_linear,
    check_nhc,
    check_renyi2_mgl,
)
from core.cube import CubeFunction, dimension_cap
from core.enums import NONNEGATIVE_CHECKS, SUITE_CHECKS, CheckName, EventType, FunctionModel, TightnessKind
from core.errors import ParamOutOfRangeError
from core.events import Event, create_event
from core.extremal import tightness_trend
from core.models.report import CheckReport
from core.special import LN2, mgl_psi_boundary
from engine.sampling import random_function, resolve_model

DEFAULT_N_RANGE: Tuple[int, ...] = tuple(range(1, 9))
DEFAULT_EPS_GRID: Tuple[float, ...] = tuple(round(0.05 * i, 2) for i in range(11))
DEFAULT_Q_GRID: Tuple[float, ...] = (1.1, 1.5, 2.0, 3.0)
DOMINANCE_TOL = 1e-12
MGL_BOUNDARY_TOL = 1e-5
MAX_FAILURES_KEPT = 20


@dataclass(frozen=True)
class TrendConfig:
    q: float = 2.0
    eps: float = 0.1
    x: float = 0.5
    dimensions: Tuple[int, ...] = (50, 100, 200)

    def to_dict(self) -> Dict[str, Any]:
        return {"q": self.q, "eps": self.eps, "x": self.x, "dimensions": list(self.dimensions)}

    @classmethod
    def from_dict(cls, data: dict) -> "TrendConfig":
        base = cls()
        return cls(
            q=float(data.get("q", base.q)),
            eps=float(data.get("eps", base.eps)),
            x=float(data.get("x", base.x)),
            dimensions=tuple(int(n) for n in data.get("dimensions", base.dimensions)),
        )


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    n_range: Tuple[int, ...] = DEFAULT_N_RANGE
    eps_grid: Tuple[float, ...] = DEFAULT_EPS_GRID
    q_grid: Tuple[float, ...] = DEFAULT_Q_GRID
    samples_per_cell: int = 100
    function_models: Tuple[FunctionModel, ...] = tuple(FunctionModel)
    workers: int = 1
    trend: Optional[TrendConfig] = field(default_factory=TrendConfig)
    mgl_boundary: bool = True

    def __post_init__(self) -> None:
        cap = dimension_cap()
        if self.samples_per_cell < 1:
            raise ParamOutOfRangeError("samples_per_cell must be >= 1", {"samples_per_cell": self.samples_per_cell})
        if self.workers < 1:
            raise ParamOutOfRangeError("workers must be >= 1", {"workers": self.workers})
        for n in self.n_range:
            if not (1 <= n <= cap):
                raise ParamOutOfRangeError(f"dimension {n} outside [1, {cap}]", {"n": n})
        for eps in self.eps_grid:
            if not (0.0 <= eps <= 0.5):
                raise ParamOutOfRangeError(f"eps {eps} outside [0, 1/2]", {"eps": eps})
        for q in self.q_grid:
            if not q > 1.0:
                raise ParamOutOfRangeError(f"order {q} must exceed 1", {"q": q})

    def cells(self) -> List[Tuple[int, FunctionModel]]:
        return [(n, model) for n in self.n_range for model in self.function_models]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "n_range": list(self.n_range),
            "eps_grid": list(self.eps_grid),
            "q_grid": list(self.q_grid),
            "samples_per_cell": self.samples_per_cell,
            "function_models": [model.value for model in self.function_models],
            "workers": self.workers,
            "trend": self.trend.to_dict() if self.trend is not None else None,
            "mgl_boundary": self.mgl_boundary,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteConfig":
        base = cls()
        trend = data.get("trend", base.trend.to_dict() if base.trend else None)
        return cls(
            seed=int(data.get("seed", base.seed)),
            n_range=tuple(int(n) for n in data.get("n_range", base.n_range)),
            eps_grid=tuple(float(e) for e in data.get("eps_grid", base.eps_grid)),
            q_grid=tuple(float(q) for q in data.get("q_grid", base.q_grid)),
            samples_per_cell=int(data.get("samples_per_cell", base.samples_per_cell)),
            function_models=tuple(
                resolve_model(model) for model in data.get("function_models", [m.value for m in base.function_models])
            ),
            workers=int(data.get("workers", base.workers)),
            trend=TrendConfig.from_dict(trend) if isinstance(trend, dict) else None,
            mgl_boundary=bool(data.get("mgl_boundary", base.mgl_boundary)),
        )


@dataclass
class CheckStats:
    name: str
    total: int = 0
    passed: int = 0
    min_slack: Optional[float] = None
    witness: Optional[Dict[str, Any]] = None

    def record(self, report: CheckReport, witness: Dict[str, Any]) -> None:
        self.total += 1
        if report.passed:
            self.passed += 1
        slack = report.scaled_slack
        if self.min_slack is None or slack < self.min_slack:
            self.min_slack = slack
            self.witness = witness

    def merge(self, other: "CheckStats") -> None:
        self.total += other.total
        self.passed += other.passed
        if other.min_slack is not None and (self.min_slack is None or other.min_slack < self.min_slack):
            self.min_slack = other.min_slack
            self.witness = other.witness

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "total": self.total,
            "passed": self.passed,
            "failed": self.total - self.passed,
            "min_slack": self.min_slack,
            "witness": self.witness,
        }


@dataclass
class CellResult:
    n: int
    model: str
    stats: Dict[str, CheckStats]
    failures: List[Dict[str, Any]] = field(default_factory=list)
    max_dominance_log2: Optional[float] = None
    min_log_sobolev_constant: Optional[float] = None


@dataclass
class SuiteReport:
    config: Dict[str, Any]
    checks: Dict[str, CheckStats]
    failures: List[Dict[str, Any]]
    max_dominance_log2: Optional[float]
    min_log_sobolev_constant: Optional[float]
    trends: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    mgl_boundary: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def dominance_holds(self) -> bool:
        return self.max_dominance_log2 is None or self.max_dominance_log2 <= DOMINANCE_TOL

    @property
    def constant_holds(self) -> bool:
        return self.min_log_sobolev_constant is None or self.min_log_sobolev_constant >= 2.0 * LN2 - DOMINANCE_TOL

    @property
    def trends_decreasing(self) -> bool:
        return all(_strictly_decreasing([row["slack"] for row in rows]) for rows in self.trends.values())

    @property
    def mgl_boundary_holds(self) -> bool:
        return all(row["holds"] for row in self.mgl_boundary)

    @property
    def passed(self) -> bool:
        all_checks = all(stats.passed == stats.total for stats in self.checks.values())
        return (
            all_checks
            and self.dominance_holds
            and self.constant_holds
            and self.trends_decreasing
            and self.mgl_boundary_holds
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config,
            "passed": self.passed,
            "checks": {name: stats.to_dict() for name, stats in self.checks.items()},
            "failures": self.failures,
            "dominance": {
                "max_log2_gap": self.max_dominance_log2,
                "holds": self.dominance_holds,
                "min_log_sobolev_constant": self.min_log_sobolev_constant,
                "constant_holds": self.constant_holds,
            },
            "trends": self.trends,
            "trends_decreasing": self.trends_decreasing,
            "mgl_boundary": {"rows": self.mgl_boundary, "holds": self.mgl_boundary_holds},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def _strictly_decreasing(values: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def _witness(report: CheckReport, f: CubeFunction, model: str, seed: int, sample: int) -> Dict[str, Any]:
    return {
        "check": report.name,
        "model": model,
        "seed": seed,
        "sample": sample,
        "eps": report.params.get("eps"),
        "q": report.params.get("q"),
        "slack": report.scaled_slack,
        "report": report.to_dict(),
        "function": f.to_dict(),
    }


def _function_reports(f: CubeFunction, eps_grid: Iterable[float], q_grid: Iterable[float]) -> List[CheckReport]:
    def wanted(name: CheckName) -> bool:
        return f.nonnegative or name not in NONNEGATIVE_CHECKS

    reports = [check_log_sobolev(f)]
    for eps in eps_grid:
        if wanted(CheckName.MGL):
            reports.append(check_mgl(f, eps))
        if wanted(CheckName.MGL_LINEAR):
            reports.append(check_mgl_linear(f, eps))
        reports.append(check_bounded_support(f, eps))
        for q in q_grid:
            reports.append(check_hc_baseline(f, eps, q))
            if wanted(CheckName.RENYI2_MGL):
                reports.append(check_renyi2_mgl(f, eps, q))
            reports.append(check_nhc(f, eps, q))
    return reports


def run_cell(config: SuiteConfig, n: int, model: FunctionModel) -> CellResult:
    cell = CellResult(n=n, model=model.value, stats={check.value: CheckStats(check.value) for check in SUITE_CHECKS})
    for sample in range(config.samples_per_cell):
        f = random_function(n, model, config.seed, sample)
        for report in _function_reports(f, config.eps_grid, config.q_grid):
            witness = _witness(report, f, model.value, config.seed, sample)
            cell.stats[report.name].record(report, witness)
            if not report.passed and len(cell.failures) < MAX_FAILURES_KEPT:
                cell.failures.append(witness)
            if report.name == CheckName.NHC.value:
                gap = float(report.extras["dominance_log2"])
                if cell.max_dominance_log2 is None or gap > cell.max_dominance_log2:
                    cell.max_dominance_log2 = gap
            elif report.name == CheckName.LOG_SOBOLEV.value:
                constant = float(report.extras["constant"])
                if cell.min_log_sobolev_constant is None or constant < cell.min_log_sobolev_constant:
                    cell.min_log_sobolev_constant = constant
    return cell


def _run_cell_task(task: Tuple[Dict[str, Any], int, str]) -> CellResult:
    config_data, n, model = task
    return run_cell(SuiteConfig.from_dict(config_data), n, FunctionModel(model))


def trend_tables(trend: TrendConfig) -> Dict[str, List[Dict[str, Any]]]:
    tables: Dict[str, List[Dict[str, Any]]] = {}
    for kind in TightnessKind:
        rows = tightness_trend(kind, trend.q, trend.eps, trend.x, trend.dimensions)
        tables[kind.value] = [
            {
                "n": result.n,
                "slack": result.slack,
                "achieved": result.achieved,
                "target": result.target,
                "entropy_rate": result.entropy_rate,
            }
            for result in rows
        ]
    return tables


def mgl_boundary_rows(eps_grid: Iterable[float]) -> List[Dict[str, Any]]:
    """psi(0, eps) = 0 and psi'(0, eps) = (1 - 2 eps)^2 for the Gerber bound, one row per noise rate."""
    rows: List[Dict[str, Any]] = []
    for eps in sorted(set(eps_grid)):
        value, slope = mgl_psi_boundary(eps)
        expected = (1.0 - 2.0 * eps) ** 2
        rows.append(
            {
                "eps": eps,
                "value_at_zero": value,
                "slope_at_zero": slope,
                "expected_slope": expected,
                "holds": abs(value) <= DOMINANCE_TOL and abs(slope - expected) <= MGL_BOUNDARY_TOL,
            }
        )
    return rows


def _merge_optional(current: Optional[float], value: Optional[float], pick) -> Optional[float]:
    if value is None:
        return current
    if current is None:
        return value
    return pick(current, value)


def run_suite(config: SuiteConfig, event_logger: Any = None) -> SuiteReport:
    if event_logger is not None:
        event_logger.log(create_event(EventType.SUITE_STARTED, "suite_started", config.to_dict(), source="suite"))

    cells = config.cells()
    if config.workers > 1 and len(cells) > 1:
        tasks = [(config.to_dict(), n, model.value) for n, model in cells]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_cell_task, tasks))
    else:
        results = [run_cell(config, n, model) for n, model in cells]

    checks = {check.value: CheckStats(check.value) for check in SUITE_CHECKS}
    failures: List[Dict[str, Any]] = []
    max_gap: Optional[float] = None
    min_constant: Optional[float] = None
    # reduce in cell order so the report does not depend on worker scheduling
    for cell in results:
        for name, stats in cell.stats.items():
            checks[name].merge(stats)
        failures.extend(cell.failures[: max(MAX_FAILURES_KEPT - len(failures), 0)])
        max_gap = _merge_optional(max_gap, cell.max_dominance_log2, max)
        min_constant = _merge_optional(min_constant, cell.min_log_sobolev_constant, min)
        if event_logger is not None:
            failed = sum(s.total - s.passed for s in cell.stats.values())
            event_logger.log(Event.cell(cell.n, cell.model, failed))

    trends = trend_tables(config.trend) if config.trend is not None else {}
    boundary = mgl_boundary_rows(config.eps_grid) if config.mgl_boundary else []
    if event_logger is not None and trends:
        event_logger.log(Event.trend({kind: [row["slack"] for row in rows] for kind, rows in trends.items()}))

    report = SuiteReport(
        config=config.to_dict(),
        checks=checks,
        failures=failures,
        max_dominance_log2=max_gap,
        min_log_sobolev_constant=min_constant,
        trends=trends,
        mgl_boundary=boundary,
    )
    if event_logger is not None:
        event_logger.log(
            create_event(
                EventType.SUITE_FINISHED,
                "suite_finished",
                {"passed": report.passed, "failures": len(failures)},
                source="suite",
            )
        )
    return report
