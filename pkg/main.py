from __future__ import annotations

import argparse
import sys
from typing import List, Optional
from uuid import uuid4

from core.enums import EvaluationMode, EventType, TightnessKind
from core.errors import CubeError
from core.events import Event, create_event
from engine.cli.commands import (
	CHECK_CHOICES,
	EVAL_FUNCTIONS,
	EXIT_INPUT,
	CommandContext,
	cmd_check,
	cmd_eigen,
	cmd_eval,
	cmd_suite,
	cmd_sweep,
	cmd_tightness,
	grid,
	load_suite_config,
)
from engine.cli.renderer import render_error
from engine.config import CubeSettings, load_cube_settings
from engine.runtime_logger import RuntimeCheckLogger
from util.logger import ErrorLogger, EventLogger, RunLogger


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str = "json") -> None:
	parser.add_argument("--format", choices=["json", "csv"], default=default_format, help="Machine output format")


def build_parser(settings: CubeSettings) -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(description="Noise and entropy bounds on the boolean cube")
	parser.add_argument("--log", action="store_true", help="Write run, event and check logs under the log directory")
	sub = parser.add_subparsers(dest="command", required=True)

	evaluate = sub.add_parser("eval", help="Evaluate one bound function")
	evaluate.add_argument("fn", choices=sorted(EVAL_FUNCTIONS))
	evaluate.add_argument("--x", type=float)
	evaluate.add_argument("--eps", type=float)
	evaluate.add_argument("--q", type=float)

	check = sub.add_parser("check", help="Check inequalities on a cube function or generator spec")
	check.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
	check.add_argument("--eps", type=float, default=0.1)
	check.add_argument("--eps2", type=float, help="Second noise rate for the semigroup check")
	check.add_argument("--q", type=float, default=2.0)
	check.add_argument("--which", default="all", help=f"'all' or a comma list of: {', '.join(CHECK_CHOICES)}")
	_add_output_flags(check)

	sweep = sub.add_parser("sweep", help="Tabulate a bound function over a grid")
	sweep.add_argument("fn", choices=sorted(EVAL_FUNCTIONS))
	sweep.add_argument("--x", type=float, nargs="+", default=None, help="Explicit x values")
	sweep.add_argument("--x-range", type=float, nargs=3, metavar=("START", "STOP", "COUNT"))
	sweep.add_argument("--eps", type=float, nargs="+", default=[])
	sweep.add_argument("--q", type=float, nargs="+", default=[])
	sweep.add_argument("--out", help="Output path; standard output when omitted")
	_add_output_flags(sweep, default_format="csv")

	tightness = sub.add_parser("tightness", help="Sphere-mixture slack trend over dimensions")
	tightness.add_argument("--kind", nargs="+", choices=[kind.value for kind in TightnessKind], default=[kind.value for kind in TightnessKind])
	tightness.add_argument("--q", type=float, default=2.0)
	tightness.add_argument("--eps", type=float, default=0.1)
	tightness.add_argument("--x", type=float, default=0.5)
	tightness.add_argument("--n", type=int, nargs="+", default=[50, 100, 200])
	tightness.add_argument("--mode", choices=[mode.value for mode in EvaluationMode], default=EvaluationMode.ANALYTIC.value)
	tightness.add_argument("--out", help="Write the trend table as CSV")
	_add_output_flags(tightness)

	eigen = sub.add_parser("eigen", help="Eigenvalue bound on Hamming balls")
	eigen.add_argument("--n", type=int, required=True)
	eigen.add_argument("--r", type=int, nargs="+", help="Ball radii; all radii below n when omitted")
	_add_output_flags(eigen)

	suite = sub.add_parser("suite", help="Seeded randomized inequality suite")
	suite.add_argument("--config", help="SuiteConfig JSON file")
	suite.add_argument("--seed", type=int, default=None)
	suite.add_argument("--n", type=int, nargs="+", default=None, help="Dimensions to sample")
	suite.add_argument("--samples", type=int, default=None, help="Functions per cell and model")
	suite.add_argument("--workers", type=int, default=None)
	suite.add_argument("--out", help="Suite report path; standard output when omitted")
	suite.add_argument("--trend-out", help="Write the trend table as CSV")
	suite.add_argument("--witness-out", help="Write each check's minimum-slack witness report as CSV")
	suite.set_defaults(default_seed=settings.default_seed, default_workers=settings.workers)

	return parser


def _x_values(args: argparse.Namespace) -> List[float]:
	values: List[float] = list(args.x or [])
	if args.x_range is not None:
		start, stop, count = args.x_range
		values.extend(grid(start, stop, int(count)))
	return values


def dispatch(args: argparse.Namespace, ctx: CommandContext) -> int:
	if args.command == "eval":
		return cmd_eval(args.fn, x=args.x, eps=args.eps, q=args.q, ctx=ctx)
	if args.command == "check":
		return cmd_check(args.input, eps=args.eps, q=args.q, which=args.which, eps2=args.eps2, fmt=args.format, ctx=ctx)
	if args.command == "sweep":
		return cmd_sweep(args.fn, _x_values(args), args.eps, args.q, out=args.out, fmt=args.format, ctx=ctx)
	if args.command == "tightness":
		return cmd_tightness(args.kind, args.q, args.eps, args.x, args.n, mode=args.mode, out=args.out, fmt=args.format, ctx=ctx)
	if args.command == "eigen":
		return cmd_eigen(args.n, radii=args.r, fmt=args.format, ctx=ctx)
	config = load_suite_config(
		args.config,
		{
			"seed": args.seed if args.seed is not None else (None if args.config else args.default_seed),
			"n_range": args.n,
			"samples_per_cell": args.samples,
			"workers": args.workers if args.workers is not None else (None if args.config else args.default_workers),
		},
	)
	return cmd_suite(config, out=args.out, trend_out=args.trend_out, witness_out=args.witness_out, ctx=ctx)


def main(argv: Optional[List[str]] = None) -> int:
	settings = load_cube_settings()
	args = build_parser(settings).parse_args(argv)

	ctx = CommandContext()
	run_logger: Optional[RunLogger] = None
	error_logger: Optional[ErrorLogger] = None
	if args.log:
		run_id = f"run_{uuid4().hex[:8]}"
		run_logger = RunLogger(run_id, command=args.command)
		args_used = {key: value for key, value in vars(args).items() if not key.startswith("default_")}
		run_logger.set_config({"args": args_used, "settings": settings.to_dict()})
		error_logger = ErrorLogger(run_id)
		ctx.event_logger = EventLogger(run_id)
		ctx.check_logger = RuntimeCheckLogger(run_id)
		ctx.event_logger.log(create_event(EventType.RUN_STARTED, args.command, source="cli"))

	try:
		code = dispatch(args, ctx)
	except CubeError as exc:
		render_error(str(exc))
		if ctx.event_logger is not None:
			ctx.event_logger.log(Event.failure(exc))
		if error_logger is not None:
			error_logger.log_exc(exc, context={"command": args.command})
		if run_logger is not None:
			run_logger.end_run("error", metadata={"error": exc.to_dict()})
		return EXIT_INPUT

	if run_logger is not None and ctx.event_logger is not None:
		ctx.event_logger.log(create_event(EventType.RUN_FINISHED, args.command, {"exit_code": code}, source="cli"))
		stats = {"exit_code": code}
		if ctx.check_logger is not None:
			stats.update(ctx.check_logger.summary())
		run_logger.end_run("passed" if code == 0 else "failed", summary_stats=stats)
	return code


if __name__ == "__main__":
	sys.exit(main())
