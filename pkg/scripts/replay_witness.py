from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from util.witness_replay import REPLAY_TOL, replay_suite_report


def main() -> None:
    parser = argparse.ArgumentParser(description="Re-evaluate the witnesses stored in a suite report")
    parser.add_argument("report", help="Path to a suite report JSON file")
    parser.add_argument("--tol", type=float, default=REPLAY_TOL, help="Allowed slack deviation per witness")
    args = parser.parse_args()

    summary = replay_suite_report(args.report, tol=args.tol)

    print("Replay Summary")
    print(f"- total_witnesses: {summary.total_witnesses}")
    print(f"- replayed: {summary.replayed}")
    print(f"- mismatched: {summary.mismatched}")
    print(f"- max_deviation: {summary.max_deviation:.3e}")

    if summary.mismatched:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
