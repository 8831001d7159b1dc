from __future__ import annotations

import argparse
import json
import subprocess
import sys
import tempfile
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import List

ROOT = Path(__file__).resolve().parents[1]


@dataclass
class StepResult:
    name: str
    passed: bool
    seconds: float
    output: str


def _run(name: str, argv: List[str]) -> StepResult:
    started = time.perf_counter()
    process = subprocess.run([sys.executable, *argv], text=True, capture_output=True, cwd=ROOT)
    output = ((process.stdout or "") + (process.stderr or "")).strip()
    return StepResult(name, process.returncode == 0, round(time.perf_counter() - started, 3), output)


def _steps(workdir: Path) -> List[tuple[str, List[str]]]:
    report = workdir / "suite.json"
    return [
        ("preflight", ["scripts/cli_preflight.py"]),
        ("deterministic", ["scripts/cli_test_deterministic.py"]),
        ("eigen", ["main.py", "eigen", "--n", "8"]),
        ("tightness", ["main.py", "tightness", "--n", "50", "100", "200", "--out", str(workdir / "trend.csv")]),
        ("suite", ["main.py", "suite", "--seed", "43", "--n", "1", "2", "3", "4", "--samples", "3", "--out", str(report)]),
        ("replay", ["scripts/replay_witness.py", str(report)]),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description="Run the CLI smoke suite")
    parser.add_argument("--json-out", default="", help="Optional path to write machine-readable JSON results")
    args = parser.parse_args()

    print("CLI Test Suite")
    results: List[StepResult] = []
    with tempfile.TemporaryDirectory(prefix="cube-bounds-") as tmp:
        # replay reads the report the suite step wrote, so steps run in order
        for name, argv in _steps(Path(tmp)):
            result = _run(name, argv)
            results.append(result)
            print(f"\n[{'PASS' if result.passed else 'FAIL'}] {name} ({result.seconds}s)")
            if result.output:
                print(result.output)

    failed = [result.name for result in results if not result.passed]
    print("\nSummary")
    print(f"- total: {len(results)}")
    print(f"- passed: {len(results) - len(failed)}")
    print(f"- failed: {len(failed)}")

    if args.json_out:
        out_path = Path(args.json_out)
        if not out_path.is_absolute():
            out_path = ROOT / out_path
        out_path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "failed_steps": failed,
            "results": [asdict(result) for result in results],
        }
        out_path.write_text(json.dumps(payload, ensure_ascii=False, indent=2), encoding="utf-8")
        print(f"- json_report: {out_path}")

    if failed:
        print(f"- failed_steps: {', '.join(failed)}")
        raise SystemExit(1)


if __name__ == "__main__":
    main()
