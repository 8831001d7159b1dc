from __future__ import annotations

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

SUITE_ARGS = ["suite", "--seed", "42", "--n", "1", "2", "3", "--samples", "2"]


def _run(args: list[str]) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "main.py", *args],
        text=True,
        capture_output=True,
        cwd=ROOT,
    )


def main() -> None:
    golden = [
        (["eval", "kappa2q", "--x", "0", "--eps", "0.1", "--q", "2"], 0, "1.64"),
        (["eval", "C", "--x", "1"], 0, "2"),
        (["eval", "phi", "--x", "0.5", "--eps", "0.7"], 2, None),
        (["check", '{"kind": "mixture", "n": 6, "r": 2, "v": 3.0}', "--which", "nhc"], 0, None),
        (["check", '{"n": 2, "values": [1, 2'], 2, None),
    ]

    print("Deterministic CLI Test")
    failed = False
    for args, expected_code, expected_stdout in golden:
        process = _run(args)
        ok = process.returncode == expected_code
        if expected_stdout is not None:
            ok = ok and process.stdout.strip() == expected_stdout
        print(f"- {' '.join(args[:2])}: return_code={process.returncode} {'PASS' if ok else 'FAIL'}")
        if not ok:
            print(process.stdout)
            print(process.stderr)
            failed = True

    first = _run(SUITE_ARGS)
    second = _run(SUITE_ARGS)
    identical = first.returncode == second.returncode and first.stdout == second.stdout
    print(f"- suite byte-identical: {identical}")
    if not identical:
        failed = True

    if failed:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
