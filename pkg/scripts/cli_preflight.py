from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.cube import dimension_cap, make_function, noise_apply
from core.special import kappa_2q, phi_eps
from engine.config import load_cube_settings
from util.json_schema_validator import INPUT_SCHEMA_MAP, SCHEMA_DIR, _validator
from util.logger import current_layout


def _check_schemata() -> tuple[bool, str]:
    try:
        for name in INPUT_SCHEMA_MAP:
            _validator(name)
        return True, f"{len(INPUT_SCHEMA_MAP)} schemata loaded from {SCHEMA_DIR}"
    except Exception as exc:
        return False, f"schema load failed: {exc}"


def _check_numeric_stack() -> tuple[bool, str]:
    try:
        f = make_function(2, [4.0, 0.0, 0.0, 0.0])
        smoothed = noise_apply(f, 0.5)
        if abs(float(smoothed.values.sum()) - 4.0) > 1e-12:
            return False, "noise operator does not preserve the mean"
        return True, "numpy/scipy stack responds"
    except Exception as exc:
        return False, f"numeric stack failed: {exc}"


def _check_identities() -> tuple[bool, str]:
    try:
        q0 = kappa_2q(0.0, 0.1, 2.0)
        endpoint = phi_eps(0.3, 0.5)
    except Exception as exc:
        return False, f"special functions failed: {exc}"
    if abs(q0 - 1.64) > 1e-9 or abs(endpoint + 0.7) > 1e-10:
        return False, f"endpoint identities drifted: kappa={q0!r} phi={endpoint!r}"
    return True, "kappa(0) = q0 and phi at eps 1/2 hold"


def _check_logs_writable() -> tuple[bool, str]:
    try:
        load_cube_settings()
        path = current_layout().runs
        path.mkdir(parents=True, exist_ok=True)
        marker = path / ".preflight_write_check"
        marker.write_text("ok", encoding="utf-8")
        marker.unlink(missing_ok=True)
        return True, f"{path} writable"
    except Exception as exc:
        return False, f"log path not writable: {exc}"


def _check_env() -> tuple[bool, str]:
    settings = load_cube_settings()
    return True, f"max_n={dimension_cap()} workers={settings.workers} seed={settings.default_seed}"


def main() -> None:
    checks = {
        "env": _check_env(),
        "schemata": _check_schemata(),
        "numeric": _check_numeric_stack(),
        "identities": _check_identities(),
        "logs": _check_logs_writable(),
    }

    print("CLI Preflight")
    overall = True
    for name, (ok, message) in checks.items():
        status = "PASS" if ok else "FAIL"
        print(f"- {name}: {status} - {message}")
        if not ok:
            overall = False

    if overall:
        print("Preflight result: PASS")
    else:
        print("Preflight result: FAIL")
        raise SystemExit(1)


if __name__ == "__main__":
    main()
