from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict

from core.cube import DEFAULT_MAX_N

DEFAULT_LOG_DIR = "logs"
DEFAULT_SEED = 42


@dataclass(frozen=True)
class CubeSettings:
    max_n: int
    log_dir: str
    workers: int
    default_seed: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _parse_dotenv_line(raw_line: str) -> tuple[str, str] | None:
    line = raw_line.strip()
    if not line or line.startswith("#") or "=" not in line:
        return None
    if line.startswith("export "):
        line = line[len("export "):].lstrip()

    key, value = line.split("=", 1)
    value = value.strip()
    if value[:1] in {'"', "'"}:
        value = value.strip(value[0])
    elif " #" in value:
        value = value.split(" #", 1)[0].rstrip()
    return key.strip(), value


def load_dotenv(dotenv_path: str | Path = ".env") -> Dict[str, str]:
    """Copy KEY=VALUE pairs into os.environ without overriding what is already set."""
    path = Path(dotenv_path)
    loaded: Dict[str, str] = {}
    if not path.exists():
        return loaded

    for raw_line in path.read_text(encoding="utf-8").splitlines():
        parsed = _parse_dotenv_line(raw_line)
        if parsed is None:
            continue
        key, value = parsed
        if key and key not in os.environ:
            os.environ[key] = value
            loaded[key] = value

    return loaded


def _int_env(name: str, fallback: int, minimum: int = 1) -> int:
    try:
        parsed = int(os.getenv(name, str(fallback)))
        return parsed if parsed >= minimum else fallback
    except ValueError:
        return fallback


def _workers_env() -> int:
    # "auto" sizes the suite pool to the machine
    if os.getenv("CUBE_WORKERS", "").strip().lower() == "auto":
        return os.cpu_count() or 1
    return _int_env("CUBE_WORKERS", 1)


def load_cube_settings(dotenv_path: str | Path = ".env") -> CubeSettings:
    load_dotenv(dotenv_path)

    return CubeSettings(
        max_n=_int_env("CUBE_MAX_N", DEFAULT_MAX_N),
        log_dir=os.getenv("CUBE_LOG_DIR", DEFAULT_LOG_DIR).strip() or DEFAULT_LOG_DIR,
        workers=_workers_env(),
        default_seed=_int_env("CUBE_SEED", DEFAULT_SEED, minimum=0),
    )
