from engine.config import CubeSettings, load_cube_settings, load_dotenv
from engine.runtime_logger import RuntimeCheckLogger
from engine.sampling import model_generator, random_function, resolve_model
from engine.suite import CheckStats, SuiteConfig, SuiteReport, TrendConfig, run_cell, run_suite, trend_tables

__all__ = [
    "CubeSettings",
    "load_cube_settings",
    "load_dotenv",
    "RuntimeCheckLogger",
    "model_generator",
    "random_function",
    "resolve_model",
    "CheckStats",
    "SuiteConfig",
    "SuiteReport",
    "TrendConfig",
    "run_cell",
    "run_suite",
    "trend_tables",
]
