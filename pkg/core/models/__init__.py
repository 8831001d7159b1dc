from core.models.omega import LevelPoint, MaximumPoint, OmegaDomain
from core.models.report import CSV_COLUMNS, SLACK_TOLERANCE, CheckReport, make_report
from core.models.tightness import TightnessResult

__all__ = [
    "CSV_COLUMNS",
    "SLACK_TOLERANCE",
    "CheckReport",
    "make_report",
    "LevelPoint",
    "MaximumPoint",
    "OmegaDomain",
    "TightnessResult",
]
