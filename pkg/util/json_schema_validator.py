import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

from jsonschema import Draft202012Validator
from jsonschema.exceptions import ValidationError

from core.errors import InputFormatError

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "data" / "schemata"

INPUT_SCHEMA_MAP: Dict[str, str] = {
	"cube_function": "cube_function.schema.json",
	"generator": "generator.schema.json",
	"analytic_profile": "analytic_profile.schema.json",
	"suite_config": "suite_config.schema.json",
}


def _load_json(path: Path):
	with path.open("r", encoding="utf-8") as file:
		return json.load(file)


def _format_validation_error(error: ValidationError) -> str:
	if not error.path:
		return "$"
	segments = [str(part) for part in error.path]
	return "$." + ".".join(segments)


@lru_cache(maxsize=None)
def _validator(schema_name: str) -> Draft202012Validator:
	file_name = INPUT_SCHEMA_MAP.get(schema_name)
	if file_name is None:
		raise KeyError(f"No schema mapping configured for '{schema_name}'")
	return Draft202012Validator(_load_json(SCHEMA_DIR / file_name))


def validate_payload(payload: Any, schema_name: str, source: str = "input") -> None:
	errors = list(_validator(schema_name).iter_errors(payload))
	if not errors:
		return

	first_error = sorted(errors, key=lambda err: [str(part) for part in err.path])[0]
	error_path = _format_validation_error(first_error)
	raise InputFormatError(
		f"Schema validation failed for '{source}' at {error_path}: {first_error.message}",
		{"schema": schema_name, "path": error_path},
	)


def parse_json_text(text: str, source: str = "input") -> Any:
	try:
		return json.loads(text)
	except json.JSONDecodeError as exc:
		raise InputFormatError(
			f"Malformed JSON in '{source}': {exc.msg} (line {exc.lineno}, column {exc.colno})",
			{"line": exc.lineno, "column": exc.colno},
		) from exc


def load_validated_json(path: Path, schema_name: str) -> Any:
	path = Path(path)
	try:
		text = path.read_text(encoding="utf-8")
	except OSError as exc:
		raise InputFormatError(f"Cannot read '{path}': {exc}", {"path": str(path)}) from exc
	payload = parse_json_text(text, source=path.name)
	validate_payload(payload, schema_name, source=path.name)
	return payload


def validate_function_input(payload: Any, source: str = "input") -> None:
	"""Cube functions carry 'values'; everything else must be a generator spec."""
	if isinstance(payload, dict) and "kind" not in payload:
		validate_payload(payload, "cube_function", source)
	else:
		validate_payload(payload, "generator", source)
