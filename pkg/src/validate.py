# src/validate.py
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from pydantic import ValidationError as PydanticValidationError

from params import Config


class ValidationError(Exception):
    """Raised when a configuration document is invalid."""


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.field}: {self.message}"


@dataclass
class ValidationResult:
    ok: bool
    errors: List[ValidationIssue]
    config: Optional[Config] = None


SECTIONS = ("system", "medium", "quadrature", "pulse")

# (section, field prefix) -> issue code; first match wins
FIELD_CODES: List[Tuple[str, str, str]] = [
    ("system", "gamma_", "NonPositiveDecay"),
    ("system", "alpha_", "BadPropagationSign"),
    ("system", "omega_", "NegativeRabiFrequency"),
    ("medium", "v_doppler", "NegativeDopplerWidth"),
    ("medium", "density_coupling", "NonPositiveCoupling"),
    ("medium", "dipole_ratio", "BadDipoleRatio"),
    ("medium", "gamma_unit", "NonPositiveParameter"),
    ("medium", "omega_14", "NonPositiveParameter"),
    ("medium", "length_L", "NonPositiveParameter"),
    ("quadrature", "", "BadQuadrature"),
    ("pulse", "", "BadPulseSpec"),
]


def _issue_code(loc: Tuple[Any, ...], error_type: str) -> str:
    if error_type == "extra_forbidden":
        return "UnknownKey"
    if len(loc) == 1 and loc[0] in SECTIONS:
        return "BadDocument"
    if len(loc) >= 2:
        section, name = str(loc[0]), str(loc[1])
        for sec, prefix, code in FIELD_CODES:
            if sec == section and name.startswith(prefix):
                return code
    return "InvalidValue"


def load_config(config_path: Path) -> Dict[str, Any]:
    if not config_path.exists():
        raise ValidationError(f"BadDocument: config not found: {config_path}")

    text = config_path.read_text(encoding="utf-8")
    try:
        if config_path.suffix.lower() in {".yaml", ".yml"}:
            data = yaml.safe_load(text) or {}
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ValidationError(f"BadDocument: invalid config document {config_path}: {e}") from e

    if not isinstance(data, dict):
        raise ValidationError(f"BadDocument: top-level config must be an object/dict in {config_path}")

    return data


def merge_documents(*docs: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Section-wise merge; later documents win field by field."""
    merged: Dict[str, Any] = {}
    for doc in docs:
        if not doc:
            continue
        for key, value in doc.items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key] = {**merged[key], **value}
            else:
                merged[key] = value
    return merged


def validate_config(raw: Any) -> ValidationResult:
    if not isinstance(raw, dict):
        issue = ValidationIssue("BadDocument", "<root>", "config must be an object/dict")
        return ValidationResult(ok=False, errors=[issue])

    try:
        config = Config.model_validate(raw)
    except PydanticValidationError as e:
        errors = [
            ValidationIssue(
                code=_issue_code(tuple(err["loc"]), err["type"]),
                field=".".join(str(p) for p in err["loc"]) or "<root>",
                message=err["msg"],
            )
            for err in e.errors()
        ]
        return ValidationResult(ok=False, errors=errors)

    return ValidationResult(ok=True, errors=[], config=config)


def raise_if_invalid(raw: Any) -> Config:
    res = validate_config(raw)
    if not res.ok:
        msg = "Config validation failed:\n" + "\n".join(f"- {e}" for e in res.errors)
        raise ValidationError(msg)
    assert res.config is not None
    return res.config
