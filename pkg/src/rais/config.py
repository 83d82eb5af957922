"""Run configuration: guideline switches, weight overrides, model overrides.

The config file is plain JSON with the same field names as the Config
dataclass. Unknown guideline ids and non-positive weights are rejected up
front so a typo cannot silently disable a rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .guidelines import catalog_ids
from .model import OperationClass, OverrideSet, StructureKind


class ConfigError(Exception):
    """Malformed or inconsistent configuration."""


@dataclass
class Config:
    enabled: dict[str, bool] = field(default_factory=dict)
    weights: dict[str, int] = field(default_factory=dict)
    overrides: OverrideSet = OverrideSet()
    interactive: bool = False
    emit_body: bool = False


def parse_operation_class(text: str) -> OperationClass:
    token = text.strip().casefold().replace(" ", "_").replace("-", "_")
    token = {"input/output": "input_output", "io": "input_output"}.get(token, token)
    for op_class in OperationClass:
        if op_class.value == token:
            return op_class
    raise ConfigError(f"unknown operation class '{text}'")


def parse_structure_kind(text: str) -> StructureKind:
    token = text.strip().casefold()
    for kind in StructureKind:
        if kind.value == token:
            return kind
    raise ConfigError(f"unknown structure kind '{text}'")


def load_config(path: str | Path) -> Config:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise ConfigError(f"{path}: not valid JSON ({error})") from error
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return config_from_dict(raw, source=str(path))


def config_from_dict(raw: dict, source: str = "<config>") -> Config:
    known_ids = set(catalog_ids())
    config = Config()

    enabled = raw.get("enabled", {})
    if not isinstance(enabled, dict):
        raise ConfigError(f"{source}: 'enabled' must map guideline ids to booleans")
    for guideline_id, flag in enabled.items():
        if guideline_id not in known_ids:
            raise ConfigError(f"{source}: unknown guideline id '{guideline_id}' in 'enabled'")
        if not isinstance(flag, bool):
            raise ConfigError(f"{source}: enabled['{guideline_id}'] must be a boolean")
        config.enabled[guideline_id] = flag

    weights = raw.get("weights", {})
    if not isinstance(weights, dict):
        raise ConfigError(f"{source}: 'weights' must map guideline ids to integers")
    for guideline_id, weight in weights.items():
        if guideline_id not in known_ids:
            raise ConfigError(f"{source}: unknown guideline id '{guideline_id}' in 'weights'")
        if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
            raise ConfigError(f"{source}: weights['{guideline_id}'] must be an integer >= 1")
        config.weights[guideline_id] = weight

    overrides_raw = raw.get("overrides", {})
    if not isinstance(overrides_raw, dict):
        raise ConfigError(f"{source}: 'overrides' must be an object")
    op_classes: tuple[tuple[str, OperationClass], ...] = ()
    for name, class_text in overrides_raw.get("operation_classes", {}).items():
        op_classes += ((name, parse_operation_class(str(class_text))),)
    structure_kind = overrides_raw.get("structure_kind")
    element_independent = overrides_raw.get("element_independent")
    is_complex = overrides_raw.get("complex")
    config.overrides = OverrideSet(
        op_classes=op_classes,
        structure_kind=parse_structure_kind(structure_kind) if structure_kind else None,
        is_complex=bool(is_complex) if is_complex is not None else None,
        element_type=overrides_raw.get("element_type"),
        element_independent=bool(element_independent) if element_independent is not None else None,
    )

    config.interactive = bool(raw.get("interactive", False))
    config.emit_body = bool(raw.get("emit_body", False))
    return config
