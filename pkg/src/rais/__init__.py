"""rais: reusability assessment and improvement for Ada package specifications.

The pipeline: parse a specification into an immutable tree, build a semantic
model of its primary abstraction, evaluate the guideline catalog against the
model, score and band the result, then plan and apply source transformations
that repair the violations.
"""

from .assessor import Assessment, ReuseBand, assess, band
from .config import Config, ConfigError, load_config
from .guidelines import (
    Guideline,
    GuidelineResult,
    Outcome,
    Significance,
    catalog,
    evaluate,
)
from .improver import (
    ImprovedArtifacts,
    ImprovementPlan,
    Transformation,
    TransformError,
    apply_transformation,
    body_skeleton,
    improve,
    plan_improvements,
)
from .model import (
    ComponentModel,
    ModelError,
    OperationClass,
    OverrideSet,
    Privacy,
    SiblingContext,
    StructureKind,
    build_model,
    classify_operation,
    detect_structure_kind,
    element_independent_ops,
)
from .parser import ParseError, parse_component
from .printer import pretty_print
from .report import build_document, render, render_guideline_listing
from .syntax import ParsedUnit, SourceLocation
from .templates import ComponentTemplate, instantiate_component, template_for

__version__ = "0.1.0"

__all__ = [
    "Assessment",
    "ComponentModel",
    "ComponentTemplate",
    "Config",
    "ConfigError",
    "Guideline",
    "GuidelineResult",
    "ImprovedArtifacts",
    "ImprovementPlan",
    "ModelError",
    "OperationClass",
    "Outcome",
    "OverrideSet",
    "ParseError",
    "ParsedUnit",
    "Privacy",
    "ReuseBand",
    "SiblingContext",
    "Significance",
    "SourceLocation",
    "StructureKind",
    "TransformError",
    "Transformation",
    "apply_transformation",
    "assess",
    "band",
    "body_skeleton",
    "build_document",
    "build_model",
    "catalog",
    "classify_operation",
    "detect_structure_kind",
    "element_independent_ops",
    "evaluate",
    "improve",
    "instantiate_component",
    "load_config",
    "parse_component",
    "plan_improvements",
    "pretty_print",
    "render",
    "render_guideline_listing",
    "template_for",
]
