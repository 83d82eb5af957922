"""Weighted scoring and reuse banding.

The score is the percent of applicable guideline weight that is satisfied;
rules that do not apply stay out of the denominator so a static component is
not punished for skipping dynamic-only rules. A violated critical rule caps
the verdict at the weakest band no matter the score. Band labels are kept
as-is (weakly, strongly, limitedly, immediately); the numeric thresholds are
the ground truth, half-open with 90 landing in the top band.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .guidelines import Guideline, GuidelineResult, Outcome, Significance, catalog, evaluate
from .model import ComponentModel


class ReuseBand(enum.Enum):
    WEAKLY = ("weakly", 0)
    STRONGLY = ("strongly", 1)
    LIMITEDLY = ("limitedly", 2)
    IMMEDIATELY = ("immediately", 3)

    def __init__(self, label: str, rank: int):
        self.label = label
        self.rank = rank

    def __lt__(self, other: "ReuseBand") -> bool:
        return self.rank < other.rank

    def __le__(self, other: "ReuseBand") -> bool:
        return self.rank <= other.rank

    @classmethod
    def from_label(cls, label: str) -> "ReuseBand":
        for band in cls:
            if band.label == label.casefold():
                return band
        raise ValueError(f"unknown reuse band '{label}'")


def band(score_percent, critical_violated: bool) -> ReuseBand:
    """Band for a score in [0, 100]; the critical cap wins over any score."""
    if critical_violated:
        return ReuseBand.WEAKLY
    if score_percent < 50:
        return ReuseBand.WEAKLY
    if score_percent < 70:
        return ReuseBand.STRONGLY
    if score_percent < 90:
        return ReuseBand.LIMITEDLY
    return ReuseBand.IMMEDIATELY


@dataclass(frozen=True)
class Assessment:
    results: tuple[GuidelineResult, ...]
    applicable_weight_total: int
    satisfied_weight_total: int
    score_percent: float
    critical_violated: bool
    band: ReuseBand

    def result_for(self, guideline_id: str) -> GuidelineResult:
        for result in self.results:
            if result.guideline_id == guideline_id:
                return result
        raise KeyError(guideline_id)

    def violated_ids(self) -> tuple[str, ...]:
        return tuple(r.guideline_id for r in self.results if r.outcome is Outcome.VIOLATED)


def assess(model: ComponentModel, config=None) -> Assessment:
    """Evaluate every enabled guideline in catalog order and score the model.

    ``config`` may carry per-guideline enabled flags and weight overrides
    (see rais.config.Config); with no config, all rules run at their default
    weights. Degenerate models with nothing applicable score 0, weakly.
    """
    enabled = getattr(config, "enabled", {}) or {}
    weights = getattr(config, "weights", {}) or {}

    results: list[GuidelineResult] = []
    applicable = 0
    satisfied = 0
    critical_violated = False
    for guideline in catalog():
        if not enabled.get(guideline.id, True):
            continue
        result = evaluate(guideline, model, weights.get(guideline.id))
        results.append(result)
        if result.outcome is Outcome.NOT_APPLICABLE:
            continue
        applicable += result.weight_used
        if result.outcome is Outcome.SATISFIED:
            satisfied += result.weight_used
        elif guideline.significance is Significance.CRITICAL:
            critical_violated = True

    exact = Fraction(100 * satisfied, applicable) if applicable else Fraction(0)
    return Assessment(
        results=tuple(results),
        applicable_weight_total=applicable,
        satisfied_weight_total=satisfied,
        score_percent=float(exact),
        critical_violated=critical_violated,
        band=band(exact, critical_violated),
    )
