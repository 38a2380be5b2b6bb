"""
Similarity Engine
=================

Weighted-property similarity between two entity descriptions:

- quantitative objects: 1 / (1 + Euclidean distance)
- qualitative objects: symmetric mean of best word-to-text matches
- aggregate: weighted mean of slot scores over the union of predicates

plus the comparison approaches PJ (Jaccard over triples), PS (predicate and
object hybrid) and P0 (uniform weights).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.core.exceptions import DataError, ScalingError
from app.services.embedding import TokenSimilarity, tokenize
from app.services.rdf_core import (
    EntityDescription,
    ObjectKind,
    Qualitative,
    Quantitative,
    canonical_term_string,
    classify_object,
    expand_local_name,
    local_name,
)
from app.services.weight_profiles import UNIFORM_PROFILE, WeightProfile, resolve_weight

logger = logging.getLogger(__name__)

JACCARD = "PJ"
PREDICATE_OBJECT = "PS"


class NumericScaling(str, Enum):
    RAW = "raw"
    MINMAX = "minmax"


class SlotKind(str, Enum):
    QUANTITATIVE = "quantitative"
    QUALITATIVE = "qualitative"
    MIXED = "mixed"
    UNMATCHED = "unmatched"


@dataclass(frozen=True)
class AlignedSlot:
    """One predicate of the union, with each side's classified objects (one side may be empty)."""
    predicate: str
    left_values: Tuple[ObjectKind, ...]
    right_values: Tuple[ObjectKind, ...]

    def __post_init__(self):
        if not self.left_values and not self.right_values:
            raise ValueError(f"slot {self.predicate} is empty on both sides")


@dataclass(frozen=True)
class SlotScore:
    predicate: str
    similarity: float
    weight: float
    kind: SlotKind


@dataclass(frozen=True)
class SimilarityOptions:
    """
    token_similarity: word-to-word similarity backing the qualitative branch
    numeric_scaling: raw values, or per-predicate min-max scaling to [0, 1]
    minmax: predicate -> (min, max), required exactly when scaling is minmax
    """
    token_similarity: TokenSimilarity
    numeric_scaling: NumericScaling = NumericScaling.RAW
    minmax: Optional[Mapping[str, Tuple[float, float]]] = None

    def __post_init__(self):
        scaling = NumericScaling(self.numeric_scaling)
        object.__setattr__(self, "numeric_scaling", scaling)
        if (scaling is NumericScaling.MINMAX) != (self.minmax is not None):
            raise ValueError("min-max statistics are required for, and only for, minmax scaling")
        for predicate, (low, high) in (self.minmax or {}).items():
            if low > high:
                raise ValueError(f"min-max statistics for {predicate}: min {low} > max {high}")


def compute_minmax_statistics(entities: Iterable[EntityDescription]) -> Dict[str, Tuple[float, float]]:
    """Per-predicate (min, max) over every numeric component seen in the entities."""
    stats: Dict[str, Tuple[float, float]] = {}
    for entity in entities:
        for predicate, values in entity.slots.items():
            for term in values:
                kind = classify_object(term)
                if not isinstance(kind, Quantitative):
                    continue
                low, high = stats.get(predicate, (math.inf, -math.inf))
                stats[predicate] = (min(low, *kind.values), max(high, *kind.values))
    return stats


def _scaled(values: Sequence[float], predicate: str, options: SimilarityOptions) -> Sequence[float]:
    if options.numeric_scaling is NumericScaling.RAW:
        return values
    bounds = options.minmax.get(predicate)
    if bounds is None:
        raise ScalingError(f"no min-max statistics for predicate {predicate}")
    low, high = bounds
    if high == low:
        return [0.0] * len(values)
    return [min(1.0, max(0.0, (v - low) / (high - low))) for v in values]


def sim_quantitative(a: Sequence[float], b: Sequence[float], options: SimilarityOptions, predicate: str) -> float:
    """
    1 / (1 + sqrt(sum_c (a_c - b_c)^2)), on raw or min-max scaled values.

    Raises:
        ScalingError: length mismatch, or missing min-max statistics
    """
    if len(a) != len(b) or not a:
        raise ScalingError(f"numeric objects of {predicate} differ in length: {len(a)} vs {len(b)}")
    a, b = _scaled(a, predicate, options), _scaled(b, predicate, options)
    distance = math.dist(a, b)
    return 1.0 / (1.0 + distance)


def sim_qualitative(left_text: str, right_text: str, token_similarity: TokenSimilarity) -> float:
    """
    (sum_u S(m1u, right) + sum_v S(m2v, left)) / (h + l), where S(m, text)
    is the best word similarity between m and any word of text.

    Both sides without tokens -> 1.0; exactly one side without tokens -> 0.0.
    """
    m1, m2 = tokenize(left_text), tokenize(right_text)
    if not m1 and not m2:
        return 1.0
    if not m1 or not m2:
        return 0.0
    sim = token_similarity.similarity
    left_sum = sum(max(sim(u, v) for v in m2) for u in m1)
    right_sum = sum(max(sim(v, u) for u in m1) for v in m2)
    return (left_sum + right_sum) / (len(m1) + len(m2))


def align_slots(left: EntityDescription, right: EntityDescription) -> List[AlignedSlot]:
    """One slot per predicate of the union, sorted by predicate IRI."""
    predicates = sorted(set(left.slots) | set(right.slots))
    return [
        AlignedSlot(
            predicate=predicate,
            left_values=tuple(classify_object(t) for t in left.slots.get(predicate, ())),
            right_values=tuple(classify_object(t) for t in right.slots.get(predicate, ())),
        )
        for predicate in predicates
    ]


def _slot_kind(slot: AlignedSlot) -> SlotKind:
    if not slot.left_values or not slot.right_values:
        return SlotKind.UNMATCHED
    values = slot.left_values + slot.right_values
    if all(isinstance(v, Quantitative) for v in values):
        return SlotKind.QUANTITATIVE
    if all(isinstance(v, Qualitative) for v in values):
        return SlotKind.QUALITATIVE
    return SlotKind.MIXED


def _value_similarity(a: ObjectKind, b: ObjectKind, predicate: str, options: SimilarityOptions) -> float:
    if isinstance(a, Quantitative) and isinstance(b, Quantitative):
        return sim_quantitative(a.values, b.values, options, predicate)
    if isinstance(a, Qualitative) and isinstance(b, Qualitative):
        return sim_qualitative(a.text, b.text, options.token_similarity)
    # no cross-kind formula
    return 0.0


def slot_similarity(slot: AlignedSlot, options: SimilarityOptions) -> SlotScore:
    """
    Score one aligned slot (weight left at 0).

    Unmatched slots score 0. Otherwise the symmetric best-match mean:
    (sum over left of best match on the right + sum over right of best match
    on the left) / (|left| + |right|); cross-kind value pairs score 0.
    """
    kind = _slot_kind(slot)
    if kind is SlotKind.UNMATCHED:
        return SlotScore(slot.predicate, 0.0, 0.0, kind)

    pairs = [
        [_value_similarity(a, b, slot.predicate, options) for b in slot.right_values]
        for a in slot.left_values
    ]
    left_best = sum(max(row) for row in pairs)
    right_best = sum(max(row[j] for row in pairs) for j in range(len(slot.right_values)))
    similarity = (left_best + right_best) / (len(slot.left_values) + len(slot.right_values))
    return SlotScore(slot.predicate, similarity, 0.0, kind)


def explain_weighted(
    left: EntityDescription, right: EntityDescription, profile: WeightProfile, options: SimilarityOptions
) -> List[SlotScore]:
    """Weighted slot scores behind sim_weighted, in predicate order."""
    scores = []
    for slot in align_slots(left, right):
        score = slot_similarity(slot, options)
        scores.append(SlotScore(score.predicate, score.similarity, resolve_weight(profile, slot.predicate), score.kind))
    return scores


def sim_weighted(
    left: EntityDescription, right: EntityDescription, profile: WeightProfile, options: SimilarityOptions
) -> float:
    """
    Weighted mean of slot scores over the union of predicates:
    sum(sim_k * w_k) / sum(w_k). All weights zero -> 0.
    """
    scores = explain_weighted(left, right, profile, options)
    total_weight = sum(s.weight for s in scores)
    if total_weight == 0:
        return 0.0
    return sum(s.similarity * s.weight for s in scores) / total_weight


def sim_p0(left: EntityDescription, right: EntityDescription, options: SimilarityOptions) -> float:
    return sim_weighted(left, right, UNIFORM_PROFILE, options)


def triple_pairs(entity: EntityDescription) -> frozenset:
    return frozenset(
        (predicate, canonical_term_string(term))
        for predicate, values in entity.slots.items()
        for term in values
    )


def sim_jaccard(left: EntityDescription, right: EntityDescription) -> float:
    """|A & B| / |A | B| over (predicate, object) pairs; both empty -> 1."""
    a, b = triple_pairs(left), triple_pairs(right)
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)


def predicate_label(predicate: str) -> str:
    return expand_local_name(local_name(predicate))


def sim_ps(left: EntityDescription, right: EntityDescription, options: SimilarityOptions) -> float:
    """
    Uniform mean over union slots of (predicate-label similarity + object
    similarity) / 2; unmatched slots keep only the halved label term.
    """
    slots = align_slots(left, right)
    if not slots:
        return 1.0
    total = 0.0
    for slot in slots:
        label = predicate_label(slot.predicate)
        label_sim = sim_qualitative(label, label, options.token_similarity)
        score = slot_similarity(slot, options)
        if score.kind is SlotKind.UNMATCHED:
            total += label_sim / 2
        else:
            total += (label_sim + score.similarity) / 2
    return total / len(slots)


class SimilarityEngine:
    """
    Approach registry: PJ, PS and one weighted approach per profile (P0-P11
    and custom profiles), all sharing one set of options.
    """

    def __init__(self, options: SimilarityOptions, profiles: Sequence[WeightProfile]):
        self.logger = logging.getLogger(__name__)
        self.options = options
        self.profiles: Dict[str, WeightProfile] = {}
        for profile in profiles:
            if profile.name in (JACCARD, PREDICATE_OBJECT):
                raise DataError(f"profile name {profile.name!r} is reserved")
            if profile.name in self.profiles:
                self.logger.warning(f"⚠️ Profile {profile.name!r} replaces an earlier profile of the same name")
            self.profiles[profile.name] = profile

    def approaches(self) -> List[str]:
        return [JACCARD, PREDICATE_OBJECT, *self.profiles]

    def check_approach(self, approach: str) -> str:
        if approach not in (JACCARD, PREDICATE_OBJECT) and approach not in self.profiles:
            raise DataError(f"unknown approach {approach!r}; available: {', '.join(self.approaches())}")
        return approach

    def score(self, left: EntityDescription, right: EntityDescription, approach: str) -> float:
        if approach == JACCARD:
            return sim_jaccard(left, right)
        if approach == PREDICATE_OBJECT:
            return sim_ps(left, right, self.options)
        profile = self.profiles.get(approach)
        if profile is None:
            self.check_approach(approach)
        return sim_weighted(left, right, profile, self.options)

    def explain(self, left: EntityDescription, right: EntityDescription, approach: str) -> List[SlotScore]:
        """Slot breakdown; PJ and PS report unweighted slot scores under uniform weights."""
        self.check_approach(approach)
        profile = self.profiles.get(approach, UNIFORM_PROFILE)
        return explain_weighted(left, right, profile, self.options)
