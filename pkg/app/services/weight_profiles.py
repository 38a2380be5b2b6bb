"""
Weight Profiles
===============

Weighted properties as data: named profiles mapping predicates to
importance weights, the built-in P0-P11 experimental profiles, and the
JSON profile format.
"""

import json
import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import ProfileConfigError
from app.core.text import split_camel_case
from app.models.schemas import ProfileConfig
from app.services.rdf_core import is_absolute_iri, local_name

logger = logging.getLogger(__name__)

_FILLER_WORDS = frozenset({"has", "of", "the"})
_ABBREVIATIONS = {"nb": "number", "num": "number"}


@lru_cache(maxsize=4096)
def normalize_property_name(name: str) -> str:
    """
    Matching key for a property label or IRI local name.

    Case-, space-, underscore- and camelCase-insensitive; drops filler words
    and expands "nb"/"num": "nb_doors", "Number of Doors" and "nbOfDoors"
    all become "numberdoors".
    """
    words = []
    for chunk in re.split(r"[\s_\-]+", local_name(name) if is_absolute_iri(name) else name):
        for part in split_camel_case(chunk):
            word = part.lower()
            if not word or word in _FILLER_WORDS:
                continue
            words.append(_ABBREVIATIONS.get(word, word))
    return "".join(words)


@dataclass(frozen=True)
class Boost:
    predicates: Tuple[str, ...]
    factor: float

    def __post_init__(self):
        if not (self.factor > 0 and math.isfinite(self.factor)):
            raise ValueError("boost factor must be a finite positive number")

    @property
    def keys(self) -> frozenset:
        return frozenset(normalize_property_name(p) for p in self.predicates)


@dataclass(frozen=True)
class WeightProfile:
    """
    A named, total assignment of weights to predicates.

    explicit: (predicate IRI or label, weight) pairs
    default_weight: weight of every other predicate, multiplied by the boost
        factor when the predicate is in the boosted set
    """
    name: str
    explicit: Tuple[Tuple[str, float], ...] = ()
    default_weight: float = 1.0
    boost: Optional[Boost] = None

    def __post_init__(self):
        weights = [self.default_weight, *(w for _, w in self.explicit)]
        if not all(math.isfinite(w) and w >= 0 for w in weights):
            raise ValueError(f"profile {self.name!r}: weights must be finite and non-negative")

    @property
    def boosted(self) -> frozenset:
        return self.boost.keys if self.boost else frozenset()


@lru_cache(maxsize=16384)
def resolve_weight(profile: WeightProfile, predicate: str) -> float:
    """
    Weight of a predicate under a profile.

    Explicit entry on the full IRI first, then on the normalized local name;
    otherwise the default weight, boosted when the predicate is in the boost set.
    """
    for key, weight in profile.explicit:
        if key == predicate:
            return weight
    normalized = normalize_property_name(predicate)
    for key, weight in profile.explicit:
        if normalize_property_name(key) == normalized:
            return weight
    if profile.boost and normalized in profile.boosted:
        return profile.default_weight * profile.boost.factor
    return profile.default_weight


# Boosted properties of the built-in experimental profiles
_P8 = ("Inspect", "Mileage", "Color")
_P9 = _P8 + ("Number of Doors",)
_P10 = _P9 + ("Number of Seats",)
_P11 = _P10 + ("Made By",)

BUILTIN_BOOSTS: Dict[str, Tuple[str, ...]] = {
    "P1": ("Release Year",),
    "P2": ("Mileage",),
    "P3": ("Fuel Type",),
    "P4": ("Color",),
    "P5": ("Number of Doors",),
    "P6": ("Made By",),
    "P7": ("Vehicle Type",),
    "P8": _P8,
    "P9": _P9,
    "P10": _P10,
    "P11": _P11,
}

UNIFORM_PROFILE = WeightProfile(name="P0")


def builtin_profiles(boost_factor: Optional[float] = None) -> List[WeightProfile]:
    """P0 (uniform) followed by P1-P11, each boosting its properties by ``boost_factor``."""
    factor = settings.BOOST_FACTOR if boost_factor is None else boost_factor
    profiles = [UNIFORM_PROFILE]
    for name, predicates in BUILTIN_BOOSTS.items():
        profiles.append(WeightProfile(name=name, boost=Boost(predicates=predicates, factor=factor)))
    return profiles


def profile_from_config(document: str) -> WeightProfile:
    """
    Parse and validate a JSON weight profile.

    Unknown keys are logged as warnings and ignored.

    Raises:
        ProfileConfigError: malformed JSON or invalid values, with the location
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as e:
        raise ProfileConfigError(e.msg, location=f"line {e.lineno} column {e.colno}") from e

    try:
        config = ProfileConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        raise ProfileConfigError(first["msg"], location=location) from e

    for key in sorted(config.model_extra or {}):
        logger.warning(f"⚠️ Profile {config.name!r}: unknown key {key!r} ignored")
    if config.boost is not None:
        for key in sorted(config.boost.model_extra or {}):
            logger.warning(f"⚠️ Profile {config.name!r}: unknown key 'boost.{key}' ignored")

    boost = None
    if config.boost is not None:
        boost = Boost(predicates=tuple(config.boost.predicates), factor=config.boost.factor)
    return WeightProfile(
        name=config.name,
        explicit=tuple(config.weights.items()),
        default_weight=config.default,
        boost=boost,
    )


def profile_to_config(profile: WeightProfile) -> str:
    document = {"name": profile.name, "default": profile.default_weight}
    if profile.explicit:
        document["weights"] = dict(profile.explicit)
    if profile.boost is not None:
        document["boost"] = {"factor": profile.boost.factor, "predicates": list(profile.boost.predicates)}
    return json.dumps(document, indent=2)


def load_profile(path: Path) -> WeightProfile:
    try:
        document = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ProfileConfigError(f"cannot read profile: {e}", location=str(path)) from e
    profile = profile_from_config(document)
    logger.info(f"⚖️ Loaded weight profile {profile.name!r} from {path}")
    return profile


def example_profile() -> WeightProfile:
    """The bundled worked-example profile ("example-3b")."""
    return load_profile(settings.DATA_DIR / "profiles" / "example-3b.json")


def profile_weights(profile: WeightProfile, predicates: Iterable[str]) -> Dict[str, float]:
    return {predicate: resolve_weight(profile, predicate) for predicate in predicates}
