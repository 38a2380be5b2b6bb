"""
RDF Core
========

Domain model for RDF terms, triples, graphs and per-subject entity
descriptions, plus the object classification that routes every triple
either to the numeric (Euclidean) or to the textual (word-embedding)
similarity.
"""

import logging
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from app.core.text import split_camel_case

logger = logging.getLogger(__name__)

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD + "string"
RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"

NUMERIC_DATATYPES: FrozenSet[str] = frozenset(
    XSD + name
    for name in (
        "integer", "decimal", "float", "double",
        "nonPositiveInteger", "negativeInteger", "long", "int", "short", "byte",
        "nonNegativeInteger", "unsignedLong", "unsignedInt", "unsignedShort",
        "unsignedByte", "positiveInteger",
    )
)

_DECIMAL = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_NUMBER = re.compile(_DECIMAL)
# number followed by one trailing unit/currency token that contains no digit
_NUMBER_WITH_UNIT = re.compile(rf"({_DECIMAL})\s*([^\d\s]+)")
_IRI_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True)
class Iri:
    """An absolute IRI."""
    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI value must be non-empty")


@dataclass(frozen=True)
class BlankNode:
    """A document-scoped blank node."""
    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("blank node label must be non-empty")


@dataclass(frozen=True)
class Literal:
    """A literal with an optional datatype IRI or an optional language tag (never both)."""
    lexical: str
    datatype: Optional[str] = None
    language: Optional[str] = None

    def __post_init__(self):
        if self.datatype is not None and self.language is not None:
            raise ValueError("a literal carries either a datatype or a language tag, not both")
        if self.language == "":
            raise ValueError("language tag must be non-empty")


Term = Union[Iri, BlankNode, Literal]


@dataclass(frozen=True)
class Triple:
    """One statement <s, p, o>."""
    subject: Term
    predicate: Iri
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("a triple subject cannot be a literal")
        if not isinstance(self.predicate, Iri):
            raise ValueError("a triple predicate must be an IRI")


@dataclass(frozen=True)
class Graph:
    """A set of triples; adding a triple already present is a no-op."""
    triples: FrozenSet[Triple] = field(default_factory=frozenset)

    @classmethod
    def from_triples(cls, triples: Iterable[Triple]) -> "Graph":
        return cls(frozenset(triples))

    def add(self, triple: Triple) -> "Graph":
        if triple in self.triples:
            return self
        return Graph(self.triples | {triple})

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, triple: object) -> bool:
        return triple in self.triples


@dataclass(frozen=True)
class EntityDescription:
    """
    The star graph of one subject: predicate IRI -> objects in first-seen order.
    """
    subject: Term
    slots: Dict[str, Tuple[Term, ...]]

    def __post_init__(self):
        if not self.slots:
            raise ValueError("an entity description needs at least one slot")
        if any(not values for values in self.slots.values()):
            raise ValueError("every slot must hold at least one object")

    @property
    def entity_id(self) -> str:
        """Human-facing identifier: the IRI itself, or _:label for blank nodes."""
        return entity_id(self.subject)

    def triples(self) -> List[Triple]:
        """Flatten the slots back into triples."""
        return [
            Triple(self.subject, Iri(predicate), value)
            for predicate, values in self.slots.items()
            for value in values
        ]


@dataclass(frozen=True)
class Quantitative:
    """Numeric object: a d-dimensional vector of finite reals."""
    values: Tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("quantitative values must be non-empty")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("quantitative values must be finite")


@dataclass(frozen=True)
class Qualitative:
    """Textual object compared through word vectors."""
    text: str


ObjectKind = Union[Quantitative, Qualitative]


def is_absolute_iri(value: str) -> bool:
    return bool(_IRI_SCHEME.match(value))


def local_name(iri: str) -> str:
    """Fragment, else last path segment, else the part after the scheme."""
    if "#" in iri:
        fragment = iri.rsplit("#", 1)[1]
        if fragment:
            return fragment
    trimmed = iri.rstrip("/#")
    for separator in ("/", ":"):
        if separator in trimmed:
            return trimmed.rsplit(separator, 1)[1]
    return trimmed


def expand_local_name(name: str) -> str:
    """'TeslaMotors' -> 'Tesla Motors', 'fuel_type' -> 'fuel type'."""
    words = []
    for chunk in re.split(r"[\s_\-]+", name):
        words.extend(part for part in split_camel_case(chunk) if part)
    return " ".join(words)


def _parse_number(text: str) -> Optional[float]:
    candidate = text.strip()
    if _NUMBER.fullmatch(candidate):
        number = float(candidate)
    else:
        match = _NUMBER_WITH_UNIT.fullmatch(candidate)
        if not match:
            return None
        number = float(match.group(1))
    return number if math.isfinite(number) else None


@lru_cache(maxsize=65536)
def classify_object(term: Term) -> ObjectKind:
    """
    Route an object term to the numeric or the textual branch.

    Numeric XSD literals and untyped (or xsd:string) literals that read as a
    decimal number, optionally followed by one unit/currency token, are
    quantitative. Everything else is qualitative: literal text, or the
    expanded local name of an IRI. Blank nodes carry no comparable text.
    """
    if isinstance(term, Literal):
        if term.language is None and (term.datatype in NUMERIC_DATATYPES):
            try:
                number = float(term.lexical.strip())
            except ValueError:
                number = None
            if number is not None and math.isfinite(number):
                return Quantitative((number,))
        elif term.language is None and term.datatype in (None, XSD_STRING):
            number = _parse_number(term.lexical)
            if number is not None:
                return Quantitative((number,))
        return Qualitative(term.lexical)
    if isinstance(term, Iri):
        return Qualitative(expand_local_name(local_name(term.value)))
    return Qualitative("")


def extract_entities(graph: Graph) -> List[EntityDescription]:
    """
    Group a graph into one EntityDescription per subject.

    Graphs are sets, so "first-seen" order is made deterministic by visiting
    triples in canonical (subject, predicate, object) order.
    """
    grouped: Dict[Term, Dict[str, List[Term]]] = {}
    for triple in sorted(graph, key=triple_sort_key):
        slots = grouped.setdefault(triple.subject, {})
        slots.setdefault(triple.predicate.value, []).append(triple.object)

    entities = [
        EntityDescription(
            subject=subject,
            slots={predicate: tuple(values) for predicate, values in slots.items()},
        )
        for subject, slots in grouped.items()
    ]
    entities.sort(key=lambda e: canonical_term_string(e.subject))
    logger.debug(f"Extracted {len(entities)} entities from {len(graph)} triples")
    return entities


def entities_to_graph(entities: Sequence[EntityDescription]) -> Graph:
    return Graph.from_triples(t for entity in entities for t in entity.triples())


def entity_id(subject: Term) -> str:
    if isinstance(subject, Iri):
        return subject.value
    if isinstance(subject, BlankNode):
        return f"_:{subject.label}"
    return canonical_term_string(subject)


# N-Triples escaping; shared with the serializer so the canonical string of a
# term is exactly its N-Triples rendering.
_ECHAR = {
    "\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r",
    "\t": "\\t", "\b": "\\b", "\f": "\\f",
}
_IRI_FORBIDDEN = set('<>"{}|^`\\')


def escape_literal(lexical: str) -> str:
    out = []
    for ch in lexical:
        if ch in _ECHAR:
            out.append(_ECHAR[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def escape_iri(value: str) -> str:
    return "".join(
        f"\\u{ord(ch):04X}" if ord(ch) <= 0x20 or ch in _IRI_FORBIDDEN else ch
        for ch in value
    )


@lru_cache(maxsize=65536)
def canonical_term_string(term: Term) -> str:
    """
    Deterministic, injective rendering of a term (its N-Triples form).

    <iri>, _:label, "lexical", "lexical"^^<datatype> or "lexical"@lang.
    """
    if isinstance(term, Iri):
        return f"<{escape_iri(term.value)}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    quoted = f'"{escape_literal(term.lexical)}"'
    if term.language is not None:
        return f"{quoted}@{term.language}"
    if term.datatype is not None:
        return f"{quoted}^^<{escape_iri(term.datatype)}>"
    return quoted


def triple_sort_key(triple: Triple) -> Tuple[str, str, str]:
    return (
        canonical_term_string(triple.subject),
        canonical_term_string(triple.predicate),
        canonical_term_string(triple.object),
    )
