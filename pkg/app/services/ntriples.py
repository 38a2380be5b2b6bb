"""
N-Triples Codec
===============

Line-oriented W3C N-Triples parser with line-local error recovery, and a
canonical serializer (sorted, one triple per line).
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Set, Tuple, Union

from app.core.exceptions import NTriplesDocumentError
from app.services.rdf_core import (
    BlankNode,
    Graph,
    Iri,
    Literal,
    Term,
    Triple,
    canonical_term_string,
    is_absolute_iri,
    triple_sort_key,
)

logger = logging.getLogger(__name__)


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    """A problem found on one input line."""
    line_number: int
    message: str
    severity: Severity


class _LineError(Exception):
    pass


_WS = re.compile(r"[ \t]*")
_IRIREF = re.compile(r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>')
_PN_CHARS_BASE = (
    "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    "\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF\uFDF0-\uFFFD"
    "\U00010000-\U000EFFFF"
)
_PN_CHARS_U = _PN_CHARS_BASE + "_:"
_PN_CHARS = _PN_CHARS_U + "\\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_BLANK_NODE = re.compile(rf"_:([{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?)")
_STRING = re.compile(r'"((?:[^"\\\n\r]|\\[tbnrf"\'\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)"')
_LANGTAG = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")
_ESCAPE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))")
_ECHAR_VALUES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(text: str) -> str:
    def replace(match: re.Match) -> str:
        short, long, char = match.groups()
        code = short or long
        if code is not None:
            value = int(code, 16)
            if value > 0x10FFFF or 0xD800 <= value <= 0xDFFF:
                raise _LineError(f"invalid code point escape \\u{code}")
            return chr(value)
        return _ECHAR_VALUES[char]

    return _ESCAPE.sub(replace, text)


class _LineParser:
    """Cursor over a single N-Triples line."""

    def __init__(self, line: str):
        self.line = line
        self.pos = 0

    def skip_ws(self):
        self.pos = _WS.match(self.line, self.pos).end()

    def at_end(self) -> bool:
        return self.pos >= len(self.line) or self.line[self.pos] == "#"

    def expect(self, pattern: re.Pattern, what: str) -> re.Match:
        match = pattern.match(self.line, self.pos)
        if not match:
            found = self.line[self.pos:self.pos + 12] or "end of line"
            raise _LineError(f"expected {what} at column {self.pos + 1}, found {found!r}")
        self.pos = match.end()
        return match

    def iri(self) -> Iri:
        value = _unescape(self.expect(_IRIREF, "IRI").group(1))
        if not is_absolute_iri(value):
            raise _LineError(f"IRI <{value}> is not absolute")
        return Iri(value)

    def blank_node(self) -> BlankNode:
        return BlankNode(self.expect(_BLANK_NODE, "blank node").group(1))

    def subject(self) -> Term:
        if self.line.startswith("_:", self.pos):
            return self.blank_node()
        return self.iri()

    def object(self) -> Term:
        if self.line.startswith("_:", self.pos):
            return self.blank_node()
        if self.line.startswith('"', self.pos):
            return self.literal()
        return self.iri()

    def literal(self) -> Literal:
        lexical = _unescape(self.expect(_STRING, "string literal").group(1))
        if self.line.startswith("^^", self.pos):
            self.pos += 2
            return Literal(lexical, datatype=self.iri().value)
        if self.line.startswith("@", self.pos):
            return Literal(lexical, language=self.expect(_LANGTAG, "language tag").group(1))
        return Literal(lexical)

    def statement(self) -> Optional[Triple]:
        self.skip_ws()
        if self.at_end():
            return None
        subject = self.subject()
        self.skip_ws()
        predicate = self.iri()
        self.skip_ws()
        obj = self.object()
        self.skip_ws()
        if not self.line.startswith(".", self.pos):
            raise _LineError("missing terminating '.'")
        self.pos += 1
        self.skip_ws()
        if not self.at_end():
            raise _LineError(f"unexpected content after '.' at column {self.pos + 1}")
        return Triple(subject, predicate, obj)


def parse_ntriples(document: Union[str, bytes]) -> Tuple[Graph, List[ParseDiagnostic]]:
    """
    Parse an N-Triples document.

    Malformed lines are reported as error diagnostics and skipped; duplicate
    statements are reported as warnings. The only document-level failure is
    bytes input that is not valid UTF-8.

    Args:
        document: N-Triples text, or raw UTF-8 bytes

    Returns:
        (graph, diagnostics)
    """
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as e:
            raise NTriplesDocumentError(f"document is not valid UTF-8 (byte offset {e.start})") from e
    if document.startswith("\ufeff"):
        document = document[1:]

    triples: Set[Triple] = set()
    diagnostics: List[ParseDiagnostic] = []

    # only LF / CRLF end a line; other Unicode separators may sit inside literals
    for line_number, raw in enumerate(document.split("\n"), start=1):
        if raw.endswith("\r"):
            raw = raw[:-1]
        try:
            triple = _LineParser(raw).statement()
        except (_LineError, ValueError) as e:
            diagnostics.append(ParseDiagnostic(line_number, str(e), Severity.ERROR))
            continue
        if triple is None:
            continue
        if triple in triples:
            diagnostics.append(ParseDiagnostic(line_number, "duplicate triple ignored", Severity.WARNING))
            continue
        triples.add(triple)

    errors = sum(1 for d in diagnostics if d.severity is Severity.ERROR)
    if diagnostics:
        logger.warning(f"⚠️ Parsed {len(triples)} triples with {errors} errors and {len(diagnostics) - errors} warnings")
    else:
        logger.debug(f"Parsed {len(triples)} triples")
    return Graph(frozenset(triples)), diagnostics


def serialize_ntriples(graph: Graph) -> str:
    """Canonical N-Triples: triples sorted by canonical (s, p, o), one per line."""
    lines = [
        f"{canonical_term_string(t.subject)} {canonical_term_string(t.predicate)} {canonical_term_string(t.object)} .\n"
        for t in sorted(graph, key=triple_sort_key)
    ]
    return "".join(lines)
