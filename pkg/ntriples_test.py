"""
N-Triples Test
==============

Parser conformance, line-level error recovery, canonical serialization and
the parse/serialize round trip, with rdflib as an independent reader.
"""

import pytest
import rdflib
from hypothesis import given, settings as hypothesis_settings, strategies as st

from app.core.config import settings
from app.core.exceptions import NTriplesDocumentError
from app.models.schemas import GeneratorConfig
from app.services.dataset_generator import generate_vehicle_dataset
from app.services.ntriples import Severity, parse_ntriples, serialize_ntriples
from app.services.rdf_core import XSD, BlankNode, Graph, Iri, Literal, Triple

S = "<http://ex.org/s>"
P = "<http://ex.org/p>"

MALFORMED_LINES = [
    f'{S} {P} "o"',
    f'{S} {P} "o" . extra',
    f'<s> {P} "o" .',
    f'"lit" {P} "o" .',
    f'{S} _:b "o" .',
    f'{S} {P} "unterminated .',
    f'<http://ex.org/s {P} "o" .',
    f'{S} {P} "o"@ .',
    f'{S} {P} "o"^^ .',
    f'{S} {P} "o"^^<http://ex.org/t>@en .',
    f'{S} {P} "bad \\q escape" .',
    f'{S} {P} "\\uD800" .',
    f'{S} {P} .',
    f'{S} {P}',
    f'_: {P} "o" .',
    f'{S} {P} <http://ex.org/o> . .',
    f'{S} {P} "o" ;',
    f'{S} {P} 42 .',
    f'{S} "p" "o" .',
    f'{S}',
]


class TestParse:
    def test_simple_document(self):
        graph, diagnostics = parse_ntriples(
            f'{S} {P} "o" .\n'
            f'{S} {P} <http://ex.org/o> .\n'
            f'_:b1 {P} "5"^^<{XSD}integer> .\n'
            f'{S} {P} "chat"@fr .\n'
        )
        assert diagnostics == []
        assert Triple(BlankNode("b1"), Iri("http://ex.org/p"), Literal("5", datatype=XSD + "integer")) in graph
        assert Triple(Iri("http://ex.org/s"), Iri("http://ex.org/p"), Literal("chat", language="fr")) in graph
        assert len(graph) == 4

    def test_comments_blank_lines_bom_and_crlf(self):
        document = f'\ufeff# header\r\n\r\n{S} {P} "o" . # trailing comment\r\n   \n'
        graph, diagnostics = parse_ntriples(document)
        assert diagnostics == []
        assert len(graph) == 1

    def test_escapes_are_decoded(self):
        graph, _ = parse_ntriples(f'{S} {P} "tab\\there \\u00E9\\U0001F600 \\"q\\"" .\n')
        (t,) = graph
        assert t.object.lexical == 'tab\there é\U0001F600 "q"'

    def test_unicode_line_separator_inside_literal(self):
        graph, diagnostics = parse_ntriples(f'{S} {P} "a\u2028b" .\n')
        assert diagnostics == []
        (t,) = graph
        assert t.object.lexical == "a\u2028b"

    def test_duplicates_are_warnings(self):
        line = f'{S} {P} "o" .\n'
        graph, diagnostics = parse_ntriples(line * 2)
        assert len(graph) == 1
        assert [(d.line_number, d.severity) for d in diagnostics] == [(2, Severity.WARNING)]

    def test_invalid_utf8_fails_the_document(self):
        with pytest.raises(NTriplesDocumentError):
            parse_ntriples(b'<http://ex.org/s> <http://ex.org/p> "\xff" .\n')

    def test_empty_document(self):
        graph, diagnostics = parse_ntriples("")
        assert len(graph) == 0 and diagnostics == []


class TestRecovery:
    @pytest.mark.parametrize("line", MALFORMED_LINES)
    def test_malformed_line_is_one_error(self, line):
        graph, diagnostics = parse_ntriples(line + "\n")
        assert len(graph) == 0
        assert len(diagnostics) == 1
        assert diagnostics[0].line_number == 1
        assert diagnostics[0].severity is Severity.ERROR

    def test_good_lines_survive_around_bad_ones(self):
        document = "\n".join([f'{S} {P} "a" .', MALFORMED_LINES[0], f'{S} {P} "b" .', MALFORMED_LINES[5]])
        graph, diagnostics = parse_ntriples(document)
        assert {t.object.lexical for t in graph} == {"a", "b"}
        assert [d.line_number for d in diagnostics] == [2, 4]

    def test_whole_corpus_reports_every_line(self):
        graph, diagnostics = parse_ntriples("\n".join(MALFORMED_LINES))
        assert len(graph) == 0
        assert [d.line_number for d in diagnostics] == list(range(1, len(MALFORMED_LINES) + 1))


class TestSerialize:
    def test_sorted_and_newline_terminated(self):
        graph = Graph.from_triples([
            Triple(Iri("http://ex.org/b"), Iri("http://ex.org/p"), Literal("2")),
            Triple(Iri("http://ex.org/a"), Iri("http://ex.org/p"), Literal("1")),
        ])
        assert serialize_ntriples(graph) == (
            '<http://ex.org/a> <http://ex.org/p> "1" .\n'
            '<http://ex.org/b> <http://ex.org/p> "2" .\n'
        )

    def test_empty_graph(self):
        assert serialize_ntriples(Graph()) == ""

    def test_serialization_is_canonical(self):
        graph, _ = parse_ntriples((settings.DATA_DIR / "fig1.nt").read_text(encoding="utf-8"))
        text = serialize_ntriples(graph)
        assert serialize_ntriples(parse_ntriples(text)[0]) == text


_IRI_CHARS = st.characters(blacklist_categories=("Cs",), min_codepoint=0x21)
_iris = st.builds(lambda tail: Iri("http://ex.org/" + tail), st.text(_IRI_CHARS, max_size=12))
_blank_nodes = st.builds(BlankNode, st.from_regex(r"[A-Za-z][A-Za-z0-9_\-]{0,8}", fullmatch=True))
_literals = st.one_of(
    st.builds(Literal, st.text()),
    st.builds(
        lambda text, lang: Literal(text, language=lang),
        st.text(),
        st.from_regex(r"[a-zA-Z]{1,8}(-[a-zA-Z0-9]{1,8}){0,2}", fullmatch=True),
    ),
    st.builds(
        lambda text, dt: Literal(text, datatype=dt),
        st.text(),
        st.sampled_from([XSD + "integer", XSD + "string", "http://ex.org/type"]),
    ),
)
_triples = st.builds(
    Triple,
    st.one_of(_iris, _blank_nodes),
    _iris,
    st.one_of(_iris, _blank_nodes, _literals),
)
_graphs = st.builds(Graph.from_triples, st.lists(_triples, max_size=8))


class TestRoundTrip:
    @given(_graphs)
    @hypothesis_settings(max_examples=1000)
    def test_parse_serialize_parse(self, graph):
        text = serialize_ntriples(graph)
        parsed, diagnostics = parse_ntriples(text)
        assert diagnostics == []
        assert parsed == graph
        assert serialize_ntriples(parsed) == text


def _our_keys(graph: Graph):
    keys = set()
    for t in graph:
        o = t.object
        if isinstance(o, Literal):
            obj = ("typed", o.datatype, float(o.lexical)) if o.datatype else ("plain", o.lexical, o.language)
        else:
            obj = ("node", o.value)
        keys.add((t.subject.value, t.predicate.value, obj))
    return keys


def _rdflib_keys(text: str):
    reference = rdflib.Graph()
    reference.parse(data=text, format="nt")
    keys = set()
    for s, p, o in reference:
        if isinstance(o, rdflib.Literal):
            if o.datatype is not None:
                obj = ("typed", str(o.datatype), float(o.toPython()))
            else:
                obj = ("plain", str(o), o.language)
        else:
            obj = ("node", str(o))
        keys.add((str(s), str(p), obj))
    return keys


class TestAgainstRdflib:
    @pytest.mark.parametrize("name", ["tesla.nt", "fig1.nt"])
    def test_bundled_fixtures(self, name):
        text = (settings.DATA_DIR / name).read_text(encoding="utf-8")
        graph, _ = parse_ntriples(text)
        assert _our_keys(graph) == _rdflib_keys(text)

    def test_generated_dataset(self):
        graph = generate_vehicle_dataset(GeneratorConfig(seed=7, entity_count=20))
        text = serialize_ntriples(graph)
        assert _our_keys(graph) == _rdflib_keys(text)

    def test_escaped_literals(self):
        text = f'{S} {P} "tab\\there \\u00E9 \\"q\\" back\\\\slash" .\n{S} {P} "hello"@en .\n'
        graph, _ = parse_ntriples(text)
        assert _our_keys(graph) == _rdflib_keys(text)
