"""
Workspace
=========

Loads everything a similarity run needs (dataset, word vectors or TF-IDF
statistics, weight profiles) and fails with a DataError before any output
is produced.
"""

import hashlib
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.core.config import settings
from app.core.exceptions import DataError, EntityNotFoundError
from app.models.schemas import GeneratorConfig
from app.services.dataset_generator import generate_vehicle_dataset
from app.services.embedding import (
    TokenSimilarity,
    Word2VecSimilarity,
    build_tfidf_similarity,
    load_word_vectors,
    tokenize,
)
from app.services.ntriples import ParseDiagnostic, Severity, parse_ntriples, serialize_ntriples
from app.services.rdf_core import (
    EntityDescription,
    Graph,
    Qualitative,
    canonical_term_string,
    classify_object,
    extract_entities,
    local_name,
)
from app.services.similarity_engine import (
    NumericScaling,
    SimilarityEngine,
    SimilarityOptions,
    compute_minmax_statistics,
)
from app.services.weight_profiles import WeightProfile, builtin_profiles, load_profile

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_TRAILING_NUMBER = re.compile(r"^(.*?)0*(\d+)$")


def load_dataset(path: PathLike) -> Tuple[Graph, List[ParseDiagnostic]]:
    """
    Read and parse an N-Triples file.

    Returns:
        (graph, diagnostics)

    Raises:
        DataError: unreadable file, invalid UTF-8, or no triple at all
    """
    try:
        document = Path(path).read_bytes()
    except OSError as e:
        raise DataError(f"cannot read dataset {path}: {e.strerror or e}") from e

    graph, diagnostics = parse_ntriples(document)
    for diagnostic in diagnostics:
        log = logger.error if diagnostic.severity is Severity.ERROR else logger.warning
        log(f"{path}:{diagnostic.line_number}: {diagnostic.message}")
    if not len(graph):
        raise DataError(f"dataset {path} holds no triples")
    logger.info(f"📂 Loaded {len(graph)} triples from {path}")
    return graph, diagnostics


def qualitative_documents(entities: Sequence[EntityDescription]) -> List[List[str]]:
    """One TF-IDF document per entity: the tokens of all its qualitative objects."""
    documents = []
    for entity in entities:
        tokens: List[str] = []
        for values in entity.slots.values():
            for term in values:
                kind = classify_object(term)
                if isinstance(kind, Qualitative):
                    tokens.extend(tokenize(kind.text))
        documents.append(tokens)
    return documents


def load_token_similarity(
    embedding: str, entities: Sequence[EntityDescription], vectors_path: Optional[PathLike] = None
) -> TokenSimilarity:
    """
    Word similarity backend: word2vec vectors from a file, or TF-IDF columns
    fitted over the entities.

    Raises:
        DataError: unknown mode, unreadable or malformed vector file
    """
    if embedding == "tfidf":
        return build_tfidf_similarity(qualitative_documents(entities))
    if embedding != "word2vec":
        raise DataError(f"unknown embedding mode {embedding!r}")

    path = Path(vectors_path or settings.VECTORS_PATH)
    try:
        document = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"cannot read vector file {path}: {e}") from e
    return Word2VecSimilarity(load_word_vectors(document))


@dataclass
class Workspace:
    """
    A loaded dataset plus the similarity backends built over it.
    """
    graph: Graph
    entities: List[EntityDescription]
    token_similarity: TokenSimilarity
    profiles: List[WeightProfile]
    diagnostics: List[ParseDiagnostic] = field(default_factory=list)
    source: str = ""
    input_digests: Dict[str, str] = field(default_factory=dict)
    _engines: Dict[NumericScaling, SimilarityEngine] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_id = {entity.entity_id: entity for entity in self.entities}

    @property
    def entity_ids(self) -> List[str]:
        return [entity.entity_id for entity in self.entities]

    def options(self, scaling: Union[str, NumericScaling] = NumericScaling.RAW) -> SimilarityOptions:
        scaling = NumericScaling(scaling)
        minmax = compute_minmax_statistics(self.entities) if scaling is NumericScaling.MINMAX else None
        return SimilarityOptions(token_similarity=self.token_similarity, numeric_scaling=scaling, minmax=minmax)

    def engine(self, scaling: Union[str, NumericScaling] = NumericScaling.RAW) -> SimilarityEngine:
        scaling = NumericScaling(scaling)
        if scaling not in self._engines:
            self._engines[scaling] = SimilarityEngine(self.options(scaling), self.profiles)
        return self._engines[scaling]

    def resolve(self, reference: str) -> EntityDescription:
        """
        Find an entity by IRI, canonical N-Triples form, or local name.

        Local names match ignoring zero padding, so "m1" finds ".../m0001".

        Raises:
            EntityNotFoundError: nothing matches, or the local name is ambiguous
        """
        entity = self._by_id.get(reference)
        if entity is not None:
            return entity
        for candidate in self.entities:
            if canonical_term_string(candidate.subject) == reference:
                return candidate

        wanted = _unpadded(reference)
        matches = [e for e in self.entities if _unpadded(local_name(e.entity_id)) == wanted]
        if len(matches) == 1:
            return matches[0]
        if len(matches) > 1:
            raise EntityNotFoundError(f"entity reference {reference!r} is ambiguous ({len(matches)} matches)")
        raise EntityNotFoundError(f"no entity {reference!r} in {self.source or 'the dataset'}")


def _unpadded(name: str) -> str:
    match = _TRAILING_NUMBER.match(name)
    return f"{match.group(1)}{match.group(2)}" if match else name


def build_workspace(
    graph: Graph,
    embedding: Optional[str] = None,
    vectors_path: Optional[PathLike] = None,
    profile_paths: Sequence[PathLike] = (),
    boost_factor: Optional[float] = None,
    diagnostics: Sequence[ParseDiagnostic] = (),
    source: str = "",
) -> Workspace:
    entities = extract_entities(graph)
    if not entities:
        raise DataError("dataset holds no entity descriptions")
    profiles = builtin_profiles(boost_factor)
    profiles.extend(load_profile(Path(p)) for p in profile_paths)
    mode = embedding or settings.EMBEDDING_MODE
    token_similarity = load_token_similarity(mode, entities, vectors_path)

    digests = {"dataset": hashlib.sha256(serialize_ntriples(graph).encode("utf-8")).hexdigest()}
    if mode == "word2vec":
        vectors = Path(vectors_path or settings.VECTORS_PATH)
        digests["vectors"] = hashlib.sha256(vectors.read_bytes()).hexdigest()

    logger.info(
        f"🧮 Workspace ready: {len(entities)} entities, {token_similarity.mode} embedding, {len(profiles)} profiles"
    )
    return Workspace(
        graph=graph,
        entities=entities,
        token_similarity=token_similarity,
        profiles=profiles,
        diagnostics=list(diagnostics),
        source=source,
        input_digests=digests,
    )


def load_workspace(dataset_path: PathLike, **kwargs) -> Workspace:
    graph, diagnostics = load_dataset(dataset_path)
    return build_workspace(graph, diagnostics=diagnostics, source=str(dataset_path), **kwargs)


def synthetic_workspace(seed: int, count: int, **kwargs) -> Workspace:
    graph = generate_vehicle_dataset(GeneratorConfig(seed=seed, entity_count=count))
    return build_workspace(graph, source=f"synthetic(seed={seed}, count={count})", **kwargs)
