"""
Embedding
=========

Word-vector storage and text vectorization for the qualitative similarity:
word2vec text loading, tokenization, clamped cosine word similarity, and a
TF-IDF alternative built on scikit-learn.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sklearn.feature_extraction.text import TfidfVectorizer

from app.core.exceptions import VectorFileError
from app.core.text import split_camel_case, word_runs

logger = logging.getLogger(__name__)

WordVector = np.ndarray


@lru_cache(maxsize=65536)
def _tokenize_cached(text: str) -> Tuple[str, ...]:
    tokens = []
    for run in word_runs(text):
        tokens.extend(part.lower() for part in split_camel_case(run) if part)
    return tuple(tokens)


def tokenize(text: str) -> List[str]:
    """
    Split text on non-alphanumeric and camelCase boundaries, lowercased.

    "TeslaModelS" -> ["tesla", "model", "s"]; order and duplicates kept.
    """
    return list(_tokenize_cached(text))


class VectorStore:
    """
    Read-only mapping of lowercase tokens to word vectors of one dimension.
    """

    def __init__(self, dimension: int, entries: Mapping[str, Iterable[float]]):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self._entries: Dict[str, WordVector] = {}
        for token, components in entries.items():
            if not token or token != token.lower():
                raise ValueError(f"token {token!r} must be non-empty and lowercase")
            vector = np.asarray(list(components), dtype=np.float64)
            if vector.shape != (dimension,):
                raise ValueError(f"vector for {token!r} has dimension {vector.size}, expected {dimension}")
            if not np.all(np.isfinite(vector)):
                raise ValueError(f"vector for {token!r} has non-finite components")
            vector.setflags(write=False)
            self._entries[token] = vector

    def get(self, token: str) -> Optional[WordVector]:
        return self._entries.get(token)

    def tokens(self) -> List[str]:
        return list(self._entries)

    def __contains__(self, token: object) -> bool:
        return token in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorStore):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self._entries.keys() == other._entries.keys()
            and all(np.array_equal(v, other._entries[t]) for t, v in self._entries.items())
        )

    def to_word2vec_text(self) -> str:
        """Render in word2vec text format with a `<count> <dim>` header."""
        lines = [f"{len(self)} {self.dimension}"]
        for token, vector in self._entries.items():
            lines.append(" ".join([token, *(repr(float(c)) for c in vector)]))
        return "\n".join(lines) + "\n"


def load_word_vectors(document: str) -> VectorStore:
    """
    Load a word2vec text document.

    An optional `<count> <dim>` header is accepted; otherwise the dimension
    comes from the first vector line. Words are lowercased on load.

    Raises:
        VectorFileError: dimension mismatch, duplicate word, bad or non-finite component
    """
    dimension: Optional[int] = None
    declared_count: Optional[int] = None
    entries: Dict[str, List[float]] = {}

    for line_number, raw in enumerate(document.split("\n"), start=1):
        fields = raw.strip().split(" ")
        if fields == [""]:
            continue

        if line_number == 1 and len(fields) == 2 and all(f.isdigit() for f in fields):
            declared_count, dimension = int(fields[0]), int(fields[1])
            if dimension < 1:
                raise VectorFileError("header declares a non-positive dimension", line_number)
            continue

        word, components = fields[0].lower(), [f for f in fields[1:] if f]
        if not components:
            raise VectorFileError(f"word {word!r} has no components", line_number)
        if dimension is None:
            dimension = len(components)
        if len(components) != dimension:
            raise VectorFileError(
                f"word {word!r} has {len(components)} components, expected {dimension}", line_number
            )
        if word in entries:
            raise VectorFileError(f"duplicate word {word!r}", line_number)
        try:
            values = [float(c) for c in components]
        except ValueError as e:
            raise VectorFileError(f"word {word!r}: {e}", line_number) from e
        if not all(math.isfinite(v) for v in values):
            raise VectorFileError(f"word {word!r} has a non-finite component", line_number)
        entries[word] = values

    if dimension is None:
        raise VectorFileError("document holds no vectors")
    if declared_count is not None and declared_count != len(entries):
        logger.warning(f"⚠️ Header declares {declared_count} words, loaded {len(entries)}")

    logger.info(f"📚 Loaded {len(entries)} word vectors of dimension {dimension}")
    return VectorStore(dimension, entries)


def word_similarity(a: WordVector, b: WordVector) -> float:
    """
    Cosine similarity clamped below at 0; a zero vector on either side gives 0.

    Raises:
        ValueError: the vectors have different dimensions
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    norms = float(np.dot(a, a)) * float(np.dot(b, b))
    if norms == 0.0:
        return 0.0
    cosine = float(np.dot(a, b)) / math.sqrt(norms)
    return min(1.0, max(0.0, cosine))


@dataclass(frozen=True)
class TfidfModel:
    """Smoothed TF-IDF statistics: idf(t) = ln((1 + N) / (1 + df(t))) + 1."""
    vocabulary: Dict[str, int]
    idf: Dict[str, float]
    document_count: int
    vectorizer: Optional[TfidfVectorizer] = field(default=None, compare=False, repr=False)


def _as_tokens(document: Sequence[str]) -> Sequence[str]:
    return document


def tfidf_fit(corpus: Sequence[Sequence[str]]) -> TfidfModel:
    """
    Fit TF-IDF statistics over pre-tokenized documents.

    Empty documents only count towards N.
    """
    if not corpus:
        raise ValueError("corpus must hold at least one document")
    documents = [list(doc) for doc in corpus]
    if not any(documents):
        return TfidfModel(vocabulary={}, idf={}, document_count=len(documents))

    vectorizer = TfidfVectorizer(
        analyzer=_as_tokens, lowercase=False, norm=None, smooth_idf=True, sublinear_tf=False
    )
    vectorizer.fit(documents)
    vocabulary = {token: int(index) for token, index in sorted(vectorizer.vocabulary_.items(), key=lambda kv: kv[1])}
    idf = {token: float(vectorizer.idf_[index]) for token, index in vocabulary.items()}
    return TfidfModel(vocabulary=vocabulary, idf=idf, document_count=len(documents), vectorizer=vectorizer)


def tfidf_vectorize(model: TfidfModel, tokens: Sequence[str]) -> Dict[str, float]:
    """
    Sparse TF-IDF vector of one token sequence: token -> tf * idf.

    Out-of-vocabulary tokens are ignored; the result may be empty (zero vector).
    """
    if model.vectorizer is None:
        return {}
    row = model.vectorizer.transform([list(tokens)]).tocoo()
    index_to_token = {index: token for token, index in model.vocabulary.items()}
    return {index_to_token[int(col)]: float(value) for col, value in zip(row.col, row.data) if value != 0.0}


class TokenSimilarity(ABC):
    """
    Word-to-word similarity with the out-of-vocabulary policy: equal strings
    score 1, a pair with a token lacking a vector scores 0.
    """

    mode: str = ""

    def __init__(self):
        self._cache: Dict[Tuple[str, str], float] = {}

    @abstractmethod
    def vector(self, token: str) -> Optional[WordVector]:
        ...

    def similarity(self, a: str, b: str) -> float:
        if a == b:
            return 1.0
        key = (a, b) if a < b else (b, a)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        va, vb = self.vector(key[0]), self.vector(key[1])
        score = 0.0 if va is None or vb is None else word_similarity(va, vb)
        self._cache[key] = score
        return score


class Word2VecSimilarity(TokenSimilarity):
    mode = "word2vec"

    def __init__(self, store: VectorStore):
        super().__init__()
        self.store = store

    def vector(self, token: str) -> Optional[WordVector]:
        return self.store.get(token)


class TfidfSimilarity(TokenSimilarity):
    """
    Word vectors taken as columns of the document-term TF-IDF matrix, so two
    words are close when they weigh alike across the same documents.
    """
    mode = "tfidf"

    def __init__(self, model: TfidfModel, documents: Sequence[Sequence[str]]):
        super().__init__()
        self.model = model
        self._columns: Dict[str, WordVector] = {}
        if model.vocabulary:
            matrix = np.zeros((len(documents), len(model.vocabulary)), dtype=np.float64)
            for row, tokens in enumerate(documents):
                for token, value in tfidf_vectorize(model, tokens).items():
                    matrix[row, model.vocabulary[token]] = value
            for token, column in model.vocabulary.items():
                vector = matrix[:, column].copy()
                vector.setflags(write=False)
                self._columns[token] = vector

    def vector(self, token: str) -> Optional[WordVector]:
        return self._columns.get(token)


def build_tfidf_similarity(documents: Sequence[Sequence[str]]) -> TfidfSimilarity:
    model = tfidf_fit(documents)
    logger.info(f"📚 Fitted TF-IDF over {model.document_count} documents, {len(model.vocabulary)} terms")
    return TfidfSimilarity(model, documents)
