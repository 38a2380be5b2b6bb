"""
Embedding Test
==============

Tokenizer, word2vec text loading, clamped cosine and the TF-IDF backend.
"""

import math

import numpy as np
import pytest

from app.core.exceptions import VectorFileError
from app.services.embedding import (
    TfidfSimilarity,
    VectorStore,
    Word2VecSimilarity,
    build_tfidf_similarity,
    load_word_vectors,
    tfidf_fit,
    tfidf_vectorize,
    tokenize,
    word_similarity,
)


class TestTokenize:
    def test_camel_case_and_punctuation(self):
        assert tokenize("TeslaModelS") == ["tesla", "model", "s"]
        assert tokenize("semi-automatic") == ["semi", "automatic"]
        assert tokenize("fuel_type") == ["fuel", "type"]
        assert tokenize("56750€") == ["56750"]

    def test_duplicates_kept(self):
        assert tokenize("red red") == ["red", "red"]

    def test_empty(self):
        assert tokenize("") == []
        assert tokenize(" -- ") == []


class TestLoadVectors:
    def test_header_and_lowercasing(self):
        store = load_word_vectors("2 3\nRed 1 0 0\nblue 0 1 0\n")
        assert store.dimension == 3
        assert set(store.tokens()) == {"red", "blue"}

    def test_without_header(self):
        store = load_word_vectors("red 1 0\nblue 0 1\n")
        assert store.dimension == 2 and len(store) == 2

    def test_dimension_mismatch_reports_line(self):
        with pytest.raises(VectorFileError) as err:
            load_word_vectors("2 3\nred 1 0 0\nblue 0 1\n")
        assert err.value.line_number == 3

    def test_duplicate_word(self):
        with pytest.raises(VectorFileError) as err:
            load_word_vectors("red 1 0\nRED 0 1\n")
        assert err.value.line_number == 2

    def test_bad_component(self):
        with pytest.raises(VectorFileError):
            load_word_vectors("red 1 x\n")

    def test_non_finite_component(self):
        with pytest.raises(VectorFileError):
            load_word_vectors("red 1 nan\n")

    def test_empty_document(self):
        with pytest.raises(VectorFileError):
            load_word_vectors("")

    def test_word2vec_text_round_trip(self, vector_store):
        assert load_word_vectors(vector_store.to_word2vec_text()) == vector_store

    def test_store_is_read_only(self, vector_store):
        with pytest.raises(ValueError):
            vector_store.get("white")[0] = 5.0


class TestWordSimilarity:
    def test_identical_vectors(self):
        assert word_similarity(np.array([1.0, 2.0]), np.array([1.0, 2.0])) == pytest.approx(1.0)

    def test_clamped_at_zero(self):
        assert word_similarity(np.array([1.0, 0.0]), np.array([-1.0, 0.0])) == 0.0

    def test_zero_vector(self):
        assert word_similarity(np.zeros(3), np.array([1.0, 0.0, 0.0])) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            word_similarity(np.zeros(2), np.zeros(3))

    def test_fixture_values(self, word2vec):
        assert word2vec.similarity("electric", "electricity") == pytest.approx(2 / math.sqrt(6), abs=1e-12)
        assert word2vec.similarity("white", "black") == pytest.approx(0.5, abs=1e-12)
        assert word2vec.similarity("passed", "exempt") == 0.0

    def test_oov_policy(self, word2vec):
        assert word2vec.similarity("zzz", "zzz") == 1.0
        assert word2vec.similarity("zzz", "white") == 0.0

    def test_symmetric(self, word2vec):
        assert word2vec.similarity("tesla", "motors") == word2vec.similarity("motors", "tesla")


class TestTfidf:
    def test_smoothed_idf(self):
        model = tfidf_fit([["red", "car"], ["blue", "car"], ["red"]])
        assert model.document_count == 3
        assert model.idf["car"] == pytest.approx(math.log(4 / 3) + 1, abs=1e-12)
        assert model.idf["blue"] == pytest.approx(math.log(4 / 2) + 1, abs=1e-12)

    def test_vectorize_ignores_oov(self):
        model = tfidf_fit([["red", "car"], ["blue"]])
        vector = tfidf_vectorize(model, ["red", "red", "green"])
        assert set(vector) == {"red"}
        assert vector["red"] == pytest.approx(2 * model.idf["red"], abs=1e-12)

    def test_empty_documents_count(self):
        model = tfidf_fit([["red"], []])
        assert model.document_count == 2
        assert model.idf["red"] == pytest.approx(math.log(3 / 2) + 1, abs=1e-12)

    def test_all_empty_corpus(self):
        model = tfidf_fit([[], []])
        assert model.vocabulary == {} and tfidf_vectorize(model, ["red"]) == {}

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            tfidf_fit([])

    def test_column_similarity(self):
        similarity = build_tfidf_similarity([["red", "car"], ["red", "car"], ["blue"]])
        assert isinstance(similarity, TfidfSimilarity)
        assert similarity.mode == "tfidf"
        assert similarity.similarity("red", "car") == pytest.approx(1.0, abs=1e-12)
        assert similarity.similarity("red", "blue") == 0.0
        assert similarity.similarity("red", "green") == 0.0


def test_vector_store_validation():
    with pytest.raises(ValueError):
        VectorStore(2, {"Red": [1, 0]})
    with pytest.raises(ValueError):
        VectorStore(2, {"red": [1, 0, 0]})
    assert Word2VecSimilarity(VectorStore(2, {"red": [1, 0]})).mode == "word2vec"
