"""
Shared test fixtures: the bundled vector file, the worked-example Tesla
description, and a small synthetic vehicle workspace.
"""

import io
import os

import pandas as pd
import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from app.core.config import settings
from app.services.embedding import Word2VecSimilarity, load_word_vectors
from app.services.ntriples import parse_ntriples
from app.services.rdf_core import extract_entities
from app.services.similarity_engine import SimilarityOptions
from app.services.workspace import synthetic_workspace

hypothesis_settings.register_profile(
    "default", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis_settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

DATA_DIR = settings.DATA_DIR
UPDATE_GOLDENS = os.getenv("RDFSIM_UPDATE_GOLDENS") == "1"
GOLDEN_TOLERANCE = 1e-9


def check_golden(name: str, actual: bytes):
    """Compare with a pinned golden file; RDFSIM_UPDATE_GOLDENS=1 re-pins it, a missing file skips."""
    path = _golden_path(name, actual)
    if path is not None:
        assert actual == path.read_bytes()


def check_golden_csv(name: str, actual: bytes, atol: float = GOLDEN_TOLERANCE):
    """Like check_golden, cell by cell: text and integers exactly, floats within atol."""
    path = _golden_path(name, actual)
    if path is not None:
        pd.testing.assert_frame_equal(
            pd.read_csv(io.BytesIO(actual)), pd.read_csv(path), check_exact=False, rtol=0, atol=atol
        )


def _golden_path(name: str, actual: bytes):
    path = settings.GOLDEN_DIR / name
    if UPDATE_GOLDENS:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(actual)
        return None
    if not path.exists():
        pytest.skip(f"golden {name} not pinned yet (run with RDFSIM_UPDATE_GOLDENS=1)")
    return path


@pytest.fixture(scope="session")
def vector_store():
    return load_word_vectors((DATA_DIR / "vectors-fixture.txt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def word2vec(vector_store):
    return Word2VecSimilarity(vector_store)


@pytest.fixture(scope="session")
def raw_options(word2vec):
    return SimilarityOptions(token_similarity=word2vec)


@pytest.fixture(scope="session")
def tesla():
    graph, diagnostics = parse_ntriples((DATA_DIR / "tesla.nt").read_bytes())
    assert diagnostics == []
    (entity,) = extract_entities(graph)
    return entity


@pytest.fixture(scope="session")
def small_workspace():
    return synthetic_workspace(42, 10, embedding="word2vec", vectors_path=DATA_DIR / "vectors-fixture.txt")
