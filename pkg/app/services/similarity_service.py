"""
Similarity Service
==================

Serves similarity queries over one dataset for the HTTP API. The dataset
(a file, or the synthetic vehicle dataset) is loaded once, on first use or
at application startup.
"""

import logging
import threading
from typing import Any, Dict, List, Optional

from app.core.config import settings
from app.services.bench_harness import rank_similar
from app.services.similarity_engine import SimilarityEngine, SlotScore
from app.services.workspace import Workspace, load_workspace, synthetic_workspace

logger = logging.getLogger(__name__)


class SimilarityService:
    """
    Lazily loaded workspace plus the engine for the configured scaling.
    """

    def __init__(self, workspace: Optional[Workspace] = None):
        self.logger = logging.getLogger(__name__)
        self._workspace = workspace
        self._lock = threading.Lock()

    @property
    def loaded(self) -> bool:
        return self._workspace is not None

    @property
    def workspace(self) -> Workspace:
        if self._workspace is None:
            with self._lock:
                if self._workspace is None:
                    self._workspace = self._load()
        return self._workspace

    def _load(self) -> Workspace:
        self.logger.info(f"📂 Loading dataset: {settings.effective_dataset_source}")
        if settings.DATASET_PATH:
            return load_workspace(settings.DATASET_PATH)
        return synthetic_workspace(settings.GENERATOR_SEED, settings.GENERATOR_COUNT)

    @property
    def engine(self) -> SimilarityEngine:
        return self.workspace.engine(settings.NUMERIC_SCALING)

    def approaches(self) -> List[str]:
        return self.engine.approaches()

    def compare(self, left: str, right: str, approach: str, explain: bool = False) -> Dict[str, Any]:
        """
        Score two entities of the dataset.

        Raises:
            EntityNotFoundError: an id does not resolve
            DataError: unknown approach
        """
        engine = self.engine
        engine.check_approach(approach)
        left_entity = self.workspace.resolve(left)
        right_entity = self.workspace.resolve(right)
        score = engine.score(left_entity, right_entity, approach)

        result: Dict[str, Any] = {
            "left": left_entity.entity_id,
            "right": right_entity.entity_id,
            "approach": approach,
            "score": score,
        }
        if explain:
            result["slots"] = [_slot_dict(s) for s in engine.explain(left_entity, right_entity, approach)]
        return result

    def similar(self, entity_id: str, approach: str, top_k: int = 10) -> Dict[str, Any]:
        query = self.workspace.resolve(entity_id)
        ranked = rank_similar(query, self.workspace.entities, approach, self.engine, top_k)
        self.logger.info(f"🔎 Ranked {len(ranked)} neighbours of {query.entity_id} under {approach}")
        return {
            "entity_id": query.entity_id,
            "approach": approach,
            "neighbours": [{"entity_id": eid, "score": score} for eid, score in ranked],
        }

    def status(self) -> Dict[str, Any]:
        info: Dict[str, Any] = {
            "dataset": settings.effective_dataset_source,
            "scaling": settings.NUMERIC_SCALING,
            "loaded": self.loaded,
        }
        if self.loaded:
            info["entities"] = len(self.workspace.entities)
            info["embedding"] = self.workspace.token_similarity.mode
        return info


def _slot_dict(score: SlotScore) -> Dict[str, Any]:
    return {
        "predicate": score.predicate,
        "similarity": score.similarity,
        "weight": score.weight,
        "kind": score.kind.value,
    }


# Global similarity service instance
similarity_service = SimilarityService()
