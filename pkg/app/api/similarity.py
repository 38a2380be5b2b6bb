from fastapi import APIRouter, HTTPException, Query, status
from app.core.exceptions import DataError, EntityNotFoundError
from app.models.schemas import NeighboursResponse, SimilarityRequest, SimilarityResponse
from app.services.similarity_service import similarity_service
import logging

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("/approaches")
async def list_approaches():
    """Approach names accepted by the similarity endpoints (PJ, PS, P0-P11, custom profiles)."""
    try:
        return {"approaches": similarity_service.approaches()}
    except DataError as e:
        logger.error(f"❌ Dataset unavailable: {e}")
        raise HTTPException(status_code=status.HTTP_503_SERVICE_UNAVAILABLE, detail=str(e))


@router.post("/similarity", response_model=SimilarityResponse, response_model_exclude_none=True)
async def compare_entities(request: SimilarityRequest):
    """
    Similarity of two entities of the served dataset.

    Expected input format:
    {
        "left": "m0001",
        "right": "http://example.org/vehicles/m0002",
        "approach": "P3",
        "explain": true
    }

    With "explain", the response carries the per-predicate slot scores and
    weights behind the aggregate.
    """
    try:
        logger.info(f"⚖️ Comparing {request.left} and {request.right} under {request.approach}")
        return similarity_service.compare(request.left, request.right, request.approach, request.explain)
    except EntityNotFoundError as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    except DataError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))


@router.get("/entities/{entity_id:path}/similar", response_model=NeighboursResponse)
async def similar_entities(
    entity_id: str,
    approach: str = "P0",
    top_k: int = Query(default=10, ge=1, le=1000),
):
    """Nearest neighbours of one entity, best first; the entity itself is excluded."""
    try:
        return similarity_service.similar(entity_id, approach, top_k)
    except EntityNotFoundError as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    except DataError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
