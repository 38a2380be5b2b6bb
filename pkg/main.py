from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from app import __version__
from app.api.similarity import router as similarity_router
from app.core.config import settings
from app.core.exceptions import DataError
from app.services.similarity_service import similarity_service
import logging

# Configure logging
logging.basicConfig(level=settings.LOG_LEVEL)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="RDF Similarity Service",
    description="Weighted-property similarity between RDF entity descriptions",
    version=__version__
)

# Add CORS middleware for cross-origin requests
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

@app.on_event("startup")
async def startup_event():
    """Validate configuration and load the served dataset on startup"""
    try:
        settings.validate_settings()
        logger.info("Configuration validated successfully")

        workspace = similarity_service.workspace
        logger.info(f"Serving {len(workspace.entities)} entities from {workspace.source}")

    except (ValueError, DataError) as e:
        logger.error(f"Failed to start similarity service: {e}")
        raise

# Include API routes
app.include_router(similarity_router, prefix="/api", tags=["Similarity"])

@app.get("/")
def read_root():
    """Health check endpoint"""
    return {
        "message": "RDF Similarity Service is running",
        "status": "healthy",
        "version": __version__
    }

@app.get("/health")
def health_check():
    """Detailed health check with the loaded dataset"""
    try:
        return {
            "status": "healthy",
            "similarity": similarity_service.status(),
        }
    except Exception as e:
        logger.error(f"Health check failed: {e}")
        raise HTTPException(status_code=500, detail="Health check failed")
