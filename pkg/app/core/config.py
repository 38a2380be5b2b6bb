import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

EMBEDDING_MODES = ("word2vec", "tfidf")
SCALING_MODES = ("raw", "minmax")


class Settings:
    # Bundled fixtures
    DATA_DIR: Path = DATA_DIR
    GOLDEN_DIR: Path = DATA_DIR / "golden"

    # Word vectors / embedding
    VECTORS_PATH: str = os.getenv("RDFSIM_VECTORS", str(DATA_DIR / "vectors-fixture.txt"))
    EMBEDDING_MODE: str = os.getenv("RDFSIM_EMBEDDING", "word2vec").lower()

    # Similarity engine
    NUMERIC_SCALING: str = os.getenv("RDFSIM_SCALING", "raw").lower()
    BOOST_FACTOR: float = float(os.getenv("RDFSIM_BOOST_FACTOR", "2.0"))

    # Benchmark harness
    HISTOGRAM_BINS: int = int(os.getenv("RDFSIM_HISTOGRAM_BINS", "20"))
    WORKERS: int = int(os.getenv("RDFSIM_WORKERS", "4"))

    # Dataset served by the HTTP API (empty -> synthetic dataset)
    DATASET_PATH: str = os.getenv("RDFSIM_DATASET", "")
    GENERATOR_SEED: int = int(os.getenv("RDFSIM_SEED", "42"))
    GENERATOR_COUNT: int = int(os.getenv("RDFSIM_COUNT", "200"))

    LOG_LEVEL: str = os.getenv("RDFSIM_LOG_LEVEL", "INFO").upper()

    # Validation
    def validate_settings(self):
        """Validate that settings hold usable values"""
        if self.EMBEDDING_MODE not in EMBEDDING_MODES:
            raise ValueError(f"RDFSIM_EMBEDDING must be one of {EMBEDDING_MODES}, got {self.EMBEDDING_MODE!r}")
        if self.NUMERIC_SCALING not in SCALING_MODES:
            raise ValueError(f"RDFSIM_SCALING must be one of {SCALING_MODES}, got {self.NUMERIC_SCALING!r}")
        if not self.BOOST_FACTOR > 0:
            raise ValueError("RDFSIM_BOOST_FACTOR must be positive")
        if self.HISTOGRAM_BINS < 1:
            raise ValueError("RDFSIM_HISTOGRAM_BINS must be at least 1")
        if self.WORKERS < 1:
            raise ValueError("RDFSIM_WORKERS must be at least 1")
        if self.GENERATOR_COUNT < 1:
            raise ValueError("RDFSIM_COUNT must be at least 1")

        return True

    @property
    def effective_dataset_source(self) -> str:
        """Describe where the served dataset comes from"""
        if self.DATASET_PATH:
            return self.DATASET_PATH
        return f"synthetic(seed={self.GENERATOR_SEED}, count={self.GENERATOR_COUNT})"


settings = Settings()
