"""
Benchmark Harness
=================

Pairwise similarity matrices for every approach over a dataset, with the
report data derived from them:

- histogram of off-diagonal scores
- summary statistics (mean, min, max, population standard deviation)
- long-form heatmap rows
- Pearson correlation between approaches

and the on-disk bundle (CSV files plus manifest.json) written by run_benchmark.
"""

import hashlib
import json
import logging
import platform
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import sklearn

from app import __version__
from app.core.config import settings
from app.core.exceptions import DataError, UsageError
from app.services.ntriples import serialize_ntriples
from app.services.rdf_core import EntityDescription
from app.services.similarity_engine import NumericScaling, SimilarityEngine
from app.services.weight_profiles import profile_to_config
from app.services.workspace import Workspace

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.15g"
LINE_TERMINATOR = "\r\n"
IDENTITY_TOLERANCE = 1e-9

_UNSAFE_FILENAME = re.compile(r"[^A-Za-z0-9._-]+")


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """
    approach: approach label
    entity_ids: row/column order
    scores: read-only N x N array, symmetric with unit diagonal
    """
    approach: str
    entity_ids: Tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self):
        n = len(self.entity_ids)
        if self.scores.shape != (n, n):
            raise ValueError(f"scores shape {self.scores.shape} does not match {n} entities")

    @property
    def size(self) -> int:
        return len(self.entity_ids)

    def upper_triangle(self) -> np.ndarray:
        """Strict upper-triangle scores, row by row."""
        return self.scores[np.triu_indices(self.size, k=1)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.scores, index=list(self.entity_ids), columns=list(self.entity_ids))

    def heatmap_rows(self) -> pd.DataFrame:
        """Long form (id_a, id_b, score), diagonal included."""
        ids = list(self.entity_ids)
        n = self.size
        return pd.DataFrame({
            "id_a": np.repeat(ids, n),
            "id_b": np.tile(ids, n),
            "score": self.scores.reshape(-1),
        })


@dataclass(frozen=True, eq=False)
class HistogramReport:
    approach: str
    bin_count: int
    edges: np.ndarray
    counts: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"bin_lo": self.edges[:-1], "bin_hi": self.edges[1:], "count": self.counts})


@dataclass(frozen=True)
class SummaryStats:
    approach: str
    mean: float
    min: float
    max: float
    stdev: float
    count: int


def compute_matrix(
    entities: Sequence[EntityDescription],
    approach: str,
    engine: SimilarityEngine,
    workers: Optional[int] = None,
    label: Optional[str] = None,
) -> SimilarityMatrix:
    """
    Score every unordered pair (diagonal included) once and mirror it.

    Pairs are independent, so the worker count never changes the result.

    Args:
        entities: rows/columns of the matrix
        approach: approach name known to the engine
        engine: similarity engine holding options and profiles
        workers: thread count, defaults to settings.WORKERS; 1 runs serially
        label: name recorded on the matrix, defaults to the approach
    """
    engine.check_approach(approach)
    n = len(entities)
    if n < 1:
        raise DataError("cannot build a similarity matrix over zero entities")
    workers = settings.WORKERS if workers is None else workers

    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def evaluate(pair: Tuple[int, int]) -> float:
        i, j = pair
        return engine.score(entities[i], entities[j], approach)

    if workers <= 1:
        values = [evaluate(pair) for pair in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(evaluate, pairs))

    scores = np.empty((n, n), dtype=np.float64)
    for (i, j), value in zip(pairs, values):
        scores[i, j] = value
        scores[j, i] = value
    scores.setflags(write=False)

    off_identity = int(np.sum(np.abs(np.diag(scores) - 1.0) > IDENTITY_TOLERANCE))
    if off_identity:
        logger.warning(f"⚠️ {label or approach}: {off_identity} entities are not self-similar (score != 1)")
    return SimilarityMatrix(
        approach=label or approach,
        entity_ids=tuple(entity.entity_id for entity in entities),
        scores=scores,
    )


def histogram(matrix: SimilarityMatrix, bin_count: Optional[int] = None) -> HistogramReport:
    """
    Uniform bins over [0, 1]; bin i covers [i/B, (i+1)/B), the last bin is
    closed at 1. Counts strict upper-triangle scores only.
    """
    bin_count = settings.HISTOGRAM_BINS if bin_count is None else bin_count
    if bin_count < 1:
        raise ValueError("bin_count must be at least 1")
    values = matrix.upper_triangle()
    edges = np.arange(bin_count + 1) / bin_count
    index = np.floor(values * bin_count).astype(np.int64)
    # v * B can round across an edge; settle against the edges themselves
    index = np.where(edges[np.clip(index, 0, bin_count)] > values, index - 1, index)
    index = np.where(edges[np.clip(index + 1, 0, bin_count)] <= values, index + 1, index)
    index = np.clip(index, 0, bin_count - 1)
    counts = np.bincount(index, minlength=bin_count)
    return HistogramReport(approach=matrix.approach, bin_count=bin_count, edges=edges, counts=counts)


def summary_stats(matrix: SimilarityMatrix) -> SummaryStats:
    """
    Raises:
        DataError: fewer than two entities
    """
    if matrix.size < 2:
        raise DataError(f"{matrix.approach}: summary statistics need at least two entities")
    values = matrix.upper_triangle()
    low, high = float(values.min()), float(values.max())
    return SummaryStats(
        approach=matrix.approach,
        mean=min(high, max(low, float(values.mean()))),
        min=low,
        max=high,
        stdev=float(values.std(ddof=0)),
        count=int(values.size),
    )


def approach_correlation(matrices: Sequence[SimilarityMatrix]) -> pd.DataFrame:
    """
    Pearson correlation of off-diagonal scores between every pair of
    approaches; NaN where a score vector is constant or too short.
    """
    frame = pd.DataFrame({m.approach: m.upper_triangle() for m in matrices})
    return frame.corr(method="pearson")


def rank_similar(
    query: EntityDescription,
    candidates: Sequence[EntityDescription],
    approach: str,
    engine: SimilarityEngine,
    top_k: Optional[int] = None,
) -> List[Tuple[str, float]]:
    """
    Candidates ordered by descending score (ties by entity id), the query
    subject itself excluded.
    """
    engine.check_approach(approach)
    scored = [
        (candidate.entity_id, engine.score(query, candidate, approach))
        for candidate in candidates
        if candidate.subject != query.subject
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored if top_k is None else scored[:top_k]


def approach_filename(label: str) -> str:
    return _UNSAFE_FILENAME.sub("_", label)


@dataclass
class BenchmarkReport:
    output_dir: Path
    matrices: List[SimilarityMatrix]
    histograms: List[HistogramReport]
    summaries: List[SummaryStats]
    correlation: pd.DataFrame
    files: Dict[str, str] = field(default_factory=dict)

    def summary_frame(self) -> pd.DataFrame:
        return _summary_frame(self.summaries)


def _summary_frame(summaries: Sequence[SummaryStats]) -> pd.DataFrame:
    return pd.DataFrame(
        [(s.approach, s.mean, s.min, s.max, s.stdev, s.count) for s in summaries],
        columns=["approach", "mean", "min", "max", "stdev", "count"],
    )


def to_csv_bytes(frame: pd.DataFrame, index: bool = False, index_label: Optional[str] = None) -> bytes:
    text = frame.to_csv(
        index=index, index_label=index_label, float_format=FLOAT_FORMAT, lineterminator=LINE_TERMINATOR, na_rep=""
    )
    return text.encode("utf-8")


def _versions() -> Dict[str, str]:
    return {
        "rdfsim": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "pandas": pd.__version__,
        "scikit-learn": sklearn.__version__,
    }


def run_benchmark(
    workspace: Workspace,
    approaches: Sequence[str],
    output_dir: Union[str, Path],
    scalings: Sequence[Union[str, NumericScaling]] = (NumericScaling.RAW,),
    bin_count: Optional[int] = None,
    workers: Optional[int] = None,
    seed: Optional[int] = None,
) -> BenchmarkReport:
    """
    Compute every approach under every requested scaling and write the bundle.

    Everything is computed and validated before the first file is written.
    With both scalings, the min-max variants are labelled "<approach>-minmax".
    A seed marks a generated dataset, which is then written as dataset.nt.

    Raises:
        UsageError: empty approach list
        DataError: unknown approach, clashing file names, fewer than two entities
    """
    if not approaches:
        raise UsageError("at least one approach is required")
    scalings = [NumericScaling(s) for s in dict.fromkeys(scalings)]
    if not scalings:
        raise UsageError("at least one numeric scaling is required")
    bin_count = settings.HISTOGRAM_BINS if bin_count is None else bin_count
    if bin_count < 1:
        raise UsageError("bin count must be at least 1")

    runs: List[Tuple[str, str, NumericScaling]] = []
    for scaling in scalings:
        engine = workspace.engine(scaling)
        for approach in approaches:
            engine.check_approach(approach)
            suffixed = len(scalings) > 1 and scaling is NumericScaling.MINMAX
            runs.append((f"{approach}-minmax" if suffixed else approach, approach, scaling))

    filenames = [approach_filename(label) for label, _, _ in runs]
    if len(set(filenames)) != len(filenames):
        raise DataError(f"approach labels collide as file names: {filenames}")
    if len(workspace.entities) < 2:
        raise DataError("a benchmark needs at least two entities")

    matrices, histograms, summaries = [], [], []
    for label, approach, scaling in runs:
        logger.info(f"📊 Computing {label} over {len(workspace.entities)} entities")
        matrix = compute_matrix(workspace.entities, approach, workspace.engine(scaling), workers, label=label)
        matrices.append(matrix)
        histograms.append(histogram(matrix, bin_count))
        summaries.append(summary_stats(matrix))
    correlation = approach_correlation(matrices)

    outputs: Dict[str, bytes] = {}
    for filename, matrix, report in zip(filenames, matrices, histograms):
        outputs[f"matrix_{filename}.csv"] = to_csv_bytes(matrix.to_frame(), index=True, index_label="id")
        outputs[f"hist_{filename}.csv"] = to_csv_bytes(report.to_frame())
        outputs[f"heat_{filename}.csv"] = to_csv_bytes(matrix.heatmap_rows())
    outputs["summary.csv"] = to_csv_bytes(_summary_frame(summaries))
    outputs["correlation.csv"] = to_csv_bytes(correlation, index=True, index_label="approach")
    if seed is not None:
        outputs["dataset.nt"] = serialize_ntriples(workspace.graph).encode("utf-8")

    files = {name: hashlib.sha256(data).hexdigest() for name, data in sorted(outputs.items())}
    profiles = {p.name: json.loads(profile_to_config(p)) for p in workspace.profiles}
    manifest = {
        "seed": seed,
        "source": workspace.source,
        "entity_count": len(workspace.entities),
        "approaches": [label for label, _, _ in runs],
        "options": {
            "embedding": workspace.token_similarity.mode,
            "scalings": [s.value for s in scalings],
            "bin_count": bin_count,
        },
        "profiles": profiles,
        "inputs": dict(sorted(workspace.input_digests.items())),
        "versions": _versions(),
        "files": files,
    }
    outputs["manifest.json"] = (json.dumps(manifest, indent=2, sort_keys=True) + "\n").encode("utf-8")

    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    for name, data in outputs.items():
        (output_dir / name).write_bytes(data)

    logger.info(f"✅ Benchmark bundle written to {output_dir} ({len(outputs)} files)")
    return BenchmarkReport(
        output_dir=output_dir,
        matrices=matrices,
        histograms=histograms,
        summaries=summaries,
        correlation=correlation,
        files=files,
    )
