"""
Command Line
============

rdfsim subcommands:

    gen        synthetic vehicle dataset (N-Triples)
    validate   parse a dataset and report diagnostics
    sim        similarity of one entity pair
    matrix     pairwise similarity matrix for one approach
    bench      full benchmark bundle for a list of approaches
    recommend  entities most similar to a query entity or description
    serve      run the HTTP API

Exit codes: 0 success, 1 usage error, 2 data error. Logs go to stderr,
results to stdout (JSON with --json).
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

from app import __version__
from app.core.config import EMBEDDING_MODES, SCALING_MODES, settings
from app.core.exceptions import DataError, UsageError
from app.models.schemas import GeneratorConfig
from app.services.bench_harness import compute_matrix, rank_similar, run_benchmark, to_csv_bytes
from app.services.dataset_generator import generate_vehicle_dataset
from app.services.ntriples import Severity, parse_ntriples, serialize_ntriples
from app.services.rdf_core import extract_entities
from app.services.similarity_engine import NumericScaling
from app.services.workspace import Workspace, load_dataset, load_workspace, synthetic_workspace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse reporting misuse as UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}\n\n{self.format_help()}")


def _emit(args: argparse.Namespace, payload: Any, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _write_output(out: Optional[str], data: bytes):
    if not out or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        Path(out).write_bytes(data)
    except OSError as e:
        raise DataError(f"cannot write {out}: {e.strerror or e}") from e


def _workspace(args: argparse.Namespace) -> Workspace:
    options = dict(
        embedding=args.embedding,
        vectors_path=args.vectors,
        profile_paths=args.profile or (),
        boost_factor=args.boost_factor,
    )
    if getattr(args, "dataset", None):
        return load_workspace(args.dataset, **options)
    if getattr(args, "seed", None) is not None:
        return synthetic_workspace(args.seed, args.count, **options)
    raise UsageError("a dataset is required (--dataset)")


def cmd_gen(args: argparse.Namespace) -> int:
    config = GeneratorConfig(seed=args.seed, entity_count=args.count)
    graph = generate_vehicle_dataset(config)
    _write_output(args.out, serialize_ntriples(graph).encode("utf-8"))
    if args.out and args.out != "-":
        logger.info(f"💾 Wrote {len(graph)} triples to {args.out}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        document = Path(args.path).read_bytes()
    except OSError as e:
        raise DataError(f"cannot read {args.path}: {e.strerror or e}") from e
    graph, diagnostics = parse_ntriples(document)
    errors = [d for d in diagnostics if d.severity is Severity.ERROR]

    payload = {
        "path": args.path,
        "triples": len(graph),
        "entities": len(extract_entities(graph)),
        "diagnostics": [
            {"line": d.line_number, "severity": d.severity.value, "message": d.message} for d in diagnostics
        ],
    }
    lines = [f"{args.path}:{d.line_number}: {d.severity.value}: {d.message}" for d in diagnostics]
    lines.append(f"{len(graph)} triples, {payload['entities']} entities, {len(errors)} errors")
    _emit(args, payload, "\n".join(lines))
    return EXIT_DATA if errors else EXIT_OK


def cmd_sim(args: argparse.Namespace) -> int:
    workspace = _workspace(args)
    engine = workspace.engine(args.scaling)
    engine.check_approach(args.approach)
    left, right = workspace.resolve(args.left), workspace.resolve(args.right)
    score = engine.score(left, right, args.approach)

    payload = {"left": left.entity_id, "right": right.entity_id, "approach": args.approach, "score": score}
    lines = [repr(score)]
    if args.explain:
        slots = engine.explain(left, right, args.approach)
        payload["slots"] = [
            {"predicate": s.predicate, "similarity": s.similarity, "weight": s.weight, "kind": s.kind.value}
            for s in slots
        ]
        lines.extend(f"  {s.predicate}\t{s.kind.value}\tsim={s.similarity:.6f}\tweight={s.weight:g}" for s in slots)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_matrix(args: argparse.Namespace) -> int:
    workspace = _workspace(args)
    matrix = compute_matrix(workspace.entities, args.approach, workspace.engine(args.scaling), args.workers)
    if args.json:
        _emit(args, {
            "approach": matrix.approach,
            "entity_ids": list(matrix.entity_ids),
            "scores": matrix.scores.tolist(),
        }, "")
    else:
        _write_output(args.out, to_csv_bytes(matrix.to_frame(), index=True, index_label="id"))
    return EXIT_OK


def _approach_list(value: Optional[str], workspace: Workspace) -> List[str]:
    if value is None:
        return workspace.engine().approaches()
    return [name.strip() for name in value.split(",") if name.strip()]


def cmd_bench(args: argparse.Namespace) -> int:
    if args.dataset and args.seed is not None:
        raise UsageError("--dataset and --seed are mutually exclusive")
    if args.approaches is not None and not _approach_list(args.approaches, None):
        raise UsageError("--approaches lists no approach")
    workspace = _workspace(args)
    scalings = [NumericScaling.RAW, NumericScaling.MINMAX] if args.scaling == "both" else [args.scaling]

    report = run_benchmark(
        workspace,
        _approach_list(args.approaches, workspace),
        args.out,
        scalings=scalings,
        bin_count=args.bins,
        workers=args.workers,
        seed=args.seed,
    )
    payload = {
        "output_dir": str(report.output_dir),
        "summary": [
            {"approach": s.approach, "mean": s.mean, "min": s.min, "max": s.max, "stdev": s.stdev, "count": s.count}
            for s in report.summaries
        ],
    }
    text = report.summary_frame().to_string(index=False, float_format=lambda v: f"{v:.6f}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_recommend(args: argparse.Namespace) -> int:
    workspace = _workspace(args)
    engine = workspace.engine(args.scaling)
    engine.check_approach(args.approach)

    if args.query_file:
        graph, _ = load_dataset(args.query_file)
        queries = extract_entities(graph)
        if len(queries) != 1:
            raise DataError(f"{args.query_file} must describe exactly one subject, found {len(queries)}")
        query = queries[0]
    else:
        query = workspace.resolve(args.query)

    ranked = rank_similar(query, workspace.entities, args.approach, engine, args.top_k)
    payload = {
        "query": query.entity_id,
        "approach": args.approach,
        "neighbours": [{"entity_id": eid, "score": score} for eid, score in ranked],
    }
    _emit(args, payload, "\n".join(f"{score:.6f}\t{eid}" for eid, score in ranked))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("main:app", host=args.host, port=args.port, log_level=settings.LOG_LEVEL.lower())
    return EXIT_OK


def _add_workspace_options(parser: argparse.ArgumentParser, dataset_required: bool = True):
    parser.add_argument("--dataset", required=dataset_required, help="N-Triples dataset file")
    parser.add_argument("--vectors", default=None, help="word2vec text file (default: RDFSIM_VECTORS)")
    parser.add_argument(
        "--embedding", choices=EMBEDDING_MODES, default=settings.EMBEDDING_MODE, help="word similarity backend"
    )
    parser.add_argument("--profile", action="append", help="JSON weight profile (repeatable)")
    parser.add_argument("--boost-factor", type=float, default=None, help="boost factor of P1-P11")


def _add_scaling(parser: argparse.ArgumentParser, choices: Sequence[str] = SCALING_MODES):
    parser.add_argument("--scaling", choices=choices, default=settings.NUMERIC_SCALING, help="numeric scaling")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="rdfsim", description="Weighted-property similarity for RDF entities")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="logging level (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic vehicle dataset")
    gen.add_argument("--seed", type=int, default=settings.GENERATOR_SEED)
    gen.add_argument("--count", type=int, default=settings.GENERATOR_COUNT)
    gen.add_argument("--out", default="-", help="output file (default: stdout)")
    gen.set_defaults(handler=cmd_gen)

    validate = sub.add_parser("validate", help="parse a dataset and print diagnostics")
    validate.add_argument("path")
    validate.set_defaults(handler=cmd_validate)

    sim = sub.add_parser("sim", help="similarity of one entity pair")
    _add_workspace_options(sim)
    _add_scaling(sim)
    sim.add_argument("--left", required=True, help="IRI or local name (m1, m0001)")
    sim.add_argument("--right", required=True)
    sim.add_argument("--approach", default="P0")
    sim.add_argument("--explain", action="store_true", help="print per-predicate slot scores")
    sim.set_defaults(handler=cmd_sim)

    matrix = sub.add_parser("matrix", help="pairwise similarity matrix (CSV)")
    _add_workspace_options(matrix)
    _add_scaling(matrix)
    matrix.add_argument("--approach", default="P0")
    matrix.add_argument("--workers", type=int, default=None)
    matrix.add_argument("--out", default="-", help="output CSV (default: stdout)")
    matrix.set_defaults(handler=cmd_matrix)

    bench = sub.add_parser("bench", help="write the full benchmark bundle")
    _add_workspace_options(bench, dataset_required=False)
    _add_scaling(bench, choices=(*SCALING_MODES, "both"))
    bench.add_argument("--seed", type=int, default=None, help="generate the dataset instead of --dataset")
    bench.add_argument("--count", type=int, default=settings.GENERATOR_COUNT)
    bench.add_argument("--approaches", default=None, help="comma-separated approaches (default: all)")
    bench.add_argument("--bins", type=int, default=None)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--out", required=True, help="output directory")
    bench.set_defaults(handler=cmd_bench)

    recommend = sub.add_parser("recommend", help="rank entities by similarity to a query")
    _add_workspace_options(recommend)
    _add_scaling(recommend)
    query = recommend.add_mutually_exclusive_group(required=True)
    query.add_argument("--query", help="entity of the dataset")
    query.add_argument("--query-file", help="N-Triples description of one subject")
    recommend.add_argument("--approach", default="P0")
    recommend.add_argument("--top-k", type=int, default=10)
    recommend.set_defaults(handler=cmd_recommend)

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr)
        settings.validate_settings()
        return args.handler(args)
    except SystemExit as e:
        # --help / --version
        return e.code if isinstance(e.code, int) else EXIT_OK
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        if isinstance(e, DataError):
            logger.error(f"❌ {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_DATA
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
