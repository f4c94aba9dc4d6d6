"""Command-line interface: embed, partition, and plot subcommands.

All outputs are deterministic for fixed inputs, flags, and seed. Files are
written only after a command's computation fully succeeds, so failed runs
leave no partial outputs. Exit codes: 0 success, 1 numerical failure,
2 usage or input errors.
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .embedding import read_embedding_csv, write_embedding_csv, write_spectrum_csv
from .graphs import EdgeListError, load_edge_list, load_ground_truth
from .metrics import nmi as nmi_metric
from .metrics import summarize, write_summary_json
from .partition import write_partition_csv, write_run_log
from .pipeline import PipelineConfig, run_embedding, run_partition, run_pipeline, seed_tree
from .plotting import render_scatter_svg
from .solver import write_trace_csv

OUTPUT_DIR_ENV = "SPHEREMBED_OUTPUT_DIR"


def _add_embed_options(p):
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--descriptor", choices=["modularity", "normlap"],
                   default="modularity", help="descriptor matrix")
    p.add_argument("--d0", type=int, default=30,
                   help="embedding dimension upper bound (clamped to n)")
    p.add_argument("--tol", type=float, default=1e-8, help="relative objective tolerance")
    p.add_argument("--max-iter", type=int, default=10000, help="iteration cap")
    p.add_argument("--momentum", action=argparse.BooleanOptionalAction, default=True,
                   help="use the momentum solver")
    p.add_argument("--momentum-variant", choices=["main", "appendix"], default="main",
                   help="which momentum update to use")
    p.add_argument("--shift-epsilon", type=float, default=0.0,
                   help="extra diagonal dominance margin")
    p.add_argument("--epsilon", type=float, default=0.01,
                   help="effective-dimension threshold")
    p.add_argument("--seed", type=int, default=0, help="run seed")
    p.add_argument("--embedding-kind", choices=["spherical", "ellipsoidal"],
                   default="spherical", help="coordinate system for the embedding CSV")
    p.add_argument("--trace-delta", action="store_true",
                   help="add the criticality column to the trace CSV when available")


def _add_partition_options(p):
    p.add_argument("--k", type=int, default=100,
                   help="initial centroid count (clamped to n)")
    p.add_argument("--restarts", type=int, default=5, help="partitioner restarts")
    p.add_argument("--max-rounds", type=int, default=200, help="rounds per restart")
    p.add_argument("--jobs", type=int, default=None, help="parallel restart workers")
    p.add_argument("--truth", help="ground-truth community file for NMI")


def _add_common(p):
    p.add_argument("--output-dir",
                   help=f"output directory (default: ${OUTPUT_DIR_ENV} or '.')")
    p.add_argument("--timings", action="store_true",
                   help="report per-stage wall-clock times on stderr")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spherembed",
        description="Spherical/ellipsoidal graph embeddings and embed-and-partition "
                    "community detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser(
        "embed", help="compute an embedding and export CSV/JSON artifacts",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_embed_options(p_embed)
    _add_common(p_embed)

    p_part = sub.add_parser(
        "partition", help="cluster nodes by vector partitioning",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_embed_options(p_part)
    _add_partition_options(p_part)
    p_part.add_argument("--embedding", help="previously written embedding CSV to reuse")
    p_part.add_argument("--pipeline", action="store_true",
                        help="run the embedding stage in-process instead of reading a CSV")
    _add_common(p_part)

    p_plot = sub.add_parser(
        "plot", help="render an embedding CSV as an SVG scatter",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p_plot.add_argument("--embedding", required=True, help="embedding CSV")
    p_plot.add_argument("--partition", help="partition CSV for point colors")
    p_plot.add_argument("--output", help="SVG output path (default: <output-dir>/embedding.svg)")
    _add_common(p_plot)
    return parser


def _output_dir(args):
    # not created here: a failed run must leave nothing behind
    return Path(args.output_dir or os.environ.get(OUTPUT_DIR_ENV) or ".")


def _config_from(args, with_partition=False):
    kwargs = dict(descriptor=args.descriptor, d0=args.d0, tol=args.tol,
                  max_iter=args.max_iter, momentum=args.momentum,
                  momentum_variant=args.momentum_variant,
                  shift_epsilon=args.shift_epsilon, epsilon=args.epsilon,
                  seed=args.seed, embedding_kind=args.embedding_kind)
    if with_partition:
        kwargs.update(k=args.k, restarts=args.restarts,
                      max_rounds=args.max_rounds, jobs=args.jobs)
    return PipelineConfig(**kwargs)


def _write_all(outputs):
    for path, _ in outputs:
        path.parent.mkdir(parents=True, exist_ok=True)
    for path, text in outputs:
        path.write_text(text, encoding="utf-8")


def _capture(write, *args):
    import io
    buf = io.StringIO()
    write(*args, buf)
    return buf.getvalue()


def cmd_embed(args):
    outdir = _output_dir(args)
    t0 = time.perf_counter()
    graph = load_edge_list(args.input)
    cfg = _config_from(args)
    result, embedding = run_embedding(graph, cfg)
    summary = summarize(graph, config=cfg.echo(), solve_result=result,
                        embedding=embedding)
    elapsed = time.perf_counter() - t0
    outputs = [
        (outdir / "embedding.csv",
         _capture(lambda r, g, d: write_embedding_csv(r, g, d, kind=cfg.embedding_kind),
                  embedding, graph)),
        (outdir / "spectrum.csv", _capture(write_spectrum_csv, embedding)),
        (outdir / "trace.csv",
         _capture(lambda r, d: write_trace_csv(r, d, include_delta=args.trace_delta),
                  result)),
        (outdir / "summary.json", _capture(write_summary_json, summary)),
    ]
    _write_all(outputs)
    if args.timings:
        print(f"embed stage: {elapsed:.3f}s", file=sys.stderr)
    return 0


def cmd_partition(args):
    if not args.pipeline and not args.embedding:
        raise EdgeListError("partition needs --embedding CSV or --pipeline")
    outdir = _output_dir(args)
    graph = load_edge_list(args.input)
    cfg = _config_from(args, with_partition=True)
    truth = None
    if args.truth:
        truth = load_ground_truth(args.truth, graph)

    outputs = []
    t0 = time.perf_counter()
    if args.pipeline:
        result, embedding, part, summary = run_pipeline(graph, cfg, truth=truth)
        outputs += [
            (outdir / "embedding.csv",
             _capture(lambda r, g, d: write_embedding_csv(r, g, d, kind=cfg.embedding_kind),
                      embedding, graph)),
            (outdir / "spectrum.csv", _capture(write_spectrum_csv, embedding)),
            (outdir / "trace.csv",
             _capture(lambda r, d: write_trace_csv(r, d, include_delta=args.trace_delta),
                      result)),
        ]
    else:
        labels, rows = read_embedding_csv(args.embedding)
        expected = [str(lab) for lab in graph.node_labels]
        if labels != expected:
            raise EdgeListError("embedding/graph node mismatch: the embedding CSV "
                                "does not cover the graph's nodes in order")
        part = run_partition(graph, rows, cfg, rng=seed_tree(cfg)[1])
        nmi_value = None if truth is None else nmi_metric(part.labels, truth)
        summary = summarize(graph, config=cfg.echo(with_partition=True),
                            partition=part, nmi_value=nmi_value)
    elapsed = time.perf_counter() - t0
    outputs += [
        (outdir / "partition.csv", _capture(write_partition_csv, part, graph)),
        (outdir / "run_log.json", _capture(write_run_log, part)),
        (outdir / "summary.json", _capture(write_summary_json, summary)),
    ]
    _write_all(outputs)
    if args.timings:
        print(f"partition stage: {elapsed:.3f}s", file=sys.stderr)
    return 0


def cmd_plot(args):
    outdir = _output_dir(args)
    labels_order, coords = read_embedding_csv(args.embedding)
    cluster_labels = None
    if args.partition:
        text = Path(args.partition).read_text(encoding="utf-8").splitlines()
        if not text or text[0] != "node_label,cluster_id":
            raise EdgeListError("not a partition CSV: missing header")
        mapping = {}
        for line in text[1:]:
            if not line.strip():
                continue
            node, cluster = line.rsplit(",", 1)
            mapping[node] = int(cluster)
        try:
            cluster_labels = [mapping[lab] for lab in labels_order]
        except KeyError as exc:
            raise EdgeListError(f"partition CSV is missing node {exc.args[0]!r}") from None
    svg = render_scatter_svg(coords, cluster_labels)
    out = Path(args.output) if args.output else outdir / "embedding.svg"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg, encoding="utf-8")
    return 0


HANDLERS = {"embed": cmd_embed, "partition": cmd_partition, "plot": cmd_plot}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except np.linalg.LinAlgError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 1
    except (EdgeListError, FileNotFoundError, IsADirectoryError, PermissionError,
            json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, FloatingPointError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
