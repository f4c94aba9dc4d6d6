"""End-to-end embed / embed-and-partition runs behind a single config.

A run derives all randomness from one seed through a spawned generator
tree (numpy PCG64): child 0 drives the solver initialization, child 1 the
partition restarts. Repeating a config therefore reproduces every stage
bit for bit, and the partition stage stays reproducible whether or not it
shares a process with the embedding stage.

Embedding dimension d0 and centroid count k are clamped to the node count,
since column sampling and centroid seeding draw without replacement.
"""

from dataclasses import dataclass

import numpy as np

from .embedding import svd_embedding
from .metrics import nmi as nmi_metric
from .metrics import summarize
from .operators import ShiftedOperator, make_descriptor
from .partition import best_of_restarts
from .solver import SolverConfig, solve


@dataclass
class PipelineConfig:
    descriptor: str = "modularity"
    d0: int = 30
    tol: float = 1e-8
    max_iter: int = 10000
    momentum: bool = True
    momentum_variant: str = "main"
    shift_epsilon: float = 0.0
    epsilon: float = 0.01
    seed: int = 0
    k: int = 100
    restarts: int = 5
    max_rounds: int = 200
    jobs: int = None
    embedding_kind: str = "spherical"

    def echo(self, with_partition=False):
        """Config section for the run summary."""
        out = {
            "descriptor": self.descriptor,
            "d0": int(self.d0),
            "tol": float(self.tol),
            "max_iter": int(self.max_iter),
            "momentum": bool(self.momentum),
            "shift_epsilon": float(self.shift_epsilon),
            "epsilon": float(self.epsilon),
            "seed": int(self.seed),
            "embedding_kind": self.embedding_kind,
        }
        if self.momentum:
            out["momentum_variant"] = self.momentum_variant
        if with_partition:
            out.update(k=int(self.k), restarts=int(self.restarts),
                       max_rounds=int(self.max_rounds))
        return out


def seed_tree(cfg):
    """(solver rng, partition rng) spawned from the run seed."""
    return np.random.default_rng(cfg.seed).spawn(2)


def run_embedding(graph, cfg, rng=None):
    """Solve for the embedding of a graph; returns (SolveResult, EmbeddingResult)."""
    if rng is None:
        rng = seed_tree(cfg)[0]
    d0_eff = min(cfg.d0, graph.n)
    op = make_descriptor(graph, cfg.descriptor)
    shifted = ShiftedOperator(op, cfg.shift_epsilon)
    solver_cfg = SolverConfig(d0=d0_eff, tol=cfg.tol, max_iter=cfg.max_iter,
                              momentum=cfg.momentum,
                              momentum_variant=cfg.momentum_variant,
                              seed=cfg.seed, shift_epsilon=cfg.shift_epsilon)
    result = solve(shifted, solver_cfg, rng=rng)
    embedding = svd_embedding(result.x, epsilon=cfg.epsilon,
                              provenance={"config": cfg.echo(),
                                          "graph_hash": graph.content_hash()})
    return result, embedding


def run_partition(graph, rows, cfg, rng=None):
    """Vector-partition embedding rows; returns the best-restart Partition.

    k is clamped to n - 1: at k = n every node seeds its own centroid and
    the synchronous update never leaves the all-singletons state, so the
    large default k would strand small graphs there.
    """
    if rng is None:
        rng = seed_tree(cfg)[1]
    k_eff = max(1, min(cfg.k, graph.n - 1))
    return best_of_restarts(rows, graph, k_eff, cfg.restarts, rng,
                            max_rounds=cfg.max_rounds, jobs=cfg.jobs)


def run_pipeline(graph, cfg, truth=None):
    """Embed then partition; returns (SolveResult, EmbeddingResult, Partition, RunSummary)."""
    solver_rng, partition_rng = seed_tree(cfg)
    result, embedding = run_embedding(graph, cfg, rng=solver_rng)
    partition = run_partition(graph, embedding.spherical(), cfg, rng=partition_rng)
    nmi_value = None if truth is None else nmi_metric(partition.labels, truth)
    summary = summarize(graph, config=cfg.echo(with_partition=True),
                        solve_result=result, embedding=embedding,
                        partition=partition, nmi_value=nmi_value)
    return result, embedding, partition, summary
