"""Community recovery on planted partitions as the mixing rate grows.

Three equal blocks on 300 nodes, p_in fixed at 0.2. Raising p_out blurs the
block structure; the table below tracks how the recovered NMI and the
effective embedding dimension respond. Near-zero mixing gives exact
recovery with d_eff matching the number of blocks minus one or so; by the
time p_out approaches p_in the embedding collapses and NMI falls off.
"""

from spherembed import (PipelineConfig, PlantedPartitionSpec,
                        generate_planted_partition, nmi, run_pipeline)

print(f"{'p_out':>7} {'NMI':>7} {'d_eff':>5} {'n_c':>4} {'Q':>7}")
for p_out in (0.01, 0.03, 0.06, 0.10, 0.15):
    spec = PlantedPartitionSpec(n=300, k=3, p_in=0.2, p_out=p_out, seed=7)
    graph, truth = generate_planted_partition(spec)
    cfg = PipelineConfig(d0=10, k=30, restarts=5, seed=7)
    _, embedding, part, _ = run_pipeline(graph, cfg)
    score = nmi(part.labels, truth)
    print(f"{p_out:>7.2f} {score:>7.3f} {embedding.d_eff:>5} "
          f"{part.n_clusters:>4} {part.modularity:>7.3f}")

print("\nexact recovery is expected while p_out stays well below p_in")
