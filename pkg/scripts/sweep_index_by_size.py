#!/usr/bin/env python3
"""Median cluster-quality index versus population size.

Runs the clustering pipeline over a seed batch for each population and
prints (and optionally saves) the median index per size — the denser the
area gets, the lower the separation between range-limited clusters.

Usage:
    python scripts/sweep_index_by_size.py --sizes 25 50 300 --seeds 20
"""

import argparse
import statistics

from clusterbench import (
    ScenarioConfig,
    UndefinedIndexError,
    dunn_index,
    expac_cluster,
    generate_scenario,
)


def median_index(node_count: int, seeds: int, base_seed: int) -> float | None:
    indices = []
    for offset in range(seeds):
        cfg = ScenarioConfig(node_count=node_count, seed=base_seed + offset)
        nodes = generate_scenario(cfg)
        clusters = expac_cluster(nodes, cfg.tx_range)
        positions = {n.node_id: n.pos for n in nodes}
        try:
            indices.append(dunn_index(clusters, positions))
        except UndefinedIndexError:
            continue
    return statistics.median(indices) if indices else None


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[25, 50, 300])
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--base-seed", type=int, default=0)
    parser.add_argument("--out", help="optional plot-data file (node_count, median)")
    args = parser.parse_args()

    rows = []
    for size in args.sizes:
        median = median_index(size, args.seeds, args.base_seed)
        rows.append((size, median))
        shown = f"{median:.4f}" if median is not None else "undefined"
        print(f"node_count={size:>4}  median_index={shown}")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("# node_count median_dunn_index\n")
            for size, median in rows:
                if median is not None:
                    fh.write(f"{size} {median}\n")
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
