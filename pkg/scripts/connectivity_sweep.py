import argparse
import os
import sys

import pandas as pd

# Add src to path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.common.config.manager import ConfigManager
from src.netmodel.deployment import build_network, in_range_pairs, key_share_probability
from src.simharness.repository import CSVResultRepository


def sweep(base_config, ring_sizes, seeds):
    """
    Empirical secure-link ratio among in-range pairs versus the analytic key-share probability.
    """
    rows = []
    for k in ring_sizes:
        for seed in seeds:
            config = base_config.model_copy(update={"k1": k, "k2": max(k, base_config.k2), "seed": seed})
            graph = build_network(config)
            reachable = len(graph.sink_component()) - 1
            in_range = sum(1 for _ in in_range_pairs(graph))
            rows.append({
                "k1": k,
                "seed": seed,
                "links": len(graph.links),
                "secure_ratio": len(graph.links) / in_range if in_range else 0.0,
                "reachable": reachable,
                "reachable_ratio": reachable / (len(graph.nodes) - 1),
                "p_share_ll": key_share_probability(config.pool_size, k, k),
            })
    return pd.DataFrame(rows)


def main():
    parser = argparse.ArgumentParser(description="Connectivity versus ring size")
    parser.add_argument('--config', default=None, help="Scenario file")
    parser.add_argument('--rings', default="10,20,30,40,50", help="Comma separated k1 values")
    parser.add_argument('--seeds', type=int, default=5, help="Seeds per ring size")
    parser.add_argument('--out', default="reports/sweep", help="Output directory")
    args = parser.parse_args()

    base = ConfigManager().load_scenario(args.config)
    rings = [int(k) for k in args.rings.split(",")]
    df = sweep(base, rings, range(1, args.seeds + 1))
    summary = df.groupby("k1").agg(
        links=("links", "mean"),
        secure_ratio=("secure_ratio", "mean"),
        reachable_ratio=("reachable_ratio", "mean"),
        p_share_ll=("p_share_ll", "first"),
    ).reset_index()

    repository = CSVResultRepository(args.out)
    print(f"Saved {repository.save('connectivity_runs', df)}")
    print(f"Saved {repository.save('connectivity_summary', summary)}")
    print(summary.to_string(index=False))


if __name__ == "__main__":
    main()
