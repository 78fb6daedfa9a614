from typing import Sequence

import pandas as pd

from ..common.logging import setup_logger
from .anypath import simulate_anypath_rounds
from .domain import Semantics, TrialConfig

logger = setup_logger(__name__)

COLUMNS = ["semantics", "n", "f", "analytic", "empirical", "stderr", "trials", "seed", "within_3sigma"]


def expected_transmission_table(
    n_values: Sequence[int], f_values: Sequence[float], trials: int, seed: int, workers: int = 1
) -> pd.DataFrame:
    """
    Analytic versus empirical expected rounds for every (semantics, n, f) cell.

    Both semantics of a cell share one substream.
    """
    rows = []
    for semantics in Semantics:
        for n in n_values:
            for fi, f in enumerate(f_values):
                cfg = TrialConfig(n=n, f=f, semantics=semantics, trials=trials, seed=seed, labels=("cell", n, fi))
                result = simulate_anypath_rounds(cfg, workers=workers)
                rows.append({
                    "semantics": semantics.value,
                    "n": n,
                    "f": f,
                    "analytic": result.analytic,
                    "empirical": result.mean_rounds,
                    "stderr": result.stderr,
                    "trials": trials,
                    "seed": seed,
                    "within_3sigma": result.within(3.0),
                })
    df = pd.DataFrame(rows, columns=COLUMNS)
    misses = int((~df["within_3sigma"]).sum())
    if misses:
        logger.warning(f"{misses} cells outside 3 standard errors")
    return df


def broadcast_vs_pairwise(df: pd.DataFrame) -> pd.DataFrame:
    """One row per (n, f) with both semantics side by side."""
    wide = df.pivot_table(index=["n", "f"], columns="semantics", values=["analytic", "empirical"])
    wide.columns = [f"{value}_{sem}" for value, sem in wide.columns]
    wide = wide.reset_index()
    b, p = Semantics.BROADCAST.value, Semantics.PAIRWISE.value
    wide["analytic_ok"] = wide[f"analytic_{b}"] <= wide[f"analytic_{p}"]
    wide["empirical_ok"] = wide[f"empirical_{b}"] <= wide[f"empirical_{p}"]
    return wide
