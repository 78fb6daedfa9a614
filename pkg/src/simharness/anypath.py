"""
Round-count simulation for one anypath hop.

broadcast_group_key: one broadcast per round, forwarder i receives with probability 1 - f_i,
  done when any forwarder receives. Expectation 1 / (1 - prod f_i).
pairwise_per_link: a round succeeds only when every dedicated unicast succeeds in it.
  Expectation 1 / prod (1 - f_i).
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..common.logging import setup_logger, log_execution_time
from ..common.rng import substream
from .domain import Semantics, TrialConfig, TrialResult

logger = setup_logger(__name__)

CHUNK_SIZE = 65_536


def analytic_rounds(failures: Sequence[float], semantics: Semantics) -> float:
    if Semantics(semantics) == Semantics.BROADCAST:
        return 1.0 / (1.0 - math.prod(failures))
    return 1.0 / math.prod(1.0 - f for f in failures)


def draw_rounds(failures: Sequence[float], semantics: Semantics, size: int, rng: np.random.Generator) -> np.ndarray:
    """Rounds needed in each of `size` independent trials."""
    if Semantics(semantics) == Semantics.BROADCAST:
        # A forwarder with f == 1 never receives
        first = np.stack([rng.geometric(1.0 - f, size=size) for f in failures if f < 1.0])
        return first.min(axis=0)
    return rng.geometric(math.prod(1.0 - f for f in failures), size=size)


def chunk_sizes(trials: int, chunk_size: int = CHUNK_SIZE) -> List[int]:
    full, rest = divmod(trials, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def histogram_of(rounds: np.ndarray) -> Dict[int, int]:
    values, counts = np.unique(rounds, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def merge_histograms(histograms: Iterable[Dict[int, int]]) -> Dict[int, int]:
    total: Dict[int, int] = {}
    for h in histograms:
        for rounds, count in h.items():
            total[rounds] = total.get(rounds, 0) + count
    return dict(sorted(total.items()))


def summarize(histogram: Dict[int, int], trials: int, analytic: float) -> TrialResult:
    values = np.fromiter(histogram.keys(), dtype=np.float64)
    counts = np.fromiter(histogram.values(), dtype=np.float64)
    mean = float((values * counts).sum() / trials)
    if trials > 1:
        variance = float((counts * (values - mean) ** 2).sum() / (trials - 1))
    else:
        variance = 0.0
    return TrialResult(
        mean_rounds=mean, stderr=math.sqrt(variance / trials), histogram=histogram, trials=trials, analytic=analytic,
    )


@log_execution_time(logger, stage="anypath trials")
def simulate_anypath_rounds(cfg: TrialConfig, workers: int = 1, chunk_size: int = CHUNK_SIZE) -> TrialResult:
    """
    Trials run in fixed-size chunks, each on its own substream, so the histogram does not
    depend on the number of workers.
    """
    failures = cfg.failures
    sizes = chunk_sizes(cfg.trials, chunk_size)

    def run_chunk(index: int) -> Dict[int, int]:
        rng = substream(cfg.seed, "anypath", *cfg.labels, index)
        return histogram_of(draw_rounds(failures, cfg.semantics, sizes[index], rng))

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, range(len(sizes))))
    else:
        parts = [run_chunk(i) for i in range(len(sizes))]
    return summarize(merge_histograms(parts), cfg.trials, analytic_rounds(failures, cfg.semantics))
