"""
Memory footprint of exhaustive monotonic game enumeration and k-monotonicity
reports, the two structures that grow fastest with the player count.
"""

import gc
import time
import tracemalloc
from dataclasses import dataclass

import psutil

from quarrelkit import enumerate_monotonic_games, min_k_monotonicity
from quarrelkit.game_core import MAX_ENUMERATION_N


@dataclass
class MemorySnapshot:
    """Memory metrics for one measured block."""

    label: str
    elapsed_s: float
    rss_mb: float
    peak_trace_mb: float


class MemoryProfiler:
    """Context manager recording RSS growth and traced peak memory."""

    def __init__(self, label: str):
        self.label = label
        self.process = psutil.Process()
        self.snapshot: MemorySnapshot | None = None

    def __enter__(self):
        gc.collect()
        tracemalloc.start()
        self.start_time = time.perf_counter()
        self.start_rss = self.process.memory_info().rss / 1024 / 1024
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        elapsed = time.perf_counter() - self.start_time
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        rss = self.process.memory_info().rss / 1024 / 1024
        self.snapshot = MemorySnapshot(self.label, elapsed, rss - self.start_rss, peak / 1024 / 1024)
        return False


def main():
    snapshots = []
    for n in range(1, MAX_ENUMERATION_N + 1):
        with MemoryProfiler(f"enumerate n={n}") as profiler:
            games = list(enumerate_monotonic_games(n))
        snapshots.append(profiler.snapshot)

        with MemoryProfiler(f"min_k n={n} ({len(games)} games)") as profiler:
            for g in games:
                min_k_monotonicity(g)
        snapshots.append(profiler.snapshot)

    print(f"{'block':<32} {'time (s)':>10} {'rss +MB':>10} {'peak MB':>10}")
    for snap in snapshots:
        print(f"{snap.label:<32} {snap.elapsed_s:>10.3f} {snap.rss_mb:>10.2f} {snap.peak_trace_mb:>10.2f}")


if __name__ == "__main__":
    main()
