import cProfile
import os
import pstats
from io import StringIO

from dotenv import load_dotenv

from quarrelkit import FM, Measure, Postulate, run_theorem_suite, scan_paradox

load_dotenv()


def profile_scans():
    n = int(os.getenv("QUARRELKIT_BENCH_N", "4"))

    print(f"Scanning standard postulate under FM quarrels (n={n})...")
    for measure in (Measure.PB, Measure.SS):
        violations = scan_paradox(Postulate.STANDARD, measure, FM, n)
        print(f"  {measure}: {len(violations)} violations")

    print(f"Running theorem suite (n_max={n})...")
    results = run_theorem_suite(n)
    verified = sum(r.verified for r in results)
    print(f"  {verified}/{len(results)} verified")

    print("✓ Complete")


if __name__ == "__main__":
    print("=" * 60)
    print("quarrelkit Scan Profiling")
    print("=" * 60)

    pr = cProfile.Profile()
    pr.enable()

    profile_scans()

    pr.disable()
    s = StringIO()
    ps = pstats.Stats(pr, stream=s).sort_stats("cumulative")
    ps.print_stats(50)

    print("\n" + "=" * 60)
    print("TOP TIME CONSUMERS")
    print("=" * 60)
    print(s.getvalue())
