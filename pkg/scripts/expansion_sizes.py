"""Term counts and timings of the stable construction over the corpus.

Shows how large phi(v), phi(w), phi(p) grow and how long each route to the
Jacobian takes.  The expanded route is skipped above --limit terms.
"""

import argparse
import time

from venlab.stable import EXPANDED_JACOBIAN_LIMIT, construct
from venlab.suites import STABLE_CORPUS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=EXPANDED_JACOBIAN_LIMIT)
    args = ap.parse_args()
    header = f"{'Q':<28} {'build s':>8} {'|phi(v)|':>9} {'|phi(w)|':>9} {'|phi(p)|':>9} {'J pres s':>9} {'J exp s':>9}"
    print(header)
    print("-" * len(header))
    for q in STABLE_CORPUS:
        t0 = time.perf_counter()
        cons = construct(q)
        build = time.perf_counter() - t0
        t0 = time.perf_counter()
        assert cons.jacobian("presentation") == 1
        pres = time.perf_counter() - t0
        if len(cons.fv) < args.limit:
            t0 = time.perf_counter()
            assert cons.jacobian("expanded") == 1
            expanded = f"{time.perf_counter() - t0:9.2f}"
        else:
            expanded = f"{'skipped':>9}"
        print(f"{q.label():<28} {build:8.2f} {len(cons.fv):9d} {len(cons.fw):9d} "
              f"{len(cons.fp):9d} {pres:9.2f} {expanded}")


if __name__ == "__main__":
    main()
