"""Print the ideal census 2^(2n) - 2^n + 1 with factorizations and the running prime count."""
import argparse
import time

from scycles.config import CensusConfig
from scycles.families import ideal_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=CensusConfig.n_max)
    ap.add_argument("--budget", type=int, default=CensusConfig.budget)
    ap.add_argument("--no-cross-check", action="store_true")
    a = ap.parse_args()
    cfg = CensusConfig(a.n_max, a.budget, not a.no_cross_check)

    t0 = time.perf_counter()
    rows = ideal_census(cfg.n_max, cfg.budget, cfg.cross_check)
    print(f"{'n':>3}  {'generator':>22}  {'primes':>6}  factorization")
    for r in rows:
        flag = "" if r.complete else "  (partial)"
        print(f"{r.n:>3}  {r.generator:>22}  {r.cumulative_primes:>6}  {r.factorization}{flag}")
    print(f"# {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
