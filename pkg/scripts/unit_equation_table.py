"""Tabulate solutions of a x + b y = 1 in S-units inside an exponent box."""
import argparse

from scycles.config import UnitTableConfig
from scycles.sarith import SPrimeSet, evertse_bound, solve_unit_eq


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", default=",".join(map(str, UnitTableConfig.primes)))
    ap.add_argument("--box", type=int, default=UnitTableConfig.box)
    a = ap.parse_args()
    cfg = UnitTableConfig(tuple(int(p) for p in a.s.split(",") if p), a.box)
    S = SPrimeSet(cfg.primes)
    bound = evertse_bound(S.s)
    for coeffs in cfg.coeffs:
        sols = solve_unit_eq(coeffs, S, cfg.box)
        print(f"{coeffs}: {len(sols)} solutions (bound {bound})")
        for s in sols:
            print("   ", ", ".join(str(v) for v in s.values))


if __name__ == "__main__":
    main()
