"""Search for k-tuples of points of bounded height with good reduction outside S.

Pairs with unit ideal form a graph; good tuples are its cliques.  With S empty the
largest clique has size 3, since P^1(F_2) has only three points.
"""
import argparse
import itertools
import math

from scycles.config import TupleCapConfig
from scycles.projline import ProjPoint, ideal_between
from scycles.sarith import SPrimeSet


def points_of_height(bound):
    for x in range(-bound, bound + 1):
        for y in range(0, bound + 1):
            if math.gcd(x, y) == 1 and (y > 0 or x == 1):
                yield ProjPoint(x, y)


def cliques(adj, k, partial=(), candidates=None):
    if len(partial) == k:
        yield partial
        return
    pool = candidates if candidates is not None else set(adj)
    for P in sorted(pool, key=ProjPoint.sort_key):
        if partial and P.sort_key() <= partial[-1].sort_key():
            continue
        yield from cliques(adj, k, partial + (P,), pool & adj[P])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=TupleCapConfig.bound)
    ap.add_argument("--s", default="", help="comma-separated primes")
    ap.add_argument("--size", type=int, default=TupleCapConfig.size)
    ap.add_argument("--show", type=int, default=5)
    a = ap.parse_args()
    cfg = TupleCapConfig(a.bound, tuple(int(p) for p in a.s.split(",") if p), a.size)
    S = SPrimeSet(cfg.primes)

    pts = list(points_of_height(cfg.bound))
    adj = {P: set() for P in pts}
    for P, Q in itertools.combinations(pts, 2):
        if ideal_between(P, Q, S).generator == 1:
            adj[P].add(Q)
            adj[Q].add(P)
    found = 0
    for c in cliques(adj, cfg.size):
        if found < a.show:
            print(" ".join(map(str, c)))
        found += 1
    print(f"# {len(pts)} points, S={S}: {found} good {cfg.size}-tuples (as sets)")


if __name__ == "__main__":
    main()
