"""Cycles of rational maps of P^1(Q) with good reduction outside a finite set of primes."""
