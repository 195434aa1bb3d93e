"""Run configurations for the scripts in ``scripts/``."""
from __future__ import annotations

from dataclasses import dataclass, field

from .sarith import DEFAULT_RHO_BUDGET


@dataclass(frozen=True)
class CensusConfig:
    n_max: int = 16
    budget: int = DEFAULT_RHO_BUDGET
    cross_check: bool = True


@dataclass(frozen=True)
class TupleCapConfig:
    bound: int = 20
    primes: tuple[int, ...] = ()
    size: int = 4


@dataclass(frozen=True)
class UnitTableConfig:
    primes: tuple[int, ...] = (2, 3)
    box: int = 8
    coeffs: list[tuple[int, ...]] = field(default_factory=lambda: [(1, 1), (1, -1), (2, 1), (3, 1)])
