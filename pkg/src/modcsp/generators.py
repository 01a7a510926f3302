"""Random instance generators shared by the CLI, the self-test and the tests."""

from __future__ import annotations

import random
from typing import Sequence

from .core import GroupSpec, HornInstance, Lin2Instance, ModularSideConstraint, TwoSatInstance


def random_side(n: int, moduli: Sequence[int], rng: random.Random, n_targets: int = 1,
                unit: bool = False) -> ModularSideConstraint:
    g = GroupSpec(tuple(moduli))
    if unit:
        weights = tuple((g.zero(), g.reduce([1] * g.rank)) for _ in range(n))
    else:
        weights = tuple(
            (tuple(rng.randrange(m) for m in g.moduli), tuple(rng.randrange(m) for m in g.moduli))
            for _ in range(n)
        )
    elems = list(g.elements())
    k = max(1, min(n_targets, len(elems)))
    return ModularSideConstraint(g, weights, tuple(rng.sample(elems, k)))


def random_horn(n: int, m: int, moduli: Sequence[int], rng: random.Random, n_targets: int = 1,
                unit: bool = False, max_body: int = 3, unit_prob: float = 0.15) -> HornInstance:
    clauses, units = [], []
    for _ in range(m):
        if rng.random() < unit_prob:
            units.append((rng.randrange(n), rng.randrange(2)))
            continue
        head = rng.randrange(n)
        others = [v for v in range(n) if v != head]
        body = rng.sample(others, rng.randint(1, min(max_body, len(others)))) if others else []
        clauses.append((head, frozenset(body)))
    return HornInstance(n, tuple(clauses), tuple(units), random_side(n, moduli, rng, n_targets, unit))


def random_lin2(n: int, m: int, moduli: Sequence[int], rng: random.Random, n_targets: int = 1,
                unit: bool = False, max_width: int = 4) -> Lin2Instance:
    eqs = []
    for _ in range(m):
        vs = rng.sample(range(n), rng.randint(1, min(max_width, n)))
        eqs.append((frozenset(vs), rng.randrange(2)))
    return Lin2Instance(n, tuple(eqs), random_side(n, moduli, rng, n_targets, unit))


def random_twosat(n: int, m: int, moduli: Sequence[int], rng: random.Random, n_targets: int = 1,
                  unit: bool = False) -> TwoSatInstance:
    clauses = []
    for _ in range(m):
        a = (rng.randrange(n), rng.random() < 0.5)
        b = (rng.randrange(n), rng.random() < 0.5)
        clauses.append((a, b))
    return TwoSatInstance(n, tuple(clauses), random_side(n, moduli, rng, n_targets, unit))


GENERATORS = {"horn": random_horn, "lin2": random_lin2, "2sat": random_twosat}
