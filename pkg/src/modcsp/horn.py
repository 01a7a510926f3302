"""HORN-SAT with a global modular constraint.

``find_minimal`` is unit propagation to the least model above a seed set.
``solve_rounds`` tries every seed of at most R variables and checks the
side constraint on each least model. For a prime-power modulus M, R = M-1
seeds are enough for completeness; R = n is always complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .arith import prime_power
from .core import Assignment, HornInstance, normalize_unit_weights
from .errors import AutoRoundsUnavailable, InvalidRounds, SizeLimit

AUTO = "auto"


@dataclass(frozen=True)
class HornSolveConfig:
    rounds: Union[int, str] = AUTO
    max_vars_after_normalize: int = 2_000_000


class Propagator:
    """Reusable least-model computation for one Horn clause set."""

    def __init__(self, inst: HornInstance):
        self.n = inst.n
        self.heads = [c.head for c in inst.clauses]
        self.sizes = [len(c.body) for c in inst.clauses]
        self.watch: list[list[int]] = [[] for _ in range(inst.n)]
        for i, c in enumerate(inst.clauses):
            for v in c.body:
                self.watch[v].append(i)
        self.forced = [c.head for c in inst.clauses if not c.body]
        self.forced += [v for v, b in inst.units if b == 1]
        self.zeros = [v for v, b in inst.units if b == 0]

    def closure(self, ones) -> bytearray | None:
        y = bytearray(self.n)
        missing = self.sizes[:]
        stack = []
        for v in ones:
            if not y[v]:
                y[v] = 1
                stack.append(v)
        for v in self.forced:
            if not y[v]:
                y[v] = 1
                stack.append(v)
        heads, watch = self.heads, self.watch
        while stack:
            v = stack.pop()
            for c in watch[v]:
                missing[c] -= 1
                if missing[c] == 0:
                    h = heads[c]
                    if not y[h]:
                        y[h] = 1
                        stack.append(h)
        for v in self.zeros:
            if y[v]:
                return None
        return y


def find_minimal(inst: HornInstance, x: Sequence[int]) -> Assignment | None:
    """Least assignment y >= x satisfying the clauses and units, or None."""
    if len(x) != inst.n:
        raise ValueError("seed length mismatch")
    y = Propagator(inst).closure(i for i, b in enumerate(x) if b)
    return None if y is None else tuple(y)


def colex_subsets(k: int, r: int) -> Iterator[tuple[int, ...]]:
    """r-subsets of range(k) in colexicographic order."""
    if r == 0:
        yield ()
        return
    for top in range(r - 1, k):
        for rest in colex_subsets(top, r - 1):
            yield rest + (top,)


def seeds_up_to(pool: Sequence[int], rounds: int) -> Iterator[tuple[int, ...]]:
    """Seeds of weight 0..rounds over ``pool``: by size, then colex."""
    for r in range(min(rounds, len(pool)) + 1):
        for idx in colex_subsets(len(pool), r):
            yield tuple(pool[i] for i in idx)


def minimal_closures(inst: HornInstance, rounds: int, seed_vars: Sequence[int] | None = None):
    """Yield (seed, least model) for every seed, skipping repeated models."""
    prop = Propagator(inst)
    pool = list(seed_vars) if seed_vars is not None else _weighted_vars(inst)
    seen = set()
    for seed in seeds_up_to(pool, rounds):
        y = prop.closure(seed)
        if y is None:
            continue
        key = bytes(y)
        if key in seen:
            continue
        seen.add(key)
        yield seed, y


def _weighted_vars(inst: HornInstance) -> list[int]:
    return [j for j, (_, w1) in enumerate(inst.side.weights) if w1 == (1,)]


def solve_rounds(inst: HornInstance, rounds: int, seed_vars: Sequence[int] | None = None) -> Assignment | None:
    """Seeded search over at most ``rounds`` variables forced to 1.

    ``inst`` must carry unit weights (see ``normalize_unit_weights``). Seeds
    default to the weight-1 variables; completeness only needs seeds drawn
    from the weighted part of a minimal solution. Targets are tried in
    sorted order.
    """
    if rounds < 0:
        raise InvalidRounds(f"rounds must be >= 0, got {rounds}")
    side = inst.side
    if not side.is_unit_zero_based():
        raise ValueError("solve_rounds expects a unit-weight single-modulus side constraint")
    (modulus,) = side.group.moduli
    targets = sorted(a for (a,) in side.allowed)
    weighted = _weighted_vars(inst)
    first_hit: dict[int, bytearray] = {}
    for _, y in minimal_closures(inst, rounds, seed_vars):
        r = sum(y[j] for j in weighted) % modulus
        if r in targets and r not in first_hit:
            first_hit[r] = y
            if r == targets[0]:
                break
    for a in targets:
        if a in first_hit:
            return tuple(first_hit[a])
    return None


def resolve_rounds(rounds: Union[int, str], modulus: int) -> int:
    if rounds == AUTO:
        if prime_power(modulus) is None:
            raise AutoRoundsUnavailable(
                f"modulus {modulus} is not a prime power; pass an explicit round count (R = n is complete)"
            )
        return modulus - 1
    if not isinstance(rounds, int) or rounds < 0:
        raise InvalidRounds(f"invalid round count {rounds!r}")
    return rounds


def solve(inst: HornInstance, cfg: HornSolveConfig = HornSolveConfig()) -> Assignment | None:
    """Flatten, normalize, pick the round count and run ``solve_rounds``."""
    from .reductions import flatten_horn

    if inst.side.group.rank > 1:
        pieces = [flatten_horn(inst, target=t) for t in inst.side.allowed]
    else:
        pieces = [inst]
    for piece in pieces:
        (modulus,) = piece.side.group.moduli
        rounds = resolve_rounds(cfg.rounds, modulus)
        norm = normalize_unit_weights(piece)
        if norm.n > cfg.max_vars_after_normalize:
            raise SizeLimit(f"{norm.n} variables after normalization exceeds cap")
        # copies share their original's closure, so seeding originals suffices
        seeds = [j for j in range(piece.n) if norm.side.weights[j][1] == (1,)]
        y = solve_rounds(norm, rounds, seeds)
        if y is not None:
            x = tuple(y[: inst.n])
            if not inst.is_solution(x):
                raise AssertionError("internal error: Horn solution failed verification")
            return x
    return None
