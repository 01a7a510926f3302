"""Covering number: fewest monomials whose variables cover every variable in use."""

from __future__ import annotations

from enum import Enum

from ..errors import SizeLimit
from .poly import IntPoly

EXACT_VARS_CAP = 24
EXACT_SETS_CAP = 4096


class CoverMode(Enum):
    EXACT = "exact"
    GREEDY = "greedy"


EXACT = CoverMode.EXACT
GREEDY = CoverMode.GREEDY


def _greedy(universe: int, sets: list[int]) -> int:
    left, count = universe, 0
    while left:
        best = max(sets, key=lambda s: ((s & left).bit_count(), -s))
        left &= ~best
        count += 1
    return count


def _maximal(sets: list[int]) -> list[int]:
    uniq = sorted(set(sets), key=lambda s: -s.bit_count())
    keep: list[int] = []
    for s in uniq:
        if not any(s | k == k for k in keep):
            keep.append(s)
    return keep


def _exact(universe: int, sets: list[int]) -> int:
    sets = _maximal(sets)
    if len(sets) > EXACT_SETS_CAP:
        raise SizeLimit(f"{len(sets)} maximal monomials exceeds exact cap {EXACT_SETS_CAP}")
    width = max(s.bit_count() for s in sets)
    containing: dict[int, list[int]] = {}
    rest = universe
    while rest:
        low = rest & -rest
        rest ^= low
        containing[low] = sorted((s for s in sets if s & low), key=lambda s: -s.bit_count())
    best = _greedy(universe, sets)

    def search(left: int, used: int):
        nonlocal best
        if not left:
            best = min(best, used)
            return
        if used + -(-left.bit_count() // width) >= best:
            return
        # branch on the uncovered variable with the fewest options
        opts = None
        rest = left
        while rest:
            low = rest & -rest
            rest ^= low
            if opts is None or len(containing[low]) < len(opts):
                opts = containing[low]
        for s in opts:
            search(left & ~s, used + 1)

    search(universe, 0)
    return best


def covering_number(p: IntPoly, mode: CoverMode | str = EXACT) -> int:
    mode = CoverMode(mode) if isinstance(mode, str) else mode
    sets = [m for m in p.terms if m]
    universe = p.support()
    if not universe:
        return 0
    if mode is GREEDY:
        return _greedy(universe, sets)
    if universe.bit_count() > EXACT_VARS_CAP:
        raise SizeLimit(f"exact covering capped at {EXACT_VARS_CAP} variables")
    return _exact(universe, sets)
