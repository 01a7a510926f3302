"""GF(2) linear algebra on Python ints used as packed bit vectors.

Bit j of an int is coordinate j. Rows carry an optional right-hand-side bit.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def popcount(v: int) -> int:
    return v.bit_count()


def bits_to_int(bits: Sequence[int]) -> int:
    v = 0
    for j, b in enumerate(bits):
        if b:
            v |= 1 << j
    return v


def int_to_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> j) & 1 for j in range(n))


def _reduce(mask: int, rhs: int, pivots: dict[int, tuple[int, int]]) -> tuple[int, int]:
    while mask:
        low = mask & -mask
        row = pivots.get(low)
        if row is None:
            break
        mask ^= row[0]
        rhs ^= row[1]
    return mask, rhs


def echelon(rows: Iterable[tuple[int, int]]) -> dict[int, tuple[int, int]] | None:
    """Fully reduced row echelon form keyed by pivot bit (lowest set bit).

    Returns None when the system is inconsistent (0 = 1 derivable).
    """
    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        mask, rhs = _reduce(mask, rhs, pivots)
        if mask == 0:
            if rhs:
                return None
            continue
        low = mask & -mask
        for p, (m2, r2) in pivots.items():
            if mask & p:
                mask ^= m2
                rhs ^= r2
        # clear the new pivot from existing rows to keep the form reduced
        for p, (m2, r2) in list(pivots.items()):
            if m2 & low:
                pivots[p] = (m2 ^ mask, r2 ^ rhs)
        pivots[low] = (mask, rhs)
    return pivots


def rank(vectors: Iterable[int]) -> int:
    piv = echelon((v, 0) for v in vectors)
    return len(piv)


def solve_affine(n: int, rows: Iterable[tuple[int, int]]) -> tuple[int, list[int]] | None:
    """Solution set of the system as (particular solution, nullspace basis)."""
    piv = echelon(rows)
    if piv is None:
        return None
    offset = 0
    pivot_mask = 0
    for low, (mask, rhs) in piv.items():
        pivot_mask |= low
        if rhs:
            offset |= low
    basis = []
    for f in range(n):
        fb = 1 << f
        if pivot_mask & fb:
            continue
        v = fb
        for low, (mask, _) in piv.items():
            if mask & fb:
                v |= low
        basis.append(v)
    return offset, basis


def orthogonal_complement(n: int, vectors: Iterable[int]) -> list[int]:
    """Basis of {x : <x, u> = 0 for every u}."""
    res = solve_affine(n, ((u, 0) for u in vectors))
    assert res is not None
    return res[1]


def in_span(v: int, vectors: Sequence[int]) -> bool:
    piv = echelon((u, 0) for u in vectors)
    return _reduce(v, 0, piv)[0] == 0
