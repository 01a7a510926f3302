"""Exhaustive ground truth: brute-force solving, subspace weight counts and
the exact largest unique-point dimension D(n, M) for tiny n."""

from __future__ import annotations

import itertools

import numpy as np

from .core import Assignment, HornInstance, Lin2Instance, TwoSatInstance
from .errors import SizeLimit
from .lin2 import AffineSubspace

BRUTE_CAP = 24
COUNT_CAP = 24
SEARCH_CAP = 6
CHUNK = 1 << 16


def _local_ok(inst, x: np.ndarray) -> np.ndarray:
    ok = np.ones(x.shape[0], dtype=bool)
    if isinstance(inst, HornInstance):
        for v, b in inst.units:
            ok &= x[:, v] == b
        for h, body in inst.clauses:
            fired = np.ones(x.shape[0], dtype=bool)
            for v in body:
                fired &= x[:, v] == 1
            ok &= ~fired | (x[:, h] == 1)
    elif isinstance(inst, Lin2Instance):
        for vs, rhs in inst.equations:
            par = np.zeros(x.shape[0], dtype=np.uint8)
            for v in vs:
                par ^= x[:, v]
            ok &= par == rhs
    elif isinstance(inst, TwoSatInstance):
        for a, b in inst.clauses:
            ok &= (x[:, a.var] == int(a.positive)) | (x[:, b.var] == int(b.positive))
    else:
        raise TypeError(f"unsupported instance type {type(inst).__name__}")
    return ok


def _side_ok(side, x: np.ndarray) -> np.ndarray:
    mods = side.group.moduli
    code = np.zeros(x.shape[0], dtype=np.int64)
    for c, mod in enumerate(mods):
        val = np.zeros(x.shape[0], dtype=np.int64)
        for j, (w0, w1) in enumerate(side.weights):
            val += np.where(x[:, j] == 1, w1[c], w0[c])
        code = code * mod + val % mod
    allowed = []
    for s in side.allowed:
        k = 0
        for c, mod in enumerate(mods):
            k = k * mod + s[c]
        allowed.append(k)
    return np.isin(code, np.array(allowed, dtype=np.int64))


def brute_solve(inst, cap: int = BRUTE_CAP) -> Assignment | None:
    """Lexicographically least solution (x_1 most significant) or None."""
    n = inst.n
    if n > cap:
        raise SizeLimit(f"brute force capped at n <= {cap}")
    total = 1 << n
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, CHUNK):
        ks = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        x = ((ks[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        ok = _local_ok(inst, x) & _side_ok(inst.side, x)
        hit = np.flatnonzero(ok)
        if hit.size:
            return tuple(int(b) for b in x[hit[0]])
    return None


def subspace_points(space: AffineSubspace) -> np.ndarray:
    """All points as uint64 (requires n <= 64)."""
    pts = np.array([space.offset], dtype=np.uint64)
    for v in space.basis:
        pts = np.concatenate([pts, pts ^ np.uint64(v)])
    return pts


def count_solutions(space: AffineSubspace, a: int, modulus: int) -> int:
    """|{x in space : Ham(x) = a mod M}|."""
    if space.dim > COUNT_CAP:
        raise SizeLimit(f"counting capped at dimension <= {COUNT_CAP}")
    if space.n <= 64:
        w = np.bitwise_count(subspace_points(space)).astype(np.int64)
        return int(np.count_nonzero(w % modulus == a % modulus))
    # Gray-code walk for wide ambient spaces
    x = space.offset
    count = int(x.bit_count() % modulus == a % modulus)
    for k in range(1, 1 << space.dim):
        x ^= space.basis[(k & -k).bit_length() - 1]
        count += x.bit_count() % modulus == a % modulus
    return count


def rref_subspaces(n: int, k: int):
    """Every k-dimensional subspace of GF(2)^n once, as a reduced basis
    (pivot = lowest set bit, pivot columns cleared in the other rows)."""
    for pivots in itertools.combinations(range(n), k):
        pivot_mask = sum(1 << p for p in pivots)
        free_per_row = [[j for j in range(p + 1, n) if not (pivot_mask >> j) & 1] for p in pivots]
        for fills in itertools.product(*(range(1 << len(f)) for f in free_per_row)):
            rows = []
            for p, free, fill in zip(pivots, free_per_row, fills):
                v = 1 << p
                for i, j in enumerate(free):
                    if (fill >> i) & 1:
                        v |= 1 << j
                rows.append(v)
            yield pivot_mask, rows


def search_max_unique_dimension(n: int, modulus: int) -> int:
    """Exact D(n, M): the largest dimension of an affine subspace of
    GF(2)^n with exactly one point of weight = a (mod M) for some a."""
    if n > SEARCH_CAP:
        raise SizeLimit(f"exhaustive subspace search capped at n <= {SEARCH_CAP}")
    if n < 0:
        raise ValueError("n must be non-negative")
    for k in range(n, -1, -1):
        for pivot_mask, rows in rref_subspaces(n, k):
            span = np.array([0], dtype=np.int64)
            for v in rows:
                span = np.concatenate([span, span ^ v])
            offsets = np.array([o for o in range(1 << n) if not o & pivot_mask], dtype=np.int64)
            w = np.bitwise_count(offsets[:, None] ^ span[None, :]) % modulus
            for a in range(modulus):
                if np.any(np.count_nonzero(w == a, axis=1) == 1):
                    return k
    return 0
