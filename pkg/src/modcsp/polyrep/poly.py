"""Multilinear integer polynomials.

A monomial is an int bitmask over variable indices (bit i = variable i).
Products are multilinear in either basis: over {0,1} x_i^2 = x_i, so
monomials multiply by union; over {-1,1} z_i^2 = 1, so they multiply by
symmetric difference.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import BasisMismatch, SizeLimit

EXHAUSTIVE_CAP = 24


class Basis(Enum):
    ZERO_ONE = "01"
    PLUS_MINUS_ONE = "pm1"


ZERO_ONE = Basis.ZERO_ONE
PLUS_MINUS_ONE = Basis.PLUS_MINUS_ONE


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class IntPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        self.nvars = int(nvars)
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            m = mono if isinstance(mono, int) else mask_of(mono)
            if m >> self.nvars:
                raise ValueError(f"monomial uses a variable outside [0, {self.nvars})")
            acc[m] = acc.get(m, 0) + int(c)
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "IntPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, nvars: int, c: int) -> "IntPoly":
        return cls._raw(nvars, {0: int(c)} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "IntPoly":
        return cls(nvars, {1 << i: 1})

    # structure
    def monomials(self) -> list[tuple[tuple[int, ...], int]]:
        """(sorted index tuple, coefficient) in canonical order: degree, then indices."""
        out = [(indices_of(m), c) for m, c in self.terms.items()]
        out.sort(key=lambda t: (len(t[0]), t[0]))
        return out

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self.terms), default=0)

    @property
    def sparsity(self) -> int:
        return len(self.terms)

    @property
    def coeffnorm(self) -> int:
        return sum(abs(c) for c in self.terms.values())

    def support(self) -> int:
        """Mask of variables that appear in some monomial."""
        s = 0
        for m in self.terms:
            s |= m
        return s

    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def is_zero(self) -> bool:
        return not self.terms

    # arithmetic
    def _check(self, other: "IntPoly") -> int:
        return max(self.nvars, other.nvars)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return IntPoly._raw(self._check(other), out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: int) -> "IntPoly":
        if k == 0:
            return IntPoly._raw(self.nvars, {})
        return IntPoly._raw(self.nvars, {m: c * k for m, c in self.terms.items()})

    def mul(self, other: "IntPoly", basis: Basis = ZERO_ONE, modulus: int | None = None) -> "IntPoly":
        combine = (lambda a, b: a | b) if basis is ZERO_ONE else (lambda a, b: a ^ b)
        out: dict[int, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = combine(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        if modulus is not None:
            out = {m: c % modulus for m, c in out.items()}
        return IntPoly._raw(self._check(other), {m: c for m, c in out.items() if c})

    def pow(self, k: int, basis: Basis = ZERO_ONE, modulus: int | None = None) -> "IntPoly":
        result = IntPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, basis, modulus)
            k >>= 1
            if k:
                base = base.mul(base, basis, modulus)
        return result

    def mod(self, modulus: int) -> "IntPoly":
        """Coefficients reduced into [0, modulus); zero terms dropped."""
        return IntPoly._raw(self.nvars, {m: c % modulus for m, c in self.terms.items() if c % modulus})

    def with_nvars(self, nvars: int) -> "IntPoly":
        if self.support() >> nvars:
            raise ValueError("cannot shrink below the variables in use")
        return IntPoly._raw(nvars, dict(self.terms))

    def sign_flip(self, mask: int) -> "IntPoly":
        """p(z * z*) over {-1,1} where z* is -1 exactly on ``mask``."""
        return IntPoly._raw(
            self.nvars, {m: (-c if (m & mask).bit_count() & 1 else c) for m, c in self.terms.items()}
        )

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "IntPoly(0)"
        parts = []
        for idx, c in self.monomials():
            mono = "*".join(f"x{i + 1}" for i in idx)
            parts.append(f"{c}" if not idx else (f"{c}*{mono}" if c != 1 else mono))
        return "IntPoly(" + " + ".join(parts) + ")"

    # evaluation
    def evaluate(self, point: Sequence[int], basis: Basis = ZERO_ONE, modulus: int | None = None) -> int:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        allowed = (0, 1) if basis is ZERO_ONE else (-1, 1)
        if any(v not in allowed for v in point):
            raise BasisMismatch(f"point entries must lie in {allowed}")
        if basis is ZERO_ONE:
            ones = mask_of(i for i, v in enumerate(point) if v == 1)
            total = sum(c for m, c in self.terms.items() if m & ones == m)
        else:
            neg = mask_of(i for i, v in enumerate(point) if v == -1)
            total = sum(-c if (m & neg).bit_count() & 1 else c for m, c in self.terms.items())
        return total % modulus if modulus is not None else total

    def table(self, d: int, basis: Basis, modulus: int) -> np.ndarray:
        """Values mod ``modulus`` at all 2^d points of the cube.

        Entry k is the point whose coordinate j is "set" when bit j of k is 1:
        x_j = 1 over {0,1}, z_j = -1 over {-1,1}.
        """
        if d > EXHAUSTIVE_CAP:
            raise SizeLimit(f"exhaustive evaluation capped at d <= {EXHAUSTIVE_CAP}")
        if self.support() >> d:
            raise ValueError("polynomial uses variables beyond the first d")
        arr = np.zeros(1 << d, dtype=np.int64)
        for m, c in self.terms.items():
            arr[m] = (arr[m] + c) % modulus
        for j in range(d):
            view = arr.reshape(-1, 2, 1 << j)
            lo = view[:, 0, :].copy()
            hi = view[:, 1, :]
            if basis is ZERO_ONE:
                view[:, 1, :] = (hi + lo) % modulus
            else:
                view[:, 0, :] = (lo + hi) % modulus
                view[:, 1, :] = (lo - hi) % modulus
        return arr


def eval_poly(p: IntPoly, point: Sequence[int], basis: Basis = ZERO_ONE, modulus: int | None = None) -> int:
    return p.evaluate(point, basis, modulus)


def compose(outer: IntPoly, inner: Sequence[IntPoly], basis: Basis, modulus: int | None = None,
            nvars: int | None = None) -> IntPoly:
    """outer(inner_1, ..., inner_k) reduced multilinearly in ``basis``."""
    if len(inner) < outer.nvars:
        raise ValueError("need one inner polynomial per outer variable")
    nv = nvars if nvars is not None else max((q.nvars for q in inner), default=0)
    cache: dict[int, IntPoly] = {0: IntPoly.constant(nv, 1)}

    def product(mask: int) -> IntPoly:
        if mask in cache:
            return cache[mask]
        low = mask & -mask
        rest = product(mask ^ low)
        val = rest.mul(inner[low.bit_length() - 1], basis, modulus)
        cache[mask] = val
        return val

    total = IntPoly.constant(nv, 0)
    for m in sorted(outer.terms, key=lambda k: (k.bit_count(), k)):
        total = total + product(m).scale(outer.terms[m])
        if modulus is not None:
            total = total.mod(modulus)
    return IntPoly._raw(nv, total.terms)
