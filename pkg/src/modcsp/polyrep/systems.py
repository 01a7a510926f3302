"""Set systems, subspaces and vector families equivalent to representations.

* An (M, r, d)-system is an intersection-closed family over [d] with no
  member of size = d (mod M) that covers every r-subset. Such systems and
  nonnegative NAND reps with covering number > r convert into each other.
* Affine subspaces of GF(2)^n map to polynomials over {-1,1}^d through
  n - 2 Ham(b + sum y_i u_i) = p((-1)^y).
* A sparse OR rep over {-1,1}^d yields a matching vector family of size 2^d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import EvenModulus, InvalidRep, InvalidSystem, NegativeCoefficients, NotUniquePoint, SizeLimit
from ..arith import inverse
from ..lin2 import AffineSubspace
from .cover import EXACT, covering_number
from .poly import PLUS_MINUS_ONE, IntPoly, indices_of
from .reps import is_nand_rep_01, is_or_rep_pm1

CHECK_LIMIT = 20
MVF_MAX_D = 12


@dataclass(frozen=True)
class MrdSystem:
    d: int
    sets: frozenset  # of int bitmasks over [d]
    modulus: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "sets", frozenset(int(s) for s in self.sets))
        bad = self.violations()
        if bad:
            raise InvalidSystem("; ".join(bad))

    def violations(self) -> list[str]:
        out = []
        members = self.sets
        if any(s >> self.d for s in members):
            out.append("member outside [d]")
        if not members:
            out.append("family is empty, so no subset is covered")
            return out
        ms = sorted(members)
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if a & b not in members:
                    out.append("not closed under intersection")
                    break
            else:
                continue
            break
        if any((s.bit_count() - self.d) % self.modulus == 0 for s in members):
            out.append("a member has size congruent to d")
        if not self._covers():
            out.append(f"some subset of size <= {self.r} is not covered")
        return out

    def maximal_sets(self) -> list[int]:
        return sorted(s for s in self.sets if not any(s != t and s | t == t for t in self.sets))

    def _covers(self) -> bool:
        k = min(self.r, self.d)
        maxi = self.maximal_sets()
        for combo in itertools.combinations(range(self.d), k):
            m = 0
            for i in combo:
                m |= 1 << i
            if not any(m | s == s for s in maxi):
                return False
        return True


def mrd_to_poly(system: MrdSystem) -> IntPoly:
    """sum over a in [d] of prod_{i : a not in F_i} x_i, minus d mod M.

    One variable per maximal set F_i. The value at x is the size of the
    intersection of the F_i with x_i = 0, minus d, so it vanishes mod M
    only at the all-ones point.
    """
    maxi = system.maximal_sets()
    n = len(maxi)
    terms: dict[int, int] = {}
    for a in range(system.d):
        m = 0
        for i, f in enumerate(maxi):
            if not (f >> a) & 1:
                m |= 1 << i
        terms[m] = terms.get(m, 0) + 1
    terms[0] = terms.get(0, 0) - system.d % system.modulus
    p = IntPoly(n, terms)
    if n <= CHECK_LIMIT:
        assert is_nand_rep_01(p, n, system.modulus)
    assert p.coeffnorm <= system.d + system.modulus - 1
    return p


def poly_to_mrd(p: IntPoly, modulus: int, r: int, max_vars: int = CHECK_LIMIT) -> MrdSystem:
    """Family {phi(x) : x != 1} where phi(x) lists the satisfied monomial copies.

    Each monomial contributes as many coordinates as its coefficient, so
    d = |p| and |phi(x)| = p(x).
    """
    if any(c < 0 for c in p.terms.values()):
        raise NegativeCoefficients("converse needs nonnegative coefficients")
    n = p.nvars
    if n > max_vars:
        raise SizeLimit(f"enumerating 2^{n} points exceeds cap")
    if not is_nand_rep_01(p, n, modulus):
        raise InvalidRep("polynomial is not a NAND rep")
    coords: list[int] = []
    for idx, c in p.monomials():
        m = 0
        for i in idx:
            m |= 1 << i
        coords.extend([m] * c)
    d = len(coords)
    full = (1 << n) - 1
    family = set()
    for x in range(full):
        s = 0
        for t, m in enumerate(coords):
            if m & x == m:
                s |= 1 << t
        family.add(s)
    return MrdSystem(d, frozenset(family), modulus, r)


def subspace_to_poly(n: int, offset: int, vectors) -> IntPoly:
    """p(z) = sum_t (-1)^{b_t} prod_{i : u_i[t] = 1} z_i over {-1,1}^d."""
    d = len(vectors)
    terms: dict[int, int] = {}
    for t in range(n):
        m = 0
        for i, u in enumerate(vectors):
            if (u >> t) & 1:
                m |= 1 << i
        sign = -1 if (offset >> t) & 1 else 1
        terms[m] = terms.get(m, 0) + sign
    return IntPoly(d, terms)


def poly_to_subspace(p: IntPoly) -> tuple[int, int, list[int]]:
    """(n, b, [u_1..u_d]) with n = |p| reproducing p via ``subspace_to_poly``."""
    offset = 0
    vectors = [0] * p.nvars
    t = 0
    for idx, c in p.monomials():
        for _ in range(abs(c)):
            if c < 0:
                offset |= 1 << t
            for i in idx:
                vectors[i] |= 1 << t
            t += 1
    return t, offset, vectors


def unique_point_subspace_to_or_poly(space: AffineSubspace, a: int, modulus: int) -> IntPoly:
    """OR_d rep from a subspace with exactly one point of weight = a mod M.

    With y* the coefficients of that point, f(z) = p(z * z*) - (n - 2a)
    equals 2(a - Ham(point for y xor y*)), zero mod M only at z = 1.
    """
    if modulus % 2 == 0:
        raise EvenModulus("needs an odd modulus")
    hits = []
    for y in range(1 << space.dim):
        if space.point(y).bit_count() % modulus == a % modulus:
            hits.append(y)
            if len(hits) > 1:
                break
    if len(hits) != 1:
        raise NotUniquePoint(f"subspace has {'no' if not hits else 'several'} points of weight {a} mod {modulus}")
    p = subspace_to_poly(space.n, space.offset, space.basis)
    f = (p.sign_flip(hits[0]) - (space.n - 2 * a)).mod(modulus)
    if space.dim <= CHECK_LIMIT:
        assert is_or_rep_pm1(f, space.dim, modulus)
    return f


def or_poly_to_subspace(p: IntPoly, modulus: int) -> tuple[AffineSubspace, int]:
    """Subspace of GF(2)^{n'} (n' <= M * sparsity) with a unique point of
    weight = n'/2 mod M, built from the coefficients reduced into [0, M)."""
    if modulus % 2 == 0:
        raise EvenModulus("needs an odd modulus")
    q = p.mod(modulus)
    d = q.nvars
    if d <= CHECK_LIMIT and not is_or_rep_pm1(q, d, modulus):
        raise InvalidRep("polynomial is not an OR rep")
    n, offset, vectors = poly_to_subspace(q)
    space = AffineSubspace(n, offset, tuple(vectors))
    target = n * inverse(2, modulus) % modulus
    return space, target


@dataclass(frozen=True)
class MatchingVectorFamily:
    modulus: int
    u: np.ndarray
    v: np.ndarray

    @property
    def size(self) -> int:
        return self.u.shape[0]

    @property
    def rank(self) -> int:
        return self.u.shape[1]

    def gram(self) -> np.ndarray:
        return (self.u @ self.v.T) % self.modulus

    def verify(self) -> bool:
        g = self.gram()
        diag_ok = not np.any(np.diag(g))
        off = np.count_nonzero(g) == self.size * (self.size - 1)
        return bool(diag_ok and off)


def mvf_from_or_poly(p: IntPoly, modulus: int) -> MatchingVectorFamily:
    """u_z = (a_t chi_t(z))_t and v_z = (chi_t(z))_t, so <u_z, v_z'> = p(z * z')."""
    d = p.nvars
    if d > MVF_MAX_D:
        raise SizeLimit(f"MVF construction capped at d <= {MVF_MAX_D}")
    q = p.mod(modulus)
    if not is_or_rep_pm1(q, d, modulus):
        raise InvalidRep("polynomial is not an OR rep")
    masks = np.array(sorted(q.terms), dtype=np.int64)
    coeffs = np.array([q.terms[m] for m in sorted(q.terms)], dtype=np.int64)
    points = np.arange(1 << d, dtype=np.int64)
    parity = np.bitwise_count(points[:, None] & masks[None, :]) & 1
    chi = np.where(parity == 1, modulus - 1, 1).astype(np.int64)
    u = (chi * coeffs[None, :]) % modulus
    fam = MatchingVectorFamily(modulus, u, chi % modulus)
    assert fam.verify(), "MVF failed verification"
    return fam
