"""NAND representations over {0,1} and OR representations over {-1,1}, mod M.

A NAND_d rep vanishes mod M exactly at the all-ones point of {0,1}^d; an
OR_d rep vanishes mod M exactly at the all-ones point of {-1,1}^d.
"""

from __future__ import annotations

import itertools
from math import ceil, prod

import numpy as np

from ..arith import crt, factorize, inverse, prime_power, radical
from ..errors import EvenModulus, PrimePowerModulus, SizeLimit
from .poly import EXHAUSTIVE_CAP, PLUS_MINUS_ONE, ZERO_ONE, Basis, IntPoly, compose
from .symmetric import SymPoly, residue_indicator_sym

SELF_CHECK_LIMIT = 20


def _is_rep(p: IntPoly, d: int, modulus: int, basis: Basis) -> bool:
    if d > EXHAUSTIVE_CAP:
        raise SizeLimit(f"exhaustive check capped at d <= {EXHAUSTIVE_CAP}")
    if p.support() >> d:
        return False
    vals = p.table(d, basis, modulus)
    full = (1 << d) - 1 if basis is ZERO_ONE else 0
    if vals[full] != 0:
        return False
    nonzero = np.count_nonzero(vals)
    return nonzero == (1 << d) - 1


def is_nand_rep_01(p: IntPoly, d: int, modulus: int) -> bool:
    return _is_rep(p, d, modulus, ZERO_ONE)


def is_or_rep_pm1(p: IntPoly, d: int, modulus: int) -> bool:
    return _is_rep(p, d, modulus, PLUS_MINUS_ONE)


def _parts(d: int, modulus: int) -> list[range]:
    size = ceil(d / (modulus - 1))
    return [range(s, min(s + size, d)) for s in range(0, d, size)]


def _self_check(p: IntPoly, d: int, modulus: int, basis: Basis) -> IntPoly:
    if d <= SELF_CHECK_LIMIT:
        assert _is_rep(p, d, modulus, basis), "construction failed its own checker"
    return p


def nand_trivial(d: int, modulus: int) -> IntPoly:
    """Sum over at most M-1 blocks of 1 - prod(block); degree ceil(d/(M-1))."""
    if d < 1 or modulus < 2:
        raise ValueError("need d >= 1 and M >= 2")
    terms: dict[int, int] = {}
    for part in _parts(d, modulus):
        m = 0
        for i in part:
            m |= 1 << i
        terms[0] = terms.get(0, 0) + 1
        terms[m] = terms.get(m, 0) - 1
    return _self_check(IntPoly(d, terms), d, modulus, ZERO_ONE)


def or_trivial_pm1(d: int, modulus: int) -> IntPoly:
    """Sum over blocks of 1 - prod_{i in block} (1+z_i)/2, coefficients in [0, M)."""
    if modulus % 2 == 0:
        raise EvenModulus("OR reps over {-1,1} need an odd modulus")
    if d < 1 or modulus < 3:
        raise ValueError("need d >= 1 and odd M >= 3")
    inv2 = inverse(2, modulus)
    terms: dict[int, int] = {}
    for part in _parts(d, modulus):
        idx = list(part)
        scale = pow(inv2, len(idx), modulus)
        terms[0] = terms.get(0, 0) + 1
        for r in range(len(idx) + 1):
            for sub in itertools.combinations(idx, r):
                m = 0
                for i in sub:
                    m |= 1 << i
                terms[m] = terms.get(m, 0) - scale
    return _self_check(IntPoly(d, terms).mod(modulus), d, modulus, PLUS_MINUS_ONE)


def bbr_exponents(d: int, modulus: int) -> list[tuple[int, int]]:
    """Exponent l_i per prime p_i of M with prod p_i^l_i > d, minimizing
    max(p_i^l_i - 1) and then the product."""
    primes = sorted(factorize(modulus))
    limit = 2 * d * max(primes)
    ranges = []
    for p in primes:
        top = 0
        while p ** (top + 1) <= limit:
            top += 1
        ranges.append(range(top + 1))
    best = None
    for ells in itertools.product(*ranges):
        size = prod(p**e for p, e in zip(primes, ells))
        if size <= d or size > limit:
            continue
        key = (max(p**e - 1 for p, e in zip(primes, ells)), size)
        if best is None or key < best[0]:
            best = (key, ells)
    assert best is not None
    return list(zip(primes, best[1]))


def bbr_degree(d: int, modulus: int) -> int:
    return max(p**e - 1 for p, e in bbr_exponents(d, modulus))


def nand_bbr(d: int, modulus: int, cap: int = 2_000_000) -> IntPoly:
    """NAND_d mod M for M with at least two distinct primes.

    Per prime p_i, a symmetric indicator that is 0 mod p_i iff
    Ham(x) = d (mod p_i^l_i); since prod p_i^l_i > d these all vanish only
    at Ham(x) = d. The indicators are merged coefficientwise by CRT modulo
    rad(M) and scaled by M / rad(M) so the zero set is the same mod M.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    if prime_power(modulus) is not None:
        raise PrimePowerModulus(f"{modulus} is a prime power; use nand_trivial")
    exps = bbr_exponents(d, modulus)
    per_prime = []
    for p, ell in exps:
        if ell == 0:
            per_prime.append([0] * (d + 1))
        else:
            per_prime.append(residue_indicator_sym(p, ell, d % p**ell, d).c)
    primes = [p for p, _ in exps]
    rad = radical(modulus)
    lift = modulus // rad
    coeffs = [crt([c[k] for c in per_prime], primes) * lift % modulus for k in range(d + 1)]
    sym = SymPoly(d, modulus, coeffs)
    return _self_check(sym.expand(cap), d, modulus, ZERO_ONE)


def best_nand_rep(d: int, modulus: int) -> IntPoly:
    """Lower-degree of the block construction and (when applicable) BBR."""
    if prime_power(modulus) is not None or bbr_degree(d, modulus) >= ceil(d / (modulus - 1)):
        return nand_trivial(d, modulus)
    return nand_bbr(d, modulus)


def nand_to_or_pm1(p: IntPoly, d: int, modulus: int) -> IntPoly:
    """q(z) = p((1+z)/2) mod M, turning a NAND_d rep into an OR_d rep (M odd)."""
    if modulus % 2 == 0:
        raise EvenModulus("basis change needs 2 invertible")
    inv2 = inverse(2, modulus)
    lin = [IntPoly(d, {0: inv2, 1 << i: inv2}) for i in range(d)]
    return compose(p, lin, PLUS_MINUS_ONE, modulus, nvars=d).mod(modulus)


def crt_combine(polys: list[IntPoly], moduli: list[int]) -> IntPoly:
    """Polynomial congruent to polys[i] modulo moduli[i] coefficientwise."""
    nv = max(p.nvars for p in polys)
    keys = set()
    for p in polys:
        keys.update(p.terms)
    terms = {m: crt([p.terms.get(m, 0) % q for p, q in zip(polys, moduli)], moduli) for m in keys}
    return IntPoly(nv, terms)


def from_table(values, d: int, basis: Basis, modulus: int) -> IntPoly:
    """The unique multilinear polynomial mod M with the given cube values.

    Indexing matches ``IntPoly.table``. Over {-1,1} the modulus must be odd.
    """
    arr = np.asarray(values, dtype=np.int64) % modulus
    arr = arr.copy()
    for j in range(d):
        view = arr.reshape(-1, 2, 1 << j)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        if basis is ZERO_ONE:
            view[:, 1, :] = (hi - lo) % modulus
        else:
            view[:, 0, :] = (lo + hi) % modulus
            view[:, 1, :] = (lo - hi) % modulus
    if basis is PLUS_MINUS_ONE:
        arr = arr * pow(inverse(2, modulus), d, modulus) % modulus
    return IntPoly(d, {m: int(c) for m, c in enumerate(arr.tolist()) if c})


def random_rep(d: int, modulus: int, basis: Basis, rng: np.random.Generator) -> IntPoly:
    """Uniformly random rep: random nonzero values off the all-ones point."""
    vals = rng.integers(1, modulus, size=1 << d)
    vals[(1 << d) - 1 if basis is ZERO_ONE else 0] = 0
    return from_table(vals, d, basis, modulus)
