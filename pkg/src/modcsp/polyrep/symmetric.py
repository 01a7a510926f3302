"""Lucas-theorem machinery: weight-residue indicators built from elementary
symmetric polynomials.

C(Ham(x), p^t) mod p is the t-th base-p digit of Ham(x), and
C(Ham(x), k) = s_k(x). So Ham(x) = a (mod p^l) exactly when
s_{p^t}(x) = a_t (mod p) for t < l, which Fermat turns into one polynomial.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Sequence

from ..arith import is_prime
from ..errors import NotPrime, SizeLimit
from .poly import ZERO_ONE, IntPoly

MONOMIAL_CAP = 2_000_000
SYMMETRIC_VARS_CAP = 16


def lucas_binom(a: int, b: int, p: int) -> int:
    """C(a, b) mod p as the product of digitwise binomials."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if a < 0 or b < 0:
        raise ValueError("arguments must be non-negative")
    result = 1
    while a or b:
        ai, bi = a % p, b % p
        if bi > ai:
            return 0
        result = result * comb(ai, bi) % p
        a //= p
        b //= p
    return result


def digits(a: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(a % p)
        a //= p
    return out


class SymPoly:
    """Symmetric multilinear polynomial sum_k c_k s_k(x) in n variables, mod p."""

    __slots__ = ("n", "p", "c")

    def __init__(self, n: int, p: int, coeffs: Sequence[int]):
        self.n, self.p = n, p
        c = [v % p for v in coeffs][: n + 1]
        self.c = c + [0] * (n + 1 - len(c))

    @classmethod
    def constant(cls, n: int, p: int, v: int) -> "SymPoly":
        return cls(n, p, [v])

    @classmethod
    def elementary(cls, n: int, p: int, k: int) -> "SymPoly":
        c = [0] * (n + 1)
        if k <= n:
            c[k] = 1
        return cls(n, p, c)

    def __add__(self, o: "SymPoly") -> "SymPoly":
        return SymPoly(self.n, self.p, [a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o: "SymPoly") -> "SymPoly":
        return SymPoly(self.n, self.p, [a - b for a, b in zip(self.c, o.c)])

    def __mul__(self, o: "SymPoly") -> "SymPoly":
        n, p = self.n, self.p
        out = [0] * (n + 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if not b:
                    continue
                # s_i s_j = sum_k C(k,i) C(i, i+j-k) s_k
                for k in range(max(i, j), min(i + j, n) + 1):
                    out[k] += a * b * comb(k, i) * comb(i, i + j - k)
        return SymPoly(n, p, out)

    def pow(self, e: int) -> "SymPoly":
        r = SymPoly.constant(self.n, self.p, 1)
        for _ in range(e):
            r = r * self
        return r

    @property
    def degree(self) -> int:
        return max((k for k, v in enumerate(self.c) if v), default=0)

    def value_at_weight(self, w: int) -> int:
        return sum(v * comb(w, k) for k, v in enumerate(self.c)) % self.p

    def expand(self, cap: int = MONOMIAL_CAP) -> IntPoly:
        size = sum(comb(self.n, k) for k, v in enumerate(self.c) if v)
        if size > cap:
            raise SizeLimit(f"expansion needs {size} monomials (cap {cap})")
        terms = {}
        for k, v in enumerate(self.c):
            if not v:
                continue
            for combo in itertools.combinations(range(self.n), k):
                m = 0
                for i in combo:
                    m |= 1 << i
                terms[m] = v
        return IntPoly(self.n, terms)


def _indicator_from_symmetric(esym, p: int, ell: int, a: int, power, mul, const):
    """1 - prod_t (1 - (a_t - s_{p^t})^(p-1)), generic over the algebra."""
    prod = const(1)
    for t, at in enumerate(digits(a, p, ell)):
        diff = const(at) - esym(p**t)
        prod = mul(prod, const(1) - power(diff, p - 1))
    return const(1) - prod


def residue_indicator_sym(p: int, ell: int, a: int, n: int) -> SymPoly:
    """Symmetric form of the indicator (0 when Ham = a mod p^ell, else 1)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if ell < 1 or not (0 <= a < p**ell):
        raise ValueError("need ell >= 1 and 0 <= a < p^ell")
    return _indicator_from_symmetric(
        lambda k: SymPoly.elementary(n, p, k), p, ell, a,
        lambda q, e: q.pow(e), lambda u, v: u * v, lambda v: SymPoly.constant(n, p, v),
    )


def residue_indicator_poly(p: int, ell: int, a: int, n: int, max_vars: int = SYMMETRIC_VARS_CAP,
                           cap: int = MONOMIAL_CAP) -> IntPoly:
    """Polynomial over {0,1}^n, coefficients in [0,p), of degree <= p^ell - 1,
    that is 0 mod p iff Ham(x) = a (mod p^ell) and 1 mod p otherwise."""
    if n > max_vars:
        raise SizeLimit(f"full expansion capped at n <= {max_vars}")
    return residue_indicator_sym(p, ell, a, n).expand(cap)


def weighted_elementary(weights: Sequence[int], kmax: int, p: int, cap: int = MONOMIAL_CAP) -> list[IntPoly]:
    """e_k of the multiset where x_i appears weights[i] times, k = 0..kmax, mod p."""
    n = len(weights)
    E = [IntPoly.constant(n, 1)] + [IntPoly.constant(n, 0) for _ in range(kmax)]
    for i, w in enumerate(weights):
        if not w:
            continue
        xi = IntPoly.variable(n, i)
        new = list(E)
        for j in range(1, kmax + 1):
            acc = IntPoly.constant(n, 0)
            for r in range(1, min(w, j) + 1):
                acc = acc + E[j - r].scale(comb(w, r))
            new[j] = (E[j] + acc.mul(xi, ZERO_ONE, p)).mod(p)
        E = new
        if sum(q.sparsity for q in E) > cap:
            raise SizeLimit("weighted symmetric expansion exceeds monomial cap")
    return E


def linear_to_prime_poly(target: int, weights: Sequence[int], p: int, k: int,
                         cap: int = MONOMIAL_CAP) -> IntPoly:
    """f over {0,1}^n with f = 0 mod p iff sum w_i x_i = target (mod p^k), else 1.

    Each x_i is read as weights[i] copies of itself and the weight-residue
    indicator is applied to the copies. Coefficients lie in [0, p).
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    q = p**k
    if not (0 <= target < q) or any(not (0 <= w < q) for w in weights):
        raise ValueError(f"weights and target must lie in [0, {q})")
    n = len(weights)
    E = weighted_elementary(weights, p ** (k - 1), p, cap)
    const = lambda v: IntPoly.constant(n, v % p)
    return _indicator_from_symmetric(
        lambda kk: E[kk], p, k, target,
        lambda poly, e: poly.pow(e, ZERO_ONE, p), lambda u, v: u.mul(v, ZERO_ONE, p), const,
    ).mod(p)
