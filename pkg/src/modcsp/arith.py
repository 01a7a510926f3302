"""Small number-theory helpers for the constant-size moduli used throughout."""

from __future__ import annotations

from math import prod


def factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if m < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_prime(m: int) -> bool:
    return m >= 2 and factorize(m) == {m: 1}


def prime_power(m: int) -> tuple[int, int] | None:
    """Return (p, k) with m = p**k, or None when m is not a prime power."""
    if m < 2:
        return None
    f = factorize(m)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def radical(m: int) -> int:
    return prod(factorize(m))


def crt(residues: list[int], moduli: list[int]) -> int:
    """Combine residues modulo pairwise-coprime moduli; result in [0, prod)."""
    x, mod = 0, 1
    for r, m in zip(residues, moduli):
        # solve x + mod*t = r (mod m)
        t = ((r - x) * pow(mod, -1, m)) % m
        x += mod * t
        mod *= m
    return x % mod


def inverse(a: int, m: int) -> int:
    return pow(a % m, -1, m)
