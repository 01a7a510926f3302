"""LIN-2 with a global modular constraint.

The linear part is solved once by elimination into an affine subspace
b + span(v_1..v_d). The deterministic solver walks basis subsets of size at
most R; the randomized solver samples uniform points. Both are complete or
succeed with constant probability once R (resp. log2 T) reaches the largest
dimension of a subspace holding exactly one point of a given weight residue.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .arith import factorize, prime_power
from .core import Assignment, Lin2Instance, ModularSideConstraint, normalize_unit_weights
from .errors import InvalidModulus, InvalidRounds, InvalidTrials, SizeLimit
from .gf2 import in_span, int_to_bits, rank, solve_affine
from .horn import colex_subsets

AUTO = "auto"
DEFAULT_BOUND_FACTOR = 8
HADAMARD_CAP = 1 << 20


@dataclass(frozen=True)
class AffineSubspace:
    n: int
    offset: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(int(v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        limit = 1 << self.n
        if not (0 <= self.offset < limit) or any(not (0 < v < limit) for v in basis):
            raise ValueError("vector outside the ambient space")
        if rank(basis) != len(basis):
            raise ValueError("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, coeffs: int) -> int:
        x = self.offset
        i = 0
        while coeffs:
            if coeffs & 1:
                x ^= self.basis[i]
            coeffs >>= 1
            i += 1
        return x

    def points(self) -> Iterator[int]:
        """All points, in Gray-code order of the coefficient vector."""
        x = self.offset
        yield x
        for k in range(1, 1 << self.dim):
            x ^= self.basis[(k & -k).bit_length() - 1]
            yield x

    def contains(self, x: int) -> bool:
        return in_span(x ^ self.offset, self.basis)


def gaussian_basis(inst: Lin2Instance) -> AffineSubspace | None:
    rows = []
    for vs, rhs in inst.equations:
        mask = 0
        for v in vs:
            mask |= 1 << v
        rows.append((mask, rhs))
    res = solve_affine(inst.n, rows)
    if res is None:
        return None
    return AffineSubspace(inst.n, res[0], tuple(res[1]))


@dataclass(frozen=True)
class DimensionBound:
    modulus: int
    n: int
    bound: int
    provenance: str


def _floor_log_bound(n: int, mult: int) -> int:
    """floor(mult * log2(n + 1)) computed exactly."""
    return ((n + 1) ** mult).bit_length() - 1


def dimension_bound(n: int, modulus: int, factor: int = DEFAULT_BOUND_FACTOR) -> DimensionBound:
    """Upper bound on the largest affine subspace of GF(2)^n with a unique
    point of some weight residue mod ``modulus``.

    Cases: powers of two give M-1; odd prime powers give (M-1)log2(n+1);
    twice an odd prime power adds one to the odd case; 2^l times an odd
    prime power (l >= 2) gives factor*l*B'^(2^(l-1)-1) where B' is the odd
    case. ``factor`` stands in for an unspecified constant. Anything else,
    or any bound above n, falls back to n.
    """
    if modulus < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
    if n < 0:
        raise ValueError("n must be non-negative")
    f = factorize(modulus)
    two = f.pop(2, 0)
    odd = f
    if not odd:
        bound, case = modulus - 1, "power-of-two"
    elif len(odd) > 1:
        bound, case = n, "trivial"
    else:
        (p, k), = odd.items()
        odd_part = p**k
        odd_bound = _floor_log_bound(n, odd_part - 1)
        if two == 0:
            bound, case = odd_bound, "odd-prime-power"
        elif two == 1:
            bound, case = 1 + odd_bound, "twice-odd-prime-power"
        else:
            bound = factor * two * odd_bound ** (2 ** (two - 1) - 1)
            case = "power-of-two-times-odd-prime-power"
    if bound > n:
        return DimensionBound(modulus, n, n, "trivial")
    return DimensionBound(modulus, n, bound, case)


def _unit_side_parts(side: ModularSideConstraint) -> tuple[int, int, list[int]]:
    if not side.is_unit_zero_based():
        raise ValueError("expected a unit-weight single-modulus side constraint")
    (modulus,) = side.group.moduli
    mask = 0
    for j, (_, w1) in enumerate(side.weights):
        if w1 == (1,):
            mask |= 1 << j
    return modulus, mask, sorted(a for (a,) in side.allowed)


def _pick(hits: dict[int, int], targets: list[int]) -> int | None:
    for a in targets:
        if a in hits:
            return hits[a]
    return None


def resolve_rounds(space: AffineSubspace, modulus: int, rounds, factor: int = DEFAULT_BOUND_FACTOR) -> int:
    if rounds == AUTO:
        return min(dimension_bound(space.n, modulus, factor).bound, space.dim)
    if not isinstance(rounds, int) or rounds < 0 or rounds > space.dim:
        raise InvalidRounds(f"rounds must lie in [0, {space.dim}], got {rounds!r}")
    return rounds


def solve_deterministic(space: AffineSubspace, side: ModularSideConstraint, rounds=AUTO,
                        factor: int = DEFAULT_BOUND_FACTOR) -> Assignment | None:
    """Points b + sum_{i in S} v_i for |S| <= R, by size then colex."""
    modulus, mask, targets = _unit_side_parts(side)
    if side.n != space.n:
        raise ValueError("side constraint and subspace disagree on n")
    r_max = resolve_rounds(space, modulus, rounds, factor)
    basis = space.basis
    hits: dict[int, int] = {}
    for r in range(r_max + 1):
        for idx in colex_subsets(space.dim, r):
            x = space.offset
            for i in idx:
                x ^= basis[i]
            res = (x & mask).bit_count() % modulus
            if res in targets and res not in hits:
                hits[res] = x
                if res == targets[0]:
                    return int_to_bits(x, space.n)
    x = _pick(hits, targets)
    return None if x is None else int_to_bits(x, space.n)


def auto_trials(space: AffineSubspace, modulus: int, factor: int = DEFAULT_BOUND_FACTOR) -> int:
    b = dimension_bound(space.n, modulus, factor).bound
    return 4 * 2**b


def _sample_coefficients(rng: np.random.Generator, count: int, dim: int) -> list[int]:
    words = (dim + 31) // 32
    raw = rng.integers(0, 1 << 32, size=(count, max(words, 1)), dtype=np.uint64)
    out = []
    top_mask = (1 << dim) - 1
    for row in raw.tolist():
        c = 0
        for w in reversed(row):
            c = (c << 32) | w
        out.append(c & top_mask)
    return out


def solve_randomized(space: AffineSubspace, side: ModularSideConstraint, trials=AUTO, seed: int = 0,
                     factor: int = DEFAULT_BOUND_FACTOR) -> Assignment | None:
    """Sample ``trials`` uniform points; exhaustive once trials >= |V|.

    One-sided: a returned point always satisfies the side constraint.
    Sampling uses the counter-based Philox generator.
    """
    modulus, mask, targets = _unit_side_parts(side)
    if trials == AUTO:
        trials = auto_trials(space, modulus, factor)
    if not isinstance(trials, int) or trials < 1:
        raise InvalidTrials(f"trials must be a positive integer, got {trials!r}")
    if trials >= 2**space.dim:
        return solve_deterministic(space, side, space.dim)
    rng = np.random.Generator(np.random.Philox(seed))
    target_set = set(targets)
    for c in _sample_coefficients(rng, trials, space.dim):
        x = space.point(c)
        if (x & mask).bit_count() % modulus in target_set:
            return int_to_bits(x, space.n)
    return None


def hadamard_direct_sum(d: int, copies: int, cap: int = HADAMARD_CAP) -> AffineSubspace:
    """Direct sum of ``copies`` Hadamard codes of dimension d.

    Within one block, coordinate j of the codeword for message m is the
    parity of m & j, for j over all of GF(2)^d (including j = 0), so every
    nonzero codeword of a block has weight 2^(d-1).
    """
    if d < 1 or copies < 1:
        raise ValueError("d and copies must be positive")
    block = 1 << d
    n = copies * block
    if n > cap:
        raise SizeLimit(f"ambient dimension {n} exceeds cap {cap}")
    basis = []
    for c in range(copies):
        for i in range(d):
            v = 0
            for j in range(block):
                if (j >> i) & 1:
                    v |= 1 << (c * block + j)
            basis.append(v)
    return AffineSubspace(n, 0, tuple(basis))


def solve(inst: Lin2Instance, rounds=AUTO, randomized: bool = False, trials=AUTO, seed: int = 0,
          factor: int = DEFAULT_BOUND_FACTOR, max_vars: int = 2_000_000) -> Assignment | None:
    """Flatten, normalize, eliminate, then search the solution subspace."""
    from .reductions import flatten_lin2

    if inst.side.group.rank > 1:
        pieces = [flatten_lin2(inst, target=t) for t in inst.side.allowed]
    else:
        pieces = [inst]
    for piece in pieces:
        norm = normalize_unit_weights(piece)
        if norm.n > max_vars:
            raise SizeLimit(f"{norm.n} variables after normalization exceeds cap")
        space = gaussian_basis(norm)
        if space is None:
            return None
        if randomized:
            y = solve_randomized(space, norm.side, trials, seed, factor)
        else:
            r = rounds
            if isinstance(r, int) and r > space.dim:
                r = space.dim
            y = solve_deterministic(space, norm.side, r, factor)
        if y is not None:
            x = tuple(y[: inst.n])
            if not inst.is_solution(x):
                raise AssertionError("internal error: LIN-2 solution failed verification")
            return x
    return None
