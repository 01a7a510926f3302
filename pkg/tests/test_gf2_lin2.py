import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from modcsp import gf2, lin2, oracle
from modcsp.core import Lin2Instance, ModularSideConstraint
from modcsp.errors import InvalidRounds, InvalidTrials, SizeLimit
from modcsp.generators import random_lin2
from modcsp.lin2 import AffineSubspace, dimension_bound


def L(n, eqs, modulus=2, targets=0):
    return Lin2Instance(n, tuple((frozenset(v), r) for v, r in eqs), ModularSideConstraint.unit(n, modulus, targets))


def test_echelon_and_solve():
    assert gf2.rank([0b11, 0b01, 0b10]) == 2
    assert gf2.solve_affine(1, [(0b1, 0), (0b1, 1)]) is None
    off, basis = gf2.solve_affine(2, [(0b11, 0)])
    assert off == 0 and basis == [0b11]
    assert gf2.in_span(0b110, [0b010, 0b100]) and not gf2.in_span(0b001, [0b010])
    assert gf2.int_to_bits(0b011, 3) == (1, 1, 0) and gf2.bits_to_int((1, 1, 0)) == 0b011


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.lists(st.tuples(st.integers(1, 255), st.integers(0, 1)), max_size=8))
def test_solve_affine_matches_enumeration(n, rows):
    rows = [(m & ((1 << n) - 1), r) for m, r in rows]
    sols = {x for x in range(1 << n) if all(bin(x & m).count("1") % 2 == r for m, r in rows)}
    res = gf2.solve_affine(n, rows)
    if res is None:
        assert not sols
        return
    off, basis = res
    space = AffineSubspace(n, off, tuple(basis))
    assert set(space.points()) == sols


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10), st.lists(st.integers(1, 1023), max_size=6))
def test_orthogonal_complement(n, vecs):
    vecs = [v & ((1 << n) - 1) for v in vecs if v & ((1 << n) - 1)]
    comp = gf2.orthogonal_complement(n, vecs)
    assert gf2.rank(comp) + gf2.rank(vecs) == n
    assert all(bin(a & b).count("1") % 2 == 0 for a in comp for b in vecs)


def test_gaussian_basis_examples():
    s = lin2.gaussian_basis(L(2, []))
    assert s.dim == 2
    s = lin2.gaussian_basis(L(2, [([0, 1], 0)]))
    assert s.offset == 0 and s.basis == (0b11,)
    assert lin2.gaussian_basis(L(1, [([0], 0), ([0], 1)])) is None


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_gaussian_points_are_exactly_the_solutions(seed):
    rng = random.Random(seed)
    inst = random_lin2(rng.randint(1, 8), rng.randint(0, 6), [2], rng, unit=True)
    space = lin2.gaussian_basis(inst)
    sols = {gf2.bits_to_int(x) for x in itertools.product((0, 1), repeat=inst.n) if inst.satisfies_local(x)}
    if space is None:
        assert not sols
    else:
        pts = list(space.points())
        assert len(pts) == len(set(pts)) == 2**space.dim and set(pts) == sols


def test_dimension_bound_values():
    # closed forms: power of two gives M-1, odd prime power gives (M-1) log2(n+1)
    assert dimension_bound(100, 4) == lin2.DimensionBound(4, 100, 3, "power-of-two")
    assert dimension_bound(7, 3).bound == 6 and dimension_bound(7, 3).provenance == "odd-prime-power"
    assert dimension_bound(10, 15).bound == 10 and dimension_bound(10, 15).provenance == "trivial"
    # [DERIVED] floor(1 + 2 log2 51) = 12
    assert dimension_bound(50, 6) == lin2.DimensionBound(6, 50, 12, "twice-odd-prime-power")
    assert dimension_bound(3, 12).bound == 3


def test_deterministic_examples():
    full = AffineSubspace(2, 0, (0b01, 0b10))
    x = lin2.solve_deterministic(full, ModularSideConstraint.unit(2, 2, 1), 1)
    assert sum(x) % 2 == 1
    diag = AffineSubspace(2, 0, (0b11,))
    assert lin2.solve_deterministic(diag, ModularSideConstraint.unit(2, 3, 1)) is None
    s = AffineSubspace(3, 0b101, (0b011,))
    assert lin2.solve_deterministic(s, ModularSideConstraint.unit(3, 5, 2), 0) == (1, 0, 1)
    with pytest.raises(InvalidRounds):
        lin2.solve_deterministic(s, ModularSideConstraint.unit(3, 5, 2), 2)


def test_randomized_examples():
    space = AffineSubspace(2, 0, (0b11,))
    side = ModularSideConstraint.unit(2, 3, 1)
    assert all(lin2.solve_randomized(space, side, 3, seed=s) is None for s in range(5))
    with pytest.raises(InvalidTrials):
        lin2.solve_randomized(space, side, 0)
    full = AffineSubspace(4, 0, (1, 2, 4, 8))
    assert lin2.solve_randomized(full, ModularSideConstraint.unit(4, 5, 4), 16) == (1, 1, 1, 1)
    big = AffineSubspace(20, 0, tuple(1 << i for i in range(20)))
    a = lin2.solve_randomized(big, ModularSideConstraint.unit(20, 3, 1), 50, seed=9)
    assert a == lin2.solve_randomized(big, ModularSideConstraint.unit(20, 3, 1), 50, seed=9)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_hadamard_weights(d):
    h = lin2.hadamard_direct_sum(d, 1)
    pts = list(h.points())
    assert h.n == 2**d and len(set(pts)) == 2**d
    assert sorted(p.bit_count() for p in pts) == [0] + [2 ** (d - 1)] * (2**d - 1)


def test_hadamard_examples():
    assert set(lin2.hadamard_direct_sum(1, 1).points()) == {0b00, 0b10}
    assert set(lin2.hadamard_direct_sum(2, 1).points()) == {0b0000, 0b1010, 0b1100, 0b0110}
    two = lin2.hadamard_direct_sum(2, 2)
    assert two.n == 8 and two.dim == 4
    with pytest.raises(SizeLimit):
        lin2.hadamard_direct_sum(12, 300)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_solve_matches_oracle(seed):
    rng = random.Random(seed)
    mods = rng.choice([[2], [3], [4], [5], [6], [8], [9], [12], [3, 5], [2, 3]])
    inst = random_lin2(rng.randint(1, 7), rng.randint(0, 6), mods, rng, rng.randint(1, 2))
    x = lin2.solve(inst)
    assert (x is None) == (oracle.brute_solve(inst) is None)
    if x is not None:
        assert inst.is_solution(x)
