import random

import pytest
from hypothesis import given, settings, strategies as st

from modcsp import horn, oracle
from modcsp.core import HornInstance, ModularSideConstraint, normalize_unit_weights
from modcsp.errors import AutoRoundsUnavailable, InvalidRounds
from modcsp.generators import random_horn

from test_acceptance import horn_sweep_disagreements


def H(n, clauses=(), units=(), modulus=2, targets=0):
    cl = tuple((h, frozenset(b)) for h, b in clauses)
    return HornInstance(n, cl, tuple(units), ModularSideConstraint.unit(n, modulus, targets))


def test_find_minimal_examples():
    inst = H(3, [(2, [0, 1])])
    assert horn.find_minimal(inst, (1, 1, 0)) == (1, 1, 1)
    assert horn.find_minimal(H(3), (0, 0, 0)) == (0, 0, 0)
    assert horn.find_minimal(H(1, units=[(0, 0)]), (1,)) is None


def test_solve_rounds_examples():
    x = horn.solve_rounds(H(3, modulus=3, targets=2), 2)
    assert sum(x) == 2
    assert horn.solve_rounds(H(2, units=[(0, 1), (1, 1)], targets=0), 1) == (1, 1)
    assert horn.solve_rounds(H(1, units=[(0, 1)], targets=0), 1) is None
    with pytest.raises(InvalidRounds):
        horn.solve_rounds(H(1), -1)


def test_auto_rounds():
    assert horn.resolve_rounds(horn.AUTO, 4) == 3
    assert horn.resolve_rounds(horn.AUTO, 9) == 8
    with pytest.raises(AutoRoundsUnavailable):
        horn.resolve_rounds(horn.AUTO, 6)
    with pytest.raises(AutoRoundsUnavailable):
        horn.solve(H(2, modulus=6, targets=1))
    assert horn.solve(H(2, modulus=6, targets=1), horn.HornSolveConfig(rounds=2)) is not None


def test_colex_order():
    assert list(horn.colex_subsets(3, 2)) == [(0, 1), (0, 2), (1, 2)]
    assert list(horn.seeds_up_to([5, 7], 1)) == [(), (5,), (7,)]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_find_minimal_is_least_model_above(seed):
    rng = random.Random(seed)
    inst = random_horn(rng.randint(1, 7), rng.randint(0, 8), [2], rng)
    x = tuple(rng.randint(0, 1) for _ in range(inst.n))
    y = horn.find_minimal(inst, x)
    above = [z for z in _cube(inst.n) if all(z[i] >= x[i] for i in range(inst.n)) and inst.satisfies_local(z)]
    if y is None:
        assert not above
        return
    assert inst.satisfies_local(y) and all(y[i] >= x[i] for i in range(inst.n))
    assert all(all(y[i] <= z[i] for i in range(inst.n)) for z in above)
    # monotone: more forced ones never shrink the closure
    x2 = tuple(max(a, rng.randint(0, 1)) for a in x)
    y2 = horn.find_minimal(inst, x2)
    assert y2 is None or all(y[i] <= y2[i] for i in range(inst.n))


def _cube(n):
    return [tuple((v >> (n - 1 - i)) & 1 for i in range(n)) for v in range(1 << n)]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_solve_matches_oracle_prime_power(seed):
    rng = random.Random(seed)
    modulus = rng.choice([2, 3, 4, 5, 7, 8, 9])
    inst = random_horn(rng.randint(1, 8), rng.randint(0, 10), [modulus], rng, rng.randint(1, 3))
    x = horn.solve(inst)
    assert (x is None) == (oracle.brute_solve(inst) is None)
    if x is not None:
        assert inst.is_solution(x)


def test_solve_product_group():
    rng = random.Random(3)
    for _ in range(60):
        inst = random_horn(rng.randint(1, 4), rng.randint(0, 4), [2, 3], rng, 2)
        x = horn.solve(inst, horn.HornSolveConfig(rounds=10**6))
        assert (x is None) == (oracle.brute_solve(inst) is None)


def test_too_few_rounds_is_detected():
    # negative control for the exhaustive sweep: one round fewer must miss residues
    bad, checks, _, _ = horn_sweep_disagreements(rounds_offset=-1, moduli=(3, 4))
    assert bad > 0


def test_m6_counterexample_needs_more_rounds():
    # without clauses each closure is its own seed, so weight 3 needs three seeds
    inst = H(3, modulus=6, targets=3)
    assert horn.solve_rounds(normalize_unit_weights(inst), 2) is None
    assert sum(horn.solve_rounds(normalize_unit_weights(inst), 3)) == 3
