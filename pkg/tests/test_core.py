import random

import pytest
from hypothesis import given, settings, strategies as st

from modcsp import oracle
from modcsp.core import (
    GroupSpec,
    HornInstance,
    Lin2Instance,
    ModularSideConstraint,
    ResidueVector,
    eval_side,
    normalize_unit_weights,
    side_from_linear,
    zero_based,
)
from modcsp.errors import GroupMismatch, LengthMismatch, MultiComponentGroup, SemanticError
from modcsp.generators import random_horn, random_lin2

groups = st.lists(st.integers(2, 9), min_size=1, max_size=3).map(lambda ms: GroupSpec(tuple(ms)))


def elements(g):
    return st.tuples(*(st.integers(0, m - 1) for m in g.moduli)).map(lambda r: ResidueVector(g, r))


def test_group_examples():
    z3 = GroupSpec.cyclic(3)
    assert (ResidueVector(z3, (1,)) + ResidueVector(z3, (2,))).residues == (0,)
    g = GroupSpec((2, 3))
    assert (ResidueVector(g, (1, 2)) + ResidueVector(g, (1, 2))).residues == (0, 1)
    a = ResidueVector(g, (1, 1))
    assert a + ResidueVector.zero(g) == a
    assert g.order == 6 and len(list(g.elements())) == 6


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        ResidueVector(GroupSpec.cyclic(2), (1,)) + ResidueVector(GroupSpec.cyclic(3), (1,))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_group_laws(data):
    g = data.draw(groups)
    a, b, c = (data.draw(elements(g)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + (-a) == ResidueVector.zero(g)
    assert (a - b) + b == a


def test_side_examples():
    assert eval_side(ModularSideConstraint.unit(2, 2, 0), (1, 1)) == (ResidueVector(GroupSpec.cyclic(2), (0,)), True)
    val, ok = eval_side(ModularSideConstraint.unit(3, 3, 2), (1, 1, 0))
    assert val.residues == (2,) and ok
    side = ModularSideConstraint(GroupSpec.cyclic(2), ((1, 0),), (0,))
    val, ok = eval_side(side, (0,))
    assert val.residues == (1,) and not ok
    with pytest.raises(LengthMismatch):
        side.value((0, 1))
    with pytest.raises(SemanticError):
        ModularSideConstraint(GroupSpec.cyclic(2), ((0, 1),), ())


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_eval_side_is_sum_of_weights(data):
    g = data.draw(groups)
    n = data.draw(st.integers(0, 6))
    ws = [(data.draw(elements(g)), data.draw(elements(g))) for _ in range(n)]
    side = ModularSideConstraint(g, tuple(ws), (g.zero(),))
    x = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    total = ResidueVector.zero(g)
    for (w0, w1), b in zip(ws, x):
        total = total + (w1 if b else w0)
    assert eval_side(side, x)[0] == total
    # shifting to zero-based weights keeps the constraint
    wz, allowed = zero_based(side)
    shifted = sum(w[0] * b for w, b in zip(wz, x)) if g.rank == 1 else None
    if g.rank == 1:
        assert (shifted % g.moduli[0] in {a[0] for a in allowed}) == eval_side(side, x)[1]


def test_normalize_examples():
    inst = HornInstance(1, (), (), side_from_linear(3, [2], [1]))
    norm = normalize_unit_weights(inst)
    assert norm.n == 2 and len(norm.clauses) == 2 and norm.side.is_unit_zero_based()
    zero = normalize_unit_weights(HornInstance(2, (), (), side_from_linear(3, [0, 1], [1])))
    assert zero.n == 2 and zero.side.weights[0] == ((0,), (0,))
    lin = Lin2Instance(2, ((frozenset([0, 1]), 0),), side_from_linear(3, [1, 2], [1]))
    nl = normalize_unit_weights(lin)
    assert nl.n == 3
    assert (oracle.brute_solve(lin) is None) == (oracle.brute_solve(nl) is None)
    with pytest.raises(MultiComponentGroup):
        normalize_unit_weights(HornInstance(1, (), (), ModularSideConstraint(GroupSpec((2, 3)), (((0, 0), (1, 1)),), ((1, 1),))))


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["horn", "lin2"]))
def test_normalize_equisatisfiable(seed, kind):
    rng = random.Random(seed)
    gen = random_horn if kind == "horn" else random_lin2
    inst = gen(rng.randint(1, 5), rng.randint(0, 5), [rng.choice([2, 3, 4, 5])], rng, rng.randint(1, 2))
    norm = normalize_unit_weights(inst)
    a, b = oracle.brute_solve(inst), oracle.brute_solve(norm)
    assert (a is None) == (b is None)
    if b is not None:
        assert inst.is_solution(b[: inst.n])
