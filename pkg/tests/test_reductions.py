import random

import pytest

from modcsp import oracle
from modcsp.core import GroupSpec, HornInstance, Lin2Instance, Literal, ModularSideConstraint
from modcsp.errors import EvenModulus, InvalidRep
from modcsp.generators import random_horn, random_lin2
from modcsp.polyrep import best_nand_rep, nand_trivial, or_trivial_pm1
from modcsp.reductions import (
    ThreeSatInstance,
    flatten_horn,
    flatten_lin2,
    gadget_3sat_to_horn,
    gadget_3sat_to_lin2,
    random_3sat,
)


def agree(a, b):
    return (oracle.brute_solve(a) is None) == (oracle.brute_solve(b) is None)


def test_flatten_horn_z2_z3():
    rng = random.Random(1)
    for _ in range(25):
        inst = random_horn(3, rng.randint(0, 4), [2, 3], rng)
        flat = flatten_horn(inst)
        assert flat.side.group.moduli == (6,)
        assert agree(inst, flat)
        x = oracle.brute_solve(flat)
        if x is not None:
            assert inst.is_solution(x[: inst.n])


def test_flatten_passthrough_and_trivial():
    rng = random.Random(2)
    inst = random_horn(4, 3, [5], rng)
    assert flatten_horn(inst) == inst
    lin = random_lin2(4, 2, [5], rng)
    assert flatten_lin2(lin) == lin
    g = GroupSpec((2, 3))
    zero = ModularSideConstraint(g, tuple(((0, 0), (0, 0)) for _ in range(3)), ((0, 0),))
    assert oracle.brute_solve(flatten_horn(HornInstance(3, (), (), zero))) is not None


@pytest.mark.parametrize("mods", [[3, 5], [2, 3]])
def test_flatten_lin2(mods):
    rng = random.Random(sum(mods))
    for _ in range(25):
        inst = random_lin2(3, rng.randint(0, 3), mods, rng)
        flat = flatten_lin2(inst)
        assert flat.side.group.rank == 1
        assert agree(inst, flat)
        x = oracle.brute_solve(flat)
        if x is not None:
            assert inst.is_solution(x[: inst.n])


def test_lin2_z2_z3_modulus():
    rng = random.Random(7)
    inst = random_lin2(3, 1, [2, 3], rng)
    (m,) = flatten_lin2(inst).side.group.moduli
    assert m % 3 == 0 and (m // 3) & (m // 3 - 1) == 0 and m // 3 >= 4


def lit(v, s=True):
    return Literal(v, s)


def test_gadget_horn_examples():
    phi = ThreeSatInstance(3, ((lit(0), lit(1), lit(2)),))
    out = gadget_3sat_to_horn(phi, 6, best_nand_rep(1, 6))
    assert oracle.brute_solve(out) is not None
    contra = ThreeSatInstance(1, ((lit(0),), (lit(0, False),)))
    assert oracle.brute_solve(gadget_3sat_to_horn(contra, 6, nand_trivial(2, 6))) is None
    with pytest.raises(InvalidRep):
        gadget_3sat_to_horn(contra, 6, nand_trivial(3, 6))


@pytest.mark.parametrize("modulus", [4, 6])
def test_gadget_horn_sweep(modulus):
    rng = random.Random(modulus)
    for _ in range(50):
        phi = random_3sat(rng.randint(1, 5), rng.randint(1, 5), rng)
        out = gadget_3sat_to_horn(phi, modulus, best_nand_rep(phi.m, modulus))
        assert (phi.brute_force() is None) == (oracle.brute_solve(out) is None)


def test_gadget_lin2_examples():
    sat = ThreeSatInstance(2, ((lit(0), lit(1)),))
    assert oracle.brute_solve(gadget_3sat_to_lin2(sat, 3, or_trivial_pm1(1, 3))) is not None
    cube = tuple(tuple(lit(v, bool((mask >> v) & 1)) for v in range(3)) for mask in range(8))
    phi = ThreeSatInstance(3, cube)
    assert phi.brute_force() is None
    assert oracle.brute_solve(gadget_3sat_to_lin2(phi, 3, or_trivial_pm1(8, 3))) is None
    with pytest.raises(EvenModulus):
        gadget_3sat_to_lin2(sat, 4, or_trivial_pm1(1, 3))


@pytest.mark.parametrize("modulus", [3, 15])
def test_gadget_lin2_sweep(modulus):
    rng = random.Random(modulus)
    for _ in range(50):
        phi = random_3sat(rng.randint(1, 5), rng.randint(1, 5), rng)
        out = gadget_3sat_to_lin2(phi, modulus, or_trivial_pm1(phi.m, modulus))
        if out.n > 22:
            continue
        assert (phi.brute_force() is None) == (oracle.brute_solve(out) is None)
