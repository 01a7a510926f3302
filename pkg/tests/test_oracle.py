import pytest

from modcsp import oracle
from modcsp.core import GroupSpec, HornInstance, Lin2Instance, ModularSideConstraint
from modcsp.errors import SizeLimit
from modcsp.lin2 import AffineSubspace

# [DERIVED] exact D(n, M) from exhaustive subspace search (frozen)
D_TABLE = {
    1: [1, 1, 1, 1, 1, 1, 1],
    2: [1, 2, 2, 2, 2, 2, 2],
    3: [1, 2, 3, 3, 3, 3, 3],
    4: [1, 3, 3, 4, 4, 4, 4],
    5: [1, 4, 3, 4, 5, 5, 5],
    6: [1, 4, 3, 5, 5, 6, 6],
}
MODS = (2, 3, 4, 5, 6, 8, 9)


def test_brute_examples():
    inst = HornInstance(3, ((2, frozenset([0, 1])),), (), ModularSideConstraint.unit(3, 2, 1))
    assert oracle.brute_solve(inst) == (0, 0, 1)
    full = Lin2Instance(2, (), ModularSideConstraint.unit(2, 2, [0, 1]))
    assert oracle.brute_solve(full) == (0, 0)
    contra = HornInstance(1, (), ((0, 0), (0, 1)), ModularSideConstraint.unit(1, 2, [0, 1]))
    assert oracle.brute_solve(contra) is None
    with pytest.raises(SizeLimit):
        oracle.brute_solve(Lin2Instance(30, (), ModularSideConstraint.unit(30, 2, 0)))


def test_count_examples():
    assert oracle.count_solutions(AffineSubspace(2, 0, (1, 2)), 1, 2) == 2
    assert oracle.count_solutions(AffineSubspace(2, 0, (3,)), 1, 3) == 0
    assert oracle.count_solutions(AffineSubspace(5, 0b10110, ()), 3, 4) == 1


def test_count_large_n_gray_path():
    # n > 64 exercises the Gray-code walk
    space = AffineSubspace(70, 1 << 69, (1, 2, 4, (1 << 68) | 8))
    assert oracle.count_solutions(space, 2, 3) == sum(
        1 for c in range(16) if bin(space.point(c)).count("1") % 3 == 2)


def test_rref_counts():
    # number of k-dim subspaces of GF(2)^4: Gaussian binomials 1, 15, 35, 15, 1
    assert [sum(1 for _ in oracle.rref_subspaces(4, k)) for k in range(5)] == [1, 15, 35, 15, 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_max_unique_dimension_table(n):
    assert [oracle.search_max_unique_dimension(n, m) for m in MODS] == D_TABLE[n]


def test_search_cap():
    with pytest.raises(SizeLimit):
        oracle.search_max_unique_dimension(7, 2)
