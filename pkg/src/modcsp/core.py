"""Finite abelian groups, modular side constraints and the three instance kinds.

Group elements are tuples of canonical residues internally; ``ResidueVector``
wraps such a tuple together with its ``GroupSpec`` for the public API.
Assignments are tuples of 0/1 ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from .errors import GroupMismatch, LengthMismatch, MultiComponentGroup, SemanticError

MAX_GROUP_ORDER = 2**32

Residues = tuple  # tuple[int, ...]
Assignment = tuple  # tuple[int, ...] of bits


@dataclass(frozen=True)
class GroupSpec:
    moduli: tuple[int, ...]

    def __post_init__(self):
        mods = tuple(int(m) for m in self.moduli)
        object.__setattr__(self, "moduli", mods)
        if not mods:
            raise SemanticError("group needs at least one component")
        if any(m < 2 for m in mods):
            raise SemanticError(f"component moduli must be >= 2, got {mods}")
        if prod(mods) > MAX_GROUP_ORDER:
            raise SemanticError("group order exceeds 2^32")

    @classmethod
    def cyclic(cls, m: int) -> "GroupSpec":
        return cls((m,))

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def zero(self) -> Residues:
        return (0,) * len(self.moduli)

    def reduce(self, values: Sequence[int]) -> Residues:
        if len(values) != len(self.moduli):
            raise LengthMismatch(f"expected {len(self.moduli)} residues, got {len(values)}")
        return tuple(int(v) % m for v, m in zip(values, self.moduli))

    def add(self, a: Residues, b: Residues) -> Residues:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def sub(self, a: Residues, b: Residues) -> Residues:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Residues) -> Residues:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def elements(self) -> Iterator[Residues]:
        return itertools.product(*(range(m) for m in self.moduli))

    def element(self, values: Sequence[int]) -> "ResidueVector":
        return ResidueVector(self, tuple(values))


@dataclass(frozen=True)
class ResidueVector:
    group: GroupSpec
    residues: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "residues", self.group.reduce(tuple(self.residues)))

    def _check(self, other: "ResidueVector"):
        if not isinstance(other, ResidueVector) or other.group != self.group:
            raise GroupMismatch("residue vectors belong to different groups")

    def __add__(self, other: "ResidueVector") -> "ResidueVector":
        self._check(other)
        return ResidueVector(self.group, self.group.add(self.residues, other.residues))

    def __sub__(self, other: "ResidueVector") -> "ResidueVector":
        self._check(other)
        return ResidueVector(self.group, self.group.sub(self.residues, other.residues))

    def __neg__(self) -> "ResidueVector":
        return ResidueVector(self.group, self.group.neg(self.residues))

    def __lt__(self, other: "ResidueVector") -> bool:
        self._check(other)
        return self.residues < other.residues

    @classmethod
    def zero(cls, group: GroupSpec) -> "ResidueVector":
        return cls(group, group.zero())


def group_add(a: ResidueVector, b: ResidueVector) -> ResidueVector:
    return a + b


def _as_residues(group: GroupSpec, value) -> Residues:
    if isinstance(value, ResidueVector):
        if value.group != group:
            raise GroupMismatch("weight or target bound to a different group")
        return value.residues
    if isinstance(value, int):
        value = (value,)
    return group.reduce(tuple(value))


@dataclass(frozen=True)
class ModularSideConstraint:
    """Requires sum_j g_j(x_j) to lie in ``allowed``.

    ``weights[j] = (g_j(0), g_j(1))`` and ``allowed`` is a sorted tuple of
    distinct residue tuples. Constructor accepts ints (single component),
    sequences or ResidueVectors and canonicalizes them.
    """

    group: GroupSpec
    weights: tuple
    allowed: tuple

    def __post_init__(self):
        g = self.group
        ws = tuple((_as_residues(g, w0), _as_residues(g, w1)) for w0, w1 in self.weights)
        allowed = tuple(sorted({_as_residues(g, s) for s in self.allowed}))
        if not allowed:
            raise SemanticError("allowed set S must be non-empty")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "allowed", allowed)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def allowed_set(self) -> frozenset:
        return frozenset(self.allowed)

    def weight(self, j: int, bit: int) -> ResidueVector:
        return ResidueVector(self.group, self.weights[j][bit])

    def allowed_vectors(self) -> list[ResidueVector]:
        return [ResidueVector(self.group, s) for s in self.allowed]

    def value(self, x: Sequence[int]) -> Residues:
        if len(x) != len(self.weights):
            raise LengthMismatch(f"assignment has length {len(x)}, expected {len(self.weights)}")
        total = [0] * self.group.rank
        for (w0, w1), bit in zip(self.weights, x):
            w = w1 if bit else w0
            for i, v in enumerate(w):
                total[i] += v
        return self.group.reduce(total)

    def is_unit_zero_based(self) -> bool:
        """Single component, g_j(0)=0 and g_j(1) in {0,1} for all j."""
        return self.group.rank == 1 and all(
            w0 == (0,) and w1[0] in (0, 1) for w0, w1 in self.weights
        )

    @classmethod
    def unit(cls, n: int, modulus: int, targets: Union[int, Iterable[int]]) -> "ModularSideConstraint":
        """Hamming weight of x mod ``modulus`` must be one of ``targets``."""
        if isinstance(targets, int):
            targets = [targets]
        return cls(GroupSpec.cyclic(modulus), tuple((0, 1) for _ in range(n)), tuple(targets))


def eval_side(side: ModularSideConstraint, x: Sequence[int]) -> tuple[ResidueVector, bool]:
    value = side.value(x)
    return ResidueVector(side.group, value), value in side.allowed_set


def zero_based(side: ModularSideConstraint) -> tuple[list[Residues], list[Residues]]:
    """Rewrite sum_j g_j(x_j) in S as sum_j w_j x_j in S - sum_j g_j(0).

    Returns (w, shifted allowed list) with w_j = g_j(1) - g_j(0).
    """
    g = side.group
    base = g.zero()
    ws = []
    for w0, w1 in side.weights:
        base = g.add(base, w0)
        ws.append(g.sub(w1, w0))
    return ws, sorted({g.sub(s, base) for s in side.allowed})


def side_from_linear(modulus: int, weights: Sequence[int], targets: Iterable[int]) -> ModularSideConstraint:
    """Single-modulus side constraint sum_j weights[j] x_j in targets."""
    return ModularSideConstraint(
        GroupSpec.cyclic(modulus), tuple((0, w) for w in weights), tuple(targets)
    )


def _check_var(v: int, n: int, what: str):
    if not (0 <= v < n):
        raise SemanticError(f"{what} index {v} out of range [0, {n})")


def _check_side_n(side: ModularSideConstraint, n: int):
    if side.n != n:
        raise LengthMismatch(f"side constraint covers {side.n} variables, instance has {n}")


class HornClause(NamedTuple):
    head: int
    body: frozenset


@dataclass(frozen=True)
class HornInstance:
    """Clauses body -> head plus unit constraints x_v = bit."""

    n: int
    clauses: tuple
    units: tuple
    side: ModularSideConstraint

    def __post_init__(self):
        cls_ = tuple(HornClause(int(h), frozenset(b)) for h, b in self.clauses)
        units = tuple((int(v), int(b)) for v, b in self.units)
        for h, body in cls_:
            _check_var(h, self.n, "head")
            for v in body:
                _check_var(v, self.n, "body")
            if h in body:
                raise SemanticError(f"head {h} appears in its own body")
        for v, b in units:
            _check_var(v, self.n, "unit")
            if b not in (0, 1):
                raise SemanticError("unit value must be 0 or 1")
        _check_side_n(self.side, self.n)
        object.__setattr__(self, "clauses", cls_)
        object.__setattr__(self, "units", units)

    @property
    def m(self) -> int:
        return len(self.clauses) + len(self.units)

    def satisfies_local(self, x: Sequence[int]) -> bool:
        if len(x) != self.n:
            raise LengthMismatch("assignment length mismatch")
        for v, b in self.units:
            if x[v] != b:
                return False
        for h, body in self.clauses:
            if not x[h] and all(x[v] for v in body):
                return False
        return True

    def is_solution(self, x: Sequence[int]) -> bool:
        return self.satisfies_local(x) and eval_side(self.side, x)[1]

    def with_side(self, side: ModularSideConstraint) -> "HornInstance":
        return HornInstance(self.n, self.clauses, self.units, side)


@dataclass(frozen=True)
class Lin2Instance:
    """XOR equations (variable set, rhs bit)."""

    n: int
    equations: tuple
    side: ModularSideConstraint

    def __post_init__(self):
        eqs = []
        for vs, rhs in self.equations:
            vs = tuple(vs)
            if len(set(vs)) != len(vs):
                raise SemanticError("duplicate variable within one equation")
            for v in vs:
                _check_var(int(v), self.n, "equation")
            if rhs not in (0, 1):
                raise SemanticError("equation rhs must be 0 or 1")
            eqs.append((frozenset(int(v) for v in vs), int(rhs)))
        _check_side_n(self.side, self.n)
        object.__setattr__(self, "equations", tuple(eqs))

    @property
    def m(self) -> int:
        return len(self.equations)

    def satisfies_local(self, x: Sequence[int]) -> bool:
        if len(x) != self.n:
            raise LengthMismatch("assignment length mismatch")
        return all(sum(x[v] for v in vs) % 2 == rhs for vs, rhs in self.equations)

    def is_solution(self, x: Sequence[int]) -> bool:
        return self.satisfies_local(x) and eval_side(self.side, x)[1]

    def with_side(self, side: ModularSideConstraint) -> "Lin2Instance":
        return Lin2Instance(self.n, self.equations, side)


class Literal(NamedTuple):
    var: int
    positive: bool

    def negate(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def holds(self, x: Sequence[int]) -> bool:
        return bool(x[self.var]) == self.positive


@dataclass(frozen=True)
class TwoSatInstance:
    """Clauses are pairs of literals (a or b)."""

    n: int
    clauses: tuple
    side: ModularSideConstraint

    def __post_init__(self):
        cls_ = []
        for a, b in self.clauses:
            a, b = Literal(int(a[0]), bool(a[1])), Literal(int(b[0]), bool(b[1]))
            _check_var(a.var, self.n, "literal")
            _check_var(b.var, self.n, "literal")
            cls_.append((a, b))
        _check_side_n(self.side, self.n)
        object.__setattr__(self, "clauses", tuple(cls_))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfies_local(self, x: Sequence[int]) -> bool:
        if len(x) != self.n:
            raise LengthMismatch("assignment length mismatch")
        return all(a.holds(x) or b.holds(x) for a, b in self.clauses)

    def is_solution(self, x: Sequence[int]) -> bool:
        return self.satisfies_local(x) and eval_side(self.side, x)[1]

    def with_side(self, side: ModularSideConstraint) -> "TwoSatInstance":
        return TwoSatInstance(self.n, self.clauses, side)


Instance = Union[HornInstance, Lin2Instance, TwoSatInstance]


def normalize_unit_weights(inst):
    """Replace weights by unit weights using tied copies of each variable.

    Variable j with weight w_j = g_j(1) - g_j(0) in [0, M) keeps index j and
    gets w_j - 1 extra copies; copies are tied to j by a<->b (Horn) or
    a xor b = 0 (LIN-2). Zero-weight variables stay with weight (0, 0).
    The first ``inst.n`` coordinates of any solution of the result solve
    ``inst``, and the total weight is preserved.
    """
    side = inst.side
    if side.group.rank != 1:
        raise MultiComponentGroup("flatten multi-component groups before normalizing")
    (modulus,) = side.group.moduli
    ws, allowed = zero_based(side)
    n = inst.n
    new_weights = [(0, 1 if w[0] else 0) for w in ws]
    ties = []
    nxt = n
    for j, (w,) in enumerate(ws):
        for _ in range(w - 1):
            ties.append((j, nxt))
            new_weights.append((0, 1))
            nxt += 1
    new_side = ModularSideConstraint(side.group, tuple(new_weights), tuple(allowed))
    if isinstance(inst, HornInstance):
        clauses = list(inst.clauses)
        for a, b in ties:
            clauses.append((b, frozenset([a])))
            clauses.append((a, frozenset([b])))
        return HornInstance(nxt, tuple(clauses), inst.units, new_side)
    if isinstance(inst, Lin2Instance):
        eqs = list(inst.equations) + [(frozenset([a, b]), 0) for a, b in ties]
        return Lin2Instance(nxt, tuple(eqs), new_side)
    raise TypeError("normalize_unit_weights supports Horn and LIN-2 instances")
