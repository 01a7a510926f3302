"""Flattening multi-component side constraints to one modulus, and 3-SAT gadgets.

Flattening writes "sum_j w_j x_j = a in G" as one polynomial f over the
original variables with f(x) = 0 (mod M) iff the constraint holds, then
introduces one variable per monomial of f, tied to the product (Horn) or
parity (LIN-2) of its variables. The gadgets do the same for
NAND/OR(clauses of a 3-CNF).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import prod

from .arith import crt, factorize, inverse
from .core import (
    GroupSpec,
    HornInstance,
    Lin2Instance,
    Literal,
    ModularSideConstraint,
    zero_based,
)
from .errors import EvenModulus, InvalidRep, SemanticError, SizeLimit
from .gf2 import orthogonal_complement
from .polyrep.poly import PLUS_MINUS_ONE, ZERO_ONE, IntPoly, compose, indices_of
from .polyrep.reps import crt_combine, is_nand_rep_01, is_or_rep_pm1
from .polyrep.symmetric import linear_to_prime_poly

DEFAULT_CAP = 2_000_000
REP_CHECK_LIMIT = 20


@dataclass(frozen=True)
class ThreeSatInstance:
    t: int
    clauses: tuple  # tuples of Literal, 1 to 3 each

    def __post_init__(self):
        cls_ = []
        for c in self.clauses:
            lits = tuple(Literal(int(v), bool(s)) for v, s in c)
            if not 1 <= len(lits) <= 3:
                raise SemanticError("3-SAT clauses need 1 to 3 literals")
            for lit in lits:
                if not 0 <= lit.var < self.t:
                    raise SemanticError(f"variable {lit.var} out of range")
            cls_.append(lits)
        object.__setattr__(self, "clauses", tuple(cls_))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, x) -> bool:
        return all(any(l.holds(x) for l in c) for c in self.clauses)

    def brute_force(self):
        for x in itertools.product((0, 1), repeat=self.t):
            if self.satisfied_by(x):
                return x
        return None


def random_3sat(t: int, m: int, rng: random.Random) -> ThreeSatInstance:
    clauses = []
    for _ in range(m):
        k = rng.randint(1, min(3, t))
        vs = rng.sample(range(t), k)
        clauses.append(tuple((v, rng.random() < 0.5) for v in vs))
    return ThreeSatInstance(t, tuple(clauses))


# ---- prime grouping ------------------------------------------------------

def _prime_groups(side: ModularSideConstraint, target) -> dict[int, list[tuple[int, list[int], int]]]:
    """prime -> [(k, weights mod p^k, shifted target mod p^k)] for every
    prime-power factor of every component."""
    g = side.group
    target = g.reduce(tuple(target))
    ws, _ = zero_based(side)
    base = g.zero()
    for w0, _ in side.weights:
        base = g.add(base, w0)
    shifted = g.sub(target, base)
    groups: dict[int, list] = {}
    for c, mod in enumerate(g.moduli):
        for p, k in sorted(factorize(mod).items()):
            q = p**k
            groups.setdefault(p, []).append((k, [w[c] % q for w in ws], shifted[c] % q))
    return groups


def _prime_polys(side, target, cap) -> dict[int, tuple[IntPoly, int]]:
    """prime -> (f_p, d_p): f_p = 0 mod p iff all of that prime's congruences
    hold, else 1; d_p is the degree budget sum_j (p^k_j - 1)."""
    n = side.n
    out = {}
    for p, items in _prime_groups(side, target).items():
        acc = IntPoly.constant(n, 1)
        for k, ws, a0 in items:
            f = linear_to_prime_poly(a0, ws, p, k, cap)
            acc = acc.mul(IntPoly.constant(n, 1) - f, ZERO_ONE, p)
        out[p] = ((IntPoly.constant(n, 1) - acc).mod(p), sum(p**k - 1 for k, _, _ in items))
    return out


def _single_target(inst, target):
    if target is None:
        if len(inst.side.allowed) != 1:
            raise ValueError("flattening handles one target; pass target= for each member of S")
        return inst.side.allowed[0]
    return target


def _monomial_layout(n: int, f: IntPoly, cap: int) -> list[int]:
    """Variable order: singletons first, then composite monomials of f."""
    composite = sorted((m for m in f.terms if m.bit_count() >= 2), key=lambda m: (m.bit_count(), indices_of(m)))
    if n + len(composite) > cap:
        raise SizeLimit(f"{n + len(composite)} generated variables exceeds cap {cap}")
    return [1 << i for i in range(n)] + composite


def _horn_from_poly(n: int, f: IntPoly, modulus: int, clauses, units, cap: int) -> HornInstance:
    """Horn instance whose solutions with sum b_S y_S = -b_0 mod M are the
    x with f(x) = 0 mod M (plus the given clauses)."""
    layout = _monomial_layout(n, f, cap)
    new_clauses = list(clauses)
    for idx, m in enumerate(layout[n:], start=n):
        members = indices_of(m)
        for i in members:
            new_clauses.append((i, frozenset([idx])))
        new_clauses.append((idx, frozenset(members)))
    weights = tuple((0, f.terms.get(m, 0) % modulus) for m in layout)
    side = ModularSideConstraint(GroupSpec.cyclic(modulus), weights, ((-f.constant_term()) % modulus,))
    return HornInstance(len(layout), tuple(new_clauses), tuple(units), side)


def flatten_horn(inst: HornInstance, target=None, cap: int = DEFAULT_CAP) -> HornInstance:
    """Single-modulus Horn instance over M = product of the distinct primes
    of |G|. The first ``inst.n`` variables are the originals."""
    if inst.side.group.rank == 1:
        return inst
    target = _single_target(inst, target)
    polys = _prime_polys(inst.side, target, cap)
    primes = sorted(polys)
    f = crt_combine([polys[p][0] for p in primes], primes)
    return _horn_from_poly(inst.n, f, prod(primes), inst.clauses, inst.units, cap)


def _to_pm1(f: IntPoly, scale_exp: int | None, modulus: int) -> IntPoly:
    """h(y) = f((1 - y)/2) over {-1,1}, mod ``modulus``.

    With ``scale_exp`` = e the result is 2^e * f((1-y)/2) computed over the
    integers (needs e >= deg f); otherwise 2 is inverted mod ``modulus``.
    """
    inv2 = None if scale_exp is not None else inverse(2, modulus)
    out: dict[int, int] = {}
    for m, c in f.terms.items():
        size = m.bit_count()
        if scale_exp is not None:
            coef = c * 2 ** (scale_exp - size)
        else:
            coef = c * pow(inv2, size, modulus)
        members = indices_of(m)
        for r in range(size + 1):
            for sub in itertools.combinations(members, r):
                mm = 0
                for i in sub:
                    mm |= 1 << i
                out[mm] = out.get(mm, 0) + (-coef if r & 1 else coef)
    return IntPoly(f.nvars, out).mod(modulus)


def _lin2_from_pm1_poly(n: int, h: IntPoly, modulus: int, equations, cap: int) -> Lin2Instance:
    """z_S = xor of x_i over S; h = sum a_S (1 - 2 z_S) = 0 mod M."""
    layout = _monomial_layout(n, h, cap)
    eqs = list(equations)
    for idx, m in enumerate(layout[n:], start=n):
        eqs.append((frozenset(indices_of(m)) | {idx}, 0))
    weights = tuple((0, (-2 * h.terms.get(m, 0)) % modulus) for m in layout)
    total = sum(h.terms.values())
    side = ModularSideConstraint(GroupSpec.cyclic(modulus), weights, ((-total) % modulus,))
    return Lin2Instance(len(layout), tuple(eqs), side)


def flatten_lin2(inst: Lin2Instance, target=None, cap: int = DEFAULT_CAP) -> Lin2Instance:
    """Single-modulus LIN-2 instance. M is the product of the odd primes of
    |G|, times 2^(d_2 + 1) when 2 divides |G| (d_2 the degree budget of 2)."""
    if inst.side.group.rank == 1:
        return inst
    target = _single_target(inst, target)
    polys = _prime_polys(inst.side, target, cap)
    hs, mods = [], []
    for p in sorted(polys):
        f, dp = polys[p]
        if p == 2:
            q = 2 ** (dp + 1)
            hs.append(_to_pm1(f, dp, q))
        else:
            q = p
            hs.append(_to_pm1(f, None, p))
        mods.append(q)
    h = crt_combine(hs, mods)
    return _lin2_from_pm1_poly(inst.n, h, prod(mods), inst.equations, cap)


# ---- 3-SAT gadgets --------------------------------------------------------

def _clause_poly_01(t: int, clause) -> IntPoly:
    """1 when the clause holds, 0 otherwise, over {0,1}^t."""
    unsat = IntPoly.constant(t, 1)
    for lit in clause:
        x = IntPoly.variable(t, lit.var)
        falsity = IntPoly.constant(t, 1) - x if lit.positive else x
        unsat = unsat.mul(falsity, ZERO_ONE)
    return IntPoly.constant(t, 1) - unsat


def _clause_poly_pm1(t: int, clause, modulus: int) -> IntPoly:
    """+1 when the clause holds, -1 otherwise, with x_v true iff z_v = -1."""
    inv2 = inverse(2, modulus)
    unsat = IntPoly.constant(t, 1)
    for lit in clause:
        sign = 1 if lit.positive else -1
        falsity = IntPoly(t, {0: inv2, 1 << lit.var: sign * inv2})
        unsat = unsat.mul(falsity, PLUS_MINUS_ONE, modulus)
    return (IntPoly.constant(t, 1) - unsat.scale(2)).mod(modulus)


def gadget_3sat_to_horn(phi: ThreeSatInstance, modulus: int, rep: IntPoly, cap: int = DEFAULT_CAP) -> HornInstance:
    """Horn instance, without unit constraints, satisfiable iff ``phi`` is.

    ``rep`` must represent NAND over m = #clauses inputs mod M.
    """
    m = phi.m
    if rep.support() >> m or (m <= REP_CHECK_LIMIT and not is_nand_rep_01(rep, m, modulus)):
        raise InvalidRep(f"rep is not a NAND_{m} representation mod {modulus}")
    clause_polys = [_clause_poly_01(phi.t, c) for c in phi.clauses]
    gamma = compose(rep, clause_polys, ZERO_ONE, modulus, nvars=phi.t).mod(modulus)
    return _horn_from_poly(phi.t, gamma, modulus, (), (), cap)


def gadget_3sat_to_lin2(phi: ThreeSatInstance, modulus: int, rep: IntPoly, cap: int = DEFAULT_CAP) -> Lin2Instance:
    """LIN-2 instance satisfiable iff ``phi`` is (M odd).

    Psi = rep(C_1..C_m) = sum_j a_j prod_{i in S_j} z_i. With u_i marking
    the monomials containing z_i, the points x' in span(u_1..u_t) are the
    solutions of the orthogonal-complement equations, and
    Psi = sum_j a_j (1 - 2 x'_j), giving target (sum_j a_j)/2 mod M.
    """
    if modulus % 2 == 0:
        raise EvenModulus("the LIN-2 gadget needs an odd modulus")
    m = phi.m
    if rep.support() >> m or (m <= REP_CHECK_LIMIT and not is_or_rep_pm1(rep, m, modulus)):
        raise InvalidRep(f"rep is not an OR_{m} representation mod {modulus}")
    clause_polys = [_clause_poly_pm1(phi.t, c, modulus) for c in phi.clauses]
    psi = compose(rep, clause_polys, PLUS_MINUS_ONE, modulus, nvars=phi.t).mod(modulus)
    monos = sorted(psi.terms, key=lambda k: (k.bit_count(), indices_of(k)))
    n = len(monos)
    if n > cap:
        raise SizeLimit(f"{n} generated variables exceeds cap {cap}")
    us = []
    for i in range(phi.t):
        u = 0
        for j, mono in enumerate(monos):
            if (mono >> i) & 1:
                u |= 1 << j
        us.append(u)
    eqs = []
    for w in orthogonal_complement(n, us):
        eqs.append((frozenset(indices_of(w)), 0))
    coeffs = [psi.terms[mono] for mono in monos]
    target = sum(coeffs) * inverse(2, modulus) % modulus
    side = ModularSideConstraint(GroupSpec.cyclic(modulus), tuple((0, a) for a in coeffs), (target,))
    return Lin2Instance(n, tuple(eqs), side)
