"""Line-oriented text formats for instances, polynomials and 3-CNF input.

Files use 1-indexed variables, ASCII, LF line endings and single spaces.
Instance grammar (one record per line)::

    c <comment>
    p modcsp {horn|lin2|2sat} <n> <m>
    h <head> <k> <b1> ... <bk>        Horn clause b1 & ... & bk -> head
    u <var> <0|1>                     Horn unit
    l <rhs> <k> <v1> ... <vk>         XOR equation
    t <lit1> <lit2>                   2-SAT clause, negative = negated
    g <M> <a> <w1^0> <w1^1> ... <wn^0> <wn^1>   one group component
    s <r1> ... <rk>                   allowed tuple (repeatable)

``m`` counts the h/u, l or t lines. Without s-lines the allowed set is the
single tuple of the g-lines' ``a`` values.
"""

from __future__ import annotations

import re

from .core import (
    GroupSpec,
    HornInstance,
    Lin2Instance,
    Literal,
    ModularSideConstraint,
    TwoSatInstance,
)
from .errors import ParseError, SemanticError
from .polyrep.poly import IntPoly
from .reductions import ThreeSatInstance

KINDS = {"horn": HornInstance, "lin2": Lin2Instance, "2sat": TwoSatInstance}
_INT = re.compile(r"-?[0-9]+\Z")

PRODUCTIONS = {
    "p": "p modcsp {horn|lin2|2sat} <n> <m>",
    "h": "h <head> <k> <b1> ... <bk>",
    "u": "u <var> <0|1>",
    "l": "l <rhs> <k> <v1> ... <vk>",
    "t": "t <lit1> <lit2>",
    "g": "g <M> <a> <w1^0> <w1^1> ... <wn^0> <wn^1>",
    "s": "s <r1> ... <rk>",
}


def _lines(text: str):
    if "\r" in text:
        raise ParseError(1 + text[: text.index("\r")].count("\n"), "LF line endings")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for no, line in enumerate(lines, start=1):
        if line == "":
            raise ParseError(no, "a record", "empty line")
        if line.startswith("c") and (line == "c" or line.startswith("c ")):
            yield no, "c", []
            continue
        toks = line.split(" ")
        if any(t == "" for t in toks):
            raise ParseError(no, "single-space separated tokens", "extra whitespace")
        yield no, toks[0], toks[1:]


def _ints(no: int, kind: str, toks: list[str]) -> list[int]:
    for t in toks:
        if not _INT.match(t):
            raise ParseError(no, PRODUCTIONS.get(kind, kind), f"non-integer token {t!r}")
    return [int(t) for t in toks]


def _var(no: int, v: int, n: int) -> int:
    if not 1 <= v <= n:
        raise SemanticError(f"variable {v} out of range 1..{n}", no)
    return v - 1


def _counted(no: int, kind: str, vals: list[int], lead: int) -> tuple[list[int], list[int]]:
    """Split '<lead fields> <k> <k items>' and check k."""
    if len(vals) < lead + 1:
        raise ParseError(no, PRODUCTIONS[kind])
    head, k, rest = vals[:lead], vals[lead], vals[lead + 1:]
    if k != len(rest):
        raise SemanticError(f"declared {k} items but found {len(rest)}", no)
    return head, rest


def parse(text: str):
    kind = None
    n = m = 0
    body: list = []
    units: list = []
    gl: list[tuple[int, int, list[int], int]] = []
    sl: list[tuple[list[int], int]] = []
    for no, tag, toks in _lines(text):
        if tag == "c":
            continue
        if tag == "p":
            if kind is not None:
                raise SemanticError("duplicate header", no)
            if len(toks) != 4 or toks[0] != "modcsp" or toks[1] not in KINDS:
                raise ParseError(no, PRODUCTIONS["p"])
            kind = toks[1]
            n, m = _ints(no, "p", toks[2:])
            if n < 0 or m < 0:
                raise SemanticError("n and m must be non-negative", no)
            continue
        if tag not in PRODUCTIONS:
            raise ParseError(no, "one of c, p, h, u, l, t, g, s", f"unknown record {tag!r}")
        if kind is None:
            raise ParseError(no, PRODUCTIONS["p"], "header must precede records")
        vals = _ints(no, tag, toks)
        if tag in ("h", "u") and kind != "horn" or tag == "l" and kind != "lin2" or tag == "t" and kind != "2sat":
            raise SemanticError(f"record {tag!r} not allowed in a {kind} file", no)
        if tag == "h":
            (head,), rest = _counted(no, "h", vals, 1)
            h = _var(no, head, n)
            bvars = [_var(no, v, n) for v in rest]
            if len(set(bvars)) != len(bvars) or h in bvars:
                raise SemanticError("repeated variable in clause", no)
            body.append((h, frozenset(bvars)))
        elif tag == "u":
            if len(vals) != 2:
                raise ParseError(no, PRODUCTIONS["u"])
            if vals[1] not in (0, 1):
                raise SemanticError("unit value must be 0 or 1", no)
            units.append((_var(no, vals[0], n), vals[1]))
        elif tag == "l":
            (rhs,), rest = _counted(no, "l", vals, 1)
            if rhs not in (0, 1):
                raise SemanticError("rhs must be 0 or 1", no)
            vs = [_var(no, v, n) for v in rest]
            if len(set(vs)) != len(vs):
                raise SemanticError("duplicate variable within one equation", no)
            body.append((frozenset(vs), rhs))
        elif tag == "t":
            if len(vals) != 2:
                raise ParseError(no, PRODUCTIONS["t"])
            lits = []
            for lit in vals:
                if lit == 0:
                    raise SemanticError("literal 0 is not allowed", no)
                lits.append(Literal(_var(no, abs(lit), n), lit > 0))
            body.append(tuple(lits))
        elif tag == "g":
            if len(vals) < 2:
                raise ParseError(no, PRODUCTIONS["g"])
            mod, a, ws = vals[0], vals[1], vals[2:]
            if mod < 2:
                raise SemanticError("component modulus must be >= 2", no)
            if len(ws) != 2 * n:
                raise SemanticError(f"expected {2 * n} weights, found {len(ws)}", no)
            if not all(0 <= w < mod for w in ws + [a]):
                raise SemanticError(f"residue out of range [0, {mod})", no)
            gl.append((mod, a, ws, no))
        elif tag == "s":
            if not vals:
                raise ParseError(no, PRODUCTIONS["s"])
            sl.append((vals, no))
    if kind is None:
        raise ParseError(1, PRODUCTIONS["p"], "missing header")
    count = len(body) + len(units)
    if count != m:
        raise SemanticError(f"header declares {m} constraints, found {count}")
    if not gl:
        raise SemanticError("at least one g line is required")
    group = GroupSpec(tuple(g[0] for g in gl))
    weights = tuple(
        (tuple(g[2][2 * j] for g in gl), tuple(g[2][2 * j + 1] for g in gl)) for j in range(n)
    )
    if sl:
        allowed = []
        for vals, no in sl:
            if len(vals) != len(gl):
                raise SemanticError(f"s line needs {len(gl)} residues", no)
            for v, g in zip(vals, gl):
                if not 0 <= v < g[0]:
                    raise SemanticError(f"residue out of range [0, {g[0]})", no)
            allowed.append(tuple(vals))
    else:
        allowed = [tuple(g[1] for g in gl)]
    side = ModularSideConstraint(group, weights, tuple(allowed))
    if kind == "horn":
        return HornInstance(n, tuple(body), tuple(units), side)
    if kind == "lin2":
        return Lin2Instance(n, tuple(body), side)
    return TwoSatInstance(n, tuple(body), side)


def _kind_of(inst) -> str:
    for name, cls in KINDS.items():
        if isinstance(inst, cls):
            return name
    raise TypeError(f"not an instance: {type(inst).__name__}")


def serialize(inst) -> str:
    kind = _kind_of(inst)
    out = [f"p modcsp {kind} {inst.n} {inst.m}"]
    if kind == "horn":
        for h, body in inst.clauses:
            bs = sorted(body)
            out.append(" ".join(["h", str(h + 1), str(len(bs))] + [str(v + 1) for v in bs]))
        for v, b in inst.units:
            out.append(f"u {v + 1} {b}")
    elif kind == "lin2":
        for vs, rhs in inst.equations:
            vv = sorted(vs)
            out.append(" ".join(["l", str(rhs), str(len(vv))] + [str(v + 1) for v in vv]))
    else:
        for a, b in inst.clauses:
            out.append("t " + " ".join(str((l.var + 1) * (1 if l.positive else -1)) for l in (a, b)))
    side = inst.side
    default = side.allowed[0]
    for c, mod in enumerate(side.group.moduli):
        ws = []
        for w0, w1 in side.weights:
            ws += [str(w0[c]), str(w1[c])]
        out.append(" ".join(["g", str(mod), str(default[c])] + ws))
    if len(side.allowed) > 1:
        for s in side.allowed:
            out.append("s " + " ".join(str(v) for v in s))
    return "\n".join(out) + "\n"


def parse_poly(text: str) -> IntPoly:
    nvars = None
    terms: dict[int, int] = {}
    for no, tag, toks in _lines(text):
        if tag == "c":
            continue
        if tag == "p":
            if nvars is not None:
                raise SemanticError("duplicate header", no)
            if len(toks) != 2 or toks[0] != "poly":
                raise ParseError(no, "p poly <nvars>")
            (nvars,) = _ints(no, "p", toks[1:])
            if nvars < 0:
                raise SemanticError("nvars must be non-negative", no)
            continue
        if tag != "m":
            raise ParseError(no, "m <coeff> <k> <v1> ... <vk>", f"unknown record {tag!r}")
        if nvars is None:
            raise ParseError(no, "p poly <nvars>", "header must precede records")
        vals = _ints(no, "m", toks)
        if len(vals) < 2:
            raise ParseError(no, "m <coeff> <k> <v1> ... <vk>")
        coeff, k, rest = vals[0], vals[1], vals[2:]
        if k != len(rest):
            raise SemanticError(f"declared {k} variables but found {len(rest)}", no)
        vs = [_var(no, v, nvars) for v in rest]
        if len(set(vs)) != len(vs):
            raise SemanticError("repeated variable in monomial", no)
        mask = 0
        for v in vs:
            mask |= 1 << v
        terms[mask] = terms.get(mask, 0) + coeff
    if nvars is None:
        raise ParseError(1, "p poly <nvars>", "missing header")
    return IntPoly(nvars, terms)


def serialize_poly(p: IntPoly) -> str:
    out = [f"p poly {p.nvars}"]
    for idx, c in p.monomials():
        out.append(" ".join(["m", str(c), str(len(idx))] + [str(i + 1) for i in idx]))
    return "\n".join(out) + "\n"


def parse_cnf(text: str) -> ThreeSatInstance:
    """DIMACS CNF restricted to clauses of 1 to 3 literals."""
    t = None
    clauses = []
    pending: list[int] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            toks = line.split()
            if len(toks) != 4 or toks[1] != "cnf":
                raise ParseError(no, "p cnf <vars> <clauses>")
            t = int(toks[2])
            continue
        if t is None:
            raise ParseError(no, "p cnf <vars> <clauses>", "header must come first")
        for tok in line.split():
            if not _INT.match(tok):
                raise ParseError(no, "integer literal", tok)
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple((abs(v) - 1, v > 0) for v in pending))
                pending = []
            else:
                if abs(lit) > t:
                    raise SemanticError(f"variable {abs(lit)} out of range", no)
                pending.append(lit)
    if pending:
        clauses.append(tuple((abs(v) - 1, v > 0) for v in pending))
    if t is None:
        raise ParseError(1, "p cnf <vars> <clauses>", "missing header")
    return ThreeSatInstance(t, tuple(clauses))


def serialize_cnf(phi: ThreeSatInstance) -> str:
    out = [f"p cnf {phi.t} {phi.m}"]
    for c in phi.clauses:
        out.append(" ".join(str((l.var + 1) * (1 if l.positive else -1)) for l in c) + " 0")
    return "\n".join(out) + "\n"
