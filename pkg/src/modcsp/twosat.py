"""2-SAT with a global constraint sum_j g_j(x_j) in S over a finite abelian group.

Literal encoding: 2*v is x_v, 2*v + 1 is its negation, so ``l ^ 1`` negates.
After SCC contraction the implication graph is a skew-symmetric DAG. The
recursion sets a sink literal to 1; if that fails it sets the sink to 0,
forces everything above it, and continues only when the set of reachable
residues strictly grows, which bounds the branching by |G| - |S|.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .core import Assignment, GroupSpec, ModularSideConstraint, TwoSatInstance


def lit_index(var: int, positive: bool) -> int:
    return 2 * var + (0 if positive else 1)


def split_weights(side: ModularSideConstraint) -> list[tuple]:
    """Weight contributed by each literal when it is true.

    g_{x_j}(1) = g_j(1) and g_{not x_j}(1) = g_j(0); a false literal adds 0.
    """
    out = []
    for w0, w1 in side.weights:
        out.append(w1)
        out.append(w0)
    return out


def strongly_connected_components(succ: list[list[int]]) -> list[int]:
    """Iterative Tarjan; returns a component id per node in reverse topological order
    (sink components get the smallest ids)."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


@dataclass
class ImplicationGraph:
    """Skew-symmetric implication graph over 2*n literals with literal weights."""

    n: int
    succ: list
    weight: list
    group: GroupSpec

    @classmethod
    def from_instance(cls, inst: TwoSatInstance) -> "ImplicationGraph":
        succ: list[set] = [set() for _ in range(2 * inst.n)]
        for a, b in inst.clauses:
            la, lb = lit_index(a.var, a.positive), lit_index(b.var, b.positive)
            succ[la ^ 1].add(lb)
            succ[lb ^ 1].add(la)
        return cls(inst.n, [sorted(s) for s in succ], split_weights(inst.side), inst.side.group)

    def pred(self) -> list[list[int]]:
        p: list[list[int]] = [[] for _ in range(2 * self.n)]
        for u, outs in enumerate(self.succ):
            for v in outs:
                p[v].append(u)
        return p


@dataclass
class Preprocessed:
    graph: ImplicationGraph
    literal_map: list  # original literal -> contracted literal


def preprocess(inst: TwoSatInstance) -> Preprocessed | None:
    """Contract SCCs pairwise; None when some x and not-x share a component."""
    g = ImplicationGraph.from_instance(inst)
    comp = strongly_connected_components(g.succ)
    for v in range(inst.n):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
    group = inst.side.group
    comp_lit: dict[int, int] = {}
    k = 0
    for lit in range(2 * inst.n):
        c = comp[lit]
        if c in comp_lit:
            continue
        comp_lit[c] = 2 * k
        comp_lit[comp[lit ^ 1]] = 2 * k + 1
        k += 1
    weight = [group.zero() for _ in range(2 * k)]
    succ: list[set] = [set() for _ in range(2 * k)]
    lit_map = [comp_lit[comp[lit]] for lit in range(2 * inst.n)]
    for lit in range(2 * inst.n):
        cl = lit_map[lit]
        weight[cl] = group.add(weight[cl], g.weight[lit])
        for t in g.succ[lit]:
            ct = lit_map[t]
            if ct != cl:
                succ[cl].add(ct)
    return Preprocessed(ImplicationGraph(k, [sorted(s) for s in succ], weight, group), lit_map)


@dataclass
class SolveStats:
    calls: int = 0


class _DagSolver:
    def __init__(self, graph: ImplicationGraph, stats: SolveStats):
        self.g = graph
        self.pred = graph.pred()
        self.stats = stats
        # Tarjan ids increase away from the sinks
        self.rank = strongly_connected_components(graph.succ)

    def plain(self, alive: set) -> dict:
        # x_v = 1 iff x_v lies closer to the sinks than its negation
        return {v: 1 if self.rank[2 * v] < self.rank[2 * v + 1] else 0 for v in alive}

    def sink(self, alive: set) -> int:
        succ = self.g.succ
        for v in sorted(alive):
            for lit in (2 * v, 2 * v + 1):
                if not any((t >> 1) in alive for t in succ[lit]):
                    return lit
        raise AssertionError("acyclic graph must have a sink")

    def ancestors(self, y: int, alive: set) -> set:
        seen = {y}
        todo = [y]
        while todo:
            u = todo.pop()
            for p in self.pred[u]:
                if p not in seen and (p >> 1) in alive:
                    seen.add(p)
                    todo.append(p)
        return seen

    def run(self, alive: set, S: frozenset) -> dict | None:
        self.stats.calls += 1
        group = self.g.group
        if not alive:
            return {} if group.zero() in S else None
        if len(S) == group.order:
            return self.plain(alive)
        y = self.sink(alive)
        wy = self.g.weight[y]
        sub = self.run(alive - {y >> 1}, frozenset(group.sub(s, wy) for s in S))
        if sub is not None:
            sub[y >> 1] = 1 - (y & 1)
            return sub
        W = self.ancestors(y, alive)
        Wbar = {l ^ 1 for l in W}
        if W & Wbar:
            return None
        total = group.zero()
        for z in Wbar:
            total = group.add(total, self.g.weight[z])
        rest = group.sub(total, self.g.weight[y ^ 1])
        S2 = frozenset(group.sub(s, total) for s in S) | frozenset(
            group.sub(group.sub(s, wy), rest) for s in S
        )
        if len(S2) == len(S):
            return None
        sub = self.run(alive - {l >> 1 for l in W}, S2)
        if sub is None:
            return None
        for l in W:
            sub[l >> 1] = l & 1  # literal l is false
        return sub


def solve_dag(graph: ImplicationGraph, S, stats: SolveStats | None = None) -> Assignment | None:
    """Assignment of the DAG's variables with total literal weight in S."""
    stats = stats if stats is not None else SolveStats()
    limit = sys.getrecursionlimit()
    if limit < 4 * graph.n + 100:
        sys.setrecursionlimit(4 * graph.n + 100)
    res = _DagSolver(graph, stats).run(set(range(graph.n)), frozenset(S))
    if res is None:
        return None
    return tuple(res[v] for v in range(graph.n))


def solve_with_stats(inst: TwoSatInstance) -> tuple[Assignment | None, SolveStats]:
    stats = SolveStats()
    pre = preprocess(inst)
    if pre is None:
        return None, stats
    z = solve_dag(pre.graph, inst.side.allowed, stats)
    if z is None:
        return None, stats
    # x_v takes the value of the contracted literal holding x_v
    x = tuple(z[c >> 1] ^ (c & 1) for c in (pre.literal_map[2 * v] for v in range(inst.n)))
    if not inst.is_solution(x):
        raise AssertionError("internal error: 2-SAT solution failed verification")
    return x, stats


def solve(inst: TwoSatInstance) -> Assignment | None:
    return solve_with_stats(inst)[0]
