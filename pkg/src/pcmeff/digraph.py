"""Dominance digraph of a (matrix, weight vector) pair.

Nodes are the compared items; there is an arc i -> j whenever the ratio
w_i/w_j reaches the matrix entry a_ij (a tie produces a bidirected pair).
Strong connectivity of this digraph characterizes Pareto efficiency of the
weight vector, and the acyclic tournament characterizes the strictly
improvable (strongly inefficient) case, so the whole verdict machinery is
combinatorial: one SCC pass plus an outdegree count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import PairwiseComparisonMatrix, WeightVector
from .errors import ValidationError

# Relative half-width of the tie band around a_ij.  Exact-arithmetic ties
# survive floating point well inside this band; anything further out is a
# genuine strict inequality.
TAU_EQ = 1e-9

# Arc decisions closer than this multiple of TAU_EQ to the band edge are
# reported as near-ties so callers can flag fragile verdicts.
NEAR_TIE_FACTOR = 10.0


@dataclass(frozen=True, eq=False)
class DominanceDigraph:
    """Arc set of a pair, plus the tolerance used to detect ties.

    ``arcs`` holds 0-based ordered pairs.  Every unordered pair carries at
    least one arc (reciprocity forces one of the two ratio inequalities);
    ties carry both.  ``near_ties`` lists unordered pairs whose ratio fell
    within NEAR_TIE_FACTOR * tolerance of the tie band without being
    inside it.
    """

    n: int
    arcs: frozenset
    tolerance: float
    near_ties: tuple = ()

    def successors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.arcs):
            adj[i].append(j)
        return adj

    def outdegrees(self) -> list[int]:
        deg = [0] * self.n
        for i, _ in self.arcs:
            deg[i] += 1
        return deg

    def bidirected_pairs(self) -> set:
        return {(i, j) for (i, j) in self.arcs if i < j and (j, i) in self.arcs}


@dataclass(frozen=True, eq=False)
class GraphVerdict:
    """Combinatorial summary of a dominance digraph."""

    strongly_connected: bool
    scc_partition: tuple
    outdegrees: tuple
    acyclic_tournament: bool
    topological_order: tuple | None


def build_digraph(
    m: PairwiseComparisonMatrix,
    w: WeightVector,
    tau_eq: float = TAU_EQ,
) -> DominanceDigraph:
    """Arc i -> j iff w_i/w_j >= a_ij up to the relative tie band tau_eq.

    Each unordered pair is classified once (tie / strict up / strict down)
    so the arc set agrees exactly with the index sets used by the linear
    programs.
    """
    if tau_eq < 0:
        raise ValidationError("tau_eq must be nonnegative")
    a = m.entries
    v = w.values
    if v.size != m.n:
        raise ValidationError("weight vector length does not match matrix size")
    arcs = set()
    near = []
    for i in range(m.n):
        for j in range(i + 1, m.n):
            rel = (v[i] / v[j]) / a[i, j]
            dev = abs(rel - 1.0)
            if dev <= tau_eq:
                arcs.add((i, j))
                arcs.add((j, i))
            elif rel > 1.0:
                arcs.add((i, j))
            else:
                arcs.add((j, i))
            if tau_eq < dev <= NEAR_TIE_FACTOR * tau_eq:
                near.append((i, j))
    return DominanceDigraph(m.n, frozenset(arcs), tau_eq, tuple(near))


def _tarjan_sccs(n: int, adj: list[list[int]]) -> list[list[int]]:
    """Iterative Tarjan; components come out in reverse topological order
    of the condensation."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if index[u] == -1:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack[u] = True
                    work.append((u, iter(adj[u])))
                    advanced = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                sccs.append(sorted(comp))
    return sccs


def is_acyclic_tournament(g: DominanceDigraph) -> tuple[bool, tuple | None]:
    """Check for the acyclic tournament (no ties, outdegrees 0..n-1).

    When it holds, the witness order lists nodes by descending outdegree:
    that is the unique Hamiltonian path, with every arc pointing forward.
    """
    if g.bidirected_pairs():
        return False, None
    deg = g.outdegrees()
    if sorted(deg) != list(range(g.n)):
        return False, None
    order = tuple(sorted(range(g.n), key=lambda i: -deg[i]))
    # With all outdegrees distinct this must already be transitive, but
    # verify arcs point forward so the claim also holds for hand-built graphs.
    pos = {node: k for k, node in enumerate(order)}
    for i, j in g.arcs:
        if pos[i] > pos[j]:
            return False, None
    return True, order


def strongly_connected(g: DominanceDigraph) -> GraphVerdict:
    """Full combinatorial verdict: SCC partition, outdegrees, tournament."""
    sccs = _tarjan_sccs(g.n, g.successors())
    tournament, order = is_acyclic_tournament(g)
    return GraphVerdict(
        strongly_connected=len(sccs) == 1,
        scc_partition=tuple(tuple(c) for c in sccs),
        outdegrees=tuple(g.outdegrees()),
        acyclic_tournament=tournament,
        topological_order=order,
    )


def to_dot(g: DominanceDigraph, labels: list[str] | None = None) -> str:
    """DOT text with one node per item and one edge per arc (1-based ids)."""
    if labels is None:
        labels = [f"C{i + 1}" for i in range(g.n)]
    lines = ["digraph dominance {"]
    for i in range(g.n):
        lines.append(f'  {i + 1} [label="{labels[i]}"];')
    for i, j in sorted(g.arcs):
        lines.append(f"  {i + 1} -> {j + 1};")
    lines.append("}")
    return "\n".join(lines)
