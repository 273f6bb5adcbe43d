"""Exact chromatic number / index with certificates.

The vertex solver is a DSATUR-ordered backtracking search run as a
sequence of k-colorability decisions from the best lower bound upward, so
every value it reports comes with a coloring (upper bound) and an
exhausted search or a clique (lower bound). The edge solver works on the
line graph seeded with Vizing's interval ``[Δ, Δ+1]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colorings import Coloring, OrthoColoring, canonical_vector, is_proper
from .errors import Inconclusive
from .graph_core import Graph, degree_profile, is_bipartite, line_graph

__all__ = [
    "ChromaResult",
    "chromatic_number",
    "chromatic_index",
    "max_clique",
    "dsatur_greedy",
    "tait_3_edge_coloring",
    "coloring_to_orthogonal",
]

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class ChromaResult:
    """Outcome of an exact χ or χ' computation.

    When ``exact`` is false the budget ran out: ``value`` is ``None`` and
    ``[lower, upper]`` is the interval proven so far, with ``certificate``
    the best coloring found (it achieves ``upper``).
    """

    value: int | None
    certificate: Coloring | None
    lower: int
    upper: int
    lower_witness: tuple[int, ...] | str
    lower_reason: str
    nodes: int = 0
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "status": "exact" if self.exact else "inconclusive",
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "lower_reason": self.lower_reason,
            "lower_witness": (
                list(self.lower_witness)
                if isinstance(self.lower_witness, tuple)
                else self.lower_witness
            ),
            "certificate": self.certificate.to_json() if self.certificate else None,
            "nodes": self.nodes,
        }


class _OutOfBudget(Exception):
    pass


@dataclass
class _Counter:
    budget: int | None
    nodes: int = 0

    def tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _OutOfBudget


# --------------------------------------------------------------------------
# maximum clique

def max_clique(g: Graph, budget: int | None = DEFAULT_BUDGET) -> tuple[int, ...]:
    """A maximum clique of ``g`` (sorted vertex tuple).

    Branch and bound with a greedy-coloring upper bound on candidate sets.
    If the budget runs out, :class:`Inconclusive` is raised with the best
    clique found so far in ``.best`` (a lower bound only).
    """
    if g.n == 0:
        return ()
    nb = [0] * g.n
    for u, v in g.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    counter = _Counter(budget)

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # greedy coloring of the candidate set; returns (vertex, color) by color
        order = []
        uncolored = cand
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(1 << v)
                avail &= ~nb[v]
                uncolored &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(current: list[int], cand: int):
        counter.tick()
        order = color_bound(cand)
        for v, c in reversed(order):
            if len(current) + c <= len(best_clique):
                return
            current.append(v)
            new = cand & nb[v]
            if new:
                expand(current, new)
            elif len(current) > len(best_clique):
                best_clique[:] = current
            current.pop()
            cand &= ~(1 << v)

    best_clique: list[int] = [0]
    try:
        expand([], (1 << g.n) - 1)
    except _OutOfBudget:
        raise Inconclusive(
            f"max_clique exceeded {budget} nodes", best=tuple(sorted(best_clique))
        ) from None
    return tuple(sorted(best_clique))


# --------------------------------------------------------------------------
# vertex coloring

def dsatur_greedy(g: Graph) -> list[int]:
    """Greedy DSATUR coloring (ties: higher degree, then lower index)."""
    colors = [-1] * g.n
    seen: list[set[int]] = [set() for _ in range(g.n)]
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colors[u] == -1),
            key=lambda u: (len(seen[u]), len(g.adjacency[u]), -u),
        )
        c = 0
        while c in seen[v]:
            c += 1
        colors[v] = c
        for w in g.adjacency[v]:
            seen[w].add(c)
    return colors


def _k_coloring(g: Graph, k: int, clique: tuple[int, ...], counter: _Counter) -> list[int] | None:
    """Exact k-colorability by DSATUR backtracking; clique is precolored 0..q-1."""
    n = g.n
    if len(clique) > k:
        return None
    adj = g.adjacency
    colors = [-1] * n
    # forbid[v][c] = number of colored neighbours of v carrying color c
    forbid = [[0] * k for _ in range(n)]
    sat = [0] * n

    def assign(v, c):
        colors[v] = c
        for w in adj[v]:
            if forbid[w][c] == 0:
                sat[w] += 1
            forbid[w][c] += 1

    def unassign(v, c):
        colors[v] = -1
        for w in adj[v]:
            forbid[w][c] -= 1
            if forbid[w][c] == 0:
                sat[w] -= 1

    for i, v in enumerate(clique):
        assign(v, i)
    used0 = len(clique)

    def solve(remaining: int, used: int) -> bool:
        if remaining == 0:
            return True
        counter.tick()
        v = -1
        key = None
        for u in range(n):
            if colors[u] == -1:
                kk = (sat[u], len(adj[u]), -u)
                if key is None or kk > key:
                    key, v = kk, u
        if sat[v] >= k:
            return False
        for c in range(min(k, used + 1)):
            if forbid[v][c]:
                continue
            assign(v, c)
            if all(colors[w] != -1 or sat[w] < k for w in adj[v]):
                if solve(remaining - 1, max(used, c + 1)):
                    return True
            unassign(v, c)
        return False

    if solve(n - used0, used0):
        return colors
    return None


def _normalize(colors: list[int]) -> list[int]:
    relabel: dict[int, int] = {}
    return [relabel.setdefault(c, len(relabel)) for c in colors]


def chromatic_number(
    g: Graph,
    lower: int | None = None,
    upper: int | None = None,
    budget: int | None = DEFAULT_BUDGET,
) -> ChromaResult:
    """Exact chromatic number of ``g`` with a certificate coloring.

    ``lower``/``upper`` are optional valid bounds that narrow the search.
    Conventions: the empty graph needs 0 colors, an edgeless one 1.
    """
    if lower is not None and upper is not None and lower > upper:
        raise ValueError(f"lower hint {lower} exceeds upper hint {upper}")
    if g.n == 0:
        return ChromaResult(0, Coloring(g, "vertex", ()), 0, 0, (), "empty")
    if g.m == 0:
        return ChromaResult(1, Coloring(g, "vertex", (0,) * g.n), 1, 1, (0,), "clique")

    counter = _Counter(budget)
    try:
        clique = max_clique(g, budget)
    except Inconclusive as exc:
        clique = exc.best
    lb, reason, witness = len(clique), "clique", clique
    if lb < 3 and is_bipartite(g) is None:
        lb, reason = 3, "odd-cycle"
    if lower is not None and lower > lb:
        lb, reason = lower, "hint"

    greedy = _normalize(dsatur_greedy(g))
    ub = max(greedy) + 1
    best = greedy
    if upper is not None and upper < lb:
        raise ValueError(f"upper hint {upper} is below the proven lower bound {lb}")

    top = ub - 1 if upper is None else min(ub - 1, upper)
    k = lb
    try:
        while k <= top:
            sol = _k_coloring(g, k, clique if len(clique) <= k else (), counter)
            if sol is not None:
                best = _normalize(sol)
                ub = max(best) + 1
                break
            k += 1
            reason = "exhaustive" if reason != "hint" else reason
    except _OutOfBudget:
        return ChromaResult(
            None, Coloring(g, "vertex", best), k, ub, witness, reason,
            counter.nodes, exact=False,
        )
    if upper is not None and ub > upper:
        raise ValueError(f"upper hint {upper} is not a valid bound: no coloring found")
    cert = Coloring(g, "vertex", best)
    assert is_proper(cert) and cert.k == ub
    if ub == len(clique):
        reason, witness = "clique", clique
    return ChromaResult(ub, cert, ub, ub, witness, reason, counter.nodes)


def chromatic_index(g: Graph, budget: int | None = DEFAULT_BUDGET) -> ChromaResult:
    """Exact chromatic index via the line graph, seeded with ``[Δ, Δ+1]``.

    The certificate is an edge coloring of ``g`` itself. ``lower_reason``
    is ``"max-degree"`` for Class 1, ``"parity"`` when ``g`` is regular of
    odd order (each color class would be a perfect matching), otherwise
    ``"exhaustive"``.
    """
    if g.m == 0:
        raise ValueError("chromatic index needs at least one edge")
    prof = degree_profile(g)
    delta = prof.max_degree
    lg, _ = line_graph(g)
    res = chromatic_number(lg, lower=delta, upper=delta + 1, budget=budget)
    if not res.exact:
        cert = Coloring(g, "edge", res.certificate.assignment)
        return ChromaResult(
            None, cert, res.lower, res.upper, "max-degree", "max-degree",
            res.nodes, exact=False,
        )
    cert = Coloring(g, "edge", res.certificate.assignment)
    if res.value == delta:
        reason = "max-degree"
    elif prof.regular and g.n % 2 == 1:
        reason = "parity"
    else:
        reason = "exhaustive"
    return ChromaResult(res.value, cert, res.value, res.value, reason, reason, res.nodes)


# --------------------------------------------------------------------------
# constructions

def tait_3_edge_coloring(g: Graph, cycle) -> Coloring:
    """3-edge-coloring of a cubic graph from a Hamiltonian cycle.

    Cycle edges alternate colors 0 and 1; the remaining edges, which form
    a perfect matching, get color 2.
    """
    prof = degree_profile(g)
    if g.n == 0 or not prof.regular or prof.max_degree != 3:
        raise ValueError("tait_3_edge_coloring: graph is not cubic")
    if g.n % 2:
        raise ValueError("tait_3_edge_coloring: odd number of vertices")
    cycle = tuple(cycle)
    if len(cycle) != g.n or set(cycle) != set(range(g.n)):
        raise ValueError("tait_3_edge_coloring: cycle does not visit every vertex once")
    colors = [2] * g.m
    for i in range(g.n):
        u, v = cycle[i], cycle[(i + 1) % g.n]
        if not g.has_edge(u, v):
            raise ValueError(f"tait_3_edge_coloring: cycle step {u}-{v} is not an edge")
        colors[g.edge_index(u, v)] = i % 2
    c = Coloring(g, "edge", colors)
    assert is_proper(c)
    return c


def coloring_to_orthogonal(c: Coloring) -> OrthoColoring:
    """Lift a proper k-coloring to an orthogonal one: color i -> e_i in Q^k."""
    if not is_proper(c):
        raise ValueError("coloring is not proper")
    k = c.k
    return OrthoColoring(
        c.graph, c.target, k, tuple(canonical_vector(i, k) for i in c.assignment)
    )
