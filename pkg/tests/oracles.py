"""Brute-force reference implementations used only by the tests.

Each one works straight from a definition and shares no code with the
package beyond the ``Graph`` container.
"""

from __future__ import annotations

import itertools
import random

from orthocolor.graph_core import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def brute_chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for cols in itertools.product(range(k), repeat=g.n):
            if all(cols[u] != cols[v] for u, v in g.edges):
                return k
    raise AssertionError("unreachable")


def brute_line_graph_edges(g: Graph) -> set[tuple[int, int]]:
    out = set()
    for i, j in itertools.combinations(range(g.m), 2):
        if set(g.edges[i]) & set(g.edges[j]):
            out.add((i, j))
    return out


def brute_max_clique(g: Graph) -> int:
    best = 0
    for k in range(g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            if all(g.has_edge(a, b) for a, b in itertools.combinations(sub, 2)):
                best = k
                break
        else:
            break
    return best


def brute_hamiltonian(g: Graph) -> bool:
    if g.n < 3:
        return False
    for perm in itertools.permutations(range(1, g.n)):
        cyc = (0,) + perm
        if all(g.has_edge(cyc[i], cyc[(i + 1) % g.n]) for i in range(g.n)):
            return True
    return False


def brute_perfect_matching(g: Graph) -> bool:
    if g.n % 2:
        return False
    for sub in itertools.combinations(g.edges, g.n // 2):
        if len({x for e in sub for x in e}) == g.n:
            return True
    return False


def connected_without(g: Graph, removed: set[int]) -> bool:
    keep = [v for v in range(g.n) if v not in removed]
    if not keep:
        return True
    seen = {keep[0]}
    stack = [keep[0]]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(keep)


def brute_biconnected(g: Graph) -> bool:
    if g.n < 3 or not connected_without(g, set()):
        return False
    return all(connected_without(g, {v}) for v in range(g.n))


def has_odd_cycle_by_powers(g: Graph) -> bool:
    """Odd closed walk exists iff some vertex reaches itself in an odd number of steps."""
    for s in range(g.n):
        parity = {(s, 0)}
        frontier = [(s, 0)]
        while frontier:
            v, p = frontier.pop()
            for w in g.adjacency[v]:
                st = (w, 1 - p)
                if st not in parity:
                    parity.add(st)
                    frontier.append(st)
        if (s, 1) in parity:
            return True
    return False


def edge_coloring_is_proper(g: Graph, colors) -> bool:
    for i, j in itertools.combinations(range(g.m), 2):
        if set(g.edges[i]) & set(g.edges[j]) and colors[i] == colors[j]:
            return False
    return True


def vertex_coloring_is_proper(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges)


# small graphs, written out by hand
def k33() -> Graph:
    return Graph(6, tuple((i, j) for i in range(3) for j in range(3, 6)))


def cube() -> Graph:
    return Graph(8, tuple((a, b) for a in range(8) for b in range(a + 1, 8)
                          if bin(a ^ b).count("1") == 1))


def mobius_kantor_like(k: int) -> Graph:
    """Moebius ladder on 2k vertices: a 2k-cycle plus its long diagonals (cubic, Hamiltonian)."""
    n = 2 * k
    es = [(i, (i + 1) % n) for i in range(n)] + [(i, i + k) for i in range(k)]
    return Graph(n, tuple(es))
