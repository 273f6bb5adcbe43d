"""Simple undirected graphs, graph6 I/O and the structural predicates.

Vertices are ``0..n-1``. Edges are stored as a sorted tuple of pairs
``(u, v)`` with ``u < v``; the position of a pair in that tuple is its
stable edge index, which is what line graphs and edge colorings refer to.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from .errors import Graph6Error, Inconclusive

__all__ = [
    "Graph",
    "from_graph6",
    "to_graph6",
    "read_graph6_lines",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "complete_bipartite_graph",
    "petersen_graph",
    "prism_graph",
    "line_graph",
    "join",
    "disjoint_union",
    "is_bipartite",
    "find_odd_cycle",
    "is_hamiltonian",
    "is_planar",
    "is_connected",
    "is_biconnected",
    "biconnected_components",
    "has_perfect_matching",
    "degree_profile",
    "DegreeProfile",
]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``edges`` may be given in any order and orientation; it is normalised to
    sorted ``(u, v)`` pairs with ``u < v``. Self-loops, duplicates and
    out-of-range endpoints raise ``ValueError``.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    adjacency: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        norm = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(
            self, "adjacency", tuple(tuple(sorted(a)) for a in adj)
        )
        object.__setattr__(
            self, "_index", {e: i for i, e in enumerate(norm)}
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def edge_index(self, u: int, v: int) -> int:
        """Stable index of edge ``uv``; ``KeyError`` if absent."""
        return self._index[(min(u, v), max(u, v))]

    def neighbor_sets(self) -> list[set[int]]:
        return [set(a) for a in self.adjacency]

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled to ``0..k-1``; also returns the old labels."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        es = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        return Graph(len(old), tuple(es)), old


# --------------------------------------------------------------------------
# graph6

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(
            chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0)
        )
    raise ValueError(f"n={n} too large for graph6")


def to_graph6(g: Graph) -> str:
    """Canonical graph6 string of ``g`` (no header, no newline)."""
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(chr(val + 63))
    return _encode_n(g.n) + "".join(body)


def from_graph6(text: str) -> Graph:
    """Parse one graph6 record.

    An optional ``>>graph6<<`` header and surrounding whitespace are
    accepted. Errors raise :class:`Graph6Error` carrying the byte offset.
    """
    s = text.strip()
    offset = 0
    if s.startswith(">>graph6<<"):
        s = s[10:]
        offset = 10
    if not s:
        raise Graph6Error("empty record", offset)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside 63..126", offset + i)

    vals = [ord(c) - 63 for c in s]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte size header", offset)
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        if n < 63:
            raise Graph6Error("non-canonical size header", offset)
        pos = 4
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte size header", offset)
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        if n < 258048:
            raise Graph6Error("non-canonical size header", offset)
        pos = 8

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}",
            offset + pos + min(len(body), nbytes),
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, bit = divmod(k, 6)
            if (body[byte] >> (5 - bit)) & 1:
                edges.append((i, j))
            k += 1
    if nbytes:
        pad = nbytes * 6 - nbits
        if body[-1] & ((1 << pad) - 1):
            raise Graph6Error("nonzero padding bits", offset + pos + nbytes - 1)
    return Graph(n, tuple(edges))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Yield graphs from graph6 lines, skipping blanks and ``#`` comments."""
    for line in lines:
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        yield from_graph6(s)


# --------------------------------------------------------------------------
# constructors

def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def prism_graph(k: int = 3) -> Graph:
    """Circular ladder ``C_k x K_2``; ``k=3`` is the triangular prism."""
    top = [(i, (i + 1) % k) for i in range(k)]
    bot = [(k + i, k + (i + 1) % k) for i in range(k)]
    rungs = [(i, k + i) for i in range(k)]
    return Graph(2 * k, tuple(top + bot + rungs))


# --------------------------------------------------------------------------
# operations

def line_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Line graph of ``g``; vertex ``i`` of the result is ``g.edges[i]``."""
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        incident[u].append(i)
        incident[v].append(i)
    es = set()
    for inc in incident:
        for a, b in itertools.combinations(inc, 2):
            es.add((a, b))
    return Graph(g.m, tuple(es)), g.edges


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    s = g1.n
    return Graph(g1.n + g2.n, g1.edges + tuple((u + s, v + s) for u, v in g2.edges))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union of ``g1`` and ``g2`` plus every edge between them.

    Vertices of ``g2`` are shifted by ``g1.n``.
    """
    s = g1.n
    cross = tuple((u, s + v) for u in range(g1.n) for v in range(g2.n))
    return Graph(
        g1.n + g2.n,
        g1.edges + tuple((u + s, v + s) for u, v in g2.edges) + cross,
    )


def _bfs_2color(g: Graph) -> tuple[list[int], list[int], tuple[int, int] | None]:
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    return color, parent, (u, v)
    return color, parent, None


def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Bipartition ``(A, B)`` of ``g``, or ``None`` if ``g`` has an odd cycle."""
    color, _, clash = _bfs_2color(g)
    if clash is not None:
        return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    return a, frozenset(range(g.n)) - a


def find_odd_cycle(g: Graph) -> list[int] | None:
    """Vertex sequence of some odd cycle, or ``None`` when ``g`` is bipartite."""
    _, parent, clash = _bfs_2color(g)
    if clash is None:
        return None
    u, v = clash

    def to_root(x):
        out = [x]
        while parent[x] != -1:
            x = parent[x]
            out.append(x)
        return out

    pu, pv = to_root(u), to_root(v)
    on_pv = set(pv)
    lca = next(x for x in pu if x in on_pv)
    left = pu[: pu.index(lca) + 1]
    right = pv[: pv.index(lca)]
    return left + list(reversed(right))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adjacency[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def biconnected_components(g: Graph) -> tuple[list[list[tuple[int, int]]], set[int]]:
    """Blocks (as edge lists) and articulation points, iterative Tarjan."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[list[tuple[int, int]]] = []
    cut: set[int] = set()
    t = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        estack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if v == parent:
                    continue
                if disc[v] == -1:
                    estack.append((u, v))
                    disc[v] = low[v] = t
                    t += 1
                    if u == root:
                        children += 1
                    stack.append((v, u, iter(g.adjacency[v])))
                    advanced = True
                    break
                if disc[v] < disc[u]:
                    estack.append((u, v))
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cut.add(parent)
                block = []
                while True:
                    e = estack.pop()
                    block.append((min(e), max(e)))
                    if e == (parent, u):
                        break
                blocks.append(sorted(block))
        if children > 1:
            cut.add(root)
    return blocks, cut


def is_biconnected(g: Graph) -> bool:
    """Connected, at least 3 vertices, and no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    _, cut = biconnected_components(g)
    return not cut


@dataclass(frozen=True)
class DegreeProfile:
    max_degree: int
    regular: bool
    degrees: tuple[int, ...]


def degree_profile(g: Graph) -> DegreeProfile:
    degs = tuple(len(a) for a in g.adjacency)
    return DegreeProfile(
        max(degs, default=0), len(set(degs)) <= 1, degs
    )


# --------------------------------------------------------------------------
# perfect matching

def has_perfect_matching(g: Graph) -> tuple[tuple[int, int], ...] | None:
    """A perfect matching of ``g`` as sorted edges, or ``None``.

    Exhaustive branching on the lowest-index uncovered vertex. Odd order
    is rejected immediately.
    """
    if g.n % 2:
        return None
    covered = [False] * g.n
    chosen: list[tuple[int, int]] = []

    def branch(start: int) -> bool:
        u = start
        while u < g.n and covered[u]:
            u += 1
        if u == g.n:
            return True
        covered[u] = True
        for v in g.adjacency[u]:
            if covered[v]:
                continue
            covered[v] = True
            chosen.append((u, v))
            if branch(u + 1):
                return True
            chosen.pop()
            covered[v] = False
        covered[u] = False
        return False

    if branch(0):
        return tuple(sorted(chosen))
    return None


# --------------------------------------------------------------------------
# Hamiltonicity

def _validate_cycle(g: Graph, cycle) -> bool:
    if len(cycle) != g.n or len(set(cycle)) != g.n:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))


def is_hamiltonian(g: Graph, budget: int | None = 10_000_000) -> tuple[int, ...] | None:
    """A Hamiltonian cycle starting at vertex 0, or ``None`` if none exists.

    Exact backtracking with two prunings: every unvisited vertex must keep
    at least two usable neighbours, and the unvisited vertices must stay
    connected to the path's current end. ``None`` is only returned after
    the search is exhausted; running out of ``budget`` search nodes raises
    :class:`Inconclusive`.
    """
    if g.n < 3:
        raise ValueError("Hamiltonicity is defined here for n >= 3")
    if any(len(a) < 2 for a in g.adjacency) or not is_connected(g):
        return None

    nbrs = g.neighbor_sets()
    visited = [False] * g.n
    path = [0]
    visited[0] = True
    nodes = 0

    def feasible(end: int) -> bool:
        remaining = [v for v in range(g.n) if not visited[v]]
        if not remaining:
            return True
        for v in remaining:
            usable = sum(1 for w in nbrs[v] if not visited[w] or w == end or w == 0)
            if usable < 2:
                return False
        # unvisited vertices must hang together and touch the path's end
        rem = set(remaining)
        start = next((w for w in nbrs[end] if w in rem), None)
        if start is None:
            return False
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for w in nbrs[x]:
                if w in rem and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(rem) and any(w in rem for w in nbrs[0])

    def extend(end: int) -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise Inconclusive(f"Hamiltonicity search exceeded {budget} nodes")
        if len(path) == g.n:
            return 0 in nbrs[end]
        cands = sorted(w for w in nbrs[end] if not visited[w])
        if len(path) > 1:
            # an unvisited vertex whose only two usable neighbours include
            # ``end`` must come next
            forced = [
                w for w in cands
                if sum(1 for x in nbrs[w] if not visited[x] or x in (end, 0)) == 2
            ]
            if len(forced) > 1:
                return False
            if forced:
                cands = forced
        for w in cands:
            visited[w] = True
            path.append(w)
            if feasible(w) and extend(w):
                return True
            path.pop()
            visited[w] = False
        return False

    if extend(0):
        cyc = tuple(path)
        assert _validate_cycle(g, cyc)
        return cyc
    return None


# --------------------------------------------------------------------------
# planarity (Demoucron-Malgrange-Pertuiset on each block)

def _block_planar(vertices: set[int], edges: list[tuple[int, int]]) -> bool:
    nv, ne = len(vertices), len(edges)
    if ne <= 3 or nv <= 4:
        return True
    if ne > 3 * nv - 6:
        return False
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    # initial cycle: DFS until a back edge closes one
    start = min(vertices)
    parent = {start: None}
    order = [start]
    cycle = None
    stack = [(start, iter(sorted(adj[start])))]
    while stack and cycle is None:
        u, it = stack[-1]
        for w in it:
            if w == parent[u]:
                continue
            if w in parent:
                cyc = [u]
                x = u
                while x != w:
                    x = parent[x]
                    cyc.append(x)
                cycle = cyc
                break
            parent[w] = u
            order.append(w)
            stack.append((w, iter(sorted(adj[w]))))
            break
        else:
            stack.pop()
    assert cycle is not None  # a block with >3 edges has a cycle

    emb_v = set(cycle)
    emb_e = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
    faces = [list(cycle), list(reversed(cycle))]

    while len(emb_e) < ne:
        fragments = []  # (attachments, path-finder data)
        for u, v in edges:
            if u in emb_v and v in emb_v and frozenset((u, v)) not in emb_e:
                fragments.append(({u, v}, [u, v]))
        seen: set[int] = set()
        for s in sorted(vertices - emb_v):
            if s in seen:
                continue
            comp = {s}
            st = [s]
            while st:
                x = st.pop()
                for w in adj[x]:
                    if w not in emb_v and w not in comp:
                        comp.add(w)
                        st.append(w)
            seen |= comp
            attach = {w for x in comp for w in adj[x] if w in emb_v}
            fragments.append((attach, comp))

        best = None
        for attach, data in fragments:
            ok = [i for i, f in enumerate(faces) if attach <= set(f)]
            if not ok:
                return False
            if best is None or len(ok) < len(best[2]):
                best = (attach, data, ok)
            if len(ok) == 1:
                break
        attach, data, ok = best
        face = faces[ok[0]]

        if isinstance(data, list):
            path = data
        else:
            comp = data
            a = min(attach)
            first = min(w for w in adj[a] if w in comp)
            prev = {first: None}
            queue = deque([first])
            end = b = None
            while queue:
                x = queue.popleft()
                hits = [w for w in adj[x] if w in attach and w != a]
                if hits:
                    end, b = x, min(hits)
                    break
                for w in sorted(adj[x]):
                    if w in comp and w not in prev:
                        prev[w] = x
                        queue.append(w)
            inner = []
            x = end
            while x is not None:
                inner.append(x)
                x = prev[x]
            path = [a] + inner[::-1] + [b]

        a, b = path[0], path[-1]
        ia, ib = face.index(a), face.index(b)
        k = len(face)
        arc_ab = [face[(ia + i) % k] for i in range((ib - ia) % k + 1)]
        arc_ba = [face[(ib + i) % k] for i in range((ia - ib) % k + 1)]
        mid = path[1:-1]
        f1 = arc_ab + mid[::-1]
        f2 = arc_ba + mid
        faces[ok[0]] = f1
        faces.append(f2)
        emb_v.update(path)
        for i in range(len(path) - 1):
            emb_e.add(frozenset((path[i], path[i + 1])))
    return True


def is_planar(g: Graph) -> bool:
    """Exact planarity test.

    Splits into biconnected blocks and runs the face-insertion
    (Demoucron-Malgrange-Pertuiset) embedding on each block.
    """
    if g.n >= 3 and g.m > 3 * g.n - 6:
        return False
    blocks, _ = biconnected_components(g)
    for block in blocks:
        vs = {x for e in block for x in e}
        if not _block_planar(vs, block):
            return False
    return True
