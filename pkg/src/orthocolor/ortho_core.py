"""Exact rational vector machinery.

Orthogonality graphs, orthonormal-basis enumeration, the Kochen-Specker
decision, verification of orthogonal colorings, bounds on the orthogonal
number, and the zero-padding direct sum used on joins. Every dot product
here is exact (``fractions.Fraction``); floats only enter through
:func:`verify_ortho_coloring` in tolerance mode.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .colorings import OrthoColoring, conflict_graph
from .errors import Inconclusive
from .exact_chroma import DEFAULT_BUDGET, chromatic_number, coloring_to_orthogonal, max_clique
from .graph_core import Graph, is_bipartite, join

__all__ = [
    "VectorSet",
    "KSDecision",
    "VerificationReport",
    "PiBounds",
    "dot",
    "canonical_form",
    "orthogonality_graph",
    "enumerate_orthobases",
    "ks_decide",
    "verify_ortho_coloring",
    "pi_bounds",
    "direct_sum_coloring",
    "iterated_join",
    "iterated_direct_sum",
    "amplify_bounds",
    "parse_vectorset",
    "format_vectorset",
]

Vector = tuple[Fraction, ...]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def canonical_form(v: Sequence) -> tuple[int, ...]:
    """Primitive integer representative of the line through ``v``.

    Scales to integers, divides by the gcd and makes the first nonzero
    coordinate positive, so ``v`` and ``c*v`` (c != 0) map to the same tuple.
    """
    fr = [Fraction(c) for c in v]
    if all(c == 0 for c in fr):
        raise ValueError("zero vector has no direction")
    lcm = 1
    for c in fr:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fr]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    first = next(c for c in ints if c != 0)
    if first < 0:
        ints = [-c for c in ints]
    return tuple(ints)


@dataclass(frozen=True)
class VectorSet:
    """Ordered set of nonzero rational vectors of one dimension.

    No two members may be scalar multiples of each other. ``bases`` is an
    optional list of index tuples carried along from a file; it plays no
    part in :func:`ks_decide`, which always enumerates bases itself.
    """

    vectors: tuple[Vector, ...]
    bases: tuple[tuple[int, ...], ...] = ()
    canonical: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vecs = tuple(tuple(Fraction(c) for c in v) for v in self.vectors)
        if not vecs:
            raise ValueError("vector set is empty")
        d = len(vecs[0])
        if d < 1:
            raise ValueError("vectors must have dimension >= 1")
        for i, v in enumerate(vecs):
            if len(v) != d:
                raise ValueError(f"vector {i} has dimension {len(v)}, expected {d}")
            if all(c == 0 for c in v):
                raise ValueError(f"vector {i} is zero")
        canon = tuple(canonical_form(v) for v in vecs)
        seen: dict[tuple[int, ...], int] = {}
        for i, c in enumerate(canon):
            if c in seen:
                raise ValueError(f"vectors {seen[c]} and {i} are parallel")
            seen[c] = i
        bases = tuple(tuple(int(i) for i in b) for b in self.bases)
        for b in bases:
            if any(not 0 <= i < len(vecs) for i in b):
                raise ValueError(f"basis {b} refers to a missing vector")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "canonical", canon)

    @property
    def d(self) -> int:
        return len(self.vectors[0])

    def __len__(self) -> int:
        return len(self.vectors)

    def index_of(self, v: Sequence) -> int:
        """Index of the member parallel to ``v``; ``KeyError`` if none."""
        c = canonical_form(v)
        for i, ci in enumerate(self.canonical):
            if ci == c:
                return i
        raise KeyError(v)


def _ortho_matrix(s: VectorSet) -> list[list[bool]]:
    n = len(s)
    m = [[False] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if dot(s.vectors[i], s.vectors[j]) == 0:
            m[i][j] = m[j][i] = True
    return m


def orthogonality_graph(s: VectorSet) -> Graph:
    """Vertex i is ``s.vectors[i]``; edges join exactly-orthogonal pairs."""
    m = _ortho_matrix(s)
    n = len(s)
    return Graph(n, tuple((i, j) for i, j in itertools.combinations(range(n), 2) if m[i][j]))


def enumerate_orthobases(s: VectorSet) -> list[tuple[int, ...]]:
    """Every size-d subset of ``s`` whose members are pairwise orthogonal.

    Scans all ``C(len(s), d)`` subsets in lexicographic order, so the
    result is sorted. Pairwise-orthogonal nonzero vectors are linearly
    independent, hence each hit is a basis (orthonormal after scaling).
    """
    m = _ortho_matrix(s)
    out = []
    for combo in itertools.combinations(range(len(s)), s.d):
        if all(m[a][b] for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return out


@dataclass(frozen=True)
class KSDecision:
    """Result of :func:`ks_decide`.

    ``witness`` is a 0/1 marking with exactly one mark per basis when the
    set is not Kochen-Specker, ``None`` otherwise.
    """

    is_ks: bool
    witness: tuple[int, ...] | None
    bases: tuple[tuple[int, ...], ...]
    nodes: int

    def to_json(self) -> dict:
        return {
            "ks": self.is_ks,
            "witness": list(self.witness) if self.witness is not None else None,
            "bases": [list(b) for b in self.bases],
            "nodes": self.nodes,
        }


def ks_decide(s: VectorSet, bases: Iterable[Sequence[int]] | None = None) -> KSDecision:
    """Decide whether ``s`` admits a 0/1 marking with exactly one mark per basis.

    ``bases`` defaults to every orthonormal basis inside ``s``. The search
    branches on which member of the most constrained open basis gets the
    mark, with unit propagation: a mark zeroes every vector sharing a basis
    with it, and a basis left with one open member forces that member.
    """
    if bases is None:
        bases = enumerate_orthobases(s)
    bases = tuple(tuple(b) for b in bases)
    n = len(s)
    member_of: list[list[int]] = [[] for _ in range(n)]
    for bi, b in enumerate(bases):
        for v in b:
            member_of[v].append(bi)
    value = [-1] * n
    nodes = 0

    def propagate(trail: list[int], queue: list[tuple[int, int]]) -> bool:
        while queue:
            v, x = queue.pop()
            if value[v] != -1:
                if value[v] != x:
                    return False
                continue
            value[v] = x
            trail.append(v)
            for bi in member_of[v]:
                b = bases[bi]
                if x == 1:
                    for w in b:
                        if w != v:
                            if value[w] == 1:
                                return False
                            if value[w] == -1:
                                queue.append((w, 0))
                else:
                    if any(value[w] == 1 for w in b):
                        continue
                    open_ = [w for w in b if value[w] == -1]
                    if not open_:
                        return False
                    if len(open_) == 1:
                        queue.append((open_[0], 1))
        return True

    def undo(trail):
        for v in trail:
            value[v] = -1

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        pick = None
        for b in bases:
            if any(value[w] == 1 for w in b):
                continue
            open_ = [w for w in b if value[w] == -1]
            if pick is None or len(open_) < len(pick):
                pick = open_
        if pick is None:
            return True
        for v in pick:
            trail: list[int] = []
            if propagate(trail, [(v, 1)]) and search():
                return True
            undo(trail)
        return False

    if search():
        witness = tuple(max(x, 0) for x in value)
        assert all(sum(witness[v] for v in b) == 1 for b in bases)
        return KSDecision(False, witness, bases, nodes)
    return KSDecision(True, None, bases, nodes)


# --------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    mode: str
    violations: tuple[tuple[int, int, float], ...]
    max_residual: float

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "max_residual": self.max_residual,
            "violations": [list(v) for v in self.violations],
        }


def verify_ortho_coloring(
    g: Graph, f: OrthoColoring, tol: float | None = None
) -> VerificationReport:
    """Check that adjacent elements of ``g`` get orthogonal vectors.

    With ``tol=None`` the check is exact (floats are converted to their exact
    rational values). Otherwise vectors are normalised and a pair passes when
    ``|cos| <= tol``. Violations are reported as ``(i, j, residual)`` with the
    normalised residual ``|<x_i, x_j>| / (|x_i| |x_j|)``.
    """
    if f.graph != g:
        raise ValueError("coloring belongs to a different graph")
    h = conflict_graph(g, f.target)
    if len(f.assignment) != h.n:
        raise ValueError(f"assignment covers {len(f.assignment)} of {h.n} elements")
    dims = {len(x) for x in f.assignment}
    if len(dims) > 1:
        raise ValueError(f"mixed vector dimensions {sorted(dims)}")

    floats = [np.asarray([float(c) for c in x], dtype=float) for x in f.assignment]
    norms = [float(np.linalg.norm(x)) for x in floats]
    if tol is None:
        exact = [tuple(Fraction(c) for c in x) for x in f.assignment]
        for i, x in enumerate(exact):
            if all(c == 0 for c in x):
                raise ValueError(f"element {i} carries the zero vector")
    else:
        for i, x in enumerate(f.assignment):
            if norms[i] == 0.0:
                raise ValueError(f"element {i} carries the zero vector")

    violations = []
    worst = 0.0
    for i, j in h.edges:
        if norms[i] > 0 and norms[j] > 0:
            res = abs(float(floats[i] @ floats[j])) / (norms[i] * norms[j])
        else:
            res = 0.0
        if tol is None:
            bad = dot(exact[i], exact[j]) != 0
            if bad and res == 0.0:
                res = float("nan")  # nonzero exactly, underflows in floats
        else:
            bad = res > tol
        worst = max(worst, res) if not math.isnan(res) else worst
        if bad:
            violations.append((i, j, res))
    return VerificationReport(
        not violations, "exact" if tol is None else f"tol={tol:g}", tuple(violations), worst
    )


# --------------------------------------------------------------------------
# bounds on the orthogonal number

@dataclass(frozen=True)
class PiBounds:
    lower: int
    upper: int
    clique: tuple[int, ...]
    coloring: OrthoColoring | None
    lower_reason: str

    @property
    def tight(self) -> bool:
        return self.lower == self.upper


def pi_bounds(g: Graph, budget: int | None = DEFAULT_BUDGET) -> PiBounds:
    """Interval containing the orthogonal number of ``g``.

    The lower bound is the clique number (pairwise-orthogonal vectors need
    that many dimensions), raised to 3 for non-bipartite graphs with an
    edge, because orthogonality in the plane pins each vector's partner
    down to a sign and so forces a 2-coloring. The upper bound is the
    chromatic number, witnessed by the canonical-basis lift of an optimal
    coloring.
    """
    if g.n == 0:
        return PiBounds(0, 0, (), None, "empty")
    try:
        clique = max_clique(g, budget)
    except Inconclusive as exc:
        clique = exc.best
    lower, reason = len(clique), "clique"
    if g.m and lower < 3 and is_bipartite(g) is None:
        lower, reason = 3, "odd-cycle"
    chi = chromatic_number(g, budget=budget)
    lift = coloring_to_orthogonal(chi.certificate)
    return PiBounds(lower, chi.upper, clique, lift, reason)


def direct_sum_coloring(f1: OrthoColoring, f2: OrthoColoring) -> OrthoColoring:
    """Orthogonal coloring of ``join(g1, g2)`` by zero-padding.

    Vertices of ``g1`` get ``(f1(v), 0)`` and vertices of ``g2`` get
    ``(0, f2(v))``; every cross pair is then orthogonal automatically.
    """
    for f in (f1, f2):
        if f.target != "vertex":
            raise ValueError("direct sum is defined for vertex colorings")
        if not f.exact:
            raise ValueError("direct sum needs exact colorings")
        if not verify_ortho_coloring(f.graph, f).passed:
            raise ValueError("input coloring is not orthogonal")
    z1 = (Fraction(0),) * f1.d
    z2 = (Fraction(0),) * f2.d
    vecs = tuple(tuple(x) + z2 for x in f1.assignment) + tuple(z1 + tuple(x) for x in f2.assignment)
    return OrthoColoring(join(f1.graph, f2.graph), "vertex", f1.d + f2.d, vecs)


def iterated_join(g: Graph, k: int) -> Graph:
    """``g`` joined with a copy of itself, repeated ``k`` times (2^k copies)."""
    for _ in range(k):
        g = join(g, g)
    return g


def iterated_direct_sum(f: OrthoColoring, k: int) -> OrthoColoring:
    for _ in range(k):
        f = direct_sum_coloring(f, f)
    return f


def amplify_bounds(lower: int, upper: int, k: int) -> tuple[int, int]:
    """Bounds after ``k`` self-joins: both ends double each time (additivity)."""
    return lower << k, upper << k


# --------------------------------------------------------------------------
# file format

def _parse_rational(tok: str) -> Fraction:
    return Fraction(tok.strip())


def parse_vectorset(text: str) -> VectorSet:
    """Parse the vector-set text format.

    One vector per line as comma-separated integers or ``p/q`` rationals,
    ``#`` starts a comment, and an optional line ``bases`` (or ``[bases]``,
    ``bases:``) opens a section of comma-separated index tuples.
    """
    vectors, bases = [], []
    section = "vectors"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().strip("[]:") == "bases":
            section = "bases"
            continue
        try:
            toks = [t for t in line.replace(";", ",").split(",") if t.strip()]
            if section == "vectors":
                vectors.append(tuple(_parse_rational(t) for t in toks))
            else:
                bases.append(tuple(int(t) for t in toks))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return VectorSet(tuple(vectors), tuple(bases))


def format_vectorset(s: VectorSet) -> str:
    lines = [f"# {len(s)} vectors in dimension {s.d}"]
    lines += [", ".join(str(c) for c in v) for v in s.vectors]
    if s.bases:
        lines.append("bases")
        lines += [", ".join(str(i) for i in b) for b in s.bases]
    return "\n".join(lines) + "\n"
