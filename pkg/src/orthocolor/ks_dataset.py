"""The 18-vector Kochen-Specker set in R^4 and its 9-vertex bases graph.

Each of the nine bases is a vertex; two bases are adjacent when they share
a vector, and that shared vector labels the edge. Because each basis has
four vectors and each vector lies in exactly two bases, the graph is
4-regular on 9 vertices and the labels form an orthogonal 4-edge-coloring,
while odd order rules out any proper 4-edge-coloring.

Transcription note. A widely reproduced rendering of this table gives
basis B5 the fourth vector ``(0,1,-1,0)``, which is not orthogonal to its
``(0,0,1,0)``, and lists ``(1,0,0,-1)`` twice in B6. The data below follows
the Cabello-Estebaranz-Garcia-Alcaine set the table comes from: B5 ends in
``(1,0,0,-1)`` and B6 in ``(0,1,-1,0)``. :func:`load_dataset` re-checks
orthogonality of every basis and the exactly-twice multiplicity, so a bad
transcription cannot load.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .colorings import OrthoColoring
from .errors import DatasetError
from .graph_core import Graph
from .ortho_core import VectorSet, canonical_form, dot, verify_ortho_coloring

__all__ = [
    "BASES",
    "KSDataset",
    "load_dataset",
    "dataset_from_vectorset",
    "bases_graph",
    "shared_vector_edge_coloring",
]

# columns B1..B9, top to bottom
BASES: tuple[tuple[tuple[int, ...], ...], ...] = (
    ((0, 0, 0, 1), (0, 0, 1, 0), (1, 1, 0, 0), (1, -1, 0, 0)),
    ((0, 0, 0, 1), (0, 1, 0, 0), (1, 0, 1, 0), (1, 0, -1, 0)),
    ((1, -1, 1, -1), (1, -1, -1, 1), (1, 1, 0, 0), (0, 0, 1, 1)),
    ((1, -1, 1, -1), (1, 1, 1, 1), (1, 0, -1, 0), (0, 1, 0, -1)),
    ((0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 1), (1, 0, 0, -1)),
    ((1, -1, -1, 1), (1, 1, 1, 1), (1, 0, 0, -1), (0, 1, -1, 0)),
    ((1, 1, -1, 1), (1, 1, 1, -1), (1, -1, 0, 0), (0, 0, 1, 1)),
    ((1, 1, -1, 1), (-1, 1, 1, 1), (1, 0, 1, 0), (0, 1, 0, -1)),
    ((1, 1, 1, -1), (-1, 1, 1, 1), (1, 0, 0, 1), (0, 1, -1, 0)),
)


@dataclass(frozen=True)
class KSDataset:
    vectors: VectorSet
    bases: tuple[tuple[int, ...], ...]
    shared: dict[int, tuple[int, int]]


def dataset_from_vectorset(s: VectorSet) -> KSDataset:
    """Validate a vector set plus listed bases as a bases-graph dataset.

    Requirements: dimension 4 is not assumed, but every listed basis must
    have ``d`` pairwise-orthogonal members, every vector must occur in
    exactly two listed bases, and no two bases may share two vectors.
    Raises :class:`DatasetError` naming the first failure.
    """
    if not s.bases:
        raise DatasetError("dataset needs a bases section")
    for bi, b in enumerate(s.bases):
        if len(b) != s.d or len(set(b)) != len(b):
            raise DatasetError(f"basis B{bi + 1} does not list {s.d} distinct vectors")
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                if dot(s.vectors[b[i]], s.vectors[b[j]]) != 0:
                    raise DatasetError(
                        f"basis B{bi + 1}: vectors {s.vectors[b[i]]} and "
                        f"{s.vectors[b[j]]} are not orthogonal"
                    )
    where: dict[int, list[int]] = {i: [] for i in range(len(s))}
    for bi, b in enumerate(s.bases):
        for v in b:
            where[v].append(bi)
    for v, bs in where.items():
        if len(bs) != 2:
            raise DatasetError(
                f"vector {v} {tuple(str(c) for c in s.vectors[v])} lies in "
                f"{len(bs)} bases, expected exactly 2"
            )
    pairs = Counter(tuple(bs) for bs in where.values())
    for (a, b), cnt in pairs.items():
        if cnt > 1:
            raise DatasetError(f"bases B{a + 1} and B{b + 1} share {cnt} vectors")
    return KSDataset(s, s.bases, {v: (bs[0], bs[1]) for v, bs in where.items()})


def load_dataset() -> KSDataset:
    """The embedded 18-vector set with its nine bases, validated on load."""
    vectors: list[tuple[int, ...]] = []
    index: dict[tuple[int, ...], int] = {}
    bases = []
    for col in BASES:
        b = []
        for v in col:
            key = canonical_form(v)
            if key not in index:
                index[key] = len(vectors)
                vectors.append(v)
            b.append(index[key])
        bases.append(tuple(b))
    vs = VectorSet(tuple(tuple(Fraction(c) for c in v) for v in vectors), tuple(bases))
    ds = dataset_from_vectorset(vs)
    if len(vs) != 18 or len(bases) != 9:
        raise DatasetError(f"expected 18 vectors in 9 bases, got {len(vs)} in {len(bases)}")
    return ds


def bases_graph(ds: KSDataset) -> tuple[Graph, tuple[int, ...]]:
    """Graph on the bases, one edge per shared vector.

    Returns the graph and, per edge index, the index of the vector that
    labels it.
    """
    by_pair = {}
    for v, (a, b) in ds.shared.items():
        key = (min(a, b), max(a, b))
        if key in by_pair:
            raise DatasetError(f"bases B{a + 1} and B{b + 1} share two vectors")
        by_pair[key] = v
    g = Graph(len(ds.bases), tuple(by_pair))
    labels = tuple(by_pair[e] for e in g.edges)
    return g, labels


def shared_vector_edge_coloring(ds: KSDataset) -> OrthoColoring:
    """Each edge of the bases graph colored by its shared vector."""
    g, labels = bases_graph(ds)
    f = OrthoColoring(g, "edge", ds.vectors.d, tuple(ds.vectors.vectors[v] for v in labels))
    rep = verify_ortho_coloring(g, f)
    if not rep.passed:
        raise DatasetError(f"shared-vector coloring fails at {rep.violations[:3]}")
    return f
