"""Coloring containers: proper (integer) colorings and orthogonal vector colorings."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .graph_core import Graph, line_graph

Target = Literal["vertex", "edge"]

__all__ = ["Coloring", "OrthoColoring", "is_proper", "conflict_graph", "Target"]


def conflict_graph(g: Graph, target: Target) -> Graph:
    """Graph whose adjacency is the one a coloring of ``target`` must respect."""
    if target == "vertex":
        return g
    if target == "edge":
        return line_graph(g)[0]
    raise ValueError(f"unknown target {target!r}")


def _element_count(g: Graph, target: Target) -> int:
    return g.n if target == "vertex" else g.m


@dataclass(frozen=True)
class Coloring:
    """Assignment of colors ``0..k-1`` to the vertices or edges of ``graph``.

    For ``target="edge"`` the assignment is indexed by ``graph.edges``.
    Properness is not enforced on construction; see :func:`is_proper`.
    """

    graph: Graph
    target: Target
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if len(self.assignment) != _element_count(self.graph, self.target):
            raise ValueError(
                f"{self.target} coloring needs {_element_count(self.graph, self.target)} "
                f"entries, got {len(self.assignment)}"
            )
        used = set(self.assignment)
        if used != set(range(len(used))):
            raise ValueError(f"colors must be exactly 0..k-1, got {sorted(used)}")

    @property
    def k(self) -> int:
        return len(set(self.assignment))

    def to_json(self) -> dict:
        return {"target": self.target, "k": self.k, "assignment": list(self.assignment)}


def is_proper(c: Coloring) -> bool:
    h = conflict_graph(c.graph, c.target)
    return all(c.assignment[u] != c.assignment[v] for u, v in h.edges)


@dataclass(frozen=True)
class OrthoColoring:
    """Vector assignment to the vertices (or edges) of ``graph`` in dimension ``d``.

    Exact colorings hold tuples of :class:`fractions.Fraction`; numeric
    ones hold float arrays. Orthogonality is checked by
    :func:`orthocolor.ortho_core.verify_ortho_coloring`, not here.
    """

    graph: Graph
    target: Target
    d: int
    assignment: tuple

    def __post_init__(self):
        vecs = []
        for x in self.assignment:
            if isinstance(x, np.ndarray):
                vecs.append(np.asarray(x, dtype=float))
            else:
                vecs.append(tuple(Fraction(c) for c in x))
        object.__setattr__(self, "assignment", tuple(vecs))
        need = _element_count(self.graph, self.target)
        if len(vecs) != need:
            raise ValueError(f"{self.target} assignment needs {need} vectors, got {len(vecs)}")
        for i, x in enumerate(vecs):
            if len(x) != self.d:
                raise ValueError(f"element {i} has dimension {len(x)}, expected {self.d}")

    @property
    def exact(self) -> bool:
        return all(not isinstance(x, np.ndarray) for x in self.assignment)

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, np.ndarray):
                return [float(c) for c in x]
            return [str(c) for c in x]

        return {
            "target": self.target,
            "d": self.d,
            "exact": self.exact,
            "assignment": [enc(x) for x in self.assignment],
        }


def canonical_vector(i: int, d: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(j == i)) for j in range(d))


def as_exact(vectors: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(c) for c in v) for v in vectors)
