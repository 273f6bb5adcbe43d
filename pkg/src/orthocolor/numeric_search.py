"""Numerical search for orthogonal (edge-)colorings on products of spheres.

Every element gets a unit vector in ``R^d`` and the penalty

    loss(x) = sum over conflicting pairs uv of <x_u, x_v>^2

is driven to zero by Riemannian gradient descent: Euclidean gradient,
projection onto each sphere's tangent space, Armijo backtracking, and
renormalisation as the retraction. Restarts are run as a batch.

A successful run is only numerical evidence. An upper bound on the
orthogonal number is asserted only when :func:`round_to_rational` turns the
float solution into an exact rational coloring that passes exact
verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .colorings import OrthoColoring, Target, conflict_graph
from .graph_core import Graph
from .ortho_core import verify_ortho_coloring

__all__ = [
    "SphereAssignment",
    "SolveConfig",
    "SolveReport",
    "RoundingOutcome",
    "loss",
    "gradient",
    "residual",
    "random_assignment",
    "search_ortho_coloring",
    "search_ortho_edge_coloring",
    "round_to_rational",
]

NORM_TOL = 1e-12
_CHUNK = 256
_MAX_HALVINGS = 60


@dataclass(frozen=True)
class SphereAssignment:
    """One unit vector per element, stored as rows of ``x`` (shape ``(n, d)``)."""

    x: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        if x.ndim != 2:
            raise ValueError(f"assignment must be 2-d, got shape {x.shape}")
        if x.shape[0] and np.any(np.abs(np.linalg.norm(x, axis=1) - 1.0) > NORM_TOL):
            raise ValueError("every row must have unit norm")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def d(self) -> int:
        return self.x.shape[1]

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @classmethod
    def normalized(cls, x) -> "SphereAssignment":
        x = np.asarray(x, dtype=float)
        return cls(x / np.linalg.norm(x, axis=1, keepdims=True))


@dataclass(frozen=True)
class SolveConfig:
    d: int
    restarts: int = 100
    max_iter: int = 10_000
    tol: float = 1e-9
    seed: int = 0
    armijo: float = 1e-4
    initial_step: float = 1.0
    grad_tol: float = 1e-12
    round_denominator: int | None = 10**6
    stop_on_success: bool = True
    record_history: bool = False

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.restarts < 1 or self.max_iter < 1:
            raise ValueError("restarts and max_iter must be positive")
        if not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")
        if self.round_denominator is not None and self.round_denominator < 1:
            raise ValueError("round_denominator must be positive")


@dataclass(frozen=True)
class RoundingOutcome:
    certified: bool
    max_denominator: int
    certificate: OrthoColoring | None = None
    denominator_used: int | None = None
    failing_pairs: tuple[tuple[int, int], ...] = ()

    def to_json(self) -> dict:
        return {
            "attempted": True,
            "certified": self.certified,
            "max_denominator": self.max_denominator,
            "denominator_used": self.denominator_used,
            "failing_pairs": [list(p) for p in self.failing_pairs[:20]],
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a multi-restart search.

    ``residual`` is the best max-|cos| over conflicting pairs;
    ``status == "success"`` iff it is at most ``tol``. ``pi_upper_bound``
    is set only when a rational certificate exists.
    """

    status: Literal["success", "exhausted"]
    target: Target
    d: int
    residual: float
    assignment: SphereAssignment
    best_restart: int
    per_restart_losses: tuple[float, ...]
    per_restart_residuals: tuple[float, ...]
    seed: int
    tol: float
    rounding: RoundingOutcome | None = None
    history: tuple[tuple[float, ...], ...] | None = field(default=None, repr=False)

    @property
    def restarts(self) -> int:
        return len(self.per_restart_losses)

    @property
    def certified(self) -> bool:
        return self.rounding is not None and self.rounding.certified

    @property
    def pi_upper_bound(self) -> int | None:
        return self.d if self.certified else None

    def to_json(self, include_assignment: bool = True) -> dict:
        out = {
            "status": self.status,
            "target": self.target,
            "d": self.d,
            "residual": self.residual,
            "tol": self.tol,
            "restarts": self.restarts,
            "best_restart": self.best_restart,
            "seed": self.seed,
            "per_restart_losses": list(self.per_restart_losses),
            "rounding": (
                self.rounding.to_json()
                if self.rounding is not None
                else {"attempted": False, "certified": False, "max_denominator": None}
            ),
            "pi_upper_bound": self.pi_upper_bound,
        }
        if include_assignment:
            out["assignment"] = self.assignment.x.tolist()
        return out

    def to_csv(self) -> str:
        rows = ["restart,loss,residual"]
        rows += [
            f"{i},{l!r},{r!r}"
            for i, (l, r) in enumerate(zip(self.per_restart_losses, self.per_restart_residuals))
        ]
        return "\n".join(rows) + "\n"


# --------------------------------------------------------------------------
# objective

class _Incidence:
    """Edge endpoints plus padded per-vertex (neighbour, edge) tables.

    Padding points at a dummy all-zero vertex row and a dummy zero dot
    product, so the gradient is a fixed-order sum with no scatter.
    """

    def __init__(self, h: Graph):
        self.n, self.m = h.n, h.m
        if h.m:
            e = np.asarray(h.edges, dtype=np.intp)
            self.eu, self.ev = e[:, 0], e[:, 1]
        else:
            self.eu = self.ev = np.zeros(0, dtype=np.intp)
        width = max((len(a) for a in h.adjacency), default=0)
        self.nbr = np.full((h.n, width), h.n, dtype=np.intp)
        self.eid = np.full((h.n, width), h.m, dtype=np.intp)
        for u, adj in enumerate(h.adjacency):
            for k, v in enumerate(adj):
                self.nbr[u, k] = v
                self.eid[u, k] = h.edge_index(u, v)


def _dots(x: np.ndarray, inc: _Incidence) -> np.ndarray:
    return np.sum(x[..., inc.eu, :] * x[..., inc.ev, :], axis=-1)


def _batch_loss(x: np.ndarray, inc: _Incidence) -> np.ndarray:
    return np.sum(_dots(x, inc) ** 2, axis=-1)


def _batch_grad(x: np.ndarray, inc: _Incidence) -> np.ndarray:
    """Tangent-projected gradient for a batch ``x`` of shape ``(R, n, d)``."""
    r, n, d = x.shape
    dp = np.concatenate([_dots(x, inc), np.zeros((r, 1))], axis=1)
    xp = np.concatenate([x, np.zeros((r, 1, d))], axis=1)
    g = 2.0 * np.sum(dp[:, inc.eid, None] * xp[:, inc.nbr, :], axis=2)
    radial = np.sum(g * x, axis=-1, keepdims=True)
    return g - radial * x


def _check(a: SphereAssignment, h: Graph):
    if a.n != h.n:
        raise ValueError(f"assignment has {a.n} rows, graph needs {h.n}")


def loss(a: SphereAssignment, g: Graph) -> float:
    """Sum of squared inner products over the edges of ``g``."""
    _check(a, g)
    return float(_batch_loss(a.x, _Incidence(g)))


def gradient(a: SphereAssignment, g: Graph) -> np.ndarray:
    """Riemannian gradient of :func:`loss`.

    At vertex u the Euclidean gradient ``sum_{v~u} 2<x_u,x_v> x_v`` is
    projected onto the tangent space of the sphere at ``x_u``.
    """
    _check(a, g)
    return _batch_grad(a.x[None], _Incidence(g))[0]


def residual(a: SphereAssignment, g: Graph) -> float:
    """Max ``|<x_u, x_v>|`` over edges (vectors are unit, so this is |cos|)."""
    _check(a, g)
    if g.m == 0:
        return 0.0
    return float(np.max(np.abs(_dots(a.x, _Incidence(g)))))


def random_assignment(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


# --------------------------------------------------------------------------
# descent

def _descend(x: np.ndarray, inc: _Incidence, cfg: SolveConfig, history: list | None) -> np.ndarray:
    """Run projected gradient descent on every restart in the batch ``x``."""
    r = x.shape[0]
    active = np.ones(r, dtype=bool)
    cur = _batch_loss(x, inc)
    for _ in range(cfg.max_iter):
        idx = np.flatnonzero(active)
        if not len(idx):
            break
        xa = x[idx]
        la = cur[idx]
        g = _batch_grad(xa, inc)
        gn2 = np.sum(g * g, axis=(1, 2))
        done = (gn2 <= cfg.grad_tol**2) | (la == 0.0)
        step = np.full(len(idx), cfg.initial_step)
        accepted = done.copy()
        new_x = xa.copy()
        new_l = la.copy()
        for _h in range(_MAX_HALVINGS):
            todo = np.flatnonzero(~accepted)
            if not len(todo):
                break
            t = step[todo][:, None, None]
            y = xa[todo] - t * g[todo]
            y /= np.linalg.norm(y, axis=-1, keepdims=True)
            ly = _batch_loss(y, inc)
            ok = ly <= la[todo] - cfg.armijo * step[todo] * gn2[todo]
            hit = todo[ok]
            new_x[hit] = y[ok]
            new_l[hit] = ly[ok]
            accepted[hit] = True
            step[todo[~ok]] *= 0.5
        # no strict decrease: the loss has hit float resolution
        stalled = ~accepted | (~done & (new_l >= la))
        x[idx] = new_x
        cur[idx] = new_l
        active[idx[done | stalled]] = False
        if history is not None:
            history.append(cur.copy())
    return x


def _search(h: Graph, cfg: SolveConfig, target: Target, base: Graph) -> SolveReport:
    inc = _Incidence(h)
    n = h.n
    finals, resids = [], []
    best_x, best_r, best_i = None, math.inf, -1
    hist_rows: list[np.ndarray] | None = [] if cfg.record_history else None
    start = 0
    while start < cfg.restarts:
        stop = min(cfg.restarts, start + _CHUNK)
        x0 = np.stack(
            [random_assignment(n, cfg.d, np.random.default_rng([cfg.seed, i]))
             for i in range(start, stop)]
        ) if n else np.zeros((stop - start, 0, cfg.d))
        hist: list | None = [_batch_loss(x0, inc)] if cfg.record_history else None
        x = _descend(x0, inc, cfg, hist)  # updates x0 in place
        if hist is not None:
            hist_rows.extend(np.stack(hist, axis=1))
        l = _batch_loss(x, inc)
        rs = np.max(np.abs(_dots(x, inc)), axis=-1) if h.m else np.zeros(len(x))
        for j in range(len(x)):
            finals.append(float(l[j]))
            resids.append(float(rs[j]))
            if rs[j] < best_r:
                best_r, best_x, best_i = float(rs[j]), x[j].copy(), start + j
        start = stop
        if cfg.stop_on_success and best_r <= cfg.tol:
            break

    best = SphereAssignment.normalized(best_x) if n else SphereAssignment(np.zeros((0, cfg.d)))
    rounding = None
    if cfg.round_denominator is not None:
        rounding = round_to_rational(best, base, cfg.round_denominator, target=target)
    return SolveReport(
        status="success" if best_r <= cfg.tol else "exhausted",
        target=target,
        d=cfg.d,
        residual=best_r,
        assignment=best,
        best_restart=best_i,
        per_restart_losses=tuple(finals),
        per_restart_residuals=tuple(resids),
        seed=cfg.seed,
        tol=cfg.tol,
        rounding=rounding,
        history=tuple(tuple(float(v) for v in row) for row in hist_rows)
        if hist_rows is not None else None,
    )


def search_ortho_coloring(g: Graph, cfg: SolveConfig) -> SolveReport:
    """Look for unit vectors in ``R^cfg.d`` with adjacent vertices orthogonal."""
    return _search(g, cfg, "vertex", g)


def search_ortho_edge_coloring(g: Graph, cfg: SolveConfig) -> SolveReport:
    """Same search on the line graph; rows of the result follow ``g.edges``."""
    if g.m == 0:
        raise ValueError("edge search needs at least one edge")
    return _search(conflict_graph(g, "edge"), cfg, "edge", g)


# --------------------------------------------------------------------------
# rational rounding

def _gauge_fix(x: np.ndarray) -> np.ndarray:
    """Rotate so the first independent rows line up with the coordinate axes.

    Gram-Schmidt on rows in index order picks an orthonormal frame ``Q``;
    expressing every row in that frame is an orthogonal change of
    coordinates, so inner products are unchanged, but solutions that are
    rotations of a rational one come out near-rational.
    """
    n, d = x.shape
    frame: list[np.ndarray] = []
    for row in x:
        v = row.copy()
        for q in frame:
            v -= (q @ v) * q
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            frame.append(v / nv)
        if len(frame) == d:
            break
    if len(frame) < d:
        # complete with the standard basis
        for e in np.eye(d):
            v = e.copy()
            for q in frame:
                v -= (q @ v) * q
            nv = np.linalg.norm(v)
            if nv > 1e-6:
                frame.append(v / nv)
            if len(frame) == d:
                break
    q = np.array(frame)
    return x @ q.T


def _round_rows(x: np.ndarray, den: int) -> tuple[tuple[Fraction, ...], ...] | None:
    out = []
    for row in x:
        v = tuple(Fraction(float(c)).limit_denominator(den) for c in row)
        if all(c == 0 for c in v):
            return None
        out.append(v)
    return tuple(out)


def round_to_rational(
    a: SphereAssignment,
    g: Graph,
    max_denominator: int = 10**6,
    target: Target = "vertex",
) -> RoundingOutcome:
    """Try to turn a float solution into an exact rational orthogonal coloring.

    Each coordinate is replaced by its best rational approximation with
    denominator at most ``den`` (continued-fraction convergents), for ``den``
    running through 1, 10, 100, ... up to ``max_denominator``, both for the
    raw assignment and for a gauge-fixed rotation of it. The first candidate
    that passes exact verification is returned as the certificate.
    """
    h = conflict_graph(g, target)
    _check(a, h)
    dens = []
    den = 1
    while den < max_denominator:
        dens.append(den)
        den *= 10
    dens.append(max_denominator)

    candidates = [_gauge_fix(a.x), a.x] if a.n else [a.x]
    failing: tuple[tuple[int, int], ...] = ()
    for den in dens:
        for x in candidates:
            rows = _round_rows(x, den)
            if rows is None:
                continue
            f = OrthoColoring(g, target, a.d, rows)
            rep = verify_ortho_coloring(g, f)
            if rep.passed:
                return RoundingOutcome(True, max_denominator, f, den)
            failing = tuple((i, j) for i, j, _ in rep.violations)
    return RoundingOutcome(False, max_denominator, None, None, failing)
