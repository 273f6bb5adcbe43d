import math
import random

import numpy as np
import pytest

from orthocolor.exact_chroma import chromatic_number, coloring_to_orthogonal, tait_3_edge_coloring
from orthocolor.graph_core import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    is_bipartite,
    line_graph,
    path_graph,
    petersen_graph,
    prism_graph,
    star_graph,
)
from orthocolor.numeric_search import (
    SolveConfig,
    SphereAssignment,
    _descend,
    _Incidence,
    gradient,
    loss,
    random_assignment,
    residual,
    round_to_rational,
    search_ortho_coloring,
    search_ortho_edge_coloring,
)
from orthocolor.ortho_core import verify_ortho_coloring

from . import oracles


def loss_by_loops(x, g):
    """Independent penalty: plain Python sum over the edge list."""
    total = 0.0
    for u, v in g.edges:
        total += sum(a * b for a, b in zip(x[u], x[v])) ** 2
    return total


def fd_riemannian_gradient(x, g, h=1e-6):
    """Central differences of the ambient penalty, then tangent projection."""
    n, d = x.shape
    eg = np.zeros_like(x)
    for u in range(n):
        for k in range(d):
            xp = x.copy()
            xm = x.copy()
            xp[u, k] += h
            xm[u, k] -= h
            eg[u, k] = (loss_by_loops(xp, g) - loss_by_loops(xm, g)) / (2 * h)
    return eg - np.sum(eg * x, axis=1, keepdims=True) * x


def float_lift(g):
    f = coloring_to_orthogonal(chromatic_number(g).certificate)
    return SphereAssignment(np.array([[float(c) for c in v] for v in f.assignment]))


# ---------------------------------------------------------------- objective

def test_loss_examples():
    k2 = complete_graph(2)
    assert loss(float_lift(cycle_graph(6)), cycle_graph(6)) == 0.0
    assert loss(SphereAssignment(np.array([[1.0, 0.0], [1.0, 0.0]])), k2) == 1.0
    s = math.sqrt(0.5)
    a = SphereAssignment(np.array([[1.0, 0.0], [s, s]]))
    assert loss(a, k2) == pytest.approx(0.5, abs=1e-15)
    assert residual(a, k2) == pytest.approx(s, abs=1e-15)


def test_loss_shape_errors():
    with pytest.raises(ValueError):
        loss(SphereAssignment(np.eye(2)), complete_graph(3))
    with pytest.raises(ValueError):
        SphereAssignment(np.array([[1.0, 1.0]]))


def test_gradient_matches_finite_differences():
    rng = random.Random(2)
    nrng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(20):
        g = oracles.random_graph(rng.randint(2, 8), rng.uniform(0.3, 0.9), rng)
        if g.m == 0:
            g = complete_graph(2)
        x = random_assignment(g.n, rng.randint(2, 4), nrng)
        ours = gradient(SphereAssignment(x), g)
        ref = fd_riemannian_gradient(x, g)
        err = np.linalg.norm(ours - ref) / max(np.linalg.norm(ref), 1e-300)
        worst = max(worst, err)
        assert loss(SphereAssignment(x), g) == pytest.approx(loss_by_loops(x, g), rel=1e-12)
    assert worst <= 1e-6


def test_gradient_vanishes_at_feasible_point():
    g = petersen_graph()
    assert np.all(gradient(float_lift(g), g) == 0.0)


def test_gradient_k2_symmetry():
    t = 0.3
    x = np.array([[1.0, 0.0], [math.cos(t), math.sin(t)]])
    gr = gradient(SphereAssignment(x), complete_graph(2))
    assert np.linalg.norm(gr[0]) == pytest.approx(np.linalg.norm(gr[1]), rel=1e-12)
    # each endpoint is pushed away from the other
    assert gr[0][1] > 0 and gr[1] @ np.array([-math.sin(t), math.cos(t)]) < 0


def test_gradient_is_tangent():
    nrng = np.random.default_rng(5)
    g = complete_graph(5)
    x = random_assignment(5, 3, nrng)
    gr = gradient(SphereAssignment(x), g)
    assert np.max(np.abs(np.sum(gr * x, axis=1))) < 1e-14


# ---------------------------------------------------------------- search

def test_c4_at_d2_succeeds_and_certifies():
    rep = search_ortho_coloring(cycle_graph(4), SolveConfig(d=2))
    assert rep.status == "success" and rep.residual < 1e-9
    assert rep.certified and rep.pi_upper_bound == 2
    cert = rep.rounding.certificate
    assert cert.exact and verify_ortho_coloring(cycle_graph(4), cert).passed
    assert rep.rounding.denominator_used <= 10


def test_k3_at_d3_succeeds():
    rep = search_ortho_coloring(complete_graph(3), SolveConfig(d=3))
    assert rep.status == "success" and rep.certified


def test_c5_at_d2_is_exhausted():
    rep = search_ortho_coloring(cycle_graph(5), SolveConfig(d=2, restarts=100))
    assert rep.status == "exhausted" and not rep.certified and rep.pi_upper_bound is None
    # five lines in the plane, consecutive ones as close to orthogonal as a closed
    # 5-step rotation allows: each step is 72 degrees
    assert rep.residual == pytest.approx(math.cos(2 * math.pi / 5), abs=1e-8)
    assert rep.residual == pytest.approx(0.309016994, abs=1e-8)


def test_k4_edges_at_d3():
    g = complete_graph(4)
    rep = search_ortho_edge_coloring(g, SolveConfig(d=3))
    assert rep.status == "success" and rep.target == "edge" and rep.certified
    assert rep.assignment.n == g.m
    tait = coloring_to_orthogonal(tait_3_edge_coloring(g, (0, 1, 2, 3)))
    assert verify_ortho_coloring(g, tait).passed and tait.d == rep.d


def test_star_edges_at_d3_never_succeed():
    rep = search_ortho_edge_coloring(star_graph(4), SolveConfig(d=3, restarts=100))
    assert rep.status == "exhausted" and not rep.certified
    welch = math.sqrt((4 - 3) / (3 * (4 - 1)))  # lower bound on max |cos| of 4 lines in R^3
    assert welch == pytest.approx(1 / 3)
    assert min(rep.per_restart_residuals) >= welch - 1e-9
    assert rep.residual == pytest.approx(1 / 3, abs=1e-6)


def test_edge_search_needs_edges():
    with pytest.raises(ValueError):
        search_ortho_edge_coloring(Graph(3), SolveConfig(d=2))


def test_config_validation():
    for bad in (dict(d=0), dict(d=2, restarts=0), dict(d=2, tol=0.0), dict(d=2, tol=1.0),
                dict(d=2, max_iter=0), dict(d=2, round_denominator=0)):
        with pytest.raises(ValueError):
            SolveConfig(**bad)


def test_determinism():
    g = petersen_graph()
    cfg = SolveConfig(d=3, restarts=20, max_iter=500, seed=4)
    a = search_ortho_coloring(g, cfg)
    b = search_ortho_coloring(g, cfg)
    assert a.to_json() == b.to_json()
    assert a.per_restart_residuals == b.per_restart_residuals
    c = search_ortho_coloring(g, SolveConfig(d=3, restarts=20, max_iter=500, seed=5))
    assert c.per_restart_losses != a.per_restart_losses


def test_restart_streams_are_independent_of_batch_size():
    g = cycle_graph(7)
    short = search_ortho_coloring(g, SolveConfig(d=2, restarts=5, max_iter=300,
                                                 stop_on_success=False))
    long = search_ortho_coloring(g, SolveConfig(d=2, restarts=300, max_iter=300,
                                                stop_on_success=False))
    assert long.per_restart_losses[:5] == short.per_restart_losses
    assert long.restarts == 300


def test_history_is_monotone():
    rep = search_ortho_coloring(petersen_graph(), SolveConfig(d=2, restarts=8, max_iter=400,
                                                              record_history=True))
    assert len(rep.history) == 8
    for row in rep.history:
        assert all(b <= a for a, b in zip(row, row[1:]))


def test_iterates_stay_on_spheres():
    g = complete_graph(5)
    x0 = np.stack([random_assignment(5, 3, np.random.default_rng([0, i])) for i in range(6)])
    for iters in (1, 5, 50):
        x = _descend(x0.copy(), _Incidence(g), SolveConfig(d=3, max_iter=iters), None)
        assert np.max(np.abs(np.linalg.norm(x, axis=-1) - 1)) <= 1e-12


def test_report_serialisation():
    rep = search_ortho_coloring(cycle_graph(4), SolveConfig(d=2, restarts=3))
    js = rep.to_json()
    assert js["rounding"]["attempted"] and js["rounding"]["certified"]
    assert len(js["assignment"]) == 4
    csv = rep.to_csv().splitlines()
    assert csv[0] == "restart,loss,residual" and len(csv) == 1 + rep.restarts
    off = search_ortho_coloring(cycle_graph(4), SolveConfig(d=2, restarts=3,
                                                            round_denominator=None))
    assert off.to_json()["rounding"]["attempted"] is False and off.pi_upper_bound is None


# ---------------------------------------------------------------- completeness

def feasible_battery():
    bip = [path_graph(5), cycle_graph(8), complete_bipartite_graph(3, 3), oracles.cube()]
    rng = random.Random(6)
    other = [complete_graph(4), cycle_graph(5), petersen_graph(), prism_graph(5)]
    other += [oracles.random_graph(8, 0.5, rng) for _ in range(4)]
    return [(g, 2) for g in bip] + [(g, max(1, chromatic_number(g).value)) for g in other]


@pytest.mark.parametrize("g, d", feasible_battery())
def test_feasible_dimension_is_found(g, d):
    if g.m == 0:
        pytest.skip("edgeless")
    if d == 2:
        assert is_bipartite(g) is not None
    rep = search_ortho_coloring(g, SolveConfig(d=d))
    assert rep.status == "success"


# ---------------------------------------------------------------- rounding

def test_rounding_float_lift_gives_identity_columns():
    g = petersen_graph()
    a = float_lift(g)
    out = round_to_rational(a, g)
    assert out.certified and out.denominator_used == 1
    exact = coloring_to_orthogonal(chromatic_number(g).certificate)
    assert verify_ortho_coloring(g, out.certificate).passed
    assert {tuple(v) for v in out.certificate.assignment} <= {
        tuple(v) for v in exact.assignment} | {tuple(-c for c in v) for v in exact.assignment}


def test_rounding_rotated_pair_certifies():
    t = 0.7
    c, s = math.cos(t), math.sin(t)
    a = SphereAssignment(np.array([[c, s], [-s, c], [c, s], [-s, c]]))
    out = round_to_rational(a, cycle_graph(4))
    assert out.certified and out.denominator_used == 1


def test_rounding_failure_names_pairs():
    g = complete_graph(2)
    s = math.sqrt(0.5)
    out = round_to_rational(SphereAssignment(np.array([[1.0, 0.0], [s, s]])), g, max_denominator=10)
    assert not out.certified and out.certificate is None and out.failing_pairs == ((0, 1),)


@pytest.mark.slow
def test_petersen_edges_at_d3_regression():
    g = petersen_graph()
    rep = search_ortho_edge_coloring(g, SolveConfig(d=3, restarts=50))
    assert rep.status == "exhausted" and not rep.certified and rep.pi_upper_bound is None
    assert rep.residual == pytest.approx(0.2332, abs=5e-4)
    assert line_graph(g)[0].n == rep.assignment.n == 15
