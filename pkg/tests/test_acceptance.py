"""Acceptance gate: eight end-to-end criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import io
import itertools
import json
import math
import random
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

import numpy as np

if __package__ in (None, ""):
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
    __package__ = "tests"

from orthocolor.cli import main, scan_record  # noqa: E402
from orthocolor.exact_chroma import (  # noqa: E402
    chromatic_index,
    chromatic_number,
    coloring_to_orthogonal,
    tait_3_edge_coloring,
)
from orthocolor.graph_core import (  # noqa: E402
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    degree_profile,
    has_perfect_matching,
    is_bipartite,
    is_hamiltonian,
    join,
    path_graph,
    petersen_graph,
    prism_graph,
)
from orthocolor.ks_dataset import bases_graph, load_dataset, shared_vector_edge_coloring  # noqa: E402
from orthocolor.numeric_search import (  # noqa: E402
    SolveConfig,
    SphereAssignment,
    gradient,
    random_assignment,
    search_ortho_coloring,
    search_ortho_edge_coloring,
)
from orthocolor.ortho_core import (  # noqa: E402
    amplify_bounds,
    direct_sum_coloring,
    enumerate_orthobases,
    iterated_join,
    ks_decide,
    pi_bounds,
    verify_ortho_coloring,
)

from . import oracles  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def criterion(number, title):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            try:
                detail = fn() or ""
            except AssertionError as exc:
                RESULTS[number] = (False, f"{title}: {exc}")
                print(f"[FAIL] {number}. {title}: {exc}")
                raise
            secs = time.perf_counter() - t0
            RESULTS[number] = (True, f"{title} ({secs:.1f}s) {detail}".rstrip())
            print(f"[PASS] {number}. {RESULTS[number][1]}")
        run.__name__ = fn.__name__
        run.__doc__ = title
        return run
    return wrap


def _check(cond, msg):
    assert cond, msg


# ---------------------------------------------------------------- 1

@criterion(1, "dataset: chromatic index 5, orthogonal index certified 4")
def test_criterion_1_dataset_gap():
    t0 = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["dataset", "--json"])
    secs = time.perf_counter() - t0
    rep = json.loads(buf.getvalue())
    _check(code == 0, f"exit code {code}, failed steps {rep['failed_steps']}")
    _check((rep["chromatic_index"], rep["pi_prime_certified"]) == (5, 4), f"got {rep}")
    ds = load_dataset()
    g, _ = bases_graph(ds)
    _check((g.n, g.m) == (9, 18), f"bases graph has {g.n} vertices, {g.m} edges")
    f = shared_vector_edge_coloring(ds)
    vr = verify_ortho_coloring(g, f)
    _check(vr.passed and vr.mode == "exact" and f.d == 4, "vector edge coloring failed")
    _check(degree_profile(g).max_degree == 4, "max degree is not 4")
    _check(chromatic_index(g).value == 5, "chromatic index is not 5")
    _check(secs < 10, f"took {secs:.1f}s")
    return f"[cli {secs:.2f}s]"


# ---------------------------------------------------------------- 2

@criterion(2, "KS decision and basis enumeration on the 18-vector set")
def test_criterion_2_ks():
    t0 = time.perf_counter()
    ds = load_dataset()
    _check(math.comb(len(ds.vectors), 4) == 3060, "subset count")
    found = enumerate_orthobases(ds.vectors)
    dec = ks_decide(ds.vectors)
    secs = time.perf_counter() - t0
    _check(set(found) == {tuple(sorted(b)) for b in ds.bases} and len(found) == 9,
           f"enumeration found {len(found)} bases")
    _check(dec.is_ks and dec.witness is None, "set admits a marking")
    # independent check of exhaustiveness: no 0/1 marking works on the 9 bases
    _check(not any(all(sum(m[i] for i in b) == 1 for b in found)
                   for m in itertools.product((0, 1), repeat=18)), "brute force found a marking")
    _check(secs < 10, f"took {secs:.1f}s")
    return f"[{dec.nodes} search nodes]"


# ---------------------------------------------------------------- 3

@criterion(3, "bases graph is 4-regular on 9 vertices and 18 edges with no perfect matching")
def test_criterion_3_structure():
    g, _ = bases_graph(load_dataset())
    prof = degree_profile(g)
    _check((g.n, g.m, prof.regular, prof.max_degree) == (9, 18, True, 4), f"got {prof}")
    _check(has_perfect_matching(g) is None, "perfect matching found")
    _check(not oracles.brute_perfect_matching(g), "oracle found a perfect matching")


# ---------------------------------------------------------------- 4

def _bipartite_battery():
    out = [path_graph(n) for n in range(2, 8)]
    out += [cycle_graph(n) for n in (4, 6, 8, 10, 12)]
    out += [complete_bipartite_graph(a, b) for a in (1, 2, 3) for b in (2, 3, 4)]
    out += [oracles.cube(), prism_graph(4), prism_graph(6)]
    return out


def _odd_battery():
    rng = random.Random(44)
    out = [cycle_graph(n) for n in (3, 5, 7, 9)]
    out += [petersen_graph(), complete_graph(4), complete_graph(5), prism_graph(3), prism_graph(5)]
    while len(out) < 14:
        g = oracles.random_graph(8, 0.4, rng)
        if is_bipartite(g) is None:
            out.append(g)
    return out


@criterion(4, "bipartite graphs give (2,2), odd cycles give lower >= 3, lifts verify")
def test_criterion_4_bounds():
    bip, odd = _bipartite_battery(), _odd_battery()
    _check(len(bip) >= 20 and len(odd) >= 10, "battery too small")
    for g in bip:
        _check(is_bipartite(g) is not None, "non-bipartite graph in battery")
        b = pi_bounds(g)
        _check((b.lower, b.upper) == (2, 2), f"bipartite graph gave {(b.lower, b.upper)}")
    for g in odd:
        _check(oracles.has_odd_cycle_by_powers(g), "battery graph has no odd cycle")
        _check(pi_bounds(g).lower >= 3, "odd-cycle graph lower bound below 3")
    for g in bip + odd:
        f = coloring_to_orthogonal(chromatic_number(g).certificate)
        _check(verify_ortho_coloring(g, f).passed, "canonical lift failed")
    return f"[{len(bip)} bipartite, {len(odd)} odd-cycle]"


# ---------------------------------------------------------------- 5

@criterion(5, "join additivity, direct sums verify, iterated gap arithmetic")
def test_criterion_5_join():
    rng = random.Random(55)
    pairs = 0
    for _ in range(25):
        g1 = oracles.random_graph(rng.randint(1, 5), 0.5, rng)
        g2 = oracles.random_graph(rng.randint(1, 5), 0.5, rng)
        j = join(g1, g2)
        if j.n <= 8:
            _check(oracles.brute_chromatic_number(j)
                   == oracles.brute_chromatic_number(g1) + oracles.brute_chromatic_number(g2),
                   "brute-force join additivity")
        _check(chromatic_number(j).value
               == chromatic_number(g1).value + chromatic_number(g2).value, "join additivity")
        f = direct_sum_coloring(coloring_to_orthogonal(chromatic_number(g1).certificate),
                                coloring_to_orthogonal(chromatic_number(g2).certificate))
        _check(f.graph == j and verify_ortho_coloring(j, f).passed, "direct sum failed")
        pairs += 1
    for a, b in ((4, 5), (3, 4), (2, 7)):
        for k in range(8):
            lo, hi = amplify_bounds(a, b, k)
            _check((lo, hi) == (2**k * a, 2**k * b) and hi - lo == 2**k * (b - a), "gap")
    # additivity sharpens the generic clique bound on joins but must stay inside it
    c5 = cycle_graph(5)
    seed = pi_bounds(c5)
    for k in (1, 2):
        pb = pi_bounds(iterated_join(c5, k))
        lo, hi = amplify_bounds(seed.lower, seed.upper, k)
        _check(pb.lower <= lo <= hi == pb.upper, f"iterated join bounds {pb.lower, pb.upper}")
    return f"[{pairs} pairs]"


# ---------------------------------------------------------------- 6

def _loss_loops(x, g):
    return sum(float(np.dot(x[u], x[v])) ** 2 for u, v in g.edges)


@criterion(6, "solver: gradient check, C4 certifies at d=2, star K1,4 never succeeds, determinism")
def test_criterion_6_solver():
    rng = random.Random(66)
    nrng = np.random.default_rng(66)
    worst = 0.0
    for _ in range(20):
        g = oracles.random_graph(rng.randint(3, 8), 0.6, rng)
        if g.m == 0:
            g = complete_graph(3)
        x = random_assignment(g.n, rng.randint(2, 4), nrng)
        eg = np.zeros_like(x)
        h = 1e-6
        for u, k in itertools.product(range(g.n), range(x.shape[1])):
            xp, xm = x.copy(), x.copy()
            xp[u, k] += h
            xm[u, k] -= h
            eg[u, k] = (_loss_loops(xp, g) - _loss_loops(xm, g)) / (2 * h)
        ref = eg - np.sum(eg * x, axis=1, keepdims=True) * x
        ours = gradient(SphereAssignment(x), g)
        worst = max(worst, np.linalg.norm(ours - ref) / np.linalg.norm(ref))
    _check(worst <= 1e-6, f"gradient relative error {worst:.2e}")

    c4 = search_ortho_coloring(cycle_graph(4), SolveConfig(d=2))
    _check(c4.status == "success" and c4.residual < 1e-9 and c4.certified, "C4 at d=2")

    star = search_ortho_edge_coloring(complete_bipartite_graph(1, 4), SolveConfig(d=3))
    _check(star.status == "exhausted" and min(star.per_restart_residuals) > star.tol,
           "K1,4 edge search succeeded")

    cfg = SolveConfig(d=3, restarts=10, max_iter=500, seed=6)
    a = search_ortho_edge_coloring(petersen_graph(), cfg)
    b = search_ortho_edge_coloring(petersen_graph(), cfg)
    _check(a.to_json() == b.to_json(), "re-run differs")
    return f"[grad err {worst:.1e}, K1,4 r*={star.residual:.6f}]"


# ---------------------------------------------------------------- 7

@criterion(7, "snark pipeline on Petersen")
def test_criterion_7_snark():
    t0 = time.perf_counter()
    rec = scan_record(0, petersen_graph(), 5_000_000, SolveConfig(d=3, restarts=50))
    secs = time.perf_counter() - t0
    _check(rec["status"] == "ok", f"status {rec['status']}: {rec.get('error')}")
    _check(rec["cubic"] and rec["biconnected"], "not a 2-connected cubic graph")
    _check(rec["class"] == 2 and rec["chromatic_index"] == 4, "not Class 2")
    _check(rec["hamiltonian"] is False and rec["planar"] is False, "Hamiltonian or planar")
    srch = rec["search"]
    _check(srch["status"] == "exhausted" and not srch["rounding"]["certified"],
           "d=3 edge search certified")
    _check(not rec["flags"], f"flags raised: {rec['flags']}")
    _check(secs < 60, f"took {secs:.1f}s")
    return f"[d=3 r*={srch['residual']:.6f} over {srch['restarts']} restarts, not certified]"


# ---------------------------------------------------------------- 8

def _cubic_hamiltonian():
    return [complete_graph(4), oracles.k33(), oracles.cube(), prism_graph(3), prism_graph(5),
            oracles.mobius_kantor_like(4), oracles.mobius_kantor_like(5)]


@criterion(8, "Tait colorings of cubic Hamiltonian graphs lift to d=3")
def test_criterion_8_tait():
    graphs = _cubic_hamiltonian()
    _check(len(graphs) >= 5, "battery too small")
    for g in graphs:
        prof = degree_profile(g)
        _check(prof.regular and prof.max_degree == 3, "not cubic")
        c = tait_3_edge_coloring(g, is_hamiltonian(g))
        _check(c.k == 3 and oracles.edge_coloring_is_proper(g, c.assignment), "not proper")
        f = coloring_to_orthogonal(c)
        _check(f.d == 3 and verify_ortho_coloring(g, f).passed, "lift failed")
    return f"[{len(graphs)} graphs]"


if __name__ == "__main__":
    fns = [test_criterion_1_dataset_gap, test_criterion_2_ks, test_criterion_3_structure,
           test_criterion_4_bounds, test_criterion_5_join, test_criterion_6_solver,
           test_criterion_7_snark, test_criterion_8_tait]
    failed = 0
    for fn in fns:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
