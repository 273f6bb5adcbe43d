"""
Widening the gap with joins
===========================

Joining two graphs adds their chromatic numbers, and the direct sum of
two orthogonal colorings colors the join. Repeated self-joins therefore
double any gap between the two parameters at every step.
"""

from orthocolor.exact_chroma import chromatic_number, coloring_to_orthogonal
from orthocolor.graph_core import cycle_graph, join
from orthocolor.ks_dataset import load_dataset
from orthocolor.ortho_core import (
    amplify_bounds,
    direct_sum_coloring,
    orthogonality_graph,
    pi_bounds,
    verify_ortho_coloring,
)

# %%
# Additivity on a small example: C5 needs 3 colors, the join of two copies 6.
c5 = cycle_graph(5)
lift = coloring_to_orthogonal(chromatic_number(c5).certificate)
f = direct_sum_coloring(lift, lift)
print("chi(C5 join C5) =", chromatic_number(join(c5, c5)).value)
print(f"direct-sum coloring in R^{f.d} verifies:", verify_ortho_coloring(f.graph, f).passed)

# %%
# The orthogonality graph of the 18-vector set has clique number 4 and
# chromatic number 5, so its orthogonal number lies in [4, 5]. Self-joins
# scale that interval.
k = orthogonality_graph(load_dataset().vectors)
b = pi_bounds(k)
print(f"seed interval: [{b.lower}, {b.upper}]")
for step in range(6):
    lo, hi = amplify_bounds(b.lower, b.upper, step)
    print(f"  {2**step:3d} copies: [{lo}, {hi}], gap {hi - lo}")
