"""
Hamiltonian cycles give 3-edge-colorings
========================================

On a cubic graph with a Hamiltonian cycle, alternate two colors around
the cycle (its length is even) and give the remaining perfect matching
the third color. Lifting colors to coordinate axes turns that into an
orthogonal 3-edge-coloring.
"""

from orthocolor.exact_chroma import coloring_to_orthogonal, tait_3_edge_coloring
from orthocolor.graph_core import complete_graph, is_hamiltonian, petersen_graph, prism_graph
from orthocolor.ortho_core import verify_ortho_coloring

for name, g in [("K4", complete_graph(4)), ("prism(3)", prism_graph(3)),
                ("prism(5)", prism_graph(5))]:
    cycle = is_hamiltonian(g)
    c = tait_3_edge_coloring(g, cycle)
    f = coloring_to_orthogonal(c)
    print(f"{name}: cycle {cycle}, colors {c.assignment}, "
          f"lift verifies {verify_ortho_coloring(g, f).passed}")

# %%
# The Petersen graph has no Hamiltonian cycle, consistent with needing four colors.
print("Petersen Hamiltonian cycle:", is_hamiltonian(petersen_graph()))
