"""
Exact independence polynomials and zero-free radii
===================================================

Build a few small hypergraphs, count their independent sets, and compare
the smallest root of Z_G with the radii the bounds module knows about.
"""

from hyperzero import Hypergraph, bound_report, dc_coeffs, min_root_of

# one 3-edge: every subset except the full edge is independent
edge = Hypergraph.from_edges([[0, 1, 2]])
print("single 3-edge:", dc_coeffs(edge).coeffs)

# two 3-edges sharing a vertex, the 3-uniform star with Delta = 2
star = Hypergraph.from_edges([[0, 1, 2], [0, 3, 4]])
print("star S^3_2:   ", dc_coeffs(star).coeffs)

for name, G in [("edge", edge), ("star", star),
                ("path P3", Hypergraph.from_edges([[0, 1], [1, 2]]))]:
    rep = bound_report(G)
    root = min_root_of(G)
    print(f"{name:8s} Delta={rep.delta}  best radius={rep.best_applicable:.5f}  "
          f"|min root|={root.modulus:.5f}")
