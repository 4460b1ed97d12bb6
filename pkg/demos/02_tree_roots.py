"""
Roots of regular tree truncations
=================================

The smallest root of Z on Delta = 3 tree truncations creeps toward 4/27 as
the depth grows. Depth 7 has 382 vertices and takes a few seconds.
"""

import sys

from hyperzero import build_regular_tree_truncation, min_root_of, shearer_radius

max_depth = int(sys.argv[1]) if len(sys.argv) > 1 else 6
target = shearer_radius(3)
print(f"4/27 = {target:.6f}")
for depth in range(1, max_depth + 1):
    G = build_regular_tree_truncation(3, depth)
    r = min_root_of(G)
    print(f"depth {depth}: n={G.vertex_count:4d}  root={r.root.real:+.6f}  "
          f"gap={r.modulus - target:.5f}")
