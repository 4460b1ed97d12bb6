"""
Scanning |Z| over a disk
========================

Evaluate Z on a polar grid and count points below the modulus envelope
(1 - 1/(Delta+1))^n. Inside the zero-free disk there are none; at twice the
Shearer radius the tree truncation dips below near the negative axis.
The full grid is written as CSV for whatever plotting tool you prefer.
"""

from hyperzero import build_regular_tree_truncation, scan_disk, shearer_radius

G = build_regular_tree_truncation(3, 5)
for radius in (27 / 256, 2 * shearer_radius(3)):
    res = scan_disk(G, radius, 128)
    print(f"radius={radius:.4f}  min|Z|={res.min_abs:.3e} at {res.min_location:.4f}  "
          f"below envelope={len(res.below_envelope)}  violations={len(res.violations)}")

with open("tree_scan.csv", "w") as fh:
    res.to_csv(fh)
print("wrote tree_scan.csv")
