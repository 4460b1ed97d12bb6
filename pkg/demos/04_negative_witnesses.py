"""
Negative real roots from the extremal families
==============================================

Two families force zeros close to the origin: the odd-k core-and-clouds
construction and the even-k star. Both have closed forms, so we can probe
them at very large Delta.
"""

import math

from hyperzero import (bisect_root, samotij_negativity_probe, samotij_threshold,
                       samotij_Z_closed_form, star_negativity_probe, star_normalized,
                       star_threshold)

s0 = samotij_threshold(3)
print(f"k=3 clouds: first negative probe at s = {s0}")
for s in (s0, 100, 10_000):
    p = samotij_negativity_probe(3, s)
    root = bisect_root(lambda x: samotij_Z_closed_form(3, s, x), p.lambda_probe, 0)
    delta = 2 * s
    print(f"  s={s:6d}  Delta={delta:6d}  root={root:+.6f}  "
          f"root/(log D/D)={abs(root) * delta / math.log(delta):.3f}")

d0 = star_threshold(4)
print(f"k=4 star: probe negative for every Delta in [{d0}, 10^6]")
for d in (10, 1000, 100_000):
    p = star_negativity_probe(4, d)
    root = bisect_root(lambda x: star_normalized(4, d, x), p.lambda_probe, 0)
    print(f"  Delta={d:6d}  root={root:+.6f}  "
          f"root/(log D/D)^(1/3)={abs(root) / (math.log(d) / d) ** (1 / 3):.3f}")
