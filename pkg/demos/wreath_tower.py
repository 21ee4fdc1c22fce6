"""
Wreath towers of A5
===================

A5 wr (A5 wr (... wr A5)) factorizes as the product of two soluble Hall
subgroups, iterated A4 and iterated C5, yet its nonsoluble length grows.
"""
import math
import time

from permstruct import BudgetExceeded, TowerSpec, gf_height, hall_pair_for_tower, tower
from permstruct.lab import tower_lambda_evidence

for k in (1, 2, 3):
    t = time.time()
    spec = TowerSpec(k)
    G = tower(spec)
    A, B = hall_pair_for_tower(spec)
    print(f"height {k}: degree {G.degree}, |G| = 60^{round(math.log(G.order(), 60))}, "
          f"|A||B| = |G|: {A.order() * B.order() == G.order()}, gcd = {math.gcd(A.order(), B.order())}"
          f"  ({time.time() - t:.1f}s)")

# The Hall factors are soluble.  At height 1 they are A4 and C5; at height 2
# the {2,3}-factor has 12^6 elements, past the default enumeration budget,
# and the engine says so instead of guessing.
A, B = hall_pair_for_tower(TowerSpec(1))
print("height 1: h*(A) =", gf_height(A), " h*(B) =", gf_height(B))
A, B = hall_pair_for_tower(TowerSpec(2))
try:
    print("height 2: h*(A) =", gf_height(A))
except BudgetExceeded as e:
    print("height 2: h*(A) not computed:", e)

ev = tower_lambda_evidence(TowerSpec(2))
print("height 2: λ in", (ev.lower, ev.upper))
for name, ok in ev.checks.items():
    print(f"  {name}: {ok}")

ev = tower_lambda_evidence(TowerSpec(3), lower_bound=False)
print("height 3: λ <=", ev.upper, "series orders are powers of 60:",
      [round(math.log(o, 60)) if o > 1 else 0 for o in ev.series_orders])
