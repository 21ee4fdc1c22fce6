"""
Invariants of some small groups
===============================

Fitting height, generalized Fitting height and nonsoluble length for a
handful of familiar groups, with the series that realise them.
"""

from permstruct import corpus_group, invariant_report, nonsoluble_length, gf_series

names = ["S3", "A4", "S4", "GL23", "A5", "S5", "SL25", "PSL27", "A5xA5", "A5wrC2"]

print(f"{'group':8} {'order':>6} {'h':>3} {'h*':>3} {'λ':>3}  |F|  |E|")
for name in names:
    r = invariant_report(corpus_group(name))
    h = r.fitting_height if r.is_soluble else "-"
    print(f"{name:8} {r.order:>6} {h:>3} {r.gf_height:>3} {r.nonsoluble_length:>3}"
          f"  {r.fitting.order():>3}  {r.layer.order():>3}")

# The canonical series behind λ: soluble radical, then socle, and so on.
for name in ["S5", "SL25", "A5wrC2"]:
    G = corpus_group(name)
    lam, series = nonsoluble_length(G)
    print(name, "λ =", lam, "orders", series.orders(), series.factor_kinds)

# The generalized Fitting series of S5 stops after two steps: A5, then S5.
print("F*-series of S5:", gf_series(corpus_group("S5")).orders())
