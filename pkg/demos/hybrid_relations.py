"""The hybrid graph: a directed graph D glued to two product graphs E_i x F_i.

Builds HYB1 (two-vertex cycles as the E_i and F_i), compares the closed-form
MCE with the generic search, then runs the relation suite on boundary states.
The finite cycles stand in for infinite receivers, so the Cuntz-Krieger sums at
the receiving sites are only checked as inequalities; the report says where
equality happens to hold anyway.
"""

import time

from pgraphs import spielberg
from pgraphs.pgraph import validate

start = time.perf_counter()
g = spielberg.hyb1(blocks=3, length=2)
print("{} built in {:.1f}s".format(g, time.perf_counter() - start))
print("D edges:", ", ".join("{}: {} <- {}".format(*e) for e in g.hybrid.D.edges))

rep = validate(g)
print("axioms:", "pass" if rep.ok else "FAIL")

hyb = g.hybrid
d = g.path("p3.p2")
print("\nA D-path: {} from {} to {}".format(d, d.source, d.range))
e = hyb.e_edge(0, "a0", "w0")
f = hyb.f_edge(0, "v0", "c0")
print("Product edges at u0: {} and {}".format(e, f))
print("MCE(e, f) by the closed form:", [p.id for p in spielberg.mce_hybrid(g, e, f)])

R = spielberg.omega_representation(g)
print("\n{} boundary test states".format(len(R.columns)))
report = spielberg.check_spielberg_relations(R)
for c in report.checks:
    print("  {:<7} {:<5} {} identities".format(c.id, c.status, c.checked))
    for k, v in c.notes.items():
        print("          {}: {}".format(k, v))
