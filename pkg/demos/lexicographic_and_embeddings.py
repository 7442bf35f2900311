"""Two orders that are not lattices of N^k: the lexicographic cone of Z^2 and a regraded loop.

In the lexicographic cone every element (0, b) with b >= 0 lies below every
element (a, b') with a > 0, so the g-loop at g0 can be extended forever without
leaving {g(0,s)}.  Inside a finite bound the extension stops at the edge of the
box, and the filter is reported as maximal only relative to that bound.
"""

from pgraphs import algebra, catalog, filters
from pgraphs.errors import NotHereditary
from pgraphs.qlo import FreeMonoid, Nk

sy = catalog.build_sy((2, 2))
print(sy, "bound", sy.bound)
U = filters.ultrafilter_extend(sy, filters.principal_filter(sy, sy.path("g0")))
print("extension of the filter at g0:", U, "status:", U.status)
R = algebra.Representation(sy, algebra.T)
print("T_g0 is zero on the test columns:", R.is_zero(R.t(sy.path("g0"))))
print("order fact:", catalog.sy_order_fact(sy).checks[0].status)

print("\nRegrading the one-loop graph along N -> F2+, 1 -> a")
loop = catalog.build_n_loop(bound=4)
F2 = FreeMonoid(2)
emb = catalog.build_hereditary_embedding(loop, F2, catalog.monoid_hom(loop.group, F2, [F2.element((1,))]))
for p in emb.paths:
    print("  {:<3} degree {}".format(p.id, p.degree))
print("MCE sets carried over:", catalog.check_mce_transport(loop, emb).ok)

print("\nThe diagonal N -> N^2, 1 -> (1,1), is not hereditary:")
N2 = Nk(2)
try:
    catalog.build_hereditary_embedding(loop, N2, catalog.monoid_hom(loop.group, N2, [N2.element((1, 1))]))
except NotHereditary as exc:
    print("  rejected:", exc)
