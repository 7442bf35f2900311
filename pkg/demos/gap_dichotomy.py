"""Gap projections separate the Toeplitz-type and Cuntz-Krieger-type representations.

For a path mu and a finite exhaustive set E of paths leaving s(mu), the gap
product prod (P_mu - P_{mu alpha}) is a nonzero operator on all filters but
vanishes on ultrafilters.  This script shows one instance on the grid and
then runs the full sweep.
"""

from pgraphs import algebra, catalog

grid = catalog.grid3()
T = algebra.Representation(grid, algebra.T)
omega = algebra.Representation(grid, algebra.OMEGA)
print("basis sizes: {} filters, {} ultrafilters".format(len(T.basis), len(omega.basis)))

mu = grid.vertex("(1,1)")
E = [grid.path("(1,1)+(1,0)"), grid.path("(1,1)+(0,1)")]
print("mu = {}, E = {{{}}}".format(mu, ", ".join(p.id for p in E)))
for name, R in (("T", T), ("Omega", omega)):
    gap = algebra.to_matrix(algebra.gap_projection(mu, E, R), R)
    rows = [[gap.entry(i, j) for j in range(gap.n)] for i in range(gap.n)]
    print("  {:<6} gap projection has rank {}".format(name, algebra.exact_rank(rows)))

for R in (T, omega):
    rep = algebra.check_gap_dichotomy(R)
    c = rep.checks[0]
    print("{:<32} {} over {} (mu, E) pairs".format(c.id + " (" + R.flavor + ")", c.status, c.notes["pairs"]))
