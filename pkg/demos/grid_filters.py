"""Walk through the 3x3 grid 2-graph: paths, common extensions, filters and the path actions."""

from pgraphs import catalog, filters
from pgraphs.pgraph import mce

grid = catalog.grid3()
print(grid)
print("A path (v, p) runs from v + p back to v; its id is written v+p.\n")

e = grid.path("(0,0)+(1,0)")
f = grid.path("(0,0)+(0,1)")
(square,) = mce(grid, e, f)
print("One step right and one step up from (0,0) meet in exactly one square:")
print("  MCE({}, {}) = {{{}}}".format(e, f, square))
head, tail = grid.factorize(square, f.degree)
print("  and that square also factors as {} followed by {}\n".format(head, tail))

space = filters.enumerate_filters(grid)
ultra = space.ultrafilters()
print("{} filters, {} of them ultrafilters.".format(len(space), len(ultra)))
print("Every ultrafilter here is the prefix set of a path ending at the far corner:")
for U in ultra[:3]:
    print("  top {:<14} {}".format(U.top.id, U))
print("  ...\n")

U = filters.principal_filter(grid, grid.vertex("(1,1)"))
diag = grid.path("(0,0)+(1,1)")
moved = filters.act(grid, diag, U)
print("Acting by the diagonal square moves the filter {} to".format(U))
print("  {}".format(moved))
back = filters.act_inv(grid, diag, moved)
print("and the inverse action brings it back: {}".format(back == U))
