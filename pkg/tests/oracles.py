"""Slow reference implementations used to cross-check the library.

These avoid the library's prefix tables, join arithmetic and filter
algorithms; they only use the structural composition of a graph.
"""

from itertools import combinations

from pgraphs.qlo import leq


def _compose(graph, mu, nu):
    """Structural composite if it is enumerated, else None."""
    if mu.source != nu.range:
        return None
    lam = graph._compose_fn(mu, nu)
    if lam is None or lam.id not in graph._by_id:
        return None
    return graph.path(lam.id)


class ExtensionIndex:
    """mu -> set of enumerated paths mu alpha, computed by direct composition."""

    def __init__(self, graph):
        self.graph = graph
        self._ext = {}

    def extensions(self, mu):
        out = self._ext.get(mu.id)
        if out is None:
            out = set()
            for alpha in self.graph.range_paths(mu.source):
                lam = _compose(self.graph, mu, alpha)
                if lam is not None:
                    out.add(lam)
            self._ext[mu.id] = out
        return out

    def is_prefix(self, mu, lam):
        return lam in self.extensions(mu)


def brute_force_mce(graph, mu, nu, index=None):
    """Common extensions of mu and nu whose degree is minimal among all common extensions.

    Only meaningful when the join of the degrees is inside the bound.
    """
    index = index or ExtensionIndex(graph)
    common = index.extensions(mu) & index.extensions(nu)
    if not common:
        return frozenset()
    degrees = {lam.degree for lam in common}
    low = [d for d in degrees if not any(e != d and leq(e, d) for e in degrees)]
    return frozenset(lam for lam in common if lam.degree in low)


def brute_force_filters(graph):
    """Every subset of some vΛ satisfying the filter axioms, checked from the definition."""
    index = ExtensionIndex(graph)
    found = []
    for v in graph.vertices:
        pool = graph.range_paths(v)
        for k in range(1, len(pool) + 1):
            for U in combinations(pool, k):
                members = set(U)
                closed = all(
                    mu in members or not index.is_prefix(mu, lam)
                    for lam in U
                    for mu in pool
                )
                directed = all(
                    any(index.is_prefix(a, c) and index.is_prefix(b, c) for c in U)
                    for a in U
                    for b in U
                )
                if closed and directed:
                    found.append(frozenset(U))
    return found


def maximal_sets(sets):
    return [U for U in sets if not any(U < V for V in sets)]


def _signature(graph, v):
    out = []
    for p in graph.paths:
        if p.range == v:
            out.append(("out", str(p.degree)))
        if p.source == v:
            out.append(("in", str(p.degree)))
    return tuple(sorted(out))


def isomorphism(g1, g2):
    """A vertex bijection carrying g1's paths and compositions onto g2's, or None.

    Paths are matched by (range, source, degree); that is enough for graphs
    with at most one path per such triple, which covers the grid fixtures.
    """
    if len(g1.vertices) != len(g2.vertices) or len(g1.paths) != len(g2.paths):
        return None

    def triples(g):
        t = {}
        for p in g.paths:
            key = (p.range, p.source, str(p.degree))
            if key in t:
                raise ValueError("isomorphism oracle needs unique (range, source, degree)")
            t[key] = p
        return t

    t1, t2 = triples(g1), triples(g2)
    sig1 = {v: _signature(g1, v) for v in g1.vertices}
    sig2 = {v: _signature(g2, v) for v in g2.vertices}
    order = sorted(g1.vertices, key=lambda v: sig1[v])
    candidates = {v: [w for w in g2.vertices if sig2[w] == sig1[v]] for v in order}

    def consistent(phi):
        for (r, s, d), p in t1.items():
            if r in phi and s in phi and (phi[r], phi[s], d) not in t2:
                return False
        return True

    def search(i, phi, used):
        if i == len(order):
            return dict(phi)
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            phi[v] = w
            if consistent(phi):
                got = search(i + 1, phi, used | {w})
                if got is not None:
                    return got
            del phi[v]
        return None

    phi = search(0, {}, frozenset())
    if phi is None:
        return None
    pmap = {p.id: t2[(phi[p.range], phi[p.source], str(p.degree))].id for p in g1.paths}
    for (m, n), l in g1._table.items():
        if g2._table.get((pmap[m], pmap[n])) != pmap[l]:
            return None
    return phi

