"""P-graphs: categories with a degree functor into the cone of a QLO group.

A ``PGraph`` always holds an enumerated, finite set of paths.  For a finite
graph this is every path.  For an infinite graph it is every path whose degree
lies inside a declared bound; operations that would need a path outside the
bound raise ``TruncationError`` instead of answering partially.

Builders hand over a structural composition function.  The graph tabulates it
on all enumerated composable pairs; validation and factorisation lookups work
from that table, so a corrupted table is caught rather than trusted.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CompositionError, OrderError, TruncationError
from .qlo import INFINITY, join, left_quotient, leq, multiply
from .report import Report


@dataclass(frozen=True)
class Path:
    id: str
    range: str
    source: str
    degree: object
    key: object = field(default=None, compare=False, hash=False, repr=False)

    @property
    def is_vertex(self):
        return self.degree.is_identity

    def sort_key(self):
        return (self.degree.sort_key(), self.id)

    def __str__(self):
        return self.id


def canonical(paths):
    return tuple(sorted(set(paths), key=Path.sort_key))


@dataclass(frozen=True)
class Exhaustive:
    """Outcome of an exhaustiveness test: 'yes', 'no' (with witness) or 'unknown'."""

    status: str
    witness: object = None
    bound: object = None

    def __bool__(self):
        return self.status == "yes"


YES = Exhaustive("yes")


class PGraph:
    def __init__(
        self,
        group,
        vertices,
        paths,
        compose_fn,
        factor_fn=None,
        degree_in_bound=None,
        bound=None,
        name="",
    ):
        self.group = group
        self.name = name
        self.bound = bound
        self.truncated = degree_in_bound is not None
        self._degree_in_bound = degree_in_bound
        self._compose_fn = compose_fn
        self._factor_fn = factor_fn
        self.vertices = tuple(vertices)
        self.paths = canonical(paths)
        self._by_id = {}
        for p in self.paths:
            if p.id in self._by_id:
                raise ValueError("duplicate path id {!r}".format(p.id))
            self._by_id[p.id] = p
        self._vertex_path = {}
        for p in self.paths:
            if p.is_vertex and p.range == p.source:
                self._vertex_path.setdefault(p.range, p)
        self._index()
        self.build_issues = []
        self._table = {}
        self._tabulate()

    # -- construction -----------------------------------------------------

    def _index(self):
        by_range = defaultdict(list)
        by_source = defaultdict(list)
        by_rd = defaultdict(list)
        by_degree = defaultdict(list)
        for p in self.paths:
            by_range[p.range].append(p)
            by_source[p.source].append(p)
            by_rd[(p.range, p.degree)].append(p)
            by_degree[p.degree].append(p)
        self._by_range = dict(by_range)
        self._by_source = dict(by_source)
        self._by_rd = dict(by_rd)
        self._by_degree = dict(by_degree)

    def _tabulate(self):
        for mu in self.paths:
            for nu in self._by_range.get(mu.source, ()):
                lam = self._compose_fn(mu, nu)
                if lam is None:
                    self.build_issues.append(("composition undefined", mu, nu))
                    continue
                known = self._by_id.get(lam.id)
                if known is not None:
                    self._table[(mu.id, nu.id)] = known.id
                elif not self.truncated or self._degree_in_bound(lam.degree):
                    self.build_issues.append(("composite not enumerated", mu, nu))
        self._rebuild_derived()

    def _rebuild_derived(self):
        factors = defaultdict(list)
        after = defaultdict(list)
        prefixes = defaultdict(set)
        for (m, n), l in self._table.items():
            mu, nu, lam = self._by_id[m], self._by_id[n], self._by_id[l]
            factors[(l, mu.degree)].append((mu, nu))
            after[n].append((mu, lam))
            prefixes[l].add(mu)
        self._factors = dict(factors)
        self._after = dict(after)
        self._prefixes = {k: frozenset(v) for k, v in prefixes.items()}
        self._heads = {}

    def corrupt(self, mu, nu, lam):
        """Overwrite one composition table entry (fault injection for tests)."""
        self._table[(mu.id, nu.id)] = lam.id
        self._rebuild_derived()

    # -- basic queries ----------------------------------------------------

    def path(self, id):
        return self._by_id[id]

    def __contains__(self, path):
        return self._by_id.get(path.id) == path

    def vertex(self, v):
        return self._vertex_path[v]

    def in_bound(self, degree):
        return not self.truncated or self._degree_in_bound(degree)

    def range_paths(self, v):
        """vΛ: enumerated paths with range v."""
        return tuple(self._by_range.get(v, ()))

    def source_paths(self, v):
        """Λv: enumerated paths with source v."""
        return tuple(self._by_source.get(v, ()))

    def paths_of_degree(self, p, range=None, source=None):
        if range is not None:
            out = self._by_rd.get((range, p), ())
        else:
            out = self._by_degree.get(p, ())
        if source is not None:
            out = [x for x in out if x.source == source]
        return tuple(out)

    def degrees(self):
        return tuple(sorted(self._by_degree, key=lambda d: d.sort_key()))

    def edges(self):
        gens = {self.group.element(w) for w in self.group.generators()}
        return tuple(p for p in self.paths if p.degree in gens)

    def composable(self, mu, nu):
        return mu.source == nu.range

    def compose(self, mu, nu):
        if mu.source != nu.range:
            raise CompositionError("s({}) != r({})".format(mu.id, nu.id))
        l = self._table.get((mu.id, nu.id))
        if l is not None:
            return self._by_id[l]
        lam = self._compose_fn(mu, nu)
        if lam is None:
            raise CompositionError("no composite for {} and {}".format(mu.id, nu.id))
        if self.truncated and not self._degree_in_bound(lam.degree):
            raise TruncationError("{}.{} leaves the bound {}".format(mu.id, nu.id, self.bound))
        return lam

    def compose_unbounded(self, mu, nu):
        """Structural composite, possibly outside the enumerated bound."""
        if mu.source != nu.range:
            raise CompositionError("s({}) != r({})".format(mu.id, nu.id))
        l = self._table.get((mu.id, nu.id))
        if l is not None:
            return self._by_id[l]
        lam = self._compose_fn(mu, nu)
        if lam is None:
            raise CompositionError("no composite for {} and {}".format(mu.id, nu.id))
        return lam

    def factorize(self, lam, p):
        if not leq(p, lam.degree):
            raise OrderError("{} is not below d({})".format(p, lam.id))
        if self._factor_fn is not None:
            return self._factor_fn(lam, p)
        found = self._factors.get((lam.id, p))
        if found:
            return found[0]
        if p.is_identity:
            return (self.vertex(lam.range), lam)
        if p == lam.degree:
            return (lam, self.vertex(lam.source))
        if self.truncated:
            raise TruncationError("factors of {} at {} are not enumerated".format(lam.id, p))
        raise CompositionError("{} has no factorisation at {}".format(lam.id, p))

    def is_prefix(self, mu, lam):
        """mu ⪯ lam, i.e. lam ∈ mu Λ."""
        if mu.range != lam.range or not leq(mu.degree, lam.degree):
            return False
        known = self._prefixes.get(lam.id)
        if known is not None and mu in known:
            return True
        if not self.truncated and lam.id in self._by_id:
            return mu.is_vertex or mu == lam
        key = (lam.id, mu.degree)
        head = self._heads.get(key)
        if head is None:
            head = self._heads[key] = self.factorize(lam, mu.degree)[0]
        return head == mu

    def prefixes(self, lam):
        """All enumerated mu with mu ⪯ lam."""
        out = set(self._prefixes.get(lam.id, ()))
        out.add(self.vertex(lam.range))
        out.add(lam)
        return frozenset(out)

    def describe_bound(self):
        return None if self.bound is None else str(self.bound)

    def __repr__(self):
        kind = "truncated" if self.truncated else "finite"
        return "PGraph({!r}, {}, {} vertices, {} paths)".format(
            self.name, kind, len(self.vertices), len(self.paths)
        )


# -- minimal common extensions ------------------------------------------------


def mce(graph, mu, nu):
    """MCE(mu, nu) as a canonically ordered tuple."""
    if mu.range != nu.range:
        return ()
    j = join(mu.degree, nu.degree)
    if j is INFINITY:
        return ()
    if not graph.in_bound(j):
        raise TruncationError("join {} is outside the bound {}".format(j, graph.bound))
    out = []
    for lam in graph.paths_of_degree(j, range=mu.range):
        if graph.is_prefix(mu, lam) and graph.is_prefix(nu, lam):
            out.append(lam)
    return canonical(out)


def mce_of_set(graph, G):
    G = canonical(G)
    if not G:
        raise ValueError("mce_of_set needs a nonempty set")
    current = (G[0],)
    for g in G[1:]:
        nxt = set()
        for lam in current:
            nxt.update(mce(graph, lam, g))
        current = canonical(nxt)
        if not current:
            break
    return current


def vee_paths(graph, F):
    """Smallest superset of F closed under taking minimal common extensions."""
    closed = set(F)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                for lam in mce(graph, a, b):
                    if lam not in closed:
                        closed.add(lam)
                        new.append(lam)
        frontier = new
    return canonical(closed)


def ext(graph, U, V):
    out = set()
    for mu in U:
        for nu in V:
            for lam in mce(graph, mu, nu):
                out.add(graph.factorize(lam, mu.degree)[1])
    return canonical(out)


def is_exhaustive(graph, v, E):
    E = canonical(E)
    for lam in E:
        if lam.range != v:
            raise ValueError("{} is not in {}Λ".format(lam.id, v))
    undecided = False
    for mu in graph.range_paths(v):
        hit = False
        unsure = False
        for lam in E:
            try:
                if mce(graph, mu, lam):
                    hit = True
                    break
            except TruncationError:
                unsure = True
        if hit:
            continue
        if unsure:
            undecided = True
            continue
        return Exhaustive("no", witness=mu)
    if graph.truncated or undecided:
        return Exhaustive("unknown", bound=graph.bound)
    return YES


# -- axiom validation ----------------------------------------------------------


def _splittings(graph, lam):
    lower = graph.group.lower_set(lam.degree)
    if lower is None:
        lower = [d for d in graph.degrees() if leq(d, lam.degree)]
    out = []
    for p in lower:
        rest = left_quotient(p, lam.degree)
        if graph.in_bound(p) and graph.in_bound(rest):
            out.append(p)
    return out


def validate(graph, alignment=True):
    """Check the category and factorisation axioms on all enumerated data."""
    rep = Report("validate {}".format(graph.name))
    table = graph._table
    by_id = graph._by_id

    c = rep.check("enumeration-closed", "composites inside the bound are enumerated")
    for issue in graph.build_issues:
        c.fail(issue)
    c.ok(len(table))

    c = rep.check("vertex-identities", "degree-e paths are exactly the vertices")
    for v in graph.vertices:
        ids = [p for p in graph.paths_of_degree(graph.group.identity(), range=v)]
        c.expect(len(ids) == 1 and ids[0].source == v, ("vertex", v))
    for p in graph.paths_of_degree(graph.group.identity()):
        c.expect(p.range == p.source and p.range in graph.vertices, p)

    c = rep.check("identity-laws", "r(mu) mu = mu = mu s(mu)")
    for mu in graph.paths:
        try:
            left = graph.compose(graph.vertex(mu.range), mu)
            right = graph.compose(mu, graph.vertex(mu.source))
        except (KeyError, CompositionError) as exc:
            c.fail((mu, str(exc)))
            continue
        c.expect(left == mu and right == mu, mu)

    c = rep.check("degree-functor", "d(mu nu) = d(mu) d(nu) with matching range and source")
    for (m, n), l in table.items():
        mu, nu, lam = by_id[m], by_id[n], by_id[l]
        good = (
            lam.degree == multiply(mu.degree, nu.degree)
            and lam.range == mu.range
            and lam.source == nu.source
        )
        c.expect(good, (mu, nu, lam))

    c = rep.check("associativity", "(mu nu) rho = mu (nu rho) on composable triples")
    after = graph._after
    for (n, r), nr in table.items():
        for mu, mn in after.get(n, ()):
            left = table.get((mn.id, r))
            right = table.get((mu.id, nr))
            if left is None and right is None:
                c.skip()
            elif left != right:
                c.fail((mu, by_id[n], by_id[r]))
            else:
                c.ok()

    c = rep.check("unique-factorisation", "one factorisation per degree splitting")
    for lam in graph.paths:
        for p in _splittings(graph, lam):
            found = graph._factors.get((lam.id, p), [])
            c.expect(len(found) == 1, (lam, str(p), len(found)))
            if graph._factor_fn is not None and len(found) == 1:
                f = tuple(graph._factor_fn(lam, p))
                c.expect(f == tuple(found[0]), (lam, str(p), "structural factor disagrees"))

    c = rep.check("finite-alignment", "MCE(mu, nu) is finite and symmetric")
    if alignment:
        for v in graph.vertices:
            vl = graph.range_paths(v)
            for i, mu in enumerate(vl):
                for nu in vl[i:]:
                    try:
                        a = mce(graph, mu, nu)
                        b = mce(graph, nu, mu)
                    except TruncationError:
                        c.skip()
                        continue
                    c.expect(a == b, (mu, nu))
    return rep


def subsets(items, max_size, min_size=0):
    items = list(items)
    for k in range(min_size, min(max_size, len(items)) + 1):
        yield from combinations(items, k)
