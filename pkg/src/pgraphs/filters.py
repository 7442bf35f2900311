"""Filters and ultrafilters of a P-graph, and the path actions on them.

On an enumerated graph every filter is finite, so it has a largest element m
and equals the prefix set of m.  The algorithms below use that fact: a filter
is extended by replacing m with an element of MCE(m, x).
"""

from dataclasses import dataclass, field

from .errors import CapExceeded, CompositionError, FilterError, LemmaViolation, TruncationError
from .pgraph import canonical, mce
from .report import Report

DEFAULT_CAP = 20000

# maximality status values
MAXIMAL = "maximal"
NOT_MAXIMAL = "not-maximal"
MAXIMAL_WITHIN_BOUND = "maximal-within-bound"


@dataclass(frozen=True)
class Filter:
    elements: tuple
    root: str
    status: str = field(default=None, compare=False, hash=False)

    def __contains__(self, path):
        return path in self._set

    @property
    def _set(self):
        s = self.__dict__.get("_cache")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cache", s)
        return s

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def top(self):
        """Largest element under the prefix order; finite filters always have one."""
        m = self.__dict__.get("_top")
        if m is None:
            raise FilterError("filter {} has no largest element".format(self))
        return m

    def ids(self):
        return tuple(p.id for p in self.elements)

    def sort_key(self):
        return (len(self.elements), self.ids())

    def __str__(self):
        return "{" + ", ".join(self.ids()) + "}"


def make_filter(graph, elements, status=None, check=True):
    elements = canonical(elements)
    if not elements:
        raise FilterError("a filter is nonempty")
    roots = {p.range for p in elements}
    if len(roots) != 1:
        raise FilterError("elements have different ranges: {}".format(sorted(roots)))
    (root,) = roots
    U = Filter(elements, root, status)
    if check:
        problem = filter_violation(graph, elements)
        if problem is not None:
            raise FilterError("not a filter: {} {}".format(problem[0], " ".join(str(x) for x in problem[1:])))
    object.__setattr__(U, "_top", _find_top(graph, elements))
    return U


def _find_top(graph, elements):
    for m in reversed(elements):
        if all(graph.is_prefix(p, m) for p in elements):
            return m
    return None


def filter_violation(graph, U):
    """First failure of the filter axioms on the path set U, or None."""
    U = canonical(U)
    if not U:
        return ("empty",)
    members = set(U)
    roots = {p.range for p in U}
    if len(roots) != 1:
        return ("mixed ranges", *U)
    vertices = [p for p in U if p.is_vertex]
    if len(vertices) != 1:
        return ("vertex count", *vertices)
    for mu in U:
        for lam in graph.prefixes(mu):
            if lam not in members:
                return ("F1", mu, lam)
    for i, mu in enumerate(U):
        for nu in U[i + 1 :]:
            if not any(graph.is_prefix(mu, lam) and graph.is_prefix(nu, lam) for lam in U):
                return ("F2", mu, nu)
    return None


def is_filter(graph, U):
    return filter_violation(graph, U) is None


def principal_filter(graph, mu):
    """U_mu: every enumerated prefix of mu."""
    if mu not in graph:
        raise FilterError("{} is not a path of {}".format(mu.id, graph.name))
    return make_filter(graph, graph.prefixes(mu), check=False)


def _try_extend(graph, m, x):
    """First element of MCE(m, x), or None; truncation counts as a miss."""
    try:
        found = mce(graph, m, x)
    except TruncationError:
        return None
    return found[0] if found else None


def ultrafilter_extend(graph, U):
    """A maximal filter containing U (maximal among enumerated paths when truncated)."""
    m = U.top
    changed = True
    while changed:
        changed = False
        current = set(graph.prefixes(m))
        for x in graph.range_paths(U.root):
            if x in current:
                continue
            lam = _try_extend(graph, m, x)
            if lam is not None and lam != m:
                m = lam
                changed = True
                break
    status = MAXIMAL_WITHIN_BOUND if graph.truncated else MAXIMAL
    return make_filter(graph, graph.prefixes(m), status=status, check=False)


def maximality(graph, U):
    """MAXIMAL, NOT_MAXIMAL or MAXIMAL_WITHIN_BOUND."""
    m = U.top
    for x in graph.range_paths(m.source):
        if not x.is_vertex:
            try:
                graph.compose(m, x)
            except TruncationError:
                continue
            return NOT_MAXIMAL
    return MAXIMAL_WITHIN_BOUND if graph.truncated else MAXIMAL


def is_ultrafilter(graph, U):
    """Exact maximality test; only meaningful on finite graphs."""
    if graph.truncated:
        raise FilterError(
            "maximality is undecidable on a truncated graph; use maximality() for the bounded status"
        )
    return maximality(graph, U) == MAXIMAL


@dataclass
class FilterSpace:
    graph: object
    filters: list
    ultra: list
    exact: bool

    def ultrafilters(self):
        return [U for U, u in zip(self.filters, self.ultra) if u]

    def __len__(self):
        return len(self.filters)


def enumerate_filters(graph, ultra_only=False, cap=DEFAULT_CAP):
    """All filters of an enumerated graph, in canonical order."""
    if len(graph.paths) > cap:
        raise CapExceeded("{} paths exceed the filter cap {}".format(len(graph.paths), cap))
    seen = {}
    for mu in graph.paths:
        U = principal_filter(graph, mu)
        seen.setdefault(U.elements, U)
    filters = sorted(seen.values(), key=Filter.sort_key)
    flags = []
    for U in filters:
        status = maximality(graph, U)
        flags.append(status != NOT_MAXIMAL)
        object.__setattr__(U, "status", status)
    if ultra_only:
        filters = [U for U, u in zip(filters, flags) if u]
        flags = [True] * len(filters)
    return FilterSpace(graph, filters, flags, exact=not graph.truncated)


def act(graph, lam, U):
    """lam . U: prefixes of lam mu for mu in U."""
    if U.root != lam.source:
        raise FilterError("r(U) = {} but s({}) = {}".format(U.root, lam.id, lam.source))
    out = set()
    for mu in U:
        out.update(graph.prefixes(graph.compose(lam, mu)))
    return make_filter(graph, out, check=False)


def act_inv(graph, lam, V):
    """lam* . V: paths mu with lam mu in V."""
    if lam not in V:
        raise FilterError("{} is not in the filter".format(lam.id))
    out = []
    for mu in graph.range_paths(lam.source):
        try:
            if graph.compose(lam, mu) in V:
                out.append(mu)
        except TruncationError:
            continue
    return make_filter(graph, out, check=False)


def fe_witness(graph, mu, E, U):
    """An alpha in E with mu alpha in U; exists whenever E is exhaustive and U maximal."""
    for alpha in canonical(E):
        if alpha.range != mu.source:
            raise CompositionError("{} does not start at s({})".format(alpha.id, mu.id))
        try:
            if graph.compose(mu, alpha) in U:
                return alpha
        except TruncationError:
            continue
    raise LemmaViolation(
        "no element of {{{}}} extends {} inside {}".format(", ".join(a.id for a in canonical(E)), mu.id, U)
    )


def check_filter_axioms(graph, filters):
    """(F1), (F2) and uniqueness of the MCE element inside U, for each filter."""
    rep = Report("filter axioms")
    ax = rep.check("filter-axioms", "prefix closed and directed")
    uq = rep.check("mce-uniqueness", "exactly one element of MCE(mu, nu) lies in U")
    for U in filters:
        problem = filter_violation(graph, U.elements)
        ax.expect(problem is None, (U, problem))
        for i, mu in enumerate(U.elements):
            for nu in U.elements[i:]:
                try:
                    hits = [lam for lam in mce(graph, mu, nu) if lam in U]
                except TruncationError:
                    uq.skip()
                    continue
                uq.expect(len(hits) == 1, (U, mu, nu, len(hits)))
    return rep
