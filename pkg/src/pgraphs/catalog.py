"""Fixture builders and the graph spec-file parser."""

import re
from collections import Counter
from dataclasses import dataclass, field

from .errors import CapExceeded, NotHereditary, SpecParseError, TruncationError
from .pgraph import Path, PGraph, canonical, mce
from .qlo import FreeMonoid, LexZ2, Nk, group_from_spec, join, left_quotient, leq, multiply
from .report import Report

DEFAULT_CAP = 50000


# -- grids ---------------------------------------------------------------------


def _fmt(vec):
    return "(" + ",".join(str(x) for x in vec) + ")"


def build_grid(k, dims):
    """The k-graph whose paths are pairs (v, p) with v and v + p in a box.

    The path (v, p) has range v and source v + p.
    """
    dims = tuple(int(d) for d in dims)
    if k < 1 or len(dims) != k or any(d < 1 for d in dims):
        raise ValueError("need k >= 1 and k positive extents")
    G = Nk(k)
    from itertools import product

    points = list(product(*(range(d + 1) for d in dims)))
    inside = set(points)

    def make(v, p):
        ident = _fmt(v) if not any(p) else _fmt(v) + "+" + _fmt(p)
        w = tuple(a + b for a, b in zip(v, p))
        return Path(ident, _fmt(v), _fmt(w), G.element(p), key=(v, p))

    paths = []
    for v in points:
        for p in product(*(range(d - a + 1) for a, d in zip(v, dims))):
            paths.append(make(v, p))

    def compose(mu, nu):
        (v, p), (w, q) = mu.key, nu.key
        r = tuple(a + b for a, b in zip(p, q))
        if tuple(a + b for a, b in zip(v, r)) not in inside:
            return None
        return make(v, r)

    def factor(lam, p):
        v, n = lam.key
        p = p.word
        rest = tuple(a - b for a, b in zip(n, p))
        return make(v, p), make(tuple(a + b for a, b in zip(v, p)), rest)

    name = "grid{}x{}".format(k, "x".join(str(d) for d in dims))
    return PGraph(G, [_fmt(v) for v in points], paths, compose, factor_fn=factor, name=name)


def grid3():
    return build_grid(2, [2, 2])


# -- k-graphs from a skeleton with factorisation squares -----------------------


@dataclass
class Skeleton:
    """Coloured directed graph plus the square relation e f' = f e''."""

    k: int
    vertices: list
    edges: dict  # id -> (range, source, colour)
    swap: dict = field(default_factory=dict)

    def colour(self, e):
        return self.edges[e][2]

    def range(self, e):
        return self.edges[e][0]

    def source(self, e):
        return self.edges[e][1]

    def sort_word(self, word):
        w = list(word)
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                if self.colour(w[i]) > self.colour(w[i + 1]):
                    w[i], w[i + 1] = self.swap[(w[i], w[i + 1])]
                    changed = True
        return tuple(w)

    def split_word(self, word, counts):
        """Rearrange a sorted word so its first part has the colour counts given."""
        total = sum(counts)
        first = [sum(counts[:c]) for c in range(self.k)]
        have = Counter(self.colour(e) for e in word)
        rest = [total + sum(have[d] - counts[d] for d in range(c)) for c in range(self.k)]
        seen = Counter()
        labels = []
        for e in word:
            c = self.colour(e)
            j = seen[c]
            seen[c] += 1
            labels.append(first[c] + j if j < counts[c] else rest[c] + j - counts[c])
        w = list(word)
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                if labels[i] > labels[i + 1]:
                    w[i], w[i + 1] = self.swap[(w[i], w[i + 1])]
                    labels[i], labels[i + 1] = labels[i + 1], labels[i]
                    changed = True
        return tuple(w[:total]), tuple(w[total:])


def _word_graph(group, skeleton, degree_of, bound_ok, cap, name, bound, ordered=True, factor=None):
    """Enumerate composable words (colour-sorted when ``ordered``) as a PGraph."""
    sk = skeleton
    into = {}
    for e, (r, s, c) in sk.edges.items():
        into.setdefault(r, []).append(e)
    for v in into:
        into[v].sort()

    def make(v, word):
        if not word:
            return Path(v, v, v, group.identity(), key=(v, ()))
        return Path(".".join(word), sk.range(word[0]), sk.source(word[-1]), degree_of(word), key=(v, word))

    paths = []
    for v in sk.vertices:
        stack = [(v, ())]
        while stack:
            cur, word = stack.pop()
            paths.append(make(v, word))
            if len(paths) > cap:
                raise CapExceeded("more than {} paths; declare a bound".format(cap))
            last = sk.colour(word[-1]) if word else -1
            for e in into.get(cur, ()):
                if ordered and sk.colour(e) < last:
                    continue
                nxt = word + (e,)
                if bound_ok is None or bound_ok(nxt):
                    stack.append((sk.source(e), nxt))

    def compose(mu, nu):
        word = mu.key[1] + nu.key[1]
        if ordered:
            word = sk.sort_word(word)
        return make(mu.range, word)

    def factor_fn(lam, p):
        word = lam.key[1]
        a, b = factor(word, p)
        mid = sk.source(a[-1]) if a else lam.range
        return make(lam.range, a), make(mid, b)

    in_bound = None
    if bound_ok is not None:
        in_bound = bound
    g = PGraph(
        group,
        sk.vertices,
        paths,
        compose,
        factor_fn=factor_fn if factor else None,
        degree_in_bound=in_bound,
        bound=bound,
        name=name,
    )
    return g


def build_kgraph(k, vertices, edges, squares=(), bound=None, cap=DEFAULT_CAP, name="kgraph"):
    """k-graph from coloured edges (id, range, source, colour 0..k-1) and squares.

    Each square (e, f1, f, e2) records the relation e f1 = f e2.  ``bound`` is
    a degree vector; without it the graph must be finite.
    """
    G = Nk(k)
    sk = Skeleton(k, list(vertices), {e: (r, s, c) for e, r, s, c in edges})
    for e, f1, f, e2 in squares:
        sk.swap[(e, f1)] = (f, e2)
        sk.swap[(f, e2)] = (e, f1)

    def degree_of(word):
        n = [0] * k
        for e in word:
            n[sk.colour(e)] += 1
        return G.element(n)

    bound_ok = None
    in_bound = None
    if bound is not None:
        bvec = bound.word if hasattr(bound, "word") else tuple(bound)

        def bound_ok(word):
            return all(x <= b for x, b in zip(degree_of(word).word, bvec))

        def in_bound(d):
            return all(x <= b for x, b in zip(d.word, bvec))

    def factor(word, p):
        return sk.split_word(word, p.word)

    g = _word_graph(G, sk, degree_of, bound_ok, cap, name, in_bound, ordered=True, factor=factor)
    if bound is not None:
        g.bound = G.element(bvec)
    g.skeleton = sk
    return g


def build_directed_graph(vertices, edges, bound=None, cap=DEFAULT_CAP, name="graph"):
    """1-graph of a directed graph; edges are (id, range, source)."""
    return build_kgraph(
        1,
        vertices,
        [(e, r, s, 0) for e, r, s in edges],
        bound=None if bound is None else (bound,),
        cap=cap,
        name=name,
    )


def build_free_monoid_graph(n, vertices, edges, bound=None, cap=DEFAULT_CAP, name="fgraph"):
    """Free category over edges labelled by letters 1..n, graded in the free monoid."""
    G = FreeMonoid(n)
    sk = Skeleton(n, list(vertices), {e: (r, s, c) for e, r, s, c in edges})

    def degree_of(word):
        return G.element(tuple(sk.colour(e) + 1 for e in word))

    bound_ok = None
    in_bound = None
    if bound is not None:
        bound_ok = lambda word: len(word) <= bound  # noqa: E731
        in_bound = lambda d: len(d.word) <= bound  # noqa: E731

    def factor(word, p):
        return word[: len(p.word)], word[len(p.word) :]

    g = _word_graph(G, sk, degree_of, bound_ok, cap, name, in_bound, ordered=False, factor=factor)
    g.bound = bound
    return g


def check_squares(sk):
    """Completeness and consistency of a square system; returns error tuples."""
    problems = []
    by_range = {}
    for e, (r, s, c) in sk.edges.items():
        by_range.setdefault(r, []).append(e)
    for (x, y), (y2, x2) in sorted(sk.swap.items()):
        ok = (
            sk.colour(x) == sk.colour(x2)
            and sk.colour(y) == sk.colour(y2)
            and sk.colour(x) != sk.colour(y)
            and sk.source(x) == sk.range(y)
            and sk.source(y2) == sk.range(x2)
            and sk.range(x) == sk.range(y2)
            and sk.source(y) == sk.source(x2)
        )
        if not ok:
            problems.append(("inconsistent square", (x, y, y2, x2)))
    for x in sorted(sk.edges):
        for y in sorted(by_range.get(sk.source(x), ())):
            if sk.colour(x) != sk.colour(y) and (x, y) not in sk.swap:
                problems.append(("incomplete squares", (x, y)))
    for x in sorted(sk.edges):
        for y in sorted(by_range.get(sk.source(x), ())):
            for z in sorted(by_range.get(sk.source(y), ())):
                cols = {sk.colour(x), sk.colour(y), sk.colour(z)}
                if len(cols) < 3:
                    continue
                try:
                    a = _swap_at(sk, _swap_at(sk, _swap_at(sk, (x, y, z), 0), 1), 0)
                    b = _swap_at(sk, _swap_at(sk, _swap_at(sk, (x, y, z), 1), 0), 1)
                except KeyError:
                    continue
                if a != b:
                    problems.append(("associativity violation", (x, y, z)))
    return problems


def _swap_at(sk, word, i):
    w = list(word)
    w[i], w[i + 1] = sk.swap[(w[i], w[i + 1])]
    return tuple(w)


# -- the lexicographic example -------------------------------------------------


def _in_S(s):
    return s[0] == 0 and s[1] >= 0


def build_sy(bound=(2, 2)):
    """Two-vertex P-graph over the lexicographic cone, truncated to a box.

    Paths are f_s and g_s for s in P; a degree (a, b) is in bound when
    0 <= a <= bound[0] and |b| <= bound[1].
    """
    G = LexZ2()
    A, B = bound.word if hasattr(bound, "word") else bound

    def in_bound(d):
        a, b = d.word
        return G.positive(d.word) and a <= A and abs(b) <= B

    def name(kind, s):
        if s == (0, 0):
            return kind + "0"
        return "{}({},{})".format(kind, s[0], s[1])

    def make(kind, s):
        if kind == "f":
            r = src = "f0"
        elif _in_S(s):
            r = src = "g0"
        else:
            r, src = "f0", "g0"
        return Path(name(kind, s), r, src, G.element(s), key=(kind, s))

    degrees = [(a, b) for a in range(A + 1) for b in range(-B, B + 1) if G.positive((a, b))]
    paths = [make(kind, s) for kind in "fg" for s in degrees]

    def compose(mu, nu):
        (k1, s), (k2, t) = mu.key, nu.key
        st = (s[0] + t[0], s[1] + t[1])
        if k1 == "f" and k2 == "f":
            return make("f", st)
        if k1 == "g" and k2 == "g" and _in_S(t):
            return make("g", st)
        if k1 == "f" and k2 == "g" and not _in_S(t):
            return make("g", st)
        return None

    def factor(lam, p):
        kind, s = lam.key
        p = p.word
        t = (s[0] - p[0], s[1] - p[1])
        if kind == "f":
            return make("f", p), make("f", t)
        if _in_S(t):
            return make("g", p), make("g", t)
        return make("f", p), make("g", t)

    g = PGraph(
        G,
        ["f0", "g0"],
        paths,
        compose,
        factor_fn=factor,
        degree_in_bound=in_bound,
        bound=G.element((A, B)),
        name="sy",
    )
    g.make = make
    return g


def sy_order_fact(graph):
    """s <= t for every in-bound s in S and t in P outside S."""
    rep = Report("sy order")
    c = rep.check("sy-order", "S lies below every element of P outside S")
    degs = [d for d in graph.degrees()]
    S = [d for d in degs if _in_S(d.word)]
    rest = [d for d in degs if not _in_S(d.word)]
    for s in S:
        for t in rest:
            c.expect(leq(s, t), (str(s), str(t)))
    return rep


# -- single-vertex N-graph and hereditary embeddings ---------------------------


def build_n_loop(bound=6):
    """One vertex v with exactly one path e_n of each degree n; truncated at n <= bound."""
    G = Nk(1)

    def make(n):
        return Path("v" if n == 0 else "e{}".format(n), "v", "v", G.element((n,)), key=n)

    paths = [make(n) for n in range(bound + 1)]

    def compose(mu, nu):
        return make(mu.key + nu.key)

    def factor(lam, p):
        return make(p.word[0]), make(lam.key - p.word[0])

    return PGraph(
        G,
        ["v"],
        paths,
        compose,
        factor_fn=factor,
        degree_in_bound=lambda d: d.word[0] <= bound,
        bound=G.element((bound,)),
        name="nloop",
    )


def monoid_hom(source, target, images):
    """Homomorphism from N^k (generator i -> images[i]) into ``target``."""

    def iota(q):
        out = target.identity()
        for i, n in enumerate(q.word):
            for _ in range(n):
                out = multiply(out, images[i])
        return out

    return iota


def hereditary_witness(source, target, iota, size=4):
    """A pair (p, q) in P with pq in iota(Q) but p or q outside, or None."""
    image = {iota(q) for q in source.enumerate_positive(2 * size)}
    for p in target.enumerate_positive(size):
        for q in target.enumerate_positive(size):
            if multiply(p, q) in image and (p not in image or q not in image):
                return (p, q)
    return None


def join_preservation_witness(source, iota, size=3):
    elems = source.enumerate_positive(size)
    for a in elems:
        for b in elems:
            if leq(a, b) != leq(iota(a), iota(b)):
                return ("order", a, b)
            j = join(a, b)
            if j is not join(iota(a), iota(b)) and iota(j) != join(iota(a), iota(b)):
                return ("join", a, b)
    return None


def build_hereditary_embedding(graph, target, iota, size=4):
    """Regrade ``graph`` along iota : Q -> P after checking Q is hereditary in P.

    Raises NotHereditary with the offending pair when the check fails.
    """
    w = hereditary_witness(graph.group, target, iota, size)
    if w is not None:
        raise NotHereditary("{} * {} lands in the image but a factor does not".format(*w), witness=w)
    w = join_preservation_witness(graph.group, iota, min(size, 3))
    if w is not None:
        raise NotHereditary("embedding does not preserve {} at {}, {}".format(*w), witness=w[1:])

    def lift(p):
        return Path(p.id, p.range, p.source, iota(p.degree), key=p)

    def preimage(d):
        for q in graph.degrees():
            if iota(q) == d:
                return q
        return None

    def compose(mu, nu):
        return lift(graph.compose_unbounded(mu.key, nu.key))

    def factor(lam, p):
        q = preimage(p)
        if q is None:
            for cand in graph.group.lower_set(lam.key.degree) or ():
                if iota(cand) == p:
                    q = cand
                    break
        a, b = graph.factorize(lam.key, q)
        return lift(a), lift(b)

    in_bound = None
    if graph.truncated:
        in_bound = lambda d: preimage(d) is not None  # noqa: E731
    g = PGraph(
        target,
        graph.vertices,
        [lift(p) for p in graph.paths],
        compose,
        factor_fn=factor,
        degree_in_bound=in_bound,
        bound=graph.bound,
        name=graph.name + "-regraded",
    )
    g.base = graph
    return g


def check_mce_transport(base, embedded):
    rep = Report("mce transport")
    c = rep.check("mce-transport", "MCE sets agree after regrading")
    lifted = {p.id: p for p in embedded.paths}
    for v in base.vertices:
        vl = base.range_paths(v)
        for mu in vl:
            for nu in vl:
                try:
                    a = [x.id for x in mce(base, mu, nu)]
                    b = [x.id for x in mce(embedded, lifted[mu.id], lifted[nu.id])]
                except TruncationError:
                    c.skip()
                    continue
                c.expect(sorted(a) == sorted(b), (mu, nu))
    return rep


# -- small fixtures ------------------------------------------------------------


def edge_graph():
    """v <-e- w: one edge with range v and source w."""
    return build_directed_graph(["v", "w"], [("e", "v", "w")], name="edge")


def fork_graph():
    """Vertex v receiving two edges e, f from w1, w2."""
    return build_directed_graph(
        ["v", "w1", "w2"], [("e", "v", "w1"), ("f", "v", "w2")], name="fork"
    )


def chain_fork_graph():
    """A small acyclic 1-graph with branching at two levels."""
    return build_directed_graph(
        ["u", "v", "w1", "w2", "x"],
        [("a", "u", "v"), ("b", "u", "x"), ("e", "v", "w1"), ("f", "v", "w2")],
        name="chainfork",
    )


def one_graph_fixtures():
    return [build_grid(1, [4]), edge_graph(), fork_graph(), chain_fork_graph()]


def grid_spec_text(dims=(2, 2)):
    """GRID written in the spec-file grammar (used by tests and demos)."""
    from itertools import product

    lines = ["# {}-dimensional grid written out edge by edge".format(len(dims))]
    lines.append("group nk {}".format(len(dims)))
    points = list(product(*(range(d + 1) for d in dims)))
    for p in points:
        lines.append("vertex v{}".format("_".join(map(str, p))))
    name = lambda p: "v" + "_".join(map(str, p))  # noqa: E731
    edges = {}
    counter = Counter()
    for p in points:
        for c in range(len(dims)):
            q = list(p)
            q[c] += 1
            if q[c] <= dims[c]:
                counter[c] += 1
                eid = "{}{}".format("efghijkl"[c], counter[c])
                edges[(tuple(p), c)] = eid
                lines.append("edge {} {} {} e{}".format(eid, name(p), name(q), c + 1))
    for p in points:
        for c in range(len(dims)):
            for d in range(c + 1, len(dims)):
                q = list(p)
                q[c] += 1
                q[d] += 1
                if q[c] <= dims[c] and q[d] <= dims[d]:
                    pc = list(p)
                    pc[c] += 1
                    pd = list(p)
                    pd[d] += 1
                    e = edges[(tuple(p), c)]
                    f1 = edges[(tuple(pc), d)]
                    f = edges[(tuple(p), d)]
                    e2 = edges[(tuple(pd), c)]
                    lines.append("square {} {} = {} {}".format(e, f1, f, e2))
    return "\n".join(lines) + "\n"


# -- spec-file parser ----------------------------------------------------------


@dataclass
class GraphSpecDoc:
    group: object = None
    group_tokens: tuple = ()
    bound: object = None
    bound_text: str = ""
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (id, range, source, degree element)
    squares: list = field(default_factory=list)  # (e, f1, f, e2)
    builtin: tuple = ()
    hybrid: dict = None


_TOKEN = re.compile(r"\S+")


def _tokens(line):
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]


def _parse_bound(group, text, lineno, col):
    try:
        if isinstance(group, FreeMonoid):
            return int(text)
        if group.tag == "freeprod-n2n":
            blocks, length = text.split()
            return (int(blocks), int(length))
        return group.parse(text)
    except Exception as exc:
        raise SpecParseError("bad bound {!r}: {}".format(text, exc), lineno, col, (text,))


def parse_document(text):
    doc = GraphSpecDoc()
    section = None
    hybrid_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = _tokens(line)
        head, col = toks[0]
        if head.startswith("["):
            if head != "[hybrid]":
                raise SpecParseError("unknown section " + head, lineno, col, (head,))
            section = "hybrid"
            doc.hybrid = {}
            continue
        if section == "hybrid" and head not in ("group", "bound"):
            hybrid_lines.append((lineno, toks))
            continue
        words = [t for t, _ in toks]
        if head == "group":
            if doc.group is not None:
                raise SpecParseError("second group line", lineno, col, (head,))
            try:
                doc.group = group_from_spec(words[1:])
            except Exception as exc:
                raise SpecParseError(str(exc), lineno, toks[1][1] if len(toks) > 1 else col, words[1:])
            doc.group_tokens = tuple(words[1:])
        elif head == "bound":
            if doc.group is None:
                raise SpecParseError("bound before group", lineno, col, (head,))
            rest = line[toks[1][1] - 1 :].strip() if len(toks) > 1 else ""
            doc.bound = _parse_bound(doc.group, rest, lineno, toks[1][1] if len(toks) > 1 else col)
            doc.bound_text = rest
        elif head == "vertex":
            if len(words) < 2:
                raise SpecParseError("vertex needs an id", lineno, col, words)
            for w, c in toks[1:]:
                if w in doc.vertices:
                    raise SpecParseError("duplicate vertex " + w, lineno, c, (w,))
                doc.vertices.append(w)
        elif head == "edge":
            if len(words) != 5:
                raise SpecParseError("edge needs: id range source degree", lineno, col, words)
            if doc.group is None:
                raise SpecParseError("edge before group", lineno, col, (head,))
            eid, r, s, deg = words[1:]
            for w, c in toks[2:4]:
                if w not in doc.vertices:
                    raise SpecParseError("undeclared vertex " + w, lineno, c, (w,))
            if any(e[0] == eid for e in doc.edges):
                raise SpecParseError("duplicate edge " + eid, lineno, toks[1][1], (eid,))
            try:
                d = doc.group.parse(deg)
            except Exception as exc:
                raise SpecParseError("bad degree {!r}: {}".format(deg, exc), lineno, toks[4][1], (deg,))
            if d.word not in doc.group.generators():
                raise SpecParseError("degree {} is not a generator".format(deg), lineno, toks[4][1], (deg,))
            doc.edges.append((eid, r, s, d))
        elif head == "square":
            if len(words) != 6 or words[3] != "=":
                raise SpecParseError("square needs: e f' = f e''", lineno, col, words)
            names = {e[0] for e in doc.edges}
            for w, c in toks[1:3] + toks[4:6]:
                if w not in names:
                    raise SpecParseError("undeclared edge " + w, lineno, c, (w,))
            doc.squares.append((words[1], words[2], words[4], words[5]))
        elif head == "builtin":
            doc.builtin = tuple(words[1:])
        else:
            raise SpecParseError("unknown directive " + head, lineno, col, (head,))
    if doc.group is None:
        raise SpecParseError("missing group line", 1, 1)
    if hybrid_lines:
        doc.hybrid = _parse_hybrid(hybrid_lines)
    if doc.hybrid is None and not doc.builtin and not doc.vertices:
        raise SpecParseError("no vertices declared", 1, 1)
    return doc


def _parse_hybrid(lines):
    graphs = {}
    attach = {}
    default_d = False
    for lineno, toks in lines:
        words = [t for t, _ in toks]
        head, col = toks[0]
        if head in ("attach0", "attach1"):
            if len(words) != 3:
                raise SpecParseError(head + " needs: v w", lineno, col, words)
            attach[int(head[-1])] = (words[1], words[2])
            continue
        if head not in ("dgraph", "egraph0", "egraph1", "fgraph0", "fgraph1"):
            raise SpecParseError("unknown hybrid directive " + head, lineno, col, (head,))
        if head == "dgraph" and words[1:] == ["default"]:
            default_d = True
            continue
        g = graphs.setdefault(head, {"vertices": [], "edges": []})
        if len(words) >= 3 and words[1] == "vertex":
            g["vertices"].extend(words[2:])
        elif len(words) == 5 and words[1] == "edge":
            eid, r, s = words[2:]
            for w, c in toks[3:5]:
                if w not in g["vertices"]:
                    raise SpecParseError("undeclared vertex {} in {}".format(w, head), lineno, c, (w,))
            g["edges"].append((eid, r, s))
        else:
            raise SpecParseError("expected '{} vertex ...' or '{} edge id r s'".format(head, head), lineno, col, words)
    for name in ("egraph0", "egraph1", "fgraph0", "fgraph1"):
        if name not in graphs:
            raise SpecParseError("hybrid section is missing " + name, lines[-1][0], 1)
    for i in (0, 1):
        if i not in attach:
            raise SpecParseError("hybrid section is missing attach{}".format(i), lines[-1][0], 1)
    return {"graphs": graphs, "attach": attach, "default_d": default_d or "dgraph" not in graphs}


def parse_spec(text, cap=DEFAULT_CAP, bound=None):
    """Parse a spec document and build its graph; returns (doc, graph).

    ``bound`` overrides the document's bound line, in the same syntax.
    """
    doc = parse_document(text)
    G = doc.group
    if bound is not None:
        doc.bound = _parse_bound(G, bound, None, None)
        doc.bound_text = bound
    if doc.hybrid is not None:
        from . import spielberg

        h = doc.hybrid
        gr = h["graphs"]
        D = spielberg.DirectedGraph.from_lists(**gr["dgraph"]) if not h["default_d"] else spielberg.default_D()
        spec = spielberg.HybridSpec(
            D=D,
            E=[spielberg.DirectedGraph.from_lists(**gr["egraph{}".format(i)]) for i in (0, 1)],
            F=[spielberg.DirectedGraph.from_lists(**gr["fgraph{}".format(i)]) for i in (0, 1)],
            attach=[h["attach"][0], h["attach"][1]],
        )
        blocks, length = doc.bound if doc.bound is not None else (3, 2)
        try:
            return doc, spielberg.build_hybrid(spec, blocks, length)
        except ValueError as exc:
            raise SpecParseError(str(exc))
    if doc.builtin:
        name = doc.builtin[0]
        if name == "sy":
            if not isinstance(G, LexZ2):
                raise SpecParseError("builtin sy needs group lex-z2")
            b = doc.bound if doc.bound is not None else G.element((2, 2))
            return doc, build_sy(b)
        if name == "grid":
            dims = [int(x) for x in doc.builtin[1:]]
            return doc, build_grid(len(dims), dims)
        raise SpecParseError("unknown builtin " + name)
    if isinstance(G, Nk):
        colour = {}
        for eid, r, s, d in doc.edges:
            colour[eid] = d.word.index(1)
        sk = Skeleton(G.k, doc.vertices, {e: (r, s, colour[e]) for e, r, s, _ in doc.edges})
        for e, f1, f, e2 in doc.squares:
            sk.swap[(e, f1)] = (f, e2)
            sk.swap[(f, e2)] = (e, f1)
        problems = check_squares(sk)
        if problems:
            kind, toks = problems[0]
            raise SpecParseError("{}: {}".format(kind, " ".join(toks)), tokens=toks)
        return doc, build_kgraph(
            G.k,
            doc.vertices,
            [(e, r, s, colour[e]) for e, r, s, _ in doc.edges],
            doc.squares,
            bound=doc.bound,
            cap=cap,
            name="spec",
        )
    if isinstance(G, FreeMonoid):
        return doc, build_free_monoid_graph(
            G.n,
            doc.vertices,
            [(e, r, s, d.word[0] - 1) for e, r, s, d in doc.edges],
            bound=doc.bound,
            cap=cap,
            name="spec",
        )
    raise SpecParseError("group {} needs a builtin or [hybrid] section".format(G.describe()))
