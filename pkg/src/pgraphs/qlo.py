"""Quasi-lattice ordered groups (G, P) with exact normal forms.

Four instances are built in: Z^k with cone N^k, the free group with the free
monoid as cone, the free product Z^2 * Z with cone N^2 * N, and Z^2 with the
lexicographic cone {(0, b): b >= 0} u {(a, b): a >= 1}.

Elements of P and of the ambient group share one type, ``GroupElement``; the
cone membership test is ``in_positive``.  A join that does not exist is the
tagged value ``INFINITY``.
"""

import ast
import functools
import itertools
import re
from dataclasses import dataclass

from .errors import InstanceMismatch, OrderError


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinite(j):
    return j is INFINITY


@dataclass(frozen=True)
class GroupElement:
    group: object
    word: object

    def __mul__(self, other):
        return multiply(self, other)

    def inverse(self):
        return GroupElement(self.group, self.group.inv(self.word))

    @property
    def in_positive(self):
        return self.group.positive(self.word)

    @property
    def is_identity(self):
        return self.word == self.group.identity_word

    def sort_key(self):
        return self.group.sort_key(self.word)

    def __str__(self):
        return self.group.format(self.word)

    def __repr__(self):
        return "{}<{}>".format(self.group.tag, self.group.format(self.word))


class _Group:
    """Shared behaviour; subclasses supply the word arithmetic."""

    tag = "?"

    def element(self, word):
        return GroupElement(self, self.normalize(word))

    def identity(self):
        return GroupElement(self, self.identity_word)

    def parse(self, text):
        return self.element(self.parse_word(text.strip()))

    def lower_set(self, q):
        """All p in P with p <= q, or None when that set is infinite."""
        words = self.lower_words(q.word)
        if words is None:
            return None
        return [GroupElement(self, w) for w in words]

    def enumerate_positive(self, size):
        return [GroupElement(self, w) for w in self.positive_words(size)]

    def describe(self):
        return self.tag


@dataclass(frozen=True)
class Nk(_Group):
    k: int
    tag = "nk"

    @property
    def identity_word(self):
        return (0,) * self.k

    def normalize(self, word):
        if isinstance(word, int):
            word = (word,)
        word = tuple(int(x) for x in word)
        if len(word) != self.k:
            raise ValueError("expected a vector of length {}".format(self.k))
        return word

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def positive(self, a):
        return all(x >= 0 for x in a)

    def join_word(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def lower_words(self, a):
        return list(itertools.product(*(range(x + 1) for x in a)))

    def positive_words(self, size):
        return list(itertools.product(range(size + 1), repeat=self.k))

    def generators(self):
        return [tuple(int(i == j) for j in range(self.k)) for i in range(self.k)]

    def sort_key(self, a):
        return (sum(a), a)

    def format(self, a):
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse_word(self, text):
        m = re.fullmatch(r"e(\d+)", text)
        if m:
            i = int(m.group(1))
            if not 1 <= i <= self.k:
                raise ValueError("generator index out of range: " + text)
            return self.generators()[i - 1]
        value = ast.literal_eval(text)
        return self.normalize(value)

    def describe(self):
        return "nk {}".format(self.k)


@dataclass(frozen=True)
class FreeMonoid(_Group):
    """Letters are 1..n; negative integers are inverse letters."""

    n: int
    tag = "freemonoid"
    identity_word = ()

    def normalize(self, word):
        out = []
        for x in word:
            x = int(x)
            if x == 0 or abs(x) > self.n:
                raise ValueError("letter out of range: {}".format(x))
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def mul(self, a, b):
        return self.normalize(a + b)

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def positive(self, a):
        return all(x > 0 for x in a)

    def join_word(self, a, b):
        if a[: len(b)] == b:
            return a
        if b[: len(a)] == a:
            return b
        return None

    def lower_words(self, a):
        return [a[:i] for i in range(len(a) + 1)]

    def positive_words(self, size):
        out = []
        for length in range(size + 1):
            out.extend(itertools.product(range(1, self.n + 1), repeat=length))
        return out

    def generators(self):
        return [(i,) for i in range(1, self.n + 1)]

    def sort_key(self, a):
        return (len(a), a)

    def format(self, a):
        if not a:
            return "e"
        return "".join(chr(96 + x) if x > 0 else chr(64 - x) for x in a)

    def parse_word(self, text):
        if text == "e":
            return ()
        word = []
        for ch in text:
            if "a" <= ch <= "z":
                word.append(ord(ch) - 96)
            elif "A" <= ch <= "Z":
                word.append(-(ord(ch) - 64))
            else:
                raise ValueError("bad letter {!r}".format(ch))
        return self.normalize(word)

    def describe(self):
        return "freemonoid {}".format(self.n)


def _is_pair(block):
    return isinstance(block, tuple)


def _block_add(x, y):
    if _is_pair(x):
        return (x[0] + y[0], x[1] + y[1])
    return x + y


def _block_zero(x):
    return x == (0, 0) if _is_pair(x) else x == 0


def _block_leq(x, y):
    if _is_pair(x):
        return x[0] <= y[0] and x[1] <= y[1]
    return x <= y


def _block_max(x, y):
    if _is_pair(x):
        return (max(x[0], y[0]), max(x[1], y[1]))
    return max(x, y)


@dataclass(frozen=True)
class FreeProductN2N(_Group):
    """Words alternate between Z^2 blocks (tuples) and Z blocks (ints)."""

    tag = "freeprod-n2n"
    identity_word = ()

    def normalize(self, word):
        out = []
        for block in word:
            if isinstance(block, list):
                block = tuple(block)
            if _is_pair(block):
                block = (int(block[0]), int(block[1]))
            else:
                block = int(block)
            if _block_zero(block):
                continue
            while out and _is_pair(out[-1]) == _is_pair(block):
                block = _block_add(out.pop(), block)
                if _block_zero(block):
                    block = None
                    break
            if block is not None:
                out.append(block)
        return tuple(out)

    def mul(self, a, b):
        return self.normalize(a + b)

    def inv(self, a):
        return tuple((-x[0], -x[1]) if _is_pair(x) else -x for x in reversed(a))

    def positive(self, a):
        for x in a:
            if _is_pair(x):
                if x[0] < 0 or x[1] < 0:
                    return False
            elif x < 0:
                return False
        return True

    def join_word(self, a, b):
        i = 0
        while i < len(a) and i < len(b) and a[i] == b[i]:
            i += 1
        if i == len(a):
            return b
        if i == len(b):
            return a
        x, y = a[i], b[i]
        if _is_pair(x) != _is_pair(y):
            return None
        last_a, last_b = i == len(a) - 1, i == len(b) - 1
        if last_a and last_b:
            return a[:i] + (_block_max(x, y),)
        if last_a and _block_leq(x, y):
            return b
        if last_b and _block_leq(y, x):
            return a
        return None

    def lower_words(self, a):
        out = [()]
        for m, block in enumerate(a):
            head = a[:m]
            if _is_pair(block):
                smaller = [
                    (x, y)
                    for x in range(block[0] + 1)
                    for y in range(block[1] + 1)
                    if (x, y) != (0, 0)
                ]
            else:
                smaller = list(range(1, block + 1))
            out.extend(head + (b,) for b in smaller)
        return out

    def positive_words(self, size):
        pairs = [
            (x, y) for x in range(size + 1) for y in range(size + 1) if (x, y) != (0, 0)
        ]
        scalars = list(range(1, size + 1))
        out = [()]
        frontier = [()]
        for _ in range(size):
            nxt = []
            for w in frontier:
                if not w or not _is_pair(w[-1]):
                    nxt.extend(w + (p,) for p in pairs)
                if not w or _is_pair(w[-1]):
                    nxt.extend(w + (s,) for s in scalars)
            out.extend(nxt)
            frontier = nxt
        return out

    def generators(self):
        return [((1, 0),), ((0, 1),), (1,)]

    def sort_key(self, a):
        flat = tuple((0, x[0], x[1]) if _is_pair(x) else (1, x, 0) for x in a)
        return (len(a), flat)

    def format(self, a):
        parts = ["({},{})".format(*x) if _is_pair(x) else str(x) for x in a]
        return "[" + ",".join(parts) + "]"

    def parse_word(self, text):
        value = ast.literal_eval(text)
        if isinstance(value, int):
            value = [value]
        elif isinstance(value, tuple) and len(value) == 2 and all(isinstance(x, int) for x in value):
            value = [value]
        return self.normalize(list(value))

    def describe(self):
        return "freeprod-n2n"


@dataclass(frozen=True)
class LexZ2(_Group):
    """Z^2 whose cone makes the induced order lexicographic."""

    tag = "lex-z2"
    identity_word = (0, 0)

    def normalize(self, word):
        a, b = word
        return (int(a), int(b))

    def mul(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def inv(self, a):
        return (-a[0], -a[1])

    def positive(self, a):
        return (a[0] == 0 and a[1] >= 0) or a[0] >= 1

    def join_word(self, a, b):
        return b if self.positive(self.mul(self.inv(a), b)) else a

    def lower_words(self, a):
        if a[0] == 0:
            return [(0, s) for s in range(a[1] + 1)]
        return None

    def positive_words(self, size):
        return [
            (a, b)
            for a in range(size + 1)
            for b in range(-size, size + 1)
            if self.positive((a, b))
        ]

    def generators(self):
        return [(0, 1), (1, 0)]

    def sort_key(self, a):
        return (0, a)

    def format(self, a):
        return "({},{})".format(*a)

    def parse_word(self, text):
        return self.normalize(ast.literal_eval(text))


def _same_group(p, q):
    if p.group != q.group:
        raise InstanceMismatch("{} and {} live in different groups".format(p.group, q.group))
    return p.group


@functools.lru_cache(maxsize=1 << 18)
def _mul_words(g, a, b):
    return g.mul(a, b)


@functools.lru_cache(maxsize=1 << 18)
def _leq_words(g, a, b):
    return g.positive(g.mul(g.inv(a), b))


def multiply(p, q):
    g = _same_group(p, q)
    return GroupElement(g, _mul_words(g, p.word, q.word))


def leq(p, q):
    g = _same_group(p, q)
    return _leq_words(g, p.word, q.word)


def join(p, q):
    g = _same_group(p, q)
    if not (g.positive(p.word) and g.positive(q.word)):
        raise OrderError("join is only defined on the positive cone")
    word = g.join_word(p.word, q.word)
    return INFINITY if word is None else GroupElement(g, word)


def left_quotient(p, q):
    """The unique x in P with p * x == q."""
    g = _same_group(p, q)
    x = g.mul(g.inv(p.word), q.word)
    if not g.positive(x):
        raise OrderError("{} is not below {}".format(p, q))
    return GroupElement(g, x)


def join_all(elements):
    """Join of a finite nonempty collection (INFINITY if any step fails)."""
    elements = list(elements)
    acc = elements[0]
    for x in elements[1:]:
        acc = join(acc, x)
        if acc is INFINITY:
            return INFINITY
    return acc


def vee_closure(F):
    """The set of all finite joins of nonempty subsets of F."""
    closed = set(F)
    frontier = list(closed)
    while frontier:
        new = []
        for p in frontier:
            for q in list(closed):
                j = join(p, q)
                if j is not INFINITY and j not in closed:
                    closed.add(j)
                    new.append(j)
        frontier = new
    return frozenset(closed)


def minimal_elements(F):
    F = list(F)
    if not F:
        raise ValueError("minimal_elements needs a nonempty set")
    return frozenset(p for p in F if not any(q != p and leq(q, p) for q in F))


def group_from_spec(tokens):
    """Build a group instance from the tokens after ``group`` in a spec file."""
    name = tokens[0]
    if name == "nk":
        return Nk(int(tokens[1]))
    if name == "freemonoid":
        return FreeMonoid(int(tokens[1]))
    if name == "freeprod-n2n":
        return FreeProductN2N()
    if name == "lex-z2":
        return LexZ2()
    raise ValueError("unknown group {!r}".format(name))
