import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgraphs.errors import InstanceMismatch, OrderError
from pgraphs.qlo import (
    INFINITY,
    FreeMonoid,
    FreeProductN2N,
    LexZ2,
    Nk,
    join,
    join_all,
    left_quotient,
    leq,
    minimal_elements,
    multiply,
    vee_closure,
)

GROUPS = [Nk(1), Nk(2), Nk(3), FreeMonoid(2), FreeProductN2N(), LexZ2()]


def elements(group, size=2):
    return st.sampled_from(group.enumerate_positive(size))


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.describe())
def test_join_is_least_upper_bound(G):
    els = G.enumerate_positive(2)
    for p in els:
        for q in els:
            j = join(p, q)
            uppers = [r for r in els if leq(p, r) and leq(q, r)]
            if j is INFINITY:
                assert not uppers
                continue
            assert leq(p, j) and leq(q, j)
            assert all(leq(j, r) for r in uppers)
            assert join(q, p) == j


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.describe())
def test_order_is_partial_order(G):
    els = G.enumerate_positive(2)
    for p in els:
        assert leq(p, p)
        for q in els:
            if leq(p, q) and leq(q, p):
                assert p == q
            for r in els:
                if leq(p, q) and leq(q, r):
                    assert leq(p, r)


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.describe())
def test_multiply_and_quotient(G):
    els = G.enumerate_positive(2)
    e = G.identity()
    for p in els:
        assert multiply(e, p) == p == multiply(p, e)
        assert multiply(p, p.inverse()) == e
        for q in els:
            pq = multiply(p, q)
            assert leq(p, pq)
            assert left_quotient(p, pq) == q
            for r in els[:5]:
                assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.describe())
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_left_invariance(G, data):
    p = data.draw(elements(G))
    q = data.draw(elements(G))
    r = data.draw(elements(G))
    assert leq(q, r) == leq(multiply(p, q), multiply(p, r))


@pytest.mark.parametrize("G", GROUPS, ids=lambda g: g.describe())
def test_parse_round_trip(G):
    for p in G.enumerate_positive(2):
        assert G.parse(str(p)) == p


def test_free_monoid_has_no_join_for_different_letters():
    G = FreeMonoid(2)
    a, b = G.element((1,)), G.element((2,))
    assert join(a, b) is INFINITY
    assert join(G.element((1, 2)), a) == G.element((1, 2))


def test_nk_join_is_coordinate_max():
    G = Nk(2)
    assert join(G.element((2, 0)), G.element((1, 3))) == G.element((2, 3))


def test_free_product_mixed_blocks():
    G = FreeProductN2N()
    pair = G.element(((1, 0),))
    letter = G.element((1,))
    assert join(pair, letter) is INFINITY
    assert join(G.element(((1, 0),)), G.element(((0, 1),))) == G.element(((1, 1),))
    # a longer word above a block only when that block is a prefix block
    assert leq(G.element(((1, 1),)), G.element(((1, 1), 2)))
    assert not leq(G.element(((1, 2),)), G.element(((1, 1), 2)))


def test_lex_order_is_total():
    G = LexZ2()
    els = G.enumerate_positive(2)
    for p in els:
        for q in els:
            assert leq(p, q) or leq(q, p)
            assert join(p, q) in (p, q)
    assert leq(G.element((0, 5)), G.element((1, -5)))


def test_join_outside_cone_raises():
    G = Nk(1)
    with pytest.raises(OrderError):
        join(G.element((-1,)), G.element((1,)))


def test_left_quotient_requires_order():
    G = Nk(2)
    with pytest.raises(OrderError):
        left_quotient(G.element((1, 0)), G.element((0, 1)))


def test_mixing_groups_is_rejected():
    with pytest.raises(InstanceMismatch):
        leq(Nk(2).element((0, 0)), Nk(3).element((0, 0, 0)))


def test_closures():
    G = Nk(2)
    a, b = G.element((1, 0)), G.element((0, 1))
    assert vee_closure([a, b]) == {a, b, G.element((1, 1))}
    assert join_all([a, b, G.element((2, 0))]) == G.element((2, 1))
    assert minimal_elements([a, G.element((1, 1))]) == {a}
    F = FreeMonoid(2)
    assert join_all([F.element((1,)), F.element((2,))]) is INFINITY
    with pytest.raises(ValueError):
        minimal_elements([])
