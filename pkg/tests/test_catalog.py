import pathlib

import pytest

from pgraphs import catalog
from pgraphs.catalog import (
    build_directed_graph,
    build_free_monoid_graph,
    build_hereditary_embedding,
    build_kgraph,
    build_n_loop,
    build_sy,
    check_mce_transport,
    grid_spec_text,
    monoid_hom,
    parse_spec,
    sy_order_fact,
)
from pgraphs.errors import CapExceeded, NotHereditary, SpecParseError
from pgraphs.pgraph import mce, validate
from pgraphs.qlo import FreeMonoid, Nk, leq

SPECS = pathlib.Path(__file__).resolve().parent.parent / "specs"

SQUARE = """group nk 2
vertex a b c d
edge e a b e1
edge f a c e2
edge f2 b d e2
edge e2 c d e1
square e f2 = f e2
"""


def parse_error(text):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    return info.value


def test_unit_square_spec():
    _, g = parse_spec(SQUARE)
    assert validate(g).ok
    assert len(g.paths) == 9
    e, f = g.path("e"), g.path("f")
    (lam,) = mce(g, e, f)
    assert g.is_prefix(e, lam) and g.is_prefix(f, lam)


def test_missing_square_is_reported():
    err = parse_error(SQUARE.replace("square e f2 = f e2\n", ""))
    assert "incomplete squares" in str(err)
    assert set(err.tokens) == {"e", "f2"}


def test_inconsistent_square_is_reported():
    err = parse_error(SQUARE.replace("square e f2 = f e2", "square e f2 = e2 f"))
    assert "square" in str(err)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("group nk 2\nvertex a\nedge e a zz e1\n", 3, 10),
        ("group nk 2\nbogus line\n", 2, 1),
        ("group mystery\n", 1, 7),
        ("group nk 2\nvertex a a\n", 2, 10),
        ("group nk 2\nvertex a\nedge e a a e7\n", 3, 12),
        ("[other]\n", 1, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    err = parse_error(text)
    assert (err.line, err.column) == (line, column)


def test_empty_and_groupless_documents():
    assert "group" in str(parse_error(""))
    assert "vertices" in str(parse_error("group nk 1\n"))


def test_comments_and_blank_lines_are_ignored():
    _, g = parse_spec("# header\n\ngroup nk 1   # one colour\nvertex v w\nedge e v w e1  # trailing\n")
    assert [p.id for p in g.edges()] == ["e"]


def test_grid_spec_text_matches_file():
    assert (SPECS / "grid3.pg").read_text() == grid_spec_text((2, 2))
    _, g = parse_spec(grid_spec_text((2, 2)))
    assert len(g.paths) == 36 and validate(g).ok


def test_builtin_directives():
    _, g = parse_spec("group nk 2\nbuiltin grid 1 2\n")
    assert g.name == "grid2x1x2"
    _, s = parse_spec("group lex-z2\nbound (1,1)\nbuiltin sy\n")
    assert s.truncated and validate(s).ok
    assert "lex-z2" in str(parse_error("group nk 2\nbuiltin sy\n"))


def test_bound_override_and_cap():
    text = (SPECS / "nloop.pg").read_text()
    _, g = parse_spec(text, bound="3")
    assert len(g.paths) == 4
    with pytest.raises(CapExceeded):
        parse_spec(text, cap=3)


def test_hybrid_spec_parses():
    _, g = parse_spec((SPECS / "hyb1.pg").read_text(), bound="2 1")
    assert g.hybrid is not None
    assert g.bound == (2, 1)
    err = parse_error("group freeprod-n2n\n[hybrid]\negraph0 vertex v0\n")
    assert "missing" in str(err)


def test_sy_structure(sy):
    assert validate(sy).ok
    assert sy_order_fact(sy).ok
    g0, f0 = sy.path("g0"), sy.path("f0")
    assert g0.range == g0.source == "g0"
    mixed = sy.path("g(1,-1)")
    assert (mixed.range, mixed.source) == ("f0", "g0")
    assert leq(sy.path("g(0,2)").degree, mixed.degree)
    assert f0.is_vertex


def test_kgraph_and_directed_builders():
    g = build_directed_graph(["u", "v"], [("e", "u", "v"), ("f", "v", "u")], bound=3)
    assert g.truncated and validate(g).ok
    assert max(p.degree.word[0] for p in g.paths) == 3
    k = build_kgraph(2, ["a"], [("e", "a", "a", 0), ("f", "a", "a", 1)], [("e", "f", "f", "e")], bound=Nk(2).element((2, 2)))
    assert validate(k).ok
    fm = build_free_monoid_graph(2, ["u"], [("s", "u", "u", 0), ("t", "u", "u", 1)], bound=2)
    assert validate(fm).ok
    assert len(fm.paths) == 7


def test_free_monoid_spec():
    _, g = parse_spec((SPECS / "free2.pg").read_text())
    assert validate(g).ok
    assert mce(g, g.path("s"), g.path("r")) == ()


def test_n_loop_embeds_into_free_monoid():
    base = build_n_loop(bound=5)
    F = FreeMonoid(2)
    iota = monoid_hom(base.group, F, [F.element((1,))])
    emb = build_hereditary_embedding(base, F, iota)
    assert validate(emb).ok
    assert check_mce_transport(base, emb).ok
    assert [p.degree for p in emb.paths] == [iota(p.degree) for p in base.paths]


def test_diagonal_embedding_is_rejected():
    base = build_n_loop(bound=5)
    N2 = Nk(2)
    iota = monoid_hom(base.group, N2, [N2.element((1, 1))])
    with pytest.raises(NotHereditary) as info:
        build_hereditary_embedding(base, N2, iota)
    p, q = info.value.witness
    assert {p.word, q.word} == {(0, 1), (1, 0)}
    assert iota(base.group.element((1,))) == N2.element((1, 1))


def test_fixture_graphs():
    for g in catalog.one_graph_fixtures():
        assert validate(g).ok
