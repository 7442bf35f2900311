import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgraphs import algebra, catalog
from pgraphs.algebra import (
    FormalElement,
    MatrixOp,
    Representation,
    exact_rank,
    expectation,
    grade_decompose,
    mult,
    operator_norm,
    to_matrix,
)
from pgraphs.errors import BasisMismatch

GRID = catalog.grid3()


def test_formal_element_arithmetic(grid):
    e = grid.path("(0,0)+(1,0)")
    s = grid.vertex("(1,0)")
    x = FormalElement.pair(grid, e, s, 2)
    assert (x - x).terms == {}
    assert not (x - x)
    assert x.adjoint().adjoint() == x
    assert x.scale(Fraction(1, 2)) == FormalElement.pair(grid, e, s)
    with pytest.raises(ValueError):
        FormalElement.pair(grid, e, grid.vertex("(0,0)"))


def test_mult_of_generators(grid):
    e = grid.path("(0,0)+(1,0)")
    f = grid.path("(1,0)+(0,1)")
    t_e = FormalElement.pair(grid, e, grid.vertex(e.source))
    t_f = FormalElement.pair(grid, f, grid.vertex(f.source))
    prod = mult(t_e, t_f)
    assert list(prod.terms) == [(grid.compose(e, f), grid.vertex(f.source))]
    # t_e* t_e = p_{s(e)}
    assert mult(t_e.adjoint(), t_e) == FormalElement.pair(grid, grid.vertex(e.source), grid.vertex(e.source))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_mult_is_associative_and_star_reversing(seed):
    rng = random.Random(seed)
    x, y, z = (algebra.random_formal_element(GRID, rng, 3) for _ in range(3))
    assert mult(mult(x, y), z) == mult(x, mult(y, z))
    assert mult(x, y).adjoint() == mult(y.adjoint(), x.adjoint())


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_to_matrix_is_a_star_homomorphism(seed):
    R = Representation(GRID, algebra.T)
    rng = random.Random(seed)
    x, y = (algebra.random_formal_element(GRID, rng, 3) for _ in range(2))
    assert to_matrix(mult(x, y), R) == to_matrix(x, R) @ to_matrix(y, R)
    assert to_matrix(x.adjoint(), R) == to_matrix(x, R).T


def test_grade_decomposition_sums_back(grid):
    rng = random.Random(3)
    x = algebra.random_formal_element(grid, rng, 6)
    parts = grade_decompose(x)
    total = FormalElement(grid)
    for part in parts.values():
        total = total + part
    assert total == x
    e = expectation(x)
    assert all(g.is_identity for g in e.grades())


@pytest.mark.parametrize("g", catalog.one_graph_fixtures(), ids=lambda g: g.name)
@pytest.mark.parametrize("flavor", [algebra.T, algebra.OMEGA])
def test_relations_on_one_graphs(g, flavor):
    R = Representation(g, flavor)
    assert algebra.check_balanced_relations(R).ok
    assert algebra.check_path_relations(R).ok
    assert algebra.check_adjoint_formula(R).ok


def test_cuntz_krieger_only_in_omega():
    g = catalog.fork_graph()
    v = g.vertex("v")
    sum_ops = algebra.op_sum(Representation(g, algebra.T).proj(e) for e in g.edges())
    RT = Representation(g, algebra.T)
    RO = Representation(g, algebra.OMEGA)
    assert not RT.equal(sum_ops, RT.t(v))
    sum_o = algebra.op_sum(RO.proj(e) for e in g.edges())
    assert RO.equal(sum_o, RO.t(v))


def test_balanced_relations_detect_corruption(grid):
    R = Representation(grid, algebra.T)
    e = grid.path("(0,0)+(1,0)")
    src = [V for V in R.basis if V.root == e.source][0]
    honest = R.push(e, src)
    target = [V for V in R.basis if V.root == e.range and V != honest][0]
    R.corrupt(e, src, target)
    for rep in (algebra.check_path_relations(R), algebra.check_balanced_relations(R)):
        assert not rep.ok
        assert all(c.witnesses for c in rep.failures)


def test_gap_dichotomy_on_fork():
    g = catalog.fork_graph()
    assert algebra.check_gap_dichotomy(Representation(g, algebra.T)).ok
    assert algebra.check_gap_dichotomy(Representation(g, algebra.OMEGA)).ok


def test_decomposition_small_grid():
    g = catalog.build_grid(2, [1, 1])
    assert algebra.check_decomposition(Representation(g, algebra.T), max_size=2).ok


def test_theta_and_balanced_dimension_small_grid():
    g = catalog.build_grid(2, [1, 1])
    R = Representation(g, algebra.T)
    degrees = [g.group.element(w) for w in [(1, 0), (0, 1), (1, 1)]]
    assert algebra.check_theta(R, degrees, max_h=1).ok
    for p in degrees:
        assert algebra.balanced_dim_check(p, R).ok


def test_matrix_op_basics(rep_t):
    A = rep_t.matrix(rep_t.t(rep_t.graph.path("(0,0)+(1,0)")))
    P = A @ A.T
    assert P.is_projection()
    assert (A - A).is_zero()
    assert A.scale(2).entry(*next((i, j) for j, c in A.cols.items() for i in c)) == 2
    np.testing.assert_allclose(A.to_numpy().T, A.T.to_numpy())
    other = Representation(catalog.edge_graph(), algebra.T)
    with pytest.raises(BasisMismatch):
        A @ other.matrix(other.t(other.graph.path("e")))


def test_norm_and_rank_helpers():
    assert operator_norm(np.diag([3.0, -5.0, 1.0])) == pytest.approx(5.0)
    assert operator_norm(np.zeros((0, 0))) == 0.0
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[Fraction(1, 3), 0], [0, 1]]) == 2
    assert exact_rank([]) == 0


def test_truncated_graph_has_no_basis(sy):
    R = Representation(sy, algebra.T)
    assert not R.exact
    with pytest.raises(BasisMismatch):
        R.matrix(R.t(sy.path("g0")))
    with pytest.raises(ValueError):
        Representation(sy, algebra.OMEGA)


def test_norm_suite_skips_in_omega(rep_omega, grid):
    F = [grid.group.element((1, 0)), grid.group.element((1, 1))]
    rep = algebra.check_norm_lower_bound(rep_omega, F, trials=3)
    assert rep.get("norm-lower-bound").skipped == 3
