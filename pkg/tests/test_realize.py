"""Reflection realizations: factorisation, relations, word balls, traces."""

import pytest

from coxlib import catalog, linalg
from coxlib.cartan import CartanMatrix, CoxeterDiagram, triangle_diagram
from coxlib.enumerate import classify_integer_classes
from coxlib.numfield import FieldSpec
from coxlib.realize import (
    adjoint_trace,
    check_relations,
    element_from_word,
    pair_trace,
    pair_traces_match,
    rank_factorize,
    realize,
    reconstructed_cartan,
    rotation_block,
    trace_ring_generators,
    word_ball,
)

AFFINE_333 = CartanMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])


def _segment():
    return CoxeterDiagram.from_labels("seg", 1, ["a", "b"], {}, nonadjacent=[("a", "b")])


# ─── factorisation ────────────────────────────────────────────────────────────


def test_full_rank_uses_identity_covectors(m334):
    a, v, r = rank_factorize(m334)
    assert r == 3
    assert a == linalg.identity(3, m334.spec)
    assert v == m334.entries


def test_rank_deficient_factorisation():
    real = realize(AFFINE_333)
    assert real.rank == 2
    assert len(real.covectors) == 3 and len(real.covectors[0]) == 2
    assert reconstructed_cartan(real) == AFFINE_333.entries


def test_reflections_are_involutions(m334):
    real = realize(m334)
    ident = linalg.identity(3, m334.spec)
    for sigma in real.reflections:
        assert linalg.mat_mul(sigma, sigma, m334.spec) == ident
        assert linalg.determinant(sigma, m334.spec) == -1


def test_realize_over_q56():
    c = catalog.get_entry("cu21-integral(2)").payload
    real = realize(c)
    assert reconstructed_cartan(real) == c.entries
    assert pair_traces_match(real)


# ─── relations ────────────────────────────────────────────────────────────────


def test_relations_hold_for_334(m334, t334):
    real = realize(m334)
    report = check_relations(real, t334)
    assert report.ok
    assert [(ch.i, ch.j, ch.order) for ch in report.checks] == [(0, 1, 3), (0, 2, 3), (1, 2, 4)]


def test_pair_traces(m334):
    real = realize(m334)
    assert pair_trace(real, 0, 1) == 0
    assert pair_trace(real, 1, 2) == 1
    assert pair_traces_match(real)


def test_relations_fail_for_wrong_diagram(t334):
    report = check_relations(realize(AFFINE_333), t334)
    assert not report.ok
    assert [(ch.i, ch.j) for ch in report.failures] == [(1, 2)]


def test_rank_two_affine_realization_has_order_three_pairs():
    report = check_relations(realize(AFFINE_333), triangle_diagram(3, 3, 3))
    assert report.ok


def test_nonadjacent_infinite_order():
    c = CartanMatrix.from_rows([[2, -3], [-3, 2]])
    report = check_relations(realize(c), _segment(), max_power=8)
    [check] = report.checks
    assert check.kind == "infinite"
    assert check.holds
    assert check.detail == "tr = 7, r = 2"


def test_degenerate_rank_one_realization_is_not_faithful():
    c = CartanMatrix.from_rows([[2, -2], [-2, 2]])
    real = realize(c)
    assert real.rank == 1
    report = check_relations(real, _segment())
    assert not report.ok


def test_relations_size_mismatch(m334):
    with pytest.raises(ValueError):
        check_relations(realize(m334), _segment())


# ─── word balls ───────────────────────────────────────────────────────────────


@pytest.mark.parametrize("depth, size", [(0, 1), (1, 4), (2, 10)])
def test_word_ball_sizes(m334, depth, size):
    assert len(word_ball(realize(m334), depth)) == size


def test_word_ball_of_finite_group_saturates():
    a2 = CartanMatrix.from_rows([[2, -1], [-1, 2]])
    assert len(word_ball(realize(a2), 10)) == 6


def test_word_ball_words_are_shortest(m334):
    ball = word_ball(realize(m334), 2)
    assert [g.word for g in ball[:4]] == [(), (0,), (1,), (2,)]
    assert all(len(g.word) <= 2 for g in ball)


def test_element_from_word_matches_ball(m334):
    real = realize(m334)
    ball = {g.word: g.matrix for g in word_ball(real, 2)}
    assert element_from_word(real, (0, 1)).matrix == ball[(0, 1)]


def test_word_ball_negative_depth(m334):
    with pytest.raises(ValueError):
        word_ball(realize(m334), -1)


# ─── traces ───────────────────────────────────────────────────────────────────


def test_trace_ring_generators(m334):
    assert trace_ring_generators(m334) == (1, 1, 2, -1, -2)


def test_adjoint_trace_of_reflection(m334):
    real = realize(m334)
    assert adjoint_trace(real.reflections[0], m334.spec) == 0


@pytest.mark.parametrize("b, k, expected", [(1, 2, 15), (2, 0, 3), (3, 1, -1), (4, 1, 0), (6, 0, 0)])
def test_adjoint_trace_of_rotation_blocks(b, k, expected):
    g = rotation_block(b, k)
    assert adjoint_trace(g) == expected


def test_rotation_block_needs_sqrt3():
    with pytest.raises(ValueError):
        rotation_block(6, 0, FieldSpec.of(2))


def test_rotation_block_rejects_order():
    with pytest.raises(ValueError, match="not in"):
        rotation_block(5, 1)


def test_adjoint_trace_needs_unimodular():
    two = linalg.diagonal([FieldSpec().rational(2)] * 2, FieldSpec())
    with pytest.raises(ValueError, match="det"):
        adjoint_trace(two)


# ─── classified representatives ───────────────────────────────────────────────


@pytest.mark.parametrize(
    "key",
    [*(f"triangle({p},{q},{r})" for p, q, r in sorted(catalog.TRIANGLE_TABLE)),
     "tetrahedron(d=3)", "tetrahedron(d=4)", "simplex4"],
)
def test_relations_hold_for_every_representative(key):
    diagram = catalog.get_entry(key).payload
    for c in classify_integer_classes(diagram).representatives:
        real = realize(c)
        assert check_relations(real, diagram).ok
        assert pair_traces_match(real)
