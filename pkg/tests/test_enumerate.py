"""Integer classification, one-parameter families and unit families."""

from fractions import Fraction

import pytest

from coxlib import catalog, fileio
from coxlib.cartan import (
    cyclic_signature,
    definability_generators,
    determinant,
    equivalent,
    simplex_diagram,
    triangle_diagram,
    validate_vinberg,
)
from coxlib.enumerate import (
    REJECT_NOT_NEGATIVE,
    UnitFamilySpec,
    classify_integer_classes,
    edge_factorizations,
    parametric_signature,
    polygon_cartan_matrix,
    polygon_order,
    solve_integrality,
    units_family,
    verify_at,
)
from coxlib.expressions import format_ratfunc, parse_number
from coxlib.numfield import FieldSpec, QuadraticRing, fundamental_unit, is_algebraic_integer
from coxlib.ratfunc import PoleError
from coxlib.realize import realize

Q2 = FieldSpec.of(2)


def _tuple(sig):
    return tuple(int(v.to_fraction()) for v in sig.values())


def _family(entries, **extra):
    return fileio.parse_family({"entries": entries, **extra})


# ─── integer classification ───────────────────────────────────────────────────


def test_edge_factorizations():
    assert edge_factorizations(3) == [(1, 3), (3, 1)]
    assert edge_factorizations(1) == [(1, 1)]


def test_classify_334(t334):
    result = classify_integer_classes(t334)
    assert result.count == 2
    assert [_tuple(s) for s in result.signatures] == [(1, 1, 2, -1, -2), (1, 1, 2, -2, -1)]
    assert result.tried == 2
    assert [c.name for c in result.representatives] == ["triangle(3,3,4)#1", "triangle(3,3,4)#2"]


def test_classify_246():
    assert classify_integer_classes(triangle_diagram(2, 4, 6)).count == 1


def test_classify_466_differs_from_printed_table():
    result = classify_integer_classes(triangle_diagram(4, 6, 6))
    assert result.count == 6
    triples = sorted(-int(s[(0, 1, 2)].to_fraction()) for s in result.signatures)
    assert triples == [1, 2, 3, 6, 9, 18]
    assert catalog.TRIANGLE_TABLE[(4, 6, 6)] == 5


@pytest.mark.parametrize("d, pairs", [(3, {(2, 1), (1, 2)}), (4, {(4, 1), (1, 4), (2, 2)})])
def test_classify_tetrahedra(d, pairs):
    result = classify_integer_classes(catalog.tetrahedron_diagram(d))
    assert result.count == len(pairs)
    four_cycles = {
        tuple(int(v.to_fraction()) for v in s.of_length(4)) for s in result.signatures
    }
    assert four_cycles == pairs


def test_classify_simplex4():
    result = classify_integer_classes(catalog.simplex4_diagram())
    assert result.count == 2
    assert all(determinant(c) == -5 for c in result.representatives)


def test_classify_counts_rejections():
    # (3,3,3) is affine: every candidate has a zero determinant
    result = classify_integer_classes(triangle_diagram(3, 3, 3))
    assert result.count == 0
    assert result.rejected == {REJECT_NOT_NEGATIVE: 1}


def test_classify_with_threads_is_deterministic():
    d = triangle_diagram(4, 4, 6)
    serial = classify_integer_classes(d, workers=1)
    threaded = classify_integer_classes(d, workers=4)
    assert serial.signatures == threaded.signatures
    assert serial.count == 6


def test_classify_rejects_non_simplex():
    with pytest.raises(ValueError, match="parametric mode"):
        classify_integer_classes(catalog.cu21_diagram())


def test_classify_rejects_order_five():
    with pytest.raises(ValueError, match="admits no integral"):
        classify_integer_classes(simplex_diagram("p5", 2, {(1, 2): 5, (1, 3): 3, (2, 3): 3}))


def test_representatives_pairwise_inequivalent():
    result = classify_integer_classes(triangle_diagram(4, 4, 4))
    reps = result.representatives
    for i, a in enumerate(reps):
        for b in reps[i + 1 :]:
            assert not equivalent(a, b)


# ─── one-parameter families ───────────────────────────────────────────────────


def test_parametric_signature_346():
    sig = parametric_signature(catalog.triangle346_family())
    text = {cycle: format_ratfunc(f) for cycle, f in sig.items()}
    assert text[(0, 1)] == "3"
    assert text[(0, 2)] == "2"
    assert text[(1, 2)] == "1"
    assert text[(0, 1, 2)] == "-6*t"
    assert text[(0, 2, 1)] == "-1/(t)"


def test_parametric_signature_prism():
    sig = parametric_signature(catalog.prism_family(3))
    assert format_ratfunc(sig[(0, 1, 2)]) == "-t"
    assert format_ratfunc(sig[(0, 2, 1)]) == "-1/(t)"
    assert sig[(2, 3)].constant_value() == 1


def test_solve_346():
    solutions = solve_integrality(catalog.triangle346_family())
    assert [str(s.t) for s in solutions] == ["1/6", "1/3", "1/2", "1"]
    for s in solutions:
        assert s.over_z
        assert s.signature.sign_rule_holds()


@pytest.mark.parametrize("den", range(1, 25))
def test_346_grid_has_no_other_integral_points(den):
    family = catalog.triangle346_family()
    solutions = {s.t.to_fraction() for s in solve_integrality(family)}
    for num in range(1, 80):
        t = Fraction(num, den)
        if t in solutions:
            continue
        assert not verify_at(family, t).over_z, t


@pytest.mark.parametrize("den", range(1, 7))
def test_cu21_grid_has_no_other_integral_points(den, q5_6):
    family = catalog.cu21_family()
    integral = {
        parse_number(text, q5_6).to_fraction()
        for text in catalog.CU21_INTEGRAL_PARAMETERS.values()
        if parse_number(text, q5_6).is_rational
    }
    assert integral == {0}
    for num in range(-3, 13):
        t = Fraction(num, den)
        # domain is t > -1/sqrt(5)
        if t in integral or (t < 0 and 5 * t * t >= 1):
            continue
        assert not verify_at(family, t).over_z, t


@pytest.mark.parametrize("d", [3, 4])
def test_solve_prism_is_empty(d):
    assert solve_integrality(catalog.prism_family(d)) == []


def test_solve_constant_family():
    p = _family([["2", "-1"], ["-1", "2"]])
    [point] = solve_integrality(p)
    assert point.t is None
    assert point.over_z


def test_solve_constant_family_non_integral():
    assert solve_integrality(_family([["2", "-1/2"], ["-1", "2"]])) == []


def test_solve_unsupported_form():
    with pytest.raises(ValueError, match="verify_at"):
        solve_integrality(_family([["2", "-t"], ["-1", "2"]]))


def test_verify_346_at_half():
    point = verify_at(catalog.triangle346_family(), parse_number("1/2", FieldSpec()))
    assert point.over_z
    assert point.signature[(0, 1, 2)] == -3
    assert point.signature[(0, 2, 1)] == -2


def test_verify_cu21(q5_6):
    family = catalog.cu21_family()
    assert verify_at(family, 0).over_z
    assert not verify_at(family, 1).over_z
    for text in catalog.CU21_INTEGRAL_PARAMETERS.values():
        assert verify_at(family, parse_number(text, q5_6)).over_z


def test_verify_prism_named_parameters():
    point = verify_at(catalog.prism_family(3), 2)
    m = point.matrix
    assert m[2, 3] == -1  # mu·(1 − t)/t with mu = 2
    assert m[4, 3] == -8  # −nu, nu = 2 + 3·mu
    point4 = verify_at(catalog.prism_family(4), 2)
    assert point4.matrix[4, 3] == -14


def test_verify_outside_domain():
    with pytest.raises(ValueError, match="outside the domain"):
        verify_at(catalog.triangle346_family(), 0)


def test_verify_pole():
    p = _family([["2", "-1/(t - 2)"], ["-1", "2"]])
    with pytest.raises(PoleError):
        verify_at(p, 2)


def test_family_point_conjugate_to_integral_matrix():
    point = verify_at(catalog.triangle346_family(), 1)
    integral = classify_integer_classes(triangle_diagram(6, 4, 3))
    assert any(equivalent(point.matrix, c) for c in integral.representatives)


# ─── unit families over O_k ───────────────────────────────────────────────────


def test_polygon_order(t334):
    assert polygon_order(t334) == [0, 1, 2]


def test_polygon_order_rejects_path():
    with pytest.raises(ValueError, match="not a polygon"):
        polygon_order(triangle_diagram(2, 3, 4))


def test_unit_one_reproduces_integer_class(t334, m334):
    c = polygon_cartan_matrix(t334, FieldSpec().one())
    assert c.entries == m334.entries


def test_units_family_334(t334):
    ring = QuadraticRing(2)
    eps = fundamental_unit(ring)
    result = units_family(UnitFamilySpec(t334, ring, eps, 3))
    assert result.exponents == [1, 2, 3]
    assert result.skipped == []
    for k, c in zip(result.exponents, result.matrices, strict=True):
        assert cyclic_signature(c)[(0, 1, 2)] == -(eps**k)
    sigs = {cyclic_signature(c) for c in result.matrices}
    assert len(sigs) == 3


def test_units_family_rejects_non_unit(t334):
    with pytest.raises(ValueError, match="not a unit"):
        UnitFamilySpec(t334, QuadraticRing(2), 2 + Q2.sqrt(2), 3)


def test_units_family_rejects_small_unit(t334):
    with pytest.raises(ValueError, match="must be > 1"):
        UnitFamilySpec(t334, QuadraticRing(2), Q2.sqrt(2) - 1, 3)


# ─── catalog claims ───────────────────────────────────────────────────────────


def test_334_representatives_match_displayed_matrices(t334, m334, m334_swapped):
    first, second = classify_integer_classes(t334).representatives
    assert equivalent(first, m334)
    assert equivalent(second, m334_swapped)
    assert not equivalent(first, m334_swapped)


@pytest.mark.parametrize("pqr, generators", [((2, 4, 6), {2, 3}), ((2, 6, 6), {3})])
def test_right_angled_triangles_have_cos2_generators(pqr, generators):
    [rep] = classify_integer_classes(triangle_diagram(*pqr)).representatives
    assert definability_generators(rep).generators == generators


def test_346_solutions_match_integral_classes():
    family = catalog.triangle346_family()
    reps = classify_integer_classes(triangle_diagram(6, 4, 3)).representatives
    matched = []
    for s in solve_integrality(family):
        hits = [k for k, c in enumerate(reps) if equivalent(verify_at(family, s.t).matrix, c)]
        assert len(hits) == 1
        matched.extend(hits)
    assert sorted(matched) == [0, 1, 2, 3]


def test_cu21_integral_points(q5_6):
    family = catalog.cu21_family()
    sigs = []
    for text in catalog.CU21_INTEGRAL_PARAMETERS.values():
        point = verify_at(family, parse_number(text, q5_6))
        assert point.over_z
        sigs.append(point.signature)
    assert len(set(sigs)) == 3


@pytest.mark.parametrize("k", sorted(catalog.CU21_INTEGRAL_PARAMETERS))
def test_cu21_integral_matrices_have_rank_four(k):
    c = catalog.get_entry(f"cu21-integral({k})").payload
    assert realize(c).rank == 4


@pytest.mark.parametrize("d", [3, 4])
def test_prism_at_two_is_valid_but_not_integral(d):
    point = verify_at(catalog.prism_family(d), 2)
    assert validate_vinberg(point.matrix, catalog.prism_diagram(d)).valid
    assert not point.over_z


def test_units_family_of_five(t334):
    ring = QuadraticRing(2)
    result = units_family(UnitFamilySpec(t334, ring, fundamental_unit(ring), 5))
    assert len(result.matrices) == 5
    for i, a in enumerate(result.matrices):
        assert determinant(a) != 0
        assert all(is_algebraic_integer(v, ring) for v in definability_generators(a).values)
        for b in result.matrices[i + 1 :]:
            assert not equivalent(a, b)
