from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import embed
from transgression.algebra import build_algebra
from transgression.cohomology import (cohomology_window, normalize_generators,
                                      quotient_window, stability_scan)
from transgression.derivations import invariant_window, standard_operators
from transgression.errors import VerdictFail
from transgression.homotopy import koszul_contraction
from transgression.invariants import center_generators, primitive_generators
from transgression.lie import bundled
from transgression.verifier import (FormMatrix, clifford_check, contraction_point,
                                    deformed_form_closed, transgression_form,
                                    uct_split_check)


def deformed_dim1(beta, t):
    K = build_algebra("deformed-koszul", dim=1, form=[[beta]])
    ops = standard_operators(K, xi={0: t})
    return K, ops, koszul_contraction(K, ops)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool),
       st.integers(min_value=-3, max_value=3))
def test_linear_generator_form_is_beta(beta, t):
    K, ops, H = deformed_dim1(beta, t)
    gens = normalize_generators(K, ops, [K.even_gen(0)], 3, homotopy=H)
    F = transgression_form(K, ops, gens, 3, homotopy=H)
    assert F.cochains[0] == K.odd_gen(0)
    assert F.matrix == [[beta]]
    assert deformed_form_closed(K, [K.even_gen(0)], {0: t}).matrix == [[beta]]


@pytest.mark.parametrize("t", [1, 2, -3])
@pytest.mark.parametrize("scale", [1, Fraction(1, 2)])
def test_deformed_form_matches_closed_form(t, scale):
    K = build_algebra("deformed-koszul", dim=1, names=["h"], form=[[2]])
    ops = standard_operators(K, xi={0: t})
    H = koszul_contraction(K, ops)
    p = scale * K.even_gen(0) * K.even_gen(0)
    gens = normalize_generators(K, ops, [p], 4, homotopy=H)
    F = transgression_form(K, ops, gens, 4, homotopy=H)
    assert F.matrix == deformed_form_closed(K, [p], {0: t}).matrix
    assert F.matrix == [[8 * scale * scale * t * t]]


def test_two_dimensional_deformed_koszul():
    K = build_algebra("deformed-koszul", dim=2, form=[[1, 1], [1, 3]])
    xi = {0: 2, 1: -1}
    ops = standard_operators(K, xi=xi)
    H = koszul_contraction(K, ops)
    a, b = K.even_gen(0), K.even_gen(1)
    raw = [a + b, a * b]
    gens = normalize_generators(K, ops, raw, 6, homotopy=H)
    F = transgression_form(K, ops, gens, 6, homotopy=H)
    assert F.matrix == deformed_form_closed(K, raw, xi).matrix
    r = stability_scan(K, ops, gens, [7, 9])
    v = clifford_check(r, F.cochains, F)
    assert v.ok and v.verdict == "clifford"


def test_form_invariant_under_coboundary_shift():
    K = build_algebra("deformed-koszul", dim=2, form=[[2, 0], [0, 1]])
    ops = standard_operators(K, xi={0: 1, 1: 1})
    H = koszul_contraction(K, ops)
    a, b = K.even_gen(0), K.even_gen(1)
    gens = normalize_generators(K, ops, [a * a, a * b], 6, homotopy=H)
    F = transgression_form(K, ops, gens, 6, homotopy=H)
    shift = [ops.differential(K.odd_gen(0) * K.odd_gen(1) * a),
             ops.differential(b * K.odd_gen(0) * K.odd_gen(1))]
    moved = [c + s for c, s in zip(F.cochains, shift)]
    G = transgression_form(K, ops, gens, 6, homotopy=H, cochains=moved)
    assert G.matrix == F.matrix


def test_classical_weil_form_is_zero(sl2):
    W = build_algebra("weil", lie=sl2)
    ops = standard_operators(W)
    cas = embed(W, primitive_generators(sl2).classical[0])
    F = transgression_form(W, ops, [cas], 6, homotopy=koszul_contraction(W, ops))
    assert F.is_zero()


def test_zero_xi_degree_two_generators_give_zero_closed_form(sl3):
    gs = primitive_generators(sl3)
    assert deformed_form_closed(gs.classical[0].ctx, gs.classical, {}).is_zero()


def test_center_entry_independent_of_xi(gl2):
    gs = primitive_generators(gl2)
    S = gs.classical[0].ctx
    z = gl2.index("z")
    for t in (0, 1, 5):
        m = deformed_form_closed(S, gs.classical[:1], {gl2.index("h"): t}).matrix
        assert m == [[gl2.form[z][z]]]


@pytest.fixture(scope="module")
def quantized_gl2():
    L = bundled("gl2")
    Q = build_algebra("quantized-weil", lie=L)
    ops = standard_operators(Q)
    qs = center_generators(L, primitive_generators(L))
    space = invariant_window(Q, 9, ops=ops)
    gens = normalize_generators(Q, ops, [embed(Q, q) for q in qs], 7, space=space)
    F = transgression_form(Q, ops, gens, 7, space=space)
    r = stability_scan(Q, ops, gens, [7, 9], restrict_invariant=True)
    return L, Q, ops, F, r


def test_quantized_gl2_form_and_verdict(quantized_gl2):
    L, Q, ops, F, r = quantized_gl2
    z = L.index("z")
    assert F.matrix == [[L.form[z][z], 0], [0, 0]]
    v = clifford_check(r, F.cochains, F)
    assert v.ok and v.verdict == "clifford" and v.observed_total == 4
    Cz = F.cochains[0]
    assert r.class_coordinates(Cz * Cz) == [L.form[z][z], 0, 0, 0]


def test_clifford_check_catches_wrong_form(quantized_gl2):
    L, Q, ops, F, r = quantized_gl2
    wrong = FormMatrix([[Fraction(0), 0], [0, 0]], "closed-form")
    v = clifford_check(r, F.cochains, wrong)
    assert not v.ok
    with pytest.raises(VerdictFail):
        clifford_check(r, F.cochains, wrong, strict=True)


def test_quantized_deformed_form_at_contraction_point(sl2):
    xi = {sl2.index("h"): 1}
    Q = build_algebra("quantized-weil", lie=sl2)
    ops = standard_operators(Q, xi=xi)
    gs = primitive_generators(sl2)
    qs = center_generators(sl2, gs)
    space = invariant_window(Q, 8, ops=ops)
    gens = normalize_generators(Q, ops, [embed(Q, qs[0])], 7, space=space)
    F = transgression_form(Q, ops, gens, 7, space=space)
    point = contraction_point(ops, xi)
    assert point[Q.pos[sl2.index("h")]] == 4
    assert F.matrix == deformed_form_closed(gs.classical[0].ctx, gs.classical,
                                            point=point).matrix == [[32]]


@pytest.mark.parametrize("n", [1, 2])
def test_uct_koszul(n):
    K = build_algebra("koszul", dim=n)
    ops = standard_operators(K)
    rep = uct_split_check(K, ops, K.even_gen(0), 10)
    assert rep.ok
    assert [(r.quotient, r.cokernel, r.torsion) for r in rep.rows[:2]] == [(1, 1, 0), (1, 0, 1)]
    free = uct_split_check(K, ops, K.even_gen(0), 10, module="R")
    assert free.ok and all(r.torsion == 0 for r in free.rows)


def test_uct_weil_sl2(sl2):
    W = build_algebra("weil", lie=sl2)
    ops = standard_operators(W)
    cas = embed(W, primitive_generators(sl2).classical[0])
    rep = uct_split_check(W, ops, cas, 10)
    assert rep.ok and len(rep.rows) == 9
    assert rep.rows[3].torsion == 1


def test_koszul_full_quotient_exterior_verdict():
    K = build_algebra("koszul", dim=2)
    ops = standard_operators(K)
    H = koszul_contraction(K, ops)
    gens = [K.even_gen(0), K.even_gen(1)]
    F = transgression_form(K, ops, gens, 4, homotopy=H)
    r = cohomology_window(quotient_window(K, ops, gens, 6))
    v = clifford_check(r, F.cochains, F)
    assert v.ok and v.verdict == "exterior" and v.observed_total == 4
