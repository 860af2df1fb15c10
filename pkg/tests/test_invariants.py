import json
from fractions import Fraction

import pytest

from transgression.errors import NonCentralGenerator, RankNotReached
from transgression.invariants import (casimir, center_generators, enveloping_algebra,
                                      generators_from_doc, generators_to_doc,
                                      hilbert_check, hilbert_coefficients,
                                      invariant_polynomials, is_invariant,
                                      primitive_generators, symmetric_algebra)
from transgression.lie import bundled
from transgression.projections import chevalley_project, harish_chandra_project, projection


def test_sl2_casimir(sl2):
    S = symmetric_algebra(sl2)
    e, h, f = (S.gen(n) for n in "ehf")
    assert casimir(sl2) == 2 * e * f + h * h / 2
    assert is_invariant(casimir(sl2))


@pytest.mark.parametrize("name, degrees", [("sl2", [2]), ("gl2", [1, 2]), ("sl3", [2, 3]),
                                           ("abelian1", [1])])
def test_generator_degrees(name, degrees):
    gs = primitive_generators(bundled(name))
    assert gs.degrees == degrees
    assert all(is_invariant(p) for p in gs.classical)
    assert gs.exponents == [d - 1 for d in degrees]


@pytest.mark.parametrize("name, top", [("sl2", 6), ("gl2", 4), ("sl3", 4)])
def test_hilbert_series(name, top):
    gs = primitive_generators(bundled(name))
    assert hilbert_check(gs, top) == []


def test_hilbert_coefficients():
    assert hilbert_coefficients([2, 3], 6) == [1, 0, 1, 1, 1, 1, 2]


def test_rank_not_reached(sl3):
    with pytest.raises(RankNotReached):
        primitive_generators(sl3, max_degree=2)


def test_no_odd_degree_invariants_sl2(sl2):
    assert invariant_polynomials(sl2, 3) == []
    assert len(invariant_polynomials(sl2, 4)) == 1


def test_sl2_center_lift(sl2):
    gs = primitive_generators(sl2)
    (phat,) = center_generators(sl2, gs)
    U = enveloping_algebra(sl2)
    e, h, f = (U.gen(n) for n in "ehf")
    omega = 2 * f * e + h + h * h / 2
    assert phat == omega + Fraction(1, 2)


def test_gl2_center_lift(gl2):
    gs = primitive_generators(gl2)
    z_hat, cas_hat = center_generators(gl2, gs)
    U = enveloping_algebra(gl2)
    assert z_hat == U.gen("z")
    e, h, f = (U.gen(n) for n in "ehf")
    assert cas_hat == 2 * f * e + h + h * h / 2 + Fraction(1, 2)


@pytest.mark.parametrize("name", ["sl2", "gl2", "sl3", "abelian1"])
def test_lifts_project_to_chevalley_images(name):
    L = bundled(name)
    gs = primitive_generators(L)
    qs = center_generators(L, gs)
    hc = projection("HarishChandra", qs[0].ctx)
    ch = projection("Chevalley", gs.classical[0].ctx)
    for p, q in zip(gs.classical, qs):
        assert harish_chandra_project(q, hc.target, hc).terms == \
            chevalley_project(p, ch.target).terms


def test_document_roundtrip(gl2):
    gs = primitive_generators(gl2)
    center_generators(gl2, gs)
    doc = json.loads(json.dumps(generators_to_doc(gs)))
    back = generators_from_doc(gl2, doc)
    assert back.degrees == gs.degrees
    assert [repr(p) for p in back.classical] == [repr(p) for p in gs.classical]
    assert [repr(p) for p in back.quantized] == [repr(p) for p in gs.quantized]


def test_document_rejects_non_invariant(sl2):
    doc = {"classical": [[{"even": {"e": 1}, "odd": [], "coeff": "1"}]]}
    with pytest.raises(NonCentralGenerator):
        generators_from_doc(sl2, doc)
