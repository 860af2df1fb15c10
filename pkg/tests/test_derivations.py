from fractions import Fraction

import pytest

from transgression.algebra import build_algebra
from transgression.derivations import (certify, dirac_element, invariant_window,
                                       spin_element, standard_operators)
from transgression.errors import FlavorMismatch
from transgression.lie import bundled


def test_koszul_differential_on_generators():
    K = build_algebra("koszul", dim=2)
    ops = standard_operators(K)
    assert ops.d(K.odd_gen(1)) == K.even_gen(1)
    assert ops.d(K.even_gen(0)) == K.zero()


def test_deformed_koszul_shift():
    K = build_algebra("deformed-koszul", dim=1, form=[[3]])
    ops = standard_operators(K, xi={0: 5})
    assert ops.dprime(K.odd_gen(0)) == K.even_gen(0) - 5


def test_dirac_element_sl2():
    Q = build_algebra("quantized-weil", lie=bundled("sl2"))
    assert repr(dirac_element(Q)) == ("1/4 1(x)h + 1/4 1(x)f.h.e + 1/2 e(x)f + 1/4 h(x)h"
                                      " + 1/2 f(x)e").replace("(x)", " (x) ")


def test_contraction_pairs_with_twice_the_form():
    L = bundled("sl2")
    for flavor in ("weil", "quantized-weil"):
        ctx = build_algebra(flavor, lie=L)
        ops = standard_operators(ctx)
        for a in range(L.dim):
            for b in range(L.dim):
                val = ops.iota({a: 1})(ctx.odd_vec({b: 1}))
                assert val == 2 * L.form[a][b] * ctx.one()


def test_spin_element_generates_adjoint_on_clifford():
    Q = build_algebra("quantized-weil", lie=bundled("sl2"))
    L = Q.lie
    for a in range(L.dim):
        g = spin_element(Q, {a: 1})
        for b in range(L.dim):
            y = Q.odd_vec({b: 1})
            assert g * y - y * g == Q.odd_vec(L.bracket_vec({a: 1}, {b: 1}))


@pytest.mark.parametrize("name", ["sl2", "gl2"])
@pytest.mark.parametrize("flavor", ["weil", "quantized-weil"])
@pytest.mark.parametrize("deformed", [False, True])
def test_operator_certificates(name, flavor, deformed):
    L = bundled(name)
    xi = {L.cartan_indices[-1]: Fraction(1)} if deformed else None
    ops = standard_operators(build_algebra(flavor, lie=L), xi=xi)
    certs = certify(ops, 6)
    assert len(certs) == (7 if deformed else 6)
    assert all(c.ok for c in certs), [c.relation for c in certs if not c.ok]


def test_certificate_detects_broken_differential():
    L = bundled("sl2")
    W = build_algebra("weil", lie=L)
    ops = standard_operators(W)
    ops.d = ops.iota({0: 1})  # an odd derivation that is not the Weil differential
    bad = [c for c in certify(ops, 2) if not c.ok]
    assert bad and bad[0].witness is not None


def test_certify_bound_raises():
    L = bundled("sl2")
    standard_operators(build_algebra("weil", lie=L), certify_bound=3)
    with pytest.raises(FlavorMismatch):
        standard_operators(build_algebra("symmetric", lie=L))
    with pytest.raises(ValueError):
        standard_operators(build_algebra("weil", lie=L), xi={0: 1})


def test_invariant_window_is_zero_weight():
    L = bundled("sl2")
    Q = build_algebra("quantized-weil", lie=L)
    ops = standard_operators(Q)
    h = ops.L({L.index("h"): 1})
    inv = invariant_window(Q, 4, ops=ops)
    assert inv and all(not h(x) for x in inv)
    # words of weight zero up to level 4: 1, h, 1(x)h, h(x)h, f.e, 1(x)f.e, 1(x)f.h.e, ...
    assert len(inv) == sum(1 for w in Q.basis_window(4) if not h(Q.word(w)))
