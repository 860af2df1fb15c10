from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import elements, embed
from transgression.algebra import build_algebra
from transgression.derivations import invariant_window, standard_operators
from transgression.errors import NotACoboundary, NotACocycle, NotAcyclicFlavor
from transgression.homotopy import (closed_form_cochain, closed_form_discrepancy,
                                    koszul_contraction, scalar_class, transgress)
from transgression.invariants import center_generators, primitive_generators
from transgression.lie import bundled


@pytest.mark.parametrize("flavor, dim, xi", [
    ("koszul", 1, None), ("koszul", 2, None), ("deformed-koszul", 2, {0: 2, 1: -1}),
    ("koszul", 2, {1: 3})])
def test_homotopy_certificate_koszul(flavor, dim, xi):
    K = build_algebra(flavor, dim=dim, form=[[1, 0], [0, 2]][:dim] if dim == 2 else [[1]])
    ops = standard_operators(K, xi=xi)
    assert koszul_contraction(K, ops).certificate(6) is None


@pytest.mark.parametrize("name", ["sl2", "gl2"])
@pytest.mark.parametrize("deformed", [False, True])
def test_homotopy_certificate_weil(name, deformed):
    L = bundled(name)
    W = build_algebra("weil", lie=L)
    ops = standard_operators(W, xi={L.cartan_indices[-1]: 1} if deformed else None)
    assert koszul_contraction(W, ops).certificate(5) is None


def test_koszul_dim1_examples():
    K = build_algebra("koszul", dim=1)
    ops = standard_operators(K)
    H = koszul_contraction(K, ops)
    v = K.even_gen(0)
    assert H(v * v) == v * K.odd_gen(0)
    t = transgress(K, ops, v * v)
    assert t.ok and t.method == "homotopy"


def test_deformed_dim1_transgression():
    K = build_algebra("deformed-koszul", dim=1, form=[[1]])
    ops = standard_operators(K, xi={0: 5})
    H = koszul_contraction(K, ops)
    v = K.even_gen(0)
    assert H.pi(v) == 5
    with pytest.raises(NotACoboundary):
        transgress(K, ops, v)
    assert transgress(K, ops, v - 5).cochain == K.odd_gen(0)


def test_transgression_preconditions():
    K = build_algebra("koszul", dim=1)
    ops = standard_operators(K)
    with pytest.raises(ValueError):
        transgress(K, ops, K.odd_gen(0))
    Q = build_algebra("quantized-weil", lie=bundled("sl2"))
    qops = standard_operators(Q)
    with pytest.raises(NotACocycle):
        transgress(Q, qops, Q.gen("h", "even") * Q.gen("h", "even"))
    with pytest.raises(NotAcyclicFlavor):
        koszul_contraction(Q)


def test_weil_casimir_cochain(sl2):
    W = build_algebra("weil", lie=sl2)
    ops = standard_operators(W)
    cas = embed(W, primitive_generators(sl2).classical[0])
    t = transgress(W, ops, cas)
    assert t.ok
    # the odd cubic part is proportional to the invariant 3-form
    assert t.cochain.homogeneous(3) != W.zero()


def test_quantized_casimir_needs_constant(sl2):
    Q = build_algebra("quantized-weil", lie=sl2)
    ops = standard_operators(Q)
    gs = primitive_generators(sl2)
    phat = embed(Q, center_generators(sl2, gs)[0])
    omega = phat - Fraction(1, 2)
    space = invariant_window(Q, 8, ops=ops)
    with pytest.raises(NotACoboundary):
        transgress(Q, ops, omega, window=4, cap=8, space=space)
    t = transgress(Q, ops, phat, window=6, space=space)
    assert t.ok and t.method == "linear-solve"
    c, _ = scalar_class(Q, ops, t.cochain * t.cochain, 7, space=space)
    assert c == 0


@given(st.integers(min_value=-4, max_value=4).filter(bool))
def test_deformed_scalar_class_of_square(t):
    K = build_algebra("deformed-koszul", dim=1, names=["h"], form=[[2]])
    ops = standard_operators(K, xi={0: t})
    H = koszul_contraction(K, ops)
    h = K.even_gen(0)
    C = transgress(K, ops, h * h - t * t, homotopy=H).cochain
    assert C == (h + t) * K.odd_gen(0)
    c, y = scalar_class(K, ops, C * C, 3, homotopy=H)
    assert c == 8 * t * t
    assert C * C == c * K.one() + ops.differential(y)


def test_closed_form_normalization_gap():
    K = build_algebra("koszul", dim=2)
    ops = standard_operators(K)
    v1, v2 = K.even_gen(0), K.even_gen(1)
    for p, m in ((v1 * v1, 2), (v1 * v2 * v2, 3)):
        assert closed_form_discrepancy(K, ops, p) == Fraction(m, m + 1)
        assert ops.d(closed_form_cochain(K, p, "euler")) == p


@given(elements(build_algebra("koszul", dim=2), 4))
def test_homotopy_identity_random(x):
    K = x.ctx
    ops = standard_operators(K)
    H = koszul_contraction(K, ops)
    assert ops.d(H(x)) + H(ops.d(x)) == x - H.pi(x)
