"""Differentials, contractions and Lie derivatives on Koszul and Weil algebras.

Classical flavors get derivations defined by generator images; the quantized
Weil algebra gets inner derivations (super-commutators with fixed elements).

Normalizations (the Clifford relation is ``uv + vu = 2B(u,v)``):

* quantized:  iota(x) = ad(1 (x) x),  L(x) = ad(x (x) 1 + 1 (x) gamma(x)),
  d = ad(D) with ``gamma(x) = 1/4 sum_a [x,e_a] e^a`` and
  ``D = 1/2 sum_a e^a (x) e_a + 1/6 sum_a 1 (x) e^a gamma(e_a)``;
* classical Weil:  iota(x)(1 (x) y) = 2B(x,y),  d(1 (x) y) = y (x) 1 + 1 (x) lambda(y)
  with ``lambda(y) = 1/4 sum_a e^a ^ [e_a, y]``, matching the quantized symbols;
* Koszul:  iota(x)(1 (x) v) = pairing(x, v),  d(1 (x) v) = v (x) 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element
from .errors import CertificateFailure, FlavorMismatch
from .lie import dual_basis
from .linalg import axpy


class Operator:
    """Linear operator on a context, applied word by word with caching."""

    def __init__(self, ctx, parity, word_fn, name=""):
        self.ctx = ctx
        self.parity = parity % 2
        self._word_fn = word_fn
        self.name = name
        self._cache = {}

    def on_word(self, w):
        hit = self._cache.get(w)
        if hit is None:
            hit = self._word_fn(w)
            self._cache[w] = hit
        return hit

    def __call__(self, x):
        if x.ctx is not self.ctx:
            raise FlavorMismatch(f"operator on {self.ctx.name} applied to {x.ctx.name}")
        out = {}
        for w, c in x.terms.items():
            axpy(out, c, self.on_word(w))
        return Element(self.ctx, out)

    def __repr__(self):
        return f"Operator({self.name or '?'}, parity={self.parity})"


class Derivation(Operator):
    """Super-derivation determined by images of the even and odd generators."""

    def __init__(self, ctx, parity, even_images=None, odd_images=None, name=""):
        self.even_images = {j: x.terms for j, x in (even_images or {}).items()}
        self.odd_images = {j: x.terms for j, x in (odd_images or {}).items()}
        super().__init__(ctx, parity, self._apply_word, name)

    def _apply_word(self, w):
        ctx = self.ctx
        sp = ctx.split_last(w)
        if sp is None:
            return {}
        rest, side, j = sp
        g = ((ctx.zero_exps, (j,)) if side == "odd" else
             (tuple(int(i == j) for i in range(ctx.n)), ()))
        img = (self.odd_images if side == "odd" else self.even_images).get(j, {})
        # D(rest * g) = D(rest) g + (-1)^{|D||rest|} rest D(g)
        out = ctx.mul_terms(self.on_word(rest), {g: Fraction(1)})
        sign = -1 if (self.parity and ctx.word_parity(rest)) else 1
        axpy(out, sign, ctx.mul_terms({rest: Fraction(1)}, img))
        return out


def inner(ctx, D, name=""):
    """ad(D)(x) = Dx - (-1)^{|D||x|} xD for homogeneous D."""
    p = D.parity()
    if p is None:
        raise ValueError("inner derivation needs a homogeneous element")
    Dt = D.terms

    def fn(w):
        out = ctx.mul_terms(Dt, {w: Fraction(1)})
        sign = -1 if (p and ctx.word_parity(w)) else 1
        axpy(out, -sign, ctx.mul_terms({w: Fraction(1)}, Dt))
        return out

    return Operator(ctx, p, fn, name or "ad")


def compose(A, B, name=""):
    return Operator(A.ctx, A.parity + B.parity,
                    lambda w: A(Element(A.ctx, B.on_word(w))).terms, name)


def combination(pairs, name=""):
    """Linear combination ``sum c * A`` of operators with equal parity."""
    ctx = pairs[0][1].ctx
    par = pairs[0][1].parity

    def fn(w):
        out = {}
        for c, A in pairs:
            axpy(out, c, A.on_word(w))
        return out

    return Operator(ctx, par, fn, name)


def supercommutator(A, B, name=""):
    sign = -1 if (A.parity and B.parity) else 1

    def fn(w):
        out = dict(A(Element(A.ctx, B.on_word(w))).terms)
        axpy(out, -sign, B(Element(A.ctx, A.on_word(w))).terms)
        return out

    return Operator(A.ctx, A.parity + B.parity, fn, name or f"[{A.name},{B.name}]")


# -- building blocks on a Lie algebra -----------------------------------------

def clifford_vec(ctx, x):
    return ctx.odd_vec(x)


def spin_element(ctx, x):
    """gamma(x) = 1/4 sum_a [x, e_a] e^a in the Clifford factor; [gamma(x), y] = [x, y]."""
    L = ctx.lie
    dual = dual_basis(L)
    out = ctx.zero()
    for a in range(L.dim):
        br = L.bracket_vec(x, {a: 1})
        if br:
            out = out + ctx.odd_vec(br) * ctx.odd_vec(dual[a])
    return out * Fraction(1, 4)


def lambda_element(ctx, y):
    """lambda(y) = 1/4 sum_a e^a ^ [e_a, y] in the exterior factor."""
    L = ctx.lie
    dual = dual_basis(L)
    out = ctx.zero()
    for a in range(L.dim):
        br = L.bracket_vec({a: 1}, y)
        if br:
            out = out + ctx.odd_vec(dual[a]) * ctx.odd_vec(br)
    return out * Fraction(1, 4)


def dirac_element(ctx):
    """The odd element D with d = ad(D) on the quantized Weil algebra."""
    L = ctx.lie
    dual = dual_basis(L)
    quad = ctx.zero()
    cubic = ctx.zero()
    for a in range(L.dim):
        quad = quad + ctx.even_vec(dual[a]) * ctx.odd_vec({a: 1})
        cubic = cubic + ctx.odd_vec(dual[a]) * spin_element(ctx, {a: 1})
    return quad * Fraction(1, 2) + cubic * Fraction(1, 6)


def adjoint_action(ctx, x):
    """L(x) for a Lie vector ``x`` on any context built over the Lie algebra."""
    L = ctx.lie
    if ctx.even_kind == "env" or ctx.odd_kind == "cl":
        el = ctx.zero()
        if ctx.even_kind:
            el = el + ctx.even_vec(x)
        if ctx.odd_kind:
            el = el + spin_element(ctx, x)
        return inner(ctx, el, name="L")
    ev, od = {}, {}
    for j in range(ctx.n):
        br = L.bracket_vec(x, {ctx.perm[j]: 1})
        if ctx.even_kind:
            ev[j] = ctx.even_vec(br)
        if ctx.odd_kind:
            od[j] = ctx.odd_vec(br)
    return Derivation(ctx, 0, ev, od, name="L")


@dataclass
class Operators:
    ctx: object
    d: Operator
    xi: dict | None = None
    dprime: Operator | None = None
    D: Element | None = None
    Dprime: Element | None = None
    _iota: dict = field(default_factory=dict, repr=False)
    _L: dict = field(default_factory=dict, repr=False)
    certificates: list = field(default_factory=list)

    def basis(self):
        ctx = self.ctx
        if ctx.lie is not None:
            return [{a: Fraction(1)} for a in range(ctx.lie.dim)]
        return [{j: Fraction(1)} for j in range(ctx.n)]

    def iota(self, x):
        key = tuple(sorted(x.items()))
        if key not in self._iota:
            self._iota[key] = _contraction(self.ctx, x)
        return self._iota[key]

    def L(self, x):
        key = tuple(sorted(x.items()))
        if key not in self._L:
            ctx = self.ctx
            if ctx.lie is None:
                self._L[key] = Operator(ctx, 0, lambda w: {}, name="L")
            else:
                self._L[key] = adjoint_action(ctx, x)
        return self._L[key]

    def bracket(self, x, y):
        if self.ctx.lie is None:
            return {}
        return self.ctx.lie.bracket_vec(x, y)

    @property
    def differential(self):
        return self.dprime if self.dprime is not None else self.d


def _contraction(ctx, x):
    if ctx.flavor == "quantized-weil":
        return inner(ctx, ctx.odd_vec(x), name="iota")
    od = {}
    for j in range(ctx.n):
        if ctx.lie is not None:
            # pairing is stored in positions; x is in Lie indices
            val = sum((c * ctx.pairing[ctx.pos[a]][j] for a, c in x.items()), Fraction(0))
        else:
            val = sum((c * ctx.pairing[a][j] for a, c in x.items()), Fraction(0))
        od[j] = ctx.scalar(val)
    return Derivation(ctx, 1, {}, od, name="iota")


def standard_operators(ctx, xi=None, certify_bound=None):
    """d, d' = d - iota(xi), iota and L for a Koszul, Weil or quantized Weil context.

    ``xi`` is a vector in Lie (or V) basis indices; for Lie flavors it must lie in
    the Cartan span.  With ``certify_bound`` the operator relations are checked
    on that window and CertificateFailure is raised on the first violation.
    """
    flavor = ctx.flavor
    if flavor not in ("koszul", "deformed-koszul", "weil", "quantized-weil"):
        raise FlavorMismatch(f"no standard differential on {flavor}")
    if xi is not None:
        xi = {a: Fraction(c) for a, c in xi.items() if c}
        if ctx.lie is not None and not set(xi) <= set(ctx.lie.cartan_indices):
            raise ValueError("xi must lie in the Cartan subalgebra")
    D = Dp = None
    if flavor == "quantized-weil":
        D = dirac_element(ctx)
        d = inner(ctx, D, name="d")
    elif flavor == "weil":
        odd_only = Derivation(ctx, 1, {}, {j: ctx.even_gen(j) + lambda_element(
            ctx, {ctx.perm[j]: 1}) for j in range(ctx.n)})
        ev = {}
        for j in range(ctx.n):
            # y (x) 1 = d(1 (x) y) - 1 (x) lambda(y), so d(y (x) 1) = -d(lambda(y))
            ev[j] = -odd_only(lambda_element(ctx, {ctx.perm[j]: 1}))
        d = Derivation(ctx, 1, ev, {j: Element(ctx, odd_only.odd_images[j])
                                    for j in range(ctx.n)}, name="d")
    else:
        d = Derivation(ctx, 1, {}, {j: ctx.even_gen(j) for j in range(ctx.n)}, name="d")
    ops = Operators(ctx, d, xi=xi, D=D)
    if xi:
        if flavor == "quantized-weil":
            Dp = D - ctx.odd_vec(xi)
            ops.Dprime = Dp
            ops.dprime = inner(ctx, Dp, name="d'")
        else:
            ops.dprime = combination([(1, d), (-1, ops.iota(xi))], name="d'")
    if certify_bound is not None:
        ops.certificates = certify(ops, certify_bound)
        bad = [c for c in ops.certificates if not c.ok]
        if bad:
            raise CertificateFailure(f"{bad[0].relation} fails at {bad[0].witness}")
    return ops


@dataclass
class OperatorCertificate:
    relation: str
    bound: int
    residual: object  # first nonzero residual Element, or the zero element
    witness: object = None
    checked: int = 0

    @property
    def ok(self):
        return not self.residual


def _check(name, pairs_fn, words, ctx, bound):
    """pairs_fn(w) -> residual terms for word w."""
    n = 0
    for w in words:
        r = pairs_fn(w)
        n += 1
        if r:
            return OperatorCertificate(name, bound, Element(ctx, r), ctx.word_str(w), n)
    return OperatorCertificate(name, bound, ctx.zero(), None, n)


def certify(ops, bound, relations=None):
    """Check the G-differential algebra relations on every word of level <= bound."""
    ctx = ops.ctx
    words = ctx.basis_window(bound)
    basis = ops.basis()
    d = ops.d
    out = []

    def rel(name, fn):
        if relations is None or name in relations:
            out.append(_check(name, fn, words, ctx, bound))

    def comm_minus(A, B, C):
        S = supercommutator(A, B)
        return lambda w: _diff(S.on_word(w), C.on_word(w) if C is not None else {})

    def all_pairs(make):
        def fn(w):
            for x in basis:
                for y in basis:
                    r = make(x, y)(w)
                    if r:
                        return r
            return {}
        return fn

    def all_single(make):
        def fn(w):
            for x in basis:
                r = make(x)(w)
                if r:
                    return r
            return {}
        return fn

    cacheLL, cacheLi, cacheiD, cacheii, cacheLd = {}, {}, {}, {}, {}

    def memo(cache, key, build):
        if key not in cache:
            cache[key] = build()
        return cache[key]

    def k(x):
        return tuple(sorted(x.items()))

    rel("[L(x),L(y)] = L([x,y])", all_pairs(lambda x, y: memo(
        cacheLL, (k(x), k(y)), lambda: comm_minus(ops.L(x), ops.L(y), ops.L(ops.bracket(x, y))))))
    rel("[L(x),iota(y)] = iota([x,y])", all_pairs(lambda x, y: memo(
        cacheLi, (k(x), k(y)),
        lambda: comm_minus(ops.L(x), ops.iota(y), ops.iota(ops.bracket(x, y))))))
    rel("[iota(x),d] = L(x)", all_single(lambda x: memo(
        cacheiD, k(x), lambda: comm_minus(ops.iota(x), d, ops.L(x)))))
    rel("[iota(x),iota(y)] = 0", all_pairs(lambda x, y: memo(
        cacheii, (k(x), k(y)), lambda: comm_minus(ops.iota(x), ops.iota(y), None))))
    rel("[L(x),d] = 0", all_single(lambda x: memo(
        cacheLd, k(x), lambda: comm_minus(ops.L(x), d, None))))
    dd = compose(d, d)
    rel("d^2 = 0", lambda w: dd.on_word(w))
    if ops.dprime is not None:
        dpdp = compose(ops.dprime, ops.dprime)
        Lxi = ops.L(ops.xi)
        rel("d'^2 = -L(xi)", lambda w: _sum(dpdp.on_word(w), Lxi.on_word(w)))
    return out


def _diff(a, b):
    out = dict(a)
    axpy(out, -1, b)
    return out


def _sum(a, b):
    out = dict(a)
    axpy(out, 1, b)
    return out


def invariant_window(ctx, bound, cartan=None, xi=None, ops=None):
    """Basis (list of Elements) of the joint kernel of L(h) inside the window.

    ``cartan`` defaults to all Cartan basis elements; with ``xi`` only L(xi) is used.
    When every word is a weight vector the basis consists of words; otherwise an
    exact kernel is computed level by level.
    """
    from .linalg import kernel

    L = ctx.lie
    if L is None:
        return [ctx.word(w) for w in ctx.basis_window(bound)]
    ops = ops or Operators(ctx, None)
    hs = [xi] if xi is not None else [{h: Fraction(1)} for h in (cartan or L.cartan_indices)]
    acts = [ops.L(h) for h in hs]
    out = []
    for lv in range(bound + 1):
        words = ctx.component(lv)
        imgs = [[A.on_word(w) for A in acts] for w in words]
        diagonal = all(set(img) <= {w} for w, row in zip(words, imgs) for img in row)
        if diagonal:
            out.extend(ctx.word(w) for w, row in zip(words, imgs) if not any(row))
            continue
        # general case: kernel of the stacked map restricted to this level
        lower = ctx.basis_window(lv)
        vecs = []
        for w in lower:
            v = {}
            for i, A in enumerate(acts):
                for u, c in A.on_word(w).items():
                    v[(i, u)] = c
            vecs.append(v)
        known = [x for x in out]
        for kv in kernel(vecs):
            el = Element(ctx, {lower[i]: c for i, c in kv.items()})
            if el.level() == lv and not _in_span(el, known):
                out.append(el)
                known.append(el)
    return out


def _in_span(el, known):
    from .linalg import Echelon

    e = Echelon()
    for k in known:
        e.add(k.terms)
    return e.contains(el.terms)
