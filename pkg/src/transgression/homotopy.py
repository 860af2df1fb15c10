"""Contracting homotopies, transgression cochains and scalar cohomology classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraMap, Element, build_algebra
from .derivations import Derivation, standard_operators
from .errors import (ClassNotResolved, NotACoboundary, NotACocycle, NotAcyclicFlavor,
                     NotCentral)
from .linalg import Echelon, axpy, solve

_CONTRACTIBLE = ("koszul", "deformed-koszul", "weil")


@dataclass
class HomotopyOperator:
    """h with [d, h] = id - i*pi, built in the variables (d theta_a, theta_a).

    In those variables the algebra is a free Koszul algebra, ``s`` sends the even
    variable ``z_a`` to ``theta_a`` and ``h = s / N`` on monomials of total
    degree ``N > 0``.
    """

    ctx: object
    work: object  # commutative context the computation runs in
    koszul: object  # Koszul algebra in the new variables
    s: Derivation
    to_new: AlgebraMap
    from_new: AlgebraMap
    differential: object

    def _to_work(self, x):
        return x if self.work is self.ctx else Element(self.work, x.terms)

    def _from_work(self, x):
        return x if self.work is self.ctx else Element(self.ctx, x.terms)

    def pi(self, x):
        """Augmentation: constant term in the new variables."""
        return self.to_new(self._to_work(x)).constant()

    def h(self, x):
        y = self.to_new(self._to_work(x))
        out = {}
        K = self.koszul
        for w, c in y.terms.items():
            N = sum(w[0]) + len(w[1])
            if N:
                axpy(out, c / N, self.s.on_word(w))
        return self._from_work(self.from_new(Element(K, out)))

    __call__ = h

    def certificate(self, bound):
        """First word of level <= bound violating [d,h] = id - i*pi, or None."""
        d = self.differential
        for w in self.ctx.basis_window(bound):
            x = self.ctx.word(w)
            r = d(self.h(x)) + self.h(d(x)) - x + self.pi(x)
            if r:
                return self.ctx.word_str(w), r
        return None


def koszul_contraction(ctx, ops=None, xi=None):
    """Homotopy for Koszul, deformed Koszul and classical Weil contexts (any xi)."""
    if ctx.flavor not in _CONTRACTIBLE:
        raise NotAcyclicFlavor(f"no explicit homotopy on {ctx.flavor}; use a linear solve")
    if ops is None:
        ops = standard_operators(ctx, xi=xi)
    if ctx.odd_kind == "cl":
        # d and d' never contract two Clifford generators, so on words they act
        # exactly as on the exterior twin; the homotopy is transported word by word.
        work = build_algebra("koszul", dim=ctx.n, names=ctx.names, pairing=ctx.pairing,
                             name=f"twin({ctx.name})")
        wops = standard_operators(work, xi=ops.xi)
    else:
        work, wops = ctx, ops
    dd = wops.differential
    K = build_algebra("koszul", dim=ctx.n, names=ctx.names, name=f"new-vars({ctx.name})")
    even_img, inv_even = {}, {}
    for j in range(ctx.n):
        dt = dd(work.odd_gen(j))
        even_img[j] = dt
        rest = dt - work.even_gen(j)
        if any(any(w[0]) for w in rest.terms):
            raise NotAcyclicFlavor("d(theta) is not triangular in the even generators")
        inv_even[j] = K.even_gen(j) - Element(K, rest.terms)
    from_new = AlgebraMap(K, work, even_img, {j: work.odd_gen(j) for j in range(ctx.n)})
    to_new = AlgebraMap(work, K, inv_even, {j: K.odd_gen(j) for j in range(ctx.n)})
    s = Derivation(K, 1, {j: K.odd_gen(j) for j in range(K.n)}, {}, name="s")
    return HomotopyOperator(ctx, work, K, s, to_new, from_new, ops.differential)


@dataclass
class TransgressionCochain:
    source: Element
    cochain: Element
    residual: Element
    method: str
    window: int | None = None

    @property
    def ok(self):
        return not self.residual


def _is_central(ctx, p):
    for j in range(ctx.n):
        for g in ((ctx.even_gen(j),) if ctx.even_kind else ()) + (
                (ctx.odd_gen(j),) if ctx.odd_kind else ()):
            if p * g != g * p:
                return False
    return True


def _unknowns(ctx, window, parity, space):
    if space is None:
        return [ctx.word(w) for w in ctx.basis_window(window) if len(w[1]) % 2 == parity]
    return [v for v in space if v.parity() == parity and v.level() <= window]


def solve_preimage(ctx, d, target, window, space=None, reverse=False):
    """x with d(x) = target among elements of level <= window, or None."""
    par = (target.parity() + 1) % 2 if target.parity() is not None else 1
    us = _unknowns(ctx, window, par, space)
    if reverse:
        us = us[::-1]
    sol = solve([d(u).terms for u in us], target.terms)
    if sol is None:
        return None
    out = ctx.zero()
    for i, c in sol.items():
        out = out + c * us[i]
    return out


def transgress(ctx, ops, p, window=6, method="auto", homotopy=None, space=None, cap=12):
    """Cochain C with d(C) = p, for an even, central, d-closed p."""
    d = ops.differential
    if p.parity() != 0:
        raise ValueError("transgression needs an even element")
    if d(p):
        raise NotACocycle("d(p) != 0")
    if not _is_central(ctx, p):
        raise NotCentral("p is not central")
    if method in ("auto", "homotopy") and ctx.flavor in _CONTRACTIBLE:
        H = homotopy or koszul_contraction(ctx, ops)
        c = H.pi(p)
        if c:
            raise NotACoboundary(f"augmentation of p is {c}; transgress p - ({c}) instead")
        C = H.h(p)
        return TransgressionCochain(p, C, d(C) - p, "homotopy")
    if method == "homotopy":
        raise NotAcyclicFlavor(f"no homotopy on {ctx.flavor}")
    w = window
    while True:
        C = solve_preimage(ctx, d, p, w, space)
        if C is not None:
            return TransgressionCochain(p, C, d(C) - p, "linear-solve", w)
        if w >= cap:
            raise NotACoboundary(f"no preimage up to window {w}")
        w = min(cap, 2 * w)


def scalar_class(ctx, ops, z, window, space=None, reverse=False, homotopy=None):
    """Return (c, y) with z = c*1 + d(y), y of level <= window."""
    d = ops.differential
    if d(z):
        raise NotACocycle("d(z) != 0")
    if homotopy is not None:
        c = homotopy.pi(z)
        return c, homotopy.h(z - c)
    par = z.parity()
    if par is None:
        raise ValueError("scalar_class needs a homogeneous element")
    us = _unknowns(ctx, window, (par + 1) % 2, space)
    if reverse:
        us = us[::-1]
    e = Echelon()
    for i, u in enumerate(us):
        e.add(d(u).terms, {i: Fraction(1)})
    r, t = e.reduce(z.terms)

    def elem(tag):
        out = ctx.zero()
        for i, c in tag.items():
            out = out - c * us[i]
        return out

    if not r:
        return Fraction(0), elem(t)
    r1, t1 = e.reduce(ctx.one().terms)
    if not r1:
        raise ClassNotResolved("1 is exact in the window")
    k = max(r1)
    c = r.get(k, Fraction(0)) / r1[k]
    chk = dict(r)
    axpy(chk, -c, r1)
    if chk:
        raise ClassNotResolved(f"z is not c*1 + d(y) with y in window {window}")
    return c, elem(t) - c * elem(t1)


def partial(ctx, p, j):
    """Partial derivative of an element of the even (symmetric) factor by generator j."""
    out = {}
    for (exps, idx), c in p.terms.items():
        if exps[j]:
            e = list(exps)
            e[j] -= 1
            axpy(out, c * exps[j], {(tuple(e), idx): Fraction(1)})
    return Element(ctx, out)


def closed_form_cochain(ctx, p, factor="shifted"):
    """sum_a k * dp/de_a (x) e_a for a homogeneous polynomial p of degree m in the
    symmetric factor; ``k = 1/(m+1)`` ("shifted") or ``1/m`` ("euler")."""
    m = max(sum(w[0]) for w in p.terms)
    k = Fraction(1, m + 1) if factor == "shifted" else Fraction(1, m)
    out = ctx.zero()
    for j in range(ctx.n):
        out = out + partial(ctx, p, j) * ctx.odd_gen(j)
    return out * k


def closed_form_discrepancy(ctx, ops, p):
    """Scalar r with d(closed-form cochain) = r * p, recording the normalization gap."""
    C = closed_form_cochain(ctx, p, "shifted")
    dc = ops.differential(C)
    w = max(p.terms)
    r = dc.coeff(w) / p.coeff(w)
    if dc != r * p:
        return None
    return r
