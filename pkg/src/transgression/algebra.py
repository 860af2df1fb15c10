"""Exact arithmetic in symmetric, exterior, Clifford and enveloping algebras and
in the tensor products used for Koszul and Weil algebras.

Every algebra here is ``E (x) O`` where the even factor ``E`` is a symmetric or
enveloping algebra (or absent) and the odd factor ``O`` an exterior or Clifford
algebra (or absent), both on ``n`` generators.  A basis word is a pair
``(exps, idx)``: an exponent vector for the even factor (a PBW monomial in the
enveloping case) and a strictly increasing index tuple for the odd factor.

Generators built over a Lie algebra are numbered by their position in the PBW
order (negative roots, Cartan, positive roots); ``ctx.perm`` and ``ctx.pos``
translate between positions and Lie basis indices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import FlavorMismatch, InvalidDescriptor
from .lie import format_rational
from .linalg import axpy

FLAVORS = {
    "symmetric": ("sym", None),
    "exterior": (None, "ext"),
    "clifford": (None, "cl"),
    "enveloping": ("env", None),
    "koszul": ("sym", "ext"),
    "deformed-koszul": ("sym", "cl"),
    "weil": ("sym", "ext"),
    "quantized-weil": ("env", "cl"),
}
GRADED = {"symmetric", "exterior", "koszul", "weil"}


def _add(vec, word, c):
    nv = vec.get(word, 0) + c
    if nv:
        vec[word] = nv
    else:
        vec.pop(word, None)


class Element:
    """Sparse rational combination of basis words of one context."""

    __slots__ = ("ctx", "terms")
    __hash__ = None

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c}

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.ctx is not self.ctx:
                raise FlavorMismatch(f"{other.ctx.name} vs {self.ctx.name}")
            return other
        return self.ctx.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return Element(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.ctx.multiply(self, other)
        c = Fraction(other)
        return Element(self.ctx, {w: c * v for w, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, Element):
            return self.ctx.multiply(other, self)
        return self * other

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ctx is other.ctx and self.terms == other.terms
        return self.terms == self.ctx.scalar(other).terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.ctx.pretty(self)

    def parity(self):
        """0, 1, or None for mixed parity; the zero element is even."""
        ps = {len(w[1]) % 2 for w in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def level(self):
        """Largest degree (graded flavors) or filtration level of a word, -1 for zero."""
        return max((self.ctx.level(w) for w in self.terms), default=-1)

    def top(self):
        """Part of maximal level."""
        m = self.level()
        return Element(self.ctx, {w: c for w, c in self.terms.items() if self.ctx.level(w) == m})

    def homogeneous(self, n):
        return Element(self.ctx, {w: c for w, c in self.terms.items() if self.ctx.level(w) == n})

    def constant(self):
        return self.terms.get(self.ctx.unit_word, Fraction(0))

    def coeff(self, word):
        return self.terms.get(word, Fraction(0))


class AlgebraContext:
    """Multiplication engine and grading bookkeeping for one algebra."""

    def __init__(self, flavor, n, names, *, lie=None, perm=None, form=None, pairing=None,
                 name=None):
        if flavor not in FLAVORS:
            raise InvalidDescriptor(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.even_kind, self.odd_kind = FLAVORS[flavor]
        self.n = n
        self.names = tuple(names)
        self.lie = lie
        self.perm = tuple(perm) if perm is not None else tuple(range(n))
        self.pos = {a: j for j, a in enumerate(self.perm)}
        self.form = form
        self.pairing = pairing
        self.name = name or flavor
        self.graded = flavor in GRADED
        self.even_weight = 1 if flavor == "symmetric" else 2
        self.zero_exps = (0,) * n if self.even_kind else ()
        self.unit_word = (self.zero_exps, ())
        self._bracket = {}
        if lie is not None:
            for (a, b), out in lie.brackets.items():
                if a in self.pos and b in self.pos:
                    self._bracket[(self.pos[a], self.pos[b])] = {self.pos[c]: v
                                                                 for c, v in out.items()}
        self._env_cache = {}
        self._cl_cache = {}
        self._window_cache = {}

    def __repr__(self):
        return f"AlgebraContext({self.name})"

    # -- words ----------------------------------------------------------------
    def level(self, word):
        return self.even_weight * sum(word[0]) + len(word[1])

    def word_parity(self, word):
        return len(word[1]) % 2

    def split_last(self, word):
        """``word = rest * generator``; returns (rest, 'even'|'odd', position) or None for 1."""
        exps, idx = word
        if idx:
            return (exps, idx[:-1]), "odd", idx[-1]
        for j in range(len(exps) - 1, -1, -1):
            if exps[j]:
                e = list(exps)
                e[j] -= 1
                return (tuple(e), ()), "even", j
        return None

    # -- elements -------------------------------------------------------------
    def scalar(self, c):
        return Element(self, {self.unit_word: c})

    def one(self):
        return self.scalar(1)

    def zero(self):
        return Element(self)

    def word(self, word, c=1):
        return Element(self, {word: c})

    def even_gen(self, j):
        if not self.even_kind:
            raise FlavorMismatch(f"{self.name} has no even generators")
        e = [0] * self.n
        e[j] = 1
        return Element(self, {(tuple(e), ()): 1})

    def odd_gen(self, j):
        if not self.odd_kind:
            raise FlavorMismatch(f"{self.name} has no odd generators")
        return Element(self, {(self.zero_exps, (j,)): 1})

    def even_vec(self, x):
        """Even element for a vector given in Lie (or V) basis indices."""
        out = self.zero()
        for a, c in x.items():
            out = out + c * self.even_gen(self.pos[a])
        return out

    def odd_vec(self, x):
        out = self.zero()
        for a, c in x.items():
            out = out + c * self.odd_gen(self.pos[a])
        return out

    def gen(self, name, side=None):
        """Generator by name; ``side`` is 'even' or 'odd' (defaults to the only side)."""
        j = self.names.index(name)
        if side is None:
            side = "even" if self.even_kind else "odd"
        return self.even_gen(j) if side == "even" else self.odd_gen(j)

    # -- multiplication -------------------------------------------------------
    def _even_mul(self, a, b):
        if self.even_kind == "sym":
            return {tuple(x + y for x, y in zip(a, b)): Fraction(1)}
        cur = {a: Fraction(1)}
        for j, k in enumerate(b):
            for _ in range(k):
                nxt = {}
                for w, c in cur.items():
                    axpy(nxt, c, self._env_gen(w, j))
                cur = nxt
        return cur

    def _env_gen(self, w, g):
        """PBW word times generator ``g`` on the right, straightened."""
        key = (w, g)
        hit = self._env_cache.get(key)
        if hit is not None:
            return hit
        last = max((j for j, k in enumerate(w) if k), default=-1)
        if g >= last:
            e = list(w)
            e[g] += 1
            res = {tuple(e): Fraction(1)}
        else:
            # w = w' x_last ;  x_last x_g = x_g x_last + [x_last, x_g]
            e = list(w)
            e[last] -= 1
            wp = tuple(e)
            res = {}
            for u, c in self._env_gen(wp, g).items():
                axpy(res, c, self._env_gen(u, last))
            for k, c in self._bracket.get((last, g), {}).items():
                axpy(res, c, self._env_gen(wp, k))
        self._env_cache[key] = res
        return res

    def _odd_mul(self, x, y):
        if not y:
            return {x: Fraction(1)}
        if self.odd_kind == "ext":
            if set(x) & set(y):
                return {}
            inv = sum(1 for i in x for j in y if i > j)
            return {tuple(sorted(x + y)): Fraction(-1 if inv % 2 else 1)}
        cur = {x: Fraction(1)}
        for g in y:
            nxt = {}
            for w, c in cur.items():
                axpy(nxt, c, self._cl_gen(w, g))
            cur = nxt
        return cur

    def _cl_gen(self, x, g):
        """Clifford word times generator on the right with ``uv + vu = 2B(u,v)``."""
        key = (x, g)
        hit = self._cl_cache.get(key)
        if hit is not None:
            return hit
        if not x or g > x[-1]:
            res = {x + (g,): Fraction(1)}
        elif g == x[-1]:
            b = self.form[g][g]
            res = {x[:-1]: Fraction(b)} if b else {}
        else:
            j, xp = x[-1], x[:-1]
            res = {}
            for u, c in self._cl_gen(xp, g).items():
                axpy(res, -c, self._cl_gen(u, j))
            b = self.form[j][g]
            if b:
                axpy(res, 2 * b, {xp: Fraction(1)})
        self._cl_cache[key] = res
        return res

    def mul_words(self, w1, w2):
        (a, x), (b, y) = w1, w2
        ev = self._even_mul(a, b) if self.even_kind else {(): Fraction(1)}
        od = self._odd_mul(x, y) if self.odd_kind else {(): Fraction(1)}
        out = {}
        for e, c in ev.items():
            for o, d in od.items():
                _add(out, (e, o), c * d)
        return out

    def mul_terms(self, t1, t2):
        out = {}
        for w1, c1 in t1.items():
            for w2, c2 in t2.items():
                for w, c in self.mul_words(w1, w2).items():
                    _add(out, w, c1 * c2 * c)
        return out

    def multiply(self, x, y):
        if x.ctx is not self or y.ctx is not self:
            raise FlavorMismatch("operands belong to a different algebra")
        return Element(self, self.mul_terms(x.terms, y.terms))

    def supercommutator(self, x, y):
        px, py = x.parity(), y.parity()
        sign = -1 if (px and py) else 1
        return x * y - sign * (y * x)

    # -- windows --------------------------------------------------------------
    def _exps_of_total(self, k):
        n = self.n
        if n == 0:
            return [()] if k == 0 else []
        out = []
        for cuts in combinations(range(k + n - 1), n - 1):
            prev, e = -1, []
            for c in cuts:
                e.append(c - prev - 1)
                prev = c
            e.append(k + n - 2 - prev)
            out.append(tuple(e))
        return out

    def component(self, level):
        """Words of exactly the given degree / filtration level, sorted."""
        hit = self._window_cache.get(level)
        if hit is not None:
            return hit
        words = []
        w = self.even_weight
        kmax = level // w if self.even_kind else 0
        for k in range(kmax + 1):
            m = level - w * k
            if self.odd_kind:
                if m > self.n:
                    continue
                odds = list(combinations(range(self.n), m))
            else:
                if m:
                    continue
                odds = [()]
            evens = self._exps_of_total(k) if self.even_kind else ([()] if k == 0 else [])
            for e in evens:
                for o in odds:
                    words.append((e, o))
        words.sort()
        self._window_cache[level] = words
        return words

    def basis_window(self, bound):
        out = []
        for lv in range(bound + 1):
            out.extend(self.component(lv))
        return out

    # -- printing -------------------------------------------------------------
    def word_str(self, word):
        exps, idx = word
        parts = []
        if self.even_kind:
            ev = [self.names[j] + (f"^{k}" if k > 1 else "") for j, k in enumerate(exps) if k]
            ev_s = "*".join(ev) if ev else "1"
        if self.odd_kind:
            sep = "^" if self.odd_kind == "ext" else "."
            od_s = sep.join(self.names[j] for j in idx) if idx else "1"
        if self.even_kind and self.odd_kind:
            if ev_s == "1" and od_s == "1":
                return "1"
            parts = [ev_s + " (x) " + od_s]
        elif self.even_kind:
            parts = [ev_s]
        else:
            parts = [od_s]
        return parts[0]

    def pretty(self, x):
        if not x.terms:
            return "0"
        out = []
        for w in sorted(x.terms, key=lambda w: (self.level(w), w)):
            c = x.terms[w]
            ws = self.word_str(w)
            if ws == "1":
                s = format_rational(c)
            elif c == 1:
                s = ws
            elif c == -1:
                s = "-" + ws
            else:
                s = format_rational(c) + " " + ws
            out.append(s)
        return " + ".join(out).replace("+ -", "- ")


def build_algebra(flavor, lie=None, dim=None, form=None, names=None, pairing=None, name=None):
    """Create an algebra context.

    Flavors on a Lie algebra (``enveloping``, ``weil``, ``quantized-weil``)
    need ``lie``.  The others take either ``lie`` (then V = g) or ``dim``.
    Clifford flavors take ``form`` (defaults to the Lie form).  ``pairing`` is
    the matrix used by contractions on Koszul flavors (default identity).
    """
    if flavor not in FLAVORS:
        raise InvalidDescriptor(f"unknown flavor {flavor!r}")
    if flavor in ("enveloping", "weil", "quantized-weil") and lie is None:
        raise InvalidDescriptor(f"{flavor} needs a Lie algebra")
    if lie is not None:
        perm = lie.pbw_order
        n = lie.dim
        nm = [lie.basis_names[a] for a in perm]
        lie_form = [[lie.form[a][b] for b in perm] for a in perm]
    else:
        if dim is None or dim < 0:
            raise InvalidDescriptor("dimension required")
        n, perm, lie_form = dim, None, None
        nm = list(names) if names else ([f"v{i + 1}" for i in range(dim)] if dim > 1 else ["v"])
        if len(nm) != n:
            raise InvalidDescriptor("names do not match dimension")
    odd = FLAVORS[flavor][1]
    if odd == "cl":
        if form is None:
            form = lie_form
        if form is None:
            raise InvalidDescriptor("Clifford flavor needs a symmetric form")
        form = [[Fraction(x) for x in row] for row in form]
        if len(form) != n or any(len(r) != n for r in form):
            raise InvalidDescriptor("form has wrong size")
        if any(form[i][j] != form[j][i] for i in range(n) for j in range(n)):
            raise InvalidDescriptor("Clifford form must be symmetric")
    elif form is not None:
        form = [[Fraction(x) for x in row] for row in form]
    if flavor == "weil":
        pairing = [[2 * x for x in row] for row in lie_form]
    elif pairing is None and flavor in ("koszul", "deformed-koszul"):
        pairing = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return AlgebraContext(flavor, n, nm, lie=lie, perm=perm, form=form or lie_form,
                          pairing=pairing, name=name or (f"{flavor}({lie.name})" if lie else
                                                         f"{flavor}({n})"))


def closed_form_count(ctx, level):
    """Number of words of a given level computed from binomials (independent of enumeration)."""
    from math import comb

    n, w = ctx.n, ctx.even_weight
    total = 0
    for k in range(level // w + 1 if ctx.even_kind else 1):
        m = level - w * k
        ev = comb(k + n - 1, n - 1) if (ctx.even_kind and n) else int(k == 0)
        od = comb(n, m) if ctx.odd_kind else int(m == 0)
        total += ev * od
    return total


class AlgebraMap:
    """Multiplicative extension of generator images to a linear map on words.

    Valid whenever the images satisfy the source relations (used for changes of
    variables between commutative algebras).
    """

    def __init__(self, src, dst, even_images=None, odd_images=None):
        self.src, self.dst = src, dst
        self.even_images = even_images or {}
        self.odd_images = odd_images or {}
        self._cache = {}

    def on_word(self, w):
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        sp = self.src.split_last(w)
        if sp is None:
            res = dict(self.dst.one().terms)
        else:
            rest, side, j = sp
            img = (self.even_images if side == "even" else self.odd_images)[j]
            res = self.dst.mul_terms(self.on_word(rest), img.terms)
        self._cache[w] = res
        return res

    def __call__(self, x):
        out = {}
        for w, c in x.terms.items():
            axpy(out, c, self.on_word(w))
        return Element(self.dst, out)
