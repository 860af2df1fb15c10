"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``key -> Fraction`` with no zero entries.  Keys must be
mutually comparable (words, ints, tuples of those); the pivot of a row is its
largest key, which makes every elimination deterministic.
"""

from __future__ import annotations

import heapq
from fractions import Fraction


class _Desc:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k


def clean(vec):
    return {k: Fraction(v) for k, v in vec.items() if v}


def axpy(y, a, x):
    """In place ``y += a * x`` dropping zeros."""
    if not a:
        return y
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)
    return y


def scale(vec, a):
    if not a:
        return {}
    return {k: a * v for k, v in vec.items()}


class Echelon:
    """Incrementally built row echelon basis.

    Each stored row may carry a *tag*: a sparse combination of caller-side
    indices recording how the row was produced.  Reducing a tagged vector
    updates its tag alongside, which is how kernels and solutions are read off.
    """

    def __init__(self):
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def copy(self):
        e = Echelon()
        e.rows = dict(self.rows)
        return e

    def reduce(self, vec, tag=None):
        vec = dict(vec)
        tag = dict(tag) if tag else {}
        rows = self.rows
        heap = [_Desc(k) for k in vec if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap).k
            c = vec.get(k)
            if not c:
                continue
            row, rtag = rows[k]
            for j, v in row.items():
                nv = vec.get(j, 0) - c * v
                if nv:
                    if j not in vec and j in rows:
                        heapq.heappush(heap, _Desc(j))
                    vec[j] = nv
                else:
                    vec.pop(j, None)
            if rtag:
                axpy(tag, -c, rtag)
        return vec, tag

    def _store(self, vec, tag):
        p = max(vec)
        inv = 1 / vec[p]
        self.rows[p] = (scale(vec, inv), scale(tag, inv) if tag else {})

    def add(self, vec, tag=None):
        """Insert ``vec``; return its residual (empty if it was dependent) and residual tag."""
        r, t = self.reduce(vec, tag)
        if r:
            self._store(r, t)
        return r, t

    def contains(self, vec):
        r, _ = self.reduce(vec)
        return not r


def rank(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(vectors, modulo=()):
    """Basis of ``{c : sum_i c_i vectors[i] in span(modulo)}`` as dicts ``index -> coeff``."""
    e = Echelon()
    for m in modulo:
        e.add(m)
    out = []
    for i, v in enumerate(vectors):
        r, t = e.add(v, {i: Fraction(1)})
        if not r:
            out.append(t)
    return out


def solve(vectors, target, modulo=()):
    """One solution ``c`` of ``sum_i c_i vectors[i] = target`` (mod ``span(modulo)``), or None.

    Free variables are set to zero, so the solution is determined by the input order.
    """
    e = Echelon()
    for m in modulo:
        e.add(m)
    for i, v in enumerate(vectors):
        e.add(v, {i: Fraction(1)})
    r, t = e.reduce(target)
    if r:
        return None
    return {i: -c for i, c in t.items()}


def combine(coeffs, vectors):
    out = {}
    for i, c in coeffs.items():
        axpy(out, c, vectors[i])
    return out


def matrix_inverse(m):
    """Inverse of a square list-of-lists rational matrix (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def determinant(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det
