"""Transgression form, Clifford relations and universal-coefficient dimension checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .cohomology import cohomology_window, quotient_window
from .errors import DimensionMismatch, VerdictFail
from .homotopy import partial, scalar_class, transgress
from .linalg import rank


@dataclass
class FormMatrix:
    matrix: list
    provenance: str  # "supercommutator-class" | "closed-form"
    cochains: list = field(default_factory=list)

    @property
    def size(self):
        return len(self.matrix)

    def is_zero(self):
        return all(not x for row in self.matrix for x in row)

    def is_symmetric(self):
        m = self.matrix
        return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(len(m)))


def transgression_form(ctx, ops, generators, window, homotopy=None, space=None,
                       cochains=None):
    """Entry (i,j) is the scalar class of (C_i C_j + C_j C_i)/2."""
    if cochains is None:
        cochains = [transgress(ctx, ops, p, window=window, homotopy=homotopy,
                               space=space).cochain for p in generators]
    r = len(cochains)
    m = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            z = (cochains[i] * cochains[j] + cochains[j] * cochains[i]) * Fraction(1, 2)
            if not z:
                continue
            c, _ = scalar_class(ctx, ops, z, z.level() + 1, space=space, homotopy=homotopy)
            m[i][j] = m[j][i] = c
    return FormMatrix(m, "supercommutator-class", cochains)


def evaluate(p, point):
    """Evaluate the even (polynomial) part of p at ``point`` (position -> value)."""
    total = Fraction(0)
    for (exps, idx), c in p.terms.items():
        if idx:
            raise ValueError("evaluation needs a purely even element")
        t = c
        for j, k in enumerate(exps):
            if k:
                t *= Fraction(point.get(j, 0)) ** k
        total += t
    return total


def contraction_point(ops, xi):
    """Values iota(xi)(theta_j) per generator position: where polynomials are evaluated."""
    ctx = ops.ctx
    iota = ops.iota(xi)
    return {j: iota(ctx.odd_gen(j)).constant() for j in range(ctx.n)}


def deformed_form_closed(ctx, generators, xi=None, form=None, point=None):
    """sum_{a,b} dp_i/de_a(xi) dp_j/de_b(xi) B(e_a, e_b).

    By default xi (index -> coefficient) is read in coordinates; ``point`` overrides
    the evaluation point (see ``contraction_point``).
    """
    form = form if form is not None else ctx.form
    if point is None:
        point = {ctx.pos[a]: Fraction(c) for a, c in (xi or {}).items()}
    grads = [[evaluate(partial(ctx, p, j), point) for j in range(ctx.n)] for p in generators]
    r = len(generators)
    m = [[sum((grads[i][a] * grads[j][b] * form[a][b]
               for a in range(ctx.n) for b in range(ctx.n)), Fraction(0))
          for j in range(r)] for i in range(r)]
    return FormMatrix(m, "closed-form")


@dataclass
class CliffordVerdict:
    ok: bool
    verdict: str  # "exterior" | "clifford"
    problems: list
    expected_total: int
    observed_total: int
    product_rank: int


def clifford_check(report, cochains, form, strict=False):
    """Check that the classes of the cochains generate Cl(P, B) inside the cohomology."""
    win = report.window
    ctx = win.ctx
    r = len(cochains)
    problems = []
    expected = 2 ** r
    observed = (sum(report.dims[n] for n in report.dims if report.stable.get(n))
                if report.stable else report.total)
    if observed != expected:
        problems.append(f"total dimension {observed}, expected {expected}")
    for C in cochains:
        if not win.is_cocycle(C):
            problems.append(f"cochain {C} is not a cocycle in the quotient")
    for i in range(r):
        for j in range(i, r):
            x = cochains[i] * cochains[j] + cochains[j] * cochains[i] - 2 * form.matrix[i][j]
            if not win.is_boundary(x):
                problems.append(f"relation C{i}C{j} + C{j}C{i} = 2B({i},{j}) fails")
    coords = []
    for k in range(r + 1):
        for I in combinations(range(r), k):
            prod = ctx.one()
            for i in I:
                prod = prod * cochains[i]
            c = report.class_coordinates(prod)
            if c is None:
                problems.append(f"product over {I} is not resolved in the window")
            else:
                coords.append({n: v for n, v in enumerate(c) if v})
    rk = rank(coords)
    if rk != expected:
        problems.append(f"products of classes span {rk}, expected {expected}")
    verdict = "exterior" if form.is_zero() else "clifford"
    out = CliffordVerdict(not problems, verdict, problems, expected, observed, rk)
    if strict and problems:
        raise VerdictFail(problems[0])
    return out


@dataclass
class UCTRow:
    degree: int
    quotient: int
    cokernel: int
    torsion: int

    @property
    def ok(self):
        return self.quotient == self.cokernel + self.torsion


@dataclass
class UCTReport:
    rows: list
    module: str

    @property
    def ok(self):
        return all(r.ok for r in self.rows)


def _mult_rank(base, p, src_level, dst_level):
    """Rank of multiplication by p from classes of level src_level to dst_level."""
    coords = []
    for rep, lv in zip(base.representatives, base.rep_levels):
        if lv == src_level:
            c = base.class_coordinates(p * rep)
            if c is None:
                raise DimensionMismatch(f"p * class of degree {lv} not resolved", )
            coords.append({n: v for n, v in enumerate(c)
                           if v and base.rep_levels[n] == dst_level})
    return rank(coords)


def uct_split_check(ctx, ops, p, bound, module="k", strict=False):
    """dim H^n(W/pW) = dim coker(p on H) + dim ker(p on H) per degree n <= bound - 2."""
    base = cohomology_window(quotient_window(ctx, ops, [], bound))
    f = p.level()
    if module == "R":
        rows = [UCTRow(n, base.dims.get(n, 0), base.dims.get(n, 0), 0)
                for n in range(bound - 1)]
        return UCTReport(rows, module)
    quo = cohomology_window(quotient_window(ctx, ops, [p], bound))
    rows = []
    for n in range(bound - 1):
        hn = base.dims.get(n, 0)
        cok = hn - (_mult_rank(base, p, n - f, n) if n - f >= 0 else 0)
        src = n + 1 - f
        hs = base.dims.get(src, 0) if src >= 0 else 0
        tor = hs - (_mult_rank(base, p, src, n + 1) if hs else 0)
        rows.append(UCTRow(n, quo.dims.get(n, 0), cok, tor))
    out = UCTReport(rows, module)
    if strict and not out.ok:
        bad = next(r for r in rows if not r.ok)
        raise DimensionMismatch(f"degree {bad.degree}: {bad.quotient} != "
                                f"{bad.cokernel} + {bad.torsion}")
    return out
