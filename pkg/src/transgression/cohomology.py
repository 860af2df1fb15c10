"""Window cohomology of W / <S+P> for graded and filtered flavors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Element
from .derivations import invariant_window
from .errors import NonCentralGenerator
from .homotopy import _is_central, scalar_class
from .linalg import Echelon, kernel


@dataclass
class IsoReport:
    ok: bool
    problems: list
    coordinates: list = field(default_factory=list)


def _keyed(ctx, terms):
    return {(ctx.level(w), w): c for w, c in terms.items()}


def _unkeyed(ctx, vec):
    return Element(ctx, {w: c for (_, w), c in vec.items()})


class QuotientComplexWindow:
    """F_N / I_N with I_N = sum_i p_i * F_{N - deg p_i}.

    Everything is stored in word coordinates keyed by ``(level, word)`` so that
    echelon pivots respect the filtration: rows with pivot level <= n span the
    intersection of a subspace with F_n.
    """

    def __init__(self, ctx, ops, generators, bound, restrict_invariant=False, xi=None):
        self.ctx, self.ops, self.bound = ctx, ops, bound
        self.generators = list(generators)
        self.restrict_invariant = restrict_invariant
        # a deformed differential is inhomogeneous, so only filtered statements hold
        self.graded = ctx.graded and ops.dprime is None
        for p in self.generators:
            if p.parity() != 0 or not _is_central(ctx, p):
                raise NonCentralGenerator(f"{p} is not an even central element")
        d = ops.differential
        if restrict_invariant:
            self.basis = invariant_window(ctx, bound, xi=xi, ops=ops)
        else:
            self.basis = [ctx.word(w) for w in ctx.basis_window(bound)]
        self.levels = [b.level() for b in self.basis]
        self.rule = "I_n = sum_i p_i * F_(n - deg p_i)"
        ideal = []
        for p in self.generators:
            f = p.level()
            for b, lv in zip(self.basis, self.levels):
                if lv + f <= bound:
                    ideal.append(_keyed(ctx, (p * b).terms))
        self.ideal = Echelon()
        for v in ideal:
            self.ideal.add(v)
        low = [i for i, lv in enumerate(self.levels) if lv <= bound - 1]
        self._low = low
        self._dimg = {i: _keyed(ctx, d(self.basis[i]).terms) for i in low}
        self.boundaries = self.ideal.copy()
        for i in low:
            self.boundaries.add(self._dimg[i])

    def keyed(self, x):
        return _keyed(self.ctx, x.terms)

    def induced_d(self, x):
        """d(x) reduced modulo the truncated ideal (zero iff x is a cocycle)."""
        r, _ = self.ideal.reduce(self.keyed(self.ops.differential(x)))
        return _unkeyed(self.ctx, r)

    def is_cocycle(self, x):
        return not self.induced_d(x)

    def is_boundary(self, x):
        return self.boundaries.contains(self.keyed(x))

    def ideal_closed(self):
        """First generator multiple p*b (level <= N-1) whose d leaves the ideal, or None."""
        for p in self.generators:
            f = p.level()
            for b, lv in zip(self.basis, self.levels):
                if lv + f <= self.bound - 1:
                    x = p * b
                    if not self.is_cocycle(x) and not self.ideal.contains(
                            self.keyed(self.ops.differential(x))):
                        return x
        return None

    def cocycles(self):
        low = self._low
        ker = kernel([self._dimg[i] for i in low], modulo=[r for r, _ in
                                                            self.ideal.rows.values()])
        out = []
        for t in ker:
            x = self.ctx.zero()
            for j, c in t.items():
                x = x + c * self.basis[low[j]]
            if x:
                out.append(x)
        return out

    def class_coordinates(self, x, report):
        """Coordinates of [x] in the basis of report representatives, or None."""
        r, t = report._classes.reduce(self.keyed(x))
        if r:
            return None
        n = len(report.representatives)
        return [-t.get(i, Fraction(0)) for i in range(n)]


def quotient_window(ctx, ops, generators, bound, restrict_invariant=False, xi=None):
    return QuotientComplexWindow(ctx, ops, generators, bound, restrict_invariant, xi)


@dataclass
class CohomologyReport:
    window: QuotientComplexWindow
    dims: dict
    representatives: list
    rep_levels: list
    stable: dict = field(default_factory=dict)
    dims_by_bound: dict = field(default_factory=dict)
    _classes: Echelon = field(default=None, repr=False)

    @property
    def graded(self):
        return self.window.graded

    @property
    def total(self):
        return sum(self.dims.values())

    def parity_dims(self):
        ev = sum(1 for r in self.representatives if r.parity() == 0)
        return (ev, len(self.representatives) - ev)

    def dims_list(self):
        top = max(self.dims) if self.dims else -1
        return [self.dims.get(n, 0) for n in range(top + 1)]

    def all_stable(self):
        return bool(self.stable) and all(self.stable.values())

    def class_coordinates(self, x):
        return self.window.class_coordinates(x, self)


def cohomology_window(qcw):
    """Dimensions per level (increments of the filtration) and representatives."""
    ctx = qcw.ctx
    ez = Echelon()
    for z in qcw.cocycles():
        ez.add(qcw.keyed(z))
    classes = qcw.boundaries.copy()
    reps, rlev = [], []
    dims = {n: 0 for n in range(qcw.bound)}
    for piv in sorted(ez.rows):
        row, _ = ez.rows[piv]
        r, t = classes.reduce(row, {len(reps): Fraction(1)})
        if not r:
            continue
        classes._store(r, t)
        rep = _unkeyed(ctx, row)
        reps.append(rep)
        rlev.append(piv[0])
        dims[piv[0]] = dims.get(piv[0], 0) + 1
    return CohomologyReport(qcw, dims, reps, rlev, _classes=classes)


def stability_scan(ctx, ops, generators, bounds, restrict_invariant=False, xi=None):
    """Run at several bounds; flag levels whose dims agree across the top two runs.

    Only levels <= (largest bound - max generator degree - 1) can be flagged stable.
    """
    bounds = sorted(bounds)
    if len(bounds) < 2:
        raise ValueError("stability_scan needs at least two bounds")
    reports = {}
    for N in bounds[-2:]:
        reports[N] = cohomology_window(
            quotient_window(ctx, ops, generators, N, restrict_invariant, xi))
    lo, hi = reports[bounds[-2]], reports[bounds[-1]]
    maxdeg = max((p.level() for p in generators), default=0)
    limit = bounds[-1] - maxdeg - 1
    hi.dims_by_bound = {N: rep.dims_list() for N, rep in reports.items()}
    for n in sorted(hi.dims):
        if hi.graded:
            # exact per degree below the bound
            hi.stable[n] = True
        else:
            hi.stable[n] = (n <= limit and n < bounds[-2]
                            and lo.dims.get(n, 0) == hi.dims.get(n, 0))
    return hi


def stable_total(report):
    return sum(report.dims[n] for n in report.dims if report.stable.get(n))


def stable_parity_dims(report):
    ev = od = 0
    for r, lv in zip(report.representatives, report.rep_levels):
        if report.stable.get(lv):
            if r.parity() == 0:
                ev += 1
            else:
                od += 1
    return (ev, od)


def normalize_generators(ctx, ops, elements, window, homotopy=None, space=None):
    """Shift each element by the scalar c with p - c exact (its augmentation)."""
    out = []
    for p in elements:
        c, _ = scalar_class(ctx, ops, p, window, space=space, homotopy=homotopy)
        out.append(p - c)
    return out
