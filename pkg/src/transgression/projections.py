"""Chevalley and Harish-Chandra projections onto Cartan data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraMap, Element, build_algebra
from .errors import FlavorMismatch
from .lie import rho as rho_of
from .linalg import axpy

_TARGET = {
    "symmetric": "symmetric",
    "exterior": "exterior",
    "clifford": "clifford",
    "weil": "koszul",
    "enveloping": "symmetric",
    "quantized-weil": "deformed-koszul",
}


def cartan_context(L, flavor, pairing="form"):
    """Algebra of the same kind on the Cartan subalgebra with the restricted form.

    With ``pairing="form"`` Koszul targets contract with ``2 B_h`` so that the
    projection intertwines the contractions of the Weil algebra; with
    ``"coordinate"`` the contraction pairs coordinates (xi is a coordinate vector).
    """
    hs = list(L.cartan_indices)
    names = [L.basis_names[h] for h in hs]
    form = [[L.form[a][b] for b in hs] for a in hs]
    pm = [[2 * x for x in row] for row in form] if pairing == "form" else None
    ctx = build_algebra(flavor, dim=len(hs), names=names, form=form,
                        pairing=pm if flavor in ("koszul", "deformed-koszul") else None,
                        name=f"{flavor}(h of {L.name})")
    ctx.cartan_lie = L
    ctx.cartan_indices = tuple(hs)
    return ctx


@dataclass
class ProjectionMap:
    kind: str  # "Chevalley" | "HarishChandra"
    source: object
    target: object
    rho: dict | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, x):
        if x.ctx is not self.source:
            raise FlavorMismatch("element does not belong to the projection source")
        return (chevalley_project(x, self.target) if self.kind == "Chevalley"
                else harish_chandra_project(x, self.target, self))


def projection(kind, source):
    L = source.lie
    if kind == "Chevalley":
        if source.flavor not in ("symmetric", "exterior", "weil"):
            raise FlavorMismatch(f"Chevalley projection is defined on S, ^ and W, not {source.flavor}")
    elif source.flavor not in ("enveloping", "quantized-weil"):
        raise FlavorMismatch("Harish-Chandra projection needs U or the quantized Weil algebra")
    tgt = cartan_context(L, _TARGET[source.flavor])
    pm = ProjectionMap(kind, source, tgt, dict(rho_of(L).values) if kind != "Chevalley" else None)
    tgt.projection_source = source
    return pm


def _restrict(x, target):
    """Keep words built from Cartan generators only, re-indexed on the target."""
    src = x.ctx
    cpos = [src.pos[h] for h in target.cartan_indices]
    cset = set(cpos)
    out = {}
    for (exps, idx), c in x.terms.items():
        if exps and any(k for j, k in enumerate(exps) if j not in cset):
            continue
        if any(j not in cset for j in idx):
            continue
        ne = tuple(exps[j] for j in cpos) if target.even_kind else ()
        no = tuple(cpos.index(j) for j in idx) if target.odd_kind else ()
        if no and list(no) != sorted(no):
            raise AssertionError("Cartan block must be contiguous and ordered")
        axpy(out, c, {(ne, no): Fraction(1)})
    return Element(target, out)


def chevalley_project(x, target):
    """Kill every word containing a root vector (n+ or n-) factor."""
    return _restrict(x, target)


def kappa(x, target):
    """Keep pure-Cartan PBW words (valid because PBW order is n-, h, n+)."""
    return _restrict(x, target)


def rho_shift(y, rho_vals):
    """Substitute h -> h - rho(h) in the even (symmetric) factor."""
    tgt = y.ctx
    imgs = {j: tgt.even_gen(j) - rho_vals[h] for j, h in enumerate(tgt.cartan_indices)}
    odd = {j: tgt.odd_gen(j) for j in range(tgt.n)} if tgt.odd_kind else {}
    return AlgebraMap(tgt, tgt, imgs, odd)(y)


def harish_chandra_project(x, target, pm=None):
    """gamma o kappa; the Clifford factor is projected without any shift."""
    rv = pm.rho if pm is not None else dict(rho_of(x.ctx.lie).values)
    return rho_shift(kappa(x, target), rv)


def lift_cartan(y, source):
    """Embed an element over the Cartan subalgebra back into a Lie-based context."""
    tgt = y.ctx
    cpos = [source.pos[h] for h in tgt.cartan_indices]
    out = {}
    for (exps, idx), c in y.terms.items():
        ne = [0] * source.n if source.even_kind else []
        for j, k in enumerate(exps):
            ne[cpos[j]] = k
        no = tuple(cpos[j] for j in idx)
        axpy(out, c, {(tuple(ne), no): Fraction(1)})
    return Element(source, out)


def verify_induced_iso(src_report, tgt_report, pm, forms=None):
    """Check that ``pm`` induces an isomorphism between two quotient cohomologies.

    Checks equal total (and per-parity) dimension, that the images of the source
    representatives are cocycles whose classes form a basis of the target
    cohomology, and optionally that two form matrices agree.
    """
    from .cohomology import IsoReport

    problems = []
    sd, td = src_report.parity_dims(), tgt_report.parity_dims()
    if sd != td:
        problems.append(f"parity dimensions differ: {sd} vs {td}")
    if src_report.graded and tgt_report.graded:
        for lv in sorted(set(src_report.dims) | set(tgt_report.dims)):
            if src_report.dims.get(lv, 0) != tgt_report.dims.get(lv, 0):
                problems.append(f"dimension mismatch at degree {lv}")
                break
    imgs = [pm(r) for r in src_report.representatives]
    for im in imgs:
        if not tgt_report.window.is_cocycle(im):
            problems.append(f"image {im} is not a cocycle")
            break
    coords = [tgt_report.window.class_coordinates(im, tgt_report) for im in imgs]
    if any(c is None for c in coords):
        problems.append("an image is not in the span of the target classes")
    else:
        from .linalg import rank

        rk = rank([{i: v for i, v in enumerate(c) if v} for c in coords])
        if rk != len(tgt_report.representatives):
            problems.append(f"images span a {rk}-dimensional subspace of "
                            f"{len(tgt_report.representatives)}")
    if forms is not None:
        a, b = forms
        if a.matrix != b.matrix:
            problems.append(f"form matrices differ: {a.matrix} vs {b.matrix}")
    return IsoReport(not problems, problems, coords)


def chain_map_residual(pm, src_d, tgt_d, bound, space=None):
    """First (element, residual) with pm(d x) != d(pm x) on the window, or None."""
    xs = space if space is not None else [pm.source.word(w) for w in pm.source.basis_window(bound)]
    for x in xs:
        if x.level() > bound:
            continue
        r = pm(src_d(x)) - tgt_d(pm(x))
        if r:
            return x, r
    return None


def homomorphism_residual(pm, pairs):
    """First pair (x, y) with pm(xy) != pm(x) pm(y), or None."""
    for x, y in pairs:
        if pm(x * y) != pm(x) * pm(y):
            return x, y
    return None
