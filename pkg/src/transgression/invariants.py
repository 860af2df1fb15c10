"""Primitive invariant polynomials and their central lifts to U(g)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import Element, build_algebra
from .derivations import adjoint_action
from .errors import CenterSolveFailed, NonCentralGenerator, RankNotReached
from .lie import derived_subalgebra, format_rational, parse_rational
from .linalg import Echelon, kernel, matrix_inverse, scale, solve
from .projections import chevalley_project, harish_chandra_project, projection


def symmetric_algebra(L):
    if "S" not in L._cache:
        L._cache["S"] = build_algebra("symmetric", lie=L)
    return L._cache["S"]


def enveloping_algebra(L):
    if "U" not in L._cache:
        L._cache["U"] = build_algebra("enveloping", lie=L)
    return L._cache["U"]


def _normalize(vec):
    """Scale so the largest word has coefficient 1."""
    k = max(vec)
    return scale(vec, 1 / vec[k])


def invariant_polynomials(L, degree):
    """Basis of (S^degree g)^g as Elements of the symmetric algebra."""
    S = symmetric_algebra(L)
    words = S.component(degree)
    acts = [adjoint_action(S, {a: Fraction(1)}) for a in range(L.dim)]
    vecs = []
    for w in words:
        v = {}
        for a, A in enumerate(acts):
            for u, c in A.on_word(w).items():
                v[(a, u)] = c
        vecs.append(v)
    out = []
    for kv in kernel(vecs):
        out.append(Element(S, _normalize({words[i]: c for i, c in kv.items()})))
    return out


def is_invariant(p):
    S = p.ctx
    return all(not adjoint_action(S, {a: Fraction(1)})(p) for a in range(S.lie.dim))


def casimir(L):
    """sum u_i G^{-1}_{ij} u_j over a basis u of [g, g]; G is the Gram matrix of B."""
    S = symmetric_algebra(L)
    us = derived_subalgebra(L)
    if not us:
        return S.zero()
    G = [[L.pair(x, y) for y in us] for x in us]
    Gi = matrix_inverse(G)
    out = S.zero()
    for i, x in enumerate(us):
        for j, y in enumerate(us):
            if Gi[i][j]:
                out = out + Gi[i][j] * S.even_vec(x) * S.even_vec(y)
    return out


@dataclass
class GeneratorSet:
    """Algebraically independent homogeneous generators of (S g)^g."""

    lie: object
    classical: list
    degrees: list
    center_count: int
    quantized: list = field(default_factory=list)

    @property
    def exponents(self):
        return [d - 1 for d in self.degrees]

    def __len__(self):
        return len(self.classical)


def _decomposables(gens, degree):
    """All monomials in the chosen generators of total degree ``degree``."""
    if not gens:
        return []
    S = gens[0].ctx
    degs = [g.level() for g in gens]
    out = []
    ranges = [range(degree // d + 1) for d in degs]
    for ks in product(*ranges):
        if sum(k * d for k, d in zip(ks, degs)) != degree or sum(ks) < 2:
            continue
        m = S.one()
        for g, k in zip(gens, ks):
            for _ in range(k):
                m = m * g
        out.append(m)
    return out


def primitive_generators(L, max_degree=None):
    """Center coordinates first, then the Casimir of [g,g], then new invariants by degree."""
    S = symmetric_algebra(L)
    r = L.rank
    max_degree = max_degree or max(2, L.dim)
    gens, degs = [], []
    for z in L.center_indices:
        gens.append(S.even_gen(S.pos[z]))
        degs.append(1)
    lc = len(gens)
    for deg in range(2, max_degree + 1):
        if len(gens) >= r:
            break
        e = Echelon()
        for m in _decomposables(gens, deg):
            e.add(m.terms)
        cands = invariant_polynomials(L, deg)
        if deg == 2:
            cas = casimir(L)
            if cas:
                cands = [cas] + cands
        for p in cands:
            if len(gens) >= r:
                break
            res, _ = e.reduce(p.terms)
            if not res:
                continue
            g = p if (deg == 2 and p is cands[0] and cands[0] == casimir(L)) else \
                Element(S, _normalize(res))
            e.add(g.terms)
            gens.append(g)
            degs.append(deg)
    if len(gens) < r:
        raise RankNotReached(f"found {len(gens)} of {r} generators up to degree {max_degree}")
    return GeneratorSet(L, gens, degs, lc)


def hilbert_coefficients(degrees, top):
    """Coefficients of prod 1/(1 - t^d) up to t^top."""
    c = [1] + [0] * top
    for d in degrees:
        for n in range(d, top + 1):
            c[n] += c[n - d]
    return c


def hilbert_check(gs, top):
    """List of (degree, invariant dimension, series coefficient) that disagree."""
    series = hilbert_coefficients(gs.degrees, top)
    bad = []
    for n in range(top + 1):
        dim = 1 if n == 0 else len(invariant_polynomials(gs.lie, n))
        if dim != series[n]:
            bad.append((n, dim, series[n]))
    return bad


def center_generators(L, gs):
    """Central lifts p^ in U(g) with HC(p^) = Chevalley(p~), filtration <= 2 deg p.

    The solution is required to be unique in that window: a nonzero central
    element of the window with vanishing Harish-Chandra image is an error.
    """
    U = enveloping_algebra(L)
    S = gs.classical[0].ctx if gs.classical else symmetric_algebra(L)
    hc = projection("HarishChandra", U)
    ch = projection("Chevalley", S)
    acts = [adjoint_action(U, {a: Fraction(1)}) for a in range(L.dim)]
    out = []
    for p in gs.classical:
        deg = p.level()
        words = [w for w in U.basis_window(2 * deg) if sum(w[0]) <= deg]
        vecs = []
        for w in words:
            v = {}
            for a, A in enumerate(acts):
                for u, c in A.on_word(w).items():
                    v[(0, a, u)] = c
            for u, c in harish_chandra_project(U.word(w), hc.target, hc).terms.items():
                v[(1, u)] = c
            vecs.append(v)
        target = {(1, u): c for u, c in chevalley_project(p, ch.target).terms.items()}
        if kernel(vecs):
            raise CenterSolveFailed(f"central lift of degree {deg} is not unique")
        sol = solve(vecs, target)
        if sol is None:
            raise CenterSolveFailed(f"no central lift of degree {deg}")
        ph = Element(U, {words[i]: c for i, c in sol.items()})
        if any(A(ph) for A in acts):
            raise NonCentralGenerator(f"lift {ph} is not central")
        out.append(ph)
    gs.quantized = out
    return out


# -- documents ---------------------------------------------------------------

def element_to_doc(x):
    """Terms as {"even": {name: exp}, "odd": [names], "coeff": "p/q"}, Lie names."""
    ctx = x.ctx
    rows = []
    for (exps, idx), c in sorted(x.terms.items()):
        rows.append({
            "even": {ctx.names[j]: k for j, k in enumerate(exps) if k},
            "odd": [ctx.names[j] for j in idx],
            "coeff": format_rational(c),
        })
    return rows


def element_from_doc(ctx, rows):
    out = ctx.zero()
    for row in rows:
        t = ctx.scalar(parse_rational(row["coeff"]))
        for nm, k in row.get("even", {}).items():
            for _ in range(int(k)):
                t = t * ctx.gen(nm, "even")
        odd = ctx.one()
        for nm in row.get("odd", []):
            odd = odd * ctx.gen(nm, "odd")
        out = out + t * odd
    return out


def generators_to_doc(gs):
    return {
        "lie": gs.lie.name,
        "degrees": list(gs.degrees),
        "center_count": gs.center_count,
        "classical": [element_to_doc(p) for p in gs.classical],
        "quantized": [element_to_doc(p) for p in gs.quantized],
    }


def generators_from_doc(L, doc):
    """Rebuild a GeneratorSet and re-check invariance (and centrality of lifts)."""
    S, U = symmetric_algebra(L), enveloping_algebra(L)
    cl = [element_from_doc(S, rows) for rows in doc["classical"]]
    for p in cl:
        if not is_invariant(p):
            raise NonCentralGenerator(f"{p} is not invariant")
    q = [element_from_doc(U, rows) for rows in doc.get("quantized", [])]
    acts = [adjoint_action(U, {a: Fraction(1)}) for a in range(L.dim)]
    for p in q:
        if any(A(p) for A in acts):
            raise NonCentralGenerator(f"{p} is not central")
    degs = [p.level() for p in cl]
    return GeneratorSet(L, cl, degs, int(doc.get("center_count", 0)), q)
