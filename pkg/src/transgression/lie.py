"""Lie algebra descriptions: loading, validation and derived data.

A Lie algebra is given by structure constants on a fixed basis, an invariant
nondegenerate symmetric form and a user-supplied triangular decomposition
``nneg + cartan + npos``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path

from .errors import NotDiagonal, ParseError, SingularForm, ValidationError
from .linalg import axpy, determinant, matrix_inverse

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(s):
    if isinstance(s, bool):
        raise ParseError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.match(s.strip()):
        raise ParseError(f"not an exact rational string: {s!r}")
    try:
        return Fraction(s.strip())
    except ZeroDivisionError:
        raise ParseError(f"zero denominator: {s!r}") from None


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class CartanFunctional:
    values: dict

    def __call__(self, i):
        return self.values[i]


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    name: str
    basis_names: tuple
    brackets: dict  # (a, b) -> {c: Fraction}, only nonzero, both orders present
    form: tuple  # dim x dim tuple of tuples of Fraction
    cartan_indices: tuple
    npos_indices: tuple
    nneg_indices: tuple
    center_indices: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self):
        return len(self.basis_names)

    @property
    def rank(self):
        return len(self.cartan_indices)

    @property
    def pbw_order(self):
        """Basis indices in PBW order: nneg block, Cartan block, npos block."""
        return tuple(self.nneg_indices) + tuple(self.cartan_indices) + tuple(self.npos_indices)

    def bracket(self, a, b):
        return self.brackets.get((a, b), {})

    def bracket_vec(self, x, y):
        """Bracket of two vectors given as dicts ``index -> coeff``."""
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                axpy(out, ca * cb, self.bracket(a, b))
        return out

    def pair(self, x, y):
        return sum((ca * cb * self.form[a][b] for a, ca in x.items() for b, cb in y.items()),
                   Fraction(0))

    def index(self, name):
        return self.basis_names.index(name)

    def vec(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return {i: Fraction(1)}


def _to_index(x, names, what):
    if isinstance(x, int) and not isinstance(x, bool):
        if 0 <= x < len(names):
            return x
    elif isinstance(x, str) and x in names:
        return names.index(x)
    raise ParseError(f"bad basis reference in {what}: {x!r}")


def _from_mapping(doc):
    if not isinstance(doc, dict):
        raise ParseError("document must be an object")
    for key in ("basis", "brackets", "form"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    names = doc["basis"]
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise ParseError("basis must be a nonempty array of strings")
    if len(set(names)) != len(names):
        raise ParseError("duplicate basis names")
    n = len(names)
    brackets = {}
    if not isinstance(doc["brackets"], list):
        raise ParseError("brackets must be an array")
    for rec in doc["brackets"]:
        if not isinstance(rec, dict) or not {"a", "b", "out"} <= set(rec):
            raise ParseError(f"bad bracket record: {rec!r}")
        a = _to_index(rec["a"], names, "bracket")
        b = _to_index(rec["b"], names, "bracket")
        out = {}
        if not isinstance(rec["out"], list):
            raise ParseError("bracket out must be an array")
        for term in rec["out"]:
            if not isinstance(term, dict) or not {"c", "coeff"} <= set(term):
                raise ParseError(f"bad bracket term: {term!r}")
            c = _to_index(term["c"], names, "bracket")
            axpy(out, parse_rational(term["coeff"]), {c: Fraction(1)})
        if (a, b) in brackets:
            raise ParseError(f"bracket ({names[a]},{names[b]}) given twice")
        brackets[(a, b)] = out
    form = doc["form"]
    if not isinstance(form, list) or len(form) != n or any(
            not isinstance(r, list) or len(r) != n for r in form):
        raise ParseError("form must be a dim x dim matrix")
    form = tuple(tuple(parse_rational(x) for x in row) for row in form)

    def idx_list(key, default=()):
        v = doc.get(key, list(default))
        if not isinstance(v, list):
            raise ParseError(f"{key} must be an array")
        return tuple(_to_index(x, names, key) for x in v)

    cartan = idx_list("cartan", range(n) if "cartan" not in doc and not doc.get("npos") else ())
    npos = idx_list("npos")
    nneg = idx_list("nneg")
    center = idx_list("center")
    return dict(name=str(doc.get("name", "")), names=names, brackets=brackets, form=form,
                cartan=cartan, npos=npos, nneg=nneg, center=center)


def _complete_brackets(raw, names):
    full = {}
    for (a, b), out in raw.items():
        if a == b and out:
            raise ValidationError("antisymmetry", (names[a], names[a]), "[x,x] must vanish")
        if (b, a) in raw and a != b:
            other = raw[(b, a)]
            neg = {k: -v for k, v in other.items()}
            if neg != out:
                raise ValidationError("antisymmetry", (names[a], names[b]))
        if out:
            full[(a, b)] = dict(out)
            full[(b, a)] = {k: -v for k, v in out.items()}
    return full


def validate(L):
    """Check every invariant of a Lie algebra description; raise ValidationError on failure."""
    names = L.basis_names
    n = L.dim
    for a, b in product(range(n), repeat=2):
        if L.bracket(a, b) != {k: -v for k, v in L.bracket(b, a).items()}:
            raise ValidationError("antisymmetry", (names[a], names[b]))
    # Jacobi: [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0
    for a, b, c in product(range(n), repeat=3):
        ea, eb, ec = {a: 1}, {b: 1}, {c: 1}
        s = {}
        axpy(s, 1, L.bracket_vec(ea, L.bracket_vec(eb, ec)))
        axpy(s, 1, L.bracket_vec(eb, L.bracket_vec(ec, ea)))
        axpy(s, 1, L.bracket_vec(ec, L.bracket_vec(ea, eb)))
        if s:
            raise ValidationError("Jacobi identity", (names[a], names[b], names[c]))
    for a, b in product(range(n), repeat=2):
        if L.form[a][b] != L.form[b][a]:
            raise ValidationError("form symmetry", (names[a], names[b]))
    if determinant(L.form) == 0:
        raise ValidationError("form nondegeneracy", (), "determinant is zero")
    # invariance: B([x,y],z) + B(y,[x,z]) = 0
    for a, b, c in product(range(n), repeat=3):
        ea, eb, ec = {a: 1}, {b: 1}, {c: 1}
        r = L.pair(L.bracket_vec(ea, eb), ec) + L.pair(eb, L.bracket_vec(ea, ec))
        if r:
            raise ValidationError("form invariance", (names[a], names[b], names[c]))
    blocks = (L.cartan_indices, L.npos_indices, L.nneg_indices)
    allidx = [i for blk in blocks for i in blk]
    if sorted(allidx) != list(range(n)):
        raise ValidationError("triangular decomposition", tuple(allidx),
                              "cartan/npos/nneg must partition the basis")
    if not set(L.center_indices) <= set(L.cartan_indices):
        raise ValidationError("center within Cartan", tuple(L.center_indices))
    for h1, h2 in product(L.cartan_indices, repeat=2):
        if L.bracket(h1, h2):
            raise ValidationError("abelian Cartan", (names[h1], names[h2]))
    for z in L.center_indices:
        for a in range(n):
            if L.bracket(z, a):
                raise ValidationError("central element", (names[z], names[a]))
    for blk, label in ((L.npos_indices, "npos"), (L.nneg_indices, "nneg")):
        for h in L.cartan_indices:
            for a in blk:
                if not set(L.bracket(h, a)) <= set(blk):
                    raise ValidationError(f"Cartan preserves {label}", (names[h], names[a]))
    return L


def lie_from_data(name, names, brackets, form, cartan, npos=(), nneg=(), center=()):
    """Build and validate a LieAlgebraData from python data; brackets ``(a,b) -> {c: coeff}``."""
    names = tuple(names)
    raw = {(a, b): {c: Fraction(v) for c, v in out.items() if v} for (a, b), out in brackets.items()}
    full = _complete_brackets(raw, names)
    form = tuple(tuple(Fraction(x) for x in row) for row in form)
    L = LieAlgebraData(name, names, full, form, tuple(cartan), tuple(npos), tuple(nneg),
                       tuple(center))
    return validate(L)


def load_lie_algebra(document):
    """Parse and validate a Lie algebra spec document (JSON text, mapping, or path)."""
    if isinstance(document, Path):
        document = document.read_text()
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
    d = _from_mapping(document)
    full = _complete_brackets(d["brackets"], tuple(d["names"]))
    L = LieAlgebraData(d["name"], tuple(d["names"]), full, d["form"], d["cartan"], d["npos"],
                       d["nneg"], d["center"])
    return validate(L)


def dump_lie_algebra(L):
    done = set()
    recs = []
    for (a, b), out in sorted(L.brackets.items()):
        if (b, a) in done:
            continue
        done.add((a, b))
        recs.append({"a": L.basis_names[a], "b": L.basis_names[b],
                     "out": [{"c": L.basis_names[c], "coeff": format_rational(v)}
                             for c, v in sorted(out.items())]})
    return {
        "name": L.name,
        "basis": list(L.basis_names),
        "brackets": recs,
        "form": [[format_rational(x) for x in row] for row in L.form],
        "cartan": list(L.cartan_indices),
        "npos": list(L.npos_indices),
        "nneg": list(L.nneg_indices),
        "center": list(L.center_indices),
    }


def dual_basis(L):
    """Vectors ``e^a`` (dicts index -> coeff) with ``B(e^a, e_b) = delta``."""
    if "dual" not in L._cache:
        try:
            inv = matrix_inverse(L.form)
        except ZeroDivisionError:
            raise SingularForm("form is singular") from None
        # e^a = sum_b inv[a][b] e_b  since  B(e^a, e_c) = sum_b inv[a][b] B[b][c] = delta
        L._cache["dual"] = [{b: inv[a][b] for b in range(L.dim) if inv[a][b]}
                            for a in range(L.dim)]
    return L._cache["dual"]


def rho(L):
    """Half the trace of ad(h) on the positive root span, for each Cartan basis element."""
    if "rho" in L._cache:
        return L._cache["rho"]
    npos = set(L.npos_indices)
    vals = {}
    for h in L.cartan_indices:
        tr = Fraction(0)
        for a in L.npos_indices:
            out = L.bracket(h, a)
            if set(out) - {a}:
                raise NotDiagonal(f"ad({L.basis_names[h]}) does not act diagonally on "
                                  f"{L.basis_names[a]}")
            assert set(out) <= npos
            tr += out.get(a, 0)
        vals[h] = tr / 2
    L._cache["rho"] = CartanFunctional(vals)
    return L._cache["rho"]


def derived_subalgebra(L):
    """Rational basis (list of vectors) of [g, g]."""
    from .linalg import Echelon

    e = Echelon()
    for (a, b), out in sorted(L.brackets.items()):
        e.add(out)
    return [row for _, (row, _) in sorted(e.rows.items())]


def matrix_lie_algebra(n, traceless=True):
    """sl_n (or gl_n) in the matrix-unit basis with trace form.

    Basis order: positive root vectors E_ij (i<j), Cartan elements, negative root
    vectors E_ji.  For gl_n the Cartan block starts with the identity ``z``.
    """
    pos = [(i, j) for d in range(1, n) for i in range(n - d) for j in [i + d]]
    names, mats = [], []

    def unit(i, j):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[i][j] = Fraction(1)
        return m

    for i, j in pos:
        names.append(f"e{i + 1}{j + 1}")
        mats.append(unit(i, j))
    cartan_start = len(names)
    if not traceless:
        names.append("z")
        mats.append([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    for i in range(n - 1):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[i][i], m[i + 1][i + 1] = Fraction(1), Fraction(-1)
        names.append(f"h{i + 1}")
        mats.append(m)
    cartan_end = len(names)
    for i, j in pos:
        names.append(f"f{j + 1}{i + 1}")
        mats.append(unit(j, i))
    dim = len(names)

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    def tr(a):
        return sum(a[i][i] for i in range(n))

    gram = [[tr(mul(mats[a], mats[b])) for b in range(dim)] for a in range(dim)]
    ginv = matrix_inverse(gram)

    def coords(m):
        # coordinates through the trace pairing: c_a = sum_b ginv[a][b] tr(m x_b)
        t = [tr(mul(m, mats[b])) for b in range(dim)]
        return {a: sum(ginv[a][b] * t[b] for b in range(dim)) for a in range(dim)}

    brackets = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            ab, ba = mul(mats[a], mats[b]), mul(mats[b], mats[a])
            comm = [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]
            out = {c: v for c, v in coords(comm).items() if v}
            if out:
                brackets[(a, b)] = out
    npos = list(range(len(pos)))
    nneg = list(range(cartan_end, dim))
    cartan = list(range(cartan_start, cartan_end))
    center = [cartan_start] if not traceless else []
    label = f"{'sl' if traceless else 'gl'}{n}"
    return lie_from_data(label, names, brackets, gram, cartan, npos, nneg, center)


def bundled(name):
    """One of the Lie algebra spec files shipped with the package (sl2, gl2, sl3, abelian1)."""
    path = Path(__file__).resolve().parent / "data" / f"{name}.json"
    if not path.exists():
        raise ParseError(f"no bundled spec named {name!r}")
    return load_lie_algebra(path)
