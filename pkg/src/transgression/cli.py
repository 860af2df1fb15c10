"""Batch runner: build an algebra, transgress its generators and check the cohomology."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import Element, build_algebra
from .cohomology import (cohomology_window, normalize_generators, quotient_window,
                         stability_scan, stable_parity_dims, stable_total)
from .derivations import certify, invariant_window, standard_operators
from .errors import TransgressionError
from .homotopy import koszul_contraction
from .invariants import (center_generators, generators_from_doc, generators_to_doc,
                         primitive_generators)
from .lie import format_rational, load_lie_algebra, parse_rational
from .projections import (cartan_context, chain_map_residual, chevalley_project,
                          harish_chandra_project, projection, verify_induced_iso)
from .verifier import (clifford_check, contraction_point, deformed_form_closed,
                       transgression_form, uct_split_check)

VARIANTS = ("koszul", "deformed-koszul", "weil", "quantized-weil")
CHECKS = ("acyclicity", "cartan", "cohomology", "clifford", "form", "uct", "projections")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    spec: str
    variant: str = "weil"
    xi: list | None = None
    generators: str = "auto"
    bounds: list | None = None
    checks: list = field(default_factory=lambda: ["cohomology"])
    format: str = "table"
    out: str | None = None
    cert_bound: int = 6

    def validate(self):
        if self.variant not in VARIANTS:
            raise InputError(f"unknown variant {self.variant!r}")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise InputError(f"unknown checks {bad}")
        if self.xi is not None and self.variant == "koszul":
            raise InputError("xi needs a deformed or invariant-restricted variant")
        if self.bounds is not None:
            if any(b < 1 for b in self.bounds) or list(self.bounds) != sorted(set(self.bounds)):
                raise InputError("bounds must be positive and strictly increasing")
        if self.format not in ("table", "machine"):
            raise InputError(f"unknown format {self.format!r}")


def _hash(x):
    s = "0" if not x else repr(sorted((w, str(c)) for w, c in x.terms.items()))
    return hashlib.sha256(s.encode()).hexdigest()


def _matrix(m):
    return [[format_rational(x) for x in row] for row in m]


def _embed(ctx, p):
    """Re-home a purely even element (same generator positions) in ctx."""
    return Element(ctx, {(e, ()): c for (e, _), c in p.terms.items()})


class Pipeline:
    def __init__(self, cfg, L, gs):
        self.cfg, self.L, self.gs = cfg, L, gs
        v = cfg.variant
        xi_lie = None
        if cfg.xi is not None:
            if len(cfg.xi) != L.rank:
                raise InputError(f"xi needs {L.rank} Cartan coordinates")
            xi_lie = {h: c for h, c in zip(L.cartan_indices, cfg.xi) if c}
        self.xi_lie = xi_lie
        if v in ("koszul", "deformed-koszul"):
            ctx = cartan_context(L, v, pairing="coordinate")
            tgt = cartan_context(L, "symmetric")
            self.raw = [_embed(ctx, chevalley_project(p, tgt)) for p in gs.classical]
            xi = ({L.cartan_indices.index(h): c for h, c in xi_lie.items()}
                  if xi_lie else None)
            self.restrict = False
            self.closed_ctx, self.closed_gens = ctx, self.raw
        else:
            ctx = build_algebra(v, lie=L)
            xi = xi_lie
            src = gs.quantized if v == "quantized-weil" else gs.classical
            self.raw = [_embed(ctx, p) for p in src]
            self.restrict = v == "quantized-weil" or xi is not None
            self.closed_ctx, self.closed_gens = (gs.classical[0].ctx if gs.classical
                                                 else None), gs.classical
        self.ctx, self.xi = ctx, xi
        self.ops = standard_operators(ctx, xi=xi)
        self.homotopy = (koszul_contraction(ctx, self.ops)
                         if v in ("koszul", "deformed-koszul", "weil") else None)
        degs = [p.level() for p in self.raw] or [0]
        need = sum(f - 1 for f in degs) + max(degs) + 1
        if cfg.bounds:
            self.bounds = list(cfg.bounds)
        elif ctx.graded and xi is None:
            self.bounds = [max(8, need)]
        else:
            top = max(8, need)
            self.bounds = [top - 2, top]
        top = self.bounds[-1]
        self.space = (invariant_window(ctx, top + 1, xi=xi if ctx.lie is None else None,
                                       ops=self.ops) if self.restrict else None)
        self.gens = normalize_generators(ctx, self.ops, self.raw, top,
                                         homotopy=self.homotopy, space=self.space)
        self._report = None
        self._form = None

    def report(self):
        if self._report is None:
            b = self.bounds
            if len(b) == 1:
                r = cohomology_window(quotient_window(self.ctx, self.ops, self.gens, b[0],
                                                      self.restrict))
                graded = r.graded
                r.stable = {n: graded for n in r.dims}
                r.dims_by_bound = {b[0]: r.dims_list()}
            else:
                r = stability_scan(self.ctx, self.ops, self.gens, b, self.restrict)
            self._report = r
        return self._report

    def form(self):
        if self._form is None:
            self._form = transgression_form(self.ctx, self.ops, self.gens, self.bounds[-1],
                                            homotopy=self.homotopy, space=self.space)
        return self._form

    # -- checks ---------------------------------------------------------------
    def check_acyclicity(self):
        if self.homotopy is not None:
            bad = self.homotopy.certificate(min(self.bounds[-1], self.cfg.cert_bound))
            return bad is None, {"method": "homotopy",
                                 "witness": None if bad is None else bad[0],
                                 "residual_sha256": _hash(None if bad is None else bad[1])}
        b = self.bounds if len(self.bounds) > 1 else [self.bounds[0] - 2, self.bounds[0]]
        r = stability_scan(self.ctx, self.ops, [], b, self.restrict)
        ok = stable_total(r) == 1 and r.dims.get(0) == 1
        return ok, {"method": "window", "dims": r.dims_list()}

    def check_cartan(self):
        certs = certify(self.ops, self.cfg.cert_bound)
        return all(c.ok for c in certs), {"certificates": [
            {"relation": c.relation, "bound": c.bound, "checked": c.checked,
             "ok": c.ok, "witness": None if c.witness is None else str(c.witness),
             "residual_sha256": _hash(c.residual)} for c in certs]}

    def check_cohomology(self):
        r = self.report()
        total = stable_total(r)
        ok = r.dims.get(0) == 1 and total == 2 ** len(self.gens)
        return ok, {"dims": r.dims_list(),
                    "stable": [bool(r.stable.get(n)) for n in range(len(r.dims_list()))],
                    "dims_by_bound": {str(k): v for k, v in sorted(r.dims_by_bound.items())},
                    "stable_total": total, "parity_dims": list(stable_parity_dims(r)),
                    "representatives": [str(x) for x in r.representatives]}

    def _closed(self):
        if self.closed_ctx is None:
            return None
        if self.cfg.variant in ("koszul", "deformed-koszul"):
            return deformed_form_closed(self.closed_ctx, self.closed_gens, self.xi or {})
        if self.xi is None:
            return deformed_form_closed(self.closed_ctx, self.closed_gens, {})
        return deformed_form_closed(self.closed_ctx, self.closed_gens,
                                    point=contraction_point(self.ops, self.xi))

    def check_form(self):
        F = self.form()
        info = {"matrix": _matrix(F.matrix), "provenance": F.provenance,
                "generator_constants": [format_rational(p.constant()) for p in self.gens],
                "cochains": [str(c) for c in F.cochains]}
        ok = F.is_symmetric()
        if self.ctx.odd_kind == "ext":
            ok = ok and F.is_zero()
            info["expected"] = "zero (supercommutative)"
        else:
            C = self._closed()
            if C is not None:
                info["closed_form"] = _matrix(C.matrix)
                ok = ok and C.matrix == F.matrix
        return ok, info

    def check_clifford(self):
        F = self.form()
        v = clifford_check(self.report(), F.cochains, F)
        return v.ok, {"verdict": v.verdict, "problems": v.problems,
                      "expected_total": v.expected_total, "observed_total": v.observed_total,
                      "product_rank": v.product_rank}

    def check_uct(self):
        if not (self.ctx.graded and self.xi is None) or not self.gens:
            return True, {"skipped": "needs a graded, undeformed run with a generator"}
        u = uct_split_check(self.ctx, self.ops, self.gens[0], self.bounds[-1])
        return u.ok, {"rows": [[r.degree, r.quotient, r.cokernel, r.torsion] for r in u.rows]}

    def check_projections(self):
        L, gs = self.L, self.gs
        info = {}
        ok = True
        if gs.quantized:
            U = gs.quantized[0].ctx
            hc = projection("HarishChandra", U)
            tgt = cartan_context(L, "symmetric")
            same = [harish_chandra_project(q, hc.target, hc).terms
                    == chevalley_project(p, tgt).terms
                    for p, q in zip(gs.classical, gs.quantized)]
            info["hc_equals_chevalley"] = same
            ok = ok and all(same)
        v = self.cfg.variant
        if v in ("weil", "quantized-weil"):
            pm = projection("Chevalley" if v == "weil" else "HarishChandra", self.ctx)
            if self.xi is not None:
                pm.target = cartan_context(L, pm.target.flavor, pairing="form")
            txi = ({L.cartan_indices.index(h): c for h, c in self.xi.items()}
                   if self.xi else None)
            tops = standard_operators(pm.target, xi=txi)
            bad = chain_map_residual(pm, self.ops.differential, tops.differential,
                                     min(self.bounds[-1], 5), space=self.space)
            info["chain_map"] = bad is None
            ok = ok and bad is None
            tg = [pm(p) for p in self.gens]
            b = self.bounds
            if len(b) == 1:
                tr = cohomology_window(quotient_window(pm.target, tops, tg, b[0]))
                tr.stable = {n: tr.graded for n in tr.dims}
            else:
                tr = stability_scan(pm.target, tops, tg, b)
            iso = verify_induced_iso(self.report(), tr, pm)
            info["target_dims"] = tr.dims_list()
            info["induced_iso"] = iso.ok
            info["problems"] = iso.problems
            ok = ok and iso.ok
        return ok, info


def load_generators(cfg, L):
    if cfg.generators == "auto":
        gs = primitive_generators(L)
    else:
        try:
            doc = json.loads(Path(cfg.generators).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read generators: {exc}") from None
        gs = generators_from_doc(L, doc)
    if cfg.variant == "quantized-weil" or "projections" in cfg.checks:
        if not gs.quantized and L.npos_indices is not None:
            center_generators(L, gs)
    return gs


def run(cfg):
    """Execute the pipeline; returns (exit status, report dict)."""
    cfg.validate()
    try:
        raw = Path(cfg.spec).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read spec: {exc}") from None
    L = load_lie_algebra(raw.decode())
    gs = load_generators(cfg, L)
    pipe = Pipeline(cfg, L, gs)
    doc = {
        "input": {"spec": Path(cfg.spec).name, "sha256": hashlib.sha256(raw).hexdigest(),
                  "variant": cfg.variant,
                  "xi": None if cfg.xi is None else [format_rational(x) for x in cfg.xi],
                  "bounds": pipe.bounds, "checks": list(cfg.checks)},
        "lie": {"name": L.name, "dim": L.dim, "rank": L.rank},
        "generators": {"degrees": gs.degrees, "exponents": gs.exponents,
                       "normalized": [str(p) for p in pipe.gens],
                       "document": generators_to_doc(gs)},
        "checks": {},
    }
    status = 0
    for name in cfg.checks:
        ok, info = getattr(pipe, f"check_{name}")()
        info["pass"] = bool(ok)
        doc["checks"][name] = info
        if not ok:
            status = 1
    doc["status"] = "pass" if status == 0 else "fail"
    return status, doc


def render_table(doc):
    lines = [f"spec {doc['input']['spec']}  sha256 {doc['input']['sha256'][:16]}",
             f"algebra {doc['lie']['name']}  variant {doc['input']['variant']}  "
             f"xi {doc['input']['xi']}  bounds {doc['input']['bounds']}",
             f"generator degrees {doc['generators']['degrees']}  "
             f"exponents {doc['generators']['exponents']}"]
    for name, info in doc["checks"].items():
        mark = "PASS" if info["pass"] else "FAIL"
        lines.append(f"[{mark}] {name}")
        for k, v in info.items():
            if k in ("pass", "representatives", "cochains", "certificates"):
                continue
            lines.append(f"    {k}: {v}")
        for c in info.get("certificates", []):
            lines.append(f"    {'ok ' if c['ok'] else 'BAD'} {c['relation']} "
                         f"(bound {c['bound']}, {c['checked']} words)")
    lines.append(f"status {doc['status']}")
    return "\n".join(lines) + "\n"


def parse_args(argv):
    ap = argparse.ArgumentParser(prog="transgression")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the verification pipeline")
    r.add_argument("--spec", required=True)
    r.add_argument("--variant", default="weil", choices=VARIANTS)
    r.add_argument("--xi", default=None, help="Cartan coordinates, e.g. '1,-1/2'")
    r.add_argument("--generators", default="auto")
    r.add_argument("--bound", default=None, help="N or N1,N2,...")
    r.add_argument("--check", default="cohomology",
                   help="comma list of " + ",".join(CHECKS))
    r.add_argument("--format", default="table", choices=("table", "machine"))
    r.add_argument("--out", default=None)
    r.add_argument("--cert-bound", type=int, default=6)
    return ap.parse_args(argv)


def config_from_args(ns):
    try:
        xi = None if ns.xi is None else [parse_rational(s.strip()) for s in ns.xi.split(",")]
        bounds = None if ns.bound is None else [int(s) for s in ns.bound.split(",")]
    except (ValueError, TransgressionError) as exc:
        raise InputError(str(exc)) from None
    checks = [c.strip() for c in ns.check.split(",") if c.strip()]
    return RunConfig(ns.spec, ns.variant, xi, ns.generators, bounds, checks, ns.format,
                     ns.out, ns.cert_bound)


def main(argv=None):
    ns = parse_args(sys.argv[1:] if argv is None else argv)
    try:
        cfg = config_from_args(ns)
        status, doc = run(cfg)
    except (InputError, TransgressionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = (json.dumps(doc, indent=1, sort_keys=True) + "\n" if cfg.format == "machine"
            else render_table(doc))
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status
