"""Shared JSON codecs: rational strings, matrices, group and module specs.

All rationals travel as strings "p/q" (integers as "p"); every document
produced for the command line carries a schema version field "v1".
Ordering of keys and list elements is fixed so repeated runs are
byte-identical.
"""

from __future__ import annotations

from fractions import Fraction

from .filtration import FiltrationCertificate
from .groups import AbelianFG, CentralExtension, FreeNilpotentSpec, NilpotentAction
from .linalg import IntMatrix, RatMatrix
from .sigma import Cone, ConeUnion, CyclicModuleSpec, LaurentPoly
from .spectral import Page
from .vbscan import HypothesisReport, ScanReport

SCHEMA = "v1"


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def rat_matrix_json(m: RatMatrix):
    return [[frac_str(x) for x in row] for row in m.entries]


def int_matrix_json(m: IntMatrix):
    return [[str(x) for x in row] for row in m.entries]


def parse_rat_matrix(grid, rows=None, cols=None) -> RatMatrix:
    return RatMatrix([[parse_frac(x) for x in row] for row in grid], rows, cols)


def parse_int_matrix(grid, rows=None, cols=None) -> IntMatrix:
    return IntMatrix([[int(parse_frac(x)) for x in row] for row in grid],
                     rows, cols)


def parse_group(doc):
    """Parse a group spec document into the matching domain object."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("group spec must be an object with a 'type' field")
    kind = doc["type"]
    if kind == "free_nilpotent":
        return FreeNilpotentSpec(int(doc["rank"]), int(doc["class"]))
    if kind == "central_extension":
        q_rank = int(doc["q_rank"])
        a_rank = int(doc["a_rank"])
        pairing = parse_int_matrix(doc["pairing"], a_rank, None)
        return CentralExtension(AbelianFG(q_rank), AbelianFG(a_rank), pairing)
    if kind == "action":
        group = parse_group(doc["group"])
        if not isinstance(group, FreeNilpotentSpec):
            raise ValueError("actions are specified on free nilpotent groups")
        gens = tuple(parse_int_matrix(g) for g in doc["generators"])
        return NilpotentAction(group, gens)
    raise ValueError(f"unknown group type {kind!r}")


def group_json(obj):
    if isinstance(obj, FreeNilpotentSpec):
        return {"type": "free_nilpotent", "rank": obj.rank, "class": obj.nil_class}
    if isinstance(obj, CentralExtension):
        return {"type": "central_extension", "q_rank": obj.q.rank,
                "a_rank": obj.a.rank, "pairing": int_matrix_json(obj.pairing)}
    if isinstance(obj, NilpotentAction):
        return {"type": "action", "group": group_json(obj.target),
                "generators": [int_matrix_json(g) for g in obj.generators]}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_module(doc) -> CyclicModuleSpec:
    if not isinstance(doc, dict) or "nvars" not in doc:
        raise ValueError("module spec must be an object with 'nvars' and 'ideal'")
    n = int(doc["nvars"])
    gens = []
    for g in doc.get("ideal", []):
        if isinstance(g, dict):
            terms = {tuple(int(x) for x in g["exp"]): parse_frac(g["coeff"])}
        else:
            terms = {tuple(int(x) for x in t["exp"]): parse_frac(t["coeff"])
                     for t in g}
        gens.append(LaurentPoly(n, terms))
    return CyclicModuleSpec(n, tuple(gens))


def module_json(spec: CyclicModuleSpec):
    return {"nvars": spec.nvars,
            "ideal": [[{"coeff": frac_str(c), "exp": list(e)}
                       for e, c in sorted(g.terms.items())]
                      for g in spec.ideal]}


def laurent_json(f: LaurentPoly):
    return [{"coeff": frac_str(c), "exp": list(e)}
            for e, c in sorted(f.terms.items())]


def parse_cones(doc, nvars=None) -> ConeUnion:
    cones = []
    for c in doc:
        ineqs = [[parse_frac(x) for x in row] for row in c.get("ineqs", [])]
        eqs = [[parse_frac(x) for x in row] for row in c.get("eqs", [])]
        dims = [len(r) for r in ineqs + eqs]
        n = dims[0] if dims else nvars
        if n is None:
            raise ValueError("cannot infer cone dimension, supply constraints "
                             "or an ambient dimension")
        cones.append(Cone(n, ineqs, eqs))
    if cones:
        nvars = cones[0].nvars
    if nvars is None:
        raise ValueError("empty cone list needs an explicit ambient dimension")
    return ConeUnion(nvars, cones)


def cones_json(cu: ConeUnion):
    out = []
    for c in cu.canonical().cones:
        out.append({"ineqs": [[frac_str(x) for x in row] for row in c.ineqs],
                    "eqs": [[frac_str(x) for x in row] for row in c.eqs]})
    return out


def page_json(page: Page):
    cells = []
    for (p, q) in sorted(page.cells):
        cell = page.cells[(p, q)]
        cells.append({"p": p, "q": q, "dim": cell.dim,
                      "basis": [[list(l[0]), list(l[1])]
                                for l in cell.basis.labels]})
    diffs = []
    for (p, q) in sorted(page.diffs):
        d = page.diffs[(p, q)]
        if d.rows and d.cols and not d.is_zero():
            diffs.append({"p": p, "q": q, "matrix": rat_matrix_json(d)})
    return {"cells": cells, "differentials": diffs}


def certificate_json(cert: FiltrationCertificate):
    return {
        "group": group_json(cert.spec),
        "j": cert.j,
        "class": cert.spec.nil_class,
        "bound": cert.bound,
        "layers": [{"tensor_degree": l.tensor_degree,
                    "dimension": l.dimension,
                    "origin": [list(c) for c in l.origin]}
                   for l in cert.layers],
        "total_dimension": cert.total_dimension,
        "dimensions_exact": cert.dimensions_exact,
        "bound_satisfied": cert.bound_satisfied,
    }


def scan_report_json(report: ScanReport):
    return {
        "j": report.j,
        "m_max": report.m_max,
        "rows": [{"m": r.m, "by_p": list(r.by_p), "total": r.total}
                 for r in report.rows],
        "observed_sup": report.observed_sup,
        "verdict": {"bounded_over_range": True,
                    "observed_bound": report.observed_sup,
                    "range": report.m_max},
    }


def hypothesis_json(rep: HypothesisReport):
    out = {"c": rep.c, "n": rep.n, "requirement": rep.requirement,
           "holds": rep.holds}
    if rep.holds:
        out["guaranteed"] = rep.guaranteed
    else:
        out["fails_at_m"] = rep.fails_at_m
    return out
