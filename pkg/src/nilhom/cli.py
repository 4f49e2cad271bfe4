"""Command-line front end with JSON input and output.

Every command reads specs as inline JSON, a file path, or "-" for stdin,
echoes its resolved configuration into the output document and writes a
schema-versioned JSON payload.  Exit codes: 0 success, 2 input error or
unsupported instance, 3 when --strict is set and a semidecision came back
"unknown".
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import jsonio
from .filtration import filtration_certificate
from .groups import (AbelianFG, CentralExtension, FreeNilpotentSpec,
                     NilpotentAction, central_extension_of_class2)
from .sigma import (ValuationVector, m_tame, sigma_complement,
                    sigma_witness_search)
from .spectral import (abelian_homology, betti_free_nilpotent_c2, e2_page,
                       homology_free_nilpotent_c2, ks_page)
from .vbscan import hypothesis_report, vb_scan


class InputError(Exception):
    pass


class UnknownOutcome(Exception):
    pass


def _load_json(value, what):
    """Resolve inline JSON, a path, or '-' (stdin) into a parsed document."""
    if value == "-":
        text = sys.stdin.read()
        source = "stdin"
    else:
        try:
            return json.loads(value)
        except json.JSONDecodeError as inline_err:
            if os.path.exists(value):
                with open(value, "r", encoding="utf-8") as fh:
                    text = fh.read()
                source = value
            else:
                raise InputError(
                    f"{what}: not valid inline JSON (line {inline_err.lineno} "
                    f"column {inline_err.colno}: {inline_err.msg}) and not a "
                    f"readable file") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"{what} ({source}): invalid JSON at line "
                         f"{err.lineno} column {err.colno}: {err.msg}") from None


def _document(command, config, payload):
    doc = {"schema": jsonio.SCHEMA, "command": command, "config": config}
    doc.update(payload)
    return doc


def _cmd_betti(args):
    group = jsonio.parse_group(_load_json(args.group, "--group"))
    config = {"group": jsonio.group_json(group), "integral": bool(args.integral)}
    if isinstance(group, FreeNilpotentSpec):
        if group.nil_class == 1:
            betti = [abelian_homology(AbelianFG(group.rank), j).rational_dimension
                     for j in range(group.rank + 1)]
            payload = {"betti": betti}
        elif group.nil_class == 2:
            payload = {"betti": betti_free_nilpotent_c2(group.rank)}
            if args.integral:
                h = group.hirsch_length
                per_degree = []
                for j in range(h + 1):
                    res = homology_free_nilpotent_c2(group.rank, j, integral=True)
                    per_degree.append({
                        "j": j,
                        "cells": [{"cell": list(c), "free_rank": f,
                                   "torsion": list(t)}
                                  for c, f, t in (res.integral_cells or ())],
                        "invariant_factors":
                            list(res.invariant_factors)
                            if res.invariant_factors is not None else None,
                    })
                payload["integral"] = per_degree
        else:
            raise InputError("betti supports free nilpotent groups of class "
                             "<= 2 only; higher classes have no closed page")
    else:
        raise InputError("betti needs a free_nilpotent group spec")
    return _document("betti", config, payload)


def _cmd_pages(args):
    group = jsonio.parse_group(_load_json(args.group, "--group"))
    config = {"group": jsonio.group_json(group)}
    if isinstance(group, FreeNilpotentSpec):
        if group.nil_class > 2:
            raise InputError("pages are available for class <= 2 only")
        page = ks_page(group.rank) if group.nil_class == 2 else \
            e2_page(central_extension_of_class2(group))
    elif isinstance(group, CentralExtension):
        page = e2_page(group)
    else:
        raise InputError("pages needs a free_nilpotent or central_extension spec")
    return _document("pages", config, {"page": jsonio.page_json(page)})


def _cmd_filtration(args):
    group = jsonio.parse_group(_load_json(args.group, "--group"))
    if not isinstance(group, FreeNilpotentSpec):
        raise InputError("filtration certificates need a free_nilpotent spec")
    cert = filtration_certificate(group, args.j)
    config = {"group": jsonio.group_json(group), "j": args.j}
    return _document("filtration", config,
                     {"certificate": jsonio.certificate_json(cert)})


def _cmd_sigma(args):
    spec = jsonio.parse_module(_load_json(args.module, "--module"))
    config = {"module": jsonio.module_json(spec),
              "degree_bound": args.degree_bound}
    payload = {}
    if args.witness is not None:
        direction = ValuationVector(tuple(
            jsonio.parse_frac(x) for x in _load_json(args.witness, "--witness")))
        config["witness_direction"] = [jsonio.frac_str(x) for x in direction.v]
        found = sigma_witness_search(spec, direction, args.degree_bound)
        if found is None:
            payload["witness"] = "unknown"
        else:
            payload["witness"] = {
                "poly": jsonio.laurent_json(found.poly),
                "minimal_exponent": list(found.minimal_exponent),
                "combination": [{"generator": gi, "shift": list(sh),
                                 "coeff": jsonio.frac_str(c)}
                                for (gi, sh), c in found.combination],
            }
    else:
        try:
            sc = sigma_complement(spec)
        except ValueError as err:
            raise InputError(str(err)) from None
        payload["sigma_complement"] = jsonio.cones_json(sc)
    doc = _document("sigma", config, payload)
    if args.strict and payload.get("witness") == "unknown":
        raise UnknownOutcome(doc)
    return doc


def _cmd_tame(args):
    if (args.module is None) == (args.sigma_complement is None):
        raise InputError("tame needs exactly one of --module or --sigma-complement")
    if args.module is not None:
        spec = jsonio.parse_module(_load_json(args.module, "--module"))
        try:
            sc = sigma_complement(spec)
        except ValueError as err:
            raise InputError(str(err)) from None
        config = {"module": jsonio.module_json(spec), "m": args.m}
    else:
        sc = jsonio.parse_cones(_load_json(args.sigma_complement,
                                           "--sigma-complement"),
                                nvars=args.nvars)
        config = {"sigma_complement": jsonio.cones_json(sc), "m": args.m}
    return _document("tame", config, {"tame": m_tame(sc, args.m)})


def _cmd_vbscan(args):
    group = jsonio.parse_group(_load_json(args.group, "--group"))
    if not isinstance(group, NilpotentAction):
        raise InputError("vbscan needs an action spec "
                         '({"type":"action","group":...,"generators":...})')
    if group.target.nil_class > 2:
        raise InputError("vbscan supports class <= 2 only")
    report = vb_scan(group.target, group, args.j, args.m_max)
    config = {"group": jsonio.group_json(group), "j": args.j,
              "m_max": args.m_max}
    return _document("vbscan", config,
                     {"scan": jsonio.scan_report_json(report)})


def _cmd_report(args):
    sc = jsonio.parse_cones(_load_json(args.sigma_complement,
                                       "--sigma-complement"),
                            nvars=args.nvars if args.nvars else args.n)
    rep = hypothesis_report(args.c, args.n, sc)
    config = {"c": args.c, "n": args.n,
              "sigma_complement": jsonio.cones_json(sc)}
    payload = jsonio.hypothesis_json(rep)
    payload.pop("c")
    payload.pop("n")
    return _document("report", config, payload)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="nilhom",
        description="Exact nilpotent-group homology, tameness invariants "
                    "and finite-index Betti scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", default=None,
                       help="write the JSON document to this path")
        p.add_argument("--strict", action="store_true",
                       help="exit 3 when a semidecision returns unknown")

    p = sub.add_parser("betti", help="rational Betti numbers (class <= 2)")
    p.add_argument("--group", required=True)
    p.add_argument("--integral", action="store_true",
                   help="add per-cell integral invariant factors")
    add_common(p)
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("pages", help="serialise a spectral page")
    p.add_argument("--group", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_pages)

    p = sub.add_parser("filtration", help="tensor-degree filtration certificate")
    p.add_argument("--group", required=True)
    p.add_argument("--j", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_filtration)

    p = sub.add_parser("sigma", help="polyhedral complement or a witness search")
    p.add_argument("--module", required=True)
    p.add_argument("--witness", default=None,
                   help="direction vector as JSON, runs the witness search")
    p.add_argument("--degree-bound", type=int, default=8)
    add_common(p)
    p.set_defaults(func=_cmd_sigma)

    p = sub.add_parser("tame", help="exact m-tameness decision")
    p.add_argument("--module", default=None)
    p.add_argument("--sigma-complement", default=None)
    p.add_argument("--nvars", type=int, default=None,
                   help="ambient dimension for an empty cone list")
    p.add_argument("--m", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_tame)

    p = sub.add_parser("vbscan", help="finite-index homology scan")
    p.add_argument("--group", required=True,
                   help="action spec (free nilpotent group plus generators)")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--m-max", type=int, default=16)
    add_common(p)
    p.set_defaults(func=_cmd_vbscan)

    p = sub.add_parser("report", help="tameness hypothesis report")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma-complement", required=True)
    p.add_argument("--nvars", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_report)
    return parser


def _emit(doc, output):
    text = json.dumps(doc, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except UnknownOutcome as unk:
        _emit(unk.args[0], args.output)
        return 3
    except (ValueError, KeyError, TypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    _emit(doc, args.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
