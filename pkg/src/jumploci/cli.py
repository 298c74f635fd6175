"""Command line front end.

Subcommands:

* ``count``        torsion counts of a jump locus over a list of d
* ``tower``        CSV of exact cover invariants and normalized values
* ``check``        decay-bound grid, converse witness, divergence, L² report
* ``validate``     run model validation and print the findings
* ``export``       write a catalog entry to a model file
* ``catalog-list`` list the built-in models

Exit codes: 0 pass, 1 analytic fail (``check`` only), 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import asymptotics, catalog, counting, modelfile, tower
from .errors import EngineError
from .model import VarietyModel, validate_model

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2


def _parse_params(text: Optional[str]) -> dict:
    params: dict = {}
    if not text:
        return params
    for item in text.split(","):
        if not item:
            continue
        if "=" not in item:
            raise EngineError(f"bad parameter {item!r}; expected name=value")
        key, value = item.split("=", 1)
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise EngineError(f"parameter {key!r} must be an integer, got {value!r}") from None
    return params


def _load_model(args) -> VarietyModel:
    if getattr(args, "builtin", None):
        entry = catalog.builtin(args.builtin, **_parse_params(getattr(args, "params", None)))
        return entry.model
    if getattr(args, "model", None):
        return modelfile.load_model(args.model)
    raise EngineError("provide --model FILE or --builtin NAME")


def _validated_model(args, out=None) -> VarietyModel:
    out = out if out is not None else sys.stdout
    model = _load_model(args)
    report = validate_model(model)
    if not report.ok:
        for finding in report.errors:
            print(f"error: {finding.message}", file=out)
        raise EngineError("the model does not validate")
    return model


def _add_model_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="path to a model file")
    parser.add_argument("--builtin", help="name of a catalog entry")
    parser.add_argument("--params", help="catalog parameters, e.g. g=4,c=3")


def _approx(x: Fraction) -> str:
    return f"{float(x):.12g}"


def cmd_count(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    ds = [int(t) for t in args.d.split(",") if t]
    if not ds or any(d < 1 for d in ds):
        raise EngineError("--d needs a comma list of positive integers")
    if args.locus:
        components = modelfile.load_locus(args.locus)
        label = args.locus
    else:
        if not args.i:
            raise EngineError("provide --i P,Q or --locus FILE")
        p, q = (int(t) for t in args.i.split(","))
        model = _validated_model(args, out)
        rf = model.hodge[p][q]
        components = [c for c, v in rf.strata if v > rf.generic_value]
        label = f"jump locus of ({p},{q})"
    dims = [nc.dim for nc in (c.normalize() for c in components) if nc is not None]
    top = max(dims) if dims else 0
    print(f"# {label}: {len(components)} components, top dimension {top}", file=out)
    print(f"{'d':>6} {'torsion':>14} {'d^dim':>14}", file=out)
    for d in ds:
        value = counting.union_torsion_count(components, d, budget=args.budget)
        print(f"{d:>6} {value:>14} {d ** top:>14}", file=out)
        if args.enumerate:
            for comp in components:
                for pt in counting.enumerate_torsion(comp, d, cap=args.enum_cap):
                    print("    " + " ".join(str(c) for c in pt.coords), file=out)
    return EXIT_OK


def _tower_rows(model: VarietyModel, d_max: int, ms: list[int], budget: int):
    n = model.n
    header = ["schema", "d", "deg"]
    header += [f"h_{p}_{q}" for p in range(n + 1) for q in range(n + 1)]
    header += [f"b_{k}" for k in range(2 * n + 1)]
    header += ["q"]
    header += [f"P_{m}" for m in ms]
    header += [f"nh_{p}_{q}" for p in range(n + 1) for q in range(n + 1)]
    header += [f"nh_{p}_{q}_approx" for p in range(n + 1) for q in range(n + 1)]
    header += [f"nb_{k}" for k in range(2 * n + 1)]
    header += [f"nb_{k}_approx" for k in range(2 * n + 1)]
    yield header
    for d in range(1, d_max + 1):
        inv = tower.cover_invariants(model, d, ms, budget=budget)
        flat = [inv.hodge[p][q] for p in range(n + 1) for q in range(n + 1)]
        row = [modelfile.SCHEMA_VERSION, d, inv.deg]
        row += flat
        row += list(inv.betti)
        row += [inv.q]
        row += [inv.pluri[m] for m in ms]
        norm_h = [Fraction(v, inv.deg) for v in flat]
        norm_b = [Fraction(v, inv.deg) for v in inv.betti]
        row += [str(x) for x in norm_h]
        row += [_approx(x) for x in norm_h]
        row += [str(x) for x in norm_b]
        row += [_approx(x) for x in norm_b]
        yield row


def cmd_tower(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    model = _validated_model(args, out)
    ms = [int(t) for t in args.pluri.split(",")] if args.pluri else []
    rows = _tower_rows(model, args.d_max, ms, args.budget)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerows(rows)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerows(rows)
    return EXIT_OK


def cmd_check(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    model = _validated_model(args, out)
    n = model.n
    fits = [
        asymptotics.fit_bound(model, p, q, args.defect_bound, args.d_max, budget=args.budget)
        for p in range(n + 1) for q in range(n + 1)
    ]
    witness = asymptotics.converse_defect_witness(model, args.defect_bound)
    divergence = asymptotics.divergence_class(model)
    l2 = asymptotics.l2_betti(model)
    all_pass = all(f.passes for f in fits)

    print(f"# decay bounds at defect bound N = {args.defect_bound}, d <= {args.d_max}", file=out)
    print(f"{'p':>3} {'q':>3} {'exponent':>9} {'fitted_B':>14} verdict", file=out)
    for f in fits:
        verdict = "pass" if f.passes else f"FAIL (dim {f.violating_dim})"
        print(f"{f.p:>3} {f.q:>3} {f.exponent:>9} {str(f.fitted_b):>14} {verdict}", file=out)
    if witness is None:
        print("# no witness pair: the declared defect bound is consistent", file=out)
    else:
        print(f"# witness pair violating the bound: {witness}", file=out)
    if divergence.divergent:
        print(f"# cover irregularity diverges: stratum of real dimension {divergence.max_stratum_dim}, "
              f"witness order {divergence.witness_order}", file=out)
    else:
        print(f"# cover irregularity bounded at {divergence.base_irregularity}", file=out)
    caveat = "" if l2.weak_gnv else " (weak generic Nakano vanishing fails; closed form not certified)"
    print(f"# L2 Betti numbers{caveat}: {[str(b) for b in l2.betti]}", file=out)
    print(f"# nonvanishing middle L2 Hodge rows: {sorted(l2.nonvanishing)}", file=out)

    machine = {
        "schema_version": modelfile.SCHEMA_VERSION,
        "model": model.name,
        "defect_bound": args.defect_bound,
        "d_max": args.d_max,
        "fit": [
            {"p": f.p, "q": f.q, "exponent": f.exponent,
             "fitted_b": str(f.fitted_b), "passes": f.passes,
             "violating_dim": f.violating_dim}
            for f in fits
        ],
        "witness": list(witness) if witness else None,
        "divergence": {
            "divergent": divergence.divergent,
            "max_stratum_dim": divergence.max_stratum_dim,
            "witness_order": divergence.witness_order,
            "base_irregularity": divergence.base_irregularity,
        },
        "l2": {
            "betti": [str(b) for b in l2.betti],
            "weak_gnv": l2.weak_gnv,
            "nonvanishing": sorted(l2.nonvanishing),
        },
        "all_pass": all_pass,
    }
    print("-- machine readable --", file=out)
    print(json.dumps(machine, indent=2, sort_keys=True), file=out)
    return EXIT_OK if all_pass else EXIT_FAIL


def cmd_validate(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    model = _load_model(args)
    report = validate_model(model)
    for finding in report.findings:
        print(f"{finding.severity}: {finding.message}", file=out)
    for p in sorted(report.weak_gv_table):
        proper = sorted(report.weak_gv_table[p])
        print(f"proper loci for p={p}: q in {proper}", file=out)
    if not report.ok:
        print("model rejected", file=out)
        return EXIT_INVALID
    print("model accepted", file=out)
    return EXIT_OK


def cmd_export(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    model = _load_model(args)
    if args.out:
        modelfile.save_model(model, args.out)
    else:
        out.write(modelfile.dumps_model(model))
    return EXIT_OK


def cmd_catalog_list(args, out=None) -> int:
    out = out if out is not None else sys.stdout
    for name, params in catalog.DEFAULT_INSTANCES:
        entry = catalog.builtin(name, **params)
        args_text = ",".join(f"{k}={v}" for k, v in params.items())
        print(f"{name}({args_text})", file=out)
        print(f"    {entry.oracle_notes.splitlines()[0]}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jumploci",
        description="Exact invariants of abelian-cover towers from jump-locus models.")
    parser.add_argument("--budget", type=int, default=counting.DEFAULT_COMPONENT_BUDGET,
                        help="inclusion-exclusion component cap")
    parser.add_argument("--enum-cap", type=int, default=counting.DEFAULT_ENUM_CAP,
                        help="point cap for brute-force enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="torsion counts of a jump locus")
    _add_model_source(p_count)
    p_count.add_argument("--i", help="grid entry P,Q whose jump locus to count")
    p_count.add_argument("--locus", help="standalone locus file")
    p_count.add_argument("--d", required=True, help="comma list of cover indices")
    p_count.add_argument("--enumerate", action="store_true",
                         help="also list the torsion points (small d only)")
    p_count.set_defaults(func=cmd_count)

    p_tower = sub.add_parser("tower", help="CSV of exact cover invariants")
    _add_model_source(p_tower)
    p_tower.add_argument("--d-max", type=int, default=4, dest="d_max")
    p_tower.add_argument("--pluri", help="comma list of plurigenus exponents to include")
    p_tower.add_argument("--out", help="CSV output path (default: stdout)")
    p_tower.set_defaults(func=cmd_tower)

    p_check = sub.add_parser("check", help="decay bounds, divergence, L2 report")
    _add_model_source(p_check)
    p_check.add_argument("--defect-bound", type=int, default=0, dest="defect_bound")
    p_check.add_argument("--d-max", type=int, default=4, dest="d_max")
    p_check.set_defaults(func=cmd_check)

    p_val = sub.add_parser("validate", help="validate a model and print findings")
    _add_model_source(p_val)
    p_val.set_defaults(func=cmd_validate)

    p_exp = sub.add_parser("export", help="write a model to a model file")
    _add_model_source(p_exp)
    p_exp.add_argument("--out", help="output path (default: stdout)")
    p_exp.set_defaults(func=cmd_export)

    p_list = sub.add_parser("catalog-list", help="list built-in models")
    p_list.set_defaults(func=cmd_catalog_list)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EngineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
