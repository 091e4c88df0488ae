"""Command-line front end.

Exit codes: 0 success, 2 malformed input or usage, 1 a valid request whose
mathematical answer is an error (infinite group where a finite one is
required, non-uniformizable signature, and so on), 3 a census audit that
found discrepancies beyond the known list.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .abelian import (
    enumerate_enriques_quotients,
    orb_group_order_formula,
    orb_group_structure,
    quotient_structure,
)
from .census import (
    all_two_extension_orders,
    build_census,
    check_degree_bounds,
    cy_defect,
    enumerate_cy,
    family_dimension,
    is_calabi_yau,
    lift_components,
    verify_cover,
)
from .errors import OrbifoldError, SignatureSyntaxError
from .euler import e_orb_formula, e_orb_stratified, e_universal
from .golden import compare_to_golden
from .signatures import (
    OrbifoldSignature,
    f_vector,
    parse_components,
    parse_signature,
    render_signature,
    total_degree,
)
from .uniformize import (
    factorization_certificate,
    failing_prime_power,
    is_uniformizable_lcm,
    is_uniformizable_prime_power,
)


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _group_json(structure) -> dict:
    return structure.to_json()


def _group_text(structure) -> str:
    parts = [f"Z/{q}" for q in structure.invariant_factors]
    parts.extend(["Z"] * structure.free_rank)
    if not parts:
        return "trivial"
    return " x ".join(parts)


def _frac(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def cmd_check(args) -> int:
    sig = parse_signature(args.signature, args.dim)
    results = {}
    if args.route in ("prime-power", "both"):
        results["prime-power"] = is_uniformizable_prime_power(sig)
    if args.route in ("lcm", "both"):
        results["lcm"] = is_uniformizable_lcm(sig)
    if len(set(results.values())) > 1:
        raise RuntimeError("uniformizability routes disagree; this is a bug")
    verdict = next(iter(results.values()))
    payload = {
        "signature": render_signature(sig),
        "dim": sig.dim,
        "f_vector": list(f_vector(sig)),
        "routes": sorted(results),
        "uniformizable": verdict,
    }
    if verdict:
        payload["certificate"] = [
            {"prime": p, "exponents": list(exps)} for p, exps in factorization_certificate(sig)
        ]
    else:
        witness = failing_prime_power(sig)
        if witness is not None:
            payload["witness"] = {"prime": witness[0], "power": witness[1]}
    if args.format == "json":
        _emit_json(payload)
        return 0
    print(f"signature {render_signature(sig, human=True)} on P^{sig.dim}")
    print(f"f-vector {tuple(f_vector(sig))}")
    print(f"uniformizable: {'yes' if verdict else 'no'} (routes: {', '.join(sorted(results))})")
    if verdict:
        for item in payload["certificate"]:
            print(f"  p={item['prime']}: exponents {tuple(item['exponents'])}")
    elif "witness" in payload:
        w = payload["witness"]
        print(
            f"  witness: {w['prime']}^{w['power']} divides fewer than "
            f"{sig.dim + 1} of the f-values it must"
        )
    return 0


def cmd_group(args) -> int:
    sig = parse_signature(args.signature, args.dim)
    structure = orb_group_structure(sig)
    formula = orb_group_order_formula(sig)
    payload = _group_json(structure)
    payload["signature"] = render_signature(sig)
    payload["order_formula"] = formula
    if args.format == "json":
        _emit_json(payload)
        return 0
    print(f"signature {render_signature(sig, human=True)} on P^{sig.dim}")
    print(f"deck group: {_group_text(structure)}")
    print(f"order: {structure.order if structure.is_finite else 'infinite'}")
    print(f"order by formula: {formula}")
    return 0


def cmd_euler(args) -> int:
    sig = parse_signature(args.signature, args.dim)
    values = {}
    if args.route in ("formula", "both"):
        values["formula"] = e_orb_formula(sig)
    if args.route in ("stratified", "both"):
        values["stratified"] = e_orb_stratified(sig)
    if len(set(values.values())) > 1:
        raise RuntimeError("Euler routes disagree; this is a bug")
    e_orb = next(iter(values.values()))
    universal = e_universal(sig)
    payload = {
        "signature": render_signature(sig),
        "dim": sig.dim,
        "routes": sorted(values),
        "e_orb": str(e_orb),
        "e_universal": universal,
    }
    if args.format == "json":
        _emit_json(payload)
        return 0
    print(f"signature {render_signature(sig, human=True)} on P^{sig.dim}")
    print(f"e_orb = {e_orb} (routes: {', '.join(sorted(values))})")
    print(f"e of the universal uniformization = {universal}")
    return 0


def cmd_cy(args) -> int:
    sig = parse_signature(args.signature, args.dim)
    defect = cy_defect(sig)
    payload = {
        "signature": render_signature(sig),
        "dim": sig.dim,
        "degree": total_degree(sig),
        "defect": str(defect),
        "calabi_yau": defect == 0,
        "delta_moduli": family_dimension(sig, "moduli"),
        "delta_linear_system": family_dimension(sig, "linear_system"),
    }
    if defect == 0:
        bounds = check_degree_bounds(sig)
        payload["degree_bounds_ok"] = bounds.ok
    if args.format == "json":
        _emit_json(payload)
        return 0
    print(f"signature {render_signature(sig, human=True)} on P^{sig.dim}, degree {payload['degree']}")
    print(f"defect = {defect} ({'Calabi-Yau' if defect == 0 else 'not Calabi-Yau'})")
    convention = args.delta_convention.replace("-", "_")
    print(f"delta ({args.delta_convention}) = {family_dimension(sig, convention)}")
    return 0


def cmd_enumerate(args) -> int:
    sigs = enumerate_cy(args.dim, linear_only=args.linear_only, jobs=args.jobs)
    if args.format == "json":
        _emit_json(
            {
                "dim": args.dim,
                "linear_only": args.linear_only,
                "count": len(sigs),
                "signatures": [render_signature(s) for s in sigs],
            }
        )
        return 0
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["signature", "degree"])
        for s in sigs:
            writer.writerow([render_signature(s), total_degree(s)])
        return 0
    for s in sigs:
        print(render_signature(s, human=True))
    print(f"total: {len(sigs)}")
    return 0


def _census_payload(rows, report) -> dict:
    out_rows = []
    for row in rows:
        out_rows.append(
            {
                "row": row.index,
                "signature": render_signature(row.signature),
                "degree": row.degree,
                "order": row.order if row.order is not None else "infinite",
                "group": _group_json(row.group) if row.group is not None else None,
                "e_orb": _frac(row.e_orb),
                "e_universal": row.e_universal,
                "e_provenance": row.e_provenance,
                "delta_moduli": row.delta_moduli,
                "delta_linear_system": row.delta_linear_system,
                "coverings": [
                    {
                        "c": edge.c,
                        "deck_order": edge.deck_order,
                        "target_row": edge.target_row,
                        "target": render_signature(edge.target),
                        "sub_vector": list(edge.sub_vector),
                    }
                    for edge in row.coverings
                ],
                "flags": list(row.flags),
            }
        )
    entries = [dict(asdict(e), known=e.is_known) for e in report.entries]
    return {
        "rows": out_rows,
        "errata": entries,
        "known_errata": len(report.known()),
        "unknown_errata": len(report.unknown()),
    }


def _print_census_md(rows, report, delta_convention: str) -> None:
    print("| row | signature | d | order | group | e_orb | e | delta | coverings |")
    print("| --- | --- | --- | --- | --- | --- | --- | --- | --- |")
    for row in rows:
        order = row.order if row.order is not None else "inf"
        group = _group_text(row.group) if row.group is not None else ""
        e_orb = str(row.e_orb) if row.e_orb is not None else ""
        e_uni = str(row.e_universal) if row.e_universal is not None else ""
        delta = row.delta_moduli if delta_convention == "moduli" else row.delta_linear_system
        covs = " ".join(f"{edge.c}->#{edge.target_row}" for edge in row.coverings)
        print(
            f"| {row.index} | {render_signature(row.signature, human=True)} | {row.degree} "
            f"| {order} | {group} | {e_orb} | {e_uni} | {delta} | {covs} |"
        )
    print()
    print(report.format_text())


def cmd_census(args) -> int:
    if args.golden:
        rows, _ = build_census(args.dim, jobs=args.jobs, golden=False)
        with open(args.golden, encoding="utf-8") as fh:
            data = json.load(fh)
        report = compare_to_golden(rows, data)
    else:
        rows, report = build_census(args.dim, jobs=args.jobs, golden=not args.no_golden)
    if args.errata_only:
        print(report.format_text())
    elif args.format == "json":
        _emit_json(_census_payload(rows, report))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(
            [
                "row",
                "signature",
                "degree",
                "order",
                "invariant_factors",
                "free_rank",
                "e_orb",
                "e_universal",
                "e_provenance",
                "delta_moduli",
                "delta_linear_system",
                "coverings",
                "flags",
            ]
        )
        for row in rows:
            writer.writerow(
                [
                    row.index,
                    render_signature(row.signature),
                    row.degree,
                    row.order if row.order is not None else "infinite",
                    " ".join(str(q) for q in row.group.invariant_factors) if row.group else "",
                    row.group.free_rank if row.group else "",
                    _frac(row.e_orb) or "",
                    row.e_universal if row.e_universal is not None else "",
                    row.e_provenance,
                    row.delta_moduli,
                    row.delta_linear_system,
                    " ".join(f"{e.c}->{e.target_row}" for e in row.coverings),
                    "; ".join(row.flags),
                ]
            )
    else:
        _print_census_md(rows, report, args.delta_convention.replace("-", "_"))
    if not args.no_golden and report.unknown():
        return 3
    return 0


def cmd_lift(args) -> int:
    comps = parse_components(args.signature)
    try:
        branch = tuple(int(part) for part in args.branch.split(","))
    except ValueError:
        raise SignatureSyntaxError("branch must be a comma-separated list of indices", 1)
    if any(i < 1 or i > len(comps) for i in branch):
        raise SignatureSyntaxError(
            f"branch indices are 1-based over the {len(comps)} written components", 1
        )
    zero_based = tuple(i - 1 for i in branch)
    source = OrbifoldSignature(args.dim, comps)
    try:
        lifted_comps = lift_components(args.dim, comps, zero_based, args.c)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    lifted = OrbifoldSignature(args.dim, lifted_comps)
    verify_cover(source, lifted, args.c)
    payload = {
        "source": render_signature(source),
        "lift": render_signature(lifted),
        "c": args.c,
        "deck_order": args.c**args.dim,
    }
    if args.format == "json":
        _emit_json(payload)
        return 0
    print(f"source {render_signature(source, human=True)} on P^{args.dim}")
    print(f"lift along c={args.c}: {render_signature(lifted, human=True)}")
    print(f"covering degree c^n = {payload['deck_order']}")
    return 0


def cmd_enriques(args) -> int:
    count, specs = enumerate_enriques_quotients(args.dim, paranoid=args.paranoid)
    sig = OrbifoldSignature.from_pairs(args.dim, [(1, 2)] * (2 * args.dim + 2))
    full_order = orb_group_order_formula(sig)
    quotients = []
    for spec in specs:
        structure = quotient_structure(sig, spec)
        quotients.append(
            {
                "relation": list(spec.extra_relations[0]),
                "order": structure.order,
            }
        )
    payload = {
        "dim": args.dim,
        "signature": render_signature(sig),
        "deck_order": full_order,
        "count": count,
        "quotients": quotients,
    }
    if args.extensions:
        base, halved, permuted = all_two_extension_orders(args.dim)
        payload["extension_orders"] = [base, halved, permuted]
    if args.format == "json":
        _emit_json(payload)
        return 0
    print(f"signature {render_signature(sig, human=True)} on P^{args.dim}, deck order {full_order}")
    print(f"valid index-2 quotients: {count}")
    for q in quotients:
        vec = "".join(str(v) for v in q["relation"])
        print(f"  relation {vec}: quotient order {q['order']}")
    if args.extensions:
        base, halved, permuted = payload["extension_orders"]
        print(f"extension orders: {base} -> {halved} (sign flips) -> {permuted} (permutations)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbicensus",
        description="Exact census of finite-abelian orbifold structures on projective space.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sig_command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("signature", help="bracket notation, e.g. '[2_2,3,3,3]' or '[2,2,inf]'")
        p.add_argument("--dim", type=int, required=True, help="ambient projective dimension n")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=func)
        return p

    p = add_sig_command("check", cmd_check, "decide uniformizability")
    p.add_argument("--route", choices=("prime-power", "lcm", "both"), default="both")

    add_sig_command("group", cmd_group, "deck group of the universal uniformization")

    p = add_sig_command("euler", cmd_euler, "orbifold Euler number (linear loci)")
    p.add_argument("--route", choices=("formula", "stratified", "both"), default="both")

    p = add_sig_command("cy", cmd_cy, "Calabi-Yau defect and family dimension")
    p.add_argument(
        "--delta-convention", choices=("moduli", "linear-system"), default="moduli"
    )

    p = sub.add_parser("enumerate", help="all Calabi-Yau signatures in a dimension")
    p.add_argument("dim", type=int)
    p.add_argument("--linear-only", action="store_true")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", help="full census with reference-table audit (dim 1-3)")
    p.add_argument("dim", type=int)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--golden", help="audit against this table file instead of the bundled one")
    p.add_argument("--no-golden", action="store_true", help="skip the reference audit")
    p.add_argument("--errata-only", action="store_true")
    p.add_argument(
        "--delta-convention", choices=("moduli", "linear-system"), default="moduli"
    )
    p.add_argument("--format", choices=("md", "json", "csv"), default="md")
    p.set_defaults(func=cmd_census)

    p = add_sig_command("lift", cmd_lift, "lift to a diagonal sub-orbifold uniformization")
    p.add_argument(
        "--branch",
        required=True,
        help="comma-separated 1-based indices into the written components",
    )
    p.add_argument("--c", type=int, required=True, help="common multiplicity divisor")

    p = sub.add_parser("enriques", help="index-2 quotients of the all-2 signature")
    p.add_argument("dim", type=int)
    p.add_argument("--paranoid", action="store_true", help="check germs of all depths")
    p.add_argument("--extensions", action="store_true", help="also print extension orders")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_enriques)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SignatureSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OrbifoldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
