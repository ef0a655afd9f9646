"""Command-line interface.

Exit codes: 0 on success, 2 on bad input or model data, 1 when the
reproduction report finds a mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .catalog import ScanResult, catalog, get_entry, scan_destabilizers
from .errors import FanoSlopeError
from .exactmath import format_rational, parse_rational
from .io import model_to_dict, resolve_model
from .lattice import DivisorClass
from .model import VarietyModel, is_nef, product_model, pullback
from .report import aubin_row, render_json, render_text, reproduce
from .slope import (
    Target,
    XiReport,
    convexity_criterion,
    nef_divisor_criterion,
    product_pullback_xi,
    ray_filter,
    slope_mu_c,
    verdict_with_bounds,
    xi,
    xi_c,
)

EXIT_OK, EXIT_MISMATCH, EXIT_DATA = 0, 1, 2


def parse_target(m: VarietyModel, text: str) -> Target:
    """A divisor or restriction name, or comma-separated coordinates such as ``1,0,-1``."""
    if text in m.named_divisors or text in m.restrictions or text in m.basis:
        return text
    return DivisorClass(parse_rational(part) for part in text.split(","))


def _fmt(q) -> str:
    return format_rational(q)


def _xi_lines(m: VarietyModel, label: str, rep: XiReport) -> list[str]:
    lines = [
        f"model: {m.name}",
        f"divisor: {label}",
        f"codim: {rep.r}",
        f"epsilon: {_fmt(rep.epsilon)}" + (f" (ray {rep.witness_ray})" if rep.witness_ray else ""),
        f"integrand g(x): {rep.g}",
        f"xi: {_fmt(rep.xi)}",
        f"xi/{rep.n}: {_fmt(rep.xi / rep.n)}",
        f"verdict: {rep.verdict}",
    ]
    return lines


def cmd_catalog(args) -> int:
    if args.action == "list":
        for entry in catalog():
            print(f"{entry.key:<12} {entry.title}")
        return EXIT_OK
    if not args.key:
        raise FanoSlopeError("catalog show needs a key")
    entry = get_entry(args.key)
    m = entry.model
    print(f"key: {entry.key}")
    print(f"name: {m.name}")
    print(f"dim: {m.dim}")
    print(f"basis: {', '.join(m.basis)}")
    print(f"-K: {m.format_class(m.anticanonical)}")
    print(f"vol(-K): {_fmt(m.anticanonical_volume())}")
    for ray in m.rays:
        length = "-" if ray.length is None else ray.length
        pairing = ", ".join(_fmt(p) for p in ray.curve.pairings)
        print(f"ray {ray.name}: ({pairing}) length {length}")
    if m.effective_generators:
        print("Eff: " + ", ".join(m.format_class(g) for g in m.effective_generators))
    for name, d in m.named_divisors.items():
        print(f"divisor {name} = {m.format_class(d)}")
    for name in m.restrictions:
        print(f"restriction {name}")
    for exp in entry.expected:
        value = "-" if exp.xi is None else _fmt(exp.xi)
        extra = "" if exp.published_xi is None else f" (published {_fmt(exp.published_xi)})"
        print(f"expect {exp.divisor}: xi {value}, {exp.verdict}{extra} [{exp.provenance.kind}: {exp.provenance.note}]")
    if args.json:
        print(json.dumps(model_to_dict(m), indent=2))
    return EXIT_OK


def cmd_xi(args) -> int:
    m = resolve_model(args.model)
    target = parse_target(m, args.divisor)
    rep = xi(m, target)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
        return EXIT_OK
    for line in _xi_lines(m, args.divisor, rep):
        print(line)
    if args.c is not None:
        c = parse_rational(args.c)
        mu = slope_mu_c(m, target, c)
        print(f"xi_c (c = {_fmt(c)}): {_fmt(xi_c(m, target, c))}")
        print(f"mu_c: {_fmt(mu.mu_c)}  mu(X): {_fmt(mu.mu_X)}")
    return EXIT_OK


def cmd_verdict(args) -> int:
    m = resolve_model(args.model)
    target = parse_target(m, args.divisor)
    rep, checks = verdict_with_bounds(m, target)
    print(f"verdict: {rep.verdict}")
    print(f"xi: {_fmt(rep.xi)}  epsilon: {_fmt(rep.epsilon)}  codim: {rep.r}")
    for check in checks:
        print(f"bound {check.label}: {'holds' if check.holds else 'FAILS'}")
    if isinstance(target, str) and target in m.restrictions:
        print(f"convexity criterion: {convexity_criterion(m, target)}")
    else:
        print("convexity criterion: not applicable (no restriction data)")
    if isinstance(target, DivisorClass) or target in m.named_divisors or target in m.basis:
        d = m.divisor(target)
        if m.rays:
            ray = ray_filter(m, d)
            print("ray filter: " + ("no witness" if ray is None else f"stable, witness {ray.name}"))
        if m.rays and is_nef(m, d):
            print(f"nef criterion: {nef_divisor_criterion(m, d)}")
        else:
            print("nef criterion: not applicable (divisor not nef)")
    return EXIT_OK


def cmd_seshadri(args) -> int:
    m = resolve_model(args.model)
    rep = xi(m, parse_target(m, args.divisor))
    print(f"epsilon: {_fmt(rep.epsilon)}")
    print(f"witness: {rep.witness_ray if rep.witness_ray else 'override'}")
    return EXIT_OK


def scan_to_dict(res: ScanResult) -> dict:
    return {
        "model": res.model,
        "bound": res.bound,
        "records": [
            {
                "divisor": r.label,
                "epsilon": None if r.epsilon is None else _fmt(r.epsilon),
                "xi": None if r.xi is None else _fmt(r.xi),
                "verdict": r.verdict.value,
                "pruned_by": r.pruned_by,
            }
            for r in res.records
        ],
        "destabilizing": [r.label for r in res.destabilizing],
    }


def cmd_scan(args) -> int:
    m = resolve_model(args.model)
    res = scan_destabilizers(m, args.bound, use_ray_filter=not args.no_ray_filter)
    if args.json:
        print(json.dumps(scan_to_dict(res), indent=2))
        return EXIT_OK
    print(f"model: {m.name}  bound: {res.bound}  classes: {len(res.records)}  pruned: {len(res.pruned)}")
    if args.all:
        for r in res.records:
            if r.pruned_by:
                print(f"  {r.label}: Stable (ray {r.pruned_by})")
            else:
                print(f"  {r.label}: xi {_fmt(r.xi)}, {r.verdict}")
    if not res.destabilizing:
        print("no class with xi <= 0")
    for r in res.destabilizing:
        print(f"xi <= 0: {r.label}  epsilon {_fmt(r.epsilon)}  xi {_fmt(r.xi)}  {r.verdict}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    doc = reproduce()
    sys.stdout.write(render_json(doc) if args.json else render_text(doc))
    return EXIT_OK if doc["summary"]["ok"] else EXIT_MISMATCH


def cmd_aubin(args) -> int:
    if args.n < 2:
        raise FanoSlopeError("n must be at least 2")
    row = aubin_row(args.n)
    print(f"n: {row.n}")
    print(f"vol(-K): {_fmt(row.vol)}")
    print(f"bound ((n+1)^2/2n)^n: {_fmt(row.bound)} (approx {float(row.bound):.6g})")
    print(f"vol < bound: {'yes' if row.inequality_holds else 'no'}")
    print(f"verdict: {row.verdict}")
    print(f"counterexample: {'YES' if row.counterexample else 'NO'}")
    return EXIT_OK


def cmd_product(args) -> int:
    m1, m2 = resolve_model(args.model1), resolve_model(args.model2)
    d1 = m1.divisor(parse_target(m1, args.divisor))
    ident = product_pullback_xi(m1, m2, d1)
    prod = product_model(m1, m2)
    rep = xi(prod, pullback(m1, m2, d1, 1))
    print(f"product: {prod.name}")
    print(f"xi on factor: {_fmt(ident.xi_factor)}")
    print(f"xi of pullback: {_fmt(ident.xi_product)}")
    print(f"predicted: {_fmt(ident.predicted)}")
    print(f"identity: {'holds' if ident.holds else 'FAILS'}")
    print(f"verdict: {rep.verdict}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fanoslope", description="Exact slope stability of Fano manifolds along divisors and subvarieties.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list or show built-in models")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("key", nargs="?")
    c.add_argument("--json", action="store_true", help="also print the model file")
    c.set_defaults(func=cmd_catalog)

    for name, func, help_text in [
        ("xi", cmd_xi, "compute xi along a divisor or restriction"),
        ("verdict", cmd_verdict, "verdict with every applicable criterion"),
        ("seshadri", cmd_seshadri, "Seshadri constant of -K along a divisor"),
    ]:
        s = sub.add_parser(name, help=help_text)
        s.add_argument("model", help="catalog key or model file")
        s.add_argument("divisor", help="name or comma-separated coordinates")
        if name == "xi":
            s.add_argument("--c", help="also evaluate xi_c and the slopes at this c")
            s.add_argument("--json", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("scan", help="scan effective classes for destabilizers")
    s.add_argument("model")
    s.add_argument("--bound", type=int, default=3)
    s.add_argument("--json", action="store_true")
    s.add_argument("--all", action="store_true", help="print every class")
    s.add_argument("--no-ray-filter", action="store_true")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("reproduce-paper", help="run every catalogued check and print the tables")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("aubin", help="volume bound comparison in the index-two family")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_aubin)

    s = sub.add_parser("product", help="check the pullback identity on a product")
    s.add_argument("model1")
    s.add_argument("model2")
    s.add_argument("divisor", help="divisor on the first factor")
    s.set_defaults(func=cmd_product)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FanoSlopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
