"""Command-line front end.

Subcommands map onto the library modules; output is canonical JSON (sorted
keys) unless a subcommand writes CSV or DOT. Exit codes: 0 success, 1
domain error (JSON error object on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError
from .quadforms import class_group
from . import ordertower
from .solvability import VolcanoSpec, decide_existence, compatible_orders, x_bruteforce
from . import primesearch
from . import heuristics

CRATER_N = {"I1": 1, "R1": 1, "S1": 1, "R2": 2, "S2": 2}


def _emit(obj, pretty: bool) -> None:
    if pretty:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(json.dumps(obj, sort_keys=True))


def _fraction(x):
    return None if x is None else float(x)


def _spec_from_args(args) -> VolcanoSpec:
    n = args.n if args.n is not None else CRATER_N.get(args.crater)
    if n is None:
        raise DomainError("--n is required for Sn craters")
    return VolcanoSpec(args.crater, n, args.ell, args.depth)


def cmd_decide(args) -> dict:
    V = _spec_from_args(args)
    v = decide_existence(
        V,
        args.k,
        constructive=args.constructive,
        search_cap=args.search_cap,
        class_cap=args.class_cap,
    )
    out = {"verdict": v.verdict, "provenance": v.provenance}
    if v.witness_discriminant is not None:
        out["witness_discriminant"] = v.witness_discriminant
    if v.predicted_density is not None:
        out["predicted_density"] = _fraction(v.predicted_density)
    if v.conditional_exponent is not None:
        out["conditional_exponent"] = v.conditional_exponent
    return out


def cmd_search(args) -> dict:
    r = primesearch.search(args.d0, args.ell, args.depth, args.k, args.pmax, args.class_cap)
    return {
        "primes": list(r.primes),
        "empirical_density": _fraction(r.empirical_density),
        "predicted_density": _fraction(r.predicted_density),
    }


def cmd_classgroup(args) -> dict:
    kwargs = {} if args.class_cap is None else {"cap": args.class_cap}
    G = class_group(args.d, **kwargs)
    return {"h": G.h, "divisors": list(G.structure().divisors)}


def cmd_kappa(args) -> dict:
    tower = ordertower.OrderTower(args.dk, args.c, args.ell)
    closed, _ = ordertower.kappa_structure(tower, args.d)
    out = {
        "dk": args.dk,
        "ell": args.ell,
        "d": args.d,
        "closed_form": str(closed),
    }
    if args.bruteforce:
        brute = ordertower.kappa_bruteforce(tower, args.d)
        out["brute_force"] = str(brute)
        out["match"] = brute.divisors == closed.divisors
    return out


def cmd_heur(args) -> int | dict:
    kind = args.kind.upper()
    rows = heuristics.scan(args.ell, args.e, kind, args.xmax, args.stride)
    lines = ["x,eligible,hits,ratio"] + [r.csv() for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return {"rows": len(rows), "out": args.out}
    sys.stdout.write(text)
    return 0


def cmd_graph(args) -> dict:
    from .fields import FieldCtx
    from . import isogeny

    F = FieldCtx(args.p, args.k, args.field_cap)
    G = isogeny.build_graph(F, args.ell)
    comps = []
    for comp in G.components():
        cls = isogeny.classify_component(G, comp)
        entry = {"size": len(comp), "flagged": G.component_flagged(comp)}
        if cls.is_volcano:
            entry.update(
                crater=cls.spec.crater, n=cls.spec.n, depth=cls.spec.d
            )
        else:
            entry["crater"] = "NotVolcano"
        comps.append(entry)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(isogeny.to_dot(G) + "\n")
    comps.sort(key=lambda c: (c["size"], c["crater"], c.get("depth", -1), c.get("n", 0)))
    return {"p": args.p, "k": args.k, "ell": args.ell, "vertices": len(G.adj), "components": comps}


def cmd_verify(args) -> dict:
    from .fields import FieldCtx
    from . import isogeny

    V = _spec_from_args(args)
    for D_0 in compatible_orders(V, args.search_cap):
        report = x_bruteforce(D_0, V.ell, V.d, args.k, args.class_cap)
        if report.size == 0:
            continue
        r = primesearch.search(D_0, V.ell, V.d, args.k, args.pmax, args.class_cap)
        for p in r.primes:
            if p ** args.k > args.field_cap:
                continue
            F = FieldCtx(p, args.k, args.field_cap)
            if p == V.ell:
                continue
            G = isogeny.build_graph(F, V.ell)
            comps = []
            for comp in G.components():
                cls = isogeny.classify_component(G, comp)
                comps.append(
                    {
                        "size": len(comp),
                        "flagged": G.component_flagged(comp),
                        "crater": cls.spec.crater if cls.is_volcano else "NotVolcano",
                        "n": cls.spec.n if cls.is_volcano else None,
                        "depth": cls.spec.d if cls.is_volcano else None,
                    }
                )
            comps.sort(key=lambda c: (c["size"], c["crater"]))
            return {
                "appears": isogeny.contains_volcano(G, V),
                "d0": D_0,
                "p": p,
                "components": comps,
            }
    return {"appears": False, "d0": None, "p": None, "components": []}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isovolcano")
    ap.add_argument("--pretty", action="store_true", help="indent JSON output")
    ap.add_argument("--seed", type=int, default=0, help="reserved; all output is deterministic")
    ap.add_argument("--workers", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    def crater_flags(p):
        p.add_argument("--crater", required=True, choices=["I1", "R1", "S1", "R2", "S2", "Sn"])
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--ell", type=int, required=True)
        p.add_argument("--depth", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--search-cap", type=int, default=5000)
        p.add_argument("--class-cap", type=int, default=None)

    p = sub.add_parser("decide", help="verdict for a volcano shape and k")
    crater_flags(p)
    p.add_argument("--constructive", action="store_true")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("search", help="k-explosive primes for a tower")
    p.add_argument("--d0", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pmax", type=int, default=primesearch.DEFAULT_P_MAX)
    p.add_argument("--class-cap", type=int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="end-to-end: find a prime and check the graph")
    crater_flags(p)
    p.add_argument("--pmax", type=int, default=primesearch.DEFAULT_P_MAX)
    p.add_argument("--field-cap", type=int, default=2 * 10**5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classgroup", help="class number and invariant factors")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--class-cap", type=int, default=None)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("kappa", help="tower kernel structure, closed form vs brute force")
    p.add_argument("--dk", type=int, required=True)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bruteforce", action="store_true")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("heur", help="Cohen-Lenstra condition scan (CSV)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--kind", required=True, choices=["i1", "r2", "I1", "R2"])
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--stride", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_heur)

    p = sub.add_parser("graph", help="build and classify an isogeny graph")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--dot", default=None)
    p.add_argument("--field-cap", type=int, default=2 * 10**5)
    p.set_defaults(func=cmd_graph)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.workers < 1:
        ap.error("--workers must be >= 1")
    try:
        out = args.func(args)
    except DomainError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty)
        return 1
    if isinstance(out, dict):
        _emit(out, args.pretty)
    return 0


if __name__ == "__main__":
    sys.exit(main())
