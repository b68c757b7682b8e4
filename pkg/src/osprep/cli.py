"""Command line interface: validation suites, weight conversion, spinor
inspection, module characters and decompositions, all with JSON output.

Exit codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import decomp, hwmod, matreal, superpoly, tensor
from .exactfield import format_rational
from .rootsys import odd_reflection_sequence, to_nonstandard, to_standard
from .weights import Context, Weight, casimir_eigenvalue, dominance_checks

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _context(args) -> Context:
    return Context(args.m, args.n)


def _parse_weight(ctx: Context, text: str) -> Weight:
    data = json.loads(text)
    data.setdefault("m", ctx.m)
    data.setdefault("n", ctx.n)
    return Weight.from_json(data, ctx)


def _emit(args, payload) -> None:
    if getattr(args, "format", "json") == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        _print_tree(payload)


def _print_tree(payload, indent=0) -> None:
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in sorted(payload):
            val = payload[key]
            if isinstance(val, (dict, list)):
                print(f"{pad}{key}:")
                _print_tree(val, indent + 1)
            else:
                print(f"{pad}{key}: {val}")
    elif isinstance(payload, list):
        for val in payload:
            if isinstance(val, (dict, list)):
                _print_tree(val, indent + 1)
            else:
                print(f"{pad}- {val}")
    else:
        print(f"{pad}{payload}")


def cmd_validate(args) -> int:
    ctx = _context(args)
    report = matreal.validate(ctx, args.convention, jacobi=not args.skip_jacobi)
    _emit(args, report)
    return 0 if report["ok"] else CHECK_FAILURE


def cmd_reflect(args) -> int:
    ctx = _context(args)
    w = _parse_weight(ctx, args.weight)
    if args.to == "standard":
        out = to_standard(w)
    else:
        out = to_nonstandard(w)
    payload = {
        "input": w.to_json(),
        "direction": args.to,
        "result": out.to_json(),
        "both": {"nonstandard": (w if args.to == "standard" else out).to_json(),
                 "standard": (out if args.to == "standard" else w).to_json()},
        "reflection_sequence": [str(r.weight) for r in odd_reflection_sequence(ctx)],
    }
    _emit(args, payload)
    return 0


def cmd_spinor(args) -> int:
    ctx = _context(args)
    monos = superpoly.basis_up_to(ctx, args.depth, args.part)
    payload = {
        "context": str(ctx),
        "part": args.part,
        "monomials": [
            {"monomial": str(mo), "gamma": list(mo.gamma), "beta": list(mo.beta),
             "weight": superpoly.weight_of(mo, ctx).to_json()}
            for mo in monos
        ],
    }
    _emit(args, payload)
    return 0


def cmd_module(args) -> int:
    ctx = _context(args)
    hw = _parse_weight(ctx, args.hw)
    mod = hwmod.irreducible(hw, args.depth, ctx, args.convention)
    mults = []
    for key, sp in sorted(mod.spaces.items(), key=lambda kv: kv[0], reverse=True):
        if sp.rank:
            mults.append({"weight": mod.weight_of_key[key].to_json(),
                          "multiplicity": sp.rank,
                          "verma_dim": len(sp.words)})
    payload = {
        "context": str(ctx),
        "highest_weight": hw.to_json(),
        "depth": args.depth,
        "finite_dimensional_detected": mod.closed,
        "closing_height": mod.closing_height,
        "total_dim_in_window": mod.total_dim(),
        "weight_multiplicities": mults,
    }
    _emit(args, payload)
    return 0


def cmd_candidates(args) -> int:
    ctx = _context(args)
    hw = _parse_weight(ctx, args.hw)
    cand = decomp.candidates(hw, args.part)
    _emit(args, cand.to_json())
    return 0


def cmd_casimir(args) -> int:
    ctx = _context(args)
    w = _parse_weight(ctx, args.weight)
    payload = {
        "weight": w.to_json(),
        "standard_label": to_standard(w).to_json(),
        "casimir_of_standard_label":
            format_rational(casimir_eigenvalue(to_standard(w))),
        "dominance": dominance_checks(w).to_json(),
    }
    _emit(args, payload)
    return 0


def cmd_decompose(args) -> int:
    ctx = _context(args)
    hw = _parse_weight(ctx, args.hw)
    if args.method == "closed":
        eps = [c for c in hw.eps if c]
        if ctx.d >= 1 and len(eps) <= 1 and not any(hw.delta):
            k = int(hw.eps[0]) if hw.eps and hw.eps[0] else 0
            if k >= 1 and all(c == 0 for c in hw.eps[1:]):
                result = decomp.spinor_times_ke1(ctx, k, args.part)
            else:
                result = decomp.theorem11_decompose(hw, args.part)
        elif ctx.d == 0:
            sp_coeffs = decomp.sp_fundamental_coefficients(hw)
            js = [i for i, c in enumerate(sp_coeffs, 1) if c]
            if len(js) != 1 or sp_coeffs[js[0] - 1] != 1:
                raise ValueError("B(0|n) closed form covers the factors K_{nu_j}")
            result = decomp.spinor_times_ke1(ctx, js[0], args.part)
        else:
            result = decomp.theorem11_decompose(hw, args.part)
        payload = result.to_json()
        payload["method"] = "closed"
        _emit(args, payload)
        return 0
    report = tensor.brute_force_decompose(ctx, hw, part=args.part, depth=args.depth)
    payload = report.to_json()
    payload["method"] = "bruteforce"
    payload["depth"] = args.depth
    if report.candidates_at_boundary:
        payload["warnings"] = [
            f"candidate window at weight {w} touches the depth-{args.depth} "
            f"truncation boundary" for w in report.candidates_at_boundary]
    _emit(args, payload)
    return CHECK_FAILURE if report.character_match is False else 0


def cmd_check(args) -> int:
    ctx_list = [(3, 1), (1, 2), (2, 1)] if args.suite != "lemma3" else []
    results = {"suite": args.suite, "cases": [], "ok": True}

    def record(name, ok, detail=""):
        results["cases"].append({"case": name, "pass": bool(ok), "detail": detail})
        if not ok:
            results["ok"] = False

    if args.suite == "lemma3":
        for (d, n, k, l) in [(1, 1, 2, 1), (2, 1, 3, 1), (2, 2, 2, 2), (3, 1, 2, 2)]:
            rep = decomp.lemma3_reducibility(d, n, k, l)
            hit = (k + l == 2 + 2 * n - 2 * d)
            record(f"lemma3 d={d} n={n} k={k} l={l}",
                   rep["criterion_hit"] == hit,
                   f"differences {sorted(str(v) for v in rep['differences'].values())}")
    elif args.suite in ("theorem8", "theorem9", "theorem10"):
        grid = {
            "theorem8": [((3, 1), 1, "all"), ((3, 1), 2, "all"), ((2, 1), 2, "plus"),
                         ((1, 2), 1, "all"), ((1, 2), 2, "all")],
            "theorem9": [((2, 1), 1, "plus"), ((2, 1), 1, "minus"),
                         ((2, 2), 2, "plus")],
            "theorem10": [],
        }[args.suite]
        for (mn, k, part) in grid:
            ctx = Context(*mn)
            hw = (Weight.eps_basis(ctx, 1).scale(k) if ctx.d >= 1
                  else Weight(ctx, [], [1 if i <= k else 0
                                        for i in range(1, ctx.n + 1)]))
            brute = tensor.brute_force_decompose(ctx, hw, part=part, depth=args.depth)
            closed = decomp.spinor_times_ke1(ctx, k, part)
            same = ({s.hw_nonstandard.key() for s in closed.summands}
                    == {s.hw_nonstandard.key() for s in brute.result.summands}
                    and closed.structure == brute.result.structure
                    and brute.character_match in (True, None))
            record(f"{ctx} k={k} part={part}", same,
                   f"structure {brute.result.structure}")
        if args.suite == "theorem10":
            for mn, eps in [((3, 1), (2,)), ((3, 1), (3,)), ((4, 1), (2, 2))]:
                ctx = Context(*mn)
                mu = Weight(ctx, eps, (0,) * ctx.n)
                parts = ("plus", "minus") if ctx.m % 2 == 0 else ("all",)
                for part in parts:
                    brute = tensor.brute_force_decompose(ctx, mu, part=part,
                                                         depth=args.depth)
                    closed = decomp.theorem11_decompose(mu, part)
                    same = ({s.hw_nonstandard.key() for s in closed.summands}
                            == {s.hw_nonstandard.key() for s in brute.result.summands}
                            and brute.character_match)
                    record(f"{ctx} mu={mu} part={part}", same, "")
    else:
        print(f"unknown suite {args.suite}", file=sys.stderr)
        return USAGE_ERROR
    _emit(args, results)
    return 0 if results["ok"] else CHECK_FAILURE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="osprep",
        description="Exact computations with osp(m|2n) spinor representations "
                    "and their tensor product decompositions.")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, depth_default=6):
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--depth", type=int, default=depth_default)

    p = sub.add_parser("validate", help="matrix-realization relation suites")
    common(p)
    p.add_argument("--convention", choices=("nonstandard", "standard"),
                   default="nonstandard")
    p.add_argument("--skip-jacobi", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("reflect", help="convert labels between conventions")
    common(p)
    p.add_argument("--weight", required=True, help='JSON {"eps": [...], "delta": [...]}')
    p.add_argument("--to", choices=("standard", "nonstandard"), default="standard")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("spinor", help="list spinor monomials with weights")
    common(p)
    p.add_argument("--part", choices=("all", "plus", "minus"), default="all")
    p.set_defaults(func=cmd_spinor)

    p = sub.add_parser("module", help="weight multiplicities of an irreducible quotient")
    common(p)
    p.add_argument("--hw", required=True)
    p.add_argument("--convention", choices=("nonstandard", "standard"),
                   default="nonstandard")
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("candidates", help="possible primitive weights in spinor x K")
    common(p)
    p.add_argument("--hw", required=True)
    p.add_argument("--part", choices=("all", "plus", "minus"), default="all")
    p.set_defaults(func=cmd_candidates)

    p = sub.add_parser("casimir", help="Casimir eigenvalue of a highest weight")
    common(p)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_casimir)

    p = sub.add_parser("decompose", help="spinor x K_hw decomposition")
    common(p)
    p.add_argument("--hw", required=True)
    p.add_argument("--part", choices=("all", "plus", "minus"), default="all")
    p.add_argument("--method", choices=("closed", "bruteforce"), default="closed")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check", help="closed-form vs brute-force oracle suites")
    p.add_argument("--suite", choices=("lemma3", "theorem8", "theorem9", "theorem10"),
                   required=True)
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_check)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    os.environ.setdefault("OSPREP_THREADS", "1")
    try:
        return args.func(args)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
