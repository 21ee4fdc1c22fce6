"""Command-line entry point: ``permstruct {info,factorize,verify,tower}``.

Exit codes: 0 success, 1 a verification failed, 2 bad input,
3 budget exceeded, 4 unexpected internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import corpus_group
from .errors import BudgetExceeded, PermStructError
from .factorize import find_coprime_factorizations
from .group import EnumerationBudget, PermGroup, random_seed, read_group, write_group
from .lab import (
    TowerSpec,
    hall_pair_for_tower,
    replay_theorem1,
    tower,
    tower_lambda_evidence,
    validate_certificate,
    verify_cjs_inequalities,
    verify_corollary2,
    verify_theorem1_bound,
)
from .structure import invariant_report, nonsoluble_length

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _source(args) -> PermGroup:
    if bool(args.name) == bool(args.file):
        raise InputError("give exactly one of --name or --file")
    if args.name:
        return corpus_group(args.name)
    return read_group(args.file)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


def cmd_info(args, budget) -> int:
    G = _source(args)
    rep = invariant_report(G, budget)
    d = rep.to_dict()
    lines = [f"order {rep.order}", f"degree {rep.degree}", f"soluble {str(rep.is_soluble).lower()}"]
    if rep.is_soluble:
        lines += [f"derived_length {rep.derived_length}", f"fitting_height {rep.fitting_height}"]
    lines += [
        f"gf_height {rep.gf_height}",
        f"nonsoluble_length {rep.nonsoluble_length}",
        f"|F| {rep.fitting.order()}  |E| {rep.layer.order()}  |F*| {rep.gf.order()}  |S| {rep.radical.order()}",
        f"simple_factor_count {rep.simple_factor_count}",
    ]
    _emit(args, d, lines)
    return EXIT_OK


def cmd_factorize(args, budget) -> int:
    G = _source(args)
    if not args.coprime:
        raise InputError("only coprime factorizations are supported; pass --coprime")
    recs = find_coprime_factorizations(G, budget)
    lines = [f"{len(recs)} coprime factorizations of a group of order {G.order()}"]
    for r in recs:
        lines.append(f"|A| = {r.a_order}  A = <{', '.join(map(str, r.A.generators))}>"
                     f"   |B| = {r.b_order}  B = <{', '.join(map(str, r.B.generators))}>")
    _emit(args, {"group_order": G.order(), "records": [r.to_dict() for r in recs]}, lines)
    return EXIT_OK


def cmd_verify(args, budget) -> int:
    G = _source(args)
    if not args.A or not args.B:
        raise InputError("verify needs -A and -B group files")
    A, B = read_group(args.A), read_group(args.B)
    payload: dict = {"theorem": args.theorem}
    lines: list[str] = []
    code = EXIT_OK
    if args.replay is not None:
        # the replay degrades to a partial certificate instead of raising
        cert = replay_theorem1(G, A, B, budget, jobs=args.jobs)
        problems = validate_certificate(cert)
        Path(args.replay).write_text(json.dumps(cert.to_dict(), indent=2, ensure_ascii=False), encoding="utf-8")
        payload.update(certificate=args.replay, certificate_problems=problems,
                       certificate_complete=cert.is_complete())
        lines.append(f"certificate written to {args.replay}: lambda {cert.observed_lambda}, "
                     f"bound {cert.claimed_bound}, {len(problems)} problems")
        lines.extend(problems)
        if problems:
            code = EXIT_FAILED
        elif not cert.is_complete():
            lines.append("certificate incomplete: budget exceeded in some node")
            code = EXIT_BUDGET
    try:
        ok = _check(args.theorem, G, A, B, budget, payload, lines)
    except BudgetExceeded as e:
        lines.append(f"budget exceeded: {e}")
        payload["budget_exceeded"] = str(e)
        _emit(args, payload, lines)
        return EXIT_FAILED if code == EXIT_FAILED else EXIT_BUDGET
    payload["ok"] = ok
    _emit(args, payload, lines)
    if not ok:
        return EXIT_FAILED
    return code


def _check(theorem, G, A, B, budget, payload: dict, lines: list[str]) -> bool:
    if theorem == "t1":
        res = verify_theorem1_bound(G, A, B, budget)
        payload.update({"lambda": res.value, "bound": res.bound})
        lines.insert(0, f"lambda {res.value} <= bound {res.bound}: {'ok' if res.ok else 'FAILED'}")
        return res.ok
    if theorem == "cjs":
        res = verify_cjs_inequalities(G, A, B, budget)
        payload.update({"h_G": res.h_G, "h_A": res.h_A, "h_B": res.h_B, "d_B": res.d_B,
                        "general": res.general, "odd": res.odd, "nilpotent": res.nilpotent})
        lines[:0] = [f"h(G) {res.h_G}  h(A) {res.h_A}  h(B) {res.h_B}  d(B) {res.d_B}",
                     f"general {res.general}  odd {res.odd}  nilpotent {res.nilpotent}: "
                     f"{'ok' if res.ok() else 'FAILED'}"]
        return res.ok()
    res = verify_corollary2(G, A, B, budget)
    payload.update({"gf_height": res.value, "bound": res.bound})
    lines.insert(0, f"h* {res.value} <= bound {res.bound}: {'ok' if res.ok else 'FAILED'}")
    return res.ok


def cmd_tower(args, budget) -> int:
    k = args.height
    if k is None or k < 1:
        raise InputError("--height must be a positive integer")
    spec = TowerSpec(k)
    if args.emit == "group":
        path = f"tower_h{k}.grp"
        write_group(tower(spec), path)
        _emit(args, {"height": k, "degree": spec.degree, "file": path}, [f"wrote {path}"])
        return EXIT_OK
    if args.emit == "hall":
        A, B = hall_pair_for_tower(spec)
        pa, pb = f"tower_h{k}_A.grp", f"tower_h{k}_B.grp"
        write_group(A, pa)
        write_group(B, pb)
        _emit(args, {"height": k, "a_order": A.order(), "b_order": B.order(), "files": [pa, pb]},
              [f"wrote {pa} (order {A.order()}) and {pb} (order {B.order()})"])
        return EXIT_OK
    if k == 1:
        lam, _ = nonsoluble_length(tower(spec), budget)
        payload = {"height": 1, "lambda_lower": lam, "lambda_upper": lam}
        _emit(args, payload, [f"lambda {lam}"])
    else:
        ev = tower_lambda_evidence(spec)
        payload = {"height": k, "lambda_lower": ev.lower, "lambda_upper": ev.upper,
                   "checks": ev.checks, "series_orders": [str(o) for o in ev.series_orders], "notes": ev.notes}
        _emit(args, payload, [f"lambda in [{ev.lower}, {ev.upper}]"] + [f"{n}: {v}" for n, v in ev.checks.items()])
        if not all(ev.checks.values()):
            return EXIT_FAILED
    Path(f"tower_h{k}_lambda.json").write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permstruct", description="Structure of finite permutation groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized internals")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for independent branches")
    common.add_argument("--max-elements", type=int, default=2_000_000)
    common.add_argument("--max-index", type=int, default=200_000)
    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--name", help="named group, e.g. A5, S4, SL25, A5wrC2")
    src.add_argument("--file", help="group file")

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common, src], help="invariant report")
    f = sub.add_parser("factorize", parents=[common, src], help="coprime factorizations")
    f.add_argument("--coprime", action="store_true")
    v = sub.add_parser("verify", parents=[common, src], help="check a bound on G = AB")
    v.add_argument("-A", help="group file for A")
    v.add_argument("-B", help="group file for B")
    v.add_argument("--theorem", choices=["t1", "cjs", "cor2"], default="t1")
    v.add_argument("--replay", nargs="?", const="certificate.json", default=None,
                   help="also replay the inductive argument and write the certificate JSON")
    t = sub.add_parser("tower", parents=[common], help="A5 wreath towers")
    t.add_argument("--height", type=int, required=True)
    t.add_argument("--emit", choices=["group", "hall", "lambda"], default="group")
    return p


_COMMANDS = {"info": cmd_info, "factorize": cmd_factorize, "verify": cmd_verify, "tower": cmd_tower}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        budget = EnumerationBudget(args.max_elements, args.max_index)
        with random_seed(args.seed):
            return _COMMANDS[args.command](args, budget)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (PermStructError, InputError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
