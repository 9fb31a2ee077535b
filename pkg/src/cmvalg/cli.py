"""Command-line front end; every subcommand wraps one library call.

Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input
error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cmv, logic, mcnaughton, modules, mv, structure
from .errors import (
    CmvalgError,
    FormulaSyntaxError,
    InternalInvariantError,
    LawViolationError,
    MalformedTableError,
    NotAHomomorphismError,
    NotAnIdealError,
    PwlError,
    SizeBoundError,
)
from .serialize import (
    algebra_to_dict,
    dump_json,
    load_algebra,
    load_pwl,
    pwl_to_dict,
)

DEFAULT_SEED = 2024


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        sys.stdout.write(dump_json(payload))
    else:
        for line in text_lines:
            print(line)


def _write_or_print(args, payload: dict) -> None:
    text = dump_json(payload)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _indices(text: str) -> list:
    if not text.strip():
        return []
    return [int(t) for t in text.split(",")]


def _load_cmv(path: str) -> cmv.FiniteCmvAlgebra:
    alg = load_algebra(path)
    if not isinstance(alg, cmv.FiniteCmvAlgebra):
        raise MalformedTableError(f"{path}: expected a cmv algebra file")
    return alg


def _load_mv(path: str) -> mv.FiniteMvAlgebra:
    alg = load_algebra(path)
    if isinstance(alg, cmv.FiniteCmvAlgebra):
        raise MalformedTableError(f"{path}: expected an mv algebra file")
    return alg


def _logic_target(spec: str):
    if spec == "mcnaughton":
        return mcnaughton.MCNAUGHTON
    return _load_cmv(spec)


# --- handlers ---------------------------------------------------------------

def cmd_validate(args) -> int:
    alg = load_algebra(args.file)     # raises LawViolationError -> exit 1
    kind = "cmv" if isinstance(alg, cmv.FiniteCmvAlgebra) else "mv"
    payload = {"file": args.file, "kind": kind, "size": alg.size,
               "valid": True,
               "trivial": alg.is_trivial}
    _emit(args, payload, [f"{args.file}: valid {kind} algebra, "
                          f"size {alg.size}"])
    return 0


def cmd_chain(args) -> int:
    alg = mv.lukasiewicz_chain(args.n)
    _write_or_print(args, algebra_to_dict(alg))
    return 0


def cmd_funcalg(args) -> int:
    base = _load_mv(args.file)
    if args.preserve is not None:
        alg = cmv.restricted_function_cmv(base, _indices(args.preserve),
                                          max_cells=args.max_cells)
    else:
        alg = cmv.function_cmv(base, max_cells=args.max_cells)
    _write_or_print(args, algebra_to_dict(alg))
    return 0


def cmd_tilde(args) -> int:
    base = _load_mv(args.file)
    alg = cmv.tilde_closure(base, max_cells=args.max_cells)
    _write_or_print(args, algebra_to_dict(alg))
    return 0


def cmd_cayley(args) -> int:
    alg = _load_cmv(args.file)
    emb = cmv.cayley_embed(alg, max_cells=args.max_cells)
    payload = {"size": alg.size, "maps": [list(m) for m in emb.maps],
               "image_size": emb.image.size, "injective": True}
    _emit(args, payload,
          [f"Cayley embedding verified; image has {emb.image.size} maps"]
          + [f"  {a} -> {list(m)}" for a, m in enumerate(emb.maps)])
    return 0


def cmd_endos(args) -> int:
    base = _load_mv(args.file)
    monoid = cmv.endo_monoid(base)
    payload = {"count": len(monoid.maps),
               "maps": [list(m) for m in monoid.maps],
               "identity_index": monoid.identity_index}
    _emit(args, payload,
          [f"{len(monoid.maps)} MV-endomorphisms"]
          + [f"  {list(m)}" for m in monoid.maps])
    return 0


def cmd_enumerate(args) -> int:
    result = cmv.enumerate_cmv(args.size)
    payload = {
        "size": args.size,
        "count": len(result.algebras),
        "trivial_reported_separately": result.trivial is not None,
        "algebras": [algebra_to_dict(a) for a in result.algebras],
    }
    _emit(args, payload,
          [f"size {args.size}: {len(result.algebras)} CMV-algebra(s) "
           f"up to isomorphism"
           + (" (plus the trivial one)" if result.trivial is not None else "")])
    return 0


def cmd_ideals(args) -> int:
    alg = load_algebra(args.file)
    if isinstance(alg, cmv.FiniteCmvAlgebra):
        reports = [structure.classify_subset(alg, i.members)
                   for i in mv.enumerate_mv_ideals(alg.mv)]
        payload = {"kind": "cmv", "ideals": [
            {"members": sorted(r.subset), "mv": r.is_mv_ideal,
             "diamond": r.is_diamond_ideal, "cmv": r.is_cmv_ideal}
            for r in reports]}
        lines = [f"{len(reports)} MV-ideal(s) of the reduct"]
        for r in reports:
            lines.append(f"  {sorted(r.subset)} diamond={r.is_diamond_ideal} "
                         f"cmv={r.is_cmv_ideal}")
    else:
        ideals = mv.enumerate_mv_ideals(alg)
        payload = {"kind": "mv", "ideals": [
            {"members": sorted(i.members), "prime": i.prime,
             "maximal": i.maximal} for i in ideals]}
        lines = [f"{len(ideals)} MV-ideal(s)"]
        for i in ideals:
            lines.append(f"  {sorted(i.members)} prime={i.prime} "
                         f"maximal={i.maximal}")
    _emit(args, payload, lines)
    return 0


def cmd_classify_subset(args) -> int:
    alg = _load_cmv(args.file)
    report = structure.classify_subset(alg, _indices(args.subset))
    payload = {"subset": sorted(report.subset),
               "is_mv_ideal": report.is_mv_ideal,
               "is_diamond_ideal": report.is_diamond_ideal,
               "is_cmv_ideal": report.is_cmv_ideal,
               "failure": list(report.failure) if report.failure else None}
    _emit(args, payload, [f"mv={report.is_mv_ideal} "
                          f"diamond={report.is_diamond_ideal} "
                          f"cmv={report.is_cmv_ideal} "
                          f"failure={report.failure}"])
    return 0


def cmd_quotient(args) -> int:
    alg = load_algebra(args.file)
    members = _indices(args.ideal)
    if isinstance(alg, cmv.FiniteCmvAlgebra):
        q = structure.quotient_cmv(alg, members)
    else:
        q = mv.quotient_mv(alg, members)
    payload = {"algebra": algebra_to_dict(q.algebra),
               "projection": q.projection.tolist()}
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(payload["algebra"]))
        print(f"wrote {args.out}")
        return 0
    _emit(args, payload, [f"quotient size {q.algebra.size}",
                          f"projection {q.projection.tolist()}"])
    return 0


def cmd_simple(args) -> int:
    alg = _load_cmv(args.file)
    ideals = structure.enumerate_cmv_ideals(alg)
    simple = structure.is_simple_cmv(alg)
    payload = {"simple": simple, "cmv_ideal_count": len(ideals),
               "ideals": [sorted(r.subset) for r in ideals]}
    _emit(args, payload, [f"simple={simple} ({len(ideals)} CMV-ideal(s))"])
    return 0 if simple else 1


def cmd_stabilizer(args) -> int:
    alg = _load_cmv(args.file)
    if args.constants:
        subset = [int(k) for k in cmv.constants_of(alg)]
    elif args.boolean_constants:
        subset = [alg.mv.zero, alg.mv.one]
    else:
        subset = _indices(args.subalgebra)
    report = structure.stabilizer_and_annihilator(alg, subset)
    s, j, q = report.sizes
    payload = {"subalgebra": sorted(report.subalgebra_members),
               "stabilizer_size": s, "annihilator_size": j,
               "quotient_size": q,
               "quotient": algebra_to_dict(report.quotient)}
    _emit(args, payload,
          [f"|S_B| = {s}, |J| = {j}, |S_B/J| = {q}"])
    return 0


def cmd_mcn(args) -> int:
    if args.mcn_cmd == "eval":
        f = load_pwl(args.function)
        val = mcnaughton.pwl_eval(f, Fraction(args.at))
        _emit(args, {"value": str(val)}, [str(val)])
        return 0
    if args.mcn_cmd == "op":
        f = load_pwl(args.function)
        g = load_pwl(args.function2) if args.function2 else None
        result = mcnaughton.pwl_pointwise(args.op, f, g)
        _write_or_print(args, pwl_to_dict(result))
        return 0
    if args.mcn_cmd == "compose":
        f = load_pwl(args.function)
        g = load_pwl(args.function2)
        _write_or_print(args, pwl_to_dict(mcnaughton.pwl_compose(f, g)))
        return 0
    if args.mcn_cmd == "member":
        f = load_pwl(args.function)
        cls = mcnaughton.membership(f)
        payload = {"in_m1": cls.in_m1, "in_tilde_q": cls.in_tilde_q,
                   "boundary_ideal": mcnaughton.boundary_ideal_member(f),
                   "germ_ideal": mcnaughton.germ_ideal_member(f)}
        _emit(args, payload, [f"{k}={v}" for k, v in payload.items()])
        return 0
    if args.mcn_cmd == "plot":
        f = load_pwl(args.function)
        n = args.resolution
        for k in range(n + 1):
            x = Fraction(k, n)
            sys.stdout.write(f"{x}\t{mcnaughton.pwl_eval(f, x)}\n")
        return 0
    raise MalformedTableError(f"unknown mcn subcommand {args.mcn_cmd!r}")


def cmd_module(args) -> int:
    if args.module_cmd == "check":
        alg = _load_cmv(args.algebra)
        action = modules.canonical_module(args.kind, alg, k=args.k)
        payload = {"kind": args.kind, "scalars": alg.size,
                   "carrier": action.carrier.size, "valid": True}
        _emit(args, payload,
              [f"{args.kind}: valid module, carrier size "
               f"{action.carrier.size}"])
        return 0
    if args.module_cmd == "a4":
        carrier = _load_mv(args.algebra)
        report = modules.admits_a4_module(carrier)
        payload = {"admits": report.admits, "unique": report.unique,
                   "failure": list(report.failure) if report.failure else None}
        _emit(args, payload, [f"admits={report.admits}"])
        return 0 if report.admits else 1
    raise MalformedTableError(f"unknown module subcommand {args.module_cmd!r}")


def cmd_logic(args) -> int:
    if args.logic_cmd == "match":
        formula = logic.parse_formula(args.formula)
        matches = logic.match_axiom(formula)
        payload = {"matches": [
            {"axiom": ax, "bindings": {k: logic.format_formula(b)
                                       for k, b in sorted(bnd.items())}}
            for ax, bnd in matches]}
        _emit(args, payload,
              [f"AX{ax} {({k: logic.format_formula(b) for k, b in sorted(bnd.items())})}"
               for ax, bnd in matches] or ["no axiom matches"])
        return 0
    if args.logic_cmd == "prove":
        with open(args.proof, "r", encoding="utf-8") as fh:
            text = fh.read()
        if args.proof.endswith(".json"):
            proof = logic.proof_from_json(json.loads(text))
        else:
            proof = logic.parse_proof(text)
        result = logic.check_proof(proof, infer_bindings=args.infer)
        payload = {"accepted": result.accepted,
                   "failed_step": result.failed_step,
                   "reason": result.reason,
                   "conclusion": (logic.format_formula(result.conclusion)
                                  if result.conclusion else None)}
        lines = ([f"accepted; conclusion: {payload['conclusion']}"]
                 if result.accepted
                 else [f"rejected at step {result.failed_step}: "
                       f"{result.reason}"])
        _emit(args, payload, lines)
        return 0 if result.accepted else 1
    target = _logic_target(args.algebra)
    formula = logic.parse_formula(args.formula)
    if args.logic_cmd == "eval":
        val = logic.evaluate(target, formula)
        if isinstance(target, mcnaughton.McNaughtonAlgebra):
            payload = pwl_to_dict(val)
            _emit(args, payload, [repr(val)])
        else:
            payload = {"element": int(val), "name": target.mv.names[val]}
            _emit(args, payload, [target.mv.names[val]])
        return 0
    if args.logic_cmd == "taut":
        verdict = logic.is_tautology(target, formula)
        _emit(args, {"tautology": verdict}, [f"tautology={verdict}"])
        return 0 if verdict else 1
    if args.logic_cmd == "equiv":
        other = logic.parse_formula(args.formula2)
        verdict = logic.semantic_equiv(target, formula, other)
        _emit(args, {"equivalent": verdict}, [f"equivalent={verdict}"])
        return 0 if verdict else 1
    raise MalformedTableError(f"unknown logic subcommand {args.logic_cmd!r}")


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmvalg",
        description="Finite CMV-algebras, McNaughton functions and the "
                    "one-variable substitution logic.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for sampled checks (fixed default)")
    parser.add_argument("--max-cells", type=int, default=mv.DEFAULT_MAX_CELLS,
                        help="table-cell budget for constructions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("chain", help="emit the n+1 element chain")
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("funcalg", help="function algebra over an MV file")
    p.add_argument("file")
    p.add_argument("--preserve", help="indices of a subalgebra the maps "
                                      "must send into itself")
    p.add_argument("--out")
    p.set_defaults(func=cmd_funcalg)

    p = sub.add_parser("tilde", help="closure of constants plus identity")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tilde)

    p = sub.add_parser("cayley", help="verify the Cayley-style embedding")
    p.add_argument("file")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("endos", help="enumerate MV-endomorphisms")
    p.add_argument("file")
    p.set_defaults(func=cmd_endos)

    p = sub.add_parser("enumerate", help="CMV-algebras up to isomorphism")
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("ideals", help="enumerate ideals of an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("classify-subset", help="ideal conditions of a subset")
    p.add_argument("file")
    p.add_argument("--subset", required=True)
    p.set_defaults(func=cmd_classify_subset)

    p = sub.add_parser("quotient", help="quotient by an ideal")
    p.add_argument("file")
    p.add_argument("--ideal", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("simple", help="simplicity verdict (exit 1 if not)")
    p.add_argument("file")
    p.set_defaults(func=cmd_simple)

    p = sub.add_parser("stabilizer", help="S_B, annihilator and quotient")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--subalgebra", help="comma separated indices")
    group.add_argument("--constants", action="store_true",
                       help="B = all constants")
    group.add_argument("--boolean-constants", action="store_true",
                       help="B = {0, 1}")
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("mcn", help="McNaughton function operations")
    msub = p.add_subparsers(dest="mcn_cmd", required=True)
    q = msub.add_parser("eval")
    q.add_argument("--function", required=True)
    q.add_argument("--at", required=True, help="rational like 3/7")
    q = msub.add_parser("op")
    q.add_argument("--op", required=True,
                   choices=("oplus", "odot", "vee", "wedge", "ominus",
                            "imp", "neg"))
    q.add_argument("--function", required=True)
    q.add_argument("--function2")
    q.add_argument("--out")
    q = msub.add_parser("compose")
    q.add_argument("--function", required=True)
    q.add_argument("--function2", required=True)
    q.add_argument("--out")
    q = msub.add_parser("member")
    q.add_argument("--function", required=True)
    q = msub.add_parser("plot")
    q.add_argument("--function", required=True)
    q.add_argument("--resolution", type=int, default=64)
    p.set_defaults(func=cmd_mcn)

    p = sub.add_parser("module", help="module constructions and checks")
    msub = p.add_subparsers(dest="module_cmd", required=True)
    q = msub.add_parser("check")
    q.add_argument("--kind", required=True,
                   choices=("reduct", "evaluation", "constants", "power",
                            "restriction"))
    q.add_argument("--algebra", required=True)
    q.add_argument("--k", type=int, default=2)
    q = msub.add_parser("a4")
    q.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("logic", help="formula evaluation and proof checking")
    lsub = p.add_subparsers(dest="logic_cmd", required=True)
    for name in ("eval", "taut"):
        q = lsub.add_parser(name)
        q.add_argument("--algebra", required=True,
                       help="cmv file or the word 'mcnaughton'")
        q.add_argument("--formula", required=True)
    q = lsub.add_parser("match")
    q.add_argument("--formula", required=True)
    q = lsub.add_parser("prove")
    q.add_argument("--proof", required=True)
    q.add_argument("--infer", action="store_true",
                   help="infer axiom bindings instead of requiring them")
    q = lsub.add_parser("equiv")
    q.add_argument("--algebra", required=True)
    q.add_argument("--formula", required=True)
    q.add_argument("--formula2", required=True)
    p.set_defaults(func=cmd_logic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    try:
        return args.func(args)
    except LawViolationError as exc:
        print(f"law violation: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MalformedTableError, SizeBoundError, NotAnIdealError,
            NotAHomomorphismError, PwlError, FormulaSyntaxError,
            json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 3
    except CmvalgError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
