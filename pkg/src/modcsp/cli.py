"""Command-line interface.

Exit codes: 10 satisfiable, 20 unsatisfiable (or a negative check),
0 informational success, 1 usage error, 2 input error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import horn, lin2, oracle, twosat
from .core import HornInstance, Lin2Instance, TwoSatInstance, eval_side
from .errors import (
    AutoRoundsUnavailable,
    InputError,
    InvalidRounds,
    InvalidTrials,
    ModCspError,
    SizeLimit,
)
from .generators import GENERATORS
from .polyrep import (
    best_nand_rep,
    covering_number,
    is_nand_rep_01,
    is_or_rep_pm1,
    mvf_from_or_poly,
    nand_bbr,
    nand_to_or_pm1,
    nand_trivial,
    or_trivial_pm1,
    residue_indicator_poly,
)
from .reductions import (
    flatten_horn,
    flatten_lin2,
    gadget_3sat_to_horn,
    gadget_3sat_to_lin2,
    random_3sat,
)
from .textio import parse, parse_cnf, parse_poly, serialize, serialize_poly

EXIT_SAT, EXIT_UNSAT, EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_SIZE = 10, 20, 0, 1, 2, 3
JSON_FORMAT = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(out, args, payload: dict, lines: list[str]):
    if getattr(args, "json", False):
        out.write(json.dumps({"format": JSON_FORMAT, **payload}, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _report(out, args, inst, x, extra: dict | None = None) -> int:
    payload = dict(extra or {})
    if x is None:
        payload["status"] = "UNSAT"
        _emit(out, args, payload, ["s UNSATISFIABLE"])
        return EXIT_UNSAT
    value, ok = eval_side(inst.side, x)
    assert ok and inst.is_solution(x)
    payload.update(status="SAT", assignment=list(x), residue=list(value.residues))
    _emit(out, args, payload, [
        "s SATISFIABLE",
        "v " + "".join(str(b) for b in x),
        "r " + " ".join(str(r) for r in value.residues),
    ])
    return EXIT_SAT


def cmd_solve(args, out) -> int:
    inst = parse(_read(args.file))
    rounds = horn.AUTO if args.rounds is None else args.rounds
    if isinstance(inst, HornInstance):
        if args.randomized:
            raise UsageError("--randomized applies to lin2 instances only")
        x = horn.solve(inst, horn.HornSolveConfig(rounds=rounds))
    elif isinstance(inst, Lin2Instance):
        trials = lin2.AUTO if args.trials is None else args.trials
        x = lin2.solve(inst, rounds=rounds, randomized=args.randomized, trials=trials,
                       seed=args.seed, factor=args.dim_bound_factor)
    else:
        x = twosat.solve(inst)
    return _report(out, args, inst, x, {"solver": type(inst).__name__})


def cmd_oracle(args, out) -> int:
    inst = parse(_read(args.file))
    return _report(out, args, inst, oracle.brute_solve(inst), {"solver": "oracle"})


def _moduli(text: str) -> list[int]:
    try:
        mods = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad modulus list {text!r}")
    return mods


def _phi(args):
    if args.cnf:
        return parse_cnf(_read(args.cnf))
    return random_3sat(args.t, args.m, random.Random(args.seed))


def cmd_gen(args, out) -> int:
    if args.what == "random":
        rng = random.Random(args.seed)
        inst = GENERATORS[args.kind](args.n, args.m, _moduli(args.moduli), rng, args.targets)
    elif args.what == "hadamard":
        space = lin2.hadamard_direct_sum(args.d, args.copies)
        from .core import ModularSideConstraint
        from .gf2 import orthogonal_complement
        from .polyrep.poly import indices_of
        eqs = tuple((frozenset(indices_of(w)), 0) for w in orthogonal_complement(space.n, space.basis))
        inst = Lin2Instance(space.n, eqs, ModularSideConstraint.unit(space.n, args.modulus, args.target))
    elif args.what == "3sat-horn":
        phi = _phi(args)
        rep = best_nand_rep(phi.m, args.modulus)
        inst = gadget_3sat_to_horn(phi, args.modulus, rep)
    else:
        phi = _phi(args)
        rep = or_trivial_pm1(phi.m, args.modulus)
        inst = gadget_3sat_to_lin2(phi, args.modulus, rep)
    out.write(serialize(inst))
    return EXIT_OK


def cmd_poly(args, out) -> int:
    if args.action == "build":
        builders = {
            "nand-trivial": lambda: nand_trivial(args.d, args.modulus),
            "nand-bbr": lambda: nand_bbr(args.d, args.modulus),
            "nand-best": lambda: best_nand_rep(args.d, args.modulus),
            "or-trivial": lambda: or_trivial_pm1(args.d, args.modulus),
            "or-from-nand": lambda: nand_to_or_pm1(best_nand_rep(args.d, args.modulus), args.d, args.modulus),
            "indicator": lambda: residue_indicator_poly(args.p, args.ell, args.a, args.d),
        }
        out.write(serialize_poly(builders[args.construction]()))
        return EXIT_OK
    p = parse_poly(_read(args.file))
    if args.action == "check":
        check = is_nand_rep_01 if args.kind == "nand" else is_or_rep_pm1
        d = p.nvars if args.d is None else args.d
        valid = check(p, d, args.modulus)
        _emit(out, args, {"valid": valid, "kind": args.kind, "d": d, "modulus": args.modulus},
              ["valid" if valid else "invalid"])
        return EXIT_OK if valid else EXIT_UNSAT
    if args.action == "cov":
        mode = "greedy" if args.greedy else "exact"
        c = covering_number(p, mode)
        _emit(out, args, {"cov": c, "mode": mode, "sparsity": p.sparsity, "degree": p.degree},
              [f"cov {c}", f"sparsity {p.sparsity}", f"degree {p.degree}"])
        return EXIT_OK
    fam = mvf_from_or_poly(p, args.modulus)
    _emit(out, args, {"size": fam.size, "rank": fam.rank, "verified": fam.verify()},
          [f"size {fam.size}", f"rank {fam.rank}", "verified"])
    return EXIT_OK


def cmd_reduce(args, out) -> int:
    inst = parse(_read(args.file))
    if len(inst.side.allowed) != 1:
        raise InputError("flatten needs a single allowed residue tuple")
    if isinstance(inst, HornInstance):
        res = flatten_horn(inst)
    elif isinstance(inst, Lin2Instance):
        res = flatten_lin2(inst)
    else:
        raise InputError("flatten applies to horn and lin2 instances")
    out.write(serialize(res))
    return EXIT_OK


def selftest(rounds: int = 40, seed: int = 1) -> list[str]:
    """Solver/oracle agreement on small random instances; returns failures."""
    rng = random.Random(seed)
    failures = []
    for i in range(rounds):
        for kind, gen in GENERATORS.items():
            mods = [rng.choice([2, 3, 4, 5])] if kind != "2sat" else rng.choice([[2], [3], [2, 3]])
            inst = gen(rng.randint(1, 7), rng.randint(0, 8), mods, rng, rng.randint(1, 2))
            truth = oracle.brute_solve(inst)
            if kind == "horn":
                got = horn.solve(inst)
            elif kind == "lin2":
                got = lin2.solve(inst)
            else:
                got = twosat.solve(inst)
            if (truth is None) != (got is None):
                failures.append(f"{kind} #{i}: solver {got} vs oracle {truth}")
    return failures


def cmd_selftest(args, out) -> int:
    failures = selftest()
    for f in failures:
        out.write(f + "\n")
    out.write("selftest ok\n" if not failures else f"selftest failed ({len(failures)})\n")
    return EXIT_OK if not failures else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    ap = _Parser(prog="modcsp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("solve", parents=[common], help="solve an instance file")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--rounds", type=int, help="explicit round count R")
    grp.add_argument("--auto", action="store_true", help="derive rounds from the modulus (default)")
    s.add_argument("--randomized", action="store_true", help="sampling solver (lin2)")
    s.add_argument("--trials", type=int, help="number of samples (default derived)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dim-bound-factor", type=int, default=lin2.DEFAULT_BOUND_FACTOR)
    s.add_argument("file")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", parents=[common], help="brute-force an instance file")
    o.add_argument("file")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="generate an instance")
    gsub = g.add_subparsers(dest="what", parser_class=_Parser)
    gsub.required = True
    gr = gsub.add_parser("random")
    gr.add_argument("--kind", choices=sorted(GENERATORS), required=True)
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--m", type=int, required=True)
    gr.add_argument("--moduli", default="2", help="comma-separated component moduli")
    gr.add_argument("--targets", type=int, default=1, help="size of the allowed set")
    gr.add_argument("--seed", type=int, default=0)
    gh = gsub.add_parser("hadamard")
    gh.add_argument("--d", type=int, required=True)
    gh.add_argument("--copies", type=int, default=1)
    gh.add_argument("--modulus", type=int, required=True)
    gh.add_argument("--target", type=int, default=0)
    for name in ("3sat-horn", "3sat-lin2"):
        gg = gsub.add_parser(name)
        gg.add_argument("--cnf", help="DIMACS CNF file (otherwise random)")
        gg.add_argument("--t", type=int, default=4)
        gg.add_argument("--m", type=int, default=4)
        gg.add_argument("--seed", type=int, default=0)
        gg.add_argument("--modulus", type=int, required=True)
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("poly", help="polynomial representations")
    psub = p.add_subparsers(dest="action", parser_class=_Parser)
    psub.required = True
    pb = psub.add_parser("build")
    pb.add_argument("construction", choices=["nand-trivial", "nand-bbr", "nand-best", "or-trivial",
                                             "or-from-nand", "indicator"])
    pb.add_argument("--d", type=int, required=True, help="number of variables")
    pb.add_argument("--modulus", type=int, default=2)
    pb.add_argument("--p", type=int, default=2, help="prime (indicator)")
    pb.add_argument("--ell", type=int, default=1, help="exponent (indicator)")
    pb.add_argument("--a", type=int, default=0, help="residue (indicator)")
    pc = psub.add_parser("check", parents=[common])
    pc.add_argument("file")
    pc.add_argument("--kind", choices=["nand", "or"], required=True)
    pc.add_argument("--modulus", type=int, required=True)
    pc.add_argument("--d", type=int)
    pv = psub.add_parser("cov", parents=[common])
    pv.add_argument("file")
    pv.add_argument("--greedy", action="store_true")
    pm = psub.add_parser("mvf", parents=[common])
    pm.add_argument("file")
    pm.add_argument("--modulus", type=int, required=True)
    p.set_defaults(func=cmd_poly)

    r = sub.add_parser("reduce", help="instance reductions")
    rsub = r.add_subparsers(dest="reduction", parser_class=_Parser)
    rsub.required = True
    rf = rsub.add_parser("flatten")
    rf.add_argument("file")
    r.set_defaults(func=cmd_reduce)

    t = sub.add_parser("selftest", help="quick solver/oracle agreement check")
    t.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (AutoRoundsUnavailable, InvalidRounds, InvalidTrials) as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SizeLimit as exc:
        err.write(f"size cap exceeded: {exc}\n")
        return EXIT_SIZE
    except (InputError, ModCspError, ValueError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())


def main_entry() -> None:
    sys.exit(main())
