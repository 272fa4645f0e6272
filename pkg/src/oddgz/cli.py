"""Command-line front end.  Every verb is a thin shim over the library."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import infinite as inf
from . import verify as vf
from .action import covariant_module
from .patterns import enumerate_patterns, restriction_table
from .schur import HighestWeight, partition_from_weight, super_character, super_dimension

SUITES = ("relations", "anticommutators", "character", "unitarity", "hwv")


class UsageError(Exception):
    pass


def _hw(text: str | None, square: bool = False) -> HighestWeight:
    if text is None:
        raise UsageError("--hw is required")
    try:
        hw = HighestWeight.parse(text).check()
    except ValueError as e:
        raise UsageError(f"--hw {text!r}: {e}") from None
    if square and (hw.k != hw.n or hw.n < 1):
        raise UsageError(f"--hw {text!r}: need a gl(n|n) weight with n >= 1")
    return hw


def _budget(args) -> vf.Budget:
    try:
        return vf.Budget.from_env(args.budget_dim)
    except ValueError as e:
        raise UsageError(f"--budget-dim: {e}") from None


def _element(text: str | None, n: int) -> tuple[int, int]:
    if text is None:
        raise UsageError("--element is required, e.g. --element=-1,1")
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--element {text!r}: expected two comma-separated indices") from None
    ok = set(range(-n, 0)) | set(range(1, n + 1))
    if a not in ok or b not in ok:
        raise UsageError(f"--element {text!r}: indices must lie in -{n}..-1, 1..{n}")
    return a, b


# --- verbs: each returns (payload, text, exit code) ------------------------------


def cmd_dim(args):
    hw = _hw(args.hw)
    lam = partition_from_weight(hw)
    d = super_dimension(lam, hw.k, hw.n)
    return {"hw": str(hw), "partition": list(lam), "dimension": d}, f"dim V({hw}) = {d}", 0


def cmd_enumerate(args):
    hw = _hw(args.hw, square=True)
    vf.Budget(_budget(args).max_dim, max(hw.n, vf.DEFAULT_MAX_N)).check(hw)
    pats = enumerate_patterns(hw)
    text = "\n\n".join(f"#{t}\n{p.render()}" for t, p in enumerate(pats))
    return {"hw": str(hw), "dimension": len(pats), "patterns": [p.to_json() for p in pats]}, text, 0


def cmd_matrix(args):
    hw = _hw(args.hw, square=True)
    a, b = _element(args.element, hw.n)
    _budget(args).check(hw)
    M = covariant_module(hw)
    op = M.weyl_element(a, b)
    payload = {"hw": str(hw), "element": [a, b], "matrix": op.to_json()}
    lines = [f"E({a},{b}) on V({hw}), dim {op.dim}, {'odd' if op.parity else 'even'}"]
    lines += [f"  ({r:>3},{c:>3})  {v}" for (r, c), v in sorted(op.entries.items())]
    return payload, "\n".join(lines), 0


def cmd_verify(args):
    hw = _hw(args.hw, square=True)
    budget = _budget(args)
    if args.suite != "hwv":
        budget.check(hw)
    rep = vf.run_suite(args.suite, hw, budget, args.threads)
    return _report(rep)


def _report(rep: vf.VerificationReport):
    lines = [rep.summary()]
    lines += [f"  {f['relation']} at {f['where']}: expected {f['expected']}, got {f['got']}" for f in rep.failures]
    return rep.to_json(), "\n".join(lines), 0 if rep.ok else 1


def cmd_branch(args):
    hw = _hw(args.hw, square=True)
    n = hw.n
    rows = [
        {"row": str(HighestWeight(r[:n], r[n:])), "dimension": d} for r, d in restriction_table(hw)
    ]
    total = sum(x["dimension"] for x in rows)
    text = "\n".join(f"{x['row']:>24}  {x['dimension']}" for x in rows) + f"\n{'total':>24}  {total}"
    return {"hw": str(hw), "restrictions": rows, "dimension": total}, text, 0


def cmd_char(args):
    hw = _hw(args.hw)
    ch = super_character(partition_from_weight(hw), hw.k, hw.n)
    terms = [{"exponents": list(e), "multiplicity": c} for e, c in sorted(ch.items())]
    text = "\n".join(f"{' '.join(f'{x:>2}' for x in t['exponents'])}  x{t['multiplicity']}" for t in terms)
    return {"hw": str(hw), "terms": terms}, text, 0


def cmd_identity(args):
    if args.worked:
        rep = vf.check_worked_coefficient_suite(args.samples, args.seed)
    else:
        kind = "interpolation" if args.interpolation else "lagrange"
        if args.n is not None and not 0 <= args.n <= 8:
            raise UsageError(f"--n {args.n}: degree must lie in 0..8")
        rep = vf.check_identity_suite(kind, args.samples, args.seed, n=args.n)
    return _report(rep)


def cmd_infinite(args):
    if args.weight is None:
        raise UsageError("--weight is required, e.g. --weight '1:;1'")
    try:
        m = inf.StableWeight.parse(args.weight)
    except ValueError as e:
        raise UsageError(f"--weight {args.weight!r}: {e}") from None
    n = args.n or 1
    if not 1 <= n <= vf.DEFAULT_MAX_N:
        raise UsageError(f"--n {n}: rank must lie in 1..{vf.DEFAULT_MAX_N}")
    budget = _budget(args)
    budget.check(m.signature(n))
    if args.probe == "truncation":
        rep = inf.check_truncation_consistency(m, n, budget, args.depth)
    elif args.probe == "connectivity":
        rep = inf.connectivity_probe(m, n, budget)
    else:
        p = inf.infinite_highest_weight(m)
        t = inf.truncate(p, n)
        return {"weight": m.to_json(), "pattern": p.to_json(), "truncation": t.to_json()}, t.render(), 0
    return _report(rep)


VERBS = {
    "dim": cmd_dim,
    "enumerate": cmd_enumerate,
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "branch": cmd_branch,
    "char": cmd_char,
    "identity": cmd_identity,
    "infinite": cmd_infinite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget-dim", type=int, default=None, help="max module dimension (default $GZ_ODD_BUDGET or 500)")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="oddgz", description="Odd GZ bases of covariant gl(n|n) modules")
    sub = ap.add_subparsers(dest="verb", required=True)
    hw_help = 'highest weight "m_-n,...,m_-1;m_1,...,m_n"'
    for verb in ("dim", "enumerate", "branch", "char"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("--hw", help=hw_help)
    p = sub.add_parser("matrix", parents=[common])
    p.add_argument("--hw", help=hw_help)
    p.add_argument("--element", help="Weyl element indices a,b (use --element=-1,1)")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--hw", help=hw_help)
    p.add_argument("--suite", choices=SUITES, default="relations")
    p = sub.add_parser("identity", parents=[common])
    which = p.add_mutually_exclusive_group()
    which.add_argument("--lagrange", action="store_true")
    which.add_argument("--interpolation", action="store_true")
    which.add_argument("--worked", action="store_true")
    p.add_argument("--n", type=int, default=None, help="polynomial degree (n+1 nodes)")
    p.add_argument("--samples", type=int, default=100)
    p = sub.add_parser("infinite", parents=[common])
    p.add_argument("--weight", help='stable weight "tail:m_-1,m_-2,...;m_1,m_2,..."')
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--probe", choices=("hwv", "truncation", "connectivity"), default="hwv")
    p.add_argument("--depth", type=int, default=4)
    return ap


def _emit(payload, text, args) -> None:
    out = text if args.format == "text" else json.dumps(payload, indent=2)
    out += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads < 1:
        ap.error("--threads must be at least 1")
    if getattr(args, "samples", 1) < 1:
        ap.error("--samples must be at least 1")
    try:
        payload, text, code = VERBS[args.verb](args)
    except UsageError as e:
        ap.error(str(e))
    except vf.BudgetExceeded as e:
        ap.error(str(e))
    _emit(payload, text, args)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
