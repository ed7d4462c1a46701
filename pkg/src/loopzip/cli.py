"""Batch front door: verification suites, censuses, posets, decompositions.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or budget error.
All output is deterministic given the flags and the seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .coset import ClassContext
from .errors import BudgetExceeded, LoopZipError
from .gf import FieldSpec
from .grpdata import Cocharacter
from .matring import Mat, snf_dvr
from .orbits import ActionSpec, enumerate_orbits
from .suites import SUITES, run_suites
from .weyl import CosetPoset
from .witt import ghost_selftest

_SUPPORTED_Q = (2, 3, 4, 5, 8, 9, 25)


def _parse_mu(text: str) -> Cocharacter:
    try:
        weights = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad weight list {text!r}") from exc
    return Cocharacter(weights)


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="loopzip",
        description="exact loop-group double-coset verification over small finite fields",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, mu_required=True):
        p.add_argument("--n", type=int, default=None, help="matrix size (inferred from --mu)")
        p.add_argument("--q", type=int, default=2, choices=_SUPPORTED_Q)
        if mu_required:
            p.add_argument("--mu", required=True, help="weights, e.g. 1,0")
        p.add_argument("--prec", type=int, default=6)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tau", type=int, default=1, help="Frobenius power for twisted actions")
        p.add_argument("--out", default=None)
        p.add_argument("--format", default=None, choices=("json", "csv", "dot"))

    pv = sub.add_parser("verify", help="run verification suites")
    common(pv)
    pv.add_argument("--suite", required=True,
                    choices=tuple(SUITES) + ("all",))
    pv.add_argument("--samples", type=int, default=100)

    po = sub.add_parser("orbits", help="orbit census as CSV")
    common(po)
    po.add_argument("--action", required=True,
                    choices=("zip-normal", "zip-frobenius", "partial-frobenius",
                             "sigma-conj", "class-census"))

    pc = sub.add_parser("cartan", help="decompose a JSON matrix from standard input")
    pc.add_argument("--out", default=None)

    pp = sub.add_parser("poset", help="coset order as a DOT Hasse diagram")
    pp.add_argument("--n", type=int, default=None)
    pp.add_argument("--mu", required=True)
    pp.add_argument("--out", default=None)
    pp.add_argument("--format", default="dot", choices=("dot", "json"))

    pw = sub.add_parser("witt-selftest", help="ghost-oracle pass rate")
    pw.add_argument("--q", type=int, default=2, help="prime p of the Witt ring")
    pw.add_argument("--prec", type=int, default=4, help="Witt length N")
    pw.add_argument("--samples", type=int, default=500)
    pw.add_argument("--seed", type=int, default=0)
    pw.add_argument("--out", default=None)
    return ap


def _check_n(args, mu: Cocharacter) -> None:
    if args.n is not None and args.n != mu.n:
        raise ValueError(f"--n {args.n} contradicts --mu of length {mu.n}")


def _flat_str(flat) -> str:
    return ";".join(str(c) for c in flat)


def cmd_verify(args) -> int:
    if args.format == "dot":
        raise ValueError("verify reports are json or csv")
    mu = _parse_mu(args.mu)
    _check_n(args, mu)
    names = tuple(SUITES) if args.suite == "all" else (args.suite,)
    cfg = {
        "n": mu.n,
        "q": args.q,
        "mu": list(mu.weights),
        "prec": args.prec,
        "seed": args.seed,
        "samples": args.samples,
        "tau": args.tau,
    }
    report = run_suites(names, cfg)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["suite", "check", "passed"])
        for check in report["checks"]:
            writer.writerow([check["suite"], check["name"], check["passed"]])
        _write_out(buf.getvalue(), args.out)
    else:
        _write_out(json.dumps(report, sort_keys=True, indent=2) + "\n", args.out)
    return 0 if report["passed"] else 1


def cmd_orbits(args) -> int:
    if args.format == "dot":
        raise ValueError("orbit censuses are csv or json")
    mu = _parse_mu(args.mu)
    _check_n(args, mu)
    if args.action == "class-census":
        spec = FieldSpec.for_q(args.q)
        ctx = ClassContext.get(mu, spec)
        rows = [
            {"mu": list(mu.weights), "q": args.q, "rep_g": list(g),
             "rep_h": list(h), "orbit_size": size}
            for (g, h), size in sorted(ctx.orbits.items())
        ]
        if args.format == "json":
            _write_out(json.dumps({"schema": 1, "census": rows}, sort_keys=True,
                                  indent=2) + "\n", args.out)
            return 0
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["mu", "q", "rep_g", "rep_h", "orbit_size"])
        for row in rows:
            writer.writerow([",".join(map(str, row["mu"])), row["q"],
                             _flat_str(row["rep_g"]), _flat_str(row["rep_h"]),
                             row["orbit_size"]])
        _write_out(buf.getvalue(), args.out)
        return 0
    part = enumerate_orbits(ActionSpec(args.action, mu, args.q, args.tau))
    if args.format == "json":
        rows = [
            {"rep": list(rep[0]) + list(rep[1]) if args.action == "sigma-conj"
             else list(rep), "size": size, "members_hash": digest}
            for rep, size, digest in part.orbits
        ]
        doc = {"schema": 1, "action": args.action, "mu": list(mu.weights),
               "q": args.q, "tau": args.tau, "total": part.total,
               "acting_order": part.acting_order, "orbits": rows}
        _write_out(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["action", "mu", "q", "rep", "size"])
    for rep, size, _ in part.orbits:
        if args.action == "sigma-conj":
            rep_str = _flat_str(rep[0]) + "|" + _flat_str(rep[1])
        else:
            rep_str = _flat_str(rep)
        writer.writerow([args.action, ",".join(map(str, mu.weights)),
                         args.q, rep_str, size])
    _write_out(buf.getvalue(), args.out)
    return 0


def cmd_cartan(args) -> int:
    try:
        data = json.loads(sys.stdin.read())
        x = Mat.from_json(data)
    except (json.JSONDecodeError, ValueError, KeyError) as exc:
        sys.stderr.write(f"bad matrix input: {exc}\n")
        return 2
    a, d, b = snf_dvr(x)
    out = {"a": a.to_json(), "d": list(d), "b": b.to_json()}
    _write_out(json.dumps(out, sort_keys=True, indent=2) + "\n", args.out)
    return 0


def cmd_poset(args) -> int:
    mu = _parse_mu(args.mu)
    _check_n(args, mu)
    poset = CosetPoset(mu.n, mu.type_J)
    if args.format == "json":
        _write_out(json.dumps(poset.to_json(), sort_keys=True, indent=2) + "\n",
                   args.out)
    else:
        _write_out(poset.to_dot(), args.out)
    return 0


def cmd_witt_selftest(args) -> int:
    if args.q not in (2, 3, 5):
        raise ValueError("Witt selftest needs a prime --q")
    rep = ghost_selftest(args.q, args.prec, args.samples, args.seed)
    rate = rep["passed_samples"] / rep["samples"] if rep["samples"] else 1.0
    text = (
        f"ghost oracle p={rep['p']} N={rep['N']}: "
        f"{rep['passed_samples']}/{rep['samples']} passed ({rate:.1%})\n"
    )
    _write_out(text, args.out)
    return 0 if rep["passed_samples"] == rep["samples"] else 1


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "orbits": cmd_orbits,
        "cartan": cmd_cartan,
        "poset": cmd_poset,
        "witt-selftest": cmd_witt_selftest,
    }
    try:
        return handlers[args.command](args)
    except (BudgetExceeded, ValueError) as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    except LoopZipError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
