"""Command line entry point: ``comonotone <subcommand> ...``.

Every subcommand writes CSV rows (header: n,E_estimate,omega,ratio,regime,
expected,observed) to ``--out`` or stdout.  With ``--out`` a JSON summary
{config_hash, seed, cells, constants} is written next to the CSV.  The exit
code is 0 iff no asserted check failed.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import counterexamples as cx
from . import experiments as ex
from .minimax import best_comonotone, best_unconstrained
from .partition import focused_derivative
from .smoothness import Resolution, modulus_circle
from .trig_poly import is_comonotone, pi_product

log = logging.getLogger("comonotone")

SHAPE_TOL = 1e-5


def _int_list(text: str) -> list:
    try:
        out = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers, got %r" % text)
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("need positive integers")
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def emit(rows, summary: dict, out: str | None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(ex.CSV_COLUMNS)
            w.writerows(rows)
        with open(path.with_suffix(".json"), "w") as fh:
            json.dump(_jsonable(summary), fh, indent=2)
        log.info("wrote %s and %s", path, path.with_suffix(".json"))
    else:
        w = csv.writer(sys.stdout)
        w.writerow(ex.CSV_COLUMNS)
        w.writerows(rows)


def _summary(cfg, cells, **constants) -> dict:
    return {"config_hash": ex.config_hash(cfg), "seed": cfg["seed"], "cells": cells,
            "constants": constants}


# -- subcommands -------------------------------------------------------------------

def cmd_table(args, cfg) -> int:
    if args.nmax is None:
        ns = list(cfg["ns"])
    else:
        ns = [n for n in (8 * 2 ** j for j in range(12)) if n <= args.nmax]
    if len(ns) < 3:
        raise SystemExit("need at least three values of n (--nmax >= 32)")
    res = ex.table_run(args.s, ns, cfg, rmax=args.rmax, kmax=args.kmax, workers=args.workers)
    emit(ex.table_rows(res), res.summary, args.out)
    for c in res.cells:
        flag = "MISMATCH" if c.mismatch else ""
        print("r=%d k=%d expected=%-5s observed=%-9s %s %s" %
              (c.r, c.k, c.expected, c.observed, c.source, flag), file=sys.stderr)
    return 1 if res.mismatches else 0


def cmd_ratio(args, cfg) -> int:
    f, Y = ex.named_model(args.model, args.r, args.k, cfg)
    rows = ex.ratio_sweep(f, Y, args.r, args.k, args.ns or cfg["ns"])
    expected = ex.expected_class(args.r, args.k, Y.s)
    bounded = ex.is_bounded([row.ratio for row in rows], cfg["bounded_threshold"])
    observed = "bounded" if bounded else "unknown"
    regime = "%s;r=%d;k=%d" % (args.model, args.r, args.k)
    out = [(row.n, row.E_estimate, row.omega, row.ratio, regime, expected, observed)
           for row in rows]
    cell = {"r": args.r, "k": args.k, "s": Y.s, "expected": expected, "observed": observed,
            "ratio_series": [asdict(row) for row in rows]}
    emit(out, _summary(cfg, [cell], bounded_threshold=cfg["bounded_threshold"]), args.out)
    # only a plus cell makes an assertion
    return 1 if expected == ex.PLUS and not bounded else 0


def cmd_approx(args, cfg) -> int:
    f, Y = ex.named_model(args.model, args.r, args.k, cfg)
    if args.comonotone:
        sol = best_comonotone(f, Y, args.n)
        # the LP enforces the sign only on its grid, so between grid points a
        # violation of relative size ~1e-7 near an extremum is expected
        dT = sol.polynomial.derivative()
        grid = -np.pi + 2 * np.pi * np.arange(8192) / 8192
        scale = max(float(np.max(np.abs(dT(grid) * pi_product(Y, grid)))), 1e-300)
        defect = is_comonotone(sol.polynomial, Y, refine=3).worst_violation / scale
        regime = "comonotone"
    else:
        sol = best_unconstrained(f, args.n)
        defect = 0.0
        regime = "unconstrained"
    om = modulus_circle(focused_derivative(f, args.r), args.k, 1.0 / args.n,
                        Resolution(x_extra=ex._focus_extra(f))).value
    ratio = args.n ** args.r * sol.value / om if om > 0 else ex.INF_SENTINEL
    row = (args.n, sol.value, om, ratio, "%s;%s" % (args.model, regime), "", "")
    cell = {"n": args.n, "model": args.model, "shape_defect": defect, **sol.to_record()}
    emit([row], _summary(cfg, [cell], r=args.r, k=args.k), args.out)
    return 1 if defect > SHAPE_TOL else 0


def cmd_counterexample(args, cfg) -> int:
    insts, values, rep = cx.run_family(args.theorem, args.s, args.ns, args.r)
    r = insts[0].r
    k = cx.MODULUS_ORDER[args.theorem]
    expected = ex.expected_class(r, k, args.s)
    passes = rep.exponent_fit >= cfg["slope_fraction"] * rep.exponent_theory
    observed = "divergent" if passes else "unknown"
    regime = "%s;s=%d;r=%d;k=%d" % (args.theorem, args.s, r, k)
    rows = [(n, values[n], om, q, regime, expected, observed)
            for n, om, q in zip(rep.ns, rep.omegas, rep.ratios)]
    certs = []
    if args.certify:
        for inst in insts:
            cert = cx.certify_instance(inst)
            certs.append({"n": inst.n, "passes": cert.passes,
                          "checks": [asdict(c) for c in cert.checks]})
    summary = _summary(cfg, [rep.to_record() | {"certificates": certs}],
                       slope_fraction=cfg["slope_fraction"],
                       c_star=cx.c_star(args.theorem, r))
    emit(rows, summary, args.out)
    print("%s s=%d: fitted slope %.3f, required %.3f -> %s" %
          (args.theorem, args.s, rep.exponent_fit,
           cfg["slope_fraction"] * rep.exponent_theory, "PASS" if passes else "FAIL"),
          file=sys.stderr)
    ok = passes and all(c["passes"] for c in certs)
    return 0 if ok else 1


def cmd_check_lemmas(args, cfg) -> int:
    rep = ex.check_all_lemmas(cfg["seed"], args.count)
    for c in rep.checks:
        print("%s  %s  %s" % ("PASS" if c.passed else "FAIL", c.name,
                              json.dumps(_jsonable(c.detail))))
    for w in rep.warnings:
        print("WARNING  %s" % w)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(_jsonable(_summary(cfg, [asdict(c) for c in rep.checks], count=args.count)),
                      fh, indent=2)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="comonotone",
                                description="Comonotone trigonometric approximation experiments")
    p.add_argument("--config", help="JSON config file (see README for the keys)")
    p.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="overrides the config seed")
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON config file")

    t = sub.add_parser("table", parents=[common], help="classify the (r, k) cells for one s")
    t.add_argument("--s", type=int, required=True)
    t.add_argument("--nmax", type=int, default=None,
                   help="n runs over 8, 16, ... up to nmax (default: the config ns)")
    t.add_argument("--out", help="CSV path; the JSON summary goes next to it")
    t.add_argument("--rmax", type=int, default=3)
    t.add_argument("--kmax", type=int, default=4)
    t.add_argument("--workers", type=int, default=None)
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("ratio", parents=[common], help="ratio sweep for one model and (r, k)")
    r.add_argument("--model", required=True, choices=ex.NAMED_MODELS)
    r.add_argument("--r", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--ns", type=_int_list, default=None, help="default: the config ns")
    r.add_argument("--out")
    r.set_defaults(func=cmd_ratio)

    a = sub.add_parser("approx", parents=[common], help="one best approximation")
    a.add_argument("--model", required=True, choices=ex.NAMED_MODELS)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--comonotone", action="store_true")
    a.add_argument("--r", type=int, default=0, help="derivative order for the ratio column")
    a.add_argument("--k", type=int, default=1, help="modulus order for the ratio column")
    a.add_argument("--out")
    a.set_defaults(func=cmd_approx)

    c = sub.add_parser("counterexample", parents=[common], help="growth of a counterexample family")
    c.add_argument("--theorem", required=True, choices=cx.THEOREMS)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--ns", type=_int_list, default=[8, 16, 32])
    c.add_argument("--r", type=int, default=None, help="only for T2_7 (default 0)")
    c.add_argument("--certify", action="store_true", help="also certify each instance")
    c.add_argument("--out")
    c.set_defaults(func=cmd_counterexample)

    L = sub.add_parser("check-lemmas", parents=[common], help="run the identity and construction checks")
    L.add_argument("--count", type=int, default=1000)
    L.add_argument("--out", help="JSON report path")
    L.set_defaults(func=cmd_check_lemmas)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = ex.load_config(args.config, seed=args.seed)
    try:
        return args.func(args, cfg)
    except ex.CertificationFailed as exc:
        print("certification failed: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
