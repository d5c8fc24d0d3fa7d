"""Experiment harness: validity-table runs, ratio sweeps and lemma checks.

A cell (r, k, s) of the validity table is *plus* when the Jackson-type
estimate holds for every n, *oplus* when it holds only for n beyond a
cycle-dependent threshold, and *minus* when even that fails.  Plus cells are
exercised with smooth corpus models (ratios should stay bounded); cells
covered by one of the counterexample families are exercised with that family
(ratios should grow).  Other cells are reported as unknown by design.
"""
from __future__ import annotations

import hashlib
import json
import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

from . import counterexamples as cx
from .divided_diff import (MonotonePattern, divided_difference, divided_difference_explicit,
                           dl_bound, random_pattern_instance)
from .errors import CertificationFailed
from .minimax import best_algebraic, best_comonotone, best_unconstrained
from .partition import (comonotone_piece_full, comonotone_piece_partial, focused_derivative,
                        monotone_piece, probe_lemma_4_5, shape_defect, stitch_S)
from .periodic_fn import comonotone_model, cos_model, sin_model
from .smoothness import Resolution, modulus_circle, modulus_interval
from .trig_poly import ExtremaCycle, pi_product

log = logging.getLogger(__name__)

PLUS, OPLUS, MINUS = "plus", "oplus", "minus"
SYMBOLS = {"+": PLUS, "o": OPLUS, "-": MINUS}
INF_SENTINEL = float("inf")

DEFAULT_CONFIG = {
    "seed": 0,
    "ns": [8, 16, 32, 64],
    "bounded_threshold": 10.0,
    "slope_fraction": 0.5,
    "workers": 1,
    "cycles": {
        "1": [-1.3, 1.7],
        "2": [-2.6, -1.1, 0.4, 2.1],
        "3": [-2.8, -1.9, -0.7, 0.3, 1.4, 2.5],
    },
}


def load_config(path: str | None = None, **overrides) -> dict:
    """Defaults, then a JSON config file, then explicit overrides."""
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))
    if path:
        with open(path) as fh:
            user = json.load(fh)
        unknown = set(user) - set(cfg)
        if unknown:
            raise ValueError("unknown config keys: %s" % ", ".join(sorted(unknown)))
        cfg.update(user)
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    return cfg


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]


# -- classification ---------------------------------------------------------------

def expected_class(r: int, k: int, s: int) -> str:
    if r < 0 or k < 1 or s < 1:
        raise ValueError("need r >= 0, k >= 1, s >= 1")
    if k == 1 or (k == 2 and r >= 2 * s - 2) or (k == 3 and r >= 2 * s - 1) or \
            (k >= 4 and r >= 2 * s):
        return PLUS
    if (r == 0 and k >= 3) or (r == 1 and k >= 4):
        return MINUS
    return OPLUS


def golden_tables() -> dict:
    """{s: {r: [class for k = 1..6]}} from the transcribed tables."""
    text = resources.files("comonotone").joinpath("data/validity_tables.json").read_text()
    raw = json.loads(text)["tables"]
    return {int(s): {int(r): [SYMBOLS[c] for c in row] for r, row in rows.items()}
            for s, rows in raw.items()}


def family_for(r: int, k: int, s: int) -> str | None:
    """The counterexample family that tests cell (r, k, s), if any."""
    if k == 2 and 0 <= r < 2 * s - 2:
        return "T2_7"
    if k == 3 and r == 2 * s - 2:
        return "T2_2"
    if k == 4 and r == 2 * s - 1:
        return "T2_4"
    return None


# -- corpus ---------------------------------------------------------------------------

def corpus_cycle(s: int, cfg: dict | None = None) -> ExtremaCycle:
    cycles = (cfg or DEFAULT_CONFIG)["cycles"]
    if str(s) not in cycles:
        raise KeyError("no corpus cycle for s = %d" % s)
    return ExtremaCycle(tuple(cycles[str(s)]))


def corpus_gamma(r: int, k: int) -> float:
    """Exponent of the weight singularity: f^(r) then has Hoelder order k - 1/2.

    With that order the smooth part and the singular part of the error decay
    at nearly the same rate, so the ratios settle quickly.
    """
    return max(r + k - 1.5, 0.5)


@lru_cache(maxsize=32)
def _corpus(points: tuple, gamma: float):
    return comonotone_model(ExtremaCycle(points), gamma=gamma)


def corpus_model(s: int, r: int, k: int, cfg: dict | None = None):
    Y = corpus_cycle(s, cfg)
    return _corpus(Y.points, corpus_gamma(r, k)), Y


NAMED_MODELS = ("corpus-s1", "corpus-s2", "corpus-s3", "sin", "cos")


def named_model(name: str, r: int = 1, k: int = 2, cfg: dict | None = None):
    """(model, cycle) for a CLI model name."""
    if name.startswith("corpus-s"):
        return corpus_model(int(name[len("corpus-s"):]), r, k, cfg)
    if name == "sin":
        return sin_model(), ExtremaCycle((-0.5 * np.pi, 0.5 * np.pi), anchor=-1)
    if name == "cos":
        return cos_model(), ExtremaCycle((-np.pi, 0.0), anchor=-1)
    raise KeyError("unknown model %r (choose from %s)" % (name, ", ".join(NAMED_MODELS)))


# -- sweeps ---------------------------------------------------------------------------

def membership_defect(f, Y: ExtremaCycle, count: int = 8192) -> float:
    x = f.sample_grid(count) if hasattr(f, "sample_grid") else \
        -np.pi + 2 * np.pi * np.arange(count) / count
    x = np.concatenate((x, Y.array))
    d = np.asarray(f.deriv(1)(x), dtype=float)
    pv = Y.anchor * pi_product(Y, x)
    scale = max(float(np.max(np.abs(d))) * float(np.max(np.abs(pv))), 1e-300)
    return float(max(0.0, -np.min(d * pv)) / scale)


@dataclass
class SweepRow:
    n: int
    E_estimate: float
    omega: float
    ratio: float
    flagged: bool = False


def _focus_extra(f) -> tuple:
    pts = []
    for center, radius in getattr(f, "focus", ()) or ():
        pts.append(np.linspace(center - radius, center + radius, 201))
    return tuple(np.concatenate(pts)) if pts else ()


def ratio_sweep(f, Y: ExtremaCycle, r: int, k: int, n_list: Sequence[int],
                tol: float = 1e-9) -> list:
    """Rows (n, E, omega_k(f^(r), 1/n), n^r E / omega) in ascending n."""
    defect = membership_defect(f, Y)
    if defect > tol:
        raise CertificationFailed("f' Pi changes sign (relative defect %.2e)" % defect)
    res = Resolution(x_extra=_focus_extra(f))
    rows = []
    for n in sorted(n_list):
        E = best_comonotone(f, Y, n).value
        om = modulus_circle(focused_derivative(f, r), k, 1.0 / n, res).value
        if om == 0.0:
            rows.append(SweepRow(n, E, om, INF_SENTINEL, True))
        else:
            rows.append(SweepRow(n, E, om, n ** r * E / om))
    return rows


def is_bounded(ratios: Sequence[float], threshold: float) -> bool:
    R = np.asarray([q for q in ratios if np.isfinite(q)], dtype=float)
    if R.size == 0:
        return False
    med = float(np.median(R))
    if med <= 0.0:
        return float(np.max(R)) <= 1e-8
    return float(np.max(R)) / med <= threshold


# -- table runs -----------------------------------------------------------------------

@dataclass
class ValidityCell:
    r: int
    k: int
    s: int
    expected: str
    observed: str
    ratio_series: list = field(default_factory=list)
    source: str = ""
    asserted: bool = False
    detail: dict = field(default_factory=dict)

    @property
    def mismatch(self) -> bool:
        if not self.asserted:
            return False
        if self.expected == PLUS:
            return self.observed != "bounded"
        return self.observed != "divergent"


def run_cell(spec: dict) -> dict:
    """Evaluate one cell; a plain-dict in/out so it can run in a worker process."""
    r, k, s, ns, cfg = spec["r"], spec["k"], spec["s"], spec["ns"], spec["cfg"]
    expected = expected_class(r, k, s)
    fam = family_for(r, k, s)
    cell = ValidityCell(r, k, s, expected, "unknown")
    if expected == PLUS:
        f, Y = corpus_model(s, r, k, cfg)
        rows = ratio_sweep(f, Y, r, k, ns)
        cell.ratio_series = [asdict(row) for row in rows]
        cell.observed = "bounded" if is_bounded([row.ratio for row in rows],
                                                cfg["bounded_threshold"]) else "unknown"
        cell.source, cell.asserted = "corpus", True
    elif fam is not None:
        insts, values, rep = cx.run_family(fam, s, ns, r if fam == "T2_7" else None)
        passes = rep.exponent_fit >= cfg["slope_fraction"] * rep.exponent_theory
        cell.ratio_series = [{"n": n, "E_estimate": values[n], "omega": om, "ratio": q,
                              "flagged": False}
                             for n, om, q in zip(rep.ns, rep.omegas, rep.ratios)]
        cell.observed = "divergent" if passes else "unknown"
        cell.source, cell.asserted = fam, True
        cell.detail = {"exponent_fit": rep.exponent_fit, "exponent_theory": rep.exponent_theory}
    else:
        cell.source = "none"
    return asdict(cell)


def _cell_from_dict(d: dict) -> ValidityCell:
    return ValidityCell(**d)


@dataclass
class TableResult:
    cells: list
    summary: dict

    @property
    def mismatches(self) -> list:
        return [c for c in self.cells if c.mismatch]


def table_run(s: int, n_list: Sequence[int], cfg: dict | None = None, rmax: int = 3,
              kmax: int = 4, cells: Sequence[tuple] | None = None,
              workers: int | None = None) -> TableResult:
    """Classify the cells (r, k) of the table for s from ratio behaviour over n_list."""
    cfg = cfg or load_config()
    todo = list(cells) if cells is not None else \
        [(r, k) for r in range(rmax + 1) for k in range(1, kmax + 1)]
    specs = [{"r": r, "k": k, "s": s, "ns": list(n_list), "cfg": cfg} for r, k in todo]
    nw = workers if workers is not None else int(cfg.get("workers", 1))
    if nw > 1:
        with ProcessPoolExecutor(max_workers=nw) as pool:
            out = list(pool.map(run_cell, specs))
    else:
        out = [run_cell(sp) for sp in specs]
    result = [_cell_from_dict(d) for d in out]
    result.sort(key=lambda c: (c.r, c.k))
    summary = {
        "config_hash": config_hash(cfg),
        "seed": cfg["seed"],
        "cells": [asdict(c) | {"mismatch": c.mismatch} for c in result],
        "constants": {"bounded_threshold": cfg["bounded_threshold"],
                      "slope_fraction": cfg["slope_fraction"], "ns": list(n_list), "s": s},
    }
    return TableResult(result, summary)


CSV_COLUMNS = ("n", "E_estimate", "omega", "ratio", "regime", "expected", "observed")


def table_rows(result: TableResult) -> list:
    rows = []
    for c in result.cells:
        regime = "s=%d;r=%d;k=%d;%s" % (c.s, c.r, c.k, c.source)
        if not c.ratio_series:
            rows.append(("", "", "", "", regime, c.expected, c.observed))
        for row in c.ratio_series:
            rows.append((row["n"], row["E_estimate"], row["omega"], row["ratio"], regime,
                         c.expected, c.observed))
    return rows


# -- lemma checks ---------------------------------------------------------------------

@dataclass
class LemmaCheck:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class LemmaReport:
    seed: int
    checks: list
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _corrupted_dd(t, v):
    # flips the sign of the first term of the explicit sum
    t = np.asarray(t, dtype=float)
    v = np.asarray(v, dtype=float)
    terms = [v[i] / np.prod(np.delete(t[i] - t, i)) for i in range(t.size)]
    terms[0] = -terms[0]
    return float(sum(terms))


def _dd_checks(rng, count, dd):
    worst_rec, fails = 0.0, 0
    for trial in range(count):
        m = int(rng.integers(2, 7))
        pat = MonotonePattern.pattern_a if trial % 2 else MonotonePattern.pattern_b
        t, v = random_pattern_instance(rng, m, pat)
        val = dd(t, v)
        scale = sum(abs(v[i]) / np.prod(np.abs(np.delete(t[i] - t, i))) for i in range(t.size))
        ok = pat.sign * val >= -1e-12 * scale
        lhs = abs(val)
        rhs = (abs(dd(t[1:], v[1:])) + abs(dd(t[:-1], v[:-1]))) / (t[-1] - t[0])
        rec = abs(lhs - rhs) / (1.0 + lhs)
        worst_rec = max(worst_rec, rec)
        ok &= rec <= 1e-10
        vs = max(1.0, float(np.max(np.abs(v))))
        ok &= (t[-1] - t[0]) ** m * lhs >= np.ptp(v) - 1e-10 * vs
        for r in range(2, m + 1):
            sub = abs(dd(t[1:r + 1], v[1:r + 1]))
            ok &= lhs * float(np.prod(t[r:] - t[0])) >= sub - 1e-10 * max(1.0, sub)
        fails += int(not ok)
    return fails, worst_rec


def check_all_lemmas(seed: int = 0, count: int = 1000, corrupt: str | None = None) -> LemmaReport:
    """Run the identity, modulus, minimax and construction checks; failures are data."""
    rng = np.random.default_rng(seed)
    report = LemmaReport(seed, [])
    add = lambda name, ok, **d: report.checks.append(LemmaCheck(name, bool(ok), d))
    dd = _corrupted_dd if corrupt == "dd" else divided_difference

    if count == 0:
        msg = "no random divided-difference instances requested; identity checks are vacuous"
        warnings.warn(msg)
        report.warnings.append(msg)
    else:
        fails, worst = _dd_checks(rng, count, dd)
        add("divided differences: sign, recurrence and bounds", fails == 0,
            instances=count, failures=fails, worst_recurrence_error=worst)
    x = np.sort(rng.uniform(-1, 1, 6))
    exact = abs(dd(x, x ** 5) - 1.0) <= 1e-10 and abs(dd(x, x ** 3 - 2 * x)) <= 1e-10
    add("divided differences: polynomial exactness", exact)
    oracle = abs(dd(x, np.cos(x)) - divided_difference_explicit(x, np.cos(x))) <= 1e-10
    add("divided differences: recurrence equals explicit sum", oracle)
    # the constant in the divided-difference bound is not known; record it
    cs = [dl_bound(np.sin, 1, np.sort(rng.uniform(0, 1.5, 4)), 0.0, 1.5, f_l=np.cos).ratio
          for _ in range(20)]
    add("divided differences: bound constant finite", np.all(np.isfinite(cs)),
        largest_constant=float(np.max(cs)))

    errs = [abs(modulus_circle(np.sin, 1, t).value - 2 * np.sin(t / 2))
            for t in (np.pi / 8, np.pi / 4, np.pi / 2)]
    add("modulus: omega_1(sin, t) = 2 sin(t/2)", max(errs) <= 1e-4, worst=max(errs))
    poly = modulus_interval(lambda z: 3 * z ** 2 - z + 1, 3, 0.5, -1, 1).value
    add("modulus: omega_3 of a quadratic vanishes", poly <= 1e-9, value=poly)
    om = [modulus_circle(np.cos, 2, t, Resolution(h_values=(0.05, 0.1, 0.2, 0.4))).value
          for t in (0.1, 0.2, 0.4)]
    add("modulus: monotone in t", om[0] <= om[1] <= om[2], values=om)

    line = best_algebraic(lambda z: z ** 2, 0.0, 1.0, 2).value
    add("minimax: best line to x^2 on [0,1] is 1/8", abs(line - 0.125) <= 1e-3, value=line)
    const = best_unconstrained(np.cos, 1).value
    add("minimax: best constant to cos is 1", abs(const - 1.0) <= 1e-6, value=const)
    f1, Y1 = corpus_model(1, 1, 3)
    eu = best_unconstrained(f1, 8).value
    ec = best_comonotone(f1, Y1, 8).value
    ec2 = best_comonotone(f1, Y1, 16).value
    add("minimax: constrained >= unconstrained, monotone in n",
        ec >= eu - 1e-12 and ec2 <= ec + 1e-12, unconstrained=eu, comonotone=ec, comonotone_2n=ec2)

    shifted = _Affine(sin_model())
    p = monotone_piece(shifted, 0.0, 1.0, 1, 3)
    z = np.linspace(0, 1, 10001)
    ok = abs(p.poly(0) - shifted(0.0)) <= 1e-9 and abs(p.poly(1) - shifted(1.0)) <= 1e-9 \
        and np.min(p.poly.deriv()(z)) >= -1e-9 and p.ratio < 100
    add("construction: monotone piece", ok, ratio=p.ratio)
    h = np.pi / 16
    y = Y1.array
    a = h * np.floor(y[0] / h) - h
    full = comonotone_piece_full(f1, a, a + 3 * h, [y[0]], 1, h)
    zz = np.linspace(a, a + 3 * h, 10001)
    sgn = full.poly.deriv()(zz) * (zz - y[0]) * full.sign
    add("construction: full comonotone piece", abs(full.poly(a) - f1(a)) <= 1e-9 and
        np.min(sgn) >= -1e-9 * np.max(np.abs(sgn)), ratio=full.ratio)
    f2, Y2 = corpus_model(1, 3, 3)
    part = comonotone_piece_partial(f2, a, a + 3 * h, [y[0]], 3, 3, h)
    sgn = part.poly.deriv()(zz) * (zz - y[0]) * part.sign
    add("construction: partial comonotone piece", abs(part.poly(a) - f2(a)) <= 1e-9 and
        np.min(sgn) >= -1e-9 * np.max(np.abs(sgn)), ratio=part.ratio)
    pr = probe_lemma_4_5(f1, a, a + 3 * h, [y[0]], 0, h)
    add("construction: interval bound ratio finite", np.isfinite(pr.ratio), ratio=pr.ratio)
    S = stitch_S(f1, Y1, 16, 1, 3)
    add("construction: stitched S continuous and comonotone",
        S.continuity_defect() <= 1e-9 and shape_defect(S, Y1) <= 1e-9,
        continuity=S.continuity_defect(), shape=shape_defect(S, Y1))
    return report


class _Affine:
    """x + sin x as a model (derivatives by hand)."""

    def __init__(self, base):
        self.base = base
        self.focus, self.breakpoints = [], []

    def __call__(self, x):
        return np.asarray(x, dtype=float) + self.base(x)

    def deriv(self, j):
        if j == 1:
            return lambda x: 1.0 + self.base.deriv(1)(x)
        return self.base.deriv(j)
