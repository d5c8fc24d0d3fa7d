#!/usr/bin/env python3
"""Compiled vs pure-numpy kernels.

Times each hot kernel on both backends, checks that they agree, and runs one
end-to-end workload (a modulus estimate on a corpus model) in a subprocess
per backend.  Results go to stdout as CSV, or to --out.

Usage:
    python3 benchmarks/bench_kernels.py --repeat 5 --out bench.csv
"""
import argparse
import csv
import os
import subprocess
import sys
import timeit

import numpy as np

from comonotone import _core
from comonotone import _kernels_py as py

END_TO_END = """
import time
from comonotone.periodic_fn import comonotone_model
from comonotone.trig_poly import ExtremaCycle
from comonotone.partition import focused_derivative
from comonotone.smoothness import modulus_circle
from comonotone._core import BACKEND
f = comonotone_model(ExtremaCycle((-2.6, -1.1, 0.4, 2.1)), gamma=2.5)
t = time.perf_counter()
for n in (8, 16, 32, 64):
    modulus_circle(focused_derivative(f, 2), 3, 1.0 / n)
print(BACKEND, time.perf_counter() - t)
"""


def cases(rng, size):
    K, N = 8, size
    a = rng.normal(size=(K, N))
    a[0] = rng.uniform(0.5, 2.0, N)
    b = rng.normal(size=(K, N))
    t = np.sort(rng.uniform(0, 1, (size, 7)), axis=1) + np.arange(7) * 0.05
    v = rng.normal(size=t.shape)
    vals = rng.normal(size=(5, 4 * size))
    coeffs = np.array([1.0, -4.0, 6.0, -4.0, 1.0])
    return {
        "jet_mul": ((a, b), {}),
        "jet_recip": ((a,), {}),
        "jet_exp": ((a,), {}),
        "jet_log": ((a,), {}),
        "newton_dd_batch": ((t, v), {}),
        "fd_sup": ((vals, coeffs), {}),
    }


def best_time(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="1000,10000,100000")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--skip-end-to-end", action="store_true")
    args = p.parse_args(argv)

    compiled = _core.compiled_kernels
    if compiled is None:
        print("compiled kernels unavailable; build with pip install -e .", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    rows = []
    for size in (int(s) for s in args.sizes.split(",")):
        for name, (fargs, _) in cases(rng, size).items():
            ref = np.asarray(getattr(py, name)(*fargs))
            got = np.asarray(getattr(compiled, name)(*fargs))
            agree = bool(np.allclose(ref, got, rtol=1e-11, atol=1e-12))
            t_py = best_time(getattr(py, name), fargs, args.repeat)
            t_cy = best_time(getattr(compiled, name), fargs, args.repeat)
            rows.append((name, size, t_py, t_cy, t_py / t_cy, agree))
    if not args.skip_end_to_end:
        times = {}
        for pure in ("0", "1"):
            env = dict(os.environ, COMONOTONE_PURE=pure)
            out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                                 capture_output=True, text=True, check=True)
            backend, secs = out.stdout.split()
            times[backend] = float(secs)
        rows.append(("modulus_end_to_end", 4, times["python"], times["cython"],
                     times["python"] / times["cython"], True))

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh)
    w.writerow(("kernel", "size", "python_s", "compiled_s", "speedup", "agree"))
    for row in rows:
        w.writerow((row[0], row[1], "%.6f" % row[2], "%.6f" % row[3], "%.1f" % row[4], row[5]))
    if args.out:
        fh.close()
    return 0 if all(r[5] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
