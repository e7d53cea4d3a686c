"""Compiled vs pure-Python kernels, plus tridiagonal QL vs dense LAPACK.

    python benchmarks/bench_kernels.py [--repeat 3]

Each backend runs in its own interpreter so that ``ERMAKOV_SUSY_PURE_PYTHON``
is honoured at import time.
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, math, sys, timeit
import numpy as np
from ermakov_susy import kernels, families as fm
from ermakov_susy.quadrature import Grid
from ermakov_susy.spectral import discretize, spectrum

repeat = int(sys.argv[1])
x = np.linspace(-6.0, 6.0, 200_000)
z = np.linspace(-60.0, 60.0, 20_000)
_, _, vt, _ = fm.hyperbolic(1.0, 0.45)
H = discretize(vt, Grid(-25.0, 25.0, 1500))
d, e = H.diag, np.full(H.size - 1, H.off)

def best(fn, number=1):
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number

out = {
    "backend": kernels.BACKEND,
    "erf_200k": best(lambda: kernels.erf(x)),
    "hyp1f1_20k": best(lambda: kernels.hyp1f1(0.75, 0.5, z)),
    "tridiag_n1500": best(lambda: kernels.tridiag_eigvals(d, e)),
}
if kernels.BACKEND == "compiled":
    out["dense_n1500"] = best(lambda: spectrum(H, 1))
print(json.dumps(out))
"""


def run(pure, repeat):
    env = dict(os.environ)
    env.pop("ERMAKOV_SUSY_PURE_PYTHON", None)
    if pure:
        env["ERMAKOV_SUSY_PURE_PYTHON"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    compiled = run(False, args.repeat)
    python = run(True, args.repeat)
    if compiled["backend"] != "compiled":
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<16}{'compiled [s]':>14}{'python [s]':>14}{'speed-up':>10}")
    for key in ("erf_200k", "hyp1f1_20k", "tridiag_n1500"):
        c, p = compiled[key], python[key]
        print(f"{key:<16}{c:>14.4f}{p:>14.4f}{p / c:>9.1f}x")
    if "dense_n1500" in compiled:
        t, dn = compiled["tridiag_n1500"], compiled["dense_n1500"]
        print(f"\ncomplex-symmetric QL vs dense eigvals at n = 1500: {t:.3f} s vs {dn:.3f} s "
              f"({dn / t:.1f}x)")


if __name__ == "__main__":
    main()
