"""Compare the numba and numpy backends of the iterated-integral kernels.

Usage: python3 benchmarks/bench_itint.py [--repeat N] [--samples S]

Each backend runs in a fresh subprocess so the environment flag is read at
import time; numba timings exclude the first (compiling) call.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from arrtool.arrangement import braid_arrangement
from arrtool.itint import TwistedForm, backend, iterated_integral, omega_integrals, standard_meridian
from arrtool.weights import load_weight_matrix

repeat, samples = int(sys.argv[1]), int(sys.argv[2])
arr = braid_arrangement()
a = load_weight_matrix([["0", "1", "1", "0", "-2"], ["-1", "0", "0", "-1", "2"]])
loop = standard_meridian(arr, 1).compose(standard_meridian(arr, 5)).with_samples(samples)
forms = [TwistedForm([1, 0, 0, -1, 0], (0, 1)), TwistedForm([0, 1, -1, 0, 0], (1, 0)), TwistedForm([1, 0, 0, 0, 0], (0, 0))]
iterated_integral(arr, a, forms, [], loop)  # warm-up / compile
omega_integrals(arr, loop)
t = time.perf_counter()
for _ in range(repeat):
    val = iterated_integral(arr, a, forms, [], loop)
t_int = (time.perf_counter() - t) / repeat
t = time.perf_counter()
for _ in range(repeat):
    omega_integrals(arr, loop)
t_om = (time.perf_counter() - t) / repeat
print(json.dumps({"backend": backend(), "iterated_s": t_int, "omega_s": t_om, "value": [val.real, val.imag]}))
"""


def run(disable: bool, repeat: int, samples: int) -> dict:
    env = dict(os.environ)
    if disable:
        env["ARRTOOL_DISABLE_NUMBA"] = "1"
    else:
        env.pop("ARRTOOL_DISABLE_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat), str(samples)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=32)
    args = ap.parse_args()
    fast = run(False, args.repeat, args.samples)
    slow = run(True, args.repeat, args.samples)
    diff = abs(complex(*fast["value"]) - complex(*slow["value"]))
    print(f"{'backend':<8} {'iterated (s)':>14} {'omega (s)':>12}")
    for r in (fast, slow):
        print(f"{r['backend']:<8} {r['iterated_s']:>14.4f} {r['omega_s']:>12.5f}")
    print(f"speedup  {slow['iterated_s'] / fast['iterated_s']:>14.1f}x")
    print(f"|numba - numpy| = {diff:.2e}")


if __name__ == "__main__":
    main()
