"""Compare the gmpy2 mpq backend against fractions.Fraction on real workloads.

The package picks its rational type once at import, so the comparison runs
each backend in a fresh subprocess: the child sets JACCOORD_BENCH_BACKEND and
times (a) the coordinate closed loop (generate, check, verify witness) and
(b) a resultant-heavy fibre report. Run from the repository root:

    python3 benchmarks/bench_backend.py
"""

import json
import os
import subprocess
import sys
import time

WORKLOAD = r"""
import os, sys, time

backend = os.environ["JACCOORD_BENCH_BACKEND"]
if backend == "fractions":
    # block gmpy2 before the package import so the fallback is selected
    sys.modules["gmpy2"] = None

import jaccoord
from jaccoord import BACKEND, check, fibre_report, gen_random_coordinate, rat

assert BACKEND == backend, (BACKEND, backend)

t0 = time.perf_counter()
for seed in range(10):
    P, W = gen_random_coordinate(seed, 3, 3, 5)
    v = check(P)
    assert v.outcome == "coordinate"
t_loop = time.perf_counter() - t0

t0 = time.perf_counter()
P, _ = gen_random_coordinate(1, 2, 2, 3)
for k in range(4):
    fibre_report(P, rat(k, 1))
t_fibre = time.perf_counter() - t0

import json
print(json.dumps({"backend": BACKEND, "coordinate_loop_s": round(t_loop, 3),
                  "fibre_reports_s": round(t_fibre, 3)}))
"""


def run(backend: str) -> dict:
    env = dict(os.environ, JACCOORD_BENCH_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        raise SystemExit(f"{backend} run failed:\n{out.stderr}")
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    results = [run("gmpy2"), run("fractions")]
    for r in results:
        print(
            f"{r['backend']:>10}: coordinate loop {r['coordinate_loop_s']:7.3f}s"
            f"   fibre reports {r['fibre_reports_s']:7.3f}s"
        )
    fast, slow = results
    for key in ("coordinate_loop_s", "fibre_reports_s"):
        if fast[key] > 0:
            print(f"{key}: fractions / gmpy2 = {slow[key] / fast[key]:.2f}x")


if __name__ == "__main__":
    main()
