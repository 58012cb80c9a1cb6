"""Compare the compiled and pure-Python reduction kernels.

Each implementation runs in its own interpreter because the kernels are
chosen at import time.  Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "cyclic5": "groebner_basis(cyclic(5))",
    "katsura4": "groebner_basis(katsura(4))",
    "katsura6": "groebner_basis(katsura(6))",
    "binary-forms-4": "invariant_presentation(4)",
    "nullcone-4": "nullcone_check(4)",
}

SETUP = """
from ngit.exactalg import Ring, groebner_basis
from ngit.lnd import invariant_presentation, nullcone_check

def cyclic(n):
    R = Ring(f"x{i}" for i in range(n))
    xs = R.gens()
    eqs = []
    for d in range(1, n):
        s = R.zero()
        for i in range(n):
            term = R.one()
            for k in range(d):
                term = term * xs[(i + k) % n]
            s = s + term
        eqs.append(s)
    prod = R.one()
    for x in xs:
        prod = prod * x
    eqs.append(prod - 1)
    return eqs

def katsura(n):
    R = Ring(f"u{i}" for i in range(n + 1))
    u = R.gens()
    get = lambda i: u[abs(i)] if abs(i) <= n else R.zero()
    eqs = [sum((get(i) for i in range(-n, n + 1)), R.zero()) - 1]
    for m in range(n):
        eqs.append(sum((get(i) * get(m - i) for i in range(-n, n + 1)), R.zero()) - u[m])
    return eqs
"""

CHILD = """
import json, sys, time
{setup}
from ngit.exactalg import IMPLEMENTATION
out = {{"implementation": IMPLEMENTATION}}
for name, expr in {workloads!r}.items():
    best = None
    for _ in range({repeat}):
        t = time.perf_counter()
        eval(expr)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    out[name] = best
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["NGIT_PURE_PYTHON"] = "1"
    else:
        env.pop("NGIT_PURE_PYTHON", None)
    code = CHILD.format(setup=SETUP, workloads=WORKLOADS, repeat=repeat)
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    t0 = time.perf_counter()
    compiled = run(False, args.repeat)
    pure = run(True, args.repeat)
    if compiled["implementation"] != "cython":
        print("compiled kernels are not built; both columns use the fallback", file=sys.stderr)
    print(f"{'workload':<16}{'cython (s)':>12}{'python (s)':>12}{'speedup':>10}")
    for name in WORKLOADS:
        c, p = compiled[name], pure[name]
        print(f"{name:<16}{c:>12.4f}{p:>12.4f}{p / c:>9.2f}x")
    print(f"total wall time {time.perf_counter() - t0:.1f} s", file=sys.stderr)


if __name__ == "__main__":
    main()
