"""Compare the two exact-rational backends on a representative workload.

Run directly:

    python3 benchmarks/bench_backend.py [N]

The workload builds a deformed system with D={1,2}, extracts the
recurrence table for Y=1 and solves the closure relation; these steps
dominate real verification runs.  The backend is chosen per-process via
DUALRACAH_BACKEND, so each candidate runs in a fresh subprocess.
"""

import os
import subprocess
import sys
import time

_WORK = r"""
import time
from dualracah.backend import BACKEND, rat
from dualracah.params import make_params, R
from dualracah import multiindexed as mi, recurrence as rec, dualsystem as ds, closure as cl
from dualracah.poly import Poly

N = {N}
t0 = time.perf_counter()
p = make_params(R, N, b=N + 5, c=rat(1, 2), d=rat(2, 5))
s = mi.build_mi_system(p, (1, 2))
xp = rec.build_X(s, Poly([rat(1)]), for_hamiltonian=True)
t = rec.extract_r(s, xp)
dual = ds.dual_values(s)
h = ds.build_hamiltonians(s, xp, t, dual)
trip = cl.solve_closure(h)
assert cl.verify_closure(h, trip).is_zero()
print(f"{{BACKEND}}: {{time.perf_counter() - t0:.3f}}s")
"""


def run(backend: str, n: int) -> None:
    env = dict(os.environ, DUALRACAH_BACKEND=backend)
    subprocess.run([sys.executable, "-c", _WORK.format(N=n)], env=env, check=True)


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    print(f"workload: R family, N={n}, D={{1,2}}, build+recurrence+closure")
    for backend in ("gmpy2", "fraction"):
        try:
            run(backend, n)
        except subprocess.CalledProcessError as e:
            print(f"{backend}: failed ({e})")


if __name__ == "__main__":
    main()
