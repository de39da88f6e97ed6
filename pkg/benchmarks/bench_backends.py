"""Compare the compiled and pure-numpy kernel backends on geodesic queries.

Each backend runs in a fresh interpreter because the backend is chosen at
import time from TETRACUT_BACKEND.

Usage: python3 benchmarks/bench_backends.py [n_pairs]
"""

import json
import os
import subprocess
import sys

_WORKER = r"""
import json, sys, time
import numpy as np
import tetracut.surface as sf
from tetracut import backend, oracle

n = int(sys.argv[1])
rng = np.random.default_rng(0)
pairs = [
    (
        sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1))),
        sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1))),
    )
    for _ in range(n)
]
oracle.distance(*pairs[0])  # warm-up (JIT compile / cache tables)
t0 = time.perf_counter()
total = 0.0
for p, q in pairs:
    total += oracle.distance(p, q)
dt = time.perf_counter() - t0
t0 = time.perf_counter()
mult = sum(oracle.multiplicity(p, q) for p, q in pairs[: n // 4])
dt_full = time.perf_counter() - t0
print(json.dumps({
    "backend": backend.BACKEND,
    "pairs": n,
    "dist_s": dt,
    "dist_per_s": n / dt,
    "mult_s": dt_full,
    "checksum": round(total, 9),
}))
"""


def run(backend_name: str, n: int) -> dict:
    env = dict(os.environ, TETRACUT_BACKEND=backend_name)
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, str(n)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    results = [run(name, n) for name in ("numba", "numpy")]
    for r in results:
        print(
            f"{r['backend']:>6}: {r['pairs']} distance queries in {r['dist_s']:.3f}s "
            f"({r['dist_per_s']:.0f}/s); multiplicity block {r['mult_s']:.3f}s"
        )
    a, b = results
    if a["checksum"] != b["checksum"]:
        raise SystemExit(
            f"backends disagree: {a['checksum']} vs {b['checksum']}"
        )
    print(f"checksums agree ({a['checksum']}); speedup x{b['dist_s'] / a['dist_s']:.1f}")


if __name__ == "__main__":
    main()
