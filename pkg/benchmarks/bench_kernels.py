"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints best-of-N wall time per kernel and for a full default scenario.
"""

import argparse
import timeit

import numpy as np

from wrdrift import kernels
from wrdrift.experiment import Scenario, simulate
from wrdrift.wrlink import ZERO_NOISE


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cases = {}
    for n in (10_800, 1_000_000):
        setpoint = np.cumsum(rng.normal(0, 0.05, n))
        t = np.arange(n, dtype=float)
        crtt = 1.98e8 + np.cumsum(rng.normal(0, 5, n))
        cases[f"lag_response n={n}"] = lambda u=setpoint: kernels.lag_response(u, 1.0, 1200.0, 0.0)
        cases[f"sliding_slope n={n}"] = lambda t=t, y=crtt: kernels.sliding_slope(t, y, 601)
    scenario = Scenario(noise=ZERO_NOISE)
    cases["simulate default 3 h @ 1 Hz"] = lambda: simulate(scenario)

    backends = kernels.available_backends()
    print(f"{'case':32s}" + "".join(f"{b:>14s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases.items():
        times = []
        for backend in backends:
            kernels.use_backend(backend)
            times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        row = f"{name:32s}" + "".join(f"{t * 1e3:11.2f} ms" for t in times)
        if len(times) > 1:
            row += f"{times[1] / times[0]:11.1f}x"
        print(row)
    kernels.use_backend(backends[0])


if __name__ == "__main__":
    main()
