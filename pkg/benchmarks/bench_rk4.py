"""Compare the compiled and numpy RK4 kernels on the s=1 tunneling run.

    python benchmarks/bench_rk4.py [--t-end 10000] [--dt 0.01]
"""
import argparse
import time

import numpy as np

from spinrevival._kernels import BACKENDS
from spinrevival.perturbed import FullModel, IntegratorConfig, integrate
from spinrevival.spin_algebra import HalfIntegerSpin, SpinState


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t-end", type=float, default=1e4)
    ap.add_argument("--dt", type=float, default=0.01)
    ap.add_argument("--spin", default="1")
    args = ap.parse_args()

    spin = HalfIntegerSpin.parse(args.spin)
    model = FullModel(spin, 0.1, 0.1, 1e-3)
    psi = SpinState.basis(spin, -spin.s)
    cfg = IntegratorConfig(args.t_end, args.dt, 10)
    print(f"spin {spin}, {cfg.n_steps()} steps")
    results = {}
    for name in sorted(BACKENDS):
        t0 = time.perf_counter()
        results[name] = integrate(psi, model, cfg, backend=name)
        print(f"{name:>7}: {time.perf_counter() - t0:8.3f} s")
    if len(results) == 2:
        a, b = results.values()
        print(f"max |difference| between backends: {np.max(np.abs(a.states - b.states)):.3e}")


if __name__ == "__main__":
    main()
