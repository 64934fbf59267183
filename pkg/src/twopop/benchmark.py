"""Compare the compiled kernel against the pure-NumPy fallback.

Usage: python -m twopop.benchmark [--epsilon 0.1] [--cells 500] [--tmax 0.05]

Runs the same two-block configuration under both backends, reports wall time
per step, and verifies the trajectories agree bit for bit.
"""

from __future__ import annotations

import argparse

import numpy as np

from . import _kernel_py
from .presets import twoblock_config
from .solver import run


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", type=float, default=0.1)
    parser.add_argument("--cells", type=int, default=500)
    parser.add_argument("--tmax", type=float, default=0.05)
    args = parser.parse_args(argv)

    cfg = twoblock_config(args.epsilon, cells=args.cells, t_max=args.tmax,
                          snapshot_times=[0.0, args.tmax])
    try:
        from . import _kernel
    except ImportError:
        _kernel = None

    results = {}
    print(f"two-block benchmark: epsilon={args.epsilon} cells={args.cells} tmax={args.tmax}")
    for name, impl in (("python", _kernel_py), ("compiled", _kernel)):
        if impl is None:
            print(f"{name:>9}: extension not built, skipping")
            continue
        res = run(cfg, use_backend=impl)
        results[name] = res
        per_step = res.stats.wall_time / max(res.stats.steps, 1)
        print(
            f"{name:>9}: {res.stats.steps} steps in {res.stats.wall_time:.3f}s "
            f"({per_step * 1e6:.2f} us/step)"
        )

    if len(results) == 2:
        a, b = results["python"].final, results["compiled"].final
        identical = (
            np.array_equal(a.n1, b.n1)
            and np.array_equal(a.n2, b.n2)
            and a.time == b.time
        )
        speedup = results["python"].stats.wall_time / results["compiled"].stats.wall_time
        print(f"  speedup: {speedup:.1f}x; trajectories bit-identical: {identical}")
        return 0 if identical else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
