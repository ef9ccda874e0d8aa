"""Time the compiled dialogue kernel against the pure-Python engine.

Both backends consume the same PCG64 stream and must produce bit-identical
opinion trajectories; this script verifies that while measuring throughput.
"""
import argparse
import time

import numpy as np

from polisim import ModelParams, World, available_backends


def run(backend: str, params: ModelParams, seed: int, steps: int) -> tuple[float, np.ndarray]:
    world = World.create(params, seed=seed)
    t0 = time.perf_counter()
    world.advance(steps, backend=backend)
    return time.perf_counter() - t0, world.private


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--population", type=int, default=3000)
    parser.add_argument("--grid-size", type=int, default=200)
    parser.add_argument("--steps", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    params = ModelParams(
        s_h=1.25,
        rejector_fraction=0.15,
        population=args.population,
        grid_size=args.grid_size,
    )
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"N={args.population} D={args.grid_size} steps={args.steps} seed={args.seed}")

    finals = {}
    for backend in backends:
        best = min(
            run(backend, params, args.seed, args.steps)[0] for _ in range(args.repeats)
        )
        _, finals[backend] = run(backend, params, args.seed, args.steps)
        rate = args.steps / best
        print(f"  {backend:>8}: {best:8.3f} s  ({rate:10.0f} dialogues/s)")

    if len(backends) == 2:
        a, b = (finals[name] for name in backends)
        identical = np.array_equal(a, b)
        print(f"bit-identical final opinions: {identical}")
        if not identical:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
