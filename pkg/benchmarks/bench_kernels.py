"""Compare the compiled and NumPy kernels on cartesian lattices.

    python3 benchmarks/bench_kernels.py [--points 64] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from relloc import Lattice, kernels


def _inputs(points, seed=0):
    lat = Lattice("cartesian3d", points, 16.0)
    rng = np.random.default_rng(seed)
    k = [np.ascontiguousarray(np.broadcast_to(c, lat.shape).ravel(), dtype=np.float64) for c in lat.kvec]
    psi = np.ascontiguousarray(rng.standard_normal((4, lat.size)) + 1j * rng.standard_normal((4, lat.size)))
    rad = np.broadcast_to(lat.radius, lat.shape).ravel()
    bins = np.floor(rad / lat.dx).astype(np.int64)
    vals = np.ascontiguousarray(rng.random(lat.size))
    return k, psi, vals, bins, int(bins.max()) + 1


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    k, psi, vals, bins, nb = _inputs(args.points)
    backends = ["python"]
    try:
        kernels.get_backend("cython")
        backends.insert(0, "cython")
    except ImportError:
        print("compiled extension not built; timing the NumPy kernels only")

    results = {}
    for name in backends:
        impl = kernels.get_backend(name)
        cases = {
            "projector_apply": lambda: impl.projector_apply(*k, 1.0, psi, 0.7),
            "shell_sums": lambda: impl.shell_sums(vals, bins, nb),
        }
        for case, fn in cases.items():
            fn()  # warm up
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            results[(name, case)] = best

    print(f"cartesian3d {args.points}^3 ({args.points**3} points), best of {args.repeat}")
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for case in ("projector_apply", "shell_sums"):
        row = f"{case:<18}" + "".join(f"{results[(b, case)] * 1e3:>10.1f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{results[('python', case)] / results[('cython', case)]:>11.1f}x"
        print(row)

    if len(backends) > 1:
        a = np.asarray(kernels.get_backend("cython").projector_apply(*k, 1.0, psi, 0.7))
        b = np.asarray(kernels.get_backend("python").projector_apply(*k, 1.0, psi, 0.7))
        print(f"max backend difference (projector): {np.max(np.abs(a - b)):.2e}")


if __name__ == "__main__":
    main()
