"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --count 200000 --n 5

Both implementations receive the same uniforms, so the script also checks
that they return identical arrays.
"""

import argparse
import time

import numpy as np

from zmwreath import _pykernels
from zmwreath.spectral_group import CentralFunction, builtin_model, total_I
from zmwreath.wreath import _color_cdf

try:
    from zmwreath import _ckernels
except ImportError:
    _ckernels = None


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--model", default="z2")
    parser.add_argument("--z", default="3,1", help="comma-separated class values")
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--count", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    model = builtin_model(args.model)
    z = CentralFunction.from_class_values(model, [int(v) for v in args.z.split(",")])
    cayley = np.asarray(model.cayley, dtype=np.int64)
    inverses = np.asarray(model.inverses, dtype=np.int64)
    elem_class = np.asarray(model.element_classes, dtype=np.int64)
    ncls = len(model.class_labels)
    cdf = _color_cdf(z)
    I = float(total_I(z))
    u = np.random.default_rng(args.seed).random((args.count, args.n, 3))

    impls = [("python", _pykernels)]
    if _ckernels is not None:
        impls.append(("cython", _ckernels))
    results = {}
    print(f"model={model.name} n={args.n} count={args.count}")
    for name, mod in impls:
        (colors, perms), t_sample = timed(mod.ewens_batch, u, cdf, I, cayley, inverses)
        counts, t_counts = timed(mod.cycle_type_counts, colors, perms, cayley, elem_class, ncls)
        results[name] = (colors, perms, counts)
        print(f"{name:>7}: ewens_batch {t_sample:8.3f}s   cycle_type_counts {t_counts:8.3f}s")
    if len(results) == 2:
        same = all(np.array_equal(a, b) for a, b in zip(results["python"], results["cython"]))
        print(f"identical outputs: {same}")
    else:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
