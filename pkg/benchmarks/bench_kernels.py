"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import cmath
import random
import timeit

from optlimit import _pykernels

try:
    from optlimit import _ckernels
except ImportError:
    _ckernels = None


def workloads(k, n_points: int = 2000, seed: int = 0):
    rng = random.Random(seed)
    zs = [cmath.rect(4 * rng.random(), 6.283185307179586 * rng.random()) for _ in range(n_points)]
    # a 40-crossing alternating-sign potential over random region values
    n = 40
    signs = [1 if i % 2 else -1 for i in range(n)]
    slots = [tuple(rng.sample(range(n + 2), 4)) for _ in range(n)]
    vals = [complex(rng.uniform(1, 3), rng.uniform(-2, 2)) for _ in range(n + 2)]

    def li2():
        for z in zs:
            k.li2(z)

    def logder():
        for cs in slots:
            k.crossing_logder(*(vals[i] for i in cs))

    def potential():
        k.potential_sum(signs, slots, vals)

    return {"li2 x2000": li2, "crossing_logder x40": logder, "potential_sum 40 crossings": potential}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled kernels not built; timing the fallback only")
    results = {}
    for name, mod in backends.items():
        for label, fn in workloads(mod).items():
            number = 20
            best = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
            results.setdefault(label, {})[name] = best
    print(f"{'workload':<28}" + "".join(f"{b:>14}" for b in backends) + ("   speed-up" if len(backends) > 1 else ""))
    for label, row in results.items():
        line = f"{label:<28}" + "".join(f"{row[b] * 1e3:>11.3f} ms" for b in backends)
        if len(backends) > 1:
            line += f"   {row['python'] / row['cython']:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
