"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5] [--json]
"""

import argparse
import json
import sys
import timeit

import numpy as np

from gswavelet import _kernels


def cases(rng):
    t1 = rng.normal(size=4096) + 1j * rng.normal(size=4096)
    y1 = rng.uniform(-40, 40, 8192)
    t2 = rng.normal(size=(256, 256)) + 1j * rng.normal(size=(256, 256))
    y2 = rng.uniform(-20, 20, (4096, 2))
    s1 = rng.normal(size=1024) + 0j
    x1 = rng.uniform(-3, 3, 1024)
    s2 = rng.normal(size=(64, 64)) + 0j
    x2 = rng.uniform(-3, 3, (256, 2))
    return {
        "periodized_sample_1d": lambda impl: _kernels.periodized_sample(
            t1, -32.0, 64 / 4096, y1, 2.0, 64.0, 3, impl=impl),
        "periodized_sample_2d": lambda impl: _kernels.periodized_sample(
            t2, -16.0, 32 / 256, y2, 1.5, 32.0, 2, impl=impl),
        "dtft_1d": lambda impl: _kernels.dtft(s1, -32.0, 1 / 16, x1, impl=impl),
        "dtft_2d": lambda impl: _kernels.dtft(s2, -8.0, 0.25, x2, impl=impl),
    }


def run(repeat):
    impls = _kernels.backends()
    rows = []
    for name, fn in cases(np.random.default_rng(0)).items():
        row = {"kernel": name}
        ref = fn(impls["python"])
        for label, impl in impls.items():
            row[label] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=repeat))
            if label != "python":
                err = np.max(np.abs(fn(impl) - ref)) / max(np.max(np.abs(ref)), 1e-300)
                row["max_rel_diff"] = float(err)
        if "compiled" in row:
            row["speedup"] = row["python"] / row["compiled"]
        rows.append(row)
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    if "compiled" not in _kernels.backends():
        print("compiled backend unavailable; timing the fallback only", file=sys.stderr)
    print(f"{'kernel':24s} {'python [s]':>11s} {'compiled [s]':>13s} "
          f"{'speedup':>8s} {'rel diff':>9s}")
    for r in rows:
        print(f"{r['kernel']:24s} {r['python']:11.4f} {r.get('compiled', float('nan')):13.4f} "
              f"{r.get('speedup', float('nan')):8.1f} {r.get('max_rel_diff', float('nan')):9.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
