"""Time the compiled kernels against the pure-Python reference.

Usage::

    python3 benchmarks/bench_kernels.py --repeat 5 --r-max 10 --q-max 40
"""

import argparse
import timeit

from igamma import _kernels_py

try:
    from igamma import _kernels_cy
except ImportError:
    _kernels_cy = None


CASES = (
    ("segments real", lambda k, o: k.segments(o.a, o.x, 1.0, o.r_max, o.q_max)),
    ("segments complex", lambda k, o: k.segments(o.a, complex(o.x, 1.5), 1.0, o.r_max, o.q_max)),
    ("asymptotic_sum", lambda k, o: k.asymptotic_sum(o.a, o.x, 1.0 + o.x, o.r_max)),
)


def best_time(fn, number, repeat):
    """Best per-call time in microseconds."""
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number * 1e6


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a", type=float, default=3.14159)
    parser.add_argument("--x", type=float, default=2.0)
    parser.add_argument("--r-max", type=int, default=10)
    parser.add_argument("--q-max", type=int, default=40)
    parser.add_argument("--number", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=5)
    opts = parser.parse_args(argv)

    if _kernels_cy is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1

    print(f"{'case':<18}{'python us':>12}{'cython us':>12}{'speedup':>10}")
    for name, call in CASES:
        py = best_time(lambda: call(_kernels_py, opts), opts.number, opts.repeat)
        cy = best_time(lambda: call(_kernels_cy, opts), opts.number, opts.repeat)
        print(f"{name:<18}{py:>12.1f}{cy:>12.1f}{py / cy:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
