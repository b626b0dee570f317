"""Timing comparison of the compiled sweep kernel against its pure twin.

Both implementations run the same exhaustive Smith-normal-form sweeps over
flattened chain-ring tables; counts and failure codes must agree exactly.
Usage: python benchmarks/bench_kernels.py [--full]
"""

import argparse
import time

from finring import _speedups_py
from finring.core import NilpotentAlgebra, ZMod, build_ring
from finring.kernels import COMPILED, chain_kernel_tables, sweep_size

try:
    from finring import _speedups
except ImportError:
    _speedups = None


def run_sweep(impl, ring, m, n, orbit=True):
    t = chain_kernel_tables(ring)
    start = time.perf_counter()
    checked, code, bad = impl.snf_sweep(
        t.size, m, n, t.zero, t.one, t.add, t.sub, t.mul, t.lq, t.vlen,
        t.canon, t.cscale, t.is_unit, t.reps, orbit,
    )
    elapsed = time.perf_counter() - start
    if code != 0:
        raise AssertionError(f"{ring.label} {m}x{n}: failcode {code}, {bad}")
    return checked, elapsed


def bench_pair(ring, m, n):
    py_checked, py_t = run_sweep(_speedups_py, ring, m, n)
    line = (
        f"{ring.label:>12} {m}x{n}: {py_checked:>9,} matrices"
        f"  python {py_checked / py_t:>10,.0f}/s"
    )
    if _speedups is not None:
        c_checked, c_t = run_sweep(_speedups, ring, m, n)
        if c_checked != py_checked:
            raise AssertionError(
                f"kernel mismatch on {ring.label}: {c_checked} vs {py_checked}"
            )
        line += (
            f"  compiled {c_checked / c_t:>12,.0f}/s"
            f"  speedup x{py_t / c_t:,.1f}"
        )
    print(line)


def bench_compiled_only(ring, m, n):
    t = chain_kernel_tables(ring)
    expected = sweep_size(t.size, m, n, len(t.reps), True)
    checked, c_t = run_sweep(_speedups, ring, m, n)
    assert checked == expected
    print(
        f"{ring.label:>12} {m}x{n}: {checked:>11,} matrices"
        f"  compiled {checked / c_t:>12,.0f}/s"
    )


def main():
    parser = argparse.ArgumentParser(
        description="compare the compiled and pure sweep kernels"
    )
    parser.add_argument(
        "--full", action="store_true", help="add compiled-only 3x3 sweeps"
    )
    args = parser.parse_args()

    print(f"compiled extension importable: {_speedups is not None}")
    print(f"kernel selected by the library: "
          f"{'compiled' if COMPILED else 'python'}")

    rings = [
        build_ring(ZMod(4)),
        build_ring(NilpotentAlgebra(2, ("x",), 3, ())),
        build_ring(ZMod(9)),
        build_ring(ZMod(11)),
    ]
    for ring in rings:
        bench_pair(ring, 2, 2)
    bench_pair(build_ring(ZMod(11)), 2, 3)

    if args.full:
        if _speedups is None:
            print("no compiled extension; skipping 3x3 sweeps")
            return
        for ring in (build_ring(ZMod(8)), build_ring(ZMod(9))):
            bench_compiled_only(ring, 3, 3)


if __name__ == "__main__":
    main()
