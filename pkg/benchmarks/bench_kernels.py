#!/usr/bin/env python3
"""Benchmark: compiled Cython kernels vs the pure-Python fallback.

Times the hot exact kernels (integer determinant signs, cyclotomic
multiplication) on both backends, then a full spectrum run. Run after
building the extension:

    python benchmarks/bench_kernels.py
"""
import random
import time
from fractions import Fraction

from ordinarycircles import _kernels_py

try:
    from ordinarycircles import _kernels as _compiled
except ImportError:
    _compiled = None

from ordinarycircles.exactnum import CycloField


def timeit(fn, reps):
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        fn(reps)
        best = min(best, time.perf_counter() - start)
    return best


def bench_det4(mod, data, reps):
    def run(n):
        f = mod.det4_sign
        for i in range(n):
            f(data[i % len(data)])

    return run


def bench_cyclo(mod, field, vecs, reps):
    rows = field.reduction_rows
    deg = field.degree

    def run(n):
        f = mod.poly_mul_reduce
        for i in range(n):
            a, b = vecs[i % len(vecs)]
            f(a, b, rows, deg)

    return run


def main():
    rnd = random.Random(0)
    rows = []
    print(f"{'kernel':<34}{'pure':>12}{'compiled':>12}{'speedup':>9}")

    cases = [
        ("det4_sign, 16-bit entries", 2**16, 20000),
        ("det4_sign, 256-bit entries", 2**256, 4000),
    ]
    for name, bound, reps in cases:
        data = [
            [rnd.randint(-bound, bound) for _ in range(16)] for _ in range(64)
        ]
        t_pure = timeit(bench_det4(_kernels_py, data, reps), reps)
        if _compiled:
            t_comp = timeit(bench_det4(_compiled, data, reps), reps)
            rows.append((name, t_pure, t_comp))
        else:
            rows.append((name, t_pure, None))

    for m, bound, reps in ((8, 2**30, 20000), (28, 2**30, 4000), (28, 2**200, 1500)):
        field = CycloField(m)
        vecs = [
            (
                tuple(rnd.randint(-bound, bound) for _ in range(field.degree)),
                tuple(rnd.randint(-bound, bound) for _ in range(field.degree)),
            )
            for _ in range(64)
        ]
        name = f"cyclo mul, m={m}, {bound.bit_length()}-bit"
        t_pure = timeit(bench_cyclo(_kernels_py, field, vecs, reps), reps)
        if _compiled:
            t_comp = timeit(bench_cyclo(_compiled, field, vecs, reps), reps)
            rows.append((name, t_pure, t_comp))
        else:
            rows.append((name, t_pure, None))

    for name, t_pure, t_comp in rows:
        if t_comp is None:
            print(f"{name:<34}{t_pure:>11.3f}s{'-':>12}{'-':>9}")
        else:
            print(f"{name:<34}{t_pure:>11.3f}s{t_comp:>11.3f}s{t_pure / t_comp:>8.1f}x")

    # end to end: spectrum of an aligned double hexagon under both backends
    import subprocess
    import sys

    script = (
        "import time, random;"
        "from fractions import Fraction as F;"
        "from ordinarycircles.geometry import Point;"
        "from ordinarycircles.spectrum import spectrum_naive;"
        "rnd=random.Random(0);"
        "pts=[Point.rational(F(rnd.randint(-500,500),rnd.randint(1,40)),"
        "F(rnd.randint(-500,500),rnd.randint(1,40))) for _ in range(40)];"
        "t=time.perf_counter();spectrum_naive(pts);print(f'{time.perf_counter()-t:.3f}')"
    )
    print()
    import os

    for backend in ("compiled", "pure"):
        full_env = dict(os.environ)
        if backend == "pure":
            full_env["ORDINARYCIRCLES_KERNEL"] = "pure"
        else:
            full_env.pop("ORDINARYCIRCLES_KERNEL", None)
        out = subprocess.run(
            [sys.executable, "-c", script], capture_output=True, text=True, env=full_env
        )
        print(f"spectrum_naive(40 random rational points), {backend}: {out.stdout.strip()}s")


if __name__ == "__main__":
    main()
