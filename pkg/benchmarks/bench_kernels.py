"""Time the compiled coefficient kernels against the pure-Python fallback.

Run ``python3 benchmarks/bench_kernels.py``.  Each row reports the best of
five repeats for both backends on the same inputs.
"""
import argparse
import random
import timeit
from fractions import Fraction

from gwafree import kernels


def _coeffs(rng, n, p):
    if p:
        return [rng.randrange(p) for _ in range(n - 1)] + [rng.randrange(1, p)]
    return [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n - 1)] + [Fraction(1)]


def cases(deg, p, rng):
    a, b = _coeffs(rng, deg + 1, p), _coeffs(rng, deg // 2 + 1, p)
    s = rng.randrange(1, p) if p else Fraction(3, 2)
    return {
        "poly_mul": lambda k: k.poly_mul(a, b, p),
        "poly_divmod": lambda k: k.poly_divmod(a, b, p),
        "taylor_shift": lambda k: k.taylor_shift(a, s, p),
        "scale_var": lambda k: k.scale_var(a, s, p),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", type=int, nargs="+", default=[8, 32, 128])
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled kernels not built; only the fallback is available")
    backends = [("python", kernels.pure)] + ([("cython", kernels.compiled)] if kernels.compiled else [])
    rng = random.Random(0)
    print(f"{'kernel':<14}{'field':<8}{'deg':>5}" + "".join(f"{n:>12}" for n, _ in backends) + "   speedup")
    for p in (0, 1000003):
        for deg in args.degrees:
            for name, fn in cases(deg, p, rng).items():
                times = []
                for _, mod in backends:
                    assert fn(mod) == fn(kernels.pure)
                    t = min(timeit.repeat(lambda: fn(mod), number=args.number, repeat=5))
                    times.append(t / args.number * 1e6)
                row = f"{name:<14}{'QQ' if not p else 'GF(p)':<8}{deg:>5}" + "".join(f"{t:>10.1f}us" for t in times)
                if len(times) == 2:
                    row += f"   {times[0] / times[1]:6.2f}x"
                print(row)


if __name__ == "__main__":
    main()
