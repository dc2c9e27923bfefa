#!/usr/bin/env python3
"""Write ordinates of the nontrivial zeta zeros, one per line.

Used to regenerate tests/data/zeta_zeros_*.txt. Uses python-flint
(acb.zeta_zeros) when installed, otherwise mpmath.zetazero (much slower).
"""
import argparse
import sys


def flint_zeros(start, count, digits):
    import flint

    flint.ctx.prec = max(64, int(digits * 3.33) + 40)
    chunk = 500
    n = start
    end = start + count
    while n < end:
        m = min(chunk, end - n)
        for z in flint.acb.zeta_zeros(n, m):
            yield z.imag.mid().str(digits + 6, radius=False)
        n += m


def mpmath_zeros(start, count, digits):
    import mpmath

    mpmath.mp.dps = digits + 8
    for n in range(start, start + count):
        yield str(mpmath.zetazero(n).imag)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("count", type=int, help="number of zeros")
    ap.add_argument("--start", type=int, default=1, help="index of the first zero")
    ap.add_argument("--digits", type=int, default=12, help="decimals written")
    ap.add_argument("--backend", choices=["auto", "flint", "mpmath"], default="auto")
    args = ap.parse_args()

    backend = args.backend
    if backend == "auto":
        try:
            import flint  # noqa: F401

            backend = "flint"
        except ImportError:
            backend = "mpmath"
    gen = flint_zeros if backend == "flint" else mpmath_zeros

    from decimal import Decimal

    q = Decimal(1).scaleb(-args.digits)
    for s in gen(args.start, args.count, args.digits):
        sys.stdout.write(f"{Decimal(s).quantize(q)}\n")


if __name__ == "__main__":
    main()
