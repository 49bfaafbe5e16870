"""Exact integer and rational helpers: n-th roots, log2 enclosures, primality.

Everything here works on Python ints and Fractions only.  The log2
enclosures are honest intervals: directed rounding throughout, so
``lo <= log2(p) <= hi`` is a theorem, not an estimate.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import PrecisionError, SizeCapError


def nth_root_floor(n: int, k: int) -> int:
    """Largest integer t with t**k <= n, for n >= 0, k >= 1."""
    if k < 1:
        raise ValueError("root index must be >= 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k == 1 or n in (0, 1):
        return n
    # Newton iteration from an overestimate; monotonically decreasing.
    x = 1 << ((n.bit_length() - 1) // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def nth_root_floor_fraction(q: Fraction, k: int) -> int:
    """Largest integer t >= 0 with t**k <= q, for q >= 0, k >= 1."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    # floor((num/den)^(1/k)) == floor(floor(num/den)^(1/k)) for integers t:
    # t^k <= num/den iff t^k <= floor(num/den) since t^k is an integer.
    t = nth_root_floor(q.numerator // q.denominator, k)
    while (t + 1) ** k * q.denominator <= q.numerator:
        t += 1
    while t > 0 and t ** k * q.denominator > q.numerator:
        t -= 1
    return t


@lru_cache(maxsize=None)
def log2_bounds(p: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rigorous enclosure lo <= log2(p) <= hi, normally of width 2**(1 - bits).

    Fixed-point binary-digit extraction: scale p into [1, 2), then square
    repeatedly at working precision bits + 32, rounding the lower track
    down and the upper track up.  If the two tracks ever straddle 2 the
    next digit is undecidable at this precision and a wider (but still
    honest) interval is returned; callers refine by doubling ``bits``.
    """
    if p < 1:
        raise ValueError("log2 bounds need p >= 1")
    if bits < 1:
        raise ValueError("bits must be positive")
    if p & (p - 1) == 0:
        exact = Fraction(p.bit_length() - 1)
        return exact, exact
    e = p.bit_length() - 1
    prec = bits + 32
    scaled = p << prec
    lo = scaled >> e
    hi = lo + (1 if scaled & ((1 << e) - 1) else 0)
    two = 2 << prec
    frac_lo = Fraction(0)
    for i in range(1, bits + 1):
        lo = (lo * lo) >> prec
        hi = -((-(hi * hi)) >> prec)
        if lo >= two:
            frac_lo += Fraction(1, 1 << i)
            lo >>= 1
            hi = -((-hi) >> 1)
        elif hi >= two:
            # Straddle: the i-th digit is undecidable at this precision.
            return e + frac_lo, e + frac_lo + Fraction(3, 1 << i)
    return e + frac_lo, e + frac_lo + Fraction(2, 1 << bits)


#: Largest intermediate size (in bits, roughly) floor_pow2_rational will
#: materialize before switching to log-comparison bracketing.
MATERIALIZE_CAP_BITS = 1 << 20

#: Refinement cap for rational-vs-log2 comparisons in the bracketing path.
COMPARE_BITS_CAP = 1 << 12


def floor_pow2_bracketed(k: int, compare_to_log2: Callable[[int], int]) -> int:
    """Largest t in [2**k, 2**(k+1)) with log2(t) <= the target value.

    ``compare_to_log2(t)`` must return the sign of (target - log2(t));
    the target is assumed to lie in [k, k + 1).
    """
    lo, hi = 1 << k, (1 << (k + 1)) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if compare_to_log2(mid) >= 0:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _compare_rational_to_log2(q: Fraction, t: int, bits_cap: int) -> int:
    """Sign of q - log2(t) for rational q and integer t >= 1."""
    if t == 1:
        return (q > 0) - (q < 0)
    bits = 32
    while True:
        lo, hi = log2_bounds(t, bits)
        if q > hi:
            return 1
        if q < lo:
            return -1
        if lo == hi:
            # t is a power of two, log2(t) exact, and q equals it.
            return 0
        if bits >= bits_cap:
            raise PrecisionError(
                f"cannot order {q} against log2({t}) within {bits_cap} bits"
            )
        bits = min(2 * bits, bits_cap)


def floor_pow2_rational(
    q: Fraction,
    materialize_cap: int = MATERIALIZE_CAP_BITS,
    compare_bits_cap: int = COMPARE_BITS_CAP,
) -> int:
    """Integer part of 2**q for rational q >= 0, decided exactly.

    For moderate denominators this clears the denominator: floor(2**(a/b))
    is the integer b-th root of 2**a.  When that intermediate would be
    astronomically wide (huge denominators, e.g. high-precision rational
    probes), the answer itself is still small, so it is bracketed by
    binary search with rigorous log2 comparisons instead; 2**q is then
    irrational (b does not divide a), so comparisons always resolve.
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("exponent must be nonnegative")
    k = q.numerator // q.denominator
    beta = q.denominator
    if (k + 2) * beta <= materialize_cap:
        return nth_root_floor_fraction(Fraction(2) ** q.numerator, beta)
    if beta == 1:
        raise SizeCapError(
            f"integer part of 2**{q} is too large to materialize"
        )
    return floor_pow2_bracketed(
        k, lambda t: _compare_rational_to_log2(q, t, compare_bits_cap)
    )


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for all n < 3.3 * 10**24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
