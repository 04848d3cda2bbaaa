"""Exact numbers and outward-rounded real enclosures.

Integers and rationals are the builtin ``int`` and ``fractions.Fraction``.
Real quantities that need ``ln``/``exp`` are carried as :class:`RealEnclosure`,
a closed interval with dyadic endpoints.  Every operation rounds its endpoints
outward, so the exact real value always stays inside.

The transcendental kernels work in fixed point on Python integers: ``ln`` via
reduction to ``[1, 2)`` and the ``atanh`` series, ``exp`` via reduction by
``ln 2`` and a Taylor series.  Both carry an explicit tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

DEFAULT_PREC = 128
MAX_PREC = 1 << 15
_GUARD = 32

Rational = Union[int, Fraction]


class DomainError(ValueError):
    """Raised when a real function is evaluated outside its domain."""


def _as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def round_down(x: Fraction, prec: int) -> Fraction:
    """Largest dyadic with about ``prec`` significant bits that is <= x."""
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    e = abs(n).bit_length() - d.bit_length()
    shift = prec - e
    if shift >= 0:
        return Fraction((n << shift) // d, 1 << shift)
    return Fraction((n // (d << -shift)) << -shift)


def round_up(x: Fraction, prec: int) -> Fraction:
    return -round_down(-x, prec)


def _div(a: int, b: int, up: bool) -> int:
    # b > 0
    return -((-a) // b) if up else a // b


def _fixed(x: Fraction, w: int, up: bool) -> int:
    return _div(x.numerator << w, x.denominator, up)


def _atanh_fixed(z: Fraction, w: int, up: bool) -> int:
    """Bound of atanh(z) * 2**w for rational 0 <= z <= 1/3."""
    if z == 0:
        return 0
    one = 1 << w
    zf = _fixed(z, w, up)
    z2 = _div(zf * zf, one, up)
    total = 0
    power = zf
    k = 0
    while True:
        total += _div(power, 2 * k + 1, up)
        power = _div(power * z2, one, up)
        k += 1
        if not up and power == 0:
            return total
        if up and power <= 1:
            # remaining terms sum to at most power / ((2k+1)(1 - z^2)) <= 2 * power
            return total + 2 * power + 1


_LN2_CACHE: dict[int, tuple[int, int]] = {}


def _ln2_fixed(w: int) -> tuple[int, int]:
    """(lower, upper) bounds of ln 2 * 2**w."""
    hit = _LN2_CACHE.get(w)
    if hit is None:
        third = Fraction(1, 3)
        hit = (2 * _atanh_fixed(third, w, False), 2 * _atanh_fixed(third, w, True))
        _LN2_CACHE[w] = hit
    return hit


def _ln_point(x: Fraction, w: int, up: bool) -> Fraction:
    """One-sided bound of ln x for rational x > 0, accurate to ~2**-w."""
    if x == 1:
        return Fraction(0)
    k = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / (Fraction(2) ** k)
    if y < 1:
        k -= 1
        y *= 2
    elif y >= 2:
        k += 1
        y /= 2
    ww = w + _GUARD + abs(k).bit_length()
    ln2_lo, ln2_hi = _ln2_fixed(ww)
    if k >= 0:
        base = k * (ln2_hi if up else ln2_lo)
    else:
        base = k * (ln2_lo if up else ln2_hi)
    z = (y - 1) / (y + 1)
    total = base + 2 * _atanh_fixed(z, ww, up)
    return Fraction(total, 1 << ww)


def _exp_small_fixed(r: Fraction, w: int, up: bool) -> int:
    """Bound of exp(r) * 2**w for rational 0 <= r < 1."""
    one = 1 << w
    rf = _fixed(r, w, up)
    total = one
    term = one
    j = 1
    while True:
        term = _div(term * rf, j * one, up)
        total += term
        if not up and term == 0:
            return total
        if up and term <= 1 and j >= 1:
            # tail after term j is at most term_j * (r/(j+1)) / (1 - r/(j+2)) < term_j
            return total + term
        j += 1


def _exp_point(x: Fraction, w: int, up: bool) -> Fraction:
    """One-sided bound of exp(x) for rational x, relative accuracy ~2**-w."""
    if x == 0:
        return Fraction(1)
    k = math.floor(x / Fraction(_ln2_fixed(64)[0], 1 << 64))
    ww = w + _GUARD + abs(k).bit_length()
    ln2_lo, ln2_hi = _ln2_fixed(ww)
    scale = 1 << ww
    # r = x - k ln2; pick the ln2 endpoint that pushes r in the wanted direction
    if k >= 0:
        r = x - Fraction(k * (ln2_lo if up else ln2_hi), scale)
    else:
        r = x - Fraction(k * (ln2_hi if up else ln2_lo), scale)
    if r >= 0:
        # a slightly wider ln2 bracket can leave r just above ln 2; still < 1
        val = Fraction(_exp_small_fixed(r, ww, up), scale)
    else:
        inv = Fraction(_exp_small_fixed(-r, ww, not up), scale)
        val = 1 / inv
    return val * Fraction(2) ** k


@dataclass(frozen=True)
class RealEnclosure:
    """Closed interval [lo, hi] with dyadic endpoints."""

    lo: Fraction
    hi: Fraction
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x: Rational, prec: int = DEFAULT_PREC) -> "RealEnclosure":
        """Smallest dyadic enclosure of the rational ``x`` at ``prec`` bits."""
        x = _as_fraction(x)
        return cls(round_down(x, prec), round_up(x, prec), prec)

    @classmethod
    def between(cls, lo: Rational, hi: Rational, prec: int = DEFAULT_PREC) -> "RealEnclosure":
        return cls(round_down(_as_fraction(lo), prec), round_up(_as_fraction(hi), prec), prec)

    def _coerce(self, other) -> "RealEnclosure":
        if isinstance(other, RealEnclosure):
            return other
        if isinstance(other, (int, Fraction)):
            return RealEnclosure.exact(other, self.prec)
        return NotImplemented

    def _make(self, lo: Fraction, hi: Fraction, prec: int) -> "RealEnclosure":
        return RealEnclosure(round_down(lo, prec), round_up(hi, prec), prec)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return RealEnclosure(-self.hi, -self.lo, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = max(self.prec, other.prec)
        return self._make(self.lo + other.lo, self.hi + other.hi, prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return self._make(min(prods), max(prods), max(self.prec, other.prec))

    __rmul__ = __mul__

    def reciprocal(self) -> "RealEnclosure":
        if self.lo <= 0 <= self.hi:
            raise DomainError("reciprocal of an enclosure containing 0")
        return self._make(1 / self.hi, 1 / self.lo, self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            return RealEnclosure(Fraction(1), Fraction(1), self.prec)
        a, b = self.lo ** n, self.hi ** n
        if self.lo >= 0 or n % 2 == 1:
            return self._make(min(a, b), max(a, b), self.prec)
        if self.hi <= 0:
            return self._make(b, a, self.prec)
        return self._make(Fraction(0), max(a, b), self.prec)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealEnclosure(Fraction(0), max(-self.lo, self.hi), self.prec)

    # -- queries ------------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Union[Rational, "RealEnclosure"]) -> bool:
        if isinstance(x, RealEnclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "RealEnclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def certainly_le(self, other: Union[Rational, "RealEnclosure"]) -> bool:
        bound = other.lo if isinstance(other, RealEnclosure) else other
        return self.hi <= bound

    def certainly_lt(self, other: Union[Rational, "RealEnclosure"]) -> bool:
        bound = other.lo if isinstance(other, RealEnclosure) else other
        return self.hi < bound

    def with_prec(self, prec: int) -> "RealEnclosure":
        return RealEnclosure(self.lo, self.hi, prec)

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.mid())

    def __repr__(self):
        return f"RealEnclosure([{float(self.lo)!r}, {float(self.hi)!r}], prec={self.prec})"


def interval_ln(x: RealEnclosure) -> RealEnclosure:
    """Enclosure of ln over ``x``; requires ``x.lo > 0``."""
    if x.lo <= 0:
        raise DomainError("ln of a nonpositive enclosure")
    w = x.prec + 8
    return x._make(_ln_point(x.lo, w, False), _ln_point(x.hi, w, True), x.prec)


def interval_exp(x: RealEnclosure) -> RealEnclosure:
    """Enclosure of exp over ``x``."""
    w = x.prec + 8
    return x._make(_exp_point(x.lo, w, False), _exp_point(x.hi, w, True), x.prec)


def interval_sqrt(x: RealEnclosure) -> RealEnclosure:
    """Enclosure of the square root over ``x``; requires ``x.lo >= 0``."""
    if x.lo < 0:
        raise DomainError("sqrt of a negative enclosure")

    def bound(v: Fraction, up: bool) -> Fraction:
        if v == 0:
            return Fraction(0)
        n, d = v.numerator, v.denominator
        # sqrt(n/d) = sqrt(n*d) / d, scaled by 2**s
        s = max(0, x.prec + 8 - ((n * d).bit_length() // 2) + d.bit_length())
        t = (n * d) << (2 * s)
        r = math.isqrt(t)
        if up and r * r != t:
            r += 1
        return Fraction(r, d << s)

    return x._make(bound(x.lo, False), bound(x.hi, True), x.prec)


def interval_root(x: RealEnclosure, k: int) -> RealEnclosure:
    """Enclosure of the positive k-th root over ``x`` (``x.lo > 0`` unless k == 1)."""
    if k == 1:
        return x
    if k == 2:
        return interval_sqrt(x)
    return interval_exp(interval_ln(x) / k)


def ceil_upper(x: RealEnclosure) -> int:
    """Smallest integer >= x.hi, hence >= every point of ``x``."""
    return math.ceil(x.hi)


def certified_ceil(
    compute: Callable[[int], RealEnclosure],
    prec: int = DEFAULT_PREC,
    max_prec: int = MAX_PREC,
) -> tuple[int, int, bool]:
    """Refine ``compute(prec)`` by doubling precision until the ceiling settles.

    Returns ``(ceiling, precision_used, stable)``.  When the cap is reached the
    ceiling from the last (finest) run is returned with ``stable=False``; it is
    still a valid upper bound.
    """
    enc = compute(prec)
    if enc.is_exact and enc.lo.denominator == 1:
        return ceil_upper(enc), prec, True
    prev = ceil_upper(enc)
    while prec < max_prec:
        prec *= 2
        cur = ceil_upper(compute(prec))
        if cur == prev:
            return cur, prec, True
        prev = cur
    return prev, prec, False


def to_decimal(x: Rational, digits: int = 40, up: bool = False) -> str:
    """Decimal string for ``x`` with about ``digits`` significant digits.

    Rounds toward +inf when ``up`` and toward -inf otherwise, so a pair of
    endpoints keeps enclosing the same interval.  Integers are printed in full.
    """
    x = _as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    ip = abs(x.numerator) // x.denominator
    if ip:
        dec = max(0, digits - len(str(ip)))
    else:
        # leading zeros after the point
        dec = digits + len(str(x.denominator)) - len(str(abs(x.numerator)))
    scaled = x * 10**dec
    n = math.ceil(scaled) if up else math.floor(scaled)
    if dec == 0:
        return str(n)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(dec + 1, "0")
    return f"{sign}{s[:-dec]}.{s[-dec:]}"
