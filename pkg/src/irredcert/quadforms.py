"""Binary quadratic forms, ideals and units of quadratic orders.

Everything here is integer arithmetic on a fundamental discriminant ``disc``.
Ideals use the Z-basis ``(1, w)`` of the maximal order with
``w = (disc + sqrt(disc)) / 2``, so ``w**2 = disc*w - (disc**2 - disc)/4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from sympy.ntheory import sqrt_mod

Form = tuple[int, int, int]


def omega_constant(disc: int) -> int:
    """The constant term (disc**2 - disc)/4 of the minimal polynomial of w."""
    return (disc * disc - disc) // 4


# -- forms ------------------------------------------------------------------


def form_disc(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def reduce_definite(f: Form) -> Form:
    """Reduced representative of a positive definite form.

    Reduced means ``|b| <= a <= c`` with ``b >= 0`` whenever ``|b| == a`` or
    ``a == c``.
    """
    a, b, c = f
    if a <= 0 or form_disc(f) >= 0:
        raise ValueError(f"{f} is not positive definite")
    while True:
        # normalize b into (-a, a]
        if not -a < b <= a:
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def reduced_definite_forms(disc: int) -> list[Form]:
    """All reduced primitive positive definite forms of discriminant ``disc``."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"bad negative discriminant {disc}")
    out = []
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def _lt_sqrt(x: int, d: int) -> bool:
    """x < sqrt(d) for d > 0 not a square."""
    return x < 0 or x * x < d


def is_reduced_indefinite(f: Form) -> bool:
    a, b, c = f
    d = form_disc(f)
    # 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b
    return (
        b > 0
        and _lt_sqrt(b, d)
        and not _lt_sqrt(2 * abs(a) + b, d)
        and _lt_sqrt(2 * abs(a) - b, d)
    )


def reduced_indefinite_forms(disc: int) -> list[Form]:
    """All reduced primitive indefinite forms of (non-square) discriminant ``disc``."""
    if disc <= 0 or math.isqrt(disc) ** 2 == disc:
        raise ValueError(f"bad positive discriminant {disc}")
    out = []
    s = math.isqrt(disc)
    for b in range(1, s + 1):
        if (b * b - disc) % 4:
            continue
        ac = (b * b - disc) // 4
        for a_abs in range(1, (s + b) // 2 + 1):
            if ac % a_abs:
                continue
            for a in (a_abs, -a_abs):
                f = (a, b, ac // a)
                if is_reduced_indefinite(f) and math.gcd(math.gcd(a, b), f[2]) == 1:
                    out.append(f)
    return out


def rho(f: Form) -> Form:
    """One step of the indefinite reduction operator."""
    a, b, c = f
    d = form_disc(f)
    s = math.isqrt(d)
    two_c = 2 * abs(c)
    # b' = -b mod 2c, normalized into (sqrt(d) - 2|c|, sqrt(d)) when |c| < sqrt(d)
    if _lt_sqrt(abs(c), d):
        r = -b + two_c * ((s + b) // two_c)
        while not _lt_sqrt(r, d):
            r -= two_c
        while _lt_sqrt(r + two_c, d):
            r += two_c
    else:
        r = -b % two_c
        if r > abs(c):
            r -= two_c
    return c, r, (r * r - d) // (4 * c)


def indefinite_cycles(disc: int) -> list[list[Form]]:
    """Partition the reduced indefinite forms into cycles under ``rho``."""
    remaining = set(reduced_indefinite_forms(disc))
    cycles = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        cyc = [start]
        remaining.discard(start)
        f = rho(start)
        while f != start:
            cyc.append(f)
            remaining.discard(f)
            f = rho(f)
        cycles.append(cyc)
    return cycles


def class_number_from_forms(disc: int) -> int:
    """Class number of the maximal order of discriminant ``disc``.

    Negative ``disc``: the number of reduced definite forms.  Positive: the
    number of rho-cycles of reduced indefinite forms after identifying each
    cycle with that of ``(-a, b, -c)``.  The raw cycle count is the narrow
    class number.
    """
    if disc < 0:
        return len(reduced_definite_forms(disc))
    cycles = indefinite_cycles(disc)
    index = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    merged = set()
    for i, cyc in enumerate(cycles):
        a, b, c = cyc[0]
        merged.add(frozenset((i, index[(-a, b, -c)])))
    return len(merged)


# -- ideals -----------------------------------------------------------------


def elt_mul(disc: int, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    """Product of u + v*w elements given as coordinate pairs."""
    u1, v1 = x
    u2, v2 = y
    k = omega_constant(disc)
    return u1 * u2 - v1 * v2 * k, u1 * v2 + u2 * v1 + v1 * v2 * disc


def elt_norm(disc: int, x: tuple[int, int]) -> int:
    u, v = x
    return u * u + disc * u * v + omega_constant(disc) * v * v


def _hnf(vectors: list[tuple[int, int]]) -> tuple[int, int, int]:
    """HNF (a, b, d) of the lattice spanned by ``vectors``: Za + Z(b + d w)."""
    # gcd of second coordinates with a matching first coordinate
    pivot = (0, 0)
    rest = []
    for u, v in vectors:
        pu, pv = pivot
        if v == 0:
            rest.append(u)
            continue
        if pv == 0:
            pivot = (u, v)
            continue
        g, s, t = _xgcd(pv, v)
        new_pivot = (s * pu + t * u, g)
        # the complementary combination has zero second coordinate
        rest.append((v // g) * pu - (pv // g) * u)
        pivot = new_pivot
    pu, pv = pivot
    if pv < 0:
        pu, pv = -pu, -pv
    a = 0
    for u in rest:
        a = math.gcd(a, u)
    if a == 0 or pv == 0:
        raise ValueError("lattice is not of full rank")
    return a, pu % a, pv


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class QuadIdeal:
    """Fractional-free ideal Za + Z(b + d*w) of the maximal order."""

    disc: int
    a: int
    b: int
    d: int

    @classmethod
    def from_generators(cls, disc: int, gens: list[tuple[int, int]]) -> "QuadIdeal":
        vecs = []
        for g in gens:
            vecs.append(g)
            vecs.append(elt_mul(disc, g, (0, 1)))
        a, b, d = _hnf(vecs)
        return cls(disc, a, b, d)

    @classmethod
    def principal(cls, disc: int, x: tuple[int, int]) -> "QuadIdeal":
        return cls.from_generators(disc, [x])

    @classmethod
    def unit(cls, disc: int) -> "QuadIdeal":
        return cls(disc, 1, 0, 1)

    @property
    def norm(self) -> int:
        return self.a * self.d

    def basis(self) -> list[tuple[int, int]]:
        return [(self.a, 0), (self.b, self.d)]

    def __mul__(self, other: "QuadIdeal") -> "QuadIdeal":
        gens = [elt_mul(self.disc, x, y) for x in self.basis() for y in other.basis()]
        return QuadIdeal.from_generators(self.disc, gens)

    def __pow__(self, n: int) -> "QuadIdeal":
        result = QuadIdeal.unit(self.disc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "QuadIdeal":
        # conj(w) = disc - w
        return QuadIdeal.from_generators(self.disc, [(self.a, 0), (self.b + self.d * self.disc, -self.d)])

    def contains(self, x: tuple[int, int]) -> bool:
        u, v = x
        if v % self.d:
            return False
        t = v // self.d
        return (u - t * self.b) % self.a == 0

    def is_primitive(self) -> bool:
        return self.d == 1

    def to_form(self) -> Form:
        """Form (a, b, c) for a primitive ideal [a, (-b + sqrt(disc))/2]."""
        if self.d != 1:
            raise ValueError("ideal is not primitive")
        # b + w = (2b + disc + sqrt(disc)) / 2, so the form's middle coefficient is -(2b + disc)
        a = self.a
        bf = -(2 * self.b + self.disc)
        bf = bf % (2 * a)
        if bf > a:
            bf -= 2 * a
        return a, bf, (bf * bf - self.disc) // (4 * a)


def omega_roots(disc: int, q: int) -> list[int]:
    """Roots mod q of the minimal polynomial of w, ascending."""
    if q == 2:
        k = omega_constant(disc)
        return [s for s in range(2) if (s * s - disc * s + k) % 2 == 0]
    # w = (disc + sqrt(disc))/2
    half = pow(2, -1, q)
    return sorted({(disc + r) * half % q for r in sqrt_mod(disc % q, q, all_roots=True)})


def prime_ideals_above(disc: int, q: int) -> list[QuadIdeal]:
    """Prime ideals above the rational prime ``q``."""
    roots = omega_roots(disc, q)
    if not roots:
        return [QuadIdeal(disc, q, 0, q)]
    return [QuadIdeal.from_generators(disc, [(q, 0), (-s, 1)]) for s in roots]


def elements_of_norm(disc: int, n: int, y_max: int | None = None) -> Iterator[tuple[int, int]]:
    """Elements u + v*w with norm +-n (only +n when disc < 0).

    For ``disc > 0`` the search over the irrational coordinate stops at ``y_max``.
    """
    # the element is (x + y*sqrt(disc))/2, i.e. u = (x - disc*y)/2, v = y
    if disc < 0:
        y_max = math.isqrt(4 * n // -disc)
    elif y_max is None:
        raise ValueError("real quadratic search needs y_max")
    for y in range(0, y_max + 1):
        for sgn in ((1,) if disc < 0 else (1, -1)):
            x2 = sgn * 4 * n + disc * y * y
            if x2 < 0:
                continue
            x = math.isqrt(x2)
            if x * x != x2:
                continue
            for xs in {x, -x}:
                for ys in {y, -y}:
                    if (xs - disc * ys) % 2:
                        continue
                    yield (xs - disc * ys) // 2, ys


def is_principal(ideal: QuadIdeal) -> bool:
    """Principality test for ideals of imaginary quadratic orders."""
    if ideal.disc >= 0:
        raise ValueError("principality by enumeration needs disc < 0")
    return any(ideal.contains(x) for x in elements_of_norm(ideal.disc, ideal.norm))


# -- units ------------------------------------------------------------------


def fundamental_unit(m: int) -> tuple[Fraction, Fraction]:
    """Fundamental unit ``x + y*sqrt(m) > 1`` of Q(sqrt m), m > 1 squarefree.

    Expands sqrt(m) (or (1 + sqrt m)/2 when m = 1 mod 4) as a continued
    fraction and returns the first convergent that yields a unit.
    """
    if m <= 1:
        raise ValueError("real quadratic field required")
    s = math.isqrt(m)
    half = m % 4 == 1
    P, Q = (1, 2) if half else (0, 1)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while True:
        a = (P + s) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        P = a * Q - P
        Q = (m - P * P) // Q
        if half:
            # unit p - q * conj(w), conj(w) = (1 - sqrt m)/2
            norm = p * p - p * q - q * q * (m - 1) // 4
            if abs(norm) == 1:
                return Fraction(2 * p - q, 2), Fraction(q, 2)
        else:
            if abs(p * p - m * q * q) == 1:
                return Fraction(p), Fraction(q)
