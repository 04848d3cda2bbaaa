"""Number fields: Q, quadratic fields, and fields given by supplied invariants.

Elements of Q are ``Fraction``; elements of Q(sqrt m) are :class:`QuadElement`.
Supplied fields only carry invariants and a defining polynomial used for
splitting tests.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_gcd, gf_pow_mod, gf_sqf_p, gf_sub

from . import quadforms as qf
from .exactnum import (
    DEFAULT_PREC,
    DomainError,
    RealEnclosure,
    interval_ln,
    interval_root,
    interval_sqrt,
    to_decimal,
)


class FieldError(ValueError):
    """Invalid field descriptor."""


class UnsupportedFieldError(ValueError):
    """Operation not available for this kind of field."""


class NotSplitError(ValueError):
    """The prime is not totally split in the field."""


class NonIntegralError(ValueError):
    """Element has a pole at the place it is reduced at."""


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for e in sympy.factorint(abs(n)).values())


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel of a nonzero integer."""
    out = -1 if n < 0 else 1
    for p, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def _require_prime(q: int) -> None:
    if not sympy.isprime(q):
        raise ValueError(f"{q} is not prime")


def kronecker(d: int, q: int) -> int:
    """Kronecker symbol (d/q) for a prime q."""
    if q == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    if d % q == 0:
        return 0
    return sympy.legendre_symbol(d % q, q)


# -- elements ---------------------------------------------------------------


@dataclass(frozen=True)
class QuadElement:
    """The element a + b*sqrt(m) of Q(sqrt m)."""

    a: Fraction
    b: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _lift(self, other):
        if isinstance(other, QuadElement):
            if other.m != self.m:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(Fraction(other), Fraction(0), self.m)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadElement(self.a + other.a, self.b + other.b, self.m)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.m)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadElement(self.a - other.a, self.b - other.b, self.m)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return QuadElement(
            self.a * other.a + self.m * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.m,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadElement":
        return QuadElement(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        return self.a * self.a - self.m * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return QuadElement(c.a / n, c.b / n, self.m)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElement(Fraction(1), Fraction(0), self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return (self.a, self.b, self.m) == (other.a, other.b, other.m)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*s"


FieldElement = Union[Fraction, QuadElement]


def surd_sign(x: QuadElement) -> int:
    """Exact sign of the real number a + b*sqrt(m), m > 0."""
    if x.m < 0:
        raise ValueError("sign of a non-real element")
    sa = (x.a > 0) - (x.a < 0)
    sb = (x.b > 0) - (x.b < 0)
    if sb == 0 or sa == sb:
        return sa or sb
    if sa == 0:
        return sb
    # opposite signs: compare a^2 with m b^2
    diff = x.a * x.a - x.m * x.b * x.b
    if diff == 0:
        return 0
    return sa if diff > 0 else sb


def surd_max(x: QuadElement, y: QuadElement) -> QuadElement:
    return x if surd_sign(x - y) >= 0 else y


def surd_abs(x: QuadElement) -> QuadElement:
    return -x if surd_sign(x) < 0 else x


# -- fields -----------------------------------------------------------------


@dataclass(frozen=True)
class RationalField:
    kind = "rational"

    @property
    def degree(self) -> int:
        return 1

    @property
    def disc(self) -> int:
        return 1

    def element(self, a, b=0) -> Fraction:
        if b:
            raise FieldError("Q has no square-root generator")
        return Fraction(a)

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class QuadraticField:
    m: int
    kind = "quadratic"

    def __post_init__(self):
        if self.m in (0, 1):
            raise FieldError(f"m = {self.m} does not define a quadratic field")
        if not _is_squarefree(self.m):
            raise FieldError(f"m not squarefree: {self.m}")

    @property
    def degree(self) -> int:
        return 2

    @property
    def disc(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m

    @property
    def is_real(self) -> bool:
        return self.m > 0

    def element(self, a, b=0) -> QuadElement:
        return QuadElement(Fraction(a), Fraction(b), self.m)

    @property
    def gen(self) -> QuadElement:
        return self.element(0, 1)

    def lift(self, x) -> QuadElement:
        if isinstance(x, QuadElement):
            if x.m != self.m:
                raise ValueError(f"element of Q(sqrt {x.m}) used in {self}")
            return x
        return self.element(x)

    @property
    def omega(self) -> QuadElement:
        """The integral basis element (disc + sqrt(disc))/2."""
        if self.disc == self.m:
            return self.element(Fraction(self.m, 2), Fraction(1, 2))
        return self.element(2 * self.m, 1)

    def to_omega(self, x) -> tuple[Fraction, Fraction]:
        """Coordinates (u, v) with x = u + v*omega."""
        x = self.lift(x)
        if self.disc == self.m:
            return x.a - x.b * self.disc, 2 * x.b
        return x.a - 2 * x.b * self.m, x.b

    def from_omega(self, u, v) -> QuadElement:
        return self.element(u) + self.omega * Fraction(v)

    def __str__(self):
        return f"Q(sqrt:{self.m})"


@dataclass(frozen=True)
class SuppliedField:
    """A Galois field known only through user-supplied invariants."""

    degree: int
    disc: int
    class_number: int
    regulator: RealEnclosure
    unit_rank: int
    poly: tuple[int, ...]
    text: str = field(default="", compare=False)
    kind = "supplied"

    def __post_init__(self):
        if self.degree < 1:
            raise FieldError("degree must be positive")
        if self.class_number < 1:
            raise FieldError("class number must be positive")
        if len(self.poly) != self.degree + 1 or self.poly[-1] != 1:
            raise FieldError("poly must be monic of the stated degree, given as [c0, ..., cd]")
        if self.unit_rank < 0:
            raise FieldError("unit rank must be nonnegative")
        if self.unit_rank == 0:
            if self.regulator != RealEnclosure.exact(1, self.regulator.prec):
                raise FieldError("R must be [1,1] when the unit rank is 0")
        elif self.regulator.lo <= 0:
            raise FieldError("R must be positive")

    def __str__(self):
        return self.text or f"custom:{{d:{self.degree},disc:{self.disc},h:{self.class_number}}}"


NumberField = Union[RationalField, QuadraticField, SuppliedField]

QQ = RationalField()


def _require_quadratic(F) -> QuadraticField:
    if not isinstance(F, QuadraticField):
        raise UnsupportedFieldError(f"operation needs a quadratic field, got {F}")
    return F


# -- parsing ----------------------------------------------------------------

_QUAD_RE = re.compile(r"^\s*Q\(\s*sqrt\s*:\s*([+-]?\d+)\s*\)\s*$")
_KEY_RE = re.compile(r"([{,]\s*)([A-Za-z_]\w*)\s*:")


def parse_field(text: str) -> NumberField:
    """Parse ``Q``, ``Q(sqrt:m)`` or ``custom:{d:..,disc:..,h:..,R:[lo,hi],poly:[..]}``."""
    s = text.strip()
    if s in ("Q", "QQ"):
        return QQ
    match = _QUAD_RE.match(s)
    if match:
        return QuadraticField(int(match.group(1)))
    if s.startswith("custom:"):
        body = _KEY_RE.sub(lambda m_: f'{m_.group(1)}"{m_.group(2)}":', s[len("custom:"):])
        try:
            data = json.loads(body, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise FieldError(f"cannot parse custom field body: {exc}") from None
        return _supplied_from_dict(data, s)
    raise FieldError(f"unrecognized field descriptor: {text!r}")


def _supplied_from_dict(data: dict, text: str) -> SuppliedField:
    try:
        d = int(data["d"])
        disc = int(data["disc"])
        h = int(data["h"])
        poly = tuple(int(c) for c in data["poly"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FieldError(f"custom field needs d, disc, h, poly: {exc}") from None
    if "r" in data:
        r = int(data["r"])
    else:
        if len(poly) != d + 1:
            raise FieldError("poly length does not match d")
        x = sympy.Symbol("x")
        nreal = sympy.Poly(list(reversed(poly)), x).count_roots()
        if nreal == d:
            r = d - 1
        elif nreal == 0 and d % 2 == 0:
            r = d // 2 - 1
        else:
            raise FieldError("a Galois field is totally real or totally imaginary")
    if "R" in data:
        lo, hi = (Fraction(str(v)) if not isinstance(v, Fraction) else v for v in data["R"])
        reg = RealEnclosure.between(lo, hi)
    elif r == 0:
        reg = RealEnclosure.exact(1)
    else:
        raise FieldError("custom field with positive unit rank needs R:[lo,hi]")
    return SuppliedField(d, disc, h, reg, r, poly, text)


# -- invariants -------------------------------------------------------------


@dataclass(frozen=True)
class FieldInvariants:
    degree: int
    disc: int
    class_number: int
    regulator: RealEnclosure
    unit_rank: int
    provenance: str
    # computed fields keep their field so the regulator can be refined on demand
    source: Optional["NumberField"] = field(default=None, compare=False, repr=False)

    def regulator_at(self, prec: int) -> RealEnclosure:
        """Regulator enclosure at ``prec`` bits; supplied values cannot be refined."""
        if self.source is None:
            return self.regulator
        return regulator(self.source, prec)

    def to_json(self) -> dict:
        return {
            "d": self.degree,
            "disc": str(self.disc),
            "h": str(self.class_number),
            "R": [to_decimal(self.regulator.lo, up=False), to_decimal(self.regulator.hi, up=True)],
            "r": self.unit_rank,
            "provenance": self.provenance,
        }


def class_number(F: NumberField) -> int:
    if isinstance(F, RationalField):
        return 1
    if isinstance(F, SuppliedField):
        return F.class_number
    return qf.class_number_from_forms(F.disc)


def fundamental_unit(F: QuadraticField) -> QuadElement:
    """Fundamental unit > 1 of a real quadratic field."""
    _require_quadratic(F)
    if not F.is_real:
        raise UnsupportedFieldError("imaginary quadratic fields have finite unit groups")
    x, y = qf.fundamental_unit(F.m)
    return F.element(x, y)


def real_value(x: QuadElement, prec: int = DEFAULT_PREC) -> RealEnclosure:
    """Enclosure of a + b*sqrt(m) under the embedding with sqrt(m) > 0."""
    if x.m < 0:
        raise ValueError("element is not real")
    if x.b == 0:
        return RealEnclosure.exact(x.a, prec)
    if x.a and (x.a > 0) != (x.b > 0):
        # avoid cancellation: x = N(x) / conj(x)
        return (x.norm() / real_value(x.conj(), prec + 16)).with_prec(prec)
    root = interval_sqrt(RealEnclosure.exact(x.m, prec + 16))
    return (x.a + x.b * root).with_prec(prec)


def regulator(F: NumberField, prec: int = DEFAULT_PREC) -> RealEnclosure:
    if isinstance(F, SuppliedField):
        return F.regulator
    if isinstance(F, RationalField) or not F.is_real:
        return RealEnclosure.exact(1, prec)
    return interval_ln(real_value(fundamental_unit(F), prec + 16)).with_prec(prec)


def unit_rank(F: NumberField) -> int:
    if isinstance(F, SuppliedField):
        return F.unit_rank
    if isinstance(F, QuadraticField) and F.is_real:
        return 1
    return 0


def invariants(F: NumberField, prec: int = DEFAULT_PREC) -> FieldInvariants:
    if isinstance(F, SuppliedField):
        return FieldInvariants(F.degree, F.disc, F.class_number, F.regulator, F.unit_rank, "supplied")
    return FieldInvariants(F.degree, F.disc, class_number(F), regulator(F, prec), unit_rank(F), "computed", F)


# -- splitting and places ---------------------------------------------------


def totally_split(F: NumberField, q: int) -> bool:
    _require_prime(q)
    if isinstance(F, RationalField):
        return True
    if isinstance(F, QuadraticField):
        return kronecker(F.disc, q) == 1
    f = gf_from_int_poly(list(reversed(F.poly)), q)
    if not gf_sqf_p(f, q, ZZ):
        return False
    xq = gf_pow_mod([1, 0], q, f, q, ZZ)
    g = gf_gcd(gf_sub(xq, [1, 0], q, ZZ), f, q, ZZ)
    return len(g) - 1 == F.degree


def iter_split_primes(F: NumberField, start: int = 2, stop: Optional[int] = None) -> Iterator[int]:
    """Totally split primes in ``[start, stop]`` ascending (unbounded if stop is None)."""
    q = sympy.nextprime(start - 1)
    while stop is None or q <= stop:
        if totally_split(F, q):
            yield q
        q = sympy.nextprime(q)


def split_primes_up_to(F: NumberField, X: int) -> list[int]:
    if X < 2:
        raise ValueError("X must be at least 2")
    return list(iter_split_primes(F, 2, X))


@dataclass(frozen=True)
class DegreeOnePlace:
    """A residue-degree-one place above the split prime ``q``.

    ``root`` is the image of sqrt(m) (quadratic), of the chosen root of the
    defining polynomial (supplied), or None over Q.  ``omega_root`` is the image
    of the integral basis element and identifies the place even when q = 2.
    """

    field: NumberField
    q: int
    root: Optional[int] = None
    omega_root: Optional[int] = None

    @property
    def norm(self) -> int:
        return self.q

    def label(self) -> str:
        if self.root is None:
            return str(self.q)
        return f"{self.q}:{self.root}"

    def to_json(self) -> dict:
        out = {"q": self.q, "norm": str(self.q)}
        if self.root is not None:
            out["root"] = self.root
        return out


def degree_one_places(F: NumberField, q: int) -> list[DegreeOnePlace]:
    if not totally_split(F, q):
        raise NotSplitError(f"{q} is not totally split in {F}")
    if isinstance(F, RationalField):
        return [DegreeOnePlace(F, q)]
    if isinstance(F, QuadraticField):
        places = []
        for s in qf.omega_roots(F.disc, q):
            r = (2 * s - F.disc) % q if F.disc == F.m else (s - 2 * F.m) % q
            places.append(DegreeOnePlace(F, q, r, s))
        return sorted(places, key=lambda P: (P.root, P.omega_root))
    roots = [r for r in range(q) if sum(c * pow(r, i, q) for i, c in enumerate(F.poly)) % q == 0]
    return [DegreeOnePlace(F, q, r) for r in roots]


def prime_ideal(P: DegreeOnePlace) -> qf.QuadIdeal:
    F = _require_quadratic(P.field)
    return qf.QuadIdeal.from_generators(F.disc, [(P.q, 0), (-P.omega_root, 1)])


def prime_ideals_above(F: QuadraticField, q: int) -> list[qf.QuadIdeal]:
    _require_prime(q)
    return qf.prime_ideals_above(_require_quadratic(F).disc, q)


def _vq(n: int, q: int) -> int:
    k = 0
    while n % q == 0:
        n //= q
        k += 1
    return k


def _integral_split(F: QuadraticField, x) -> tuple[int, int, int]:
    """Write x = (U + V*omega) / n with integers U, V, n > 0."""
    u, v = F.to_omega(x)
    n = math.lcm(u.denominator, v.denominator)
    return int(u * n), int(v * n), n


def _theta(F: QuadraticField, P: DegreeOnePlace) -> tuple[int, int]:
    # omega - (other root): a unit at P lying in the conjugate place
    other = (F.disc - P.omega_root) % P.q
    return -other, 1


def valuation(x: FieldElement, P: DegreeOnePlace) -> Union[int, float]:
    """Valuation of ``x`` at the place ``P`` (``inf`` for 0)."""
    F = P.field
    if isinstance(F, SuppliedField):
        raise UnsupportedFieldError("elements of supplied fields are not supported")
    if not x:
        return math.inf
    if isinstance(F, RationalField):
        x = Fraction(x)
        if isinstance(x, QuadElement):
            raise ValueError("quadratic element over Q")
        return _vq(x.numerator, P.q) - _vq(x.denominator, P.q)
    U, V, n = _integral_split(F, x)
    q = P.q
    theta = _theta(F, P)
    t = (U, V)
    vy = 0
    while True:
        t2 = qf.elt_mul(F.disc, t, theta)
        if t2[0] % q or t2[1] % q:
            break
        t = (t2[0] // q, t2[1] // q)
        vy += 1
    return vy - _vq(n, q)


def reduce_mod_place(x: FieldElement, P: DegreeOnePlace) -> int:
    """Residue of ``x`` in F_q at ``P``; ``x`` must be integral at ``P``."""
    F = P.field
    q = P.q
    if isinstance(F, SuppliedField):
        raise UnsupportedFieldError("elements of supplied fields are not supported")
    if isinstance(F, RationalField):
        if isinstance(x, QuadElement):
            if not x.is_rational():
                raise ValueError("quadratic element over Q")
            x = x.a
        x = Fraction(x)
        if x.denominator % q == 0:
            raise NonIntegralError(f"{x} is not integral at {q}")
        return x.numerator * pow(x.denominator, -1, q) % q
    U, V, n = _integral_split(F, x)
    k = _vq(n, q)
    rest = n // q**k
    t = (U, V)
    if k:
        theta = _theta(F, P)
        for _ in range(k):
            t = qf.elt_mul(F.disc, t, theta)
        qk = q**k
        if t[0] % qk or t[1] % qk:
            raise NonIntegralError(f"{x} is not integral at the place {P.label()}")
        t = (t[0] // qk, t[1] // qk)
    s = P.omega_root
    val = (t[0] + t[1] * s) % q
    denom = rest
    if k:
        theta_res = (s - (F.disc - s)) % q
        denom = denom * pow(theta_res, k, q)
    return val * pow(denom, -1, q) % q


# -- heights ----------------------------------------------------------------


def _primitive_leading(coeffs: list[Fraction]) -> int:
    """Leading coefficient of the primitive integer multiple of a monic polynomial."""
    L = 1
    for c in coeffs:
        L = math.lcm(L, c.denominator)
    ints = [int(c * L) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return L // g


def height_product(x: FieldElement, F: NumberField) -> FieldElement:
    """prod over all places of max(1, |x|_v), i.e. H(x)**d_K, exactly.

    The finite places together contribute the leading coefficient of the
    primitive minimal polynomial of ``x`` (raised to d_K / deg x).  For real
    quadratic fields the result is a real element of the field.
    """
    if isinstance(F, SuppliedField):
        raise UnsupportedFieldError("heights need an explicit field")
    if isinstance(x, QuadElement) and x.is_rational():
        x = x.a
    if not isinstance(x, QuadElement):
        x = Fraction(x)
        if x == 0:
            raise DomainError("height of 0")
        h = max(abs(x.numerator), x.denominator)
        return Fraction(h) ** F.degree
    if not x:
        raise DomainError("height of 0")
    F = _require_quadratic(F)
    lead = _primitive_leading([Fraction(1), -x.trace(), x.norm()])
    if F.m < 0:
        return lead * max(Fraction(1), x.norm())
    one = F.element(1)
    return lead * surd_max(one, surd_abs(x)) * surd_max(one, surd_abs(x.conj()))


def height(x: FieldElement, F: NumberField, prec: int = DEFAULT_PREC) -> RealEnclosure:
    """Enclosure of the absolute multiplicative height of ``x``."""
    prod = height_product(x, F)
    if isinstance(prod, QuadElement):
        enc = real_value(prod, prec + 16)
    else:
        enc = RealEnclosure.exact(prod, prec + 16)
    return interval_root(enc, F.degree).with_prec(prec)


def abs_embeddings(x: FieldElement, F: NumberField, prec: int = DEFAULT_PREC) -> list[RealEnclosure]:
    """|tau(x)| for each tau in Gal(K/Q), identity first."""
    if isinstance(F, RationalField):
        return [RealEnclosure.exact(abs(Fraction(x)), prec)]
    F = _require_quadratic(F)
    x = F.lift(x)
    if F.m < 0:
        mod = interval_sqrt(RealEnclosure.exact(x.norm(), prec))
        return [mod, mod]
    return [abs(real_value(x, prec)), abs(real_value(x.conj(), prec))]


# -- generators and classes -------------------------------------------------


def _norm_search_bound(F: QuadraticField, n: int) -> int:
    # a generator balanced by the fundamental unit has |y| sqrt(disc) < sqrt(n) (eps + 1)
    eps = real_value(fundamental_unit(F), 64)
    bound = Fraction(n) * (eps.hi + 1) ** 2 / F.disc
    return math.isqrt(math.ceil(bound)) + 1


def find_generator(F: QuadraticField, ideal: qf.QuadIdeal) -> QuadElement:
    """Some generator of a principal ideal."""
    n = ideal.norm
    y_max = None if not F.is_real else _norm_search_bound(F, n)
    for u, v in qf.elements_of_norm(F.disc, n, y_max):
        if ideal.contains((u, v)):
            return F.from_omega(u, v)
    raise ValueError(f"ideal {ideal} is not principal")


def small_generator(P: Union[qf.QuadIdeal, DegreeOnePlace], F: QuadraticField, h: Optional[int] = None) -> QuadElement:
    """Generator of ``P**h`` of small height.

    Real fields: the generator is multiplied by the power of the fundamental
    unit that minimizes its height.  Imaginary fields: every generator has the
    same height, the first one found is returned.
    """
    F = _require_quadratic(F)
    if isinstance(P, DegreeOnePlace):
        P = prime_ideal(P)
    if h is None:
        h = class_number(F)
    gamma = find_generator(F, P**h)
    if not F.is_real:
        return gamma
    eps = fundamental_unit(F)
    # balance |gamma| against |conj gamma|: step by eps until the ratio stops improving
    best = gamma
    best_h = height_product(gamma, F)
    for step in (eps, eps.inverse()):
        cur = gamma
        while True:
            cur = cur * step
            hp = height_product(cur, F)
            if surd_sign(hp - best_h) < 0:
                best, best_h = cur, hp
            else:
                break
    return best


def ideal_class_of(P: DegreeOnePlace) -> qf.Form:
    """Reduced form of the ideal class of ``P`` (imaginary quadratic fields)."""
    F = P.field
    if not isinstance(F, QuadraticField) or F.is_real:
        raise UnsupportedFieldError("ideal classes are computed for imaginary quadratic fields only")
    return qf.reduce_definite(prime_ideal(P).to_form())
