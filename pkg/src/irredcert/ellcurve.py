"""Elliptic curves over Q and quadratic fields, and their reduction at degree-one places."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import numfield as nf
from .numfield import (
    DegreeOnePlace,
    FieldElement,
    NumberField,
    QuadElement,
    QuadraticField,
    RationalField,
    SuppliedField,
)


class CurveError(ValueError):
    """Malformed or singular curve."""


class UnsupportedPlaceError(ValueError):
    """Place of residue characteristic 2 or 3."""


class NoGoodModelError(ValueError):
    """The curve has no model with good reduction at the place."""


class PlaceType(enum.Enum):
    POTENTIALLY_MULTIPLICATIVE = "multiplicative"
    GOOD_ORDINARY = "good-ordinary"
    GOOD_SUPERSINGULAR = "good-supersingular"

    def __str__(self):
        return self.value

    @property
    def is_good(self) -> bool:
        return self is not PlaceType.POTENTIALLY_MULTIPLICATIVE


def _lift(F: NumberField, x) -> FieldElement:
    if isinstance(F, QuadraticField):
        return F.lift(x)
    if isinstance(x, QuadElement):
        if not x.is_rational():
            raise CurveError(f"coefficient {x} does not lie in Q")
        return x.a
    return Fraction(x)


def _is_zero(x) -> bool:
    return not x


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``field``."""

    field: NumberField
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self):
        if isinstance(self.field, SuppliedField):
            raise CurveError("curves over fields given only by invariants are not supported")
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _lift(self.field, getattr(self, name)))
        if _is_zero(self.disc):
            raise CurveError("singular model: discriminant is 0")

    @classmethod
    def short(cls, field: NumberField, a, b) -> "WeierstrassModel":
        return cls(field, 0, 0, 0, a, b)

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.coefficients
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        return -(self.b2 ** 3) + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def short_model(self) -> tuple[FieldElement, FieldElement]:
        """(A, B) with y^2 = x^3 + A x + B isomorphic to this curve."""
        return -27 * self.c4, -54 * self.c6

    def quadratic_twist(self, d) -> "WeierstrassModel":
        A, B = self.short_model()
        d = _lift(self.field, d)
        if _is_zero(d):
            raise CurveError("twist by 0")
        return WeierstrassModel.short(self.field, A * d * d, B * d * d * d)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coefficients) + "]"


def j_invariant(E: WeierstrassModel) -> FieldElement:
    return E.c4 ** 3 / E.disc


# -- parsing ----------------------------------------------------------------

_TERM_RE = re.compile(r"[+-]?[^+-]+")
_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(tok: str) -> Fraction:
    if not _RAT_RE.match(tok):
        raise CurveError(f"bad rational {tok!r}")
    return Fraction(tok)


def _parse_coefficient(text: str, F: NumberField) -> FieldElement:
    s = text.replace(" ", "")
    if not s:
        raise CurveError("empty coefficient")
    a = Fraction(0)
    b = Fraction(0)
    for term in _TERM_RE.findall(s):
        if term.endswith("s"):
            body = term[:-1]
            if body.endswith("*"):
                body = body[:-1]
            if body in ("", "+", "-"):
                body += "1"
            b += _parse_rational(body)
        else:
            a += _parse_rational(term)
    if b:
        if not isinstance(F, QuadraticField):
            raise CurveError(f"coefficient {text!r} uses the generator s outside a quadratic field")
        return F.element(a, b)
    return _lift(F, a)


def parse_curve(text: str, F: NumberField) -> WeierstrassModel:
    """Parse ``[a1,a2,a3,a4,a6]``; entries like ``1/2`` or ``1/2+3/4*s``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise CurveError(f"curve must be written [a1,a2,a3,a4,a6], got {text!r}")
    parts = s[1:-1].split(",")
    if len(parts) != 5:
        raise CurveError(f"expected 5 coefficients, got {len(parts)}")
    coeffs = [_parse_coefficient(p, F) for p in parts]
    return WeierstrassModel(F, *coeffs)


# -- finite-field routines --------------------------------------------------


def _require_char(q: int) -> None:
    if q < 5:
        raise UnsupportedPlaceError(f"residue characteristic {q} < 5 is not supported")


def representative_curve(jt: int, q: int) -> tuple[int, int]:
    """(a, b) with y^2 = x^3 + a x + b over F_q of j-invariant ``jt``."""
    jt %= q
    if jt == 0:
        return 0, 1
    if jt == 1728 % q:
        return 1, 0
    k = jt * pow(1728 - jt, -1, q) % q
    return 3 * k % q, 2 * k % q


def hasse_invariant(a: int, b: int, q: int) -> int:
    """Coefficient of x^(q-1) in (x^3 + a x + b)^((q-1)/2) mod q."""
    n = (q - 1) // 2
    fact = [1] * (n + 1)
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i % q
    total = 0
    # term x^(3i) (a x)^j b^k with i + j + k = n and 3i + j = q - 1
    for i in range(n + 1):
        j = q - 1 - 3 * i
        if j < 0:
            break
        k = n - i - j
        if k < 0:
            continue
        denom = fact[i] * fact[j] * fact[k] % q
        total += fact[n] * pow(denom, -1, q) * pow(a, j, q) * pow(b, k, q)
    return total % q


def supersingular_j(jt: int, q: int) -> bool:
    """Whether curves over F_q-bar with j-invariant ``jt`` are supersingular."""
    _require_char(q)
    a, b = representative_curve(jt, q)
    return hasse_invariant(a, b, q) == 0


def _residue_table(q: int) -> list[int]:
    chi = [-1] * q
    chi[0] = 0
    for y in range(1, (q + 1) // 2):
        chi[y * y % q] = 1
    return chi


def count_points(a: int, b: int, q: int) -> int:
    """#E(F_q) for y^2 = x^3 + a x + b, point at infinity included."""
    chi = _residue_table(q)
    total = q + 1
    for x in range(q):
        total += chi[(x * x * x + a * x + b) % q]
    return total


# -- reduction at places ----------------------------------------------------


def classify_place(E: WeierstrassModel, P: DegreeOnePlace) -> PlaceType:
    _require_char(P.q)
    j = j_invariant(E)
    if j and nf.valuation(j, P) < 0:
        return PlaceType.POTENTIALLY_MULTIPLICATIVE
    jt = nf.reduce_mod_place(j, P)
    if supersingular_j(jt, P.q):
        return PlaceType.GOOD_SUPERSINGULAR
    return PlaceType.GOOD_ORDINARY


@dataclass(frozen=True)
class FrobeniusData:
    """Frobenius at a place of good reduction: X^2 - T X + q."""

    q: int
    trace: int
    disc: int
    Lq: NumberField
    f: int  # disc = f^2 * m with Lq = Q(sqrt m)

    @property
    def norm(self) -> int:
        return self.q

    def beta(self, conjugate: bool = False) -> FieldElement:
        """A root (T +- sqrt(disc))/2 of the Frobenius polynomial, as an element of Lq."""
        if isinstance(self.Lq, RationalField):
            return Fraction(self.trace, 2)
        # disc = f^2 * m with m the squarefree part
        m = self.Lq.m
        f = math.isqrt(self.disc // m)
        b = Fraction(f, 2)
        return self.Lq.element(Fraction(self.trace, 2), -b if conjugate else b)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "norm": str(self.q),
            "T": str(self.trace),
            "disc": str(self.disc),
            "Lq": str(self.Lq),
        }


def frobenius_data(q: int, trace: int) -> FrobeniusData:
    disc = trace * trace - 4 * q
    if disc > 0:
        raise ValueError(f"trace {trace} violates the Hasse bound at {q}")
    if disc == 0:
        return FrobeniusData(q, trace, 0, nf.QQ, 0)
    m = nf.squarefree_part(disc)
    return FrobeniusData(q, trace, disc, QuadraticField(m), math.isqrt(disc // m))


def _min_shift(v, power: int) -> int:
    # smallest k >= 0 with v + power*k >= 0
    if v == math.inf or v >= 0:
        return 0
    return -(v // power)


def good_model_at(E: WeierstrassModel, P: DegreeOnePlace) -> tuple[int, int]:
    """Residues (A mod P, B mod P) of a short model with good reduction at ``P``."""
    _require_char(P.q)
    q = P.q
    A, B = E.short_model()
    vA = nf.valuation(A, P) if A else math.inf
    vB = nf.valuation(B, P) if B else math.inf
    # make integral with u = q^k, then strip q^4, q^6 while both allow it
    k = max(_min_shift(vA, 4), _min_shift(vB, 6))
    vA2 = vA + 4 * k
    vB2 = vB + 6 * k
    while vA2 >= 4 and vB2 >= 6:
        k -= 1
        vA2 -= 4
        vB2 -= 6
    scale = Fraction(q) ** k
    A2 = A * scale ** 4
    B2 = B * scale ** 6
    disc = 4 * A2 ** 3 + 27 * B2 ** 2
    if nf.valuation(disc, P) != 0:
        raise NoGoodModelError(f"no good model at the place {P.label()}")
    return nf.reduce_mod_place(A2, P), nf.reduce_mod_place(B2, P)


def trace_of_frobenius(E: WeierstrassModel, P: DegreeOnePlace) -> FrobeniusData:
    a, b = good_model_at(E, P)
    n = count_points(a, b, P.q)
    return frobenius_data(P.q, P.q + 1 - n)


def place_types(E: WeierstrassModel, places: Sequence[DegreeOnePlace]) -> list[PlaceType]:
    return [classify_place(E, P) for P in places]
