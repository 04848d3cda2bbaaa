"""Local exponent tables, the five-case table at split places, and the twisted norm.

The isogeny characters themselves are never computed.  Case descriptors carry
their asserted values as text so certificates can quote them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import numfield as nf
from .ellcurve import (
    FrobeniusData,
    PlaceType,
    WeierstrassModel,
    classify_place,
    trace_of_frobenius,
)
from .numfield import (
    DegreeOnePlace,
    FieldElement,
    FieldInvariants,
    NumberField,
    QuadElement,
    QuadraticField,
    RationalField,
)


class InvalidPairError(ValueError):
    """(e, r) is not a row of the exponent table."""


class IncompatibleCaseError(ValueError):
    """Case cannot occur over the given field."""


# -- exponent table ---------------------------------------------------------


@dataclass(frozen=True)
class LocalExponentRow:
    e: int
    r: int
    a: int
    congruence: Optional[tuple[int, int]]  # (residue, modulus) for p, or None
    j: Optional[int]  # j(E) mod p, or None
    reduction: Optional[str]  # "ordinary" / "supersingular" / None

    def congruence_text(self) -> str:
        if self.congruence is None:
            return "-"
        return f"p = {self.congruence[0]} mod {self.congruence[1]}"

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "r": self.r,
            "a": self.a,
            "p": None if self.congruence is None else list(self.congruence),
            "j": self.j,
            "reduction": self.reduction,
        }


def _row(e, r, congruence=None, j=None, reduction=None) -> LocalExponentRow:
    return LocalExponentRow(e, r, 12 * r // e, congruence, j, reduction)


_ORD3 = dict(congruence=(1, 3), j=0, reduction="ordinary")
_SS3 = dict(congruence=(2, 3), j=0, reduction="supersingular")
_ORD4 = dict(congruence=(1, 4), j=1728, reduction="ordinary")
_SS4 = dict(congruence=(3, 4), j=1728, reduction="supersingular")

EXPONENT_TABLE: tuple[LocalExponentRow, ...] = (
    _row(1, 0),
    _row(1, 1),
    _row(2, 0),
    _row(2, 2),
    _row(3, 0, **_ORD3),
    _row(3, 1, **_SS3),
    _row(3, 2, **_SS3),
    _row(3, 3, **_ORD3),
    _row(4, 0, **_ORD4),
    _row(4, 2, **_SS4),
    _row(4, 4, **_ORD4),
    _row(6, 0, **_ORD3),
    _row(6, 2, **_SS3),
    _row(6, 4, **_SS3),
    _row(6, 6, **_ORD3),
)

_BY_PAIR = {(row.e, row.r): row for row in EXPONENT_TABLE}


def exponent_row(e: int, r: int) -> LocalExponentRow:
    try:
        return _BY_PAIR[(e, r)]
    except KeyError:
        raise InvalidPairError(f"(e, r) = ({e}, {r}) is not in the exponent table") from None


# -- families and the twisted norm ------------------------------------------


@dataclass(frozen=True)
class ATauFamily:
    """Exponents a_tau indexed by Gal(K/Q); index 0 is the identity, 1 the conjugation."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if not self.exponents:
            raise ValueError("empty family")
        if any(not 0 <= a <= 12 for a in self.exponents):
            raise ValueError("exponents must lie in [0, 12]")

    @classmethod
    def constant(cls, a: int, degree: int) -> "ATauFamily":
        return cls((a,) * degree)

    def to_json(self) -> dict:
        names = ["id", "conj"] if len(self.exponents) == 2 else [f"tau{i}" for i in range(len(self.exponents))]
        if len(self.exponents) == 1:
            names = ["id"]
        return dict(zip(names, self.exponents))


def twisted_norm(alpha: FieldElement, fam: ATauFamily) -> FieldElement:
    """prod over tau of tau(alpha)**a_tau."""
    if not alpha:
        raise ValueError("twisted norm of 0")
    if len(fam.exponents) == 1:
        return Fraction(alpha) ** fam.exponents[0] if not isinstance(alpha, QuadElement) else alpha ** fam.exponents[0]
    if len(fam.exponents) != 2:
        raise nf.UnsupportedFieldError("twisted norms are computed for degree <= 2 only")
    if not isinstance(alpha, QuadElement):
        return Fraction(alpha) ** sum(fam.exponents)
    a_id, a_conj = fam.exponents
    return alpha ** a_id * alpha.conj() ** a_conj


# -- the five cases ---------------------------------------------------------


class Case(enum.Enum):
    M0 = "M0"
    M1 = "M1"
    BS = "BS"
    BO = "BO"
    BO_PRIME = "BO'"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Case":
        norm = text.strip().replace("′", "'").upper()
        for c in cls:
            if c.value == norm:
                return c
        raise ValueError(f"unknown case {text!r}; expected one of M0, M1, BS, BO, BO'")


_CASE_TYPE = {
    Case.M0: PlaceType.POTENTIALLY_MULTIPLICATIVE,
    Case.M1: PlaceType.POTENTIALLY_MULTIPLICATIVE,
    Case.BS: PlaceType.GOOD_SUPERSINGULAR,
    Case.BO: PlaceType.GOOD_ORDINARY,
    Case.BO_PRIME: PlaceType.GOOD_ORDINARY,
}


@dataclass(frozen=True)
class CaseDescriptor:
    case: Case
    family: ATauFamily
    place_type: PlaceType
    mu_value: str
    constraints: str
    frobenius: Optional[FrobeniusData] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "case": str(self.case),
            "place_type": str(self.place_type),
            "family": self.family.to_json(),
            "mu": self.mu_value,
            "constraints": self.constraints,
        }
        if self.frobenius is not None:
            out["frobenius"] = self.frobenius.to_json()
        if self.note:
            out["note"] = self.note
        return out


def _imaginary_quadratic(F: NumberField) -> bool:
    return isinstance(F, QuadraticField) and not F.is_real


def case_row(case: Case, F: NumberField = nf.QQ, fd: Optional[FrobeniusData] = None) -> CaseDescriptor:
    if isinstance(case, str):
        case = Case.parse(case)
    d = F.degree
    if case is Case.M0:
        return CaseDescriptor(case, ATauFamily.constant(0, d), _CASE_TYPE[case], "1 mod p", "none")
    if case is Case.M1:
        return CaseDescriptor(case, ATauFamily.constant(12, d), _CASE_TYPE[case], "q^12 mod p", "none")
    if case is Case.BS:
        mu = "beta^12 mod P, beta^6 = -q^3"
        if fd is not None:
            mu = f"beta^12 mod P, beta^6 = -{fd.q}^3 = {-fd.q ** 3}"
        return CaseDescriptor(
            case, ATauFamily.constant(6, d), _CASE_TYPE[case], mu, "Lq = Q(sqrt(-q)), T_q = 0", fd
        )
    if not _imaginary_quadratic(F):
        raise IncompatibleCaseError(f"case {case} needs an imaginary quadratic subfield, none in {F}")
    # Gal(K/Lq) is trivial here since Lq = K
    if case is Case.BO:
        return CaseDescriptor(
            case,
            ATauFamily((12, 0)),
            _CASE_TYPE[case],
            "beta^12 mod P, N_{K/Lq}(q) = (beta)",
            "Lq quadratic, Lq inside K, p split in Lq",
            fd,
            "a = 12 exactly on the subgroup Gal(K/Lq)",
        )
    return CaseDescriptor(
        case,
        ATauFamily((0, 12)),
        _CASE_TYPE[case],
        "beta^12 mod P, N_{K/Lq}(q) = (conj beta)",
        "Lq quadratic, Lq inside K, p split in Lq",
        fd,
        "a = 12 exactly off the subgroup Gal(K/Lq)",
    )


def _lq_inside(F: NumberField, fd: FrobeniusData) -> bool:
    return _imaginary_quadratic(F) and isinstance(fd.Lq, QuadraticField) and fd.Lq.m == F.m


def candidate_cases(
    t: PlaceType,
    fd: Optional[FrobeniusData] = None,
    F: NumberField = nf.QQ,
    diagnostics: Optional[list] = None,
) -> list[CaseDescriptor]:
    """Cases of the five-case table compatible with the place type (and field)."""
    if diagnostics is None:
        diagnostics = []
    if t is PlaceType.POTENTIALLY_MULTIPLICATIVE:
        if fd is not None:
            raise ValueError("Frobenius data given for a multiplicative place")
        return [case_row(Case.M0, F), case_row(Case.M1, F)]
    if fd is None:
        raise ValueError("good place types need Frobenius data")
    if t is PlaceType.GOOD_SUPERSINGULAR:
        if fd.trace != 0:
            raise ValueError(f"supersingular place at {fd.q} with nonzero trace {fd.trace}")
        return [case_row(Case.BS, F, fd)]
    if not _lq_inside(F, fd):
        diagnostics.append(f"ordinary place at {fd.q}: Lq = {fd.Lq} is not contained in K = {F}")
        return []
    return [case_row(Case.BO, F, fd), case_row(Case.BO_PRIME, F, fd)]


# -- verification of the identity at a place --------------------------------


def _generator(P: DegreeOnePlace, h: int) -> FieldElement:
    F = P.field
    if isinstance(F, RationalField):
        return Fraction(P.q) ** h
    return nf.small_generator(P, F, h)


def _as_rational(x) -> Optional[Fraction]:
    if isinstance(x, QuadElement):
        return x.a if x.is_rational() else None
    return Fraction(x)


def same_number(x: FieldElement, y: FieldElement) -> bool:
    """Exact equality of elements of Q, Q(sqrt m1), Q(sqrt m2) inside their compositum."""
    rx, ry = _as_rational(x), _as_rational(y)
    if rx is not None or ry is not None:
        return rx is not None and rx == ry
    # both irrational: equal only inside one and the same quadratic field
    return x.m == y.m and x == y


def case_target(case: Case, q: int, h: int, fd: Optional[FrobeniusData]) -> list[FieldElement]:
    """Admissible values of the twisted norm of the generator in the given case."""
    if case is Case.M0:
        return [Fraction(1)]
    if case is Case.M1:
        return [Fraction(q) ** (12 * h)]
    if fd is None:
        raise ValueError("good cases need Frobenius data")
    return [fd.beta(False) ** (12 * h), fd.beta(True) ** (12 * h)]


def verify_case_identity(
    E: WeierstrassModel,
    P: DegreeOnePlace,
    case,
    inv: Optional[FieldInvariants] = None,
    family: Optional[ATauFamily] = None,
) -> bool:
    """Check the identity tying the twisted norm of gamma_q to the case's target.

    gamma_q is a small generator of P**h.  The case must fit the reduction type
    at ``P`` (and, for BO/BO', the field Lq must equal K); otherwise the answer
    is False.  ``family`` overrides the case's own family, which is how two
    cases are tested against one fixed family.
    """
    if isinstance(case, CaseDescriptor):
        case = case.case
    elif isinstance(case, str):
        case = Case.parse(case)
    F = P.field
    h = inv.class_number if inv is not None else nf.class_number(F)
    t = classify_place(E, P)
    if _CASE_TYPE[case] is not t:
        return False
    fd = None
    if t.is_good:
        fd = trace_of_frobenius(E, P)
        if case is Case.BS:
            if fd.trace != 0:
                return False
        elif not _lq_inside(F, fd):
            return False
    try:
        desc = case_row(case, F, fd)
    except IncompatibleCaseError:
        return False
    fam = family if family is not None else desc.family
    value = twisted_norm(_generator(P, h), fam)
    return any(same_number(value, target) for target in case_target(case, P.q, h, fd))


def case_table(F: NumberField = nf.QQ) -> list[CaseDescriptor]:
    rows = []
    for c in Case:
        try:
            rows.append(case_row(c, F))
        except IncompatibleCaseError:
            continue
    return rows


def all_families(degree: int) -> Sequence[ATauFamily]:
    if degree == 1:
        return [ATauFamily((a,)) for a in range(13)]
    return [ATauFamily((a, b)) for a in range(13) for b in range(13)]
