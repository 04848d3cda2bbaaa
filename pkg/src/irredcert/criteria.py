"""Membership tests for the irreducibility criteria, certificates, and the J_K set."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from . import bounds
from . import numfield as nf
from .ellcurve import PlaceType, WeierstrassModel, classify_place, j_invariant
from .exactnum import DEFAULT_PREC
from .numfield import DegreeOnePlace, NumberField, QuadraticField

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
CLAIM = "phi_{E,p} irreducible for all primes p > bound with p >= 5 and p unramified in K"
MIN_CHAR = 5


@dataclass(frozen=True)
class Classification:
    place: DegreeOnePlace
    type: Optional[PlaceType]
    error: Optional[str] = None

    def to_json(self) -> dict:
        out = self.place.to_json()
        if self.type is not None:
            out["type"] = str(self.type)
        else:
            out["error"] = self.error
        return out


def scan_places(F: NumberField, M: int, start: int = MIN_CHAR) -> list[DegreeOnePlace]:
    """Degree-one places above split primes in [start, M]: ascending prime, then root."""
    places = []
    for q in nf.iter_split_primes(F, start, M):
        places.extend(nf.degree_one_places(F, q))
    return places


def _classify_one(args) -> Classification:
    E, P = args
    try:
        return Classification(P, classify_place(E, P))
    except (ValueError, ArithmeticError) as exc:
        return Classification(P, None, f"{type(exc).__name__}: {exc}")


def classify_all(
    E: WeierstrassModel, places: Sequence[DegreeOnePlace], jobs: int = 1, diagnostics: Optional[list] = None
) -> list[Classification]:
    """Classify every place, in order; failures are kept with a diagnostic, never typed."""
    work = [(E, P) for P in places]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(_classify_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        out = [_classify_one(w) for w in work]
    for c in out:
        if c.error is not None:
            msg = f"place {c.place.label()} skipped: {c.error}"
            log.warning(msg)
            if diagnostics is not None:
                diagnostics.append(msg)
    return out


def witness_pair(classes: Sequence[Classification]) -> Optional[tuple[Classification, Classification]]:
    """Witness pair of places with different types, in scan order.

    A pair mixing a potentially multiplicative place with a good place is
    preferred: the first good place and the first multiplicative place.  Such a
    certificate also exhibits a place usable by the single-place criterion.
    Otherwise the first place is paired with the first later place of another type.
    """
    typed = [c for c in classes if c.type is not None]
    if not typed:
        return None
    mult = next((c for c in typed if not c.type.is_good), None)
    good = next((c for c in typed if c.type.is_good), None)
    if mult is not None and good is not None:
        a, b = (good, mult) if typed.index(good) < typed.index(mult) else (mult, good)
        return a, b
    first = typed[0]
    for c in typed[1:]:
        if c.type is not first.type:
            return first, c
    return None


def family_E_membership(
    E: WeierstrassModel, F: NumberField, M: int, jobs: int = 1, diagnostics: Optional[list] = None
) -> Optional[tuple[Classification, Classification]]:
    """Witness pair of split places of norm <= M with different reduction types, or None."""
    if M < MIN_CHAR:
        raise ValueError("M must be at least 5")
    return witness_pair(classify_all(E, scan_places(F, M), jobs, diagnostics))


def _require_split_q(F: NumberField, q: int) -> None:
    if q < MIN_CHAR:
        raise ValueError(f"q = {q} < 5 is not supported")
    if not nf.totally_split(F, q):
        raise nf.NotSplitError(f"{q} is not totally split in {F}")


def multiplicative_places(E: WeierstrassModel, F: NumberField, q: int) -> list[DegreeOnePlace]:
    _require_split_q(F, q)
    j = j_invariant(E)
    if not j:
        return []
    return [P for P in nf.degree_one_places(F, q) if nf.valuation(j, P) < 0]


def family_Eprime_membership(E: WeierstrassModel, F: NumberField, q: int) -> bool:
    """Whether some place above ``q`` has potentially multiplicative reduction."""
    return bool(multiplicative_places(E, F, q))


# -- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class IrreducibilityCertificate:
    field: str
    curve: str
    criterion: str  # "TheoremI-1" or "TheoremI-2"
    witnesses: tuple[Classification, ...]
    bound: int
    max_prime: int
    literal_bound: Optional[int] = None  # C(K, M) for TheoremI-1
    stable: bool = True
    classifications: tuple[Classification, ...] = ()
    diagnostics: tuple[str, ...] = ()

    claim = CLAIM

    def to_json(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "result": "certificate",
            "criterion": self.criterion,
            "field": self.field,
            "curve": self.curve,
            "max_prime": str(self.max_prime),
            "witnesses": [w.to_json() for w in self.witnesses],
            "bound": str(self.bound),
            "claim": self.claim,
            "stable": self.stable,
            "classifications": [c.to_json() for c in self.classifications],
            "diagnostics": list(self.diagnostics),
        }
        if self.literal_bound is not None:
            out["literal_bound"] = str(self.literal_bound)
        return out


@dataclass(frozen=True)
class NoCriterion:
    field: str
    curve: str
    max_prime: int
    classifications: tuple[Classification, ...]
    diagnostics: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "result": "no-criterion",
            "field": self.field,
            "curve": self.curve,
            "max_prime": str(self.max_prime),
            "classifications": [c.to_json() for c in self.classifications],
            "diagnostics": list(self.diagnostics),
        }


def theorem_1_bound(inv: nf.FieldInvariants, q: int, q2: int, prec: int = DEFAULT_PREC) -> tuple[int, bool]:
    a = bounds.c_of_n(inv, q, prec)
    b = bounds.c_of_n(inv, q2, prec)
    return max(a.value, b.value), a.stable and b.stable


def certify(
    E: WeierstrassModel,
    F: NumberField,
    M: int,
    prec: int = DEFAULT_PREC,
    jobs: int = 1,
    inv: Optional[nf.FieldInvariants] = None,
) -> Union[IrreducibilityCertificate, NoCriterion]:
    """Try the two-type criterion first, then a single multiplicative place."""
    if M < MIN_CHAR:
        raise ValueError("M must be at least 5")
    if inv is None:
        inv = nf.invariants(F, prec)
    diagnostics: list[str] = []
    classes = classify_all(E, scan_places(F, M), jobs, diagnostics)
    pair = witness_pair(classes)
    if pair is not None:
        bound, stable = theorem_1_bound(inv, pair[0].place.q, pair[1].place.q, prec)
        literal = bounds.c_of_n(inv, M, prec)
        return IrreducibilityCertificate(
            str(F), str(E), "TheoremI-1", pair, bound, M, literal.value,
            stable and literal.stable, tuple(classes), tuple(diagnostics),
        )
    mult = [c for c in classes if c.type is PlaceType.POTENTIALLY_MULTIPLICATIVE]
    if mult:
        w = mult[0]
        rep = bounds.b_of_q(inv, w.place.q, prec=prec)
        return IrreducibilityCertificate(
            str(F), str(E), "TheoremI-2", (w,), rep.value, M, None,
            rep.stable, tuple(classes), tuple(diagnostics),
        )
    return NoCriterion(str(F), str(E), M, tuple(classes), tuple(diagnostics))


def theorem_2_certificate(
    E: WeierstrassModel, F: NumberField, q: int, prec: int = DEFAULT_PREC
) -> Optional[IrreducibilityCertificate]:
    """Single-place certificate at a multiplicative place above ``q``, if any."""
    places = multiplicative_places(E, F, q)
    if not places:
        return None
    inv = nf.invariants(F, prec)
    rep = bounds.b_of_q(inv, q, prec=prec)
    w = Classification(places[0], PlaceType.POTENTIALLY_MULTIPLICATIVE)
    return IrreducibilityCertificate(str(F), str(E), "TheoremI-2", (w,), rep.value, q, None, rep.stable, (w,))


# -- J_K and class coverage -------------------------------------------------


@dataclass(frozen=True)
class JKSet:
    """Degree-one places above split primes <= ``bound``.

    The set is enumerated lazily since the bound grows like |disc|^(A h).
    ``explicit`` replaces the enumeration by a fixed list of places.
    """

    field: NumberField
    A: Fraction
    bound: int
    explicit: Optional[tuple[DegreeOnePlace, ...]] = None

    def __iter__(self) -> Iterator[DegreeOnePlace]:
        if self.explicit is not None:
            yield from self.explicit
            return
        if self.bound < 2:
            return
        for q in nf.iter_split_primes(self.field, 2, self.bound):
            yield from nf.degree_one_places(self.field, q)

    def places(self, limit: Optional[int] = None) -> tuple[list[DegreeOnePlace], bool]:
        """(places, truncated): at most ``limit`` places in ascending order."""
        out = []
        for P in self:
            if limit is not None and len(out) >= limit:
                return out, True
            out.append(P)
        return out, False

    def restricted(self, places: Sequence[DegreeOnePlace]) -> "JKSet":
        return JKSet(self.field, self.A, self.bound, tuple(places))


def jk_set(F: NumberField, A, inv: Optional[nf.FieldInvariants] = None) -> JKSet:
    A = Fraction(A)
    if inv is None:
        inv = nf.invariants(F)
    return JKSet(F, A, bounds.jk_bound(inv, A))


@dataclass(frozen=True)
class CoverageResult:
    covered: bool
    class_count: int
    witnesses: dict  # reduced form -> first place of S in that class

    def to_json(self) -> dict:
        return {
            "coverage": self.covered,
            "h": self.class_count,
            "classes": [
                {"form": list(form), "place": P.to_json() if P is not None else None}
                for form, P in self.witnesses.items()
            ],
        }


def class_coverage(F: NumberField, S: JKSet) -> CoverageResult:
    """Scan S in ascending order until every ideal class has a member."""
    if not isinstance(F, QuadraticField) or F.is_real:
        raise nf.UnsupportedFieldError("class coverage is checked for imaginary quadratic fields only")
    from .quadforms import reduced_definite_forms

    classes = reduced_definite_forms(F.disc)
    hit: dict = {form: None for form in classes}
    missing = len(classes)
    for P in S:
        form = nf.ideal_class_of(P)
        if hit.get(form, 0) is None:
            hit[form] = P
            missing -= 1
            if missing == 0:
                break
    return CoverageResult(missing == 0, len(classes), hit)


def check_class_coverage(F: NumberField, S: JKSet) -> bool:
    return class_coverage(F, S).covered
