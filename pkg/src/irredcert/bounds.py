"""Explicit bounds as certified integers (or enclosures for the real constants)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from sympy import integer_nthroot

from .exactnum import (
    DEFAULT_PREC,
    MAX_PREC,
    RealEnclosure,
    certified_ceil,
    interval_exp,
    interval_ln,
    to_decimal,
)
from .numfield import FieldInvariants, NumberField, NotSplitError, totally_split


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: Union[int, RealEnclosure]
    inputs: dict = field(default_factory=dict)
    precision_bits: int = 0
    stable: bool = True

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "precision_bits": self.precision_bits,
            "stable": self.stable,
        }
        if isinstance(self.value, RealEnclosure):
            out["value"] = to_decimal(self.value.hi, up=True)
            out["enclosure"] = [to_decimal(self.value.lo, up=False), to_decimal(self.value.hi, up=True)]
        else:
            out["value"] = str(self.value)
        return out


def _ln2(prec: int) -> RealEnclosure:
    return interval_ln(RealEnclosure.exact(2, prec))


def delta_K(inv: FieldInvariants, prec: int = DEFAULT_PREC) -> RealEnclosure:
    d, r = inv.degree, inv.unit_rank
    if d <= 2:
        return _ln2(prec) / (r + 1)
    lnd = interval_ln(RealEnclosure.exact(d, prec))
    first = (53 * d * interval_ln(RealEnclosure.exact(6 * d, prec))).reciprocal()
    second = (interval_ln(lnd) / lnd) ** 3 / 1201
    # the larger of two valid lower bounds is still valid
    return RealEnclosure(max(first.lo, second.lo), max(first.hi, second.hi), prec)


def c1(inv: FieldInvariants, prec: int = DEFAULT_PREC) -> RealEnclosure:
    r = inv.unit_rank
    if r == 0:
        return RealEnclosure.exact(0, prec)
    lead = Fraction(r ** (r + 1), 2)
    if r == 1:
        return RealEnclosure.exact(lead, prec)
    return lead * delta_K(inv, prec + 16) ** (-(r - 1))


def c2(inv: FieldInvariants, prec: int = DEFAULT_PREC) -> RealEnclosure:
    k = c1(inv, prec + 16)
    if k.is_exact and k.lo == 0:
        return RealEnclosure.exact(1, prec)
    reg = inv.regulator_at(prec + 16)
    return interval_exp(12 * inv.degree * k * reg.with_prec(prec + 16)).with_prec(prec)


def _exact_c2(inv: FieldInvariants) -> bool:
    return inv.unit_rank == 0


def c_of_n(inv: FieldInvariants, n: int, prec: int = DEFAULT_PREC) -> BoundReport:
    """C(K, n) = (n^(12h) C2 + n^(6h))^(2d), as a certified integer ceiling."""
    if n < 1:
        raise ValueError("n must be positive")
    d, h = inv.degree, inv.class_number
    inputs = {"d": d, "h": h, "n": n}
    if _exact_c2(inv):
        return BoundReport("C_of_n", (n ** (12 * h) + n ** (6 * h)) ** (2 * d), inputs, 0, True)

    def compute(p: int) -> RealEnclosure:
        return (n ** (12 * h) * c2(inv, p) + n ** (6 * h)) ** (2 * d)

    # start with enough bits to resolve the integer part
    guess = c2(inv, 64)
    bits = 2 * d * (12 * h * n.bit_length() + int(guess.hi).bit_length() + 1) + 64
    start = max(prec, bits)
    value, used, stable = certified_ceil(compute, start, max(MAX_PREC, 2 * start))
    return BoundReport("C_of_n", value, inputs, used, stable)


def torsion_bound(inv: FieldInvariants) -> int:
    return (1 + 3 ** (6 * inv.degree * inv.class_number)) ** 2


def torsion_report(inv: FieldInvariants) -> BoundReport:
    return BoundReport("torsion", torsion_bound(inv), {"d": inv.degree, "h": inv.class_number})


def b_of_q(inv: FieldInvariants, q: int, F: Optional[NumberField] = None, prec: int = DEFAULT_PREC) -> BoundReport:
    """B(K; q) = max(C(K, q), torsion bound); q is checked to split when ``F`` is given."""
    if F is not None and not totally_split(F, q):
        raise NotSplitError(f"{q} is not totally split in {F}")
    c = c_of_n(inv, q, prec)
    value = max(c.value, torsion_bound(inv))
    return BoundReport("B_of_q", value, {"d": inv.degree, "h": inv.class_number, "q": q}, c.precision_bits, c.stable)


def _as_positive_rational(A) -> Fraction:
    A = Fraction(A)
    if A <= 0:
        raise ValueError("A must be positive")
    return A


def jk_bound(inv: FieldInvariants, A) -> int:
    """ceil(2 |disc|^(A h)), computed exactly with integer roots."""
    A = _as_positive_rational(A)
    e = A * inv.class_number
    D = abs(inv.disc)
    # ceil(2 D^(p/q)) = least N with N^q >= 2^q D^p
    target = 2 ** e.denominator * D ** e.numerator
    root, exact = integer_nthroot(target, e.denominator)
    return int(root) if exact else int(root) + 1


def jk_report(inv: FieldInvariants, A) -> BoundReport:
    return BoundReport("jk_bound", jk_bound(inv, A), {"disc": inv.disc, "h": inv.class_number, "A": Fraction(A)})


def c_K(inv: FieldInvariants, A, prec: int = DEFAULT_PREC) -> BoundReport:
    n = jk_bound(inv, A)
    c = c_of_n(inv, n, prec)
    value = max(c.value, torsion_bound(inv))
    inputs = {"d": inv.degree, "h": inv.class_number, "disc": inv.disc, "A": Fraction(A), "jk_bound": n}
    return BoundReport("C_K", value, inputs, c.precision_bits, c.stable)


def c1_report(inv: FieldInvariants, prec: int = DEFAULT_PREC) -> BoundReport:
    return BoundReport("C1", c1(inv, prec), {"d": inv.degree, "r": inv.unit_rank}, prec)


def c2_report(inv: FieldInvariants, prec: int = DEFAULT_PREC) -> BoundReport:
    return BoundReport("C2", c2(inv, prec), {"d": inv.degree, "r": inv.unit_rank}, prec)
