import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from irredcert import bounds
from irredcert import numfield as nf
from irredcert.exactnum import RealEnclosure, ceil_upper

from oracles import mp_from_fraction, pell_unit, surd_power


QQ_INV = nf.invariants(nf.QQ)
QI_INV = nf.invariants(nf.QuadraticField(-1))
Q5_INV = nf.invariants(nf.QuadraticField(-5))
Q2_INV = nf.invariants(nf.QuadraticField(2))


def supplied(d, h, r, R=(Fraction(1), Fraction(2))):
    reg = RealEnclosure.exact(1) if r == 0 else RealEnclosure.between(*R)
    return nf.FieldInvariants(d, 10**d, h, reg, r, "supplied")


def oracle_C(n, d, h, C2=1):
    return (n ** (12 * h) * C2 + n ** (6 * h)) ** (2 * d)


def test_delta_examples():
    d1 = bounds.delta_K(QQ_INV)
    assert mp_from_fraction(d1.lo) <= mpmath.log(2) <= mp_from_fraction(d1.hi)
    d2 = bounds.delta_K(Q2_INV)
    assert mp_from_fraction(d2.lo) <= mpmath.log(2) / 2 <= mp_from_fraction(d2.hi)
    d6 = bounds.delta_K(supplied(6, 1, 5))
    ref = 1 / (318 * mpmath.log(36))
    assert mp_from_fraction(d6.lo) <= ref <= mp_from_fraction(d6.hi)
    assert abs(float(d6.mid()) - 8.775e-4) < 1e-6


@pytest.mark.parametrize("d", [3, 4, 5, 6, 8, 12, 24, 100, 10**6])
def test_delta_is_the_larger_branch(d):
    enc = bounds.delta_K(supplied(d, 1, d - 1))
    a = 1 / (53 * d * mpmath.log(6 * d))
    b = (mpmath.log(mpmath.log(d)) / mpmath.log(d)) ** 3 / 1201
    assert mp_from_fraction(enc.lo) <= max(a, b) <= mp_from_fraction(enc.hi)


def test_c1_examples():
    assert bounds.c1(QQ_INV).hi == 0
    assert bounds.c1(Q5_INV).hi == 0
    c = bounds.c1(Q2_INV)
    assert c.lo == c.hi == Fraction(1, 2)


def test_c1_higher_rank_formula():
    inv = supplied(3, 1, 2)
    enc = bounds.c1(inv)
    delta = 1 / (53 * 3 * mpmath.log(18))
    ref = mpmath.mpf(2**3) / 2 / delta
    assert mp_from_fraction(enc.lo) <= ref <= mp_from_fraction(enc.hi)


def test_c2_examples():
    assert bounds.c2(QQ_INV).lo == bounds.c2(QQ_INV).hi == 1
    assert bounds.c2(QI_INV).lo == 1


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 10, 13])
def test_c2_encloses_twelfth_power_of_the_unit(m):
    # C2 = exp(12 * 2 * (1/2) * ln eps) = eps^12, expanded exactly
    x, y = pell_unit(m)
    a, b = surd_power(x, y, m, 12)
    exact = mp_from_fraction(a) + mp_from_fraction(b) * mpmath.sqrt(m)
    enc = bounds.c2(nf.invariants(nf.QuadraticField(m)))
    assert mp_from_fraction(enc.lo) <= exact <= mp_from_fraction(enc.hi)
    assert enc.width / enc.lo < Fraction(1, 2**120)
    assert ceil_upper(enc) == math.ceil(exact)


@pytest.mark.parametrize("n", range(1, 32))
def test_C_of_n_exact_branch(n):
    assert bounds.c_of_n(QQ_INV, n).value == oracle_C(n, 1, 1)
    assert bounds.c_of_n(Q5_INV, n).value == oracle_C(n, 2, 2)


def test_C_of_n_examples():
    assert bounds.c_of_n(QQ_INV, 2).value == 17305600
    assert bounds.c_of_n(QQ_INV, 1).value == 4
    assert bounds.c_of_n(QI_INV, 2).value == 299483791360000
    with pytest.raises(ValueError):
        bounds.c_of_n(QQ_INV, 0)


@pytest.mark.parametrize("m", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 7, 31, 97])
def test_C_of_n_enclosure_branch_is_the_exact_ceiling(m, n):
    # (n^12 eps^12 + n^6)^4 = A + B sqrt(m) exactly; its ceiling by integer square roots
    ex, ey = surd_power(*pell_unit(m), m, 12)
    A, B = surd_power(n**12 * ex + n**6, n**12 * ey, m, 4)
    assert A.denominator == 1 and B.denominator == 1
    A, B = int(A), int(B)
    s = math.isqrt(m * B * B)
    rep = bounds.c_of_n(nf.invariants(nf.QuadraticField(m)), n)
    assert rep.stable
    assert rep.value == A + s + 1


def test_ceil_stable_under_precision_doubling():
    for m in (2, 3, 5):
        inv = nf.invariants(nf.QuadraticField(m), 256)
        assert ceil_upper(bounds.c2(inv, 128)) == ceil_upper(bounds.c2(inv, 256))
        assert bounds.c_of_n(inv, 5, 128).value == bounds.c_of_n(inv, 5, 256).value


@given(st.integers(1, 60), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=60)
def test_C_of_n_monotone(n, d, h):
    inv = supplied(d, h, 0)
    assert bounds.c_of_n(inv, n + 1).value > bounds.c_of_n(inv, n).value
    assert bounds.c_of_n(supplied(d, h + 1, 0), n + 1).value > bounds.c_of_n(inv, n + 1).value


def test_torsion_examples():
    assert bounds.torsion_bound(QQ_INV) == 532900
    assert bounds.torsion_bound(QI_INV) == 531442**2
    assert bounds.torsion_bound(supplied(1, 2, 0)) > bounds.torsion_bound(supplied(1, 1, 0))


def test_b_of_q_examples():
    assert bounds.b_of_q(QQ_INV, 2).value == 17305600
    assert bounds.b_of_q(QQ_INV, 31).value == (31**12 + 31**6) ** 2
    assert bounds.b_of_q(QQ_INV, 3).value == (531441 + 729) ** 2
    with pytest.raises(nf.NotSplitError):
        bounds.b_of_q(QI_INV, 7, nf.QuadraticField(-1))


def test_b_of_q_dominates_both_terms():
    for inv in (QQ_INV, QI_INV, Q5_INV, Q2_INV):
        for q in (2, 3, 5, 7):
            v = bounds.b_of_q(inv, q).value
            assert v >= bounds.torsion_bound(inv)
            assert v >= bounds.c_of_n(inv, q).value


def test_jk_bound_examples():
    assert bounds.jk_bound(QI_INV, 1) == 8
    assert bounds.jk_bound(Q5_INV, 1) == 800
    for A in (1, Fraction(1, 2), 3):
        assert bounds.jk_bound(QQ_INV, A) == 2
    with pytest.raises(ValueError):
        bounds.jk_bound(QQ_INV, 0)


@given(st.fractions(min_value=Fraction(1, 7), max_value=3, max_denominator=7))
def test_jk_bound_is_the_ceiling(A):
    n = bounds.jk_bound(Q5_INV, A)
    exact = 2 * mpmath.mpf(20) ** (mp_from_fraction(A) * 2)
    assert n - 1 < exact <= n


def test_c_K_examples():
    assert bounds.c_K(QI_INV, 1).value == (8**12 + 8**6) ** 4
    assert bounds.c_K(QQ_INV, 1).value == 17305600


def test_bound_report_json_is_decimal_strings():
    out = bounds.c_of_n(QQ_INV, 31).to_json()
    assert out["value"] == str((31**12 + 31**6) ** 2)
    rep = bounds.c2_report(Q2_INV).to_json()
    lo, hi = (Fraction(s) for s in rep["enclosure"])
    assert lo <= hi <= Fraction(rep["value"])
    assert hi - lo < Fraction(1, 10**20)
