import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from irredcert import numfield as nf
from irredcert import quadforms as qf
from irredcert.bounds import c1
from irredcert.exactnum import DomainError, RealEnclosure, interval_exp

from oracles import (
    fundamental_discriminants,
    mp_from_fraction,
    mp_surd,
    pell_unit,
    splits_by_roots,
)


QI = nf.QuadraticField(-1)
Q5 = nf.QuadraticField(-5)
Q2 = nf.QuadraticField(2)


# -- parsing and invariants -------------------------------------------------


def test_parse_field_forms():
    assert nf.parse_field("Q") is nf.QQ
    assert nf.parse_field("Q(sqrt:-5)").m == -5
    assert nf.parse_field(" Q( sqrt : 2 ) ").m == 2
    for bad in ("Q(sqrt:4)", "Q(sqrt:1)", "Q(sqrt:0)", "R", "Q(sqrt:x)"):
        with pytest.raises(nf.FieldError):
            nf.parse_field(bad)


def test_supplied_field_descriptor():
    F = nf.parse_field('custom:{d: 3, disc: 49, h: 1, R: [0.5255, 0.5256], r: 2, poly: [-1, -2, 1, 1]}')
    assert isinstance(F, nf.SuppliedField)
    inv = nf.invariants(F)
    assert (inv.degree, inv.disc, inv.class_number, inv.unit_rank) == (3, 49, 1, 2)
    assert inv.regulator.contains(Fraction("0.52555"))
    # x^3 + x^2 - 2x - 1 has three real roots, so r is derived when omitted
    G = nf.parse_field("custom:{d: 3, disc: 49, h: 1, R: [0.5255, 0.5256], poly: [-1, -2, 1, 1]}")
    assert nf.invariants(G).unit_rank == 2


def test_invariants_examples():
    q = nf.invariants(nf.QQ)
    assert (q.degree, q.disc, q.class_number, q.unit_rank) == (1, 1, 1, 0)
    assert q.regulator.lo == q.regulator.hi == 1
    i5 = nf.invariants(Q5)
    assert (i5.degree, i5.disc, i5.class_number, i5.unit_rank) == (2, -20, 2, 0)
    i2 = nf.invariants(Q2)
    assert (i2.degree, i2.disc, i2.class_number, i2.unit_rank) == (2, 8, 1, 1)
    assert mp_from_fraction(i2.regulator.lo) <= mpmath.log(1 + mpmath.sqrt(2)) <= mp_from_fraction(i2.regulator.hi)


def test_class_number_examples():
    assert nf.class_number(QI) == 1
    assert nf.class_number(Q5) == 2
    assert nf.class_number(Q2) == 1


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 19, 21, 22, 29, 31, 46, 94])
def test_fundamental_unit_and_regulator_against_pell_search(m):
    F = nf.QuadraticField(m)
    x, y = pell_unit(m)
    eps = nf.fundamental_unit(F)
    assert (eps.a, eps.b) == (x, y)
    R = nf.regulator(F)
    ln_eps = mpmath.log(mp_surd(x, y, m))
    assert mp_from_fraction(R.lo) <= ln_eps <= mp_from_fraction(R.hi)
    assert R.width < Fraction(1, 2**100)


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 10])
def test_exp_of_regulator_times_exp_of_minus_regulator_contains_one(m):
    R = nf.regulator(nf.QuadraticField(m))
    assert (interval_exp(R) * interval_exp(-R)).contains(1)


# -- splitting --------------------------------------------------------------


def test_totally_split_examples():
    assert nf.totally_split(QI, 5)
    assert not nf.totally_split(QI, 7)
    assert nf.totally_split(Q5, 3)
    with pytest.raises(ValueError):
        nf.totally_split(QI, 9)


def test_split_primes_examples():
    assert nf.split_primes_up_to(QI, 8) == [5]
    assert nf.split_primes_up_to(nf.QQ, 10) == [2, 3, 5, 7]
    assert nf.split_primes_up_to(Q5, 10) == [3, 7]


@pytest.mark.parametrize("D", fundamental_discriminants(-60, 60))
def test_splitting_agrees_with_root_counting(D):
    F = nf.QuadraticField(D if D % 4 == 1 else D // 4)
    assert F.disc == D
    for q in sympy.primerange(2, 500):
        assert nf.totally_split(F, q) == splits_by_roots(D, q), q


def test_supplied_field_splitting_by_root_counting():
    F = nf.parse_field("custom:{d: 3, disc: 49, h: 1, R: [0.5255, 0.5256], poly: [-1, -2, 1, 1]}")
    for q in sympy.primerange(2, 200):
        roots = [x for x in range(q) if (x**3 + x**2 - 2 * x - 1) % q == 0]
        assert nf.totally_split(F, q) == (len(roots) == 3 and q != 7), q


# -- places, valuation, reduction -------------------------------------------


def test_degree_one_places_examples():
    assert sorted(P.root for P in nf.degree_one_places(QI, 5)) == [2, 3]
    assert [P.q for P in nf.degree_one_places(nf.QQ, 31)] == [31]
    assert sorted(P.root for P in nf.degree_one_places(Q2, 7)) == [3, 4]
    with pytest.raises(nf.NotSplitError):
        nf.degree_one_places(QI, 7)


def test_reduce_mod_place_examples():
    (P5,) = nf.degree_one_places(nf.QQ, 5)
    assert nf.reduce_mod_place(Fraction(6912, 31), P5) == 2
    assert nf.reduce_mod_place(0, P5) == 0
    (P,) = [P for P in nf.degree_one_places(QI, 5) if P.root == 2]
    assert nf.reduce_mod_place(QI.element(1, 1), P) == 3
    with pytest.raises(nf.NonIntegralError):
        nf.reduce_mod_place(Fraction(1, 5), P5)


def _random_element(rng, F, size=30, den=1):
    return F.element(Fraction(rng.randint(-size, size), den), Fraction(rng.randint(-size, size), den))


@pytest.mark.parametrize("m", [-1, -5, -3, 2, 5, 13])
def test_reduction_is_a_ring_homomorphism(m):
    F = nf.QuadraticField(m)
    rng = random.Random(m)
    q = next(p for p in nf.iter_split_primes(F, 5))
    for P in nf.degree_one_places(F, q):
        for _ in range(100):
            den = 2 if F.disc % 4 == 1 else 1
            x, y = _random_element(rng, F, den=den), _random_element(rng, F, den=den)
            rx, ry = nf.reduce_mod_place(x, P), nf.reduce_mod_place(y, P)
            assert nf.reduce_mod_place(x + y, P) == (rx + ry) % q
            assert nf.reduce_mod_place(x * y, P) == (rx * ry) % q


@pytest.mark.parametrize("m", [-1, -5, 2, 7])
def test_valuations_add_over_conjugate_places(m):
    F = nf.QuadraticField(m)
    rng = random.Random(100 + m)
    for q in list(nf.iter_split_primes(F, 3, 60))[:4]:
        places = nf.degree_one_places(F, q)
        for _ in range(50):
            x = _random_element(rng, F, 50)
            if not x:
                continue
            n = x.norm()
            vq = sympy.multiplicity(q, n.numerator) - sympy.multiplicity(q, n.denominator)
            assert sum(nf.valuation(x, P) for P in places) == vq


def test_ideal_class_of_examples():
    (P29,) = nf.degree_one_places(Q5, 29)[:1]
    assert nf.ideal_class_of(P29) == (1, 0, 5)
    for P in nf.degree_one_places(Q5, 3):
        assert nf.ideal_class_of(P) == (2, 2, 3)
    assert nf.ideal_class_of(nf.degree_one_places(QI, 5)[0]) == (1, 0, 1)
    with pytest.raises(nf.UnsupportedFieldError):
        nf.ideal_class_of(nf.degree_one_places(Q2, 7)[0])


# -- heights ----------------------------------------------------------------


def mahler_height_product(x, F) -> mpmath.mpf:
    """prod max(1, |root|) times leading coefficient of the primitive integer minimal polynomial."""
    t = sympy.Symbol("t")
    if isinstance(x, nf.QuadElement) and not x.is_rational():
        expr = sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(x.m)
        poly = sympy.Poly(sympy.minimal_polynomial(expr, t), t)
        deg = 2
    else:
        r = x.a if isinstance(x, nf.QuadElement) else Fraction(x)
        poly = sympy.Poly(r.denominator * t - r.numerator, t)
        deg = 1
    coeffs = [int(c) for c in poly.all_coeffs()]
    roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=400)
    m = abs(mpmath.mpf(coeffs[0]))
    for r in roots:
        m *= max(1, abs(r))
    return m ** (F.degree // deg)


def test_height_examples():
    assert nf.height(Fraction(2), nf.QQ).contains(2)
    assert nf.height(Fraction(1, 2), nf.QQ).contains(2)
    H = nf.height(1 + Q2.gen, Q2)
    assert mp_from_fraction(H.lo) <= mpmath.sqrt(1 + mpmath.sqrt(2)) <= mp_from_fraction(H.hi)
    with pytest.raises(DomainError):
        nf.height(Fraction(0), nf.QQ)


@pytest.mark.parametrize("m", [-1, -5, -3, 2, 3, 5])
def test_height_product_against_mahler_measure(m):
    F = nf.QuadraticField(m)
    rng = random.Random(7 * m)
    for _ in range(40):
        x = _random_element(rng, F, 40, den=rng.choice([1, 2, 3, 7]))
        if not x:
            continue
        hp = nf.height_product(x, F)
        val = nf.real_value(hp, 200) if isinstance(hp, nf.QuadElement) else RealEnclosure.exact(hp, 200)
        ref = mahler_height_product(x, F)
        tol = mpmath.mpf(2) ** -150 * ref
        assert mp_from_fraction(val.lo) - tol <= ref <= mp_from_fraction(val.hi) + tol


@pytest.mark.parametrize("m", [-1, -5, 2, 3])
def test_height_of_inverse_equals_height(m):
    # product formula: H(1/x) = H(x)
    F = nf.QuadraticField(m)
    rng = random.Random(11 * m)
    for _ in range(60):
        x = _random_element(rng, F, 60, den=rng.choice([1, 2, 5]))
        if not x:
            continue
        assert nf.height_product(x, F) == nf.height_product(x.inverse(), F)


@given(st.fractions(min_value=Fraction(-10**9), max_value=Fraction(10**9), max_denominator=10**9))
def test_rational_height_and_inverse(x):
    if x == 0:
        return
    assert nf.height_product(x, nf.QQ) == max(abs(x.numerator), x.denominator)
    assert nf.height_product(x, nf.QQ) == nf.height_product(1 / x, nf.QQ)


# -- small generators and the height bound ----------------------------------


def _height_bound_holds(gamma, F) -> bool:
    """H(gamma)^d <= |N(gamma)| exp(C1 R)^d, certified by enclosures."""
    inv = nf.invariants(F, 160)
    hp = nf.height_product(gamma, F)
    lhs = nf.real_value(hp, 160) if isinstance(hp, nf.QuadElement) else RealEnclosure.exact(hp, 160)
    rhs = abs(gamma.norm()) * interval_exp(F.degree * c1(inv, 160) * inv.regulator)
    return lhs.certainly_le(rhs)


def test_small_generator_examples():
    ideal = qf.prime_ideals_above(Q2.disc, 2)[0]
    g = nf.small_generator(ideal, Q2, 1)
    assert abs(g.norm()) == 2
    assert nf.height_product(g, Q2) == 2  # H(sqrt 2)^2
    assert g in (Q2.gen, -Q2.gen)
    assert _height_bound_holds(g, Q2)

    (P,) = [P for P in nf.degree_one_places(QI, 5) if nf.reduce_mod_place(QI.element(2, 1), P) == 0]
    g = nf.small_generator(P, QI, 1)
    units = [QI.element(1), QI.element(-1), QI.gen, -QI.gen]
    assert any(g == u * QI.element(2, 1) for u in units)

    ideal = next(I for I in qf.prime_ideals_above(Q5.disc, 3) if I.contains(qf_elt(Q5, 1, 1)))
    g = nf.small_generator(ideal, Q5, 2)
    assert g.norm() == 9
    assert g in (Q5.element(2, -1), Q5.element(-2, 1))


def qf_elt(F, a, b):
    """Element a + b sqrt(m) in omega coordinates."""
    u, v = F.to_omega(F.element(a, b))
    return (int(u), int(v))


def test_prime_above_2_in_q_sqrt2_is_not_split():
    assert not nf.totally_split(Q2, 2)


@pytest.mark.parametrize("m", [-1, -5, -6, -14, 2, 3, 5, 6, 7, 10, 79])
def test_small_generator_height_bound_for_prime_ideals(m):
    # split, ramified and inert primes of norm <= 200
    F = nf.QuadraticField(m)
    h = nf.class_number(F)
    seen = 0
    for q in sympy.primerange(2, 200):
        for I in qf.prime_ideals_above(F.disc, q):
            if I.norm > 200:
                continue
            g = nf.small_generator(I, F, h)
            assert abs(g.norm()) == I.norm ** h
            assert _height_bound_holds(g, F), (m, q)
            seen += 1
    assert seen > 10
