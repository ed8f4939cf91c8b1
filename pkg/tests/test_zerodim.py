import random
from fractions import Fraction

import pytest

from symid.multipoly import Polynomial, parse_poly
from symid.ideal_ops import Ideal, add_poly, intersect, radical_member, saturate_only
from symid.unifactor import UniPoly
from symid.zerodim import minimal_polynomial, staircase, zerodim_minimal_primes

N3 = ["x1", "x2", "x3"]
N2 = ["x1", "x2"]
N1 = ["x3"]


def I3(*texts):
    return Ideal.from_strings(N3, list(texts))


def I2(*texts):
    return Ideal.from_strings(N2, list(texts))


def cyclic3():
    return I3("x1*x2*x3 - 1", "x1*x2 + x2*x3 + x3*x1", "x1 + x2 + x3")


# -- staircase ------------------------------------------------------------------

def test_staircase_point():
    s = staircase(I2("x1", "x2"))
    assert s.basis_monomials == ((0, 0),)
    assert s.vdim == 1


def test_staircase_fat_point():
    s = staircase(I2("x1^2", "x2"))
    assert s.vdim == 2
    assert set(s.basis_monomials) == {(0, 0), (1, 0)}


def test_staircase_cyclic3_has_dimension_six():
    assert staircase(cyclic3()).vdim == 6


def test_staircase_rejects_positive_dimensional():
    with pytest.raises(ValueError):
        staircase(I2("x1"))
    with pytest.raises(ValueError):
        staircase(I2("1"))


# -- minimal polynomials -----------------------------------------------------------

def test_minimal_polynomial_of_x3_mod_cyclic3():
    m = minimal_polynomial(Polynomial.variable(3, 2), cyclic3())
    assert m == UniPoly((-1, 0, 0, 1))  # x^3 - 1


def test_minimal_polynomial_linear():
    I = I2("x1 - 1", "x2")
    m = minimal_polynomial(Polynomial.variable(2, 0), I)
    assert m == UniPoly((-1, 1))


def test_minimal_polynomial_nilpotent_sum():
    I = I2("x1^2", "x2^2")
    m = minimal_polynomial(parse_poly("x1 + x2", N2), I)
    assert m == UniPoly((0, 0, 0, 1))  # t^3: the square survives, cube dies


def test_minimal_polynomial_membership():
    rng = random.Random(19)
    I = cyclic3()
    for _ in range(10):
        g = Polynomial.from_terms(3, [
            (tuple(rng.randint(0, 1) for _ in range(3)), Fraction(rng.randint(-2, 2)))
            for _ in range(2)])
        m = minimal_polynomial(g, I)
        value = Polynomial.zero(3)
        for e in range(m.degree(), -1, -1):
            value = value * g
            if m.coeffs[e]:
                value = value + Polynomial.constant(3, m.coeffs[e])
        assert I.contains_poly(value)


# -- maximal ideal decomposition ------------------------------------------------------

def test_primes_of_univariate_cubic():
    I = Ideal.from_strings(N1, ["x3^3 - 1"])
    primes = zerodim_minimal_primes(I)
    keys = {p.canonical_key() for p in primes}
    expect = {Ideal.from_strings(N1, ["x3 - 1"]).canonical_key(),
              Ideal.from_strings(N1, ["x3^2 + x3 + 1"]).canonical_key()}
    assert keys == expect
    assert all(p.prime_cert == "zero-dimensional maximal" for p in primes)


def test_primes_of_primary_ideal():
    primes = zerodim_minimal_primes(I2("x1^2", "x2"))
    assert len(primes) == 1
    assert primes[0].equals(I2("x1", "x2"))


def test_primes_of_cyclic3_match_paper_components():
    primes = zerodim_minimal_primes(cyclic3())
    q1 = I3("x2^2 + x2 + 1", "x1 + x2 + 1", "x3 - 1")
    q2 = I3("x3^2 + x3 + 1", "x2 + x3 + 1", "x1 - 1")
    q3 = I3("x1^2 + x1 + 1", "x3 + x1 + 1", "x2 - 1")
    keys = {p.canonical_key() for p in primes}
    assert keys == {q1.canonical_key(), q2.canonical_key(), q3.canonical_key()}


def test_primes_require_conjugate_splitting():
    # x1^2 - 2 and x2^2 - 2: the diagonal splits off the antidiagonal
    I = I2("x1^2 - 2", "x2^2 - 2")
    primes = zerodim_minimal_primes(I)
    keys = {p.canonical_key() for p in primes}
    expect = {I2("x1^2 - 2", "x2 - x1").canonical_key(),
              I2("x1^2 - 2", "x2 + x1").canonical_key()}
    assert keys == expect


def test_primes_of_galois_irreducible_pair():
    # Q(sqrt2, sqrt3) is a field: the ideal is already maximal
    I = I2("x1^2 - 2", "x2^2 - 3")
    primes = zerodim_minimal_primes(I)
    assert len(primes) == 1
    assert primes[0].equals(I)


def test_zerodim_split_invariant():
    # splitting identity: I = (I + <f>) ∩ (I : f^inf) at each eliminant factor
    I = I2("x1^2 - 1", "x2^2 - x1")
    f = parse_poly("x1 - 1", N2)
    left = add_poly(I, f)
    right = saturate_only(I, f)
    assert intersect(left, right).equals(I)


def test_intersection_of_primes_matches_radical_membership():
    rng = random.Random(23)
    I = I2("x1^3 - x1", "x2^2 - 1")
    primes = zerodim_minimal_primes(I)
    inter = primes[0]
    for p in primes[1:]:
        inter = intersect(inter, p)
    for _ in range(50):
        f = Polynomial.from_terms(2, [
            (tuple(rng.randint(0, 2) for _ in range(2)), Fraction(rng.randint(-2, 2)))
            for _ in range(2)])
        assert inter.contains_poly(f) == radical_member(f, I)
