import random
from fractions import Fraction

import pytest

from symid.multipoly import Polynomial, parse_poly
from symid.ideal_ops import Ideal, intersect_many, radical_member
from symid.minprimes import (
    CERT_LINEAR, CERT_PRINCIPAL, CERT_ZERO_DIM, certify_prime, is_prime_known,
    minimal_primes, split_element,
)
from symid.perm import act_on_ideal, symmetric_group

N3 = ["x1", "x2", "x3"]
N2 = ["x1", "x2"]


def I3(*texts):
    return Ideal.from_strings(N3, list(texts))


def I2(*texts):
    return Ideal.from_strings(N2, list(texts))


def keys(ideals):
    return {P.canonical_key() for P in ideals}


# -- golden examples ------------------------------------------------------------

def test_triangle_of_coordinate_planes():
    primes = minimal_primes(I3("x1*x2", "x2*x3", "x3*x1"))
    assert keys(primes) == keys([I3("x1", "x2"), I3("x2", "x3"), I3("x3", "x1")])


def test_embedded_component_excluded():
    primes = minimal_primes(I2("x1^2", "x1*x2"))
    assert keys(primes) == keys([I2("x1")])


def test_product_of_linear_forms():
    primes = minimal_primes(I2("(x1+1)*(x2+1)*(x1+x2)"))
    assert keys(primes) == keys([I2("x1 + 1"), I2("x2 + 1"), I2("x1 + x2")])


def test_unit_ideal_rejected():
    with pytest.raises(ValueError):
        minimal_primes(I2("1"))


def test_prime_input_is_returned():
    P = I3("x1 + x2", "x3^2 + x3 + 1")
    primes = minimal_primes(P)
    assert len(primes) == 1 and primes[0].equals(P)


def test_mixed_dimension_minimality_filter():
    # <x1> ∩ <x1^2, x2> has the embedded <x1, x2> hidden inside
    I = I2("x1^2", "x1*x2")
    primes = minimal_primes(I)
    assert len(primes) == 1


def test_positive_dimensional_curve_split():
    # (x2^2 - x1) * (x2 + 1): a parabola and a line, separated by the
    # leading-coefficient saturation over U = {x2}
    primes = minimal_primes(I2("(x2^2 - x1)*(x2 + 1)"))
    assert keys(primes) == keys([I2("x2^2 - x1"), I2("x2 + 1")])


def test_monomial_univariate_split():
    # (x1*x2)^2 - 1 factors through the monomial x1*x2
    primes = minimal_primes(I2("x1^2*x2^2 - 1"))
    assert keys(primes) == keys([I2("x1*x2 - 1"), I2("x1*x2 + 1")])


def test_out_of_scope_product_raises():
    # (x2^2 - x1)*(x2 + x1) has no univariate or leading-coefficient split;
    # finding its primes needs multivariate factorization, which is out of
    # scope, and the engine must fail loudly rather than return wrong primes
    from symid.minprimes import DecompositionStuck
    with pytest.raises(DecompositionStuck):
        minimal_primes(I2("(x2^2 - x1)*(x2 + x1)"))


# -- structural properties ---------------------------------------------------------

def test_every_prime_contains_input():
    I = I3("x1*x2", "x2*x3", "x3*x1")
    for P in minimal_primes(I):
        assert P.contains_ideal(I)


def test_pairwise_incomparable():
    I = I3("x1*x2*x3", "x1*x2^2")
    primes = minimal_primes(I)
    for i, P in enumerate(primes):
        for j, Q in enumerate(primes):
            if i != j:
                assert not P.contains_ideal(Q)


def test_radical_membership_agreement():
    rng = random.Random(41)
    I = I2("x1^2*x2", "x1*x2^2")
    primes = minimal_primes(I)
    inter = intersect_many(primes)
    for _ in range(100):
        f = Polynomial.from_terms(2, [
            (tuple(rng.randint(0, 2) for _ in range(2)), Fraction(rng.randint(-3, 3)))
            for _ in range(rng.randint(1, 3))])
        assert inter.contains_poly(f) == radical_member(f, I)


def test_equivariance_of_prime_set():
    I = I3("x1*x2", "x2*x3", "x3*x1")
    primes = minimal_primes(I)
    key_set = keys(primes)
    for sigma in symmetric_group(3):
        assert {act_on_ideal(sigma, P).canonical_key() for P in primes} == key_set


# -- certificates -----------------------------------------------------------------

def test_certificates_examples():
    assert is_prime_known(I2("x1 + x2")) == CERT_PRINCIPAL
    assert is_prime_known(I2("x1", "x2")) == CERT_LINEAR
    q2 = I3("x3^2 + x3 + 1", "x2 + x3 + 1", "x1 - 1")
    assert is_prime_known(q2) == CERT_ZERO_DIM


def test_certificate_for_graph_ideal():
    # x4 := x3^2 is a polynomial graph; prime but not linear or zero-dim
    P = Ideal.from_strings(["x1", "x2", "x3", "x4"], ["x4 - x3^2"])
    assert certify_prime(P) is not None


def test_certificate_rejects_reducible():
    assert certify_prime(I2("x1*x2")) is None
    with pytest.raises(ValueError):
        is_prime_known(I2("(x1+1)*(x2+1)"))


def test_minimal_primes_attach_certificates():
    for P in minimal_primes(I3("x1*x2", "x2*x3", "x3*x1")):
        assert P.prime_cert is not None


# -- split_element ------------------------------------------------------------------

def test_split_monomial_content():
    parts = split_element(parse_poly("x1^2*x2", N2))
    assert keys([Ideal(2, (p,)) for p in parts]) == \
        keys([I2("x1"), I2("x2")])


def test_split_separable_product():
    f = parse_poly("(x1^3 - 1)*(x2^3 - 1)", N2)
    parts = split_element(f)
    texts = keys([Ideal(2, (p,)) for p in parts])
    assert texts == keys([I2("x1 - 1"), I2("x1^2 + x1 + 1"),
                          I2("x2 - 1"), I2("x2^2 + x2 + 1")])


def test_split_atomic_polynomial():
    f = parse_poly("x1^2 + x2^2 + 1", N2)
    parts = split_element(f)
    assert len(parts) == 1
    assert parts[0].terms == f.monic().terms
