import random
from fractions import Fraction

import pytest

from symid.unifactor import (
    UniPoly, Factorization, factor, from_multivariate, is_irreducible,
    poly_gcd, squarefree, to_multivariate,
)
from symid.multipoly import parse_poly

from oracles import smallest_divisor_search, _u_degree


def U(*coeffs):
    return UniPoly(coeffs)


# -- squarefree ---------------------------------------------------------------

def test_squarefree_perfect_square():
    unit, parts = squarefree(U(1, 2, 1))  # x^2 + 2x + 1
    assert unit == 1
    assert parts == [(U(1, 1), 2)]


def test_squarefree_already_squarefree():
    unit, parts = squarefree(U(-1, 0, 0, 1))  # x^3 - 1
    assert parts == [(U(-1, 0, 0, 1), 1)]
    assert unit == 1


def test_squarefree_constant():
    unit, parts = squarefree(U(5))
    assert unit == 5 and parts == []


def test_squarefree_zero_rejected():
    with pytest.raises(ValueError):
        squarefree(UniPoly(()))


def test_squarefree_parts_coprime_to_derivative():
    rng = random.Random(3)
    for _ in range(60):
        coeffs = [rng.randint(-3, 3) for _ in range(rng.randint(2, 6))] + [1]
        u = UniPoly(coeffs) ** rng.randint(1, 2)
        unit, parts = squarefree(u)
        prod = UniPoly((unit,))
        for part, mult in parts:
            assert poly_gcd(part, part.derivative()).is_constant()
            prod = prod * part ** mult
        assert prod == u


# -- factor -------------------------------------------------------------------

def test_factor_x_cubed_minus_one():
    f = factor(U(-1, 0, 0, 1))
    assert f.factors == ((U(-1, 1), 1), (U(1, 1, 1), 1))
    assert f.unit == 1


def test_factor_irreducible_quadratic():
    f = factor(U(1, 0, 1))  # x^2 + 1
    assert f.factors == ((U(1, 0, 1), 1),)


def test_factor_rational_root_free_cubic():
    # x^3 + x + 1: no rational root and degree 3, hence irreducible
    f = factor(U(1, 1, 0, 1))
    assert f.factors == ((U(1, 1, 0, 1), 1),)


def test_factor_with_content_and_multiplicity():
    # 6 * (x-1)^2 * (x^2+x+1)
    u = U(-1, 1) ** 2 * U(1, 1, 1)
    u = u.scale(6)
    f = factor(u)
    assert f.unit == 6
    assert f.factors == ((U(-1, 1), 2), (U(1, 1, 1), 1))


def test_factor_expand_round_trip():
    rng = random.Random(17)
    for _ in range(40):
        pieces = [UniPoly([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))] + [1])
                  for _ in range(rng.randint(1, 3))]
        u = UniPoly((rng.choice([1, 2, -3]),))
        for piece in pieces:
            u = u * piece
        if u.degree() < 1:
            continue
        assert factor(u).expand() == u


def test_is_irreducible():
    assert is_irreducible(U(-1, 1))
    assert is_irreducible(U(1, 1, 1))
    assert not is_irreducible(U(-1, 0, 1))  # x^2 - 1
    with pytest.raises(ValueError):
        is_irreducible(U(3))


def test_factor_agrees_with_divisor_search_oracle():
    rng = random.Random(23)
    checked = 0
    while checked < 200:
        # random products of small factors, degree <= 6
        parts = []
        total = 0
        while total < 2:
            d = rng.randint(1, 3)
            parts.append([rng.randint(-2, 2) for _ in range(d)] + [rng.choice([1, 1, 2])])
            total += d
            if total >= 6 or rng.random() < 0.4:
                break
        u = UniPoly((1,))
        for cs in parts:
            u = u * UniPoly(cs)
        if u.degree() < 2 or u.degree() > 6:
            continue
        ints, _ = u.int_coeffs()
        fact = factor(u)
        div = smallest_divisor_search(ints)
        reducible = not (len(fact.factors) == 1 and fact.factors[0][1] == 1)
        if div is None:
            assert not reducible, "oracle says irreducible, factor() disagrees"
        else:
            assert reducible, "oracle found divisor %r, factor() says irreducible" % div
            assert _u_degree(div) < u.degree()
        checked += 1


# -- conversions ----------------------------------------------------------------

def test_multivariate_round_trip():
    p = parse_poly("x2^3 - x2 + 4", ["x1", "x2", "x3"])
    u, var = from_multivariate(p)
    assert var == 1
    assert u == U(4, -1, 0, 1)
    assert to_multivariate(u, 3, 1) == p


def test_from_multivariate_rejects_mixed():
    p = parse_poly("x1*x2", ["x1", "x2"])
    with pytest.raises(ValueError):
        from_multivariate(p)
