import random
from fractions import Fraction

import pytest

from symid.multipoly import (
    ArityMismatch, BlockElim, GREVLEX, GT, LEX, LT, EQ, Lex, ParseError,
    Polynomial, arith, compare, format_poly, parse_poly,
)


def P(text, n=3):
    names = ["x%d" % (i + 1) for i in range(n)]
    return parse_poly(text, names)


def random_poly(rng, n, max_deg=3, max_terms=4):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        m = tuple(rng.randint(0, max_deg) for _ in range(n))
        terms.append((m, Fraction(rng.randint(-5, 5))))
    return Polynomial.from_terms(n, terms)


def random_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return tuple(images)


# -- arith ------------------------------------------------------------------

def test_add_cancellation():
    assert arith(P("x1+x2"), P("x1-x2"), "add") == P("2*x1")


def test_mul_zero_annihilates():
    p = P("x1^2*x2 - 7*x3")
    assert arith(p, Polynomial.zero(3), "mul").is_zero()


def test_mul_binomial_square():
    assert arith(P("x1+x2"), P("x1+x2"), "mul") == P("x1^2 + 2*x1*x2 + x2^2")


def test_arith_arity_mismatch():
    with pytest.raises(ArityMismatch):
        arith(P("x1", n=2), P("x1", n=3), "add")


def test_arith_matches_pointwise_evaluation():
    # dense brute-force oracle: compare at 20 random rational points
    rng = random.Random(101)
    for _ in range(25):
        n = rng.randint(1, 3)
        p, q = random_poly(rng, n), random_poly(rng, n)
        results = {
            "add": p + q,
            "sub": p - q,
            "mul": p * q,
        }
        for _ in range(20):
            pt = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                       for _ in range(n))
            pv, qv = p.evaluate(pt), q.evaluate(pt)
            assert results["add"].evaluate(pt) == pv + qv
            assert results["sub"].evaluate(pt) == pv - qv
            assert results["mul"].evaluate(pt) == pv * qv


# -- compare ----------------------------------------------------------------

def test_lex_x1_beats_x2_square():
    assert compare((1, 0), (0, 2), LEX) == GT


def test_compare_reflexive():
    for order in (LEX, GREVLEX, BlockElim([0], 2)):
        assert compare((2, 1), (2, 1), order) == EQ


def test_grevlex_hand_case():
    # degrees tie at 2; grevlex prefers the monomial with the smaller
    # exponent on the last variable, so x1*x2 < x1^2
    assert compare((1, 1), (2, 0), GREVLEX) == LT


def test_compare_properties_random():
    rng = random.Random(77)
    orders = [LEX, GREVLEX, Lex((2, 0, 1)), BlockElim([1], 3)]
    for order in orders:
        for _ in range(1000):
            a, b, c = (tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(3))
            # antisymmetry
            assert compare(a, b, order) == -compare(b, a, order)
            # transitivity
            if compare(a, b, order) != LT and compare(b, c, order) != LT:
                assert compare(a, c, order) != LT
            # multiplicativity
            w = tuple(rng.randint(0, 3) for _ in range(3))
            aw = tuple(x + y for x, y in zip(a, w))
            bw = tuple(x + y for x, y in zip(b, w))
            assert compare(a, b, order) == compare(aw, bw, order)


def test_block_order_eliminates_front():
    order = BlockElim([0], 3)
    # any monomial containing x1 dominates any x1-free monomial
    assert compare((1, 0, 0), (0, 5, 5), order) == GT


# -- action -----------------------------------------------------------------

def test_act_transposition():
    p = P("x1^2*x2", n=2)
    assert p.act((1, 0)) == P("x2^2*x1", n=2)


def test_act_identity():
    p = P("x1^3 - x2*x3 + 5")
    assert p.act((0, 1, 2)) == p


def test_act_fixes_cyclic_invariant():
    # x1x2 + x2x3 + x3x1 is fixed by the 3-cycle
    p = P("x1*x2 + x2*x3 + x3*x1")
    assert p.act((1, 2, 0)) == p


def test_act_composition_law():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(2, 4)
        p = random_poly(rng, n)
        s, t = random_perm(rng, n), random_perm(rng, n)
        st = tuple(s[t[i]] for i in range(n))  # apply t, then s
        assert p.act(t).act(s) == p.act(st)


def test_act_is_ring_homomorphism():
    rng = random.Random(6)
    for _ in range(50):
        n = rng.randint(2, 4)
        p, q = random_poly(rng, n), random_poly(rng, n)
        s = random_perm(rng, n)
        assert (p * q).act(s) == p.act(s) * q.act(s)
        assert (p + q).act(s) == p.act(s) + q.act(s)


# -- parse / format ---------------------------------------------------------

def test_parse_simple():
    p = P("x1*x2 - 1", n=2)
    assert p.terms == (((1, 1), Fraction(1)), ((0, 0), Fraction(-1)))


def test_parse_expands_binomial_cube():
    p = P("(x1+x2)^3-1", n=2)
    assert len(p.terms) == 5
    assert p == P("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3 - 1", n=2)


def test_parse_syntax_error_position():
    with pytest.raises(ParseError):
        P("x1 +")
    with pytest.raises(ParseError):
        P("x1 x2")  # '*' is mandatory


def test_parse_unknown_variable():
    with pytest.raises(ParseError):
        parse_poly("y1 + 1", ["x1", "x2"])


def test_format_round_trip():
    rng = random.Random(9)
    names = ["x1", "x2", "x3"]
    for _ in range(200):
        p = random_poly(rng, 3)
        # mix in non-integer coefficients
        p = p.scale(Fraction(rng.randint(1, 7), rng.randint(1, 7)))
        assert parse_poly(format_poly(p, names), names) == p
    assert parse_poly(format_poly(Polynomial.zero(3), names), names).is_zero()
