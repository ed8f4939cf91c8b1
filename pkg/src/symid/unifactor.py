"""Exact factorization of univariate polynomials over Q.

Pipeline: content/primitive split, Yun squarefree decomposition, modular
factorization by Cantor-Zassenhaus, quadratic Hensel lifting to a Mignotte
bound, and naive subset recombination.  Degrees stay small here, so the
subset search is not a bottleneck.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from math import gcd, isqrt

from .multipoly import Polynomial

DEFAULT_SEED = 71201


class UniPoly:
    """Dense univariate polynomial over Q, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def from_ints(ints):
        return UniPoly(ints)

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UniPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    def scale(self, c):
        c = Fraction(c)
        return UniPoly(tuple(x * c for x in self.coeffs))

    def __pow__(self, e):
        out = UniPoly((1,))
        for _ in range(e):
            out = out * self
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(()), UniPoly(rem)
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            idx = k + len(other.coeffs) - 1
            if idx >= len(rem):
                continue
            c = rem[idx] / lead
            if c == 0:
                continue
            quot[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] -= c * b
        return UniPoly(quot), UniPoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self):
        return UniPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(Fraction(1) / self.coeffs[-1])

    def evaluate(self, x):
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def int_coeffs(self):
        """(primitive integer coefficient list, content) with content*list == self."""
        if self.is_zero():
            return [], Fraction(0)
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints], Fraction(g, den)

    def primitive(self):
        ints, _ = self.int_coeffs()
        return UniPoly(ints)

    def __repr__(self):
        return "UniPoly(%s)" % (list(self.coeffs),)


def poly_gcd(a, b):
    """Monic gcd over Q via a content-stripped Euclidean loop."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    if a.is_zero():
        return a
    return a.monic()


class Factorization:
    """unit * prod(factor^multiplicity) == the factored input.

    Factors are primitive integer polynomials with positive leading
    coefficient, irreducible over Q, sorted by (degree, coefficients).
    The Cantor-Zassenhaus seed used is recorded for reproducibility.
    """

    __slots__ = ("unit", "factors", "seed")

    def __init__(self, unit, factors, seed):
        self.unit = Fraction(unit)
        self.factors = tuple(factors)
        self.seed = seed

    def expand(self):
        out = UniPoly((self.unit,))
        for f, e in self.factors:
            out = out * f ** e
        return out

    def __repr__(self):
        return "Factorization(unit=%s, factors=%r)" % (self.unit, list(self.factors))


# ---------------------------------------------------------------------------
# squarefree decomposition (Yun)

def squarefree(u):
    """Yun decomposition: returns (unit, [(part, multiplicity), ...]).

    Parts are primitive, pairwise coprime and squarefree; the unit times
    the product of part^multiplicity reproduces the input exactly.
    """
    if u.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    ints, content = u.int_coeffs()
    f = UniPoly(ints)
    if f.is_constant():
        return content * f.coeffs[0], []
    parts = []
    df = f.derivative()
    g = poly_gcd(f, df)
    c = (f // g)
    d = (df // g) - c.derivative()
    i = 1
    while not c.is_constant():
        p = poly_gcd(c, d)
        if p.degree() > 0:
            parts.append((p.primitive(), i))
        c = c // p
        d = (d // p) - c.derivative()
        i += 1
    # primitive parts of primitive f multiply back exactly
    prod = UniPoly((1,))
    for part, mult in parts:
        prod = prod * part ** mult
    if prod != f:
        raise AssertionError("squarefree decomposition does not multiply back")
    return content, parts


# ---------------------------------------------------------------------------
# GF(p) helpers: integer coefficient lists, constant first

def _gf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_sub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _gf_trim(out)


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gf_trim(out)


def _gf_divmod(a, b, p):
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv = pow(b[-1], p - 2, p)
    q = [0] * (da - db + 1) if da >= db else []
    while da >= db:
        c = a[da] * inv % p
        if c:
            q[da - db] = c
            for i in range(db + 1):
                a[da - db + i] = (a[da - db + i] - c * b[i]) % p
        _gf_trim(a)
        da = len(a) - 1
    return q, a


def _gf_monic(a, p):
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _gf_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    return _gf_monic(a, p) if a else []


def _gf_powmod(a, e, mod, p):
    out = [1]
    base = _gf_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            out = _gf_divmod(_gf_mul(out, base, p), mod, p)[1]
        base = _gf_divmod(_gf_mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def _gf_xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g (monic) over GF(p)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return ([c * inv % p for c in r0],
            [c * inv % p for c in s0],
            [c * inv % p for c in t0])


def _gf_distinct_degree(f, p):
    """[(product of irreducible factors of degree d, d), ...] for monic
    squarefree f."""
    out = []
    h = [0, 1]  # x
    v = list(f)
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        h = _gf_powmod(h, p, v, p)
        g = _gf_gcd(_gf_sub(h, [0, 1], p), v, p)
        if len(g) > 1:
            out.append((g, d))
            v = _gf_divmod(v, g, p)[0]
            h = _gf_divmod(h, v, p)[1]
    if len(v) > 1:
        out.append((v, len(v) - 1))
    return out


def _gf_equal_degree(f, d, p, rng):
    """Split a monic product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        _gf_trim(a)
        if len(a) < 2:
            continue
        g = _gf_gcd(a, f, p)
        if len(g) > 1:
            split = g
        else:
            b = _gf_powmod(a, (p ** d - 1) // 2, f, p)
            split = _gf_gcd(_gf_sub(b, [1], p), f, p)
        if 1 < len(split) < len(f):
            q = _gf_divmod(f, split, p)[0]
            return _gf_equal_degree(split, d, p, rng) + \
                _gf_equal_degree(_gf_monic(q, p), d, p, rng)


def _gf_factor_squarefree(f, p, rng):
    """Monic irreducible factors of a monic squarefree f over GF(p)."""
    out = []
    for prod, d in _gf_distinct_degree(f, p):
        out.extend(_gf_equal_degree(prod, d, p, rng))
    out.sort(key=lambda g: (len(g), tuple(g)))
    return out


# ---------------------------------------------------------------------------
# Hensel lifting

def _z_trunc(a, m):
    half = m // 2
    return [((c + half) % m) - half for c in a]


def _z_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _z_add(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    return out


def _z_sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _z_strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _z_divmod_by_monic(a, b):
    """Exact division over Z by a monic divisor b."""
    a = list(a)
    db = len(b) - 1
    da = len(a) - 1
    q = [0] * (da - db + 1) if da >= db else []
    while da >= db:
        c = a[da]
        if c:
            q[da - db] = c
            for i in range(db + 1):
                a[da - db + i] -= c * b[i]
        _z_strip(a)
        da = len(a) - 1
    return q, a


def _hensel_step(m, f, g, h, s, t):
    """One quadratic lift: from f == g*h (mod m) to the same mod m*m.

    h stays monic, (s, t) stays a Bezout pair with s*g + t*h == 1."""
    mm = m * m
    e = _z_trunc(_z_sub(f, _z_mul(g, h)), mm)
    q, r = _z_divmod_by_monic(_z_mul(s, e), h)
    q = _z_trunc(q, mm)
    r = _z_trunc(r, mm)
    g1 = _z_strip(_z_trunc(_z_add(_z_add(g, _z_mul(t, e)), _z_mul(q, g)), mm))
    h1 = _z_strip(_z_trunc(_z_add(h, r), mm))
    b = _z_trunc(_z_sub(_z_add(_z_mul(s, g1), _z_mul(t, h1)), [1]), mm)
    c, d = _z_divmod_by_monic(_z_mul(s, b), h1)
    c = _z_trunc(c, mm)
    d = _z_trunc(d, mm)
    s1 = _z_strip(_z_trunc(_z_sub(s, d), mm))
    t1 = _z_strip(_z_trunc(_z_sub(_z_sub(t, _z_mul(t, b)), _z_mul(c, g1)), mm))
    return g1, h1, s1, t1


def _hensel_lift(p, f, factors, target):
    """Lift monic GF(p) factors of f to monic factors modulo p^target.

    f's leading coefficient must be a unit mod p.  Returns symmetric
    representatives whose product times lc(f) reproduces f mod p^target.
    """
    r = len(factors)
    q = p ** target
    lc = f[-1]
    if r == 1:
        inv = pow(lc % q, -1, q)
        return [_z_trunc([c * inv % q for c in f], q)]
    k = r // 2
    g0 = [lc % p]
    for fac in factors[:k]:
        g0 = _gf_mul(g0, fac, p)
    h0 = [1]
    for fac in factors[k:]:
        h0 = _gf_mul(h0, fac, p)
    _, s, t = _gf_xgcd(g0, h0, p)
    g, h = _z_trunc(g0, p), _z_trunc(h0, p)
    s, t = _z_trunc(s, p), _z_trunc(t, p)
    m = p
    while m < q:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, factors[:k], target) + \
        _hensel_lift(p, h, factors[k:], target)


# ---------------------------------------------------------------------------
# Zassenhaus driver

def _next_prime(n):
    def is_prime(v):
        if v < 2:
            return False
        for d in range(2, isqrt(v) + 1):
            if v % d == 0:
                return False
        return True

    while not is_prime(n):
        n += 1
    return n


def _choose_prime(ints):
    """Smallest p >= 5 keeping the squarefree input squarefree mod p."""
    p = 5
    while True:
        p = _next_prime(p)
        if ints[-1] % p != 0:
            fbar = [c % p for c in ints]
            dbar = [c % p for c in _int_derivative(ints)]
            _gf_trim(fbar)
            _gf_trim(dbar)
            if fbar and dbar and len(_gf_gcd(fbar, dbar, p)) == 1:
                return p
        p += 1


def _int_derivative(ints):
    return [c * i for i, c in enumerate(ints) if i > 0]


def _int_divmod(num, den):
    """Exact division over Z; returns quotient list or None."""
    num = list(num)
    dd = len(den) - 1
    dn = len(num) - 1
    if dn < dd:
        return None
    q = [0] * (dn - dd + 1)
    while dn >= dd:
        if num[dn] % den[dd]:
            return None
        c = num[dn] // den[dd]
        q[dn - dd] = c
        for i in range(dd + 1):
            num[dn - dd + i] -= c * den[i]
        while num and num[-1] == 0:
            num.pop()
        dn = len(num) - 1
    if any(num):
        return None
    return q


def _int_primitive(ints):
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _factor_squarefree_primitive(ints, rng):
    """Irreducible integer factors of a primitive squarefree polynomial."""
    deg = len(ints) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [_int_primitive(ints)]
    p = _choose_prime(ints)
    fbar = _gf_monic([c % p for c in ints], p)
    modular = _gf_factor_squarefree(fbar, p, rng)
    if len(modular) == 1:
        return [_int_primitive(ints)]
    norm = max(abs(c) for c in ints)
    bound = (isqrt(deg + 1) + 1) * (2 ** deg) * norm * abs(ints[-1])
    target = 1
    while p ** target <= 2 * bound:
        target += 1
    lifted = _hensel_lift(p, list(ints), modular, target)
    q = p ** target

    from itertools import combinations

    result = []
    g = list(ints)
    pool = list(range(len(lifted)))
    s = 1
    while 2 * s <= len(pool):
        found = False
        for subset in combinations(pool, s):
            cand = [g[-1] % q]
            for i in subset:
                cand = _z_trunc(_z_mul(cand, lifted[i]), q)
            cand = _int_primitive(cand)
            quot = _int_divmod(g, cand)
            if quot is not None:
                result.append(cand)
                g = _int_primitive(quot)
                pool = [i for i in pool if i not in subset]
                found = True
                break
        if not found:
            s += 1
    if len(g) > 1:
        result.append(_int_primitive(g))
    return result


def factor(u, seed=None):
    """Factor a univariate polynomial over Q into irreducibles.

    Deterministic for a fixed seed (default from SYMID_SEED); output
    factors are sorted by degree, then by coefficient sequence.
    """
    if u.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if u.is_constant():
        raise ValueError("cannot factor a constant")
    if seed is None:
        seed = int(os.environ.get("SYMID_SEED", DEFAULT_SEED))
    rng = random.Random(seed)
    unit, parts = squarefree(u)
    factors = []
    for part, mult in parts:
        ints, _ = part.int_coeffs()
        for fac in _factor_squarefree_primitive(ints, rng):
            factors.append((UniPoly(fac), mult))
    merged = {}
    for f, e in factors:
        merged[f] = merged.get(f, 0) + e
    out = sorted(merged.items(), key=lambda t: (t[0].degree(), t[0].coeffs))
    prod = UniPoly((1,))
    for f, e in out:
        prod = prod * f ** e
    unit_exact = u.coeffs[-1] / prod.coeffs[-1]
    fact = Factorization(unit_exact, out, seed)
    if fact.expand() != u:
        raise AssertionError("factorization does not multiply back")
    return fact


def is_irreducible(u):
    """True iff u (degree >= 1) is irreducible over Q."""
    if u.is_zero() or u.is_constant():
        raise ValueError("irreducibility is defined for degree >= 1")
    if u.degree() == 1:
        return True
    f = factor(u)
    return len(f.factors) == 1 and f.factors[0][1] == 1


# ---------------------------------------------------------------------------
# integer coefficient-list helpers (shared by the K(u) machinery elsewhere)

def iu_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def iu_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def iu_content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g if g else 1


def iu_primitive(a):
    iu_trim(a)
    g = iu_content(a)
    if not a or g == 0:
        return a
    if a[-1] < 0:
        g = -g
    if g != 1:
        return [c // g for c in a]
    return a


def iu_prem(a, b):
    """Pseudo-remainder of a by b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while a and len(a) - 1 >= db:
        da = len(a) - 1
        c = a[-1]
        a = [x * lb for x in a]
        for i in range(db + 1):
            a[da - db + i] -= c * b[i]
        iu_trim(a)
    return a


_PROBE_PRIMES = (2147483629, 2147483587, 2147483563)


def iu_gcd(a, b):
    """Primitive gcd of integer coefficient lists (primitive PRS).

    A mod-p degree probe handles the common trivial case instantly: when
    the gcd modulo a prime not dividing both leading coefficients is
    constant, the integer gcd is constant too (degrees only drop under
    reduction), so the pseudo-remainder cascade is skipped entirely.
    """
    a, b = iu_primitive(list(a)), iu_primitive(list(b))
    if not a:
        return b
    if not b:
        return a
    if len(a) == 1 or len(b) == 1:
        return [1]
    for p in _PROBE_PRIMES:
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        ga = _gf_trim([c % p for c in a])
        gb = _gf_trim([c % p for c in b])
        if len(_gf_gcd(ga, gb, p)) == 1:
            return [1]
        break
    while b:
        a, b = b, iu_primitive(iu_prem(a, b))
    return a if a else []


def iu_exact_div(a, b):
    """Exact integer quotient (caller guarantees divisibility over Z)."""
    a = [Fraction(c) for c in a]
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    while a and len(a) - 1 >= db:
        da = len(a) - 1
        c = a[-1] / b[-1]
        q[da - db] = c
        for i in range(db + 1):
            a[da - db + i] -= c * b[i]
        while a and a[-1] == 0:
            a.pop()
    if a:
        raise ValueError("division is not exact")
    if any(c.denominator != 1 for c in q):
        raise ValueError("quotient is not integral")
    return [int(c) for c in q]


# ---------------------------------------------------------------------------
# conversions to and from the multivariate world

def to_multivariate(u, n, var):
    """Embed a univariate polynomial as a Polynomial in variable `var`."""
    terms = []
    for e, c in enumerate(u.coeffs):
        if c:
            m = tuple(e if i == var else 0 for i in range(n))
            terms.append((m, c))
    return Polynomial.from_terms(n, terms)


def from_multivariate(p, var=None):
    """Extract (UniPoly, var) from a Polynomial univariate in one variable."""
    used = sorted(p.support_vars())
    if var is None:
        if len(used) > 1:
            raise ValueError("polynomial is not univariate")
        var = used[0] if used else 0
    elif any(v != var for v in used):
        raise ValueError("polynomial involves variables other than %d" % var)
    coeffs = [Fraction(0)] * (p.total_degree() + 1 if not p.is_zero() else 0)
    for m, c in p.terms:
        coeffs[m[var]] = c
    return UniPoly(coeffs), var
