"""Zero-dimensional machinery: staircase bases of the quotient vector
space, minimal polynomials by exact linear algebra, and decomposition of
zero-dimensional ideals into their maximal ideals.

The maximal-ideal search splits along irreducible factors of variable
minimal polynomials until each is irreducible (which already forces the
ideal to be radical), then certifies or splits further with the linear
forms x1 + k*x2 + k^2*x3 + ... for k = 1, 2, 3, ...
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import GREVLEX, Polynomial, mono_divides, mono_mul
from .ideal_ops import Ideal, add_poly
from .unifactor import UniPoly, factor, squarefree, to_multivariate


class Staircase:
    """Monomials below the leading-term staircase of a zero-dimensional
    ideal; a vector-space basis of the quotient ring."""

    __slots__ = ("basis_monomials", "index")

    def __init__(self, basis_monomials):
        self.basis_monomials = tuple(basis_monomials)
        self.index = {m: i for i, m in enumerate(self.basis_monomials)}

    @property
    def vdim(self):
        return len(self.basis_monomials)

    def coordinates(self, p):
        """Coordinate vector of a fully reduced polynomial."""
        vec = [Fraction(0)] * self.vdim
        for m, c in p.terms:
            vec[self.index[m]] = c
        return vec


def staircase(I):
    """Staircase of a proper zero-dimensional ideal (enumerated breadth
    first from 1, staying under the leading-term ideal)."""
    basis = I.groebner()
    if basis.is_unit_ideal():
        raise ValueError("unit ideal has an empty quotient ring")
    if not I.is_zero_dimensional():
        raise ValueError("ideal is not zero-dimensional")
    lms = basis.leading_monomials()
    n = I.n
    start = (0,) * n
    seen = {start}
    frontier = [start]
    out = []
    while frontier:
        nxt = []
        for m in frontier:
            if any(mono_divides(lm, m) for lm in lms):
                continue
            out.append(m)
            for i in range(n):
                m2 = mono_mul(m, tuple(1 if j == i else 0 for j in range(n)))
                if m2 not in seen:
                    seen.add(m2)
                    nxt.append(m2)
        frontier = nxt
    out.sort(key=GREVLEX.key)
    return Staircase(out)


class _Echelon:
    """Incremental row echelon over Q with expression tracking."""

    def __init__(self, width):
        self.width = width
        self.rows = []       # reduced rows
        self.pivots = []     # pivot column per row
        self.exprs = []      # coefficients of each row over the inserted vectors

    def insert(self, vec):
        """Reduce vec; returns None if independent (and keeps it), else the
        dependency coefficients over previously inserted vectors."""
        expr = [Fraction(0)] * len(self.exprs) + [Fraction(1)]
        for row, piv, rexpr in zip(self.rows, self.pivots, self.exprs):
            c = vec[piv]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
                expr = [a - c * b for a, b in
                        zip(expr, rexpr + [Fraction(0)] * (len(expr) - len(rexpr)))]
        pivot = next((i for i, c in enumerate(vec) if c), None)
        if pivot is None:
            return expr
        inv = Fraction(1) / vec[pivot]
        self.rows.append([c * inv for c in vec])
        self.pivots.append(pivot)
        self.exprs.append([c * inv for c in expr])
        return None


def minimal_polynomial(g, I, stair=None):
    """Monic least-degree univariate m with m(g) in I.

    Powers of g are reduced to normal form and inserted into an exact
    echelon; the first linear dependence yields the minimal polynomial.
    """
    if stair is None:
        stair = staircase(I)
    basis = I.groebner()
    power = Polynomial.constant(I.n, 1)
    vectors = 0
    ech = _Echelon(stair.vdim)
    while True:
        red = basis.normal_form(power)
        dep = ech.insert(stair.coordinates(red))
        if dep is not None:
            # dep[k] are the coefficients of a vanishing combination of
            # g^0..g^k, monic in the top power by construction
            return UniPoly(dep)
        vectors += 1
        if vectors > stair.vdim + 1:
            raise AssertionError("minimal polynomial search exceeded vdim")
        power = power * g


def _radical_via_seidenberg(I):
    """Radical of a zero-dimensional ideal: add the squarefree part of every
    variable's minimal polynomial."""
    stair = staircase(I)
    out = I
    changed = False
    for i in range(I.n):
        m = minimal_polynomial(Polynomial.variable(I.n, i), I, stair)
        _, parts = squarefree(m)
        sqf = UniPoly((1,))
        for part, _ in parts:
            sqf = sqf * part
        if sqf.degree() < m.degree():
            out = add_poly(out, to_multivariate(sqf, I.n, i))
            changed = True
    return out if changed else I


def zerodim_minimal_primes(I):
    """The distinct maximal ideals over a proper zero-dimensional ideal.

    Returned ideals carry the 'zero-dimensional maximal' certificate and
    a canonical sort order.
    """
    basis = I.groebner()
    if basis.is_unit_ideal():
        raise ValueError("unit ideal")
    if not I.is_zero_dimensional():
        raise ValueError("ideal is not zero-dimensional")
    found = {}
    _zd_primes_rec(I, found, 0)
    out = sorted(found.values(), key=lambda P: P.canonical_key())
    return out


def _zd_primes_rec(I, found, depth):
    if depth > 64:
        raise RuntimeError("zero-dimensional splitting recursed too deep")
    stair = staircase(I)
    n = I.n

    # stage 1: split until every variable's minimal polynomial is irreducible
    for i in range(n):
        m = minimal_polynomial(Polynomial.variable(n, i), I, stair)
        fact = factor(m)
        factors = fact.factors
        if len(factors) == 1 and factors[0][1] == 1:
            continue
        for u, _ in factors:
            branch = add_poly(I, to_multivariate(u, n, i))
            if branch.is_unit():
                continue
            _zd_primes_rec(branch, found, depth + 1)
        return

    # all variable minimal polynomials irreducible: I is radical (a
    # squarefree univariate in each variable lies in I)
    vdim = stair.vdim

    # stage 2: certify maximality with x1 + k x2 + k^2 x3 + ...
    k = 1
    while True:
        ell = Polynomial.zero(n)
        for i in range(n):
            ell = ell + Polynomial.variable(n, i).scale(Fraction(k) ** i)
        m = minimal_polynomial(ell, I, stair)
        fact = factor(m)
        factors = fact.factors
        if any(e > 1 for _, e in factors):
            k += 1  # degenerate form; cannot happen for radical I, but guard
            continue
        if len(factors) == 1:
            if m.degree() == vdim:
                P = Ideal(n, I.reduced_gens(),
                          prime_cert="zero-dimensional maximal")
                found.setdefault(P.canonical_key(), P)
                return
            # irreducible but not primitive for the quotient: advance k; a
            # separating form exists within (n-1) * C(vdim, 2) + 1 tries
            k += 1
            if k > (n - 1) * vdim * vdim + 2:
                raise RuntimeError("no separating linear form found")
            continue
        for u, _ in factors:
            poly_u = _compose_unipoly(u, ell)
            branch = add_poly(I, poly_u)
            if branch.is_unit():
                continue
            _zd_primes_rec(branch, found, depth + 1)
        return


def _compose_unipoly(u, g):
    """u(g) for a univariate u and a polynomial g."""
    out = Polynomial.zero(g.n)
    for e in range(u.degree(), -1, -1):
        out = out * g
        c = u.coeffs[e]
        if c:
            out = out + Polynomial.constant(g.n, c)
    return out
