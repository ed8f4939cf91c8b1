"""Minimal associated primes (isolated prime divisors) of a proper ideal.

Strategy: decide zero-dimensional ideals completely through the staircase
machinery; otherwise split the ideal along factorable elements (monomial
content, products of univariate-in-one-variable pieces, univariate
eliminants) and along the leading coefficients of block-order bases
(contraction over an independent set), then certify the leaves.  The
splitting tools deliberately stop short of multivariate factorization, so a
leaf that cannot be split or certified raises instead of guessing.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .multipoly import GREVLEX, Polynomial
from .ideal_ops import (
    Ideal, add_poly, dim_and_mis, eliminate, extension_data, hull_wrt_mis,
    saturate_many, saturate_only,
)
from .unifactor import UniPoly, factor, from_multivariate, to_multivariate
from .zerodim import zerodim_minimal_primes

MAX_DEPTH = 64

CERT_LINEAR = "linear"
CERT_PRINCIPAL = "principal with irreducible generator"
CERT_ZERO_DIM = "zero-dimensional maximal"
CERT_ZERO_DIM_KU = "zero-dimensional maximal over K(U)"


class DecompositionStuck(RuntimeError):
    """No in-scope splitting mechanism applies and no certificate holds."""


# ---------------------------------------------------------------------------
# element splitting

def _monomial_content(f):
    it = iter(f.terms)
    first = next(it)[0]
    mins = list(first)
    for m, _ in it:
        for i, e in enumerate(m):
            if e < mins[i]:
                mins[i] = e
    return tuple(mins)


def _strip_monomial(f, content):
    return Polynomial.from_terms(
        f.n, ((tuple(e - c for e, c in zip(m, content)), coef)
              for m, coef in f.terms))


def _coefficients_in(f, var):
    """f as a polynomial in x_var: {exponent: coefficient Polynomial}."""
    buckets = {}
    for m, c in f.terms:
        e = m[var]
        rest = tuple(0 if i == var else x for i, x in enumerate(m))
        buckets.setdefault(e, []).append((rest, c))
    return {e: Polynomial.from_terms(f.n, pairs) for e, pairs in buckets.items()}


def _try_monic_separation(f, var):
    """Try to write f = c_top * g where c_top is the leading coefficient of
    f as a polynomial in x_var and g is monic in x_var.

    Succeeds when every x_var-coefficient is exactly divisible by the top
    one; returns (c_top, g) or None.  Only useful when c_top is not a
    constant (otherwise nothing is gained)."""
    from .ideal_ops import exact_div
    coeffs = _coefficients_in(f, var)
    if len(coeffs) < 2:
        return None
    top_e = max(coeffs)
    top = coeffs[top_e]
    if top.is_constant():
        return None
    parts = []
    for e, c in coeffs.items():
        if e == top_e:
            parts.append((e, Polynomial.constant(f.n, 1)))
            continue
        try:
            parts.append((e, exact_div(c, top)))
        except ValueError:
            return None
    g = Polynomial.zero(f.n)
    xvar = Polynomial.variable(f.n, var)
    for e, q in parts:
        g = g + q * xvar ** e
    return top, g


def _try_binary_homogeneous(f):
    """Factor a homogeneous polynomial in exactly two variables by
    dehomogenizing to a univariate polynomial.

    Returns a list of (irreducible form, multiplicity) or None."""
    used = sorted(f.support_vars())
    if len(used) != 2:
        return None
    d = f.total_degree()
    if d < 2 or any(sum(m) != d for m, _ in f.terms):
        return None
    i, j = used
    coeffs = [Fraction(0)] * (d + 1)
    for m, c in f.terms:
        coeffs[m[i]] = c
    u = UniPoly(coeffs)
    if u.degree() < 1:
        return None
    fact = factor(u)
    out = []
    for v, e in fact.factors:
        dv = v.degree()
        terms = []
        for a, c in enumerate(v.coeffs):
            if c:
                mono = tuple(a if k == i else (dv - a if k == j else 0)
                             for k in range(f.n))
                terms.append((mono, c))
        out.append((Polynomial.from_terms(f.n, terms), e))
    if u.degree() < d:
        out.append((Polynomial.variable(f.n, j), d - u.degree()))
    return out


def _try_linear_form_univariate(f):
    """Detect f == u(ell) for a linear form ell and univariate u.

    The candidate ell is read off the top-degree coefficients (normalized
    at the first support variable), u is f with the other variables set to
    zero, and the identity u(ell) == f is verified exactly."""
    used = sorted(f.support_vars())
    if len(used) < 2:
        return None
    d = f.total_degree()
    if d < 2:
        return None
    j = used[0]
    lead = tuple(d if k == j else 0 for k in range(f.n))
    c0 = dict(f.terms).get(lead)
    if c0 is None:
        return None
    ell = Polynomial.variable(f.n, j)
    for i in used[1:]:
        mono = tuple(d - 1 if k == j else (1 if k == i else 0)
                     for k in range(f.n))
        ci = dict(f.terms).get(mono, Fraction(0))
        ell = ell + Polynomial.variable(f.n, i).scale(ci / (d * c0))
    u_coeffs = [Fraction(0)] * (d + 1)
    for m, c in f.terms:
        if all(e == 0 for k, e in enumerate(m) if k != j):
            u_coeffs[m[j]] = c
    u = UniPoly(u_coeffs)
    if u.degree() != d:
        return None
    check = Polynomial.zero(f.n)
    for e in range(d, -1, -1):
        check = check * ell
        if u.coeffs[e]:
            check = check + Polynomial.constant(f.n, u.coeffs[e])
    if check != f:
        return None
    return u, ell


def _as_monomial_univariate(p):
    """(u, mono) with p == u(x^mono) when every exponent vector of p is an
    integer multiple of one primitive vector; None otherwise."""
    vecs = [m for m, _ in p.terms if any(m)]
    if not vecs:
        return None
    from math import gcd
    g = 0
    for v in vecs[0]:
        g = gcd(g, v)
    prim = tuple(v // g for v in vecs[0])
    ks = {}
    for m, c in p.terms:
        if not any(m):
            ks[0] = c
            continue
        ratios = {e // pe for e, pe in zip(m, prim) if pe}
        k = ratios.pop() if len(ratios) == 1 else None
        if k is None or tuple(pe * k for pe in prim) != m:
            return None
        ks[k] = c
    coeffs = [Fraction(0)] * (max(ks) + 1)
    for k, c in ks.items():
        coeffs[k] = c
    return UniPoly(coeffs), prim


def _expand_at_monomial(u, mono, n):
    """u(x^mono) as a Polynomial."""
    out = Polynomial.zero(n)
    for k, c in enumerate(u.coeffs):
        if c:
            out = out + Polynomial.from_terms(
                n, [(tuple(e * k for e in mono), c)])
    return out


def _compose_unipoly_at(u, g):
    """u(g) by Horner evaluation."""
    out = Polynomial.zero(g.n)
    for e in range(u.degree(), -1, -1):
        out = out * g
        if u.coeffs[e]:
            out = out + Polynomial.constant(g.n, u.coeffs[e])
    return out


def split_element(f):
    """Pairwise non-associate factors of f discoverable without
    multivariate factorization: single variables from the monomial content,
    irreducible univariate pieces (in a variable or in a single monomial),
    and leftover multivariate cores."""
    n = f.n
    branches = []

    def emit_univariate(p):
        u, var = from_multivariate(p)
        if u.degree() < 1:
            return
        for fac, _ in factor(u).factors:
            branches.append(to_multivariate(fac, n, var))

    def walk(p):
        if p.is_constant():
            return
        content = _monomial_content(p)
        if any(content):
            for i, e in enumerate(content):
                if e:
                    branches.append(Polynomial.variable(n, i))
            p = _strip_monomial(p, content)
            if p.is_constant():
                return
        used = sorted(p.support_vars())
        if len(used) == 1:
            emit_univariate(p)
            return
        for var in used:
            sep = _try_monic_separation(p, var)
            if sep is not None:
                top, g = sep
                walk(top)
                walk(g)
                return
        binary = _try_binary_homogeneous(p)
        if binary is not None and (len(binary) > 1 or binary[0][1] > 1):
            for form, _ in binary:
                walk(form)
            return
        mono_uni = _as_monomial_univariate(p)
        if mono_uni is not None:
            u, prim = mono_uni
            if u.degree() >= 2:
                fact = factor(u)
                if len(fact.factors) > 1 or fact.factors[0][1] > 1:
                    for fac, _ in fact.factors:
                        walk(_expand_at_monomial(fac, prim, n))
                    return
        lin = _try_linear_form_univariate(p)
        if lin is not None:
            u, ell = lin
            fact = factor(u)
            if len(fact.factors) > 1 or fact.factors[0][1] > 1:
                for fac, _ in fact.factors:
                    walk(_compose_unipoly_at(fac, ell))
                return
        branches.append(p)

    walk(f)
    uniq = {}
    for b in branches:
        b = b.monic(GREVLEX)
        uniq.setdefault(b.terms, b)
    return sorted(uniq.values(), key=lambda p: p.sort_key())


def _split_is_useful(f, branches):
    if len(branches) >= 2:
        return True
    if not branches:
        return False
    return branches[0].terms != f.monic(GREVLEX).terms


# ---------------------------------------------------------------------------
# primality certificates

def _substitute_var(p, var, repl):
    """p with x_var := repl (repl free of x_var)."""
    coeffs = _coefficients_in(p, var)
    max_e = max(coeffs)
    powers = {0: Polynomial.constant(p.n, 1)}
    for e in range(1, max_e + 1):
        powers[e] = powers[e - 1] * repl
    out = Polynomial.zero(p.n)
    for e, c in coeffs.items():
        out = out + c * powers[e]
    return out


def _restrict_to_support(I):
    """(ideal over its used variables only, used variable list)."""
    used = sorted(set().union(*[g.support_vars() for g in I.gens])) if I.gens else []
    if not used:
        return None, []
    pos = {v: k for k, v in enumerate(used)}
    small = []
    for g in I.gens:
        small.append(Polynomial.from_terms(
            len(used), ((tuple(m[v] for v in used), c) for m, c in g.terms)))
    return Ideal(len(used), small), used


def _certify_rational_point_over_ku(I):
    """True when, over K(U) for some independent U of full dimension, the
    extension of I is maximal with residue field K(U) itself and I equals
    its own contraction.

    Maximality comes for free when every non-U variable carries a
    degree-one leading monomial in the K(U) basis (the staircase over K(U)
    is just {1}); the contraction check is the hull returning I unchanged.
    """
    try:
        dim, _ = dim_and_mis(I)
    except ValueError:
        return False
    if dim == 0:
        return False
    for U in combinations(range(I.n), dim):
        uset = frozenset(U)
        front = [i for i in range(I.n) if i not in uset]
        try:
            lms, dens, cleared = extension_data(I, uset)
        except ValueError:
            continue
        covered = set()
        for lm in lms:
            nz = [(i, lm[i]) for i in front if lm[i]]
            if len(nz) == 1 and nz[0][1] == 1:
                covered.add(nz[0][0])
        if covered != set(front):
            continue
        hull = Ideal(I.n, cleared)
        if dens:
            hull = saturate_many(hull, dens)
        if hull.canonical_key() == I.canonical_key():
            return True
    return False


def certify_prime(I):
    """Certificate string when primality of I can be decided, else None.

    Paths: linear generators; a principal ideal with an irreducible
    generator (univariate, degree one, or monic-linear in some variable);
    a contraction whose residue field over K(U) is K(U) itself; repeated
    graph-relation elimination down to a zero-dimensional ideal that the
    staircase machinery certifies maximal.
    """
    gens = I.reduced_gens()
    if not gens:
        return None
    if any(g.is_constant() for g in gens):
        return None  # unit ideal
    if len(gens) == 1:
        g = gens[0]
        used = sorted(g.support_vars())
        if g.total_degree() == 1:
            return CERT_PRINCIPAL
        if len(used) == 1:
            u, _ = from_multivariate(g)
            f = factor(u)
            if len(f.factors) == 1 and f.factors[0][1] == 1:
                return CERT_PRINCIPAL
            return None
        for var in used:
            coeffs = _coefficients_in(g, var)
            if max(coeffs) == 1 and coeffs[1].is_constant():
                return CERT_PRINCIPAL  # graph of a polynomial function
    if all(g.total_degree() == 1 for g in gens):
        return CERT_LINEAR
    if I.is_zero_dimensional():
        primes = zerodim_minimal_primes(I)
        if len(primes) == 1 and primes[0].equals(I):
            return CERT_ZERO_DIM
        return None
    rational_point = _certify_rational_point_over_ku(I)
    if rational_point:
        return CERT_ZERO_DIM_KU
    # eliminate graph relations: x_a = -g/c whenever some generator is
    # monic-linear in x_a
    work = list(gens)
    eliminated_nonlinear = False
    changed = True
    while changed:
        changed = False
        for idx, g in enumerate(work):
            for var in sorted(g.support_vars()):
                coeffs = _coefficients_in(g, var)
                if max(coeffs) != 1 or not coeffs[1].is_constant():
                    continue
                if coeffs[1].is_zero():
                    continue
                repl = coeffs.get(0, Polynomial.zero(I.n)).scale(
                    Fraction(-1) / coeffs[1].constant_value())
                if g.total_degree() > 1:
                    eliminated_nonlinear = True
                work = [_substitute_var(h, var, repl)
                        for k, h in enumerate(work) if k != idx]
                work = [h for h in work if not h.is_zero()]
                changed = True
                break
            if changed:
                break
        if changed and work:
            work = list(Ideal(I.n, work).reduced_gens())
            if any(h.is_constant() and not h.is_zero() for h in work):
                return None
    if not work:
        if eliminated_nonlinear:
            return CERT_ZERO_DIM_KU
        return CERT_LINEAR
    residual = Ideal(I.n, work)
    small, used = _restrict_to_support(residual)
    if small is None or not small.is_zero_dimensional():
        return None
    primes = zerodim_minimal_primes(small)
    if len(primes) == 1 and primes[0].equals(small):
        if len(used) == I.n and not eliminated_nonlinear and \
                residual.canonical_key() == I.canonical_key():
            return CERT_ZERO_DIM
        return CERT_ZERO_DIM_KU
    return None


def is_prime_known(P):
    """The certificate attached to P, computing one if necessary."""
    if P.prime_cert is not None:
        return P.prime_cert
    cert = certify_prime(P)
    if cert is None:
        raise ValueError("no primality certificate applies to this ideal")
    return cert


# ---------------------------------------------------------------------------
# the recursion

def minimal_primes(I):
    """Exactly the minimal elements of Ass(I): prime, pairwise
    incomparable, each containing I, canonically sorted."""
    if I.is_unit():
        raise ValueError("the unit ideal has no minimal primes")
    found = {}
    visited = set()
    _rec(I, found, visited, 0)
    primes = list(found.values())
    keep = []
    for i, P in enumerate(primes):
        redundant = False
        for j, Q in enumerate(primes):
            if i != j and P.contains_ideal(Q):
                # Q subset of P and both contain I: P is not minimal
                redundant = True
                break
        if not redundant:
            keep.append(P)
    keep.sort(key=lambda P: P.canonical_key())
    return keep


def _branch(I, f):
    J = add_poly(I, f)
    return None if J.is_unit() else J


def _rec(I, found, visited, depth):
    if depth > MAX_DEPTH:
        raise DecompositionStuck("minimal prime recursion exceeded depth %d"
                                 % MAX_DEPTH)
    if I.is_unit():
        return
    key = I.canonical_key()
    if key in visited:
        return
    visited.add(key)

    if I.is_zero_dimensional():
        for P in zerodim_minimal_primes(I):
            found.setdefault(P.canonical_key(), P)
        return

    gens = I.reduced_gens()

    # (1) split along a factorable basis element
    for g in gens:
        branches = split_element(g)
        if _split_is_useful(g, branches):
            for b in branches:
                J = _branch(I, b)
                if J is not None:
                    _rec(J, found, visited, depth + 1)
            return

    # (2) certificates settle unsplittable primes
    cert = certify_prime(I)
    if cert is not None:
        P = Ideal(I.n, gens, prime_cert=cert)
        found.setdefault(P.canonical_key(), P)
        return

    # (3) univariate eliminants give Q-factorable elements
    for var in range(I.n):
        others = [i for i in range(I.n) if i != var]
        elim = eliminate(I, others)
        if elim.is_zero_ideal():
            continue
        u, _ = from_multivariate(elim.gens[0], var)
        if u.degree() < 1:
            continue
        factors = factor(u).factors
        if len(factors) > 1 or factors[0][1] > 1:
            for fac, _ in factors:
                J = _branch(I, to_multivariate(fac, I.n, var))
                if J is not None:
                    _rec(J, found, visited, depth + 1)
            return

    # (4) contraction over an independent set: saturate at the denominators
    # of the K(U) basis and split at their factors
    dim, _ = dim_and_mis(I)
    for size in range(dim, 0, -1):
        for U in combinations(range(I.n), size):
            try:
                _, dens, _ = extension_data(I, frozenset(U))
            except ValueError:
                continue
            if not dens:
                continue
            hull = saturate_many(I, dens)
            if hull.canonical_key() == key:
                continue
            _rec(hull, found, visited, depth + 1)
            for h in dens:
                for b in split_element(h):
                    J = _branch(I, b)
                    if J is not None:
                        _rec(J, found, visited, depth + 1)
            return

    raise DecompositionStuck(
        "cannot split or certify the ideal with generators %r" %
        ([str(g) for g in gens],))
