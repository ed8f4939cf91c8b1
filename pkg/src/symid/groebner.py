"""Buchberger's algorithm, normal forms, and reduced Groebner bases.

The reduction engine works on content-free integer term lists (ascending by
order key, so the leading term sits at the end); rational coefficients only
reappear when a finished basis is made monic.  This keeps the inner loop on
bigint arithmetic instead of Fraction objects.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

from .multipoly import (
    GREVLEX, Polynomial, mono_div, mono_divides, mono_is_coprime, mono_lcm,
    mono_mul,
)


# ---------------------------------------------------------------------------
# prepared form: list of (key, exp, int_coeff), ascending by key

def _prepare(p, order):
    """Content-free integer term list of p.  Returns (terms, alpha) where
    the term list represents alpha * p and alpha is a positive-or-negative
    rational chosen so the leading integer coefficient is positive."""
    if p.is_zero():
        return [], Fraction(1)
    den = 1
    for _, c in p.terms:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [(order.key(m), m, int(c * den)) for m, c in p.terms]
    ints.sort(key=lambda t: t[0])
    g = 0
    for _, _, c in ints:
        g = gcd(g, c)
    if ints[-1][2] < 0:
        g = -g
    if g != 1:
        ints = [(k, m, c // g) for k, m, c in ints]
    return ints, Fraction(den, g)


def _to_poly(n, terms, unit=None):
    p = Polynomial.from_terms(n, ((m, Fraction(c)) for _, m, c in terms))
    if unit is not None and unit != 1:
        p = p.scale(unit)
    return p


def _combine(a, sa, b, sb):
    """sa*a + sb*b for ascending term lists; returns an ascending list."""
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ka, kb = a[i][0], b[j][0]
        if ka < kb:
            out.append((ka, a[i][1], sa * a[i][2]))
            i += 1
        elif kb < ka:
            out.append((kb, b[j][1], sb * b[j][2]))
            j += 1
        else:
            c = sa * a[i][2] + sb * b[j][2]
            if c:
                out.append((ka, a[i][1], c))
            i += 1
            j += 1
    while i < la:
        out.append((a[i][0], a[i][1], sa * a[i][2]))
        i += 1
    while j < lb:
        out.append((b[j][0], b[j][1], sb * b[j][2]))
        j += 1
    return out


def _shift(terms, q, order):
    """Multiply every term by the monomial q; keys are additive, so the
    shifted key is the old key plus key(q)."""
    if all(x == 0 for x in q):
        return list(terms)
    qkey = order.key(q)
    out = []
    for k, m, c in terms:
        out.append((tuple(a + b for a, b in zip(k, qkey)), mono_mul(m, q), c))
    return out


def _u_groups(terms, u_index):
    groups = {}
    for _, m, c in terms:
        z = tuple(0 if i == u_index else e for i, e in enumerate(m))
        groups.setdefault(z, []).append((m[u_index], c))
    out = {}
    for z, pairs in groups.items():
        deg = max(e for e, _ in pairs)
        ulist = [0] * (deg + 1)
        for e, c in pairs:
            ulist[e] = c
        out[z] = ulist
    return out


def _u_joint_content(lists, u_index):
    """Common K[u]-polynomial content across several term lists; [] or a
    degree-0 list means nothing to strip."""
    from .unifactor import iu_gcd
    groups = []
    for terms in lists:
        for ulist in _u_groups(terms, u_index).values():
            if len(ulist) <= 1:
                return []  # a constant coefficient: nothing can divide all
            groups.append(ulist)
    groups.sort(key=len)
    g = None
    for ulist in groups:
        g = list(ulist) if g is None else iu_gcd(g, ulist)
        if g is not None and len(g) <= 1:
            return []
    return g or []


def _u_divide(terms, g, u_index, order):
    """Divide a term list by a K[u] polynomial g (exact on every
    z-coefficient); returns an ascending list."""
    from .unifactor import iu_exact_div
    out = []
    for z, ulist in _u_groups(terms, u_index).items():
        quot = iu_exact_div(ulist, g)
        for e, c in enumerate(quot):
            if c:
                m = tuple(e if i == u_index else ze for i, ze in enumerate(z))
                out.append((order.key(m), m, c))
    out.sort(key=lambda t: t[0])
    return out


def _u_content_strip(terms, u_index, order):
    """Strip the common K[u]-content of an ascending term list.

    Only valid in computations working modulo K(u)-units, where dividing by
    a u-polynomial keeps the extension of the generated ideal unchanged.
    """
    if not terms:
        return terms
    g = _u_joint_content([terms], u_index)
    if len(g) <= 1:
        return terms
    return _u_divide(terms, g, u_index, order)


class _Reducer:
    """A basis element in prepared form, split for fast reduction."""

    __slots__ = ("lm", "lc", "tail", "full", "sugar")

    def __init__(self, terms, sugar=None):
        self.full = terms
        self.lm = terms[-1][1]
        self.lc = terms[-1][2]
        self.tail = terms[:-1]
        if sugar is None:
            sugar = max(sum(m) for _, m, _ in terms)
        self.sugar = sugar


def _reduce_full(work, reducers, order, exact=False, top_only=False,
                 sugar=None, u_index=None):
    """Division remainder of `work` against `reducers`.

    Returns (remainder, scale): remainder is ascending, content-free with a
    positive leading coefficient, and satisfies
        remainder == scale * input   (modulo the reducers' ideal)
    for a nonzero rational `scale` (tracked only when exact=True).

    With top_only the loop stops once the leading term is irreducible;
    that is all Buchberger's main loop needs, and it avoids marching
    through long tails (which are cleaned up only in the final
    inter-reduction).  Content is stripped after every reduction step with
    an early-exit gcd, keeping integer growth from compounding.

    When `sugar` is given, the phantom-homogenization degree of the result
    is tracked through every reduction step and returned as the third
    element (otherwise None).
    """
    out = []
    scale = Fraction(1)
    usteps = 0
    while work:
        _, e, c = work[-1]
        hit = None
        for r in reducers:
            rlm = r.lm
            divisible = True
            for a, b in zip(rlm, e):
                if a > b:
                    divisible = False
                    break
            if divisible:
                hit = (r, mono_div(e, rlm))
                break
        if hit is None:
            if top_only:
                break
            out.append(work.pop())
            continue
        r, q = hit
        if sugar is not None:
            step = sum(q) + r.sugar
            if step > sugar:
                sugar = step
        d = gcd(c, r.lc)
        s_self, s_red = r.lc // d, -(c // d)
        if s_self < 0:
            s_self, s_red = -s_self, -s_red
        work.pop()
        work = _combine(work, s_self, _shift(r.tail, q, order), s_red)
        if s_self != 1:
            if exact:
                scale *= s_self
            if out:
                out = [(k2, m2, c2 * s_self) for k2, m2, c2 in out]
            g = 0
            for _, _, c2 in out:
                g = gcd(g, c2)
                if g == 1:
                    break
            if g != 1:
                for _, _, c2 in work:
                    g = gcd(g, c2)
                    if g == 1:
                        break
            if g > 1:
                out = [(k2, m2, c2 // g) for k2, m2, c2 in out]
                work = [(k2, m2, c2 // g) for k2, m2, c2 in work]
                if exact:
                    scale /= g
        if u_index is not None:
            usteps += 1
            if usteps & 7 == 0:
                g = _u_joint_content([out, work], u_index)
                if len(g) > 1:
                    # dividing by a K(u)-unit: irreducibility of the popped
                    # heads survives (their exponents only drop)
                    if out:
                        out = _u_divide(out, g, u_index, order)
                        out.reverse()
                    work = _u_divide(work, g, u_index, order)
    if top_only:
        out = work  # nothing was popped; work is the whole remainder
    else:
        out.reverse()
    if out:
        g = 0
        for _, _, c2 in out:
            g = gcd(g, c2)
        if out[-1][2] < 0:
            g = -g
        if g != 1:
            out = [(k2, m2, c2 // g) for k2, m2, c2 in out]
            if exact:
                scale /= g
    if u_index is not None and out:
        out = _u_content_strip(out, u_index, order)
    return out, scale, sugar


def s_polynomial(f, g, order=GREVLEX):
    """S-polynomial of two nonzero polynomials under `order`."""
    pf, _ = _prepare(f, order)
    pg, _ = _prepare(g, order)
    lf, cf = pf[-1][1], pf[-1][2]
    lg, cg = pg[-1][1], pg[-1][2]
    lcm = mono_lcm(lf, lg)
    d = gcd(cf, cg)
    a = _shift(pf, mono_div(lcm, lf), order)
    b = _shift(pg, mono_div(lcm, lg), order)
    return _to_poly(f.n, _combine(a, cg // d, b, -(cf // d)))


# ---------------------------------------------------------------------------
# the basis object

class GroebnerBasis:
    """Reduced Groebner basis: monic, inter-reduced, sorted by leading
    monomial (descending)."""

    __slots__ = ("order", "elements", "n", "_reducers")

    def __init__(self, order, elements, n):
        self.order = order
        self.elements = tuple(elements)
        self.n = n
        self._reducers = None

    def _red(self):
        if self._reducers is None:
            reducers = [_Reducer(_prepare(p, self.order)[0])
                        for p in self.elements]
            # small reducers first keeps the coefficient swell down
            reducers.sort(key=lambda r: (len(r.full), abs(r.lc)))
            self._reducers = reducers
        return self._reducers

    def normal_form(self, f):
        if f.is_zero() or not self.elements:
            return f
        work, alpha = _prepare(f, self.order)
        rem, scale, _ = _reduce_full(work, self._red(), self.order, exact=True)
        if not rem:
            return Polynomial.zero(f.n)
        return _to_poly(f.n, rem, unit=Fraction(1) / (scale * alpha))

    def contains(self, f):
        if f.is_zero():
            return True
        if not self.elements:
            return False
        work, _ = _prepare(f, self.order)
        rem, _, _ = _reduce_full(work, self._red(), self.order)
        return not rem

    def is_unit_ideal(self):
        return (len(self.elements) == 1 and self.elements[0].is_constant()
                and not self.elements[0].is_zero())

    def leading_monomials(self):
        return tuple(p.leading_monomial(self.order) for p in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.order == other.order
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.order, self.elements))

    def __repr__(self):
        return "GroebnerBasis(%s, %d elements)" % (self.order.kind,
                                                   len(self.elements))


def normal_form(f, G, order=GREVLEX):
    """Remainder of f on division by the polynomial list G under `order`.

    If G is a Groebner basis the result is the unique normal form; for a
    plain list it is some valid division remainder (f - result lies in <G>
    and no remainder monomial is divisible by a leading monomial of G).
    """
    reducers = [_Reducer(_prepare(g, order)[0]) for g in G if not g.is_zero()]
    if f.is_zero() or not reducers:
        return f
    work, alpha = _prepare(f, order)
    rem, scale, _ = _reduce_full(work, reducers, order, exact=True)
    if not rem:
        return Polynomial.zero(f.n)
    return _to_poly(f.n, rem, unit=Fraction(1) / (scale * alpha))


def member(f, basis):
    """Ideal membership via normal form against a Groebner basis."""
    return basis.contains(f)


# ---------------------------------------------------------------------------
# Buchberger

def buchberger(gens, order=GREVLEX, n=None, u_index=None):
    """Reduced Groebner basis of the ideal generated by `gens`.

    Pair selection follows the normal strategy (minimal lcm first) with
    full-tail reduction of every S-polynomial; the coprimality and chain
    criteria discard pairs before reduction.  Sugar degrees are tracked so
    the remainder of each reduction carries its phantom-homogenization
    degree (used as a tiebreak and available for diagnostics).

    With `u_index`, all intermediate results are divided by their common
    K[u]-polynomial content.  The output is then a Groebner basis of an
    ideal that may be larger than <gens> but has the same extension over
    K(u): only callers that work modulo K(u)-units may pass it.
    """
    gens = [g for g in gens if not g.is_zero()]
    if n is None:
        if not gens:
            raise ValueError("cannot infer ring arity from an empty list")
        n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators live in different rings")
    if not gens:
        return GroebnerBasis(order, (), n)

    prepared = sorted((_prepare(g, order)[0] for g in gens),
                      key=lambda t: t[-1][0])
    if u_index is not None:
        prepared = [_u_content_strip(t, u_index, order) for t in prepared]
    G = []
    lms = []
    lcs = []
    pending = set()
    heap = []

    def push_pairs(j):
        lmj = lms[j]
        sj = G[j].sugar
        for i in range(j):
            lcm = mono_lcm(lms[i], lmj)
            pair_sugar = max(sum(lcm) - sum(lms[i]) + G[i].sugar,
                             sum(lcm) - sum(lmj) + sj)
            pending.add((i, j))
            heapq.heappush(heap, (order.key(lcm), pair_sugar, i, j))

    def append(terms, sugar):
        G.append(_Reducer(terms, sugar))
        lms.append(terms[-1][1])
        lcs.append(terms[-1][2])
        push_pairs(len(G) - 1)

    unit = False
    for terms in prepared:
        sugar0 = max(sum(m) for _, m, _ in terms)
        rem, _, sugar = _reduce_full(list(terms), G, order, sugar=sugar0,
                                     u_index=u_index)
        if not rem:
            continue
        if len(rem) == 1 and sum(rem[0][1]) == 0:
            unit = True
            break
        append(rem, sugar)

    while heap and not unit:
        _, pair_sugar, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lmi, lmj = lms[i], lms[j]
        if mono_is_coprime(lmi, lmj):
            continue
        lcm = mono_lcm(lmi, lmj)
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if mono_divides(lms[k], lcm):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        d = gcd(lcs[i], lcs[j])
        sa = _shift(G[i].full, mono_div(lcm, lmi), order)
        sb = _shift(G[j].full, mono_div(lcm, lmj), order)
        spoly = _combine(sa, lcs[j] // d, sb, -(lcs[i] // d))
        rem, _, sugar = _reduce_full(spoly, G, order, sugar=pair_sugar,
                                     u_index=u_index)
        if not rem:
            continue
        if len(rem) == 1 and sum(rem[0][1]) == 0:
            unit = True
            break
        append(rem, sugar)

    if unit:
        return GroebnerBasis(order, (Polynomial.constant(n, 1),), n)

    # minimalize: drop elements whose leading monomial another one divides
    by_lm = sorted(range(len(G)), key=lambda i: order.key(lms[i]))
    kept = []
    for i in by_lm:
        if not any(mono_divides(lms[k], lms[i]) for k in kept):
            kept.append(i)
    basis = [G[i].full for i in kept]

    # inter-reduce until stable (canonical form makes comparison reliable)
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = [_Reducer(basis[j]) for j in range(len(basis)) if j != i]
            rem, _, _ = _reduce_full(list(basis[i]), others, order,
                                     u_index=u_index)
            if rem != basis[i]:
                changed = True
                basis[i] = rem

    polys = [_to_poly(n, t).monic(order) for t in basis]
    polys.sort(key=lambda p: order.key(p.leading_monomial(order)), reverse=True)
    return GroebnerBasis(order, polys, n)


def ideal_equal(b1, b2):
    """Equality of the ideals behind two reduced Groebner bases.

    Fast path compares element tuples when the orders match; otherwise one
    side is recomputed under the other's order (reduced bases are unique
    per ideal and order).
    """
    if b1.n != b2.n:
        raise ValueError("bases over different rings")
    if b1.order == b2.order:
        return b1.elements == b2.elements
    recomputed = buchberger(list(b2.elements), b1.order, n=b2.n)
    return b1.elements == recomputed.elements
