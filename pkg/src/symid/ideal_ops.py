"""Ideal-level operations: sum, intersection, quotient, saturation,
elimination, radical membership, dimension with maximal independent sets,
and contraction (hull) with respect to an independent set.

Intersection, saturation and radical membership all reuse one mechanism: a
fresh tag variable appended behind the ring variables and eliminated through
a block order with the tag in front.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations

from .multipoly import (
    BlockElim, Blocks, GREVLEX, Polynomial, mono_div, mono_divides,
    mono_is_coprime, mono_lcm, mono_mul,
)
from .groebner import GroebnerBasis, buchberger


class Ideal:
    """Finitely generated ideal of Q[x_1..x_n].

    Generators are immutable; reduced Groebner bases are memoized per
    monomial order (thread-safe, recomputation under a race is benign since
    reduced bases are unique).  `prime_cert` carries a primality
    certificate when the ideal was produced by the prime-finding machinery.
    """

    __slots__ = ("n", "gens", "_gb", "_lock", "_ckey", "prime_cert",
                 "sat_origin")

    def __init__(self, n, gens, prime_cert=None, sat_origin=None):
        gens = tuple(g for g in gens if not g.is_zero())
        if any(g.n != n for g in gens):
            raise ValueError("generator arity does not match the ring")
        self.n = n
        self.gens = gens
        self._gb = {}
        self._lock = threading.Lock()
        self._ckey = None
        self.prime_cert = prime_cert
        # (root ideal, multiplier batches): self == root : (prod batches)^inf;
        # lets any basis of this ideal be recomputed from the small root
        self.sat_origin = sat_origin

    @staticmethod
    def from_strings(names, texts, prime_cert=None):
        from .multipoly import parse_poly
        return Ideal(len(names), [parse_poly(t, names) for t in texts],
                     prime_cert=prime_cert)

    def groebner(self, order=GREVLEX):
        with self._lock:
            basis = self._gb.get(order)
        if basis is None:
            if self.sat_origin is not None:
                root, batches = self.sat_origin
                basis = _saturation_basis(root, batches, order)
            else:
                basis = buchberger(list(self.gens), order, n=self.n)
            with self._lock:
                self._gb.setdefault(order, basis)
        return basis

    def canonical_key(self):
        """Fingerprint of the reduced grevlex basis; equal iff ideals equal."""
        if self._ckey is None:
            self._ckey = tuple(p.terms for p in self.groebner().elements)
        return self._ckey

    def reduced_gens(self):
        return list(self.groebner().elements)

    def is_zero_ideal(self):
        return len(self.groebner()) == 0

    def is_unit(self):
        return self.groebner().is_unit_ideal()

    def is_proper(self):
        return not self.is_unit()

    def contains_poly(self, f):
        return self.groebner().contains(f)

    def contains_ideal(self, other):
        """True iff other is a subset of self."""
        B = self.groebner()
        return all(B.contains(g) for g in other.gens)

    def equals(self, other):
        if self.n != other.n:
            raise ValueError("ideals over different rings")
        return self.canonical_key() == other.canonical_key()

    def normal_form(self, f, order=GREVLEX):
        return self.groebner(order).normal_form(f)

    def is_zero_dimensional(self):
        """Every variable carries a pure power among the leading terms."""
        B = self.groebner()
        if B.is_unit_ideal() or len(B) == 0:
            return False
        lms = B.leading_monomials()
        for i in range(self.n):
            if not any(m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i)
                       for m in lms):
                return False
        return True

    def act(self, perm):
        """Image under a variable permutation; the basis cache is dropped."""
        images = getattr(perm, "images", perm)
        return Ideal(self.n, [g.act(images) for g in self.gens])

    def __repr__(self):
        return "Ideal(n=%d, %d gens)" % (self.n, len(self.gens))


def ideal_equal(I, J):
    return I.equals(J)


def ideal_sum(I, J):
    """I + J by generator concatenation."""
    if I.n != J.n:
        raise ValueError("ideals over different rings")
    return Ideal(I.n, I.gens + J.gens)


def add_poly(I, f):
    return Ideal(I.n, I.gens + (f,))


# ---------------------------------------------------------------------------
# the tag mechanism

def _extend(p, extra=1):
    n = p.n
    return Polynomial(n + extra, tuple((m + (0,) * extra, c) for m, c in p.terms))


def _restrict(p, n):
    terms = []
    for m, c in p.terms:
        if any(m[n:]):
            raise ValueError("polynomial still involves a tag variable")
        terms.append((m[:n], c))
    return Polynomial(n, tuple(terms))


def _lift_order(order, n, tags):
    """Order on n+tags variables: the tag block dominates, then `order`."""
    tag_block = tuple(range(n, n + tags))
    if isinstance(order, Blocks):
        return Blocks((tag_block,) + order.blocks, n + tags)
    # grevlex (the only other order used internally for eliminations)
    return Blocks([tag_block], n + tags)


def _tag_eliminate(gens_ext, n, tags=1, inner_order=GREVLEX):
    """Tag-free part of an ideal of Q[x_1..x_n, t_1..t_tags].

    The result is the reduced basis of the eliminated ideal under
    `inner_order` (the tag-free elements of a reduced block-order basis
    stay monic and inter-reduced).
    """
    order = _lift_order(inner_order, n, tags)
    basis = buchberger(gens_ext, order, n=n + tags)
    keep = [_restrict(p, n) for p in basis
            if not any(any(m[n:]) for m, _ in p.terms)]
    return keep


def _saturation_basis(root, batches, order):
    """Reduced basis under `order` of root : (prod of batches)^inf,
    recomputed from the small root ideal with one tag per batch."""
    n = root.n
    tags = len(batches)
    gens = [_extend(g, tags) for g in root.gens]
    one = Polynomial.constant(n + tags, 1)
    for k, f in enumerate(batches):
        t = Polynomial.variable(n + tags, n + k)
        gens.append(t * _extend(f, tags) - one)
    keep = _tag_eliminate(gens, n, tags, order)
    return GroebnerBasis(order, keep, n)


def intersect(I, J):
    """I intersect J, by eliminating t from t*I + (1-t)*J."""
    if I.n != J.n:
        raise ValueError("ideals over different rings")
    n = I.n
    if I.is_zero_ideal() or J.is_zero_ideal():
        return Ideal(n, ())
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    t = Polynomial.variable(n + 1, n)
    one = Polynomial.constant(n + 1, 1)
    gens = [t * _extend(g) for g in I.gens]
    gens += [(one - t) * _extend(g) for g in J.gens]
    return Ideal(n, _tag_eliminate(gens, n))


def intersect_many(ideals):
    """Left fold of pairwise intersections over a canonical input order."""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("empty intersection")
    ideals.sort(key=lambda I: I.canonical_key())
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def exact_div(p, g):
    """Quotient p / g when g divides p exactly; raises otherwise."""
    n = p.n
    out = []
    rem = p
    lt_g, lc_g = g.leading_term(GREVLEX)
    while not rem.is_zero():
        lt_r, lc_r = rem.leading_term(GREVLEX)
        q = tuple(a - b for a, b in zip(lt_r, lt_g))
        if any(e < 0 for e in q):
            raise ValueError("division is not exact")
        coeff = lc_r / lc_g
        out.append((q, coeff))
        rem = rem - g.mul_monomial(q, coeff)
    return Polynomial.from_terms(n, out)


def quotient_poly(I, f):
    """I : <f> computed as (I intersect <f>) divided termwise by f."""
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    if f.is_constant():
        return I
    K = intersect(I, Ideal(I.n, (f,)))
    return Ideal(I.n, [exact_div(g, f) for g in K.gens])


def quotient(I, J):
    """I : J, as the intersection of the single-generator quotients."""
    if not J.gens:
        raise ValueError("quotient by the zero ideal")
    parts = [quotient_poly(I, g) for g in J.gens]
    out = parts[0]
    for p in parts[1:]:
        out = intersect(out, p)
    return out


def _batched(polys, cap=60):
    """Greedily multiply the factors into batches of bounded term count."""
    batches = []
    for f in sorted(polys, key=lambda p: p.sort_key()):
        if batches:
            trial = batches[-1] * f
            if len(trial.terms) <= cap:
                batches[-1] = trial
                continue
        batches.append(f)
    return batches


def _saturation_ideal(root, batches):
    basis = _saturation_basis(root, batches, GREVLEX)
    out = Ideal(root.n, basis.elements,
                sat_origin=(root, tuple(batches)))
    with out._lock:
        out._gb[GREVLEX] = basis
    return out


def saturate_only(I, f):
    """I : f^infinity via the Rabinowitsch tag.

    The result remembers its saturation origin, so later basis requests
    under other orders re-run the (cheap) tag elimination from the small
    root instead of converting the fat output basis.
    """
    if f.is_zero():
        raise ValueError("saturation by the zero polynomial")
    if f.is_constant():
        return I
    if I.sat_origin is not None:
        root, batches = I.sat_origin
        return _saturation_ideal(root, _batched(list(batches) + [f]))
    return _saturation_ideal(I, [f])


def saturate(I, f):
    """(I : f^infinity, least m with I : f^m == I : f^infinity).

    The exponent search iterates single quotients until they stabilize on
    the saturation, so the returned m is exact.
    """
    sat = saturate_only(I, f)
    J = I
    m = 0
    while not J.equals(sat):
        J = quotient_poly(J, f)
        m += 1
        if m > 256:
            raise RuntimeError("saturation exponent search did not stabilize")
    return sat, m


def saturate_many(I, polys):
    """Saturation by a product of polynomials in one elimination.

    The factors are batched into bounded-size products, each batch gets its
    own tag, and a single multi-tag elimination from the root ideal does
    the rest; this avoids ever feeding a fat intermediate basis back into
    Buchberger.
    """
    if any(f.is_zero() for f in polys):
        raise ValueError("saturation by the zero polynomial")
    polys = [f for f in polys if not f.is_constant()]
    if not polys:
        return I
    if I.sat_origin is not None:
        root, prior = I.sat_origin
        return _saturation_ideal(root, _batched(list(prior) + polys))
    return _saturation_ideal(I, _batched(polys))


def eliminate(I, drop):
    """Generators of I intersected with the subring without `drop`."""
    n = I.n
    drop = sorted(set(drop))
    if len(drop) >= n:
        raise ValueError("cannot drop every ring variable")
    if not drop:
        return Ideal(n, I.reduced_gens())
    order = BlockElim(drop, n)
    basis = I.groebner(order)
    dropset = set(drop)
    keep = [p for p in basis
            if not any(m[i] for m, _ in p.terms for i in dropset)]
    return Ideal(n, keep)


def radical_member(f, I):
    """f in sqrt(I), decided by 1 in I + <t*f - 1>."""
    if f.is_zero():
        return True
    if f.is_constant():
        return I.is_unit()  # a nonzero constant is in sqrt(I) only for (1)
    n = I.n
    t = Polynomial.variable(n + 1, n)
    one = Polynomial.constant(n + 1, 1)
    gens = [_extend(g) for g in I.gens]
    gens.append(t * _extend(f) - one)
    basis = buchberger(gens, GREVLEX, n=n + 1)
    return basis.is_unit_ideal()


def dim_and_mis(I):
    """(dimension, maximal independent set) from grevlex leading terms.

    U is independent when no leading monomial is supported inside U; the
    search scans subsets by decreasing size, ties broken by the natural
    variable order, so the result is deterministic.
    """
    B = I.groebner()
    if B.is_unit_ideal():
        raise ValueError("the unit ideal has no dimension")
    lms = B.leading_monomials()
    n = I.n

    def independent(uset):
        for m in lms:
            if all(e == 0 for i, e in enumerate(m) if i not in uset):
                return False
        return True

    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            if independent(set(U)):
                return size, frozenset(U)
    raise AssertionError("unreachable: the empty set is always independent")


# ---------------------------------------------------------------------------
# the extension over K(U): Buchberger with rational-function coefficients
#
# For an independent set U, the extension I*K(U)[Z] (Z the other variables)
# is computed directly with coefficients num/den in K[U]; for a single-
# variable U the fractions are kept reduced by univariate gcds.  Clearing
# denominators in the reduced monic basis gives explicit polynomials whose
# ideal has the same extension, and the contraction is their ideal
# saturated at the denominators.

class _KUn:
    """K(U) for several variables: fractions of Polynomials, reduced only
    by rational content (multivariate gcd is out of scope; these cases
    stay shallow in practice)."""

    def __init__(self, n, U):
        self.n = n
        self.U = frozenset(U)
        one = Polynomial.constant(n, 1)
        self.zero_c = (Polynomial.zero(n), one)
        self.one_c = (one, one)

    def from_upoly(self, p):
        return (p, Polynomial.constant(self.n, 1))

    def to_pair(self, coeff):
        return coeff

    def is_zero(self, a):
        return a[0].is_zero()

    def neg(self, a):
        return (-a[0], a[1])

    def _make(self, num, den):
        if num.is_zero():
            return self.zero_c
        if den.is_constant():
            c = den.constant_value()
            return (num.scale(1 / c), Polynomial.constant(self.n, 1))
        lc = den.leading_term(GREVLEX)[1]
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return (num, den)

    def mul(self, a, b):
        return self._make(a[0] * b[0], a[1] * b[1])

    def div(self, a, b):
        if b[0].is_zero():
            raise ZeroDivisionError
        return self._make(a[0] * b[1], a[1] * b[0])

    def sub(self, a, b):
        if a[1] == b[1]:
            return self._make(a[0] - b[0], a[1])
        return self._make(a[0] * b[1] - b[0] * a[1], a[1] * b[1])

    def den_lcm(self, coeffs):
        acc = Polynomial.constant(self.n, 1)
        for _, d in coeffs:
            if not d.is_constant():
                acc = acc * d
        return acc


def _split_zu(p, U, n):
    """Polynomial -> dict z_monomial -> K[U] coefficient polynomial."""
    buckets = {}
    for m, c in p.terms:
        z = tuple(0 if i in U else e for i, e in enumerate(m))
        u = tuple(e if i in U else 0 for i, e in enumerate(m))
        buckets.setdefault(z, []).append((u, c))
    return {z: Polynomial.from_terms(n, pairs) for z, pairs in buckets.items()}


def _ku_buchberger(gens, U, n, zorder=GREVLEX):
    """Reduced monic Groebner basis of <gens>*K(U)[Z] over K(U).

    Elements are dicts z_monomial -> coefficient (context-dependent
    fraction representation); `zorder` orders the Z monomials, so a block
    order here performs eliminations over K(U).  Returns (context, basis),
    with basis None when the extension is the unit ideal.
    """
    U = frozenset(U)
    ctx = _KUn(n, U)  # the single-variable case routes elsewhere
    zkey = zorder.key

    def to_elem(p):
        return {z: ctx.from_upoly(coef)
                for z, coef in _split_zu(p, set(U), n).items()}

    def lead(e):
        return max(e, key=zkey)

    def monicize(e):
        lm = lead(e)
        lc = e[lm]
        out = {}
        for z, c in e.items():
            out[z] = ctx.one_c if z == lm else ctx.div(c, lc)
        return out

    def reduce_elem(e, basis):
        e = dict(e)
        result = {}
        while e:
            lm = lead(e)
            hit = None
            for blm, belem in basis:
                q = mono_div(lm, blm)
                if q is not None:
                    hit = (q, belem, blm)
                    break
            if hit is None:
                result[lm] = e.pop(lm)
                continue
            q, belem, blm = hit
            coef = e.pop(lm)
            for z, c in belem.items():
                if z == blm:
                    continue
                zq = mono_mul(z, q)
                prod = ctx.mul(c, coef)
                if zq in e:
                    new = ctx.sub(e[zq], prod)
                    if ctx.is_zero(new):
                        del e[zq]
                    else:
                        e[zq] = new
                elif zq in result:
                    new = ctx.sub(result[zq], prod)
                    if ctx.is_zero(new):
                        del result[zq]
                    else:
                        result[zq] = new
                else:
                    neg = ctx.neg(prod)
                    if not ctx.is_zero(neg):
                        e[zq] = neg
        return result

    basis = []
    for g in sorted(gens, key=lambda p: p.sort_key()):
        if g.is_zero():
            continue
        elem = reduce_elem(to_elem(g), basis)
        if not elem:
            continue
        lm = lead(elem)
        if not any(lm):
            return ctx, None  # a K(U) unit: the extension is (1)
        basis.append((lm, monicize(elem)))

    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop(0)
        lmi, lmj = basis[i][0], basis[j][0]
        if mono_is_coprime(lmi, lmj):
            continue
        lcm = mono_lcm(lmi, lmj)
        qi, qj = mono_div(lcm, lmi), mono_div(lcm, lmj)
        s = {}
        for z, c in basis[i][1].items():
            s[mono_mul(z, qi)] = c
        for z, c in basis[j][1].items():
            zq = mono_mul(z, qj)
            if zq in s:
                new = ctx.sub(s[zq], c)
                if ctx.is_zero(new):
                    del s[zq]
                else:
                    s[zq] = new
            else:
                s[zq] = ctx.neg(c)
        rem = reduce_elem(s, basis)
        if not rem:
            continue
        lm = lead(rem)
        if not any(lm):
            return ctx, None
        basis.append((lm, monicize(rem)))
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))

    # minimalize and tail-reduce
    keep = []
    for idx, (lm, _) in enumerate(basis):
        if not any(mono_divides(basis[k][0], lm) for k in keep if k != idx):
            keep.append(idx)
    final = []
    for idx in keep:
        others = [basis[k] for k in keep if k != idx]
        red = reduce_elem(basis[idx][1], others)
        if red:
            final.append((lead(red), monicize(red)))
    final.sort(key=lambda t: zkey(t[0]), reverse=True)
    return ctx, final


def extension_data(I, U):
    """Data of I*K(U)[Z]: (z-leading monomials, denominators, cleared
    basis polynomials).

    The cleared polynomials generate an ideal with the same extension, and
    the contraction equals that ideal saturated at the denominators.
    Raises when U is not independent for I (the extension is the unit
    ideal).  When I remembers a saturation origin, everything is computed
    over K(U) from the small root ideal with tag variables (the extension
    of a saturation is the saturation of the extension).
    """
    n = I.n
    U = frozenset(U)
    if not U:
        basis = I.groebner()
        if basis.is_unit_ideal():
            raise ValueError("unit ideal")
        return basis.leading_monomials(), [], list(basis.elements)
    if len(U) == 1:
        return _extension_data_single(I, next(iter(U)))
    ctx, basis = _ku_buchberger(list(I.gens), U, n)
    if basis is None:
        raise ValueError("independent-set violation: the extension is (1)")
    lms = []
    denominators = {}
    cleared = []
    for lm, elem in basis:
        lms.append(lm)
        den = ctx.den_lcm(list(elem.values()))
        poly = Polynomial.zero(n)
        for z, coeff in elem.items():
            num_p, den_p = ctx.to_pair(coeff)
            scale = den.scale(1 / den_p.constant_value()) \
                if den_p.is_constant() else exact_div(den, den_p)
            poly = poly + (num_p * scale).mul_monomial(z)
        cleared.append(poly)
        if not den.is_constant():
            denominators[den.monic().terms] = den.monic()
    dens = sorted(denominators.values(), key=lambda p: p.sort_key())
    return tuple(lms), dens, cleared


def _extension_data_single(I, u):
    """extension_data for a one-variable U = {u}: a content-stripped
    integer basis under the Z-then-u block order.

    u-content stripping works modulo K(u)-units, so the computed basis
    generates an ideal between I and its contraction with the same
    extension; that is exactly what the contraction theorem consumes.
    Tag variables perform any pending saturation directly from the small
    origin root.
    """
    n = I.n
    if I.sat_origin is not None:
        root, batches = I.sat_origin
        tags = len(batches)
        N = n + tags
        gens_ext = [_extend(g, tags) for g in root.gens]
        one = Polynomial.constant(N, 1)
        for k, f in enumerate(batches):
            t = Polynomial.variable(N, n + k)
            gens_ext.append(t * _extend(f, tags) - one)
        zfront = tuple(range(n, N)), tuple(i for i in range(n) if i != u)
        order = Blocks(list(zfront), N)
        raw = buchberger(gens_ext, order, n=N, u_index=u)
        elements = [_restrict(p, n) for p in raw
                    if not any(any(m[n:]) for m, _ in p.terms)]
    else:
        zvars = tuple(i for i in range(n) if i != u)
        order = Blocks([zvars], n)
        raw = buchberger(list(I.gens), order, n=n, u_index=u)
        elements = list(raw.elements)
    if any(p.is_constant() and not p.is_zero() for p in elements):
        raise ValueError("independent-set violation: the extension is (1)")
    if not elements:
        raise ValueError("empty extension basis")
    zvars = tuple(i for i in range(n) if i != u)
    zorder = Blocks([zvars], n)
    lms = []
    denominators = {}
    for p in elements:
        lm = p.leading_monomial(zorder)
        zpart = tuple(e if i != u else 0 for i, e in enumerate(lm))
        if not any(zpart):
            raise ValueError("independent-set violation: basis element "
                             "lies in K[u]")
        lms.append(zpart)
        group = [(m, c) for m, c in p.terms
                 if tuple(e if i != u else 0 for i, e in enumerate(m)) == zpart]
        lc = Polynomial.from_terms(
            n, ((tuple(e if i == u else 0 for i, e in enumerate(m)), c)
                for m, c in group))
        if not lc.is_constant():
            denominators[lc.monic().terms] = lc.monic()
    dens = sorted(denominators.values(), key=lambda p: p.sort_key())
    return tuple(lms), dens, elements


def leading_coefficients_over(I, U):
    """Backward-compatible view: (denominators of the K(U) basis, grevlex
    basis of I).  The denominators play the role of the K(U)-leading
    coefficients of a cleared basis."""
    lms, dens, cleared = extension_data(I, U)
    return dens, I.groebner()


def hull_wrt_mis(I, U):
    """Contraction I*K(U)[X-U] intersect K[X].

    Computed from the K(U) basis of the extension: clearing denominators
    gives generators of an ideal with the same extension, and saturating
    them at the denominators is the contraction.  For an empty U the ideal
    is its own hull.
    """
    U = frozenset(U)
    if not U:
        _ = extension_data(I, U)  # raises on the unit ideal
        return I
    _, dens, cleared = extension_data(I, U)
    out = Ideal(I.n, cleared)
    if dens:
        out = saturate_many(out, dens)
    if not out.contains_ideal(I):
        raise RuntimeError("contraction lost the input ideal (internal bug)")
    return out
