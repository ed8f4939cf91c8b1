"""Independent brute-force oracles used by the unit and acceptance suites.

These deliberately avoid the library's Groebner/factorization code paths:
membership is decided by solving an explicit linear system for cofactors,
and factor search enumerates bounded integer divisors.
"""

from fractions import Fraction


def monomials_up_to(n, d):
    """All exponent tuples of arity n with total degree <= d."""
    if n == 0:
        return [()]
    out = []
    for rest in monomials_up_to(n - 1, d):
        room = d - sum(rest)
        for e in range(room + 1):
            out.append((e,) + rest)
    return out


def solve_linear(rows, rhs):
    """Exact Gaussian elimination; returns a solution vector or None."""
    m = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(rows, rhs)]
    nrows, ncols = len(m), (len(m[0]) - 1 if m else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for row_idx, c in enumerate(pivots):
        sol[c] = m[row_idx][ncols]
    return sol


def member_by_cofactors(f, gens, bound):
    """True iff f = sum h_i g_i with deg(h_i g_i) <= bound has a solution.

    A True answer is always a sound membership proof; a False answer only
    rules out cofactors within the degree bound.
    """
    n = f.n
    cols = []
    col_meta = []
    for gi, g in enumerate(gens):
        dg = g.total_degree()
        if dg < 0:
            continue
        for m in monomials_up_to(n, max(bound - dg, 0)):
            cols.append(g.mul_monomial(m))
            col_meta.append((gi, m))
    row_monos = monomials_up_to(n, bound)
    index = {m: i for i, m in enumerate(row_monos)}
    rows = [[Fraction(0)] * len(cols) for _ in row_monos]
    for j, p in enumerate(cols):
        for m, c in p.terms:
            if m not in index:
                return False
            rows[index[m]][j] = c
    rhs = [Fraction(0)] * len(row_monos)
    for m, c in f.terms:
        if m not in index:
            return False
        rhs[index[m]] = c
    return solve_linear(rows, rhs) is not None


# ---------------------------------------------------------------------------
# univariate factor oracle (bounded divisor enumeration)

def _u_degree(coeffs):
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d] == 0:
        d -= 1
    return d


def _u_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _u_divmod_int(num, den):
    """Division of integer coefficient lists; None unless exact over Z."""
    num = list(num)
    dd = _u_degree(den)
    dn = _u_degree(num)
    if dd < 0:
        return None
    q = [0] * (dn - dd + 1) if dn >= dd else [0]
    while dn >= dd:
        lead = num[dn]
        if lead % den[dd] != 0:
            return None
        c = lead // den[dd]
        q[dn - dd] = c
        for i in range(dd + 1):
            num[dn - dd + i] -= c * den[i]
        dn = _u_degree(num)
    if any(num):
        return None
    return q


def _divisors_signed(v):
    v = abs(v)
    out = set()
    d = 1
    while d * d <= v:
        if v % d == 0:
            out.update((d, -d, v // d, -(v // d)))
        d += 1
    return sorted(out)


def _u_eval(coeffs, x):
    total = 0
    for c in reversed(coeffs):
        total = total * x + c
    return total


def smallest_divisor_search(coeffs, max_factor_degree=None):
    """Least-degree nontrivial divisor of a primitive integer polynomial.

    Exhaustive search over integer-coefficient divisor candidates: a degree-d
    divisor g must satisfy g(p) | f(p) at every integer point p and
    lc(g) | lc(f), which pins all candidate coefficient vectors; candidates
    exceeding the Mignotte factor bound are discarded before trial division.
    Returns a coefficient list, or None when f is irreducible over Q.
    """
    deg = _u_degree(coeffs)
    if deg <= 1:
        return None
    if max_factor_degree is None:
        max_factor_degree = deg // 2
    if coeffs[0] == 0:
        return [0, 1]
    norm = max(abs(c) for c in coeffs)
    lead = abs(coeffs[deg])
    mignotte = (2 ** deg) * norm * lead

    f0 = coeffs[0]
    f1 = _u_eval(coeffs, 1)
    fm1 = _u_eval(coeffs, -1)
    if f1 == 0:
        return [-1, 1]
    if fm1 == 0:
        return [1, 1]
    lead_divs = _divisors_signed(coeffs[deg])
    d0s = _divisors_signed(f0)
    d1s = _divisors_signed(f1)
    dm1s = _divisors_signed(fm1)

    for fd in range(1, max_factor_degree + 1):
        candidates = []
        if fd == 1:
            for c0 in d0s:
                for c1 in lead_divs:
                    candidates.append([c0, c1])
        elif fd == 2:
            # g = c0 + c1 x + c2 x^2 with g(0)=c0 | f(0), lc | lc(f),
            # and g(1) = c0+c1+c2 constrained to divide f(1)
            for c0 in d0s:
                for c2 in lead_divs:
                    for d1 in d1s:
                        candidates.append([c0, d1 - c0 - c2, c2])
        elif fd == 3:
            # value constraints at 0, 1, -1 plus lc | lc(f)
            for c0 in d0s:
                for c3 in lead_divs:
                    for d1 in d1s:
                        for dm1 in dm1s:
                            twice_c2 = d1 + dm1 - 2 * c0
                            if twice_c2 % 2:
                                continue
                            c2 = twice_c2 // 2
                            c1 = (d1 - dm1) // 2 - c3
                            if (d1 - dm1) % 2:
                                continue
                            candidates.append([c0, c1, c2, c3])
        else:
            # degree > 3 factors are not needed for degree <= 6 inputs
            break
        for cand in candidates:
            if _u_degree(cand) != fd:
                continue
            if any(abs(c) > mignotte for c in cand):
                continue
            if _u_divmod_int(coeffs, cand) is not None:
                return cand
    return None
