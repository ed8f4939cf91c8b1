"""Sparse multivariate polynomials over Q, monomial orders, and the
variable-permutation action.

Monomials are plain tuples of non-negative ints (one exponent per ring
variable); polynomials store an immutable term list sorted descending under
the reference order (grevlex with natural variable priority).  All
coefficients are `fractions.Fraction`, kept fully reduced by construction.
"""

from __future__ import annotations

from fractions import Fraction

LT, EQ, GT = -1, 0, 1

MAX_EXPONENT = 2 ** 30


class ArityMismatch(ValueError):
    """Operands live in polynomial rings of different arity."""


class ExponentOverflow(OverflowError):
    """An exponent left the supported machine-integer range."""


# ---------------------------------------------------------------------------
# monomial helpers (monomials are exponent tuples)

def mono_mul(a, b):
    out = tuple(x + y for x, y in zip(a, b))
    if any(x > MAX_EXPONENT for x in out):
        raise ExponentOverflow("monomial exponent exceeds %d" % MAX_EXPONENT)
    return out


def mono_divides(a, b):
    """True if monomial a divides monomial b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_div(a, b):
    """Quotient a / b, or None if b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if y > x:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


def mono_is_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders

def _grevlex_key(exps):
    out = [sum(exps)]
    for e in reversed(exps):
        out.append(-e)
    return tuple(out)


class MonomialOrder:
    """Total, multiplicative well-order on monomials of a fixed arity.

    Instances are immutable and hashable; they serve as cache keys for
    Groebner bases.  `key(m)` maps a monomial to a flat integer tuple that
    sorts ascending in the order, and every key here is additive:
    key(m1 * m2) equals the componentwise sum of key(m1) and key(m2),
    which lets the reduction engine shift terms without recomputing keys.
    """

    kind = "abstract"

    def key(self, exps):
        raise NotImplementedError

    def sort_terms(self, terms):
        """Sort (monomial, coeff) pairs descending under this order."""
        return sorted(terms, key=lambda t: self.key(t[0]), reverse=True)


class Grevlex(MonomialOrder):
    kind = "grevlex"

    def __init__(self, priority=None):
        self.priority = tuple(priority) if priority is not None else None

    def key(self, exps):
        if self.priority is not None:
            exps = tuple(exps[i] for i in self.priority)
        return _grevlex_key(exps)

    def __eq__(self, other):
        return isinstance(other, Grevlex) and self.priority == other.priority

    def __hash__(self):
        return hash(("grevlex", self.priority))

    def __repr__(self):
        return "Grevlex(%r)" % (self.priority,) if self.priority else "Grevlex()"


class Lex(MonomialOrder):
    kind = "lex"

    def __init__(self, priority=None):
        self.priority = tuple(priority) if priority is not None else None

    def key(self, exps):
        if self.priority is not None:
            return tuple(exps[i] for i in self.priority)
        return tuple(exps)

    def __eq__(self, other):
        return isinstance(other, Lex) and self.priority == other.priority

    def __hash__(self):
        return hash(("lex", self.priority))

    def __repr__(self):
        return "Lex(%r)" % (self.priority,) if self.priority else "Lex()"


class Blocks(MonomialOrder):
    """Block order: earlier blocks dominate later ones, grevlex inside each.

    A leading monomial free of the first block certifies the whole
    polynomial free of it, which is what elimination needs.
    """

    kind = "block"

    def __init__(self, blocks, arity):
        blocks = tuple(tuple(sorted(b)) for b in blocks if b)
        seen = [i for b in blocks for i in b]
        if len(seen) != len(set(seen)):
            raise ValueError("blocks overlap")
        rest = tuple(i for i in range(arity) if i not in set(seen))
        if rest:
            blocks = blocks + (rest,)
        self.blocks = blocks
        self.arity = arity

    @property
    def front(self):
        return self.blocks[0]

    def key(self, exps):
        out = []
        for block in self.blocks:
            total = 0
            for i in block:
                total += exps[i]
            out.append(total)
            for i in reversed(block):
                out.append(-exps[i])
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, Blocks) and self.blocks == other.blocks
                and self.arity == other.arity)

    def __hash__(self):
        return hash(("block", self.blocks, self.arity))

    def __repr__(self):
        return "Blocks(%r, arity=%d)" % (self.blocks, self.arity)


def BlockElim(front, arity):
    """Two-block elimination order: `front` dominates the rest."""
    return Blocks([tuple(front)], arity)


GREVLEX = Grevlex()
LEX = Lex()


def compare(m1, m2, order):
    """Compare monomials under `order`; returns LT, EQ or GT."""
    if len(m1) != len(m2):
        raise ArityMismatch("monomials of arity %d and %d" % (len(m1), len(m2)))
    k1, k2 = order.key(m1), order.key(m2)
    if k1 < k2:
        return LT
    if k1 > k2:
        return GT
    return EQ


# ---------------------------------------------------------------------------
# polynomials

def _canonicalize(n, acc):
    terms = [(m, c) for m, c in acc.items() if c != 0]
    terms.sort(key=lambda t: _grevlex_key(t[0]), reverse=True)
    return tuple(terms)


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients.

    `terms` is a tuple of (monomial, coefficient) pairs, zero-free and
    sorted descending under the reference grevlex order; the zero
    polynomial has an empty term tuple.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms):
        self.n = n
        self.terms = terms
        self._hash = None

    # construction ---------------------------------------------------------

    @staticmethod
    def zero(n):
        return Polynomial(n, ())

    @staticmethod
    def constant(n, c):
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(n)
        return Polynomial(n, (((0,) * n, c),))

    @staticmethod
    def variable(n, i, exp=1):
        if not 0 <= i < n:
            raise IndexError("variable index %d out of range" % i)
        m = tuple(exp if j == i else 0 for j in range(n))
        return Polynomial(n, ((m, Fraction(1)),))

    @staticmethod
    def from_terms(n, pairs):
        acc = {}
        for m, c in pairs:
            if len(m) != n:
                raise ArityMismatch("monomial arity %d in ring of %d" % (len(m), n))
            c = Fraction(c)
            if c == 0:
                continue
            acc[m] = acc.get(m, Fraction(0)) + c
        return Polynomial(n, _canonicalize(n, acc))

    # predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and sum(self.terms[0][0]) == 0)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[0][1]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m, _ in self.terms)

    def support_vars(self):
        """Indices of the variables that actually occur."""
        used = set()
        for m, _ in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.n != other.n:
            raise ArityMismatch("rings of arity %d and %d" % (self.n, other.n))

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return Polynomial(self.n, _canonicalize(self.n, acc))

    def __sub__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) - c
        return Polynomial(self.n, _canonicalize(self.n, acc))

    def __neg__(self):
        return Polynomial(self.n, tuple((m, -c) for m, c in self.terms))

    def __mul__(self, other):
        self._check(other)
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                c = c1 * c2
                prev = acc.get(m)
                acc[m] = c if prev is None else prev + c
        return Polynomial(self.n, _canonicalize(self.n, acc))

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero(self.n)
        return Polynomial(self.n, tuple((m, k * c) for m, k in self.terms))

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        out = Polynomial.constant(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def mul_monomial(self, mono, coeff=1):
        coeff = Fraction(coeff)
        return Polynomial(self.n, tuple((mono_mul(m, mono), c * coeff)
                                        for m, c in self.terms))

    # leading data ---------------------------------------------------------

    def leading_term(self, order=GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if order is GREVLEX or order == GREVLEX:
            return self.terms[0]
        return max(self.terms, key=lambda t: order.key(t[0]))

    def leading_monomial(self, order=GREVLEX):
        return self.leading_term(order)[0]

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        lc = self.leading_term(order)[1]
        return self.scale(Fraction(1) / lc)

    # permutation action ---------------------------------------------------

    def act(self, images):
        """Apply the substitution x_i -> x_{sigma(i)} given 0-based images."""
        images = getattr(images, "images", images)
        if len(images) != self.n:
            raise ArityMismatch("permutation degree %d, ring arity %d"
                                % (len(images), self.n))
        out = []
        for m, c in self.terms:
            new = [0] * self.n
            for i, e in enumerate(m):
                new[images[i]] = e
            out.append((tuple(new), c))
        return Polynomial.from_terms(self.n, out)

    # evaluation (used by the brute-force test oracles) ---------------------

    def evaluate(self, point):
        if len(point) != self.n:
            raise ArityMismatch("point of arity %d" % len(point))
        total = Fraction(0)
        for m, c in self.terms:
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    # dunder plumbing --------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.n == other.n
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.terms))
        return self._hash

    def __repr__(self):
        return "Polynomial(%d, %s)" % (self.n, format_poly(self, None))

    def sort_key(self, order=GREVLEX):
        """Canonical comparison key: leading monomial first, then all terms."""
        if not self.terms:
            return ((), ())
        return (order.key(self.terms[0][0]),
                tuple((order.key(m), c) for m, c in self.terms))


def act(perm, p):
    """Permutation action on a polynomial; `perm` is a Permutation or an
    image tuple (0-based)."""
    return p.act(perm)


def arith(p, q, op):
    """Dispatcher for {add, sub, mul} on polynomials over one ring."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError("unknown op %r" % (op,))


# ---------------------------------------------------------------------------
# text grammar

class ParseError(ValueError):
    """Syntax or name error, carrying the character position."""

    def __init__(self, msg, pos):
        super().__init__("%s (at position %d)" % (msg, pos))
        self.pos = pos


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := atom ('^' INT)?
    # atom   := INT ('/' INT)? | NAME | '-' atom | '(' expr ')'

    def __init__(self, text, names):
        self.text = text
        self.pos = 0
        self.names = {name: i for i, name in enumerate(names)}
        self.n = len(names)

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def take_name(self):
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self.pos += 1
        return self.text[start:self.pos]

    def parse_atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.parse_expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return p
        if ch.isdigit():
            num = self.take_int()
            if self.peek() == "/":
                self.pos += 1
                den = self.take_int()
                if den == 0:
                    self.error("zero denominator")
                return Polynomial.constant(self.n, Fraction(num, den))
            return Polynomial.constant(self.n, num)
        if ch.isalpha() or ch == "_":
            start = self.pos
            name = self.take_name()
            if name not in self.names:
                self.pos = start
                self.error("unknown variable %r" % name)
            return Polynomial.variable(self.n, self.names[name])
        self.error("expected number, variable or '('")

    def parse_factor(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.parse_factor()
        p = self.parse_atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.take_int()
            p = p ** e
        return p

    def parse_term(self):
        p = self.parse_factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.parse_factor()
        return p

    def parse_expr(self):
        p = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                p = p + self.parse_term()
            elif ch == "-":
                self.pos += 1
                p = p - self.parse_term()
            else:
                return p

    def parse(self):
        p = self.parse_expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return p


def parse_poly(text, names):
    """Parse `text` in the polynomial grammar over the declared variables.

    Multiplication is explicit (`*`), `^` takes a non-negative integer
    exponent, and `a/b` integer ratios are accepted as coefficients so that
    `parse_poly(format_poly(p, names), names) == p` for every polynomial.
    """
    return _Parser(text, list(names)).parse()


def format_poly(p, names=None):
    """Render a polynomial in the grammar accepted by parse_poly."""
    if names is None:
        names = ["x%d" % (i + 1) for i in range(p.n)]
    if p.is_zero():
        return "0"
    chunks = []
    for m, c in p.terms:
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append("%s^%d" % (names[i], e))
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not chunks:
            chunks.append(body if c > 0 else "-" + body)
        else:
            chunks.append(("+ " if c > 0 else "- ") + body)
    return " ".join(chunks)
