"""Permutations, enumerated subgroups of S_n, the action on ideals,
invariance testing, and orbit decomposition of ideal families.

Groups are stored by full element enumeration (degrees here stay small, so
breadth-first closure beats any stabilizer-chain machinery), and ideals are
matched inside orbits through their canonical reduced-basis keys.
"""

from __future__ import annotations

import re

from .ideal_ops import Ideal


class Permutation:
    """Bijection of {1..n}; `images[i]` is the 0-based image of point i."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a bijection: %r" % (images,))
        self.images = images

    @staticmethod
    def identity(n):
        return Permutation(range(n))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        """Image of a 1-based point."""
        return self.images[i - 1] + 1

    def compose(self, other):
        """self after other: (self * other)(i) = self(other(i))."""
        if self.degree != other.degree:
            raise ValueError("permutation degrees differ")
        return Permutation(tuple(self.images[other.images[i]]
                                 for i in range(self.degree)))

    def __mul__(self, other):
        return self.compose(other)

    def inverse(self):
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(inv)

    def is_identity(self):
        return all(i == img for i, img in enumerate(self.images))

    def cycles(self):
        """Disjoint cycle decomposition over 1-based points, fixed points
        omitted."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cyc) > 1:
                out.append(tuple(p + 1 for p in cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (self.images,)

    def __str__(self):
        return format_cycles(self)


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s+\d+)*)\s*\)")


def parse_cycles(text, degree):
    """Permutation from whitespace-separated cycle notation.

    Cycles use 1-based points and are applied left to right; empty input is
    the identity.
    """
    stripped = text.strip()
    perm = Permutation.identity(degree)
    if not stripped:
        return perm
    pos = 0
    found = False
    for match in _CYCLE_RE.finditer(stripped):
        between = stripped[pos:match.start()]
        if between.strip():
            raise ValueError("malformed cycle text %r" % text)
        pos = match.end()
        found = True
        points = [int(tok) for tok in match.group(1).split()]
        if len(set(points)) != len(points):
            raise ValueError("repeated point in cycle %r" % match.group(0))
        if any(not 1 <= p <= degree for p in points):
            raise ValueError("cycle point out of range 1..%d" % degree)
        images = list(range(degree))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a - 1] = b - 1
        perm = Permutation(images).compose(perm)
    if stripped[pos:].strip() or not found:
        raise ValueError("malformed cycle text %r" % text)
    return perm


def format_cycles(perm):
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return " ".join("(" + " ".join(str(p) for p in cyc) + ")" for cyc in cycles)


class PermGroup:
    """Explicitly enumerated subgroup of S_n."""

    __slots__ = ("degree", "generators", "elements")

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return "PermGroup(degree=%d, order=%d)" % (self.degree, len(self.elements))


def closure(degree, gens):
    """Breadth-first closure of the generating set; elements sorted."""
    gens = list(gens)
    if any(g.degree != degree for g in gens):
        raise ValueError("generator degree does not match")
    identity = Permutation.identity(degree)
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for g in gens:
            for h in frontier:
                q = g.compose(h)
                if q not in elements:
                    elements.add(q)
                    new.append(q)
        frontier = new
    ordered = sorted(elements, key=lambda p: p.images)
    return PermGroup(degree, gens, ordered)


def symmetric_group(n):
    if n == 1:
        return closure(1, [])
    gens = [parse_cycles("(1 2)", n)]
    if n > 2:
        gens.append(parse_cycles("(" + " ".join(str(i) for i in range(1, n + 1)) + ")", n))
    return closure(n, gens)


def act_on_ideal(sigma, I):
    """sigma(I): generators mapped through the variable substitution; any
    cached bases are dropped by construction."""
    if sigma.degree != I.n:
        raise ValueError("permutation degree %d, ring arity %d" % (sigma.degree, I.n))
    return I.act(sigma)


def is_invariant(I, gens):
    """Generator test: sigma_j(f_i) in I for all i, j decides invariance
    under the whole generated subgroup."""
    basis = I.groebner()
    for sigma in gens:
        if sigma.degree != I.n:
            raise ValueError("permutation degree does not match the ring")
        for f in I.gens:
            if not basis.contains(f.act(sigma.images)):
                return False
    return True


class OrbitClass:
    """One orbit: canonical representative plus transported members.

    `transporters[k]` maps the representative onto `members[k]`; the full
    transporter coset per member and the representative's stabilizer are
    kept for the separator construction.
    """

    __slots__ = ("representative", "members", "transporters", "cosets", "stabilizer")

    def __init__(self, representative, members, transporters, cosets, stabilizer):
        self.representative = representative
        self.members = members
        self.transporters = transporters
        self.cosets = cosets
        self.stabilizer = stabilizer

    def __len__(self):
        return len(self.members)


class OrbitPartition:
    __slots__ = ("classes", "group")

    def __init__(self, classes, group):
        self.classes = tuple(classes)
        self.group = group

    def __len__(self):
        return len(self.classes)

    def class_of(self, key):
        for ci, cls in enumerate(self.classes):
            for mi, member in enumerate(cls.members):
                if member.canonical_key() == key:
                    return ci, mi
        raise KeyError("ideal not in partition")


def orbit_decompose(items, group):
    """Partition a family of ideals into G-orbits with transporters.

    Members are matched by canonical keys; each class representative is the
    canonically smallest member, and transporters are chosen deterministically
    (smallest group element first).
    """
    items = list(items)
    if any(I.n != group.degree for I in items):
        raise ValueError("group degree does not match the ring")
    by_key = {}
    for I in items:
        by_key.setdefault(I.canonical_key(), I)
    unassigned = dict(by_key)
    classes = []
    while unassigned:
        rep_key = min(unassigned)
        rep = unassigned.pop(rep_key)
        rep_small = Ideal(rep.n, rep.reduced_gens())
        member_map = {}
        stabilizer = []
        for sigma in group.elements:
            image_key = rep_small.act(sigma).canonical_key()
            if image_key == rep_key:
                stabilizer.append(sigma)
            if image_key in by_key:
                member_map.setdefault(image_key, []).append(sigma)
        members, transporters, cosets = [], [], []
        for key in sorted(member_map):
            members.append(by_key[key])
            transporters.append(member_map[key][0])
            cosets.append(tuple(member_map[key]))
            if key != rep_key:
                unassigned.pop(key, None)
        classes.append(OrbitClass(rep, members, transporters, cosets, stabilizer))
    classes.sort(key=lambda c: c.representative.canonical_key())
    return OrbitPartition(classes, group)
