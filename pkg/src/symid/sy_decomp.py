"""The decomposition engine: separators, pseudo-primary decomposition,
saturated separating ideals, the recursive baseline decomposition, and the
symmetric specialization that computes one primary component per orbit and
transports the rest through the group action.

Both entry points return a DecompositionResult whose invariants
(intersection identity, pairwise distinct radicals, irredundancy) are
enforced during assembly; `verify` re-checks them independently and reports
rather than raises.
"""

from __future__ import annotations

import time

from .multipoly import Polynomial
from .ideal_ops import (
    Ideal, dim_and_mis, hull_wrt_mis, ideal_sum, intersect, intersect_many,
    quotient, radical_member, saturate_many,
)
from .minprimes import minimal_primes
from .perm import is_invariant, orbit_decompose

MAX_DEPTH = 32


class DecompositionError(RuntimeError):
    """An internal identity failed; never silently ignored."""


# ---------------------------------------------------------------------------
# separators

class SeparatorSystem:
    """One separator per isolated prime: S_i avoids P_i and meets every
    other prime.  `g_invariant` marks systems built orbitwise so that the
    set {S_1..S_r} is closed under the group action."""

    __slots__ = ("primes", "sets", "g_invariant")

    def __init__(self, primes, sets, g_invariant=False):
        self.primes = tuple(primes)
        self.sets = tuple(tuple(s) for s in sets)
        self.g_invariant = g_invariant
        self._validate()

    def _validate(self):
        for i, (P, S) in enumerate(zip(self.primes, self.sets)):
            basis = P.groebner()
            if any(basis.contains(s) for s in S):
                raise DecompositionError("separator %d meets its own prime" % i)
            for j, Q in enumerate(self.primes):
                if i == j:
                    continue
                if not any(Q.contains_poly(s) for s in S):
                    raise DecompositionError(
                        "separator %d misses prime %d" % (i, j))

    def products(self):
        out = []
        for S in self.sets:
            p = None
            for s in S:
                p = s if p is None else p * s
            out.append(p)
        return out


def _poly_key(p):
    return p.sort_key()


def _separator_for(index, primes):
    """One chosen element of P_j minus P_i for every j != i, deduplicated;
    the choice is the smallest reduced-basis element under the reference
    order."""
    P = primes[index]
    basis = P.groebner()
    chosen = {}
    for j, Q in enumerate(primes):
        if j == index:
            continue
        candidates = [g for g in Q.reduced_gens() if not basis.contains(g)]
        if not candidates:
            raise DecompositionError(
                "primes %d and %d are comparable" % (index, j))
        pick = min(candidates, key=_poly_key)
        chosen.setdefault(pick.terms, pick)
    return sorted(chosen.values(), key=_poly_key)


def separators(primes):
    """A system of separators for >= 2 pairwise incomparable primes."""
    primes = list(primes)
    if len(primes) < 2:
        raise ValueError("separators need at least two isolated primes")
    sets = [_separator_for(i, primes) for i in range(len(primes))]
    return SeparatorSystem(primes, sets, g_invariant=False)


def g_invariant_separators(primes, group, orbits=None):
    """Separator system closed under the group action.

    Per orbit, a base separator for the representative is closed under the
    representative's stabilizer and transported to each member, which makes
    sigma(S_i) again a member of the system for every sigma in the group.
    """
    primes = list(primes)
    if len(primes) < 2:
        raise ValueError("separators need at least two isolated primes")
    if orbits is None:
        orbits = orbit_decompose(primes, group)
    key_to_set = {}
    for cls in orbits.classes:
        base = _separator_for(
            _index_of(primes, cls.representative), primes)
        hat = {}
        for tau in cls.stabilizer:
            for s in base:
                img = s.act(tau.images)
                hat.setdefault(img.monic().terms, img.monic())
        hat = sorted(hat.values(), key=_poly_key)
        for member, sigma in zip(cls.members, cls.transporters):
            transported = sorted(
                {s.act(sigma.images).monic().terms: s.act(sigma.images).monic()
                 for s in hat}.values(), key=_poly_key)
            key_to_set[member.canonical_key()] = transported
    sets = [key_to_set[P.canonical_key()] for P in primes]
    system = SeparatorSystem(primes, sets, g_invariant=True)
    return system


def _index_of(primes, ideal):
    key = ideal.canonical_key()
    for i, P in enumerate(primes):
        if P.canonical_key() == key:
            return i
    raise KeyError("prime not found")


# ---------------------------------------------------------------------------
# components

class Provenance:
    __slots__ = ("kind", "sigma", "source")

    def __init__(self, kind, sigma=None, source=None):
        self.kind = kind      # 'computed' | 'transported'
        self.sigma = sigma
        self.source = source  # index into the final component list

    def __repr__(self):
        if self.kind == "computed":
            return "computed"
        return "transported(%s)" % (self.sigma,)


class PseudoPrimaryPart:
    """A pseudo-primary component I : s_i^inf with its isolated prime."""

    __slots__ = ("qbar", "prime", "kind")

    def __init__(self, qbar, prime, kind=None):
        self.qbar = qbar
        self.prime = prime
        self.kind = kind  # 'g_invariant' | 'non_invariant' | None


class PrimaryComponent:
    __slots__ = ("q", "prime", "provenance")

    def __init__(self, q, prime, provenance):
        self.q = q
        self.prime = prime
        self.provenance = provenance


class DecompositionResult:
    __slots__ = ("input", "group", "components", "orbits", "stats", "method")

    def __init__(self, input_ideal, group, components, orbits, stats, method):
        self.input = input_ideal
        self.group = group
        self.components = tuple(components)
        self.orbits = orbits
        self.stats = stats
        self.method = method

    def primes(self):
        return [c.prime for c in self.components]


# ---------------------------------------------------------------------------
# pseudo-primary decomposition and separating ideals

def _pseudo_primary_parts(I, system, group=None, orbits=None):
    """The pseudo-primary parts I : s_i^inf, one per prime of the system.

    With an orbit plan, only each orbit representative is saturated and the
    members are transported (exactly consistent: the member separators are
    the transported representative separators)."""
    if orbits is not None:
        qbar_by_key = {}
        for cls in orbits.classes:
            rep_idx = _index_of(system.primes, cls.representative)
            qbar_rep = saturate_many(I, system.sets[rep_idx])
            small = Ideal(qbar_rep.n, qbar_rep.reduced_gens())
            for member, sigma in zip(cls.members, cls.transporters):
                qbar_by_key[member.canonical_key()] = small.act(sigma)
        qbars = [qbar_by_key[P.canonical_key()] for P in system.primes]
    else:
        qbars = [saturate_many(I, S) for S in system.sets]
    parts = []
    for P, qbar in zip(system.primes, qbars):
        kind = None
        if group is not None:
            kind = "g_invariant" if is_invariant(qbar, group.generators) \
                else "non_invariant"
        parts.append(PseudoPrimaryPart(qbar, P, kind))
    return parts


def pseudo_primary_decomposition(I, system, group=None, _transport_plan=None):
    """(pseudo-primary parts, remaining component).

    parts[i].qbar = I : s_i^inf; the remaining component is I + J2 for a
    saturated separating ideal J2 of (I, the intersection of all parts), or
    the unit ideal when the parts alone already cut out I.  The identity
    I == intersection(parts) cap remaining is verified.
    """
    parts = _pseudo_primary_parts(I, system, group, _transport_plan)
    meet = intersect_many([p.qbar for p in parts])
    if meet.equals(I):
        remaining = Ideal(I.n, (Polynomial.constant(I.n, 1),))
    else:
        J2 = saturated_separating_ideal(I, meet, group)
        remaining = ideal_sum(I, J2)
        check = intersect(meet, remaining)
        if not check.equals(I):
            raise DecompositionError("pseudo-primary identity failed")
    return parts, remaining


def isolated_primary_component(part):
    """Hull of the pseudo-primary part at its deterministic maximal
    independent set; the unique isolated primary component."""
    qbar = part.qbar
    _, U = dim_and_mis(qbar)
    q = hull_wrt_mis(qbar, U)
    for g in part.prime.reduced_gens():
        if not radical_member(g, q):
            raise DecompositionError("hull lost its radical")
    return PrimaryComponent(q, part.prime, Provenance("computed"))


def saturated_separating_ideal(I, Q, group=None):
    """J with I == Q cap (I + J) and sqrt(I : Q) == sqrt(I + J).

    Grown from the zero ideal by adding minimal powers of witnesses taken
    from I : Q; with a group, the whole orbit of each witness enters at a
    common exponent so J stays invariant.  Both identities are verified
    before returning.
    """
    if I.n != Q.n:
        raise ValueError("ideals over different rings")
    if not Q.contains_ideal(I):
        raise ValueError("separating ideals need I inside Q")
    if Q.equals(I):
        raise ValueError("Q must be a proper over-ideal of I")
    colon = quotient(I, Q)
    j_gens = []
    rounds = 0
    while True:
        rounds += 1
        if rounds > 64:
            raise DecompositionError("separating ideal loop did not converge")
        IJ = Ideal(I.n, I.gens + tuple(j_gens))
        witness = None
        for g in sorted(colon.reduced_gens(), key=_poly_key):
            if not radical_member(g, IJ):
                witness = g
                break
        if witness is None:
            J = Ideal(I.n, j_gens)
            if not intersect(Q, IJ).equals(I):
                raise DecompositionError("separating identity failed")
            return J
        if group is None:
            orbit = [witness]
        else:
            seen = {}
            for sigma in group.elements:
                img = witness.act(sigma.images)
                seen.setdefault(img.monic().terms, img.monic())
            orbit = sorted(seen.values(), key=_poly_key)
        for m in range(1, 65):
            powers = [f ** m for f in orbit]
            candidate = Ideal(I.n, I.gens + tuple(j_gens) + tuple(powers))
            if intersect(Q, candidate).equals(I):
                j_gens.extend(powers)
                break
        else:
            raise DecompositionError("no separating exponent up to 64")


# ---------------------------------------------------------------------------
# assembly shared by both algorithms

def _assemble(I, raw, group, method, started):
    """Dedup, merge same-radical components, prune redundancy, sort, and
    wrap into a DecompositionResult."""
    by_q = {}
    ordered = []
    for comp in raw:
        key = comp.q.canonical_key()
        if key in by_q:
            continue
        by_q[key] = comp
        ordered.append(comp)

    # merge components that share a radical: their intersection is again
    # primary to the same prime
    by_prime = {}
    merged = []
    for comp in ordered:
        pkey = comp.prime.canonical_key()
        if pkey in by_prime:
            old = by_prime[pkey]
            combined = intersect(old.q, comp.q)
            keep = PrimaryComponent(combined, old.prime, old.provenance)
            merged[merged.index(old)] = keep
            by_prime[pkey] = keep
        else:
            by_prime[pkey] = comp
            merged.append(comp)

    comps = merged
    # leave-one-out pruning until stable
    while len(comps) > 1:
        drop = None
        inters = _loo_intersections([c.q for c in comps])
        for i, c in enumerate(comps):
            if c.q.contains_ideal(inters[i]):
                drop = i
                break
        if drop is None:
            break
        comps.pop(drop)

    comps.sort(key=lambda c: c.q.canonical_key())

    check = intersect_many([c.q for c in comps]) if comps else None
    if check is None or not check.equals(I):
        raise DecompositionError("assembled decomposition does not intersect "
                                 "to the input")

    orbits = None
    if group is not None:
        orbits = orbit_decompose([c.prime for c in comps], group)

    computed = sum(1 for c in comps if c.provenance.kind == "computed")
    stats = {
        "components": len(comps),
        "computed": computed,
        "transported": len(comps) - computed,
        "orbit_count": len(orbits.classes) if orbits is not None else None,
        "wall_time": time.perf_counter() - started,
    }
    return DecompositionResult(I, group, comps, orbits, stats, method)


def _loo_intersections(ideals):
    """Leave-one-out intersections via prefix and suffix chains."""
    r = len(ideals)
    prefix = [None] * r
    suffix = [None] * r
    acc = None
    for i in range(r):
        acc = ideals[i] if acc is None else intersect(acc, ideals[i])
        prefix[i] = acc
    acc = None
    for i in range(r - 1, -1, -1):
        acc = ideals[i] if acc is None else intersect(acc, ideals[i])
        suffix[i] = acc
    out = []
    for i in range(r):
        if i == 0:
            out.append(suffix[1])
        elif i == r - 1:
            out.append(prefix[r - 2])
        else:
            out.append(intersect(prefix[i - 1], suffix[i + 1]))
    return out


# ---------------------------------------------------------------------------
# the plain recursion

def sy(I):
    """Minimal primary decomposition by the separator/saturation recursion."""
    if I.is_unit():
        raise ValueError("cannot decompose the unit ideal")
    started = time.perf_counter()
    raw = []
    _sy_rec(I, raw, 0)
    return _assemble(I, raw, None, "sy", started)


def _sy_rec(I, out, depth):
    if depth > MAX_DEPTH:
        raise DecompositionError("recursion exceeded depth %d" % MAX_DEPTH)
    primes = minimal_primes(I)

    if len(primes) == 1:
        part = PseudoPrimaryPart(I, primes[0])
        comp = isolated_primary_component(part)
        out.append(comp)
        if not comp.q.equals(I):
            J1 = saturated_separating_ideal(I, comp.q)
            nxt = ideal_sum(I, J1)
            if nxt.is_proper():
                _sy_rec(nxt, out, depth + 1)
        return

    system = separators(primes)
    start = len(out)
    parts = [PseudoPrimaryPart(saturate_many(I, S), P)
             for P, S in zip(system.primes, system.sets)]
    for part in parts:
        comp = isolated_primary_component(part)
        out.append(comp)
        if not comp.q.equals(part.qbar):
            J1 = saturated_separating_ideal(part.qbar, comp.q)
            nxt = ideal_sum(I, J1)
            if nxt.is_proper():
                _sy_rec(nxt, out, depth + 1)
    # the emitted components sit between I and the pseudo-primary meet;
    # when they already cut out I, the remaining component is unnecessary
    if intersect_many([c.q for c in out[start:]]).equals(I):
        return
    meet = intersect_many([p.qbar for p in parts])
    if meet.equals(I):
        return
    J2 = saturated_separating_ideal(I, meet)
    remaining = ideal_sum(I, J2)
    if remaining.is_proper():
        _sy_rec(remaining, out, depth + 1)


# ---------------------------------------------------------------------------
# the symmetric recursion

def symmetric_sy(I, group):
    """Minimal primary decomposition of a group-invariant ideal, computing
    one component per orbit and transporting the rest."""
    if I.is_unit():
        raise ValueError("cannot decompose the unit ideal")
    if not is_invariant(I, group.generators):
        raise ValueError("ideal is not invariant under the given group")
    started = time.perf_counter()
    raw = []
    _symsy_rec(I, group, raw, 0)
    return _assemble(I, raw, group, "symsy", started)


def _transport_components(components, group, out):
    """Union over the group of the images of a component list, recording
    the transporter; the identity image keeps its computed provenance."""
    seen = {c.q.canonical_key() for c in out}
    for comp in components:
        small_q = Ideal(comp.q.n, comp.q.reduced_gens())
        small_p = Ideal(comp.prime.n, comp.prime.reduced_gens())
        for sigma in group.elements:
            q_img = small_q.act(sigma)
            key = q_img.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            p_img = small_p.act(sigma)
            if sigma.is_identity():
                out.append(PrimaryComponent(q_img, p_img, comp.provenance))
            else:
                out.append(PrimaryComponent(
                    q_img, p_img,
                    Provenance("transported", sigma=sigma, source=comp)))
            # transported components are re-verified cheaply
            for g in p_img.reduced_gens():
                if not radical_member(g, q_img):
                    raise DecompositionError("transported component lost "
                                             "its radical")


def _symsy_rec(I, group, out, depth):
    if depth > MAX_DEPTH:
        raise DecompositionError("recursion exceeded depth %d" % MAX_DEPTH)
    primes = minimal_primes(I)

    if len(primes) == 1:
        part = PseudoPrimaryPart(I, primes[0], "g_invariant")
        comp = isolated_primary_component(part)
        out.append(comp)
        if not comp.q.equals(I):
            J1 = saturated_separating_ideal(I, comp.q, group)
            nxt = ideal_sum(I, J1)
            if nxt.is_proper():
                _symsy_rec(nxt, group, out, depth + 1)
        return

    orbits = orbit_decompose(primes, group)
    system = g_invariant_separators(primes, group, orbits)
    parts = _pseudo_primary_parts(I, system, group, orbits)
    part_by_key = {p.prime.canonical_key(): p for p in parts}

    start = len(out)
    for cls in orbits.classes:
        if len(cls.members) == 1:
            part = part_by_key[cls.representative.canonical_key()]
            comp = isolated_primary_component(part)
            out.append(comp)
            if not comp.q.equals(part.qbar):
                J1 = saturated_separating_ideal(part.qbar, comp.q, group)
                nxt = ideal_sum(I, J1)
                if nxt.is_proper():
                    _symsy_rec(nxt, group, out, depth + 1)
        else:
            part = part_by_key[cls.representative.canonical_key()]
            sub = []
            _sy_rec(part.qbar, sub, depth + 1)
            _transport_components(sub, group, out)

    # lazy remaining component: skip it when the emitted components
    # already intersect to I (subsumes the meet == I test)
    if intersect_many([c.q for c in out[start:]]).equals(I):
        return
    meet = intersect_many([p.qbar for p in parts])
    if meet.equals(I):
        return
    J2 = saturated_separating_ideal(I, meet, group)
    remaining = ideal_sum(I, J2)
    if remaining.is_proper():
        _symsy_rec(remaining, group, out, depth + 1)


# ---------------------------------------------------------------------------
# verification

class VerifyReport:
    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    @property
    def ok(self):
        return all(status != "fail" for _, status, _ in self.entries)

    def __iter__(self):
        return iter(self.entries)


def verify(result):
    """Independent re-check of the decomposition invariants.

    Entries: intersection identity, component radicals (distinct, and each
    prime really is the radical of its component), leave-one-out
    irredundancy, and group closure of the prime set when a group is
    attached.  Failures are reported, never raised.
    """
    entries = []
    comps = list(result.components)
    I = result.input

    if not comps:
        entries.append(("intersection", "fail", "no components"))
        return VerifyReport(entries)

    inter = intersect_many([c.q for c in comps])
    entries.append(("intersection", "ok" if inter.equals(I) else "fail",
                    "product of %d components" % len(comps)))

    keys = [c.prime.canonical_key() for c in comps]
    distinct = len(set(keys)) == len(keys)
    radicals_ok = True
    for c in comps:
        if not c.prime.contains_ideal(c.q):
            radicals_ok = False
            break
        if not all(radical_member(g, c.q) for g in c.prime.reduced_gens()):
            radicals_ok = False
            break
    status = "ok" if distinct and radicals_ok else "fail"
    detail = "pairwise distinct" if distinct else "radical collision"
    if not radicals_ok:
        detail = "prime is not the radical of its component"
    entries.append(("radicals", status, detail))

    if len(comps) == 1:
        entries.append(("irredundancy", "ok", "single component"))
    else:
        loo = _loo_intersections([c.q for c in comps])
        bad = [i for i, c in enumerate(comps) if c.q.contains_ideal(loo[i])]
        entries.append(("irredundancy", "ok" if not bad else "fail",
                        "all components necessary" if not bad
                        else "redundant: %r" % bad))

    if result.group is None:
        entries.append(("g_closure", "n/a", "no group attached"))
    elif not is_invariant(I, result.group.generators):
        entries.append(("g_closure", "n/a", "input not invariant"))
    else:
        key_set = set(keys)
        closed = True
        for sigma in result.group.generators:
            for c in comps:
                img = Ideal(c.prime.n, c.prime.reduced_gens()).act(sigma)
                if img.canonical_key() not in key_set:
                    closed = False
                    break
            if not closed:
                break
        entries.append(("g_closure", "ok" if closed else "fail",
                        "Ass closed under the group" if closed
                        else "prime set not closed"))
    return VerifyReport(entries)
