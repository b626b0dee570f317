"""Prime spectrum machinery: Spec, the comparability quotient pSpec,
localization kernels, pure ideals, the Boolean ring of idempotents, stalks.

Primes of a finite commutative ring are the pullbacks of the maximal ideals
of its local factors, one per primitive idempotent.  Tests cross-check this
against a brute-force primality filter over the whole ideal lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Ring, ideal_closure, local_factors
from .errors import NotAHomomorphism, SamePoint
from .ideals import Ideal, all_ideals, is_prime_set


class SpecPoint:
    __slots__ = ("ring", "prime", "is_maximal", "is_minimal")

    def __init__(self, ring: Ring, prime: Ideal, is_maximal=None, is_minimal=None):
        if not is_prime_set(ring, prime.elements):
            raise ValueError("not a prime ideal")
        self.ring = ring
        self.prime = prime
        self.is_maximal = is_maximal
        self.is_minimal = is_minimal

    def key(self):
        return self.prime.sorted_elements()

    def __eq__(self, other):
        return (
            isinstance(other, SpecPoint)
            and self.ring is other.ring
            and self.prime.elements == other.prime.elements
        )

    def __hash__(self):
        return hash((id(self.ring), self.prime.elements))

    def __repr__(self):
        return f"SpecPoint({self.prime!r})"


class SpecBlock:
    """A point of pSpec: a comparability component of Spec with its A(x)."""

    __slots__ = ("ring", "primes", "pure_ideal")

    def __init__(self, ring: Ring, primes, pure_ideal: Ideal):
        self.ring = ring
        self.primes = tuple(sorted(primes, key=lambda p: p.key()))
        self.pure_ideal = pure_ideal

    def key(self):
        return self.primes[0].key()

    def __eq__(self, other):
        return (
            isinstance(other, SpecBlock)
            and self.ring is other.ring
            and self.primes == other.primes
        )

    def __hash__(self):
        return hash((id(self.ring),) + tuple(p.prime.elements for p in self.primes))

    def __repr__(self):
        return f"SpecBlock({len(self.primes)} primes, A of size {len(self.pure_ideal)})"


def spec(ring: Ring):
    """All prime ideals with maximal/minimal flags, canonically ordered."""
    hit = ring.cache.get("spec")
    if hit is not None:
        return hit
    sets = []
    for fac in local_factors(ring):
        local_units = fac.ring.units
        proj = fac.ring.project
        sets.append(frozenset(r for r in range(ring.size) if proj[r] not in local_units))
    points = []
    for s in sets:
        is_max = not any(s < t for t in sets)
        is_min = not any(t < s for t in sets)
        points.append(SpecPoint(ring, Ideal(ring, s, None), is_max, is_min))
    points.sort(key=lambda p: p.key())
    ring.cache["spec"] = points
    return points


def vanishing_set(ring: Ring, elements):
    """V(A): the primes containing every given element."""
    items = frozenset(elements)
    return [p for p in spec(ring) if items <= p.prime.elements]


def nonvanishing_set(ring: Ring, a):
    """D(a): the primes avoiding a."""
    return [p for p in spec(ring) if a not in p.prime.elements]


def kernel_0P(ring: Ring, point: SpecPoint) -> Ideal:
    """0_P = {r : s*r = 0 for some s outside P}."""
    cache = ring.cache.setdefault("kernel_0P", {})
    key = point.prime.elements
    hit = cache.get(key)
    if hit is not None:
        return hit
    mul = ring.mul_table
    z = ring.zero
    outside = [s for s in range(ring.size) if s not in key]
    members = [r for r in range(ring.size) if any(mul[s][r] == z for s in outside)]
    out = Ideal(ring, members, None)
    cache[key] = out
    return out


def pspec(ring: Ring):
    """The comparability components of Spec, each with its pure ideal."""
    hit = ring.cache.get("pspec")
    if hit is not None:
        return hit
    points = spec(ring)
    k = len(points)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            a, b = points[i].prime.elements, points[j].prime.elements
            if a <= b or b <= a:
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(points[i])
    blocks = []
    for members in groups.values():
        pure = frozenset(range(ring.size))
        for p in members:
            pure &= kernel_0P(ring, p).elements
        a_ideal = Ideal(ring, pure, None)
        if set(vanishing_set(ring, pure)) != set(members):
            raise AssertionError("V(A(x)) must equal the block")
        if not is_pure(ring, a_ideal).holds:
            raise AssertionError("A(x) must be a pure ideal")
        blocks.append(SpecBlock(ring, members, a_ideal))
    blocks.sort(key=lambda b: b.key())
    ring.cache["pspec"] = blocks
    return blocks


def block_of(ring: Ring, point: SpecPoint) -> SpecBlock:
    for block in pspec(ring):
        if point in block.primes:
            return block
    raise ValueError("prime not found in any block")


# ---------------------------------------------------------------------------
# purity


@dataclass
class PurityResult:
    holds: bool
    t: int | None = None
    counterexample: int | None = None


def is_pure(ring: Ring, ideal: Ideal) -> PurityResult:
    """Purity of an ideal: every a in A satisfies a = ab for some b in A.

    On success the least common multiplier t with a = at for all a in A is
    also reported; on failure the least element without a multiplier.
    """
    mul = ring.mul_table
    members = ideal.sorted_elements()
    for a in members:
        row = mul[a]
        if not any(row[b] == a for b in members):
            return PurityResult(False, None, a)
    for t in members:
        if all(mul[a][t] == a for a in members):
            return PurityResult(True, t, None)
    raise AssertionError("finite pure ideal must admit a common multiplier")


def pure_multiplier_for(ring: Ring, ideal: Ideal, family) -> int | None:
    """Least t in A with a*t = a for every a in the family, if any."""
    mul = ring.mul_table
    fam = list(family)
    for t in ideal.sorted_elements():
        if all(mul[a][t] == a for a in fam):
            return t
    return None


def pure_intersection_condition(ring: Ring, ideal: Ideal):
    """A is pure iff A o B = A intersect B for every ideal B; returns the
    verdict and the least failing B."""
    for other in all_ideals(ring):
        if ideal.times(other).elements != (ideal.elements & other.elements):
            return False, other
    return True, None


def idempotent_generator(ring: Ring, ideal: Ideal) -> int | None:
    """The least idempotent generating the ideal, if one exists."""
    mul = ring.mul_table
    for e in ring.idempotents:
        if frozenset(mul[e]) == ideal.elements:
            return e
    return None


def pure_saturation_check(ring: Ring, closed_points):
    """For an up-closed C in Spec: the pure ideal with V(A) = C if C is a
    union of blocks, else None."""
    cset = set(closed_points)
    points = spec(ring)
    for p in cset:
        for q in points:
            if p.prime.elements <= q.prime.elements and q not in cset:
                raise ValueError("C must be up-closed in Spec")
    covered: set = set()
    for block in pspec(ring):
        inside = [p for p in block.primes if p in cset]
        if inside and len(inside) != len(block.primes):
            return None
        covered.update(inside)
    if covered != cset:
        return None
    pure = frozenset(range(ring.size))
    for p in cset:
        pure &= kernel_0P(ring, p).elements
    out = Ideal(ring, pure, None)
    if set(vanishing_set(ring, pure)) != cset:
        raise AssertionError("saturation must cut out exactly C")
    if not is_pure(ring, out).holds:
        raise AssertionError("saturation of a block-union must be pure")
    return out


# ---------------------------------------------------------------------------
# the Boolean ring and stalks


def boolean_ring(ring: Ring) -> Ring:
    hit = ring.cache.get("boolean_ring")
    if hit is not None:
        return hit
    b = ring.boolean_ring()
    ring.cache["boolean_ring"] = b
    return b


def x_of(ring: Ring):
    """X(R) = Spec of the Boolean ring of idempotents."""
    return spec(boolean_ring(ring))


def tau(ring: Ring):
    """The map pSpec -> X(R): a block goes to the idempotents inside any of
    its primes.  Returns a dict keyed by block; bijective for finite rings."""
    b = boolean_ring(ring)
    bool_points = {p.prime.elements: p for p in x_of(ring)}
    out = {}
    for block in pspec(ring):
        images = set()
        for p in block.primes:
            inside = frozenset(
                i for i in range(b.size) if b.lift[i] in p.prime.elements
            )
            images.add(inside)
        if len(images) != 1:
            raise AssertionError("tau must not depend on the prime chosen")
        members = images.pop()
        if members not in bool_points:
            raise AssertionError("idempotents of a prime must form a Boolean prime")
        out[block] = bool_points[members]
    if len(set(out.values())) != len(bool_points):
        raise AssertionError("tau must be surjective")
    return out


def stalk_at(ring: Ring, xi: SpecPoint) -> Ring:
    """The stalk at a point of X(R): R modulo the ideal generated by the
    idempotents lying in xi."""
    b = boolean_ring(ring)
    gens = [b.lift[i] for i in xi.prime.elements]
    ideal = ideal_closure(ring, gens)
    return ring.quotient(ideal, label=f"{ring.label} stalk")


def clopen_union_idempotent(ring: Ring, blocks) -> int | None:
    """The idempotent e with D(e) equal to the union of the given blocks,
    if one exists (Boolean clopen detection)."""
    target = set()
    for block in blocks:
        target.update(block.primes)
    for e in ring.idempotents:
        if set(nonvanishing_set(ring, e)) == target:
            return e
    return None


def gelfand_check(ring: Ring):
    """Each prime lies under exactly one maximal ideal; on failure returns
    (P, M1, M2)."""
    points = spec(ring)
    maximals = [p for p in points if p.is_maximal]
    for p in points:
        over = [m for m in maximals if p.prime.elements <= m.prime.elements]
        if len(over) != 1:
            return False, (p, over[0], over[1])
    return True, None


# ---------------------------------------------------------------------------
# ring homomorphisms and the induced map on pSpec


class RingHom:
    """An element-wise map source -> target, verified on construction."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: Ring, target: Ring, images):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if len(self.images) != source.size:
            raise NotAHomomorphism("image table has the wrong length")
        if self.images[source.one] != target.one:
            raise NotAHomomorphism("1 must map to 1")
        for a in range(source.size):
            for b in range(source.size):
                if self.images[source.add(a, b)] != target.add(
                    self.images[a], self.images[b]
                ):
                    raise NotAHomomorphism(f"additivity fails at pair ({a},{b})")
                if self.images[source.mul(a, b)] != target.mul(
                    self.images[a], self.images[b]
                ):
                    raise NotAHomomorphism(f"multiplicativity fails at pair ({a},{b})")

    def __call__(self, i):
        return self.images[i]

    def preimage(self, subset) -> frozenset:
        items = frozenset(subset)
        return frozenset(i for i in range(self.source.size) if self.images[i] in items)


def induced_spec_map(hom: RingHom):
    """Spec(target) -> Spec(source): P goes to its preimage."""
    src_points = {p.prime.elements: p for p in spec(hom.source)}
    out = {}
    for p in spec(hom.target):
        pre = hom.preimage(p.prime.elements)
        if pre not in src_points:
            raise AssertionError("preimage of a prime must be a listed prime")
        out[p] = src_points[pre]
    return out

def induced_pspec_map(hom: RingHom):
    """pSpec(target) -> pSpec(source), via preimages of any member prime.
    Well-definedness across the block is asserted."""
    amap = induced_spec_map(hom)
    out = {}
    for block in pspec(hom.target):
        landing = {block_of(hom.source, amap[p]) for p in block.primes}
        if len(landing) != 1:
            raise AssertionError("block image must not depend on the member prime")
        out[block] = landing.pop()
    return out


def separating_idempotent(ring: Ring, x: SpecBlock, y: SpecBlock) -> int:
    """An idempotent e with x in D(e) and y in D(1-e)."""
    if x == y:
        raise SamePoint("blocks coincide")
    one = ring.one
    for e in ring.idempotents:
        comp = ring.sub(one, e)
        if all(
            e not in p.prime.elements for p in x.primes
        ) and all(comp not in q.prime.elements for q in y.primes):
            return e
    raise AssertionError("distinct blocks of a finite ring are clopen-separated")
