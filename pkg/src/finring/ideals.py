"""Ideals of finite rings: closures, lattices, annihilators.

Ideal lattices are enumerated locally (per corner ring of a primitive
idempotent) and recombined, since every ideal of a finite product splits
coordinatewise.  All listings are canonically ordered by sorted element
tuples, so results are deterministic.
"""

from __future__ import annotations

import itertools

from .core import DEFAULT_IDEAL_CAP, Ring, ideal_closure, local_factors
from .errors import CapacityExceeded


class Ideal:
    __slots__ = ("ring", "elements", "_generators", "_sorted")

    def __init__(self, ring: Ring, elements, generators=None):
        self.ring = ring
        self.elements = frozenset(elements)
        self._generators = tuple(generators) if generators is not None else None
        self._sorted = None

    @classmethod
    def generated(cls, ring: Ring, generators) -> "Ideal":
        gens = tuple(generators)
        return cls(ring, ideal_closure(ring, gens), gens)

    @classmethod
    def zero(cls, ring: Ring) -> "Ideal":
        return cls(ring, frozenset([ring.zero]), (ring.zero,))

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, frozenset(range(ring.size)), (ring.one,))

    @property
    def generators(self):
        if self._generators is None:
            self._generators = tuple(minimal_generators(self.ring, self.elements))
        return self._generators

    def sorted_elements(self):
        if self._sorted is None:
            self._sorted = tuple(sorted(self.elements))
        return self._sorted

    def __contains__(self, i):
        return i in self.elements

    def __len__(self):
        return len(self.elements)

    def __le__(self, other):
        return self.elements <= other.elements

    def __lt__(self, other):
        return self.elements < other.elements

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring is other.ring
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((id(self.ring), self.elements))

    def __repr__(self):
        gens = ",".join(str(self.ring.values[g]) for g in self.generators)
        return f"Ideal({gens})"

    def is_proper(self):
        return self.ring.one not in self.elements

    def is_zero(self):
        return self.elements == frozenset([self.ring.zero])

    def plus(self, other: "Ideal") -> "Ideal":
        add = self.ring.add_table
        out = {add[x][y] for x in self.elements for y in other.elements}
        return Ideal(self.ring, out, None)

    def times(self, other: "Ideal") -> "Ideal":
        mul = self.ring.mul_table
        gens = [mul[a][b] for a in self.generators for b in other.generators]
        return Ideal.generated(self.ring, gens)

    def intersect(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.elements & other.elements, None)


def minimal_generators(ring: Ring, elements: frozenset):
    """A generating set chosen greedily in canonical order."""
    if elements == frozenset([ring.zero]):
        return [ring.zero]
    gens = []
    have = frozenset([ring.zero])
    for x in sorted(elements):
        if x not in have:
            gens.append(x)
            have = ideal_closure(ring, gens)
            if have == elements:
                break
    return gens


def principal_set(ring: Ring, a) -> frozenset:
    return frozenset(ring.mul_table[a])


def annihilator(ring: Ring, elements) -> Ideal:
    mul = ring.mul_table
    z = ring.zero
    items = list(elements)
    out = [r for r in range(ring.size) if all(mul[r][x] == z for x in items)]
    return Ideal(ring, out, None)


def divisor_lists(ring: Ring):
    """divisors[x] = ascending list of d with x in (d).  Cached."""
    hit = ring.cache.get("divisor_lists")
    if hit is not None:
        return hit
    n = ring.size
    mul = ring.mul_table
    lists = [[] for _ in range(n)]
    for d in range(n):
        seen = bytearray(n)
        for q in range(n):
            x = mul[d][q]
            if not seen[x]:
                seen[x] = 1
                lists[x].append(d)
    ring.cache["divisor_lists"] = lists
    return lists


def quotients_by(ring: Ring, d, target):
    """Ascending q with q*d == target."""
    mul = ring.mul_table
    row = mul[d]
    return [q for q in range(ring.size) if row[q] == target]


def canonical_generator_table(ring: Ring):
    """canon[a] = least generator of (a).  Cached."""
    hit = ring.cache.get("canon")
    if hit is not None:
        return hit
    n = ring.size
    mul = ring.mul_table
    least: dict = {}
    canon = [0] * n
    for a in range(n):
        fs = frozenset(mul[a])
        canon[a] = least.setdefault(fs, a)
    ring.cache["canon"] = canon
    return canon


def canonical_generator_reps(ring: Ring):
    """Ascending least generators, one per principal ideal."""
    return sorted(set(canonical_generator_table(ring)))


def all_ideals(ring: Ring, cap: int = DEFAULT_IDEAL_CAP):
    """Every ideal, canonically ordered.  Cached on the ring."""
    hit = ring.cache.get("all_ideals")
    if hit is not None:
        return hit
    factors = local_factors(ring)
    if len(factors) == 1:
        sets = _local_ideal_sets(ring, cap)
    else:
        per_factor = []
        for fac in factors:
            local = _local_ideal_sets(fac.ring, cap)
            per_factor.append([
                frozenset(fac.embed(x) for x in s) for s in local
            ])
        count = 1
        for ls in per_factor:
            count *= len(ls)
            if count > cap:
                raise CapacityExceeded(f"more than {cap} ideals")
        add = ring.add_table
        sets = []
        for combo in itertools.product(*per_factor):
            cur = {ring.zero}
            for part in combo:
                cur = {add[x][y] for x in cur for y in part}
            sets.append(frozenset(cur))
    ideals = [Ideal(ring, s, None) for s in sets]
    ideals.sort(key=lambda ideal: (len(ideal), ideal.sorted_elements()))
    ring.cache["all_ideals"] = ideals
    return ideals


def _local_ideal_sets(ring: Ring, cap: int):
    n = ring.size
    mul = ring.mul_table
    add = ring.add_table
    principal = [frozenset(mul[a]) for a in range(n)]
    known = {frozenset([ring.zero])}
    frontier = [frozenset([ring.zero])]
    while frontier:
        cur = frontier.pop()
        for a in range(n):
            if a in cur:
                continue
            nxt = frozenset(add[x][y] for x in cur for y in principal[a])
            if nxt not in known:
                if len(known) >= cap:
                    raise CapacityExceeded(f"more than {cap} ideals")
                known.add(nxt)
                frontier.append(nxt)
    return sorted(known, key=lambda s: (len(s), sorted(s)))


def is_prime_set(ring: Ring, elements: frozenset) -> bool:
    """Proper, and the complement is multiplicatively closed."""
    if ring.one in elements:
        return False
    comp = [a for a in range(ring.size) if a not in elements]
    mul = ring.mul_table
    for i, a in enumerate(comp):
        row = mul[a]
        for b in comp[i:]:
            if row[b] in elements:
                return False
    return True
