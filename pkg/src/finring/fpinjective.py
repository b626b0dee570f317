"""Self-injectivity and the annihilator conditions on finite rings.

FP-injective and injective coincide on this tier: a finite ring is artinian,
so Baer's criterion over the (finite) ideal lattice decides both at once.
The criterion is evaluated by counting: homs I -> R restricting from
multiplications number |R| / |ann I|, so R is self-injective at I exactly
when Hom(I, R) has that size.  Hom sizes multiply over the local factors.
"""

from __future__ import annotations

import itertools

from .core import Ring, from_factor_indices, local_factors
from .errors import (
    NotAChainRing,
    NotArithmetical,
    UndefinedForZeroOrUnitIdeal,
)
from .ideals import (
    Ideal,
    all_ideals,
    annihilator,
    canonical_generator_table,
    is_prime_set,
    minimal_generators,
)
from .properties import PropertyReport, arithmetical_check, is_chain_ring
from .spectrum import spec


class IdealHom:
    """A verified R-linear map from an ideal into the ring."""

    __slots__ = ("ring", "ideal", "table")

    def __init__(self, ring: Ring, ideal: Ideal, table: dict):
        if set(table) != set(ideal.elements):
            raise ValueError("value table must cover the ideal exactly")
        add = ring.add_table
        mul = ring.mul_table
        for x in ideal.elements:
            for y in ideal.elements:
                if table[add[x][y]] != add[table[x]][table[y]]:
                    raise ValueError("not additive")
        for r in range(ring.size):
            for x in ideal.elements:
                if table[mul[r][x]] != mul[r][table[x]]:
                    raise ValueError("not linear")
        self.ring = ring
        self.ideal = ideal
        self.table = dict(table)

    def __call__(self, x):
        return self.table[x]

    def extending_multiplier(self):
        """Least r with f(x) = r x on the ideal, or None."""
        mul = self.ring.mul_table
        for r in range(self.ring.size):
            row = mul[r]
            if all(row[x] == fx for x, fx in self.table.items()):
                return r
        return None


# ---------------------------------------------------------------------------
# hom enumeration over one local factor


def _expressions(fr: Ring, gens):
    """One coefficient tuple per ideal element, plus the full relation set of
    the generators (coefficient tuples summing to zero)."""
    mul = fr.mul_table
    add = fr.add_table
    k = len(gens)
    expr = {}
    relations = []
    for coeffs in itertools.product(range(fr.size), repeat=k):
        val = fr.zero
        for c, g in zip(coeffs, gens):
            val = add[val][mul[c][g]]
        if val == fr.zero:
            relations.append(coeffs)
        expr.setdefault(val, coeffs)
    return expr, relations


def _relation_generators(fr: Ring, relations, k):
    """Greedy generating set of the relation submodule of R^k."""
    mul = fr.mul_table
    add = fr.add_table
    zero_t = tuple([fr.zero] * k)
    closed = {zero_t}
    gens = []
    for rel in sorted(relations):
        if rel in closed:
            continue
        gens.append(rel)
        frontier = []
        for r in range(fr.size):
            scaled = tuple(mul[r][c] for c in rel)
            if scaled not in closed:
                closed.add(scaled)
                frontier.append(scaled)
        while frontier:
            t = frontier.pop()
            for u in list(closed):
                v = tuple(add[a][b] for a, b in zip(t, u))
                if v not in closed:
                    closed.add(v)
                    frontier.append(v)
    return gens


def _factor_homs(fr: Ring, elements):
    """(generators, expression table, valid image tuples) for Hom(I, R) over
    one local factor; an image tuple is valid when it kills every relation."""
    gens = minimal_generators(fr, elements)
    if gens == [fr.zero]:
        return [fr.zero], {fr.zero: (fr.zero,)}, [(fr.zero,)]
    expr, relations = _expressions(fr, gens)
    relgens = _relation_generators(fr, relations, len(gens))
    mul = fr.mul_table
    add = fr.add_table
    valid = []
    for images in itertools.product(range(fr.size), repeat=len(gens)):
        good = True
        for rel in relgens:
            acc = fr.zero
            for c, y in zip(rel, images):
                acc = add[acc][mul[c][y]]
            if acc != fr.zero:
                good = False
                break
        if good:
            valid.append(images)
    return gens, expr, valid


def _witness_hom(ring: Ring, ideal: Ideal, factor_data):
    """The least hom (by factor image tuples) that no multiplication gives."""
    facs = local_factors(ring)
    for combo in itertools.product(*(d[2] for d in factor_data)):
        table = {}
        for x in ideal.elements:
            parts = []
            for fac, (gens, expr, _), images in zip(facs, factor_data, combo):
                fr = fac.ring
                coeffs = expr[fac.project(x)]
                acc = fr.zero
                for c, y in zip(coeffs, images):
                    acc = fr.add(acc, fr.mul(c, y))
                parts.append(acc)
            table[x] = from_factor_indices(ring, parts)
        hom = IdealHom(ring, ideal, table)
        if hom.extending_multiplier() is None:
            return hom
    raise AssertionError("hom count mismatch but every hom extends")


def baer_self_injective(ring: Ring) -> PropertyReport:
    """Does every hom from every ideal into R extend to all of R?"""
    for ideal in all_ideals(ring):
        expected = ring.size // len(annihilator(ring, ideal.elements))
        factor_data = []
        total = 1
        for fac in local_factors(ring):
            elems = frozenset(
                fac.project(x) for x in ideal.elements
            )
            data = _factor_homs(fac.ring, elems)
            factor_data.append(data)
            total *= len(data[2])
        if total != expected:
            hom = _witness_hom(ring, ideal, factor_data)
            return PropertyReport(
                "baer_self_injective",
                False,
                counterexample={
                    "ideal": ideal.sorted_elements(),
                    "hom": dict(sorted(hom.table.items())),
                },
            )
    return PropertyReport("baer_self_injective", True)


def double_annihilator_check(ring: Ring) -> PropertyReport:
    """A = (0 : (0 : A)) for every ideal, computed directly."""
    for ideal in all_ideals(ring):
        back = annihilator(ring, annihilator(ring, ideal.elements).elements)
        if back.elements != ideal.elements:
            return PropertyReport(
                "double_annihilator",
                False,
                counterexample={
                    "ideal": ideal.sorted_elements(),
                    "double_annihilator": back.sorted_elements(),
                },
            )
    return PropertyReport("double_annihilator", True)


def fractionally_if_check(ring: Ring) -> PropertyReport:
    """Is R/A self-injective for every ideal A?  Quotients split along the
    local factors, so the sweep runs factor by factor.  Coherence needs no
    check here and the quotient is its own ring of fractions: every regular
    element of a finite ring is a unit."""
    for fac in local_factors(ring):
        fr = fac.ring
        for b in all_ideals(fr):
            q = fr.quotient(b.elements, label=f"{fr.label}/~")
            if not baer_self_injective(q).holds:
                proj = fr.project
                lifted = frozenset(
                    r for r in range(ring.size) if proj[r] in b.elements
                )
                return PropertyReport(
                    "fractionally_if",
                    False,
                    counterexample={"ideal": sorted(lifted)},
                )
    return PropertyReport("fractionally_if", True)


# ---------------------------------------------------------------------------
# the stabilizer ideal and chain-ring classification


def sharp(ring: Ring, ideal: Ideal) -> Ideal:
    """A-sharp: the r with r A strictly inside A.  Chain rings only: over a
    product the set is not even additively closed.  Strictness is what makes
    the result prime, and primality is asserted."""
    if not is_chain_ring(ring):
        raise NotAChainRing(ring.label)
    if not ideal.is_proper() or ideal.is_zero():
        raise UndefinedForZeroOrUnitIdeal(repr(ideal))
    mul = ring.mul_table
    elems = ideal.elements
    out = frozenset(
        r
        for r in range(ring.size)
        if frozenset(mul[r][a] for a in elems) < elems
    )
    result = Ideal(ring, out)
    assert is_prime_set(ring, out)
    return result


def strongly_discrete_check(ring: Ring) -> PropertyReport:
    """No local factor may carry a nonzero prime L with L^2 = L."""
    if not arithmetical_check(ring).holds:
        raise NotArithmetical(ring.label)
    for fac in local_factors(ring):
        fr = fac.ring
        for point in spec(fr):
            elems = point.prime.elements
            if elems == frozenset([fr.zero]):
                continue
            gens = minimal_generators(fr, elems)
            square = Ideal.generated(
                fr, [fr.mul(a, b) for a in gens for b in gens]
            )
            if square.elements == elems:
                return PropertyReport(
                    "strongly_discrete",
                    False,
                    counterexample={
                        "factor": fr.label,
                        "prime": tuple(
                            fac.embed(i) for i in point.prime.sorted_elements()
                        ),
                    },
                )
    return PropertyReport("strongly_discrete", True)


def quotval_classify(ring: Ring, ideal: Ideal) -> dict:
    """Prime, or the pullback of a proper principal ideal.  A finite chain
    ring is local, so localizing at the stabilizer prime returns the ring
    itself and the pullback is the ideal with its canonical generator; every
    ideal here is principal, which makes the classification total."""
    if not is_chain_ring(ring):
        raise NotAChainRing(ring.label)
    if not ideal.is_proper():
        raise UndefinedForZeroOrUnitIdeal(repr(ideal))
    if is_prime_set(ring, ideal.elements):
        return {"kind": "prime"}
    canon = canonical_generator_table(ring)
    gens = minimal_generators(ring, ideal.elements)
    assert len(gens) == 1
    return {"kind": "principal_pullback", "generator": canon[gens[0]]}
