import pytest

from finring.core import NilpotentAlgebra, Product, ZMod, build_ring
from finring.errors import CapacityExceeded
from finring.ideals import (
    Ideal,
    all_ideals,
    annihilator,
    canonical_generator_reps,
    canonical_generator_table,
    is_prime_set,
    minimal_generators,
)


def lits(ring, elements):
    return sorted(ring.values[i] for i in elements)


def test_all_ideals_of_z12():
    z12 = build_ring(ZMod(12))
    ideals = all_ideals(z12)
    sets = sorted(lits(z12, i.elements) for i in ideals)
    assert sets == [
        [0],
        list(range(12)),
        [0, 2, 4, 6, 8, 10],
        [0, 3, 6, 9],
        [0, 4, 8],
        [0, 6],
    ]


def test_all_ideals_cached_and_ordered():
    ring = build_ring(ZMod(8))
    first = all_ideals(ring)
    assert all_ideals(ring) is first
    sizes = [len(i.elements) for i in first]
    assert sizes == sorted(sizes)


def test_ideal_generated():
    z12 = build_ring(ZMod(12))
    i = Ideal.generated(z12, [8])
    assert lits(z12, i.elements) == [0, 4, 8]
    assert lits(z12, Ideal.generated(z12, []).elements) == [0]


def test_prime_detection_on_z6():
    z6 = build_ring(ZMod(6))
    assert is_prime_set(z6, frozenset({0, 2, 4}))
    assert is_prime_set(z6, frozenset({0, 3}))
    assert not is_prime_set(z6, frozenset({0}))
    assert not is_prime_set(z6, frozenset(range(6)))


def test_prime_detection_catches_products_of_nonmembers():
    z4 = build_ring(ZMod(4))
    assert not is_prime_set(z4, frozenset({0}))
    assert is_prime_set(z4, frozenset({0, 2}))


def test_annihilator():
    z4 = build_ring(ZMod(4))
    ann = annihilator(z4, frozenset({0, 2}))
    assert lits(z4, ann.elements) == [0, 2]
    z6 = build_ring(ZMod(6))
    ann = annihilator(z6, frozenset({0, 3}))
    assert lits(z6, ann.elements) == [0, 2, 4]


def test_double_annihilator_is_identity_here():
    for n in (4, 6, 8, 9, 12):
        ring = build_ring(ZMod(n))
        for ideal in all_ideals(ring):
            back = annihilator(ring, annihilator(ring, ideal.elements).elements)
            assert back.elements == ideal.elements


def test_minimal_generators():
    z12 = build_ring(ZMod(12))
    full = frozenset(range(12))
    even = frozenset({0, 2, 4, 6, 8, 10})
    assert minimal_generators(z12, even) == [z12.index[2]]
    assert minimal_generators(z12, full) == [z12.one]
    assert minimal_generators(z12, frozenset({z12.zero})) == [z12.zero]


def test_minimal_generators_two_generator_ideal():
    kxy = build_ring(NilpotentAlgebra(2, ("x", "y"), 2, ()))
    nil = frozenset(kxy.nilpotents)
    gens = minimal_generators(kxy, nil)
    assert len(gens) == 2


def test_canonical_generator_table():
    z9 = build_ring(ZMod(9))
    canon = canonical_generator_table(z9)
    for a in range(9):
        principal = frozenset(z9.mul_table[a])
        canonical = frozenset(z9.mul_table[canon[a]])
        assert principal == canonical
    assert sorted(set(z9.values[c] for c in canon)) == [0, 1, 3]


def test_canonical_generator_reps():
    z9 = build_ring(ZMod(9))
    reps = canonical_generator_reps(z9)
    assert sorted(z9.values[r] for r in reps) == [0, 1, 3]
    z6 = build_ring(ZMod(6))
    reps6 = canonical_generator_reps(z6)
    assert len(reps6) == len(all_ideals(z6))


def test_ideal_cap():
    ring = build_ring(Product((ZMod(4), ZMod(4), ZMod(9))))
    ring.cache.pop("all_ideals", None)
    with pytest.raises(CapacityExceeded):
        all_ideals(ring, 5)
    ring.cache.pop("all_ideals", None)


def test_quotient_ideals_lift():
    z12 = build_ring(ZMod(12))
    q = z12.quotient(frozenset({0, 4, 8}))
    assert len(all_ideals(q)) == 3
