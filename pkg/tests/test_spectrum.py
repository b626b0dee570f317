import itertools

import pytest

from finring.core import (
    NilpotentAlgebra,
    Product,
    ZMod,
    build_ring,
    rings_isomorphic,
)
from finring.errors import NotAHomomorphism, SamePoint
from finring.ideals import Ideal, all_ideals
from finring.spectrum import (
    RingHom,
    boolean_ring,
    clopen_union_idempotent,
    gelfand_check,
    idempotent_generator,
    is_pure,
    kernel_0P,
    pspec,
    pure_intersection_condition,
    pure_multiplier_for,
    pure_saturation_check,
    separating_idempotent,
    spec,
    stalk_at,
    tau,
    x_of,
)


def lits(ring, elements):
    return sorted(ring.values[i] for i in elements)


def test_spec_of_small_zmods():
    z6 = build_ring(ZMod(6))
    points = spec(z6)
    assert sorted(lits(z6, p.prime.elements) for p in points) == [
        [0, 2, 4],
        [0, 3],
    ]
    for p in points:
        assert p.is_maximal and p.is_minimal

    z4 = build_ring(ZMod(4))
    points4 = spec(z4)
    assert len(points4) == 1
    assert lits(z4, points4[0].prime.elements) == [0, 2]


def test_spec_of_local_algebra():
    kxy = build_ring(NilpotentAlgebra(2, ("x", "y"), 2, ()))
    points = spec(kxy)
    assert len(points) == 1
    assert points[0].prime.elements == kxy.nilpotents


def test_spec_closed_sets_are_up_sets():
    z30 = build_ring(ZMod(30))
    points = spec(z30)
    assert len(points) == 3
    for p, q in itertools.product(points, repeat=2):
        if p.prime.elements < q.prime.elements:
            pytest.fail("z30 primes are incomparable")


def test_pspec_blocks_of_products():
    ring = build_ring(Product((ZMod(4), ZMod(9))))
    blocks = pspec(ring)
    assert len(blocks) == 2
    pure_sets = sorted(lits(ring, b.pure_ideal.elements) for b in blocks)
    assert pure_sets == [
        [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8)],
        [(0, 0), (1, 0), (2, 0), (3, 0)],
    ]


def test_pspec_local_ring_single_block():
    z8 = build_ring(ZMod(8))
    blocks = pspec(z8)
    assert len(blocks) == 1
    assert blocks[0].pure_ideal.is_zero()


def test_purity_on_z6():
    z6 = build_ring(ZMod(6))
    even = Ideal(z6, frozenset({0, 2, 4}))
    assert is_pure(z6, even).holds
    assert idempotent_generator(z6, even) == z6.index[4]
    t = pure_multiplier_for(z6, even, even.sorted_elements())
    assert t is not None
    for a in even.sorted_elements():
        assert z6.mul(t, a) == a
    ok, _ = pure_intersection_condition(z6, even)
    assert ok


def test_impurity_on_z4():
    z4 = build_ring(ZMod(4))
    half = Ideal(z4, frozenset({0, 2}))
    res = is_pure(z4, half)
    assert not res.holds
    assert idempotent_generator(z4, half) is None
    assert pure_multiplier_for(z4, half, half.sorted_elements()) is None


def test_pure_ideals_count_matches_idempotents():
    for n in (6, 12, 30):
        ring = build_ring(ZMod(n))
        pures = [i for i in all_ideals(ring) if is_pure(ring, i).holds]
        assert len(pures) == len(ring.idempotents)


def test_pure_saturation():
    z6 = build_ring(ZMod(6))
    points = spec(z6)
    for r in range(len(points) + 1):
        for chosen in itertools.combinations(points, r):
            ideal = pure_saturation_check(z6, chosen)
            assert ideal is not None
            assert is_pure(z6, ideal).holds


def test_kernel_0p_on_z6():
    z6 = build_ring(ZMod(6))
    by_set = {frozenset(p.prime.elements): p for p in spec(z6)}
    even = by_set[frozenset({0, 2, 4})]
    odd3 = by_set[frozenset({0, 3})]
    assert lits(z6, kernel_0P(z6, even).elements) == [0, 2, 4]
    assert lits(z6, kernel_0P(z6, odd3).elements) == [0, 3]


def test_boolean_ring_and_x():
    z30 = build_ring(ZMod(30))
    b = boolean_ring(z30)
    assert b.size == 8
    assert len(x_of(z30)) == 3
    for e in range(b.size):
        assert b.mul(e, e) == e


def test_tau_bijective_and_stalks():
    for desc in (ZMod(6), ZMod(12), Product((ZMod(4), ZMod(3)))):
        ring = build_ring(desc)
        pairs = tau(ring)
        assert len(pairs) == len(pspec(ring)) == len(x_of(ring))
        for block, xi in pairs.items():
            st = stalk_at(ring, xi)
            assert rings_isomorphic(st, ring.quotient(block.pure_ideal.elements))


def test_separating_idempotent():
    z6 = build_ring(ZMod(6))
    b1, b2 = pspec(z6)
    e = separating_idempotent(z6, b1, b2)
    assert z6.mul(e, e) == e
    assert all(e in p.prime.elements for p in b1.primes) or all(
        e in p.prime.elements for p in b2.primes
    )
    with pytest.raises(SamePoint):
        separating_idempotent(z6, b1, b1)


def test_clopen_union_idempotent():
    z30 = build_ring(ZMod(30))
    blocks = pspec(z30)
    assert clopen_union_idempotent(z30, []) == z30.zero
    assert clopen_union_idempotent(z30, blocks) == z30.one
    for block in blocks:
        e = clopen_union_idempotent(z30, [block])
        assert e is not None and z30.mul(e, e) == e


def test_gelfand():
    for desc in (ZMod(4), ZMod(6), ZMod(30)):
        holds, _ = gelfand_check(build_ring(desc))
        assert holds


def test_ring_hom_validation():
    z6 = build_ring(ZMod(6))
    z2 = build_ring(ZMod(2))
    images = [v % 2 for v in z6.values]
    hom = RingHom(z6, z2, images)
    assert hom.images[z6.one] == z2.one
    with pytest.raises(NotAHomomorphism):
        RingHom(z6, z2, [0 for _ in z6.values])
    with pytest.raises(NotAHomomorphism):
        RingHom(z6, z2, [1 for _ in z6.values])
