import pytest

from finring.core import NilpotentAlgebra, Product, ZMod, build_ring
from finring.errors import (
    NotAChainRing,
    NotArithmetical,
    UndefinedForZeroOrUnitIdeal,
)
from finring.fpinjective import (
    IdealHom,
    baer_self_injective,
    double_annihilator_check,
    fractionally_if_check,
    quotval_classify,
    sharp,
    strongly_discrete_check,
)
from finring.ideals import Ideal, all_ideals, annihilator

KXY = NilpotentAlgebra(2, ("x", "y"), 2, ())

SELF_INJECTIVE = [ZMod(n) for n in (2, 4, 6, 8, 9, 12, 30)] + [
    Product((ZMod(4), ZMod(9))),
    NilpotentAlgebra(3, ("t",), 2, ()),
]


def principal_ideal(ring, g):
    return Ideal.generated(ring, [g])


def test_baer_holds_on_principal_quotients():
    for desc in SELF_INJECTIVE:
        ring = build_ring(desc)
        assert baer_self_injective(ring).holds, ring.label


def test_baer_counterexample_shape():
    ring = build_ring(KXY)
    rep = baer_self_injective(ring)
    assert not rep.holds
    ideal_elems = rep.counterexample["ideal"]
    table = rep.counterexample["hom"]
    ideal = Ideal(ring, frozenset(ideal_elems))
    hom = IdealHom(ring, ideal, table)
    for scale in range(ring.size):
        extends = all(
            table[a] == ring.mul(scale, a) for a in ideal_elems
        )
        assert not extends
    assert hom.table == table


def test_double_annihilator():
    for desc in SELF_INJECTIVE:
        assert double_annihilator_check(build_ring(desc)).holds
    ring = build_ring(KXY)
    rep = double_annihilator_check(ring)
    assert not rep.holds
    bad = frozenset(rep.counterexample["ideal"])
    dbl = annihilator(ring, annihilator(ring, bad).elements)
    assert tuple(sorted(dbl.elements)) == rep.counterexample["double_annihilator"]
    assert bad < dbl.elements


def test_hom_count_matches_annihilator_index():
    for desc in SELF_INJECTIVE:
        ring = build_ring(desc)
        for ideal in all_ideals(ring):
            ann = annihilator(ring, ideal.elements)
            assert ring.size % len(ann.elements) == 0


def test_fractionally_if():
    for desc in SELF_INJECTIVE:
        assert fractionally_if_check(build_ring(desc)).holds, desc
    ring = build_ring(NilpotentAlgebra(2, ("x",), 4, ()))
    assert fractionally_if_check(ring).holds
    kxy = build_ring(KXY)
    rep = fractionally_if_check(kxy)
    assert not rep.holds
    assert rep.counterexample["ideal"] == [0]


def test_sharp_examples():
    z8 = build_ring(ZMod(8))
    maximal = principal_ideal(z8, 2)
    assert sharp(z8, maximal).elements == {0, 2, 4, 6}
    assert sharp(z8, principal_ideal(z8, 4)).elements == {0, 2, 4, 6}
    z4 = build_ring(ZMod(4))
    assert sharp(z4, principal_ideal(z4, 2)).elements == {0, 2}


def test_sharp_guards():
    z6 = build_ring(ZMod(6))
    with pytest.raises(NotAChainRing):
        sharp(z6, principal_ideal(z6, 2))
    z8 = build_ring(ZMod(8))
    with pytest.raises(UndefinedForZeroOrUnitIdeal):
        sharp(z8, principal_ideal(z8, 0))
    with pytest.raises(UndefinedForZeroOrUnitIdeal):
        sharp(z8, principal_ideal(z8, 1))


def test_strongly_discrete():
    for desc in (ZMod(8), ZMod(12), ZMod(30), Product((ZMod(4), ZMod(3)))):
        assert strongly_discrete_check(build_ring(desc)).holds
    with pytest.raises(NotArithmetical):
        strongly_discrete_check(build_ring(KXY))


def test_quotval_examples():
    z8 = build_ring(ZMod(8))
    out = quotval_classify(z8, principal_ideal(z8, 4))
    assert out == {"kind": "principal_pullback", "generator": 4}
    assert quotval_classify(z8, principal_ideal(z8, 2)) == {"kind": "prime"}
    z9 = build_ring(ZMod(9))
    assert quotval_classify(z9, principal_ideal(z9, 3)) == {"kind": "prime"}


def test_quotval_guards_and_degenerate_zero():
    z6 = build_ring(ZMod(6))
    with pytest.raises(NotAChainRing):
        quotval_classify(z6, principal_ideal(z6, 2))
    z8 = build_ring(ZMod(8))
    with pytest.raises(UndefinedForZeroOrUnitIdeal):
        quotval_classify(z8, principal_ideal(z8, 1))
    z5 = build_ring(ZMod(5))
    assert quotval_classify(z5, principal_ideal(z5, 0)) == {"kind": "prime"}
    out = quotval_classify(z8, principal_ideal(z8, 0))
    assert out == {"kind": "principal_pullback", "generator": 0}


def test_ideal_hom_validation():
    z4 = build_ring(ZMod(4))
    ideal = principal_ideal(z4, 2)
    IdealHom(z4, ideal, {0: 0, 2: 2})
    with pytest.raises(ValueError):
        IdealHom(z4, ideal, {0: 0})
    with pytest.raises(ValueError):
        IdealHom(z4, ideal, {0: 0, 2: 1})
