import pytest

from finring.core import (
    NilpotentAlgebra,
    Product,
    ZMod,
    build_ring,
    value_from_literal,
)
from finring.errors import NotAChainRing
from finring.ideals import Ideal, ideal_closure
from finring.properties import (
    almost_clean_check,
    almost_clean_decomposition,
    arithmetical_check,
    bezout_check,
    clean_check,
    clean_decomposition,
    edr_check,
    gh_triple_check,
    gh_triple_witness,
    hermite_check,
    hermite_witness,
    hermite_witness_via_gluing,
    is_chain_ring,
    loalclean_equiv,
    phi_set,
    pp_check,
    pp_decomposition,
    total_quotient_note,
    unimodular,
)

KXY = NilpotentAlgebra(2, ("x", "y"), 2, ())

BEZOUT_RINGS = [ZMod(n) for n in (2, 3, 4, 6, 8, 9, 12, 30)] + [
    Product((ZMod(4), ZMod(9))),
    NilpotentAlgebra(2, ("x",), 3, ()),
]


def test_bezout_on_principal_ideal_quotients():
    for desc in BEZOUT_RINGS:
        ring = build_ring(desc)
        rep = bezout_check(ring)
        assert rep.holds, ring.label
        assert bool(rep)


def test_bezout_counterexample_on_two_variable_algebra():
    ring = build_ring(KXY)
    rep = bezout_check(ring)
    assert not rep.holds
    a, b = rep.counterexample
    joint = ideal_closure(ring, (a, b))
    principal = {frozenset(ring.mul_table[x]) for x in range(ring.size)}
    assert joint not in principal


def test_hermite_matches_bezout_here():
    for desc in BEZOUT_RINGS + [KXY]:
        ring = build_ring(desc)
        assert hermite_check(ring).holds == bezout_check(ring).holds, ring.label


def test_hermite_witness_values():
    z6 = build_ring(ZMod(6))
    assert hermite_witness(z6, 0, 0) == (0, 0, 1)
    for a in range(6):
        for b in range(6):
            d, ap, bp = hermite_witness(z6, a, b)
            assert z6.mul(d, ap) == a
            assert z6.mul(d, bp) == b
            assert unimodular(z6, (ap, bp))


def test_hermite_witness_is_least():
    z4 = build_ring(ZMod(4))
    for a in range(4):
        for b in range(4):
            got = hermite_witness(z4, a, b)
            want = None
            for d in range(4):
                for ap in range(4):
                    for bp in range(4):
                        if (
                            z4.mul(d, ap) == a
                            and z4.mul(d, bp) == b
                            and unimodular(z4, (ap, bp))
                        ):
                            want = (d, ap, bp)
                            break
                    if want:
                        break
                if want:
                    break
            assert got == want


def test_hermite_witness_absent_on_two_variable_algebra():
    ring = build_ring(KXY)
    x = ring.index[value_from_literal(KXY, [0, 1, 0])]
    y = ring.index[value_from_literal(KXY, [0, 0, 1])]
    assert hermite_witness(ring, x, y) is None
    with pytest.raises(NotAChainRing):
        hermite_witness_via_gluing(ring, x, y)


def test_gh_triple_holds_even_without_bezout():
    for desc in BEZOUT_RINGS + [KXY]:
        ring = build_ring(desc)
        assert gh_triple_check(ring).holds, ring.label


def test_gh_triple_witness_equation():
    z6 = build_ring(ZMod(6))
    for a, b, c in [(1, 0, 0), (2, 3, 0), (2, 0, 3), (4, 3, 2), (5, 5, 5)]:
        s, t, x, y = gh_triple_witness(z6, a, b, c)
        lhs = z6.element_sum(
            [z6.mul(z6.mul(a, s), x), z6.mul(z6.mul(b, t), x), z6.mul(z6.mul(c, t), y)]
        )
        assert lhs == z6.one
    assert gh_triple_witness(z6, 2, 2, 2) is None
    assert gh_triple_witness(z6, 0, 0, 0) is None


def test_edr_verdicts():
    for desc in BEZOUT_RINGS:
        ring = build_ring(desc)
        rep = edr_check(ring)
        assert rep.property == "elementary_divisor"
        assert rep.holds, ring.label
        assert rep.counterexample is None
    rep = edr_check(build_ring(KXY))
    assert not rep.holds
    assert set(rep.counterexample) == {"hermite"}


def test_arithmetical_verdicts():
    for desc in BEZOUT_RINGS:
        assert arithmetical_check(build_ring(desc)).holds
    ring = build_ring(KXY)
    rep = arithmetical_check(ring)
    assert not rep.holds
    left, right = rep.counterexample
    assert isinstance(left, Ideal) and isinstance(right, Ideal)
    assert left.ring is ring and right.ring is ring
    assert not left.elements <= right.elements
    assert not right.elements <= left.elements


def test_is_chain_ring():
    for n in (2, 3, 4, 5, 8, 9, 25, 27):
        assert is_chain_ring(build_ring(ZMod(n)))
    assert is_chain_ring(build_ring(NilpotentAlgebra(2, ("x",), 3, ())))
    for desc in (ZMod(6), ZMod(12), KXY, Product((ZMod(2), ZMod(2)))):
        assert not is_chain_ring(build_ring(desc))


def test_clean_and_almost_clean_hold_everywhere_here():
    for desc in BEZOUT_RINGS + [KXY]:
        ring = build_ring(desc)
        assert clean_check(ring).holds
        assert almost_clean_check(ring).holds


def test_clean_decomposition_is_least_and_valid():
    for desc in (ZMod(6), ZMod(12), KXY):
        ring = build_ring(desc)
        units = frozenset(ring.units)
        for a in range(ring.size):
            e, u = clean_decomposition(ring, a)
            assert ring.mul(e, e) == e
            assert u in units
            assert ring.add(e, u) == a
            least = next(
                f for f in ring.idempotents if ring.sub(a, f) in units
            )
            assert e == least


def test_almost_clean_decomposition_valid():
    z12 = build_ring(ZMod(12))
    regs = frozenset(z12.regulars)
    for a in range(12):
        e, s = almost_clean_decomposition(z12, a)
        assert ring_is_idempotent(z12, e)
        assert s in regs
        assert z12.add(e, s) == a


def ring_is_idempotent(ring, e):
    return ring.mul(e, e) == e


def test_pp_verdicts():
    for n in (2, 3, 6, 30):
        assert pp_check(build_ring(ZMod(n))).holds
    for desc in (ZMod(4), ZMod(8), ZMod(12), KXY):
        rep = pp_check(build_ring(desc))
        assert not rep.holds
        ring = build_ring(desc)
        assert pp_decomposition(ring, rep.counterexample) is None


def test_pp_decomposition_on_product_of_fields():
    z30 = build_ring(ZMod(30))
    regs = frozenset(z30.regulars)
    for a in range(30):
        e, s = pp_decomposition(z30, a)
        assert ring_is_idempotent(z30, e)
        assert s in regs
        assert z30.mul(e, s) == a


def test_loalclean_equiv():
    for n in (2, 4, 8, 9, 27):
        rep = loalclean_equiv(build_ring(ZMod(n)))
        assert rep.holds
        assert rep.witness == {"conditions": (True, True, True)}
    rep = loalclean_equiv(build_ring(ZMod(6)))
    assert not rep.holds
    assert rep.counterexample["element"] == 3
    assert rep.counterexample["comaximal"] is not None
    zero_ring = build_ring(ZMod(4)).quotient(frozenset(range(4)), label="zero")
    with pytest.raises(ValueError):
        loalclean_equiv(zero_ring)


def test_phi_set_sizes():
    assert len(phi_set(build_ring(ZMod(6)))) == 2
    assert len(phi_set(build_ring(ZMod(4)))) == 1
    assert len(phi_set(build_ring(ZMod(30)))) == 3
    assert len(phi_set(build_ring(ZMod(5)))) == 1


def test_total_quotient_note():
    note = total_quotient_note(build_ring(ZMod(8)))
    assert note.regulars_are_units
    assert note.valuation is True
    assert note.almost_clean_indecomposable is True
    note = total_quotient_note(build_ring(ZMod(6)))
    assert note.regulars_are_units
    assert note.valuation is False
    note = total_quotient_note(build_ring(KXY))
    assert note.regulars_are_units
    assert note.valuation is None
