import itertools

import pytest

from finring import _speedups_py
from finring.core import NilpotentAlgebra, ZMod, build_ring
from finring.errors import CapacityExceeded, NotAChainRing
from finring.kernels import (
    COMPILED,
    active_kernel,
    chain_kernel_tables,
    snf_one,
    snf_sweep,
    sweep_size,
)
from finring.snf import Matrix, diagonal_of, snf

CHAIN_DESCS = [ZMod(4), ZMod(9), NilpotentAlgebra(2, ("x",), 3, ())]


def test_active_kernel_name():
    assert active_kernel() in ("compiled", "python")
    assert (active_kernel() == "compiled") == COMPILED


def test_tables_cached_and_shaped():
    ring = build_ring(ZMod(9))
    t = chain_kernel_tables(ring)
    assert t is chain_kernel_tables(ring)
    assert t.size == 9
    assert len(t.add) == 81 and len(t.mul) == 81
    assert t.lq[1 * 9 + 3] == 3
    assert t.lq[3 * 9 + 1] == -1
    assert list(t.reps) == [1, 3]
    assert [t.vlen[x] for x in (0, 1, 3)] == [1, 9, 3]


def test_tables_reject_non_chain_ring():
    ring = build_ring(ZMod(6))
    with pytest.raises(NotAChainRing):
        chain_kernel_tables(ring)


def test_snf_one_matches_library_snf():
    for desc in CHAIN_DESCS:
        ring = build_ring(desc)
        n = ring.size
        for rows in itertools.product(range(n), repeat=4):
            mat = [list(rows[:2]), list(rows[2:])]
            code, diag = snf_one(ring, mat)
            assert code == 0
            assert list(diag) == diagonal_of(snf(Matrix(ring, mat))[1])


def test_sweep_size_formula():
    assert sweep_size(4, 2, 2, 2, False) == 256
    # orbit course: identity-leading runs shrink by one free digit per
    # canonical leading representative.
    assert sweep_size(4, 2, 2, 2, True) == 1 + 2 * (64 + 16 + 4 + 1)


def test_sweep_counts_without_orbit():
    for desc in CHAIN_DESCS:
        ring = build_ring(desc)
        res = snf_sweep(ring, 2, 2, orbit=False)
        assert res.ok
        assert res.checked == ring.size ** 4
        assert res.fail_matrix is None


def test_sweep_counts_with_orbit():
    for desc in CHAIN_DESCS:
        ring = build_ring(desc)
        t = chain_kernel_tables(ring)
        res = snf_sweep(ring, 2, 3, orbit=True)
        assert res.ok
        assert res.checked == sweep_size(ring.size, 2, 3, len(t.reps), True)
        assert res.shape == (2, 3)
        assert res.ring_label == ring.label


def test_sweep_cap():
    ring = build_ring(ZMod(9))
    with pytest.raises(CapacityExceeded):
        snf_sweep(ring, 3, 3, orbit=False, cap=1000)


def test_pure_python_kernel_agrees():
    for desc in CHAIN_DESCS:
        ring = build_ring(desc)
        t = chain_kernel_tables(ring)
        checked, code, bad = _speedups_py.snf_sweep(
            t.size, 2, 2, t.zero, t.one, t.add, t.sub, t.mul, t.lq, t.vlen,
            t.canon, t.cscale, t.is_unit, t.reps, True
        )
        assert code == 0 and bad is None
        assert checked == sweep_size(t.size, 2, 2, len(t.reps), True)
        for rows in [[0, 1, 2, 3], [3, 2, 1, 0], [2, 2, 2, 2]]:
            pc, pd = _speedups_py.snf_one(
                t.size, 2, 2, t.zero, t.one, t.add, t.sub, t.mul, t.lq,
                t.vlen, t.canon, t.cscale, t.is_unit, rows
            )
            kc, kd = snf_one(ring, [rows[:2], rows[2:]])
            assert (pc, list(pd)) == (kc, list(kd))


@pytest.mark.skipif(not COMPILED, reason="compiled kernel unavailable")
def test_compiled_kernel_selected_and_matches_python():
    from finring import _speedups

    ring = build_ring(ZMod(8))
    t = chain_kernel_tables(ring)
    fast = _speedups.snf_sweep(
        t.size, 2, 2, t.zero, t.one, t.add, t.sub, t.mul, t.lq, t.vlen,
        t.canon, t.cscale, t.is_unit, t.reps, True
    )
    slow = _speedups_py.snf_sweep(
        t.size, 2, 2, t.zero, t.one, t.add, t.sub, t.mul, t.lq, t.vlen,
        t.canon, t.cscale, t.is_unit, t.reps, True
    )
    assert fast[:2] == slow[:2]
