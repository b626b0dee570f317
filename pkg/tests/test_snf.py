import itertools
import random

import pytest

from finring.core import NilpotentAlgebra, Product, ZMod, build_ring
from finring.errors import NotEDR
from finring.ideals import canonical_generator_reps, ideal_closure
from finring.snf import (
    Matrix,
    det,
    diagonal_of,
    fitting_check,
    fitting_ideals,
    is_invertible,
    snf,
)


def full_check(mat):
    p, d, q = snf(mat)
    ring = mat.ring
    assert (p @ mat) @ q == d
    assert is_invertible(p)
    assert is_invertible(q)
    diag = diagonal_of(d)
    reps = set(canonical_generator_reps(ring))
    assert set(diag) <= reps
    for prev, nxt in zip(diag, diag[1:]):
        assert nxt in ring.mul_table[prev]
    assert fitting_check(mat, d)
    return diag


def test_worked_examples():
    z6 = build_ring(ZMod(6))
    assert full_check(Matrix(z6, [[2, 3], [4, 1]])) == [1, 2]
    assert full_check(Matrix(z6, [[2, 0], [0, 3]])) == [1, 0]
    assert full_check(Matrix.identity(z6, 2)) == [1, 1]


def test_exhaustive_two_by_two_over_z4():
    z4 = build_ring(ZMod(4))
    for rows in itertools.product(range(4), repeat=4):
        mat = Matrix(z4, [rows[:2], rows[2:]])
        full_check(mat)


def test_rectangular_shapes():
    z4 = build_ring(ZMod(4))
    wide = Matrix(z4, [[1, 2, 3], [0, 2, 1]])
    p, d, q = snf(wide)
    assert p.shape == (2, 2)
    assert d.shape == (2, 3)
    assert q.shape == (3, 3)
    tall = Matrix(z4, [[1, 2], [3, 0], [2, 2]])
    p, d, q = snf(tall)
    assert p.shape == (3, 3)
    assert d.shape == (3, 2)
    assert q.shape == (2, 2)
    full_check(wide)
    full_check(tall)


def test_not_edr_raises():
    ring = build_ring(NilpotentAlgebra(2, ("x", "y"), 2, ()))
    mat = Matrix.identity(ring, 2)
    with pytest.raises(NotEDR):
        snf(mat)


def test_matrix_validation():
    z4 = build_ring(ZMod(4))
    with pytest.raises(ValueError):
        Matrix(z4, [])
    with pytest.raises(ValueError):
        Matrix(z4, [[]])
    with pytest.raises(ValueError):
        Matrix(z4, [[1, 2], [3]])
    with pytest.raises(ValueError):
        Matrix(z4, [[1, 4]])
    with pytest.raises(ValueError):
        Matrix(z4, [[1, -1]])
    a = Matrix(z4, [[1, 2]])
    b = Matrix(z4, [[1, 2]])
    assert a == b and hash(a) == hash(b)
    assert a != Matrix(z4, [[2, 1]])
    with pytest.raises(ValueError):
        a @ a


def test_det_matches_integer_determinant():
    z6 = build_ring(ZMod(6))
    rng = random.Random(7)
    for _ in range(40):
        rows = [[rng.randrange(6) for _ in range(3)] for _ in range(3)]
        mat = Matrix(z6, rows)
        a, b, c = rows[0]
        d_, e, f = rows[1]
        g, h, i = rows[2]
        want = (a * (e * i - f * h) - b * (d_ * i - f * g) + c * (d_ * h - e * g)) % 6
        assert det(mat) == want
        assert is_invertible(mat) == (want in (1, 5))
    with pytest.raises(ValueError):
        det(Matrix(z6, [[1, 2, 3], [4, 5, 0]]))


def test_fitting_ideals_of_diagonal():
    z6 = build_ring(ZMod(6))
    mat = Matrix(z6, [[2, 0], [0, 3]])
    f1, f2 = fitting_ideals(mat)
    assert f1.elements == ideal_closure(z6, (2, 3))
    assert f2.elements == ideal_closure(z6, (0,))
    assert not fitting_check(mat, Matrix(z6, [[2, 0], [0, 3]]))


def test_random_four_by_four_over_product_ring():
    ring = build_ring(Product((ZMod(4), ZMod(3))))
    rng = random.Random(20260814)
    for _ in range(40):
        rows = [[rng.randrange(ring.size) for _ in range(4)] for _ in range(4)]
        full_check(Matrix(ring, rows))


def test_diagonal_stable_under_unit_scaling():
    z6 = build_ring(ZMod(6))
    rng = random.Random(3)
    units = sorted(z6.units)
    for _ in range(25):
        rows = [[rng.randrange(6) for _ in range(2)] for _ in range(2)]
        mat = Matrix(z6, rows)
        base = diagonal_of(snf(mat)[1])
        u = rng.choice(units)
        scaled = Matrix(z6, [[z6.mul(u, x) for x in row] for row in rows])
        assert diagonal_of(snf(scaled)[1]) == base
