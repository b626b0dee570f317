"""Smith normal form over finite elementary divisor rings.

The matrix is split along the local factors, each factor is diagonalized by
pivoting on an entry of minimal valuation (the chain-ring case, where the
pivot divides everything it has to clear), the factors are recombined, and
the diagonal is rewritten with canonical ideal generators.  Every call
verifies P A Q = D, the divisibility chain, and invertibility before
returning.  Fitting ideals computed from minors give an independent check on
the diagonal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Ring, from_factor_indices, ideal_closure, local_factors
from .errors import NotEDR
from .ideals import Ideal, canonical_generator_table
from .properties import _chain_tables, edr_check


class Matrix:
    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            for x in r:
                if not 0 <= x < ring.size:
                    raise ValueError(f"entry {x} out of range")
        self.ring = ring
        self.rows = rows

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring is other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((id(self.ring), self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ring is not other.ring:
            raise ValueError("mixed rings")
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        ring = self.ring
        mul = ring.mul_table
        add = ring.add_table
        z = ring.zero
        out = []
        for i in range(m):
            row = []
            left = self.rows[i]
            for j in range(n):
                acc = z
                for t in range(k):
                    acc = add[acc][mul[left[t]][other.rows[t][j]]]
                row.append(acc)
            out.append(row)
        return Matrix(ring, out)

    def __repr__(self):
        return f"Matrix({self.ring.label}, {list(map(list, self.rows))})"


def det(matrix: Matrix):
    """Leibniz expansion; intended for the small invertibility checks."""
    m, n = matrix.shape
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    ring = matrix.ring
    mul = ring.mul_table
    acc = ring.zero
    for perm in itertools.permutations(range(n)):
        term = ring.one
        for i, j in enumerate(perm):
            term = mul[term][matrix.rows[i][j]]
        sign = 0
        for i, j in itertools.combinations(range(n), 2):
            if perm[i] > perm[j]:
                sign ^= 1
        acc = ring.add(acc, ring.neg(term) if sign else term)
    return acc


def is_invertible(matrix: Matrix) -> bool:
    m, n = matrix.shape
    return m == n and det(matrix) in matrix.ring.cache.setdefault(
        "unit_set", frozenset(matrix.ring.units)
    )


# ---------------------------------------------------------------------------
# the chain-ring core


def _snf_chain(fr: Ring, rows):
    """Diagonalize over a chain ring.  Returns (P, A, Q) as lists of lists
    with P A_in Q = A_out.  The pivot is the first entry (row-major) whose
    principal ideal is largest; it divides every remaining entry, so one
    elimination pass per pivot suffices."""
    ps, lq = _chain_tables(fr)
    sub = fr.sub
    mul = fr.mul_table
    z, o = fr.zero, fr.one
    m, n = len(rows), len(rows[0])
    a = [list(r) for r in rows]
    p = [[o if i == j else z for j in range(m)] for i in range(m)]
    q = [[o if i == j else z for j in range(n)] for i in range(n)]
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                size = len(ps[a[i][j]])
                if best is None or size > best[0]:
                    best = (size, i, j)
        _, bi, bj = best
        if a[bi][bj] == z:
            break
        if bi != k:
            a[k], a[bi] = a[bi], a[k]
            p[k], p[bi] = p[bi], p[k]
        if bj != k:
            for row in a:
                row[k], row[bj] = row[bj], row[k]
            for row in q:
                row[k], row[bj] = row[bj], row[k]
        piv = a[k][k]
        for i in range(k + 1, m):
            x = a[i][k]
            if x == z:
                continue
            c = lq[piv][x]
            arow, krow = a[i], a[k]
            for j in range(k, n):
                arow[j] = sub(arow[j], mul[c][krow[j]])
            prow, pkrow = p[i], p[k]
            for j in range(m):
                prow[j] = sub(prow[j], mul[c][pkrow[j]])
        for j in range(k + 1, n):
            x = a[k][j]
            if x == z:
                continue
            c = lq[piv][x]
            for i in range(m):
                a[i][j] = sub(a[i][j], mul[c][a[i][k]])
            for i in range(n):
                q[i][j] = sub(q[i][j], mul[c][q[i][k]])
    return p, a, q


def _canonical_scalers(ring: Ring):
    """scale[x] = least unit u with x*u the canonical generator of (x)."""
    hit = ring.cache.get("canon_scale")
    if hit is not None:
        return hit
    canon = canonical_generator_table(ring)
    mul = ring.mul_table
    scale = [None] * ring.size
    for x in range(ring.size):
        target = canon[x]
        for u in ring.units:
            if mul[x][u] == target:
                scale[x] = u
                break
        if scale[x] is None:
            raise AssertionError("generators of one ideal must be associates")
    ring.cache["canon_scale"] = scale
    return scale


def edr_verdict(ring: Ring) -> bool:
    hit = ring.cache.get("edr_verdict")
    if hit is None:
        hit = edr_check(ring).holds
        ring.cache["edr_verdict"] = hit
    return hit


def snf(matrix: Matrix):
    """(P, D, Q) with P A Q = D, P and Q invertible, the diagonal a
    divisibility chain in canonical generators.  Raises NotEDR when the ring
    fails edr_check."""
    ring = matrix.ring
    if not edr_verdict(ring):
        raise NotEDR(ring.label)
    m, n = matrix.shape
    facs = local_factors(ring)
    locals_ = []
    for fac in facs:
        proj = fac.ring.project
        locals_.append(_snf_chain(fac.ring, [[proj[x] for x in row] for row in matrix.rows]))

    def recombine(pick, rows_, cols_):
        return [
            [
                from_factor_indices(ring, [pick(loc)[i][j] for loc in locals_])
                for j in range(cols_)
            ]
            for i in range(rows_)
        ]

    p = recombine(lambda t: t[0], m, m)
    d = recombine(lambda t: t[1], m, n)
    q = recombine(lambda t: t[2], n, n)

    scale = _canonical_scalers(ring)
    canon = canonical_generator_table(ring)
    mul = ring.mul_table
    for k in range(min(m, n)):
        x = d[k][k]
        if canon[x] == x:
            continue
        u = scale[x]
        d[k][k] = mul[x][u]
        p[k] = [mul[u][v] for v in p[k]]

    pm, dm, qm = Matrix(ring, p), Matrix(ring, d), Matrix(ring, q)
    _verify(matrix, pm, dm, qm)
    return pm, dm, qm


def _verify(a: Matrix, p: Matrix, d: Matrix, q: Matrix):
    ring = a.ring
    if (p @ a) @ q != d:
        raise AssertionError("PAQ != D")
    m, n = d.shape
    diag = [d.rows[k][k] for k in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j and d.rows[i][j] != ring.zero:
                raise AssertionError("D not diagonal")
    mul = ring.mul_table
    for prev, nxt in zip(diag, diag[1:]):
        if nxt not in frozenset(mul[prev]):
            raise AssertionError("diagonal not a divisibility chain")
    if not is_invertible(p) or not is_invertible(q):
        raise AssertionError("P or Q not invertible")


def diagonal_of(d: Matrix):
    m, n = d.shape
    return [d.rows[k][k] for k in range(min(m, n))]


# ---------------------------------------------------------------------------
# Fitting ideals: the minor-gcd oracle


def _minor_dets(matrix: Matrix, k: int):
    m, n = matrix.shape
    ring = matrix.ring
    out = []
    for rows_ in itertools.combinations(range(m), k):
        for cols_ in itertools.combinations(range(n), k):
            sub = Matrix(ring, [[matrix.rows[i][j] for j in cols_] for i in rows_])
            out.append(det(sub))
    return out


def fitting_ideals(matrix: Matrix):
    """The chain of determinantal ideals F_1 >= F_2 >= ..., computed from the
    original matrix alone."""
    m, n = matrix.shape
    ring = matrix.ring
    return [
        Ideal(ring, ideal_closure(ring, _minor_dets(matrix, k)))
        for k in range(1, min(m, n) + 1)
    ]


def fitting_check(matrix: Matrix, d: Matrix) -> bool:
    """Does the k-th determinantal ideal equal (d_1 ... d_k) for every k?"""
    ring = matrix.ring
    mul = ring.mul_table
    running = ring.one
    for k, fit in enumerate(fitting_ideals(matrix), start=1):
        running = mul[running][diagonal_of(d)[k - 1]]
        if fit.elements != frozenset(mul[running]):
            return False
    return True
