"""Eventually-constant sequence rings and the Z (+) (Z/2)^(N) ring.

Elements of a sequence ring live in a product of finite rings R_0, R_1, ...
(periodic pattern) and are pinned down by finitely many exceptional
coordinates plus a tail value that fixes every later coordinate.  The tail
values form either the integers (reduced mod each pattern modulus) or a
finite ring equipped with one verified reduction homomorphism per pattern
position, so all arithmetic stays exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import Ring, ZMod, NilpotentAlgebra, build_ring, ideal_closure
from .errors import NotInAnnihilator, SamePoint
from .spectrum import RingHom


class IntegerTail:
    """Tails drawn from Z; coordinate reduction is mod the pattern modulus.
    Stored values are canonical mod lcm(moduli), which identifies exactly
    the integers that agree on every coordinate."""

    def __init__(self, moduli):
        self.moduli = tuple(moduli)
        self.lcm = math.lcm(*self.moduli)

    def canon(self, t):
        return t % self.lcm

    def reduce(self, t, position):
        return t % self.moduli[position]

    def add(self, s, t):
        return (s + t) % self.lcm

    def sub(self, s, t):
        return (s - t) % self.lcm

    def mul(self, s, t):
        return (s * t) % self.lcm

    zero = 0
    one = 1

    def values(self):
        return range(self.lcm)

    def describe(self, t):
        return str(t)


class FiniteTail:
    """Tails drawn from a finite ring T with a reduction hom onto each
    pattern position.  The homs are verified on construction, so products
    of tails reduce correctly at every coordinate by construction; the
    combined reduction over one period must be injective, which makes the
    stored form canonical."""

    def __init__(self, ring: Ring, base_rings, reductions):
        self.ring = ring
        self.reductions = tuple(tuple(r) for r in reductions)
        for base, images in zip(base_rings, self.reductions):
            RingHom(ring, base, images)
        seen = {}
        for t in range(ring.size):
            key = tuple(r[t] for r in self.reductions)
            if key in seen:
                raise ValueError("tail domain does not embed over one period")
            seen[key] = t

    def canon(self, t):
        return t

    def reduce(self, t, position):
        return self.reductions[position][t]

    def add(self, s, t):
        return self.ring.add(s, t)

    def sub(self, s, t):
        return self.ring.add(s, self.ring.neg(t))

    def mul(self, s, t):
        return self.ring.mul(s, t)

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    def values(self):
        return range(self.ring.size)

    def describe(self, t):
        return str(self.ring.values[t])


class SeqRing:
    """The ring of sequences over a periodic pattern of finite rings that
    eventually follow a tail value."""

    def __init__(self, base_rings, tail, label):
        self.base_rings = tuple(base_rings)
        self.period = len(self.base_rings)
        self.tail = tail
        self.label = label

    def __repr__(self):
        return f"SeqRing({self.label})"

    def coordinate_ring(self, n: int) -> Ring:
        return self.base_rings[n % self.period]

    def element(self, exceptions, tail):
        tail = self.tail.canon(tail)
        exc = []
        for n, v in sorted(exceptions.items()):
            if v != self.tail.reduce(tail, n % self.period):
                exc.append((n, v))
        return SeqElement(self, tuple(exc), tail)

    def from_tail(self, tail):
        return self.element({}, tail)

    @property
    def zero(self):
        return self.from_tail(self.tail.zero)

    @property
    def one(self):
        return self.from_tail(self.tail.one)

    def e(self, m: int):
        """The idempotent supported at coordinate m."""
        return self.element({m: self.coordinate_ring(m).one}, self.tail.zero)


class SeqElement:
    """Finite exceptions plus a tail; the stored form is canonical, so
    structural equality is equality of sequences."""

    __slots__ = ("ring", "exceptions", "tail")

    def __init__(self, ring: SeqRing, exceptions, tail):
        self.ring = ring
        self.exceptions = exceptions
        self.tail = tail

    def coordinate(self, n: int):
        for m, v in self.exceptions:
            if m == n:
                return v
        return self.ring.tail.reduce(self.tail, n % self.ring.period)

    def support_bound(self):
        return 1 + max((n for n, _ in self.exceptions), default=-1)

    def _combine(self, other, tail_op, coord_op):
        ring = self.ring
        if other.ring is not ring:
            raise ValueError("elements of different sequence rings")
        tail = tail_op(ring.tail, self.tail, other.tail)
        exc = {}
        for n in {n for n, _ in self.exceptions} | {n for n, _ in other.exceptions}:
            base = ring.coordinate_ring(n)
            exc[n] = coord_op(base, self.coordinate(n), other.coordinate(n))
        return ring.element(exc, tail)

    def __add__(self, other):
        return self._combine(
            other, lambda t, a, b: t.add(a, b), lambda r, a, b: r.add(a, b)
        )

    def __sub__(self, other):
        return self._combine(
            other,
            lambda t, a, b: t.sub(a, b),
            lambda r, a, b: r.add(a, r.neg(b)),
        )

    def __mul__(self, other):
        return self._combine(
            other, lambda t, a, b: t.mul(a, b), lambda r, a, b: r.mul(a, b)
        )

    def __neg__(self):
        return self.ring.zero - self

    def __eq__(self, other):
        return (
            isinstance(other, SeqElement)
            and self.ring is other.ring
            and self.exceptions == other.exceptions
            and self.tail == other.tail
        )

    def __hash__(self):
        return hash((id(self.ring), self.exceptions, self.tail))

    def __repr__(self):
        exc = ", ".join(f"{n}->{v}" for n, v in self.exceptions)
        return f"<seq {{{exc}}} tail {self.ring.tail.describe(self.tail)}>"


def seq_arith(a: SeqElement, b: SeqElement, op: str) -> SeqElement:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def seq_is_idempotent(a: SeqElement) -> bool:
    """Coordinatewise idempotency: the exceptions and the tail's orbit over
    one period; cross-checked against a*a == a, which canonical forms make
    exact."""
    ring = a.ring
    verdict = all(
        v in ring.coordinate_ring(n).idempotents for n, v in a.exceptions
    ) and all(
        ring.tail.reduce(a.tail, p) in ring.base_rings[p].idempotents
        for p in range(ring.period)
    )
    assert verdict == (a * a == a)
    return verdict


def seq_is_regular(a: SeqElement):
    """(verdict, annihilator): in these rings a sequence is regular exactly
    when every coordinate is a unit; a non-unit coordinate of a finite ring
    kills something nonzero, which gives a finitely supported annihilator."""
    ring = a.ring
    for n in range(a.support_bound() + ring.period):
        base = ring.coordinate_ring(n)
        v = a.coordinate(n)
        if v in base.units:
            continue
        row = base.mul_table[v]
        b = next(b for b in range(1, base.size) if row[b] == base.zero)
        w = ring.element({n: b}, ring.tail.zero)
        assert w * a == ring.zero and w != ring.zero
        return False, w
    return True, None


# ---------------------------------------------------------------------------
# the symbolic minimal-prime spectrum


@dataclass(frozen=True)
class SymbolicPSpecPoint:
    tag: str
    index: int | None
    pure_ideal: str


def seq_pspec_points(ring: SeqRing, finite_count: int):
    """x_0, x_1, ... then the point at infinity, with their pure ideals."""
    for n in range(finite_count):
        yield SymbolicPSpecPoint(f"x_{n}", n, f"R(1-e_{n})")
    yield SymbolicPSpecPoint("x_inf", None, "(+)_n R_n")


def _outside_pure_ideal(a: SeqElement, point: SymbolicPSpecPoint) -> bool:
    """Whether a avoids the point's pure ideal: R(1-e_n) is the sequences
    vanishing at n, and (+)_n R_n is those with tail zero."""
    if point.index is None:
        return a.tail != a.ring.tail.zero
    return a.coordinate(point.index) != a.ring.coordinate_ring(point.index).zero


def separating_idempotent(
    ring: SeqRing, x: SymbolicPSpecPoint, y: SymbolicPSpecPoint
) -> SeqElement:
    """An idempotent e with x in D(e) and y in D(1-e), verified symbolically."""
    if x.tag == y.tag:
        raise SamePoint(x.tag)
    e = ring.e(x.index) if x.index is not None else ring.one - ring.e(y.index)
    assert seq_is_idempotent(e)
    assert _outside_pure_ideal(e, x)
    assert _outside_pure_ideal(ring.one - e, y)
    return e


def seq_stalk(ring: SeqRing, point: SymbolicPSpecPoint) -> Ring:
    """The stalk at x_n is the coordinate ring R_n; at infinity it is the
    quotient by the finite-support ideal, i.e. the tail domain (reduced mod
    the lcm when the tails are integers)."""
    if point.index is not None:
        return ring.coordinate_ring(point.index)
    if isinstance(ring.tail, IntegerTail):
        return build_ring(ZMod(ring.tail.lcm))
    return ring.tail.ring


# ---------------------------------------------------------------------------
# the Z (+) (Z/2)^(N) ring


class VascElement:
    """A pair (m, x): an integer and a finite subset of N, multiplied by
    (m,x)(n,y) = (mn, nx+my+xy) with characteristic-2 coordinates."""

    __slots__ = ("m", "x")

    def __init__(self, m: int, x=()):
        self.m = m
        self.x = frozenset(x)

    def __add__(self, other):
        return VascElement(self.m + other.m, self.x ^ other.x)

    def __sub__(self, other):
        return VascElement(self.m - other.m, self.x ^ other.x)

    def __neg__(self):
        return VascElement(-self.m, self.x)

    def __mul__(self, other):
        nx = self.x if other.m % 2 else frozenset()
        my = other.x if self.m % 2 else frozenset()
        return VascElement(self.m * other.m, nx ^ my ^ (self.x & other.x))

    def __eq__(self, other):
        return (
            isinstance(other, VascElement)
            and self.m == other.m
            and self.x == other.x
        )

    def __hash__(self):
        return hash((self.m, self.x))

    def __repr__(self):
        return f"({self.m}, {{{', '.join(map(str, sorted(self.x)))}}})"


VASC_ZERO = VascElement(0)
VASC_ONE = VascElement(1)


def vasc_is_idempotent(a: VascElement) -> bool:
    verdict = a.m in (0, 1)
    assert verdict == (a * a == a)
    return verdict


def vasc_annihilator_witness(a: VascElement):
    """A nonzero annihilator of a, or None when a is regular.  The witness
    sits at the least coordinate i where m + x_i is even."""
    if a.m % 2:
        if not a.x:
            return None
        i = min(a.x)
    else:
        i = next(i for i in itertools.count() if i not in a.x)
    w = VascElement(0, {i})
    assert w * a == VASC_ZERO
    return w


def vasc_is_regular(a: VascElement) -> bool:
    return vasc_annihilator_witness(a) is None


def vasc_almost_clean_decompose(a: VascElement):
    """(idempotent, regular) summing to a: odd m keeps its integer part
    regular as is, even m borrows 1 from the idempotent."""
    if a.m % 2:
        parts = VascElement(0, a.x), VascElement(a.m)
    else:
        parts = VascElement(1, a.x), VascElement(a.m - 1)
    e, r = parts
    assert vasc_is_idempotent(e) and vasc_is_regular(r) and e + r == a
    return parts


# ---------------------------------------------------------------------------
# refuting finite generating sets of annihilators


def annihilator_fg_refuter(ring, a, candidate_gens):
    """An element of (0:a) outside the ideal the candidates generate,
    found at a coordinate beyond every support in sight.

    For the pair ring the target is a = (even nonzero, x): its annihilator
    is every (0,y) with y disjoint from x, while the candidates only reach
    supports inside their own union.  For sequence rings the fresh witness
    must also dodge the ideal the candidates' tails generate coordinatewise.
    """
    if isinstance(a, VascElement):
        for g in candidate_gens:
            if g * a != VASC_ZERO:
                raise NotInAnnihilator(repr(g))
        if a.m == 0 or a.m % 2:
            raise ValueError("annihilator of this element is finitely generated")
        used = a.x.union(*(g.x for g in candidate_gens)) if candidate_gens else a.x
        k = next(i for i in itertools.count() if i not in used)
        w = VascElement(0, {k})
        assert w * a == VASC_ZERO
        return w

    for g in candidate_gens:
        if g * a != ring.zero:
            raise NotInAnnihilator(repr(g))
    start = max([a.support_bound()] + [g.support_bound() for g in candidate_gens])
    for n in range(start, start + 2 * ring.period):
        base = ring.coordinate_ring(n)
        reach = ideal_closure(
            base, [g.coordinate(n) for g in candidate_gens]
        )
        row_a = base.mul_table[a.coordinate(n)]
        for b in range(1, base.size):
            if row_a[b] == base.zero and b not in reach:
                w = ring.element({n: b}, ring.tail.zero)
                assert w * a == ring.zero
                return w
    raise ValueError("no fresh-coordinate refutation exists here")


def seq_almost_clean_decompose(a: SeqElement, coordinate_bound: int = 6):
    """Bounded search for a = idempotent + regular with the idempotent's
    exceptions confined below the bound; None when the search space is
    exhausted, which asserts nothing about larger supports."""
    ring = a.ring
    idem_tails = [
        t
        for t in ring.tail.values()
        if all(
            ring.tail.reduce(t, p) in ring.base_rings[p].idempotents
            for p in range(ring.period)
        )
    ]
    coords = []
    for n in range(coordinate_bound):
        base = ring.coordinate_ring(n)
        coords.append([None] + sorted(base.idempotents))
    for t in idem_tails:
        for picks in itertools.product(*coords):
            exc = {n: v for n, v in enumerate(picks) if v is not None}
            e = ring.element(exc, t)
            regular, _ = seq_is_regular(a - e)
            if regular:
                return e, a - e
    return None


# ---------------------------------------------------------------------------
# the three families


def burrap_ring(moduli=(4, 8)) -> SeqRing:
    """Eventually-constant sequences of Z/m_n with integer tails."""
    bases = [build_ring(ZMod(m)) for m in moduli]
    label = "Seq(" + ", ".join(r.label for r in bases) + "; tail Z)"
    return SeqRing(bases, IntegerTail(moduli), label)


def nonqif_ring() -> SeqRing:
    """Coordinates alternate V = F2[x]/(x^2) and K = F2; tails come from V,
    reduced to K at odd positions by killing x."""
    v = build_ring(NilpotentAlgebra(2, ("x",), 2, ()))
    k = build_ring(ZMod(2))
    ident = list(range(v.size))
    to_k = [v.values[t][0] for t in range(v.size)]
    tail = FiniteTail(v, [v, k], [ident, to_k])
    return SeqRing([v, k], tail, "Seq(V, K; tail V)")


def q3_ring() -> SeqRing:
    """Every coordinate is V; tails come from T = F2[Y,Z]/(Y,Z)^2 with
    Y -> x at even positions and Z -> x at odd ones, which encodes the
    alternating generators y and z."""
    v = build_ring(NilpotentAlgebra(2, ("x",), 2, ()))
    t = build_ring(NilpotentAlgebra(2, ("Y", "Z"), 2, ()))
    even = [v.values.index((a, b)) for a, b, _ in t.values]
    odd = [v.values.index((a, c)) for a, _, c in t.values]
    tail = FiniteTail(t, [v, v], [even, odd])
    return SeqRing([v, v], tail, "Seq(V, V; tail F2[Y,Z]/(Y,Z)^2)")
