"""Finite commutative rings with canonical element encodings.

A ring is given by a small descriptor tree (ZMod, Product, NilpotentAlgebra,
TrivialExtension) and realized as a :class:`Ring` whose elements are the
integers ``0 .. size-1``, indexing the canonical enumeration of structured
values.  The canonical order is lexicographic on the encoding:

* ``ZMod(n)``: residues ``0 < 1 < ... < n-1``;
* ``Product``: tuples of factor values, last factor varying fastest;
* ``NilpotentAlgebra``: coefficient tuples over the monomial basis sorted by
  total degree then variable order (univariate: index = degree);
* ``TrivialExtension``: pairs ``(ring value, module value)``, ring part major.

Derived views (quotients, idempotent corners, Boolean rings of idempotents)
are ordinary :class:`Ring` objects whose values are inherited encodings, so
the canonical order is preserved everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import CapacityExceeded

DEFAULT_ELEMENT_CAP = 10**6
DEFAULT_IDEAL_CAP = 2**16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class ZMod:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("ZMod needs modulus >= 2")

    def size(self) -> int:
        return self.n

    def label(self) -> str:
        return f"Z/{self.n}"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 1:
            raise ValueError("Product needs at least one factor")

    def size(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.size()
        return out

    def label(self) -> str:
        return " x ".join(f.label() for f in self.factors)


@dataclass(frozen=True)
class NilpotentAlgebra:
    """(Z/p)[vars] modulo all monomials of total degree >= truncation_degree
    together with the extra monomial relations."""

    p: int
    vars: tuple[str, ...]
    truncation_degree: int
    extra_relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(
            self, "extra_relations", tuple(tuple(r) for r in self.extra_relations)
        )
        if not _is_prime(self.p):
            raise ValueError("coefficient modulus must be prime")
        if not self.vars or len(set(self.vars)) != len(self.vars):
            raise ValueError("variables must be distinct and nonempty")
        if self.truncation_degree < 1:
            raise ValueError("truncation degree must be >= 1")
        for rel in self.extra_relations:
            if len(rel) != len(self.vars) or any(e < 0 for e in rel):
                raise ValueError("relation monomials use one exponent per variable")
            if sum(rel) == 0:
                raise ValueError("the unit monomial cannot be a relation")

    def monomial_basis(self) -> tuple[tuple[int, ...], ...]:
        k = len(self.vars)
        monos = []
        for total in range(self.truncation_degree):
            batch = [
                e
                for e in itertools.product(range(total + 1), repeat=k)
                if sum(e) == total
                and not any(
                    all(e[i] >= r[i] for i in range(k)) for r in self.extra_relations
                )
            ]
            batch.sort(key=lambda e: tuple(-x for x in e))
            monos.extend(batch)
        return tuple(monos)

    def size(self) -> int:
        return self.p ** len(self.monomial_basis())

    def label(self) -> str:
        vs = ",".join(self.vars)
        extra = ""
        if self.extra_relations:
            extra = "," + ",".join(self._mono_str(r) for r in self.extra_relations)
        return f"F{self.p}[{vs}]/(deg>={self.truncation_degree}{extra})"

    def _mono_str(self, exps) -> str:
        parts = []
        for v, e in zip(self.vars, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class TrivialExtension:
    """R extended by the module ``R/I_1 + ... + R/I_k``; each summand is the
    generator list of its annihilator ideal, written as element literals of
    the base ring.  Multiplication is ``(r, x) * (s, y) = (rs, ry + sx)``."""

    ring: object
    module_summands: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "module_summands", tuple(tuple(s) for s in self.module_summands)
        )
        if not self.module_summands:
            raise ValueError("trivial extension needs at least one module summand")

    def size(self) -> int:
        return build_ring(self).size

    def label(self) -> str:
        return build_ring(self).label


# ---------------------------------------------------------------------------
# literals

def value_from_literal(desc, lit):
    """Convert a JSON-style literal into the canonical structured value."""
    if isinstance(desc, ZMod):
        v = int(lit)
        if not 0 <= v < desc.n:
            raise ValueError(f"residue {lit} out of range for {desc.label()}")
        return v
    if isinstance(desc, Product):
        if len(lit) != len(desc.factors):
            raise ValueError("wrong arity for product element")
        return tuple(value_from_literal(f, x) for f, x in zip(desc.factors, lit))
    if isinstance(desc, NilpotentAlgebra):
        basis = desc.monomial_basis()
        coeffs = [int(c) % desc.p for c in lit]
        if len(coeffs) > len(basis):
            raise ValueError("coefficient vector longer than the monomial basis")
        coeffs += [0] * (len(basis) - len(coeffs))
        return tuple(coeffs)
    if isinstance(desc, TrivialExtension):
        ring = build_ring(desc)
        rlit, mlits = lit
        rv = value_from_literal(desc.ring, rlit)
        module = ring.te_module
        if len(mlits) != len(module.summand_reps):
            raise ValueError("wrong arity for module element")
        mv = tuple(
            module.rep_value(i, value_from_literal(desc.ring, x))
            for i, x in enumerate(mlits)
        )
        return (rv, mv)
    raise TypeError(f"unknown descriptor {desc!r}")


def value_to_literal(desc, value):
    if isinstance(desc, ZMod):
        return value
    if isinstance(desc, Product):
        return [value_to_literal(f, v) for f, v in zip(desc.factors, value)]
    if isinstance(desc, NilpotentAlgebra):
        return list(value)
    if isinstance(desc, TrivialExtension):
        rv, mv = value
        return [value_to_literal(desc.ring, rv), [value_to_literal(desc.ring, v) for v in mv]]
    raise TypeError(f"unknown descriptor {desc!r}")


# ---------------------------------------------------------------------------
# the Ring runtime


class Ring:
    """A finite commutative ring on indices 0..size-1 with canonical values.

    Operations are index valued.  Dense operation tables are built lazily;
    heavy analyses (units, idempotents, local factors) are cached.
    """

    def __init__(self, values, add_fn, mul_fn, zero_value, one_value, label,
                 descriptor=None, parent=None):
        self.values = tuple(values)
        self.size = len(self.values)
        self.index = {v: i for i, v in enumerate(self.values)}
        if len(self.index) != self.size:
            raise ValueError("duplicate element values")
        self._add_fn = add_fn
        self._mul_fn = mul_fn
        self.zero = self.index[zero_value]
        self.one = self.index[one_value]
        self.label = label
        self.descriptor = descriptor
        self.parent = parent
        self.cache = {}

    def __repr__(self):
        return f"Ring({self.label}, size={self.size})"

    # -- operations

    @cached_property
    def add_table(self):
        fn = self._add_fn
        n = self.size
        return [[fn(i, j) for j in range(n)] for i in range(n)]

    @cached_property
    def mul_table(self):
        fn = self._mul_fn
        n = self.size
        return [[fn(i, j) for j in range(n)] for i in range(n)]

    @cached_property
    def neg_table(self):
        z = self.zero
        add = self.add_table
        out = [None] * self.size
        for i in range(self.size):
            for j in range(self.size):
                if add[i][j] == z:
                    out[i] = j
                    break
        return out

    def add(self, i, j):
        return self.add_table[i][j]

    def mul(self, i, j):
        return self.mul_table[i][j]

    def neg(self, i):
        return self.neg_table[i]

    def sub(self, i, j):
        return self.add_table[i][self.neg_table[j]]

    def pow(self, i, k):
        out = self.one
        base = i
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_sum(self, idxs):
        out = self.zero
        add = self.add_table
        for i in idxs:
            out = add[out][i]
        return out

    # -- basic analyses

    @cached_property
    def units(self):
        one = self.one
        mul = self.mul_table
        return frozenset(i for i in range(self.size) if one in mul[i])

    @cached_property
    def regulars(self):
        """Elements whose multiplication map is injective (no zero divisors)."""
        z = self.zero
        mul = self.mul_table
        out = []
        for i in range(self.size):
            row = mul[i]
            if all(row[j] != z for j in range(self.size) if j != z):
                out.append(i)
        return frozenset(out)

    @cached_property
    def idempotents(self):
        mul = self.mul_table
        return tuple(i for i in range(self.size) if mul[i][i] == i)

    @cached_property
    def nilpotents(self):
        """The nilradical as a frozenset (a^(2^t) = 0 for 2^t >= size)."""
        z = self.zero
        out = []
        t = max(1, (self.size - 1).bit_length())
        for i in range(self.size):
            x = i
            for _ in range(t):
                x = self.mul(x, x)
                if x == z:
                    break
            if x == z:
                out.append(i)
        return frozenset(out)

    @cached_property
    def additive_orders(self):
        z = self.zero
        out = [1] * self.size
        for i in range(self.size):
            x = i
            k = 1
            while x != z:
                x = self.add(x, i)
                k += 1
            out[i] = k
        return out

    # -- derived rings

    def quotient(self, ideal_elements, label=None):
        """The quotient ring; values are the least coset representatives."""
        ideal = frozenset(ideal_elements)
        add = self.add_table
        rep_of = [-1] * self.size
        reps = []
        for i in range(self.size):
            if rep_of[i] < 0:
                q = len(reps)
                reps.append(i)
                row = add[i]
                for a in ideal:
                    rep_of[row[a]] = q
        lift = reps

        def q_add(i, j):
            return rep_of[add[lift[i]][lift[j]]]

        mul = self.mul_table

        def q_mul(i, j):
            return rep_of[mul[lift[i]][lift[j]]]

        ring = Ring(
            [self.values[r] for r in reps], q_add, q_mul,
            self.values[lift[rep_of[self.zero]]],
            self.values[lift[rep_of[self.one]]],
            label or f"{self.label} mod ideal[{len(ideal)}]",
            parent=self,
        )
        ring.lift = lift
        ring.project = rep_of
        ring.modulo = ideal
        return ring

    def corner(self, e):
        """The ring R*e with identity e (e idempotent)."""
        mul = self.mul_table
        if mul[e][e] != e:
            raise ValueError("corner needs an idempotent")
        members = sorted(set(mul[e]))
        pos = {p: i for i, p in enumerate(members)}
        add = self.add_table

        def c_add(i, j):
            return pos[add[members[i]][members[j]]]

        def c_mul(i, j):
            return pos[mul[members[i]][members[j]]]

        ring = Ring(
            [self.values[m] for m in members], c_add, c_mul,
            self.values[self.zero], self.values[e],
            f"{self.label}*e{e}",
            parent=self,
        )
        ring.lift = members
        ring.project = [pos[mul[e][i]] for i in range(self.size)]
        ring.idempotent_in_parent = e
        return ring

    def boolean_ring(self):
        """The Boolean ring of idempotents: e+f-ef and ef on the carrier."""
        carrier = list(self.idempotents)
        pos = {e: i for i, e in enumerate(carrier)}
        add, mul, neg = self.add_table, self.mul_table, self.neg_table

        def b_add(i, j):
            e, f = carrier[i], carrier[j]
            return pos[add[add[e][f]][neg[mul[e][f]]]]

        def b_mul(i, j):
            return pos[mul[carrier[i]][carrier[j]]]

        ring = Ring(
            [self.values[e] for e in carrier], b_add, b_mul,
            self.values[self.zero], self.values[self.one],
            f"B({self.label})",
            parent=self,
        )
        ring.lift = carrier
        return ring


def ring_from_index_ops(size, add_fn, mul_fn, zero, one, label, values=None):
    """A ring on opaque indices (used for tail rings and test doubles)."""
    vals = list(values) if values is not None else list(range(size))
    return Ring(vals, add_fn, mul_fn, vals[zero], vals[one], label)


# ---------------------------------------------------------------------------
# building rings from descriptors

_RING_CACHE: dict = {}


def build_ring(desc, cap: int = DEFAULT_ELEMENT_CAP) -> Ring:
    key = desc
    hit = _RING_CACHE.get(key)
    if hit is not None:
        if hit.size > cap:
            raise CapacityExceeded(
                f"{hit.label} has {hit.size} elements, cap {cap}"
            )
        return hit
    size = desc.size() if not isinstance(desc, TrivialExtension) else None
    if size is not None and size > cap:
        raise CapacityExceeded(f"{desc.label()} has {size} elements, cap {cap}")
    ring = _build(desc, cap)
    if ring.size > cap:
        raise CapacityExceeded(f"{ring.label} has {ring.size} elements, cap {cap}")
    _RING_CACHE[key] = ring
    return ring


def _build(desc, cap):
    if isinstance(desc, ZMod):
        n = desc.n
        return Ring(range(n), lambda i, j: (i + j) % n, lambda i, j: (i * j) % n,
                    0, 1, desc.label(), descriptor=desc)

    if isinstance(desc, Product):
        rings = [build_ring(f, cap) for f in desc.factors]
        sizes = [r.size for r in rings]
        values = list(itertools.product(*[r.values for r in rings]))

        def split(i):
            out = []
            for s in reversed(sizes):
                out.append(i % s)
                i //= s
            out.reverse()
            return out

        def join(parts):
            i = 0
            for s, p in zip(sizes, parts):
                i = i * s + p
            return i

        def p_add(i, j):
            return join([r.add(a, b) for r, a, b in zip(rings, split(i), split(j))])

        def p_mul(i, j):
            return join([r.mul(a, b) for r, a, b in zip(rings, split(i), split(j))])

        ring = Ring(values, p_add, p_mul,
                    tuple(r.values[r.zero] for r in rings),
                    tuple(r.values[r.one] for r in rings),
                    desc.label(), descriptor=desc)
        ring.factor_rings = rings
        return ring

    if isinstance(desc, NilpotentAlgebra):
        p = desc.p
        basis = desc.monomial_basis()
        dim = len(basis)
        bpos = {m: t for t, m in enumerate(basis)}
        k = len(desc.vars)
        trunc = desc.truncation_degree
        rels = desc.extra_relations
        prod_table = [[None] * dim for _ in range(dim)]
        for a, ma in enumerate(basis):
            for b, mb in enumerate(basis):
                m = tuple(ma[t] + mb[t] for t in range(k))
                if sum(m) < trunc and not any(
                    all(m[t] >= r[t] for t in range(k)) for r in rels
                ):
                    prod_table[a][b] = bpos[m]
        values = list(itertools.product(range(p), repeat=dim))
        vpos = {v: i for i, v in enumerate(values)}

        def a_add(i, j):
            u, v = values[i], values[j]
            return vpos[tuple((x + y) % p for x, y in zip(u, v))]

        def a_mul(i, j):
            u, v = values[i], values[j]
            out = [0] * dim
            for a in range(dim):
                ca = u[a]
                if ca:
                    row = prod_table[a]
                    for b in range(dim):
                        cb = v[b]
                        t = row[b]
                        if cb and t is not None:
                            out[t] = (out[t] + ca * cb) % p
            return vpos[tuple(out)]

        one = tuple(1 if t == 0 else 0 for t in range(dim))
        ring = Ring(values, a_add, a_mul, tuple([0] * dim), one,
                    desc.label(), descriptor=desc)
        ring.monomial_basis = basis
        return ring

    if isinstance(desc, TrivialExtension):
        from .modules import cyclic_sum_module

        base = build_ring(desc.ring, cap)
        gens = [
            [base.index[value_from_literal(desc.ring, g)] for g in summand]
            for summand in desc.module_summands
        ]
        module = cyclic_sum_module(base, gens)
        if base.size * module.size > cap:
            raise CapacityExceeded(
                f"trivial extension has {base.size * module.size} elements, cap {cap}")
        values = [
            (base.values[r], module.values[m])
            for r in range(base.size)
            for m in range(module.size)
        ]
        msize = module.size

        def t_add(i, j):
            r, x = divmod(i, msize)
            s, y = divmod(j, msize)
            return base.add(r, s) * msize + module.add(x, y)

        def t_mul(i, j):
            r, x = divmod(i, msize)
            s, y = divmod(j, msize)
            return base.mul(r, s) * msize + module.add(module.smul(r, y), module.smul(s, x))

        label = f"TrivExt({base.label}; " + ", ".join(
            f"{base.label}/({','.join(str(base.values[g]) for g in gs)})" for gs in gens
        ) + ")"
        ring = Ring(values, t_add, t_mul,
                    (base.values[base.zero], module.values[module.zero]),
                    (base.values[base.one], module.values[module.zero]),
                    label, descriptor=desc)
        ring.te_base = base
        ring.te_module = module
        return ring

    raise TypeError(f"unknown descriptor {desc!r}")


def iter_elements(desc, cap: int = DEFAULT_ELEMENT_CAP):
    """Stream the canonical element values of a described ring in order."""
    size = desc.size()
    if size > cap:
        raise CapacityExceeded(f"{desc.label()} has {size} elements, cap {cap}")
    if isinstance(desc, ZMod):
        yield from range(desc.n)
    elif isinstance(desc, Product):
        yield from itertools.product(*[list(iter_elements(f, cap)) for f in desc.factors])
    elif isinstance(desc, NilpotentAlgebra):
        dim = len(desc.monomial_basis())
        yield from itertools.product(range(desc.p), repeat=dim)
    elif isinstance(desc, TrivialExtension):
        yield from build_ring(desc, cap).values
    else:
        raise TypeError(f"unknown descriptor {desc!r}")


# ---------------------------------------------------------------------------
# idempotent decomposition


def ideal_closure(ring: Ring, generators) -> frozenset:
    """The ideal generated by the given element indices."""
    mul = ring.mul_table
    add = ring.add_table
    seed = set()
    for g in generators:
        seed.update(mul[g])
    seed.add(ring.zero)
    closed = {ring.zero}
    frontier = [ring.zero]
    seed = sorted(seed)
    while frontier:
        x = frontier.pop()
        row = add[x]
        for g in seed:
            y = row[g]
            if y not in closed:
                closed.add(y)
                frontier.append(y)
    return frozenset(closed)


@dataclass
class LocalFactor:
    idempotent: int
    ring: Ring

    def embed(self, i):
        return self.ring.lift[i]

    def project(self, i):
        return self.ring.project[i]


def primitive_idempotents(ring: Ring) -> tuple[int, ...]:
    """The atoms of the Boolean algebra of idempotents, in canonical order."""
    idem = ring.idempotents
    mul = ring.mul_table
    z = ring.zero
    atoms = []
    for e in idem:
        if e == z:
            continue
        if all(f == z or f == e or mul[f][e] != f for f in idem):
            atoms.append(e)
    atoms.sort()
    total = ring.zero
    for e in atoms:
        for f in atoms:
            if e != f and mul[e][f] != z:
                raise AssertionError("primitive idempotents must be orthogonal")
        total = ring.add(total, e)
    if total != ring.one:
        raise AssertionError("primitive idempotents must sum to 1")
    return tuple(atoms)


def local_factors(ring: Ring) -> list[LocalFactor]:
    """Decompose R as a product of local corner rings R*e, one per primitive
    idempotent.  The list is cached on the ring."""
    hit = ring.cache.get("local_factors")
    if hit is not None:
        return hit
    out = [LocalFactor(e, ring.corner(e)) for e in primitive_idempotents(ring)]
    ring.cache["local_factors"] = out
    return out


def from_factor_indices(ring: Ring, parts) -> int:
    """CRT recombination: the element of R whose image in factor k is parts[k]."""
    factors = local_factors(ring)
    out = ring.zero
    for fac, p in zip(factors, parts):
        out = ring.add(out, fac.embed(p))
    return out


# ---------------------------------------------------------------------------
# isomorphism testing (small rings)


def _element_invariants(ring: Ring):
    orders = ring.additive_orders
    units = ring.units
    idem = set(ring.idempotents)
    nil = ring.nilpotents
    return [
        (orders[i], i in units, i in idem, i in nil)
        for i in range(ring.size)
    ]


def rings_isomorphic(a: Ring, b: Ring) -> bool:
    """Decide whether two small finite rings are isomorphic, by backtracking
    over images of successive generators with closure propagation."""
    if a.size != b.size:
        return False
    inv_a = _element_invariants(a)
    inv_b = _element_invariants(b)
    if sorted(inv_a) != sorted(inv_b):
        return False

    def close(fwd, back):
        """Propagate ring operations through the partial map; None on clash."""
        pending = True
        while pending:
            pending = False
            dom = [x for x in range(a.size) if fwd[x] >= 0]
            for x in dom:
                for y in dom:
                    for op_a, op_b in ((a.add, b.add), (a.mul, b.mul)):
                        s = op_a(x, y)
                        t = op_b(fwd[x], fwd[y])
                        if fwd[s] < 0:
                            if back[t] >= 0:
                                return False
                            fwd[s] = t
                            back[t] = s
                            pending = True
                        elif fwd[s] != t:
                            return False
        return True

    def search(fwd, back):
        x = next((i for i in range(a.size) if fwd[i] < 0), None)
        if x is None:
            return True
        for y in range(b.size):
            if back[y] >= 0 or inv_b[y] != inv_a[x]:
                continue
            fwd2, back2 = fwd[:], back[:]
            fwd2[x] = y
            back2[y] = x
            if close(fwd2, back2) and search(fwd2, back2):
                return True
        return False

    fwd = [-1] * a.size
    back = [-1] * b.size
    fwd[a.zero] = b.zero
    back[b.zero] = a.zero
    if fwd[a.one] < 0:
        fwd[a.one] = b.one
        back[b.one] = a.one
    if not close(fwd, back):
        return False
    return search(fwd, back)
