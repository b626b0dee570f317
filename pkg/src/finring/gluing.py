"""Idempotent gluing: polynomial systems over an R-algebra, per-block local
solutions patched into exact global ones, and the module-theoretic
consequences (generator counts, epimorphisms, isomorphisms of cyclic sums).

The gluing formula is d = sum over blocks of e_x * b_x, where e_x is the
complementary idempotent of the pure ideal A(x): since A(x) = R(1 - e_x),
e_x kills every value lying in A(x)S, so the patched assignment solves the
system exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Ring, ideal_closure
from .errors import CapacityExceeded, GluingFailed, NotACover
from .ideals import minimal_generators
from .modules import (
    FiniteModule,
    ModuleHom,
    find_bijective_hom,
    find_surjection,
    ideal_times_module,
    module_generators,
    quotient_module,
    submodule_closure,
    submodule_closure_from,
)
from .spectrum import idempotent_generator, pspec

DEFAULT_SEARCH_CAP = 2_000_000


# ---------------------------------------------------------------------------
# polynomial systems over an algebra


@dataclass(frozen=True)
class PolySystem:
    """Polynomials over S in noncommuting variables.

    Each polynomial is a tuple of words; a word is a tuple of atoms
    ("c", s_index) or ("v", var_index), multiplied left to right.  When S is
    a proper R-algebra, base_ring/base_embed carry the structure map.
    """

    algebra: Ring
    nvars: int
    constants: tuple
    polys: tuple
    base_ring: Ring | None = None
    base_embed: tuple | None = None

    def __post_init__(self):
        for poly in self.polys:
            for word in poly:
                for kind, v in word:
                    if kind == "v":
                        if not 0 <= v < self.nvars:
                            raise ValueError(f"undeclared variable {v}")
                    elif kind == "c":
                        if not 0 <= v < self.algebra.size:
                            raise ValueError(f"bad constant index {v}")
                    else:
                        raise ValueError(f"bad atom kind {kind!r}")

    @property
    def base(self) -> Ring:
        return self.base_ring if self.base_ring is not None else self.algebra

    def scalar(self, r):
        """The image of a base-ring element in S."""
        return r if self.base_embed is None else self.base_embed[r]

    def eval_word(self, word, assignment):
        s = self.algebra
        out = s.one
        for kind, v in word:
            out = s.mul(out, v if kind == "c" else assignment[v])
        return out

    def eval_poly(self, poly, assignment):
        return self.algebra.element_sum(
            self.eval_word(w, assignment) for w in poly
        )

    def eval_all(self, assignment):
        return tuple(self.eval_poly(p, assignment) for p in self.polys)


def _max_var(poly):
    out = -1
    for word in poly:
        for kind, v in word:
            if kind == "v" and v > out:
                out = v
    return out


def solve_local(sys: PolySystem, block, cap: int = DEFAULT_SEARCH_CAP):
    """Least assignment with every polynomial value in A(x)S, by exhaustive
    search; each polynomial is checked as soon as its variables are fixed."""
    s = sys.algebra
    target = ideal_closure(
        s, [sys.scalar(a) for a in block.pure_ideal.generators]
    )
    by_depth = [[] for _ in range(sys.nvars)]
    for poly in sys.polys:
        mv = _max_var(poly)
        if mv < 0:
            if sys.eval_poly(poly, ()) not in target:
                return None
        else:
            by_depth[mv].append(poly)
    if sys.nvars == 0:
        return ()
    if s.size**sys.nvars > cap:
        raise CapacityExceeded(
            f"local search space {s.size}^{sys.nvars} exceeds cap {cap}")
    assignment = []

    def dfs(depth):
        for v in range(s.size):
            assignment.append(v)
            if all(sys.eval_poly(p, assignment) in target for p in by_depth[depth]):
                if depth + 1 == sys.nvars or dfs(depth + 1):
                    return True
            assignment.pop()
        return False

    if dfs(0):
        return tuple(assignment)
    return None


def orthogonalize_cover(ring: Ring, idempotents):
    """Refine a covering family of idempotents into a partition of unity:
    e'_j = e_j * prod_{i<j} (1 - e_i)."""
    es = list(idempotents)
    for e in es:
        if ring.mul(e, e) != e:
            raise ValueError("cover members must be idempotent")
    if ring.one not in ideal_closure(ring, es):
        raise NotACover("idempotents do not generate the unit ideal")
    out = []
    rem = ring.one
    for e in es:
        out.append(ring.mul(e, rem))
        rem = ring.mul(rem, ring.sub(ring.one, e))
    total = ring.zero
    for i, e in enumerate(out):
        if ring.mul(e, e) != e:
            raise AssertionError("refinement must stay idempotent")
        if ring.mul(e, es[i]) != e:
            raise AssertionError("refinement must lie under the cover")
        for f in out[i + 1:]:
            if ring.mul(e, f) != ring.zero:
                raise AssertionError("refinement must be orthogonal")
        total = ring.add(total, e)
    if total != ring.one:
        raise AssertionError("refinement must sum to 1")
    return out


def block_idempotent(ring: Ring, block) -> int:
    """The idempotent e_x with A(x) = R(1 - e_x)."""
    g = idempotent_generator(ring, block.pure_ideal)
    if g is None:
        raise AssertionError("A(x) must be generated by an idempotent")
    return ring.sub(ring.one, g)


def glue(sys: PolySystem, local_solutions, cap: int = DEFAULT_SEARCH_CAP):
    """Patch per-block solutions (exact modulo A(x)S) into an assignment
    solving the system exactly."""
    ring = sys.base
    s = sys.algebra
    blocks = pspec(ring)
    sols = {block: tuple(b) for block, b in local_solutions}
    if set(sols) != set(blocks):
        raise ValueError("a local solution is required for every block")
    es = []
    for block in blocks:
        values = sys.eval_all(sols[block])
        target = ideal_closure(
            s, [sys.scalar(a) for a in block.pure_ideal.generators]
        )
        if any(v not in target for v in values):
            raise ValueError("local assignment does not solve modulo A(x)S")
        e = block_idempotent(ring, block)
        if any(e in p.prime.elements for p in block.primes):
            raise GluingFailed("block idempotent must avoid the block's primes")
        se = sys.scalar(e)
        if any(s.mul(se, v) != s.zero for v in values):
            raise GluingFailed("block idempotent fails to annihilate the residues")
        es.append(e)
    parts = orthogonalize_cover(ring, es)
    glued = []
    for ell in range(sys.nvars):
        acc = s.zero
        for e, block in zip(parts, blocks):
            acc = s.add(acc, s.mul(sys.scalar(e), sols[block][ell]))
        glued.append(acc)
    if any(v != s.zero for v in sys.eval_all(glued)):
        raise GluingFailed("glued assignment does not solve exactly")
    return tuple(glued)


# ---------------------------------------------------------------------------
# trivial extension S = R x M built at runtime from a module


def trivial_extension_ring(ring: Ring, module: FiniteModule) -> Ring:
    """S = R + M with (r,x)(s,y) = (rs, ry+sx), pair encoding ring-major."""
    hit = module.cache.get("te_ring")
    if hit is not None:
        return hit
    msize = module.size
    values = [
        (ring.values[r], module.values[m])
        for r in range(ring.size)
        for m in range(module.size)
    ]

    def t_add(i, j):
        r, x = divmod(i, msize)
        s, y = divmod(j, msize)
        return ring.add(r, s) * msize + module.add(x, y)

    def t_mul(i, j):
        r, x = divmod(i, msize)
        s, y = divmod(j, msize)
        return ring.mul(r, s) * msize + module.add(
            module.smul(r, y), module.smul(s, x)
        )

    out = Ring(
        values, t_add, t_mul,
        (ring.values[ring.zero], module.values[module.zero]),
        (ring.values[ring.one], module.values[module.zero]),
        f"TrivExt({ring.label}; {module.label})",
        parent=ring,
    )
    out.te_base = ring
    out.te_module = module
    out.embed_scalar = tuple(r * msize + module.zero for r in range(ring.size))
    out.embed_module = tuple(ring.zero * msize + m for m in range(module.size))
    module.cache["te_ring"] = out
    return out


# ---------------------------------------------------------------------------
# generator counts


def gen_count(mod: FiniteModule) -> int:
    """Minimal size of a generating set, exhaustive over sizes ascending.
    The summand generators witness the upper bound."""
    if mod.size == 1:
        return 0
    spans = []
    for m in range(mod.size):
        span = submodule_closure(mod, [m])
        if len(span) == mod.size:
            return 1
        spans.append(span)
    gens = module_generators(mod)
    bound = len(gens)
    for k in range(2, bound):
        for combo in itertools.combinations(range(mod.size), k):
            span = spans[combo[0]]
            for m in combo[1:]:
                span = submodule_closure_from(mod, span, m)
            if len(span) == mod.size:
                return k
    if len(submodule_closure(mod, gens)) != mod.size:
        raise AssertionError("summand generators must span the module")
    return bound


def gen_count_stalk_max(mod: FiniteModule) -> int:
    """sup over blocks x of gen (M / A(x)M)."""
    out = 0
    for block in pspec(mod.ring):
        sub = ideal_times_module(mod, block.pure_ideal.generators)
        out = max(out, gen_count(quotient_module(mod, sub)))
    return out


# ---------------------------------------------------------------------------
# the systems E_1 and E_2 over S = R x M


class _Layout:
    """Variable numbering for the E systems: Y_i, then X_{j,i}, then Z_{i,j},
    then the W_{k,l} of E_2."""

    def __init__(self, n, p, n_rows, p_rows):
        self.n = n
        self.p = p
        self.n_rows = n_rows
        self.p_rows = p_rows
        self.nvars = n + 2 * n * p + p_rows * n_rows

    def y(self, i):
        return i

    def x(self, j, i):
        return self.n + j * self.n + i

    def z(self, i, j):
        return self.n + self.p * self.n + i * self.p + j

    def w(self, k, ell):
        return self.n + 2 * self.n * self.p + k * self.n_rows + ell


def _relation_rows(mod: FiniteModule):
    """Rows (slot, a) presenting the cyclic sum: a * g_slot = 0."""
    ring = mod.ring
    rows = []
    for slot, ideal in enumerate(mod.summand_ideals):
        for a in minimal_generators(ring, ideal):
            if a != ring.zero:
                rows.append((slot, a))
    return rows


def _epi_polys(system_ring, layout, f_rows, m_gens):
    s = system_ring
    neg_one = s.neg_table[s.one]
    polys = []
    for j, mj in enumerate(m_gens):
        words = [(("c", s.embed_module[mj]),)]
        for i in range(layout.n):
            words.append((("c", neg_one), ("v", layout.x(j, i)), ("v", layout.y(i))))
        polys.append(tuple(words))
    for i in range(layout.n):
        words = [(("v", layout.y(i)),)]
        for j, mj in enumerate(m_gens):
            words.append(
                (("c", neg_one), ("v", layout.z(i, j)), ("c", s.embed_module[mj]))
            )
        polys.append(tuple(words))
    for slot, a in f_rows:
        polys.append(((("c", s.embed_scalar[a]), ("v", layout.y(slot))),))
    return polys


def _iso_polys(system_ring, layout, f_rows, m_rows):
    s = system_ring
    neg_one = s.neg_table[s.one]
    polys = []
    for k, (jk, a) in enumerate(m_rows):
        for i in range(layout.n):
            words = [(("c", s.embed_scalar[a]), ("v", layout.x(jk, i)))]
            for ell, (slot, b) in enumerate(f_rows):
                if slot == i:
                    words.append(
                        (("c", neg_one), ("v", layout.w(k, ell)),
                         ("c", s.embed_scalar[b]))
                    )
            polys.append(tuple(words))
    return polys


def _express(mod: FiniteModule, gens, target):
    """Least coefficient tuple writing target as a combination of gens."""
    ring = mod.ring
    for combo in itertools.product(range(ring.size), repeat=len(gens)):
        acc = mod.zero
        for r, g in zip(combo, gens):
            acc = mod.add(acc, mod.smul(r, g))
        if acc == target:
            return combo
    raise AssertionError("target must be expressible in the generators")


def _stalks(mod: FiniteModule, block):
    sub = ideal_times_module(mod, block.pure_ideal.generators)
    return quotient_module(mod, sub)


def _epi_local(s, layout, f_mod, m_mod, block, f_stalk, m_stalk, sigma):
    """An E_1 assignment for one block, built from a stalk-level surjection."""
    assignment = [s.zero] * layout.nvars
    lifts = [m_stalk.lift[img] for img in sigma.images]
    for i, mp in enumerate(lifts):
        assignment[layout.y(i)] = s.embed_module[mp]
    x_rows = []
    for j, mj in enumerate(m_mod.summand_gens):
        row = _express(m_stalk, sigma.images, m_stalk.project[mj])
        x_rows.append(row)
        for i, r in enumerate(row):
            assignment[layout.x(j, i)] = s.embed_scalar[r]
    for i, mp in enumerate(lifts):
        row = _express(m_mod, m_mod.summand_gens, mp)
        for j, c in enumerate(row):
            assignment[layout.z(i, j)] = s.embed_scalar[c]
    return assignment, x_rows


def _extract_hom(ring, s, layout, f_mod, m_mod, glued):
    msize = m_mod.size
    images = []
    for i in range(layout.n):
        r_part, m_part = divmod(glued[layout.y(i)], msize)
        if r_part != ring.zero:
            raise AssertionError("Y_i must land in 0 x M")
        images.append(m_part)
    hom = ModuleHom(f_mod, m_mod, tuple(images))
    if not hom.verify():
        raise AssertionError("glued images must define a homomorphism")
    return hom


def epi_from(f_mod: FiniteModule, m_mod: FiniteModule,
             cap: int = DEFAULT_SEARCH_CAP):
    """A surjection F -> M, or None, via per-block stalk surjections glued
    through the system E_1 over S = R x M."""
    ring = f_mod.ring
    if m_mod.ring is not ring:
        raise ValueError("modules must share the base ring")
    blocks = pspec(ring)
    stalk_data = []
    for block in blocks:
        f_stalk = _stalks(f_mod, block)
        m_stalk = _stalks(m_mod, block)
        sigma = find_surjection(f_stalk, m_stalk)
        if sigma is None:
            return None
        stalk_data.append((block, f_stalk, m_stalk, sigma))
    s = trivial_extension_ring(ring, m_mod)
    f_rows = _relation_rows(f_mod)
    layout = _Layout(len(f_mod.summand_gens), len(m_mod.summand_gens), 0, 0)
    polys = _epi_polys(s, layout, f_rows, m_mod.summand_gens)
    sys = PolySystem(
        s, layout.nvars,
        tuple(s.embed_module[m] for m in m_mod.summand_gens),
        tuple(polys), base_ring=ring, base_embed=s.embed_scalar,
    )
    local_solutions = []
    for block, f_stalk, m_stalk, sigma in stalk_data:
        assignment, _ = _epi_local(s, layout, f_mod, m_mod, block,
                                   f_stalk, m_stalk, sigma)
        local_solutions.append((block, assignment))
    glued = glue(sys, local_solutions, cap)
    hom = _extract_hom(ring, s, layout, f_mod, m_mod, glued)
    if not hom.is_surjective():
        raise AssertionError("glued solution of E_1 must be surjective")
    return hom


def iso_test(f_mod: FiniteModule, m_mod: FiniteModule,
             cap: int = DEFAULT_SEARCH_CAP) -> bool:
    """Module isomorphism via the combined system E_1 and E_2 with per-block
    bijections; an exact glued solution certifies the isomorphism."""
    ring = f_mod.ring
    if m_mod.ring is not ring:
        raise ValueError("modules must share the base ring")
    if f_mod.size != m_mod.size:
        return False
    blocks = pspec(ring)
    stalk_data = []
    for block in blocks:
        f_stalk = _stalks(f_mod, block)
        m_stalk = _stalks(m_mod, block)
        sigma = find_bijective_hom(f_stalk, m_stalk)
        if sigma is None:
            return False
        stalk_data.append((block, f_stalk, m_stalk, sigma))
    s = trivial_extension_ring(ring, m_mod)
    f_rows = _relation_rows(f_mod)
    m_rows = _relation_rows(m_mod)
    layout = _Layout(
        len(f_mod.summand_gens), len(m_mod.summand_gens),
        len(f_rows), len(m_rows),
    )
    polys = _epi_polys(s, layout, f_rows, m_mod.summand_gens)
    polys += _iso_polys(s, layout, f_rows, m_rows)
    sys = PolySystem(
        s, layout.nvars,
        tuple(s.embed_module[m] for m in m_mod.summand_gens),
        tuple(polys), base_ring=ring, base_embed=s.embed_scalar,
    )
    local_solutions = []
    for block, f_stalk, m_stalk, sigma in stalk_data:
        assignment, x_rows = _epi_local(s, layout, f_mod, m_mod, block,
                                        f_stalk, m_stalk, sigma)
        proj = ring.quotient(block.pure_ideal.elements).project
        for k, (jk, a) in enumerate(m_rows):
            targets = [ring.mul(a, x_rows[jk][i]) for i in range(layout.n)]
            w_row = _solve_w_row(ring, proj, f_rows, targets, layout.n)
            for ell, w in enumerate(w_row):
                assignment[layout.w(k, ell)] = s.embed_scalar[w]
        local_solutions.append((block, assignment))
    glued = glue(sys, local_solutions, cap)
    hom = _extract_hom(ring, s, layout, f_mod, m_mod, glued)
    if not (hom.is_surjective() and hom.is_injective()):
        raise AssertionError("glued solution of E must be bijective")
    return True


def _solve_w_row(ring: Ring, proj, f_rows, targets, n_slots):
    """Least w with sum_l w_l c_{l,i} congruent to the target at every slot,
    modulo the block's pure ideal."""
    for combo in itertools.product(range(ring.size), repeat=len(f_rows)):
        ok = True
        for i in range(n_slots):
            acc = ring.zero
            for (slot, b), w in zip(f_rows, combo):
                if slot == i:
                    acc = ring.add(acc, ring.mul(w, b))
            if proj[acc] != proj[targets[i]]:
                ok = False
                break
        if ok:
            return combo
    raise AssertionError("relation-matching coefficients must exist")
