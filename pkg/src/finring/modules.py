"""Finite modules over finite commutative rings.

A module is realized on indices 0..size-1 like a ring.  The basic shape is a
finite direct sum of cyclic modules R/I_1 + ... + R/I_k; every element value
is the tuple of least coset representatives (written as base-ring values), so
the canonical order is lexicographic on the encoding.  Quotient views reuse
the parent encoding through least representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Ring, ideal_closure


class FiniteModule:
    def __init__(self, ring: Ring, values, add_fn, smul_fn, zero_value, label,
                 parent=None):
        self.ring = ring
        self.values = tuple(values)
        self.size = len(self.values)
        self.index = {v: i for i, v in enumerate(self.values)}
        if len(self.index) != self.size:
            raise ValueError("duplicate module element values")
        self._add_fn = add_fn
        self._smul_fn = smul_fn
        self.zero = self.index[zero_value]
        self.label = label
        self.parent = parent
        self.cache = {}

    def __repr__(self):
        return f"FiniteModule({self.label}, size={self.size})"

    def add(self, i, j):
        return self._add_fn(i, j)

    def smul(self, r, m):
        return self._smul_fn(r, m)

    def neg(self, i):
        hit = self.cache.get("neg")
        if hit is None:
            hit = [-1] * self.size
            for a in range(self.size):
                if hit[a] >= 0:
                    continue
                for b in range(self.size):
                    if self.add(a, b) == self.zero:
                        hit[a], hit[b] = b, a
                        break
            self.cache["neg"] = hit
        return hit[i]

    def sub(self, i, j):
        return self.add(i, self.neg(j))

    def element_sum(self, idxs):
        out = self.zero
        for i in idxs:
            out = self.add(out, i)
        return out


def cyclic_sum_module(ring: Ring, summand_ann_gens) -> FiniteModule:
    """R/I_1 + ... + R/I_k for the ideals generated by the given index lists."""
    ideals = [ideal_closure(ring, gens) for gens in summand_ann_gens]
    add_t = ring.add_table
    rep_of = []     # per summand: base index -> base index of least coset rep
    reps = []       # per summand: sorted list of representative base indices
    for ideal in ideals:
        rmap = [-1] * ring.size
        rlist = []
        for i in range(ring.size):
            if rmap[i] < 0:
                row = add_t[i]
                for a in ideal:
                    rmap[row[a]] = i
                rlist.append(i)
        rep_of.append(rmap)
        reps.append(rlist)
    pos = [{r: n for n, r in enumerate(rl)} for rl in reps]
    sizes = [len(rl) for rl in reps]
    k = len(ideals)

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

    def m_add(i, j):
        return join([
            pos[t][rep_of[t][add_t[reps[t][a]][reps[t][b]]]]
            for t, (a, b) in enumerate(zip(split(i), split(j)))
        ])

    mul_t = ring.mul_table

    def m_smul(r, m):
        return join([
            pos[t][rep_of[t][mul_t[r][reps[t][a]]]]
            for t, a in enumerate(split(m))
        ])

    values = []
    import itertools
    for combo in itertools.product(*[[ring.values[r] for r in rl] for rl in reps]):
        values.append(tuple(combo))
    zero_value = tuple(ring.values[rep_of[t][ring.zero]] for t in range(k))
    label = " + ".join(f"{ring.label}/I{t}" for t in range(k))
    mod = FiniteModule(ring, values, m_add, m_smul, zero_value, label)
    mod.summand_ideals = ideals
    mod.summand_reps = reps
    mod.summand_rep_of = rep_of
    mod.summand_gens = tuple(
        join([pos[t][rep_of[t][ring.one]] if t == s else pos[t][rep_of[t][ring.zero]]
              for t in range(k)])
        for s in range(k)
    )

    def rep_value(slot, base_value):
        return ring.values[rep_of[slot][ring.index[base_value]]]

    mod.rep_value = rep_value
    mod.component_rep = lambda m, slot: reps[slot][split(m)[slot]]
    return mod


def zero_module(ring: Ring) -> FiniteModule:
    return cyclic_sum_module(ring, [[ring.one]])


def submodule_closure(mod: FiniteModule, gens) -> frozenset:
    """The submodule generated by the given element indices."""
    seed = set()
    for g in gens:
        for r in range(mod.ring.size):
            seed.add(mod.smul(r, g))
    seed.add(mod.zero)
    closed = {mod.zero}
    frontier = [mod.zero]
    seed = sorted(seed)
    while frontier:
        x = frontier.pop()
        for g in seed:
            y = mod.add(x, g)
            if y not in closed:
                closed.add(y)
                frontier.append(y)
    return frozenset(closed)


def ideal_times_module(mod: FiniteModule, ideal_gens) -> frozenset:
    """The submodule A*M for the ideal A generated by the given ring indices."""
    gens = [mod.smul(a, g) for a in ideal_gens for g in module_generators(mod)]
    return submodule_closure(mod, gens)


def module_generators(mod: FiniteModule):
    gens = getattr(mod, "summand_gens", None)
    if gens is not None:
        return gens
    return mod.cache.setdefault("generators", tuple(range(mod.size)))


def quotient_module(mod: FiniteModule, sub: frozenset, label=None) -> FiniteModule:
    """M / N with least-representative values; keeps a lift/project pair."""
    rep_of = [-1] * mod.size
    reps = []
    for i in range(mod.size):
        if rep_of[i] < 0:
            q = len(reps)
            reps.append(i)
            for a in sub:
                rep_of[mod.add(i, a)] = q

    def q_add(i, j):
        return rep_of[mod.add(reps[i], reps[j])]

    def q_smul(r, m):
        return rep_of[mod.smul(r, reps[m])]

    out = FiniteModule(
        mod.ring, [mod.values[r] for r in reps], q_add, q_smul,
        mod.values[reps[rep_of[mod.zero]]],
        label or f"{mod.label} mod sub[{len(sub)}]",
        parent=mod,
    )
    out.lift = reps
    out.project = rep_of
    gens = getattr(mod, "summand_gens", None)
    if gens is not None:
        # per-slot annihilators grow in the quotient: Ann(g_i mod N) = (N : g_i)
        anns = [
            frozenset(r for r in range(mod.ring.size) if mod.smul(r, g) in sub)
            for g in gens
        ]
        expected = 1
        for a in anns:
            expected *= mod.ring.size // len(a)
        # summand metadata is only valid while the quotient still splits as
        # the direct sum of its cyclic pieces (true for N = A*M)
        if expected == out.size:
            out.summand_gens = tuple(rep_of[g] for g in gens)
            out.summand_ideals = anns
            if hasattr(mod, "component_rep"):
                out.component_rep = lambda m, slot: mod.component_rep(reps[m], slot)
    return out


# ---------------------------------------------------------------------------
# homomorphisms between cyclic sums


@dataclass
class ModuleHom:
    """A homomorphism from a cyclic sum F determined by generator images."""

    source: FiniteModule
    target: FiniteModule
    images: tuple

    def apply(self, m):
        src = self.source
        out = self.target.zero
        for slot, img in enumerate(self.images):
            c = src.component_rep(m, slot)
            out = self.target.add(out, self.target.smul(c, img))
        return out

    def verify(self) -> bool:
        src, tgt = self.source, self.target
        for slot, img in enumerate(self.images):
            if any(tgt.smul(a, img) != tgt.zero for a in src.summand_ideals[slot]):
                return False
        for slot, g in enumerate(src.summand_gens):
            if self.apply(g) != self.images[slot]:
                return False
        return True

    def image(self) -> frozenset:
        return submodule_closure(self.target, self.images)

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.size

    def is_injective(self) -> bool:
        seen = set()
        for m in range(self.source.size):
            y = self.apply(m)
            if y in seen:
                return False
            seen.add(y)
        return True


def hom_candidates(source: FiniteModule, target: FiniteModule):
    """Per source summand, the target elements killed by its annihilator.
    Tuples of such elements are exactly the homomorphisms from the sum."""
    out = []
    for ideal in source.summand_ideals:
        gens = _ideal_generators(source.ring, ideal)
        out.append([
            m for m in range(target.size)
            if all(target.smul(g, m) == target.zero for g in gens)
        ])
    return out


def _ideal_generators(ring: Ring, ideal: frozenset):
    """A small generating set, chosen greedily in canonical order."""
    gens = []
    have = frozenset([ring.zero])
    for x in sorted(ideal):
        if x not in have:
            gens.append(x)
            have = ideal_closure(ring, gens)
            if have == ideal:
                break
    return gens


def find_surjection(source: FiniteModule, target: FiniteModule):
    """Least image tuple giving a surjective hom, or None (exhaustive)."""
    if target.size == 1:
        return ModuleHom(source, target, tuple(target.zero for _ in source.summand_gens))
    if source.size < target.size:
        return None
    cands = hom_candidates(source, target)
    k = len(cands)

    def rest_bound(t):
        out = 1
        for c in cands[t:]:
            out *= len(c)
        return out

    def dfs(t, chosen, span):
        if len(span) * rest_bound(t) < target.size:
            return None
        if t == k:
            if len(span) == target.size:
                return tuple(chosen)
            return None
        for m in cands[t]:
            new_span = span if m in span else submodule_closure_from(target, span, m)
            got = dfs(t + 1, chosen + [m], new_span)
            if got is not None:
                return got
        return None

    images = dfs(0, [], frozenset([target.zero]))
    if images is None:
        return None
    return ModuleHom(source, target, images)


def submodule_closure_from(mod: FiniteModule, closed: frozenset, extra) -> frozenset:
    """Extend a submodule by one generator."""
    seed = sorted({mod.smul(r, extra) for r in range(mod.ring.size)})
    out = set(closed)
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for g in seed:
            y = mod.add(x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return frozenset(out)


def find_bijective_hom(source: FiniteModule, target: FiniteModule):
    """Least image tuple giving an isomorphism, or None (exhaustive)."""
    if source.size != target.size:
        return None
    hom = find_surjection(source, target)
    if hom is None:
        return None
    # a surjection between equal finite cardinalities is bijective
    return hom
