"""The default test corpus: a fixed, deterministic family of small rings.

Coverage: all residue rings up to 30, a spread of products of up to three
chain rings of size at most 9, the truncated polynomial algebras of size at
most 16, and trivial extensions of Z/4 and Z/6 by one or two cyclic
summands.  Everything a sweep needs finishes in minutes.
"""

from __future__ import annotations

from .core import (
    NilpotentAlgebra,
    Product,
    Ring,
    TrivialExtension,
    ZMod,
    build_ring,
)
from .modules import FiniteModule, cyclic_sum_module

_CACHE: dict = {}


def chain_ring_descriptors(max_size: int = 9):
    """Every expressible chain ring of size <= max_size: residue rings of
    prime power order and truncated p-polynomial rings."""
    out = []
    for n in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27):
        if n <= max_size:
            out.append(ZMod(n))
    for p, var, deg in ((2, "x", 2), (2, "x", 3), (2, "x", 4), (3, "t", 2), (5, "t", 2)):
        desc = NilpotentAlgebra(p, (var,), deg, ())
        if desc.size() <= max_size:
            out.append(desc)
    return out


def corpus_descriptors():
    zmods = [ZMod(n) for n in range(2, 31)]
    products = [
        Product((ZMod(2), ZMod(2))),
        Product((ZMod(2), ZMod(4))),
        Product((ZMod(4), ZMod(4))),
        Product((ZMod(4), ZMod(9))),
        Product((ZMod(8), ZMod(9))),
        Product((ZMod(9), ZMod(9))),
        Product((NilpotentAlgebra(2, ("x",), 2, ()), ZMod(2))),
        Product((NilpotentAlgebra(2, ("x",), 2, ()), NilpotentAlgebra(2, ("x",), 2, ()))),
        Product((NilpotentAlgebra(2, ("x",), 3, ()), ZMod(9))),
        Product((NilpotentAlgebra(3, ("t",), 2, ()), ZMod(4))),
        Product((ZMod(2), ZMod(2), ZMod(2))),
        Product((ZMod(2), ZMod(3), ZMod(5))),
        Product((ZMod(4), ZMod(9), ZMod(5))),
        Product((ZMod(8), ZMod(9), ZMod(7))),
        Product((NilpotentAlgebra(2, ("x",), 2, ()), ZMod(3), ZMod(5))),
        Product((ZMod(4), ZMod(4), ZMod(4))),
        Product((ZMod(8), ZMod(8), ZMod(9))),
        Product((ZMod(9), ZMod(8), NilpotentAlgebra(2, ("x",), 2, ()))),
    ]
    algebras = [
        NilpotentAlgebra(2, ("x",), 2, ()),
        NilpotentAlgebra(2, ("x",), 3, ()),
        NilpotentAlgebra(2, ("x",), 4, ()),
        NilpotentAlgebra(3, ("t",), 2, ()),
        NilpotentAlgebra(2, ("x", "y"), 2, ()),
        NilpotentAlgebra(2, ("x", "y", "z"), 2, ()),
        NilpotentAlgebra(2, ("x", "y"), 3, ((2, 0), (0, 2))),
    ]
    trivexts = [
        TrivialExtension(ZMod(4), ((0,),)),
        TrivialExtension(ZMod(4), ((2,),)),
        TrivialExtension(ZMod(4), ((2,), (2,))),
        TrivialExtension(ZMod(4), ((0,), (2,))),
        TrivialExtension(ZMod(6), ((0,),)),
        TrivialExtension(ZMod(6), ((2,),)),
        TrivialExtension(ZMod(6), ((3,),)),
        TrivialExtension(ZMod(6), ((2,), (3,))),
        TrivialExtension(ZMod(6), ((0,), (0,))),
    ]
    return zmods + products + algebras + trivexts


def default_corpus() -> list[Ring]:
    hit = _CACHE.get("corpus")
    if hit is None:
        hit = [build_ring(d) for d in corpus_descriptors()]
        _CACHE["corpus"] = hit
    return hit


def default_module_corpus() -> list[FiniteModule]:
    """Modules with up to three cyclic summands over a handful of small
    corpus rings, spanning one-, two-, and three-generator shapes."""
    hit = _CACHE.get("modules")
    if hit is not None:
        return hit
    out = []
    z4 = build_ring(ZMod(4))
    z6 = build_ring(ZMod(6))
    z12 = build_ring(ZMod(12))
    z2xz4 = build_ring(Product((ZMod(2), ZMod(4))))
    f2x = build_ring(NilpotentAlgebra(2, ("x",), 2, ()))
    for ring, summand_choices in (
        (z4, [[(0,)], [(2,)], [(2,), (2,)], [(0,), (2,)], [(2,), (2,), (2,)]]),
        (z6, [[(0,)], [(2,)], [(2,), (3,)], [(2,), (3,), (0,)]]),
        (z12, [[(4,)], [(4,), (6,)], [(2,), (2,)]]),
        (z2xz4, [[((0, 2),)], [((1, 0),), ((0, 1),)]]),
        (f2x, [[((0, 1),)], [((0, 1),), ((0, 0),)]]),
    ):
        for summands in summand_choices:
            gens = [
                [ring.index[_value(ring, lit)] for lit in summand]
                for summand in summands
            ]
            out.append(cyclic_sum_module(ring, gens))
    _CACHE["modules"] = out
    return out


def _value(ring, lit):
    from .core import value_from_literal

    return value_from_literal(ring.descriptor, lit)
