"""Byte-deterministic JSON and DOT serialization.

Descriptors, element literals, matrices, property reports, spectrum reports,
and polynomial systems all round-trip through plain JSON objects; dumps()
fixes key order and separators so equal inputs give equal bytes.
"""

from __future__ import annotations

import json

from .core import (
    NilpotentAlgebra,
    Product,
    Ring,
    TrivialExtension,
    ZMod,
    build_ring,
    value_from_literal,
    value_to_literal,
)
from .gluing import PolySystem
from .ideals import Ideal, minimal_generators
from .properties import PropertyReport
from .seqrings import FiniteTail, IntegerTail, SeqRing
from .snf import Matrix
from .spectrum import pspec, spec


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# descriptors


def descriptor_to_obj(desc):
    if isinstance(desc, ZMod):
        return {"kind": "zmod", "n": desc.n}
    if isinstance(desc, Product):
        return {"kind": "product", "factors": [descriptor_to_obj(f) for f in desc.factors]}
    if isinstance(desc, NilpotentAlgebra):
        return {
            "kind": "nilpotent_algebra",
            "p": desc.p,
            "vars": list(desc.vars),
            "truncation_degree": desc.truncation_degree,
            "extra_relations": [list(r) for r in desc.extra_relations],
        }
    if isinstance(desc, TrivialExtension):
        return {
            "kind": "trivial_extension",
            "ring": descriptor_to_obj(desc.ring),
            "module": {"cyclic_summands": [list(s) for s in desc.module_summands]},
        }
    raise TypeError(f"unknown descriptor {desc!r}")


def descriptor_from_obj(obj):
    kind = obj.get("kind")
    if kind == "zmod":
        return ZMod(int(obj["n"]))
    if kind == "product":
        return Product(tuple(descriptor_from_obj(f) for f in obj["factors"]))
    if kind == "nilpotent_algebra":
        return NilpotentAlgebra(
            int(obj["p"]),
            tuple(obj["vars"]),
            int(obj["truncation_degree"]),
            tuple(tuple(r) for r in obj.get("extra_relations", [])),
        )
    if kind == "trivial_extension":
        return TrivialExtension(
            descriptor_from_obj(obj["ring"]),
            tuple(tuple(s) for s in obj["module"]["cyclic_summands"]),
        )
    raise ValueError(f"unknown descriptor kind {kind!r}")


def seq_descriptor_to_obj(ring: SeqRing):
    pattern = [descriptor_to_obj(r.descriptor) for r in ring.base_rings]
    if isinstance(ring.tail, IntegerTail):
        return {"kind": "seq", "pattern": pattern, "tail": "integer"}
    return {
        "kind": "seq",
        "pattern": pattern,
        "tail": "algebra",
        "tail_ring": descriptor_to_obj(ring.tail.ring.descriptor),
        "reductions": [list(r) for r in ring.tail.reductions],
    }


def seq_descriptor_from_obj(obj) -> SeqRing:
    bases = [build_ring(descriptor_from_obj(d)) for d in obj["pattern"]]
    if obj["tail"] == "integer":
        moduli = tuple(d["n"] for d in obj["pattern"])
        tail = IntegerTail(moduli)
    else:
        tail_ring = build_ring(descriptor_from_obj(obj["tail_ring"]))
        tail = FiniteTail(tail_ring, bases, obj["reductions"])
    label = "Seq(" + ", ".join(r.label for r in bases) + ")"
    return SeqRing(bases, tail, label)


# ---------------------------------------------------------------------------
# elements and matrices


def element_to_literal(ring: Ring, index: int):
    return value_to_literal(ring.descriptor, ring.values[index])


def element_from_literal(ring: Ring, lit) -> int:
    return ring.index[value_from_literal(ring.descriptor, lit)]


def matrix_to_obj(mat: Matrix):
    return [[element_to_literal(mat.ring, x) for x in row] for row in mat.rows]


def matrix_from_obj(ring: Ring, rows) -> Matrix:
    return Matrix(ring, [[element_from_literal(ring, x) for x in row] for row in rows])


def _literalize(ring: Ring, obj):
    """Witness payloads hold element indices; rewrite them as literals."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return element_to_literal(ring, obj)
    if isinstance(obj, Ideal):
        return {
            "generators": [
                element_to_literal(obj.ring, g)
                for g in minimal_generators(obj.ring, obj.elements)
            ]
        }
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_literalize(ring, x) for x in items]
    if isinstance(obj, dict):
        return {
            json.dumps(_literalize(ring, k)): _literalize(ring, v)
            for k, v in sorted(obj.items())
        }
    return obj


def report_to_obj(ring: Ring, report: PropertyReport):
    return {
        "property": report.property,
        "holds": report.holds,
        "witness": _literalize(ring, report.witness),
        "counterexample": _literalize(ring, report.counterexample),
    }


# ---------------------------------------------------------------------------
# spectrum report and DOT export


def _prime_gens(ring: Ring, elements):
    return sorted(minimal_generators(ring, elements))


def spec_report_obj(ring: Ring):
    points = spec(ring)
    blocks = pspec(ring)
    return {
        "spec": [
            {
                "generators": [
                    element_to_literal(ring, g)
                    for g in _prime_gens(ring, pt.prime.elements)
                ],
                "is_maximal": pt.is_maximal,
                "is_minimal": pt.is_minimal,
            }
            for pt in points
        ],
        "pspec": [
            {
                "primes": [
                    [
                        element_to_literal(ring, g)
                        for g in _prime_gens(ring, pt.prime.elements)
                    ]
                    for pt in block.primes
                ],
                "pure_ideal": [
                    element_to_literal(ring, g)
                    for g in minimal_generators(ring, block.pure_ideal.elements)
                ],
            }
            for block in blocks
        ],
        "boolean_ring_size": len(ring.idempotents),
    }


def dot_spec(ring: Ring) -> str:
    """The specialization poset: primes as nodes, covering inclusions as
    edges, pSpec blocks as clusters."""
    points = spec(ring)
    blocks = pspec(ring)
    node_id = {pt.key(): f"p{i}" for i, pt in enumerate(points)}

    def label(pt):
        gens = _prime_gens(ring, pt.prime.elements)
        return "(" + ",".join(str(element_to_literal(ring, g)) for g in gens) + ")"

    lines = ["digraph spec {", "  rankdir=BT;"]
    for bi, block in enumerate(blocks):
        lines.append(f"  subgraph cluster_{bi} {{")
        lines.append(f'    label="block {bi}";')
        for pt in block.primes:
            lines.append(f'    {node_id[pt.key()]} [label="{label(pt)}"];')
        lines.append("  }")
    sets = {pt.key(): pt.prime.elements for pt in points}
    keys = [pt.key() for pt in points]
    for a in keys:
        for b in keys:
            if a == b or not sets[a] < sets[b]:
                continue
            if any(
                sets[a] < sets[c] and sets[c] < sets[b]
                for c in keys
                if c != a and c != b
            ):
                continue
            lines.append(f"  {node_id[a]} -> {node_id[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# polynomial systems


def polysystem_to_obj(sys: PolySystem):
    return {
        "constants": [element_to_literal(sys.algebra, c) for c in sys.constants],
        "polys": [
            [
                [
                    [kind, element_to_literal(sys.algebra, v) if kind == "c" else v]
                    for kind, v in word
                ]
                for word in poly
            ]
            for poly in sys.polys
        ],
    }


def polysystem_from_obj(algebra: Ring, obj) -> PolySystem:
    polys = []
    nvars = 0
    for poly in obj["polys"]:
        words = []
        for word in poly:
            atoms = []
            for kind, v in word:
                if kind == "c":
                    atoms.append(("c", element_from_literal(algebra, v)))
                else:
                    nvars = max(nvars, int(v) + 1)
                    atoms.append(("v", int(v)))
            words.append(tuple(atoms))
        polys.append(tuple(words))
    constants = tuple(element_from_literal(algebra, c) for c in obj["constants"])
    return PolySystem(algebra, nvars, constants, tuple(polys))
