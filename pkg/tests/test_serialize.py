import json

from finring.core import (
    NilpotentAlgebra,
    Product,
    TrivialExtension,
    ZMod,
    build_ring,
)
from finring.gluing import PolySystem
from finring.ideals import Ideal
from finring.properties import arithmetical_check, bezout_check
from finring.seqrings import burrap_ring, nonqif_ring
from finring.serialize import (
    descriptor_from_obj,
    descriptor_to_obj,
    dot_spec,
    dumps,
    element_from_literal,
    element_to_literal,
    matrix_from_obj,
    matrix_to_obj,
    polysystem_from_obj,
    polysystem_to_obj,
    report_to_obj,
    seq_descriptor_from_obj,
    seq_descriptor_to_obj,
    spec_report_obj,
)
from finring.snf import Matrix

DESCRIPTORS = [
    ZMod(6),
    Product((ZMod(4), ZMod(9))),
    NilpotentAlgebra(2, ("x", "y"), 2, ()),
    NilpotentAlgebra(2, ("x", "y"), 3, ((2, 0), (0, 2))),
    TrivialExtension(ZMod(4), ((2,),)),
    Product((ZMod(2), Product((ZMod(3), ZMod(5))))),
]


def test_descriptor_round_trips():
    for desc in DESCRIPTORS:
        obj = descriptor_to_obj(desc)
        json.loads(dumps(obj))
        assert descriptor_from_obj(obj) == desc


def test_seq_descriptor_round_trips():
    for ring in (burrap_ring(), nonqif_ring()):
        obj = seq_descriptor_to_obj(ring)
        back = seq_descriptor_from_obj(json.loads(dumps(obj)))
        assert [r.label for r in back.base_rings] == [
            r.label for r in ring.base_rings
        ]
        assert type(back.tail) is type(ring.tail)
        assert (back.one * back.one) == back.one
    obj = seq_descriptor_to_obj(burrap_ring())
    assert obj["kind"] == "seq"
    assert obj["tail"] == "integer"


def test_element_round_trips():
    for desc in DESCRIPTORS:
        ring = build_ring(desc)
        for x in range(ring.size):
            lit = element_to_literal(ring, x)
            json.loads(dumps(lit))
            assert element_from_literal(ring, lit) == x


def test_matrix_round_trip():
    ring = build_ring(Product((ZMod(4), ZMod(3))))
    mat = Matrix(ring, [[0, 5, 3], [11, 1, 7]])
    obj = matrix_to_obj(mat)
    assert matrix_from_obj(ring, obj) == mat
    assert len(obj) == 2 and len(obj[0]) == 3


def test_report_objects():
    z6 = build_ring(ZMod(6))
    obj = report_to_obj(z6, bezout_check(z6))
    assert obj == {
        "property": "bezout",
        "holds": True,
        "witness": None,
        "counterexample": None,
    }
    kxy = build_ring(NilpotentAlgebra(2, ("x", "y"), 2, ()))
    obj = report_to_obj(kxy, arithmetical_check(kxy))
    assert obj["holds"] is False
    left, right = obj["counterexample"]
    assert set(left) == {"generators"}
    assert json.loads(dumps(obj))["counterexample"] == [left, right]


def test_literalize_handles_containers():
    from finring.serialize import _literalize

    z6 = build_ring(ZMod(6))
    ideal = Ideal.generated(z6, [2])
    out = _literalize(z6, {"a": [1, (2, 3)], "b": frozenset([5, 0]), "c": ideal})
    assert out == {
        '"a"': [1, [2, 3]],
        '"b"': [0, 5],
        '"c"': {"generators": [2]},
    }
    assert _literalize(z6, True) is True
    assert _literalize(z6, None) is None
    assert _literalize(z6, "label") == "label"


def test_spec_report_schema():
    ring = build_ring(Product((ZMod(4), ZMod(9))))
    obj = spec_report_obj(ring)
    assert set(obj) == {"spec", "pspec", "boolean_ring_size"}
    assert len(obj["spec"]) == 2
    assert all(pt["is_maximal"] and pt["is_minimal"] for pt in obj["spec"])
    pure = sorted(block["pure_ideal"] for block in obj["pspec"])
    assert pure == [[[0, 1]], [[1, 0]]]
    assert obj["boolean_ring_size"] == 4
    json.loads(dumps(obj))


def test_dot_export():
    z6 = build_ring(ZMod(6))
    dot = dot_spec(z6)
    assert dot.startswith("digraph spec {")
    assert "rankdir=BT;" in dot
    assert 'label="block 0"' in dot and 'label="block 1"' in dot
    assert "->" not in dot
    z4 = build_ring(ZMod(4))
    assert dot_spec(z4).count("label=\"block") == 1
    z30 = build_ring(ZMod(30))
    assert dot_spec(z30).count("subgraph") == 3


def test_polysystem_round_trip():
    z6 = build_ring(ZMod(6))
    neg_one = z6.neg(z6.one)
    sys = PolySystem(
        z6,
        2,
        (4,),
        (
            ((("v", 0), ("v", 1)), (("c", neg_one),)),
            ((("c", 4), ("v", 0)),),
        ),
    )
    obj = polysystem_to_obj(sys)
    back = polysystem_from_obj(z6, json.loads(dumps(obj)))
    assert back.polys == sys.polys
    assert back.constants == sys.constants
    assert back.nvars == sys.nvars


def test_dumps_deterministic_and_sorted():
    payload = {"zeta": 1, "alpha": [3, 2], "mid": {"b": 1, "a": 2}}
    text = dumps(payload)
    assert text == '{"alpha":[3,2],"mid":{"a":2,"b":1},"zeta":1}\n'
    assert dumps(payload) == text
