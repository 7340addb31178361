import copy
import json

import pytest

from gsmash.document import DocumentError, load_document, parse_document, serialize_document
from gsmash.examples import EXAMPLES, build_example, example_data
from gsmash.field import PrimeField

FIXTURES = [(n, {}) for n in EXAMPLES if n != "exterior-n"] + [("exterior-n", {"n": k}) for k in (1, 2, 3)]
FIX_IDS = [n + str(kw.get("n", "")) for n, kw in FIXTURES]


@pytest.mark.parametrize("name,kw", FIXTURES, ids=FIX_IDS)
@pytest.mark.parametrize("field", ["Q", "Fp:32003"])
def test_round_trip_bit_identical(name, kw, field):
    text = serialize_document(build_example(name, field=field, **kw))
    again = serialize_document(load_document(text))
    assert again == text
    assert json.loads(text)["field"] == field


def test_smash_document_round_trip(ext2):
    from gsmash.document import WorkbenchDocument
    from gsmash.groups import trivial_group

    B = ext2.smash().algebra
    doc = WorkbenchDocument("b", ext2.field, trivial_group(), B, [0] * B.dim, meta={"source": "x"})
    text = serialize_document(doc)
    back = load_document(text)
    assert (back.algebra.constants == B.constants).all()
    assert serialize_document(back) == text


def test_field_override(kron):
    text = serialize_document(kron)
    doc = load_document(text, field="Fp:7")
    assert doc.field == PrimeField(7)
    assert doc.algebra.dim == kron.algebra.dim


def test_modules_and_lattices_loaded(a2, loop, kron):
    assert set(a2.modules) == {"S1", "S2"}
    assert set(loop.lattices) == {"nilpotent", "constant"}
    assert kron.lattices["kronecker"].rank == 2


def mutate(data, path, value):
    d = copy.deepcopy(data)
    cur = d
    for k in path[:-1]:
        cur = cur[k]
    cur[path[-1]] = value
    return d


BASE = example_data("a2-z2")


@pytest.mark.parametrize(
    "data",
    [
        mutate(BASE, ["format"], "other/9"),
        mutate(BASE, ["field"], "Fp:9"),
        mutate(BASE, ["group", "table"], [[0, 0], [0, 0]]),
        mutate(BASE, ["algebra", "kind"], "matrix"),
        mutate(BASE, ["algebra", "arrows", 0, "target"], "9"),
        mutate(BASE, ["algebra", "arrows", 0, "degree"], "7"),
        mutate(BASE, ["algebra", "relations"], [[["1", "a"]]]),
        mutate(BASE, ["modules", "S1", "action", "e_1"], [["2"]]),
        mutate(BASE, ["modules", "S1", "action", "a"], [["1", "0"]]),
        mutate(BASE, ["modules", "S1", "dim"], -1),
        [1, 2, 3],
    ],
    ids=["format", "field", "group", "kind", "endpoint", "degree", "relation", "module-axiom", "shape", "dim", "not-object"],
)
def test_malformed_documents_rejected(data):
    with pytest.raises((DocumentError, ValueError)):
        parse_document(data)


def test_non_homogeneous_relation_rejected():
    data = example_data("exterior-n", n=2)
    # terms of degree 2 and 3 in Z_3
    data["algebra"]["relations"] = [[["1", "x1*x1"]], [["1", "x2*x2"]], [["1", "x1*x2"], ["1", "x2*x1*x1"]]]
    with pytest.raises(DocumentError, match="homogeneous"):
        parse_document(data)


def test_invalid_json():
    with pytest.raises(DocumentError):
        load_document("{not json")


def test_structure_kind_document():
    data = {
        "format": "gsmash/1",
        "name": "dual-numbers",
        "field": "Q",
        "group": {"elements": ["0", "1"], "table": [[0, 1], [1, 0]]},
        "algebra": {"kind": "structure", "labels": ["1", "x"], "constants": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]], "unit": ["1", "0"], "degrees": ["0", "1"]},
        "modules": {},
        "lattices": {},
    }
    doc = parse_document(data)
    assert doc.algebra.dim == 2 and doc.degrees == [0, 1]
    assert serialize_document(load_document(serialize_document(doc))) == serialize_document(doc)
    data["algebra"]["constants"].append([1, 1, 0, "1"])  # x*x = 1 is homogeneous in Z_2
    assert parse_document(data).algebra.dim == 2
    data["algebra"]["degrees"] = ["1", "0"]
    with pytest.raises(DocumentError):
        parse_document(data)
