"""Built-in example documents."""

from __future__ import annotations

from itertools import combinations

from .algebra import StructureAlgebra
from .document import FORMAT, DocumentError, WorkbenchDocument, parse_document
from .field import Field

__all__ = ["EXAMPLES", "build_example", "example_data", "exterior_structure", "GRADED_EXAMPLES"]

EXAMPLES = ("exterior-n", "kronecker", "kronecker-z2", "a2-z2", "loop-square-z2")
GRADED_EXAMPLES = (("exterior-n", {"n": 2}), ("kronecker-z2", {}), ("a2-z2", {}), ("loop-square-z2", {}), ("exterior-n", {"n": 1}))


def _cyclic(n: int) -> dict:
    return {"elements": [str(i) for i in range(n)], "table": [[(i + j) % n for j in range(n)] for i in range(n)]}


def _trivial() -> dict:
    return {"elements": ["e"], "table": [[0]]}


def _const(rows):
    """Matrix of constant polynomials."""
    return [[[v] if v != "0" else [] for v in r] for r in rows]


def _exterior(n: int, field: str) -> dict:
    if n < 1:
        raise DocumentError("exterior-n needs n >= 1")
    gens = [f"x{i}" for i in range(1, n + 1)]
    rels = [[["1", f"{x}*{x}"]] for x in gens]
    rels += [[["1", f"{a}*{b}"], ["1", f"{b}*{a}"]] for a, b in combinations(gens, 2)]
    return {
        "format": FORMAT,
        "name": f"exterior-{n}",
        "field": field,
        "group": _cyclic(n + 1),
        "algebra": {
            "kind": "quiver",
            "vertices": ["v"],
            "arrows": [{"name": x, "source": "v", "target": "v", "degree": "1"} for x in gens],
            "relations": rels,
            "nilpotency_bound": n + 1,
        },
        "modules": {},
        "lattices": {},
    }


def _kronecker_lattices() -> dict:
    # basis e_1, e_2, a, b; arrows 1 -> 2 act from the first to the second coordinate
    return {
        "kronecker": {
            "rank": 2,
            "action": {
                "e_1": _const([["1", "0"], ["0", "0"]]),
                "e_2": _const([["0", "0"], ["0", "1"]]),
                "a": _const([["0", "0"], ["1", "0"]]),
                "b": [[[], []], [["0", "1"], []]],
            },
        },
        "constant": {
            "rank": 2,
            "action": {
                "e_1": _const([["1", "0"], ["0", "0"]]),
                "e_2": _const([["0", "0"], ["0", "1"]]),
                "a": _const([["0", "0"], ["1", "0"]]),
                "b": _const([["0", "0"], ["0", "0"]]),
            },
        },
    }


def _kronecker(field: str, graded: bool) -> dict:
    deg = "1" if graded else None
    return {
        "format": FORMAT,
        "name": "kronecker-z2" if graded else "kronecker",
        "field": field,
        "group": _cyclic(2) if graded else _trivial(),
        "algebra": {
            "kind": "quiver",
            "vertices": ["1", "2"],
            "arrows": [
                {"name": "a", "source": "1", "target": "2", "degree": deg},
                {"name": "b", "source": "1", "target": "2", "degree": deg},
            ],
            "relations": [],
            "nilpotency_bound": 2,
        },
        "modules": {},
        "lattices": _kronecker_lattices(),
    }


def _a2(field: str) -> dict:
    return {
        "format": FORMAT,
        "name": "a2-z2",
        "field": field,
        "group": _cyclic(2),
        "algebra": {
            "kind": "quiver",
            "vertices": ["1", "2"],
            "arrows": [{"name": "a", "source": "1", "target": "2", "degree": "1"}],
            "relations": [],
            "nilpotency_bound": 2,
        },
        "modules": {
            "S1": {"dim": 1, "action": {"e_1": [["1"]], "e_2": [["0"]], "a": [["0"]]}},
            "S2": {"dim": 1, "action": {"e_1": [["0"]], "e_2": [["1"]], "a": [["0"]]}},
        },
        "lattices": {},
    }


def _loop_square(field: str) -> dict:
    return {
        "format": FORMAT,
        "name": "loop-square-z2",
        "field": field,
        "group": _cyclic(2),
        "algebra": {
            "kind": "quiver",
            "vertices": ["v"],
            "arrows": [{"name": "x", "source": "v", "target": "v", "degree": "1"}],
            "relations": [[["1", "x*x"]]],
            "nilpotency_bound": 2,
        },
        "modules": {"k": {"dim": 1, "action": {"e_v": [["1"]], "x": [["0"]]}}},
        "lattices": {
            # x acts as t * E_12: nonzero class only at t = 0
            "nilpotent": {
                "rank": 2,
                "action": {"e_v": _const([["1", "0"], ["0", "1"]]), "x": [[[], ["0", "1"]], [[], []]]},
            },
            "constant": {
                "rank": 2,
                "action": {"e_v": _const([["1", "0"], ["0", "1"]]), "x": _const([["0", "1"], ["0", "0"]])},
            },
        },
    }


def example_data(name: str, n: int = 2, field: str = "Q") -> dict:
    if name == "exterior-n":
        return _exterior(n, field)
    if name == "kronecker":
        return _kronecker(field, graded=False)
    if name == "kronecker-z2":
        return _kronecker(field, graded=True)
    if name == "a2-z2":
        return _a2(field)
    if name == "loop-square-z2":
        return _loop_square(field)
    raise DocumentError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def build_example(name: str, n: int = 2, field: str | Field = "Q") -> WorkbenchDocument:
    spec = field.spec() if isinstance(field, Field) else field
    return parse_document(example_data(name, n=n, field=spec))


def exterior_structure(n: int, F: Field) -> StructureAlgebra:
    """Exterior algebra on x1..xn straight from wedge signs, basis ordered like the quiver loader."""
    subsets = [()]
    for k in range(1, n + 1):
        subsets += list(combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}
    dim = len(subsets)
    c = F.zeros((dim, dim, dim))
    for i, S in enumerate(subsets):
        for j, T in enumerate(subsets):
            if set(S) & set(T):
                continue
            # b_S b_T is the word T followed by S
            word = list(T) + list(S)
            inversions = sum(1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b])
            c[i, j, index[tuple(sorted(word))]] = F(-1 if inversions % 2 else 1)
    unit = F.zeros(dim)
    unit[0] = F.one
    labels = ["e_v"] + ["*".join(f"x{k + 1}" for k in s) for s in subsets[1:]]
    return StructureAlgebra(F, labels, c, unit, name=f"wedge-{n}")
