"""The JSON workbench document: field, group, graded algebra, modules and lattices.

Layout::

    {
      "format": "gsmash/1",
      "name": "...",
      "field": "Q" | "Fp:P",
      "group": {"elements": [...], "table": [[...], ...]},
      "algebra": {"kind": "quiver", "vertices": [...],
                  "arrows": [{"name", "source", "target", "degree"}, ...],
                  "relations": [[[coeff, path], ...], ...],
                  "nilpotency_bound": N}
              or {"kind": "structure", "labels": [...],
                  "constants": [[i, j, k, coeff], ...],   (nonzero entries only)
                  "unit": [...], "degrees": [...]},
      "modules": {name: {"dim": d, "action": {basis label: matrix}}},
      "lattices": {name: {"rank": m, "action": {basis label: matrix of coefficient lists}}},
      "meta": {...}                                         (optional, kept verbatim)
    }

Scalars are strings ("3", "-1/2" over Q; "0".."p-1" over F_p); paths are
written left to right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import StructureAlgebra, check_algebra
from .field import Field, FieldError, field_from_spec
from .graded import GradedStructure, validate_grading
from .groups import FiniteGroup, GroupError
from .modules import FDModule, check_module
from .oppermann import Lattice1D, validate_lattice
from .quiver import Arrow, PresentationError, QuiverPresentation, load_quiver_algebra, presentation_degrees

__all__ = [
    "FORMAT",
    "DocumentError",
    "WorkbenchDocument",
    "parse_document",
    "load_document",
    "serialize_document",
    "module_payload",
    "lattice_payload",
]

FORMAT = "gsmash/1"


class DocumentError(ValueError):
    """Malformed or invalid document."""


@dataclass(eq=False)
class WorkbenchDocument:
    name: str
    field: Field
    group: FiniteGroup
    algebra: StructureAlgebra
    degrees: list[int]
    presentation: QuiverPresentation | None = None
    modules: dict[str, FDModule] = dc_field(default_factory=dict)
    lattices: dict[str, Lattice1D] = dc_field(default_factory=dict)
    meta: dict = dc_field(default_factory=dict)

    @property
    def graded(self) -> GradedStructure:
        cache = self.__dict__.setdefault("_cache", {})
        if "graded" not in cache:
            cache["graded"] = GradedStructure(self.algebra, self.group, list(self.degrees))
        return cache["graded"]

    def smash(self):
        from .graded import smash_product

        cache = self.__dict__.setdefault("_cache", {})
        if "smash" not in cache:
            cache["smash"] = smash_product(self.graded)
        return cache["smash"]


def _req(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise DocumentError(f"missing key {key!r} in {where}")
    return d[key]


def _scalar(F: Field, s, where: str):
    if not isinstance(s, (str, int)):
        raise DocumentError(f"scalar in {where} must be a string, got {s!r}")
    try:
        return F.parse(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad scalar {s!r} in {where}: {exc}") from None


def _matrix(F: Field, rows, r: int, c: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != r or any(not isinstance(x, list) or len(x) != c for x in rows):
        raise DocumentError(f"{where} must be a {r}x{c} matrix")
    out = F.zeros((r, c))
    for i, row in enumerate(rows):
        for j, s in enumerate(row):
            out[i, j] = _scalar(F, s, where)
    return out


def _parse_group(g: dict) -> FiniteGroup:
    try:
        return FiniteGroup.from_table(_req(g, "elements", "group"), _req(g, "table", "group"))
    except (GroupError, TypeError, ValueError) as exc:
        raise DocumentError(f"invalid group: {exc}") from None


def _parse_algebra(F: Field, G: FiniteGroup, a: dict):
    kind = _req(a, "kind", "algebra")
    if kind == "quiver":
        try:
            arrows = [
                Arrow(str(_req(x, "name", "arrow")), str(_req(x, "source", "arrow")), str(_req(x, "target", "arrow")),
                      None if x.get("degree") is None else str(x["degree"]))
                for x in _req(a, "arrows", "algebra")
            ]
            rels = [[(str(c), str(p)) for c, p in rel] for rel in a.get("relations", [])]
            pres = QuiverPresentation(
                [str(v) for v in _req(a, "vertices", "algebra")], arrows, rels, int(_req(a, "nilpotency_bound", "algebra"))
            )
            for r in rels:
                for c, _ in r:
                    _scalar(F, c, "relation coefficient")
            A = load_quiver_algebra(pres, F)
            degrees = presentation_degrees(pres, A, G)
        except (PresentationError, GroupError) as exc:
            raise DocumentError(f"invalid quiver presentation: {exc}") from None
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"malformed quiver presentation: {exc}") from None
        return A, degrees, pres
    if kind == "structure":
        labels = [str(x) for x in _req(a, "labels", "algebra")]
        n = len(labels)
        if n == 0:
            raise DocumentError("algebra must have dimension at least 1")
        c = F.zeros((n, n, n))
        for entry in _req(a, "constants", "algebra"):
            if not isinstance(entry, list) or len(entry) != 4:
                raise DocumentError(f"constant entry {entry!r} must be [i, j, k, coeff]")
            i, j, k, v = entry
            if not all(isinstance(t, int) and 0 <= t < n for t in (i, j, k)):
                raise DocumentError(f"constant entry {entry!r} has an index out of range")
            c[i, j, k] = _scalar(F, v, "constants")
        unit_raw = _req(a, "unit", "algebra")
        if len(unit_raw) != n:
            raise DocumentError("unit must have one coordinate per basis element")
        unit = F.array([_scalar(F, s, "unit") for s in unit_raw])
        A = StructureAlgebra(F, labels, c, unit)
        deg_raw = a.get("degrees")
        if deg_raw is None:
            degrees = [G.identity] * n
        else:
            if len(deg_raw) != n:
                raise DocumentError("degrees must have one entry per basis element")
            try:
                degrees = [G.index(d) for d in deg_raw]
            except GroupError as exc:
                raise DocumentError(str(exc)) from None
        return A, degrees, None
    raise DocumentError(f"unknown algebra kind {kind!r}")


def _parse_module(F: Field, A: StructureAlgebra, name: str, payload: dict) -> FDModule:
    d = _req(payload, "dim", f"module {name}")
    if not isinstance(d, int) or d < 0:
        raise DocumentError(f"module {name}: dim must be a nonnegative integer")
    action = _req(payload, "action", f"module {name}")
    if set(action) != set(A.labels):
        raise DocumentError(f"module {name}: action must list every basis element exactly once")
    act = F.zeros((A.dim, d, d))
    for i, lab in enumerate(A.labels):
        act[i] = _matrix(F, action[lab], d, d, f"module {name}, action of {lab}")
    M = FDModule(A, act, name=name)
    chk = check_module(M)
    if not chk:
        raise DocumentError(f"module {name} is not a module: {chk.message}")
    return M


def _parse_lattice(F: Field, A: StructureAlgebra, name: str, payload: dict) -> Lattice1D:
    m = _req(payload, "rank", f"lattice {name}")
    if not isinstance(m, int) or m < 1:
        raise DocumentError(f"lattice {name}: rank must be a positive integer")
    action = _req(payload, "action", f"lattice {name}")
    if set(action) != set(A.labels):
        raise DocumentError(f"lattice {name}: action must list every basis element exactly once")
    entries = {}
    D = 1
    for lab in A.labels:
        rows = action[lab]
        if not isinstance(rows, list) or len(rows) != m or any(not isinstance(r, list) or len(r) != m for r in rows):
            raise DocumentError(f"lattice {name}, action of {lab} must be {m}x{m}")
        for r in rows:
            for p in r:
                if not isinstance(p, list):
                    raise DocumentError(f"lattice {name}: entries are coefficient lists")
                D = max(D, len(p))
        entries[lab] = rows
    coeffs = F.zeros((A.dim, D, m, m))
    for i, lab in enumerate(A.labels):
        for r, row in enumerate(entries[lab]):
            for c, p in enumerate(row):
                for k, s in enumerate(p):
                    coeffs[i, k, r, c] = _scalar(F, s, f"lattice {name}")
    L = Lattice1D(A, coeffs, name=name)
    chk = validate_lattice(L)
    if not chk:
        raise DocumentError(f"lattice {name} is invalid: {chk.message}")
    return L


def parse_document(data: dict, field: str | Field | None = None) -> WorkbenchDocument:
    """Build a document from decoded JSON; ``field`` overrides the stored field."""
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    fmt = data.get("format")
    if fmt != FORMAT:
        raise DocumentError(f"unsupported document format {fmt!r}; expected {FORMAT!r}")
    try:
        if isinstance(field, Field):
            F = field
        else:
            F = field_from_spec(field if field is not None else _req(data, "field", "document"))
    except FieldError as exc:
        raise DocumentError(str(exc)) from None
    G = _parse_group(_req(data, "group", "document"))
    A, degrees, pres = _parse_algebra(F, G, _req(data, "algebra", "document"))
    A.name = str(data.get("name", ""))
    chk = check_algebra(A)
    if not chk:
        raise DocumentError(f"algebra axioms fail: {chk.message}")
    doc = WorkbenchDocument(str(data.get("name", "")), F, G, A, degrees, pres, meta=dict(data.get("meta", {})))
    gchk = validate_grading(doc.graded)
    if not gchk:
        raise DocumentError(f"invalid grading: {gchk.message}")
    for name, payload in data.get("modules", {}).items():
        doc.modules[name] = _parse_module(F, A, name, payload)
    for name, payload in data.get("lattices", {}).items():
        doc.lattices[name] = _parse_lattice(F, A, name, payload)
    return doc


def load_document(text: str, field: str | Field | None = None) -> WorkbenchDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    return parse_document(data, field)


# --- serialization ---------------------------------------------------------


def module_payload(M: FDModule) -> dict:
    F = M.field
    return {
        "dim": M.dim,
        "action": {lab: [[F.format(v) for v in row] for row in M.action[i]] for i, lab in enumerate(M.algebra.labels)},
    }


def lattice_payload(L: Lattice1D) -> dict:
    F = L.field
    out = {}
    for i, lab in enumerate(L.algebra.labels):
        rows = []
        for r in range(L.rank):
            row = []
            for c in range(L.rank):
                coeffs = [F.format(v) for v in L.coeffs[i, :, r, c]]
                while coeffs and coeffs[-1] == "0":
                    coeffs.pop()
                row.append(coeffs)
            rows.append(row)
        out[lab] = rows
    return {"rank": L.rank, "action": out}


def _algebra_payload(doc: WorkbenchDocument) -> dict:
    F, G = doc.field, doc.group
    if doc.presentation is not None:
        p = doc.presentation
        return {
            "kind": "quiver",
            "vertices": list(p.vertices),
            "arrows": [
                {"name": a.name, "source": a.source, "target": a.target, "degree": a.degree}
                for a in p.arrows
            ],
            "relations": [[[F.format(F.parse(c)), path] for c, path in rel] for rel in p.relations],
            "nilpotency_bound": p.nilpotency_bound,
        }
    A = doc.algebra
    nz = np.argwhere(F.nonzero_mask(A.constants))
    return {
        "kind": "structure",
        "labels": list(A.labels),
        "constants": [[int(i), int(j), int(k), F.format(A.constants[i, j, k])] for i, j, k in nz],
        "unit": [F.format(v) for v in A.unit],
        "degrees": [G.elements[d] for d in doc.degrees],
    }


def document_dict(doc: WorkbenchDocument) -> dict:
    out = {
        "format": FORMAT,
        "name": doc.name,
        "field": doc.field.spec(),
        "group": {"elements": list(doc.group.elements), "table": [list(r) for r in doc.group.table]},
        "algebra": _algebra_payload(doc),
        "modules": {k: module_payload(M) for k, M in doc.modules.items()},
        "lattices": {k: lattice_payload(L) for k, L in doc.lattices.items()},
    }
    if doc.meta:
        out["meta"] = doc.meta
    return out


def _dumps(obj, level: int = 0) -> str:
    """Indented JSON with any container that fits on one line kept inline."""
    compact = json.dumps(obj)
    if not isinstance(obj, (list, dict)) or len(compact) + 2 * level <= 88:
        return compact
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(str(k))}: {_dumps(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    return "[\n" + ",\n".join(pad + _dumps(x, level + 1) for x in obj) + "\n" + end + "]"


def serialize_document(doc: WorkbenchDocument) -> str:
    """Canonical text: fixed key order, scalar lists on one line."""
    return _dumps(document_dict(doc)) + "\n"
