"""Bound quiver presentations and their conversion to structure constants.

Paths are written left to right: ``"a*b"`` is "a then b", so the target of
``a`` must equal the source of ``b``.  The algebra product is composition,
``q . p = "p then q"``; with this convention ``A e_v`` is spanned by the
paths starting at ``v`` and a left module is a covariant representation
(an arrow ``v -> w`` maps ``e_v M`` into ``e_w M``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import StructureAlgebra
from .field import Field
from .linalg import rref

__all__ = ["Arrow", "QuiverPresentation", "Path", "PresentationError", "load_quiver_algebra", "parse_path", "presentation_degrees"]


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    degree: str | None = None


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


@dataclass
class QuiverPresentation:
    vertices: list[str]
    arrows: list[Arrow]
    # each relation: list of (coefficient string, path string)
    relations: list[list[tuple[str, str]]] = dc_field(default_factory=list)
    nilpotency_bound: int = 2

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise PresentationError(f"unknown arrow {name!r}")


def parse_path(pres: QuiverPresentation, text: str) -> Path:
    names = [t.strip() for t in text.split("*") if t.strip()]
    if not names:
        raise PresentationError(f"empty path {text!r}")
    if len(names) == 1 and names[0].startswith("e_") and names[0][2:] in pres.vertices:
        v = names[0][2:]
        return Path(v, v, ())
    arrows = [pres.arrow(n) for n in names]
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise PresentationError(f"path {text!r} is not composable at {a.name}*{b.name}")
    return Path(arrows[0].source, arrows[-1].target, tuple(names))


def _enumerate_paths(pres: QuiverPresentation, max_len: int) -> list[Path]:
    """Trivial paths (vertex order), arrows, then longer paths lexicographically by arrow index."""
    order = {a.name: i for i, a in enumerate(pres.arrows)}
    paths = [Path(v, v, ()) for v in pres.vertices]
    layer = [Path(a.source, a.target, (a.name,)) for a in pres.arrows]
    length = 1
    while layer and length <= max_len:
        layer.sort(key=lambda p: [order[x] for x in p.arrows])
        paths.extend(layer)
        nxt = []
        for p in layer:
            for a in pres.arrows:
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        layer = nxt
        length += 1
    return paths


def _concat(p: Path, q: Path) -> Path | None:
    """``p then q``."""
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def load_quiver_algebra(pres: QuiverPresentation, F: Field, name: str = "") -> StructureAlgebra:
    """Structure constants of kQ/I, I spanned by padded relations below the nilpotency bound."""
    N = pres.nilpotency_bound
    if N < 1:
        raise PresentationError("nilpotency bound must be at least 1")
    if len(set(pres.vertices)) != len(pres.vertices):
        raise PresentationError("duplicate vertex labels")
    for a in pres.arrows:
        if a.source not in pres.vertices or a.target not in pres.vertices:
            raise PresentationError(f"arrow {a.name} has an unknown endpoint")
    paths = _enumerate_paths(pres, N - 1)
    index = {p: i for i, p in enumerate(paths)}
    n_paths = len(paths)

    rels = []
    for rel in pres.relations:
        terms = []
        for coeff, text in rel:
            p = parse_path(pres, text)
            if p.length < 2:
                raise PresentationError(f"relation term {text!r} has length < 2")
            terms.append((F(coeff), p))
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            raise PresentationError(f"relation {rel!r} mixes sources/targets")
        rels.append(terms)

    # span of u * r * w (u first) over all padding paths, dropping terms of length >= N
    ideal_rows = []
    for terms in rels:
        s, t = next(iter(terms))[1].source, next(iter(terms))[1].target
        for u in paths:
            if u.target != s:
                continue
            for w in paths:
                if w.source != t:
                    continue
                row = F.zeros(n_paths)
                hit = False
                for c, p in terms:
                    full = _concat(_concat(u, p), w)
                    if full.length >= N:
                        continue
                    row[index[full]] = F.add(row[index[full]], c)
                    hit = True
                if hit and F.nonzero_mask(row).any():
                    ideal_rows.append(row)

    # pivots on the largest paths: eliminate with reversed column order
    rev = list(range(n_paths - 1, -1, -1))
    if ideal_rows:
        R, piv_rev = rref(F, np.stack(ideal_rows)[:, rev])
        R = R[: len(piv_rev)]
    else:
        R, piv_rev = F.zeros((0, n_paths)), []
    pivot_paths = {rev[c]: i for i, c in enumerate(piv_rev)}
    for idx in pivot_paths:
        if paths[idx].length < 2:
            raise PresentationError(f"ideal is not admissible: {paths[idx].label()} lies in it")
    basis_idx = [i for i in range(n_paths) if i not in pivot_paths]
    pos = {i: k for k, i in enumerate(basis_idx)}
    n = len(basis_idx)

    def normal_form(p: Path | None) -> np.ndarray:
        v = F.zeros(n)
        if p is None or p.length >= N:
            return v
        i = index[p]
        if i in pos:
            v[pos[i]] = F.one
            return v
        row_rev = R[pivot_paths[i]]
        for c_rev, val in enumerate(row_rev):
            col = rev[c_rev]
            if col != i and col in pos and not F.is_zero(val):
                v[pos[col]] = F.neg(val)
        return v

    basis = [paths[i] for i in basis_idx]
    constants = F.zeros((n, n, n))
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            # b_i . b_j = "b_j then b_i"
            q = _concat(bj, bi)
            if q is not None:
                constants[i, j] = normal_form(q)
    unit = F.zeros(n)
    for k, p in enumerate(basis):
        if p.length == 0:
            unit[k] = F.one
    alg = StructureAlgebra(F, [p.label() for p in basis], constants, unit, name=name)
    alg.__dict__["_paths"] = basis
    return alg


def presentation_degrees(pres: QuiverPresentation, algebra: StructureAlgebra, group) -> list[int]:
    """Group degree (index) of each basis path of an algebra built by :func:`load_quiver_algebra`.

    Arrows without a degree label sit in degree e.  The degree of ``a1 * ... * ak``
    (a1 first) is ``deg(ak) ... deg(a1)``, matching the composition product.
    Every relation must be homogeneous.
    """
    def arrow_degree(name: str) -> int:
        d = pres.arrow(name).degree
        return group.identity if d is None else group.index(d)

    def degree(p: Path) -> int:
        d = group.identity
        for name in p.arrows:
            d = group.mul(arrow_degree(name), d)
        return d

    for rel in pres.relations:
        degs = {degree(parse_path(pres, text)) for _, text in rel}
        if len(degs) > 1:
            raise PresentationError(f"relation {rel!r} is not homogeneous for the grading")
    return [degree(p) for p in algebra.__dict__["_paths"]]
