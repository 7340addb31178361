"""Brackets for the representation dimension from computed and externally supplied data."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import StructureAlgebra, loewy_length, radical
from .homological import is_self_injective

__all__ = ["Bound", "BoundsReport", "bounds_report", "UNKNOWN"]

UNKNOWN = "unknown"

SRC_ROUQUIER = "dim(stable mod) + 2 <= rep.dim <= ll  [non-semisimple self-injective]"
SRC_ODIM = "Odim + 2 <= rep.dim"
SRC_AUSLANDER = "rep.dim >= 2 for non-semisimple algebras"
SRC_HINT = "external hint (not computed)"
SRC_TRANSFER = "external hint transferred along the smash product (A self-injective{sep})"


@dataclass
class Bound:
    value: int | str
    source: str

    def to_json(self) -> dict:
        return {"value": self.value, "source": self.source}


@dataclass
class BoundsReport:
    algebra: str
    semisimple: bool
    self_injective: bool
    loewy: int
    stable_dim_lower: Bound
    stable_dim_upper: Bound
    odim_lower: Bound
    repdim_lower: Bound
    repdim_upper: Bound
    notes: list[str] = dc_field(default_factory=list)

    @property
    def bracket(self) -> tuple:
        return (self.repdim_lower.value, self.repdim_upper.value)

    def lines(self) -> list[str]:
        if self.semisimple:
            return [f"[{self.algebra}] semisimple; bounds not applicable"]
        out = [
            f"[{self.algebra}] ll = {self.loewy}, self-injective = {self.self_injective}",
            f"  stable dim lower: {self.stable_dim_lower.value}  ({self.stable_dim_lower.source})",
            f"  stable dim upper: {self.stable_dim_upper.value}  ({self.stable_dim_upper.source})",
            f"  Odim lower: {self.odim_lower.value}  ({self.odim_lower.source})",
            f"  rep.dim in [{self.repdim_lower.value}, {self.repdim_upper.value}]",
            f"    lower via {self.repdim_lower.source}",
            f"    upper via {self.repdim_upper.source}",
        ]
        out += [f"  note: {n}" for n in self.notes]
        return out

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "semisimple": self.semisimple,
            "self_injective": self.self_injective,
            "loewy": self.loewy,
            "stable_dim_lower": self.stable_dim_lower.to_json(),
            "stable_dim_upper": self.stable_dim_upper.to_json(),
            "odim_lower": self.odim_lower.to_json(),
            "repdim_lower": self.repdim_lower.to_json(),
            "repdim_upper": self.repdim_upper.to_json(),
            "notes": list(self.notes),
        }


def bounds_report(
    A: StructureAlgebra,
    name: str,
    stable_dim_hint: Bound | None = None,
    stable_dim_upper_hint: Bound | None = None,
    odim_certified: bool = False,
) -> BoundsReport:
    """Combine the Loewy length, self-injectivity, hints and an Odim >= 1 certificate."""
    ll = loewy_length(A)
    semisimple = radical(A).dim == 0
    selfinj = is_self_injective(A)
    notes = []
    if semisimple:
        na = Bound(UNKNOWN, "semisimple; bounds not applicable")
        return BoundsReport(name, True, selfinj, ll, na, na, na, na, na, ["semisimple; bounds not applicable"])

    if stable_dim_hint is not None:
        st_lo = stable_dim_hint
    else:
        st_lo = Bound(0, "trivial")
    if stable_dim_upper_hint is not None:
        st_hi = stable_dim_upper_hint
    elif selfinj:
        st_hi = Bound(ll - 2, SRC_ROUQUIER)
    else:
        st_hi = Bound(UNKNOWN, "no applicable bound")

    odim = Bound(1, "generic-point lattice certificate (density surrogate)") if odim_certified else Bound(0, "trivial")

    candidates = [(2, SRC_AUSLANDER), (odim.value + 2, SRC_ODIM)]
    if selfinj:
        candidates.append((st_lo.value + 2, SRC_ROUQUIER + f"; stable dim from {st_lo.source}"))
    else:
        notes.append("not self-injective: the stable-dimension bracket does not apply")
    lo_val, lo_src = max(candidates, key=lambda c: c[0])
    if selfinj:
        hi = Bound(ll, SRC_ROUQUIER)
    else:
        hi = Bound(UNKNOWN, "ll bound needs a self-injective algebra")
    if isinstance(hi.value, int) and lo_val > hi.value:
        notes.append(f"inconsistent bracket [{lo_val}, {hi.value}]")
    return BoundsReport(name, False, selfinj, ll, st_lo, st_hi, odim, Bound(lo_val, lo_src), hi, notes)
