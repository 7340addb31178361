"""Finite groups given by multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

__all__ = ["FiniteGroup", "GroupError", "cyclic_group", "trivial_group"]


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    @classmethod
    def from_table(cls, elements, table) -> "FiniteGroup":
        elements = tuple(str(e) for e in elements)
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(elements)
        if n == 0 or len(table) != n or any(len(r) != n for r in table):
            raise GroupError("multiplication table must be n x n")
        if any(not 0 <= x < n for r in table for x in r):
            raise GroupError("table entries out of range")
        ids = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
        if not ids:
            raise GroupError("no identity element")
        e = ids[0]
        inverses = []
        for g in range(n):
            inv = [h for h in range(n) if table[g][h] == e and table[h][g] == e]
            if not inv:
                raise GroupError(f"element {elements[g]} has no inverse")
            inverses.append(inv[0])
        for a, b, c in product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupError(f"table is not associative at ({elements[a]},{elements[b]},{elements[c]})")
        return cls(elements, table, e, tuple(inverses))

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def index(self, label) -> int:
        label = str(label)
        try:
            return self.elements.index(label)
        except ValueError:
            raise GroupError(f"unknown group element {label!r}") from None

    def is_trivial(self) -> bool:
        return self.order == 1


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n with elements labelled "0", ..., "n-1"."""
    return FiniteGroup.from_table([str(i) for i in range(n)], [[(i + j) % n for j in range(n)] for i in range(n)])


def trivial_group() -> FiniteGroup:
    return FiniteGroup.from_table(["e"], [[0]])
