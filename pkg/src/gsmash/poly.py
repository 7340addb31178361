"""Univariate polynomials over an exact field, the rational function field,
and matrices with polynomial entries.

A polynomial matrix is stored as a coefficient stack: an array of shape
``(D + 1, rows, cols)`` with ``P[d]`` the coefficient of ``x**d``.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np
import sympy

from .field import Field, PrimeField, Rationals

__all__ = [
    "Poly",
    "poly_derivative",
    "factor",
    "RatFunc",
    "RationalFunctionField",
    "poly_matrix_eval",
    "poly_matrix_derivative",
    "poly_matrix_mul",
    "poly_matrix_from_entries",
    "poly_matrix_entries",
    "poly_matrix_generic",
    "trim_stack",
]


class Poly:
    """Immutable polynomial; ``coeffs`` lowest degree first, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [field(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly(self.field, [other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for d, c in enumerate(self.coeffs):
            if F.is_zero(c):
                continue
            s = F.format(c)
            terms.append(s if d == 0 else f"{s}*x" if d == 1 else f"{s}*x^{d}")
        return " + ".join(terms)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (F.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (F.zero,) * (n - len(other.coeffs))
        return Poly(F, [F.add(x, y) for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly(self.field, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [F.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lead = F.inv(other.lead)
        dq = len(other.coeffs) - 1
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if F.is_zero(c):
                continue
            f = F.mul(c, inv_lead)
            q[i - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] = F.sub(rem[i - dq + j], F.mul(f, b))
        return Poly(F, q), Poly(F, rem)

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lead)
        return Poly(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(F(d), c) for d, c in enumerate(self.coeffs)][1:])

    def __call__(self, a):
        """Evaluate at a scalar of the base field (Horner)."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def eval_matrix(self, M: np.ndarray) -> np.ndarray:
        """Evaluate at a square matrix over the base field (Horner)."""
        F = self.field
        n = M.shape[0]
        acc = F.zeros((n, n))
        eye = F.eye(n)
        for c in reversed(self.coeffs):
            acc = F.reduce(F.matmul(acc, M) + eye * c)
        return acc


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def factor(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, in a deterministic order.

    Backed by sympy's univariate factorisation over QQ or GF(p).
    """
    F = p.field
    if p.degree < 1:
        return []
    x = sympy.Symbol("x")
    if isinstance(F, PrimeField):
        sp = sympy.Poly([int(c) for c in reversed(p.coeffs)], x, modulus=F.p)
    elif isinstance(F, Rationals):
        sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")
    else:
        raise TypeError(f"factorisation not supported over {F!r}")
    _, facs = sp.factor_list()
    out = []
    for f, mult in facs:
        cs = f.all_coeffs()[::-1]
        if isinstance(F, PrimeField):
            q = Poly(F, [int(c) % F.p for c in cs])
        else:
            q = Poly(F, [F(sympy.Rational(c).p) / F(sympy.Rational(c).q) for c in cs])
        out.append((q.monic(), int(mult)))
    out.sort(key=lambda t: (t[0].degree, [F.format(c) for c in t[0].coeffs]))
    return out


class RatFunc:
    """Element of F(t): reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        F = num.field
        if den is None:
            den = Poly(F, [1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly(F, [1])
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = F.inv(den.lead)
        self.num = num * lc
        self.den = den * lc

    @property
    def field(self) -> Field:
        return self.num.field

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc(Poly(self.field, [other]))

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc(Poly(self.field))
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except Exception:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        if self.den.degree == 0:
            return f"({self.num})".replace("x", "t")
        return f"({self.num})/({self.den})".replace("x", "t")


class RationalFunctionField(Field):
    """F(t) for an exact base field F; elements are :class:`RatFunc`."""

    dtype = object

    def __init__(self, base: Field):
        self.base = base
        self.characteristic = base.characteristic

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        return RatFunc(Poly(self.base, [self.base(x)]))

    @cached_property
    def t(self) -> RatFunc:
        return RatFunc(Poly.x(self.base))

    def inv(self, x):
        return self(x).inverse()

    def is_zero(self, x) -> bool:
        return not self(x)

    def reduce(self, arr):
        arr = np.asarray(arr, dtype=object)
        if arr.size and not all(type(v) is RatFunc for v in arr.flat):
            arr = np.frompyfunc(self, 1, 1)(arr)
        return arr

    def array(self, data):
        return np.frompyfunc(self, 1, 1)(np.array(data, dtype=object))

    def nonzero_mask(self, arr):
        return np.array([bool(v) for v in np.asarray(arr).flat], dtype=bool).reshape(np.shape(arr))

    def format(self, x) -> str:
        return repr(x)

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.base == self.base

    def __hash__(self):
        return hash(("Frac", self.base))

    def __repr__(self):
        return f"{self.base!r}(t)"

    def spec(self) -> str:
        return f"{self.base.spec()}(t)"


# --- polynomial matrices as coefficient stacks -----------------------------


def trim_stack(F: Field, P: np.ndarray) -> np.ndarray:
    """Drop vanishing top-degree coefficient matrices (keeps at least one)."""
    D = P.shape[0]
    while D > 1 and not F.nonzero_mask(P[D - 1]).any():
        D -= 1
    return P[:D]


def poly_matrix_eval(F: Field, P: np.ndarray, a) -> np.ndarray:
    """Entrywise evaluation ``sum_d a**d P[d]``."""
    a = F(a)
    acc = F.zeros(P.shape[1:])
    for d in range(P.shape[0] - 1, -1, -1):
        acc = F.reduce(acc * a + P[d])
    return acc


def poly_matrix_derivative(F: Field, P: np.ndarray) -> np.ndarray:
    """Entrywise formal derivative; the stack keeps length ``max(D - 1, 1)``."""
    if P.shape[0] == 1:
        return F.zeros(P.shape)
    scale = F.array(np.arange(1, P.shape[0], dtype=np.int64))
    return F.reduce(P[1:] * scale.reshape(-1, 1, 1))


def poly_matrix_mul(F: Field, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Product of two polynomial matrices (coefficient convolution)."""
    D = P.shape[0] + Q.shape[0] - 1
    out = F.zeros((D, P.shape[1], Q.shape[2]))
    for i in range(P.shape[0]):
        for j in range(Q.shape[0]):
            out[i + j] = F.reduce(out[i + j] + F.matmul(P[i], Q[j]))
    return out


def poly_matrix_from_entries(F: Field, entries) -> np.ndarray:
    """Coefficient stack from a nested list of :class:`Poly` (or coefficient lists)."""
    rows = [[e if isinstance(e, Poly) else Poly(F, e) for e in row] for row in entries]
    r = len(rows)
    c = len(rows[0]) if r else 0
    D = max([p.degree for row in rows for p in row] + [0]) + 1
    out = F.zeros((D, r, c))
    for i, row in enumerate(rows):
        for j, p in enumerate(row):
            for d, coef in enumerate(p.coeffs):
                out[d, i, j] = coef
    return out


def poly_matrix_entries(F: Field, P: np.ndarray) -> list[list[Poly]]:
    return [
        [Poly(F, list(P[:, i, j])) for j in range(P.shape[2])]
        for i in range(P.shape[1])
    ]


def poly_matrix_generic(K: RationalFunctionField, P: np.ndarray) -> np.ndarray:
    """The matrix over F(t) obtained by substituting the indeterminate t for x."""
    F = K.base
    out = np.empty(P.shape[1:], dtype=object)
    for i in range(P.shape[1]):
        for j in range(P.shape[2]):
            out[i, j] = RatFunc(Poly(F, list(P[:, i, j])))
    return out
