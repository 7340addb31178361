"""Exact scalar fields: the rationals and prime fields.

Matrices over a field are plain numpy arrays.  Over a prime field they are
``int64`` arrays holding canonical representatives in ``[0, p)``; over the
rationals they are ``object`` arrays of :class:`fractions.Fraction`.  Every
routine that does arithmetic on such arrays takes the field as an explicit
argument and calls :meth:`Field.reduce` on the result, so entries are always
canonical and computations are bit-for-bit reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from sympy import isprime

__all__ = ["Field", "Rationals", "PrimeField", "QQ", "field_from_spec", "FieldError"]

# p must keep p*p (and short dot products) inside int64
MAX_PRIME = 2**31 - 1


class FieldError(ValueError):
    pass


class Field:
    """Common interface.  Subclasses fix ``dtype`` and the scalar type."""

    dtype: object = object
    characteristic: int = 0

    # --- scalars -------------------------------------------------------
    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def parse(self, s):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    # --- arrays --------------------------------------------------------
    def reduce(self, arr: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        return self.array(np.zeros(shape, dtype=np.int64))

    def eye(self, n: int) -> np.ndarray:
        return self.array(np.eye(n, dtype=np.int64))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.matmul(a, b))

    def nonzero_mask(self, arr: np.ndarray) -> np.ndarray:
        return arr != 0

    def random_array(self, rng: np.random.Generator, shape, low: int = -3, high: int = 4) -> np.ndarray:
        """Small-integer random entries; small values keep rational heights bounded."""
        return self.array(rng.integers(low, high, size=shape))

    def spec(self) -> str:
        raise NotImplementedError


class Rationals(Field):
    dtype = object
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def parse(self, s):
        s = str(s).strip()
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))

    def format(self, x) -> str:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def reduce(self, arr):
        arr = np.asarray(arr, dtype=object)
        if arr.size and not all(type(v) is Fraction for v in arr.flat):
            arr = _to_fraction(arr)
        return arr

    def matmul(self, a, b):
        """Product via integer matrices scaled to a common denominator."""
        a = self.reduce(a)
        b = self.reduce(b)
        if a.size == 0 or b.size == 0:
            return self.reduce(np.matmul(a, b))
        ia, da, ma = _integerize(a)
        ib, db, mb = _integerize(b)
        inner = a.shape[-1]
        if ma * mb * inner < 2**62:
            prod = np.matmul(ia.astype(np.int64), ib.astype(np.int64)).astype(object)
        else:
            prod = np.matmul(ia, ib)
        den = da * db
        if den == 1:
            return _int_to_fraction(prod)
        return _scaled_fraction(prod, den)

    def array(self, data):
        return _to_fraction(np.array(data, dtype=object))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def spec(self) -> str:
        return "Q"


_to_fraction = np.frompyfunc(lambda v: v if type(v) is Fraction else Fraction(v), 1, 1)
_int_to_fraction = np.frompyfunc(lambda v: Fraction(int(v)), 1, 1)
_scaled_fraction = np.frompyfunc(lambda v, d: Fraction(int(v), d), 2, 1)
_denominator = np.frompyfunc(lambda v: v.denominator, 1, 1)


def _integerize(arr: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Integer array ``N`` and ``D`` with ``arr = N / D``, plus ``max |N|``."""
    dens = set(_denominator(arr).flat)
    D = math.lcm(*dens) if dens else 1
    if D == 1:
        N = np.frompyfunc(lambda v: v.numerator, 1, 1)(arr)
    else:
        N = np.frompyfunc(lambda v: v.numerator * (D // v.denominator), 1, 1)(arr)
    m = max((abs(v) for v in N.flat), default=0)
    return N, D, m


class PrimeField(Field):
    dtype = np.int64

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not isprime(p):
            raise FieldError(f"{p} is not prime")
        if p > MAX_PRIME:
            raise FieldError(f"prime {p} too large for int64 arithmetic (max {MAX_PRIME})")
        self.p = p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            return (x.numerator % self.p) * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def parse(self, s):
        s = str(s).strip()
        if "/" in s:
            num, den = s.split("/")
            return self(Fraction(int(num), int(den)))
        return int(s) % self.p

    def format(self, x) -> str:
        return str(int(x) % self.p)

    def add(self, x, y):
        return (int(x) + int(y)) % self.p

    def sub(self, x, y):
        return (int(x) - int(y)) % self.p

    def mul(self, x, y):
        return int(x) * int(y) % self.p

    def neg(self, x):
        return -int(x) % self.p

    def reduce(self, arr):
        return np.mod(np.asarray(arr, dtype=np.int64), self.p)

    def array(self, data):
        if isinstance(data, np.ndarray) and data.dtype.kind in "iu":
            return np.mod(data.astype(np.int64), self.p)
        arr = np.array(data, dtype=object)
        if arr.size and any(isinstance(v, (Fraction, str)) for v in arr.flat):
            arr = np.frompyfunc(self, 1, 1)(arr)
        return np.mod(np.array(arr, dtype=object), self.p).astype(np.int64)

    def matmul(self, a, b):
        inner = a.shape[-1] if a.ndim else 1
        if inner * (self.p - 1) ** 2 >= 2**62:
            out = np.matmul(a.astype(object), b.astype(object))
            return np.mod(out, self.p).astype(np.int64)
        return np.mod(np.matmul(a, b), self.p)

    def random_array(self, rng, shape, low=None, high=None):
        if low is None:
            return rng.integers(0, self.p, size=shape).astype(np.int64)
        return self.reduce(rng.integers(low, high, size=shape))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def spec(self) -> str:
        return f"Fp:{self.p}"


QQ = Rationals()


def field_from_spec(spec: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:P"`` (also accepts ``"GF(P)"``)."""
    s = str(spec).strip()
    if s in ("Q", "QQ"):
        return QQ
    for prefix in ("Fp:", "GF:", "F"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return PrimeField(int(s[len(prefix):]))
    if s.startswith("GF(") and s.endswith(")"):
        return PrimeField(int(s[3:-1]))
    raise FieldError(f"unrecognised field {spec!r}; expected Q or Fp:P")
