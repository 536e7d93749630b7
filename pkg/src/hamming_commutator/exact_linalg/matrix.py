"""Dense matrices over the rationals.

An :class:`RMatrix` stores an integer numerator array (numpy ``object`` dtype,
so entries are Python ints of unbounded size) together with one positive
common denominator. The pair is kept in lowest terms after every operation,
which makes equality a plain comparison of the stored data.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational as _RationalABC

import numpy as np

Rational = Fraction

# int64 products are safe while |a| * |b| * inner_dim stays below this
_INT64_SAFE = 2**62


class LinAlgError(ValueError):
    """Base class for errors raised by the exact linear algebra layer."""


class DimensionMismatchError(LinAlgError):
    pass


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, _RationalABC):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _object_ints(arr) -> np.ndarray:
    """Coerce an integer array to a 2-D object array of Python ints."""
    arr = np.asarray(arr)
    if arr.dtype != object:
        if not np.issubdtype(arr.dtype, np.integer) and arr.size:
            raise TypeError(f"numerator array must be integral, got {arr.dtype}")
        return arr.astype(object)
    return arr.copy()


def _content(arr: np.ndarray, start: int = 0) -> int:
    """gcd of ``start`` and all entries (0 for an all-zero or empty array)."""
    g = start
    for v in arr.flat:
        if v:
            g = math.gcd(g, int(v))
            if g == 1:
                break
    return g


def max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return max(int(arr.max()), -int(arr.min()))


def int_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact product of two integer object arrays.

    Uses int64 arithmetic when the entry bounds rule out overflow and falls
    back to Python-int arithmetic otherwise.
    """
    if x.shape[1] != y.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply {x.shape[0]}x{x.shape[1]} by {y.shape[0]}x{y.shape[1]}")
    if x.size == 0 or y.size == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=object)
    bound = max_abs(x) * max_abs(y) * x.shape[1]
    if bound < _INT64_SAFE:
        return (x.astype(np.int64) @ y.astype(np.int64)).astype(object)
    return x.dot(y)


class RMatrix:
    """Exact rational matrix ``num / den``.

    Construct from nested rows with :meth:`from_rows`, or from an integer
    numerator array and denominator directly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        num = _object_ints(num)
        if num.ndim != 2:
            raise ValueError(f"RMatrix needs a 2-D array, got ndim={num.ndim}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = _content(num, den) if den > 1 else 1
        if g > 1:
            num = num // g
            den //= g
        num.flags.writeable = False
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")

    # construction --------------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> RMatrix:
        fr = [[_to_fraction(x) for x in row] for row in rows]
        if not fr:
            raise ValueError("need at least one row")
        width = len(fr[0])
        if any(len(row) != width for row in fr):
            raise ValueError("ragged rows")
        den = reduce(math.lcm, (x.denominator for row in fr for x in row), 1)
        num = np.empty((len(fr), width), dtype=object)
        for i, row in enumerate(fr):
            for j, x in enumerate(row):
                num[i, j] = x.numerator * (den // x.denominator)
        return cls(num, den)

    @classmethod
    def column(cls, values) -> RMatrix:
        return cls.from_rows([[v] for v in values])

    @classmethod
    def identity(cls, n: int) -> RMatrix:
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> RMatrix:
        return cls(np.ones((rows, rows if cols is None else cols), dtype=np.int64))

    @classmethod
    def diag(cls, values) -> RMatrix:
        vals = [_to_fraction(v) for v in values]
        den = reduce(math.lcm, (v.denominator for v in vals), 1)
        num = np.zeros((len(vals), len(vals)), dtype=object)
        for i, v in enumerate(vals):
            num[i, i] = v.numerator * (den // v.denominator)
        return cls(num, den)

    @classmethod
    def hstack(cls, blocks, rows: int | None = None) -> RMatrix:
        blocks = list(blocks)
        if not blocks:
            if rows is None:
                raise ValueError("hstack of nothing needs an explicit row count")
            return cls.zeros(rows, 0)
        n = blocks[0].rows
        for b in blocks:
            if b.rows != n:
                raise DimensionMismatchError(
                    f"hstack row mismatch: {n} vs {b.rows}")
        den = reduce(math.lcm, (b.den for b in blocks), 1)
        num = np.concatenate([b.num * (den // b.den) for b in blocks], axis=1)
        return cls(num, den)

    @classmethod
    def vstack(cls, blocks) -> RMatrix:
        blocks = list(blocks)
        m = blocks[0].cols
        for b in blocks:
            if b.cols != m:
                raise DimensionMismatchError(f"vstack column mismatch: {m} vs {b.cols}")
        den = reduce(math.lcm, (b.den for b in blocks), 1)
        num = np.concatenate([b.num * (den // b.den) for b in blocks], axis=0)
        return cls(num, den)

    # shape and access ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    @property
    def rows(self) -> int:
        return self.num.shape[0]

    @property
    def cols(self) -> int:
        return self.num.shape[1]

    def __getitem__(self, key):
        if (isinstance(key, tuple) and len(key) == 2
                and all(isinstance(k, (int, np.integer)) for k in key)):
            return Fraction(int(self.num[key]), self.den)
        sub = self.num[key]
        if sub.ndim != 2:
            raise IndexError("use integer pairs for entries or 2-D slices for blocks")
        return RMatrix(sub, self.den)

    def col(self, j: int) -> RMatrix:
        return RMatrix(self.num[:, j:j + 1], self.den)

    def columns(self) -> list[RMatrix]:
        return [self.col(j) for j in range(self.cols)]

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(int(v), self.den) for v in row] for row in self.num]

    def diagonal(self) -> list[Fraction]:
        return [Fraction(int(self.num[i, i]), self.den) for i in range(min(self.shape))]

    @property
    def T(self) -> RMatrix:
        return RMatrix(self.num.T, self.den)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatchError(f"trace of non-square {self.rows}x{self.cols}")
        return Fraction(int(sum(self.num[i, i] for i in range(self.rows))), self.den)

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic ----------------------------------------------------------

    def _aligned(self, other: RMatrix, op: str):
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"cannot {op} {self.rows}x{self.cols} and {other.rows}x{other.cols}")
        den = math.lcm(self.den, other.den)
        return self.num * (den // self.den), other.num * (den // other.den), den

    def __add__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        a, b, den = self._aligned(other, "add")
        return RMatrix(a + b, den)

    def __sub__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        a, b, den = self._aligned(other, "subtract")
        return RMatrix(a - b, den)

    def __neg__(self):
        return RMatrix(-self.num, self.den)

    def __mul__(self, scalar):
        if isinstance(scalar, RMatrix):
            return NotImplemented
        try:
            s = _to_fraction(scalar)
        except TypeError:
            return NotImplemented
        return RMatrix(self.num * s.numerator, self.den * s.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = _to_fraction(scalar)
        if s == 0:
            raise ZeroDivisionError("division of a matrix by zero")
        return RMatrix(self.num * s.denominator, self.den * s.numerator)

    def __matmul__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return RMatrix(int_matmul(self.num, other.num), self.den * other.den)

    def hadamard(self, other: RMatrix) -> RMatrix:
        """Entrywise product."""
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"entrywise product of {self.shape} and {other.shape}")
        return RMatrix(self.num * other.num, self.den * other.den)

    def __pow__(self, k: int) -> RMatrix:
        if not self.is_square():
            raise DimensionMismatchError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative powers: use mat_inverse")
        out = RMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    # comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.den == other.den
                and bool(np.all(self.num == other.num)))

    __hash__ = None

    def __repr__(self) -> str:
        if self.rows * self.cols > 64:
            return f"RMatrix({self.rows}x{self.cols}, den={self.den})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.to_fractions())
        return f"RMatrix([{body}])"


def as_rmatrix(x) -> RMatrix:
    if isinstance(x, RMatrix):
        return x
    return RMatrix.from_rows(x)


def mat_mul(a: RMatrix, b: RMatrix) -> RMatrix:
    """Exact matrix product ``a @ b``."""
    return a @ b


def kron(a: RMatrix, b: RMatrix) -> RMatrix:
    """Kronecker product, rows of ``a`` most significant."""
    return RMatrix(np.kron(a.num, b.num), a.den * b.den)


def kron_power(a: RMatrix, k: int) -> RMatrix:
    if k < 1:
        raise ValueError("kron_power needs k >= 1")
    out = a
    for _ in range(k - 1):
        out = kron(out, a)
    return out
