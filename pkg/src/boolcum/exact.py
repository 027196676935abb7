"""Exact rationals, small dense matrices over them, and truncated power series.

Scalars are ``gmpy2.mpq`` rationals, always in lowest terms.  Inputs may be
ints, :class:`fractions.Fraction` or ``"p/q"`` strings.  Everything here is
immutable; operations return new objects.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

Scalar = mpq
ScalarLike = Union[mpq, Fraction, int, str]
#: types accepted as exact scalars in arithmetic with matrices and elements
EXACT_TYPES = (mpq, Fraction, int)
ZERO = mpq(0)
ONE = mpq(1)


class DimensionError(ValueError):
    """Operands live in algebras of different sizes."""


class OrderMismatchError(ValueError):
    """Truncated series or sequences of different orders were combined."""


# ---------------------------------------------------------------------------
# scalars


def scalar(value: ScalarLike) -> mpq:
    """Coerce ``value`` to an exact rational.

    Strings follow the wire format ``"p/q"`` or ``"p"``.
    """
    if type(value) is mpq:
        return value
    if isinstance(value, (bool, float)) or not isinstance(value, (Fraction, int, str)):
        raise TypeError(f"refusing non-exact scalar {value!r}")
    return mpq(value)


def scalar_add(a: ScalarLike, b: ScalarLike) -> mpq:
    return scalar(a) + scalar(b)


def scalar_mul(a: ScalarLike, b: ScalarLike) -> mpq:
    return scalar(a) * scalar(b)


def scalar_neg(a: ScalarLike) -> mpq:
    return -scalar(a)


def scalar_inv(a: ScalarLike) -> mpq:
    """Multiplicative inverse; raises ZeroDivisionError on 0."""
    a = scalar(a)
    if a == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    return 1 / a


def format_scalar(a: ScalarLike) -> str:
    return str(scalar(a))


def parse_scalar(text: str | int) -> mpq:
    """Read ``"p/q"`` or ``"p"``; plain JSON integers are accepted too."""
    if isinstance(text, int) and not isinstance(text, bool):
        return mpq(text)
    if not isinstance(text, str):
        raise TypeError(f"scalar must be serialized as a string, got {text!r}")
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"malformed scalar {text!r}")
    if re.search(r"/0+$", text):
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(text)


# ---------------------------------------------------------------------------
# matrices


class MatrixB:
    """A square matrix with exact rational entries.

    Instances are hashable and compare entrywise.  ``*`` and ``@`` are both
    the (non-commutative) matrix product; scalars multiply with ``*`` too.
    """

    __slots__ = ("rows", "__dict__")

    def __init__(self, rows: Iterable[Iterable[ScalarLike]]):
        rows = tuple(tuple(scalar(x) for x in row) for row in rows)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise DimensionError("matrix must be square and nonempty")
        self.rows = rows

    @classmethod
    def _raw(cls, rows: tuple) -> "MatrixB":
        m = object.__new__(cls)
        m.rows = rows
        return m

    @classmethod
    def identity(cls, dim: int) -> "MatrixB":
        return _identity(dim)

    @classmethod
    def zero(cls, dim: int) -> "MatrixB":
        return _zero(dim)

    @classmethod
    def unit(cls, dim: int, i: int, j: int) -> "MatrixB":
        """The matrix unit E_ij (0-based)."""
        return _unit(dim, i, j)

    @classmethod
    def scalar_matrix(cls, dim: int, c: ScalarLike) -> "MatrixB":
        c = scalar(c)
        z = ZERO
        return cls._raw(tuple(tuple(c if i == j else z for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> mpq:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixB):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"MatrixB({[[str(x) for x in r] for r in self.rows]})"

    def _check(self, other: "MatrixB") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "MatrixB") -> "MatrixB":
        if not isinstance(other, MatrixB):
            return NotImplemented
        self._check(other)
        return MatrixB._raw(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "MatrixB":
        return MatrixB._raw(tuple(tuple(-x for x in r) for r in self.rows))

    def __sub__(self, other: "MatrixB") -> "MatrixB":
        if not isinstance(other, MatrixB):
            return NotImplemented
        return self + (-other)

    def scale(self, c: ScalarLike) -> "MatrixB":
        c = scalar(c)
        if c == 1:
            return self
        return MatrixB._raw(tuple(tuple(c * x for x in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, MatrixB):
            return self.matmul(other)
        if isinstance(other, EXACT_TYPES) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, EXACT_TYPES) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __matmul__(self, other: "MatrixB") -> "MatrixB":
        return self.matmul(other)

    def matmul(self, other: "MatrixB") -> "MatrixB":
        self._check(other)
        # products with the unit or a matrix unit need no arithmetic
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        d = self.dim
        u = other.unit_index
        if u is not None:
            i, j = divmod(u, d)
            z = ZERO
            return MatrixB._raw(
                tuple(tuple(r[i] if c == j else z for c in range(d)) for r in self.rows)
            )
        u = self.unit_index
        if u is not None:
            i, j = divmod(u, d)
            z = tuple(ZERO for _ in range(d))
            return MatrixB._raw(tuple(other.rows[j] if r == i else z for r in range(d)))
        cols = tuple(zip(*other.rows))
        return MatrixB._raw(
            tuple(tuple(sum(map(_mul, r, c), ZERO) for c in cols) for r in self.rows)
        )

    @cached_property
    def is_identity(self) -> bool:
        return self.rows == _identity(self.dim).rows

    @cached_property
    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    @cached_property
    def unit_index(self) -> int | None:
        """``i*d + j`` when this is the matrix unit E_ij, else None."""
        found = None
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x == 0:
                    continue
                if x != 1 or found is not None:
                    return None
                found = i * self.dim + j
        return found

    @cached_property
    def coordinates(self) -> tuple[tuple[int, mpq], ...]:
        """Nonzero coordinates in the matrix-unit basis as ``(i*d + j, value)``."""
        d = self.dim
        return tuple(
            (i * d + j, x) for i, r in enumerate(self.rows) for j, x in enumerate(r) if x != 0
        )

    def to_json(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "MatrixB":
        return cls([parse_scalar(x) for x in row] for row in data)


def _mul(a: mpq, b: mpq) -> mpq:
    return a * b


_IDENTITY: dict[int, MatrixB] = {}
_ZERO: dict[int, MatrixB] = {}
_UNITS: dict[tuple[int, int, int], MatrixB] = {}


def _identity(dim: int) -> MatrixB:
    m = _IDENTITY.get(dim)
    if m is None:
        if dim < 1:
            raise DimensionError("dimension must be positive")
        one, zero = ONE, ZERO
        m = MatrixB._raw(tuple(tuple(one if i == j else zero for j in range(dim)) for i in range(dim)))
        m.__dict__["is_identity"] = True
        _IDENTITY[dim] = m
    return m


def _zero(dim: int) -> MatrixB:
    m = _ZERO.get(dim)
    if m is None:
        if dim < 1:
            raise DimensionError("dimension must be positive")
        m = MatrixB._raw(tuple(tuple(ZERO for _ in range(dim)) for _ in range(dim)))
        _ZERO[dim] = m
    return m


def _unit(dim: int, i: int, j: int) -> MatrixB:
    key = (dim, i, j)
    m = _UNITS.get(key)
    if m is None:
        if not (0 <= i < dim and 0 <= j < dim):
            raise IndexError(f"matrix unit ({i},{j}) outside dimension {dim}")
        one, zero = ONE, ZERO
        m = MatrixB._raw(
            tuple(tuple(one if (r, c) == (i, j) else zero for c in range(dim)) for r in range(dim))
        )
        _UNITS[key] = m
    return m


def basis(dim: int) -> tuple[MatrixB, ...]:
    """Matrix units ordered by ``i*d + j``."""
    return tuple(_unit(dim, i, j) for i in range(dim) for j in range(dim))


def matrix_add(a: MatrixB, b: MatrixB) -> MatrixB:
    return a + b


def matrix_mul(a: MatrixB, b: MatrixB) -> MatrixB:
    return a.matmul(b)


def matrix_scale(c: ScalarLike, a: MatrixB) -> MatrixB:
    return a.scale(c)


# ---------------------------------------------------------------------------
# truncated power series


class TruncatedSeries:
    """``c_0 + c_1 z + ... + c_{N-1} z^{N-1}`` modulo ``z^N``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike]):
        coeffs = tuple(scalar(c) for c in coeffs)
        if not coeffs:
            raise ValueError("series order must be positive")
        self.coeffs = coeffs

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1] + [0] * (order - 1))

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> mpq:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-a for a in self.coeffs)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = self.order
        f, g = self.coeffs, other.coeffs
        return TruncatedSeries(sum((f[i] * g[k - i] for i in range(k + 1)), ZERO) for k in range(n))

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by ``z`` (dropping the top coefficient)."""
        return TruncatedSeries((ZERO,) + self.coeffs[:-1])

    def first_difference(self, other: "TruncatedSeries") -> int | None:
        self._check(other)
        for k, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return k
        return None

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [format_scalar(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        coeffs = [parse_scalar(c) for c in data["coeffs"]]
        if data.get("order", len(coeffs)) != len(coeffs):
            raise ValueError("series 'order' disagrees with number of coefficients")
        return cls(coeffs)


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g
