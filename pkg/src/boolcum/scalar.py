"""Scalar boolean cumulants.

Moments ``m_n = phi(X^n)`` and boolean cumulants ``b_n`` are tied by the
triangular relation

    m_n = sum_{k=1}^{n} b_k m_{n-k},      m_0 = 1,

which in generating-series form reads ``M(z) = B(z) (1 + z M(z))`` with
``M(z) = sum m_n z^{n-1}`` and ``B(z) = sum b_n z^{n-1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, prod
from typing import Iterable

from .exact import ONE, ZERO, OrderMismatchError, Scalar, ScalarLike, TruncatedSeries, format_scalar, parse_scalar, scalar
from .partitions import enumerate_partitions


@dataclass(frozen=True)
class _Seq:
    values: tuple[Scalar, ...]

    def __init__(self, values: Iterable[ScalarLike]):
        values = tuple(scalar(v) for v in values)
        if not values:
            raise ValueError("sequence order must be at least 1")
        object.__setattr__(self, "values", values)

    @property
    def order(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, n: int) -> Scalar:
        """1-based access: ``seq[n]`` is the n-th moment or cumulant."""
        if not 1 <= n <= len(self.values):
            raise IndexError(f"index {n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({[str(v) for v in self.values]})"


class MomentSeq(_Seq):
    """Moments ``m_1 .. m_N``; ``m_0 = 1`` is implicit."""

    def to_json(self) -> dict:
        return {"order": self.order, "moments": [format_scalar(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "MomentSeq":
        return cls(_parse_values(data, "moments"))


class CumulantSeq(_Seq):
    """Boolean cumulants ``b_1 .. b_N``."""

    def __add__(self, other: "CumulantSeq") -> "CumulantSeq":
        _same_order(self, other)
        return CumulantSeq(a + b for a, b in zip(self, other))

    def to_json(self) -> dict:
        return {"order": self.order, "cumulants": [format_scalar(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "CumulantSeq":
        return cls(_parse_values(data, "cumulants"))


def _parse_values(data: dict, key: str) -> list[Scalar]:
    values = [parse_scalar(v) for v in data[key]]
    if "order" in data and data["order"] != len(values):
        raise ValueError(f"'order' is {data['order']} but {len(values)} {key} were given")
    return values


def _same_order(a: _Seq, b: _Seq) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"orders differ: {a.order} vs {b.order}")


def moments_to_cumulants(m: MomentSeq) -> CumulantSeq:
    mm = (ONE,) + m.values
    b = [ZERO]
    for n in range(1, len(mm)):
        b.append(mm[n] - sum((b[k] * mm[n - k] for k in range(1, n)), ZERO))
    return CumulantSeq(b[1:])


def cumulants_to_moments(b: CumulantSeq) -> MomentSeq:
    bb = (ZERO,) + b.values
    m = [ONE]
    for n in range(1, len(bb)):
        m.append(sum((bb[k] * m[n - k] for k in range(1, n + 1)), ZERO))
    return MomentSeq(m[1:])


def moments_via_compositions(b: CumulantSeq, n: int) -> Scalar:
    """``m_n`` as a sum over all interval partitions of an n-set.

    Independent of the triangular recursion; used to cross-check it.
    """
    if not 1 <= n <= b.order:
        raise IndexError(f"n={n} outside 1..{b.order}")
    return sum(
        (prod((b[s] for s in gamma.block_sizes), start=ONE) for gamma in enumerate_partitions(n)),
        ZERO,
    )


def shift_one(b: CumulantSeq) -> CumulantSeq:
    """Cumulants of ``1 + X`` from those of ``X``."""
    out = [1 + b[1]]
    for n in range(2, b.order + 1):
        out.append(sum((comb(n - 2, k) * b[k + 2] for k in range(n - 1)), ZERO))
    return CumulantSeq(out)


def shift_moments(m: MomentSeq) -> MomentSeq:
    """Moments of ``1 + X`` by binomial expansion of ``(1 + X)^n``."""
    mm = (ONE,) + m.values
    return MomentSeq(sum((comb(n, k) * mm[k] for k in range(n + 1)), ZERO) for n in range(1, len(mm)))


def bconv_add(mX: MomentSeq, mY: MomentSeq) -> MomentSeq:
    """Moments of ``X + Y`` for boolean independent ``X``, ``Y``."""
    _same_order(mX, mY)
    return cumulants_to_moments(moments_to_cumulants(mX) + moments_to_cumulants(mY))


def product_cumulants(bX: CumulantSeq, bY: CumulantSeq) -> CumulantSeq:
    """Cumulants of ``Z = X + Y + XY`` in terms of those of ``X`` and ``Y``."""
    _same_order(bX, bY)
    return CumulantSeq(
        bX[n] + bY[n] + sum((bX[k] * bY[n - k + 1] for k in range(1, n + 1)), ZERO)
        for n in range(1, bX.order + 1)
    )


def bconv_mul(mX: MomentSeq, mY: MomentSeq, shift: bool = False) -> MomentSeq:
    """Moments of ``Z = X + Y + XY`` for boolean independent ``X``, ``Y``.

    ``1 + Z = (1 + X)(1 + Y)``; with ``shift=True`` the moments of ``1 + Z``
    are returned instead.
    """
    _same_order(mX, mY)
    mZ = cumulants_to_moments(product_cumulants(moments_to_cumulants(mX), moments_to_cumulants(mY)))
    return shift_moments(mZ) if shift else mZ


def b_transform(m: MomentSeq) -> TruncatedSeries:
    return TruncatedSeries(moments_to_cumulants(m).values)


def m_transform(m: MomentSeq) -> TruncatedSeries:
    return TruncatedSeries(m.values)


def series_relation_holds(m: MomentSeq) -> bool:
    """Check ``M = B (1 + z M)`` modulo ``z^N``."""
    M, B = m_transform(m), b_transform(m)
    return M == B * (TruncatedSeries.one(m.order) + M.shift_up())


@dataclass(frozen=True)
class MultiplicativeCheck:
    ok: bool
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    first_difference: int | None = None


def check_multiplicative(mX: MomentSeq, mY: MomentSeq, mZ: MomentSeq | None = None) -> MultiplicativeCheck:
    """Compare ``B_{(1+X)(1+Y)}`` with ``B_{1+X} * B_{1+Y}`` as truncated series.

    The left side uses the moments ``mZ`` of ``X + Y + XY`` when given (for
    instance from the joint model), otherwise :func:`bconv_mul`.
    """
    _same_order(mX, mY)
    if mZ is None:
        mZ = bconv_mul(mX, mY)
    lhs = TruncatedSeries(shift_one(moments_to_cumulants(mZ)).values)
    rhs = TruncatedSeries(shift_one(moments_to_cumulants(mX)).values) * TruncatedSeries(
        shift_one(moments_to_cumulants(mY)).values
    )
    diff = lhs.first_difference(rhs)
    return MultiplicativeCheck(diff is None, lhs, rhs, diff)


def binomial_identity_check(n: int, a: int, b: int) -> bool:
    """``sum_{k=a}^{n-b} C(k,a) C(n-k,b) == C(n+1, a+b+1)``."""
    if a < 0 or b < 0 or a + b > n:
        raise ValueError(f"need 0 <= a, 0 <= b, a + b <= n; got n={n}, a={a}, b={b}")
    lhs = sum(comb(k, a) * comb(n - k, b) for k in range(a, n - b + 1))
    return lhs == comb(n + 1, a + b + 1)


def random_rational(rng: random.Random, bound: int = 5, max_den: int = 4) -> Scalar:
    return Scalar(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_moments(rng: random.Random, order: int, bound: int = 5, max_den: int = 4) -> MomentSeq:
    """Arbitrary rational moments; no positivity is imposed."""
    return MomentSeq(random_rational(rng, bound, max_den) for _ in range(order))
