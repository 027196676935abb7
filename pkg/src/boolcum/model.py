"""A concrete boolean independent pair ``(X, Y)`` built from its marginals.

Elements are non-commutative polynomials in ``X`` and ``Y``, stored as maps
from words over ``{"X", "Y"}`` to rational coefficients (``""`` is the unit).
The state ``phi`` factorizes a word over its maximal runs of equal letters:
``phi(X^2 Y X) = m2(X) * m1(Y) * m1(X)``.  This is the unique unital functional
making the algebras of ``X`` and ``Y`` boolean independent with the given
marginal moments.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Sequence, Union

from .exact import EXACT_TYPES, ZERO, OrderMismatchError, Scalar, ScalarLike, format_scalar, parse_scalar, scalar
from .report import Report
from .scalar import MomentSeq, random_moments, random_rational

LETTERS = ("X", "Y")


class MomentOrderError(ValueError):
    """A word has a run longer than the available marginal moments."""


class AlgElement:
    """A finite linear combination of words in ``X`` and ``Y``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, ScalarLike] | None = None):
        clean: dict[str, Scalar] = {}
        for word, c in (terms or {}).items():
            if any(ch not in LETTERS for ch in word):
                raise ValueError(f"word {word!r} uses letters outside {LETTERS}")
            c = scalar(c)
            if c:
                clean[word] = clean.get(word, ZERO) + c
        self.terms = {w: c for w, c in sorted(clean.items()) if c}

    @classmethod
    def word(cls, w: str, coeff: ScalarLike = 1) -> "AlgElement":
        return cls({w: coeff})

    @classmethod
    def unit(cls) -> "AlgElement":
        return cls({"": 1})

    @classmethod
    def zero(cls) -> "AlgElement":
        return cls()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, str):
            other = AlgElement.word(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "AlgElement(0)"
        parts = [f"{c}*{w or '1'}" if c != 1 else (w or "1") for w, c in self.terms.items()]
        return "AlgElement(" + " + ".join(parts) + ")"

    def __add__(self, other: "AlgElement") -> "AlgElement":
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return AlgElement(out)

    __radd__ = __add__

    def __neg__(self) -> "AlgElement":
        return AlgElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-_coerce(other))

    def scale(self, c: ScalarLike) -> "AlgElement":
        c = scalar(c)
        return AlgElement({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "AlgElement") -> "AlgElement":
        if isinstance(other, EXACT_TYPES) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other)
        out: dict[str, Scalar] = {}
        for (u, a), (v, b) in itertools.product(self.terms.items(), other.terms.items()):
            out[u + v] = out.get(u + v, ZERO) + a * b
        return AlgElement(out)

    def __rmul__(self, other):
        if isinstance(other, EXACT_TYPES) and not isinstance(other, bool):
            return self.scale(other)
        return _coerce(other) * self

    def __pow__(self, n: int) -> "AlgElement":
        return reduce(AlgElement.__mul__, [self] * n, AlgElement.unit())

    def to_json(self) -> dict:
        return {"terms": {w: format_scalar(c) for w, c in self.terms.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "AlgElement":
        return cls({w: parse_scalar(c) for w, c in data["terms"].items()})


Entry = Union[AlgElement, str]


def _coerce(a: Entry) -> AlgElement:
    if isinstance(a, AlgElement):
        return a
    if isinstance(a, str):
        return AlgElement.word(a)
    raise TypeError(f"cannot use {a!r} as an algebra element")


X = AlgElement.word("X")
Y = AlgElement.word("Y")
ONE = AlgElement.unit()


def runs(word: str) -> list[tuple[str, int]]:
    """Maximal runs of equal letters, as ``(letter, length)``."""
    return [(ch, len(list(g))) for ch, g in itertools.groupby(word)]


@dataclass(frozen=True)
class JointState:
    """Marginal moments of ``X`` and ``Y``; ``phi`` is defined by run factorization."""

    mX: MomentSeq
    mY: MomentSeq

    def __post_init__(self):
        if self.mX.order != self.mY.order:
            raise OrderMismatchError(f"marginal orders differ: {self.mX.order} vs {self.mY.order}")

    @property
    def order(self) -> int:
        return self.mX.order

    def moment(self, letter: str, n: int) -> Scalar:
        if n > self.order:
            raise MomentOrderError(f"run {letter}^{n} exceeds moment order {self.order}")
        return (self.mX if letter == "X" else self.mY)[n]

    def to_json(self) -> dict:
        return {"X": self.mX.to_json(), "Y": self.mY.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "JointState":
        return cls(MomentSeq.from_json(data["X"]), MomentSeq.from_json(data["Y"]))


def phi_word(s: JointState, w: str) -> Scalar:
    """``phi`` of a single word; the empty word is the unit, ``phi(1) = 1``."""
    out = Scalar(1)
    for letter, n in runs(w):
        out *= s.moment(letter, n)
    return out


def phi_elem(s: JointState, a: Entry) -> Scalar:
    return sum((c * phi_word(s, w) for w, c in _coerce(a).terms.items()), ZERO)


class RunStream:
    """Evaluates ``phi(a_1 a_2 ... a_k)`` while factors are appended.

    The product is never expanded.  By linearity it is enough to track, for
    each possible open run ``(letter, length)``, the summed coefficient times
    the moments of the runs already closed.
    """

    __slots__ = ("state", "_open")

    def __init__(self, state: JointState):
        self.state = state
        self._open: dict[tuple[str, int], Scalar] = {("", 0): Scalar(1)}

    def feed(self, a: Entry) -> "RunStream":
        s = self.state
        out: dict[tuple[str, int], Scalar] = {}
        for (letter, length), val in self._open.items():
            for w, c in _coerce(a).terms.items():
                cur_letter, cur_len, v = letter, length, val * c
                for ch in w:
                    if ch == cur_letter:
                        cur_len += 1
                    else:
                        if cur_len:
                            v *= s.moment(cur_letter, cur_len)
                        cur_letter, cur_len = ch, 1
                key = (cur_letter, cur_len)
                out[key] = out.get(key, ZERO) + v
        self._open = {k: v for k, v in out.items() if v}
        return self

    def value(self) -> Scalar:
        s = self.state
        return sum(
            (v * s.moment(letter, length) if length else v for (letter, length), v in self._open.items()),
            ZERO,
        )


def phi_product(s: JointState, factors: Iterable[Entry]) -> Scalar:
    """``phi(a_1 a_2 ... a_k)`` without expanding the product."""
    stream = RunStream(s)
    for a in factors:
        stream.feed(a)
    return stream.value()


def mixed_cumulant(s: JointState, entries: Sequence[Entry]) -> Scalar:
    """``b^n(a_1, ..., a_n)`` from the triangular recurrence in ``phi``.

    ``b^n(a_1..a_n) = phi(a_1...a_n) - sum_{k<n} b^k(a_1..a_k) phi(a_{k+1}...a_n)``
    """
    return mixed_cumulants_of_prefixes(s, entries)[-1]


def mixed_cumulants_of_prefixes(s: JointState, entries: Sequence[Entry]) -> list[Scalar]:
    """``[b^1(a_1), b^2(a_1, a_2), ..., b^n(a_1..a_n)]``."""
    items = [_coerce(a) for a in entries]
    n = len(items)
    if n == 0:
        raise ValueError("cumulant of an empty entry list is undefined")
    # phi of every contiguous product a_i ... a_j, keyed (i, j) with j exclusive
    interval: dict[tuple[int, int], Scalar] = {}
    for i in range(n):
        stream = RunStream(s)
        for j in range(i, n):
            interval[i, j + 1] = stream.feed(items[j]).value()
    b: list[Scalar] = []
    for k in range(1, n + 1):
        val = interval[0, k] - sum((b[j - 1] * interval[j, k] for j in range(1, k)), ZERO)
        b.append(val)
    return b


def joint_moments(s: JointState, a: Entry, order: int | None = None) -> MomentSeq:
    """``phi(a^n)`` for ``n = 1..order`` by explicit expansion."""
    a = _coerce(a)
    order = s.order if order is None else order
    stream = RunStream(s)
    return MomentSeq(stream.feed(a).value() for _ in range(order))


def joint_moments_expanded(s: JointState, a: Entry, order: int | None = None) -> MomentSeq:
    """Same as :func:`joint_moments` but expanding ``a^n`` into words first."""
    a = _coerce(a)
    order = s.order if order is None else order
    out, power = [], ONE
    for _ in range(order):
        power = power * a
        out.append(phi_elem(s, power))
    return MomentSeq(out)


def random_state(rng: random.Random, order: int, bound: int = 5, max_den: int = 4) -> JointState:
    return JointState(random_moments(rng, order, bound, max_den), random_moments(rng, order, bound, max_den))


# ---------------------------------------------------------------------------
# verification sweeps

#: structured entries exercising the hypotheses of the vanishing/unit/product rules
POOL: tuple[AlgElement, ...] = (X, Y, X * Y, Y * X, X + Y, X * X, ONE)


def random_entry(rng: random.Random) -> AlgElement:
    """A pool element, or occasionally a random rational combination of two."""
    if rng.random() < 0.25:
        a, b = rng.sample(POOL, 2)
        return a.scale(random_rational(rng)) + b.scale(random_rational(rng))
    return rng.choice(POOL)


def random_entries(rng: random.Random, k: int) -> list[AlgElement]:
    return [random_entry(rng) for _ in range(k)]


def verify_vanishing(s: JointState, n: int, m: int, rng: random.Random, draws: int = 3) -> Report:
    """``b^{n+m+2}(a_1..a_n, X, Y, ...) = 0``, and likewise with ``Y, X`` adjacent."""
    rep = Report(f"vanishing[{n},{m}]")
    for pair in ((X, Y), (Y, X)):
        for _ in range(draws):
            entries = random_entries(rng, n) + list(pair) + random_entries(rng, m)
            val = mixed_cumulant(s, entries)
            rep.record(val == 0, entries=entries, value=val)
    return rep


def verify_unit_rules(s: JointState, n: int, rng: random.Random, draws: int = 2) -> Report:
    """Unit entries: first/last slot kills the cumulant, interior slots drop out."""
    rep = Report(f"unit-rules[{n}]")
    for _ in range(draws):
        a = random_entries(rng, n)
        base = mixed_cumulant(s, a)
        first = mixed_cumulant(s, [ONE] + a)
        rep.record(first == 0, rule="unit-first", entries=a, value=first)
        last = mixed_cumulant(s, a + [ONE])
        rep.record(last == 0, rule="unit-last", entries=a, value=last)
        for k in range(1, n):
            val = mixed_cumulant(s, a[:k] + [ONE] + a[k:])
            rep.record(val == base, rule="unit-interior", position=k, entries=a, value=val, expected=base)
    return rep


def verify_product_rules(
    s: JointState, n: int, rng: random.Random, draws: int = 2, max_length: int | None = None
) -> Report:
    """Product entries ``XY``: factorization at every position and the three vanishing rules.

    ``n`` counts the surrounding entries; the vanishing rules use ``n + 2``
    slots and are skipped when that exceeds ``max_length``.
    """
    rep = Report(f"product-rules[{n}]")
    XY = X * Y
    pairs = (("XY,XY", [XY, XY]), ("Y,XY", [Y, XY]), ("XY,X", [XY, X]))
    if max_length is not None and n + 2 > max_length:
        pairs = ()
    for _ in range(draws):
        a = random_entries(rng, n)
        for k in range(0, n + 1):
            left, right = a[:k], a[k:]
            val = mixed_cumulant(s, left + [XY] + right)
            expected = mixed_cumulant(s, left + [X]) * mixed_cumulant(s, [Y] + right)
            rep.record(val == expected, rule="XY-factorizes", position=k, entries=a, value=val, expected=expected)
            for rule, pair in pairs:
                val = mixed_cumulant(s, left + pair + right)
                rep.record(val == 0, rule=rule, position=k, entries=a, value=val)
    return rep
