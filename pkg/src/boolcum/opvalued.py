"""Boolean cumulants with amalgamation over a matrix algebra.

The base algebra is ``M_d`` over the rationals.  A multilinear map
``M_d^n -> M_d`` is stored as its values on all n-tuples of matrix units,
which determines it completely and makes equality decidable.

Series conventions: component ``k`` of a :class:`MulSeries` has arity ``k``.
The moment series ``M`` of ``X`` has ``M_k = m^{k+1}``, the multilinear moment
``m^{n}(f_1..f_{n-1}) = Phi(X f_1 X ... f_{n-1} X)``.  The cumulant series
``B`` likewise has ``B_k = b^{k+1}``.  With these conventions the defining
recurrence is ``M = B (1 + I M)`` where ``I`` is the identity map in arity 1.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .exact import EXACT_TYPES, ONE, DimensionError, MatrixB, OrderMismatchError, Scalar, ScalarLike, basis, scalar
from .partitions import apply_pi, enumerate_partitions
from .scalar import CumulantSeq, MomentSeq, random_rational

BasisTuple = tuple[int, ...]


class IdentityViolation(ArithmeticError):
    """A computed pair fails an identity that must hold by construction."""


# ---------------------------------------------------------------------------
# multilinear maps


class MultilinearMap:
    """A multilinear map ``M_d^arity -> M_d`` given by its matrix-unit table.

    Basis tuples index the table with the first argument most significant;
    the matrix unit ``E_ij`` has basis index ``i*d + j``.
    """

    __slots__ = ("arity", "dim", "table")

    def __init__(self, arity: int, dim: int, table: Sequence[MatrixB]):
        table = tuple(table)
        if arity < 0:
            raise ValueError("arity must be non-negative")
        if len(table) != (dim * dim) ** arity:
            raise ValueError(f"table of arity {arity}, dim {dim} needs {(dim * dim) ** arity} entries")
        if any(m.dim != dim for m in table):
            raise DimensionError("table entries must all be d x d")
        self.arity, self.dim, self.table = arity, dim, table

    @classmethod
    def from_function(cls, arity: int, dim: int, fn: Callable[[BasisTuple], MatrixB]) -> "MultilinearMap":
        return cls(arity, dim, [fn(idx) for idx in basis_tuples(dim, arity)])

    @classmethod
    def constant(cls, value: MatrixB) -> "MultilinearMap":
        return cls(0, value.dim, [value])

    @classmethod
    def zero(cls, arity: int, dim: int) -> "MultilinearMap":
        return cls(arity, dim, [MatrixB.zero(dim)] * (dim * dim) ** arity)

    @classmethod
    def identity(cls, dim: int) -> "MultilinearMap":
        return cls(1, dim, basis(dim))

    def index(self, idx: BasisTuple) -> int:
        D = self.dim * self.dim
        flat = 0
        for b in idx:
            flat = flat * D + b
        return flat

    def entry(self, idx: BasisTuple) -> MatrixB:
        return self.table[self.index(idx)]

    def __call__(self, *args: MatrixB) -> MatrixB:
        if len(args) != self.arity:
            raise ValueError(f"map of arity {self.arity} called with {len(args)} arguments")
        units = [a.unit_index for a in args]
        if None not in units:
            return self.table[self.index(units)]
        for a in args:
            if a.dim != self.dim:
                raise DimensionError(f"argument of dim {a.dim} for map of dim {self.dim}")
        total = MatrixB.zero(self.dim)
        for combo in itertools.product(*(a.coordinates for a in args)):
            coeff = ONE
            for _, c in combo:
                coeff *= c
            total = total + self.table[self.index([b for b, _ in combo])].scale(coeff)
        return total

    def _check(self, other: "MultilinearMap") -> None:
        if (self.arity, self.dim) != (other.arity, other.dim):
            raise DimensionError(
                f"maps differ in arity/dim: {(self.arity, self.dim)} vs {(other.arity, other.dim)}"
            )

    def __add__(self, other: "MultilinearMap") -> "MultilinearMap":
        self._check(other)
        return MultilinearMap(self.arity, self.dim, [a + b for a, b in zip(self.table, other.table)])

    def __neg__(self) -> "MultilinearMap":
        return MultilinearMap(self.arity, self.dim, [-a for a in self.table])

    def __sub__(self, other: "MultilinearMap") -> "MultilinearMap":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "MultilinearMap":
        return MultilinearMap(self.arity, self.dim, [a.scale(c) for a in self.table])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultilinearMap):
            return NotImplemented
        return (self.arity, self.dim, self.table) == (other.arity, other.dim, other.table)

    def __hash__(self) -> int:
        return hash((self.arity, self.dim, self.table))

    def __repr__(self) -> str:
        return f"MultilinearMap(arity={self.arity}, dim={self.dim})"

    def first_difference(self, other: "MultilinearMap") -> BasisTuple | None:
        self._check(other)
        for idx, a, b in zip(basis_tuples(self.dim, self.arity), self.table, other.table):
            if a != b:
                return idx
        return None

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "table": {
                format_basis_tuple(idx, self.dim): m.to_json()
                for idx, m in zip(basis_tuples(self.dim, self.arity), self.table)
            },
        }

    @classmethod
    def from_json(cls, data: dict, dim: int) -> "MultilinearMap":
        arity = int(data["arity"])
        table = {parse_basis_tuple(k, dim): MatrixB.from_json(v) for k, v in data["table"].items()}
        try:
            return cls(arity, dim, [table[idx] for idx in basis_tuples(dim, arity)])
        except KeyError as exc:
            raise ValueError(f"table is missing basis tuple {exc.args[0]}") from None


def basis_tuples(dim: int, arity: int) -> Iterator[BasisTuple]:
    return itertools.product(range(dim * dim), repeat=arity)


def format_basis_tuple(idx: BasisTuple, dim: int) -> str:
    """``(i*d+j, k*d+l)`` becomes ``"i,j;k,l"`` (0-based); the empty tuple is ``""``."""
    return ";".join(f"{b // dim},{b % dim}" for b in idx)


def parse_basis_tuple(text: str, dim: int) -> BasisTuple:
    if text == "":
        return ()
    out = []
    for part in text.split(";"):
        i, j = (int(x) for x in part.split(","))
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"basis index {part!r} outside dimension {dim}")
        out.append(i * dim + j)
    return tuple(out)


# ---------------------------------------------------------------------------
# multilinear function series


class MulSeries:
    """``(F_0, F_1, ..., F_{N-1})`` with ``F_k`` of arity ``k``, truncated at arity ``N``."""

    __slots__ = ("dim", "components")

    def __init__(self, components: Sequence[MultilinearMap]):
        components = tuple(components)
        if not components:
            raise ValueError("series order must be positive")
        dim = components[0].dim
        for k, F in enumerate(components):
            if F.arity != k:
                raise ValueError(f"component {k} has arity {F.arity}")
            if F.dim != dim:
                raise DimensionError("all components must share one dimension")
        self.dim, self.components = dim, components

    @property
    def order(self) -> int:
        return len(self.components)

    def __getitem__(self, k: int) -> MultilinearMap:
        return self.components[k]

    @classmethod
    def zero(cls, order: int, dim: int) -> "MulSeries":
        return cls([MultilinearMap.zero(k, dim) for k in range(order)])

    @classmethod
    def one(cls, order: int, dim: int) -> "MulSeries":
        """``F_0`` the unit matrix, all higher components zero."""
        return cls([MultilinearMap.constant(MatrixB.identity(dim))] + [MultilinearMap.zero(k, dim) for k in range(1, order)])

    @classmethod
    def identity_function(cls, order: int, dim: int) -> "MulSeries":
        """``I``: ``I_1(f) = f`` and every other component zero."""
        comps = [MultilinearMap.zero(k, dim) for k in range(order)]
        if order > 1:
            comps[1] = MultilinearMap.identity(dim)
        return cls(comps)

    def _check(self, other: "MulSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"series orders differ: {self.order} vs {other.order}")
        if self.dim != other.dim:
            raise DimensionError(f"series dims differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "MulSeries") -> "MulSeries":
        self._check(other)
        return MulSeries([F + G for F, G in zip(self.components, other.components)])

    def __neg__(self) -> "MulSeries":
        return MulSeries([-F for F in self.components])

    def __sub__(self, other: "MulSeries") -> "MulSeries":
        return self + (-other)

    def __mul__(self, other: "MulSeries") -> "MulSeries":
        """Formal product ``(FG)_n(f_1..f_n) = sum_k F_k(f_1..f_k) G_{n-k}(f_{k+1}..f_n)``."""
        self._check(other)
        d = self.dim
        D = d * d
        zero = MatrixB.zero(d)
        comps = []
        for n in range(self.order):
            table = []
            for flat in range(D**n):
                total = zero
                for k in range(n + 1):
                    left, right = divmod(flat, D ** (n - k))
                    total = total + self.components[k].table[left].matmul(other.components[n - k].table[right])
                table.append(total)
            comps.append(MultilinearMap(n, d, table))
        return MulSeries(comps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MulSeries):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"MulSeries(order={self.order}, dim={self.dim})"

    def first_difference(self, other: "MulSeries") -> tuple[int, BasisTuple] | None:
        """``(component, basis tuple)`` of the first mismatch, or None."""
        self._check(other)
        for k, (F, G) in enumerate(zip(self.components, other.components)):
            idx = F.first_difference(G)
            if idx is not None:
                return k, idx
        return None

    def to_scalars(self) -> tuple[Scalar, ...]:
        """At ``d = 1``: the single table value of each component."""
        if self.dim != 1:
            raise DimensionError("scalar read-out needs dim 1")
        return tuple(F.table[0][0, 0] for F in self.components)

    def to_json(self) -> dict:
        return {"dim": self.dim, "order": self.order, "components": [F.to_json() for F in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "MulSeries":
        dim = int(data["dim"])
        comps = [MultilinearMap.from_json(c, dim) for c in data["components"]]
        if data.get("order", len(comps)) != len(comps):
            raise ValueError("series 'order' disagrees with number of components")
        return cls(comps)


def mulseries_add(F: MulSeries, G: MulSeries) -> MulSeries:
    return F + G


def mulseries_mul(F: MulSeries, G: MulSeries) -> MulSeries:
    return F * G


# ---------------------------------------------------------------------------
# distributions, moments and cumulants


@dataclass(frozen=True)
class OVDistribution:
    """Multilinear moments ``m^1 .. m^N``; ``m^n`` has arity ``n - 1``."""

    moments: tuple[MultilinearMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "moments", tuple(self.moments))
        MulSeries(self.moments)  # validates arities and dims

    @property
    def order(self) -> int:
        return len(self.moments)

    @property
    def dim(self) -> int:
        return self.moments[0].dim

    def moment(self, n: int) -> MultilinearMap:
        return self.moments[n - 1]

    def as_series(self) -> MulSeries:
        return MulSeries(self.moments)

    @classmethod
    def from_series(cls, M: MulSeries) -> "OVDistribution":
        return cls(M.components)

    @classmethod
    def from_scalar(cls, m: MomentSeq) -> "OVDistribution":
        """The ``d = 1`` distribution with the given moments."""
        return cls(tuple(MultilinearMap(n, 1, [MatrixB([[v]])]) for n, v in enumerate(m.values)))

    def to_scalar(self) -> MomentSeq:
        return MomentSeq(self.as_series().to_scalars())

    @classmethod
    def zero(cls, order: int, dim: int) -> "OVDistribution":
        return cls(MulSeries.zero(order, dim).components)

    def to_json(self) -> dict:
        return {"dim": self.dim, "order": self.order, "moments": [m.to_json() for m in self.moments]}

    @classmethod
    def from_json(cls, data: dict) -> "OVDistribution":
        dim = int(data["dim"])
        moments = tuple(MultilinearMap.from_json(m, dim) for m in data["moments"])
        if data.get("order", len(moments)) != len(moments):
            raise ValueError("'order' disagrees with number of moment maps")
        return cls(moments)


def _sandwich(A: MatrixB, f: MatrixB, B: MatrixB) -> MatrixB:
    return A.matmul(f).matmul(B)


def ov_moments_to_cumulants(D: OVDistribution) -> MulSeries:
    """Solve ``m^n = sum_{k=1}^n b^k(f_1..f_{k-1}) f_k m^{n-k}(f_{k+1}..f_{n-1})`` for the ``b^n``.

    The ``k = n`` term is ``b^n`` itself.  Solved per basis tuple, in order of
    increasing ``n``.
    """
    d = D.dim
    units = basis(d)
    Dsq = d * d
    cums: list[MultilinearMap] = []
    for n in range(1, D.order + 1):
        m_n = D.moment(n)
        table = []
        for flat, idx in enumerate(basis_tuples(d, n - 1)):
            val = m_n.table[flat]
            for k in range(1, n):
                # prefix: idx[:k-1], middle unit idx[k-1], suffix: idx[k:]
                prefix, rest = divmod(flat, Dsq ** (n - k))
                suffix = rest % Dsq ** (n - k - 1)
                val = val - _sandwich(cums[k - 1].table[prefix], units[idx[k - 1]], D.moment(n - k).table[suffix])
            table.append(val)
        cums.append(MultilinearMap(n - 1, d, table))
    return MulSeries(cums)


def ov_cumulants_to_moments(B: MulSeries, check: bool = True) -> OVDistribution:
    """Inverse of :func:`ov_moments_to_cumulants`.

    With ``check`` the result is confirmed against ``M = B (1 + I M)`` and an
    :class:`IdentityViolation` is raised on mismatch.
    """
    d = B.dim
    units = basis(d)
    Dsq = d * d
    moms: list[MultilinearMap] = []
    for n in range(1, B.order + 1):
        table = []
        for flat, idx in enumerate(basis_tuples(d, n - 1)):
            val = B[n - 1].table[flat]
            for k in range(1, n):
                prefix, rest = divmod(flat, Dsq ** (n - k))
                suffix = rest % Dsq ** (n - k - 1)
                val = val + _sandwich(B[k - 1].table[prefix], units[idx[k - 1]], moms[n - k - 1].table[suffix])
            table.append(val)
        moms.append(MultilinearMap(n - 1, d, table))
    dist = OVDistribution(tuple(moms))
    if check and not series_identity_holds(dist.as_series(), B):
        raise IdentityViolation("M = B(1 + I M) fails for the computed moments")
    return dist


def series_identity_holds(M: MulSeries, B: MulSeries) -> bool:
    """``M == B (1 + I M)`` as multilinear function series."""
    one = MulSeries.one(M.order, M.dim)
    I = MulSeries.identity_function(M.order, M.dim)
    return M == B * (one + I * M)


def ov_shift_one(B: MulSeries) -> MulSeries:
    """Cumulant series of ``1 + X`` from that of ``X``.

    ``b^1`` gains the unit; for ``n >= 2``,
    ``b^n_{1+X}(f_1..f_{n-1}) = sum over interval partitions g of n-1 of
    b^{|g|+1}_X(blockwise products of the f's)``.
    """
    d = B.dim
    units = basis(d)
    comps = [MultilinearMap.constant(MatrixB.identity(d) + B[0].table[0])]
    for n in range(2, B.order + 1):
        partitions = enumerate_partitions(n - 1)

        def value(idx: BasisTuple, partitions=partitions) -> MatrixB:
            args = [units[b] for b in idx]
            total = MatrixB.zero(d)
            for gamma in partitions:
                grouped = apply_pi(gamma, args, MatrixB.matmul)
                if any(g.is_zero for g in grouped):
                    continue
                total = total + B[len(gamma)](*grouped)
            return total

        comps.append(MultilinearMap.from_function(n - 1, d, value))
    return MulSeries(comps)


# ---------------------------------------------------------------------------
# joint model: elements, conditional expectation, mixed cumulants


@dataclass(frozen=True)
class OVWord:
    """``g_0 L_1 g_1 L_2 ... L_k g_k`` with letters ``L_i`` and base-algebra ``g_i``."""

    letters: str
    mats: tuple[MatrixB, ...]

    def __post_init__(self):
        if len(self.mats) != len(self.letters) + 1:
            raise ValueError("an interleaved word needs one more matrix than letters")
        if any(ch not in "XY" for ch in self.letters):
            raise ValueError(f"letters must be X or Y, got {self.letters!r}")

    def __mul__(self, other: "OVWord") -> "OVWord":
        joint = self.mats[-1].matmul(other.mats[0])
        return OVWord(self.letters + other.letters, self.mats[:-1] + (joint,) + other.mats[1:])


class OVElement:
    """A finite sum of interleaved words (scalars are absorbed into ``g_0``)."""

    __slots__ = ("dim", "words")

    def __init__(self, dim: int, words: Iterable[OVWord] = ()):
        self.dim = dim
        self.words = tuple(w for w in words if not any(g.is_zero for g in w.mats))

    @classmethod
    def letter(cls, ch: str, dim: int) -> "OVElement":
        I = MatrixB.identity(dim)
        return cls(dim, [OVWord(ch, (I, I))])

    @classmethod
    def const(cls, f: MatrixB) -> "OVElement":
        return cls(f.dim, [OVWord("", (f,))])

    @classmethod
    def unit(cls, dim: int) -> "OVElement":
        return cls.const(MatrixB.identity(dim))

    def __add__(self, other: "OVElement") -> "OVElement":
        return OVElement(self.dim, self.words + other.words)

    def __mul__(self, other):
        if isinstance(other, MatrixB):
            return self * OVElement.const(other)
        if isinstance(other, EXACT_TYPES):
            return self.scale(other)
        return OVElement(self.dim, [u * v for u in self.words for v in other.words])

    def __rmul__(self, other):
        if isinstance(other, MatrixB):
            return OVElement.const(other) * self
        if isinstance(other, EXACT_TYPES):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: ScalarLike) -> "OVElement":
        c = scalar(c)
        return OVElement(self.dim, [OVWord(w.letters, (w.mats[0].scale(c),) + w.mats[1:]) for w in self.words])

    def __repr__(self) -> str:
        return f"OVElement({' + '.join(w.letters or '1' for w in self.words) or '0'})"


@dataclass(frozen=True)
class OVJointState:
    """Two boolean independent (over ``M_d``) variables given by their marginals."""

    distX: OVDistribution
    distY: OVDistribution

    def __post_init__(self):
        if (self.distX.order, self.distX.dim) != (self.distY.order, self.distY.dim):
            raise DimensionError("marginals must share order and dimension")

    @property
    def order(self) -> int:
        return self.distX.order

    @property
    def dim(self) -> int:
        return self.distX.dim

    def run_value(self, letter: str, interior: Sequence[MatrixB]) -> MatrixB:
        """``Phi(L g_1 L ... g_{r-1} L)`` for a single run of one letter."""
        n = len(interior) + 1
        if n > self.order:
            raise ValueError(f"run of {n} letters {letter} exceeds moment order {self.order}")
        dist = self.distX if letter == "X" else self.distY
        return dist.moment(n)(*interior)

    def to_json(self) -> dict:
        return {"X": self.distX.to_json(), "Y": self.distY.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "OVJointState":
        return cls(OVDistribution.from_json(data["X"]), OVDistribution.from_json(data["Y"]))


def ov_phi_word(s: OVJointState, w: OVWord) -> MatrixB:
    """Conditional expectation of one interleaved word.

    The word is cut wherever the letter changes; the result is
    ``g_0 * run_1 * (boundary g) * run_2 * ... * g_k`` where each run is
    evaluated by the marginal moment map of its letter on its interior g's.
    """
    out = w.mats[0]
    i, k = 0, len(w.letters)
    while i < k:
        j = i
        while j + 1 < k and w.letters[j + 1] == w.letters[i]:
            j += 1
        out = out.matmul(s.run_value(w.letters[i], w.mats[i + 1 : j + 1])).matmul(w.mats[j + 1])
        i = j + 1
    return out


def ov_phi(s: OVJointState, a: OVElement) -> MatrixB:
    total = MatrixB.zero(s.dim)
    for w in a.words:
        total = total + ov_phi_word(s, w)
    return total


class OVRunStream:
    """``Phi(A_1 f_1 A_2 ... )`` evaluated while factors are appended.

    Tracks ``(open letter, interior args of the open run, pending right
    factor) -> accumulated left factor``; terms sharing a key are merged,
    which is valid because the final value is right-linear in the left factor.
    """

    __slots__ = ("state", "_open")

    def __init__(self, state: OVJointState):
        self.state = state
        I = MatrixB.identity(state.dim)
        self._open: dict[tuple, MatrixB] = {("", (), I): I}

    def copy(self) -> "OVRunStream":
        other = object.__new__(OVRunStream)
        other.state, other._open = self.state, dict(self._open)
        return other

    def feed(self, a: OVElement) -> "OVRunStream":
        s = self.state
        out: dict[tuple, MatrixB] = {}
        for (letter, interior, pending), P in self._open.items():
            for w in a.words:
                cur, inter, left = letter, interior, P
                g = pending.matmul(w.mats[0])
                for ch, nxt in zip(w.letters, w.mats[1:]):
                    if cur == "":
                        left, cur, inter = left.matmul(g), ch, ()
                    elif ch == cur:
                        inter = inter + (g,)
                    else:
                        left = left.matmul(s.run_value(cur, inter)).matmul(g)
                        cur, inter = ch, ()
                    g = nxt
                key = (cur, inter, g)
                out[key] = out[key] + left if key in out else left
        self._open = out
        return self

    def feed_base(self, f: MatrixB) -> "OVRunStream":
        out: dict[tuple, MatrixB] = {}
        for (letter, interior, pending), P in self._open.items():
            key = (letter, interior, pending.matmul(f))
            out[key] = out[key] + P if key in out else P
        self._open = out
        return self

    def value(self) -> MatrixB:
        s = self.state
        total = MatrixB.zero(s.dim)
        for (letter, interior, pending), P in self._open.items():
            if letter:
                total = total + P.matmul(s.run_value(letter, interior)).matmul(pending)
            else:
                total = total + P.matmul(pending)
        return total


def ov_phi_product(s: OVJointState, factors: Sequence[OVElement], between: Sequence[MatrixB]) -> MatrixB:
    """``Phi(A_1 f_1 A_2 ... f_{n-1} A_n)`` without expanding the product."""
    if len(between) != len(factors) - 1:
        raise ValueError("need exactly one base-algebra element between consecutive factors")
    stream = OVRunStream(s)
    for i, a in enumerate(factors):
        if i:
            stream.feed_base(between[i - 1])
        stream.feed(a)
    return stream.value()


def ov_mixed_cumulant(s: OVJointState, lower: Sequence[OVElement], upper: Sequence[MatrixB]) -> MatrixB:
    """``b^n_{A_1..A_n}(f_1..f_{n-1})`` by the operator-valued recurrence.

    ``Phi(A_1 f_1 ... A_n) = sum_k b^k_{A_1..A_k}(f_1..f_{k-1}) f_k Phi(A_{k+1} f_{k+1} ... A_n)``
    """
    n = len(lower)
    if n == 0:
        raise ValueError("cumulant of an empty entry list is undefined")
    if len(upper) != n - 1:
        raise ValueError(f"{n} lower arguments need {n - 1} upper arguments, got {len(upper)}")
    interval: dict[tuple[int, int], MatrixB] = {}
    for i in range(n):
        stream = OVRunStream(s)
        for j in range(i, n):
            if j > i:
                stream.feed_base(upper[j - 1])
            interval[i, j + 1] = stream.feed(lower[j]).value()
    b: list[MatrixB] = []
    for k in range(1, n + 1):
        val = interval[0, k]
        for j in range(1, k):
            val = val - _sandwich(b[j - 1], upper[j - 1], interval[j, k])
        b.append(val)
    return b[-1]


def phi_cumulant(s: OVJointState, entries: Sequence[OVElement]) -> MatrixB:
    """Cumulant of ``Phi`` with no base-algebra insertions.

    ``Phi(a_1...a_n) = sum_k b^k(a_1..a_k) Phi(a_{k+1}...a_n)`` solved by
    expanding each product into words and applying :func:`ov_phi_word`.
    """
    n = len(entries)
    if n == 0:
        raise ValueError("cumulant of an empty entry list is undefined")

    def phi_of(items: Sequence[OVElement]) -> MatrixB:
        prod_elem = OVElement.unit(s.dim)
        for a in items:
            prod_elem = prod_elem * a
        return ov_phi(s, prod_elem)

    b: list[MatrixB] = []
    for k in range(1, n + 1):
        val = phi_of(entries[:k])
        for j in range(1, k):
            val = val - b[j - 1].matmul(phi_of(entries[j:k]))
        b.append(val)
    return b[-1]


def ov_joint_moments(s: OVJointState, a: OVElement, order: int | None = None) -> OVDistribution:
    """Multilinear moments ``Phi(a f_1 a ... f_{n-1} a)`` of an element of the joint algebra.

    Walks basis tuples depth-first so each prefix is streamed only once.
    """
    order = s.order if order is None else order
    d = s.dim
    units = basis(d)
    tables: list[list[MatrixB]] = [[] for _ in range(order)]

    def walk(stream: OVRunStream, depth: int) -> None:
        # stream holds a e_1 a ... e_{depth-1} a
        tables[depth - 1].append(stream.value())
        if depth == order:
            return
        for e in units:
            walk(stream.copy().feed_base(e).feed(a), depth + 1)

    walk(OVRunStream(s).feed(a), 1)
    return OVDistribution(tuple(MultilinearMap(n, d, t) for n, t in enumerate(tables)))


def ov_letters(dim: int) -> tuple[OVElement, OVElement]:
    return OVElement.letter("X", dim), OVElement.letter("Y", dim)


def ov_bconv_add(s: OVJointState) -> MulSeries:
    """Cumulant series of ``X + Y``: the sum of the marginal cumulant series."""
    return ov_moments_to_cumulants(s.distX) + ov_moments_to_cumulants(s.distY)


def ov_bconv_mul(s: OVJointState, shift: bool = False) -> MulSeries:
    """Cumulant series of ``Z = X + Y + XY`` from the joint model.

    With ``shift`` the series of ``1 + Z = (1 + X)(1 + Y)`` is returned.
    """
    X, Y = ov_letters(s.dim)
    BZ = ov_moments_to_cumulants(ov_joint_moments(s, X + Y + X * Y))
    return ov_shift_one(BZ) if shift else BZ


def ov_shift_moments(D: OVDistribution) -> OVDistribution:
    """Moments of ``1 + X`` by expanding ``Phi((1+X) f_1 (1+X) ...)`` in the model."""
    s = OVJointState(D, D)
    X, _ = ov_letters(D.dim)
    return ov_joint_moments(s, OVElement.unit(D.dim) + X)


# ---------------------------------------------------------------------------
# random inputs


def random_matrix(rng: random.Random, dim: int, bound: int = 3, max_den: int = 3) -> MatrixB:
    return MatrixB([[random_rational(rng, bound, max_den) for _ in range(dim)] for _ in range(dim)])


def random_distribution(rng: random.Random, order: int, dim: int, bound: int = 3, max_den: int = 3) -> OVDistribution:
    """Every basis entry of every moment map drawn independently; no realizability filter."""
    return OVDistribution(
        tuple(
            MultilinearMap(n, dim, [random_matrix(rng, dim, bound, max_den) for _ in range((dim * dim) ** n)])
            for n in range(order)
        )
    )


def random_joint_state(rng: random.Random, order: int, dim: int) -> OVJointState:
    return OVJointState(random_distribution(rng, order, dim), random_distribution(rng, order, dim))


def scalar_cumulants(B: MulSeries) -> CumulantSeq:
    """Read a ``d = 1`` cumulant series as a scalar cumulant sequence."""
    return CumulantSeq(B.to_scalars())
