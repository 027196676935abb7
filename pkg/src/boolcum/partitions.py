"""Interval partitions of ``{1, ..., n}``.

An interval partition has consecutive blocks, so it is fully described by the
ordered list of its block sizes, i.e. a composition of ``n``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Callable, Iterator, Sequence, TypeVar

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class IntervalPartition:
    block_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.block_sizes)
        if not sizes or any(not isinstance(s, int) or s < 1 for s in sizes):
            raise ValueError(f"invalid block sizes {self.block_sizes!r}")
        object.__setattr__(self, "block_sizes", sizes)

    @property
    def size(self) -> int:
        """Size of the ground set."""
        return sum(self.block_sizes)

    def __len__(self) -> int:
        return len(self.block_sizes)

    def __add__(self, other: "IntervalPartition") -> "IntervalPartition":
        return juxtapose(self, other)

    def blocks(self) -> list[range]:
        """Blocks as 0-based index ranges."""
        out, start = [], 0
        for s in self.block_sizes:
            out.append(range(start, start + s))
            start += s
        return out

    def splits(self) -> Iterator[tuple["IntervalPartition", "IntervalPartition"]]:
        """Every way of writing this partition as ``left + right``."""
        for q in range(1, len(self.block_sizes)):
            yield IntervalPartition(self.block_sizes[:q]), IntervalPartition(self.block_sizes[q:])

    def to_json(self) -> list[int]:
        return list(self.block_sizes)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "IntervalPartition":
        return cls(tuple(int(x) for x in data))


def enumerate_partitions(n: int) -> list[IntervalPartition]:
    """All interval partitions of an ``n``-set, lexicographic in block sizes."""
    if n < 1:
        raise ValueError("interval partitions need a nonempty ground set")
    return [IntervalPartition(c) for c in _compositions(n)]


@lru_cache(maxsize=None)
def _compositions(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    return tuple((first,) + rest for first in range(1, n + 1) for rest in _compositions(n - first))


def juxtapose(left: IntervalPartition, right: IntervalPartition) -> IntervalPartition:
    return IntervalPartition(left.block_sizes + right.block_sizes)


def apply_pi(
    gamma: IntervalPartition,
    args: Sequence[T],
    mul: Callable[[T, T], T] = operator.mul,
) -> tuple[T, ...]:
    """Group ``args`` into the ordered products of the blocks of ``gamma``."""
    if len(args) != gamma.size:
        raise ValueError(f"partition of {gamma.size} applied to {len(args)} arguments")
    return tuple(reduce(mul, (args[i] for i in block)) for block in gamma.blocks())
