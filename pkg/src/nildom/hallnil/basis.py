"""Hall basic commutators.

Weight-one basics are the generators, ordered by index.  ``[c1, c2]`` is
basic of weight k when the weights add to k, ``c1 > c2``, and, if
``c1 = [c3, c4]``, also ``c2 >= c4``.  Basics are ordered by weight and
then lexicographically by ``(c1, c2)``.

The metabelian flavor keeps only the left-normed basics
``[x_i1, x_i2, ..., x_im]`` with ``i1 > i2 <= i3 <= ... <= im``; all others
are trivial in a metabelian group.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from ..words import gen_name

FREE = "nil"
METABELIAN = "metabnil"
VARIETIES = (FREE, METABELIAN)

MAX_RANK = 4
MAX_CLASS = 8


@dataclass(frozen=True, eq=False)
class BasicCommutator:
    index: int  # position in the free basis of the given rank and class
    weight: int
    gen: int | None = None
    left: "BasicCommutator | None" = None
    right: "BasicCommutator | None" = None
    rank: int = field(default=0, compare=False)

    @property
    def is_generator(self) -> bool:
        return self.gen is not None

    @functools.cached_property
    def is_left_normed(self) -> bool:
        if self.gen is not None:
            return True
        return self.right.gen is not None and self.left.is_left_normed

    @functools.cached_property
    def key(self):
        """Structural identity, independent of the ambient class."""
        if self.gen is not None:
            return self.gen
        return (self.left.key, self.right.key)

    def entries(self) -> tuple["BasicCommutator", ...]:
        """Entries of the left-normed spine: ``[e0, e1, ..., ek]``."""
        if self.gen is not None:
            return (self,)
        return self.left.entries() + (self.right,)

    def __eq__(self, other) -> bool:
        return isinstance(other, BasicCommutator) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        if self.gen is not None:
            return gen_name(self.gen, self.rank)
        return "[" + ",".join(str(e) for e in self.entries()) + "]"


def _enumerate(rank: int, cls: int) -> tuple[BasicCommutator, ...]:
    out = [BasicCommutator(i, 1, gen=i, rank=rank) for i in range(rank)]
    for k in range(2, cls + 1):
        new = []
        for c1 in out:
            for c2 in out:
                if c1.weight + c2.weight != k or c1.index <= c2.index:
                    continue
                if c1.gen is None and c2.index < c1.right.index:
                    continue
                new.append((c1.index, c2.index, c1, c2))
        new.sort(key=lambda t: (t[0], t[1]))
        base = len(out)
        out += [BasicCommutator(base + n, k, left=c1, right=c2, rank=rank) for n, (_, _, c1, c2) in enumerate(new)]
    return tuple(out)


@functools.lru_cache(maxsize=None)
def free_basics(rank: int, cls: int) -> tuple[BasicCommutator, ...]:
    if cls > 1:
        # the class-(c-1) basis is a prefix; reuse its objects
        prev = free_basics(rank, cls - 1)
        full = _enumerate(rank, cls)
        return prev + full[len(prev):]
    return _enumerate(rank, cls)


def check_limits(rank: int, cls: int, allow_large: bool = False) -> None:
    if rank < 1 or cls < 1:
        raise ValueError("rank and class must be positive")
    if not allow_large and (rank > MAX_RANK or cls > MAX_CLASS):
        raise ValueError(f"rank {rank} / class {cls} exceeds the limits {MAX_RANK} / {MAX_CLASS}")


@dataclass(frozen=True)
class HallBasis:
    rank: int
    cls: int
    variety: str
    elements: tuple[BasicCommutator, ...] = field(compare=False, repr=False)
    # positions in the free basis of the same rank and class
    free_index: tuple[int, ...] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> BasicCommutator:
        return self.elements[i]

    def weight_counts(self) -> list[int]:
        counts = [0] * (self.cls + 1)
        for c in self.elements:
            counts[c.weight] += 1
        return counts[1:]

    def index_of(self, c: BasicCommutator) -> int:
        for i, e in enumerate(self.elements):
            if e == c:
                return i
        raise KeyError(str(c))

    def find(self, text: str) -> int:
        """Position of the basic commutator printed as ``text``."""
        for i, e in enumerate(self.elements):
            if str(e) == text.replace(" ", ""):
                return i
        raise KeyError(text)

    def format_lines(self) -> list[str]:
        return [f"{str(c)}  (weight {c.weight})" for c in self.elements]


@functools.lru_cache(maxsize=None)
def hall_basis(rank: int, cls: int, variety: str = FREE, allow_large: bool = False) -> HallBasis:
    check_limits(rank, cls, allow_large)
    if variety not in VARIETIES:
        raise ValueError(f"unknown variety {variety!r}")
    free = free_basics(rank, cls)
    if variety == FREE:
        keep = tuple(range(len(free)))
    else:
        keep = tuple(c.index for c in free if c.is_left_normed)
    return HallBasis(rank, cls, variety, tuple(free[i] for i in keep), keep)


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def necklace_count(rank: int, weight: int) -> int:
    """Number of basic commutators of the given weight (Witt's formula)."""
    total = sum(_mobius(d) * rank ** (weight // d) for d in range(1, weight + 1) if weight % d == 0)
    return total // weight


def metabelian_count(rank: int, weight: int) -> int:
    """Left-normed basics of weight w >= 2: (w-1) * C(rank + w - 2, w)."""
    if weight == 1:
        return rank
    from math import comb

    return (weight - 1) * comb(rank + weight - 2, weight)
