"""Collection to the Hall normal form.

The free nilpotent group of class c is given by the polycyclic presentation
on its basic commutators: ``c_j^-s c_k c_j^s = c_k * (higher basics)`` for
``j < k``.  Conjugates are computed once through the power-series embedding
and cached; everything else is symbolic rewriting on exponent vectors or
syllable lists.

Three strategies are available:

``left``       collection from the left on exponent vectors (default)
``leftmost``   rewrite the leftmost out-of-order pair of a syllable list
``rightmost``  rewrite the rightmost out-of-order pair
``magnus``     no rewriting: evaluate in power series and read off exponents

In the metabelian flavor non-left-normed basics lie in the second derived
subgroup, so they are dropped as soon as they appear.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from ..words import Evaluator, parse
from .basis import FREE, METABELIAN, HallBasis, free_basics, hall_basis
from .magnus import CollectionError, engine

STRATEGIES = ("left", "leftmost", "rightmost", "magnus")

Syllables = list[tuple[int, int]]


class Collector:
    """Arithmetic on exponent vectors over the free Hall basis."""

    def __init__(self, rank: int, cls: int, variety: str = FREE):
        self.rank = rank
        self.cls = cls
        self.variety = variety
        self.basics = free_basics(rank, cls)
        self.size = len(self.basics)
        self.weights = [b.weight for b in self.basics]
        if variety == METABELIAN:
            self.dropped = frozenset(b.index for b in self.basics if not b.is_left_normed)
        else:
            self.dropped = frozenset()
        self._conj: dict[tuple[int, int, int], tuple[int, ...]] = {}
        self._comm: dict[tuple[int, int, int, int], tuple[tuple[int, int], ...]] = {}

    # presentation

    def commutes(self, i: int, j: int) -> bool:
        return self.weights[i] + self.weights[j] > self.cls

    def conj(self, k: int, j: int, s: int) -> tuple[int, ...]:
        """Exponent vector of ``c_j^-s c_k c_j^s`` for j < k."""
        key = (k, j, s)
        v = self._conj.get(key)
        if v is None:
            E = engine(self.rank, self.cls)
            g = E.mul(E.mul(E.pow(E.series(j), -s), E.series(k)), E.pow(E.series(j), s))
            v = tuple(0 if i in self.dropped else e for i, e in enumerate(E.exponents(g)))
            self._conj[key] = v
        return v

    # exponent vectors

    def identity(self) -> list[int]:
        return [0] * self.size

    def unit(self, i: int, e: int = 1) -> list[int]:
        v = self.identity()
        if i not in self.dropped:
            v[i] = e
        return v

    def mul_syllable(self, r: list[int], j: int, e: int) -> None:
        """``r <- r * c_j^e`` in place (collection from the left)."""
        if e == 0 or j in self.dropped:
            return
        tail = []
        for i in range(j + 1, self.size):
            if r[i] and (tail or not self.commutes(i, j)):
                tail.append((i, r[i]))
        if not tail:
            r[j] += e
            return
        for i, _ in tail:
            r[i] = 0
        r[j] += e
        # r * c_j^e = (head) c_j^e (tail)^(c_j^e)
        for i, x in tail:
            if self.commutes(i, j):
                self.mul_syllable(r, i, x)
            else:
                self.mul_vector(r, self.power(list(self.conj(i, j, e)), x))

    def mul_vector(self, r: list[int], v: Sequence[int]) -> None:
        for i, x in enumerate(v):
            if x:
                self.mul_syllable(r, i, x)

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        r = list(a)
        self.mul_vector(r, b)
        return r

    def inverse(self, v: Sequence[int]) -> list[int]:
        r = self.identity()
        for i in range(self.size - 1, -1, -1):
            if v[i]:
                self.mul_syllable(r, i, -v[i])
        return r

    def power(self, v: Sequence[int], m: int) -> list[int]:
        nz = [i for i, x in enumerate(v) if x]
        if len(nz) <= 1:
            return [x * m for x in v]
        if m < 0:
            v, m = self.inverse(v), -m
        result = self.identity()
        base = list(v)
        while m:
            if m & 1:
                self.mul_vector(result, base)
            m >>= 1
            if m:
                base = self.multiply(base, base)
        return result

    def commutator(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        return self.multiply(self.multiply(self.inverse(a), self.inverse(b)), self.multiply(a, b))

    # syllable rewriting

    def _tidy(self, w: Syllables) -> Syllables:
        out: Syllables = []
        for i, e in w:
            if e == 0 or i in self.dropped:
                continue
            if out and out[-1][0] == i:
                s = out[-1][1] + e
                out.pop()
                if s:
                    out.append((i, s))
            else:
                out.append((i, e))
        return out

    def comm_syllables(self, k: int, a: int, j: int, b: int) -> tuple[tuple[int, int], ...]:
        """Collected ``[c_k^a, c_j^b]`` for j < k; its support lies above k."""
        key = (k, a, j, b)
        v = self._comm.get(key)
        if v is None:
            E = engine(self.rank, self.cls)
            g = E.mul(E.pow(E.series(k), -a), E.mul(E.mul(E.pow(E.series(j), -b), E.pow(E.series(k), a)), E.pow(E.series(j), b)))
            v = tuple((i, e) for i, e in enumerate(E.exponents(g)) if e and i not in self.dropped)
            self._comm[key] = v
        return v

    def rewrite(self, w: Syllables, rightmost: bool = False) -> list[int]:
        """Collect a syllable list by repeatedly fixing one out-of-order pair."""
        w = self._tidy(w)
        while True:
            bad = [p for p in range(len(w) - 1) if w[p][0] > w[p + 1][0]]
            if not bad:
                break
            p = bad[-1] if rightmost else bad[0]
            (k, a), (j, b) = w[p], w[p + 1]
            if self.commutes(k, j):
                repl = [(j, b), (k, a)]
            else:
                # xy = yx[x,y]
                repl = [(j, b), (k, a)] + list(self.comm_syllables(k, a, j, b))
            w = self._tidy(w[:p] + repl + w[p + 2:])
        v = self.identity()
        for i, e in w:
            v[i] = e
        return v


@functools.lru_cache(maxsize=None)
def collector(rank: int, cls: int, variety: str = FREE) -> Collector:
    return Collector(rank, cls, variety)


@dataclass(frozen=True)
class NcElement:
    """Element of a relatively free nilpotent group as exponents over a Hall basis."""

    basis: HallBasis
    exps: tuple[int, ...]

    @classmethod
    def from_free(cls, basis: HallBasis, v: Sequence[int]) -> "NcElement":
        return cls(basis, tuple(v[i] for i in basis.free_index))

    def free_vector(self) -> list[int]:
        v = [0] * len(free_basics(self.basis.rank, self.basis.cls))
        for i, e in zip(self.basis.free_index, self.exps):
            v[i] = e
        return v

    @property
    def _col(self) -> Collector:
        return collector(self.basis.rank, self.basis.cls, self.basis.variety)

    def __mul__(self, other: "NcElement") -> "NcElement":
        if other.basis != self.basis:
            raise ValueError("elements of different groups")
        return NcElement.from_free(self.basis, self._col.multiply(self.free_vector(), other.free_vector()))

    def inverse(self) -> "NcElement":
        return NcElement.from_free(self.basis, self._col.inverse(self.free_vector()))

    def __pow__(self, m: int) -> "NcElement":
        return NcElement.from_free(self.basis, self._col.power(self.free_vector(), m))

    def is_identity(self) -> bool:
        return not any(self.exps)

    def exponent_of(self, name: str) -> int:
        return self.exps[self.basis.find(name)]

    def support(self) -> dict[str, int]:
        return {str(b): e for b, e in zip(self.basis, self.exps) if e}

    def min_weight(self) -> int | None:
        ws = [b.weight for b, e in zip(self.basis, self.exps) if e]
        return min(ws) if ws else None

    def truncate(self, cls: int) -> "NcElement":
        """Image in the quotient of class ``cls``."""
        B = hall_basis(self.basis.rank, cls, self.basis.variety, allow_large=True)
        keep = {b.key: e for b, e in zip(self.basis, self.exps)}
        return NcElement(B, tuple(keep[b.key] for b in B))

    def __str__(self) -> str:
        parts = []
        for b, e in zip(self.basis, self.exps):
            if e:
                parts.append(str(b) + ("" if e == 1 else f"^{e}"))
        return " ".join(parts) if parts else "1"


def identity(basis: HallBasis) -> NcElement:
    return NcElement(basis, (0,) * len(basis))


def _magnus_collect(basis: HallBasis, word: str) -> list[int]:
    E = engine(basis.rank, basis.cls)
    ev = Evaluator(gen=E.gen, identity=lambda: {(): 1}, mul=E.mul, inv=E.inv, power=E.pow)
    v = E.exponents(ev(parse(word, basis.rank)))
    if basis.variety == METABELIAN:
        keep = set(basis.free_index)
        v = [e if i in keep else 0 for i, e in enumerate(v)]
    return v


def _syllables(col: Collector, node) -> Syllables:
    """Flatten a parse tree into generator syllables (brackets expanded)."""
    from ..words import Comm, Gen, Pow

    def inv(s: Syllables) -> Syllables:
        return [(i, -e) for i, e in reversed(s)]

    def go(n) -> Syllables:
        if isinstance(n, Gen):
            return [(n.index, 1)]
        if isinstance(n, Pow):
            s = go(n.base)
            if len(s) == 1:
                return [(s[0][0], s[0][1] * n.exp)]
            return (s if n.exp > 0 else inv(s)) * abs(n.exp)
        if isinstance(n, Comm):
            acc = go(n.entries[0])
            for e in n.entries[1:]:
                b = go(e)
                acc = inv(acc) + inv(b) + acc + b
            return acc
        return [t for term in n.terms for t in go(term)]

    return go(node)


def collect(rank: int, cls: int, variety: str, word: str, strategy: str = "left") -> NcElement:
    basis = hall_basis(rank, cls, variety)
    return collect_in(basis, word, strategy)


def collect_in(basis: HallBasis, word: str, strategy: str = "left") -> NcElement:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    node = parse(word, basis.rank)
    if strategy == "magnus":
        return NcElement.from_free(basis, _magnus_collect(basis, word))
    col = collector(basis.rank, basis.cls, basis.variety)
    if strategy == "left":
        ev = Evaluator(
            gen=col.unit,
            identity=col.identity,
            mul=col.multiply,
            inv=col.inverse,
            power=col.power,
        )
        return NcElement.from_free(basis, ev(node))
    return NcElement.from_free(basis, col.rewrite(_syllables(col, node), rightmost=(strategy == "rightmost")))


def element(basis: HallBasis, word: str) -> NcElement:
    return collect_in(basis, word)


__all__ = ["Collector", "NcElement", "collect", "collect_in", "collector", "identity", "STRATEGIES", "CollectionError"]

