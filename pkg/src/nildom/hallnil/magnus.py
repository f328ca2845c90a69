"""Magnus embedding of free nilpotent groups into truncated power series.

``x_i -> 1 + X_i`` embeds the free nilpotent group of class c into the unit
group of Z<X_1..X_n> modulo monomials of degree > c.  A series is a dict
from monomials (tuples of generator indices) to integer coefficients.

Exponents over the Hall basis are read off weight by weight: the lowest
nonconstant component of ``g`` is a combination of the Lie polynomials of
the basics of that weight, and dividing those factors out on the left moves
to the next weight.  This gives collected normal forms without any
rewriting, which the collectors are tested against.
"""

from __future__ import annotations

import functools
import math
from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from .basis import BasicCommutator, free_basics

Series = dict


class CollectionError(ArithmeticError):
    pass


def one() -> Series:
    return {(): 1}


def gen_series(i: int) -> Series:
    return {(): 1, (i,): 1}


def mul(a: Series, b: Series, c: int) -> Series:
    by_deg = defaultdict(list)
    for v, y in b.items():
        by_deg[len(v)].append((v, y))
    out: dict = defaultdict(int)
    for u, x in a.items():
        room = c - len(u)
        for d in range(room + 1):
            for v, y in by_deg.get(d, ()):
                out[u + v] += x * y
    return {k: v for k, v in out.items() if v}


def _minus_one(g: Series) -> Series:
    if g.get((), 0) != 1:
        raise ValueError("not a group element")
    return {k: v for k, v in g.items() if k}


def power(g: Series, m: int, c: int) -> Series:
    """``(1 + a)^m = sum C(m, k) a^k`` with the generalized binomial; any integer m."""
    a = _minus_one(g)
    acc = one()
    term = one()
    for k in range(1, c + 1):
        term = mul(term, a, c)
        if not term:
            break
        # C(m, k) for any integer m
        coef = math.prod(m - t for t in range(k)) // math.factorial(k)
        if coef:
            for u, x in term.items():
                acc[u] = acc.get(u, 0) + coef * x
    return {k: v for k, v in acc.items() if v}


def inverse(g: Series, c: int) -> Series:
    return power(g, -1, c)


def commutator(a: Series, b: Series, c: int) -> Series:
    return mul(mul(inverse(a, c), inverse(b, c), c), mul(a, b, c), c)


def lie_bracket(p: Series, q: Series) -> Series:
    out: dict = defaultdict(int)
    for u, x in p.items():
        for v, y in q.items():
            out[u + v] += x * y
            out[v + u] -= x * y
    return {k: v for k, v in out.items() if v}


@functools.lru_cache(maxsize=None)
def _lie(rank: int, cls: int) -> tuple[Series, ...]:
    out = []
    for b in free_basics(rank, cls):
        if b.gen is not None:
            out.append({(b.gen,): 1})
        else:
            out.append(lie_bracket(out[b.left.index], out[b.right.index]))
    return tuple(out)


def lie_polynomial(b: BasicCommutator) -> Series:
    return _lie(b.rank, b.weight)[b.index]


_PRIME = (1 << 61) - 1


class _WeightSolver:
    """Solve ``P = sum m_b Lie_b`` over the basics of one weight."""

    def __init__(self, lies: Sequence[Series]):
        self.lies = lies
        k = len(lies)
        monos = sorted({u for p in lies for u in p})
        # choose k monomials on which the Lie polynomials are independent (mod a large prime)
        rows = [[p.get(u, 0) % _PRIME for u in monos] for p in lies]
        pivots = _independent_columns(rows, len(monos))
        if len(pivots) != k:
            raise CollectionError("basic commutators are not independent")
        self.cols = [monos[j] for j in pivots]
        S = [[Fraction(p.get(u, 0)) for u in self.cols] for p in lies]
        inv = _invert(S)
        den = math.lcm(*(x.denominator for row in inv for x in row)) if k else 1
        self.den = den
        self.adj = [[int(x * den) for x in row] for row in inv]

    def solve(self, P: Series) -> list[int]:
        k = len(self.lies)
        v = [P.get(u, 0) for u in self.cols]
        m = []
        for j in range(k):
            s = sum(v[i] * self.adj[i][j] for i in range(k) if v[i])
            if s % self.den:
                raise CollectionError("non-integral exponent")
            m.append(s // self.den)
        check = defaultdict(int)
        for mj, p in zip(m, self.lies):
            if mj:
                for u, x in p.items():
                    check[u] += mj * x
        if {u: x for u, x in check.items() if x} != {u: x for u, x in P.items() if x}:
            raise CollectionError("component is not a combination of basic commutators")
        return m


def _independent_columns(rows: list[list[int]], ncols: int) -> list[int]:
    """Pivot columns of a row-echelon form over GF(p)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for j in range(ncols):
        if r == len(A):
            break
        piv = next((i for i in range(r, len(A)) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][j], _PRIME - 2, _PRIME)
        A[r] = [x * inv % _PRIME for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][j]:
                f = A[i][j]
                A[i] = [(x - f * y) % _PRIME for x, y in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
    return pivots


def _invert(S: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(S)
    A = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(S)]
    for j in range(n):
        piv = next(i for i in range(j, n) if A[i][j])
        A[j], A[piv] = A[piv], A[j]
        p = A[j][j]
        A[j] = [x / p for x in A[j]]
        for i in range(n):
            if i != j and A[i][j]:
                f = A[i][j]
                A[i] = [x - f * y for x, y in zip(A[i], A[j])]
    return [row[n:] for row in A]


class MagnusEngine:
    """Series images of the Hall basis of the free nilpotent group of rank n, class c."""

    def __init__(self, rank: int, cls: int):
        self.rank = rank
        self.cls = cls
        self.basis = free_basics(rank, cls)
        self._series: list[Series] = []
        for b in self.basis:
            if b.gen is not None:
                self._series.append(gen_series(b.gen))
            else:
                self._series.append(commutator(self._series[b.left.index], self._series[b.right.index], cls))
        self._by_weight = {w: [b.index for b in self.basis if b.weight == w] for w in range(1, cls + 1)}
        self._solvers = {w: _solver(rank, w, tuple(idx)) for w, idx in self._by_weight.items()}

    def series(self, i: int) -> Series:
        return self._series[i]

    def gen(self, i: int) -> Series:
        return gen_series(i)

    def mul(self, a: Series, b: Series) -> Series:
        return mul(a, b, self.cls)

    def inv(self, a: Series) -> Series:
        return inverse(a, self.cls)

    def pow(self, a: Series, m: int) -> Series:
        return power(a, m, self.cls)

    def from_exponents(self, exps: Sequence[int]) -> Series:
        g = one()
        for i, e in enumerate(exps):
            if e:
                g = mul(g, power(self._series[i], e, self.cls), self.cls)
        return g

    def exponents(self, g: Series) -> list[int]:
        """Exponents over the Hall basis of the group element ``g``."""
        exps = [0] * len(self.basis)
        c = self.cls
        for w in range(1, c + 1):
            if any(0 < len(u) < w for u in g):
                raise CollectionError("lower-degree terms survive")
            P = {u: x for u, x in g.items() if len(u) == w}
            if not P:
                continue
            idx = self._by_weight[w]
            m = self._solvers[w].solve(P)
            # g = A_w * rest with A_w ordered; strip A_w from the left
            for i, mi in zip(idx, m):
                if mi:
                    exps[i] = mi
                    g = mul(power(self._series[i], -mi, c), g, c)
        if g != one():
            raise CollectionError("residual series is not trivial")
        return exps


@functools.lru_cache(maxsize=None)
def _solver(rank: int, weight: int, idx: tuple[int, ...]) -> _WeightSolver:
    lies = _lie(rank, weight)
    return _WeightSolver([lies[i] for i in idx])


@functools.lru_cache(maxsize=None)
def engine(rank: int, cls: int) -> MagnusEngine:
    return MagnusEngine(rank, cls)
