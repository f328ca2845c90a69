"""Exact integer linear algebra.

Lattices are subgroups of Z^n given by a basis of column vectors.  The
stored basis is in canonical (column) Hermite form: basis vector k has its
pivot in row ``pivots[k]``, rows above the pivot are zero, the pivot is
positive, and every earlier basis vector has its entry in that row reduced
into ``[0, pivot)``.  Equal lattices therefore have identical bases.

Matrices passed to :func:`kernel`, :func:`snf` and friends are lists of
rows; a matrix with ``r`` rows and ``c`` columns is a map Z^c -> Z^r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
INFINITE = math.inf

__all__ = [
    "IntLattice",
    "INFINITE",
    "hnf",
    "zero_lattice",
    "full_lattice",
    "member",
    "solve",
    "snf",
    "snf_transform",
    "kernel",
    "saturate",
    "intersect",
    "preimage",
    "direct_sum",
    "index",
    "quotient_invariants",
    "quotient_exponent",
]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _echelon(rows: list[list[int]], ncols: int, transform: bool = False):
    """Row Hermite form of ``rows`` in place.

    Returns ``(rank, pivots, U)`` where ``U`` (when requested) is unimodular
    with ``U * original = rows`` and the rows past ``rank`` are zero.
    """
    m = len(rows)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    r = 0
    pivots = []
    for col in range(ncols):
        if r == m:
            break
        nz = [i for i in range(r, m) if rows[i][col]]
        if not nz:
            continue
        if nz[0] != r:
            i = nz[0]
            rows[r], rows[i] = rows[i], rows[r]
            if U is not None:
                U[r], U[i] = U[i], U[r]
        for i in range(r + 1, m):
            b = rows[i][col]
            if not b:
                continue
            a = rows[r][col]
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            ra, rb = rows[r], rows[i]
            rows[r] = [s * x + t * y for x, y in zip(ra, rb)]
            rows[i] = [-bg * x + ag * y for x, y in zip(ra, rb)]
            if U is not None:
                ua, ub = U[r], U[i]
                U[r] = [s * x + t * y for x, y in zip(ua, ub)]
                U[i] = [-bg * x + ag * y for x, y in zip(ua, ub)]
        if rows[r][col] < 0:
            rows[r] = [-x for x in rows[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
        p = rows[r][col]
        for i in range(r):
            q = rows[i][col] // p
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                if U is not None:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        pivots.append(col)
        r += 1
    return r, pivots, U


@dataclass(frozen=True)
class IntLattice:
    """A subgroup of Z^ambient_dim in canonical Hermite form."""

    ambient_dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full(self) -> bool:
        return self.rank == self.ambient_dim and all(b[p] == 1 for b, p in zip(self.basis, self.pivots))

    def is_zero(self) -> bool:
        return not self.basis

    def _check(self, v: Sequence[int]) -> None:
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")

    def divide(self, v: Sequence[int]) -> tuple[tuple[int, ...], Vector]:
        """Hermite division: ``v = sum(q[k] * basis[k]) + r`` with ``r`` canonical."""
        self._check(v)
        r = list(v)
        qs = []
        for b, p in zip(self.basis, self.pivots):
            q = r[p] // b[p]
            if q:
                r = [x - q * y for x, y in zip(r, b)]
            qs.append(q)
        return tuple(qs), tuple(r)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of ``v`` modulo the lattice."""
        return self.divide(v)[1]

    def coords(self, v: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Coordinates of ``v`` in the stored basis, or None if not a member."""
        qs, r = self.divide(v)
        if any(r):
            return None
        return qs

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None

    def contains_lattice(self, other: "IntLattice") -> bool:
        return other.ambient_dim == self.ambient_dim and all(b in self for b in other.basis)

    def __add__(self, other: "IntLattice") -> "IntLattice":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return hnf(self.basis + other.basis, self.ambient_dim)

    def matrix(self) -> list[list[int]]:
        """Basis as a list of rows of the (ambient_dim x rank) column matrix."""
        return [[b[i] for b in self.basis] for i in range(self.ambient_dim)]

    def __repr__(self) -> str:
        cols = ", ".join("(" + ",".join(map(str, b)) + ")" for b in self.basis)
        return f"IntLattice(dim={self.ambient_dim}, basis=[{cols}])"


def hnf(columns: Iterable[Sequence[int]], dim: Optional[int] = None) -> IntLattice:
    """Canonical Hermite basis of the span of ``columns``."""
    rows = [list(map(int, c)) for c in columns]
    if dim is None:
        if not rows:
            raise ValueError("ambient dimension required for an empty column set")
        dim = len(rows[0])
    for c in rows:
        if len(c) != dim:
            raise ValueError("columns of unequal length")
    rows = [c for c in rows if any(c)]
    rank, pivots, _ = _echelon(rows, dim)
    return IntLattice(dim, tuple(tuple(r) for r in rows[:rank]), tuple(pivots))


def zero_lattice(dim: int) -> IntLattice:
    return IntLattice(dim, (), ())


def full_lattice(dim: int) -> IntLattice:
    return hnf([[int(i == j) for j in range(dim)] for i in range(dim)], dim)


def member(L: IntLattice, v: Sequence[int]) -> bool:
    return v in L


def solve(columns: Sequence[Sequence[int]], v: Sequence[int], dim: Optional[int] = None):
    """Integer vector ``s`` with ``sum(s[i] * columns[i]) == v``, or None."""
    cols = [list(map(int, c)) for c in columns]
    dim = len(v) if dim is None else dim
    if not cols:
        return () if not any(v) else None
    rank, pivots, U = _echelon(cols, dim, transform=True)
    r = list(v)
    s = [0] * len(cols)
    for k, p in enumerate(pivots):
        a, rem = divmod(r[p], cols[k][p])
        if rem:
            return None
        if a:
            r = [x - a * y for x, y in zip(r, cols[k])]
            s = [x + a * y for x, y in zip(s, U[k])]
    if any(r):
        return None
    return tuple(s)


def _transpose(m: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    return [[row[j] for row in m] for j in range(ncols)]


def kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntLattice:
    """Integer kernel of the map Z^ncols -> Z^rows given by the row matrix ``m``."""
    if ncols is None:
        if not m:
            raise ValueError("column count required for an empty matrix")
        ncols = len(m[0])
    rows = _transpose(m, ncols)
    rank, _, U = _echelon(rows, len(m), transform=True)
    return hnf(U[rank:], ncols)


def saturate(L: IntLattice) -> IntLattice:
    """(Q-span of L) intersected with Z^n."""
    n = L.ambient_dim
    if L.is_zero():
        return L
    orth = kernel([list(b) for b in L.basis], n)
    if orth.is_zero():
        return full_lattice(n)
    return kernel([list(b) for b in orth.basis], n)


def intersect(A: IntLattice, B: IntLattice) -> IntLattice:
    n = A.ambient_dim
    if A.is_zero() or B.is_zero():
        return zero_lattice(n)
    cols = [list(b) for b in A.basis] + [[-x for x in b] for b in B.basis]
    K = kernel(_transpose(cols, n), len(cols))
    ka = A.rank
    vecs = []
    for k in K.basis:
        vecs.append([sum(k[i] * A.basis[i][r] for i in range(ka)) for r in range(n)])
    return hnf(vecs, n)


def preimage(m: Sequence[Sequence[int]], L: IntLattice, ncols: Optional[int] = None) -> IntLattice:
    """``{v : m v in L}`` for a row matrix ``m`` with ``L`` in the target space."""
    if ncols is None:
        ncols = len(m[0])
    if len(m) != L.ambient_dim:
        raise ValueError("target dimension mismatch")
    # [m | -B] (x, c) = 0  <=>  m x = B c
    aug = [list(row) + [-b[i] for b in L.basis] for i, row in enumerate(m)]
    if not aug:
        return full_lattice(ncols)
    K = kernel(aug, ncols + L.rank)
    return hnf([k[:ncols] for k in K.basis], ncols)


def direct_sum(lattices: Sequence[IntLattice]) -> IntLattice:
    dim = sum(L.ambient_dim for L in lattices)
    cols = []
    off = 0
    for L in lattices:
        for b in L.basis:
            cols.append([0] * off + list(b) + [0] * (dim - off - L.ambient_dim))
        off += L.ambient_dim
    return hnf(cols, dim)


def snf_transform(m: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Smith form with transforms: returns ``(D, U, V)`` with ``U m V = D``."""
    A = [list(map(int, r)) for r in m]
    rows = len(A)
    cols = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for R in A:
                        R[j] -= q * R[t]
                    for R in V:
                        R[j] -= q * R[t]
                if A[t][j]:
                    done = False
            if not done:
                nz = [(abs(A[i][t]), i, -1) for i in range(t, rows) if A[i][t]]
                nz += [(abs(A[t][j]), -1, j) for j in range(t, cols) if A[t][j]]
                _, i, j = min(nz)
                if i >= 0:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            i = bad[0]
            A[t] = [x + y for x, y in zip(A[t], A[i])]
            U[t] = [x + y for x, y in zip(U[t], U[i])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def snf(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of an integer matrix."""
    D, _, _ = snf_transform(m, ncols)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i])


def quotient_invariants(sub: IntLattice, sup: IntLattice) -> Optional[tuple[int, ...]]:
    """Invariant factors of the finite group sup/sub, or None when infinite.

    Raises ValueError unless ``sub`` is contained in ``sup``.
    """
    if sub.ambient_dim != sup.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    coords = []
    for b in sub.basis:
        c = sup.coords(b)
        if c is None:
            raise ValueError("first lattice is not contained in the second")
        coords.append(c)
    if sub.rank != sup.rank:
        return None
    if not coords:
        return ()
    return snf(_transpose(coords, sup.rank), sub.rank)


def index(sub: IntLattice, sup: IntLattice):
    """[sup : sub] as an int, or INFINITE."""
    inv = quotient_invariants(sub, sup)
    if inv is None:
        return INFINITE
    return math.prod(inv)


def quotient_exponent(sub: IntLattice, sup: IntLattice):
    inv = quotient_invariants(sub, sup)
    if inv is None:
        return INFINITE
    return inv[-1] if inv else 1
