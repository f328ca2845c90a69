"""Groups of nilpotency class at most two.

Every element of the free class-2 group on x1..xn has a unique normal form
``x1^m1 ... xn^mn * prod_{j>i} [xj,xi]^m_ji``.  The central coordinates are
indexed by pairs ``(j, i)`` with ``j > i`` in lexicographic order, so that
``[y,x]`` is the positive unit vector and ``[x,y] = [y,x]^-1``.

A finitely presented class-2 group is the free group modulo a normal
subgroup ``N``.  ``N`` is stored by its lifted data: the lattice of abelian
parts, one central "tail" per Hermite basis vector (the central part of an
element of ``N`` with that abelian part), and the lattice of central
elements of ``N``.  The same triple describes any subgroup of the free
group that contains ``N``; see :class:`Lift`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from . import intlat
from .intlat import IntLattice
from .words import Evaluator, gen_name, parse

if TYPE_CHECKING:
    from .subdom2 import Subgroup2

Vector = tuple[int, ...]


@functools.lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Central coordinates ``(j, i)``, ``j > i``, in lexicographic order (0-based)."""
    return tuple((j, i) for j in range(n) for i in range(j))


@functools.lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pairs(n))}


def cdim(n: int) -> int:
    return n * (n - 1) // 2


def cross(m: Sequence[int], p: Sequence[int]) -> Vector:
    """Central correction ``m_j * p_i`` from moving p's letters left past m's."""
    return tuple(m[j] * p[i] for j, i in pairs(len(m)))


def wedge(m: Sequence[int], p: Sequence[int]) -> Vector:
    """Central coordinates of the commutator of elements with abelian parts m, p."""
    return tuple(m[j] * p[i] - m[i] * p[j] for j, i in pairs(len(m)))


def _add(*vs: Sequence[int]) -> Vector:
    return tuple(map(sum, zip(*vs)))


def _scale(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * x for x in v)


@dataclass(frozen=True)
class Nil2Element:
    ab: Vector
    cen: Vector

    @property
    def rank(self) -> int:
        return len(self.ab)

    def is_identity(self) -> bool:
        return not any(self.ab) and not any(self.cen)

    def __str__(self) -> str:
        return format_element(self)


# Arithmetic in the free class-2 group.  These never canonicalize.

def free_identity(n: int) -> Nil2Element:
    return Nil2Element((0,) * n, (0,) * cdim(n))


def free_gen(n: int, i: int) -> Nil2Element:
    return Nil2Element(tuple(int(k == i) for k in range(n)), (0,) * cdim(n))


def free_mul(g: Nil2Element, h: Nil2Element) -> Nil2Element:
    return Nil2Element(_add(g.ab, h.ab), _add(g.cen, h.cen, cross(g.ab, h.ab)))


def free_inv(g: Nil2Element) -> Nil2Element:
    return Nil2Element(_scale(-1, g.ab), _add(_scale(-1, g.cen), cross(g.ab, g.ab)))


def free_pow(g: Nil2Element, k: int) -> Nil2Element:
    # (x^m u)^k = x^(km) u^k prod [xj,xi]^(C(k,2) m_j m_i); C(k,2) = k(k-1)/2 for all k
    c2 = k * (k - 1) // 2
    return Nil2Element(_scale(k, g.ab), _add(_scale(k, g.cen), _scale(c2, cross(g.ab, g.ab))))


def free_comm(g: Nil2Element, h: Nil2Element) -> Nil2Element:
    return Nil2Element((0,) * g.rank, wedge(g.ab, h.ab))


def central(n: int, c: Sequence[int]) -> Nil2Element:
    return Nil2Element((0,) * n, tuple(c))


@dataclass(frozen=True)
class Lift:
    """A subgroup of the free class-2 group of rank ``n`` in canonical form.

    ``ab`` is its abelianized image, ``tails[k]`` the central part (reduced
    modulo ``cen``) of its element whose abelian part is ``ab.basis[k]``, and
    ``cen`` its intersection with the derived subgroup.
    """

    n: int
    ab: IntLattice
    tails: tuple[Vector, ...]
    cen: IntLattice

    def divide(self, g: Nil2Element) -> Nil2Element:
        """Multiply ``g`` on the right by elements of the subgroup so that its
        abelian part is the canonical residue and its central part is reduced."""
        for b, p, t in zip(self.ab.basis, self.ab.pivots, self.tails):
            q = g.ab[p] // b[p]
            if q:
                g = free_mul(g, free_pow(Nil2Element(b, t), -q))
        return Nil2Element(g.ab, self.cen.reduce(g.cen))

    def contains(self, g: Nil2Element) -> bool:
        r = self.divide(g)
        return not any(r.ab) and not any(r.cen)

    def elements(self) -> list[Nil2Element]:
        """Generators: one per abelian basis vector plus the central basis."""
        gens = [Nil2Element(b, t) for b, t in zip(self.ab.basis, self.tails)]
        gens += [central(self.n, c) for c in self.cen.basis]
        return gens


def lift_of(n: int, gens: Sequence[Nil2Element]) -> Lift:
    """Canonical data of the subgroup of the free group generated by ``gens``."""
    k = len(gens)
    cd = cdim(n)
    ab = intlat.hnf([g.ab for g in gens], n)
    # relations among abelian parts: an ordered product with trivial abelian
    # part is central; together with the pairwise commutators these span H n F'
    cvecs = [wedge(gens[i].ab, gens[j].ab) for i in range(k) for j in range(i + 1, k)]
    if k:
        K = intlat.kernel([[g.ab[r] for g in gens] for r in range(n)], k) if n else intlat.full_lattice(k)
        for r in K.basis:
            acc = free_identity(n)
            for g, e in zip(gens, r):
                if e:
                    acc = free_mul(acc, free_pow(g, e))
            cvecs.append(acc.cen)
    cen = intlat.hnf(cvecs, cd)
    tails = []
    for b in ab.basis:
        s = intlat.solve([g.ab for g in gens], b, n)
        acc = free_identity(n)
        for g, e in zip(gens, s):
            if e:
                acc = free_mul(acc, free_pow(g, e))
        assert acc.ab == b
        tails.append(cen.reduce(acc.cen))
    return Lift(n, ab, tuple(tails), cen)


def trivial_lift(n: int) -> Lift:
    return Lift(n, intlat.zero_lattice(n), (), intlat.zero_lattice(cdim(n)))


def normal_closure_gens(n: int, gens: Sequence[Nil2Element]) -> list[Nil2Element]:
    extra = [central(n, wedge(g.ab, e.ab)) for g in gens for e in (free_gen(n, k) for k in range(n))]
    return list(gens) + extra


class NotNormalError(ValueError):
    pass


@dataclass(frozen=True)
class ClassTwoGroup:
    """The free class-2 group of rank ``rank`` modulo the normal subgroup ``rel``."""

    rank: int
    rel: Lift

    @classmethod
    def free(cls, rank: int) -> "ClassTwoGroup":
        return cls(rank, trivial_lift(rank))

    @classmethod
    def from_relators(cls, rank: int, relators: Sequence[Nil2Element | str]) -> "ClassTwoGroup":
        free = cls.free(rank)
        rels = [free.element(r) if isinstance(r, str) else r for r in relators]
        return cls(rank, lift_of(rank, normal_closure_gens(rank, rels)))

    @property
    def R_ab(self) -> IntLattice:
        return self.rel.ab

    @property
    def R_cen(self) -> IntLattice:
        return self.rel.cen

    @property
    def tails(self) -> tuple[Vector, ...]:
        return self.rel.tails

    def is_free(self) -> bool:
        return self.R_ab.is_zero() and self.R_cen.is_zero()

    def check_consistency(self) -> bool:
        """Relators are central: their commutators with generators are relations."""
        return all(
            wedge(b, free_gen(self.rank, k).ab) in self.R_cen for b in self.R_ab.basis for k in range(self.rank)
        )

    def canonical(self, g: Nil2Element) -> Nil2Element:
        if g.rank != self.rank or len(g.cen) != cdim(self.rank):
            raise ValueError(f"element of rank {g.rank} used in a group of rank {self.rank}")
        return self.rel.divide(g)

    def identity(self) -> Nil2Element:
        return free_identity(self.rank)

    def gen(self, i: int) -> Nil2Element:
        return self.canonical(free_gen(self.rank, i))

    def multiply(self, g: Nil2Element, h: Nil2Element) -> Nil2Element:
        if g.rank != self.rank or h.rank != self.rank:
            raise ValueError("rank mismatch")
        return self.canonical(free_mul(g, h))

    def inverse(self, g: Nil2Element) -> Nil2Element:
        return self.canonical(free_inv(g))

    def power(self, g: Nil2Element, k: int) -> Nil2Element:
        return self.canonical(free_pow(g, k))

    def commutator(self, g: Nil2Element, h: Nil2Element) -> Nil2Element:
        return self.canonical(free_comm(g, h))

    def equal(self, g: Nil2Element, h: Nil2Element) -> bool:
        return self.canonical(g) == self.canonical(h)

    def evaluator(self) -> Evaluator[Nil2Element]:
        # evaluate freely, canonicalize once at the end
        n = self.rank
        return Evaluator(
            gen=lambda i: free_gen(n, i),
            identity=lambda: free_identity(n),
            mul=free_mul,
            inv=free_inv,
            power=free_pow,
        )

    def collect_word(self, word: str) -> Nil2Element:
        return self.canonical(self.evaluator()(parse(word, self.rank)))

    element = collect_word

    def format(self, g: Nil2Element) -> str:
        return format_element(g)


def format_element(g: Nil2Element) -> str:
    n = g.rank
    parts = []
    for i, m in enumerate(g.ab):
        if m:
            parts.append(gen_name(i, n) + ("" if m == 1 else f"^{m}"))
    for (j, i), m in zip(pairs(n), g.cen):
        if m:
            parts.append(f"[{gen_name(j, n)},{gen_name(i, n)}]" + ("" if m == 1 else f"^{m}"))
    return " ".join(parts) if parts else "1"


def format_generator(g: Nil2Element) -> str:
    """Print a subgroup generator; central ones may be replaced by their inverse.

    A central generator is written in ``[xi,xj]`` (i < j) orientation with the
    sign chosen so the first exponent is positive.  It generates the same
    cyclic subgroup as ``g``.
    """
    if any(g.ab):
        return format_element(g)
    n = g.rank
    coeffs = [(i, j, -m) for (j, i), m in zip(pairs(n), g.cen) if m]
    coeffs.sort()
    if coeffs and coeffs[0][2] < 0:
        coeffs = [(i, j, -m) for i, j, m in coeffs]
    parts = [f"[{gen_name(i, n)},{gen_name(j, n)}]" + ("" if m == 1 else f"^{m}") for i, j, m in coeffs]
    return " ".join(parts) if parts else "1"


def power_subgroup_member(a: Sequence[int], g: Nil2Element) -> bool:
    """Membership in <x1^a1, ..., xn^an> of the free class-2 group."""
    n = len(a)
    if g.rank != n:
        raise ValueError("rank mismatch")
    if any(x <= 0 for x in a):
        raise ValueError("exponents must be positive")
    if any(m % ai for m, ai in zip(g.ab, a)):
        return False
    return all(m % (a[j] * a[i]) == 0 for (j, i), m in zip(pairs(n), g.cen))


def embed(g: Nil2Element, n_total: int, offset: int) -> Nil2Element:
    """Image of ``g`` under x_i -> x_(i+offset) in the free group of rank n_total."""
    n = g.rank
    ab = [0] * n_total
    ab[offset:offset + n] = g.ab
    cen = [0] * cdim(n_total)
    idx = pair_index(n_total)
    for (j, i), m in zip(pairs(n), g.cen):
        cen[idx[(j + offset, i + offset)]] = m
    return Nil2Element(tuple(ab), tuple(cen))


def direct_product(G1: ClassTwoGroup, G2: ClassTwoGroup) -> ClassTwoGroup:
    n1, n2 = G1.rank, G2.rank
    n = n1 + n2
    gens = [embed(g, n, 0) for g in G1.rel.elements()]
    gens += [embed(g, n, n1) for g in G2.rel.elements()]
    idx = pair_index(n)
    for j in range(n1, n):
        for i in range(n1):
            e = [0] * cdim(n)
            e[idx[(j, i)]] = 1
            gens.append(central(n, e))
    return ClassTwoGroup(n, lift_of(n, gens))


def quotient(G: ClassTwoGroup, N: "Subgroup2") -> ClassTwoGroup:
    """``G/N`` for a normal subgroup ``N``; raises NotNormalError otherwise."""
    if N.ambient != G:
        raise ValueError("subgroup of a different group")
    for g in N.gens:
        for k in range(G.rank):
            if wedge(g.ab, free_gen(G.rank, k).ab) not in N.lift.cen:
                raise NotNormalError(f"[{format_element(g)}, {gen_name(k, G.rank)}] is not in the subgroup")
    return ClassTwoGroup(G.rank, N.lift)


def trivial_group() -> ClassTwoGroup:
    return ClassTwoGroup.free(0)


def gcd_all(vals) -> int:
    return functools.reduce(math.gcd, vals, 0)
