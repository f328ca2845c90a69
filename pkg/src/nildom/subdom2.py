"""Subgroups of class-2 groups and their dominions.

A subgroup ``H`` of ``G = F/N`` is kept through its full preimage in the
free class-2 group ``F``: the lattice ``L`` of abelian parts, the lattice
``C`` of central elements, and tails linking the two.  Both lattices contain
the relation lattices of ``G``.

The dominion of ``H`` is ``H`` together with every ``[x,y]^q`` such that
``x^q`` and ``y^q`` lie in ``H`` modulo the derived subgroup, i.e. ``q*x``
and ``q*y`` are in ``L``.  Only finitely many ``q`` matter: with ``e`` the
exponent of ``saturate(L)/L`` it suffices to take ``q`` among the divisors
of ``e``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import intlat
from .intlat import INFINITE, IntLattice
from .nil2 import (
    ClassTwoGroup,
    Lift,
    Nil2Element,
    cdim,
    central,
    format_element,
    format_generator,
    free_gen,
    free_pow,
    lift_of,
    wedge,
)


class NotInDominionError(ValueError):
    pass


class NotSubgroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Subgroup2:
    ambient: ClassTwoGroup
    gens: tuple[Nil2Element, ...]
    lift: Lift

    @property
    def L(self) -> IntLattice:
        return self.lift.ab

    @property
    def C(self) -> IntLattice:
        return self.lift.cen

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup2):
            return NotImplemented
        return self.ambient == other.ambient and self.lift == other.lift

    def __hash__(self) -> int:
        return hash((self.ambient, self.lift))

    def __contains__(self, g: Nil2Element) -> bool:
        return member(self, g)

    def format_gens(self) -> str:
        out = []
        for g in self.gens:
            s = format_generator(g)
            if s not in out:
                out.append(s)
        return ", ".join(out) if out else "1"

    def __str__(self) -> str:
        return f"<{self.format_gens()}>"


def _as_element(G: ClassTwoGroup, g) -> Nil2Element:
    return G.collect_word(g) if isinstance(g, str) else G.canonical(g)


def subgroup(G: ClassTwoGroup, gens: Sequence[Nil2Element | str]) -> Subgroup2:
    elems = tuple(_as_element(G, g) for g in gens)
    return Subgroup2(G, elems, lift_of(G.rank, list(elems) + G.rel.elements()))


def whole(G: ClassTwoGroup) -> Subgroup2:
    return subgroup(G, [G.gen(i) for i in range(G.rank)])


def trivial(G: ClassTwoGroup) -> Subgroup2:
    return subgroup(G, [])


def member(H: Subgroup2, g: Nil2Element | str) -> bool:
    g = _as_element(H.ambient, g)
    return H.lift.contains(g)


def contains(K: Subgroup2, H: Subgroup2) -> bool:
    """True when H is a subgroup of K."""
    if H.ambient != K.ambient:
        raise ValueError("subgroups of different groups")
    return all(K.lift.contains(g) for g in H.lift.elements())


def join(*subs: Subgroup2) -> Subgroup2:
    G = subs[0].ambient
    return subgroup(G, [g for H in subs for g in H.gens])


def w_lattice(L: IntLattice) -> IntLattice:
    """Span of ``q * (u ^ v)`` over all q >= 1 with ``q*u, q*v`` in L."""
    n = L.ambient_dim
    S = intlat.saturate(L)
    e = intlat.quotient_exponent(L, S)
    vecs = []
    for d in range(1, e + 1):
        if e % d:
            continue
        Ld = intlat.preimage([[d * int(i == j) for j in range(n)] for i in range(n)], L, n)
        B = Ld.basis
        for a, b in itertools.combinations(B, 2):
            vecs.append(tuple(d * x for x in wedge(b, a)))
    return intlat.hnf(vecs, cdim(n))


def dominion(H: Subgroup2) -> Subgroup2:
    G = H.ambient
    CD = H.C + w_lattice(H.L)
    lift = Lift(G.rank, H.L, tuple(CD.reduce(t) for t in H.lift.tails), CD)
    gens = list(H.gens)
    for c in CD.basis:
        g = G.canonical(central(G.rank, c))
        if not g.is_identity() and g not in gens:
            gens.append(g)
    return Subgroup2(G, tuple(gens), lift)


def is_closed(H: Subgroup2) -> bool:
    return dominion(H) == H


def index(H: Subgroup2, K: Subgroup2):
    """[K:H] for H contained in K, or INFINITE."""
    if not contains(K, H):
        raise NotSubgroupError("first subgroup is not contained in the second")
    a = intlat.index(H.L, K.L)
    c = intlat.index(H.C, K.C)
    if a == INFINITE or c == INFINITE:
        return INFINITE
    return a * c


def min_power_in(H: Subgroup2, d: Nil2Element | str) -> int:
    G = H.ambient
    d = _as_element(G, d)
    D = dominion(H)
    if not member(D, d):
        raise NotInDominionError(f"{format_element(d)} is not in the dominion")
    # H is normal of finite index in its dominion, so the order of dH divides it
    bound = index(H, D)
    assert bound != INFINITE
    for k in range(1, bound + 1):
        if H.lift.contains(free_pow(d, k)):
            return k
    raise AssertionError("power bound exceeded")


def centralizer(H: Subgroup2) -> Subgroup2:
    G = H.ambient
    n = G.rank
    hs = [g.ab for g in H.gens if any(g.ab)]
    if hs:
        # rows of v -> (wedge(v, a_h))_h
        rows = []
        for a in hs:
            for k in range(cdim(n)):
                rows.append([wedge(tuple(int(i == j) for i in range(n)), a)[k] for j in range(n)])
        A = intlat.preimage(rows, intlat.direct_sum([G.R_cen] * len(hs)), n)
    else:
        A = intlat.full_lattice(n)
    gens = [G.canonical(Nil2Element(b, (0,) * cdim(n))) for b in A.basis]
    gens += [G.canonical(central(n, e)) for e in intlat.full_lattice(cdim(n)).basis]
    return subgroup(G, [g for g in gens if not g.is_identity()])


def normal_closure(H: Subgroup2) -> Subgroup2:
    G = H.ambient
    n = G.rank
    extra = []
    for g in H.gens:
        for k in range(n):
            c = G.canonical(central(n, wedge(g.ab, free_gen(n, k).ab)))
            if not c.is_identity() and c not in extra:
                extra.append(c)
    return subgroup(G, list(H.gens) + extra)


def is_normal(H: Subgroup2) -> bool:
    return normal_closure(H) == H


def counterexample_table(k: int) -> tuple[int, ...]:
    """Least n with ([x,y]^i)^n in <x^i, y^i>, for i = 1..k."""
    if k < 1:
        raise ValueError("k must be positive")
    F = ClassTwoGroup.free(2)
    return tuple(min_power_in(subgroup(F, [f"x^{i}", f"y^{i}"]), f"[x,y]^{i}") for i in range(1, k + 1))


# Subvarieties x^m = [x1,x2]^n = [x1,x2,x3] = 1 of class-2 groups


class InadmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class SubvarietyParams:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise InadmissibleError("m and n must be nonnegative")
        if self.m > 0:
            k = self.m // math.gcd(2, self.m)
            if self.n == 0 or k % self.n:
                raise InadmissibleError(f"n={self.n} does not divide m/gcd(2,m)={k}")

    def group(self) -> ClassTwoGroup:
        """Relatively free rank-2 group of the subvariety."""
        return ClassTwoGroup.from_relators(2, [f"x^{self.m}", f"y^{self.m}", f"[x,y]^{self.n}"])


@dataclass(frozen=True)
class SubvarietyWitness:
    params: SubvarietyParams
    p: int
    group: ClassTwoGroup
    H: Subgroup2
    order: int | None
    subgroup_size: int | None
    description_matches: bool
    generators_in_H: bool
    comm_power_outside: bool
    checks: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.description_matches and self.generators_in_H and self.comm_power_outside


def _enumerate(G: ClassTwoGroup, gens: Sequence[Nil2Element]) -> set[Nil2Element]:
    seen = {G.identity()}
    frontier = [G.identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = G.multiply(g, h)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def subvariety_witness(params: SubvarietyParams, p: int) -> SubvarietyWitness:
    """Show ``<x^p, y^p>`` misses ``[x,y]^p`` in the rank-2 relatively free group."""
    if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")
    m, n = params.m, params.n
    if n % (p * p):
        raise InadmissibleError(f"p^2={p * p} does not divide n={n}")
    G = params.group()
    H = subgroup(G, [f"x^{p}", f"y^{p}"])
    gens_in = member(H, f"x^{p}") and member(H, f"y^{p}")
    outside = not member(H, f"[x,y]^{p}")
    if m > 0:
        order = m * m * n
        elems = _enumerate(G, list(H.gens))
        described = {
            G.collect_word(f"x^{a * p} y^{b * p} [x,y]^{c * p * p}")
            for a in range(m)
            for b in range(m)
            for c in range(n)
        }
        matches = elems == described
        size = len(elems)
    else:
        order = None
        size = None
        # the described set is <x^p, y^p, [x,y]^(p^2)>; compare lattices
        described = subgroup(G, [f"x^{p}", f"y^{p}", f"[x,y]^{p * p}"])
        matches = described == H
    checks = {"L": H.L, "C": H.C}
    return SubvarietyWitness(params, p, G, H, order, size, matches, gens_in, outside, checks)
