"""Amalgamated coproduct of two copies of a class-2 group over a subgroup.

``G *_H G`` in the class-2 variety is the free class-2 group on two copies
of G's generators, modulo both copies of G's relations and ``lam(h) = rho(h)``
for the generators h of H.  An element g of G lies in the dominion of H
exactly when ``lam(g)`` and ``rho(g)`` coincide there; this gives a
membership test that shares no code with the dominion computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nil2 import (
    ClassTwoGroup,
    Nil2Element,
    embed,
    free_inv,
    free_mul,
    lift_of,
    normal_closure_gens,
)
from .subdom2 import Subgroup2


@dataclass(frozen=True)
class Coproduct2:
    G: ClassTwoGroup
    H: Subgroup2
    F: ClassTwoGroup
    # generator i of G goes to lam_offset + i and rho_offset + i
    lam_offset: int
    rho_offset: int
    H_relations: tuple[Nil2Element, ...]

    def lam(self, g: Nil2Element) -> Nil2Element:
        return self.F.canonical(embed(g, self.F.rank, self.lam_offset))

    def rho(self, g: Nil2Element) -> Nil2Element:
        return self.F.canonical(embed(g, self.F.rank, self.rho_offset))


def build_coproduct(G: ClassTwoGroup, H: Subgroup2, swap: bool = False) -> Coproduct2:
    """With ``swap`` the first copy of G sits on the last n generators."""
    if H.ambient != G:
        raise ValueError("subgroup of a different group")
    n = G.rank
    lo, ro = (n, 0) if swap else (0, n)
    idn = [free_mul(embed(h, 2 * n, lo), free_inv(embed(h, 2 * n, ro))) for h in H.gens]
    rels = G.rel.elements()
    copies = [embed(r, 2 * n, 0) for r in rels] + [embed(r, 2 * n, n) for r in rels]
    F = ClassTwoGroup(2 * n, lift_of(2 * n, normal_closure_gens(2 * n, idn + copies)))
    return Coproduct2(G, H, F, lo, ro, tuple(idn))


def equal_images(P: Coproduct2, g: Nil2Element | str) -> bool:
    if isinstance(g, str):
        g = P.G.collect_word(g)
    return P.lam(g) == P.rho(g)
