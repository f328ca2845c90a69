"""Lower bounds for dominions in free metabelian nilpotent groups of rank 2.

In the free metabelian group of class c on x, y the derived subgroup is
free abelian on the left-normed basic commutators of weight 2..c, so a
subgroup of it is an integer lattice in those coordinates.  Conjugation by
``g`` acts linearly (``T_g``) and so does ``ad_g = T_g - 1``, the map
``u -> [u, g]``.

Two rules enlarge a lattice D inside the dominion of H, for a, b among
x, y, x^-1, y^-1:

``comm``   if u, [u,a], [u,b] are in D then [u,a,b] is in the dominion
``conj``   if u, u^a, u^b are in D then u^(ab) is in the dominion

Both are applied to whole sublattices of witnesses until nothing changes.
The result is a lower bound; it equals the dominion when it is normal,
since normal subgroups are their own dominions.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

from . import intlat
from .intlat import INFINITE, IntLattice
from .hallnil import METABELIAN, hall_basis
from .hallnil.collect import collect_in

MOVES = ("x", "y", "x^-1", "y^-1")
RULES = ("comm", "conj")


class NotDerivedError(ValueError):
    pass


@functools.lru_cache(maxsize=None)
def derived_basis(cls: int):
    """Left-normed basics of weight 2..c on two generators."""
    if cls < 2:
        raise ValueError("class must be at least 2")
    B = hall_basis(2, cls, METABELIAN)
    return tuple(b for b in B if b.weight >= 2)


def _coords(cls: int, word: str) -> tuple[int, ...]:
    B = hall_basis(2, cls, METABELIAN)
    v = collect_in(B, word)
    if any(e for b, e in zip(B, v.exps) if b.weight == 1):
        raise NotDerivedError(f"{word!r} is not in the derived subgroup")
    return tuple(e for b, e in zip(B, v.exps) if b.weight >= 2)


def _word(cls: int, v: Sequence[int]) -> str:
    parts = [str(b) + ("" if e == 1 else f"^{e}") for b, e in zip(derived_basis(cls), v) if e]
    return " ".join(parts) if parts else "1"


@functools.lru_cache(maxsize=None)
def conj_matrix(cls: int, g: str) -> tuple[tuple[int, ...], ...]:
    """Rows of T_g: row i is the image ``g^-1 b_i g`` of basis element i."""
    return tuple(_coords(cls, f"({g})^-1 {b} ({g})") for b in derived_basis(cls))


@functools.lru_cache(maxsize=None)
def ad_matrix(cls: int, g: str) -> tuple[tuple[int, ...], ...]:
    T = conj_matrix(cls, g)
    return tuple(tuple(x - int(i == j) for j, x in enumerate(row)) for i, row in enumerate(T))


def apply(M: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    """Image of a coordinate vector under the map whose rows are images of basis vectors."""
    d = len(v)
    return tuple(sum(v[i] * M[i][j] for i in range(d) if v[i]) for j in range(d))


def _as_columns(M) -> list[list[int]]:
    # matrix acting on column vectors: (M^T)
    d = len(M)
    return [[M[i][j] for i in range(d)] for j in range(d)]


@dataclass(frozen=True)
class DerivedLattice:
    cls: int
    lattice: IntLattice

    @property
    def dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def basis_names(self) -> list[str]:
        return [str(b) for b in derived_basis(self.cls)]

    def words(self) -> list[str]:
        return [_word(self.cls, v) for v in self.lattice.basis]

    def __contains__(self, v) -> bool:
        if isinstance(v, str):
            v = _coords(self.cls, v)
        return tuple(v) in self.lattice

    def is_full(self) -> bool:
        return self.lattice.is_full()

    def is_normal(self) -> bool:
        """Closed under [., x] and [., y], hence normal in the whole group."""
        return all(apply(ad_matrix(self.cls, g), v) in self.lattice for g in ("x", "y") for v in self.lattice.basis)


def derived_lattice(cls: int, gens: Sequence[str]) -> DerivedLattice:
    d = len(derived_basis(cls))
    return DerivedLattice(cls, intlat.hnf([_coords(cls, w) for w in gens], d))


def full_derived(cls: int) -> DerivedLattice:
    return DerivedLattice(cls, intlat.full_lattice(len(derived_basis(cls))))


@dataclass(frozen=True)
class Step:
    rule: str
    a: str
    b: str
    witness: tuple[int, ...]
    hypotheses: tuple[tuple[int, ...], ...]
    added: tuple[int, ...]


@dataclass(frozen=True)
class SaturationResult:
    H: DerivedLattice
    D: DerivedLattice
    steps: tuple[Step, ...]
    iterations: int
    normal: bool = field(default=False)

    @property
    def certified_equal(self) -> bool:
        """The lower bound is the dominion itself."""
        return self.normal

    def index(self):
        return intlat.index(self.H.lattice, self.D.lattice)


def _witnesses(cls: int, D: IntLattice, rule: str, a: str, b: str) -> IntLattice:
    M = ad_matrix if rule == "comm" else conj_matrix
    U = D
    for g in {a, b}:
        U = intlat.intersect(U, intlat.preimage(_as_columns(M(cls, g)), D, D.ambient_dim))
    return U


def _step(cls: int, rule: str, a: str, b: str, u: tuple[int, ...]) -> Step:
    M = ad_matrix if rule == "comm" else conj_matrix
    ua = apply(M(cls, a), u)
    ub = apply(M(cls, b), u)
    return Step(rule, a, b, u, (u, ua, ub), apply(M(cls, b), ua))


def saturate_dominion(H: DerivedLattice, rules: Sequence[str] = RULES, moves: Sequence[str] = MOVES,
                      max_iterations: int = 100) -> SaturationResult:
    cls = H.cls
    for r in rules:
        if r not in RULES:
            raise ValueError(f"unknown rule {r!r}")
    D = H.lattice
    steps: list[Step] = []
    it = 0
    while True:
        it += 1
        if it > max_iterations:
            raise RuntimeError("saturation did not stabilize")
        grown = False
        for rule in rules:
            for a in moves:
                for b in moves:
                    U = _witnesses(cls, D, rule, a, b)
                    for u in U.basis:
                        s = _step(cls, rule, a, b, u)
                        if s.added not in D:
                            steps.append(s)
                            D = D + intlat.hnf([s.added], D.ambient_dim)
                            grown = True
        if not grown:
            break
    res = DerivedLattice(cls, D)
    return SaturationResult(H, res, tuple(steps), it, res.is_normal())


class AuditError(AssertionError):
    pass


def audit(H: DerivedLattice, steps: Sequence[Step]) -> DerivedLattice:
    """Replay a certificate from H, checking every hypothesis and conclusion."""
    cls = H.cls
    D = H.lattice
    for k, s in enumerate(steps):
        M = ad_matrix if s.rule == "comm" else conj_matrix
        u, ua, ub = s.hypotheses
        if u != s.witness or ua != apply(M(cls, s.a), u) or ub != apply(M(cls, s.b), u):
            raise AuditError(f"step {k}: hypotheses do not match the witness")
        for h in s.hypotheses:
            if h not in D:
                raise AuditError(f"step {k}: hypothesis {_word(cls, h)} is not yet available")
        if s.added != apply(M(cls, s.b), ua):
            raise AuditError(f"step {k}: conclusion does not follow")
        D = D + intlat.hnf([s.added], D.ambient_dim)
    return DerivedLattice(cls, D)


def index(H: DerivedLattice, D: DerivedLattice):
    return intlat.index(H.lattice, D.lattice)


__all__ = [
    "DerivedLattice",
    "INFINITE",
    "SaturationResult",
    "Step",
    "audit",
    "derived_basis",
    "derived_lattice",
    "full_derived",
    "saturate_dominion",
]
