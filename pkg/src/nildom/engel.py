"""Small finite groups as Cayley tables, and 2-Engel checks on them.

A 2-Engel group satisfies ``[[x,y],y] = 1``.  :func:`two_engel_report`
evaluates eight conditions that are all equivalent to this law, each by
exhaustive search over the table, so disagreement among them points at a
bug.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Hashable, Sequence


class GroupAxiomError(ValueError):
    def __init__(self, axiom: str, detail: str = ""):
        super().__init__(f"{axiom} fails" + (f": {detail}" if detail else ""))
        self.axiom = axiom


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    label: str = ""
    identity: int = field(init=False)
    inverses: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        e, inv = verify_axioms(self.table)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverses", inv)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inverses[a], -n
        r = self.identity
        while n:
            if n & 1:
                r = self.table[r][a]
            a = self.table[a][a]
            n >>= 1
        return r

    def comm(self, a: int, b: int) -> int:
        t, inv = self.table, self.inverses
        return t[t[inv[a]][inv[b]]][t[a][b]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @property
    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(self.order)))

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    k = self.table[g][h]
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            frontier = nxt
        return frozenset(seen)

    def commutator_subgroup(self, A: frozenset[int], B: frozenset[int]) -> frozenset[int]:
        return self.generated(sorted({self.comm(a, b) for a in A for b in B}))

    def lower_central_series(self, K: frozenset[int] | None = None) -> list[frozenset[int]]:
        K = frozenset(range(self.order)) if K is None else K
        series = [K]
        while True:
            nxt = self.commutator_subgroup(series[-1], K)
            if nxt == series[-1]:
                return series
            series.append(nxt)

    def nilpotency_class(self, K: frozenset[int] | None = None) -> int | None:
        """Class of K (whole group by default), or None when not nilpotent."""
        series = self.lower_central_series(K)
        if len(series[-1]) != 1:
            return None
        return len(series) - 1

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))


def verify_axioms(table: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    n = len(table)
    if n == 0:
        raise GroupAxiomError("nonempty", "no elements")
    for r, row in enumerate(table):
        if len(row) != n:
            raise GroupAxiomError("square table", f"row {r} has {len(row)} entries")
        for x in row:
            if not (isinstance(x, int) and 0 <= x < n):
                raise GroupAxiomError("closure", f"entry {x!r} in row {r}")
    es = [e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))]
    if not es:
        raise GroupAxiomError("identity")
    e = es[0]
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == e and table[b][a] == e), None)
        if b is None:
            raise GroupAxiomError("inverses", f"element {a} has no inverse")
        inv.append(b)
    for a in range(n):
        ta = table[a]
        for b in range(n):
            ab = ta[b]
            tab = table[ab]
            tb = table[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    raise GroupAxiomError("associativity", f"({a}*{b})*{c} != {a}*({b}*{c})")
    return e, tuple(inv)


def from_elements(elements: Sequence[Hashable], mul: Callable, names=None, label: str = "") -> CayleyGroup:
    index = {g: i for i, g in enumerate(elements)}
    table = []
    for g in elements:
        row = []
        for h in elements:
            k = mul(g, h)
            if k not in index:
                raise GroupAxiomError("closure", f"{g} * {h} = {k}")
            row.append(index[k])
        table.append(tuple(row))
    names = tuple(names) if names is not None else tuple(str(g) for g in elements)
    return CayleyGroup(tuple(table), names, label)


def symmetric(n: int) -> CayleyGroup:
    if not 1 <= n <= 5:
        raise ValueError("symmetric groups are limited to n <= 5")
    perms = list(itertools.permutations(range(n)))
    # apply p first, then q
    return from_elements(perms, lambda p, q: tuple(q[p[i]] for i in range(n)), label=f"S{n}")


def dihedral(n: int) -> CayleyGroup:
    """Symmetries of the n-gon, order 2n: pairs (k, s) for r^k s^s."""
    if not 2 <= n <= 12:
        raise ValueError("dihedral groups are limited to 2 <= n <= 12")
    els = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(a, b):
        k1, s1 = a
        k2, s2 = b
        return ((k1 + (-k2 if s1 else k2)) % n, (s1 + s2) % 2)

    return from_elements(els, mul, label=f"D{n}")


def cyclic(n: int) -> CayleyGroup:
    return abelian((n,))


def abelian(invariants: Sequence[int]) -> CayleyGroup:
    inv = tuple(invariants) or (1,)
    els = list(itertools.product(*(range(d) for d in inv)))
    return from_elements(els, lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, inv)),
                         label="C" + "xC".join(map(str, inv)))


def quaternion8() -> CayleyGroup:
    # units of the quaternions as (sign, unit) with unit in 1, i, j, k
    prod = {
        ("1", u): (1, u) for u in "1ijk"
    }
    prod.update({(u, "1"): (1, u) for u in "1ijk"})
    for u in "ijk":
        prod[(u, u)] = (-1, "1")
    prod.update({("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    els = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mul(a, b):
        s, u = prod[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    names = [("" if s == 1 else "-") + u for s, u in els]
    return from_elements(els, mul, names, label="Q8")


def heisenberg_mod(p: int) -> CayleyGroup:
    """Triples mod p with (a,b,c)(x,y,z) = (a+x, b+y, c+z+bx)."""
    if p not in (2, 3, 5):
        raise ValueError("heisenberg_mod is limited to p in 2, 3, 5")
    els = list(itertools.product(range(p), repeat=3))
    return from_elements(
        els,
        lambda g, h: ((g[0] + h[0]) % p, (g[1] + h[1]) % p, (g[2] + h[2] + g[1] * h[0]) % p),
        label=f"Heis({p})",
    )


def read_table(path: str | Path) -> CayleyGroup:
    """Table file: the order N, then N rows of N 0-based indices."""
    toks = Path(path).read_text().split()
    try:
        nums = [int(t) for t in toks]
    except ValueError as exc:
        raise GroupAxiomError("table format", str(exc)) from None
    if not nums:
        raise GroupAxiomError("table format", "empty file")
    n = nums[0]
    body = nums[1:]
    if len(body) != n * n:
        raise GroupAxiomError("table format", f"expected {n * n} entries, found {len(body)}")
    table = tuple(tuple(body[r * n:(r + 1) * n]) for r in range(n))
    return CayleyGroup(table, tuple(map(str, range(n))), Path(path).name)


def abelian_invariants_of_order(n: int) -> list[tuple[int, ...]]:
    """Invariant factor lists d1 | d2 | ... with product n."""
    out = []

    def rec(rest: int, prev: int, acc: list[int]):
        if rest == 1:
            out.append(tuple(acc))
            return
        for d in range(prev, rest + 1):
            if rest % d == 0 and d % prev == 0 and d > 1:
                rec(rest // d, d, acc + [d])

    rec(n, 1, [])
    return out or [()]


def all_abelian(max_order: int) -> list[CayleyGroup]:
    return [abelian(inv) for n in range(1, max_order + 1) for inv in abelian_invariants_of_order(n)]


_DESC = re.compile(r"^\s*([A-Za-z]+)\s*[ _(]?\s*([\d,\s]*)\)?\s*$")


def build_group(desc: str) -> CayleyGroup:
    """Build from a text description: ``S3``, ``symmetric 4``, ``D6``, ``dihedral 6``,
    ``Q8``, ``quaternion8``, ``heisenberg 3``, ``C5``, ``cyclic 5``, ``abelian 2,4``,
    or a path to a table file."""
    if Path(desc).is_file():
        return read_table(desc)
    s = desc.strip().lower()
    if s in ("q8", "quaternion8", "quaternion"):
        return quaternion8()
    m = _DESC.match(s)
    if not m:
        raise ValueError(f"cannot read group description {desc!r}")
    kind, args = m.group(1), [int(a) for a in re.split(r"[,\s]+", m.group(2).strip()) if a]
    makers = {
        "s": symmetric, "symmetric": symmetric, "sym": symmetric,
        "d": dihedral, "dihedral": dihedral,
        "c": cyclic, "cyclic": cyclic, "z": cyclic,
        "heis": heisenberg_mod, "heisenberg": heisenberg_mod, "heisenberg_mod": heisenberg_mod,
    }
    if kind in ("abelian", "ab"):
        return abelian(args)
    if kind not in makers or len(args) != 1:
        raise ValueError(f"cannot read group description {desc!r}")
    return makers[kind](args[0])


def corpus() -> list[CayleyGroup]:
    gs = [symmetric(3), symmetric(4)]
    gs += [dihedral(n) for n in range(4, 13)]
    gs += [quaternion8()] + [heisenberg_mod(p) for p in (2, 3, 5)]
    gs += all_abelian(16)
    return gs


# 2-Engel conditions

CONDITIONS = (
    "i: [[x,y],y] = 1",
    "ii: [x,y^n] = [x,y]^n = [x^n,y] for all n",
    "iii: [x,y^-1] = [x,y]^-1 = [x^-1,y]",
    "iv: [x,y^2] = [x,y]^2 = [x^2,y]",
    "v: some n has [x,y^(n+i)] = [x,y]^(n+i) = [x^(n+i),y] for i = 0,1,2",
    "vi: [x^-1,y] = [x,y^-1]",
    "vii: [x^2,y] = [x,y^2]",
    "viii: every 2-generated subgroup has class at most 2",
)


def _power_law(G: CayleyGroup, n: int) -> bool:
    P = [G.power(a, n) for a in range(G.order)]
    for x in range(G.order):
        for y in range(G.order):
            c = G.comm(x, y)
            if not (G.comm(x, P[y]) == G.power(c, n) == G.comm(P[x], y)):
                return False
    return True


@dataclass(frozen=True)
class EngelReport:
    group: str
    order: int
    values: tuple[bool, ...]

    @property
    def uniform(self) -> bool:
        return len(set(self.values)) == 1

    def lines(self) -> list[str]:
        out = [f"{name}: {'true' if v else 'false'}" for name, v in zip(CONDITIONS, self.values)]
        out.append(f"uniform: {'true' if self.uniform else 'false'}")
        return out


def two_engel_report(G: CayleyGroup) -> EngelReport:
    n = G.order
    els = range(n)
    exp = G.exponent
    inv = G.inverses
    v1 = all(G.comm(G.comm(x, y), y) == G.identity for x in els for y in els)
    v2 = all(_power_law(G, k) for k in range(1, exp + 1))
    v3 = all(G.comm(x, inv[y]) == inv[G.comm(x, y)] == G.comm(inv[x], y) for x in els for y in els)
    v4 = _power_law(G, 2)
    v5 = any(all(_power_law(G, k + i) for i in range(3)) for k in range(1, exp + 1))
    v6 = all(G.comm(inv[x], y) == G.comm(x, inv[y]) for x in els for y in els)
    sq = [G.mul(a, a) for a in els]
    v7 = all(G.comm(sq[x], y) == G.comm(x, sq[y]) for x in els for y in els)
    seen: dict[frozenset[int], bool] = {}
    v8 = True
    for x in els:
        for y in range(x, n):
            K = G.generated([x, y])
            if K not in seen:
                c = G.nilpotency_class(K)
                seen[K] = c is not None and c <= 2
            if not seen[K]:
                v8 = False
                break
        if not v8:
            break
    return EngelReport(G.label, n, (v1, v2, v3, v4, v5, v6, v7, v8))
