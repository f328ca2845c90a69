"""Commutator identities, binomial exponent fitting and p-divisibility checks.

Identities are data: each catalogue entry builds, from its parameters, lists
of words that must all collect to the same normal form.  Nothing here knows
about the collector beyond :func:`collect_in`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..words import gen_name, split_top
from .basis import FREE, METABELIAN, HallBasis, hall_basis
from .collect import NcElement, collect_in


class UnknownIdentity(KeyError):
    pass


class FitError(ArithmeticError):
    pass


def lnc(*entries: str) -> str:
    """Left-normed commutator word ``[a,b,c,...]``."""
    return "[" + ",".join(entries) + "]"


def _prod(factors) -> str:
    out = " ".join(w if e == 1 else f"{w}^{e}" for w, e in factors if e)
    return out or "1"


@dataclass(frozen=True)
class Identity:
    name: str
    formula: str
    rank: int
    params: tuple[str, ...]
    variety: str
    # params, class -> list of equalities, each a list of words
    build: Callable[[dict, int], list[list[str]]] = field(repr=False)
    note: str = ""
    # n may be zero or negative
    any_sign: bool = False


def _comm_power_left(p, c):
    n = p["n"]
    rhs = [(lnc("y", "x", *["y"] * (k - 1)), math.comb(n, k)) for k in range(1, n + 1) if k + 1 <= c]
    return [[f"[y^{n},x]", _prod(rhs)]]


def _comm_power_right(p, c):
    n = p["n"]
    rhs = [(lnc("y", *["x"] * k), math.comb(n, k)) for k in range(1, n + 1) if k + 1 <= c]
    return [[f"[y,x^{n}]", _prod(rhs)]]


def _pull_in_left(p, c):
    n = p["n"]
    rest = [(lnc("y", "x", *["y"] * (k - 1)), -math.comb(n, k)) for k in range(2, n + 1) if k + 1 <= c]
    return [[f"[y,x]^{n}", f"[y^{n},x] " + _prod(rest)]]


def _pull_in_right(p, c):
    n = p["n"]
    rest = [(lnc("y", *["x"] * k), -math.comb(n, k)) for k in range(2, n + 1) if k + 1 <= c]
    return [[f"[y,x]^{n}", f"[y,x^{n}] " + _prod(rest)]]


def _nested_power(p, c):
    n, m = p["n"], p.get("m", 3)
    if m < 3:
        raise ValueError("nested-power needs m >= 3")
    r = min(m, 4)
    e = [gen_name(i % r, r) for i in range(m)]
    sides = []
    for j in range(m, 1, -1):
        inner = f"{lnc(*e[:j])}^{n}"
        sides.append(inner if j == m else lnc(inner, *e[j:]))
    return [sides]


def _class_two_power(p, c):
    n = p["n"]
    return [[f"[x^{n},y]", f"[x,y]^{n}", f"[x,y^{n}]"]]


CATALOGUE: dict[str, Identity] = {}


def register(ident: Identity) -> None:
    CATALOGUE[ident.name] = ident


register(Identity("swap", "xy = yx[x,y] and y^-1 x y = x[x,y]", 2, (), FREE,
                  lambda p, c: [["x y", "y x [x,y]"], ["y^-1 x y", "x [x,y]"]], "holds in every group"))
register(Identity("inverse", "[x,y]^-1 = [y,x]", 2, (), FREE,
                  lambda p, c: [["[x,y]^-1", "[y,x]"]], "holds in every group"))
register(Identity("product-left", "[xy,z] = [x,z]^y [y,z] = [x,z][x,z,y][y,z]", 3, (), FREE,
                  lambda p, c: [["[x y,z]", "y^-1 [x,z] y [y,z]", "[x,z] [x,z,y] [y,z]"]],
                  "holds in every group"))
register(Identity("product-right", "[x,yz] = [x,z][x,y]^z = [x,z][x,y][x,y,z]", 3, (), FREE,
                  lambda p, c: [["[x,y z]", "[x,z] z^-1 [x,y] z", "[x,z] [x,y] [x,y,z]"]],
                  "holds in every group"))
register(Identity("comm-power-left", "[y^n,x] = prod_k [y,x,(k-1)y]^C(n,k)", 2, ("n",), METABELIAN,
                  _comm_power_left, "needs [G2,G3] = 1: any metabelian class, free class <= 4"))
register(Identity("comm-power-right", "[y,x^n] = prod_k [y,(k)x]^C(n,k)", 2, ("n",), METABELIAN,
                  _comm_power_right, "needs [G2,G3] = 1: any metabelian class, free class <= 4"))
register(Identity("pull-in-left", "[y,x]^n = [y^n,x] prod_{k>=2} [y,x,(k-1)y]^-C(n,k)", 2, ("n",), METABELIAN,
                  _pull_in_left, "needs [G2,G3] = 1"))
register(Identity("pull-in-right", "[y,x]^n = [y,x^n] prod_{k>=2} [y,(k)x]^-C(n,k)", 2, ("n",), METABELIAN,
                  _pull_in_right, "needs [G2,G3] = 1"))
register(Identity("nested-power", "[x1,...,xm]^n = [[x1,...,x(m-1)]^n,xm] = ... = [[x1,x2]^n,x3,...,xm]",
                  3, ("n", "m"), METABELIAN, _nested_power,
                  "needs [G2,G3] = 1; entries cycle through the first min(m,4) generators"))
register(Identity("metabelian-bracket", "[[x,y][z,w],y] = [x,y,y][z,w,y] and [y,[x,y][z,w]] = [y,[x,y]][y,[z,w]]",
                  4, (), METABELIAN,
                  lambda p, c: [["[[x,y] [z,w],y]", "[x,y,y] [z,w,y]"], ["[y,[x,y] [z,w]]", "[y,[x,y]] [y,[z,w]]"]],
                  "needs [G2,G3] = 1"))
register(Identity("class2-power", "[x^n,y] = [x,y]^n = [x,y^n]", 2, ("n",), FREE,
                  _class_two_power, "class 2 only", any_sign=True))


@dataclass(frozen=True)
class IdentityReport:
    name: str
    cls: int
    variety: str
    params: dict
    equalities: tuple[tuple[str, ...], ...]
    values: tuple[tuple[NcElement, ...], ...]

    @property
    def holds(self) -> bool:
        return all(len(set(vals)) == 1 for vals in self.values)

    def __bool__(self) -> bool:
        return self.holds

    def lines(self) -> list[str]:
        out = []
        for words, vals in zip(self.equalities, self.values):
            for w, v in zip(words, vals):
                out.append(f"{w}  ->  {v}")
        return out


def verify_identity(name: str, cls: int, variety: str | None = None, strategy: str = "left", **params) -> IdentityReport:
    if name not in CATALOGUE:
        raise UnknownIdentity(name)
    ident = CATALOGUE[name]
    missing = [k for k in ident.params if k not in params and k != "m"]
    if missing:
        raise ValueError(f"identity {name} needs parameter(s) {', '.join(missing)}")
    if "n" in params and params["n"] < 1 and not ident.any_sign:
        raise ValueError("n must be positive")
    variety = variety or ident.variety
    rank = ident.rank
    if name == "nested-power":
        rank = min(params.get("m", 3), 4)
    basis = hall_basis(rank, cls, variety)
    eqs = ident.build(params, cls)
    values = tuple(tuple(collect_in(basis, w, strategy) for w in words) for words in eqs)
    return IdentityReport(name, cls, variety, dict(params), tuple(tuple(e) for e in eqs), values)


# binomial exponent fitting

FAMILIES = {
    "product-power-2": "(x y)^{n}",
    "product-power-3": "(x y z)^{n}",
    "left-entry-power": "[y^{n},x]",
    "right-entry-power": "[y,x^{n}]",
    "middle-entry-power": "[y,x^{n},y]",
    "first-entry-power-3": "[y^{n},x,x]",
    "last-entry-power-3": "[y,x,y^{n}]",
}


def _rank_of(template: str) -> int:
    return 3 if "z" in template else 2


def degree_bound(template: str, weight: int) -> int:
    """Binomial degree allowed for a basic of the given weight."""
    t = template.strip()
    if t.startswith("[") and t.endswith("]"):
        r = len(split_top(t[1:-1]))
        return max(0, weight - (r - 1))
    return weight


@dataclass(frozen=True)
class FitResult:
    template: str
    basis: HallBasis
    samples: tuple[int, ...]
    table: dict  # basic commutator text -> (a_1, ..., a_d)
    held_out: int

    def exponent(self, basic: str, n: int) -> int:
        a = self.table.get(basic, ())
        return sum(ak * math.comb(n, k) for k, ak in enumerate(a, start=1))

    def predict(self, n: int) -> tuple[int, ...]:
        return tuple(self.exponent(str(b), n) for b in self.basis)

    def lines(self) -> list[str]:
        out = []
        for b in self.basis:
            a = self.table.get(str(b), ())
            if any(a):
                terms = " + ".join(f"{ak}*C(n,{k})" for k, ak in enumerate(a, start=1) if ak)
                out.append(f"{b}: {terms}")
        return out


def _solve_binomial(ns: Sequence[int], vals: Sequence[int]) -> list[Fraction]:
    d = len(ns)
    A = [[Fraction(math.comb(n, k)) for k in range(1, d + 1)] + [Fraction(v)] for n, v in zip(ns, vals)]
    for j in range(d):
        piv = next(i for i in range(j, d) if A[i][j])
        A[j], A[piv] = A[piv], A[j]
        p = A[j][j]
        A[j] = [x / p for x in A[j]]
        for i in range(d):
            if i != j and A[i][j]:
                f = A[i][j]
                A[i] = [x - f * y for x, y in zip(A[i], A[j])]
    return [A[i][d] for i in range(d)]


def binomial_fit(family: str, cls: int, samples: Sequence[int] | None = None,
                 variety: str = FREE, strategy: str = "left") -> FitResult:
    """Fit exponents of the collected ``template(n)`` as sum a_k C(n,k)."""
    template = FAMILIES.get(family, family)
    if "{n}" not in template:
        raise ValueError(f"unknown family {family!r}")
    basis = hall_basis(_rank_of(template), cls, variety)
    dmax = max(degree_bound(template, b.weight) for b in basis)
    if samples is None:
        samples = range(1, dmax + 3)
    samples = tuple(samples)
    if len(set(samples)) != len(samples) or any(n < 1 for n in samples):
        raise ValueError("samples must be distinct positive integers")
    if len(samples) <= dmax:
        raise ValueError(f"need more than {dmax} samples")
    data = {n: collect_in(basis, template.format(n=n), strategy).exps for n in samples}
    table = {}
    for i, b in enumerate(basis):
        d = degree_bound(template, b.weight)
        vals = [data[n][i] for n in samples]
        fit_ns = samples[:d]
        coeffs = _solve_binomial(fit_ns, vals[:d]) if d else []
        if any(c.denominator != 1 for c in coeffs):
            raise FitError(f"non-integral fit for {b}")
        a = tuple(int(c) for c in coeffs)
        for n, v in zip(samples, vals):
            if sum(ak * math.comb(n, k) for k, ak in enumerate(a, start=1)) != v:
                raise FitError(f"exponent of {b} at n={n} is not a binomial polynomial of degree {d}")
        table[str(b)] = a
    return FitResult(template, basis, samples, table, len(samples) - dmax)


# divisibility of pulled-out exponents

DIVISIBILITY = ("left-power", "right-power", "metabelian-pullout")


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class DivisibilityReport:
    p: int
    cls: int
    which: str
    word: str
    value: NcElement
    offenders: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return not self.offenders

    def __bool__(self) -> bool:
        return self.holds


def divisibility_word(p: int, cls: int, which: str) -> str:
    if which in ("left-power", "metabelian-pullout"):
        word = f"[y,x]^-{p} [y^{p},x]"
        tail = lnc("y", "x", *["y"] * (p - 1))
    elif which == "right-power":
        word = f"[y,x]^-{p} [y,x^{p}]"
        tail = lnc("y", *["x"] * p)
    else:
        raise ValueError(f"unknown check {which!r}; expected one of {', '.join(DIVISIBILITY)}")
    if p + 1 <= cls:
        word += f" {tail}^-1"
    return word


def divisibility_check(p: int, cls: int, which: str = "left-power", strategy: str = "left") -> DivisibilityReport:
    """Check ``[y,x]^-p [y^p,x] T^-1`` has only p-divisible exponents.

    ``T`` is ``[y,x,(p-1)y]`` (or ``[y,(p)x]`` for the right-power form) and
    is removed only when its weight p+1 is within the class.  The free
    forms are exact modulo weight p+2, so the class may not exceed p+1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if which not in DIVISIBILITY:
        raise ValueError(f"unknown check {which!r}; expected one of {', '.join(DIVISIBILITY)}")
    if which != "metabelian-pullout" and cls > p + 1:
        raise ValueError(f"class {cls} exceeds p+1 = {p + 1}")
    variety = METABELIAN if which == "metabelian-pullout" else FREE
    basis = hall_basis(2, cls, variety)
    word = divisibility_word(p, cls, which)
    v = collect_in(basis, word, strategy)
    bad = []
    for b, e in zip(basis, v.exps):
        if (b.weight <= 2 and e) or e % p:
            bad.append(f"{b}^{e}")
    return DivisibilityReport(p, cls, which, word, v, tuple(bad))
