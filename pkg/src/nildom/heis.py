"""The Heisenberg group over Z[1/p] and dominion certificates in it.

Elements are triples with ``(a,b,c)(x,y,z) = (a+x, b+y, c+z+bx)``, which is
the upper unitriangular matrix group via
``(x,y,z) <-> [[1,y,z],[0,1,x],[0,0,1]]``.

For H = Z x Z x Z and a class bound c, the elements
``x = (p^-N, 0, 0)`` and ``y = (0, -p^-N, 0)`` with
``N = (c-2) ord_p(c!) + i`` have ``x^(p^N)`` and ``y^(p^N)`` in H, and in a
nilpotent group of class at most c that forces ``[x,y]^(p^(2N-i))`` into the
dominion of H.  :func:`certificate` replays that arithmetic exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class PrimeMismatch(ValueError):
    pass


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class PadicRational:
    """``numerator / p^p_exponent`` kept with p not dividing the numerator (or exponent 0)."""

    numerator: int
    p_exponent: int
    p: int

    def __post_init__(self):
        if self.p_exponent < 0:
            raise ValueError("p_exponent must be nonnegative")
        n, e = self.numerator, self.p_exponent
        while e and n % self.p == 0:
            n //= self.p
            e -= 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "p_exponent", e)

    @classmethod
    def of(cls, value, p: int) -> "PadicRational":
        if isinstance(value, PadicRational):
            if value.p != p:
                raise PrimeMismatch(f"{value.p} != {p}")
            return value
        q = Fraction(value)
        d, e = q.denominator, 0
        while d % p == 0:
            d //= p
            e += 1
        if d != 1:
            raise ValueError(f"{value} is not in Z[1/{p}]")
        return cls(q.numerator, e, p)

    def _coerce(self, other) -> "PadicRational":
        if isinstance(other, PadicRational):
            if other.p != self.p:
                raise PrimeMismatch(f"{self.p} != {other.p}")
            return other
        return PadicRational.of(other, self.p)

    def __add__(self, other):
        o = self._coerce(other)
        e = max(self.p_exponent, o.p_exponent)
        n = self.numerator * self.p ** (e - self.p_exponent) + o.numerator * self.p ** (e - o.p_exponent)
        return PadicRational(n, e, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PadicRational(-self.numerator, self.p_exponent, self.p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return PadicRational(self.numerator * o.numerator, self.p_exponent + o.p_exponent, self.p)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, PadicRational):
            return (self.p, self.numerator, self.p_exponent) == (other.p, other.numerator, other.p_exponent)
        try:
            return self == PadicRational.of(other, self.p)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.p ** self.p_exponent)

    def is_integer(self) -> bool:
        return self.p_exponent == 0

    def __str__(self):
        if self.p_exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.p ** self.p_exponent}"


@dataclass(frozen=True)
class HeisElement:
    a: PadicRational
    b: PadicRational
    c: PadicRational

    @classmethod
    def of(cls, a, b, c, p: int) -> "HeisElement":
        return cls(PadicRational.of(a, p), PadicRational.of(b, p), PadicRational.of(c, p))

    @property
    def p(self) -> int:
        return self.a.p

    def __mul__(self, other: "HeisElement") -> "HeisElement":
        return heis_mul(self, other)

    def __pow__(self, n: int) -> "HeisElement":
        return heis_pow(self, n)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"

    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        z, o = Fraction(0), Fraction(1)
        return ((o, self.b.to_fraction(), self.c.to_fraction()), (z, o, self.a.to_fraction()), (z, z, o))


def identity(p: int) -> HeisElement:
    return HeisElement.of(0, 0, 0, p)


def heis_mul(g: HeisElement, h: HeisElement) -> HeisElement:
    if g.p != h.p:
        raise PrimeMismatch(f"{g.p} != {h.p}")
    return HeisElement(g.a + h.a, g.b + h.b, g.c + h.c + g.b * h.a)


def heis_inv(g: HeisElement) -> HeisElement:
    return HeisElement(-g.a, -g.b, g.a * g.b - g.c)


def heis_comm(g: HeisElement, h: HeisElement) -> HeisElement:
    return heis_mul(heis_mul(heis_inv(g), heis_inv(h)), heis_mul(g, h))


def heis_pow(g: HeisElement, n: int) -> HeisElement:
    if n < 0:
        g, n = heis_inv(g), -n
    r = identity(g.p)
    while n:
        if n & 1:
            r = heis_mul(r, g)
        g = heis_mul(g, g)
        n >>= 1
    return r


def from_matrix(M, p: int) -> HeisElement:
    if not (M[0][0] == M[1][1] == M[2][2] == 1 and M[1][0] == M[2][0] == M[2][1] == 0):
        raise ValueError("not upper unitriangular")
    return HeisElement.of(M[1][2], M[0][1], M[0][2], p)


def matmul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def legendre(p: int, n: int) -> int:
    """Exponent of p in n!."""
    e, q = 0, p
    while q <= n:
        e += n // q
        q *= p
    return e


def ord_p(p: int, m: int) -> int:
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def in_H(g: HeisElement) -> bool:
    """Membership in Z x Z x Z."""
    return g.a.is_integer() and g.b.is_integer() and g.c.is_integer()


def in_claimed_dominion(g: HeisElement) -> bool:
    """Membership in Z x Z x Z[1/p]."""
    return g.a.is_integer() and g.b.is_integer()


@dataclass(frozen=True)
class Certificate:
    p: int
    i: int
    cls: int
    ord_legendre: int
    ord_factorial: int
    N: int
    x: HeisElement
    y: HeisElement
    checks: tuple[tuple[str, bool], ...]

    @property
    def element(self) -> HeisElement:
        return HeisElement.of(0, 0, Fraction(1, self.p ** self.i), self.p)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def lines(self) -> list[str]:
        p = self.p
        out = [
            f"p: {p}",
            f"i: {self.i}",
            f"class: {self.cls}",
            f"ord_p(c!): {self.ord_legendre}",
            f"N: {self.N}",
            f"x: {self.x}",
            f"y: {self.y}",
            "H: Z x Z x Z",
            f"claim: {self.element} lies in the dominion of H in nilpotent groups of class <= {self.cls}",
        ]
        out += [f"check {name}: {'ok' if ok else 'FAILED'}" for name, ok in self.checks]
        out.append("PASS" if self.passed else "FAIL")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def certificate(p: int, i: int, c: int) -> Certificate:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if i < 1:
        raise ValueError("i must be positive")
    if c < 2:
        raise ValueError("class must be at least 2")
    leg = legendre(p, c)
    fac = ord_p(p, math.factorial(c))
    N = (c - 2) * leg + i
    x = HeisElement.of(Fraction(1, p ** N), 0, 0, p)
    y = HeisElement.of(0, Fraction(-1, p ** N), 0, p)
    xn, yn = heis_pow(x, p ** N), heis_pow(y, p ** N)
    k = heis_comm(x, y)
    target = HeisElement.of(0, 0, Fraction(1, p ** i), p)
    checks = (
        ("ord_p(c!) by Legendre equals factorization", leg == fac),
        (f"x^(p^N) = {xn} in H", in_H(xn)),
        (f"y^(p^N) = {yn} in H", in_H(yn)),
        (f"[x,y] = {k}", k == HeisElement.of(0, 0, Fraction(1, p ** (2 * N)), p)),
        (f"[x,y]^(p^(2N-i)) = {target}", heis_pow(k, p ** (2 * N - i)) == target),
        ("x not in H", not in_H(x)),
        ("target in Z x Z x Z[1/p]", in_claimed_dominion(target)),
    )
    return Certificate(p, i, c, leg, fac, N, x, y, checks)


def certified_elements(p: int, i: int, c: int) -> frozenset[HeisElement]:
    """Central elements (0,0,p^-j), j <= i, certified for class c."""
    out = set()
    for j in range(1, i + 1):
        cert = certificate(p, j, c)
        if cert.passed:
            out.add(cert.element)
    return frozenset(out)
