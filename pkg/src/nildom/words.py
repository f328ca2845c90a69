"""Group words: parsing and evaluation.

Grammar (whitespace or ``*`` separates terms)::

    word := term*
    term := atom ('^' int)?
    atom := name | '1' | '[' word (',' word)+ ']' | '(' word ')'

Names are ``x1 .. xn``; for rank <= 4 the aliases ``x, y, z, w`` stand for
``x1 .. x4``.  A bracket with more than two entries is left-normed:
``[a,b,c] = [[a,b],c]``.  Commutators follow ``[a,b] = a^-1 b^-1 a b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Generic, TypeVar, Union

T = TypeVar("T")

ALIASES = ("x", "y", "z", "w")


class WordSyntaxError(ValueError):
    pass


class UnknownGenerator(ValueError):
    pass


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Comm:
    entries: tuple["Node", ...]


@dataclass(frozen=True)
class Seq:
    terms: tuple["Node", ...]


Node = Union[Gen, Pow, Comm, Seq]

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]\w*)|(?P<int>-?\d+)|(?P<sym>[\[\](),^*]))")


def gen_name(i: int, rank: int) -> str:
    """Display name of generator ``i`` (0-based)."""
    return ALIASES[i] if rank <= len(ALIASES) else f"x{i + 1}"


def _lookup(name: str, rank: int) -> int:
    if rank <= len(ALIASES) and name in ALIASES[:rank]:
        return ALIASES.index(name)
    m = re.fullmatch(r"x(\d+)", name)
    if m and 1 <= int(m.group(1)) <= rank:
        return int(m.group(1)) - 1
    raise UnknownGenerator(f"unknown generator {name!r} for rank {rank}")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
    return toks


class _Parser:
    def __init__(self, text: str, rank: int):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.rank = rank

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None:
            raise WordSyntaxError(f"unexpected end of {self.text!r}")
        if sym is not None and tok[1] != sym:
            raise WordSyntaxError(f"expected {sym!r}, found {tok[1]!r} in {self.text!r}")
        self.pos += 1
        return tok

    def word(self, stops) -> Node:
        terms = []
        while True:
            kind, val = self.peek()
            if kind is None or val in stops:
                break
            if val == "*":
                self.take()
                continue
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Seq(tuple(terms))

    def term(self) -> Node:
        node = self.atom()
        while self.peek()[1] == "^":
            self.take()
            if self.peek()[1] == "(":
                self.take()
                kind, val = self.take()
                self.take(")")
            else:
                kind, val = self.take()
            if kind != "int":
                raise WordSyntaxError(f"exponent must be an integer, got {val!r}")
            node = Pow(node, int(val))
        return node

    def atom(self) -> Node:
        kind, val = self.take()
        if kind == "name":
            return Gen(_lookup(val, self.rank))
        if kind == "int":
            if val != "1":
                raise WordSyntaxError(f"unexpected number {val!r} in {self.text!r}")
            return Seq(())
        if val == "(":
            node = self.word({")"})
            self.take(")")
            return node
        if val == "[":
            entries = [self.word({",", "]"})]
            while self.peek()[1] == ",":
                self.take()
                entries.append(self.word({",", "]"}))
            self.take("]")
            if len(entries) < 2:
                raise WordSyntaxError(f"commutator needs at least two entries in {self.text!r}")
            return Comm(tuple(entries))
        raise WordSyntaxError(f"unexpected {val!r} in {self.text!r}")


def parse(text: str, rank: int) -> Node:
    p = _Parser(text, rank)
    node = p.word(set())
    if p.pos != len(p.toks):
        raise WordSyntaxError(f"trailing input {p.peek()[1]!r} in {text!r}")
    return node


def split_top(text: str) -> list[str]:
    """Split a comma separated list of words, ignoring commas inside brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return [w for w in out if w]


class Evaluator(Generic[T]):
    """Evaluate a parse tree in a group given by callbacks."""

    def __init__(
        self,
        gen: Callable[[int], T],
        identity: Callable[[], T],
        mul: Callable[[T, T], T],
        inv: Callable[[T], T],
        power: Callable[[T, int], T],
    ):
        self.gen = gen
        self.identity = identity
        self.mul = mul
        self.inv = inv
        self.power = power

    def comm(self, a: T, b: T) -> T:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def __call__(self, node: Node) -> T:
        if isinstance(node, Gen):
            return self.gen(node.index)
        if isinstance(node, Pow):
            return self.power(self(node.base), node.exp)
        if isinstance(node, Comm):
            acc = self(node.entries[0])
            for e in node.entries[1:]:
                acc = self.comm(acc, self(e))
            return acc
        acc = self.identity()
        for t in node.terms:
            acc = self.mul(acc, self(t))
        return acc
