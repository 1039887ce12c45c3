"""De Bruijn term core: the first-order trees every other layer builds on.

Terms are immutable. ``Bnd(i)`` refers to the variable bound by the
(i+1)-th enclosing ``Abs`` node; an index with too few enclosing ``Abs``
nodes is *dangling*. ``Probe`` is an internal placeholder standing for a
binder argument while a host closure is being converted to syntax; no
term observable through a public operation ever contains one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Union


class PreconditionViolated(Exception):
    """An operation was applied outside its stated domain."""


class ParseError(Exception):
    """Malformed textual input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class Con:
    """Object-language constant."""

    name: str


@dataclass(frozen=True)
class Var:
    """Free variable, numbered."""

    index: int


@dataclass(frozen=True)
class App:
    left: "DbTerm"
    right: "DbTerm"


@dataclass(frozen=True)
class Err:
    """Placeholder produced when binding a non-syntactic closure."""


@dataclass(frozen=True)
class Bnd:
    """Bound variable: back reference into enclosing Abs nodes."""

    index: int


@dataclass(frozen=True)
class Abs:
    """Nameless binder."""

    body: "DbTerm"


@dataclass(frozen=True)
class Probe:
    """Internal: opaque stand-in for a binder argument.

    Probes count as placeholders for proper terms, so they are neutral
    for `level`.
    """

    pid: int


DbTerm = Union[Con, Var, App, Err, Bnd, Abs, Probe]

ProbeId = int


def level(i: int, t: DbTerm) -> bool:
    """True iff wrapping ``t`` in ``i`` Abs nodes leaves no dangling index.

    Monotone in ``i``: level(i, t) implies level(i + 1, t).
    """
    match t:
        case Bnd(j):
            return j < i
        case Abs(b):
            return level(i + 1, b)
        case App(l, r):
            return level(i, l) and level(i, r)
        case _:
            return True


def proper(t: DbTerm) -> bool:
    """No dangling indices at all."""
    return level(0, t)


def size(t: DbTerm) -> int:
    """Node count."""
    match t:
        case App(l, r):
            return 1 + size(l) + size(r)
        case Abs(b):
            return 1 + size(b)
        case _:
            return 1


def instantiate(t: DbTerm, j: int, u: DbTerm) -> DbTerm:
    """Replace each occurrence of Bnd(j+k) at Abs-depth k in ``t`` by ``u``.

    ``u`` must be proper, so no index shifting is ever required.
    """
    if not level(j + 1, t):
        raise PreconditionViolated(f"instantiate: term is not at level {j + 1}")
    if not proper(u):
        raise PreconditionViolated("instantiate: replacement has dangling indices")

    def go(t: DbTerm, j: int) -> DbTerm:
        match t:
            case Bnd(k):
                return u if k == j else t
            case Abs(b):
                return Abs(go(b, j + 1))
            case App(l, r):
                return App(go(l, j), go(r, j))
            case _:
                return t

    return go(t, j)


_probe_counter = itertools.count()


def fresh_probe() -> ProbeId:
    """A probe id never returned before in this process.

    next() on itertools.count is atomic under CPython, so concurrent
    callers get disjoint ids.
    """
    return next(_probe_counter)


def bind_probe(t: DbTerm, p: ProbeId, i: int) -> DbTerm:
    """Turn Probe(p) at Abs-depth k into Bnd(i+k); leave everything else."""
    match t:
        case Probe(q) if q == p:
            return Bnd(i)
        case Abs(b):
            return Abs(bind_probe(b, p, i + 1))
        case App(l, r):
            return App(bind_probe(l, p, i), bind_probe(r, p, i))
        case _:
            return t


def replace_probe(t: DbTerm, p: ProbeId, u: DbTerm) -> DbTerm:
    """Plain node substitution of ``u`` for Probe(p); no depth accounting."""
    match t:
        case Probe(q) if q == p:
            return u
        case Abs(b):
            return Abs(replace_probe(b, p, u))
        case App(l, r):
            return App(replace_probe(l, p, u), replace_probe(r, p, u))
        case _:
            return t


def probe_ids(t: DbTerm) -> frozenset[ProbeId]:
    """All probe ids occurring in ``t``."""
    found: set[ProbeId] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case Probe(q):
                found.add(q)
            case Abs(b):
                stack.append(b)
            case App(l, r):
                stack.append(l)
                stack.append(r)
            case _:
                pass
    return frozenset(found)


def contains_probe(t: DbTerm, p: ProbeId) -> bool:
    return p in probe_ids(t)


def contains_any_probe(t: DbTerm) -> bool:
    return bool(probe_ids(t))


# ---------------------------------------------------------------------------
# Canonical textual form: (CON name) | (VAR n) | (APP t u) | ERR | (BND i)
# | (ABS t).  Probes have no textual form.

def to_text(t: DbTerm) -> str:
    match t:
        case Con(name):
            return f"(CON {name})"
        case Var(n):
            return f"(VAR {n})"
        case App(l, r):
            return f"(APP {to_text(l)} {to_text(r)})"
        case Err():
            return "ERR"
        case Bnd(i):
            return f"(BND {i})"
        case Abs(b):
            return f"(ABS {to_text(b)})"
        case Probe(_):
            raise ValueError("probe nodes have no textual form")
    raise TypeError(f"not a term: {t!r}")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "()":
                i += 1
            tokens.append((text[start:i], start))
    return tokens


def _parse_nat(tok: str, pos: int) -> int:
    if not tok.isdigit():
        raise ParseError(f"expected a natural number, got {tok!r}", pos)
    return int(tok)


def _parse_con_name(tok: str, pos: int) -> str:
    if not tok or tok in "()" or any(ch.isspace() for ch in tok):
        raise ParseError(f"bad constant name {tok!r}", pos)
    return tok


def _parse_sexpr(tokens: list[tuple[str, int]], i: int,
                 make_hole: Optional[Callable[[int], object]] = None):
    """Parse one term starting at token ``i``; returns (node, next index).

    ``make_hole`` enables the (HOLE k) extension used for open terms.
    """
    if i >= len(tokens):
        raise ParseError("unexpected end of input", len(tokens))
    tok, pos = tokens[i]
    if tok == "ERR":
        return Err(), i + 1
    if tok != "(":
        raise ParseError(f"expected '(' or ERR, got {tok!r}", pos)
    if i + 1 >= len(tokens):
        raise ParseError("unexpected end of input after '('", pos)
    head, head_pos = tokens[i + 1]
    i += 2

    def expect_close(i: int):
        if i >= len(tokens) or tokens[i][0] != ")":
            raise ParseError("expected ')'",
                             tokens[i][1] if i < len(tokens) else len(tokens))
        return i + 1

    def next_atom(i: int) -> tuple[str, int, int]:
        if i >= len(tokens):
            raise ParseError("unexpected end of input", len(tokens))
        t, p = tokens[i]
        if t in "()":
            raise ParseError(f"expected an atom, got {t!r}", p)
        return t, p, i + 1

    if head == "CON":
        name, p, i = next_atom(i)
        return Con(_parse_con_name(name, p)), expect_close(i)
    if head == "VAR":
        tok, p, i = next_atom(i)
        return Var(_parse_nat(tok, p)), expect_close(i)
    if head == "BND":
        tok, p, i = next_atom(i)
        return Bnd(_parse_nat(tok, p)), expect_close(i)
    if head == "APP":
        l, i = _parse_sexpr(tokens, i, make_hole)
        r, i = _parse_sexpr(tokens, i, make_hole)
        return App(l, r), expect_close(i)
    if head == "ABS":
        b, i = _parse_sexpr(tokens, i, make_hole)
        return Abs(b), expect_close(i)
    if head == "HOLE" and make_hole is not None:
        tok, p, i = next_atom(i)
        return make_hole(_parse_nat(tok, p)), expect_close(i)
    raise ParseError(f"unknown term head {head!r}", head_pos)


def from_text(text: str) -> DbTerm:
    """Parse the canonical textual form."""
    tokens = _tokenize(text)
    term, i = _parse_sexpr(tokens, 0)
    if i != len(tokens):
        raise ParseError("trailing input after term", tokens[i][1])
    return term
