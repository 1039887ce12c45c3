"""Proper terms behind an opaque wrapper, with structure-only constructors.

``Expr`` values always satisfy ``level(0, ...)`` on their underlying
representation, so dangling indices cannot be expressed at this layer.
Building terms (CON/VAR/APP/ERR) never looks inside arguments;
*inspecting* them (equality, case split, export to the raw tree) raises
``ExoticUse`` when the term carries an opaque binder argument. That
asymmetry is what makes non-syntactic closures detectable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .terms import (
    Abs,
    App,
    Bnd,
    Con,
    DbTerm,
    Err,
    ProbeId,
    Var,
    instantiate,
    level,
    probe_ids,
    size,
)


class NotProper(Exception):
    """A term with dangling indices was lifted to the proper layer."""


class ExoticUse(BaseException):
    """An opaque binder argument was inspected.

    ``pids`` holds the probe ids found in the inspected term, so an
    enclosing binding operation can tell its own argument from an outer
    one. Derives from BaseException so a broad ``except Exception``
    inside a closure does not silently swallow the opacity signal.
    """

    def __init__(self, pids: frozenset[ProbeId], op: str):
        super().__init__(f"opaque binder argument inspected via {op}")
        self.pids = frozenset(pids)


class Expr:
    """A term with no dangling indices.

    Not constructed directly: use CON/VAR/APP/ERR, ``from_db``, or the
    binding operator. Immutable; safe to share between threads.
    """

    __slots__ = ("_t", "_pids")

    def __init__(self, t: DbTerm):
        assert level(0, t), "internal: dangling index in proper-term wrapper"
        self._t = t
        self._pids = probe_ids(t)

    def __eq__(self, other: object):
        if not isinstance(other, Expr):
            return NotImplemented
        return expr_equal(self, other)

    def __hash__(self) -> int:
        return hash(_transparent(self, "hash"))

    def __repr__(self) -> str:
        from .terms import to_text

        if self._pids:
            return "<Expr (opaque binder argument)>"
        return f"Expr[{to_text(self._t)}]"

    def __str__(self) -> str:
        return pretty(self)


Binder1 = Callable[[Expr], Expr]


def _transparent(e: Expr, op: str) -> DbTerm:
    """The representation of ``e``, provided it carries no probes."""
    if e._pids:
        raise ExoticUse(e._pids, op)
    return e._t


def _valid_con_name(name: str) -> bool:
    return (
        isinstance(name, str)
        and bool(name)
        and not any(ch.isspace() for ch in name)
        and "(" not in name
        and ")" not in name
    )


def CON(name: str) -> Expr:
    """Constant."""
    if not _valid_con_name(name):
        raise ValueError(f"bad constant name {name!r}")
    return Expr(Con(name))


def VAR(n: int) -> Expr:
    """Free variable number ``n``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"variable number must be a natural, got {n!r}")
    return Expr(Var(n))


def APP(s: Expr, t: Expr) -> Expr:
    """Application/pairing node."""
    if not isinstance(s, Expr) or not isinstance(t, Expr):
        raise TypeError("APP expects two Expr arguments")
    return Expr(App(s._t, t._t))


def ERR() -> Expr:
    """The error placeholder term."""
    return Expr(Err())


def to_db(e: Expr) -> DbTerm:
    """Export the underlying de Bruijn tree. Injective; always proper."""
    if not isinstance(e, Expr):
        raise TypeError(f"to_db expects an Expr, got {type(e).__name__}")
    return _transparent(e, "to_db")


def from_db(t: DbTerm) -> Expr:
    """Lift a proper, probe-free de Bruijn term; inverse of ``to_db``."""
    pids = probe_ids(t)
    if pids:
        raise ExoticUse(pids, "from_db")
    if not level(0, t):
        raise NotProper("term has dangling indices")
    return Expr(t)


def expr_equal(e: Expr, f: Expr) -> bool:
    """Structural equality on the underlying proper representations."""
    # inspection of a pair: report probes from both sides at once, so an
    # enclosing binder can recognize its own argument in the exception
    if e._pids or f._pids:
        raise ExoticUse(e._pids | f._pids, "expr_equal")
    return e._t == f._t


def expr_size(e: Expr) -> int:
    return size(_transparent(e, "expr_size"))


@dataclass(frozen=True)
class VCon:
    name: str


@dataclass(frozen=True)
class VVar:
    index: int


@dataclass(frozen=True)
class VApp:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class VErr:
    pass


@dataclass(frozen=True)
class VLam:
    """Binder view: ``binder`` re-opens the body at any argument."""

    binder: Binder1


ExprView = Union[VCon, VVar, VApp, VErr, VLam]


def cases(e: Expr) -> ExprView:
    """Case-distinction view mirroring the head constructor.

    For a binder the view carries a function that instantiates the body;
    rebuilding through the binding operator yields the original term.
    """
    t = _transparent(e, "cases")
    match t:
        case Con(name):
            return VCon(name)
        case Var(n):
            return VVar(n)
        case App(l, r):
            return VApp(Expr(l), Expr(r))
        case Err():
            return VErr()
        case Abs(b):

            def open_body(x: Expr) -> Expr:
                return Expr(instantiate(b, 0, x._t))

            return VLam(open_body)
    raise AssertionError(f"unreachable head in proper term: {t!r}")


def pretty(e: Expr) -> str:
    """Display form: ``CON c``, ``VAR n``, ``s $$ t`` (left-associative),
    ``ERR``, ``LAM x1. body`` with display names chosen by binding depth.
    """
    t = _transparent(e, "pretty")

    def go(t: DbTerm, depth: int, prec: int) -> str:
        match t:
            case Con(name):
                return f"CON {name}"
            case Var(n):
                return f"VAR {n}"
            case Err():
                return "ERR"
            case Bnd(i):
                return f"x{depth - i}"
            case App(l, r):
                s = f"{go(l, depth, 1)} $$ {go(r, depth, 2)}"
                return f"({s})" if prec > 1 else s
            case Abs(b):
                s = f"LAM x{depth + 1}. {go(b, depth + 1, 0)}"
                return f"({s})" if prec > 0 else s
        raise AssertionError(f"unreachable node: {t!r}")

    return go(t, 0, 0)
