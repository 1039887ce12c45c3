"""First-order open terms: bodies with numbered holes.

An ``OpenTerm`` is the brute-force counterpart of a host closure: its
holes mark where the closure would use its arguments. ``reflect1`` and
``reflect2`` turn an open term into the corresponding (always
syntactic) closure; ``reify1`` inverts that by probing. Everything a
binder law quantifies over can therefore be enumerated here and checked
against the closure-level implementation.

Also home to the generators used by the property sweeps and to the
library of deliberately exotic closures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from . import binder
from .binder import Binder1, Binder2, ground_samples
from .expr import (
    APP,
    CON,
    ERR,
    VAR,
    ExoticUse,
    Expr,
    VApp,
    VCon,
    cases,
    expr_equal,
    expr_size,
    from_db,
    to_db,
)
from .terms import (
    Abs,
    App,
    Bnd,
    Con,
    DbTerm,
    Err,
    Probe,
    ProbeId,
    Var,
    _parse_sexpr,
    _tokenize,
    fresh_probe,
    probe_ids,
    to_text as _db_to_text,
    ParseError,
)


class ArityMismatch(Exception):
    """Open term arity does not fit the requested operation."""


class ExoticFunction(Exception):
    """A non-syntactic closure has no open-term representation."""


@dataclass(frozen=True)
class Hole:
    """Placeholder for argument ``index`` of the reflected closure."""

    index: int


Body = Union[DbTerm, Hole]


def _body_level(i: int, t: Body) -> bool:
    # holes stand for proper terms, so they are level-neutral
    match t:
        case Bnd(j):
            return j < i
        case Abs(b):
            return _body_level(i + 1, b)
        case App(l, r):
            return _body_level(i, l) and _body_level(i, r)
        case _:
            return True


def _hole_indices(t: Body) -> set[int]:
    match t:
        case Hole(k):
            return {k}
        case Abs(b):
            return _hole_indices(b)
        case App(l, r):
            return _hole_indices(l) | _hole_indices(r)
        case _:
            return set()


def _check_body(t: Body) -> bool:
    match t:
        case Hole(k):
            return isinstance(k, int) and k >= 0
        case Con(_) | Var(_) | Err() | Bnd(_):
            return True
        case Abs(b):
            return _check_body(b)
        case App(l, r):
            return _check_body(l) and _check_body(r)
        case _:
            return False


@dataclass(frozen=True)
class OpenTerm:
    """A body over term constructors and holes, all hole indices < arity,
    with no dangling indices (holes counting as closed subterms).
    """

    arity: int
    body: Body

    def __post_init__(self):
        if not _check_body(self.body):
            raise ValueError(f"not an open-term body: {self.body!r}")
        bad = [k for k in _hole_indices(self.body) if k >= self.arity]
        if bad:
            raise ValueError(f"hole index {max(bad)} outside arity {self.arity}")
        if not _body_level(0, self.body):
            raise ValueError("open-term body has dangling indices")


def fill(body: Body, args: tuple[DbTerm, ...]) -> DbTerm:
    """Substitute ``args[k]`` for each Hole(k); plain node substitution."""
    match body:
        case Hole(k):
            return args[k]
        case Abs(b):
            return Abs(fill(b, args))
        case App(l, r):
            return App(fill(l, args), fill(r, args))
        case _:
            return body


def reflect1(ot: OpenTerm) -> Binder1:
    """The closure substituting its argument for Hole(0)."""
    if ot.arity != 1:
        raise ArityMismatch(f"reflect1 needs arity 1, got {ot.arity}")
    body = ot.body

    def fn(x: Expr) -> Expr:
        return Expr(fill(body, (x._t,)))

    return fn


def reflect2(ot: OpenTerm) -> Binder2:
    """The closure substituting its two arguments for Hole(0)/Hole(1)."""
    if ot.arity != 2:
        raise ArityMismatch(f"reflect2 needs arity 2, got {ot.arity}")
    body = ot.body

    def fn(x: Expr, y: Expr) -> Expr:
        return Expr(fill(body, (x._t, y._t)))

    return fn


def _holes_for_probe(t: DbTerm, p: ProbeId, k: int) -> Body:
    match t:
        case Probe(q) if q == p:
            return Hole(k)
        case Abs(b):
            return Abs(_holes_for_probe(b, p, k))
        case App(l, r):
            return App(_holes_for_probe(l, p, k), _holes_for_probe(r, p, k))
        case _:
            return t


def reify1(fn: Binder1) -> OpenTerm:
    """Recover the open term a syntactic closure denotes.

    Inverse of ``reflect1`` up to structural equality.
    """
    p = fresh_probe()
    try:
        body = binder._probed(fn, (p,))
    except ExoticUse as exc:
        if p in exc.pids:
            raise ExoticFunction("closure inspects its argument") from None
        raise
    stripped = _holes_for_probe(body, p, 0)
    leftover = probe_ids(stripped)
    if leftover:
        # the body embeds an enclosing binder's argument; spelling it out
        # as a first-order term would inspect it
        raise ExoticUse(leftover, "reify1")
    return OpenTerm(1, stripped)


def _fix_hole(body: Body, k: int, value: DbTerm) -> Body:
    """Fill Hole(k) with ``value`` and renumber the remaining hole to 0."""
    match body:
        case Hole(j):
            return value if j == k else Hole(0)
        case Abs(b):
            return Abs(_fix_hole(b, k, value))
        case App(l, r):
            return App(_fix_hole(l, k, value), _fix_hole(r, k, value))
        case _:
            return body


def abstr_oracle2_componentwise(ot: OpenTerm) -> bool:
    """Componentwise criterion computed on the first-order representation:
    for each hole fixed to every ground instantiation, the remaining slice
    must be a well-formed one-hole open term.
    """
    if ot.arity != 2:
        raise ArityMismatch(f"expected arity 2, got {ot.arity}")
    grounds = [to_db(g) for g in ground_samples()]
    for k in (0, 1):
        for g in grounds:
            sliced = _fix_hole(ot.body, k, g)
            try:
                OpenTerm(1, sliced)
            except ValueError:
                return False
    return True


# ---------------------------------------------------------------------------
# Generators. Fixed enumeration alphabet: two constants, Var/Bnd indices 0..1.

_CONS = (Con("c1"), Con("c2"))
_MAX_INDEX = 2


def _leaves(arity: int, binders: int) -> list[Body]:
    out: list[Body] = [Hole(k) for k in range(arity)]
    out.extend(_CONS)
    out.extend(Var(i) for i in range(_MAX_INDEX))
    out.append(Err())
    out.extend(Bnd(j) for j in range(min(binders, _MAX_INDEX)))
    return out


def enumerate_open_terms(arity: int, max_depth: int) -> Iterator[OpenTerm]:
    """All open-term bodies of height <= max_depth, duplicate-free."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    memo: dict[tuple[int, int], list[Body]] = {}

    def bodies(depth: int, binders: int) -> list[Body]:
        key = (depth, binders)
        if key in memo:
            return memo[key]
        out = list(_leaves(arity, binders))
        if depth >= 2:
            sub = bodies(depth - 1, binders)
            out.extend(App(l, r) for l in sub for r in sub)
            out.extend(Abs(b) for b in bodies(depth - 1, binders + 1))
        memo[key] = out
        return out

    for b in bodies(max_depth, 0):
        yield OpenTerm(arity, b)


def gen_open_term(arity: int, max_depth: int, seed: int) -> OpenTerm:
    """One pseudo-random open term; deterministic for a fixed seed."""
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    rng = random.Random(seed)

    def gen(depth: int, binders: int) -> Body:
        if depth <= 1 or rng.random() < 0.3:
            return rng.choice(_leaves(arity, binders))
        if rng.random() < 0.5:
            return App(gen(depth - 1, binders), gen(depth - 1, binders))
        return Abs(gen(depth - 1, binders + 1))

    return OpenTerm(arity, gen(max_depth, 0))


def enumerate_db_terms(max_size: int) -> Iterator[DbTerm]:
    """All raw terms of node count <= max_size over the enumeration
    alphabet, dangling indices included.
    """
    by_size: dict[int, list[DbTerm]] = {
        1: list(_CONS)
        + [Var(i) for i in range(_MAX_INDEX)]
        + [Err()]
        + [Bnd(j) for j in range(_MAX_INDEX)]
    }
    for s in range(2, max_size + 1):
        out: list[DbTerm] = [Abs(b) for b in by_size[s - 1]]
        for a in range(1, s - 1):
            out.extend(App(l, r) for l in by_size[a] for r in by_size[s - 1 - a])
        by_size[s] = out
    for s in range(1, max_size + 1):
        yield from by_size[s]


# ---------------------------------------------------------------------------
# Exotic closures: all of these inspect their arguments, so none of them
# denotes an open term, and every one must fail the binder checks.

def _head_is_con(x: Expr) -> bool:
    return isinstance(cases(x), VCon)


def exotic_library(arity: int | None = None) -> list[tuple[str, Callable]]:
    """Named closures that inspect their arguments. ``arity`` filters to
    one-argument (1) or two-argument (2) entries.
    """
    unary: list[tuple[str, Binder1]] = [
        ("branch-on-con-head", lambda x: APP(x, x) if _head_is_con(x) else x),
        ("equality-with-err", lambda x: CON("c1") if expr_equal(x, ERR()) else x),
        (
            "branch-on-app-head",
            lambda x: VAR(0) if isinstance(cases(x), VApp) else ERR(),
        ),
        ("export-to-db", lambda x: from_db(to_db(x))),
        ("self-equality", lambda x: CON("c1") if expr_equal(x, x) else CON("c2")),
        ("size-inspection", lambda x: VAR(expr_size(x))),
    ]
    binary: list[tuple[str, Binder2]] = [
        ("pair-equality", lambda x, y: x if expr_equal(x, y) else y),
        (
            "branch-on-first-head",
            lambda x, y: APP(x, y) if _head_is_con(x) else y,
        ),
        ("pair-size", lambda x, y: VAR(expr_size(x) + expr_size(y))),
    ]
    if arity == 1:
        return list(unary)
    if arity == 2:
        return list(binary)
    if arity is None:
        return list(unary) + list(binary)
    raise ValueError(f"no closures of arity {arity}")


# ---------------------------------------------------------------------------
# Textual form: the term grammar extended with (HOLE k).

def to_text(ot: OpenTerm) -> str:
    def go(t: Body) -> str:
        match t:
            case Hole(k):
                return f"(HOLE {k})"
            case App(l, r):
                return f"(APP {go(l)} {go(r)})"
            case Abs(b):
                return f"(ABS {go(b)})"
            case _:
                return _db_to_text(t)

    return go(ot.body)


def from_text(text: str, arity: int = 1) -> OpenTerm:
    tokens = _tokenize(text)
    body, i = _parse_sexpr(tokens, 0, make_hole=Hole)
    if i != len(tokens):
        raise ParseError("trailing input after term", tokens[i][1])
    try:
        return OpenTerm(arity, body)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
