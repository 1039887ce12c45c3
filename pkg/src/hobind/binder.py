"""Binding operators over host closures: lbind, abstr, LAM, abstr_2.

A closure from terms to terms is *syntactic* when it only ever builds
with the term constructors around its argument; it then denotes a body
with a hole. We decide this at runtime by applying the closure to a
fresh opaque probe term: syntactic closures thread the probe through
untouched, while closures that inspect their argument trip ``ExoticUse``
inside the inspection operation.

``ExoticUse`` carries the probe ids that were inspected. Each binding
operation catches the exception only when its *own* probe is among
them; an exception about an enclosing binder's argument keeps
propagating, so a closure that branches on an outer variable poisons
the outer check, not the inner one. This keeps nested binders sound:
``lam x. lam y. <body branching on x>`` is rejected at ``x``, while
``lam x. lam y. <body branching on y>`` collapses the inner binder to
the error term and leaves the outer one a perfectly good constant
function.

Detection is sound for closures that stay within the public term API.
A closure that deliberately catches the opacity signal, reaches into
wrapper internals, or keeps hidden state is outside the purity contract
(the latter is what ``double_eval_check`` spot-checks).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .expr import CON, ERR, VAR, ExoticUse, Expr
from .terms import (
    Abs,
    App,
    Con,
    DbTerm,
    Err,
    Probe,
    ProbeId,
    Var,
    bind_probe,
    fresh_probe,
    instantiate,
    level,
    probe_ids,
    replace_probe,
)

Binder1 = Callable[[Expr], Expr]
Binder2 = Callable[[Expr, Expr], Expr]


class PremiseViolated(Exception):
    """A sampled slice of a two-argument body failed the binder check."""


class PurityError(Exception):
    """Double evaluation produced different bodies (impure closure)."""


# When enabled, every probed evaluation runs twice on distinct probes and
# the bodies are compared after renaming; catches closures with hidden
# state. Off by default: it doubles evaluation counts.
double_eval_check = False


def _eval_body(fn, probes: tuple[ProbeId, ...]) -> DbTerm:
    args = tuple(Expr(Probe(p)) for p in probes)
    out = fn(*args)
    if not isinstance(out, Expr):
        raise TypeError(
            f"binder argument must return Expr values, got {type(out).__name__}"
        )
    return out._t


def _probed(fn, probes: tuple[ProbeId, ...]) -> DbTerm:
    body = _eval_body(fn, probes)
    if double_eval_check:
        again = tuple(fresh_probe() for _ in probes)
        norm = body
        renorm = _eval_body(fn, again)
        for p, q in zip(probes, again):
            marker = Probe(fresh_probe())  # not forgeable by the closure
            norm = replace_probe(norm, p, marker)
            renorm = replace_probe(renorm, q, marker)
        if norm != renorm:
            raise PurityError("closure returned different bodies on re-evaluation")
    return body


def lbind(i: int, fn: Binder1) -> DbTerm:
    """Convert the closure's argument into the dangling index ``i``,
    incremented under each binder node of the body.
    """
    p = fresh_probe()
    body = _probed(fn, (p,))
    assert level(0, body), "internal: binder body left the proper layer"
    out = bind_probe(body, p, i)
    leftover = probe_ids(out)
    if leftover:
        # a raw tree must not carry an enclosing binder's argument out of
        # its session: the caller could read its structure off the nodes
        raise ExoticUse(leftover, "lbind")
    return out


def abstr(fn: Binder1) -> bool:
    """True iff ``fn`` is syntactic: it treats its argument opaquely."""
    p = fresh_probe()
    try:
        _probed(fn, (p,))
    except ExoticUse as exc:
        if p in exc.pids:
            return False
        raise
    return True


def LAM(fn: Binder1) -> Expr:
    """The binding operator.

    Syntactic closures become a binder node over their extracted body;
    anything else becomes the error term, so a binding is the error term
    exactly when its closure was not syntactic.
    """
    p = fresh_probe()
    try:
        body = _probed(fn, (p,))
    except ExoticUse as exc:
        if p in exc.pids:
            return ERR()
        raise
    return Expr(Abs(bind_probe(body, p, 0)))


def ordinary(fn: Binder1) -> bool:
    """False exactly for the bare-argument closure and for exotic ones;
    true whenever the body has a top-level constructor of its own.
    """
    p = fresh_probe()
    try:
        body = _probed(fn, (p,))
    except ExoticUse as exc:
        if p in exc.pids:
            return False
        raise
    return body != Probe(p)


def abstr_2(fn: Binder2) -> bool:
    """Two-argument analogue of ``abstr``, decided on a pair of probes."""
    p, q = fresh_probe(), fresh_probe()
    try:
        _probed(fn, (p, q))
    except ExoticUse as exc:
        if p in exc.pids or q in exc.pids:
            return False
        raise
    return True


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class ConstCon:
    name: str


@dataclass(frozen=True)
class ConstVar:
    index: int


@dataclass(frozen=True)
class AppCase:
    left: Binder1
    right: Binder1


@dataclass(frozen=True)
class LamCase:
    """Nested binder; ``body2`` is the two-argument body."""

    body2: Binder2


@dataclass(frozen=True)
class ConstErr:
    pass


@dataclass(frozen=True)
class Exotic:
    pass


AbstrClassification = Union[
    Identity, ConstCon, ConstVar, AppCase, LamCase, ConstErr, Exotic
]


def _section1(part: DbTerm, p: ProbeId) -> Binder1:
    def section(x: Expr) -> Expr:
        return Expr(replace_probe(part, p, x._t))

    return section


def _section2(body: DbTerm, p: ProbeId) -> Binder2:
    def section(x: Expr, y: Expr) -> Expr:
        return Expr(replace_probe(instantiate(body, 0, y._t), p, x._t))

    return section


def classify(fn: Binder1) -> AbstrClassification:
    """Decide which of the seven shapes ``fn`` has.

    Exactly one variant applies; it is ``Exotic`` precisely when
    ``abstr(fn)`` is false.
    """
    p = fresh_probe()
    try:
        body = _probed(fn, (p,))
    except ExoticUse as exc:
        if p in exc.pids:
            return Exotic()
        raise
    if body == Probe(p):
        return Identity()
    match body:
        case Con(name):
            return ConstCon(name)
        case Var(n):
            return ConstVar(n)
        case Err():
            return ConstErr()
        case App(l, r):
            return AppCase(_section1(l, p), _section1(r, p))
        case Abs(b):
            return LamCase(_section2(b, p))
        case Probe(q):
            # the body is an enclosing binder's argument; naming its head
            # constructor would inspect it
            raise ExoticUse(frozenset((q,)), "classify")
    raise AssertionError(f"unreachable body head: {body!r}")


_ground: tuple[Expr, ...] | None = None


def ground_samples() -> tuple[Expr, ...]:
    """Closed sample terms covering every head constructor."""
    global _ground
    if _ground is None:
        _ground = (VAR(0), VAR(1), CON("c1"), ERR(), LAM(lambda x: x))
    return _ground


def abstr_lam_check(fn2: Binder2) -> bool:
    """Binder check for a nested binding ``lam x. lam y. body(x, y)``.

    Requires every x-slice ``lam y. body(x, y)`` to pass ``abstr``; the
    slice is sampled at a probe argument, falling back to the ground
    samples when the body consults x itself (then the probe slice is
    indeterminate rather than failed). Returns whether
    ``lam x: LAM(lam y: body)`` passes ``abstr``, which matches the
    y-slice family ``lam x. body(x, y)`` being uniformly syntactic.
    """
    p = fresh_probe()
    px = Expr(Probe(p))
    slice_ok: bool | None
    try:
        slice_ok = abstr(lambda y: fn2(px, y))
    except ExoticUse as exc:
        if p not in exc.pids:
            raise
        slice_ok = None
    if slice_ok is False:
        raise PremiseViolated("y-slice at a probe argument is not syntactic")
    if slice_ok is None:
        for g in ground_samples():
            if not abstr(lambda y: fn2(g, y)):
                raise PremiseViolated("y-slice at a ground argument is not syntactic")
    return abstr(lambda x: LAM(lambda y: fn2(x, y)))
