"""Higher-order abstract syntax binders over a de Bruijn index core."""

from .terms import (
    Abs,
    App,
    Bnd,
    Con,
    DbTerm,
    Err,
    ParseError,
    PreconditionViolated,
    Var,
    bind_probe,
    contains_any_probe,
    contains_probe,
    fresh_probe,
    from_text,
    instantiate,
    level,
    proper,
    size,
    to_text,
)
from .expr import (
    APP,
    CON,
    ERR,
    VAR,
    ExoticUse,
    Expr,
    ExprView,
    NotProper,
    VApp,
    VCon,
    VErr,
    VLam,
    VVar,
    cases,
    expr_equal,
    expr_size,
    from_db,
    pretty,
    to_db,
)
from .binder import (
    LAM,
    AbstrClassification,
    AppCase,
    Binder1,
    Binder2,
    ConstCon,
    ConstErr,
    ConstVar,
    Exotic,
    Identity,
    LamCase,
    PremiseViolated,
    PurityError,
    abstr,
    abstr_2,
    abstr_lam_check,
    classify,
    lbind,
    ordinary,
)

__version__ = "0.1.0"
