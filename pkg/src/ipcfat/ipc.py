"""IPC: formulas, annotated proof terms, typing and the reduction rules.

Terms use named variables.  Equality of dataclass instances is syntactic;
``alpha_eq`` is the equality to use when comparing terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import names
from ._paths import InvalidPosition, NotARedex, iter_subterms, replace_at, subterm_at
from .rules import IPC_BETA, IPC_RULES, RuleId

__all__ = [
    "TVar", "Bot", "Imp", "And", "Or",
    "Var", "Lam", "App", "Pair", "Proj", "Inj", "Case", "Abort",
    "TypeCheckError", "UnboundVariable", "TypeMismatch", "InvalidPosition", "NotARedex",
    "free_vars", "subst", "alpha_key", "alpha_eq", "typecheck",
    "root_rewrite", "contract", "redexes", "step_at", "is_head_step",
]


# ---------------------------------------------------------------- types

class Type:
    def __str__(self):
        from .syntax import print_ipc_type
        return print_ipc_type(self)


@dataclass(frozen=True, repr=True)
class TVar(Type):
    name: str


@dataclass(frozen=True)
class Bot(Type):
    pass


@dataclass(frozen=True)
class Imp(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class And(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class Or(Type):
    left: Type
    right: Type


def type_vars(a):
    match a:
        case TVar(n):
            return {n}
        case Bot():
            return set()
        case Imp(l, r) | And(l, r) | Or(l, r):
            return type_vars(l) | type_vars(r)
    raise TypeError(a)


# ---------------------------------------------------------------- terms

class Term:
    def __str__(self):
        from .syntax import print_ipc
        return print_ipc(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lam(Term):
    var: str
    annot: Type
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Proj(Term):
    index: int
    arg: Term


@dataclass(frozen=True)
class Inj(Term):
    index: int
    arg: Term
    left: Type
    right: Type


@dataclass(frozen=True)
class Case(Term):
    scrut: Term
    x: str
    xty: Type
    left: Term
    y: str
    yty: Type
    right: Term
    result: Type


@dataclass(frozen=True)
class Abort(Term):
    arg: Term
    result: Type


def children(t):
    match t:
        case Var():
            return ()
        case Lam(_, _, b):
            return (b,)
        case App(f, a):
            return (f, a)
        case Pair(a, b):
            return (a, b)
        case Proj(_, m) | Inj(_, m, _, _) | Abort(m, _):
            return (m,)
        case Case(m, _, _, p, _, _, q, _):
            return (m, p, q)
    raise TypeError(t)


def rebuild(t, kids):
    match t:
        case Lam(x, a, _):
            return Lam(x, a, kids[0])
        case App():
            return App(kids[0], kids[1])
        case Pair():
            return Pair(kids[0], kids[1])
        case Proj(i, _):
            return Proj(i, kids[0])
        case Inj(i, _, a, b):
            return Inj(i, kids[0], a, b)
        case Abort(_, a):
            return Abort(kids[0], a)
        case Case(_, x, a, _, y, b, _, c):
            return Case(kids[0], x, a, kids[1], y, b, kids[2], c)
        case Var():
            return t
    raise TypeError(t)


def term_names(t):
    """Every term-variable name occurring in t, bound or free."""
    out = set()
    for _, s in iter_subterms(t, children):
        match s:
            case Var(x) | Lam(x, _, _):
                out.add(x)
            case Case(_, x, _, _, y, _, _, _):
                out.update((x, y))
    return out


def free_vars(t):
    match t:
        case Var(x):
            return {x}
        case Lam(x, _, b):
            return free_vars(b) - {x}
        case Case(m, x, _, p, y, _, q, _):
            return free_vars(m) | (free_vars(p) - {x}) | (free_vars(q) - {y})
    out = set()
    for c in children(t):
        out |= free_vars(c)
    return out


# ---------------------------------------------------------------- substitution

def subst(n, x, m):
    """[n/x]m, capture-avoiding."""
    if x not in free_vars(m):
        return m
    return _subst(m, x, n, free_vars(n))


def rename(m, x, y):
    return subst(Var(y), x, m)


def _under(y, body, x, n, fvn):
    if y == x or x not in free_vars(body):
        return y, body
    if y in fvn:
        y2 = names.fresh(y, fvn | free_vars(body) | {x})
        body = _subst(body, y, Var(y2), {y2})
        y = y2
    return y, _subst(body, x, n, fvn)


def _subst(t, x, n, fvn):
    match t:
        case Var(y):
            return n if y == x else t
        case Lam(y, a, b):
            y, b = _under(y, b, x, n, fvn)
            return Lam(y, a, b)
        case Case(m, y1, a1, p, y2, a2, q, c):
            y1, p = _under(y1, p, x, n, fvn)
            y2, q = _under(y2, q, x, n, fvn)
            return Case(_subst(m, x, n, fvn), y1, a1, p, y2, a2, q, c)
    return rebuild(t, [_subst(c, x, n, fvn) for c in children(t)])


def _freshen(x, body, avoid):
    """Rename binder x (scope body) away from avoid."""
    if x not in avoid:
        return x, body
    x2 = names.fresh(x, avoid | free_vars(body))
    return x2, rename(body, x, x2)


# ---------------------------------------------------------------- alpha

def alpha_key(t, env=None, depth=0):
    """Nameless rendering of t: bound variables become binder distances."""
    env = env or {}

    def under(x, b):
        return alpha_key(b, {**env, x: depth + 1}, depth + 1)

    match t:
        case Var(x):
            return ("b", depth - env[x]) if x in env else ("f", x)
        case Lam(x, a, b):
            return ("lam", a, under(x, b))
        case Case(m, x, a, p, y, b, q, c):
            return ("case", alpha_key(m, env, depth), a, under(x, p), b, under(y, q), c)
        case Proj(i, m):
            return ("proj", i, alpha_key(m, env, depth))
        case Inj(i, m, a, b):
            return ("inj", i, alpha_key(m, env, depth), a, b)
        case Abort(m, a):
            return ("abort", alpha_key(m, env, depth), a)
        case App(f, a):
            return ("app", alpha_key(f, env, depth), alpha_key(a, env, depth))
        case Pair(a, b):
            return ("pair", alpha_key(a, env, depth), alpha_key(b, env, depth))
    raise TypeError(t)


def alpha_eq(a, b):
    return a is b or alpha_key(a) == alpha_key(b)


def align(a, b):
    """Child pairs of a and b when their head constructors agree, else None.

    Bound names on the b side are renamed to match a, so each pair can be
    compared or searched independently.
    """
    def binder(x, m, y, n):
        if x == y:
            return m, n
        if x not in free_vars(n):
            return m, rename(n, y, x)
        v = names.fresh(x, free_vars(m) | free_vars(n))
        return rename(m, x, v), rename(n, y, v)

    match a, b:
        case Var(x), Var(y):
            return [] if x == y else None
        case Lam(x, t1, m), Lam(y, t2, n) if t1 == t2:
            return [binder(x, m, y, n)]
        case App(f, g), App(h, k):
            return [(f, h), (g, k)]
        case Pair(f, g), Pair(h, k):
            return [(f, h), (g, k)]
        case Proj(i, m), Proj(j, n) if i == j:
            return [(m, n)]
        case Inj(i, m, s1, t1), Inj(j, n, s2, t2) if (i, s1, t1) == (j, s2, t2):
            return [(m, n)]
        case Abort(m, t1), Abort(n, t2) if t1 == t2:
            return [(m, n)]
        case Case(m, x, a1, p, y, b1, q, c1), Case(m2, x2, a2, p2, y2, b2, q2, c2) \
                if (a1, b1, c1) == (a2, b2, c2):
            return [(m, m2), binder(x, p, x2, p2), binder(y, q, y2, q2)]
    return None


# ---------------------------------------------------------------- typing

class TypeCheckError(Exception):
    def __init__(self, message, rule=None, position=()):
        super().__init__(f"{message} (rule {rule}, at {list(position)})" if rule else message)
        self.rule = rule
        self.position = tuple(position)


class UnboundVariable(TypeCheckError):
    pass


class TypeMismatch(TypeCheckError):
    pass


def typecheck(ctx: Mapping[str, Type], t: Term) -> Type:
    """Return the type of t under ctx, following the syntax-directed rules."""
    return _infer(dict(ctx), t, ())


def _expect(got, want, rule, pos):
    if got != want:
        raise TypeMismatch(f"expected {want}, got {got}", rule, pos)


def _infer(ctx, t, pos):
    match t:
        case Var(x):
            if x not in ctx:
                raise UnboundVariable(f"unbound variable {x}", "Ass", pos)
            return ctx[x]
        case Lam(x, a, b):
            return Imp(a, _infer({**ctx, x: a}, b, pos + (0,)))
        case App(f, n):
            ft = _infer(ctx, f, pos + (0,))
            if not isinstance(ft, Imp):
                raise TypeMismatch(f"applying a term of type {ft}", "⊃E", pos)
            _expect(_infer(ctx, n, pos + (1,)), ft.left, "⊃E", pos)
            return ft.right
        case Pair(m, n):
            return And(_infer(ctx, m, pos + (0,)), _infer(ctx, n, pos + (1,)))
        case Proj(i, m):
            mt = _infer(ctx, m, pos + (0,))
            if not isinstance(mt, And):
                raise TypeMismatch(f"projecting from {mt}", f"∧E{i}", pos)
            return mt.left if i == 1 else mt.right
        case Inj(i, m, a, b):
            _expect(_infer(ctx, m, pos + (0,)), a if i == 1 else b, f"∨I{i}", pos)
            return Or(a, b)
        case Case(m, x, a, p, y, b, q, c):
            _expect(_infer(ctx, m, pos + (0,)), Or(a, b), "∨E", pos)
            _expect(_infer({**ctx, x: a}, p, pos + (1,)), c, "∨E", pos)
            _expect(_infer({**ctx, y: b}, q, pos + (2,)), c, "∨E", pos)
            return c
        case Abort(m, a):
            _expect(_infer(ctx, m, pos + (0,)), Bot(), "⊥E", pos)
            return a
    raise TypeError(t)


# ---------------------------------------------------------------- reduction

def contract(rule: RuleId, t: Term):
    """Contractum of t under rule at the root, or None."""
    R = RuleId
    match rule, t:
        case R.BETA_IMP, App(Lam(x, _, b), n):
            return subst(n, x, b)
        case R.BETA_AND, Proj(i, Pair(a, b)):
            return a if i == 1 else b
        case R.BETA_OR, Case(Inj(i, m, _, _), x1, _, p1, x2, _, p2, _):
            return subst(m, x1, p1) if i == 1 else subst(m, x2, p2)
        case R.PI_IMP, App(Case(m, x, a, p, y, b, q, Imp(_, d)), n):
            fvn = free_vars(n)
            x, p = _freshen(x, p, fvn)
            y, q = _freshen(y, q, fvn)
            return Case(m, x, a, App(p, n), y, b, App(q, n), d)
        case R.PI_AND, Proj(i, Case(m, x, a, p, y, b, q, And(c1, c2))):
            return Case(m, x, a, Proj(i, p), y, b, Proj(i, q), c1 if i == 1 else c2)
        case R.PI_OR, Case(Case(m, x1, a1, p1, y1, b1, q1, Or()), x, c, p, y, d, q, e):
            avoid = (free_vars(p) - {x}) | (free_vars(q) - {y})
            x1, p1 = _freshen(x1, p1, avoid)
            y1, q1 = _freshen(y1, q1, avoid)
            return Case(m, x1, a1, Case(p1, x, c, p, y, d, q, e),
                        y1, b1, Case(q1, x, c, p, y, d, q, e), e)
        case R.PI_BOT, Abort(Case(m, x, a, p, y, b, q, Bot()), c):
            return Case(m, x, a, Abort(p, c), y, b, Abort(q, c), c)
        case R.VARPI_IMP, App(Abort(m, Imp(_, d)), _):
            return Abort(m, d)
        case R.VARPI_AND, Proj(i, Abort(m, And(c1, c2))):
            return Abort(m, c1 if i == 1 else c2)
        case R.VARPI_OR, Case(Abort(m, Or()), _, _, _, _, _, _, e):
            return Abort(m, e)
        case R.VARPI_BOT, Abort(Abort(m, Bot()), c):
            return Abort(m, c)
        case R.ETA_IMP, Lam(x, _, App(m, Var(x2))) if x2 == x and x not in free_vars(m):
            return m
        case R.ETA_AND, Pair(Proj(1, m1), Proj(2, m2)) if alpha_eq(m1, m2):
            return m1
        case R.ETA_OR, Case(m, x, a, Inj(1, Var(x2), a1, b1), y, b, Inj(2, Var(y2), a2, b2), Or(a3, b3)) \
                if x2 == x and y2 == y and a == a1 == a2 == a3 and b == b1 == b2 == b3:
            return m
    if rule not in IPC_RULES:
        raise ValueError(f"{rule} is not an IPC rule")
    return None


def root_rewrite(rule: RuleId, t: Term) -> Term:
    r = contract(rule, t)
    if r is None:
        raise NotARedex(f"{rule} does not match at the root")
    return r


def iter_redexes(t, rules=IPC_RULES):
    order = [r for r in IPC_RULES if r in set(rules)]
    for pos, s in iter_subterms(t, children):
        for r in order:
            if contract(r, s) is not None:
                yield pos, r


def redexes(t, rules=IPC_RULES):
    """All (position, rule) pairs, outside-in and left to right."""
    return list(iter_redexes(t, rules))


def subterm(t, pos):
    return subterm_at(t, pos, children)


def replace(t, pos, new):
    return replace_at(t, pos, new, children, rebuild)


def step_at(t, pos, rule):
    return replace(t, pos, root_rewrite(rule, subterm(t, pos)))


# head congruences: λ body, function side, pair components, inj, case scrutinee, abort
_HEAD_CHILDREN = {Lam: {0}, App: {0}, Pair: {0, 1}, Inj: {0}, Case: {0}, Abort: {0}}


def is_head_step(t, pos, rule):
    if rule not in IPC_BETA:
        raise ValueError(f"head reduction is defined for β rules only, not {rule}")
    s = t
    for i in pos:
        if i not in _HEAD_CHILDREN.get(type(s), ()):
            return False
        s = children(s)[i]
    return contract(rule, s) is not None
