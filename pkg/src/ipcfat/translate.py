"""From IPC to atomic System F.

Formulas go through the Russell-Prawitz encoding.  Proof terms go through
one of two maps: the optimized one, whose eliminators contract on the fly
(``at_apply``) and whose constructors are η-expanded so that source redexes
survive, and the baseline one, which uses plain eliminators throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import fat, ipc, names
from .fat import App, Forall, Lam, Pair, Proj, TyApp, TyLam

# ---------------------------------------------------------------- formulas


def dvee(a: fat.Type, b: fat.Type) -> fat.Type:
    """∀X.((A⊃X)∧(B⊃X))⊃X with X fresh for A and B."""
    x = names.fresh("X", fat.free_type_vars_type(a) | fat.free_type_vars_type(b))
    v = fat.TVar(x)
    return Forall(x, fat.Imp(fat.And(fat.Imp(a, v), fat.Imp(b, v)), v))


def dbot() -> fat.Type:
    x = names.fresh("X")
    return Forall(x, fat.TVar(x))


def rp_type(a: ipc.Type) -> fat.Type:
    match a:
        case ipc.TVar(n):
            return fat.TVar(n)
        case ipc.Bot():
            return dbot()
        case ipc.Imp(l, r):
            return fat.Imp(rp_type(l), rp_type(r))
        case ipc.And(l, r):
            return fat.And(rp_type(l), rp_type(r))
        case ipc.Or(l, r):
            return dvee(rp_type(l), rp_type(r))
    raise TypeError(a)


# ---------------------------------------------------------------- @ and friends

@dataclass(frozen=True)
class TermArg:
    term: fat.Term


@dataclass(frozen=True)
class ProjArg:
    index: int


@dataclass(frozen=True)
class TypeVarArg:
    name: str


AtArg = TermArg | ProjArg | TypeVarArg


def at_apply(m: fat.Term, u: AtArg) -> fat.Term:
    """M@U: contract on the spot when the head is the matching introduction."""
    match u, m:
        case TermArg(n), Lam(x, _, p):
            return fat.subst_term(n, x, p)
        case TermArg(n), _:
            return App(m, n)
        case ProjArg(i), Pair(a, b):
            return a if i == 1 else b
        case ProjArg(i), _:
            return Proj(i, m)
        case TypeVarArg(y), TyLam(x, p):
            return fat.subst_type_in_term(y, x, p)
        case TypeVarArg(y), _:
            return TyApp(m, fat.TVar(y))
    raise TypeError(u)


def plain_apply(m: fat.Term, u: AtArg) -> fat.Term:
    match u:
        case TermArg(n):
            return App(m, n)
        case ProjArg(i):
            return Proj(i, m)
        case TypeVarArg(y):
            return TyApp(m, fat.TVar(y))
    raise TypeError(u)


def at_apply_all(m, us):
    for u in us:
        m = at_apply(m, u)
    return m


def exp_lam(x: str, annot: fat.Type, m: fat.Term) -> fat.Term:
    """λλx.M = λw.(λx.M)w"""
    w = names.fresh("w", fat.free_term_vars(m) | {x})
    return Lam(w, annot, App(Lam(x, annot, m), fat.Var(w)))


def exp_pair(m: fat.Term, n: fat.Term) -> fat.Term:
    p = Pair(m, n)
    return Pair(Proj(1, p), Proj(2, p))


def inj_hat(i: int, m: fat.Term, a: fat.Type, b: fat.Type) -> fat.Term:
    ftv = fat.free_type_vars_term(m) | fat.free_type_vars_type(a) | fat.free_type_vars_type(b)
    x = names.fresh("X", ftv)
    w = names.fresh("w", fat.free_term_vars(m))
    v = fat.TVar(x)
    return TyLam(x, Lam(w, fat.And(fat.Imp(a, v), fat.Imp(b, v)), App(Proj(i, fat.Var(w)), m)))


class TranslationKind(str, Enum):
    OPTIMIZED = "optimized"
    BASELINE = "baseline"

    def __str__(self):
        return self.value


def _elim(kind):
    return at_apply if kind is TranslationKind.OPTIMIZED else plain_apply


def case_opt(m, x, xannot, p, y, yannot, q, c, kind=TranslationKind.OPTIMIZED):
    """casê(M, x^A.P, y^B.Q, C) by recursion on C."""
    el = _elim(kind)
    match c:
        case fat.TVar(n):
            branches = Pair(Lam(x, xannot, p), Lam(y, yannot, q))
            return el(el(m, TypeVarArg(n)), TermArg(branches))
        case fat.And(c1, c2):
            return Pair(*(case_opt(m, x, xannot, el(p, ProjArg(i)), y, yannot, el(q, ProjArg(i)), ci, kind)
                          for i, ci in ((1, c1), (2, c2))))
        case fat.Imp(c1, c2):
            avoid = {x, y} | fat.free_term_vars(m) | fat.free_term_vars(p) | fat.free_term_vars(q)
            z = names.fresh("z", avoid)
            zu = TermArg(fat.Var(z))
            return Lam(z, c1, case_opt(m, x, xannot, el(p, zu), y, yannot, el(q, zu), c2, kind))
        case Forall(v, c0):
            # A globally fresh binder also keeps the ∀I proviso out of reach.
            v2 = names.fresh(v)
            u = TypeVarArg(v2)
            c0 = fat.subst_type_in_type(v2, v, c0)
            return TyLam(v2, case_opt(m, x, xannot, el(p, u), y, yannot, el(q, u), c0, kind))
    raise TypeError(c)


def abort_opt(m, a, kind=TranslationKind.OPTIMIZED):
    el = _elim(kind)
    match a:
        case fat.TVar(n):
            return el(m, TypeVarArg(n))
        case fat.And(a1, a2):
            return Pair(abort_opt(m, a1, kind), abort_opt(m, a2, kind))
        case fat.Imp(b, c):
            z = names.fresh("z", fat.free_term_vars(m))
            return Lam(z, b, abort_opt(m, c, kind))
        case Forall(v, a0):
            v2 = names.fresh(v)
            return TyLam(v2, abort_opt(m, fat.subst_type_in_type(v2, v, a0), kind))
    raise TypeError(a)


# ---------------------------------------------------------------- proof terms

def translate(t: ipc.Term, kind=TranslationKind.OPTIMIZED) -> fat.Term:
    kind = TranslationKind(kind)
    opt = kind is TranslationKind.OPTIMIZED
    el = _elim(kind)

    def go(t):
        match t:
            case ipc.Var(x):
                return fat.Var(x)
            case ipc.Lam(x, a, b):
                return (exp_lam if opt else Lam)(x, rp_type(a), go(b))
            case ipc.Pair(a, b):
                return (exp_pair if opt else Pair)(go(a), go(b))
            case ipc.App(f, a):
                return el(go(f), TermArg(go(a)))
            case ipc.Proj(i, m):
                return el(go(m), ProjArg(i))
            case ipc.Inj(i, m, a, b):
                return inj_hat(i, go(m), rp_type(a), rp_type(b))
            case ipc.Case(m, x, a, p, y, b, q, c):
                return case_opt(go(m), x, rp_type(a), go(p), y, rp_type(b), go(q), rp_type(c), kind)
            case ipc.Abort(m, a):
                return abort_opt(go(m), rp_type(a), kind)
        raise TypeError(t)

    return go(t)


def translate_context(ctx):
    return {x: rp_type(a) for x, a in ctx.items()}


# ---------------------------------------------------------------- specialness

def default_pool(p: fat.Term, extra=()):
    """One fresh variable, λw.w, both projections and one fresh type variable."""
    v = names.fresh("v", fat.free_term_vars(p))
    w = names.fresh("w")
    a = names.fresh("S")
    return [TermArg(fat.Var(v)), TermArg(Lam(w, fat.TVar(a), fat.Var(w))),
            ProjArg(1), ProjArg(2), TypeVarArg(names.fresh("Y")), *extra]


def iter_at_images(p, pool, max_len):
    """p@u⃗ for every vector u⃗ over pool of length ≤ max_len (prefixes shared)."""
    stack = [(p, 0)]
    while stack:
        m, depth = stack.pop()
        yield m
        if depth < max_len:
            stack.extend((at_apply(m, u), depth + 1) for u in reversed(pool))


def is_z_special_bounded(p, z, pool=None, max_len=3):
    """No p@u⃗ with |u⃗| ≤ max_len is the variable z.

    A bounded check of a property that quantifies over all vectors: a
    False answer is a genuine witness, a True answer is only evidence.
    """
    if pool is None:
        pool = default_pool(p, extra=[TermArg(fat.Var(z))])
    return all(r != fat.Var(z) for r in iter_at_images(p, pool, max_len))


def is_var_special_bounded(p, pool=None, max_len=3):
    pool = default_pool(p) if pool is None else pool
    fv = fat.free_term_vars(p)
    return all(r.name in fv for r in iter_at_images(p, pool, max_len) if isinstance(r, fat.Var))


def is_pair_special_bounded(p, pool=None, max_len=3):
    pool = default_pool(p) if pool is None else pool
    return all(fat.free_term_vars(r.fst) == fat.free_term_vars(r.snd)
               for r in iter_at_images(p, pool, max_len) if isinstance(r, Pair))


__all__ = [
    "rp_type", "dvee", "dbot", "TermArg", "ProjArg", "TypeVarArg", "at_apply", "plain_apply",
    "exp_lam", "exp_pair", "inj_hat", "case_opt", "abort_opt", "TranslationKind",
    "translate", "translate_context", "default_pool",
    "is_z_special_bounded", "is_var_special_bounded", "is_pair_special_bounded",
]
