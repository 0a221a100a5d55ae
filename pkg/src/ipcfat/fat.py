"""Atomic System F: types, terms, typing and βη reduction.

Type application only accepts a type variable.  ``TyApp.tyarg`` holds a
type so that a compound argument can be represented and rejected by the
checker, but nothing in this package ever builds one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping

from . import names
from ._paths import InvalidPosition, NotARedex, iter_subterms, replace_at, subterm_at
from .rules import FAT_BETAETA, FAT_RULES, RuleId

DEFAULT_FUEL = 10_000


# ---------------------------------------------------------------- types

class Type:
    def __str__(self):
        from .syntax import print_fat_type
        return print_fat_type(self)


@dataclass(frozen=True)
class TVar(Type):
    name: str


@dataclass(frozen=True)
class Imp(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class And(Type):
    left: Type
    right: Type


@dataclass(frozen=True)
class Forall(Type):
    var: str
    body: Type


def free_type_vars_type(a):
    match a:
        case TVar(n):
            return {n}
        case Imp(l, r) | And(l, r):
            return free_type_vars_type(l) | free_type_vars_type(r)
        case Forall(x, b):
            return free_type_vars_type(b) - {x}
    raise TypeError(a)


def subst_type_in_type(y, x, a):
    """[y/x]a for type-variable names y, x."""
    match a:
        case TVar(n):
            return TVar(y) if n == x else a
        case Imp(l, r):
            return Imp(subst_type_in_type(y, x, l), subst_type_in_type(y, x, r))
        case And(l, r):
            return And(subst_type_in_type(y, x, l), subst_type_in_type(y, x, r))
        case Forall(z, b):
            if z == x or x not in free_type_vars_type(b):
                return a
            if z == y:
                z2 = names.fresh(z, {x, y} | free_type_vars_type(b))
                b = subst_type_in_type(z2, z, b)
                z = z2
            return Forall(z, subst_type_in_type(y, x, b))
    raise TypeError(a)


def type_key(a, env=None, depth=0):
    env = env or {}
    match a:
        case TVar(n):
            return ("b", depth - env[n]) if n in env else ("f", n)
        case Imp(l, r):
            return ("imp", type_key(l, env, depth), type_key(r, env, depth))
        case And(l, r):
            return ("and", type_key(l, env, depth), type_key(r, env, depth))
        case Forall(x, b):
            return ("all", type_key(b, {**env, x: depth + 1}, depth + 1))
    raise TypeError(a)


def alpha_eq_type(a, b):
    return a is b or type_key(a) == type_key(b)


# ---------------------------------------------------------------- terms

class Term:
    def __str__(self):
        from .syntax import print_fat
        return print_fat(self)


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
class TyLam(Term):
    var: str
    body: Term


@dataclass(frozen=True)
class TyApp(Term):
    fun: Term
    tyarg: Type


def children(t):
    match t:
        case Var():
            return ()
        case Lam(_, _, b) | TyLam(_, b):
            return (b,)
        case App(f, a) | Pair(f, a):
            return (f, a)
        case Proj(_, m) | TyApp(m, _):
            return (m,)
    raise TypeError(t)


def rebuild(t, kids):
    match t:
        case Lam(x, a, _):
            return Lam(x, a, kids[0])
        case TyLam(x, _):
            return TyLam(x, kids[0])
        case App():
            return App(kids[0], kids[1])
        case Pair():
            return Pair(kids[0], kids[1])
        case Proj(i, _):
            return Proj(i, kids[0])
        case TyApp(_, a):
            return TyApp(kids[0], a)
        case Var():
            return t
    raise TypeError(t)


def free_term_vars(t):
    match t:
        case Var(x):
            return {x}
        case Lam(x, _, b):
            return free_term_vars(b) - {x}
    out = set()
    for c in children(t):
        out |= free_term_vars(c)
    return out


def free_type_vars_term(t):
    match t:
        case Var():
            return set()
        case Lam(_, a, b):
            return free_type_vars_type(a) | free_type_vars_term(b)
        case TyLam(x, b):
            return free_type_vars_term(b) - {x}
        case TyApp(m, a):
            return free_type_vars_term(m) | free_type_vars_type(a)
    out = set()
    for c in children(t):
        out |= free_type_vars_term(c)
    return out


# ---------------------------------------------------------------- substitution

def subst_term(n, x, m):
    """[n/x]m, avoiding capture by both term and type binders."""
    if x not in free_term_vars(m):
        return m
    return _subst(m, x, n, free_term_vars(n), free_type_vars_term(n))


def rename(m, x, y):
    return subst_term(Var(y), x, m)


def _subst(t, x, n, fvn, ftvn):
    match t:
        case Var(y):
            return n if y == x else t
        case Lam(y, a, b):
            if y == x or x not in free_term_vars(b):
                return t
            if y in fvn:
                y2 = names.fresh(y, fvn | free_term_vars(b) | {x})
                b = _subst(b, y, Var(y2), {y2}, set())
                y = y2
            return Lam(y, a, _subst(b, x, n, fvn, ftvn))
        case TyLam(z, b):
            if x not in free_term_vars(b):
                return t
            if z in ftvn:
                z2 = names.fresh(z, ftvn | free_type_vars_term(b))
                b = subst_type_in_term(z2, z, b)
                z = z2
            return TyLam(z, _subst(b, x, n, fvn, ftvn))
    return rebuild(t, [_subst(c, x, n, fvn, ftvn) for c in children(t)])


def subst_type_in_term(y, x, m):
    """[y/x]m where y and x are type-variable names."""
    if x not in free_type_vars_term(m):
        return m
    match m:
        case Lam(z, a, b):
            return Lam(z, subst_type_in_type(y, x, a), subst_type_in_term(y, x, b))
        case TyLam(z, b):
            if z == x:
                return m
            if z == y:
                z2 = names.fresh(z, {x, y} | free_type_vars_term(b))
                b = subst_type_in_term(z2, z, b)
                z = z2
            return TyLam(z, subst_type_in_term(y, x, b))
        case TyApp(f, a):
            return TyApp(subst_type_in_term(y, x, f), subst_type_in_type(y, x, a))
    return rebuild(m, [subst_type_in_term(y, x, c) for c in children(m)])


def rename_type(m, x, y):
    return subst_type_in_term(y, x, m)


# ---------------------------------------------------------------- alpha

def alpha_key(t, env=None, depth=0, tenv=None, tdepth=0):
    env = env or {}
    tenv = tenv or {}

    def k(s):
        return alpha_key(s, env, depth, tenv, tdepth)

    match t:
        case Var(x):
            return ("b", depth - env[x]) if x in env else ("f", x)
        case Lam(x, a, b):
            return ("lam", type_key(a, tenv, tdepth),
                    alpha_key(b, {**env, x: depth + 1}, depth + 1, tenv, tdepth))
        case TyLam(x, b):
            return ("tlam", alpha_key(b, env, depth, {**tenv, x: tdepth + 1}, tdepth + 1))
        case TyApp(m, a):
            return ("tapp", k(m), type_key(a, tenv, tdepth))
        case App(f, a):
            return ("app", k(f), k(a))
        case Pair(a, b):
            return ("pair", k(a), k(b))
        case Proj(i, m):
            return ("proj", i, k(m))
    raise TypeError(t)


def alpha_eq(a, b):
    return a is b or alpha_key(a) == alpha_key(b)


def align(a, b):
    """Child pairs of a and b when their head constructors agree, else None."""
    def binder(x, m, y, n):
        if x == y:
            return m, n
        if x not in free_term_vars(n):
            return m, rename(n, y, x)
        v = names.fresh(x, free_term_vars(m) | free_term_vars(n))
        return rename(m, x, v), rename(n, y, v)

    def tbinder(x, m, y, n):
        if x == y:
            return m, n
        if x not in free_type_vars_term(n):
            return m, rename_type(n, y, x)
        v = names.fresh(x, free_type_vars_term(m) | free_type_vars_term(n))
        return rename_type(m, x, v), rename_type(n, y, v)

    match a, b:
        case Var(x), Var(y):
            return [] if x == y else None
        case Lam(x, t1, m), Lam(y, t2, n) if alpha_eq_type(t1, t2):
            return [binder(x, m, y, n)]
        case TyLam(x, m), TyLam(y, n):
            return [tbinder(x, m, y, n)]
        case App(f, g), App(h, k):
            return [(f, h), (g, k)]
        case Pair(f, g), Pair(h, k):
            return [(f, h), (g, k)]
        case Proj(i, m), Proj(j, n) if i == j:
            return [(m, n)]
        case TyApp(m, t1), TyApp(n, t2) if alpha_eq_type(t1, t2):
            return [(m, n)]
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


class ForallProvisoViolated(TypeCheckError):
    pass


class NonAtomicInstantiation(TypeCheckError):
    pass


def typecheck_fat(ctx: Mapping[str, Type], t: Term) -> Type:
    return _infer(dict(ctx), t, ())


def _expect(got, want, rule, pos):
    if not alpha_eq_type(got, want):
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
        case TyLam(x, b):
            for y, a in ctx.items():
                if x in free_type_vars_type(a):
                    raise ForallProvisoViolated(f"{x} is free in the type of {y}", "∀I", pos)
            return Forall(x, _infer(ctx, b, pos + (0,)))
        case TyApp(m, a):
            if not isinstance(a, TVar):
                raise NonAtomicInstantiation(f"instantiation with {a}", "∀E", pos)
            mt = _infer(ctx, m, pos + (0,))
            if not isinstance(mt, Forall):
                raise TypeMismatch(f"instantiating a term of type {mt}", "∀E", pos)
            return subst_type_in_type(a.name, mt.var, mt.body)
    raise TypeError(t)


# ---------------------------------------------------------------- reduction

def contract(rule: RuleId, t: Term):
    R = RuleId
    match rule, t:
        case R.BETA_IMP_F, App(Lam(x, _, b), n):
            return subst_term(n, x, b)
        case R.BETA_AND_F, Proj(i, Pair(a, b)):
            return a if i == 1 else b
        case R.BETA_ALL, TyApp(TyLam(x, b), TVar(y)):
            return subst_type_in_term(y, x, b)
        case R.ETA_IMP_F, Lam(x, _, App(m, Var(x2))) if x2 == x and x not in free_term_vars(m):
            return m
        case R.ETA_AND_F, Pair(Proj(1, m1), Proj(2, m2)) if alpha_eq(m1, m2):
            return m1
        case R.ETA_ALL, TyLam(x, TyApp(m, TVar(x2))) if x2 == x and x not in free_type_vars_term(m):
            return m
    if rule not in FAT_RULES:
        raise ValueError(f"{rule} is not an F_at rule")
    return None


def root_rewrite_fat(rule, t):
    r = contract(rule, t)
    if r is None:
        raise NotARedex(f"{rule} does not match at the root")
    return r


def iter_redexes(t, rules=FAT_RULES):
    order = [r for r in FAT_RULES if r in set(rules)]
    for pos, s in iter_subterms(t, children):
        for r in order:
            if contract(r, s) is not None:
                yield pos, r


def redexes_fat(t, rules=FAT_RULES):
    return list(iter_redexes(t, rules))


def subterm(t, pos):
    return subterm_at(t, pos, children)


def replace(t, pos, new):
    return replace_at(t, pos, new, children, rebuild)


def step_at_fat(t, pos, rule):
    return replace(t, pos, root_rewrite_fat(rule, subterm(t, pos)))


# calculus-generic names used by the rewrite engine
redexes = redexes_fat
step_at = step_at_fat
root_rewrite = root_rewrite_fat


class FuelExhausted(RuntimeError):
    pass


def default_fuel():
    return int(os.environ.get("IPCFAT_FUEL", DEFAULT_FUEL))


def normalize_fat_steps(t, rules=FAT_BETAETA, fuel=None):
    """Leftmost-outermost normalization; returns (normal form, steps taken)."""
    fuel = default_fuel() if fuel is None else fuel
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    for steps in range(fuel + 1):
        r = next(iter_redexes(t, rules), None)
        if r is None:
            return t, steps
        if steps == fuel:
            break
        t = step_at_fat(t, *r)
    raise FuelExhausted(f"no normal form within {fuel} steps")


def normalize_fat(t, rules=FAT_BETAETA, fuel=None):
    return normalize_fat_steps(t, rules, fuel)[0]
