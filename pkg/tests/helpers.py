"""Shared test utilities: seeded samples and small independent oracles."""

import random

from ipcfat import fat, ipc, names
from ipcfat.gen import GenConfig, gen_sample
from ipcfat.translate import translate

CFG = GenConfig(seed=0)


def sample(seed, cfg=CFG):
    return gen_sample(cfg, random.Random(f"test:{seed}"))


def samples(n, cfg=CFG, tag="test"):
    return [gen_sample(cfg, random.Random(f"{tag}:{i}")) for i in range(n)]


def translated(n, tag="fat"):
    """Well-typed F_at terms: translations of generated IPC samples."""
    return [translate(t) for _, _, t in samples(n, tag=tag)]


# ---- de Bruijn conversion written separately from the library's alpha_key

def debruijn(t, env=()):
    """Nameless form of an IPC or F_at term; types keep their names except
    for ∀-bound ones, which are indexed too."""
    return _db(t, list(env), [])


def _dbty(a, tenv):
    if isinstance(a, (ipc.TVar, fat.TVar)):
        return ("tv", len(tenv) - 1 - tenv[::-1].index(a.name) if a.name in tenv else a.name)
    if isinstance(a, fat.Forall):
        return ("all", _dbty(a.body, tenv + [a.var]))
    if isinstance(a, ipc.Bot):
        return ("bot",)
    return (type(a).__name__, _dbty(a.left, tenv), _dbty(a.right, tenv))


def _idx(name, env):
    if name in env:
        return ("b", len(env) - 1 - env[::-1].index(name))
    return ("f", name)


def _db(t, env, tenv):
    if isinstance(t, (ipc.Var, fat.Var)):
        return _idx(t.name, env)
    if isinstance(t, (ipc.Lam, fat.Lam)):
        return ("lam", _dbty(t.annot, tenv), _db(t.body, env + [t.var], tenv))
    if isinstance(t, (ipc.App, fat.App)):
        return ("app", _db(t.fun, env, tenv), _db(t.arg, env, tenv))
    if isinstance(t, (ipc.Pair, fat.Pair)):
        return ("pair", _db(t.fst, env, tenv), _db(t.snd, env, tenv))
    if isinstance(t, (ipc.Proj, fat.Proj)):
        return ("proj", t.index, _db(t.arg, env, tenv))
    if isinstance(t, ipc.Inj):
        return ("inj", t.index, _db(t.arg, env, tenv), _dbty(t.left, tenv), _dbty(t.right, tenv))
    if isinstance(t, ipc.Abort):
        return ("abort", _db(t.arg, env, tenv), _dbty(t.result, tenv))
    if isinstance(t, ipc.Case):
        return ("case", _db(t.scrut, env, tenv), _dbty(t.xty, tenv), _db(t.left, env + [t.x], tenv),
                _dbty(t.yty, tenv), _db(t.right, env + [t.y], tenv), _dbty(t.result, tenv))
    if isinstance(t, fat.TyLam):
        return ("tlam", _db(t.body, env, tenv + [t.var]))
    if isinstance(t, fat.TyApp):
        return ("tapp", _db(t.fun, env, tenv), _dbty(t.tyarg, tenv))
    raise TypeError(t)


def same(a, b):
    return debruijn(a) == debruijn(b)


# ---- α-variants: rename every binder to a brand-new name

def ipc_variant(t):
    if isinstance(t, ipc.Lam):
        x = names.fresh("r")
        return ipc.Lam(x, t.annot, ipc_variant(ipc.rename(t.body, t.var, x)))
    if isinstance(t, ipc.Case):
        x, y = names.fresh("r"), names.fresh("r")
        return ipc.Case(ipc_variant(t.scrut), x, t.xty, ipc_variant(ipc.rename(t.left, t.x, x)),
                        y, t.yty, ipc_variant(ipc.rename(t.right, t.y, y)), t.result)
    return ipc.rebuild(t, [ipc_variant(c) for c in ipc.children(t)])


def fat_variant(t):
    if isinstance(t, fat.Lam):
        x = names.fresh("r")
        return fat.Lam(x, t.annot, fat_variant(fat.rename(t.body, t.var, x)))
    if isinstance(t, fat.TyLam):
        x = names.fresh("R")
        return fat.TyLam(x, fat_variant(fat.rename_type(t.body, t.var, x)))
    return fat.rebuild(t, [fat_variant(c) for c in fat.children(t)])


# ---- positions, enumerated independently of _paths.iter_subterms

def all_positions(t, children):
    out = [()]
    for i, c in enumerate(children(t)):
        out += [(i,) + p for p in all_positions(c, children)]
    return out


def tyapps(t):
    """Every type argument appearing in t."""
    out = [t.tyarg] if isinstance(t, fat.TyApp) else []
    for c in fat.children(t):
        out += tyapps(c)
    return out
