"""Random well-typed IPC terms, built goal first.

The generator picks a construction whose conclusion matches the goal type,
generates the premises recursively and backtracks when a premise cannot be
filled within the remaining size.  Eliminations are applied to arbitrary
generated terms, not just variables, so that β, π and ϖ redexes arise
naturally; η-expanded forms are produced on purpose.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import ipc
from .ipc import Abort, App, Bot, Case, Inj, Lam, Pair, Proj, Var

ATOMS = ("X", "Y", "Z")
BINDER_NAMES = tuple("abcdefghkmnpqrstuvw")
RETRY_BOUND = 50
NODE_BOUND = 4000


class GenerationFailed(RuntimeError):
    pass


def _default_weights():
    return {"atom": 3.0, "imp": 2.0, "and": 1.5, "or": 1.5, "bot": 0.5}


@dataclass
class GenConfig:
    seed: int | str = 0
    size_budget: int = 14
    type_depth: int = 2
    connective_weights: dict = field(default_factory=_default_weights)

    def __post_init__(self):
        if self.size_budget < 1:
            raise ValueError("size_budget must be at least 1")
        w = self.connective_weights
        if any(v < 0 for v in w.values()) or not any(w.values()):
            raise ValueError("weights must be nonnegative and not all zero")
        unknown = set(w) - set(_default_weights())
        if unknown:
            raise ValueError(f"unknown connectives {sorted(unknown)}")

    def to_json(self):
        return {"seed": self.seed, "size_budget": self.size_budget, "type_depth": self.type_depth,
                "connective_weights": dict(sorted(self.connective_weights.items()))}


class _Fail(Exception):
    pass


class _Gen:
    def __init__(self, cfg: GenConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng
        self.nodes = 0

    # ---- types
    def gen_type(self, depth=None):
        depth = self.cfg.type_depth if depth is None else depth
        w = dict(self.cfg.connective_weights)
        if depth <= 0:
            w = {"atom": w.get("atom", 0) or 1.0, "bot": w.get("bot", 0)}
        kinds = [k for k in w if w[k] > 0]
        k = self.rng.choices(kinds, [w[x] for x in kinds])[0]
        if k == "atom":
            return ipc.TVar(self.rng.choice(ATOMS))
        if k == "bot":
            return Bot()
        ctor = {"imp": ipc.Imp, "and": ipc.And, "or": ipc.Or}[k]
        return ctor(self.gen_type(depth - 1), self.gen_type(depth - 1))

    def pick_type(self, ctx, goal):
        """A premise type: often a piece of something already in scope."""
        if self.rng.random() < 0.5:
            pool = set()
            for a in list(ctx.values()) + [goal]:
                _subformulas(a, pool)
            return self.rng.choice(sorted(pool, key=repr))
        return self.gen_type()

    # ---- terms
    def binder(self, ctx):
        free = [n for n in BINDER_NAMES if n not in ctx]
        if free:
            return self.rng.choice(free)
        i = 0
        while f"{BINDER_NAMES[i % len(BINDER_NAMES)]}{'_' * (i // len(BINDER_NAMES) + 1)}" in ctx:
            i += 1
        return f"{BINDER_NAMES[i % len(BINDER_NAMES)]}{'_' * (i // len(BINDER_NAMES) + 1)}"

    def split(self, budget, parts):
        """Random sizes for `parts` premises, each at least 1, total ≤ budget."""
        if budget < parts:
            raise _Fail
        cuts = sorted(self.rng.randint(0, budget - parts) for _ in range(parts - 1))
        bounds = [0, *cuts, budget - parts]
        return [bounds[i + 1] - bounds[i] + 1 for i in range(parts)]

    def gen(self, ctx, goal, budget):
        self.nodes += 1
        if self.nodes > NODE_BOUND or budget < 1:
            raise _Fail
        options = self.options(ctx, goal, budget)
        tries = 0
        while options and tries < RETRY_BOUND:
            tries += 1
            weights = [w for w, _ in options]
            i = self.rng.choices(range(len(options)), weights)[0]
            try:
                return options[i][1]()
            except _Fail:
                options.pop(i)
        raise _Fail

    def options(self, ctx, goal, budget):
        g, r = self.gen, self.rng
        opts = []
        hits = [x for x, a in ctx.items() if a == goal]
        if hits:
            opts.append((6.0 if budget <= 2 else 2.0, lambda: Var(r.choice(hits))))
        if budget < 2:
            return opts

        bots = [x for x, a in ctx.items() if a == Bot()]
        if bots and budget <= 3:
            opts.append((0.3, lambda: Abort(Var(r.choice(bots)), goal)))

        match goal:
            case ipc.Imp(a, b):
                def lam():
                    x = self.binder(ctx)
                    return Lam(x, a, g({**ctx, x: a}, b, budget - 1))
                opts.append((4.0, lam))
                if budget >= 3:
                    def eta_lam():
                        x = self.binder(ctx)
                        return Lam(x, a, App(g(ctx, goal, budget - 2), Var(x)))
                    opts.append((0.6, eta_lam))
            case ipc.And(a, b):
                def pair():
                    s1, s2 = self.split(budget - 1, 2)
                    return Pair(g(ctx, a, s1), g(ctx, b, s2))
                opts.append((4.0, pair))
                if budget >= 4:
                    def eta_pair():
                        m = g(ctx, goal, (budget - 2) // 2)
                        return Pair(Proj(1, m), Proj(2, m))
                    opts.append((0.6, eta_pair))
            case ipc.Or(a, b):
                def inj(i):
                    return lambda: Inj(i, g(ctx, a if i == 1 else b, budget - 1), a, b)
                opts += [(2.0, inj(1)), (2.0, inj(2))]
                if budget >= 4:
                    def eta_case():
                        x = self.binder(ctx)
                        y = self.binder({**ctx, x: a})
                        return Case(g(ctx, goal, budget - 3), x, a, Inj(1, Var(x), a, b),
                                    y, b, Inj(2, Var(y), a, b), goal)
                    opts.append((0.6, eta_case))

        if budget >= 3:
            def app():
                a = self.pick_type(ctx, goal)
                s1, s2 = self.split(budget - 1, 2)
                return App(g(ctx, ipc.Imp(a, goal), s1), g(ctx, a, s2))
            opts.append((2.0, app))

            def proj():
                other = self.pick_type(ctx, goal)
                if r.random() < 0.5:
                    return Proj(1, g(ctx, ipc.And(goal, other), budget - 1))
                return Proj(2, g(ctx, ipc.And(other, goal), budget - 1))
            opts.append((1.5, proj))

            def abort():
                return Abort(g(ctx, Bot(), budget - 1), goal)
            opts.append((0.5, abort))

        if budget >= 4:
            def case():
                a, b = self.pick_type(ctx, goal), self.pick_type(ctx, goal)
                s0, s1, s2 = self.split(budget - 1, 3)
                x = self.binder(ctx)
                y = self.binder(ctx)
                return Case(g(ctx, ipc.Or(a, b), s0), x, a, g({**ctx, x: a}, goal, s1),
                            y, b, g({**ctx, y: b}, goal, s2), goal)
            opts.append((3.0, case))
        return opts


def _subformulas(a, out):
    out.add(a)
    match a:
        case ipc.Imp(l, r) | ipc.And(l, r) | ipc.Or(l, r):
            _subformulas(l, out)
            _subformulas(r, out)


def gen_term(cfg: GenConfig, ctx, goal, rng=None) -> ipc.Term:
    """A term of type goal under ctx, deterministic given cfg.seed."""
    gen = _Gen(cfg, rng or random.Random(cfg.seed))
    try:
        return gen.gen(dict(ctx), goal, cfg.size_budget)
    except _Fail:
        pass
    # The random search can spend its node bound on hopeless branches; a
    # plain proof search still finds small inhabitants when they exist.
    t = _direct(dict(ctx), goal, 6)
    if t is None or _size(t) > cfg.size_budget:
        raise GenerationFailed(f"no term of type {goal} within size {cfg.size_budget}")
    return t


def _size(t):
    return 1 + sum(_size(c) for c in ipc.children(t))


def _first_free(ctx):
    return next(n for n in BINDER_NAMES + tuple(f"h{i}" for i in range(len(ctx) + 1)) if n not in ctx)


def _direct(ctx, goal, depth):
    """Some inhabitant of goal found by bounded, deterministic proof search."""
    if depth < 0:
        return None
    for x, a in ctx.items():
        if a == goal:
            return Var(x)
    binder = _first_free(ctx)
    match goal:
        case ipc.Imp(a, b):
            body = _direct({**ctx, binder: a}, b, depth - 1)
            return None if body is None else Lam(binder, a, body)
        case ipc.And(a, b):
            l, r = _direct(ctx, a, depth - 1), _direct(ctx, b, depth - 1)
            return None if l is None or r is None else Pair(l, r)
    for x, a in ctx.items():
        if a == Bot():
            return Abort(Var(x), goal)
    if isinstance(goal, ipc.Or):
        for i, part in ((1, goal.left), (2, goal.right)):
            m = _direct(ctx, part, depth - 1)
            if m is not None:
                return Inj(i, m, goal.left, goal.right)
    for x, a in ctx.items():
        match a:
            case ipc.Imp(l, r) if r == goal:
                arg = _direct(ctx, l, depth - 1)
                if arg is not None:
                    return App(Var(x), arg)
            case ipc.And(l, r) if goal in (l, r):
                return Proj(1 if l == goal else 2, Var(x))
    return None


def gen_sample(cfg: GenConfig, rng=None):
    """A random (context, goal, term) triple.

    The context always holds a variable of type ⊥, so every goal has an
    inhabitant of size 2 to fall back on.
    """
    rng = rng or random.Random(cfg.seed)
    gen = _Gen(cfg, rng)
    for _ in range(RETRY_BOUND):
        ctx = {"o": Bot()}
        for x in rng.sample(BINDER_NAMES[:8], rng.randint(1, 3)):
            ctx[x] = gen.gen_type()
        goal = gen.gen_type()
        gen.nodes = 0
        try:
            return ctx, goal, gen.gen(ctx, goal, cfg.size_budget)
        except _Fail:
            continue
    raise GenerationFailed("could not build a sample")


def gen_pi_or_redex(cfg: GenConfig, rng=None):
    """A (context, term) pair whose root is a case of a case.

    Samples from gen_sample contain such redexes only occasionally; this
    builds one on purpose, with each part filled by the ordinary generator.
    """
    rng = rng or random.Random(cfg.seed)
    gen = _Gen(cfg, rng)
    part = max(1, cfg.size_budget // 3)
    for _ in range(RETRY_BOUND):
        ctx = {"o": Bot()}
        for x in rng.sample(BINDER_NAMES[:8], rng.randint(1, 3)):
            ctx[x] = gen.gen_type()
        a, b, c, d, e = (gen.gen_type(1) for _ in range(5))
        x1, y1 = gen.binder(ctx), gen.binder(ctx)
        x, y = gen.binder(ctx), gen.binder(ctx)
        gen.nodes = 0
        try:
            inner = Case(gen.gen(ctx, ipc.Or(a, b), part), x1, a, gen.gen({**ctx, x1: a}, ipc.Or(c, d), part),
                         y1, b, gen.gen({**ctx, y1: b}, ipc.Or(c, d), part), ipc.Or(c, d))
            return ctx, Case(inner, x, c, gen.gen({**ctx, x: c}, e, part),
                             y, d, gen.gen({**ctx, y: d}, e, part), e)
        except _Fail:
            continue
    raise GenerationFailed("could not build a case-of-case redex")
