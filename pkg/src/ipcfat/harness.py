"""Checking the simulation of IPC reductions by their translations."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from . import fat, ipc, names
from .gen import GenConfig, gen_sample
from .rewrite import NotFound, Trace, join_at_normal_form, reachable
from .rules import (BETA_SIMULATED, BETAETA_SIMULATED, COMMUTING, FAT_BETA, FAT_BETAETA,
                    IPC_BETA, IPC_RULES, RuleId)
from .translate import TranslationKind, rp_type, translate, translate_context

MAX_STEPS = 12
MAX_REDEXES_PER_TERM = 32

IDENTITY = "SyntacticIdentity"
REACHED = "ReachedIn"
JOINED = "JoinedAtNormalForm"
FAILED = "Failed"


@dataclass(frozen=True)
class Verdict:
    kind: str
    steps: int | None = None
    rule_class: str | None = None

    def __str__(self):
        if self.kind == REACHED:
            return f"{REACHED}({self.steps}, {self.rule_class})"
        return self.kind

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == REACHED:
            out.update(steps=self.steps, rule_class=self.rule_class)
        return out


@dataclass
class SimReport:
    rule: RuleId
    position: tuple
    ipc_before: ipc.Term
    ipc_after: ipc.Term
    fat_before: fat.Term
    fat_after: fat.Term
    verdict: Verdict
    trace: Trace | None = None
    detail: str = ""
    kind: TranslationKind = TranslationKind.OPTIMIZED

    @property
    def failed(self):
        return self.verdict.kind == FAILED

    def to_json(self):
        return {
            "rule": str(self.rule),
            "position": list(self.position),
            "kind": str(self.kind),
            "verdict": self.verdict.to_json(),
            "detail": self.detail,
            "ipc_before": str(self.ipc_before),
            "ipc_after": str(self.ipc_after),
            "fat_before": str(self.fat_before),
            "fat_after": str(self.fat_after),
            "trace": self.trace.to_json() if self.trace is not None else None,
        }


def target_rules(rule):
    """The F_at rules a source step is allowed to map to."""
    if rule in BETA_SIMULATED:
        return "beta", FAT_BETA
    if rule in BETAETA_SIMULATED:
        return "betaeta", FAT_BETAETA
    if rule in COMMUTING:
        return "identity", frozenset()
    raise ValueError(f"{rule} is not an IPC rule")


def _typing_problem(ctx, t, n, fb, fa):
    a = ipc.typecheck(ctx, t)
    if ipc.typecheck(ctx, n) != a:
        return "subject reduction fails in IPC"
    fctx = translate_context(ctx)
    want = rp_type(a)
    for side, m in (("redex", fb), ("contractum", fa)):
        try:
            got = fat.typecheck_fat(fctx, m)
        except fat.TypeCheckError as e:
            return f"translation of the {side} is ill-typed: {e}"
        if not fat.alpha_eq_type(got, want):
            return f"translation of the {side} has type {got}, expected {want}"
    return None


def check_simulation(t, ctx, pos, rule, kind=TranslationKind.OPTIMIZED,
                     max_steps=MAX_STEPS, strategy="auto", fuel=None):
    """Verdict for one source step against the matching simulation clause.

    Commuting conversions must become α-equality.  β⊃ and β∧ must be
    matched by β steps, the other β and η rules by βη steps.  When the
    bounded search gives up, the weaker normal-form comparison is reported
    as its own verdict.
    """
    rule = RuleId(rule)
    pos = tuple(pos)
    n = ipc.step_at(t, pos, rule)
    fb, fa = translate(t, kind), translate(n, kind)

    def report(verdict, trace=None, detail=""):
        return SimReport(rule, pos, t, n, fb, fa, verdict, trace, detail, TranslationKind(kind))

    problem = _typing_problem(ctx, t, n, fb, fa)
    if problem:
        return report(Verdict(FAILED), detail=problem)
    if fat.alpha_eq(fb, fa):
        return report(Verdict(IDENTITY))
    cls, rules = target_rules(rule)
    if cls == "identity":
        return report(Verdict(FAILED), detail="commuting conversion not collapsed")
    try:
        tr = reachable(fb, fa, rules, max_steps, strategy)
        return report(Verdict(REACHED, len(tr), cls), tr)
    except NotFound:
        pass
    try:
        if join_at_normal_form(fb, fa, rules, fuel):
            return report(Verdict(JOINED), detail=f"no {cls} trace within {max_steps} steps")
    except fat.FuelExhausted as e:
        return report(Verdict(FAILED), detail=str(e))
    return report(Verdict(FAILED), detail=f"different {cls}-normal forms")


def check_head_strictness(t, ctx, pos, rule, max_steps=MAX_STEPS, strategy="auto"):
    """A head β step must be matched by at least one step between distinct terms.

    For β∨ the matching sequence may need η steps (a variable injected into
    a case at implicative type comes out η-expanded), so βη is allowed there.
    """
    rule = RuleId(rule)
    if rule not in IPC_BETA:
        raise ValueError(f"{rule} is not a β rule")
    if not ipc.is_head_step(t, pos, rule):
        raise ValueError("not a head step")
    n = ipc.step_at(t, pos, rule)
    fb, fa = translate(t), translate(n)
    if fat.alpha_eq(fb, fa):
        return False
    rules = FAT_BETAETA if rule is RuleId.BETA_OR else FAT_BETA
    try:
        return len(reachable(fb, fa, rules, max_steps, strategy)) >= 1
    except NotFound:
        return False


# ---------------------------------------------------------------- fuzzing

@dataclass
class FuzzReport:
    config: dict
    samples: int
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def __post_init__(self):
        for r in IPC_RULES:
            self.counts.setdefault(str(r), {"checked": 0, "identity": 0, "reached": 0,
                                            "joined": 0, "failed": 0})

    def add(self, rep: SimReport):
        c = self.counts[str(rep.rule)]
        c["checked"] += 1
        key = {IDENTITY: "identity", REACHED: "reached", JOINED: "joined", FAILED: "failed"}
        c[key[rep.verdict.kind]] += 1
        if rep.failed:
            self.failures.append(rep)

    @property
    def ok(self):
        return not self.failures

    def totals(self):
        out = {"checked": 0, "identity": 0, "reached": 0, "joined": 0, "failed": 0}
        for c in self.counts.values():
            for k in out:
                out[k] += c[k]
        return out

    def to_json(self):
        return {
            "config": self.config,
            "samples": self.samples,
            "counts": self.counts,
            "totals": self.totals(),
            "failures": [f.to_json() for f in self.failures],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"


def corpus(cfg: GenConfig, samples: int):
    """The seeded sample stream used by fuzz: (index, ctx, goal, term)."""
    for i in range(samples):
        ctx, goal, t = gen_sample(cfg, random.Random(f"{cfg.seed}:{i}"))
        yield i, ctx, goal, t


def fuzz(cfg: GenConfig, samples: int, kind=TranslationKind.OPTIMIZED,
         max_steps=MAX_STEPS, strategy="auto", on_report=None):
    names.reset()
    rep = FuzzReport({**cfg.to_json(), "kind": str(TranslationKind(kind)), "max_steps": max_steps,
                      "max_redexes_per_term": MAX_REDEXES_PER_TERM}, samples)
    for _, ctx, _, t in corpus(cfg, samples):
        for pos, rule in ipc.redexes(t)[:MAX_REDEXES_PER_TERM]:
            r = check_simulation(t, ctx, pos, rule, kind, max_steps, strategy)
            rep.add(r)
            if on_report:
                on_report(r)
    return rep
