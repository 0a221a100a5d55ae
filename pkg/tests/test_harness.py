import json

import pytest
from hypothesis import given, settings, strategies as st

from ipcfat import fat, ipc
from ipcfat.gen import GenConfig
from ipcfat.harness import (FAILED, IDENTITY, JOINED, REACHED, FuzzReport, SimReport, Verdict,
                            check_head_strictness, check_simulation, corpus, fuzz, target_rules)
from ipcfat.ipc import Bot, Imp, Or, TVar
from ipcfat.rules import IPC_RULES, RuleId as R
from ipcfat.syntax import parse_ipc as P
from ipcfat.rewrite import join_at_normal_form
from ipcfat.translate import TranslationKind, translate

from helpers import sample

X, Y, Z = TVar("X"), TVar("Y"), TVar("Z")


def test_varpi_imp_is_identity():
    t = P("(abort[X -> X] z) w")
    rep = check_simulation(t, {"z": Bot(), "w": X}, (), R.VARPI_IMP)
    assert rep.verdict.kind == IDENTITY and rep.trace is None


def test_root_beta_imp_is_reached():
    t = P(r"(\x:X. x) y")
    rep = check_simulation(t, {"y": X}, (), R.BETA_IMP)
    assert rep.verdict.kind == REACHED and rep.verdict.steps >= 1
    assert rep.verdict.rule_class == "beta"
    assert rep.trace.validate()
    assert str(rep.verdict) == f"ReachedIn({rep.verdict.steps}, beta)"


def test_case_of_case_is_identity():
    t = P(r"case (case m of {a:X => inl[Y|Z] k | b:Y => inr[Y|Z] n} : Y \/ Z)"
          r" of {x:Y => x | y:Z => u} : Y")
    ctx = {"m": Or(X, Y), "k": Y, "n": Z, "u": Y}
    assert ipc.typecheck(ctx, t) == Y
    assert check_simulation(t, ctx, (), R.PI_OR).verdict.kind == IDENTITY


def test_baseline_commuting_conversion_is_reported_failed():
    t = P(r"case (case m of {a:X => inl[Y|Z] k | b:Y => inr[Y|Z] n} : Y \/ Z)"
          r" of {x:Y => x | y:Z => u} : Y")
    ctx = {"m": Or(X, Y), "k": Y, "n": Z, "u": Y}
    rep = check_simulation(t, ctx, (), R.PI_OR, TranslationKind.BASELINE)
    assert rep.failed and "not collapsed" in rep.detail


def test_eta_rules_are_reached_with_eta():
    t = P(r"\x:X. f x")
    rep = check_simulation(t, {"f": Imp(X, Y)}, (), R.ETA_IMP)
    assert rep.verdict.kind == REACHED and rep.verdict.rule_class == "betaeta"


def test_join_fallback_is_reported_separately():
    t = P(r"(\x:X. <x, x>) ((\k:X. k) y)")
    rep = check_simulation(t, {"y": X}, (), R.BETA_IMP, max_steps=0)
    assert rep.verdict.kind == JOINED and "no beta trace" in rep.detail


def test_ill_typed_input_raises():
    t = P(r"(\x:X. x) y")
    with pytest.raises(ipc.TypeCheckError):
        check_simulation(t, {"y": Y}, (), R.BETA_IMP)


def test_target_rules():
    assert target_rules(R.BETA_AND)[0] == "beta"
    assert target_rules(R.BETA_OR)[0] == "betaeta"
    assert target_rules(R.PI_IMP) == ("identity", frozenset())
    with pytest.raises(ValueError):
        target_rules(R.BETA_ALL)


def test_report_json_shape():
    rep = check_simulation(P(r"(\x:X. x) y"), {"y": X}, (), R.BETA_IMP)
    js = rep.to_json()
    assert list(js) == ["rule", "position", "kind", "verdict", "detail", "ipc_before",
                        "ipc_after", "fat_before", "fat_after", "trace"]
    assert js["verdict"]["kind"] == REACHED
    json.dumps(js)


# ---------------------------------------------------------------- head strictness

def test_head_beta_is_strict():
    assert check_head_strictness(P(r"(\x:X. x) y"), {"y": X}, (), R.BETA_IMP)
    assert check_head_strictness(P("<a, b>.1"), {"a": X, "b": Y}, (), R.BETA_AND)


def test_head_beta_or_needs_eta():
    t = P(r"case inr[X|_|_] o of {x:X => o | y:_|_ => y} : _|_")
    assert check_head_strictness(t, {"o": Bot()}, (), R.BETA_OR)


def test_non_head_step_is_exempt_and_collapses():
    # ⋄(abort(M) N) = ⋄(abort(M) N') when N → N' sits in the argument
    t = P(r"(abort[X -> Y] o) ((\k:X. k) a)")
    ctx = {"o": Bot(), "a": X}
    assert not ipc.is_head_step(t, (1,), R.BETA_IMP)
    with pytest.raises(ValueError):
        check_head_strictness(t, ctx, (1,), R.BETA_IMP)
    rep = check_simulation(t, ctx, (1,), R.BETA_IMP)
    assert rep.verdict.kind == IDENTITY


def test_head_strictness_rejects_other_rules():
    with pytest.raises(ValueError):
        check_head_strictness(P(r"\x:X. f x"), {"f": Imp(X, Y)}, (), R.ETA_IMP)


# ---------------------------------------------------------------- fuzzing

def test_fuzz_small_run():
    rep = fuzz(GenConfig(seed=3), 40)
    assert rep.ok and rep.samples == 40
    t = rep.totals()
    assert t["checked"] == t["identity"] + t["reached"] + t["joined"] + t["failed"] > 0
    js = json.loads(rep.dumps())
    assert list(js) == ["config", "samples", "counts", "totals", "failures"]
    assert list(js["counts"]) == [str(r) for r in IPC_RULES]
    assert js["config"]["seed"] == 3 and js["config"]["kind"] == "optimized"


def test_fuzz_is_deterministic():
    a = fuzz(GenConfig(seed=11), 30).dumps()
    b = fuzz(GenConfig(seed=11), 30).dumps()
    assert a == b


def test_fuzz_callback_sees_every_report():
    seen = []
    rep = fuzz(GenConfig(seed=2), 10, on_report=seen.append)
    assert len(seen) == rep.totals()["checked"]
    assert all(isinstance(r, SimReport) for r in seen)


def _fake(kind):
    t = P("x")
    return SimReport(R.BETA_IMP, (), t, t, None, None, Verdict(kind))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from([IDENTITY, REACHED, JOINED, FAILED]), max_size=20))
def test_fuzz_report_invariants(kinds):
    rep = FuzzReport({}, 0)
    for k in kinds:
        rep.add(_fake(k))
    t = rep.totals()
    assert t["checked"] == len(kinds) == sum(t[k] for k in ("identity", "reached", "joined", "failed"))
    assert bool(rep.failures) == (t["failed"] > 0) == (not rep.ok)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_every_redex_of_a_sample_is_simulated(seed):
    ctx, _, t = sample(seed)
    for pos, rule in ipc.redexes(t):
        rep = check_simulation(t, ctx, pos, rule)
        assert not rep.failed, rep.detail


def test_baseline_contrast_on_absurdity_commutation():
    seen = 0
    for _, _, _, t in corpus(GenConfig(seed=0), 500):
        for pos, _ in ipc.redexes(t, {R.PI_BOT}):
            n = ipc.step_at(t, pos, R.PI_BOT)
            b1, b2 = translate(t, TranslationKind.BASELINE), translate(n, TranslationKind.BASELINE)
            assert not fat.alpha_eq(b1, b2) and join_at_normal_form(b1, b2)
            assert fat.alpha_eq(translate(t), translate(n))
            seen += 1
    assert seen > 0
