"""Commuting conversions disappear under the optimized translation.

A case-of-case redex and its contractum translate to the same atomic
System F term.  Under the baseline translation they differ, and only
meet again at their βη-normal form.
"""

from ipcfat import fat, ipc, parse_ipc, translate
from ipcfat.rewrite import join_at_normal_form
from ipcfat.rules import RuleId
from ipcfat.translate import TranslationKind

t = parse_ipc(r"case (case m of {a:X => inl[Y|Z] k | b:Y => inr[Y|Z] n} : Y \/ Z)"
              r" of {x:Y => x | y:Z => u} : Y")
n = ipc.step_at(t, (), RuleId.PI_OR)
print("redex     ", t)
print("contractum", n)

for kind in TranslationKind:
    a, b = translate(t, kind), translate(n, kind)
    print(f"\n{kind}:")
    print("  redex     ", a)
    print("  contractum", b)
    print("  α-equal:", fat.alpha_eq(a, b), "| same βη-normal form:", join_at_normal_form(a, b))

# An absurdity conversion: abort at an implication, applied.
t = parse_ipc("(abort[X -> X] z) w")
n = ipc.step_at(t, (), RuleId.VARPI_IMP)
print(f"\n{t}  ->  {n}")
print("translations:", translate(t), "and", translate(n))
