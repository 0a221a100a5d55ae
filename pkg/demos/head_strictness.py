"""Head β steps stay visible after translation; other steps may vanish.

A head step is matched by at least one step between distinct terms.  A
step inside the argument of an applied abort is not: both sides translate
to the same term.  For β∨ the matching sequence may need η, as the last
example shows.
"""

from ipcfat import ipc, parse_ipc, translate
from ipcfat.harness import check_head_strictness
from ipcfat.rules import RuleId

bot = ipc.Bot()

t = parse_ipc(r"(\x:X. x) y")
print(t, "head strict:", check_head_strictness(t, {"y": ipc.TVar("X")}, (), RuleId.BETA_IMP))

t = parse_ipc(r"(abort[X -> Y] o) ((\k:X. k) a)")
n = ipc.step_at(t, (1,), RuleId.BETA_IMP)
print(f"\n{t}  ->  {n}   (argument step, not head)")
print("both translate to", translate(t), "=", translate(n))

t = parse_ipc(r"case inr[X|_|_] o of {x:X => o | y:_|_ => y} : _|_")
n = ipc.step_at(t, (), RuleId.BETA_OR)
print(f"\n{t}  ->  {n}")
print("translations:", translate(t), "and", translate(n))
print("head strict (with η allowed):", check_head_strictness(t, {"o": bot}, (), RuleId.BETA_OR))
