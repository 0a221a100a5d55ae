"""Why substitution into the case construction needs a side condition.

[N/z] commutes with casê when both branches are z-special: no sequence of
optimized eliminations turns them into the bare variable z.  With the
branch (λw.w)@z = z and N an abstraction, the two sides differ by an
administrative redex.
"""

from ipcfat import fat
from ipcfat.translate import TermArg, at_apply, case_opt, is_z_special_bounded

X, Y = fat.TVar("X"), fat.TVar("Y")
N = fat.Lam("u", X, fat.Var("u"))
C = fat.Imp(X, Y)


def sides(p):
    lhs = fat.subst_term(N, "z", case_opt(fat.Var("s"), "x", X, p, "y", Y, fat.Var("g"), C))
    rhs = case_opt(fat.Var("s"), "x", X, fat.subst_term(N, "z", p), "y", Y, fat.Var("g"), C)
    return lhs, rhs


for p in (at_apply(fat.Lam("w", C, fat.Var("w")), TermArg(fat.Var("z"))),
          fat.App(fat.Var("z"), fat.Var("a"))):
    lhs, rhs = sides(p)
    print(f"branch {p}: z-special={is_z_special_bounded(p, 'z')}")
    print("  [N/z]case  ", lhs)
    print("  case [N/z] ", rhs)
    print("  equal:", fat.alpha_eq(lhs, rhs))
