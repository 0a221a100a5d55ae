"""Parse an IPC proof term, type it, and translate it both ways.

The optimized translation η-expands λ and pairs so that source redexes
survive, and contracts eliminators on the fly where the source had none.
The baseline translation is homomorphic and keeps every eliminator.
"""

from ipcfat import fat, ipc, parse_ipc, translate, translate_context
from ipcfat.translate import TranslationKind

ctx = {"k": ipc.Or(ipc.TVar("X"), ipc.TVar("Y")), "f": ipc.Imp(ipc.TVar("X"), ipc.TVar("Z")),
       "g": ipc.Imp(ipc.TVar("Y"), ipc.TVar("Z"))}
t = parse_ipc(r"\u:X. case k of {x:X => f x | y:Y => g y} : Z")

print("IPC term       ", t)
print("IPC type       ", ipc.typecheck(ctx, t))
fctx = translate_context(ctx)
for x, a in fctx.items():
    print(f"  {x} : {a}")
for kind in TranslationKind:
    m = translate(t, kind)
    print(f"{kind:<15}", m)
    print(" " * 15, ":", fat.typecheck_fat(fctx, m))
