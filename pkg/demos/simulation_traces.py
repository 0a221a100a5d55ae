"""β and η steps in IPC become short reduction sequences in atomic System F.

For each redex of a small term, check_simulation finds the matching
sequence and replays it.
"""

from ipcfat import ipc, parse_ipc
from ipcfat.harness import check_simulation

ctx = {"a": ipc.TVar("X"), "f": ipc.Imp(ipc.TVar("X"), ipc.TVar("Y"))}
t = parse_ipc(r"<(\x:X. f x) a, (\u:X. u) a>.1")
print("term:", t)
for pos, rule in ipc.redexes(t):
    rep = check_simulation(t, ctx, pos, rule)
    print(f"\n{rule} at {list(pos)}: {rep.verdict}")
    if rep.trace:
        print("  ", rep.trace.start)
        for s in rep.trace.steps:
            print(f"   --{s.rule}@{list(s.position)}--> {s.after}")
