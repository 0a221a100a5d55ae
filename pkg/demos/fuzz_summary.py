"""Check every redex of a batch of generated terms and summarize."""

import sys

from ipcfat.gen import GenConfig
from ipcfat.harness import fuzz

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 200
rep = fuzz(GenConfig(seed=42), samples)
print(f"{samples} terms")
for rule, c in rep.counts.items():
    if c["checked"]:
        print(f"  {rule:<10} {c['checked']:>5} checked  {c['identity']:>5} identity  "
              f"{c['reached']:>5} reached  {c['joined']:>3} joined  {c['failed']:>3} failed")
print("totals:", rep.totals())
