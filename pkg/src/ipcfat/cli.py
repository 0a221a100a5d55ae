"""Command-line front end.

Exit status: 0 on success, 1 when a check fails (a Failed verdict, an
ill-typed term, a missing redex, exhausted fuel), 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fat, ipc
from ._paths import InvalidPosition, NotARedex
from .gen import GenConfig
from .harness import MAX_STEPS, check_simulation, fuzz
from .rules import FAT_BETAETA, FAT_RULES, IPC_RULES, RuleId
from .syntax import ParseError, load_term_file
from .translate import TranslationKind, translate, translate_context


class UsageError(Exception):
    pass


def _rule(text):
    try:
        return RuleId.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _position(text):
    if text in ("", "root", "."):
        return ()
    try:
        return tuple(int(p) for p in text.split("."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad position {text!r}; use dot-separated child indices")


def _load(path, calculus):
    try:
        return load_term_file(path, calculus)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_typecheck(args):
    ctx, t = _load(args.file, args.calculus)
    check = fat.typecheck_fat if args.calculus == "fat" else ipc.typecheck
    print(check(ctx, t))
    return 0


def cmd_translate(args):
    ctx, t = _load(args.file, "ipc")
    out = translate(t, args.kind)
    if args.context:
        for x, a in translate_context(ctx).items():
            print(f"{x} : {a}")
    print(out)
    return 0


def cmd_reduce(args):
    ctx, t = _load(args.file, args.calculus)
    mod = fat if args.calculus == "fat" else ipc
    allowed = FAT_RULES if args.calculus == "fat" else IPC_RULES
    if args.rule not in allowed:
        raise UsageError(f"{args.rule} is not a rule of {args.calculus}")
    pos = args.pos
    if pos is None:
        found = mod.redexes(t, {args.rule})
        if not found:
            print(f"no {args.rule} redex", file=sys.stderr)
            return 1
        pos = found[0][0]
    print(mod.step_at(t, pos, args.rule))
    return 0


def cmd_normalize(args):
    ctx, t = _load(args.file, args.calculus)
    if args.calculus == "ipc":
        t = translate(t, args.kind)
    nf, steps = fat.normalize_fat_steps(t, FAT_BETAETA, args.fuel)
    print(nf)
    print(f"{steps} steps", file=sys.stderr)
    return 0


def cmd_simcheck(args):
    ctx, t = _load(args.file, "ipc")
    if args.rule not in IPC_RULES:
        raise UsageError(f"{args.rule} is not an IPC rule")
    sites = [args.pos] if args.pos is not None else [p for p, _ in ipc.redexes(t, {args.rule})]
    if not sites:
        print(f"no {args.rule} redex", file=sys.stderr)
        return 1
    reports = [check_simulation(t, ctx, p, args.rule, args.kind, args.max_steps) for p in sites]
    _emit([r.to_json() for r in reports])
    for r in reports:
        print(f"{r.rule} at {list(r.position)}: {r.verdict}", file=sys.stderr)
    return 1 if any(r.failed for r in reports) else 0


def cmd_fuzz(args):
    cfg = GenConfig(seed=args.seed, size_budget=args.size)
    rep = fuzz(cfg, args.samples, args.kind, args.max_steps)
    text = rep.dumps()
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    t = rep.totals()
    print(f"{t['checked']} redexes: {t['identity']} identity, {t['reached']} reached, "
          f"{t['joined']} joined, {t['failed']} failed", file=sys.stderr)
    return 0 if rep.ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="ipcfat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    kind = dict(type=TranslationKind, choices=list(TranslationKind), default=TranslationKind.OPTIMIZED)

    s = sub.add_parser("typecheck", help="print the type of a term file")
    s.add_argument("file")
    s.add_argument("--calculus", choices=["ipc", "fat"], default="ipc")
    s.set_defaults(func=cmd_typecheck)

    s = sub.add_parser("translate", help="translate an IPC term file to atomic System F")
    s.add_argument("file")
    s.add_argument("--kind", **kind)
    s.add_argument("--context", action="store_true", help="also print the translated context")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("reduce", help="contract one redex")
    s.add_argument("file")
    s.add_argument("--rule", type=_rule, required=True)
    s.add_argument("--pos", type=_position, help="dot-separated child indices; default: first redex")
    s.add_argument("--calculus", choices=["ipc", "fat"], default="ipc")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("normalize", help="βη-normalize an atomic System F term")
    s.add_argument("file")
    s.add_argument("--fuel", type=int, default=None)
    s.add_argument("--calculus", choices=["ipc", "fat"], default="fat",
                   help="with ipc, the term is translated first")
    s.add_argument("--kind", **kind)
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("simcheck", help="check the simulation of a rule's redexes")
    s.add_argument("file")
    s.add_argument("--rule", type=_rule, required=True)
    s.add_argument("--pos", type=_position)
    s.add_argument("--kind", **kind)
    s.add_argument("--max-steps", type=int, default=MAX_STEPS)
    s.set_defaults(func=cmd_simcheck)

    s = sub.add_parser("fuzz", help="check every redex of generated terms")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--report", help="write the JSON report here instead of standard output")
    s.add_argument("--size", type=int, default=GenConfig().size_budget)
    s.add_argument("--kind", **kind)
    s.add_argument("--max-steps", type=int, default=MAX_STEPS)
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if getattr(args, "fuel", None) is not None and args.fuel <= 0:
        print("error: --fuel must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ParseError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ipc.TypeCheckError, fat.TypeCheckError) as e:
        print(f"type error: {e}", file=sys.stderr)
        return 1
    except (NotARedex, InvalidPosition) as e:
        print(f"cannot reduce: {e}", file=sys.stderr)
        return 1
    except fat.FuelExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def cli(argv=None):
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
