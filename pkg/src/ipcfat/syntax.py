"""Concrete syntax for both calculi.

    terms   \\x:A. M   M N   <M, N>   M.1   inl[A|B] M   inr[A|B] M
            case M of {x:A => P | y:B => Q} : C   abort[A] M
            /\\X. M   M [Y]                       (atomic System F only)
    types   X   _|_   A -> B   A /\\ B   A \\/ B   forall X. A

Application is left-associative, ``->`` is right-associative, and ``/\\``,
``\\/`` must be parenthesized when nested inside one another.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from . import fat, ipc, names


class ParseError(SyntaxError):
    def __init__(self, message, text, offset):
        line = text.count("\n", 0, offset) + 1
        col = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.lineno, self.offset, self.line, self.column = line, col, line, col

    def __str__(self):
        return self.msg


_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<sym>_\|_|\\/|/\\|\\|->|=>|[<>{}()\[\],.:|])
  | (?P<num>[0-9]+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

KEYWORDS = {"case", "of", "inl", "inr", "abort", "forall"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text):
    out, i = [], 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", text, i)
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), i))
        i = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, calculus):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.fat = calculus == "fat"
        self.mod = fat if self.fat else ipc
        self.seen = set()

    # token plumbing
    def peek(self, k=0):
        return self.toks[self.i + k]

    def at(self, text):
        t = self.peek()
        return t.kind in ("sym", "id") and t.text == text

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg}, found {tok.text or 'end of input'!r}", self.text, tok.pos)

    def expect(self, text):
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.next()

    def ident(self):
        t = self.peek()
        if t.kind != "id" or t.text in KEYWORDS:
            self.fail("expected an identifier")
        self.next()
        self.seen.add(t.text)
        return t.text

    def done(self):
        if self.peek().kind != "eof":
            self.fail("trailing input")

    # types
    def type0(self):
        if self.at("forall"):
            if not self.fat:
                self.fail("forall is not an IPC connective")
            self.next()
            x = self.ident()
            self.expect(".")
            return fat.Forall(x, self.type0())
        return self.type1()

    def type1(self):
        left = self.type2()
        if self.at("->"):
            self.next()
            return self.mod.Imp(left, self.type0())
        return left

    def type2(self):
        left = self.type3()
        while self.at("/\\") or self.at("\\/"):
            op = self.next()
            if op.text == "\\/" and self.fat:
                self.fail("disjunction is not an atomic System F connective", op)
            ctor = self.mod.And if op.text == "/\\" else ipc.Or
            left = ctor(left, self.type3())
        return left

    def type3(self):
        if self.at("("):
            self.next()
            a = self.type0()
            self.expect(")")
            return a
        if self.at("_|_"):
            if self.fat:
                self.fail("absurdity is not an atomic System F connective")
            self.next()
            return ipc.Bot()
        if self.at("forall"):
            return self.type0()
        return self.mod.TVar(self.ident())

    # terms
    def term0(self):
        m = self.mod
        if self.at("\\"):
            self.next()
            x = self.ident()
            self.expect(":")
            a = self.type0()
            self.expect(".")
            return m.Lam(x, a, self.term0())
        if self.at("/\\"):
            if not self.fat:
                self.fail("type abstraction is not IPC syntax")
            self.next()
            x = self.ident()
            self.expect(".")
            return fat.TyLam(x, self.term0())
        if self.at("case") and not self.fat:
            self.next()
            scrut = self.term0()
            self.expect("of")
            self.expect("{")
            x = self.ident()
            self.expect(":")
            a = self.type0()
            self.expect("=>")
            p = self.term0()
            self.expect("|")
            y = self.ident()
            self.expect(":")
            b = self.type0()
            self.expect("=>")
            q = self.term0()
            self.expect("}")
            self.expect(":")
            return ipc.Case(scrut, x, a, p, y, b, q, self.type0())
        return self.term1()

    def _starts_arg(self):
        t = self.peek()
        if t.kind == "id":
            return t.text not in KEYWORDS or t.text in ("inl", "inr", "abort")
        return t.kind == "sym" and t.text in ("(", "<")

    def term1(self):
        head = self.prefixed()
        while self._starts_arg():
            if self.peek().text in ("inl", "inr", "abort"):
                self.fail("parenthesize injections and aborts used as arguments")
            head = self.mod.App(head, self.term2())
        return head

    def prefixed(self):
        if (self.at("inl") or self.at("inr")) and not self.fat:
            i = 1 if self.next().text == "inl" else 2
            self.expect("[")
            a = self.type0()
            self.expect("|")
            b = self.type0()
            self.expect("]")
            return ipc.Inj(i, self.term2(), a, b)
        if self.at("abort") and not self.fat:
            self.next()
            self.expect("[")
            a = self.type0()
            self.expect("]")
            return ipc.Abort(self.term2(), a)
        return self.term2()

    def term2(self):
        t = self.atom()
        while True:
            if self.at(".") and self.peek(1).kind == "num":
                self.next()
                n = self.next()
                if n.text not in ("1", "2"):
                    self.fail("projection index must be 1 or 2", n)
                t = self.mod.Proj(int(n.text), t)
            elif self.at("[") and self.fat:
                self.next()
                y = self.ident()
                self.expect("]")
                t = fat.TyApp(t, fat.TVar(y))
            else:
                return t

    def atom(self):
        if self.at("("):
            self.next()
            t = self.term0()
            self.expect(")")
            return t
        if self.at("<"):
            self.next()
            a = self.term0()
            self.expect(",")
            b = self.term0()
            self.expect(">")
            return self.mod.Pair(a, b)
        return self.mod.Var(self.ident())


def _run(text, calculus, rule):
    p = _Parser(text, calculus)
    out = getattr(p, rule)()
    p.done()
    names.reserve(p.seen)
    return out


def parse_ipc(text: str) -> ipc.Term:
    return _run(text, "ipc", "term0")


def parse_fat(text: str) -> fat.Term:
    return _run(text, "fat", "term0")


def parse_ipc_type(text: str) -> ipc.Type:
    return _run(text, "ipc", "type0")


def parse_fat_type(text: str) -> fat.Type:
    return _run(text, "fat", "type0")


# ---------------------------------------------------------------- printing

def _paren(s, inner, outer):
    return f"({s})" if inner < outer else s


def _type(a, level=0):
    match a:
        case ipc.TVar(n) | fat.TVar(n):
            return n
        case ipc.Bot():
            return "_|_"
        case ipc.Imp(l, r) | fat.Imp(l, r):
            return _paren(f"{_type(l, 2)} -> {_type(r, 1)}", 1, level)
        case ipc.And(l, r) | fat.And(l, r):
            return _paren(f"{_type(l, 3)} /\\ {_type(r, 3)}", 2, level)
        case ipc.Or(l, r):
            return _paren(f"{_type(l, 3)} \\/ {_type(r, 3)}", 2, level)
        case fat.Forall(x, b):
            return _paren(f"forall {x}. {_type(b)}", 0, level)
    raise TypeError(a)


def print_ipc_type(a: ipc.Type) -> str:
    return _type(a)


def print_fat_type(a: fat.Type) -> str:
    return _type(a)


def _term(t, level=0):
    match t:
        case ipc.Var(x) | fat.Var(x):
            return x
        case ipc.Lam(x, a, b) | fat.Lam(x, a, b):
            return _paren(f"\\{x}:{_type(a)}. {_term(b)}", 0, level)
        case fat.TyLam(x, b):
            return _paren(f"/\\{x}. {_term(b)}", 0, level)
        case ipc.Case(m, x, a, p, y, b, q, c):
            s = f"case {_term(m, 1)} of {{{x}:{_type(a)} => {_term(p)} | {y}:{_type(b)} => {_term(q)}}} : {_type(c)}"
            return _paren(s, 0, level)
        case ipc.App(f, a) | fat.App(f, a):
            # an applied injection or abort reads better bracketed
            head = _term(f, 2) if isinstance(f, (ipc.Inj, ipc.Abort)) else _term(f, 1)
            return _paren(f"{head} {_term(a, 2)}", 1, level)
        case ipc.Inj(i, m, a, b):
            return _paren(f"{'inl' if i == 1 else 'inr'}[{_type(a)}|{_type(b)}] {_term(m, 2)}", 1, level)
        case ipc.Abort(m, a):
            return _paren(f"abort[{_type(a)}] {_term(m, 2)}", 1, level)
        case ipc.Proj(i, m) | fat.Proj(i, m):
            return f"{_term(m, 2)}.{i}"
        case fat.TyApp(m, a):
            return f"{_term(m, 2)} [{_type(a)}]"
        case ipc.Pair(a, b) | fat.Pair(a, b):
            return f"<{_term(a)}, {_term(b)}>"
    raise TypeError(t)


def print_ipc(t: ipc.Term) -> str:
    return _term(t)


def print_fat(t: fat.Term) -> str:
    return _term(t)


# ---------------------------------------------------------------- term files

_DECL = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_']*)\s*:(?!\s*[:=])\s*(.+?)\s*$")


def parse_term_file(text: str, calculus="ipc"):
    """Split a term file into (context, term).

    Lines of the form ``name : type`` declare context entries, ``#`` starts
    a comment, and everything else is the term itself.
    """
    parse_type = parse_fat_type if calculus == "fat" else parse_ipc_type
    ctx, body = {}, []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        m = _DECL.match(line)
        if m and m.group(1) not in KEYWORDS:
            if m.group(1) in ctx:
                raise ParseError(f"{m.group(1)} declared twice", text, text.find(raw))
            ctx[m.group(1)] = parse_type(m.group(2))
            body.append("")  # keep line numbers of the term intact
        else:
            body.append(line)
    source = "\n".join(body)
    if not source.strip():
        raise ParseError("no term in file", text, len(text))
    return ctx, (parse_fat if calculus == "fat" else parse_ipc)(source)


def load_term_file(path, calculus="ipc"):
    return parse_term_file(Path(path).read_text(encoding="utf-8"), calculus)
