"""Experiment spec language: lexer, recursive-descent parser, printer.

A spec is a sequence of one-line declarations followed by exactly one verb::

    group G = semidirect_Z_Z2
    subgroup H = Z_factor
    system base = x1(levels=3, truncate=3)
    system co = coinduce(base, H, G)
    tuple T = [prod{(0, 0): U(1, 0), (0, 1): U(1, 1)}]
    refute system=co tuple=T pool=key_lemma(1, 1, 4) n=3 anchor=e

``#`` starts a comment.  Newlines inside brackets are ignored.  Names must be
declared before use; builtin functions are arity-checked at parse time.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ArityError, SpecError, UndeclaredNameError

DECL_KINDS = ("group", "subgroup", "system", "region", "tuple", "cover", "pool")

# name -> (min positional, max positional, allowed keywords)
FUNCS = {
    "Zmod": (1, 1, ()),
    "product": (2, 2, ()),
    "multiples": (1, 1, ()),
    "core": (1, 1, ()),
    "full_shift": (2, 2, ()),
    "sft": (1, 1, ()),
    "trivial_finite": (2, 2, ()),
    "product_system": (2, 2, ()),
    "x1": (0, 0, ("levels", "truncate")),
    "coinduce": (2, 3, ("section",)),
    "dihedral_pair": (1, 1, ()),
    "U": (2, 2, ()),
    "a": (1, 1, ()),
    "pre": (2, 2, ()),
    "ball": (1, 1, ()),
    "key_lemma": (3, 3, ()),
}
BRACED = ("cyl", "pts", "prod", "")
CONSTANTS = ("Z", "semidirect_Z_Z2", "whole", "trivial", "Z_factor", "e", "inf", "golden_mean")

VERBS = {
    "indep": (("system", "tuple", "pool"), ("cap",)),
    "maxindep": (("system", "tuple", "pool"), ("cap",)),
    "refute": (("system", "tuple", "pool", "n"), ("anchor", "cap")),
    "entropy": (("system", "cover", "n", "pool"), ("tuples", "cap")),
    "weakmix": (("system", "U1", "U2", "V1", "V2", "pool"), ()),
    "x1verify": ((), ("levels", "samples", "seed")),
    "coinduce-check": (("system",), ("tuple", "pool", "samples", "seed")),
}

# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple = ()
    kwargs: tuple = ()  # ((key, node), ...)


@dataclass(frozen=True)
class Braced:
    name: str
    entries: tuple = ()  # ((key node, value node or None), ...)


@dataclass(frozen=True)
class Tup:
    items: tuple


@dataclass(frozen=True)
class Lst:
    items: tuple


@dataclass(frozen=True)
class Decl:
    kind: str
    name: str
    expr: object
    parent: str = None


@dataclass(frozen=True)
class Verb:
    name: str
    kwargs: tuple  # ((key, node), ...)

    def get(self, key, default=None):
        for k, v in self.kwargs:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class ExperimentSpec:
    decls: tuple
    verb: Verb
    positions: dict = field(default=None, compare=False, hash=False, repr=False)

    def decl(self, name):
        for d in self.decls:
            if d.name == name:
                return d
        return None


# --------------------------------------------------------------------------
# Lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*)
  | (?P<punct>[=(),\[\]{}:\-])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def lex(text: str):
    toks = []
    line, col, pos, depth = 1, 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            if depth == 0:
                toks.append(Tok("nl", s, line, col))
            line, col = line + 1, 1
        elif kind in ("ws", "comment"):
            col += len(s)
        else:
            if kind == "punct" and s in "([{":
                depth += 1
            elif kind == "punct" and s in ")]}":
                depth = max(0, depth - 1)
            toks.append(Tok(kind, s, line, col))
            col += len(s)
        pos = m.end()
    toks.append(Tok("eof", "", line, col))
    return toks


# --------------------------------------------------------------------------
# Parser

class _Parser:
    def __init__(self, text):
        self.toks = lex(text)
        self.i = 0
        self.declared = {}
        self.positions = {}

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return SpecError(msg, tok.line, tok.col)

    def expect(self, kind, text=None):
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text if text is not None else kind
            got = t.text or t.kind
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.advance()

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def skip_nl(self):
        while self.at("nl"):
            self.advance()

    def parse(self):
        self.skip_nl()
        if self.at("eof"):
            raise self.error("empty spec: expected a declaration or verb")
        decls = []
        verb = None
        while not self.at("eof"):
            t = self.tok
            if t.kind != "name":
                raise self.error(f"expected a declaration or verb, found {t.text!r}")
            if verb is not None:
                raise self.error("only one verb is allowed and it must come last")
            if t.text in DECL_KINDS:
                decls.append(self.decl())
            elif t.text in VERBS:
                verb = self.verb()
            else:
                raise self.error(f"unknown declaration or verb {t.text!r}")
            if not self.at("eof"):
                self.expect("nl")
            self.skip_nl()
        if verb is None:
            raise self.error("spec has no verb")
        return ExperimentSpec(tuple(decls), verb, self.positions)

    def decl(self):
        kind = self.advance().text
        nt = self.expect("name")
        if nt.text in self.declared or nt.text in CONSTANTS or nt.text in FUNCS:
            raise SpecError(f"name {nt.text!r} is already defined", nt.line, nt.col)
        self.expect("punct", "=")
        if kind in ("tuple", "cover"):
            if not self.at("punct", "["):
                raise self.error(f"{kind} expects a bracketed list")
        expr = self.expr()
        parent = None
        if kind == "subgroup" and self.at("name", "in"):
            self.advance()
            pt = self.expect("name")
            self.check_name(pt)
            parent = pt.text
        self.declared[nt.text] = kind
        self.positions[nt.text] = (nt.line, nt.col)
        return Decl(kind, nt.text, expr, parent)

    def verb(self):
        vt = self.advance()
        required, optional = VERBS[vt.text]
        kwargs = []
        seen = set()
        while self.at("name"):
            kt = self.advance()
            if kt.text not in required and kt.text not in optional:
                raise ArityError(f"verb {vt.text!r} takes no argument {kt.text!r}", kt.line, kt.col)
            if kt.text in seen:
                raise ArityError(f"argument {kt.text!r} given twice", kt.line, kt.col)
            seen.add(kt.text)
            self.expect("punct", "=")
            kwargs.append((kt.text, self.expr()))
        missing = [r for r in required if r not in seen]
        if missing:
            raise ArityError(f"verb {vt.text!r} is missing {', '.join(missing)}", vt.line, vt.col)
        return Verb(vt.text, tuple(kwargs))

    def check_name(self, t):
        if t.text not in self.declared and t.text not in CONSTANTS:
            raise UndeclaredNameError(t.text, t.line, t.col)

    def expr(self):
        t = self.tok
        if self.at("punct", "-"):
            self.advance()
            it = self.expect("int")
            return Int(-int(it.text))
        if t.kind == "int":
            self.advance()
            return Int(int(t.text))
        if self.at("punct", "("):
            self.advance()
            items = [self.expr()]
            while self.at("punct", ","):
                self.advance()
                items.append(self.expr())
            self.expect("punct", ")")
            if len(items) == 1:
                return items[0]
            return Tup(tuple(items))
        if self.at("punct", "["):
            self.advance()
            items = []
            if not self.at("punct", "]"):
                items.append(self.expr())
                while self.at("punct", ","):
                    self.advance()
                    items.append(self.expr())
            self.expect("punct", "]")
            return Lst(tuple(items))
        if self.at("punct", "{"):
            return self.braced("", t)
        if t.kind == "name":
            self.advance()
            if self.at("punct", "("):
                return self.call(t)
            if self.at("punct", "{"):
                if t.text not in BRACED:
                    raise SpecError(f"{t.text!r} does not take braces", t.line, t.col)
                return self.braced(t.text, t)
            if t.text in FUNCS:
                raise ArityError(f"{t.text!r} must be called with arguments", t.line, t.col)
            self.check_name(t)
            return Name(t.text)
        raise self.error(f"expected an expression, found {t.text or t.kind!r}")

    def call(self, nt):
        if nt.text not in FUNCS:
            if nt.text in self.declared or nt.text in CONSTANTS:
                raise SpecError(f"{nt.text!r} is not callable", nt.line, nt.col)
            raise UndeclaredNameError(nt.text, nt.line, nt.col)
        lo, hi, kws = FUNCS[nt.text]
        self.expect("punct", "(")
        args, kwargs = [], []
        while not self.at("punct", ")"):
            if self.at("name") and self.toks[self.i + 1].kind == "punct" and self.toks[self.i + 1].text == "=":
                kt = self.advance()
                if kt.text not in kws:
                    raise ArityError(f"{nt.text}() takes no keyword {kt.text!r}", kt.line, kt.col)
                self.advance()
                kwargs.append((kt.text, self.expr()))
            else:
                if kwargs:
                    raise self.error("positional argument after keyword argument")
                args.append(self.expr())
            if not self.at("punct", ","):
                break
            self.advance()
        self.expect("punct", ")")
        if not lo <= len(args) <= hi:
            want = str(lo) if lo == hi else f"{lo}-{hi}"
            raise ArityError(f"{nt.text}() takes {want} positional arguments, got {len(args)}",
                             nt.line, nt.col)
        return Call(nt.text, tuple(args), tuple(kwargs))

    def braced(self, name, nt):
        self.expect("punct", "{")
        entries = []
        while not self.at("punct", "}"):
            k = self.expr()
            v = None
            if self.at("punct", ":"):
                self.advance()
                v = self.expr()
            entries.append((k, v))
            if not self.at("punct", ","):
                break
            self.advance()
        self.expect("punct", "}")
        return Braced(name, tuple(entries))


def parse_spec(text: str) -> ExperimentSpec:
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Printer

def print_expr(node) -> str:
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Call):
        parts = [print_expr(a) for a in node.args]
        parts += [f"{k}={print_expr(v)}" for k, v in node.kwargs]
        return f"{node.name}({', '.join(parts)})"
    if isinstance(node, Braced):
        parts = [print_expr(k) if v is None else f"{print_expr(k)}: {print_expr(v)}"
                 for k, v in node.entries]
        return f"{node.name}{{{', '.join(parts)}}}"
    if isinstance(node, Tup):
        return "(" + ", ".join(print_expr(x) for x in node.items) + ")"
    if isinstance(node, Lst):
        return "[" + ", ".join(print_expr(x) for x in node.items) + "]"
    raise TypeError(f"not an AST node: {node!r}")


def print_spec(spec: ExperimentSpec) -> str:
    lines = []
    for d in spec.decls:
        line = f"{d.kind} {d.name} = {print_expr(d.expr)}"
        if d.parent:
            line += f" in {d.parent}"
        lines.append(line)
    v = spec.verb
    args = " ".join(f"{k}={print_expr(x)}" for k, x in v.kwargs)
    lines.append(f"{v.name} {args}".rstrip())
    return "\n".join(lines) + "\n"
