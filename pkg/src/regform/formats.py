"""Line-oriented text formats for grammars and CFGs.

Grammar files::

    # comment
    start: S
    init alpha1: (S a)
    aux beta: (S a S*)

Tree names after ``init``/``aux`` are optional. CFG files hold one
``LHS -> sym ...`` (or ``LHS -> <eps>``) production per line with an optional
``start: X`` header; otherwise the first left-hand side is the start symbol.
"""
from __future__ import annotations

import re

from .errors import InvalidCfg, ParseError
from .grammar import TagGrammar, validate_grammar
from .lexicalizer import Cfg
from .trees import EPSILON, format_tree, nodes, parse_tree

NONTERMINAL = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
TERMINAL = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_ENTRY = re.compile(r"(init|aux)(?:\s+([A-Za-z_][A-Za-z0-9_]*))?\s*:\s*")
_START = re.compile(r"start\s*:\s*(\S*)\s*\Z")


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _symbol_ok(label: str) -> bool:
    return label == EPSILON or bool(NONTERMINAL.match(label) or TERMINAL.match(label))


def _nth_foot_column(text: str, offset: int, n: int) -> int:
    found = [m.start() for m in re.finditer(r"\*", text)]
    return offset + found[n] + 1 if n < len(found) else offset + 1


def parse_grammar_file(text: str) -> TagGrammar:
    start = None
    entries = {"init": [], "aux": []}
    where = {}  # tree name -> (line, column)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _START.match(body)
        if m:
            if not NONTERMINAL.match(m.group(1)):
                raise ParseError(f"start symbol {m.group(1)!r} is not a non-terminal", lineno,
                                 indent + m.start(1) + 1)
            if start is not None:
                raise ParseError("duplicate start: line", lineno, indent + 1)
            start = m.group(1)
            continue
        m = _ENTRY.match(body)
        if not m:
            raise ParseError("expected 'start:', 'init:' or 'aux:'", lineno, indent + 1)
        kind, name = m.group(1), m.group(2)
        offset = indent + m.end()
        tree = parse_tree(body[m.end():], lineno, offset)
        for _, node in nodes(tree):
            if not _symbol_ok(node.label):
                col = offset + body[m.end():].find(node.label) + 1
                raise ParseError(f"bad symbol {node.label!r}", lineno, col)
        feet = sum(1 for _, node in nodes(tree) if node.foot)
        if feet > 1:
            raise ParseError("more than one foot", lineno, _nth_foot_column(body[m.end():], offset, 1))
        if kind == "init" and feet:
            raise ParseError("initial tree has a foot", lineno, _nth_foot_column(body[m.end():], offset, 0))
        if kind == "aux" and not feet:
            raise ParseError("auxiliary tree has no foot", lineno, offset + 1)
        if name is None:
            name = f"{'alpha' if kind == 'init' else 'beta'}{len(entries[kind]) + 1}"
        if name in where:
            raise ParseError(f"duplicate tree name {name!r}", lineno, indent + m.start(2) + 1)
        where[name] = (lineno, offset + 1)
        entries[kind].append((name, tree))
    if start is None:
        raise ParseError("no start symbol", 1, 1)
    g = TagGrammar.build(start, entries["init"], entries["aux"])
    problems = validate_grammar(g)
    if problems:
        v = problems[0]
        line, col = where.get(v.tree, (1, 1))
        raise ParseError(str(v), line, col)
    return g


def render_grammar(g: TagGrammar) -> str:
    lines = [f"start: {g.start}"]
    lines += [f"init {name}: {format_tree(t)}" for name, t in g.initial]
    lines += [f"aux {name}: {format_tree(t)}" for name, t in g.auxiliary]
    return "\n".join(lines) + "\n"


def parse_cfg_file(text: str) -> Cfg:
    start = None
    productions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _START.match(body)
        if m:
            if not NONTERMINAL.match(m.group(1)):
                raise ParseError(f"start symbol {m.group(1)!r} is not a non-terminal", lineno,
                                 indent + m.start(1) + 1)
            start = m.group(1)
            continue
        arrow = body.find("->")
        if arrow < 0:
            m = re.match(r"\S+\s*", body)
            raise ParseError("expected '->'", lineno, indent + m.end() + 1)
        if body.count("->") > 1:
            raise ParseError("more than one '->'", lineno, indent + body.find("->", arrow + 2) + 1)
        lhs = body[:arrow].strip()
        if not NONTERMINAL.match(lhs):
            raise ParseError(f"left-hand side {lhs!r} is not a non-terminal", lineno, indent + 1)
        rhs = body[arrow + 2:].split()
        if not rhs:
            raise ParseError("empty right-hand side (write <eps>)", lineno, indent + arrow + 3)
        if rhs == [EPSILON]:
            rhs = []
        for sym in rhs:
            if sym == EPSILON or not _symbol_ok(sym):
                col = indent + arrow + 2 + body[arrow + 2:].find(sym) + 1
                raise ParseError(f"bad symbol {sym!r}", lineno, col)
        productions.append((lhs, rhs))
    if start is None and not productions:
        raise ParseError("no productions and no start symbol", 1, 1)
    try:
        return Cfg.build(productions, start)
    except InvalidCfg as exc:
        raise ParseError(str(exc), 1, 1) from None


def render_cfg(c: Cfg) -> str:
    lines = [f"start: {c.start}"]
    for lhs, rhs in c.productions:
        lines.append(f"{lhs} -> {' '.join(rhs) if rhs else EPSILON}")
    return "\n".join(lines) + "\n"

