"""Cubic-time string recognition for regular-form TAGs.

The compiled tree automaton's yield language is context-free: each transition
``sigma(q1 .. qn) -> q`` becomes a production ``q -> q1 .. qn`` with the node
label forgotten. After binarization the chart is filled CKY style. Cells are
kept as bitsets over positions, so combining two cells is a single integer
AND and the loop count is quadratic in the input length for a fixed grammar;
the bit operations themselves carry the remaining linear factor.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .automaton import TreeAutomaton, compile_regular_tag
from .errors import UnknownToken
from .grammar import TagGrammar
from .trees import EPSILON


@dataclass(frozen=True)
class YieldGrammar:
    """Binarized CFG over automaton states (plus fresh binarization symbols)."""

    binary: tuple  # (lhs, left, right)
    unary: tuple  # (lhs, rhs)
    lexical: tuple  # (lhs, terminal)
    nullable_rules: tuple  # lhs of lhs -> epsilon
    starts: frozenset

    @property
    def terminals(self):
        return {t for _, t in self.lexical}


def derive_yield_cfg(a: TreeAutomaton) -> YieldGrammar:
    binary, unary, lexical, empty = set(), set(), set(), set()
    fresh = 0
    for (sym, qs), targets in sorted(a.transitions.items(), key=lambda kv: repr(kv[0])):
        for q in sorted(targets, key=repr):
            if not qs:
                if sym == EPSILON:
                    empty.add(q)
                else:
                    lexical.add((q, sym))
            elif len(qs) == 1:
                unary.add((q, qs[0]))
            else:
                # left-nested: ((q1 q2) q3) ... qn
                left = qs[0]
                for k in range(1, len(qs) - 1):
                    fresh += 1
                    sym_k = ("bin", fresh)
                    binary.add((sym_k, left, qs[k]))
                    left = sym_k
                binary.add((q, left, qs[-1]))
    return YieldGrammar(
        binary=tuple(sorted(binary, key=repr)),
        unary=tuple(sorted(unary, key=repr)),
        lexical=tuple(sorted(lexical, key=repr)),
        nullable_rules=tuple(sorted(empty, key=repr)),
        starts=frozenset(a.finals),
    )


def nullable_symbols(yg: YieldGrammar) -> set:
    nullable = set(yg.nullable_rules)
    changed = True
    while changed:
        changed = False
        for lhs, rhs in yg.unary:
            if lhs not in nullable and rhs in nullable:
                nullable.add(lhs)
                changed = True
        for lhs, left, right in yg.binary:
            if lhs not in nullable and left in nullable and right in nullable:
                nullable.add(lhs)
                changed = True
    return nullable


class Recognizer:
    """CKY over a yield grammar, with nullable symbols folded into unit links."""

    def __init__(self, yg: YieldGrammar):
        self.grammar = yg
        self.nullable = nullable_symbols(yg)
        symbols = set(yg.starts) | set(self.nullable)
        for lhs, rhs in yg.unary:
            symbols |= {lhs, rhs}
        for lhs, left, right in yg.binary:
            symbols |= {lhs, left, right}
        for lhs, _ in yg.lexical:
            symbols.add(lhs)
        self.symbols = sorted(symbols, key=repr)
        self.index = {s: i for i, s in enumerate(self.symbols)}

        # unit-like links: child spans the same cell as its parent
        up = defaultdict(set)
        for lhs, rhs in yg.unary:
            up[rhs].add(lhs)
        for lhs, left, right in yg.binary:
            if right in self.nullable:
                up[left].add(lhs)
            if left in self.nullable:
                up[right].add(lhs)
        self._closure = {}
        for s in self.symbols:
            seen = {s}
            todo = [s]
            while todo:
                for p in up.get(todo.pop(), ()):
                    if p not in seen:
                        seen.add(p)
                        todo.append(p)
            self._closure[s] = frozenset(seen)

        self.lexicon = defaultdict(set)
        for lhs, t in yg.lexical:
            self.lexicon[t] |= self._closure[lhs]
        self.rules = tuple((self.index[l], self.index[r], lhs) for lhs, l, r in yg.binary)

    def chart(self, tokens) -> dict:
        """Nonempty cells ``(i, j) -> set of symbols`` deriving ``tokens[i:j]``."""
        tokens = list(tokens)
        n = len(tokens)
        nsym = len(self.symbols)
        ends = [[0] * (n + 1) for _ in range(nsym)]  # symbol -> start -> bitset of ends
        starts = [[0] * (n + 1) for _ in range(nsym)]  # symbol -> end -> bitset of starts
        cells = {}
        closure, index, rules = self._closure, self.index, self.rules

        def record(i, j, found):
            full = set()
            for s in found:
                full |= closure[s]
            if full:
                cells[i, j] = full
                for s in full:
                    k = index[s]
                    ends[k][i] |= 1 << j
                    starts[k][j] |= 1 << i

        for i, tok in enumerate(tokens):
            record(i, i + 1, self.lexicon.get(tok, ()))
        for width in range(2, n + 1):
            for i in range(0, n - width + 1):
                j = i + width
                found = set()
                for left, right, lhs in rules:
                    if ends[left][i] & starts[right][j]:
                        found.add(lhs)
                if found:
                    record(i, j, found)
        return cells

    def accepts(self, tokens) -> bool:
        tokens = list(tokens)
        if not tokens:
            return any(s in self.nullable for s in self.grammar.starts)
        cell = self.chart(tokens).get((0, len(tokens)), ())
        return any(s in cell for s in self.grammar.starts)


@lru_cache(maxsize=64)
def recognizer_for(g: TagGrammar) -> Recognizer:
    return Recognizer(derive_yield_cfg(compile_regular_tag(g)))


def tokenize(w) -> list:
    return w.split() if isinstance(w, str) else list(w)


def recognize(g: TagGrammar, w) -> bool:
    """Is ``w`` (a token list or space-separated string) in L(g)?"""
    tokens = tokenize(w)
    for t in tokens:
        if t not in g.terminals:
            raise UnknownToken(f"token {t!r} is not a terminal of the grammar")
    return recognizer_for(g).accepts(tokens)
