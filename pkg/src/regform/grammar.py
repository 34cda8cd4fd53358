"""TAG grammars, well-formedness diagnostics and improper-tree elimination."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidGrammar
from .trees import (
    EPSILON,
    Tree,
    foot_address,
    is_nonterminal_name,
    nodes,
    relabel,
    spine,
    is_proper,
)


@dataclass(frozen=True)
class Violation:
    tree: str
    address: tuple
    message: str

    def __str__(self):
        where = ".".join(map(str, self.address)) or "root"
        return f"{self.tree}@{where}: {self.message}"


@dataclass(frozen=True)
class TagGrammar:
    """The five-tuple: terminals, non-terminals, initial trees, auxiliary trees, start.

    ``initial`` and ``auxiliary`` are tuples of ``(name, tree)`` pairs so the
    grammar stays hashable.
    """

    terminals: frozenset
    nonterminals: frozenset
    initial: tuple
    auxiliary: tuple
    start: str

    @classmethod
    def build(cls, start: str, initial: Iterable = (), auxiliary: Iterable = (),
              terminals=None, nonterminals=None) -> TagGrammar:
        """Assemble a grammar, naming unnamed trees and inferring the alphabet.

        Trees may be given bare or as ``(name, tree)``. Symbol kinds are read off
        the case convention unless given explicitly.
        """
        init = _named(initial, "alpha")
        aux = _named(auxiliary, "beta")
        if terminals is None or nonterminals is None:
            seen = {start}
            for _, t in init + aux:
                seen.update(n.label for _, n in nodes(t))
            seen.discard(EPSILON)
            if nonterminals is None:
                nonterminals = {s for s in seen if is_nonterminal_name(s)}
            if terminals is None:
                terminals = {s for s in seen if not is_nonterminal_name(s)}
        return cls(frozenset(terminals), frozenset(nonterminals), tuple(init), tuple(aux), start)

    @property
    def trees(self) -> tuple:
        return self.initial + self.auxiliary

    def with_auxiliary(self, extra: Iterable) -> TagGrammar:
        return TagGrammar(self.terminals, self.nonterminals, self.initial,
                          self.auxiliary + tuple(extra), self.start)


def _named(trees, prefix):
    out = []
    for i, item in enumerate(trees, 1):
        if isinstance(item, Tree):
            out.append((f"{prefix}{i}", item))
        else:
            name, t = item
            out.append((name, t))
    return out


def validate_grammar(g: TagGrammar) -> list:
    """Every violated well-formedness condition, with tree name and address."""
    found = []
    if g.start not in g.nonterminals:
        found.append(Violation("<grammar>", (), f"start symbol {g.start!r} is not a non-terminal"))
    for sym in sorted(g.terminals & g.nonterminals):
        found.append(Violation("<grammar>", (), f"symbol {sym!r} is both terminal and non-terminal"))
    for sym in sorted(g.nonterminals):
        if not is_nonterminal_name(sym):
            found.append(Violation("<grammar>", (), f"non-terminal {sym!r} must start uppercase"))
    for sym in sorted(g.terminals):
        if is_nonterminal_name(sym) or sym == EPSILON:
            found.append(Violation("<grammar>", (), f"terminal {sym!r} must not start uppercase"))
    names = [n for n, _ in g.trees]
    for name in sorted({n for n in names if names.count(n) > 1}):
        found.append(Violation(name, (), "duplicate tree name"))
    alphabet = g.terminals | g.nonterminals | {EPSILON}
    for kind, group in (("initial", g.initial), ("auxiliary", g.auxiliary)):
        for name, t in group:
            found.extend(_tree_violations(name, t, kind, g, alphabet))
    return found


def _tree_violations(name, t, kind, g, alphabet):
    out = []
    feet = []
    anchors = 0
    for addr, node in nodes(t):
        if node.label not in alphabet:
            out.append(Violation(name, addr, f"label {node.label!r} not in alphabet"))
        if not node.is_leaf and node.label not in g.nonterminals:
            out.append(Violation(name, addr, "non-frontier terminal"))
        if node.foot:
            feet.append(addr)
            if not node.is_leaf:
                out.append(Violation(name, addr, "foot on non-frontier node"))
            elif node.label not in g.nonterminals:
                out.append(Violation(name, addr, "foot on terminal"))
            elif node.label != t.label:
                out.append(Violation(name, addr, "foot label ≠ root label"))
        if node.anchor:
            anchors += 1
            if not node.is_leaf or node.label not in g.terminals:
                out.append(Violation(name, addr, "anchor on non-terminal or interior node"))
    if anchors > 1:
        out.append(Violation(name, (), "more than one anchor"))
    if kind == "initial" and feet:
        out.append(Violation(name, feet[0], "initial tree has a foot"))
    if kind == "auxiliary":
        if not feet:
            out.append(Violation(name, (), "auxiliary tree has no foot"))
        elif len(feet) > 1:
            out.append(Violation(name, feet[1], "more than one foot"))
    return out


def require_valid(g: TagGrammar) -> None:
    problems = validate_grammar(g)
    if problems:
        raise InvalidGrammar(problems)


# -- improper-tree elimination ----------------------------------------------

@dataclass(frozen=True)
class ProjectionMap:
    """Refined symbol -> base symbol; total on the refined alphabet."""

    mapping: dict = field(hash=False)

    def __getitem__(self, key):
        return self.mapping[key]

    def __contains__(self, key):
        return key in self.mapping

    def keys(self):
        return self.mapping.keys()


def _refiner(g: TagGrammar):
    """Pick a separator so refined names cannot collide with existing ones."""
    existing = g.terminals | g.nonterminals
    sep = "_"
    while any(f"{x}{sep}{i}" in existing for x in existing for i in (0, 1)):
        sep += "_"
    return lambda x, i: x if x == EPSILON else f"{x}{sep}{i}"


def eliminate_improper(g: TagGrammar):
    """Relabel so no elementary auxiliary tree is improper.

    Each auxiliary tree is duplicated with root/foot index 0 and 1; interior
    spine nodes sharing the root's base label take the opposite index, and
    everything else takes index 0. Returns ``(refined grammar, projection)``.
    """
    require_valid(g)
    ref = _refiner(g)

    def zero(node, _addr):
        return ref(node.label, 0)

    initial = [(name, relabel(t, zero)) for name, t in g.initial]
    auxiliary = []
    for name, t in g.auxiliary:
        on_spine = set(spine(t))
        for b in (0, 1):
            def fn(node, addr, b=b, root=t.label, on_spine=on_spine):
                if addr == () or node.foot:
                    return ref(node.label, b)
                if addr in on_spine and node.label == root:
                    return ref(node.label, 1 - b)
                return ref(node.label, 0)
            auxiliary.append((f"{name}_{b}", relabel(t, fn)))

    mapping = {EPSILON: EPSILON}
    for x in g.terminals | g.nonterminals:
        for i in (0, 1):
            mapping[ref(x, i)] = x
    refined = TagGrammar(
        terminals=frozenset(ref(x, i) for x in g.terminals for i in (0, 1)),
        nonterminals=frozenset(ref(x, i) for x in g.nonterminals for i in (0, 1)),
        initial=tuple(initial),
        auxiliary=tuple(auxiliary),
        start=ref(g.start, 0),
    )
    return refined, ProjectionMap(mapping)


def improper_elementary(g: TagGrammar) -> list:
    return [name for name, t in g.auxiliary if foot_address(t) is not None and not is_proper(t)]
