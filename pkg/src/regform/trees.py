"""Immutable ordered labeled trees and the TAG tree calculus.

Trees print and parse in a bracketed form::

    (S a (S a S*))      foot nodes carry a ``*`` suffix
    (S @b)              anchors carry an ``@`` prefix
    (S A b)             a bare non-terminal leaf is a substitution node

Addresses are tuples of child indices; the root is ``()``.
"""
from __future__ import annotations

import re
from typing import Callable, Iterator, Mapping, Sequence

from .errors import (
    IllegalSite,
    LabelMismatch,
    NotAuxiliaryTree,
    NotInitialTree,
    ParseError,
    UnmappedLabel,
)

EPSILON = "<eps>"

Address = tuple


def is_nonterminal_name(label: str) -> bool:
    """Case convention used by the text formats: non-terminals start uppercase."""
    return bool(label) and label != EPSILON and label[0].isupper()


class Tree:
    """An ordered labeled tree with optional foot/anchor markers.

    Equality and hashing are structural over label, foot flag and children;
    the anchor flag is presentation only and never takes part in comparison.
    """

    __slots__ = ("label", "children", "foot", "anchor", "size", "depth", "_hash")

    def __init__(self, label: str, children: Sequence[Tree] = (), foot: bool = False,
                 anchor: bool = False):
        children = tuple(children)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "foot", foot)
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "size", 1 + sum(c.size for c in children))
        object.__setattr__(self, "depth", 1 + max((c.depth for c in children), default=0))
        object.__setattr__(self, "_hash", hash((label, foot, children)))

    def __setattr__(self, name, value):
        raise AttributeError("Tree is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree) or self._hash != other._hash:
            return False
        return (self.label == other.label and self.foot == other.foot
                and self.children == other.children)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __repr__(self):
        return f"Tree({str(self)!r})"

    def __str__(self):
        return format_tree(self)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def replace(self, **changes) -> Tree:
        fields = dict(label=self.label, children=self.children, foot=self.foot,
                      anchor=self.anchor)
        fields.update(changes)
        return Tree(**fields)


def leaf(label: str, foot: bool = False, anchor: bool = False) -> Tree:
    return Tree(label, (), foot=foot, anchor=anchor)


def sort_key(t: Tree):
    return (t.size, format_tree(t))


def canonical(trees) -> list:
    """Deterministic ordering: by node count, then by printed form."""
    return sorted(set(trees), key=sort_key)


# -- printing and parsing ---------------------------------------------------

def _leaf_text(t: Tree) -> str:
    text = t.label
    if t.foot:
        text += "*"
    if t.anchor:
        text = "@" + text
    return text


def format_tree(t: Tree) -> str:
    if t.is_leaf:
        return _leaf_text(t)
    inner = " ".join(format_tree(c) for c in t.children)
    return f"({t.label} {inner})"


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(@?(?:<eps>|[^\s()*@]+)\*?))")


def parse_tree(text: str, line: int = 1, column_offset: int = 0) -> Tree:
    """Parse the bracketed tree form. Raises ParseError with a column position."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line,
                             column_offset + pos + 1)
        kind = "(" if m.group(1) else ")" if m.group(2) else "sym"
        tokens.append((kind, m.group(3), column_offset + m.start(m.lastindex) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty tree", line, column_offset + 1)

    index = 0

    def parse_node() -> Tree:
        nonlocal index
        kind, value, col = tokens[index]
        if kind == "sym":
            index += 1
            return _symbol_leaf(value, line, col)
        if kind == ")":
            raise ParseError("unexpected ')'", line, col)
        index += 1
        if index >= len(tokens) or tokens[index][0] != "sym":
            raise ParseError("expected a label after '('", line, col)
        _, label, lcol = tokens[index]
        if label.endswith("*") or label.startswith("@"):
            raise ParseError("foot/anchor marks are only allowed on leaves", line, lcol)
        index += 1
        children = []
        while True:
            if index >= len(tokens):
                raise ParseError("unbalanced '('", line, col)
            if tokens[index][0] == ")":
                index += 1
                break
            children.append(parse_node())
        return Tree(label, children)

    tree = parse_node()
    if index != len(tokens):
        raise ParseError("trailing input after tree", line, tokens[index][2])
    return tree


def _symbol_leaf(value: str, line: int, col: int) -> Tree:
    anchor = value.startswith("@")
    foot = value.endswith("*")
    label = value.lstrip("@").rstrip("*")
    if not label:
        raise ParseError("empty label", line, col)
    return Tree(label, (), foot=foot, anchor=anchor)


# -- addressing -------------------------------------------------------------

def nodes(t: Tree, prefix: Address = ()) -> Iterator[tuple]:
    """Yield ``(address, node)`` in preorder."""
    yield prefix, t
    for i, c in enumerate(t.children):
        yield from nodes(c, prefix + (i,))


def subtree(t: Tree, address: Address) -> Tree:
    for i in address:
        if not 0 <= i < len(t.children):
            raise IndexError(f"address {address} out of range")
        t = t.children[i]
    return t


def replace_at(t: Tree, address: Address, new: Tree) -> Tree:
    if not address:
        return new
    i = address[0]
    if not 0 <= i < len(t.children):
        raise IndexError(f"address {address} out of range")
    children = list(t.children)
    children[i] = replace_at(children[i], address[1:], new)
    return t.replace(children=tuple(children))


def foot_address(t: Tree):
    for addr, node in nodes(t):
        if node.foot:
            return addr
    return None


def frontier(t: Tree) -> list:
    return [n for _, n in nodes(t) if n.is_leaf]


def yield_of(t: Tree) -> tuple:
    """Left-to-right frontier labels, epsilon leaves dropped."""
    return tuple(n.label for n in frontier(t) if n.label != EPSILON)


def labels(t: Tree) -> set:
    return {n.label for _, n in nodes(t)}


def is_substitution_node(node: Tree) -> bool:
    return node.is_leaf and not node.foot and is_nonterminal_name(node.label)


# -- spines -----------------------------------------------------------------

def spine(aux: Tree) -> list:
    """Root-to-foot addresses, inclusive."""
    f = foot_address(aux)
    if f is None:
        raise NotAuxiliaryTree(f"{aux} has no foot node")
    return [f[:k] for k in range(len(f) + 1)]


def spine_labels(aux: Tree) -> list:
    return [subtree(aux, a).label for a in spine(aux)]


def is_proper(aux: Tree) -> bool:
    path = spine_labels(aux)
    return aux.label not in path[1:-1]


def plug_foot(upper: Tree, lower: Tree) -> Tree:
    """Replace the foot of ``upper`` with ``lower``."""
    f = foot_address(upper)
    if f is None:
        raise NotAuxiliaryTree(f"{upper} has no foot node")
    return replace_at(upper, f, lower)


def proper_segments(aux: Tree) -> list:
    """Split ``aux`` at every spine node carrying its root label.

    Splicing the returned segments in order (each into the previous one's
    foot) gives back ``aux``.
    """
    addrs = spine(aux)
    cuts = [a for a in addrs[:-1] if subtree(aux, a).label == aux.label]
    segments = []
    for k, start in enumerate(cuts):
        piece = subtree(aux, start)
        if k + 1 < len(cuts):
            rel = cuts[k + 1][len(start):]
            piece = replace_at(piece, rel, leaf(aux.label, foot=True))
        segments.append(piece)
    return segments


def concatenate(segments: Sequence[Tree]) -> Tree:
    out = segments[-1]
    for seg in reversed(segments[:-1]):
        out = plug_foot(seg, out)
    return out


# -- the TAG operations -----------------------------------------------------

def adjoin(host: Tree, at: Address, aux: Tree) -> Tree:
    """Adjoin ``aux`` at ``at``: excise, insert, and hang the excised subtree at the foot."""
    if foot_address(aux) is None:
        raise NotAuxiliaryTree(f"{aux} has no foot node")
    target = subtree(host, at)
    if target.label != aux.label:
        raise LabelMismatch(f"cannot adjoin {aux.label}-rooted tree at {target.label} node")
    if is_substitution_node(target) or not is_nonterminal_name(target.label):
        raise IllegalSite(f"node {at} is not an adjunction site")
    return replace_at(host, at, plug_foot(aux, target))


def substitute(host: Tree, at: Address, init: Tree) -> Tree:
    if foot_address(init) is not None:
        raise NotInitialTree(f"{init} has a foot node")
    target = subtree(host, at)
    if not is_substitution_node(target):
        raise IllegalSite(f"node {at} is not a substitution node")
    if target.label != init.label:
        raise LabelMismatch(f"cannot substitute {init.label}-rooted tree at {target.label} node")
    return replace_at(host, at, init)


def relabel(t: Tree, fn: Callable[[Tree, Address], str], prefix: Address = ()) -> Tree:
    children = tuple(relabel(c, fn, prefix + (i,)) for i, c in enumerate(t.children))
    return Tree(fn(t, prefix), children, foot=t.foot, anchor=t.anchor)


def project_labels(t: Tree, mapping: Mapping[str, str]) -> Tree:
    def fn(node, _addr):
        try:
            return mapping[node.label]
        except KeyError:
            raise UnmappedLabel(f"label {node.label!r} is not in the projection map") from None
    return relabel(t, fn)


def strip_flags(t: Tree, foot: bool = False, anchor: bool = True) -> Tree:
    return Tree(t.label, tuple(strip_flags(c, foot, anchor) for c in t.children),
                foot=False if foot else t.foot, anchor=False if anchor else t.anchor)
