"""CFGs as TAGs: the depth-one TSG, the left-corner construction, and substitution closure.

The left-corner derivation graph (LCG) has one edge per production, from its
left-hand side to the right-hand-side symbol the expansion strategy selects.
Simple paths ending on a terminal become initial trees and simple cycles
become auxiliary trees; every non-selected non-terminal child is left as a
substitution node.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidCfg, NonterminationGuard, NotLexicalizable, NotRegularForm
from .grammar import TagGrammar, require_valid
from .spine_graph import check_regular_form, rotations, vertex_cycles
from .trees import (
    EPSILON,
    Tree,
    canonical,
    is_nonterminal_name,
    is_substitution_node,
    leaf,
    nodes,
    replace_at,
    strip_flags,
    substitute,
    subtree,
)


@dataclass(frozen=True)
class Cfg:
    terminals: frozenset
    nonterminals: frozenset
    start: str
    productions: tuple  # of (lhs, rhs tuple); an empty rhs is an epsilon production

    @classmethod
    def build(cls, productions, start=None) -> Cfg:
        """Infer the alphabet: left-hand sides and uppercase symbols are non-terminals."""
        prods = tuple((lhs, tuple(rhs)) for lhs, rhs in productions)
        if start is None:
            if not prods:
                raise InvalidCfg("no productions and no start symbol")
            start = prods[0][0]
        nts = {start} | {lhs for lhs, _ in prods}
        ts = set()
        for _, rhs in prods:
            for sym in rhs:
                (nts if is_nonterminal_name(sym) else ts).add(sym)
        c = cls(frozenset(ts), frozenset(nts), start, prods)
        validate_cfg(c)
        return c


def validate_cfg(c: Cfg) -> None:
    problems = []
    if c.start not in c.nonterminals:
        problems.append(f"start symbol {c.start!r} is not a non-terminal")
    if c.terminals & c.nonterminals:
        problems.append(f"symbols both terminal and non-terminal: {sorted(c.terminals & c.nonterminals)}")
    for sym in c.nonterminals:
        if not is_nonterminal_name(sym):
            problems.append(f"non-terminal {sym!r} must start uppercase")
    for sym in c.terminals:
        if is_nonterminal_name(sym) or sym == EPSILON:
            problems.append(f"terminal {sym!r} must not start uppercase")
    for lhs, rhs in c.productions:
        if lhs not in c.nonterminals:
            problems.append(f"left-hand side {lhs!r} is not a non-terminal")
        for sym in rhs:
            if sym not in c.terminals and sym not in c.nonterminals:
                problems.append(f"symbol {sym!r} in {lhs} -> {' '.join(rhs)} is undeclared")
    if problems:
        raise InvalidCfg("; ".join(problems))


def format_production(p) -> str:
    lhs, rhs = p
    return f"{lhs} -> {' '.join(rhs) if rhs else EPSILON}"


@dataclass(frozen=True)
class ExpansionStrategy:
    """Which right-hand-side position a production expands along."""

    name: str
    selector: Callable  # (lhs, rhs) -> index, negative indices allowed

    def position(self, production) -> int:
        lhs, rhs = production
        k = self.selector(lhs, rhs)
        if not -len(rhs) <= k < len(rhs):
            raise ValueError(f"strategy {self.name} selected position {k} of {format_production(production)}")
        return k % len(rhs)


LEFTMOST = ExpansionStrategy("leftmost", lambda lhs, rhs: 0)
RIGHTMOST = ExpansionStrategy("rightmost", lambda lhs, rhs: -1)
STRATEGIES = {"leftmost": LEFTMOST, "rightmost": RIGHTMOST}


# -- CFG as a tree substitution grammar ----------------------------------------

def _depth_one(production) -> Tree:
    lhs, rhs = production
    return Tree(lhs, [leaf(s) for s in rhs] or [leaf(EPSILON)])


def cfg_to_tsg(c: Cfg) -> TagGrammar:
    validate_cfg(c)
    initial = [(f"alpha{i}", _depth_one(p)) for i, p in enumerate(c.productions, 1)]
    return TagGrammar(c.terminals, c.nonterminals, tuple(initial), (), c.start)


def cfg_derivation_trees(c: Cfg, max_depth: int, root=None) -> list:
    """Every derivation tree of ``c`` from ``root`` (default: start) with depth <= ``max_depth``.

    Depth counts levels, so ``(S b)`` has depth 2. Direct expansion; used as
    the reference for the TAG constructions.
    """
    validate_cfg(c)
    by_depth = defaultdict(set)  # non-terminal -> trees of depth <= k
    for _ in range(max_depth - 1):
        nxt = defaultdict(set)
        for p in c.productions:
            lhs, rhs = p
            if not rhs:
                nxt[lhs].add(_depth_one(p))
                continue
            options = [sorted(by_depth[s]) if s in c.nonterminals else [leaf(s)] for s in rhs]
            for kids in itertools.product(*options):
                nxt[lhs].add(Tree(lhs, kids))
        by_depth = nxt
    return canonical(by_depth[root or c.start])


# -- left-corner derivation graph -----------------------------------------------

@dataclass(frozen=True)
class LcgEdge:
    source: str
    target: str
    production: tuple
    position: int  # selected rhs index; -1 for epsilon productions


@dataclass(frozen=True)
class Lcg:
    cfg: Cfg
    strategy: ExpansionStrategy
    vertices: frozenset
    edges: tuple

    def out_edges(self, vertex):
        return [e for e in self.edges if e.source == vertex]


def build_lcg(c: Cfg, s: ExpansionStrategy = LEFTMOST) -> Lcg:
    """Epsilon productions point at an ``<eps>`` sink, which then behaves like a terminal."""
    validate_cfg(c)
    edges = []
    for p in c.productions:
        lhs, rhs = p
        if not rhs:
            edges.append(LcgEdge(lhs, EPSILON, p, -1))
        else:
            k = s.position(p)
            edges.append(LcgEdge(lhs, rhs[k], p, k))
    vertices = set(c.terminals | c.nonterminals)
    if any(e.target == EPSILON for e in edges):
        vertices.add(EPSILON)
    return Lcg(c, s, frozenset(vertices), tuple(edges))


def _stack(edges, bottom: Tree) -> Tree:
    """Chain the edges' productions top-down, ``bottom`` at the last selected child."""
    out = bottom
    for e in reversed(edges):
        lhs, rhs = e.production
        if e.position < 0:
            out = Tree(lhs, [out])
        else:
            out = Tree(lhs, [out if i == e.position else leaf(sym) for i, sym in enumerate(rhs)])
    return out


def _simple_paths(l: Lcg):
    """Edge sequences along vertex-simple paths from a non-terminal to a terminal or the sink."""
    out = []
    by_source = defaultdict(list)
    for e in l.edges:
        by_source[e.source].append(e)

    def walk(v, seen, path):
        for e in by_source[v]:
            if e.target not in l.cfg.nonterminals:
                out.append(path + [e])
            elif e.target not in seen:
                walk(e.target, seen | {e.target}, path + [e])

    for v in sorted(l.cfg.nonterminals):
        walk(v, {v}, [])
    return out


def _simple_cycles(l: Lcg):
    """Edge sequences of every simple cycle, every rotation, every choice of parallel edge."""
    by_pair = defaultdict(list)
    for e in l.edges:
        if e.target in l.cfg.nonterminals:
            by_pair[e.source, e.target].append(e)
    out = []
    for cyc in vertex_cycles(l.cfg.nonterminals, set(by_pair)):
        for rot in rotations(cyc):
            closed = rot + (rot[0],)
            choices = [by_pair[a, b] for a, b in zip(closed, closed[1:])]
            out.extend(list(combo) for combo in itertools.product(*choices))
    return out


def mark_anchor(t: Tree) -> Tree:
    """Flag the shallowest, leftmost terminal leaf; raise if there is none."""
    best = None
    for addr, node in nodes(t):
        if node.is_leaf and not node.foot and node.label != EPSILON \
                and not is_nonterminal_name(node.label):
            if best is None or len(addr) < len(best):
                best = addr
    if best is None:
        raise NotLexicalizable(f"{t} has no terminal to anchor")
    return replace_at(t, best, leaf(subtree(t, best).label, anchor=True))


def _has_terminal(t: Tree) -> bool:
    return any(n.is_leaf and not n.foot and n.label != EPSILON and not is_nonterminal_name(n.label)
               for _, n in nodes(t))


def lcg_initial_trees(l: Lcg, anchored: bool = False) -> list:
    trees = set()
    for path in _simple_paths(l):
        trees.add(_stack(path, leaf(path[-1].target)))
    out = canonical(trees)
    return [mark_anchor(t) for t in out] if anchored else out


def lcg_aux_trees(l: Lcg, lexicalize: bool = False) -> list:
    """One auxiliary tree per simple cycle (rotations and parallel edges included).

    With ``lexicalize``, cycles without a terminal are anchored by
    substituting initial trees. The substitution is applied per production,
    not per tree: one production is chosen for each such cycle, and every
    auxiliary tree using a chosen production gets all initial-tree fillings
    at that production's first non-selected non-terminal. Doing it
    uniformly keeps the spine segments of different trees interchangeable,
    which is what regular form needs.
    """
    cycles = _simple_cycles(l)
    if not lexicalize:
        return canonical({_stack(c, leaf(c[0].source, foot=True)) for c in cycles})

    chosen = []
    for cyc in sorted(cycles, key=lambda c: [format_production(e.production) for e in c]):
        if _has_terminal(_stack(cyc, leaf(cyc[0].source, foot=True))):
            continue
        if any(e.production in chosen for e in cyc):
            continue
        pick = next((e.production for e in cyc if _fill_position(e) is not None), None)
        if pick is None:
            raise NotLexicalizable("unit-production cycle: "
                                   + ", ".join(format_production(e.production) for e in cyc))
        chosen.append(pick)

    inits = defaultdict(list)
    for t in lcg_initial_trees(l):
        inits[t.label].append(t)
    out = set()
    for cyc in cycles:
        options = []
        for e in cyc:
            k = _fill_position(e) if e.production in chosen else None
            options.append([None] if k is None else inits[e.production[1][k]])
        for fills in itertools.product(*options):
            t = _stack_filled(cyc, fills, leaf(cyc[0].source, foot=True))
            out.add(mark_anchor(t))
    return canonical(out)


def _fill_position(e: LcgEdge):
    """First non-selected non-terminal child of the edge's production."""
    lhs, rhs = e.production
    for i, sym in enumerate(rhs):
        if i != e.position and is_nonterminal_name(sym):
            return i
    return None


def _stack_filled(edges, fills, bottom: Tree) -> Tree:
    out = bottom
    for e, fill in zip(reversed(edges), reversed(fills)):
        lhs, rhs = e.production
        kids = []
        for i, sym in enumerate(rhs):
            if i == e.position:
                kids.append(out)
            elif fill is not None and i == _fill_position(e):
                kids.append(fill)
            else:
                kids.append(leaf(sym))
        out = Tree(lhs, kids)
    return out


def _unit_cycle(c: Cfg):
    units = {(lhs, rhs[0]) for lhs, rhs in c.productions
             if len(rhs) == 1 and rhs[0] in c.nonterminals}
    cycles = vertex_cycles(c.nonterminals, units)
    return cycles[0] if cycles else None


def cfg_to_regular_tag(c: Cfg, s: ExpansionStrategy = LEFTMOST, lexicalized: bool = False) -> TagGrammar:
    """A regular-form TAG whose completed trees are exactly the derivation trees of ``c``.

    The output is checked with the regular-form decision rather than trusted,
    since arbitrary strategies are allowed.
    """
    validate_cfg(c)
    if lexicalized:
        eps = [p for p in c.productions if not p[1]]
        if eps:
            raise NotLexicalizable(f"epsilon production {format_production(eps[0])}")
        cyc = _unit_cycle(c)
        if cyc is not None:
            raise NotLexicalizable("unit-production cycle through " + " -> ".join(cyc + (cyc[0],)))
    l = build_lcg(c, s)
    initial = lcg_initial_trees(l, anchored=lexicalized)
    auxiliary = lcg_aux_trees(l, lexicalize=lexicalized)
    g = TagGrammar(
        terminals=c.terminals,
        nonterminals=c.nonterminals,
        initial=tuple((f"alpha{i}", t) for i, t in enumerate(initial, 1)),
        auxiliary=tuple((f"beta{i}", t) for i, t in enumerate(auxiliary, 1)),
        start=c.start,
    )
    require_valid(g)
    ok, witnesses = check_regular_form(g)
    if not ok:
        bad = next(w for w in witnesses if not w.wfc_equivalent)
        raise NotRegularForm(f"construction under strategy {s.name} is not in regular form: {bad.describe()}")
    return g


# -- substitution closure -------------------------------------------------------

def _first_substitution(t: Tree):
    return next((addr for addr, n in nodes(t) if is_substitution_node(n)), None)


def close_substitution(g: TagGrammar, max_rounds: int = 32, max_trees: int = 5000,
                       max_nodes: int = 500) -> TagGrammar:
    """Fill substitution nodes with initial trees until none are left.

    Each round replaces every tree that still has a substitution node by all
    its fillings, at the first such node, with the current initial trees.
    Recursion through substitution never bottoms out, so the loop is capped;
    the guard error carries the grammar reached so far.
    """
    require_valid(g)
    initial, auxiliary = [t for _, t in g.initial], [t for _, t in g.auxiliary]

    def assemble(init, aux):
        return TagGrammar(g.terminals, g.nonterminals,
                          tuple((f"alpha{i}", t) for i, t in enumerate(init, 1)),
                          tuple((f"beta{i}", t) for i, t in enumerate(aux, 1)), g.start)

    if all(_first_substitution(t) is None for t in initial + auxiliary):
        return g
    for _ in range(max_rounds):
        by_root = defaultdict(list)
        for t in initial:
            by_root[t.label].append(t)

        def expand(trees):
            out = set()
            for t in trees:
                at = _first_substitution(t)
                if at is None:
                    out.add(t)
                    continue
                for arg in by_root[subtree(t, at).label]:
                    out.add(substitute(t, at, strip_flags(arg)))
            return canonical(out)

        initial, auxiliary = expand(initial), expand(auxiliary)
        if all(_first_substitution(t) is None for t in initial + auxiliary):
            return assemble(initial, auxiliary)
        if len(initial) + len(auxiliary) > max_trees \
                or max(t.size for t in initial + auxiliary) > max_nodes:
            break
    raise NonterminationGuard("substitution closure did not terminate within its cap",
                              assemble(initial, auxiliary))
