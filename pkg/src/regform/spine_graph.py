"""Spine graphs, the well-formed-cycle automaton, and the regular-form decision.

Segments are trees whose single ``foot``-flagged leaf marks where the next
segment plugs in (the slot). Its label is the edge's target vertex, which in
general differs from the segment root, so segments are not auxiliary trees
until a whole cycle has been concatenated.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotAWalk
from .grammar import TagGrammar, require_valid
from .trees import Tree, concatenate, leaf, nodes, replace_at, spine, subtree


@dataclass(frozen=True)
class EdgeLabel:
    aux_name: str
    index: int
    segment: Tree


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: EdgeLabel
    ident: str = ""

    def __str__(self):
        return f"{self.ident or '?'}=({self.source}->{self.target}, {self.label.aux_name}:{self.label.index})"


@dataclass(frozen=True)
class SpineGraph:
    vertices: tuple
    edges: tuple

    def out_edges(self, vertex):
        return [e for e in self.edges if e.source == vertex]

    def has_edge(self, source, aux_name, index) -> bool:
        return any(e.source == source and e.label.aux_name == aux_name and e.label.index == index
                   for e in self.edges)


@dataclass(frozen=True)
class CycleWitness:
    vertex_sequence: tuple  # first == last
    edge_sequence: tuple  # of Edge
    cycle_tree: Tree
    wfc_equivalent: bool | None = None
    matching_walk: tuple = ()

    def describe(self) -> str:
        verdict = {True: "yes", False: "no", None: "?"}[self.wfc_equivalent]
        edges = ",".join(e.ident for e in self.edge_sequence)
        return (f"cycle {'->'.join(self.vertex_sequence)} edges [{edges}] "
                f"tree {self.cycle_tree} wfc-equivalent: {verdict}")


def _segment(aux: Tree, top: tuple, bottom: tuple) -> Tree:
    piece = subtree(aux, top)
    slot_label = subtree(aux, bottom).label
    return replace_at(piece, bottom[len(top):], leaf(slot_label, foot=True))


def build_spine_graph(g: TagGrammar) -> SpineGraph:
    """One edge per consecutive pair of spine nodes, already in reduced form.

    Spine nodes whose label roots no auxiliary tree are skipped while walking
    each spine, which fuses their in/out edge pairs (segments concatenated,
    indices renumbered) exactly as eliminating the vertex would.
    """
    require_valid(g)
    roots = {t.label for _, t in g.auxiliary}
    edges = []
    for name, aux in g.auxiliary:
        kept = [a for a in spine(aux) if subtree(aux, a).label in roots]
        for j, (top, bottom) in enumerate(zip(kept, kept[1:])):
            edges.append(Edge(subtree(aux, top).label, subtree(aux, bottom).label,
                              EdgeLabel(name, j, _segment(aux, top, bottom)),
                              ident=f"e{len(edges) + 1}"))
    return SpineGraph(tuple(sorted(roots)), tuple(edges))


# -- the wfc pushdown automaton ---------------------------------------------

def trace_wfc(sg: SpineGraph, walk) -> bool:
    """Can the stack automaton trace exactly this walk, empty stack to empty stack?

    Moves: push a 0-indexed edge; replace top (b, j) by (b, j+1) while taking
    that edge; pop (b, j) in place when no (b, j+1) edge leaves the current
    vertex. Halting requires an empty stack.
    """
    walk = tuple(walk)
    if not walk:
        return False
    for a, b in zip(walk, walk[1:]):
        if a.target != b.source:
            raise NotAWalk(f"{a} does not end where {b} starts")

    @lru_cache(maxsize=None)
    def step(k, stack):
        vertex = walk[k - 1].target if k else walk[0].source
        if k == len(walk) and not stack:
            return True
        if stack:
            name, j = stack[-1]
            if not sg.has_edge(vertex, name, j + 1) and step(k, stack[:-1]):
                return True
        if k == len(walk):
            return False
        e = walk[k]
        if e.label.index == 0 and step(k + 1, stack + ((e.label.aux_name, 0),)):
            return True
        if stack and stack[-1] == (e.label.aux_name, e.label.index - 1):
            if step(k + 1, stack[:-1] + ((e.label.aux_name, e.label.index),)):
                return True
        return False

    return step(0, ())


# -- simple cycles ----------------------------------------------------------

def vertex_cycles(vertices, arcs) -> list:
    """Vertex-simple directed cycles, each reported once from its least vertex.

    ``arcs`` is a set of ``(u, v)`` pairs. Plain backtracking; spine graphs and
    left-corner graphs are small.
    """
    order = {v: i for i, v in enumerate(sorted(vertices))}
    succ = {v: sorted({b for a, b in arcs if a == v}, key=order.get) for v in vertices}
    found = []
    for s in sorted(vertices, key=order.get):
        path = [s]
        on_path = {s}

        def extend(v):
            for w in succ[v]:
                if w == s:
                    found.append(tuple(path))
                elif order[w] > order[s] and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    return found


def rotations(cycle) -> list:
    return [tuple(cycle[i:]) + tuple(cycle[:i]) for i in range(len(cycle))]


def simple_cycles(sg: SpineGraph) -> list:
    """All simple cycles, once per starting vertex and per choice of parallel edge."""
    arcs = {(e.source, e.target) for e in sg.edges}
    by_pair = {}
    for e in sg.edges:
        by_pair.setdefault((e.source, e.target), []).append(e)
    witnesses = []
    for cyc in vertex_cycles(sg.vertices, arcs):
        for rot in rotations(cyc):
            closed = rot + (rot[0],)
            choices = [by_pair[(a, b)] for a, b in zip(closed, closed[1:])]
            for combo in itertools.product(*choices):
                tree = concatenate([e.label.segment for e in combo])
                witnesses.append(CycleWitness(closed, tuple(combo), tree))
    return witnesses


# -- wfc equivalence ----------------------------------------------------------

def _match_segment(seg: Tree, target: Tree, path=()):
    """If ``seg`` equals ``target`` except below its slot, return the slot address."""
    if seg.foot:
        return path if seg.label == target.label else None
    if seg.label != target.label or target.foot or len(seg.children) != len(target.children):
        return None
    slot = None
    for i, (a, b) in enumerate(zip(seg.children, target.children)):
        if a.foot or _contains_foot(a):
            r = _match_segment(a, b, path + (i,))
            if r is None:
                return None
            slot = r
        elif a != b:
            return None
    return slot


def _contains_foot(t: Tree) -> bool:
    return any(n.foot for _, n in nodes(t))


def matching_walks(sg: SpineGraph, tree: Tree) -> list:
    """Every walk whose concatenated segments equal ``tree``.

    Each edge consumes at least one spine step of ``tree``, so walks are at
    most ``len(spine(tree)) - 1`` edges long.
    """
    target_spine = spine(tree)
    spine_set = set(target_spine)
    bound = len(target_spine) - 1
    foot = target_spine[-1]
    out = []

    def search(at, vertex, walk):
        if len(walk) > bound:
            raise AssertionError("walk exceeded the spine-length bound")
        here = subtree(tree, at)
        for e in sg.out_edges(vertex):
            rel = _match_segment(e.label.segment, here)
            if rel is None or not rel:
                continue
            nxt = at + rel
            if nxt not in spine_set:
                continue
            if nxt == foot:
                out.append(tuple(walk + [e]))
            else:
                search(nxt, e.target, walk + [e])

    search((), tree.label, [])
    return out


def wfc_equivalent(sg: SpineGraph, tree: Tree):
    """Return a wfc whose tree is ``tree``, or None."""
    for walk in matching_walks(sg, tree):
        if trace_wfc(sg, walk):
            return walk
    return None


def check_regular_form(g: TagGrammar):
    """Decide regular form: every simple cycle must be equivalent to some wfc.

    Returns ``(verdict, witnesses)`` with ``wfc_equivalent`` filled in. A
    negative verdict says the grammar is not in regular form; it says nothing
    about whether its tree set is recognizable.
    """
    sg = build_spine_graph(g)
    out = []
    for w in simple_cycles(sg):
        walk = wfc_equivalent(sg, w.cycle_tree)
        out.append(CycleWitness(w.vertex_sequence, w.edge_sequence, w.cycle_tree,
                                walk is not None, walk or ()))
    return all(w.wfc_equivalent for w in out), out


def extend_to_regular_form(g: TagGrammar, max_rounds: int = 2):
    """Add the cycle tree of every non-equivalent simple cycle as a new auxiliary tree.

    Returns ``(extended grammar, added trees)``. One round is expected to
    suffice; the loop re-checks rather than trusting that.
    """
    require_valid(g)
    added = []
    current = g
    for _ in range(max_rounds):
        ok, witnesses = check_regular_form(current)
        if ok:
            return current, added
        existing = {t for _, t in current.auxiliary}
        fresh = []
        for w in witnesses:
            if not w.wfc_equivalent and w.cycle_tree not in existing:
                existing.add(w.cycle_tree)
                fresh.append(w.cycle_tree)
        names = {n for n, _ in current.trees}
        named = []
        k = 1
        for t in fresh:
            while f"ext{k}" in names:
                k += 1
            names.add(f"ext{k}")
            named.append((f"ext{k}", t))
        added.extend(fresh)
        current = current.with_auxiliary(named)
    ok, _ = check_regular_form(current)
    if not ok:
        raise RuntimeError("extension did not reach regular form within the round cap")
    return current, added


def _dot_id(name: str) -> str:
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        return name
    return '"' + name.replace('"', '\\"') + '"'


def to_dot(sg: SpineGraph) -> str:
    if not sg.vertices and not sg.edges:
        return "digraph {}\n"
    lines = ["digraph spine_graph {"]
    for v in sg.vertices:
        lines.append(f"  {_dot_id(v)};")
    for e in sg.edges:
        lines.append(f'  {_dot_id(e.source)} -> {_dot_id(e.target)} '
                     f'[label="{e.label.aux_name}:{e.label.index}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
