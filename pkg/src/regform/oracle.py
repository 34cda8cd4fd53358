"""Bounded brute-force enumeration of derivable trees.

Everything else in the package is checked against this module, so it is kept
deliberately naive: a worklist closure over substitution and adjunction at
every legal site, pruned only by size.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded
from .grammar import TagGrammar, require_valid
from .trees import (
    EPSILON,
    Tree,
    adjoin,
    canonical,
    foot_address,
    is_nonterminal_name,
    is_proper,
    is_substitution_node,
    nodes,
    spine_labels,
    substitute,
    yield_of,
)


@dataclass(frozen=True)
class DerivationBudget:
    max_nodes: int = 12
    max_steps: int = 10 ** 6
    max_depth: Optional[int] = None

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_steps < 1:
            raise ValueError("budget limits must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


def as_budget(b) -> DerivationBudget:
    return b if isinstance(b, DerivationBudget) else DerivationBudget(max_nodes=int(b))


@dataclass(frozen=True)
class RegularityContext:
    """What an adjunction step looks like, as far as regular adjunction cares."""

    host_kind: str  # "initial" | "auxiliary"
    site_on_spine: bool
    site_is_root_or_foot: bool
    host_root_label: str
    host_spine_labels: frozenset
    aux_root_label: str
    aux_is_proper: bool
    aux_spine_labels: frozenset

    def __post_init__(self):
        if self.site_is_root_or_foot and not self.site_on_spine:
            raise ValueError("root/foot sites lie on the spine")


def is_regular_step(ctx: RegularityContext) -> bool:
    if ctx.host_kind == "initial" or not ctx.site_on_spine:
        return True
    if ctx.site_is_root_or_foot:
        return ctx.aux_is_proper
    # interior spine: the host must not be able to adjoin back into the adjunct's
    # spine; in a pure TAG that is purely a question of labels
    return ctx.host_root_label not in ctx.aux_spine_labels


def regularity_context(host: Tree, at: tuple, aux: Tree) -> RegularityContext:
    hf = foot_address(host)
    on_spine = hf is not None and hf[:len(at)] == at
    return RegularityContext(
        host_kind="auxiliary" if hf is not None else "initial",
        site_on_spine=on_spine,
        site_is_root_or_foot=on_spine and (at == () or at == hf),
        host_root_label=host.label,
        host_spine_labels=frozenset(spine_labels(host)) if hf is not None else frozenset(),
        aux_root_label=aux.label,
        aux_is_proper=is_proper(aux),
        aux_spine_labels=frozenset(spine_labels(aux)),
    )


class _Info:
    __slots__ = ("foot", "proper", "spine_labels")

    def __init__(self, t):
        self.foot = foot_address(t)
        if self.foot is not None:
            self.proper = is_proper(t)
            self.spine_labels = frozenset(spine_labels(t))
        else:
            self.proper = True
            self.spine_labels = frozenset()


def _regular_ok(host, hinfo, at, aux, ainfo) -> bool:
    if hinfo.foot is None:
        return True
    on_spine = hinfo.foot[:len(at)] == at
    if not on_spine:
        return True
    if at == () or at == hinfo.foot:
        return ainfo.proper
    return host.label not in ainfo.spine_labels


def _closure(g: TagGrammar, budget: DerivationBudget, regular: bool, keep=None) -> list:
    require_valid(g)
    max_nodes, max_depth = budget.max_nodes, budget.max_depth
    known = {}
    info = {}
    queue = deque()
    init_by_root = defaultdict(list)
    aux_by_root = defaultdict(list)
    subst_sites = defaultdict(list)
    adj_sites = defaultdict(list)
    steps = 0

    def offer(t):
        if t.size > max_nodes or (max_depth is not None and t.depth > max_depth):
            return
        if keep is not None and not keep(t):
            return
        if t not in known:
            known[t] = None
            queue.append(t)

    def attempt(host, at, arg, adjunction):
        nonlocal steps
        if host.size + arg.size - 1 > max_nodes:
            return
        if adjunction and regular and not _regular_ok(host, info[host], at, arg, info[arg]):
            return
        steps += 1
        if steps > budget.max_steps:
            raise BudgetExceeded(f"more than {budget.max_steps} derivation steps",
                                 canonical(known))
        offer(adjoin(host, at, arg) if adjunction else substitute(host, at, arg))

    for _, t in g.trees:
        offer(t)

    while queue:
        t = queue.popleft()
        ti = info[t] = _Info(t)
        (aux_by_root if ti.foot is not None else init_by_root)[t.label].append(t)
        own_subst, own_adj = [], []
        for addr, node in nodes(t):
            if is_substitution_node(node):
                own_subst.append((addr, node.label))
            elif is_nonterminal_name(node.label):
                own_adj.append((addr, node.label))
        for addr, label in own_subst:
            subst_sites[label].append((t, addr))
        for addr, label in own_adj:
            adj_sites[label].append((t, addr))

        for addr, label in own_subst:
            for arg in list(init_by_root[label]):
                attempt(t, addr, arg, False)
        for addr, label in own_adj:
            for arg in list(aux_by_root[label]):
                attempt(t, addr, arg, True)
        if ti.foot is None:
            for host, addr in list(subst_sites[t.label]):
                if host is not t:
                    attempt(host, addr, t, False)
        else:
            for host, addr in list(adj_sites[t.label]):
                if host is not t:
                    attempt(host, addr, t, True)

    return canonical(known)


def is_completed(t: Tree, g: TagGrammar) -> bool:
    if t.label != g.start or foot_address(t) is not None:
        return False
    return all(n.children or n.label in g.terminals or n.label == EPSILON
               for _, n in nodes(t))


def _filter(trees, g, completed_only):
    if not completed_only:
        return trees
    return [t for t in trees if is_completed(t, g)]


def enumerate_derived(g: TagGrammar, budget, completed_only: bool = False) -> list:
    """All trees of T'(g) (or T(g)) with at most ``budget.max_nodes`` nodes, canonically ordered."""
    budget = as_budget(budget)
    return _filter(_closure(g, budget, regular=False), g, completed_only)


def enumerate_regular(g: TagGrammar, budget, completed_only: bool = False) -> list:
    """As :func:`enumerate_derived`, but every adjunction must be a regular step."""
    budget = as_budget(budget)
    return _filter(_closure(g, budget, regular=True), g, completed_only)


def is_derivable(g: TagGrammar, t: Tree, regular_only: bool = False, budget=None) -> bool:
    """Membership in the bounded enumeration.

    A tree found before the work limit is hit is definitely derivable; if the
    limit is hit first the answer is unknown and BudgetExceeded propagates.
    """
    budget = as_budget(budget) if budget is not None else DerivationBudget(max_nodes=t.size)
    if t.size > budget.max_nodes:
        raise ValueError(f"tree has {t.size} nodes, budget allows {budget.max_nodes}")
    run = enumerate_regular if regular_only else enumerate_derived
    try:
        return t in set(run(g, budget))
    except BudgetExceeded as exc:
        if t in set(exc.partial):
            return True
        raise


def sample_language(g: TagGrammar, budget) -> set:
    return {" ".join(yield_of(t)) for t in enumerate_derived(g, budget, completed_only=True)}


def _is_subsequence(short, long) -> bool:
    it = iter(long)
    return all(tok in it for tok in short)


def elementary_node_bound(g: TagGrammar, length: int):
    """Node count that every minimal derivation of a length-``length`` string fits in.

    Each elementary tree adds ``size - 1`` nodes and at least one token when
    every elementary tree carries a terminal, so the bound is ``1 + length *
    max((size - 1) / tokens)``. Returns None if some tree yields no token.
    """
    worst = 0.0
    for _, t in g.trees:
        tokens = sum(1 for x in yield_of(t) if x in g.terminals)
        if tokens == 0:
            return None
        worst = max(worst, (t.size - 1) / tokens)
    return 1 + int(length * worst)


def derives_string(g: TagGrammar, w, budget) -> bool:
    """Is ``w`` the yield of a completed tree within ``budget``?

    Tokens are only ever inserted by substitution and adjunction, so every tree
    on the way to ``w`` yields a subsequence of it and the rest is pruned.
    """
    w = w.split() if isinstance(w, str) else list(w)
    budget = as_budget(budget)
    terminals = g.terminals

    def keep(t):
        return _is_subsequence([x for x in yield_of(t) if x in terminals], w)

    found = _closure(g, budget, regular=False, keep=keep)
    return any(is_completed(t, g) and list(yield_of(t)) == w for t in found)


# -- span-based membership ----------------------------------------------------

def derives_string_by_spans(g: TagGrammar, w) -> bool:
    """Membership of ``w`` in L(g) by a fixpoint over elementary-node spans.

    For every elementary node the set of ``(i, j, foot)`` spans its derived
    subtree can cover is computed, where ``foot`` is the span left for the
    foot below it (or None). Adjunction may be repeated at a node, which is
    how stacked adjunctions at roots and feet show up. Unlike the tree
    enumeration this needs no node budget, so it stays exact for grammars
    whose auxiliary trees add no tokens.
    """
    require_valid(g)
    w = w.split() if isinstance(w, str) else list(w)
    n = len(w)
    trees = dict(g.trees)
    aux_by_root = defaultdict(list)
    for name, t in g.auxiliary:
        aux_by_root[t.label].append(name)
    init_by_root = defaultdict(list)
    for name, t in g.initial:
        init_by_root[t.label].append(name)
    top = defaultdict(set)  # (tree, addr) -> spans after adjunction
    node_list = [(name, addr, node) for name, t in g.trees for addr, node in nodes(t)]
    # deepest first so one pass already moves information upward
    node_list.sort(key=lambda x: -len(x[1]))

    def bottom(name, addr, node):
        if node.foot:
            return {(p, q, (p, q)) for p in range(n + 1) for q in range(p, n + 1)}
        if is_substitution_node(node):
            return {s for a in init_by_root[node.label] for s in top[a, ()] if s[2] is None}
        if node.is_leaf:
            if node.label == EPSILON:
                return {(k, k, None) for k in range(n + 1)}
            return {(k, k + 1, None) for k in range(n) if w[k] == node.label}
        combos = set(top[name, addr + (0,)])
        for i in range(1, len(node.children)):
            nxt = set()
            for s, e, f in combos:
                for ks, ke, kf in top[name, addr + (i,)]:
                    if ks == e and (f is None or kf is None):
                        nxt.add((s, ke, f if f is not None else kf))
            combos = nxt
        return combos

    def adjoin_closure(label, spans):
        spans = set(spans)
        todo = list(spans)
        while todo:
            i, j, f = todo.pop()
            for b in aux_by_root[label]:
                for bi, bj, bf in top[b, ()]:
                    if bf == (i, j) and (bi, bj, f) not in spans:
                        spans.add((bi, bj, f))
                        todo.append((bi, bj, f))
        return spans

    changed = True
    while changed:
        changed = False
        for name, addr, node in node_list:
            spans = bottom(name, addr, node)
            if is_nonterminal_name(node.label) and not is_substitution_node(node):
                spans = adjoin_closure(node.label, spans)
            if not spans <= top[name, addr]:
                top[name, addr] |= spans
                changed = True
    return any((0, n, None) in top[a, ()] for a in init_by_root[g.start])
