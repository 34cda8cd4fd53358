"""Bottom-up nondeterministic tree automata and compilation of regular-form TAGs."""
from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .errors import NotRegularForm, ParseError, StateExplosion, UnknownSymbol
from .grammar import TagGrammar, require_valid
from .trees import EPSILON, Tree, canonical, foot_address, is_substitution_node, nodes


@dataclass(frozen=True)
class TreeAutomaton:
    alphabet: frozenset
    states: tuple
    finals: frozenset
    transitions: dict = field(hash=False, compare=True)  # (symbol, (q, ...)) -> frozenset

    def __post_init__(self):
        known = set(self.states)
        if not self.finals <= known:
            raise ValueError("final states must be states")
        for (sym, qs), targets in self.transitions.items():
            if not set(qs) <= known or not set(targets) <= known:
                raise ValueError(f"transition on {sym!r} mentions an unknown state")
        index = defaultdict(list)
        for (sym, qs), targets in self.transitions.items():
            index[sym, len(qs)].append((qs, targets))
        object.__setattr__(self, "_index", dict(index))

    def rules(self, symbol, arity):
        return self._index.get((symbol, arity), ())


def run_automaton(a: TreeAutomaton, t: Tree) -> frozenset:
    """The set of states the automaton can reach at the root of ``t``."""
    if t.label not in a.alphabet:
        raise UnknownSymbol(f"symbol {t.label!r} is not in the automaton's alphabet")
    below = [run_automaton(a, c) for c in t.children]
    reached = set()
    for qs, targets in a.rules(t.label, len(below)):
        if all(q in s for q, s in zip(qs, below)):
            reached |= targets
    return frozenset(reached)


def accepts(a: TreeAutomaton, t: Tree) -> bool:
    return bool(a.finals & run_automaton(a, t))


def enumerate_accepted(a: TreeAutomaton, max_nodes: int) -> list:
    """Every accepted tree with at most ``max_nodes`` nodes, canonically ordered."""
    if max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    by_state = defaultdict(lambda: defaultdict(set))  # state -> size -> trees
    for size in range(1, max_nodes + 1):

        @lru_cache(maxsize=None)
        def fill(qs, total):
            # tuples of subtrees for the state sequence ``qs`` using exactly ``total`` nodes
            if not qs:
                return ((),) if total == 0 else ()
            out = []
            head, rest = qs[0], qs[1:]
            for k in range(1, total - len(rest) + 1):
                firsts = by_state[head].get(k)
                if not firsts:
                    continue
                tails = fill(rest, total - k)
                out.extend((t,) + tail for t in firsts for tail in tails)
            return tuple(out)

        new = defaultdict(set)
        for (sym, qs), targets in a.transitions.items():
            if len(qs) == 0:
                if size == 1:
                    for q in targets:
                        new[q].add(Tree(sym))
                continue
            if len(qs) > size - 1:
                continue
            for kids in fill(qs, size - 1):
                t = Tree(sym, kids)
                for q in targets:
                    new[q].add(t)
        for q, ts in new.items():
            by_state[q][size] |= ts
    accepted = set()
    for q in a.finals:
        for ts in by_state[q].values():
            accepted |= ts
    return canonical(accepted)


# -- compilation ------------------------------------------------------------

class CompiledState(NamedTuple):
    """An elementary node plus the stack of hosts still waiting above it.

    ``nesting`` lists ``(tree name, address)`` sites, outermost first; the last
    entry is where the current auxiliary tree was adjoined.
    """

    tree: str
    address: tuple
    nesting: tuple = ()

    def __str__(self):
        addr = ".".join(map(str, self.address)) or "r"
        inner = ";".join(f"{n}@{'.'.join(map(str, a)) or 'r'}" for n, a in self.nesting)
        return f"{self.tree}@{addr}[{inner}]"


def compile_regular_tag(g: TagGrammar, max_nesting: int | None = None,
                        state_cap: int = 10 ** 5, check: bool = True) -> TreeAutomaton:
    """Build a tree automaton accepting exactly the completed trees of ``g``.

    A state names the elementary node a derived-tree node instantiates, and,
    along spines, the stack of adjunction sites awaiting the enclosing
    auxiliary tree's root. Adjunction at the root or foot of an auxiliary
    tree is read as stacking at the host site, so only interior-spine
    adjunction deepens the stack; its depth is capped at ``max_nesting``
    (default: number of non-terminals + 1) and its entries must carry
    pairwise distinct labels.
    """
    require_valid(g)
    if check:
        from .spine_graph import check_regular_form
        ok, _ = check_regular_form(g)
        if not ok:
            raise NotRegularForm("grammar is not in regular form")
    if max_nesting is None:
        max_nesting = len(g.nonterminals) + 1

    trees = dict(g.trees)
    aux_names = {name for name, _ in g.auxiliary}
    aux_by_root = defaultdict(list)
    for name, t in g.auxiliary:
        aux_by_root[t.label].append(name)
    feet = {name: foot_address(trees[name]) for name in aux_names}
    node_of = {}
    for name, t in g.trees:
        for addr, node in nodes(t):
            node_of[name, addr] = node
    subst_sites = defaultdict(list)
    for (name, addr), node in node_of.items():
        if is_substitution_node(node):
            subst_sites[node.label].append((name, addr))

    def on_spine(name, addr):
        f = feet.get(name)
        return f is not None and f[:len(addr)] == addr and addr != f

    def is_site(name, addr):
        node = node_of[name, addr]
        if node.is_leaf or node.label not in g.nonterminals:
            return False
        return not (name in aux_names and addr == ())

    def eps_moves(q):
        name, addr, stack = q
        out = []
        if is_site(name, addr):
            label = node_of[name, addr].label
            used = {node_of[s].label for s in stack}
            if len(stack) < max_nesting and label not in used:
                pushed = stack + ((name, addr),)
                for b in aux_by_root[label]:
                    out.append(CompiledState(b, feet[b], pushed))
        if addr == ():
            if name in aux_names:
                if stack:
                    host, site = stack[-1]
                    out.append(CompiledState(host, site, stack[:-1]))
            else:
                for host, site in subst_sites[trees[name].label]:
                    out.append(CompiledState(host, site, ()))
        return out

    reach = set()
    queue = deque()

    def add(q):
        if q in reach:
            return
        reach.add(q)
        if len(reach) > state_cap:
            raise StateExplosion(f"more than {state_cap} reachable states")
        queue.append(q)

    def parent_ready(name, paddr):
        """Child-state tuples available for node ``paddr`` given current reach."""
        pnode = node_of[name, paddr]
        kids = [paddr + (i,) for i in range(len(pnode.children))]
        if on_spine(name, paddr):
            spine_kid = next(k for k in kids if on_spine(name, k) or k == feet[name])
            if not all(CompiledState(name, k, ()) in reach for k in kids if k != spine_kid):
                return []
            stacks = stacks_at[name, spine_kid]
            return [(s, tuple(CompiledState(name, k, s if k == spine_kid else ()) for k in kids))
                    for s in stacks]
        combo = tuple(CompiledState(name, k, ()) for k in kids)
        return [((), combo)] if all(c in reach for c in combo) else []

    stacks_at = defaultdict(set)
    for (name, addr), node in node_of.items():
        if node.is_leaf and not node.foot and not is_substitution_node(node):
            add(CompiledState(name, addr, ()))
    while queue:
        q = queue.popleft()
        stacks_at[q.tree, q.address].add(q.nesting)
        for r in eps_moves(q):
            add(r)
        if q.address:
            paddr = q.address[:-1]
            for stack, _ in parent_ready(q.tree, paddr):
                add(CompiledState(q.tree, paddr, stack))

    closure_cache = {}

    def closure(q):
        if q not in closure_cache:
            seen = {q}
            todo = [q]
            while todo:
                for r in eps_moves(todo.pop()):
                    if r not in seen and r in reach:
                        seen.add(r)
                        todo.append(r)
            closure_cache[q] = frozenset(seen)
        return closure_cache[q]

    transitions = defaultdict(set)
    for (name, addr), node in node_of.items():
        if node.is_leaf:
            if node.foot or is_substitution_node(node):
                continue  # only ever reached through an epsilon move
            q = CompiledState(name, addr, ())
            if q in reach:
                transitions[node.label, ()] |= closure(q)
            continue
        for stack, combo in parent_ready(name, addr):
            q = CompiledState(name, addr, stack)
            transitions[node.label, combo] |= closure(q)

    finals = frozenset(CompiledState(name, (), ()) for name, t in g.initial
                       if t.label == g.start) & reach
    states = tuple(sorted(reach, key=_state_key))
    return TreeAutomaton(
        alphabet=frozenset(g.terminals | g.nonterminals | {EPSILON}),
        states=states,
        finals=finals,
        transitions={k: frozenset(v) for k, v in transitions.items()},
    )


def _state_key(q):
    return str(q)


def max_nesting_depth(a: TreeAutomaton) -> int:
    return max((len(q.nesting) for q in a.states if isinstance(q, CompiledState)), default=0)


# -- text format ------------------------------------------------------------

def automaton_to_text(a: TreeAutomaton) -> str:
    """Line format: ``state <id>``, ``final <id>``, ``trans <sym> [<id> ...] -> <id>``."""
    ids = {q: f"q{i}" for i, q in enumerate(a.states)}
    lines = []
    for q in a.states:
        note = f"  # {q}" if isinstance(q, CompiledState) else ""
        lines.append(f"state {ids[q]}{note}")
    for q in a.states:
        if q in a.finals:
            lines.append(f"final {ids[q]}")
    rows = []
    for (sym, qs), targets in a.transitions.items():
        for t in targets:
            rows.append((sym, tuple(ids[x] for x in qs), ids[t]))
    rows.sort(key=lambda r: (r[0], [int(x[1:]) for x in r[1]], int(r[2][1:])))
    for sym, qs, t in rows:
        lhs = " ".join((sym,) + qs)
        lines.append(f"trans {lhs} -> {t}")
    return "\n".join(lines) + "\n"


def automaton_from_text(text: str) -> TreeAutomaton:
    states, finals = [], set()
    transitions = defaultdict(set)
    alphabet = set()
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "state" and rest:
            states.append(rest)
        elif word == "final" and rest:
            finals.add(rest)
        elif word == "trans" and "->" in rest:
            lhs, _, target = rest.rpartition("->")
            parts = lhs.split()
            if not parts or not target.strip():
                raise ParseError("malformed transition", n, 1)
            alphabet.add(parts[0])
            transitions[parts[0], tuple(parts[1:])].add(target.strip())
        else:
            raise ParseError(f"unrecognised line {raw!r}", n, 1)
    declared = set(states)
    for (sym, qs), targets in transitions.items():
        for q in itertools.chain(qs, targets):
            if q not in declared:
                declared.add(q)
                states.append(q)
    return TreeAutomaton(frozenset(alphabet), tuple(states), frozenset(finals),
                         {k: frozenset(v) for k, v in transitions.items()})
