"""Cross-check every construction on the bundled fixtures.

For each regular-form grammar (the .tag fixtures, the extension of G1 and the
lexicalizer outputs) compare regular against unrestricted derivation, the
compiled automaton against enumeration, and the recognizer against the span
membership oracle on all short strings.
"""
import argparse
import itertools

from regform.automaton import compile_regular_tag, enumerate_accepted
from regform.errors import NotLexicalizable
from regform.fixtures import fixture_names, load_fixture
from regform.lexicalizer import STRATEGIES, cfg_to_regular_tag
from regform.oracle import (
    DerivationBudget,
    derives_string_by_spans,
    enumerate_derived,
    enumerate_regular,
)
from regform.recognizer import recognize
from regform.spine_graph import check_regular_form, extend_to_regular_form


def grammars():
    for name in fixture_names(".tag"):
        g = load_fixture(name)
        if check_regular_form(g)[0]:
            yield name, g
        else:
            yield name + " (extended)", extend_to_regular_form(g)[0]
    for name in fixture_names(".cfg"):
        c = load_fixture(name)
        for sname, s in sorted(STRATEGIES.items()):
            for lexicalized in (False, True):
                try:
                    g = cfg_to_regular_tag(c, s, lexicalized)
                except NotLexicalizable:
                    continue
                yield f"{name}/{sname}/{'lex' if lexicalized else 'plain'}", g


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-nodes", type=int, default=10)
    p.add_argument("--max-length", type=int, default=4)
    args = p.parse_args()
    budget = DerivationBudget(args.max_nodes, 10 ** 7)
    failures = 0
    for name, g in grammars():
        same = enumerate_regular(g, budget) == enumerate_derived(g, budget)
        accepted = set(enumerate_accepted(compile_regular_tag(g), args.max_nodes))
        auto = accepted == set(enumerate_derived(g, budget, completed_only=True))
        strings = [w for n in range(args.max_length + 1)
                   for w in itertools.product(sorted(g.terminals), repeat=n)]
        parse = all(recognize(g, w) == derives_string_by_spans(g, w) for w in strings)
        ok = same and auto and parse
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name}: regular={same} automaton={auto} "
              f"parser={parse} ({len(strings)} strings)")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
