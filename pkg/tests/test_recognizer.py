import itertools

import pytest
from hypothesis import HealthCheck, given, settings

from regform.automaton import TreeAutomaton, compile_regular_tag
from regform.errors import StateExplosion, UnknownToken
from regform.fixtures import load_fixture
from regform.oracle import derives_string_by_spans, sample_language
from regform.recognizer import Recognizer, derive_yield_cfg, recognize
from regform.spine_graph import extend_to_regular_form

from strategies import small_grammar


def test_yield_grammar_of_toy_automaton():
    a = TreeAutomaton(frozenset({"S", "a"}), ("qa", "qS"), frozenset({"qS"}),
                      {("a", ()): frozenset({"qa"}), ("S", ("qa",)): frozenset({"qS"})})
    yg = derive_yield_cfg(a)
    assert yg.unary == (("qS", "qa"),)
    assert yg.lexical == (("qa", "a"),)
    assert yg.binary == () and yg.starts == {"qS"}


def test_empty_start_set():
    a = TreeAutomaton(frozenset({"a"}), ("q",), frozenset(), {("a", ()): frozenset({"q"})})
    assert not Recognizer(derive_yield_cfg(a)).accepts(["a"])


def test_g0(G0):
    assert recognize(G0, "a a a")
    assert not recognize(G0, "")
    with pytest.raises(UnknownToken):
        recognize(G0, "b")
    yg = derive_yield_cfg(compile_regular_tag(G0))
    rec = Recognizer(yg)
    short = {" ".join(w) for n in range(1, 4) for w in itertools.product(["a"], repeat=n) if rec.accepts(w)}
    assert short == {"a", "a a", "a a a"}


def test_epsilon_fixture():
    g = load_fixture("epsilon")
    assert recognize(g, "")
    assert recognize(g, "a b") and recognize(g, "a a b b")
    assert not recognize(g, "a b b")


def test_g1_extended_language(G1x):
    for n in range(6):
        for w in itertools.product("ab", repeat=n):
            assert recognize(G1x, w) == derives_string_by_spans(G1x, w)


def test_chart_cells(G0):
    rec = Recognizer(derive_yield_cfg(compile_regular_tag(G0)))
    chart = rec.chart(["a", "a", "a"])
    assert set(chart) == {(i, j) for i in range(3) for j in range(i + 1, 4)}


def test_sample_is_accepted(G0):
    for w in sample_language(G0, 12):
        assert recognize(G0, w)


@settings(max_examples=60, suppress_health_check=list(HealthCheck))
@given(small_grammar())
def test_recognizer_matches_span_oracle(g):
    g, _ = extend_to_regular_form(g)
    try:
        rec = Recognizer(derive_yield_cfg(compile_regular_tag(g, state_cap=20000)))
    except StateExplosion:
        return
    for n in range(4):
        for w in itertools.product(sorted(g.terminals), repeat=n):
            assert rec.accepts(w) == derives_string_by_spans(g, w)
