import itertools

import pytest
from hypothesis import HealthCheck, given, settings

from regform.errors import BudgetExceeded
from regform.grammar import TagGrammar
from regform.oracle import (
    DerivationBudget,
    derives_string,
    derives_string_by_spans,
    elementary_node_bound,
    enumerate_derived,
    enumerate_regular,
    is_derivable,
    is_regular_step,
    regularity_context,
    sample_language,
)
from regform.trees import parse_tree as T

from strategies import small_grammar


def test_g0_completed_trees(G0):
    # a chain of k adjunctions has 2(k+1) nodes, so 9 nodes admit four a's
    expected = [T("(S a)"), T("(S a (S a))"), T("(S a (S a (S a)))"), T("(S a (S a (S a (S a))))")]
    assert enumerate_derived(G0, 9, completed_only=True) == expected
    assert enumerate_derived(G0, 2, completed_only=True) == [T("(S a)")]


def test_g0_counts_match_closed_form(G0):
    for n in range(2, 15):
        assert len(enumerate_derived(G0, n, completed_only=True)) == n // 2


def test_no_initial_trees():
    g = TagGrammar.build("S", [], [T("(S a S*)")])
    assert enumerate_derived(g, 9, completed_only=True) == []
    assert sample_language(g, 9) == set()


def test_empty_grammar():
    g = TagGrammar.build("S")
    assert enumerate_derived(g, 9) == [] and enumerate_regular(g, 9) == []


def test_sample_language(G0, G1):
    assert sample_language(G0, 9) == {"a", "a a", "a a a", "a a a a"}
    assert sample_language(G1, 5) == {"b a"}


def test_regular_step_clauses(G1):
    bA = dict(G1.auxiliary)["beta_A"]
    bB = dict(G1.auxiliary)["beta_B"]
    init = dict(G1.initial)["alpha"]
    assert is_regular_step(regularity_context(init, (0,), bA))
    assert not is_regular_step(regularity_context(bA, (0,), bB))
    improper = T("(A (B (A (B A* b) a)))")
    assert not is_regular_step(regularity_context(bA, (), improper))
    assert is_regular_step(regularity_context(bA, (), bA))


def test_regular_enumeration_is_strictly_smaller_on_g1(G1):
    budget = DerivationBudget(12)
    regular = set(enumerate_regular(G1, budget))
    derived = set(enumerate_derived(G1, budget))
    assert regular < derived
    assert T("(A (B (A (B A* b) a)))") in derived - regular
    assert (len(regular), len(derived)) == (14, 24)
    # below the size of the first improper composite the two agree
    assert set(enumerate_regular(G1, 6)) == set(enumerate_derived(G1, 6))


def test_regular_equals_derived_on_g0(G0):
    assert enumerate_regular(G0, 9, True) == enumerate_derived(G0, 9, True)


def test_is_derivable(G0, G1):
    assert is_derivable(G0, T("(S a (S a))"), regular_only=True)
    assert is_derivable(G0, T("(S a)"))
    assert not is_derivable(G1, T("(A (B A*))"), budget=20)
    assert not is_derivable(G1, T("(A (B A*))"), regular_only=True, budget=20)


def test_budget_exceeded_carries_partial(G0):
    with pytest.raises(BudgetExceeded) as err:
        enumerate_derived(G0, DerivationBudget(max_nodes=30, max_steps=5))
    assert err.value.partial
    assert set(err.value.partial) <= set(enumerate_derived(G0, 30))


def test_depth_bound(G0):
    trees = enumerate_derived(G0, DerivationBudget(max_nodes=50, max_depth=3), completed_only=True)
    assert trees == [T("(S a)"), T("(S a (S a))")]


def test_budget_validation():
    with pytest.raises(ValueError):
        DerivationBudget(max_nodes=0)


def test_elementary_node_bound(G0, G1, G1x):
    assert elementary_node_bound(G0, 4) == 9
    assert elementary_node_bound(G1, 6) == 19
    assert elementary_node_bound(G1x, 6) is None  # it has token-free trees


def test_string_membership_routes_agree(G0, G1):
    for g in (G0, G1):
        for n in range(6):
            for w in itertools.product(sorted(g.terminals), repeat=n):
                bound = elementary_node_bound(g, n)
                assert derives_string(g, w, DerivationBudget(bound, 10 ** 7)) == derives_string_by_spans(g, w)


@settings(max_examples=60, deadline=None, suppress_health_check=list(HealthCheck))
@given(small_grammar())
def test_span_membership_matches_enumeration(g):
    # anything found by bounded enumeration must be accepted by the span fixpoint
    try:
        language = sample_language(g, DerivationBudget(10, 10 ** 5))
    except BudgetExceeded:
        return
    for w in language:
        assert derives_string_by_spans(g, w)
    bound = elementary_node_bound(g, 3)
    if bound is None or bound > 12:
        return
    for n in range(4):
        for w in itertools.product(sorted(g.terminals), repeat=n):
            try:
                brute = derives_string(g, w, DerivationBudget(elementary_node_bound(g, n), 10 ** 5))
            except BudgetExceeded:
                continue
            assert brute == derives_string_by_spans(g, w)
