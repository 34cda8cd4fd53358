import pytest

from regform.errors import InvalidCfg, NonterminationGuard, NotLexicalizable
from regform.fixtures import fixture_names, load_fixture
from regform.lexicalizer import (
    LEFTMOST,
    RIGHTMOST,
    Cfg,
    ExpansionStrategy,
    build_lcg,
    cfg_derivation_trees,
    cfg_to_regular_tag,
    cfg_to_tsg,
    close_substitution,
    lcg_aux_trees,
    lcg_initial_trees,
    validate_cfg,
)
from regform.oracle import DerivationBudget, enumerate_derived
from regform.spine_graph import check_regular_form
from regform.trees import format_tree, nodes, parse_tree as T


@pytest.fixture
def gcfg1():
    return load_fixture("GCFG1.cfg")


def derived_to_depth(g, depth):
    return enumerate_derived(g, DerivationBudget(max_nodes=500, max_steps=10 ** 7, max_depth=depth),
                             completed_only=True)


def test_cfg_validation():
    with pytest.raises(InvalidCfg):
        Cfg.build([("s", ["a"])])
    with pytest.raises(InvalidCfg):
        validate_cfg(Cfg(frozenset({"a"}), frozenset({"S"}), "S", (("S", ("b",)),)))


def test_tsg(gcfg1):
    g = cfg_to_tsg(gcfg1)
    assert [t for _, t in g.initial] == [T("(S S a)"), T("(S b)")]
    assert g.auxiliary == ()
    eps = cfg_to_tsg(Cfg.build([("S", [])]))
    assert enumerate_derived(eps, 5, completed_only=True) == [T("(S <eps>)")]
    empty = cfg_to_tsg(Cfg.build([], start="S"))
    assert enumerate_derived(empty, 5, completed_only=True) == []


def test_tsg_matches_derivations():
    for name in fixture_names(".cfg"):
        c = load_fixture(name)
        assert derived_to_depth(cfg_to_tsg(c), 4) == cfg_derivation_trees(c, 4), name


def test_derivation_trees(gcfg1):
    assert cfg_derivation_trees(gcfg1, 4) == [T("(S b)"), T("(S (S b) a)"), T("(S (S (S b) a) a)")]


def test_lcg(gcfg1):
    left = build_lcg(gcfg1)
    assert [(e.source, e.target, e.production) for e in left.edges] == [
        ("S", "S", ("S", ("S", "a"))), ("S", "b", ("S", ("b",)))]
    right = build_lcg(gcfg1, RIGHTMOST)
    assert [(e.source, e.target) for e in right.edges] == [("S", "a"), ("S", "b")]
    single = build_lcg(Cfg.build([("S", ["a"])]))
    assert [(e.source, e.target) for e in single.edges] == [("S", "a")]


def test_lcg_epsilon_sink():
    lcg = build_lcg(load_fixture("nullable.cfg"))
    assert "<eps>" in lcg.vertices
    assert T("(S <eps>)") in lcg_initial_trees(lcg)


def test_initial_trees(gcfg1):
    assert lcg_initial_trees(build_lcg(gcfg1)) == [T("(S b)")]
    assert lcg_initial_trees(build_lcg(gcfg1, RIGHTMOST)) == [T("(S b)"), T("(S S a)")]
    assert lcg_initial_trees(build_lcg(Cfg.build([("S", ["a"])]))) == [T("(S a)")]


def test_aux_trees(gcfg1):
    (aux,) = lcg_aux_trees(build_lcg(gcfg1), lexicalize=True)
    assert format_tree(aux) == "(S S* @a)"
    acyclic = Cfg.build([("S", ["A", "S"]), ("A", ["a"]), ("S", ["b"])])
    assert lcg_aux_trees(build_lcg(acyclic)) == []


def test_unlexicalized_cycle_kept_as_is():
    c = Cfg.build([("S", ["S", "A"]), ("S", ["b"]), ("A", ["a"])])
    assert lcg_aux_trees(build_lcg(c)) == [T("(S S* A)")]
    (lex,) = lcg_aux_trees(build_lcg(c), lexicalize=True)
    assert format_tree(lex) == "(S S* (A @a))"


def test_gcfg1_lexicalized(gcfg1):
    g = cfg_to_regular_tag(gcfg1, LEFTMOST, lexicalized=True)
    assert [format_tree(t) for _, t in g.initial] == ["(S @b)"]
    assert [format_tree(t) for _, t in g.auxiliary] == ["(S S* @a)"]
    assert derived_to_depth(g, 4) == [T("(S b)"), T("(S (S b) a)"), T("(S (S (S b) a) a)")]
    assert check_regular_form(g)[0]


def test_not_lexicalizable(gcfg1):
    with_eps = Cfg.build(list(gcfg1.productions) + [("S", [])])
    with pytest.raises(NotLexicalizable):
        cfg_to_regular_tag(with_eps, LEFTMOST, lexicalized=True)
    with pytest.raises(NotLexicalizable):
        cfg_to_regular_tag(load_fixture("unitcycle.cfg"), LEFTMOST, lexicalized=True)


@pytest.mark.parametrize("name", fixture_names(".cfg"))
@pytest.mark.parametrize("strategy", [LEFTMOST, RIGHTMOST], ids=lambda s: s.name)
def test_construction_is_regular_and_equivalent(name, strategy):
    c = load_fixture(name)
    for lexicalized in (False, True):
        try:
            g = cfg_to_regular_tag(c, strategy, lexicalized)
        except NotLexicalizable:
            assert lexicalized and name in ("nullable.cfg", "unitcycle.cfg")
            continue
        assert check_regular_form(g)[0]
        assert derived_to_depth(g, 4) == cfg_derivation_trees(c, 4)
        if lexicalized:
            for _, t in g.trees:
                assert sum(n.anchor for _, n in nodes(t)) == 1


def test_middle_strategy():
    middle = ExpansionStrategy("middle", lambda lhs, rhs: len(rhs) // 2)
    c = load_fixture("anbn.cfg")
    g = cfg_to_regular_tag(c, middle, lexicalized=True)
    assert derived_to_depth(g, 5) == cfg_derivation_trees(c, 5)


def test_close_substitution_identity(gcfg1):
    g = cfg_to_regular_tag(gcfg1, LEFTMOST, lexicalized=True)
    assert close_substitution(g) is g


def test_close_substitution_flat():
    c = load_fixture("flat.cfg")
    g = close_substitution(cfg_to_regular_tag(c))
    assert T("(S (A a) (B b))") in [t for _, t in g.initial]
    assert derived_to_depth(g, 4) == cfg_derivation_trees(c, 4)


def test_close_substitution_recursive_slot_trips_guard():
    # P -> l S r leaves S open in an initial tree, and S's own trees reach P again
    c = load_fixture("dyck.cfg")
    g = cfg_to_regular_tag(c, LEFTMOST, lexicalized=True)
    with pytest.raises(NonterminationGuard) as err:
        close_substitution(g)
    partial = err.value.partial
    assert partial is not None and len(partial.initial) > len(g.initial)


def test_close_substitution_guard(gcfg1):
    with pytest.raises(NonterminationGuard) as err:
        close_substitution(cfg_to_tsg(gcfg1))
    assert err.value.partial is not None
