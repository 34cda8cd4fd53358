import pytest
from hypothesis import HealthCheck, given, settings

from regform.errors import ParseError
from regform.fixtures import fixture_names, fixture_text, load_fixture
from regform.grammar import TagGrammar
from regform.formats import parse_cfg_file, parse_grammar_file, render_cfg, render_grammar
from regform.lexicalizer import LEFTMOST, cfg_to_regular_tag

from strategies import small_grammar


def test_g0_file():
    g = parse_grammar_file(fixture_text("G0.tag"))
    assert (len(g.initial), len(g.auxiliary)) == (1, 1)
    assert g.start == "S"


@pytest.mark.parametrize("name", fixture_names(".tag"))
def test_round_trip(name):
    g = load_fixture(name)
    assert parse_grammar_file(render_grammar(g)) == g


def test_round_trip_keeps_anchors():
    g = cfg_to_regular_tag(load_fixture("GCFG1.cfg"), LEFTMOST, lexicalized=True)
    assert render_grammar(parse_grammar_file(render_grammar(g))) == render_grammar(g)


def test_unnamed_entries():
    g = parse_grammar_file("start: S\ninit: (S a)\naux: (S a S*)\n")
    assert [n for n, _ in g.trees] == ["alpha1", "beta1"]


def test_two_feet_position():
    with pytest.raises(ParseError) as err:
        parse_grammar_file("start: S\naux b: (S S* S*)\n")
    assert (err.value.line, err.value.column) == (2, 15)


def test_missing_start():
    with pytest.raises(ParseError, match="no start symbol"):
        parse_grammar_file("init: (S a)\n")


@pytest.mark.parametrize("text, line", [
    ("start: S\nfoo: (S a)\n", 2),
    ("start: S\ninit: (S a\n", 2),
    ("start: S\ninit: (S a)\n\ninit: (S $)\n", 4),
    ("start: S\ninit: (S (a b))\n", 2),
    ("start: s\n", 1),
])
def test_positioned_errors(text, line):
    with pytest.raises(ParseError) as err:
        parse_grammar_file(text)
    assert err.value.line == line


def test_comments_are_ignored():
    g = parse_grammar_file("# header\nstart: S  # the start\ninit: (S a) # tree\n")
    assert len(g.initial) == 1


def test_cfg_file():
    c = parse_cfg_file(fixture_text("GCFG1.cfg"))
    assert len(c.productions) == 2 and c.start == "S"
    eps = parse_cfg_file("S -> <eps>\n")
    assert eps.productions == (("S", ()),)
    assert parse_cfg_file("start: B\nA -> a\nB -> b\n").start == "B"
    assert parse_cfg_file(render_cfg(c)) == c


@pytest.mark.parametrize("text, pos", [("S => a\n", (1, 3)), ("S a\n", (1, 3)), ("S -> a -> b\n", (1, 8)), ("S\n", (1, 2))])
def test_cfg_malformed_arrow(text, pos):
    with pytest.raises(ParseError) as err:
        parse_cfg_file(text)
    assert (err.value.line, err.value.column) == pos


@settings(max_examples=100, suppress_health_check=list(HealthCheck))
@given(small_grammar())
def test_render_parse_round_trip(g):
    # the file format carries no alphabet, so compare against the inferred one
    inferred = TagGrammar.build(g.start, g.initial, g.auxiliary)
    assert parse_grammar_file(render_grammar(g)) == inferred
