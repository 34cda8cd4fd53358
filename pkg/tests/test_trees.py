import pytest
from hypothesis import given, strategies as st

from regform.errors import (
    IllegalSite,
    LabelMismatch,
    NotAuxiliaryTree,
    NotInitialTree,
    ParseError,
    UnmappedLabel,
)
from regform.trees import (
    Tree,
    adjoin,
    concatenate,
    foot_address,
    format_tree,
    is_proper,
    is_substitution_node,
    leaf,
    nodes,
    parse_tree,
    project_labels,
    proper_segments,
    spine,
    subtree,
    substitute,
    yield_of,
)

T = parse_tree


def test_parse_and_print_round_trip():
    for text in ["(S a (S a S*))", "(S @b)", "(S A b)", "(S <eps>)", "(A (B A* b))"]:
        assert format_tree(T(text)) == text


def test_flags_and_leaves():
    t = T("(S @a S*)")
    assert t.children[0].anchor and t.children[1].foot
    assert is_substitution_node(T("(S A b)").children[0])
    assert not is_substitution_node(t.children[1])


def test_equality_ignores_anchor():
    assert T("(S @a)") == T("(S a)")
    assert hash(T("(S @a)")) == hash(T("(S a)"))
    assert T("(S A*)") != T("(S A)")


def test_trees_are_immutable():
    t = T("(S a)")
    with pytest.raises(AttributeError):
        t.label = "X"


@pytest.mark.parametrize("text, line_col", [("(S a", (3, 1)), ("(S a))", (3, 6)), ("(S* a)", (3, 2))])
def test_parse_errors_carry_position(text, line_col):
    with pytest.raises(ParseError) as err:
        T(text, line=3)
    assert (err.value.line, err.value.column) == line_col


def test_spine():
    assert spine(T("(S a S*)")) == [(), (1,)]
    assert spine(T("(A (B A* b))")) == [(), (0,), (0, 0)]
    with pytest.raises(NotAuxiliaryTree):
        spine(T("(S a)"))


def test_is_proper():
    assert is_proper(T("(A (B A* b))"))
    assert not is_proper(T("(A (B (A (B A* b)) b))"))
    assert is_proper(T("(S a S*)"))


def test_proper_segments():
    assert proper_segments(T("(A (B A* b))")) == [T("(A (B A* b))")]
    gamma = adjoin(T("(A (B A* b))"), (0,), T("(B (A B* a))"))
    assert gamma == T("(A (B (A (B A* b) a)))")
    assert proper_segments(gamma) == [T("(A (B A*))"), T("(A (B A* b) a)")]
    assert proper_segments(T("(S a (S a S*))")) == [T("(S a S*)"), T("(S a S*)")]


def test_adjoin():
    assert adjoin(T("(S a)"), (), T("(S a S*)")) == T("(S a (S a))")
    assert adjoin(T("(A (B b) a)"), (0,), T("(B (A B* a))")) == T("(A (B (A (B b) a)) a)")
    with pytest.raises(LabelMismatch):
        adjoin(T("(S a)"), (), T("(A (B A* b))"))
    with pytest.raises(IllegalSite):
        adjoin(T("(S A b)"), (0,), T("(A A* a)"))
    with pytest.raises(NotAuxiliaryTree):
        adjoin(T("(S a)"), (), T("(S b)"))


def test_adjoin_does_not_touch_inputs():
    host, aux = T("(S a)"), T("(S a S*)")
    adjoin(host, (), aux)
    assert format_tree(host) == "(S a)" and format_tree(aux) == "(S a S*)"


def test_adjoin_at_foot_and_root_of_aux():
    aux = T("(S a S*)")
    assert adjoin(aux, (), aux) == adjoin(aux, (1,), aux) == T("(S a (S a S*))")


def test_substitute():
    assert substitute(T("(S A b)"), (0,), T("(A a)")) == T("(S (A a) b)")
    with pytest.raises(IllegalSite):
        substitute(T("(S a S*)"), (1,), T("(S b)"))
    with pytest.raises(LabelMismatch):
        substitute(T("(S A b)"), (0,), T("(B b)"))
    with pytest.raises(NotInitialTree):
        substitute(T("(S A b)"), (0,), T("(A A* a)"))


def test_projection():
    t = T("(S_0 a (S_1 a))")
    assert project_labels(t, {"S_0": "S", "S_1": "S", "a": "a"}) == T("(S a (S a))")
    ident = {"S": "S", "a": "a"}
    assert project_labels(T("(S a (S a))"), ident) == T("(S a (S a))")
    with pytest.raises(UnmappedLabel):
        project_labels(t, {"S_0": "S"})


def test_yield_drops_epsilon():
    assert yield_of(T("(S a (S <eps>) b)")) == ("a", "b")


# -- properties ---------------------------------------------------------------

labels = st.sampled_from(["S", "A", "a", "b"])


@st.composite
def trees(draw, depth=3):
    lab = draw(labels)
    if depth == 0 or not lab[0].isupper() or draw(st.booleans()):
        return leaf(lab)
    return Tree(lab, [draw(trees(depth=depth - 1)) for _ in range(draw(st.integers(1, 3)))])


@given(trees())
def test_format_parse_round_trip(t):
    assert parse_tree(format_tree(t)) == t


@given(trees())
def test_subtree_addresses_are_consistent(t):
    for addr, node in nodes(t):
        assert subtree(t, addr) is node


@given(st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_segments_concatenate_back(path):
    # build an auxiliary tree whose spine follows ``path`` with alternating labels
    lab = ["A", "B"]
    node = leaf("A", foot=True)
    for depth, i in reversed(list(enumerate(path))):
        kids = [leaf("a") for _ in range(i)] + [node] + [leaf("b")]
        node = Tree(lab[depth % 2], kids)
    if node.label != "A":
        return
    segs = proper_segments(node)
    assert concatenate(segs) == node
    assert all(is_proper(s) for s in segs)
    assert foot_address(node) is not None
