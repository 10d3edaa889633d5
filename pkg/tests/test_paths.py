import pytest
from hypothesis import given, strategies as st

from treeq import ALPHA, EPSILON, TAU, Path, apply_path, apply_path_array, parse_array, parse_path, parse_tree
from treeq.testing import GenConfig, Generator
from treeq.testing.oracle import follow, from_plain, to_plain

T = parse_tree("υ{x:[υ{z:[1{},2{}], y:[3{}]}]}")


def test_example_paths():
    assert apply_path(T, Path("x")) == parse_array("[υ{z:[1{},2{}], y:[3{}]}]")
    assert apply_path(T, Path("x.z")) == parse_array("[1{},2{}]")


def test_terminator_and_absent():
    assert apply_path(T, EPSILON) == (T,)
    assert apply_path(parse_tree("υ{}"), Path("x")) is ALPHA
    assert apply_path(TAU, EPSILON) is ALPHA


def test_empty_array_is_not_absent():
    assert apply_path(parse_tree("υ{x:[]}"), Path("x.y")) == ()


def test_mixed_absence_is_absorbed():
    t = parse_tree("υ{x:[υ{z:[1{}]}, υ{w:[2{}]}, υ{z:[3{}]}]}")
    assert apply_path(t, Path("x.z")) == parse_array("[1{},3{}]")
    assert apply_path(t, Path("x.q")) is ALPHA


def test_parse_path():
    assert parse_path("M.D.L") == ("M", "D", "L")
    assert parse_path('"my key".x') == ("my key", "x")
    assert parse_path("") == EPSILON
    assert str(Path(["my key", "x"])) == '"my key".x'
    with pytest.raises(ValueError):
        parse_path("a..b")
    with pytest.raises(ValueError):
        Path(["a", ""])


def test_apply_path_array_simple():
    p = Path("x.z")
    assert apply_path_array((T,), p) == apply_path(T, p)
    assert apply_path_array((), p) == ()


def _flat_map(a, labels):
    out = None
    for t in a:
        r = follow(to_plain(t), labels)
        if r is None:
            continue
        out = (out or []) + r
    if out is None:
        return ALPHA if a else ()
    return tuple(from_plain(n) for n in out)


def test_apply_path_array_matches_flat_map_oracle():
    g = Generator(GenConfig(seed=11))
    for _ in range(200):
        a, p = g.array(), g.path()
        assert apply_path_array(a, p) == _flat_map(a, tuple(p))


@st.composite
def tree_and_paths(draw):
    g = Generator(GenConfig(), seed=draw(st.integers(0, 10**6)))
    return g.tree(), g.path(0, 2), g.path(0, 2)


def _reached(a):
    return () if a is ALPHA else a


@given(tree_and_paths())
def test_traversal_reaches_the_same_trees_in_two_steps(args):
    # only the reached trees agree: an empty branch on the way can turn α into []
    t, p, q = args
    head = apply_path(t, p)
    if head is not ALPHA:
        assert _reached(apply_path(t, p + q)) == _reached(apply_path_array(head, q))


def test_two_step_traversal_can_lose_emptiness():
    t = parse_tree("υ{b:[υ{a:[]}, υ{a:[1{}]}]}")
    assert apply_path(t, Path("b.a.z")) == ()
    assert apply_path_array(apply_path(t, Path("b.a")), Path("z")) is ALPHA


@given(tree_and_paths())
def test_never_returns_null_tree(args):
    t, p, _ = args
    out = apply_path(t, p)
    assert out is ALPHA or all(u is not TAU for u in out)
