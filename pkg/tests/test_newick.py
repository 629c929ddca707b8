import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cprank import (
    NewickError,
    NonBinaryNodeError,
    caterpillar,
    enumerate_shapes,
    leaf,
    node,
    parse_newick,
    pseudocaterpillar,
    rank,
    to_newick,
    unrank,
)


def test_emission_goldens():
    assert to_newick(leaf()) == ";"
    assert to_newick(node(leaf(), leaf())) == "(,);"
    assert to_newick(caterpillar(4)) == "(((,),),);"
    assert to_newick(pseudocaterpillar(5)) == "(((,),(,)),);"


def test_parse_goldens():
    assert rank(parse_newick("((,),);")) == 3
    assert rank(parse_newick("((A:1,B:2)x,(C,D));")) == 4
    assert rank(parse_newick(" ((( , ), ), );")) == 5
    assert parse_newick(";") is leaf()
    assert parse_newick("A;") is leaf()
    assert parse_newick("'a (quoted), tricky: name';") is leaf()


def test_labels_lengths_and_order_are_discarded():
    a = parse_newick("((x:0.5,(y,z)q:2)w:1,k);")
    b = parse_newick("(k,((z,y),x));")
    assert a is b


def test_non_binary_nodes_rejected_distinctly():
    for text in ["((,,),);", "(a,b,c);", "((a));", "();"]:
        with pytest.raises(NonBinaryNodeError):
            parse_newick(text)


def test_syntax_errors_carry_position():
    with pytest.raises(NewickError) as err:
        parse_newick("((,),;")
    assert "position" in str(err.value)
    for text in ["", "(,)", "(,));", "(,);x", "'open;", "(a:bad,b);"]:
        with pytest.raises(NewickError):
            parse_newick(text)
    with pytest.raises(NonBinaryNodeError):
        parse_newick("((,,),);")


@pytest.mark.parametrize("n", range(1, 11))
def test_round_trip_all_shapes(n):
    for t in enumerate_shapes(n):
        assert parse_newick(to_newick(t)) is t


def test_round_trip_deep_chain():
    # both directions are iterative, so deep chains must not recurse out
    t = caterpillar(3000)
    assert parse_newick(to_newick(t)) is t


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=1, max_value=10**9))
def test_round_trip_random_ranks(k):
    t = unrank(k)
    assert parse_newick(to_newick(t)) is t


def test_whitespace_everywhere():
    assert parse_newick(" ( ( , ) , ( , ) ) ; ") is parse_newick("((,),(,));")
