import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from djspectra import ParseError, evaluate, make_complete, make_cycle, parse, pretty
from djspectra.expr import Comp, Cycles, DJoin, Gen, Line, MSub, Union_, evaluate_graph, tokenize
from djspectra.graph import complement, disjoint_union
from djspectra.transforms import BlockedGraph, H1Kind, H2Kind


def test_examples():
    assert parse("C4") == Gen("C", 4)
    assert parse("cycles(4,3)") == Cycles((4, 3))
    fig = parse("djoin(msub(C4; h1=complete; h2=empty), C3, K4)")
    assert fig == DJoin(MSub(Gen("C", 4), H1Kind.COMPLETE, H2Kind.EMPTY), Gen("C", 3), Gen("K", 4))
    bg = evaluate(fig)
    assert isinstance(bg, BlockedGraph) and (bg.graph.n, bg.graph.m) == (15, 51)


def test_whitespace_and_defaults():
    assert parse("  msub ( K 4 ; h2 = same )") == MSub(Gen("K", 4), H1Kind.EMPTY, H2Kind.SAME)
    assert parse("msub(C5)") == MSub(Gen("C", 5))


def test_evaluation_of_operators():
    assert evaluate_graph(parse("comp(C4)")) == complement(make_cycle(4))
    assert evaluate_graph(parse("union(K2, C3)")) == disjoint_union([make_complete(2), make_cycle(3)])
    assert evaluate_graph(parse("line(K3)")).m == 3
    assert evaluate_graph(parse("cycles(3, 3)")) == disjoint_union([make_cycle(3)] * 2)


@pytest.mark.parametrize("text,offset", [
    ("C", 1),
    ("foo(C3)", 0),
    ("comp(C3", 7),
    ("msub(C4; h1=bogus)", 12),
    ("msub(C4; h3=empty)", 9),
    ("msub(C4; h1=line; h1=line)", 18),
    ("djoin(C4, C3, C3)", 6),
    ("C4 C5", 3),
    ("C4 $", 3),
    ("cycles()", 7),
])
def test_parse_errors_report_byte_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert f"at byte {offset}" in str(info.value)


def test_offsets_are_bytes():
    with pytest.raises(ParseError) as info:
        parse("comp(é)")
    assert info.value.offset == 5
    # a no-break space is two bytes in UTF-8
    toks = tokenize("\u00a0C3 )")
    assert [t.offset for t in toks] == [2, 5, 6]
    with pytest.raises(ParseError) as info:
        parse("\u00a0C3 )")
    assert info.value.offset == 5


def test_error_lists_expected_tokens():
    with pytest.raises(ParseError, match="expected one of"):
        parse("msub(C4; h2=line)")


gen = st.builds(Gen, st.sampled_from("CKE"), st.integers(3, 9))


def _extend(children):
    return st.one_of(
        st.builds(Comp, children),
        st.builds(Line, children),
        st.builds(lambda xs: Union_(tuple(xs)), st.lists(children, min_size=1, max_size=3)),
        st.builds(lambda xs: Cycles(tuple(xs)), st.lists(st.integers(3, 9), min_size=1, max_size=3)),
    )


plain = st.recursive(gen, _extend, max_leaves=6)
msub = st.builds(MSub, plain, st.sampled_from(list(H1Kind)), st.sampled_from(list(H2Kind)))
exprs = st.one_of(plain, msub, st.builds(DJoin, msub, plain, plain))


@settings(max_examples=150, deadline=None)
@given(exprs)
def test_pretty_parse_round_trip(e):
    assert parse(pretty(e)) == e
    assert pretty(parse(pretty(e))) == pretty(e)
