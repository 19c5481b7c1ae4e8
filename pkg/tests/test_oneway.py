import pytest
from hypothesis import given, settings, strategies as st

from origin_resync.machines import (
    GAMMA_B, SIGMA_A, copier, cyclic_rotation, fig1_t1, fig1_t2, subsequence,
)
from origin_resync.nfa import Alphabet, Nfa, enumerate_words, equivalent, literal
from origin_resync.oneway import (
    EmptyInputOutput, NormalOneWay, OneWayTransducer, OriginGraph,
    SyncFormatError, NotOneWayRealizable, UnboundedEnumeration,
    classical_member, decode, domain_nfa, encode, enumerate_graphs,
    normalize, origin_containment, sync_language,
)

SIGMA = SIGMA_A
GAMMA = GAMMA_B
COMBINED = Alphabet(["a", "b"])


# -- encode / decode ---------------------------------------------------------

def test_encode_basic():
    g = OriginGraph(("a", "a", "a"), (("b", 1), ("b", 2), ("b", 3)))
    assert encode(g, SIGMA, GAMMA) == ["a", "b", "a", "b", "a", "b"]


def test_encode_empty():
    g = OriginGraph((), ())
    assert encode(g, SIGMA, GAMMA) == []


def test_encode_rejects_out_of_range_origin():
    g = OriginGraph(("a",), (("b", 2),))
    with pytest.raises(NotOneWayRealizable):
        encode(g, SIGMA, GAMMA)


def test_encode_rejects_non_monotone_origins():
    g = OriginGraph(("a", "a"), (("b", 2), ("b", 1)))
    with pytest.raises(NotOneWayRealizable):
        encode(g, SIGMA, GAMMA)


def test_decode_rejects_leading_output():
    with pytest.raises(SyncFormatError):
        decode(["b", "a"], SIGMA, GAMMA)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(["a", "b"]), max_size=10))
def test_decode_encode_roundtrip_on_sync_words(word):
    if word and word[0] == "b":
        with pytest.raises(SyncFormatError):
            decode(word, SIGMA, GAMMA)
        return
    graph = decode(word, SIGMA, GAMMA)
    assert encode(graph, SIGMA, GAMMA) == word


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_encode_decode_roundtrip_on_graphs(data):
    n = data.draw(st.integers(min_value=0, max_value=5))
    m = data.draw(st.integers(min_value=0, max_value=6))
    if n == 0:
        m = 0
    origins = sorted(data.draw(st.lists(
        st.integers(min_value=1, max_value=max(n, 1)),
        min_size=m, max_size=m)))
    g = OriginGraph(("a",) * n, tuple(("b", o) for o in origins))
    assert decode(encode(g, SIGMA, GAMMA), SIGMA, GAMMA) == g


# -- normalization -----------------------------------------------------------

def test_fig1_t1_sync_language():
    t1 = fig1_t1()
    # (ab)^{2n} for n >= 0 (epsilon is in the domain)
    expected = Nfa(COMBINED, 4, [0], [0],
                   [(0, "a", 1), (1, "b", 2), (2, "a", 3), (3, "b", 0)])
    assert equivalent(sync_language(t1), expected)


def test_fig1_t2_sync_language():
    t2 = fig1_t2()
    # (abba)^n
    expected = Nfa(COMBINED, 4, [0], [0],
                   [(0, "a", 1), (1, "b", 2), (2, "b", 3), (3, "a", 0)])
    assert equivalent(sync_language(t2), expected)


def test_empty_transducer_sync_language_is_empty():
    t = OneWayTransducer(SIGMA, GAMMA, 2, [0], [1], [])
    assert sync_language(normalize(t)).is_empty()


def test_identity_normalization_of_plain_transducer():
    t = OneWayTransducer(SIGMA, GAMMA, 1, [0], [0], [(0, "a", 0)],
                         trans_out={(0, "a", 0): "b"})
    nt = normalize(t)
    assert nt.real_time and nt.max_block == 1


def test_normalize_regular_output_language_preserves_graphs():
    b_star = Nfa(GAMMA, 1, [0], [0], [(0, "b", 0)])
    t = OneWayTransducer(SIGMA, GAMMA, 1, [0], [0], [(0, "a", 0)],
                         trans_out={(0, "a", 0): b_star})
    nt = normalize(t)
    assert not nt.real_time
    graphs = enumerate_graphs(nt, 2, output_cap=3)
    assert graphs.truncated
    got = {(g.input, g.tagged_output) for g in graphs.graphs}
    expected = set()
    for n in range(3):
        # any block sizes per position, total <= 3
        def rec(i, blocks):
            if i == n:
                tagged = tuple(("b", pos + 1)
                               for pos, k in enumerate(blocks) for _ in range(k))
                expected.add((("a",) * n, tagged))
                return
            for k in range(0, 4 - sum(blocks)):
                rec(i + 1, blocks + [k])
        rec(0, [])
    assert got == expected


def test_rejects_output_on_empty_input():
    t = OneWayTransducer(SIGMA, GAMMA, 1, [0], [0], [(0, "a", 0)],
                         trans_out={(0, "a", 0): "b"},
                         final_out={0: "b"})
    with pytest.raises(EmptyInputOutput):
        normalize(t)


def test_unbounded_enumeration_requires_cap():
    with pytest.raises(UnboundedEnumeration):
        enumerate_graphs(subsequence(), 2)


# -- graph enumeration -------------------------------------------------------

def test_fig1_t1_graphs_at_two():
    graphs = enumerate_graphs(fig1_t1(), 2).graphs
    assert [g for g in graphs if g.input] == [
        OriginGraph(("a", "a"), (("b", 1), ("b", 2)))]


def test_graph_enumeration_roundtrips():
    for t in (fig1_t1(), fig1_t2(), cyclic_rotation(), copier()):
        for g in enumerate_graphs(t, 3).graphs:
            w = encode(g, t.sigma, t.gamma)
            assert decode(w, t.sigma, t.gamma) == g
            assert t.nfa.accepts(w)


def test_sync_language_matches_graph_enumeration():
    t = fig1_t2()
    graphs = enumerate_graphs(t, 4).graphs
    encoded = sorted(tuple(encode(g, t.sigma, t.gamma)) for g in graphs)
    words = sorted(tuple(w) for w in enumerate_words(sync_language(t), 12)
                   if sum(1 for s in w if s == "a") <= 4)
    assert encoded == words


# -- origin containment ------------------------------------------------------

def test_fig1_pair_not_origin_contained():
    ok, witness = origin_containment(fig1_t1(), fig1_t2())
    assert not ok
    assert witness is not None
    assert witness.input == ("a", "a")
    assert witness.tagged_output == (("b", 1), ("b", 2))


def test_origin_containment_reflexive():
    for t in (fig1_t1(), fig1_t2(), cyclic_rotation()):
        ok, _ = origin_containment(t, t)
        assert ok


def test_origin_containment_agrees_with_graph_subsets():
    machines = [fig1_t1(), fig1_t2(), copier()]
    for t1 in machines:
        for t2 in machines:
            ok, _ = origin_containment(t1, t2)
            g1 = set(map(repr, enumerate_graphs(t1, 5).graphs))
            g2 = set(map(repr, enumerate_graphs(t2, 5).graphs))
            if ok:
                assert g1 <= g2
            else:
                assert not (g1 <= g2)


def test_origin_containment_implies_classical():
    t1, t2 = fig1_t1(), fig1_t2()
    ok, _ = origin_containment(t1, t1)
    assert ok
    for g in enumerate_graphs(t1, 5).graphs:
        assert classical_member(t1, g.input, g.output)


# -- classical membership ----------------------------------------------------

def test_rotation_classical_member():
    rot = cyclic_rotation()
    assert classical_member(rot, "abb", "BBA")
    assert not classical_member(rot, "abb", "ABB")


def test_empty_input_no_output():
    t1 = fig1_t1()
    assert not classical_member(t1, "", "b")
    assert classical_member(t1, "", "")


def test_classical_member_agrees_with_graph_projection():
    t = fig1_t2()
    pairs = {(g.input, g.output) for g in enumerate_graphs(t, 5).graphs}
    for n in range(5):
        for m in range(7):
            u, v = ("a",) * n, ("b",) * m
            assert classical_member(t, u, v) == ((u, v) in pairs)


def test_domain_nfa():
    dom = domain_nfa(fig1_t1())
    assert equivalent(dom, Nfa(SIGMA, 2, [0], [0], [(0, "a", 1), (1, "a", 0)]))
