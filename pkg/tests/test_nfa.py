import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from origin_resync.nfa import (
    Alphabet, AlphabetMismatch, Nfa, complement, containment, determinize,
    empty, enumerate_words, equivalent, literal, product, universal, union,
)

AB = Alphabet(["a", "b"])
A_ONLY = Alphabet(["a"])


def a_star():
    return Nfa(AB, 1, [0], [0], [(0, "a", 0)])


def aa_star(alpha=AB):
    return Nfa(alpha, 2, [0], [0], [(0, "a", 1), (1, "a", 0)])


def random_nfa(rng, alpha=AB, n=4):
    transitions = []
    for p in range(n):
        for sym in alpha.symbols:
            for q in range(n):
                if rng.random() < 0.3:
                    transitions.append((p, sym, q))
    initials = [rng.randrange(n)]
    finals = [q for q in range(n) if rng.random() < 0.4]
    return Nfa(alpha, n, initials, finals, transitions)


def test_product_a_star_aa_star():
    result = product(a_star(), aa_star())
    assert enumerate_words(result, 6) == enumerate_words(aa_star(), 6)


def test_product_with_empty_is_empty():
    assert product(a_star(), empty(AB)).is_empty()


def test_product_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch) as err:
        product(a_star(), aa_star(A_ONLY))
    assert "a" in str(err.value) and "b" in str(err.value)


def test_product_agrees_with_enumeration_on_random_pairs():
    rng = random.Random(7)
    for _ in range(25):
        a, b = random_nfa(rng), random_nfa(rng)
        got = {tuple(w) for w in enumerate_words(product(a, b), 6)}
        expected = {tuple(w) for w in enumerate_words(a, 6)} & {
            tuple(w) for w in enumerate_words(b, 6)}
        assert got == expected


def test_complement_of_empty_is_universal():
    c = complement(empty(AB))
    for n in range(4):
        assert len(enumerate_words(c, n)) == sum(2**k for k in range(n + 1))


def test_double_complement_preserves_language():
    rng = random.Random(3)
    for _ in range(15):
        a = random_nfa(rng)
        cc = complement(complement(a))
        assert enumerate_words(cc, 6) == enumerate_words(a, 6)


def test_complement_of_aa_star_over_unary():
    c = complement(aa_star(A_ONLY))
    assert not c.accepts([])
    assert c.accepts(["a"])
    assert not c.accepts(["a", "a"])


def test_complement_is_deterministic_and_complete():
    c = complement(aa_star())
    assert len(c.initials) == 1
    for q in range(c.n_states):
        for sym in AB.symbols:
            assert len(c.adj()[q].get(sym, ())) == 1


def test_containment_trivial_cases():
    ok, witness = containment(aa_star(), a_star())
    assert ok and witness is None
    ok, witness = containment(a_star(), aa_star())
    assert not ok
    assert witness == ["a"]


def test_containment_agrees_with_enumeration():
    rng = random.Random(11)
    for _ in range(30):
        a, b = random_nfa(rng), random_nfa(rng)
        ok, witness = containment(a, b)
        ea = {tuple(w) for w in enumerate_words(a, 7)}
        eb = {tuple(w) for w in enumerate_words(b, 7)}
        if ok:
            assert ea <= eb
        else:
            assert a.accepts(witness) and not b.accepts(witness)


def test_containment_witness_is_shortest_lex_least():
    # a* vs language {epsilon, b-containing words}: witness should be "a"
    only_b = Nfa(AB, 1, [0], [0], [(0, "b", 0)])
    ok, witness = containment(universal(AB), only_b)
    assert not ok and witness == ["a"]


def test_enumerate_aa_star():
    words = enumerate_words(aa_star(A_ONLY), 4)
    assert words == [[], ["a", "a"], ["a", "a", "a", "a"]]


def test_enumerate_empty():
    assert enumerate_words(empty(AB), 9) == []


def test_enumerate_roundtrip_membership():
    rng = random.Random(19)
    for _ in range(20):
        a = random_nfa(rng)
        for w in enumerate_words(a, 5):
            assert a.accepts(w)


def test_enumeration_order_is_length_then_lex():
    a = universal(AB)
    words = [tuple(w) for w in enumerate_words(a, 2)]
    assert words == [(), ("a",), ("b",), ("a", "a"), ("a", "b"),
                     ("b", "a"), ("b", "b")]


def test_equivalence_matches_bounded_enumeration():
    # containment both ways iff enumerations agree up to the pumping-safe
    # bound |det(a)| * |det(b)|: any difference shows up within the bound
    rng = random.Random(23)
    for _ in range(15):
        a, b = random_nfa(rng, n=3), random_nfa(rng, n=3)
        bound = determinize(a).n_states * determinize(b).n_states
        if equivalent(a, b):
            assert enumerate_words(a, 6) == enumerate_words(b, 6)
        else:
            ok_ab, w1 = containment(a, b)
            ok_ba, w2 = containment(b, a)
            shortest = min((len(w) for w in (w1, w2) if w is not None),
                           default=None)
            assert shortest is not None and shortest <= bound


def test_literal_and_union():
    lang = literal(AB, [["a"], ["b", "a"]])
    assert enumerate_words(lang, 3) == [["a"], ["b", "a"]]
    both = union(lang, literal(AB, [[]]))
    assert enumerate_words(both, 3) == [[], ["a"], ["b", "a"]]


def test_canonical_outputs_are_reproducible():
    rng1, rng2 = random.Random(5), random.Random(5)
    a1, b1 = random_nfa(rng1), random_nfa(rng1)
    a2, b2 = random_nfa(rng2), random_nfa(rng2)
    assert product(a1, b1) == product(a2, b2)
    assert complement(a1) == complement(a2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["a", "b"]), max_size=6))
def test_universal_accepts_everything(word):
    assert universal(AB).accepts(word)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=9))
def test_membership_via_enumeration(seed):
    rng = random.Random(seed)
    a = random_nfa(rng)
    enumerated = {tuple(w) for w in enumerate_words(a, 4)}
    for k in range(4):
        for w in itertools.product(AB.symbols, repeat=k):
            assert a.accepts(list(w)) == (w in enumerated)
