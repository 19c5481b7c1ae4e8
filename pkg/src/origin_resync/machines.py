"""Stock machines used across tests, scripts and documentation.

Input and output alphabets are kept disjoint throughout (uppercase letters
are the output copies of lowercase inputs where the classical presentation
would reuse the same letter).
"""

from __future__ import annotations

from .nfa import Alphabet, Nfa, literal
from .oneway import NormalOneWay, OneWayTransducer, normalize

SIGMA_A = Alphabet(["a"])
GAMMA_B = Alphabet(["b"])
SIGMA_AB = Alphabet(["a", "b"])
GAMMA_AB = Alphabet(["A", "B"])


def fig1_t1() -> NormalOneWay:
    """Two-state cycle over domain (aa)*: each `a` emits one `b`."""
    t = OneWayTransducer(SIGMA_A, GAMMA_B, 2, [0], [0],
                         [(0, "a", 1), (1, "a", 0)],
                         trans_out={(0, "a", 1): "b", (1, "a", 0): "b"})
    return normalize(t)


def fig1_t2() -> NormalOneWay:
    """Same function as fig1_t1 but `bb` on odd letters and nothing on even."""
    t = OneWayTransducer(SIGMA_A, GAMMA_B, 2, [0], [0],
                         [(0, "a", 1), (1, "a", 0)],
                         trans_out={(0, "a", 1): "bb", (1, "a", 0): ""})
    return normalize(t)


def cyclic_rotation() -> NormalOneWay:
    """Functional transducer realizing c u -> u C (first letter moved to the
    end, as an output-alphabet copy)."""
    out = {"a": "A", "b": "B"}
    transitions = []
    trans_out = {}
    # state 0 initial; state 1 remembered `a`; state 2 remembered `b`
    for first, st in (("a", 1), ("b", 2)):
        transitions.append((0, first, st))
        trans_out[(0, first, st)] = ""
        for c in "ab":
            transitions.append((st, c, st))
            trans_out[(st, c, st)] = out[c]
    t = OneWayTransducer(SIGMA_AB, GAMMA_AB, 3, [0], [1, 2], transitions,
                         trans_out=trans_out,
                         final_out={1: "A", 2: "B"})
    return normalize(t)


def subsequence() -> NormalOneWay:
    """Relates u to every v having u as a subsequence (not functional, and
    not real-time).  The empty input maps only to the empty output, since
    output without an owning input position is rejected at normalization."""
    gamma_star_a = Nfa(GAMMA_AB, 2, [0], [1],
                       [(0, "A", 0), (0, "B", 0), (0, "A", 1)])
    gamma_star_b = Nfa(GAMMA_AB, 2, [0], [1],
                       [(0, "A", 0), (0, "B", 0), (0, "B", 1)])
    gamma_star = Nfa(GAMMA_AB, 1, [0], [0], [(0, "A", 0), (0, "B", 0)])
    transitions = [(q, c, 1) for q in (0, 1) for c in "ab"]
    trans_out = {(q, "a", 1): gamma_star_a for q in (0, 1)}
    trans_out.update({(q, "b", 1): gamma_star_b for q in (0, 1)})
    t = OneWayTransducer(SIGMA_AB, GAMMA_AB, 2, [0], [0, 1], transitions,
                         trans_out=trans_out,
                         final_out={0: "", 1: gamma_star})
    return normalize(t)


def copier(sigma: Alphabet = SIGMA_A, gamma: Alphabet = GAMMA_B,
           out_map: dict | None = None) -> NormalOneWay:
    """One output letter per input letter, same position."""
    if out_map is None:
        out_map = {s: g for s, g in zip(sigma.symbols, gamma.symbols)}
        if len(out_map) < len(sigma.symbols):
            raise ValueError("provide an explicit letter map")
    transitions = [(0, a, 0) for a in sigma.symbols]
    trans_out = {(0, a, 0): [out_map[a]] for a in sigma.symbols}
    t = OneWayTransducer(sigma, gamma, 1, [0], [0], transitions,
                         trans_out=trans_out)
    return normalize(t)


def per_letter_b_on_even_domain() -> NormalOneWay:
    """T1 of the negative synthesis example: domain (aa)*, one b per a."""
    return fig1_t1()


def two_phase_bb_then_nothing() -> NormalOneWay:
    """T2 of the negative synthesis example: bb per a in a first phase, no
    output afterwards; domain a*."""
    t = OneWayTransducer(SIGMA_A, GAMMA_B, 2, [0], [0, 1],
                         [(0, "a", 0), (0, "a", 1), (1, "a", 1)],
                         trans_out={(0, "a", 0): "bb",
                                    (0, "a", 1): "bb",
                                    (1, "a", 1): ""})
    return normalize(t)


def literal_transducer(sigma: Alphabet, gamma: Alphabet,
                       pairs: list[tuple[str, str]]) -> NormalOneWay:
    """Finite transducer realizing the given (input, output) pairs with all
    output at the first letter's origin (or rejecting epsilon inputs)."""
    from .oneway import OriginGraph, encode
    words = []
    for u, v in pairs:
        graph = OriginGraph(tuple(u), tuple((g, 1) for g in v))
        words.append(encode(graph, sigma, gamma))
    combined = Alphabet(sigma.symbols + gamma.symbols)
    return NormalOneWay(sigma, gamma, literal(combined, words))
