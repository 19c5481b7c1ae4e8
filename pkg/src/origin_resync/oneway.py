"""One-way transducers with origin semantics.

An origin graph pairs an input word with an output word whose letters are
tagged by the input position that produced them.  For one-way transducers
origin graphs are in bijection with *synchronized words* over the disjoint
union of the alphabets: each input letter is followed by the output block
it produces.  A normalized transducer is kept directly as an automaton
over that combined alphabet, so regular-language algorithms decide origin
questions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .nfa import (
    Alphabet, Nfa, canonical, containment, from_fragments, literal,
)


class SyncFormatError(Exception):
    """Word over the combined alphabet that is not a synchronized word."""


class NotOneWayRealizable(Exception):
    """Origin graph whose origins cannot come from a one-way run."""


class EmptyInputOutput(Exception):
    """Transducer emitting output on the empty input (no position to own it)."""


class UnboundedEnumeration(Exception):
    """Graph enumeration of a non-real-time transducer needs an output cap."""


@dataclass(frozen=True)
class OriginGraph:
    """Input word plus output letters tagged with 1-based input origins."""

    input: tuple
    tagged_output: tuple  # of (symbol, origin)

    @property
    def output(self) -> tuple:
        return tuple(sym for sym, _ in self.tagged_output)

    @property
    def origins(self) -> tuple:
        return tuple(pos for _, pos in self.tagged_output)

    def __repr__(self) -> str:
        inp = "".join(map(str, self.input)) or "ε"
        out = " ".join(f"{s}@{o}" for s, o in self.tagged_output) or "ε"
        return f"OriginGraph({inp}, {out})"


class GraphEnumeration(NamedTuple):
    graphs: list
    truncated: bool


def combine_alphabets(sigma: Alphabet, gamma: Alphabet) -> Alphabet:
    overlap = set(sigma.symbols) & set(gamma.symbols)
    if overlap:
        raise ValueError(f"input and output alphabets overlap: {overlap}")
    return Alphabet(sigma.symbols + gamma.symbols)


def encode(graph: OriginGraph, sigma: Alphabet, gamma: Alphabet) -> list:
    """Synchronized word of a one-way admissible origin graph."""
    n = len(graph.input)
    prev = 1
    for sym, origin in graph.tagged_output:
        if not 1 <= origin <= n:
            raise NotOneWayRealizable(
                f"origin {origin} outside input range [1,{n}]")
        if origin < prev:
            raise NotOneWayRealizable(
                "origins decrease along the output: not one-way realizable")
        prev = origin
    word = []
    by_pos: dict = {}
    for sym, origin in graph.tagged_output:
        by_pos.setdefault(origin, []).append(sym)
    for i, a in enumerate(graph.input, start=1):
        word.append(a)
        word.extend(by_pos.get(i, ()))
    return word


def decode(word: Sequence, sigma: Alphabet, gamma: Alphabet) -> OriginGraph:
    """Origin graph of a synchronized word in (Sigma Gamma*)*."""
    inp: list = []
    tagged: list = []
    for sym in word:
        if sym in sigma:
            inp.append(sym)
        elif sym in gamma:
            if not inp:
                raise SyncFormatError(
                    "synchronized word may not start with an output letter")
            tagged.append((sym, len(inp)))
        else:
            raise SyncFormatError(f"symbol {sym!r} in neither alphabet")
    return OriginGraph(tuple(inp), tuple(tagged))


OutputLang = Union[Nfa, Sequence, None]


class OneWayTransducer:
    """The classical model: transitions consume one input letter and emit a
    word from a regular language; final states emit a final regular output."""

    def __init__(self, sigma: Alphabet, gamma: Alphabet, n_states: int,
                 initials: Iterable[int], finals: Iterable[int],
                 transitions: Iterable[tuple],
                 trans_out: Optional[dict] = None,
                 final_out: Optional[dict] = None):
        self.sigma = sigma
        self.gamma = gamma
        self.n_states = n_states
        self.initials = frozenset(initials)
        self.finals = frozenset(finals)
        self.transitions = frozenset(transitions)
        self.trans_out = {e: self._as_lang(v) for e, v in (trans_out or {}).items()}
        self.final_out = {q: self._as_lang(v) for q, v in (final_out or {}).items()}
        for (q, a, q2) in self.transitions:
            if a not in sigma:
                raise ValueError(f"input symbol {a!r} not in input alphabet")
        for lang in list(self.trans_out.values()) + list(self.final_out.values()):
            if lang.alphabet != gamma:
                raise ValueError("output language over the wrong alphabet")

    def _as_lang(self, value: OutputLang) -> Nfa:
        if isinstance(value, Nfa):
            return value
        if value is None:
            value = []
        return literal(self.gamma, [list(value)])

    def out_lang(self, e: tuple) -> Nfa:
        return self.trans_out.get(e, literal(self.gamma, [[]]))

    def fin_lang(self, q: int) -> Nfa:
        return self.final_out.get(q, literal(self.gamma, [[]]))


class NormalOneWay:
    """Normal form: an automaton over the combined alphabet whose language is
    exactly the set of synchronized words of the transducer.

    Regular output languages are realized by single-letter emission steps
    that keep the current origin, so every transition either consumes one
    input letter or emits one output letter.
    """

    def __init__(self, sigma: Alphabet, gamma: Alphabet, nfa: Nfa):
        self.sigma = sigma
        self.gamma = gamma
        self.combined = combine_alphabets(sigma, gamma)
        if nfa.alphabet != self.combined:
            raise ValueError("normal form automaton over the wrong alphabet")
        self.nfa = nfa.trim()
        for q in self.nfa.initials:
            for sym in gamma.symbols:
                if self.nfa.adj()[q].get(sym):
                    raise EmptyInputOutput(
                        "transducer emits output before consuming any input")
        self.real_time, self.max_block = self._output_profile()

    def _output_profile(self) -> tuple[bool, Optional[int]]:
        """(real-time?, longest output block) on the trimmed automaton."""
        gamma_adj: dict = {q: set() for q in range(self.nfa.n_states)}
        for (p, s, q) in self.nfa.transitions:
            if s in self.gamma:
                gamma_adj[p].add(q)
        # detect a cycle in the Gamma-only subgraph
        color = {q: 0 for q in gamma_adj}
        order: list = []

        def visit(q) -> bool:
            color[q] = 1
            for r in gamma_adj[q]:
                if color[r] == 1:
                    return True
                if color[r] == 0 and visit(r):
                    return True
            color[q] = 2
            order.append(q)
            return False

        for q in gamma_adj:
            if color[q] == 0 and visit(q):
                return False, None
        longest = {q: 0 for q in gamma_adj}
        for q in order:  # reverse topological
            for r in gamma_adj[q]:
                longest[q] = max(longest[q], 1 + longest[r])
        return True, max(longest.values(), default=0)

    def __repr__(self) -> str:
        rt = "real-time" if self.real_time else "non-real-time"
        return f"NormalOneWay({self.nfa!r}, {rt})"


def normalize(t: OneWayTransducer) -> NormalOneWay:
    """Inline output languages as single-letter emission layers.

    The origin-graph sets of `t` and the result coincide: output emitted
    after consuming letter i (including the final output after the last
    letter) carries origin i.
    """
    combined = combine_alphabets(t.sigma, t.gamma)
    transitions = []
    eps = []
    initials = [("q", q) for q in sorted(t.initials)]
    finals = []
    for e in sorted(t.transitions, key=repr):
        (q, a, q2) = e
        lang = t.out_lang(e).trim()
        if lang.n_states == 0:
            continue  # no output word: transition unusable
        for s0 in sorted(lang.initials):
            transitions.append((("q", q), a, ("e", e, s0)))
        for (p, g, r) in lang.transitions:
            transitions.append((("e", e, p), g, ("e", e, r)))
        for f in sorted(lang.finals):
            eps.append((("e", e, f), ("q", q2)))
    for q in sorted(t.finals):
        lang = t.fin_lang(q).trim()
        if lang.n_states == 0:
            continue  # empty final language: state not accepting
        for s0 in sorted(lang.initials):
            eps.append((("q", q), ("f", q, s0)))
        for (p, g, r) in lang.transitions:
            transitions.append((("f", q, p), g, ("f", q, r)))
        for f in sorted(lang.finals):
            finals.append(("f", q, f))
    nfa = from_fragments(combined, initials, finals, transitions, eps)
    return NormalOneWay(t.sigma, t.gamma, nfa)


def from_sync_nfa(sigma: Alphabet, gamma: Alphabet, nfa: Nfa) -> NormalOneWay:
    """Wrap an automaton over the combined alphabet as a normal-form
    transducer (its language must consist of synchronized words)."""
    return NormalOneWay(sigma, gamma, nfa)


def sync_language(t: NormalOneWay) -> Nfa:
    """The regular language over the combined alphabet representing the
    origin semantics of `t`."""
    return t.nfa


def enumerate_graphs(t: NormalOneWay, n: int,
                     output_cap: Optional[int] = None) -> GraphEnumeration:
    """All origin graphs of `t` with input length <= n.

    Non-real-time transducers need an explicit total output cap; graphs
    exceeding the cap are silently excluded and the result is flagged
    truncated.
    """
    if t.real_time:
        cap = n * (t.max_block or 0) + (t.max_block or 0)
        truncated = False
    else:
        if output_cap is None:
            raise UnboundedEnumeration(
                "non-real-time transducer: pass an explicit output cap")
        cap = output_cap
        truncated = True
    graphs = []
    seen = set()

    # depth-first over the sync automaton, bounding input letters by n and
    # output letters by cap
    coacc = t.nfa.coaccessible()

    def walk(states: frozenset, word: tuple, ni: int, no: int):
        if states & t.nfa.finals and word not in seen:
            seen.add(word)
            graphs.append(decode(list(word), t.sigma, t.gamma))
        for sym in t.combined.symbols:
            is_input = sym in t.sigma
            if is_input and ni == n:
                continue
            if not is_input and no == cap:
                continue
            nxt = frozenset(q for q in t.nfa.step(states, sym) if q in coacc)
            if not nxt:
                continue
            walk(nxt, word + (sym,), ni + (1 if is_input else 0),
                 no + (0 if is_input else 1))

    start = frozenset(q for q in t.nfa.initials if q in coacc)
    if start:
        walk(start, (), 0, 0)
    graphs.sort(key=lambda g: (len(g.input), t.combined.key(encode(g, t.sigma, t.gamma))))
    return GraphEnumeration(graphs, truncated)


def origin_containment(t1: NormalOneWay, t2: NormalOneWay
                       ) -> tuple[bool, Optional[OriginGraph]]:
    """Exact origin containment via sync-language containment; on failure
    the witness is an origin graph of t1 that t2 does not realize."""
    if t1.sigma != t2.sigma or t1.gamma != t2.gamma:
        raise ValueError("origin containment needs matching alphabets")
    ok, witness = containment(sync_language(t1), sync_language(t2))
    if ok:
        return True, None
    return False, decode(witness, t1.sigma, t1.gamma)


def origin_equivalent(t1: NormalOneWay, t2: NormalOneWay) -> bool:
    return origin_containment(t1, t2)[0] and origin_containment(t2, t1)[0]


def classical_member(t: NormalOneWay, u: Sequence, v: Sequence) -> bool:
    """Does some origin graph of `t` have input u and output v?"""
    u, v = list(u), list(v)
    start = {(q, 0, 0) for q in t.nfa.initials}
    seen = set(start)
    stack = list(start)
    adj = t.nfa.adj()
    while stack:
        (q, i, j) = stack.pop()
        if i == len(u) and j == len(v) and q in t.nfa.finals:
            return True
        if i < len(u):
            for r in adj[q].get(u[i], ()):
                if (r, i + 1, j) not in seen:
                    seen.add((r, i + 1, j))
                    stack.append((r, i + 1, j))
        if j < len(v):
            for r in adj[q].get(v[j], ()):
                if (r, i, j + 1) not in seen:
                    seen.add((r, i, j + 1))
                    stack.append((r, i, j + 1))
    return False


def domain_nfa(t: NormalOneWay) -> Nfa:
    """Projection of the sync language onto the input alphabet."""
    # replace output transitions by epsilon moves
    keep = [(p, s, q) for (p, s, q) in t.nfa.transitions if s in t.sigma]
    eps = [(p, q) for (p, s, q) in t.nfa.transitions if s in t.gamma]
    states = range(t.nfa.n_states)
    return from_fragments(t.sigma, list(t.nfa.initials), list(t.nfa.finals),
                          keep, eps) if states else Nfa(t.sigma, 0, [], [], [])


def output_projection_nfa(t: NormalOneWay) -> Nfa:
    keep = [(p, s, q) for (p, s, q) in t.nfa.transitions if s in t.gamma]
    eps = [(p, q) for (p, s, q) in t.nfa.transitions if s in t.sigma]
    return from_fragments(t.gamma, list(t.nfa.initials), list(t.nfa.finals),
                          keep, eps)
