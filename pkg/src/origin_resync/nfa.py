"""Finite-automaton kernel: products, complementation, containment, enumeration.

All automata share a few conventions that the rest of the library relies on:

* alphabets are finite, explicitly declared and totally ordered by
  declaration order;
* states are integers 0..n-1, numbered in creation order, and every
  constructed automaton is renumbered canonically (BFS from the initial
  states, expanding symbols in declaration order) so that equal inputs
  always produce byte-for-byte equal outputs;
* there are no epsilon transitions at this layer.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Optional, Sequence

Symbol = Hashable

DEFAULT_SUBSET_CAP = 10**6


class CapacityError(Exception):
    """Raised when a construction would exceed its configured state budget."""


class AlphabetMismatch(Exception):
    """Raised when an operation combines automata over different alphabets."""


class Alphabet:
    """A finite, ordered set of symbols.

    Symbols may be any hashable values (strings, or tuples for product
    alphabets).  The declaration order induces the total order used for
    lexicographic tie-breaking everywhere in the library.
    """

    __slots__ = ("symbols", "index")

    def __init__(self, symbols: Iterable[Symbol]):
        self.symbols: tuple = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate symbols in alphabet")
        self.index: dict = {s: i for i, s in enumerate(self.symbols)}

    def __contains__(self, sym) -> bool:
        return sym in self.index

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.symbols)!r})"

    def key(self, word: Sequence[Symbol]) -> tuple:
        """Sort key for (length, lexicographic) enumeration order."""
        return (len(word), tuple(self.index[s] for s in word))


def product_alphabet(*alphabets: Alphabet) -> Alphabet:
    """Alphabet of tuples, ordered lexicographically by declaration order."""
    syms = [()]
    for alpha in alphabets:
        syms = [s + (x,) for s in syms for x in alpha.symbols]
    return Alphabet(syms)


class Nfa:
    """Immutable nondeterministic finite automaton without epsilon moves.

    States are 0..n_states-1.  Transitions are triples (src, symbol, dst).
    Treat instances as frozen: all operations return new automata.
    """

    __slots__ = ("alphabet", "n_states", "initials", "finals", "transitions",
                 "_adj", "_radj")

    def __init__(self, alphabet: Alphabet, n_states: int,
                 initials: Iterable[int], finals: Iterable[int],
                 transitions: Iterable[tuple]):
        self.alphabet = alphabet
        self.n_states = n_states
        self.initials = frozenset(initials)
        self.finals = frozenset(finals)
        self.transitions = frozenset(transitions)
        for q in self.initials | self.finals:
            if not 0 <= q < n_states:
                raise ValueError(f"state {q} out of range")
        for (p, a, q) in self.transitions:
            if a not in alphabet:
                raise ValueError(f"transition symbol {a!r} not in alphabet")
            if not (0 <= p < n_states and 0 <= q < n_states):
                raise ValueError("transition state out of range")
        self._adj = None
        self._radj = None

    # -- basic views -------------------------------------------------------

    def adj(self) -> dict:
        """state -> symbol -> sorted tuple of successors (cached)."""
        if self._adj is None:
            m: dict = {q: {} for q in range(self.n_states)}
            for (p, a, q) in self.transitions:
                m[p].setdefault(a, set()).add(q)
            self._adj = {p: {a: tuple(sorted(qs)) for a, qs in d.items()}
                         for p, d in m.items()}
        return self._adj

    def radj(self) -> dict:
        if self._radj is None:
            m: dict = {q: set() for q in range(self.n_states)}
            for (p, a, q) in self.transitions:
                m[q].add(p)
            self._radj = m
        return self._radj

    def step(self, states: frozenset, sym) -> frozenset:
        adj = self.adj()
        out: set = set()
        for q in states:
            out.update(adj[q].get(sym, ()))
        return frozenset(out)

    def accepts(self, word: Sequence[Symbol]) -> bool:
        cur = self.initials
        for sym in word:
            cur = self.step(cur, sym)
            if not cur:
                return False
        return bool(cur & self.finals)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Nfa)
                and self.alphabet == other.alphabet
                and self.n_states == other.n_states
                and self.initials == other.initials
                and self.finals == other.finals
                and self.transitions == other.transitions)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.n_states, self.initials,
                     self.finals, self.transitions))

    def __repr__(self) -> str:
        return (f"Nfa(states={self.n_states}, initials={sorted(self.initials)}, "
                f"finals={sorted(self.finals)}, transitions={len(self.transitions)})")

    # -- reachability ------------------------------------------------------

    def accessible(self) -> set:
        seen = set(self.initials)
        work = deque(seen)
        adj = self.adj()
        while work:
            p = work.popleft()
            for qs in adj[p].values():
                for q in qs:
                    if q not in seen:
                        seen.add(q)
                        work.append(q)
        return seen

    def coaccessible(self) -> set:
        seen = set(self.finals)
        work = deque(seen)
        radj = self.radj()
        while work:
            q = work.popleft()
            for p in radj[q]:
                if p not in seen:
                    seen.add(p)
                    work.append(p)
        return seen

    def trim(self) -> "Nfa":
        """Restrict to states on some accepting path, renumbered canonically."""
        alive = self.accessible() & self.coaccessible()
        return self.restrict(alive)

    def restrict(self, keep: set) -> "Nfa":
        order = sorted(keep)
        remap = {q: i for i, q in enumerate(order)}
        return Nfa(self.alphabet, len(order),
                   [remap[q] for q in self.initials if q in keep],
                   [remap[q] for q in self.finals if q in keep],
                   [(remap[p], a, remap[q]) for (p, a, q) in self.transitions
                    if p in keep and q in keep])

    def is_empty(self) -> bool:
        return not (self.accessible() & self.finals)

    def shortest_word(self) -> Optional[list]:
        """Shortest accepted word, lexicographically least among shortest."""
        if self.initials & self.finals:
            return []
        frontier = self.initials
        seen = set(frontier)
        parent: dict = {}
        while frontier:
            nxt = set()
            for sym in self.alphabet.symbols:
                for p in sorted(frontier):
                    for q in self.adj()[p].get(sym, ()):
                        if q not in seen and q not in nxt:
                            parent[q] = (p, sym)
                            nxt.add(q)
                            if q in self.finals:
                                word = []
                                cur = q
                                while cur in parent:
                                    pp, a = parent[cur]
                                    word.append(a)
                                    cur = pp
                                return word[::-1]
            seen |= nxt
            frontier = nxt
        return None


# -- construction helpers ---------------------------------------------------


def from_fragments(alphabet: Alphabet, initials, finals, transitions,
                   eps: Iterable[tuple] = ()) -> Nfa:
    """Build an Nfa from loose state labels, eliminating epsilon pairs.

    States may be arbitrary hashables; `eps` contains (p, q) pairs meaning
    q is reachable from p for free.  Used internally to inline regular
    output languages; the result has no epsilon transitions.
    """
    states = set(initials) | set(finals)
    for (p, a, q) in transitions:
        states.add(p)
        states.add(q)
    for (p, q) in eps:
        states.add(p)
        states.add(q)
    closure = {s: {s} for s in states}
    eps_adj: dict = {s: set() for s in states}
    for (p, q) in eps:
        eps_adj[p].add(q)
    for s in states:
        stack = [s]
        while stack:
            t = stack.pop()
            for u in eps_adj[t]:
                if u not in closure[s]:
                    closure[s].add(u)
                    stack.append(u)
    finals_set = set(finals)
    new_finals = {s for s in states if closure[s] & finals_set}
    new_trans = set()
    for (p, a, q) in transitions:
        for p0 in states:
            if p in closure[p0]:
                new_trans.add((p0, a, q))
    order = sorted(states, key=repr)
    remap = {s: i for i, s in enumerate(order)}
    nfa = Nfa(alphabet, len(order),
              [remap[s] for s in initials],
              [remap[s] for s in new_finals],
              [(remap[p], a, remap[q]) for (p, a, q) in new_trans])
    return canonical(nfa)


def canonical(a: Nfa) -> Nfa:
    """Renumber accessible states in BFS order (symbols in declaration order)."""
    order = []
    seen = set()
    for q in sorted(a.initials):
        if q not in seen:
            seen.add(q)
            order.append(q)
    idx = 0
    adj = a.adj()
    while idx < len(order):
        p = order[idx]
        idx += 1
        for sym in a.alphabet.symbols:
            for q in adj[p].get(sym, ()):
                if q not in seen:
                    seen.add(q)
                    order.append(q)
    remap = {q: i for i, q in enumerate(order)}
    return Nfa(a.alphabet, len(order),
               [remap[q] for q in a.initials],
               [remap[q] for q in a.finals if q in remap],
               [(remap[p], s, remap[q]) for (p, s, q) in a.transitions
                if p in remap and q in remap])


def literal(alphabet: Alphabet, words: Iterable[Sequence[Symbol]]) -> Nfa:
    """Automaton accepting exactly the given finite set of words."""
    words = [tuple(w) for w in words]
    initials = [("i",)]
    finals = []
    transitions = []
    for wi, w in enumerate(words):
        prev = ("i",)
        for j, sym in enumerate(w):
            cur = (wi, j)
            transitions.append((prev, sym, cur))
            prev = cur
        finals.append(prev)
    return from_fragments(alphabet, initials, finals, transitions)


def empty(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 0, [], [], [])


def universal(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, [0], [0], [(0, a, 0) for a in alphabet.symbols])


def union(a: Nfa, b: Nfa) -> Nfa:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{a.alphabet} vs {b.alphabet}")
    off = a.n_states
    return canonical(Nfa(
        a.alphabet, a.n_states + b.n_states,
        list(a.initials) + [q + off for q in b.initials],
        list(a.finals) + [q + off for q in b.finals],
        list(a.transitions) + [(p + off, s, q + off) for (p, s, q) in b.transitions]))


# -- spec operations ---------------------------------------------------------


def product(a: Nfa, b: Nfa) -> Nfa:
    """Intersection automaton, restricted to reachable state pairs."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(
            f"product over different alphabets: {a.alphabet} vs {b.alphabet}")
    pairs = [(p, q) for p in sorted(a.initials) for q in sorted(b.initials)]
    index = {pq: i for i, pq in enumerate(pairs)}
    transitions = []
    work = deque(pairs)
    while work:
        (p, q) = work.popleft()
        src = index[(p, q)]
        for sym in a.alphabet.symbols:
            for p2 in a.adj()[p].get(sym, ()):
                for q2 in b.adj()[q].get(sym, ()):
                    if (p2, q2) not in index:
                        index[(p2, q2)] = len(index)
                        pairs.append((p2, q2))
                        work.append((p2, q2))
                    transitions.append((src, sym, index[(p2, q2)]))
    finals = [i for (p, q), i in index.items()
              if p in a.finals and q in b.finals]
    initials = [index[(p, q)] for p in sorted(a.initials) for q in sorted(b.initials)]
    return Nfa(a.alphabet, len(pairs), initials, finals, transitions)


def determinize(a: Nfa, cap: int = DEFAULT_SUBSET_CAP) -> Nfa:
    """Complete subset-construction DFA (state 0.. = BFS order of subsets)."""
    start = frozenset(a.initials)
    subsets = [start]
    index = {start: 0}
    transitions = []
    work = deque([start])
    while work:
        cur = work.popleft()
        src = index[cur]
        for sym in a.alphabet.symbols:
            nxt = a.step(cur, sym)
            if nxt not in index:
                if len(index) >= cap:
                    raise CapacityError(
                        f"determinization exceeded {cap} subsets")
                index[nxt] = len(index)
                subsets.append(nxt)
                work.append(nxt)
            transitions.append((src, sym, index[nxt]))
    finals = [i for s, i in index.items() if s & a.finals]
    return Nfa(a.alphabet, len(subsets), [0], finals, transitions)


def complement(a: Nfa, cap: int = DEFAULT_SUBSET_CAP) -> Nfa:
    """Deterministic, complete automaton for the complement language."""
    d = determinize(a, cap=cap)
    return Nfa(d.alphabet, d.n_states, d.initials,
               [q for q in range(d.n_states) if q not in d.finals],
               d.transitions)


def containment(a: Nfa, b: Nfa,
                cap: int = DEFAULT_SUBSET_CAP) -> tuple[bool, Optional[list]]:
    """Is L(a) a subset of L(b)?  On failure returns the shortest witness
    in L(a) minus L(b), lexicographically least among the shortest."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(
            f"containment over different alphabets: {a.alphabet} vs {b.alphabet}")
    diff = product(a, complement(b, cap=cap))
    witness = diff.shortest_word()
    if witness is None:
        return True, None
    return False, witness


def equivalent(a: Nfa, b: Nfa, cap: int = DEFAULT_SUBSET_CAP) -> bool:
    return containment(a, b, cap=cap)[0] and containment(b, a, cap=cap)[0]


def enumerate_words(a: Nfa, n: int) -> list:
    """All accepted words of length <= n, ordered by (length, lexicographic)."""
    coacc = a.coaccessible()
    start = frozenset(a.initials) & frozenset(coacc)
    out = []
    if a.initials & a.finals:
        out.append(())

    def walk(prefix: tuple, states: frozenset, budget: int):
        if budget == 0:
            return
        for sym in a.alphabet.symbols:
            nxt = frozenset(q for q in a.step(states, sym) if q in coacc)
            if not nxt:
                continue
            word = prefix + (sym,)
            if nxt & a.finals:
                out.append(word)
            walk(word, nxt, budget - 1)

    if start:
        walk((), start, n)
    out.sort(key=a.alphabet.key)
    return [list(w) for w in out]


def reduce(a: Nfa) -> Nfa:
    """Merge states with identical behaviour (simple bisimulation quotient).

    Language-preserving size reduction; keeps downstream subset
    constructions at desk scale.
    """
    a = a.trim()
    if a.n_states == 0:
        return a
    # partition refinement on (final?, symbol->successor-blocks)
    block = [1 if q in a.finals else 0 for q in range(a.n_states)]
    while True:
        sig = {}
        for q in range(a.n_states):
            key = (block[q],
                   tuple(sorted((a.alphabet.index[s],
                                 tuple(sorted({block[t] for t in ts})))
                                for s, ts in a.adj()[q].items())))
            sig.setdefault(key, len(sig))
        new_block = []
        for q in range(a.n_states):
            key = (block[q],
                   tuple(sorted((a.alphabet.index[s],
                                 tuple(sorted({block[t] for t in ts})))
                                for s, ts in a.adj()[q].items())))
            new_block.append(sig[key])
        if new_block == block:
            break
        block = new_block
    n = max(block) + 1
    return canonical(Nfa(
        a.alphabet, n,
        {block[q] for q in a.initials},
        {block[q] for q in a.finals},
        {(block[p], s, block[q]) for (p, s, q) in a.transitions}))


class LazyNfa:
    """An automaton given by Python callbacks, materialized on demand.

    Convenient for the intricate scanner automata used by resynchronizer
    compilation: states are arbitrary hashables, `step(state, symbol)`
    returns an iterable of successor states.
    """

    def __init__(self, alphabet: Alphabet, initials: Iterable, step,
                 is_final, cap: int = 200000):
        self.alphabet = alphabet
        self.initials = list(initials)
        self.step = step
        self.is_final = is_final
        self.cap = cap

    def materialize(self) -> Nfa:
        index: dict = {}
        order = []
        for s in self.initials:
            if s not in index:
                index[s] = len(index)
                order.append(s)
        transitions = []
        work = deque(order)
        while work:
            s = work.popleft()
            src = index[s]
            for sym in self.alphabet.symbols:
                for t in self.step(s, sym):
                    if t not in index:
                        if len(index) >= self.cap:
                            raise CapacityError(
                                f"lazy automaton exceeded {self.cap} states")
                        index[t] = len(index)
                        order.append(t)
                        work.append(t)
                    transitions.append((src, sym, index[t]))
        finals = [index[s] for s in order if self.is_final(s)]
        nfa = Nfa(self.alphabet, len(order), [index[s] for s in self.initials],
                  finals, transitions)
        return canonical(nfa.trim())
