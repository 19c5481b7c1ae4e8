"""Functionality, ambiguity and classical containment for one-way transducers.

The functionality test runs the classical squaring construction: simulate
two runs on the same input, keep the difference of their outputs as an
explicit pending word, and fail on a mismatch, on a final imbalance, or
when the pending word outgrows the pumping bound |Q|^2 * maxOutputLen.
Every failure is turned into a concrete witness (u, v1, v2).
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple, Optional

from .nfa import union
from .oneway import NormalOneWay, domain_nfa
from .nfa import containment as nfa_containment


class RequiresRealTime(Exception):
    """Operation defined only for real-time (bounded per-letter output)
    transducers."""


class NotFunctional(Exception):
    """Raised when a precondition demands a functional transducer."""

    def __init__(self, witness):
        super().__init__(f"not functional: {witness}")
        self.witness = witness


class Grouped(NamedTuple):
    """Real-time view: one transition per consumed letter, with its whole
    output block, plus which states accept."""
    n_states: int
    initials: frozenset
    finals: frozenset
    transitions: tuple  # of (q, a, out_word, r)
    max_out: int


def as_grouped(t: NormalOneWay) -> Grouped:
    """Regroup the letter-granular normal form into block transitions."""
    if not t.real_time:
        raise RequiresRealTime("transducer is not real-time")
    adj = t.nfa.adj()

    def gamma_paths(p):
        out = [((), p)]
        for sym in t.gamma.symbols:
            for q in adj[p].get(sym, ()):
                out.extend(((sym,) + w, r) for (w, r) in gamma_paths(q))
        return out

    transitions = []
    for q in range(t.nfa.n_states):
        for a in t.sigma.symbols:
            for p in adj[q].get(a, ()):
                for (w, r) in gamma_paths(p):
                    transitions.append((q, a, w, r))
    max_out = max((len(w) for (_, _, w, _) in transitions), default=0)
    return Grouped(t.nfa.n_states, t.nfa.initials, t.nfa.finals,
                   tuple(sorted(transitions, key=repr)), max_out)


def _square_coaccessible(g: Grouped) -> set:
    """Pairs of states from which two same-input runs can both accept."""
    by_letter: dict = {}
    for (q, a, w, r) in g.transitions:
        by_letter.setdefault(a, []).append((q, r))
    rev: dict = {}
    pairs = {(f1, f2) for f1 in g.finals for f2 in g.finals}
    for a, edges in by_letter.items():
        for (q1, r1) in edges:
            for (q2, r2) in edges:
                rev.setdefault((r1, r2), set()).add((q1, q2))
    work = deque(pairs)
    seen = set(pairs)
    while work:
        p = work.popleft()
        for pred in rev.get(p, ()):
            if pred not in seen:
                seen.add(pred)
                work.append(pred)
    return seen


def _square_completion(g: Grouped, start: tuple) -> Optional[list]:
    """Shortest same-input completion of a state pair to accepting states;
    returns the list of (a, w1, w2) labels."""
    by_letter: dict = {}
    for (q, a, w, r) in g.transitions:
        by_letter.setdefault(a, []).append((q, w, r))
    parent: dict = {start: None}
    work = deque([start])
    while work:
        cur = work.popleft()
        (q1, q2) = cur
        if q1 in g.finals and q2 in g.finals:
            labels = []
            while parent[cur] is not None:
                prev, lab = parent[cur]
                labels.append(lab)
                cur = prev
            return labels[::-1]
        for a, edges in by_letter.items():
            for (p1, w1, r1) in edges:
                if p1 != q1:
                    continue
                for (p2, w2, r2) in edges:
                    if p2 != q2:
                        continue
                    nxt = (r1, r2)
                    if nxt not in parent:
                        parent[nxt] = (cur, (a, w1, w2))
                        work.append(nxt)
    return None


def is_functional(t: NormalOneWay) -> tuple[bool, Optional[tuple]]:
    """Exact functionality decision; on failure returns (u, v1, v2) with two
    distinct outputs, both re-checkable against t."""
    g = as_grouped(t)
    cap = g.n_states * g.n_states * max(g.max_out, 1)
    coacc = _square_coaccessible(g)
    by_letter: dict = {}
    for (q, a, w, r) in g.transitions:
        by_letter.setdefault(a, []).append((q, w, r))

    # configs: (q1, q2, sign, pending); sign +1 means run 1 leads by pending
    start_configs = [(i1, i2, 0, ()) for i1 in sorted(g.initials)
                     for i2 in sorted(g.initials)]
    parent: dict = {c: None for c in start_configs}
    work = deque(start_configs)

    def history(config) -> tuple[list, list, list]:
        labels = []
        cur = config
        while parent[cur] is not None:
            prev, lab = parent[cur]
            labels.append(lab)
            cur = prev
        labels.reverse()
        u = [a for (a, _, _) in labels]
        v1 = [s for (_, w1, _) in labels for s in w1]
        v2 = [s for (_, _, w2) in labels for s in w2]
        return u, v1, v2

    def witness_from(config, extra: Optional[list]) -> tuple:
        u, v1, v2 = history(config)
        for (a, w1, w2) in (extra or []):
            u.append(a)
            v1.extend(w1)
            v2.extend(w2)
        return tuple(u), tuple(v1), tuple(v2)

    while work:
        config = work.popleft()
        (q1, q2, sign, pending) = config
        if q1 in g.finals and q2 in g.finals and pending:
            return False, witness_from(config, None)
        for a, edges in by_letter.items():
            for (p1, w1, r1) in edges:
                if p1 != q1:
                    continue
                for (p2, w2, r2) in edges:
                    if p2 != q2:
                        continue
                    if (r1, r2) not in coacc:
                        continue
                    if sign >= 0:
                        lead, lag = pending + w1, w2
                    else:
                        lead, lag = pending + w2, w1
                    k = min(len(lead), len(lag))
                    if lead[:k] != lag[:k]:
                        # outputs diverge for good: complete to a witness
                        nxt_cfg = (r1, r2, sign, pending)
                        if nxt_cfg not in parent:
                            parent[nxt_cfg] = (config, (a, w1, w2))
                        completion = _square_completion(g, (r1, r2))
                        return False, witness_from(nxt_cfg, completion)
                    rest = lead[k:] if len(lead) > len(lag) else lag[k:]
                    if sign >= 0:
                        ahead1 = len(pending) + len(w1) - len(w2)
                    else:
                        ahead1 = -(len(pending) + len(w2) - len(w1))
                    new_sign = 0 if ahead1 == 0 else (1 if ahead1 > 0 else -1)
                    nxt = (r1, r2, new_sign, tuple(rest))
                    if len(rest) > cap:
                        if nxt not in parent:
                            parent[nxt] = (config, (a, w1, w2))
                        completion = _square_completion(g, (r1, r2))
                        return False, witness_from(nxt, completion)
                    if nxt not in parent:
                        parent[nxt] = (config, (a, w1, w2))
                        work.append(nxt)
    return True, None


def disjoint_union(t1: NormalOneWay, t2: NormalOneWay) -> NormalOneWay:
    if t1.sigma != t2.sigma or t1.gamma != t2.gamma:
        raise ValueError("union needs matching alphabets")
    return NormalOneWay(t1.sigma, t1.gamma, union(t1.nfa, t2.nfa))


def containment_functional(t1: NormalOneWay, t2: NormalOneWay) -> bool:
    """Classical containment for functional transducers: domain containment
    plus functionality of the disjoint union."""
    for t in (t1, t2):
        ok, witness = is_functional(t)
        if not ok:
            raise NotFunctional(witness)
    dom_ok, _ = nfa_containment(domain_nfa(t1), domain_nfa(t2))
    if not dom_ok:
        return False
    ok, _ = is_functional(disjoint_union(t1, t2))
    return ok


def ambiguity_at_most(t: NormalOneWay, k: int, n: int) -> bool:
    """Bounded ambiguity check: no input of length <= n admits more than k
    successful runs of the normalized machine.  An output cycle usable on
    an accepting run counts as infinitely many runs."""
    if k < 1:
        raise ValueError("k must be at least 1")
    adj = t.nfa.adj()
    inputs: list = [()]
    frontier = [()]
    for _ in range(n):
        frontier = [w + (a,) for w in frontier for a in t.sigma.symbols]
        inputs.extend(frontier)

    for u in inputs:
        nodes = set()
        start = {(q, 0) for q in t.nfa.initials}
        stack = list(start)
        seen = set(start)
        edges: dict = {}
        while stack:
            (q, i) = stack.pop()
            outs = []
            if i < len(u):
                for r in adj[q].get(u[i], ()):
                    outs.append((r, i + 1))
            for gsym in t.gamma.symbols:
                for r in adj[q].get(gsym, ()):
                    outs.append((r, i))
            edges[(q, i)] = outs
            for nd in outs:
                if nd not in seen:
                    seen.add(nd)
                    stack.append(nd)
        accepting = {(q, i) for (q, i) in seen
                     if q in t.nfa.finals and i == len(u)}
        if not accepting:
            continue
        # co-accessible restriction
        rev: dict = {}
        for nd, outs in edges.items():
            for m in outs:
                rev.setdefault(m, set()).add(nd)
        alive = set(accepting)
        work = deque(accepting)
        while work:
            m = work.popleft()
            for nd in rev.get(m, ()):
                if nd not in alive:
                    alive.add(nd)
                    work.append(nd)
        live_edges = {nd: [m for m in outs if m in alive]
                      for nd, outs in edges.items() if nd in alive}
        # a cycle among live nodes means infinitely many runs
        color: dict = {}
        cyclic = False
        order: list = []

        def visit(nd):
            nonlocal cyclic
            color[nd] = 1
            for m in live_edges.get(nd, ()):
                if color.get(m) == 1:
                    cyclic = True
                elif m not in color:
                    visit(m)
            color[nd] = 2
            order.append(nd)

        for nd in alive:
            if nd not in color:
                visit(nd)
        if cyclic:
            return False
        counts = {nd: 0 for nd in alive}
        for nd in order:
            base = 1 if nd in accepting else 0
            counts[nd] = base + sum(counts[m] for m in live_edges.get(nd, ()))
        total = sum(counts[(q, 0)] for q in t.nfa.initials if (q, 0) in alive)
        if total > k:
            return False
    return True
