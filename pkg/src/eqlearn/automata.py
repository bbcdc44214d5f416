"""Binary DFAs as concept classes over length-bounded string universes.

The universe for bound m holds every binary string of length at most m in
length-then-lexicographic order; the empty string is displayed as "e".  The
right congruence is computed inside the bound: a suffix may distinguish two
prefixes only when both concatenations stay within length m.
"""

from __future__ import annotations

from itertools import product

from .core import (
    ClassFormatError,
    Concept,
    ConceptClass,
    ExplicitHypotheses,
    InvariantViolation,
    PartialConcept,
    Universe,
)
from .dimensions import consistency_dim, ldim_subset
from .learners import CdimEqLearner, EqMqLearner, run_session
from .teachers import HonestTeacher

EPSILON_NAME = "e"

# exact consistency dimension scans all 2^|X| totals; above this universe
# size the learners fall back to the constructive distinguishing-suffix cap
MAX_EXACT_UNIVERSE = 16


class Dfa:
    """Deterministic automaton over {0,1}; state 0 is the start state."""

    def __init__(self, n_states, transitions, accepting):
        transitions = tuple((int(a), int(b)) for a, b in transitions)
        if n_states < 1 or len(transitions) != n_states:
            raise ClassFormatError("transition table must cover every state")
        for pair in transitions:
            for t in pair:
                if not (0 <= t < n_states):
                    raise ClassFormatError(f"transition target {t} out of range")
        accepting = frozenset(int(s) for s in accepting)
        for s in accepting:
            if not (0 <= s < n_states):
                raise ClassFormatError(f"accepting state {s} out of range")
        self.n_states = n_states
        self.transitions = transitions
        self.accepting = accepting

    def accepts(self, string):
        state = 0
        for ch in string:
            state = self.transitions[state][int(ch)]
        return state in self.accepting

    def __repr__(self):
        return f"Dfa(states={self.n_states}, accept={sorted(self.accepting)})"


def parse_dfa(text):
    """Parse the DFA file format: `states: n`, `accept: i j ...`, then one
    `from symbol to` transition per line."""
    n_states = None
    accepting = None
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n_states is None:
            if not line.startswith("states:"):
                raise ClassFormatError(f"line {lineno}: expected 'states:' header")
            n_states = int(line[len("states:"):].strip())
            continue
        if accepting is None:
            if not line.startswith("accept:"):
                raise ClassFormatError(f"line {lineno}: expected 'accept:' line")
            accepting = [int(t) for t in line[len("accept:"):].split()]
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ClassFormatError(f"line {lineno}: expected 'from symbol to'")
        src, sym, dst = int(parts[0]), parts[1], int(parts[2])
        if sym not in ("0", "1"):
            raise ClassFormatError(f"line {lineno}: symbol must be 0 or 1")
        edges[(src, int(sym))] = dst
    if n_states is None or accepting is None:
        raise ClassFormatError("missing DFA header lines")
    transitions = []
    for s in range(n_states):
        try:
            transitions.append((edges[(s, 0)], edges[(s, 1)]))
        except KeyError:
            raise ClassFormatError(f"state {s} is missing a transition") from None
    return Dfa(n_states, transitions, accepting)


def format_dfa(dfa):
    lines = [f"states: {dfa.n_states}", "accept: " + " ".join(map(str, sorted(dfa.accepting)))]
    for s, (t0, t1) in enumerate(dfa.transitions):
        lines.append(f"{s} 0 {t0}")
        lines.append(f"{s} 1 {t1}")
    return "\n".join(lines) + "\n"


def bounded_strings(m):
    """All binary strings of length <= m, length-then-lexicographic."""
    out = [""]
    for length in range(1, m + 1):
        out.extend("".join(t) for t in product("01", repeat=length))
    return out


def string_universe(m):
    names = [s if s else EPSILON_NAME for s in bounded_strings(m)]
    return Universe(names)


def universe_string(name):
    return "" if name == EPSILON_NAME else name


def bound_of_universe(universe):
    """Recover m from a string universe of size 2^(m+1) - 1."""
    size = universe.size + 1
    m = size.bit_length() - 2
    if (1 << (m + 1)) - 1 != universe.size:
        raise ValueError("universe is not a bounded-string universe")
    return m


def dfa_language(dfa, m):
    """The total labeling of the bounded-string universe by acceptance."""
    universe = string_universe(m)
    bits = 0
    for i, s in enumerate(bounded_strings(m)):
        if dfa.accepts(s):
            bits |= 1 << i
    return Concept(universe, bits)


def enumerate_dfas(n):
    """All DFAs with at most n states, lexicographic by (state count,
    transition table, accepting-set bitmask)."""
    for k in range(1, n + 1):
        for table in product(range(k), repeat=2 * k):
            transitions = [(table[2 * s], table[2 * s + 1]) for s in range(k)]
            for acc_bits in range(1 << k):
                accepting = [s for s in range(k) if (acc_bits >> s) & 1]
                yield Dfa(k, transitions, accepting)


def enumerate_dfa_class(n, m):
    """Distinct languages of <= n-state DFAs over strings of length <= m,
    deduplicated in first-seen order of the canonical DFA enumeration."""
    if n > 3 or m > 4:
        raise ValueError("size guard: enumeration supports n <= 3, m <= 4")
    universe = string_universe(m)
    strings = bounded_strings(m)
    seen = set()
    concepts = []
    for dfa in enumerate_dfas(n):
        bits = 0
        for i, s in enumerate(strings):
            if dfa.accepts(s):
                bits |= 1 << i
        if bits not in seen:
            seen.add(bits)
            concepts.append(Concept(universe, bits))
    return ConceptClass(universe, concepts)


def nerode_witness(concept, n):
    """A restriction of the labeling that no <= n-state language extends, or
    None when at most n bounded right-congruence classes exist.

    Picks n+1 pairwise inequivalent prefixes (scanning in universe order) and,
    for each pair, the least distinguishing suffix; the witness is the
    labeling restricted to the <= n(n+1) distinguishing concatenations.
    """
    universe = concept.universe
    m = bound_of_universe(universe)
    strings = bounded_strings(m)
    index = {s: i for i, s in enumerate(strings)}

    def equivalent(x, y):
        limit = m - max(len(x), len(y))
        for z in strings:
            if len(z) > limit:
                continue
            if concept.label(index[x + z]) != concept.label(index[y + z]):
                return False
        return True

    reps = []
    for s in strings:
        if all(not equivalent(s, r) for r in reps):
            reps.append(s)
            if len(reps) == n + 1:
                break
    if len(reps) < n + 1:
        return None
    points = set()
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            x, y = reps[i], reps[j]
            limit = m - max(len(x), len(y))
            suffix = None
            for z in strings:
                if len(z) > limit:
                    continue
                if concept.label(index[x + z]) != concept.label(index[y + z]):
                    suffix = z
                    break
            if suffix is None:
                raise AssertionError("inequivalent prefixes without a distinguisher")
            points.add(index[x + suffix])
            points.add(index[y + suffix])
    mask = 0
    for p in points:
        mask |= 1 << p
    return PartialConcept(universe, mask, concept.bits & mask)


def learn_dfa(n, m, target, mode):
    """Learn the target's language inside the enumerated class via the generic
    query algorithms against the honest least-index teacher; raises if the
    certified bound is breached.

    When the universe is too large for the exact consistency-dimension scan,
    the distinguishing-suffix construction's cap n(n+1) is used instead (an
    upper bound is all the algorithm needs).
    """
    if mode not in ("eq", "eqmq"):
        raise ValueError("mode must be 'eq' or 'eqmq'")
    if target.n_states > n:
        raise ValueError("target automaton exceeds the state bound")
    cls = enumerate_dfa_class(n, m)
    hyp = ExplicitHypotheses(cls)
    target_concept = dfa_language(target, m)
    target_index = cls.bits_index[target_concept.bits]
    if cls.universe.size <= MAX_EXACT_UNIVERSE:
        c = consistency_dim(cls, hyp)
    else:
        c = n * (n + 1)
    teacher = HonestTeacher(cls, target_index)
    if mode == "eqmq":
        learner = EqMqLearner(cls, hyp, _consistency=c)
    else:
        learner = CdimEqLearner(cls, hyp, _consistency=c)
    transcript = run_session(learner, teacher, learner.certified_budget)
    if not transcript.success:
        raise InvariantViolation("DFA learner exhausted its certified budget")
    if transcript.total_queries > learner.certified_budget:
        raise InvariantViolation("DFA learner exceeded its certified bound")
    return transcript


def dfa_class_summary(n, m):
    """(class, ldim, consistency dimension or cap) for the CLI report."""
    cls = enumerate_dfa_class(n, m)
    d = ldim_subset(cls, cls.full_version)
    if cls.universe.size <= MAX_EXACT_UNIVERSE:
        c = consistency_dim(cls, ExplicitHypotheses(cls))
        exact = True
    else:
        c = n * (n + 1)
        exact = False
    return cls, d, c, exact
