"""Exact minimax oracle for worst-case query complexity.

The game state is the bitset of concepts still consistent with all data.
The teacher is the information-set adversary: each answer only has to stay
consistent with some surviving concept, and the game ends when the learner
submits the unique survivor (the correct final query is counted).  Values
are memoized on the version bitset; hypotheses that admit a counterexample
eliminating nothing are worthless for the learner and are skipped, which
keeps the recursion well-founded.
"""

from __future__ import annotations

from .core import AllTotals, check_subclass


class _Oracle:
    def __init__(self, concept_class, hypotheses, allow_mq):
        check_subclass(concept_class, hypotheses)
        if isinstance(hypotheses, AllTotals) and concept_class.universe.size > 5:
            raise ValueError("AllTotals hypothesis oracle is limited to |X| <= 5")
        self.cls = concept_class
        self.hyp_bits = sorted(set(hypotheses.enumerate_bits()))
        self.allow_mq = allow_mq
        self.memo = {}
        self.nodes = 0

    def value(self, version):
        cached = self.memo.get(version)
        if cached is not None:
            return cached
        self.nodes += 1
        cls = self.cls
        size = cls.universe.size
        best = None
        for bits in self.hyp_bits:
            idx = cls.bits_index.get(bits)
            in_version = idx is not None and (version >> idx) & 1
            worst = 0
            useless = False
            any_cex = False
            for x in range(size):
                label = 1 - ((bits >> x) & 1)
                survivors = cls.restrict_version(version, x, label)
                if not survivors:
                    continue
                if survivors == version:
                    useless = True
                    break
                any_cex = True
                sub = 1 + self.value(survivors)
                if sub > worst:
                    worst = sub
            if useless:
                continue
            if any_cex:
                cost = worst
            elif in_version:
                cost = 1  # the teacher is forced to answer yes
            else:
                raise AssertionError("hypothesis outside version with no counterexample")
            if best is None or cost < best:
                best = cost
        if self.allow_mq:
            for x in range(size):
                ones = cls.element_ones[x]
                s1 = version & ones
                s0 = version & ~ones
                if not s1 or not s0:
                    continue  # the adversary would answer the common label
                cost = 1 + max(self.value(s0), self.value(s1))
                if best is None or cost < best:
                    best = cost
        if best is None:
            raise AssertionError("no admissible learner move")
        self.memo[version] = best
        return best


def lc_eq_exact(concept_class, hypotheses):
    """Exact worst-case number of equivalence queries, final correct query included."""
    return lc_exact_with_stats(concept_class, hypotheses, "eq")[0]


def lc_eqmq_exact(concept_class, hypotheses):
    """Exact worst-case number of queries when membership queries are also allowed."""
    return lc_exact_with_stats(concept_class, hypotheses, "eqmq")[0]


def lc_exact_with_stats(concept_class, hypotheses, mode):
    if mode not in ("eq", "eqmq"):
        raise ValueError("mode must be 'eq' or 'eqmq'")
    oracle = _Oracle(concept_class, hypotheses, allow_mq=(mode == "eqmq"))
    value = oracle.value(concept_class.full_version)
    return value, oracle.nodes
