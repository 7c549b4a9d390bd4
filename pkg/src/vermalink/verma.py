"""Operator words in E_i, F_i acting on the highest weight vector of a
parabolic Verma module, and the HOMFLY-PT polynomial of braid closures.

A vector is a dict {F-word: QFrac}; the F-word (j1, j2, ..., jk) stands for
F_j1 F_j2 ... F_jk v0.  E_i is pushed to the right with
E_i F_j = F_j E_i + delta_ij [mu_i - mu_{i+1}]_q and E_i v0 = 0.  Vectors of
weight outside Lambda^beta are zero and are dropped as soon as they appear.
"""
from dataclasses import dataclass

from .braids import apply_root, closure_ladders, in_lambda_beta
from .scalars import QFrac, bracket, Q, L


@dataclass(frozen=True)
class WeightSeq:
    """Entries (shifted, offset) at positions first..first+len-1.

    shifted = 1 means beta + offset, 0 means a plain integer.
    """
    entries: tuple
    first: int

    @property
    def positions(self):
        return tuple(range(self.first, self.first + len(self.entries)))

    def valid(self):
        return in_lambda_beta(self.entries)


class WeightError(ValueError):
    pass


class VermaEvaluator:
    """Evaluates operator words on v0 for one highest weight; memoizes E-pushes."""

    def __init__(self, hw):
        self.hw = hw
        self.positions = hw.positions
        self._weights = {(): hw.entries}
        self._e_memo = {}
        self.steps = 0

    def weight(self, fword):
        w = self._weights.get(fword)
        if w is None:
            w = apply_root(self.weight(fword[1:]), self.positions, fword[0], -1)
            self._weights[fword] = w
        return w

    def valid(self, fword):
        return in_lambda_beta(self.weight(fword))

    def commutator(self, i, fword):
        """[mu_i - mu_{i+1}]_q at the weight of fword v0."""
        w = self.weight(fword)
        k = self.positions.index(i)
        (s1, o1), (s2, o2) = w[k], w[k + 1]
        return bracket(s1 - s2, o1 - o2)

    def apply_e(self, i, fword):
        key = (i, fword)
        hit = self._e_memo.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        out = {}
        if fword:
            j, rest = fword[0], fword[1:]
            for w, c in self.apply_e(i, rest).items():
                nw = (j,) + w
                if self.valid(nw):
                    out[nw] = out.get(nw, QFrac(0)) + c
            if i == j:
                out[rest] = out.get(rest, QFrac(0)) + self.commutator(i, rest)
            out = {w: c for w, c in out.items() if not c.is_zero()}
        self._e_memo[key] = out
        return out

    def apply_letter(self, letter, vec):
        kind, i = letter
        out = {}
        if kind == "F":
            for w, c in vec.items():
                nw = (i,) + w
                if self.valid(nw):
                    out[nw] = out.get(nw, QFrac(0)) + c
        elif kind == "E":
            for w, c in vec.items():
                for w2, c2 in self.apply_e(i, w).items():
                    out[w2] = out.get(w2, QFrac(0)) + c * c2
        else:
            raise ValueError(f"unknown letter {letter!r}")
        return {w: c for w, c in out.items() if not c.is_zero()}

    def apply_word(self, word, vec):
        """Rightmost letter acts first."""
        for letter in reversed(word):
            vec = self.apply_letter(letter, vec)
        return vec

    def apply_sum(self, terms, vec):
        """Apply sum_k coeff_k * word_k."""
        out = {}
        for coeff, word in terms:
            for w, c in self.apply_word(word, vec).items():
                out[w] = out.get(w, QFrac(0)) + c * coeff
        return {w: c for w, c in out.items() if not c.is_zero()}

    def v0_coefficient(self, vec):
        return vec.get((), QFrac(0))


def net_weight_zero(word):
    tally = {}
    for kind, i in word:
        tally[i] = tally.get(i, 0) + (1 if kind == "E" else -1)
    return all(v == 0 for v in tally.values())


def evaluate(word, hw):
    """The scalar c with word . v0 = c v0; word is a list of ('E'|'F', i)."""
    if not net_weight_zero(word):
        raise WeightError("operator word has nonzero net weight")
    ev = VermaEvaluator(hw)
    vec = ev.apply_word(word, {(): QFrac(1)})
    return ev.v0_coefficient(vec)


def crossing_element(i, sign):
    """Summands (coeff, word) of the operator assigned to sigma_i^sign."""
    fe = [("F", i), ("E", i)]
    if sign > 0:
        return [(QFrac(Q ** -1), []), (QFrac(-1), fe)]
    return [(QFrac(Q), []), (QFrac(-1), fe)]


def full_highest_weight(n):
    return WeightSeq(tuple([(1, 0)] * n + [(0, 0)] * n), -n + 1)


def reduced_highest_weight(n):
    return WeightSeq(tuple([(1, 0)] * (n - 1) + [(0, 1)] + [(0, 0)] * (n - 1)), -n + 2)


def braid_value(b, variant="full"):
    """Unnormalized (framed) value: top E-word, crossings, bottom F-word on v0."""
    if variant == "reduced" and b.n == 1:
        return QFrac(1)
    ladder = closure_ladders(b.n, variant)
    hw = full_highest_weight(b.n) if variant == "full" else reduced_highest_weight(b.n)
    ev = VermaEvaluator(hw)
    vec = {(): QFrac(1)}
    for i in ladder.bottom_word:
        vec = ev.apply_letter(("F", i), vec)
    for g in b.letters:
        vec = ev.apply_sum(crossing_element(abs(g), 1 if g > 0 else -1), vec)
    for i in ladder.top_word:
        vec = ev.apply_letter(("E", i), vec)
    return ev.v0_coefficient(vec)


def homfly(b):
    """Framing-normalized HOMFLY-PT polynomial l^writhe * P(b)."""
    return (QFrac(L ** b.writhe) * braid_value(b, "full")).reduced()


def homfly_reduced(b):
    """Reduced invariant, normalized so that the unknot is 1."""
    return (QFrac(L ** b.writhe) * braid_value(b, "reduced")).reduced()


__all__ = [
    "WeightSeq", "WeightError", "VermaEvaluator", "evaluate", "crossing_element",
    "full_highest_weight", "reduced_highest_weight", "braid_value", "homfly",
    "homfly_reduced",
]
