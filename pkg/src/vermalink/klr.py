"""Floating-dot KLR superalgebras: diagram words, the staged basis and a
rewriting procedure that brings any diagram word to that basis.

Basis elements are keyed by ``(bottom, stages, u)``:

* ``bottom`` is the bottom idempotent (tuple of labels);
* ``stages[k-1] = (a_k, alpha_k)`` says that strand k, after strands 1..k-1
  are placed, moves left from position k to position a_k (crossings
  tau_{k-1}, ..., tau_{a_k} read bottom to top) and then carries a tightened
  floating dot theta_{a_k} = tau_{a-1}..tau_1 omega tau_1..tau_{a-1} if
  alpha_k = 1;
* ``u`` are dot exponents at the top, by top position.

Every strand reaches its leftmost position at its own stage, so the
crossing word is left-adjusted and reduced.  Recursively an element is
x^u theta_a^alpha c_a (S' (x) 1) with c_a = tau_a ... tau_{m-1}; left
multiplication by a generator is computed case by case on the last stage.
"""
import sys
from fractions import Fraction
from itertools import permutations

sys.setrecursionlimit(100000)


def top_labels(bottom, stages):
    top = []
    for k, (a, _) in enumerate(stages):
        top.insert(a - 1, bottom[k])
    return tuple(top)


def identity_key(bottom):
    m = len(bottom)
    return (tuple(bottom), tuple((k, 0) for k in range(1, m + 1)), (0,) * m)


def stage_word(m, a, alpha, label):
    """Generators (bottom to top) of c_a followed by theta_a if alpha."""
    word = [("t", j) for j in range(m - 1, a - 1, -1)]
    if alpha:
        word += [("t", j) for j in range(a - 1, 0, -1)]
        word.append(("w", 1, label, 0))
        word += [("t", j) for j in range(1, a)]
    return word


def canonical_word(key):
    bottom, stages, u = key
    word = []
    for k, (a, alpha) in enumerate(stages, start=1):
        word += stage_word(k, a, alpha, bottom[k - 1])
    for p, e in enumerate(u, start=1):
        word += [("x", p)] * e
    return word


def crossing_count(key):
    return sum(k - a for k, (a, _) in enumerate(key[1], start=1)) + \
        sum(2 * (a - 1) for a, alpha in key[1] if alpha)


def swap(seq, k):
    lst = list(seq)
    lst[k - 1], lst[k] = lst[k], lst[k - 1]
    return tuple(lst)


def _add(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _axpy(acc, elem, c=1):
    for key, v in elem.items():
        _add(acc, key, c * v)
    return acc


def _with_dots(elem, u):
    """Multiply every key by x^u on top."""
    if not any(u):
        return elem
    out = {}
    for (b, s, u0), c in elem.items():
        _add(out, (b, s, tuple(x + y for x, y in zip(u0, u))), c)
    return out


def _q_crossing(i, j):
    if i == j:
        return -2
    if abs(i - j) == 1:
        return 1
    return 0


class KLR:
    """Rewriting engine for R_b (full) or R_btilde (reduced superscripts).

    ``reduced`` only changes degrees: a subscript-0 floating dot with stored
    superscript a has external superscript a - 1, and a subscript-1 dot is
    one degree step higher (the weight pairs to 1 with that root), which
    makes d_beta(omega_1) = -x_1 homogeneous.
    """

    def __init__(self, reduced=False):
        self.reduced = reduced
        self._tau = {}
        self._omega = {}
        self._deg = {}

    # degrees ------------------------------------------------------------
    def word_degree(self, bottom, word):
        labels = list(bottom)
        q = 0
        lam = {}
        for g in word:
            if g[0] == "x":
                q += 2
            elif g[0] == "t":
                k = g[1]
                q += _q_crossing(labels[k - 1], labels[k])
                labels[k - 1], labels[k] = labels[k], labels[k - 1]
            else:
                _, r, i, a = g
                left = labels[:r]
                li = sum(1 for s in left if s == i)
                lpm = sum(1 for s in left if abs(s - i) == 1)
                a_ext = a
                if self.reduced:
                    a_ext += (i == 1) - (i == 0)
                q += 2 * (1 + a_ext - li + lpm)
                lam[i] = lam.get(i, 0) + 2
        return q, tuple(sorted(lam.items()))

    def degree(self, key):
        bottom, stages, u = key
        base = self._deg.get((bottom, stages))
        if base is None:
            base = self.word_degree(bottom, canonical_word((bottom, stages, (0,) * len(bottom))))
            self._deg[(bottom, stages)] = base
        return base[0] + 2 * sum(u), base[1]

    # generator action on dotless staged elements ------------------------
    def tau_stage(self, k, bottom, stages):
        memo_key = (k, bottom, stages)
        hit = self._tau.get(memo_key)
        if hit is not None:
            return hit
        m = len(stages)
        a, alpha = stages[-1]
        im = bottom[-1]
        b1, s1 = bottom[:-1], stages[:-1]
        t1 = top_labels(b1, s1)
        zeros = (0,) * m
        out = {}
        if k >= a + 1:
            _axpy(out, self.wrap(self.tau_stage(k - 1, b1, s1), bottom, a, alpha))
            if t1[k - 2] == im and abs(t1[k - 1] - im) == 1:
                word = [("t", j) for j in range(m - 1, k, -1)]
                word += [("t", j) for j in range(k - 2, a - 1, -1)]
                if alpha:
                    word += self._theta(a, im)
                _axpy(out, self.fold(word, (bottom, s1 + ((m, 0),), zeros)), -1)
        elif k == a:
            if alpha:
                _add(out, (bottom, s1 + ((a + 1, 1),), zeros), 1)
            else:
                self._r2(out, (bottom, s1 + ((a + 1, 0),)), t1[a - 1], im, a, m)
        elif k == a - 1:
            if alpha:
                self._r2(out, (bottom, s1 + ((a - 1, 1),)), im, t1[a - 2], a - 1, m)
            else:
                _add(out, (bottom, s1 + ((a - 1, 0),), zeros), 1)
        else:
            _axpy(out, self.wrap(self.tau_stage(k, b1, s1), bottom, a, alpha))
            if alpha:
                base = (bottom, s1 + ((m, 0),), zeros)
                ca = [("t", j) for j in range(m - 1, a - 1, -1)]
                if t1[k] == im and abs(t1[k - 1] - im) == 1:
                    # + A omega L c_a
                    word = ca + [("t", j) for j in range(a - 1, 0, -1)] + [("w", 1, im, 0)]
                    word += [("t", j) for j in range(1, k)] + [("t", j) for j in range(k + 2, a)]
                    _axpy(out, self.fold(word, base), 1)
                if t1[k - 1] == im and abs(t1[k] - im) == 1:
                    # - U omega B c_a
                    word = ca + [("t", j) for j in range(a - 1, k + 1, -1)]
                    word += [("t", j) for j in range(k - 1, 0, -1)] + [("w", 1, im, 0)]
                    word += [("t", j) for j in range(1, a)]
                    _axpy(out, self.fold(word, base), -1)
        self._tau[memo_key] = out
        return out

    @staticmethod
    def _theta(a, label):
        return [("t", j) for j in range(a - 1, 0, -1)] + [("w", 1, label, 0)] + \
            [("t", j) for j in range(1, a)]

    @staticmethod
    def _r2(out, partial, left, right, pos, m):
        """Record Q_{left,right}(x_pos, x_pos+1) times the staged element."""
        if left == right:
            return
        zeros = [0] * m
        if abs(left - right) > 1:
            _add(out, partial + (tuple(zeros),), 1)
            return
        for p in (pos, pos + 1):
            u = list(zeros)
            u[p - 1] = 1
            _add(out, partial + (tuple(u),), 1)

    def omega_stage(self, bottom, stages):
        memo_key = (bottom, stages)
        hit = self._omega.get(memo_key)
        if hit is not None:
            return hit
        m = len(stages)
        out = {}
        if m:
            a, alpha = stages[-1]
            if a == 1:
                if not alpha:
                    out = {(bottom, stages[:-1] + ((1, 1),), (0,) * m): Fraction(1)}
            else:
                inner = self.omega_stage(bottom[:-1], stages[:-1])
                out = self.wrap(inner, bottom, a, alpha)
                if alpha:
                    out = {k: -v for k, v in out.items()}
        self._omega[memo_key] = out
        return out

    def wrap(self, inner, bottom, a, alpha):
        """theta_a^alpha c_a (inner (x) 1), inner an element on m-1 strands."""
        m = len(bottom)
        im = bottom[-1]
        out = {}
        for (b1, s1, u1), c in inner.items():
            word = stage_word(m, a, alpha, im)
            labels = top_labels(b1, s1) + (im,)
            dots = [p for p, e in enumerate(u1, start=1) for _ in range(e)]
            _axpy(out, self._slide_dots(word, labels, dots, bottom, s1, a, alpha), c)
        return out

    def _slide_dots(self, word, labels, dots, bottom, s1, a, alpha):
        m = len(bottom)
        if not dots:
            return {(bottom, s1 + ((a, alpha),), (0,) * m): Fraction(1)}
        p, rest = dots[0], dots[1:]
        pos = p
        cur = list(labels)
        corrections = []
        for idx, g in enumerate(word):
            if g[0] != "t":
                continue
            j = g[1]
            same = cur[j - 1] == cur[j]
            if pos == j:
                if same:
                    corrections.append((1, idx))
                pos = j + 1
            elif pos == j + 1:
                if same:
                    corrections.append((-1, idx))
                pos = j
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
        bump = [0] * m
        bump[pos - 1] = 1
        out = _with_dots(self._slide_dots(word, labels, rest, bottom, s1, a, alpha), bump)
        if corrections:
            u = [0] * m
            for r in rest:
                u[r - 1] += 1
            base = (bottom, s1 + ((m, 0),), tuple(u))
            for sign, idx in corrections:
                _axpy(out, self.fold(word[:idx] + word[idx + 1:], base), sign)
        return out

    # left multiplication ---------------------------------------------------
    def left_mult(self, g, key):
        bottom, stages, u = key
        kind = g[0]
        m = len(bottom)
        if kind == "x":
            nu = list(u)
            nu[g[1] - 1] += 1
            return {(bottom, stages, tuple(nu)): Fraction(1)}
        if kind == "t":
            k = g[1]
            if not 1 <= k < m:
                raise ValueError(f"crossing {k} out of range")
            top = top_labels(bottom, stages)
            out = _with_dots(self.tau_stage(k, bottom, stages), swap(u, k))
            if top[k - 1] == top[k]:
                p, r = u[k - 1], u[k]
                if p != r:
                    sign = 1 if p > r else -1
                    lo, hi = min(p, r), max(p, r)
                    for s in range(hi - lo):
                        nu = list(u)
                        nu[k - 1] = lo + s
                        nu[k] = hi - 1 - s
                        _add(out, (bottom, stages, tuple(nu)), sign)
            return out
        if kind == "w":
            _, r, i, a = g
            if r == 1 and a == 0:
                top = top_labels(bottom, stages)
                if not m or top[0] != i:
                    return {}
                return _with_dots(self.omega_stage(bottom, stages), u)
            top = top_labels(bottom, stages)
            out = {}
            for c, word in tighten(top, r, i, a):
                _axpy(out, self.fold(word, key), c)
            return out
        raise ValueError(f"unknown generator {g!r}")

    def fold(self, word, key):
        """word (bottom to top) stacked on top of the basis element ``key``."""
        elem = {key: Fraction(1)}
        for g in word:
            nxt = {}
            for k, c in elem.items():
                _axpy(nxt, self.left_mult(g, k), c)
            elem = nxt
            if not elem:
                break
        return elem

    def normal_form(self, bottom, word):
        return self.fold(word, identity_key(tuple(bottom)))

    def multiply(self, x, y):
        """Product of elements {key: coeff}: x stacked on top of y."""
        out = {}
        for kx, cx in x.items():
            word = canonical_word(kx)
            top_y_needed = kx[0]
            for ky, cy in y.items():
                if top_labels(ky[0], ky[1]) != top_y_needed:
                    continue
                _axpy(out, self.fold(word, ky), cx * cy)
        return out


def tighten(labels, r, i, a):
    """Write omega_i^a in region r over vertical strands ``labels`` as a
    combination of words in dots, crossings and tight floating dots."""
    if r == 0:
        return []
    j = labels[r - 1]
    if j == i:
        if a >= 1:
            out = list(tighten(labels, r - 1, i, a - 1))
            out += [(-c, w + [("x", r)]) for c, w in tighten(labels, r, i, a - 1)]
            return out
        if r == 1:
            return [(1, [("w", 1, i, 0)])]
        j2 = labels[r - 2]
        mid = swap(labels, r - 1)
        inner = tighten(mid, r - 1, i, 0)
        t = ("t", r - 1)
        if abs(j2 - i) > 1:
            return [(c, [t] + w + [t]) for c, w in inner]
        if abs(j2 - i) == 1:
            out = [(c, [t] + w + [t]) for c, w in inner]
            out += [(-c, w) for c, w in tighten(labels, r - 2, i, 0)]
            return out
        out = [(c, [t] + w + [t, ("x", r)]) for c, w in inner]
        out += [(-c, [("x", r - 1), t] + w + [t]) for c, w in inner]
        return out
    if abs(j - i) == 1:
        out = [(c, w + [("x", r)]) for c, w in tighten(labels, r - 1, i, a)]
        out += [(-c, w) for c, w in tighten(labels, r - 1, i, a + 1)]
        return out
    return tighten(labels, r - 1, i, a)


# basis enumeration ---------------------------------------------------------

def stages_for_permutation(phi):
    """phi[k] = top position (0-based) of the strand starting at k."""
    return tuple((sum(1 for l in range(k + 1) if phi[l] <= phi[k]), 0) for k in range(len(phi)))


def permutations_between(bottom, top):
    m = len(bottom)
    out = []
    for phi in permutations(range(m)):
        if all(top[phi[k]] == bottom[k] for k in range(m)):
            out.append(phi)
    return out


def seqs(nu):
    """All sequences with label multiplicities nu (sorted, deterministic)."""
    labels = []
    for i, c in sorted(nu.items()):
        labels += [i] * c
    return sorted(set(permutations(labels)))


# right module structure over R(m-1) (x) 1 ------------------------------------

def tag_key(bottom, a, alpha, p):
    """x_a^p theta_a^alpha c_a as a staged key on ``bottom`` (last strand moves)."""
    m = len(bottom)
    stages = tuple((k, 0) for k in range(1, m)) + ((a, alpha),)
    u = [0] * m
    u[a - 1] = p
    return (tuple(bottom), stages, tuple(u))


def extend_key(key, label):
    """key (x) 1_label: add a vertical strand on the right."""
    bottom, stages, u = key
    m = len(bottom)
    return (bottom + (label,), stages + ((m + 1, 0),), u + (0,))


def _top_to_bottom_positions(m, a, alpha):
    """For theta_a^alpha c_a on m strands: top position of the dot that starts
    at bottom position j (j < m) in the leading term."""
    return {j: (j if j < a else j + 1) for j in range(1, m)}


class RightDecomposer:
    """Writes elements of R(m) e_(k, i) as sum tag . (r (x) 1) with tags
    x_a^p theta_a^alpha c_a and r in R(m-1)."""

    def __init__(self, klr):
        self.klr = klr
        self._memo = {}

    def key(self, key):
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        bottom, stages, u = key
        m = len(bottom)
        a, alpha = stages[-1]
        p = u[a - 1]
        pos = _top_to_bottom_positions(m, a, alpha)
        u1 = [0] * (m - 1)
        for j, t in pos.items():
            u1[j - 1] = u[t - 1]
        r = (bottom[:-1], stages[:-1], tuple(u1))
        out = {((a, alpha, p), r): Fraction(1)}
        main = self.klr.wrap({r: Fraction(1)}, bottom, a, alpha)
        lead = (bottom, stages, tuple(0 if t == a - 1 else e for t, e in enumerate(u)))
        corr = dict(main)
        if corr.get(lead) != 1:
            raise AssertionError("unexpected leading term in right decomposition")
        del corr[lead]
        if corr and p:
            bump = [0] * m
            bump[a - 1] = p
            corr = _with_dots(corr, tuple(bump))
        for k, c in corr.items():
            _axpy(out, self.key(k), -c)
        self._memo[key] = out
        return out

    def __call__(self, elem):
        out = {}
        for k, c in elem.items():
            _axpy(out, self.key(k), c)
        return out
