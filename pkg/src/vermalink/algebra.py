"""The five algebra flavors over the rewriting engine in ``klr``.

Flavors:
  b         R_b, floating dots with any subscript
  btilde    reduced R_b: subscript-0 floating dots may carry superscript -1
  p, pbar   subalgebras with subscript-0 floating dots only
  pbeta     p modulo the two-sided ideal generated by e_k with k_1 != 0
  pbarbeta  pbar modulo e_k with k_1 not in {0, 1} and x_1 e_k with k_1 = 1

In the reduced flavors a subscript-0 superscript a is stored as a + 1 so that
the relations are literally those of R_b; only degrees see the shift.
"""
import json
from collections import Counter
from fractions import Fraction
from itertools import product

from .klr import (KLR, canonical_word, crossing_count, identity_key, permutations_between,
                  seqs, stages_for_permutation, top_labels)
from .linalg import Echelon

FLAVORS = ("b", "btilde", "p", "pbeta", "pbar", "pbarbeta")
REDUCED = {"btilde", "pbar", "pbarbeta"}
ZERO_ONLY = {"p", "pbeta", "pbar", "pbarbeta"}
QUOTIENT = {"pbeta", "pbarbeta"}

_ENGINES = {}


class DiagramError(ValueError):
    pass


def engine(reduced):
    eng = _ENGINES.get(reduced)
    if eng is None:
        eng = _ENGINES[reduced] = KLR(reduced)
    return eng


def index_set(n, reduced):
    lo = -n + 2 if reduced else -n + 1
    return tuple(range(lo, n))


def nu_of(seq):
    tally = Counter(seq)
    return {i: tally[i] for i in sorted(tally)}


def key_order(key):
    """Total order used to pick pivots: diagrams with more crossings, more
    floating dots and more dots come last."""
    bottom, stages, u = key
    return (crossing_count(key), sum(al for _, al in stages), sum(u), stages, u, bottom)


class DiagramWord:
    """Bottom idempotent plus generators read bottom to top.

    Generators: ('x', k), ('t', k), ('w', r, i, a) with a the external
    superscript.
    """

    def __init__(self, bottom, generators, flavor="b", n=None):
        if flavor not in FLAVORS:
            raise DiagramError(f"unknown flavor {flavor!r}")
        self.bottom = tuple(bottom)
        self.generators = [tuple(g) for g in generators]
        self.flavor = flavor
        self.n = n
        self._labels_after()

    @property
    def reduced(self):
        return self.flavor in REDUCED

    def _labels_after(self):
        labels = list(self.bottom)
        m = len(labels)
        allowed = index_set(self.n, self.reduced) if self.n else None
        if allowed is not None and any(s not in allowed for s in labels):
            raise DiagramError("label outside the index set")
        for g in self.generators:
            kind = g[0]
            if kind == "x":
                if len(g) != 2 or not 1 <= g[1] <= m:
                    raise DiagramError(f"bad dot {g!r}")
            elif kind == "t":
                if len(g) != 2 or not 1 <= g[1] < m:
                    raise DiagramError(f"bad crossing {g!r}")
                k = g[1]
                labels[k - 1], labels[k] = labels[k], labels[k - 1]
            elif kind == "w":
                if len(g) != 4:
                    raise DiagramError(f"bad floating dot {g!r}")
                _, r, i, a = g
                if not 0 <= r <= m:
                    raise DiagramError(f"region {r} out of range")
                if allowed is not None and i not in allowed:
                    raise DiagramError("floating dot subscript outside the index set")
                if self.flavor in ZERO_ONLY and i != 0:
                    raise DiagramError("this flavor only has subscript-0 floating dots")
                low = -1 if (self.reduced and i == 0) else 0
                if a < low:
                    raise DiagramError(f"superscript {a} below {low}")
            else:
                raise DiagramError(f"unknown generator {g!r}")
        self.top = tuple(labels)

    def internal(self):
        out = []
        for g in self.generators:
            if g[0] == "w" and self.reduced and g[2] == 0:
                out.append(("w", g[1], g[2], g[3] + 1))
            else:
                out.append(g)
        return out

    def multidegree(self):
        q, lam = engine(self.reduced).word_degree(self.bottom, self.internal())
        fd = [g for g in self.generators if g[0] == "w"]
        parity = len(fd) % 2
        dbeta = sum(1 for g in fd if g[2] != 0)
        dn = sum(1 for g in fd if g[2] == 0)
        return {"q": q, "lambda": dict(lam), "parity": parity, "dbeta": dbeta, "dN": dn}

    def to_json(self):
        return {
            "flavor": self.flavor,
            "nu": {str(k): v for k, v in nu_of(self.bottom).items()},
            "bottom": list(self.bottom),
            "generators": [{"kind": g[0], "args": list(g[1:])} for g in self.generators],
        }

    @classmethod
    def from_json(cls, data, n=None):
        if isinstance(data, str):
            data = json.loads(data)
        gens = [tuple([g["kind"]] + list(g["args"])) for g in data["generators"]]
        word = cls(data["bottom"], gens, data.get("flavor", "b"), n)
        if "nu" in data:
            given = {int(k): v for k, v in data["nu"].items() if v}
            if given != nu_of(word.bottom):
                raise DiagramError("nu does not match the bottom idempotent")
        return word


class Algebra:
    """One flavor of the algebra: normal forms, products, bases, dimensions."""

    def __init__(self, flavor="b"):
        if flavor not in FLAVORS:
            raise DiagramError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.reduced = flavor in REDUCED
        self.zero_only = flavor in ZERO_ONLY
        self.quotient = flavor in QUOTIENT
        self.klr = engine(self.reduced)
        self._ideal = {}
        self._base = {}

    # degrees -----------------------------------------------------------------
    def degree(self, key):
        return self.klr.degree(key)

    def multidegree(self, key):
        q, lam = self.degree(key)
        bottom, stages, _ = key
        fds = [bottom[k] for k, (_, al) in enumerate(stages) if al]
        return {"q": q, "lambda": dict(lam), "parity": len(fds) % 2,
                "dbeta": sum(1 for i in fds if i != 0), "dN": sum(1 for i in fds if i == 0)}

    # rewriting -------------------------------------------------------------
    def normal_form(self, word):
        if not isinstance(word, DiagramWord):
            raise TypeError("expected a DiagramWord")
        if word.flavor != self.flavor:
            raise DiagramError("flavor mismatch")
        elem = self.klr.normal_form(word.bottom, word.internal())
        return self.reduce(elem)

    def multiply(self, x, y):
        return self.reduce(self.klr.multiply(x, y))

    def identity(self, bottom):
        return {identity_key(tuple(bottom)): Fraction(1)}

    # bases -----------------------------------------------------------------
    def _allowed_alpha(self, bottom):
        return [(0, 1) if (not self.zero_only or s == 0) else (0,) for s in bottom]

    def _base_keys(self, bottom, top):
        """Dotless staged keys from bottom to top with their degrees."""
        memo = (tuple(bottom), tuple(top))
        hit = self._base.get(memo)
        if hit is None:
            hit = []
            m = len(bottom)
            for phi in permutations_between(bottom, top):
                st = stages_for_permutation(phi)
                for alphas in product(*self._allowed_alpha(bottom)):
                    stages = tuple((a, al) for (a, _), al in zip(st, alphas))
                    key = (tuple(bottom), stages, (0,) * m)
                    hit.append((key, self.klr.degree(key)))
            self._base[memo] = hit
        return hit

    def min_degree(self, bottom, top):
        base = self._base_keys(bottom, top)
        return min((d[0] for _, d in base), default=None)

    def spanning_keys(self, bottom, top, qmax, qmin=None):
        """Staged keys of the unquotiented flavor with q-degree in [qmin, qmax]."""
        out = []
        m = len(bottom)
        for key, (q0, _) in self._base_keys(bottom, top):
            budget = qmax - q0
            if budget < 0:
                continue
            for u in _dot_vectors(m, budget // 2):
                q = q0 + 2 * sum(u)
                if qmin is not None and q < qmin:
                    continue
                out.append((key[0], key[1], u))
        return out

    def basis(self, bottom, top, qmax, qmin=None):
        keys = self.spanning_keys(bottom, top, qmax, qmin)
        if not self.quotient:
            return sorted(keys, key=key_order)
        out = []
        for key in keys:
            q, lam = self.degree(key)
            ech = self._ideal_block(tuple(bottom), tuple(top), q, lam)
            if key not in ech.rows:
                out.append(key)
        return sorted(out, key=key_order)

    def graded_dim(self, bottom, top, qmax, qmin=None):
        """Counter {(q, lambda, parity): count} over the basis in the window."""
        tally = Counter()
        for key in self.basis(bottom, top, qmax, qmin):
            md = self.multidegree(key)
            tally[(md["q"], tuple(sorted(md["lambda"].items())), md["parity"])] += 1
        return tally

    def graded_dim_total(self, nu, qmax, qmin=None):
        tally = Counter()
        for i in seqs(nu):
            for j in seqs(nu):
                tally.update(self.graded_dim(i, j, qmax, qmin))
        return tally

    # cyclotomic quotient -------------------------------------------------------
    def forbidden(self, seq):
        """'all' if e_seq lies in the ideal, 'dot' if x_1 e_seq does, else None."""
        if not self.quotient or not seq:
            return None
        if self.flavor == "pbeta":
            return "all" if seq[0] != 0 else None
        if seq[0] in (0,):
            return None
        return "dot" if seq[0] == 1 else "all"

    def _ideal_block(self, bottom, top, q, lam):
        memo = (bottom, top, q, lam)
        ech = self._ideal.get(memo)
        if ech is not None:
            return ech
        ech = Echelon(order=key_order)
        for vec in self.ideal_spanning_set(bottom, top, q):
            if self.degree(next(iter(vec)))[1] == lam:
                ech.add(vec)
        self._ideal[memo] = ech
        return ech

    def ideal_spanning_set(self, bottom, top, q):
        """Unreduced elements spanning I e_bottom in degree q, as vectors."""
        memo = ("span", bottom, top, q)
        hit = self._ideal.get(memo)
        if hit is not None:
            return hit
        plain = Algebra(self.flavor.replace("beta", ""))
        vectors = []
        for mid in seqs(nu_of(bottom)):
            kind = self.forbidden(mid)
            if kind is None:
                continue
            lo_top = plain.min_degree(mid, top)
            lo_bot = plain.min_degree(bottom, mid)
            if lo_top is None or lo_bot is None:
                continue
            extra = 2 if kind == "dot" else 0
            for b in plain.spanning_keys(bottom, mid, q - lo_top - extra):
                qb = plain.degree(b)[0]
                right = {b: Fraction(1)}
                if kind == "dot":
                    right = self.klr.fold([("x", 1)], b)
                for a in plain.spanning_keys(mid, top, q - qb - extra, q - qb - extra):
                    vec = self.klr.multiply({a: Fraction(1)}, right)
                    if vec:
                        vectors.append(vec)
        # group the rows by lambda lazily in _ideal_block
        out = []
        for vec in vectors:
            by_lam = {}
            for k, c in vec.items():
                by_lam.setdefault(self.degree(k)[1], {})[k] = c
            out.extend(by_lam.values())
        self._ideal[memo] = out
        return out

    def reduce(self, elem):
        """Representative modulo the cyclotomic ideal (identity for other flavors)."""
        if not self.quotient or not elem:
            return dict(elem)
        blocks = {}
        for key, c in elem.items():
            bottom, stages, _ = key
            top = top_labels(bottom, stages)
            q, lam = self.degree(key)
            blocks.setdefault((bottom, top, q, lam), {})[key] = c
        out = {}
        for (bottom, top, q, lam), vec in blocks.items():
            ech = self._ideal_block(bottom, top, q, lam)
            out.update(ech.reduce(vec))
        return out


def _dot_vectors(m, total):
    if m == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _dot_vectors(m - 1, total - first):
            yield (first,) + rest


def element_degree(alg, elem):
    degs = {alg.degree(k) for k in elem}
    if len(degs) > 1:
        raise ValueError("element is not homogeneous")
    return degs.pop() if degs else None


def element_to_json(alg, elem):
    terms = []
    for key in sorted(elem, key=key_order):
        bottom, stages, u = key
        c = elem[key]
        terms.append({
            "coeff": str(c),
            "bottom": list(bottom),
            "top": list(top_labels(bottom, stages)),
            "stages": [list(s) for s in stages],
            "dots": list(u),
            "word": [list(g) for g in canonical_word(key)],
        })
    return {"flavor": alg.flavor, "terms": terms}
