"""The differentials d_beta and d_N and homology of the algebras on windows.

Both differentials are fixed on tight floating dots:
  d_beta(omega_i) = 0 if i = 0, -1 otherwise (reduced: -x_1 if i = 1)
  d_N(omega_0)    = -x_1^N   (reduced: the tight dot has superscript -1 and
                             goes to -x_1^(N-1), the homogeneous choice)
and extended with the Leibniz rule d(ab) = d(a) b + (-1)^|a| a d(b), where |a|
is the number of floating dots in a.  The parity sign (rather than a count of
one subscript family) is what makes both maps compatible with floating-dot
anticommutation.
"""
from collections import defaultdict
from fractions import Fraction

from .algebra import Algebra
from .klr import _axpy, _with_dots, canonical_word, seqs
from .linalg import rank


class DifferentialError(ValueError):
    pass


def parse_diff(text):
    """'dbeta', 'dN:<N>' or 'dtotal:<N>' -> (kind, N)."""
    if text == "dbeta":
        return ("dbeta", None)
    for kind in ("dN", "dtotal"):
        if text.startswith(kind + ":"):
            try:
                n = int(text.split(":", 1)[1])
            except ValueError:
                raise DifferentialError(f"bad N in {text!r}") from None
            if n < 1:
                raise DifferentialError("N must be at least 1")
            return (kind, n)
    raise DifferentialError(f"unknown differential {text!r}")


class Differential:
    def __init__(self, alg, kind, N=None):
        if kind not in ("dbeta", "dN", "dtotal"):
            raise DifferentialError(f"unknown differential {kind!r}")
        if kind in ("dN", "dtotal") and (N is None or N < 1):
            raise DifferentialError("d_N needs N >= 1")
        if kind in ("dbeta", "dtotal") and alg.flavor not in ("b", "btilde"):
            raise DifferentialError("d_beta lives on the b flavors")
        self.alg = alg
        self.kind = kind
        self.N = N
        self._memo = {}

    def _replacement(self, label):
        """(coefficient, generators) replacing a tight floating dot, or None."""
        reduced = self.alg.reduced
        out = []
        if self.kind in ("dbeta", "dtotal") and label != 0:
            out.append((-1, [("x", 1)] if (reduced and label == 1) else []))
        if self.kind in ("dN", "dtotal") and label == 0:
            out.append((-1, [("x", 1)] * (self.N - 1 if reduced else self.N)))
        return out

    def of_key(self, key):
        bottom, stages, u = key
        base = (bottom, stages, (0,) * len(bottom))
        hit = self._memo.get(base)
        if hit is None:
            hit = {}
            word = canonical_word(base)
            fd = [j for j, g in enumerate(word) if g[0] == "w"]
            ident = (bottom, tuple((k, 0) for k in range(1, len(bottom) + 1)), (0,) * len(bottom))
            for pos, j in enumerate(fd):
                sign = -1 if (len(fd) - pos - 1) % 2 else 1
                for coef, repl in self._replacement(word[j][2]):
                    new = word[:j] + repl + word[j + 1:]
                    _axpy(hit, self.alg.klr.fold(new, ident), sign * coef)
            self._memo[base] = hit
        return _with_dots(hit, u)

    def __call__(self, elem):
        out = {}
        for key, c in elem.items():
            _axpy(out, self.of_key(key), c)
        return self.alg.reduce(out)


def hdeg(alg, key, kind):
    bottom, stages, _ = key
    fds = [bottom[k] for k, (_, al) in enumerate(stages) if al]
    if kind == "dbeta":
        return sum(1 for i in fds if i != 0)
    if kind == "dN":
        return sum(1 for i in fds if i == 0)
    return len(fds)


def block_of(alg, key, kind, N):
    """Degree data preserved by the differential, and the homological degree."""
    q, lam = alg.degree(key)
    lam = dict(lam)
    h = hdeg(alg, key, kind)
    if kind == "dbeta":
        return (q, lam.get(0, 0)), h
    if kind == "dN":
        nonzero = tuple(sorted((i, v) for i, v in lam.items() if i != 0))
        return (q + 2 * N * h, nonzero), h
    n0 = hdeg(alg, key, "dN")
    return (q + 2 * N * n0,), h


def algebra_homology(nu, flavor, diff, qmax):
    """Homology ranks of (R(nu), d) per block and homological degree.

    Returns a list of rows {"bottom", "top", "block", "q", "hdeg", "rank",
    "dim"}; only blocks entirely inside the window q <= qmax are reported.
    """
    kind, N = parse_diff(diff) if isinstance(diff, str) else diff
    alg = Algebra(flavor)
    d = Differential(alg, kind, N)
    rows = []
    for bottom in seqs(nu):
        for top in seqs(nu):
            rows.extend(_pair_homology(alg, d, bottom, top, kind, N, qmax))
    return rows


def _pair_homology(alg, d, bottom, top, kind, N, qmax):
    blocks = defaultdict(lambda: defaultdict(list))
    for key in alg.basis(bottom, top, qmax):
        blk, h = block_of(alg, key, kind, N)
        if kind != "dbeta" and blk[0] > qmax:
            continue
        blocks[blk][h].append(key)
    rows = []
    for blk in sorted(blocks, key=repr):
        spaces = blocks[blk]
        ranks = {}
        for h, keys in spaces.items():
            images = [d({k: Fraction(1)}) for k in keys]
            ranks[h] = rank(images)
        for h in sorted(spaces):
            dim = len(spaces[h])
            r = dim - ranks[h] - ranks.get(h + 1, 0)
            q = blk[0] - (2 * N * h if kind == "dN" else 0)
            rows.append({"bottom": bottom, "top": top, "block": blk, "q": q, "hdeg": h,
                         "rank": r, "dim": dim})
    return rows


def homology_graded_dims(rows):
    """Collapse homology rows to {(q, hdeg): total rank}."""
    tally = defaultdict(int)
    for r in rows:
        if r["rank"]:
            tally[(r["q"], r["hdeg"])] += r["rank"]
    return dict(tally)
