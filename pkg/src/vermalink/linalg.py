"""Sparse exact linear algebra over the rationals.

Vectors are dicts {index: Fraction}.  Pivots are the largest index of a row,
either by natural comparison or by an ``order`` key function.
"""
from fractions import Fraction


def _axpy(acc, vec, c):
    for k, v in vec.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class Echelon:
    """Incrementally built reduced row echelon form.

    Each stored row has a pivot (its largest index) that appears in no other
    stored row.  ``combos`` optionally record which combination of inserted
    vectors produced each row, which gives kernels and preimages.
    """

    def __init__(self, track=False, order=None):
        self.order = order
        self.rows = {}
        self.track = track
        self.combos = {}
        self._count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, combo=None):
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        # stored rows contain no foreign pivots, so one pass suffices
        for k in [k for k in vec if k in self.rows]:
            c = vec.get(k)
            if not c:
                continue
            _axpy(vec, self.rows[k], -c)
            if combo is not None:
                _axpy(combo, self.combos[k], -c)
        return vec

    def add(self, vec):
        """Insert vec; returns (pivot or None, combo residual when dependent)."""
        combo = None
        if self.track:
            combo = {self._count: Fraction(1)}
        self._count += 1
        res = self.reduce(vec, combo)
        if not res:
            return None, combo
        p = max(res, key=self.order)
        c = res[p]
        res = {k: v / c for k, v in res.items()}
        if combo is not None:
            combo = {k: v / c for k, v in combo.items()}
        for q, row in self.rows.items():
            if p in row:
                f = row[p]
                _axpy(row, res, -f)
                if self.track:
                    _axpy(self.combos[q], combo, -f)
        self.rows[p] = res
        if self.track:
            self.combos[p] = combo
        return p, None

    def contains(self, vec):
        return not self.reduce(vec)


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def kernel(images):
    """Basis of {c : sum_k c_k images[k] = 0}, as dicts {k: coeff}."""
    ech = Echelon(track=True)
    out = []
    for img in images:
        _, combo = ech.add(img)
        if combo is not None:
            out.append(combo)
    return out


def homology_rank(d_in, d_out, dim):
    """dim ker(d_out) - rank(d_in) for a space of dimension ``dim``; d_in are
    images of the previous space, d_out images of this space's basis."""
    return dim - rank(d_out) - rank(d_in)


PRIME = 2147483629


class ModRank:
    """Rank of integer vectors modulo a prime.

    The rank mod p never exceeds the rational rank, so a full rank here
    certifies independence over the rationals."""

    def __init__(self, p=PRIME):
        self.p = p
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def add(self, vec):
        p = self.p
        v = {k: c % p for k, c in vec.items() if c % p}
        while v:
            piv = max(v)
            row = self.rows.get(piv)
            if row is None:
                inv = pow(v[piv], -1, p)
                self.rows[piv] = {k: c * inv % p for k, c in v.items()}
                return True
            c = v[piv]
            for k, x in row.items():
                nv = (v.get(k, 0) - c * x) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return False
