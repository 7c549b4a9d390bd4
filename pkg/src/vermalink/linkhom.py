"""Triply graded link homology from the braid cube of module words.

A closed braid becomes, for each cube vertex, a word of induction (F) and
restriction (E) functors applied to the trivial module.  An element of such
a module is a tuple of tags (a, alpha, p), one per F letter, standing for
x_a^p theta_a^alpha c_a: the new strand enters on the right and moves to
position a.  Restriction letters just forget the last strand.

Positive crossings use the unit Id -> E_i F_i (insert a trivial tag),
negative ones the counit F_i E_i -> Id (act with the tag on what lies
below).  Both commute with d_beta, so the cube descends to the d_beta
homology C, where d_N acts as well.
"""
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra
from .braids import closure_ladders
from .dg import Differential
from .klr import (RightDecomposer, _axpy, canonical_word, extend_key, tag_key,
                  top_labels)
from .linalg import Echelon, kernel
from .scalars import ConeSeries, QFrac
from .verma import homfly, homfly_reduced

EMPTY = ((), (), ())


class WindowError(ArithmeticError):
    """A map left the computed q-window."""


@dataclass(frozen=True)
class Vertex:
    state: tuple
    letters: tuple          # (kind, label) in application order
    crossings: tuple        # per crossing: index of its first letter
    q_shift: int
    l_shift: int
    r: int


def _e_shift(nu, i, reduced):
    """Degree shift of E_i landing in weight nu (the weight after E_i)."""
    q = 2 * nu.get(i, 0) - nu.get(i - 1, 0) - nu.get(i + 1, 0) + 1
    if reduced:
        q += (i == 0) - (i == 1)
    return q, -(i == 0)


def build_vertex(b, variant, state):
    ladder = closure_ladders(b.n, variant)
    reduced = variant == "reduced"
    letters = [("F", i) for i in ladder.bottom_word]
    starts = []
    q = l = r = 0
    for g, v in zip(b.letters, state):
        i = abs(g)
        starts.append(len(letters))
        if g > 0:
            r += v
            if v:
                letters += [("F", i), ("E", i)]
                q -= 1
        else:
            r -= 1 - v
            if not v:
                letters += [("E", i), ("F", i)]
                q += 1
    letters += [("E", i) for i in ladder.top_word]
    nu = defaultdict(int)
    for kind, i in letters:
        if kind == "F":
            nu[i] += 1
        else:
            nu[i] -= 1
            dq, dl = _e_shift(nu, i, reduced)
            q += dq
            l += dl
    npos, nneg = b.positives, b.negatives
    q += npos - nneg
    l += nneg - npos
    return Vertex(tuple(state), tuple(letters), tuple(starts), q, l, r)


def cube_states(k):
    for m in range(1 << k):
        yield tuple((m >> j) & 1 for j in range(k))


class ModuleEngine:
    """Action of R_b and the differentials on tag tuples."""

    def __init__(self, variant="full"):
        self.reduced = variant == "reduced"
        self.alg = Algebra("btilde" if self.reduced else "b")
        self.klr = self.alg.klr
        self.dec = RightDecomposer(self.klr)
        self.diffs = {}
        self._act = {}
        self._d = {}
        self._idem = {}

    def differential(self, kind, N=None):
        d = self.diffs.get((kind, N))
        if d is None:
            d = self.diffs[(kind, N)] = Differential(self.alg, kind, N)
        return d

    def idem(self, letters, tags):
        key = (letters, tags)
        hit = self._idem.get(key)
        if hit is not None:
            return hit
        if not letters:
            out = ()
        else:
            kind, i = letters[-1]
            if kind == "F":
                prev = self.idem(letters[:-1], tags[:-1])
                a, alpha, _ = tags[-1]
                out = prev[:a - 1] + (i,) + prev[a - 1:]
            else:
                prev = self.idem(letters[:-1], tags)
                if not prev or prev[-1] != i:
                    raise ValueError("restriction letter does not match")
                out = prev[:-1]
        self._idem[key] = out
        return out

    def act(self, letters, rkey, tags):
        """rkey . tags in the module of ``letters``, as {tags: coeff}."""
        memo = (letters, rkey, tags)
        hit = self._act.get(memo)
        if hit is not None:
            return hit
        if not letters:
            out = {(): Fraction(1)} if rkey == EMPTY else {}
        else:
            kind, i = letters[-1]
            prefix = letters[:-1]
            if kind == "E":
                out = self.act(prefix, extend_key(rkey, i), tags)
            else:
                rest, tag = tags[:-1], tags[-1]
                below = self.idem(prefix, rest)
                tk = tag_key(below + (i,), *tag)
                if rkey[0] != top_labels(tk[0], tk[1]):
                    raise ValueError("idempotent mismatch in action")
                y = self.klr.fold(canonical_word(rkey), tk)
                out = {}
                for (tag2, r2), c in self.dec(y).items():
                    for rest2, c2 in self.act(prefix, r2, rest).items():
                        k = rest2 + (tag2,)
                        nv = out.get(k, 0) + c * c2
                        if nv:
                            out[k] = nv
                        else:
                            out.pop(k, None)
        self._act[memo] = out
        return out

    def d(self, letters, tags, kind, N=None):
        memo = (letters, tags, kind, N)
        hit = self._d.get(memo)
        if hit is not None:
            return hit
        out = {}
        if letters:
            lk, i = letters[-1]
            prefix = letters[:-1]
            if lk == "E":
                out = self.d(prefix, tags, kind, N)
            else:
                rest, tag = tags[:-1], tags[-1]
                below = self.idem(prefix, rest)
                tk = tag_key(below + (i,), *tag)
                dt = self.differential(kind, N).of_key(tk)
                for (tag2, r2), c in self.dec(dt).items():
                    for rest2, c2 in self.act(prefix, r2, rest).items():
                        _axpy(out, {rest2 + (tag2,): c2}, c)
                sign = -1 if tag[1] else 1
                for rest2, c2 in self.d(prefix, rest, kind, N).items():
                    _axpy(out, {rest2 + (tag,): c2}, sign)
        self._d[memo] = out
        return out

    # basis ---------------------------------------------------------------------
    def enumerate(self, vertex, qmax, kmax=None):
        """Tag tuples of the vertex module with total q <= qmax.

        Yields (tags, q, lam0, k, p): lam0 the lambda_0 degree including the
        shift, k the number of nonzero-label floating dots, p of label 0."""
        letters = vertex.letters
        budget = qmax - vertex.q_shift
        inf = float("inf")
        floor = {}

        def least(j, idem):
            # smallest total degree the letters j.. can still add
            key = (j, idem)
            hit = floor.get(key)
            if hit is not None:
                return hit
            if j == len(letters):
                best = 0
            else:
                kind, i = letters[j]
                if kind == "E":
                    best = least(j + 1, idem[:-1]) if idem and idem[-1] == i else inf
                else:
                    best = inf
                    bottom = idem + (i,)
                    for a in range(1, len(bottom) + 1):
                        top = idem[:a - 1] + (i,) + idem[a - 1:]
                        rest = least(j + 1, top)
                        for alpha in (0, 1):
                            q0, _ = self.klr.degree(tag_key(bottom, a, alpha, 0))
                            best = min(best, q0 + rest)
            floor[key] = best
            return best

        out = []

        def rec(j, idem, tags, q, k, p):
            if j == len(letters):
                out.append((tags, q + vertex.q_shift, 2 * p + vertex.l_shift, k, p))
                return
            kind, i = letters[j]
            if kind == "E":
                rec(j + 1, idem[:-1], tags, q, k, p)
                return
            bottom = idem + (i,)
            for a in range(1, len(bottom) + 1):
                top = idem[:a - 1] + (i,) + idem[a - 1:]
                rest = least(j + 1, top)
                for alpha in (0, 1):
                    nk = k + (alpha and i != 0)
                    if kmax is not None and nk > kmax:
                        continue
                    np_ = p + (alpha and i == 0)
                    q0, _ = self.klr.degree(tag_key(bottom, a, alpha, 0))
                    e = 0
                    while q + q0 + 2 * e + rest <= budget:
                        rec(j + 1, top, tags + ((a, alpha, e),), q + q0 + 2 * e, nk, np_)
                        e += 1

        if least(0, ()) <= budget:
            rec(0, (), (), 0, 0, 0)
        return out

    # cube maps -----------------------------------------------------------------
    def edge(self, src, dst, c, tags):
        """Image of tags under the map of crossing c from src to dst (unsigned)."""
        start = src.crossings[c]
        nf = sum(1 for kind, _ in src.letters[:start] if kind == "F")
        if src.state[c] == 0 and dst.state[c] == 1 and len(dst.letters) > len(src.letters):
            # unit: Id -> E_i F_i, a trivial tag on the new strand
            m = sum(1 if kind == "F" else -1 for kind, _ in src.letters[:start])
            return {tags[:nf] + ((m + 1, 0, 0),) + tags[nf:]: Fraction(1)}
        # counit: F_i E_i -> Id
        prefix = src.letters[:start]
        _, i = src.letters[start]
        pre, tag, post = tags[:nf], tags[nf], tags[nf + 1:]
        below = self.idem(prefix, pre)
        tk = tag_key(below, *tag)
        return {p2 + post: c2 for p2, c2 in self.act(prefix, tk, pre).items()}


def edge_sign(vertex, c, braid):
    r = 0
    for j in range(c):
        r += vertex.state[j] if braid.letters[j] > 0 else vertex.state[j] - 1
    return -1 if r % 2 else 1


# generic homology with representatives -------------------------------------

class Homology:
    """Homology of a small complex {deg: basis}, maps {deg: {label: vec}}
    with vectors over the basis of deg + 1.  Keeps representatives and a
    projection of cycles onto them."""

    def __init__(self, basis, maps):
        self.reps = {}
        self._quot = {}
        for deg, labels in basis.items():
            images = [maps.get(deg - 1, {}).get(x, {}) for x in basis.get(deg - 1, [])]
            outs = [maps.get(deg, {}).get(x, {}) for x in labels]
            cycles = [{labels[j]: c for j, c in combo.items()} for combo in kernel(outs)]
            ech = Echelon(track=True)
            for img in images:
                ech.add(img)
            reps, ids = [], []
            for z in cycles:
                piv, _ = ech.add(z)
                if piv is not None:
                    reps.append(z)
                    ids.append(ech._count - 1)
            self.reps[deg] = reps
            self._quot[deg] = (ech, ids)

    def ranks(self):
        return {d: len(r) for d, r in self.reps.items() if r}

    def project(self, deg, vec):
        ech, ids = self._quot[deg]
        combo = {}
        res = ech.reduce(vec, combo)
        if res:
            raise ArithmeticError("projected vector is not a cycle")
        return {n: -combo[j] for n, j in enumerate(ids) if combo.get(j)}


def _ranks(basis, maps):
    return Homology(basis, maps).ranks()


# the complex ------------------------------------------------------------------

class LinkComplex:
    """d_beta homology of the cube complex of a braid, on the window q <= qmax.

    Chain groups are blocks (q, l) graded by the cube degree r; every
    element of a block has the same number p of label-0 floating dots.
    """

    def __init__(self, braid, variant="full", qmax=6, check_dbeta=False):
        if variant not in ("full", "reduced"):
            raise ValueError(f"unknown variant {variant!r}")
        if variant == "reduced" and braid.n < 2:
            raise ValueError("the reduced closure needs at least two strands")
        self.braid = braid
        self.variant = variant
        self.qmax = qmax
        self.mod = ModuleEngine(variant)
        k = len(braid.letters)
        self.vertices = {s: build_vertex(braid, variant, s) for s in cube_states(k)}
        self.l_shift = next(iter(self.vertices.values())).l_shift
        self.d2_ok = True
        self.concentrated = True
        self._build(check_dbeta)

    # C_0 and its d_beta homology
    def _build(self, check_dbeta):
        raw = defaultdict(lambda: defaultdict(list))   # (q, l, r) -> k -> keys
        self.p_of = {}
        for s, v in self.vertices.items():
            for tags, q, l, k, p in self.mod.enumerate(v, self.qmax, None if check_dbeta else 1):
                raw[(q, l, v.r)][k].append((s, tags))
                self.p_of[(q, l)] = p
        self.raw = raw
        self.basis = {}      # (q, l, r) -> list of C_0 keys spanning H
        self._b0 = {}        # (q, l, r) -> Echelon of d_beta boundaries
        for blk, by_k in raw.items():
            ech = Echelon()
            for key in by_k.get(1, []):
                ech.add(self._dbeta(key))
            self._b0[blk] = ech
            self.basis[blk] = [key for key in by_k.get(0, []) if key not in ech.rows]
            if check_dbeta:
                ks = {kk: list(keys) for kk, keys in by_k.items()}
                maps = {kk: {x: self._dbeta(x) for x in keys} for kk, keys in ks.items()}
                # d_beta lowers k: reindex so that the differential raises degree
                basis = {-kk: keys for kk, keys in ks.items()}
                dmaps = {-kk: m for kk, m in maps.items()}
                for h, rk in _ranks(basis, dmaps).items():
                    if h != 0 and rk:
                        self.concentrated = False
        self.index = {blk: {key: n for n, key in enumerate(keys)} for blk, keys in self.basis.items()}

    def _dbeta(self, key):
        s, tags = key
        return {(s, t): c for t, c in self.mod.d(self.vertices[s].letters, tags, "dbeta").items()}

    def _project(self, blk, vec):
        """C_0 vector in block blk -> coordinates on H(C_0, d_beta)."""
        ech = self._b0.get(blk)
        if ech is None:
            if vec:
                raise WindowError(f"image in bidegree (q={blk[0]}, l={blk[1]}, r={blk[2]}) "
                                  f"lies outside the window q <= {self.qmax}")
            return {}
        res = ech.reduce(vec)
        idx = self.index[blk]
        return {idx[k]: c for k, c in res.items()}

    def dr(self, blk, n):
        """d_r of basis element n of block blk, as coordinates in (q, l, r+1)."""
        s, tags = self.basis[blk][n]
        src = self.vertices[s]
        out = {}
        for c, v in enumerate(s):
            if v:
                continue
            t = s[:c] + (1,) + s[c + 1:]
            dst = self.vertices[t]
            sign = edge_sign(src, c, self.braid)
            for t2, co in self.mod.edge(src, dst, c, tags).items():
                _axpy(out, {(t, t2): co}, sign)
        q, l, r = blk
        return self._project((q, l, r + 1), out)

    def dn(self, blk, n, N):
        """(-1)^r d_N of basis element n, in block (q + 2N, l - 2, r)."""
        s, tags = self.basis[blk][n]
        q, l, r = blk
        img = self.mod.d(self.vertices[s].letters, tags, "dN", N)
        sign = -1 if r % 2 else 1
        vec = {(s, t): sign * c for t, c in img.items()}
        return self._project((q + 2 * N, l - 2, r), vec)

    # gradings
    def h_of(self, blk):
        q, l, r = blk
        return r - self.p_of[(q, l)]

    def dims(self):
        return {blk: len(keys) for blk, keys in self.basis.items() if keys}

    # triply graded homology
    def poincare(self):
        by_ql = defaultdict(dict)
        for (q, l, r), keys in self.basis.items():
            if keys:
                by_ql[(q, l)][r] = list(range(len(keys)))
        rows = []
        self.hr = {}
        for (q, l), basis in sorted(by_ql.items()):
            maps = {}
            for r, labels in basis.items():
                maps[r] = {n: self.dr((q, l, r), n) for n in labels}
                if self.d2_ok:
                    self._check_d2(q, l, r, maps[r])
            hom = Homology(basis, maps)
            self.hr[(q, l)] = hom
            p = self.p_of[(q, l)]
            for r, rk in sorted(hom.ranks().items()):
                rows.append({"q": q, "l": l, "h": r - p, "rank": rk})
        return rows

    def graded_ranks(self, normalized=True):
        """{(q, l, r, p): rank} of H(C, d_r); normalized=False undoes the
        writhe shift q^(n+ - n-) l^(n- - n+)."""
        if not hasattr(self, "hr"):
            self.poincare()
        dq = dl = 0
        if not normalized:
            w = self.braid.positives - self.braid.negatives
            dq, dl = -w, w
        out = {}
        for (q, l), hom in self.hr.items():
            for r, rk in hom.ranks().items():
                out[(q + dq, l + dl, r, self.p_of[(q, l)])] = rk
        return out

    def _check_d2(self, q, l, r, images):
        tgt = (q, l, r + 1)
        if tgt not in self.basis:
            return
        for vec in images.values():
            acc = {}
            for n, c in vec.items():
                _axpy(acc, self.dr(tgt, n), c)
            if acc:
                self.d2_ok = False
                return

    def euler(self, rows=None):
        rows = self.poincare() if rows is None else rows
        out = defaultdict(int)
        for row in rows:
            out[(row["q"], row["l"])] += (-1 if row["h"] % 2 else 1) * row["rank"]
        return {k: v for k, v in out.items() if v}

    def expected_euler(self, mirror=True):
        b = self.braid.mirror() if mirror else self.braid
        value = homfly(b) if self.variant == "full" else homfly_reduced(b)
        return value

    def euler_ok(self, rows=None):
        """Euler characteristic against the HOMFLY-PT value of the mirror,
        coefficientwise for q <= qmax."""
        chi = self.euler(rows)
        value = QFrac.coerce(self.expected_euler())
        ls = [l for _, l in chi] + [l for _, l in value.num.terms] or [0]
        qs = [q for q, _ in chi] + [self.qmax]
        expected = ConeSeries.expand(value, (min(qs), self.qmax, min(ls), max(ls)))
        mine = ConeSeries(chi, (min(min(qs), expected.window[0]),) + expected.window[1:])
        return mine.agrees_with(expected, self.qmax)

    # page-2 check
    def complete_T(self, T, N):
        """Whether every element with q + N l = T lies inside the window."""
        return T - N * self.l_shift <= self.qmax

    def page2(self, N):
        """Three routes to the d_N-deformed homology, keyed by (q + N l, h):
        (a) H(H(C, d_r), d_N), (b) H(C, d_r + d_N), (c) H(H(C, d_N), d_r).
        Only blocks T with complete window are returned."""
        if not hasattr(self, "hr"):
            self.poincare()
        blocks = [blk for blk, keys in self.basis.items() if keys]
        Ts = sorted({q + N * l for q, l, _ in blocks if self.complete_T(q + N * l, N)})
        return {T: (self._route_a(T, N), self._route_b(T, N), self._route_c(T, N)) for T in Ts}

    def gl_n(self, N):
        """Ranks of H(C, d_r + d_N) as rows {q, h, rank}, q = q + N l, on
        window-complete degrees."""
        blocks = [blk for blk, keys in self.basis.items() if keys]
        Ts = sorted({q + N * l for q, l, _ in blocks if self.complete_T(q + N * l, N)})
        rows = []
        for T in Ts:
            for h, rk in sorted(self._route_b(T, N).items()):
                rows.append({"q": T, "h": h, "rank": rk})
        return rows

    def _in_T(self, T, N):
        return [blk for blk, keys in self.basis.items() if keys and blk[0] + N * blk[1] == T]

    def _route_b(self, T, N):
        basis = defaultdict(list)
        for blk in self._in_T(T, N):
            h = self.h_of(blk)
            basis[h] += [(blk, n) for n in range(len(self.basis[blk]))]
        maps = defaultdict(dict)
        for h, labels in basis.items():
            for blk, n in labels:
                q, l, r = blk
                vec = {((q, l, r + 1), m): c for m, c in self.dr(blk, n).items()}
                for m, c in self.dn(blk, n, N).items():
                    _axpy(vec, {((q + 2 * N, l - 2, r), m): c}, 1)
                maps[h][(blk, n)] = vec
        return _ranks(dict(basis), dict(maps))

    def _route_a(self, T, N):
        basis = defaultdict(list)
        for (q, l), hom in self.hr.items():
            if q + N * l != T:
                continue
            for r, reps in hom.reps.items():
                h = r - self.p_of[(q, l)]
                basis[h] += [((q, l, r), j) for j in range(len(reps))]
        maps = defaultdict(dict)
        for h, labels in basis.items():
            for (q, l, r), j in labels:
                rep = self.hr[(q, l)].reps[r][j]
                img = {}
                for n, c in rep.items():
                    _axpy(img, self.dn((q, l, r), n, N), c)
                tgt = (q + 2 * N, l - 2)
                vec = {}
                if img:
                    coords = self.hr[tgt].project(r, img)
                    vec = {((tgt[0], tgt[1], r), m): c for m, c in coords.items()}
                maps[h][((q, l, r), j)] = vec
        return _ranks(dict(basis), dict(maps))

    def _route_c(self, T, N):
        # H(C, d_N) per cube degree r; d_N raises h by lowering p
        blocks = self._in_T(T, N)
        by_r = defaultdict(lambda: defaultdict(list))
        for blk in blocks:
            by_r[blk[2]][self.h_of(blk)] += [(blk, n) for n in range(len(self.basis[blk]))]
        homs = {}
        for r, basis in by_r.items():
            maps = defaultdict(dict)
            for h, labels in basis.items():
                for blk, n in labels:
                    q, l, _ = blk
                    coords = self.dn(blk, n, N)
                    maps[h][(blk, n)] = {((q + 2 * N, l - 2, r), m): c for m, c in coords.items()}
            homs[r] = Homology(dict(basis), dict(maps))
        basis = defaultdict(list)
        for r, hom in homs.items():
            for h, reps in hom.reps.items():
                basis[h] += [(r, j) for j in range(len(reps))]
        maps = defaultdict(dict)
        for h, labels in basis.items():
            for r, j in labels:
                rep = homs[r].reps[h][j]
                img = {}
                for (blk, n), c in rep.items():
                    q, l, _ = blk
                    _axpy(img, {((q, l, r + 1), m): v for m, v in self.dr(blk, n).items()}, c)
                vec = {}
                if img:
                    coords = homs[r + 1].project(h + 1, img)
                    vec = {(r + 1, m): c for m, c in coords.items()}
                maps[h][(r, j)] = vec
        return _ranks(dict(basis), dict(maps))
