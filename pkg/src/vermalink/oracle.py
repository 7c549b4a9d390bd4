"""Checks of the diagram calculus against the polynomial representation.

Relations are written as lists of (coefficient, word); a relation holds when
sum(coefficient * action of word) vanishes on every window monomial of P_nu.
"""
import random
from collections import Counter
from itertools import product

from .algebra import Algebra
from .klr import canonical_word, seqs
from .linalg import ModRank
from .polyrep import PolyRep, elem_add


def relation_families(bottom, amax=1):
    """Instances (family, terms) of the defining relations on ``bottom``."""
    m = len(bottom)
    out = []
    add = out.append
    supers = range(amax + 1)
    for k in range(1, m):
        i, j = bottom[k - 1], bottom[k]
        t, xk, xk1 = ("t", k), ("x", k), ("x", k + 1)
        # quadratic relation
        if i == j:
            rhs = []
        elif abs(i - j) > 1:
            rhs = [(-1, [])]
        else:
            rhs = [(-1, [xk]), (-1, [xk1])]
        add(("R2", [(1, [t, t])] + rhs))
        if i != j:
            add(("dot-slide", [(1, [t, xk]), (-1, [xk1, t])]))
            add(("dot-slide", [(1, [t, xk1]), (-1, [xk, t])]))
        else:
            add(("nilHecke", [(1, [t, xk]), (-1, [xk1, t]), (-1, [])]))
            add(("nilHecke", [(1, [xk, t]), (-1, [t, xk1]), (-1, [])]))
            for a in supers:
                w0, w1, w2 = ("w", k, i, a), ("w", k + 1, i, a), ("w", k, i, a)
                add(("fdot-crossing", [(1, [w0, t]), (-1, [xk1, w1, t]),
                                       (-1, [t, w2]), (1, [t, w1, xk1])]))
        if abs(i - j) == 1:
            for a in supers:
                add(("eye", [(1, [t, ("w", k, j, a), t]), (-1, [("w", k + 1, j, a)]),
                             (-1, [("w", k - 1, j, a)])]))
    for k in range(1, m - 1):
        i, j, l = bottom[k - 1], bottom[k], bottom[k + 1]
        lhs, rhs = [("t", k), ("t", k + 1), ("t", k)], [("t", k + 1), ("t", k), ("t", k + 1)]
        terms = [(1, lhs), (-1, rhs)]
        if i == l and abs(i - j) == 1:
            terms.append((-1, []))
        add(("R3", terms))
    present = sorted(set(bottom))
    for r in range(0, m + 1):
        for lab in present:
            for a in supers:
                w = ("w", r, lab, a)
                if r == 0:
                    add(("leftmost-fdot", [(1, [w])]))
                    continue
                j = bottom[r - 1]
                if lab == j:
                    if a >= 1:
                        add(("fdot-slide", [(1, [w]), (-1, [("w", r - 1, lab, a - 1)]),
                                            (1, [("x", r), ("w", r, lab, a - 1)])]))
                elif abs(lab - j) == 1:
                    add(("fdot-slide", [(1, [w]), (-1, [("x", r), ("w", r - 1, lab, a)]),
                                        (1, [("w", r - 1, lab, a + 1)])]))
                else:
                    add(("fdot-slide", [(1, [w]), (-1, [("w", r - 1, lab, a)])]))
                add(("fdot-square", [(1, [w, w])]))
                for k in range(1, m + 1):
                    add(("dot-fdot", [(1, [w, ("x", k)]), (-1, [("x", k), w])]))
                for k in range(1, m):
                    if k != r:
                        add(("fdot-isotopy", [(1, [w, ("t", k)]), (-1, [("t", k), w])]))
    fds = [("w", r, lab, a) for r in range(1, m + 1) for lab in present for a in supers]
    for u, v in product(fds, fds):
        if u < v:
            add(("anticommute", [(1, [u, v]), (1, [v, u])]))
    return out


def relation_defect(P, bottom, terms, qmax):
    """Number of window monomials on which the relation fails."""
    bad = 0
    for key in P.window_basis(bottom, qmax):
        acc = {}
        for c, word in terms:
            acc = elem_add(acc, P.act_word(word, {key: 1}), c)
        if acc:
            bad += 1
    return bad


def _bottom_report(job):
    bottom, qmax, amax = job
    P = PolyRep(dict(Counter(bottom)))
    report = {}
    for family, terms in relation_families(bottom, amax):
        entry = report.setdefault(family, [0, 0])
        entry[0] += 1
        if relation_defect(P, bottom, terms, qmax):
            entry[1] += 1
    return report


def check_relations(labels=(-1, 0, 1), max_strands=3, qmax=12, amax=1, mapper=None):
    """{family: [instances checked, instances failing]} over every bottom
    sequence with at most ``max_strands`` strands."""
    jobs = [(bottom, qmax, amax) for m in range(1, max_strands + 1)
            for bottom in product(labels, repeat=m)]
    parts = (mapper or (lambda fn, xs: list(map(fn, xs))))(_bottom_report, jobs)
    report = {}
    for part in parts:
        for family, (n, bad) in part.items():
            entry = report.setdefault(family, [0, 0])
            entry[0] += n
            entry[1] += bad
    return report


def action_vector(P, bottom, elem, pwin):
    """Stack the images of the window monomials of 1_bottom into one vector."""
    vec = {}
    for n, key in enumerate(P.window_basis(bottom, pwin)):
        img = {}
        for bk, c in elem.items():
            img = elem_add(img, P.act_word(canonical_word(bk), {key: 1}), c)
        for k, c in img.items():
            vec[(n, k)] = c
    return vec


def _independent(P, bottom, keys, pwin):
    """Certify that the keys of one bidegree block act independently.

    Window monomials are fed in order of degree; each contributes one row per
    output coordinate, with columns indexed by the keys, and we stop once the
    rank mod p reaches the number of keys."""
    stage_img = {}
    ech = ModRank()
    mons = sorted(P.window_basis(bottom, pwin), key=lambda m: P.qdeg(m[1], m[2]))
    for mon in mons:
        rows = {}
        for j, key in enumerate(keys):
            stages = key[1]
            img = stage_img.get((stages, mon))
            if img is None:
                img = P.act_word(canonical_word((key[0], stages, ())), {mon: 1})
                stage_img[(stages, mon)] = img
            for p, e in enumerate(key[2], start=1):
                img = P.act_word([("x", p)] * e, img)
            for k, c in img.items():
                rows.setdefault(k, {})[j] = c
        for row in rows.values():
            ech.add(row)
            if len(ech) == len(keys):
                return True
    return False


def check_basis(nu, qmax=12, pwin=12, samples=20, seed=0, flavor="b"):
    """Independence and spanning of the basis of R(nu) on the q-window.

    Independence: per (bottom, top, q, lambda) block, the action matrix on
    the window of P_nu up to q-degree pwin has full rank.  Spanning: normal
    forms of random words act like the words themselves.  Returns a dict of
    counts."""
    alg = Algebra(flavor)
    P = PolyRep(dict(nu))
    blocks = 0
    deficient = []
    for bottom in seqs(nu):
        for top in seqs(nu):
            by_deg = {}
            for key in alg.basis(bottom, top, qmax):
                by_deg.setdefault(alg.degree(key), []).append(key)
            for deg, keys in sorted(by_deg.items()):
                blocks += 1
                if not _independent(P, bottom, keys, pwin):
                    deficient.append((bottom, top, deg))
    rng = random.Random(seed)
    spans = bad = 0
    seq_list = list(seqs(nu))
    for _ in range(samples):
        bottom = rng.choice(seq_list)
        word = random_word(rng, bottom, rng.randint(2, 7))
        nf = alg.klr.normal_form(bottom, word)
        if any(alg.degree(k)[0] > qmax for k in nf):
            continue
        spans += 1
        for b in P.window_basis(bottom, min(pwin, 6)):
            acc = {}
            for key, c in nf.items():
                acc = elem_add(acc, P.act_word(canonical_word(key), {b: 1}), c)
            if acc != P.act_word(word, {b: 1}):
                bad += 1
                break
    return {"blocks": blocks, "rank_deficient": deficient, "words": spans, "span_failures": bad}


def random_word(rng, bottom, length, fdots=True):
    labels = list(bottom)
    m = len(labels)
    word = []
    for _ in range(length):
        r = rng.random()
        if r < 0.5 and m > 1:
            k = rng.randint(1, m - 1)
            word.append(("t", k))
            labels[k - 1], labels[k] = labels[k], labels[k - 1]
        elif r < 0.75 or not fdots:
            word.append(("x", rng.randint(1, m)))
        else:
            reg = rng.randint(1, m)
            word.append(("w", reg, rng.choice(labels[:reg]), rng.randint(0, 1)))
    return word
