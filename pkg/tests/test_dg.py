import random
from collections import Counter

import pytest

from vermalink.algebra import Algebra, DiagramWord
from vermalink.dg import Differential, DifferentialError, algebra_homology, parse_diff
from vermalink.klr import seqs
from vermalink.oracle import random_word


def nf(flavor, bottom, gens):
    return Algebra(flavor).normal_form(DiagramWord(bottom, gens, flavor))


def test_dbeta_tight_nonzero_label():
    b = Algebra("b")
    d = Differential(b, "dbeta")
    for lab in (1, -1):
        assert d(nf("b", (lab,), [("w", 1, lab, 0)])) == {k: -c for k, c in b.identity((lab,)).items()}


def test_dbeta_kills_subscript_zero():
    d = Differential(Algebra("b"), "dbeta")
    assert d(nf("b", (0,), [("w", 1, 0, 0)])) == {}
    assert d(nf("b", (0, 1), [("t", 1), ("w", 1, 0, 1)])) == {}


@pytest.mark.parametrize("N", [1, 2, 3])
def test_dN_tight(N):
    p = Algebra("p")
    got = Differential(p, "dN", N)(nf("p", (0,), [("w", 1, 0, 0)]))
    assert got == {k: -c for k, c in nf("p", (0,), [("x", 1)] * N).items()}
    # reduced: superscript -1 maps to -x_1^(N-1)
    pb = Algebra("pbar")
    got = Differential(pb, "dN", N)(nf("pbar", (0,), [("w", 1, 0, -1)]))
    assert got == {k: -c for k, c in nf("pbar", (0,), [("x", 1)] * (N - 1)).items()}


def test_parse_diff():
    assert parse_diff("dbeta") == ("dbeta", None)
    assert parse_diff("dN:3") == ("dN", 3)
    assert parse_diff("dtotal:2") == ("dtotal", 2)
    for bad in ("dN:0", "dN:x", "dgamma"):
        with pytest.raises(DifferentialError):
            parse_diff(bad)
    with pytest.raises(DifferentialError):
        Differential(Algebra("p"), "dbeta")


def _random_words(flavor, count, max_m, seed):
    rng = random.Random(seed)
    zero_only = flavor not in ("b", "btilde")
    for _ in range(count):
        m = rng.randint(1, max_m)
        bottom = tuple(rng.choice((-1, 0, 1)) for _ in range(m))
        word = random_word(rng, bottom, rng.randint(1, 6))
        if zero_only:
            word = [("w", g[1], 0, g[3]) if g[0] == "w" else g for g in word]
        yield bottom, word


@pytest.mark.parametrize("flavor,diff", [("b", "dbeta"), ("btilde", "dbeta"), ("p", "dN:2"),
                                         ("pbar", "dN:2"), ("b", "dtotal:2")])
def test_d_squared_zero(flavor, diff):
    alg = Algebra(flavor)
    d = Differential(alg, *parse_diff(diff))
    nonzero = 0
    for bottom, word in _random_words(flavor, 500, 4, seed=7):
        elem = alg.reduce(alg.klr.normal_form(bottom, word))
        once = d(elem)
        nonzero += bool(once)
        assert d(once) == {}
    assert nonzero > 20


def _total(rows):
    by_h = Counter()
    for r in rows:
        by_h[r["hdeg"]] += r["rank"]
    return {h: c for h, c in by_h.items() if c}


def test_dbeta_homology_single_strand():
    for nu in ({1: 1}, {0: 1}):
        rows = algebra_homology(nu, "b", "dbeta", 8)
        H = Counter()
        for r in rows:
            if r["rank"]:
                assert r["hdeg"] == 0
                H[(r["q"], r["block"][1])] += r["rank"]
        P = Counter()
        for (q, lam, _), c in Algebra("pbeta").graded_dim_total(nu, 8).items():
            P[(q, dict(lam).get(0, 0))] += c
        assert H == P


def test_dN_homology_nilhecke_rank_one():
    rows = algebra_homology({0: 1}, "pbeta", "dN:2", 8)
    ranks = {r["q"]: r["rank"] for r in rows if r["rank"]}
    assert _total(rows) == {0: 2}
    assert sorted(ranks) == [0, 2]


def test_empty_nu():
    rows = algebra_homology({}, "b", "dbeta", 4)
    assert _total(rows) == {0: 1}


@pytest.mark.parametrize("flavor", ["pbeta", "pbarbeta"])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_dN_concentrated_two_strands(flavor, N):
    for m in (1, 2):
        for nu in _nus(m):
            assert set(_total(algebra_homology(nu, flavor, f"dN:{N}", 8))) <= {0}


def _nus(m):
    from itertools import combinations_with_replacement
    for c in combinations_with_replacement((-1, 0, 1), m):
        yield dict(Counter(c))


def test_seqs_cover_nu():
    assert sorted(seqs({0: 1, 1: 1})) == [(0, 1), (1, 0)]
