import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vermalink.algebra import Algebra, DiagramError, DiagramWord, element_degree
from vermalink.klr import canonical_word, identity_key, seqs
from vermalink.oracle import random_word
from vermalink.polyrep import PolyRep, elem_add

B = Algebra("b")


def nf(bottom, gens, flavor="b"):
    return Algebra(flavor).normal_form(DiagramWord(bottom, gens, flavor, 2))


def test_multidegree_examples():
    assert DiagramWord((1,), [("x", 1)]).multidegree()["q"] == 2
    dot = DiagramWord((1,), [("x", 1)]).multidegree()
    assert dot["lambda"] == {} and dot["parity"] == 0
    assert DiagramWord((0,), []).multidegree()["q"] == 0
    tight = DiagramWord((1,), [("w", 1, 1, 0)]).multidegree()
    assert (tight["q"], tight["lambda"], tight["parity"]) == (0, {1: 2}, 1)


def test_r2_same_label_vanishes():
    assert nf((0, 0), [("t", 1), ("t", 1)]) == {}


def test_nilhecke_dot_slide():
    lhs = nf((0, 0), [("t", 1), ("x", 1)])
    rhs = nf((0, 0), [("x", 2), ("t", 1)])
    diff = elem_add(lhs, rhs, -1)
    assert diff == B.identity((0, 0))


def test_two_floating_dots_in_one_region_vanish():
    assert nf((1,), [("w", 1, 0, 0), ("w", 1, 0, 0)]) == {}
    assert nf((1, 1), [("w", 1, 1, 2), ("w", 1, 1, 2)]) == {}


def test_distant_floating_dot_slides_left():
    moved = nf((1, -1), [("w", 2, 1, 0)])
    assert moved and moved == nf((1, -1), [("w", 1, 1, 0)])


def test_idempotents_orthogonal():
    assert B.multiply(B.identity((0, 1)), B.identity((1, 0))) == {}
    assert B.multiply(B.identity((0, 1)), B.identity((0, 1))) == B.identity((0, 1))


def test_dots_commute():
    assert nf((0, 1), [("x", 1), ("x", 2)]) == nf((0, 1), [("x", 2), ("x", 1)])


def test_basis_single_strand():
    keys = B.basis((1,), (1,), 6)
    assert len(keys) == 8
    assert sorted({k[1] for k in keys}) == [((1, 0),), ((1, 1),)]
    assert len(Algebra("pbeta").basis((0,), (0,), 6)) == 8
    assert Algebra("pbeta").basis((1,), (1,), 6) == []


def test_basis_distant_labels():
    keys = B.basis((-1, 1), (1, -1), 0, qmin=-100)
    perms = {tuple(a for a, _ in k[1]) for k in keys}
    alphas = {tuple(al for _, al in k[1]) for k in keys}
    assert len(perms) == 1 and len(alphas) == 4


def test_graded_dims():
    assert B.graded_dim_total({}, 4) == {(0, (), 0): 1}
    dims = Algebra("pbeta").graded_dim_total({0: 1}, 6)
    expected = {(q, (), 0): 1 for q in (0, 2, 4, 6)}
    expected.update({(q, ((0, 2),), 1): 1 for q in (0, 2, 4, 6)})
    assert dict(dims) == expected


def test_flavor_constraints():
    with pytest.raises(DiagramError):
        DiagramWord((1,), [("w", 1, 1, 0)], "p")
    with pytest.raises(DiagramError):
        DiagramWord((0,), [("w", 1, 0, -1)], "b")
    DiagramWord((0,), [("w", 1, 0, -1)], "btilde")
    with pytest.raises(DiagramError):
        DiagramWord((0, 0), [("t", 2)])
    with pytest.raises(DiagramError):
        DiagramWord((5,), [], "b", 2)


def test_json_roundtrip():
    w = DiagramWord((0, 1), [("t", 1), ("w", 1, 1, 0), ("x", 2)])
    back = DiagramWord.from_json(w.to_json())
    assert back.generators == w.generators and back.bottom == w.bottom


def _random_case(seed, m=3):
    rng = random.Random(seed)
    nu = {}
    for _ in range(rng.randint(1, m)):
        lab = rng.choice((-1, 0, 1))
        nu[lab] = nu.get(lab, 0) + 1
    bottom = rng.choice(list(seqs(nu)))
    return rng, nu, bottom


@given(st.integers(0, 10 ** 6))
def test_normal_form_is_homogeneous(seed):
    rng, nu, bottom = _random_case(seed)
    word = random_word(rng, bottom, rng.randint(1, 6))
    elem = B.klr.normal_form(bottom, word)
    if elem:
        assert element_degree(B, elem) == B.klr.word_degree(bottom, word)


@given(st.integers(0, 10 ** 6))
def test_normal_form_acts_like_word(seed):
    rng, nu, bottom = _random_case(seed)
    word = random_word(rng, bottom, rng.randint(1, 5))
    elem = B.klr.normal_form(bottom, word)
    P = PolyRep(nu)
    for mono in P.window_basis(bottom, 4):
        acc = {}
        for key, c in elem.items():
            acc = elem_add(acc, P.act_word(canonical_word(key), {mono: 1}), c)
        assert acc == P.act_word(word, {mono: 1})


@given(st.integers(0, 10 ** 6))
def test_multiplication_associative(seed):
    rng, nu, bottom = _random_case(seed, m=2)
    w1 = random_word(rng, bottom, 2)
    x = B.klr.normal_form(bottom, w1)
    mid = _top(bottom, w1)
    w2 = random_word(rng, mid, 2)
    y = B.klr.normal_form(mid, w2)
    top = _top(mid, w2)
    w3 = random_word(rng, top, 2)
    z = B.klr.normal_form(top, w3)
    # multiply(a, b) stacks a on top of b
    lhs = B.multiply(B.multiply(z, y), x)
    assert lhs == B.multiply(z, B.multiply(y, x))
    assert lhs == B.klr.normal_form(bottom, w1 + w2 + w3)


def _top(bottom, word):
    labels = list(bottom)
    for g in word:
        if g[0] == "t":
            k = g[1]
            labels[k - 1], labels[k] = labels[k], labels[k - 1]
    return tuple(labels)


def test_identity_is_unit():
    x = B.klr.normal_form((0, 1), [("t", 1), ("x", 1)])
    assert B.multiply(B.identity((1, 0)), x) == x
    assert B.multiply(x, B.identity((0, 1))) == x
    assert B.multiply(B.identity((0, 1)), x) == {}
    assert {identity_key((0, 1)): Fraction(1)} == B.identity((0, 1))
