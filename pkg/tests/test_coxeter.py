import itertools

import pytest

from cellule.coxeter import build_system, parse_type, parse_weights, parse_word
from cellule.errors import InfiniteParabolic, InvalidWeights, UnknownGenerator, UnsupportedType

EXPONENTS = {"A~1": (1,), "A~2": (1, 2), "C~2": (1, 3), "G~2": (1, 5), "B~3": (1, 3, 5)}


def growth_series(exponents, N):
    """Sphere sizes from prod_i [e_i + 1]_q / (1 - q^e_i)."""
    series = [1] + [0] * N
    for e in exponents:
        factor = [1 if k <= e else 0 for k in range(N + 1)]  # [e+1]_q
        geo = [1 if k % e == 0 else 0 for k in range(N + 1)]
        for f in (factor, geo):
            series = [sum(series[i] * f[k - i] for i in range(k + 1)) for k in range(N + 1)]
    return series


def reduced_words(W, w):
    if w.length == 0:
        return [[]]
    return [word + [s] for s in sorted(W.descents(w, "right")) for word in reduced_words(W, W.right(w, s))]


@pytest.mark.parametrize("label", sorted(EXPONENTS))
def test_ball_growth_matches_poincare_series(label):
    W = build_system(label)
    N = 6 if label != "B~3" else 5
    spheres = [0] * (N + 1)
    for w in W.ball(N):
        spheres[w.length] += 1
    assert spheres == growth_series(EXPONENTS[label], N)


def test_small_balls():
    W = build_system("A~1")
    assert W.ball(0) == [W.identity]
    assert len(W.ball(3)) == 7
    assert {W.word_string(w) for w in W.ball(3)} == {"e", "s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1", "s2 s1 s2"}


def test_system_examples():
    W = build_system("A~1", {"s1": 1, "s2": 1})
    assert W.coxeter_matrix[0][1] == float("inf")
    assert W.nu_tilde == 1 and W.big_S == [frozenset({0}), frozenset({1})]
    W = build_system("A~1", {"s1": 2, "s2": 1})
    assert W.nu_tilde == 2 and W.big_S == [frozenset({0})]
    with pytest.raises(InvalidWeights):
        build_system("A~1", {"s1": 0, "s2": 1})


def test_heavier_end_moves_to_s1():
    W = build_system("A~1", [1, 2])
    assert W.weights == (2, 1)
    assert build_system("C~2", [1, 2, 3]).weights == (3, 2, 1)


def test_conjugacy_constraints():
    assert build_system("G~2").conjugacy_classes() == [frozenset({0, 2}), frozenset({1})]
    with pytest.raises(InvalidWeights):
        build_system("G~2", [2, 2, 1])
    with pytest.raises(InvalidWeights):
        build_system("A~2", [2, 1, 1])
    build_system("G~2", [2, 1, 2])
    build_system("G~2", [1, 2, 1])


def test_coxeter_matrices():
    assert build_system("C~2").coxeter_matrix == ((1, 4, 2), (4, 1, 4), (2, 4, 1))
    assert build_system("G~2").coxeter_matrix == ((1, 6, 3), (6, 1, 2), (3, 2, 1))
    A2 = build_system("A~2").coxeter_matrix
    assert all(A2[i][j] == 3 for i in range(3) for j in range(3) if i != j)


def test_big_S_and_nu_tilde():
    assert build_system("C~2", [2, 1, 1]).big_S == [frozenset({0, 1})]
    assert build_system("C~2", [1, 1, 1]).big_S == [frozenset({0, 1}), frozenset({1, 2})]
    assert build_system("C~2", [3, 2, 1]).nu_tilde == 10
    assert build_system("B~3").big_S == [frozenset({0, 1, 2}), frozenset({0, 1, 3})]


def test_parsing():
    assert parse_type("C~2") == ("C", 2) and parse_type("g2") == ("G", 2)
    assert parse_weights("s1=2, s2=1") == {"s1": 2, "s2": 1}
    assert parse_word("s1 s2,s1") == ["s1", "s2", "s1"] and parse_word("") == []
    with pytest.raises(UnsupportedType):
        parse_type("E~8x")
    with pytest.raises(UnknownGenerator):
        parse_word("t1")
    with pytest.raises(UnknownGenerator):
        build_system("A~1", {"s3": 1})


def test_words_and_products():
    W = build_system("A~2")
    assert W.word_to_element("") == W.identity
    assert W.word_to_element("s1 s2 s1") == W.word_to_element("s2 s1 s2")
    assert W.word_to_element("s1 s3 s1") != W.word_to_element("s2 s1 s2")
    assert W.length(W.word_to_element("s1 s2 s3 s1")) == 4
    A1 = build_system("A~1")
    assert A1.word_to_element("s1 s1") == A1.identity
    b = A1.word_to_element("s1 s2")
    assert A1.multiply(A1.identity, b) == b
    assert A1.descents(b, "left") == {0}


@pytest.mark.parametrize("label", ["A~2", "C~2", "G~2"])
def test_group_axioms_on_ball(label):
    W = build_system(label)
    for w in W.ball(6):
        assert W.multiply(w, W.inverse(w)) == W.identity
        assert W.word_to_element(W.reduced_word(w)) == w
        assert len(W.reduced_word(w)) == w.length
        for s in range(3):
            sw = W.left(s, w)
            assert W.left(s, sw) == w
            assert abs(sw.length - w.length) == 1
            assert (s in W.descents(w, "left")) == (sw.length < w.length)
            assert (s in W.descents(w, "right")) == (W.right(w, s).length < w.length)


@pytest.mark.parametrize("label,weights", [("C~2", [3, 2, 1]), ("G~2", [2, 1, 2])])
def test_weight_additive_over_all_reduced_words(label, weights):
    W = build_system(label, weights)
    for w in W.ball(5):
        sums = {sum(W.weights[s] for s in word) for word in reduced_words(W, w)}
        assert sums == {W.L(w)}


def test_reduced_word_is_lex_least():
    W = build_system("A~2")
    for w in W.ball(5):
        words = reduced_words(W, w)
        assert W.reduced_word_indices(w) == min(words)


def test_bruhat_matches_subword_oracle():
    W = build_system("A~2")
    ball = W.ball(6)
    for x in ball:
        for w in ball:
            assert W.bruhat_leq(x, w) == W.bruhat_leq_subword(x, w)


def test_bruhat_is_partial_order():
    W = build_system("C~2")
    ball = W.ball(5)
    leq = {(x, w): W.bruhat_leq(x, w) for x in ball for w in ball}
    for x in ball:
        assert leq[(W.identity, x)] and leq[(x, x)]
    for x, y in itertools.product(ball, repeat=2):
        if x != y and leq[(x, y)]:
            assert not leq[(y, x)]
            for z in ball:
                if leq[(y, z)]:
                    assert leq[(x, z)]


def test_longest_parabolic():
    W = build_system("A~2")
    assert W.longest_parabolic([]) == W.identity
    wJ = W.longest_parabolic(["s1", "s2"])
    assert wJ == W.word_to_element("s1 s2 s1")
    assert W.descents(wJ, "left") == W.descents(wJ, "right") == {0, 1}
    with pytest.raises(InfiniteParabolic):
        W.longest_parabolic(["s1", "s2", "s3"])


def test_coset_factorize_against_brute_force():
    W = build_system("A~2")
    J = ["s1", "s2"]
    WJ = W.parabolic_elements(J)
    for w in W.ball(6):
        u, x = W.coset_factorize(w, J, "left")
        brute = [(a, W.multiply(W.inverse(a), w)) for a in WJ]
        brute = [(a, b) for a, b in brute if a.length + b.length == w.length and not W.descents(b, "left") & {0, 1}]
        assert brute == [(u, x)]
        x2, u2 = W.coset_factorize(w, J, "right")
        assert W.multiply(x2, u2) == w and x2.length + u2.length == w.length
        assert u2 in WJ and not W.descents(x2, "right") & {0, 1}
    assert W.coset_factorize(W.identity, J) == (W.identity, W.identity)
    g = W.word_to_element("s1 s2")
    assert W.coset_factorize(g, J) == (g, W.identity)


def test_min_coset_rep_two_characterizations():
    W = build_system("A~2")
    J = ["s1", "s2"]
    wJ = W.longest_parabolic(J)
    assert W.is_min_coset_rep(W.identity, J)
    assert not W.is_min_coset_rep(wJ, J)
    for w in W.ball(6):
        adds = W.multiply(w, wJ).length == w.length + wJ.length
        assert W.is_min_coset_rep(w, J, "right") == adds
