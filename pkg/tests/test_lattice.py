import random

from p2bott.lattice import Character, Gamma, char_sum, pair, rank, shift, trigonal


def test_trigonal_examples():
    assert trigonal(Character(0, 0)) == (0, 0, 0)
    assert trigonal(Character(1, 1)) == (-2, 1, 1)
    assert trigonal(Character(3, -1)) == (-2, 3, -1)


def test_trigonal_sums_to_zero():
    rng = random.Random(7)
    for _ in range(200):
        c = Character(rng.randint(-50, 50), rng.randint(-50, 50))
        assert sum(trigonal(c)) == 0


def test_pair_examples():
    assert pair(Gamma(1, 2), Character(3, -1)) == 1
    assert pair(Gamma(1, 1), Character(0, 0)) == 0
    # orthogonal pair: exactly the situation the genericity scan must avoid
    assert pair(Gamma(1, 5), Character(-5, 1)) == 0


def test_pair_bilinear():
    rng = random.Random(11)
    for _ in range(200):
        g = Gamma(rng.randint(-9, 9), rng.randint(-9, 9))
        c1 = Character(rng.randint(-9, 9), rng.randint(-9, 9))
        c2 = Character(rng.randint(-9, 9), rng.randint(-9, 9))
        assert pair(g, c1 + c2) == pair(g, c1) + pair(g, c2)


def test_char_sum_examples():
    assert char_sum({}) == Character(0, 0)
    assert char_sum({Character(1, 1): 1}) == Character(1, 1)
    assert char_sum({Character(1, 0): 2, Character(0, -1): 1}) == Character(2, -1)


def test_shift_examples():
    assert shift({Character(1, 1): 1}, Character(-1, -1)) == {Character(0, 0): 1}
    t = {Character(0, 0): 2, Character(1, 0): 1}
    assert shift(t, Character(0, 0)) == t
    assert shift(t, Character(1, 2)) == {Character(1, 2): 2, Character(2, 2): 1}


def test_shift_char_sum_relation():
    rng = random.Random(13)
    for _ in range(100):
        t = {
            Character(rng.randint(-5, 5), rng.randint(-5, 5)): rng.randint(1, 4)
            for _ in range(rng.randint(0, 6))
        }
        w = Character(rng.randint(-5, 5), rng.randint(-5, 5))
        lhs = char_sum(shift(t, w))
        r = rank(t)
        assert lhs == char_sum(t) + Character(r * w.m1, r * w.m2)
