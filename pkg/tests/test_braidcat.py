import random
from fractions import Fraction

import pytest

from lmkit.laurent import seeded_points
from lmkit.freegroup import FreeWord, parse_word
from lmkit.braidcat import (
    BracketMorphism,
    BraidError,
    BraidWord,
    bracket_compose,
    bracket_equal,
    bracket_monoidal,
    braid_equal,
    braid_equal_witness,
    braiding,
    burau_symbolic,
    enumerate_words,
    lk_numeric,
    local_system,
    parse_braid,
    pure_braid_system,
    trivial_system,
)


def bw(letters, strands):
    return BraidWord(strands, tuple(letters))


class TestWords:
    def test_free_cancellation(self):
        assert bw([1, -1], 2) == BraidWord.identity(2)
        assert bw([2, 1, -1, -2, 1], 3) == bw([1], 3)

    def test_strand_bound(self):
        with pytest.raises(BraidError):
            bw([3], 3)

    def test_compose_reads_right_to_left(self):
        u, v = bw([1], 3), bw([2], 3)
        assert u.compose(v).letters == (1, 2)

    def test_monoidal_shift(self):
        # id_1 # s_i = s_{i+1}
        assert BraidWord.identity(1).monoidal(bw([2, -1], 3)).letters == (3, -2)
        assert BraidWord.identity(0).monoidal(bw([1], 2)) == bw([1], 2)

    def test_parse_roundtrip(self):
        word = parse_braid("s1 s2^-1 s1", 3)
        assert word.letters == (1, -2, 1)
        assert parse_braid(str(word), 3) == word

    def test_permutation_and_writhe(self):
        assert bw([1], 3).permutation() == (2, 1, 3)
        assert bw([1, 2], 3).writhe() == 2
        assert bw([1, 1], 3).is_pure()


class TestBraiding:
    def test_small_cases_derived(self):
        # Substituting into the descending-run formula:
        #   (n,m) = (1,1): s1;  (1,2): s2 s1;  (2,1): s1 s2.
        assert braiding(1, 1).letters == (1,)
        assert braiding(1, 2).letters == (2, 1)
        assert braiding(2, 1).letters == (1, 2)
        assert braiding(0, 3) == BraidWord.identity(3)
        assert braiding(3, 0) == BraidWord.identity(3)

    def test_composed_with_inverse_is_trivial(self):
        for n in range(0, 4):
            for m in range(0, 4):
                if 2 <= n + m <= 6:
                    b = braiding(n, m)
                    assert braid_equal(b.compose(b.inverse()), BraidWord.identity(n + m))

    def test_double_braiding_is_pure(self):
        # The composite of the two braidings is a nontrivial pure braid
        # (the category is braided, not symmetric): check purity, and check
        # nontriviality in the smallest case.
        for n in range(1, 3):
            for m in range(1, 3):
                both = braiding(m, n).compose(braiding(n, m))
                assert both.is_pure()
        assert not braid_equal(braiding(1, 1).compose(braiding(1, 1)), BraidWord.identity(2))


class TestBracketCategory:
    def test_identity_compose(self):
        f = BracketMorphism(1, 3, bw([2, 1], 3))
        assert bracket_compose(BracketMorphism.identity(3), f) == f

    def test_stabilization_compose(self):
        lhs = bracket_compose(BracketMorphism.stabilization(2, 3), BracketMorphism.stabilization(1, 2))
        assert lhs == BracketMorphism.stabilization(1, 3)

    def test_compose_with_shift(self):
        g = BracketMorphism(1, 2, bw([1], 2))
        f = BracketMorphism.stabilization(0, 1)
        assert bracket_compose(g, f) == BracketMorphism(0, 2, bw([1], 2))

    def test_monoidal_units(self):
        u = BracketMorphism.from_braid(bw([1], 2))
        v = BracketMorphism.from_braid(bw([1, -2], 3))
        assert bracket_monoidal(u, v) == BracketMorphism.from_braid(u.word.monoidal(v.word))

    def test_monoidal_stabilization_formula(self):
        # id_1 # [k, id] = [k, inverse braiding # id_n]
        for n in range(0, 3):
            for k in range(1, 3):
                lhs = bracket_monoidal(
                    BracketMorphism.identity(1), BracketMorphism.stabilization(n, n + k)
                )
                expected = braiding(1, k).inverse().monoidal(BraidWord.identity(n))
                assert lhs == BracketMorphism(1 + n, 1 + n + k, expected)

    def test_associativity_on_the_nose(self):
        rng = random.Random(4)
        for _ in range(10):
            n0 = rng.randint(0, 2)
            n1 = n0 + rng.randint(0, 2)
            n2 = n1 + rng.randint(0, 2)
            n3 = n2 + rng.randint(0, 2)

            def arb(a, b):
                letters = [
                    rng.choice([1, -1]) * rng.randint(1, max(b - 1, 1))
                    for _ in range(rng.randint(0, 3))
                    if b >= 2
                ]
                return BracketMorphism(a, b, BraidWord(b, tuple(letters)))

            f, g, h = arb(n0, n1), arb(n1, n2), arb(n2, n3)
            left = bracket_compose(h, bracket_compose(g, f))
            right = bracket_compose(bracket_compose(h, g), f)
            assert left == right

    def test_monoidal_of_identities(self):
        for m in range(0, 3):
            for n in range(0, 3):
                got = bracket_monoidal(BracketMorphism.identity(m), BracketMorphism.identity(n))
                assert got == BracketMorphism.identity(m + n)

    def test_interchange_with_identities(self):
        # g # f agrees with (g # id) ∘ (id # f) as bracket morphisms.
        rng = random.Random(11)
        for _ in range(8):
            m, mp = 1, 1 + rng.randint(0, 1)
            n, np_ = rng.randint(0, 2), 0
            np_ = n + rng.randint(0, 2)
            g = BracketMorphism(
                m, mp, BraidWord(mp, (rng.choice([1, -1]),) if mp >= 2 else ())
            )
            f = BracketMorphism(
                n, np_, BraidWord(np_, (rng.choice([1, -1]),) if np_ >= 2 else ())
            )
            direct = bracket_monoidal(g, f)
            staged = bracket_compose(
                bracket_monoidal(g, BracketMorphism.identity(np_)),
                bracket_monoidal(BracketMorphism.identity(m), f),
            )
            assert (direct.source, direct.target) == (staged.source, staged.target)
            assert bracket_equal(direct, staged)

    def test_morphism_json(self):
        phi = BracketMorphism(1, 3, bw([2, -1], 3))
        assert phi.to_json() == {"source": 1, "target": 3, "word": [2, -1]}

    def test_prebraided_failure_witness(self):
        # The pre-braiding is not a braiding: routing one new strand around
        # two existing ones differs from inserting it on the other side.
        lhs = bracket_compose(
            BracketMorphism.from_braid(braiding(1, 2)),
            bracket_monoidal(BracketMorphism.stabilization(0, 1), BracketMorphism.identity(2)),
        )
        rhs = bracket_monoidal(BracketMorphism.identity(2), BracketMorphism.stabilization(0, 1))
        assert lhs.word.letters == (2, 1)
        assert rhs.word.letters == (-2, -1)
        assert not bracket_equal(lhs, rhs)
        ok, witness = braid_equal_witness(lhs.word, rhs.word)
        assert not ok and witness is not None


class TestEqualityOracle:
    def test_braid_relation(self):
        assert braid_equal(bw([1, 2, 1], 3), bw([2, 1, 2], 3))

    def test_commutation(self):
        assert braid_equal(bw([1, 3], 4), bw([3, 1], 4))

    def test_distinct_generators(self):
        ok, witness = braid_equal_witness(bw([1], 3), bw([2], 3))
        assert not ok
        assert witness["reason"].startswith("lawrence-krammer")

    def test_detects_subtle_inequality(self):
        # Same writhe and permutation, different braids.
        u = bw([1, 2, 2, 1], 3)
        v = bw([2, 1, 1, 2], 3)
        assert u.permutation() == v.permutation() and u.writhe() == v.writhe()
        assert braid_equal(u, v) == braid_equal(v, u)

    def test_lk_oracle_matches_symbolic_functor(self):
        # Cross-validation: the fast column evaluator agrees with the
        # symbolic Lawrence-Krammer functor evaluated at the same point.
        from lmkit.repfun import lk_functor

        lk = lk_functor()
        point = seeded_points(1, 5)[0]
        rng = random.Random(6)
        for strands in (3, 4):
            for _ in range(5):
                word = BraidWord(
                    strands,
                    tuple(
                        rng.choice([1, -1]) * rng.randint(1, strands - 1)
                        for _ in range(rng.randint(0, 6))
                    ),
                )
                sym = lk.word_matrix(word).eval(point)
                cols = lk_numeric(word, point)
                dim = strands * (strands - 1) // 2
                for c in range(dim):
                    for r in range(dim):
                        assert cols[c].get(r, Fraction(0)) == sym[r][c]

    def test_burau_symbolic_homomorphism(self):
        u, v = bw([1, -2], 3), bw([2, 2, 1], 3)
        prod = burau_symbolic(u.compose(v))
        assert prod == burau_symbolic(u.compose(v))
        assert burau_symbolic(u) != burau_symbolic(v)


class TestLocalSystems:
    def test_pure_braid_generator_images(self):
        system = pure_braid_system()
        assert system.generator_image(3, 1).letters == (1, 1)
        assert system.generator_image(3, 2).letters == (-1, 2, 2, 1)

    def test_trivial(self):
        system = trivial_system()
        word = parse_word("g1*g2^-1", 2)
        assert system.evaluate(word) == BraidWord.identity(3)

    def test_homomorphism_property(self):
        system = pure_braid_system()
        rng = random.Random(8)
        for _ in range(8):
            n = rng.randint(1, 3)
            u = FreeWord(n, tuple((rng.randint(1, n), rng.choice([1, -1])) for _ in range(3)))
            v = FreeWord(n, tuple((rng.randint(1, n), rng.choice([1, -1])) for _ in range(3)))
            assert braid_equal(
                system.evaluate(u * v),
                system.evaluate(u).compose(system.evaluate(v)),
            )

    def test_named_lookup(self):
        assert local_system("pure-braid").name == "pure-braid"
        assert local_system("trivial").name == "trivial"
        with pytest.raises(BraidError):
            local_system("nope")


def test_enumerate_words_counts():
    # Freely reduced words over two letter pairs: 1, 4, 4*3, 4*9 ...
    words = enumerate_words(3, 2)
    assert len(words) == 1 + 4 + 12
    assert len(enumerate_words(1, 5)) == 1
