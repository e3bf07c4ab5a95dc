import random

import pytest

from lmkit.laurent import LaurentPoly, ONE, PolyMatrix, T, ZERO
from lmkit.freegroup import FreeGroupMap, FreeWord, fox_derivatives, artin_generator_map
from lmkit.braidcat import (
    BraidWord,
    local_system,
    pure_braid_system,
    trivial_system,
)
from lmkit.repfun import (
    burau_functor,
    check_functor,
    constant_functor,
    direct_sum,
    group_ring_matrix,
    translate,
    tym_functor,
    zero_functor,
)
from lmkit.longmoody import (
    ActionFamily,
    CoherenceError,
    LongMoodyConfig,
    artin_family,
    check_coherence,
    check_coherent_reliable,
    check_factorization,
    check_inclusion_lemma,
    check_reliability,
    lm_of_inclusion,
    long_moody,
    long_moody_power,
    splitting_concat_inverse,
    splitting_maps,
    standard_config,
    wada_family,
)

from display_fixtures import oriented

T_INV = T.unit_inverse()
T2 = T * T


def twisted_constant_image():
    return long_moody(standard_config(pre=T, post=T_INV), constant_functor())


class TestConstruction:
    def test_dimension_rule(self):
        m = long_moody(standard_config(), burau_functor())
        for n in range(5):
            assert m.dim(n) == n * (n + 1)
        assert twisted_constant_image().dim(4) == 4

    def test_classical_block_reproduction(self):
        # The twisted image of the constant functor: every generator is the
        # recorded 2x2 block pattern (fixture carries the orientation flag).
        m = twisted_constant_image()
        block = oriented("lm-constant-block")
        for n in range(2, 7):
            for i in range(1, n):
                expected = (
                    PolyMatrix.identity(i - 1)
                    .direct_sum(block)
                    .direct_sum(PolyMatrix.identity(n - i - 1))
                )
                assert m.gen_matrix(n, i) == expected

    def test_negative_letter_is_inverse(self):
        m = twisted_constant_image()
        assert m.gen_matrix(3, -1) == m.gen_matrix(3, 1).inverse()

    def test_image_passes_functor_criterion(self):
        for base in (constant_functor(), burau_functor()):
            image = long_moody(standard_config(), base)
            assert check_functor(image, 4, 2).passed

    def test_trivial_system_blockdiag(self):
        # With the identity-pair action and trivial system the image is a
        # block diagonal of translated copies.
        cfg = LongMoodyConfig(wada_family(2), trivial_system())
        for base in (constant_functor(), burau_functor()):
            image = long_moody(cfg, base)
            shifted = translate(base, 1)
            for n in range(1, 5):
                for i in range(1, n):
                    blk = shifted.gen_matrix(n, i)
                    expected = blk
                    for _ in range(n - 1):
                        expected = expected.direct_sum(blk)
                    assert image.gen_matrix(n, i) == expected

    def test_half_twist_pattern(self):
        # Kind-3 action, trivial system, twisted: blocks [[0,-1],[1,0]].
        cfg = LongMoodyConfig(wada_family(3), trivial_system(), pre_twist=T, post_scale=T_INV)
        image = long_moody(cfg, constant_functor())
        block = PolyMatrix.from_rows([[ZERO, LaurentPoly.const(-1)], [ONE, ZERO]])
        for n in range(2, 6):
            for i in range(1, n):
                expected = (
                    PolyMatrix.identity(i - 1)
                    .direct_sum(block)
                    .direct_sum(PolyMatrix.identity(n - i - 1))
                )
                assert image.gen_matrix(n, i) == expected

    def test_reversal_conjugation(self):
        # Antidiagonal conjugation lands on the flipped generator index;
        # composing with the half-twist matrix matches indices exactly.
        m = twisted_constant_image()
        target = burau_functor(T2)
        for n in range(2, 7):
            reversal = PolyMatrix(n, n, {(i, n - 1 - i): ONE for i in range(n)})
            for i in range(1, n):
                conj = reversal.matmul(m.gen_matrix(n, i)).matmul(reversal)
                assert conj == target.gen_matrix(n, n - i)
            letters = []
            for k in range(1, n):
                letters.extend(range(k, 0, -1))
            half = target.word_matrix(BraidWord(n, tuple(letters)))
            s = half.matmul(reversal)
            s_inv = s.inverse()
            for i in range(1, n):
                assert s.matmul(m.gen_matrix(n, i)).matmul(s_inv) == target.gen_matrix(n, i)

    def test_iterated_dimensions(self):
        cfg = standard_config()
        m2 = long_moody_power(cfg, constant_functor(), 2)
        for n in range(5):
            assert m2.dim(n) == n * (n + 1)

    def test_zero_functor_maps_to_zero(self):
        image = long_moody(standard_config(), zero_functor())
        assert image.dim(3) == 0

    def test_additivity_up_to_block_permutation(self):
        # LM(F ⊕ G) equals LM(F) ⊕ LM(G) after reordering the interleaved
        # block basis, exactly, for generators and stabilizations.
        cfg = standard_config()
        f, g = burau_functor(), tym_functor()
        both = long_moody(cfg, direct_sum(f, g))
        split_sum = direct_sum(long_moody(cfg, f), long_moody(cfg, g))

        def perm(n):
            df, dg = f.dim(n + 1), g.dim(n + 1)
            entries = {}
            for j in range(n):
                for r in range(df):
                    entries[(j * df + r, j * (df + dg) + r)] = ONE
                for r in range(dg):
                    entries[(n * df + j * dg + r, j * (df + dg) + df + r)] = ONE
            return PolyMatrix(n * (df + dg), n * (df + dg), entries)

        for n in range(0, 4):
            p = perm(n)
            for i in range(1, n):
                assert p.matmul(both.gen_matrix(n, i)) == split_sum.gen_matrix(n, i).matmul(p)
            for n2 in range(n, 4):
                p2 = perm(n2)
                assert p2.matmul(both.stab(n, n2)) == split_sum.stab(n, n2).matmul(p)

    def test_tensor_relation_wellformed(self):
        # Moving a group-ring coefficient through the tensor: for any basis
        # difference times a word, the block column transforms by the
        # word's matrix on the right.
        cfg = standard_config()
        f = burau_functor()
        image = long_moody(cfg, f)
        rng = random.Random(3)
        n = 3
        d = f.dim(n + 1)

        def vec_matrix(x):
            entries = {}
            for r in range(n):
                block = group_ring_matrix(f, n, cfg.system, x.coords[r])
                for (br, bc), val in block.entries.items():
                    entries[(r * d + br, bc)] = val
            return PolyMatrix(n * d, d, entries)

        for _ in range(6):
            letter = rng.choice([1, -1]) * rng.randint(1, n - 1)
            word = FreeWord(n, tuple((rng.randint(1, n), rng.choice([1, -1])) for _ in range(3)))
            amap = cfg.action.generator_map(n, letter)
            for j in range(1, n + 1):
                x = fox_derivatives(FreeWord.generator(n, j) * word)
                x = type(x)(n, [c - fox_derivatives(word).coords[idx] for idx, c in enumerate(x.coords)])
                # x now holds the coordinates of (g_j - 1) * word.
                lhs = image.gen_matrix(n, letter).matmul(vec_matrix(x))
                shifted = BraidWord(n + 1, (letter + 1 if letter > 0 else letter - 1,))
                rhs = vec_matrix(amap.apply_aug(x)).matmul(f.word_matrix(shifted))
                assert lhs == rhs


class TestCoherence:
    def test_classical_pair_passes(self):
        report = check_coherent_reliable(standard_config(), 4, 3)
        assert report.passed
        names = [r.condition for r in report.results]
        assert names == [
            "stability",
            "action-compatibility",
            "semidirect",
            "first-generator-return",
            "first-generators-fixed",
        ]

    def test_trivial_system_vacuous_conditions(self):
        for kind in range(1, 8):
            cfg = LongMoodyConfig(wada_family(kind), trivial_system())
            report = check_coherence(cfg, 3, 2)
            assert report.passed, (kind, [r.to_json() for r in report.results])

    def test_corrupted_system_fails_semidirect(self):
        cfg = LongMoodyConfig(artin_family(), local_system("corrupted-demo"))
        report = check_coherence(cfg, 3, 2)
        semidirect = report.by_name("semidirect")
        assert not semidirect.verdict
        assert semidirect.witness["n"] == 2
        assert semidirect.witness["word"] == [1]
        assert semidirect.witness["generator"] == "g1"

    def test_conjugated_action_fails_reliability(self):
        # Conjugating the classical action by the last generator is still a
        # braid action but moves the first generators of the bigger group.
        def conjugated(n, letter):
            base = artin_generator_map(n, letter)
            last = FreeWord.generator(n, n)
            conj = FreeGroupMap(n, n, [last * FreeWord.generator(n, i) * last.inverse() for i in range(1, n + 1)])
            conj_inv = FreeGroupMap(n, n, [last.inverse() * FreeWord.generator(n, i) * last for i in range(1, n + 1)])
            return conj.compose(base).compose(conj_inv)

        family = ActionFamily("artin-conjugated", conjugated)
        family.verify_relations(4)
        cfg = LongMoodyConfig(family, pure_braid_system())
        report = check_reliability(cfg, 4, 2)
        assert not report.passed
        assert report.by_name("first-generators-fixed").witness is not None

    def test_twists_must_be_units(self):
        with pytest.raises(CoherenceError):
            LongMoodyConfig(artin_family(), pure_braid_system(), pre_twist=ONE + T)


class TestSplittingMaps:
    def test_constant_base_gives_permutation(self):
        cfg = standard_config()
        x = constant_functor()
        for n in range(0, 4):
            new_block, old_blocks = splitting_maps(cfg, x, n)
            concat = new_block.hstack(old_blocks)
            # For the constant base the router matrix is trivial, so the
            # concatenation is a permutation matrix.
            assert concat.det().is_unit()
            assert all(v == ONE for v in concat.entries.values())
            assert len(concat.entries) == concat.rows

    def test_concat_square_and_unit_det(self):
        cfg = standard_config()
        f = burau_functor()
        for n in range(0, 4):
            new_block, old_blocks = splitting_maps(cfg, f, n)
            assert new_block.cols == f.dim(n + 2)
            concat = new_block.hstack(old_blocks)
            assert concat.rows == concat.cols == (n + 1) * f.dim(n + 2)
            assert concat.det().is_unit()
            inv = splitting_concat_inverse(cfg, f, n)
            assert concat.matmul(inv) == PolyMatrix.identity(concat.rows)

    def test_inclusion_lemma(self):
        cfg = standard_config()
        assert check_inclusion_lemma(cfg, constant_functor(), 5).passed
        assert check_inclusion_lemma(cfg, burau_functor(), 4).passed

    def test_inclusion_lemma_negative_control(self):
        # Dropping the braiding router from the shifted-blocks inclusion
        # breaks the identity at the first level with a nontrivial router.
        cfg = standard_config()
        f = burau_functor()
        image = long_moody(cfg, f)
        n = 2
        d2 = f.dim(n + 2)
        naive = PolyMatrix(
            (n + 1) * d2,
            n * d2,
            {((1 + j) * d2 + r, j * d2 + r): ONE for j in range(n) for r in range(d2)},
        )
        lhs = naive.matmul(lm_of_inclusion(cfg, f, n))
        assert lhs != image.stab(n, n + 1)

    def test_factorization_reports(self):
        assert check_factorization(artin_family(), burau_functor(), 4).passed
        assert check_factorization(wada_family(3), tym_functor(), 4).passed
        assert check_factorization(artin_family(), constant_functor(), 4).passed


class TestActionFamilies:
    def test_verification_catches_bad_family(self):
        def broken(n, letter):
            # Sends every generator to the swap map regardless of sign:
            # fails the inverse check.
            return artin_generator_map(n, abs(letter))

        family = ActionFamily("broken", broken)
        with pytest.raises(CoherenceError):
            family.verify_relations(3)

    def test_word_map_composition_order(self):
        family = artin_family()
        word = BraidWord(3, (1, 2))
        direct = family.word_map(3, word)
        composed = family.generator_map(3, 1).compose(family.generator_map(3, 2))
        assert direct == composed
