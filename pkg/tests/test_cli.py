import json

import pytest

from lmkit.cli import main, parse_functor, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestEmit:
    def test_burau_contains_blocks(self, capsys):
        code, out = run(capsys, "emit", "--functor", "burau", "--n", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["dim"] == 3
        assert payload["generators"]["s1"][0][0] == "1 - t"

    def test_constant_all_ones(self, capsys):
        code, out = run(capsys, "emit", "--functor", "constant", "--n", "5")
        payload = json.loads(out)
        assert all(m == [["1"]] for m in payload["generators"].values())

    def test_lk_dimension(self, capsys):
        code, out = run(capsys, "emit", "--functor", "lk", "--n", "4")
        payload = json.loads(out)
        assert payload["dim"] == 6
        assert len(payload["generators"]["s1"]) == 6

    def test_unknown_functor_exit_2(self, capsys):
        code = main(["emit", "--functor", "bogus", "--n", "2"])
        assert code == 2

    def test_deterministic_output(self, capsys):
        _, first = run(capsys, "degree", "--functor", "lk", "--N", "5", "--seed", "3")
        _, second = run(capsys, "degree", "--functor", "lk", "--N", "5", "--seed", "3")
        assert first == second


class TestCheck:
    def test_coherence_pass(self, capsys):
        code, out = run(
            capsys, "check", "coherence", "--action", "artin",
            "--sigma", "pure-braid", "--N", "3", "--L", "2",
        )
        assert code == 0
        verdicts = [c["verdict"] for c in json.loads(out)["conditions"]]
        assert verdicts == ["pass", "pass", "pass"]

    def test_functor_pass(self, capsys):
        code, out = run(capsys, "check", "functor", "--functor", "lk", "--N", "3", "--L", "2")
        assert code == 0

    def test_corrupted_sigma_fails_with_witness(self, capsys):
        code, out = run(
            capsys, "check", "coherence", "--action", "artin",
            "--sigma", "corrupted-demo", "--N", "3", "--L", "2",
        )
        assert code == 1
        conditions = json.loads(out)["conditions"]
        failing = [c for c in conditions if c["verdict"] == "fail"]
        assert failing and failing[-1]["witness"] is not None

    def test_reliability(self, capsys):
        code, _ = run(capsys, "check", "reliability", "--N", "3", "--L", "2")
        assert code == 0

    def test_natural_identity(self, capsys):
        code, _ = run(capsys, "check", "natural", "--map", "identity", "--functor", "tym", "--N", "3")
        assert code == 0

    def test_natural_burau_reversal(self, capsys):
        code, _ = run(capsys, "check", "natural", "--map", "burau-reversal", "--N", "4")
        assert code == 0


class TestLongMoody:
    def test_classical_blocks(self, capsys):
        code, out = run(
            capsys, "lm", "--base", "constant", "--pre", "t", "--post", "t^-1", "--n", "4",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["generators"]["s1"][0] == ["0", "t^2", "0", "0"]
        assert payload["generators"]["s1"][1] == ["1", "1 - t^2", "0", "0"]

    def test_iterated_dimension(self, capsys):
        code, out = run(capsys, "lm", "--base", "constant", "--iterations", "2", "--n", "4")
        assert json.loads(out)["dim"] == 20

    def test_blockdiag_action(self, capsys):
        code, out = run(
            capsys, "lm", "--action", "wada2", "--sigma", "trivial", "--base", "burau", "--n", "2",
        )
        payload = json.loads(out)
        assert payload["dim"] == 6


class TestDegreeAndVerify:
    def test_degree_reduced_burau(self, capsys):
        code, out = run(capsys, "degree", "--functor", "reduced-burau", "--N", "6")
        assert code == 0
        payload = json.loads(out)
        assert payload["strong_degree_at_range"] == 2
        assert payload["very_strong"] is False

    def test_verify_burau_equivalence(self, capsys):
        code, out = run(capsys, "verify", "burau-equivalence", "--N", "4")
        assert code == 0
        assert json.loads(out)["verdict"] == "pass"

    def test_verify_splitting(self, capsys):
        code, out = run(capsys, "verify", "splitting", "--base", "burau", "--N", "3")
        assert code == 0

    def test_verify_xi_lemma(self, capsys):
        code, _ = run(capsys, "verify", "xi-lemma", "--base", "constant", "--N", "4")
        assert code == 0

    def test_verify_factorization(self, capsys):
        code, _ = run(capsys, "verify", "factorization", "--base", "tym", "--action", "wada3", "--N", "3")
        assert code == 0

    def test_verify_degree(self, capsys):
        code, out = run(capsys, "verify", "degree", "--base", "constant", "--N", "4")
        assert code == 0
        assert json.loads(out)["image"]["strong_degree_at_range"] == 1


class TestFunctorGrammar:
    def test_nested_expression(self):
        f = parse_functor("lm(artin,pure-braid,t,t^-1; constant)")
        assert f.dim(3) == 3

    def test_combinators(self):
        assert parse_functor("sum(burau; tym)").dim(3) == 6
        assert parse_functor("tensor(burau; tym)").dim(3) == 9
        assert parse_functor("tau(2; burau)").dim(1) == 3
        assert parse_functor("twist(t; constant)").dim(4) == 1
        assert parse_functor("atomic(2)").dim(2) == 1
        assert parse_functor("e(2)").dim(3) == 9
        assert parse_functor("burau(t^2)").gen_matrix(2, 1).entry(1, 0).is_unit()

    def test_bad_expressions(self):
        for text in ["sum(burau)", "lm(artin; constant", "wat(1)"]:
            with pytest.raises((UsageError, ValueError)):
                parse_functor(text)

    def test_usage_exit_code(self):
        assert main(["degree", "--functor", "sum(burau)", "--N", "3"]) == 2
