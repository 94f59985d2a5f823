import pytest

from emoa_lab import (
    Bitstring,
    ObjectiveVector,
    OjzjParams,
    RandomSource,
    available_problems,
    brute_force_pareto,
    get_problem,
    jump_evaluate,
    ojzj_evaluate,
    ones_count,
    pareto_front,
    random_bitstring,
)


def with_ones(n: int, ones: int) -> Bitstring:
    return Bitstring((1 << ones) - 1, n)


class TestParams:
    def test_valid_range(self):
        OjzjParams(5, 2)
        OjzjParams(30, 14)

    @pytest.mark.parametrize("n,k", [(4, 2), (10, 5), (10, 1), (3, 2), (0, 2)])
    def test_invalid(self, n, k):
        with pytest.raises(ValueError):
            OjzjParams(n, k)


class TestOjzjEvaluate:
    def test_extremes_and_plateau(self):
        p = OjzjParams(20, 5)
        assert ojzj_evaluate(Bitstring.ones(20), p) == (25, 5)
        assert ojzj_evaluate(Bitstring.zeros(20), p) == (5, 25)
        assert ojzj_evaluate(with_ones(20, 10), p) == (15, 15)

    def test_valley_branch(self):
        p = OjzjParams(20, 5)
        assert ojzj_evaluate(with_ones(20, 18), p) == (2, 7)

    def test_matches_direct_transcription(self):
        # independent oracle: a literal function-by-cases implementation
        def direct(ones, n, k):
            f1 = k + ones if (ones <= n - k or ones == n) else n - ones
            zeros = n - ones
            f2 = k + zeros if (zeros <= n - k or zeros == n) else n - zeros
            return (f1, f2)

        for n, k in [(10, 2), (12, 3), (20, 5), (11, 4)]:
            p = OjzjParams(n, k)
            for ones in range(n + 1):
                assert ojzj_evaluate(with_ones(n, ones), p) == direct(ones, n, k)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            ojzj_evaluate(Bitstring.ones(9), OjzjParams(10, 2))

    def test_symmetry_under_complement(self):
        rng = RandomSource(55)
        p = OjzjParams(13, 3)
        for _ in range(300):
            x = random_bitstring(13, rng)
            f1, f2 = ojzj_evaluate(x, p)
            assert ojzj_evaluate(x.complement(), p) == (f2, f1)

    def test_all_values_at_least_one(self):
        for n, k in [(5, 2), (9, 3), (12, 5)]:
            p = OjzjParams(n, k)
            for ones in range(n + 1):
                f1, f2 = ojzj_evaluate(with_ones(n, ones), p)
                assert f1 >= 1 and f2 >= 1

    def test_first_objective_is_jump(self):
        p = OjzjParams(14, 4)
        for ones in range(15):
            x = with_ones(14, ones)
            assert ojzj_evaluate(x, p).f1 == jump_evaluate(x, 4)


class TestJumpEvaluate:
    def test_examples(self):
        assert jump_evaluate(Bitstring.ones(20), 5) == 25
        assert jump_evaluate(with_ones(20, 15), 5) == 20  # boundary ones = n-k
        assert jump_evaluate(with_ones(20, 17), 5) == 3

    def test_wide_k_range(self):
        # the single-objective valley parameter may go up to n-1
        assert jump_evaluate(Bitstring.ones(10), 9) == 19
        assert jump_evaluate(with_ones(10, 5), 9) == 5
        with pytest.raises(ValueError):
            jump_evaluate(Bitstring.ones(10), 1)
        with pytest.raises(ValueError):
            jump_evaluate(Bitstring.ones(10), 10)


class TestParetoOracle:
    def test_size_formula(self):
        oracle = pareto_front(OjzjParams(20, 5))
        assert oracle.size == 20 - 10 + 3 == 13
        assert ObjectiveVector(20, 10) in oracle.front

    def test_explicit_front_n10_k2(self):
        oracle = pareto_front(OjzjParams(10, 2))
        expected = {(2, 12), (12, 2)} | {(a, 14 - a) for a in range(4, 11)}
        assert set(oracle.front) == expected
        assert oracle.size == 9

    def test_inner_front_relationship(self):
        for n, k in [(10, 2), (12, 3), (20, 5)]:
            oracle = pareto_front(OjzjParams(n, k))
            assert oracle.inner_front < oracle.front
            assert oracle.front - oracle.inner_front == {
                ObjectiveVector(k, n + k),
                ObjectiveVector(n + k, k),
            }

    def test_pareto_set_predicate(self):
        oracle = pareto_front(OjzjParams(10, 2))
        front = brute_force_pareto(OjzjParams(10, 2))
        for v in range(1 << 10):
            x = Bitstring(v, 10)
            optimal = ojzj_evaluate(x, oracle.params) in front
            assert oracle.is_pareto_optimal(x) == optimal

    def test_optimal_sum_invariant(self):
        # every Pareto optimal solution satisfies f1 + f2 = n + 2k
        p = OjzjParams(11, 2)
        oracle = pareto_front(p)
        for ones in range(12):
            x = with_ones(11, ones)
            if oracle.is_pareto_optimal(x):
                f1, f2 = ojzj_evaluate(x, p)
                assert f1 + f2 == 11 + 4

    def test_sorted_front_ascending_f1(self):
        vecs = pareto_front(OjzjParams(12, 3)).sorted_front()
        assert all(a.f1 < b.f1 for a, b in zip(vecs, vecs[1:]))


class TestBruteForce:
    def test_matches_closed_form_n10(self):
        p = OjzjParams(10, 2)
        assert brute_force_pareto(p) == set(pareto_front(p).front)

    def test_explicit_small_case(self):
        assert brute_force_pareto(OjzjParams(5, 2)) == {
            (2, 7),
            (7, 2),
            (4, 5),
            (5, 4),
        }

    def test_size_n14_k3(self):
        assert len(brute_force_pareto(OjzjParams(14, 3))) == 11

    def test_resource_limit(self):
        with pytest.raises(ValueError):
            brute_force_pareto(OjzjParams(21, 2))


class TestRegistry:
    def test_available(self):
        assert available_problems() == ["ojzj"]

    def test_get_problem(self):
        problem = get_problem("ojzj", n=10, k=2)
        assert problem.n == 10 and problem.k == 2
        assert problem.evaluate(Bitstring.ones(10)) == (12, 2)
        assert problem.pareto_oracle().size == 9

    def test_unknown_problem(self):
        with pytest.raises(ValueError):
            get_problem("onemax", n=10)

    def test_in_valley(self):
        problem = get_problem("ojzj", n=10, k=3)
        valley = {with_ones(10, i) for i in (1, 2, 8, 9)}
        for ones in range(11):
            x = with_ones(10, ones)
            assert problem.in_valley(x) == (x in valley)
