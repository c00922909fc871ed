import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapshift.checks import demo_potential, markov_potential
from gapshift.core import ShiftParams, parse_word
from gapshift.enumeration import count_dp
from gapshift.measures import sample_path
from gapshift.pressure import (ExtendedPotential, Potential, PreconditionError, base_pressure,
                               base_pressure_bracket, block_weight_brute, block_weights,
                               equilibrium_states_report, evaluate_g, gibbs_integral,
                               gibbs_measure, partition_function, partition_function_brute,
                               partition_series, perron_root, required_tau, thresholds,
                               transfer_matrix, variation_profile)

values = st.floats(-1.0, 1.0, allow_nan=False)


def random_potential(nu, r, seed):
    rng = np.random.default_rng(seed)
    return Potential.from_function(nu, r, lambda w: float(rng.uniform(-0.3, 0.3)))


class TestBasePressure:
    def test_constant(self):
        assert abs(base_pressure(Potential.constant(3)) - math.log(3)) <= 1e-12
        assert abs(base_pressure(Potential.constant(3, 0.4, r=2)) - (math.log(3) + 0.4)) <= 1e-12

    def test_demo(self):
        f = demo_potential()
        exact = math.log(1 + math.exp(-0.05) + math.exp(-0.1))
        assert abs(base_pressure(f) - exact) <= 1e-12
        assert abs(exact - 1.0495) < 1e-4
        assert base_pressure(f) - f.sup > math.log(2)

    @given(st.lists(values, min_size=2, max_size=4))
    def test_lift_invariance(self, vals):
        f = Potential.from_symbol_values(vals)
        assert abs(base_pressure(f.lift(2)) - base_pressure(f)) <= 1e-10
        assert abs(base_pressure(f.lift(3)) - base_pressure(f)) <= 1e-10

    @pytest.mark.parametrize("nu,r,seed", [(2, 2, 0), (3, 2, 1), (2, 3, 2), (3, 3, 3)])
    def test_against_eigvals(self, nu, r, seed):
        f = random_potential(nu, r, seed)
        M = transfer_matrix(f)
        rho = max(abs(np.linalg.eigvals(M)))
        br = base_pressure_bracket(f)
        assert br.lower <= rho * (1 + 1e-12) and rho <= br.upper * (1 + 1e-12)
        assert abs(base_pressure(f) - math.log(rho)) <= 1e-11

    def test_perron_simple(self):
        sr = perron_root(np.array([[2.0, 1.0], [1.0, 2.0]]))
        assert abs(sr.rho - 3.0) <= 1e-11

    def test_additive_constant(self):
        f = markov_potential()
        g = Potential.from_function(3, 2, lambda w: f(w) + 0.7)
        assert abs(base_pressure(g) - base_pressure(f) - 0.7) <= 1e-10


class TestRequiredTau:
    def test_examples(self):
        z = Potential.constant(3)
        assert abs(float(required_tau(z, 3)) - 1.0) <= 2e-6
        assert abs(float(required_tau(z, 5)) - (math.log(15) / math.log(3) - 1)) <= 2e-6
        f = demo_potential()
        t = required_tau(f, 3)
        exact = math.log(9) / (base_pressure(f) - f.sup) - 1
        assert isinstance(t, Fraction) and exact <= t <= exact + 2e-6
        assert abs(float(t) - 1.0937) < 1e-4
        assert t <= Fraction(3, 2)

    def test_undefined(self):
        # sup f far above the pressure: threshold undefined
        f = Potential.from_symbol_values([5.0, -50.0])
        with pytest.raises(PreconditionError):
            required_tau(f, 3)


class TestEvaluateG:
    P = ShiftParams.make(3, 1, 2)

    def test_center_zero(self):
        f = demo_potential()
        assert evaluate_g(parse_word("1 0 0"), f, self.P) == f.sup

    def test_identification(self):
        f = demo_potential()
        for s in (4, 5, 6):
            assert evaluate_g((s, s, s), f, self.P) == f((s - 3,))

    def test_isolated_symbol(self):
        f = demo_potential()
        assert evaluate_g(parse_word("0 1 0"), f, self.P) == f((1,))

    def test_completion_range2(self):
        f = markov_potential()
        # block "2" alone: next coordinate completed with the smallest symbol
        assert evaluate_g(parse_word("0 0 2 0 0"), f, self.P) == f((2, 1))
        assert evaluate_g(parse_word("0 3 2 3 0"), f, self.P) == f((2, 3))
        assert evaluate_g(parse_word("0 0 5 6 0"), f, self.P) == f((2, 1))

    def test_errors(self):
        f = markov_potential()
        with pytest.raises(ValueError):
            evaluate_g((1, 1, 1), f, self.P)  # radius 1 < range 2
        with pytest.raises(ValueError):
            evaluate_g((1, 0, 4, 0, 0), f, self.P)  # not admissible
        with pytest.raises(ValueError):
            evaluate_g((1, 1), demo_potential(), self.P)

    def test_extended_potential(self):
        ext = ExtendedPotential(demo_potential(), self.P)
        assert ext((0, 2, 0)) == -0.05
        assert ext.margin_ok and ext.sup == 0.0


@pytest.mark.parametrize("f", [demo_potential(), markov_potential(), random_potential(2, 3, 5)])
def test_block_weights_oracle(f):
    B = block_weights(f, 6)
    for a in range(1, 7 if f.nu == 2 else 6):
        assert math.isclose(B[a], block_weight_brute(f, a), rel_tol=1e-12)


@pytest.mark.parametrize("tau,L", [(1, 2), ("3/2", 2), ("1/2", 3), (0, 2)])
@pytest.mark.parametrize("f", [demo_potential(), markov_potential()])
def test_partition_function_oracle(f, tau, L):
    p = ShiftParams.make(3, tau, L)
    reps = partition_series(6, f, p)
    for n in range(1, 7):
        assert math.isclose(math.exp(reps[n - 1].log_Z), partition_function_brute(n, f, p),
                            rel_tol=1e-10)


def test_zero_potential_counts():
    p = ShiftParams.make(2, 1, 2)
    f = Potential.constant(2)
    for n in (1, 5, 20, 60):
        assert math.isclose(partition_function(n, f, p).log_Z, math.log(count_dp(n, p)),
                            rel_tol=1e-12)


def test_star_product():
    f = demo_potential()
    p = ShiftParams.make(3, "3/2", 2)
    s = sum(math.exp(v) for v in f.values.values())
    for rep in partition_series(40, f, p):
        assert math.isclose(rep.log_Z_star, rep.n * math.log(s), rel_tol=1e-12)


def test_pressure_convergence():
    f = demo_potential()
    p = ShiftParams.make(3, "3/2", 2)
    rep = partition_function(400, f, p)
    assert rep.tau_ok and rep.margin_ok
    assert rep.base_pressure <= rep.rate <= rep.base_pressure + 0.05
    assert rep.strata_rel_error <= 1e-9
    with pytest.raises(ValueError):
        partition_function(0, f, p)


def test_strata_identity_various():
    for f in (demo_potential(), markov_potential()):
        for tau, L in ((0, 2), ("1/3", 4), (2, 3)):
            for rep in partition_series(60, f, ShiftParams.make(3, tau, L)):
                assert rep.strata_rel_error <= 1e-9


class TestGibbs:
    def test_bernoulli_weights(self):
        f = demo_potential()
        mu = gibbs_measure(f, ShiftParams.make(3, 2, 2), 2)
        w = np.exp([0.0, -0.05, -0.1])
        assert np.allclose(mu.stationary, w / w.sum())
        assert mu.support == {4, 5, 6}

    @pytest.mark.parametrize("f", [demo_potential(), markov_potential(), random_potential(2, 2, 4)])
    def test_variational_equality(self, f):
        mu = gibbs_measure(f, ShiftParams.make(f.nu, 2, 2), 1)
        assert abs(mu.entropy + gibbs_integral(f, mu) - base_pressure(f)) <= 1e-9
        assert np.allclose(mu.stationary @ mu.transition, mu.stationary)

    def test_sampled_frequencies(self):
        f = markov_potential()
        mu = gibbs_measure(f, ShiftParams.make(3, 2, 2), 1)
        path = sample_path(mu, 50_000, seed=4)
        freq = np.bincount(path, minlength=4)[1:] / len(path)
        assert np.allclose(freq, mu.stationary, atol=0.02)


class TestEquilibriumReport:
    @pytest.mark.parametrize("L,tau", [(2, "3/2"), (3, 2)])
    def test_states(self, L, tau):
        rep = equilibrium_states_report(markov_potential(), ShiftParams.make(3, tau, L))
        assert len(rep.states) == L
        assert len({s.pressure for s in rep.states}) == 1
        supports = [set(s.support) for s in rep.states]
        assert all(not a & b for a, b in itertools.combinations(supports, 2))
        assert rep.tau_star_statement >= rep.tau_star_proof or L >= 3

    def test_preconditions(self):
        f = demo_potential()
        with pytest.raises(PreconditionError, match="tau"):
            equilibrium_states_report(f, ShiftParams.make(3, 1, 2))
        with pytest.raises(PreconditionError, match="log 2"):
            equilibrium_states_report(Potential.from_symbol_values([0, -3, -3]),
                                      ShiftParams.make(3, 5, 2))

    def test_infinite(self):
        rep = equilibrium_states_report(demo_potential(), ShiftParams.make(3, 2, 2), infinite=True)
        d = rep.as_dict()
        assert d["infinite"] and d["family"]["truncated_monotone"]
        assert len(rep.states) == 3

    def test_range3_pressure_only(self):
        # with nu = 2 the margin P(f) - sup f never exceeds log 2, so use nu = 3
        f = random_potential(3, 3, 1)
        f = Potential.from_function(3, 3, lambda w: 0.1 * f(w))
        rep = equilibrium_states_report(f, ShiftParams.make(3, 3, 2))
        assert all(s.measure is None for s in rep.states)
        assert len(rep.singular_pairs) == 1


class TestVariation:
    def test_locally_constant(self):
        f = markov_potential()
        var = variation_profile(ExtendedPotential(f, ShiftParams.make(3, 1, 2)), 3,
                                pairs_per_radius=600, seed=1)
        assert all(v == 0.0 for v in var[2:])
        assert var[0] <= 2 * (f.sup - f.inf) + 1e-12

    def test_constant_potential(self):
        f = Potential.constant(3, -0.2)
        var = variation_profile(ExtendedPotential(f, ShiftParams.make(3, 1, 2)), 2,
                                pairs_per_radius=300)
        assert var == [0.0, 0.0, 0.0]

    def test_radius_too_small(self):
        with pytest.raises(ValueError):
            variation_profile(ExtendedPotential(markov_potential(), ShiftParams.make(3, 1, 2)), 1)


def test_potential_io(tmp_path):
    f = markov_potential()
    path = tmp_path / "f.json"
    f.save(path)
    assert Potential.load(path) == f
    with pytest.raises(ValueError):
        Potential(2, 1, {(1,): 0.0})


def test_thresholds():
    t = thresholds(2)
    assert abs(t["log3/lognu"] - 1.585) < 1e-3 and abs(t["log5/lognu"] - 2.322) < 1e-3
    t3 = thresholds(3, demo_potential())
    assert isinstance(t3["required_tau_c3"], Fraction)
