"""Quantum states: projectors, densities, mixtures, and their laws."""

import numpy as np
import pytest

from entanglekit.errors import InternalConsistencyError
from entanglekit.linalg import Tolerance, rank
from entanglekit.quantum import (
    DensityOperator,
    MixedEnsemble,
    PureState,
    ccr_trace_obstruction,
    expectation,
    is_density,
    is_pure_density,
    mix,
    mixture_vs_superposition,
    projector,
)

E1 = PureState(np.array([1.0, 0.0], dtype=complex))
E2 = PureState(np.array([0.0, 1.0], dtype=complex))


def _rand_unit(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def _rand_hermitian(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (a + a.conj().T) / 2


class TestPureState:
    def test_rejects_non_normalized(self):
        with pytest.raises(ValueError, match="unit norm"):
            PureState(np.array([1.0, 1.0]))

    def test_rejects_rather_than_renormalizes(self):
        # 4-digit approximations of 1/sqrt(2) are off by ~1e-5: too far
        with pytest.raises(ValueError, match="unit norm"):
            PureState(np.array([0.7071, 0.7071]))

    def test_custom_tolerance_is_honored(self):
        PureState(np.array([0.7071, 0.7071]), Tolerance(1e-2))


class TestProjector:
    def test_basis_vector(self):
        np.testing.assert_array_equal(projector(E1).mat, np.diag([1.0, 0.0]).astype(complex))

    def test_equal_superposition(self):
        x = PureState(np.array([1.0, 1.0]) / np.sqrt(2))
        np.testing.assert_allclose(projector(x).mat, np.full((2, 2), 0.5), atol=1e-12)

    def test_projector_laws_random(self):
        rng = np.random.default_rng(40)
        for _ in range(100):
            d = int(rng.integers(2, 7))
            p = projector(PureState(_rand_unit(rng, d))).mat
            np.testing.assert_allclose(p, p.conj().T, atol=1e-12)
            assert float(np.abs(p @ p - p).max()) <= 1e-9
            assert rank(p) == 1
            assert abs(np.trace(p) - 1.0) <= 1e-12


class TestExpectation:
    def test_identity_observable(self):
        rho = mix(MixedEnsemble(((0.5, E1), (0.5, E2))))
        assert abs(expectation(np.eye(2), rho) - 1.0) <= 1e-12

    def test_matches_quadratic_form_on_pure_states(self):
        rng = np.random.default_rng(41)
        for _ in range(100):
            d = int(rng.integers(2, 7))
            x = PureState(_rand_unit(rng, d))
            a = _rand_hermitian(rng, d)
            direct = complex(np.vdot(x.vec, a @ x.vec)).real
            assert abs(expectation(a, projector(x)) - direct) <= 1e-9

    def test_weighted_sum_over_ensembles(self):
        rng = np.random.default_rng(42)
        d = 4
        states = [PureState(_rand_unit(rng, d)) for _ in range(3)]
        weights = [0.2, 0.5, 0.3]
        ens = MixedEnsemble(tuple(zip(weights, states)))
        a = _rand_hermitian(rng, d)
        direct = sum(w * complex(np.vdot(x.vec, a @ x.vec)).real for w, x in zip(weights, states))
        assert abs(expectation(a, mix(ens)) - direct) <= 1e-9

    def test_rejects_non_hermitian_observable(self):
        with pytest.raises(ValueError, match="Hermitian"):
            expectation(np.array([[0, 1], [0, 0]]), projector(E1))

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            expectation(np.eye(3), projector(E1))


class TestMix:
    def test_single_term_is_the_projector(self):
        np.testing.assert_array_equal(mix(MixedEnsemble(((1.0, E1),))).mat, projector(E1).mat)

    def test_uniform_two_state_mixture(self):
        rho = mix(MixedEnsemble(((0.5, E1), (0.5, E2))))
        np.testing.assert_allclose(rho.mat, np.eye(2) / 2, atol=1e-12)

    def test_random_ensembles_are_densities(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            d = int(rng.integers(2, 6))
            k = int(rng.integers(1, 5))
            weights = rng.dirichlet(np.ones(k))
            ens = MixedEnsemble(
                tuple((float(w), PureState(_rand_unit(rng, d))) for w in weights)
            )
            assert is_density(mix(ens).mat)

    def test_rejects_bad_weights(self):
        with pytest.raises(ValueError, match="sum to 1"):
            MixedEnsemble(((0.5, E1), (0.4, E2)))
        with pytest.raises(ValueError, match=">= 0"):
            MixedEnsemble(((1.5, E1), (-0.5, E2)))


class TestIsDensity:
    def test_maximally_mixed(self):
        assert is_density(np.eye(2) / 2)

    def test_non_hermitian_fails(self):
        assert not is_density(np.array([[1.0, 2.0], [0.0, 1.0]]) / 2)

    def test_negative_eigenvalue_fails_despite_unit_trace(self):
        assert not is_density(np.diag([1.5, -0.5]))

    def test_wrong_trace_fails(self):
        assert not is_density(np.eye(2))

    def test_non_square_fails(self):
        assert not is_density(np.ones((2, 3)))


class TestIsPureDensity:
    def test_projector_is_pure(self):
        rng = np.random.default_rng(44)
        assert is_pure_density(projector(PureState(_rand_unit(rng, 5))))

    def test_maximally_mixed_is_not(self):
        assert not is_pure_density(DensityOperator(np.eye(2) / 2))

    def test_slightly_mixed_is_not(self):
        rho = DensityOperator(np.diag([0.99, 0.01]))
        assert not is_pure_density(rho)

    def test_tolerance_pathology_is_loud(self):
        # second eigenvalue between eps/2 and eps: rank says pure, purity
        # says mixed; that must surface as an error, not a quiet verdict
        eps = Tolerance().eps
        rho = DensityOperator(np.diag([1.0 - 0.8 * eps, 0.8 * eps]))
        with pytest.raises(InternalConsistencyError, match="disagree"):
            is_pure_density(rho)


class TestMixtureVsSuperposition:
    def test_identical_states_agree(self):
        rng = np.random.default_rng(45)
        a = _rand_hermitian(rng, 2)
        m, naive = mixture_vs_superposition(a, E1, E1, 0.3)
        assert abs(m - naive) <= 1e-12

    def test_degenerate_weight_agrees(self):
        rng = np.random.default_rng(46)
        a = _rand_hermitian(rng, 2)
        m, naive = mixture_vs_superposition(a, E1, E2, 1.0)
        assert abs(m - naive) <= 1e-12

    def test_canonical_discrepancy_in_the_raw_quadratic_form(self):
        # A projects onto the first state: the mixture sees it half the
        # time (0.5), while the summed vector's raw quadratic form keeps
        # only the p1^2 term (0.25)
        a = np.diag([1.0, 0.0]).astype(complex)
        m, raw = mixture_vs_superposition(a, E1, E2, 0.5, normalize=False)
        assert abs(m - 0.5) <= 1e-12
        assert abs(raw - 0.25) <= 1e-12

    def test_discrepancy_exists_over_random_observables(self):
        rng = np.random.default_rng(47)
        for _ in range(20):
            d = int(rng.integers(2, 6))
            q, _ = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
            x1, x2 = PureState(q[:, 0]), PureState(q[:, 1])
            p1 = float(rng.uniform(0.1, 0.9))
            assert any(
                abs(np.subtract(*mixture_vs_superposition(_rand_hermitian(rng, d), x1, x2, p1)))
                > 1e-9
                for _ in range(20)
            )

    def test_rejects_weight_outside_unit_interval(self):
        with pytest.raises(ValueError, match="p1"):
            mixture_vs_superposition(np.eye(2), E1, E2, 1.5)

    def test_vanishing_sum_is_rejected(self):
        minus = PureState(-E1.vec)
        with pytest.raises(ValueError, match="vanishes"):
            mixture_vs_superposition(np.eye(2), E1, minus, 0.5)


class TestCcrTraceObstruction:
    def test_random_pairs_are_traceless(self):
        rng = np.random.default_rng(48)
        for _ in range(100):
            d = int(rng.integers(2, 7))
            xm = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            pm = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            assert abs(ccr_trace_obstruction(xm, pm)) <= 1e-9

    def test_equal_operators_give_exact_zero(self):
        rng = np.random.default_rng(49)
        xm = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert ccr_trace_obstruction(xm, xm) == 0j

    def test_rejects_mismatched_shapes(self):
        with pytest.raises(ValueError):
            ccr_trace_obstruction(np.eye(2), np.eye(3))
