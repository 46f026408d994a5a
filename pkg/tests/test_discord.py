from math import sqrt

import numpy as np
import pytest

import qdiscord as qd
from qdiscord.errors import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    InvalidInputError,
)

from helpers import bell_state, classical_quantum_state, random_pure, random_state


def pure_density(probabilities, dim_b=None):
    state = qd.PureBipartiteState.from_probabilities(probabilities, dim_b)
    return qd.DensityMatrix.from_pure(state)


class TestMeasurementSpectrum:
    def test_values_are_floats(self):
        s = qd.MeasurementSpectrum((2, 4, 1))
        assert s.values == (2.0, 4.0, 1.0)
        assert s.size == 3

    def test_gap_squared_matrix(self):
        s = qd.MeasurementSpectrum((2, 4, 1))
        expected = [[0, 4, 1], [4, 0, 9], [1, 9, 0]]
        assert np.array_equal(s.gap_squared_matrix(), expected)

    def test_rejects_single_value(self):
        with pytest.raises(InvalidInputError):
            qd.MeasurementSpectrum((1.0,))

    def test_rejects_near_degenerate_pair(self):
        with pytest.raises(DegenerateSpectrumError):
            qd.MeasurementSpectrum((1.0, 1.0 + 1e-10, 3.0))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            qd.MeasurementSpectrum((1.0, np.inf))

    def test_defaults(self):
        qubit = qd.MeasurementSpectrum.default(2)
        assert qubit.values == (sqrt(2) / 2, -sqrt(2) / 2)
        assert abs(qubit.gap_squared_matrix()[0, 1] - 2.0) < 1e-12
        assert qd.MeasurementSpectrum.default(3).values == (4.0, 3.0, 2.0)
        with pytest.raises(InvalidInputError):
            qd.MeasurementSpectrum.default(5)


class TestVonNeumannBasis:
    def test_computational(self):
        b = qd.VonNeumannBasis.computational(3)
        assert np.array_equal(b.unitary, np.eye(3))
        assert b.dim == 3

    def test_rejects_non_unitary(self):
        with pytest.raises(InvalidInputError, match="not unitary"):
            qd.VonNeumannBasis(np.ones((2, 2)))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            qd.VonNeumannBasis(np.ones((2, 3)))

    def test_projectors_resolve_identity(self):
        b = qd.VonNeumannBasis.from_seed(4, 99)
        total = sum(b.projector(j) for j in range(4))
        assert np.allclose(total, np.eye(4), atol=1e-12)
        p0 = b.projector(0)
        assert np.allclose(p0 @ p0, p0, atol=1e-12)

    def test_projector_index_range(self):
        b = qd.VonNeumannBasis.computational(2)
        with pytest.raises(IndexError):
            b.projector(2)

    def test_from_seed_is_deterministic(self):
        a = qd.VonNeumannBasis.from_seed(3, 7)
        b = qd.VonNeumannBasis.from_seed(3, 7)
        c = qd.VonNeumannBasis.from_seed(3, 8)
        assert np.array_equal(a.unitary, b.unitary)
        assert not np.allclose(a.unitary, c.unitary)


class TestSkewInformation:
    def test_zero_when_commuting(self):
        rho = qd.DensityMatrix(np.diag([0.4, 0.3, 0.2, 0.1]), 2, 2)
        observable = np.diag([1.0, 2.0, 3.0, 4.0])
        assert qd.skew_information(rho, observable) < 1e-12

    def test_pure_state_gives_variance(self):
        rho = bell_state()
        sz = np.diag([1.0, -1.0])
        observable = np.kron(sz, np.eye(2))
        # <sz x I> = 0 and <(sz x I)^2> = 1 on the maximally entangled state
        assert abs(qd.skew_information(rho, observable) - 1.0) < 1e-12

    def test_maximally_mixed_state(self):
        rho = qd.DensityMatrix(np.eye(4) / 4, 2, 2)
        observable = np.kron(np.diag([1.0, -1.0]), np.eye(2))
        assert qd.skew_information(rho, observable) < 1e-12

    def test_rejects_raw_arrays(self):
        with pytest.raises(InvalidInputError, match="DensityMatrix"):
            qd.skew_information(np.eye(4) / 4, np.eye(4))

    def test_rejects_non_hermitian_observable(self):
        rho = bell_state()
        m = np.zeros((4, 4))
        m[0, 1] = 1.0
        with pytest.raises(InvalidInputError):
            qd.skew_information(rho, m)

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            qd.skew_information(bell_state(), np.eye(6))


class TestUncertaintyTerm:
    def test_symmetric_in_pair(self):
        rng = np.random.default_rng(41)
        rho = random_state(3, 3, rng)
        basis = qd.VonNeumannBasis.from_seed(3, 5)
        for j, k in ((0, 1), (0, 2), (1, 2)):
            a = qd.uncertainty_term(rho, basis, j, k)
            b = qd.uncertainty_term(rho, basis, k, j)
            assert abs(a - b) < 1e-13

    @pytest.mark.parametrize("dims", [(2, 3), (3, 2), (3, 4)])
    def test_diagonal_term_is_projector_skew_information(self, dims):
        rng = np.random.default_rng(42)
        rho = random_state(*dims, rng)
        basis = qd.VonNeumannBasis.from_seed(dims[0], 11)
        eye_b = np.eye(dims[1])
        for j in range(dims[0]):
            direct = qd.uncertainty_term(rho, basis, j, j)
            via_skew = qd.skew_information(rho, np.kron(basis.projector(j), eye_b))
            assert abs(direct - via_skew) < 1e-11

    def test_index_out_of_range(self):
        basis = qd.VonNeumannBasis.computational(2)
        with pytest.raises(IndexError):
            qd.uncertainty_term(bell_state(), basis, 0, 2)

    def test_basis_dimension_checked(self):
        basis = qd.VonNeumannBasis.computational(3)
        with pytest.raises(DimensionMismatchError):
            qd.uncertainty_term(bell_state(), basis, 0, 1)


class TestMeasurementUncertainty:
    def test_bell_state(self):
        q = qd.measurement_uncertainty(bell_state(), qd.VonNeumannBasis.computational(2))
        assert abs(q - 0.5) < 1e-12

    def test_equals_pair_term_sum(self):
        rng = np.random.default_rng(43)
        rho = random_state(3, 3, rng)
        basis = qd.VonNeumannBasis.from_seed(3, 17)
        total = 2.0 * sum(
            qd.uncertainty_term(rho, basis, j, k)
            for j in range(3)
            for k in range(j + 1, 3)
        )
        assert abs(qd.measurement_uncertainty(rho, basis) - total) < 1e-12

    def test_classical_quantum_state_in_classical_basis(self):
        rng = np.random.default_rng(44)
        rho = classical_quantum_state(3, 2, rng)
        q = qd.measurement_uncertainty(rho, qd.VonNeumannBasis.computational(3))
        assert q < 1e-10

    def test_pure_frozen_value(self):
        rho = pure_density([0.7, 0.2, 0.1])
        q = qd.measurement_uncertainty(rho, qd.VonNeumannBasis.computational(3))
        assert abs(q - 0.46) < 1e-12


class TestObservableUncertainty:
    def test_pure_frozen_value(self):
        rho = pure_density([0.7, 0.2, 0.1])
        basis = qd.VonNeumannBasis.computational(3)
        u = qd.observable_uncertainty(rho, basis, (2, 1, 4))
        assert abs(u - 0.60) < 1e-12

    def test_qubit_proportionality(self):
        rng = np.random.default_rng(45)
        rho = random_state(2, 4, rng)
        basis = qd.VonNeumannBasis.from_seed(2, 23)
        q = qd.measurement_uncertainty(rho, basis)
        for spectrum in ((1.0, -1.0), (5.0, 2.0), (0.25, -1.75)):
            gap2 = (spectrum[0] - spectrum[1]) ** 2
            u = qd.observable_uncertainty(rho, basis, spectrum)
            assert abs(u - 0.5 * gap2 * q) < 1e-12

    def test_matches_assembled_observable_skew_information(self):
        rng = np.random.default_rng(46)
        rho = random_state(3, 3, rng)
        basis = qd.VonNeumannBasis.from_seed(3, 29)
        values = (4.0, 3.0, 2.0)
        u = qd.observable_uncertainty(rho, basis, values)
        assembled = sum(v * basis.projector(j) for j, v in enumerate(values))
        via_skew = qd.skew_information(rho, np.kron(assembled, np.eye(3)))
        assert abs(u - via_skew) < 1e-11

    def test_spectrum_size_checked(self):
        with pytest.raises(DimensionMismatchError):
            qd.observable_uncertainty(
                bell_state(), qd.VonNeumannBasis.computational(2), (1.0, 2.0, 3.0)
            )


class TestPureClosedForms:
    def test_frozen_value_from_all_input_forms(self):
        probs = [0.7, 0.2, 0.1]
        state = qd.PureBipartiteState.from_probabilities(probs)
        dec = qd.schmidt_decompose(state)
        for arg in (probs, state, dec):
            assert abs(qd.geometric_discord_pure(arg) - 0.46) < 1e-12

    def test_product_state_has_no_discord(self):
        assert qd.geometric_discord_pure([1.0, 0.0]) == 0.0

    def test_bell_state(self):
        assert abs(qd.geometric_discord_pure([0.5, 0.5]) - 0.5) < 1e-15

    def test_rejects_bad_probabilities(self):
        with pytest.raises(InvalidInputError):
            qd.geometric_discord_pure([0.7, 0.7])
        with pytest.raises(InvalidInputError):
            qd.geometric_discord_pure([[0.5, 0.5]])

    def test_assignment_frozen_example(self):
        result = qd.min_uncertainty_assignment([0.7, 0.2, 0.1], (2, 4, 1))
        assert abs(result.value - 0.60) < 1e-12
        assert result.assignment == (0, 2, 1)

    def test_assignment_cost_set(self):
        # all six orderings of the same example, as a cross-check that the
        # reported minimum really is the smallest of them
        p = [0.7, 0.2, 0.1]
        costs = []
        for a in ((2, 4, 1), (2, 1, 4), (4, 2, 1), (4, 1, 2), (1, 2, 4), (1, 4, 2)):
            cost = sum(
                (a[j] - a[k]) ** 2 * p[j] * p[k]
                for j in range(3)
                for k in range(j + 1, 3)
            )
            costs.append(round(cost, 12))
        assert sorted(costs) == [0.60, 0.81, 0.85, 1.21, 1.41, 1.56]
        assert min(costs) == qd.min_uncertainty_assignment(p, (2, 4, 1)).value

    def test_assignment_tie_breaks_lexicographically(self):
        third = 1.0 / 3.0
        result = qd.min_uncertainty_assignment([third, third, third], (2, 4, 1))
        assert result.assignment == (0, 1, 2)

    def test_assignment_size_checked(self):
        with pytest.raises(DimensionMismatchError):
            qd.min_uncertainty_assignment([0.5, 0.5], (1, 2, 3))


class TestQubitClosedForms:
    def test_bell_state(self):
        rho = bell_state()
        assert abs(qd.local_quantum_uncertainty(rho) - 1.0) < 1e-12
        assert abs(qd.geometric_discord_qubit(rho) - 0.5) < 1e-12

    def test_product_state(self):
        rho = pure_density([1.0, 0.0], dim_b=3)
        assert qd.local_quantum_uncertainty(rho) < 1e-10

    def test_matches_pure_state_closed_form(self):
        rng = np.random.default_rng(47)
        for dim_b in (2, 3, 5):
            state = random_pure(2, dim_b, rng)
            rho = qd.DensityMatrix.from_pure(state)
            lqu = qd.local_quantum_uncertainty(rho)
            assert abs(lqu - 2.0 * qd.geometric_discord_pure(state)) < 1e-10

    def test_bounded_on_mixed_states(self):
        rng = np.random.default_rng(48)
        for _ in range(20):
            rho = random_state(2, 3, rng)
            lqu = qd.local_quantum_uncertainty(rho)
            assert 0.0 <= lqu <= 1.0 + 1e-12

    def test_requires_qubit_side(self):
        rng = np.random.default_rng(49)
        with pytest.raises(DimensionMismatchError):
            qd.local_quantum_uncertainty(random_state(3, 3, rng))

    def test_lower_bounds_sampled_scan(self):
        rng = np.random.default_rng(50)
        rho = random_state(2, 2, rng)
        lqu = qd.local_quantum_uncertainty(rho)
        bounds = qd.minimize_uncertainty(
            rho, spectrum=(1.0, -1.0), samples=400, master_seed=1
        )
        assert bounds.minimum >= lqu - 1e-9
        assert bounds.maximum >= bounds.minimum


class TestSeedDerivation:
    def test_prefix_stable(self):
        long = qd.derive_child_seeds(7, 10)
        short = qd.derive_child_seeds(7, 4)
        assert np.array_equal(long[:4], short)

    def test_deterministic(self):
        assert np.array_equal(qd.derive_child_seeds(123, 8), qd.derive_child_seeds(123, 8))

    def test_distinct_masters_differ(self):
        assert not np.array_equal(qd.derive_child_seeds(1, 8), qd.derive_child_seeds(2, 8))

    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            qd.derive_child_seeds(0, 0)


class TestUncertaintyScan:
    def test_rows_reproducible_from_recorded_seeds(self):
        rng = np.random.default_rng(51)
        rho = random_state(3, 2, rng)
        scan = qd.scan_uncertainty(rho, samples=16, master_seed=9)
        for i in (0, 7, 15):
            basis = qd.VonNeumannBasis.from_seed(3, int(scan.seeds[i]))
            assert qd.measurement_uncertainty(rho, basis) == scan.q_values[i]

    def test_objective_selection(self):
        rng = np.random.default_rng(52)
        rho = random_state(2, 2, rng)
        plain = qd.scan_uncertainty(rho, samples=8, master_seed=3)
        assert plain.u_values is None
        assert plain.values is plain.q_values
        scored = qd.scan_uncertainty(rho, spectrum=(3.0, 1.0), samples=8, master_seed=3)
        assert scored.values is scored.u_values
        assert np.array_equal(plain.q_values, scored.q_values)
        assert np.allclose(scored.u_values, 2.0 * scored.q_values, atol=1e-12)

    def test_default_qubit_spectrum_reproduces_q(self):
        rng = np.random.default_rng(53)
        rho = random_state(2, 3, rng)
        scan = qd.scan_uncertainty(
            rho, spectrum=qd.MeasurementSpectrum.default(2), samples=8, master_seed=4
        )
        assert np.allclose(scan.u_values, scan.q_values, atol=1e-12)

    def test_extrema_and_argmin(self):
        rng = np.random.default_rng(54)
        rho = random_state(2, 2, rng)
        scan = qd.scan_uncertainty(rho, samples=32, master_seed=5)
        assert scan.minimum == scan.values.min()
        assert scan.maximum == scan.values.max()
        best = qd.VonNeumannBasis.from_seed(2, scan.argmin_seed)
        assert qd.measurement_uncertainty(rho, best) == scan.minimum

    def test_csv_output(self, tmp_path):
        rng = np.random.default_rng(55)
        rho = random_state(2, 2, rng)
        scan = qd.scan_uncertainty(rho, spectrum=(1.0, -1.0), samples=4, master_seed=6)
        path = tmp_path / "scan.csv"
        scan.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "seed,Q,U"
        assert len(lines) == 5
        first = lines[1].split(",")
        assert int(first[0]) == int(scan.seeds[0])
        assert float(first[1]) == pytest.approx(scan.q_values[0], abs=1e-11)

    def test_minimize_matches_scan(self):
        rng = np.random.default_rng(56)
        rho = random_state(2, 2, rng)
        scan = qd.scan_uncertainty(rho, samples=16, master_seed=8)
        bounds = qd.minimize_uncertainty(rho, samples=16, master_seed=8)
        assert bounds == (scan.minimum, scan.maximum, scan.argmin_seed)

    def test_rejects_bad_sample_count(self):
        with pytest.raises(InvalidInputError):
            qd.scan_uncertainty(bell_state(), samples=0)

    def test_rejects_raw_arrays(self):
        with pytest.raises(InvalidInputError, match="DensityMatrix"):
            qd.scan_uncertainty(np.eye(4) / 4, samples=2)
