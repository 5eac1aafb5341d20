"""Domain type validation and invariants."""

import numpy as np
import pytest

import ahn
from ahn.errors import ValidationError
from ahn.types import chain_hydrogen_counts
from helpers import make_chain


def molecule(k=2, n=1, sigma=0.0):
    return ahn.Molecule(k, sigma, np.zeros((k, n)), np.zeros(n))


class TestMolecule:
    def test_valid_construction(self):
        mol = ahn.Molecule(2, 1.0, [[2.0], [3.0]], [0.5])
        assert mol.n_features == 1
        np.testing.assert_array_equal(mol.params, [1.0, 2.0, 3.0])

    @pytest.mark.parametrize("k", [0, 5, -1, 2.5, "3"])
    def test_bad_hydrogen_count(self, k):
        with pytest.raises(ValidationError):
            ahn.Molecule(k, 0.0, np.zeros((2, 1)), np.zeros(1))

    def test_coeff_shape_must_match(self):
        with pytest.raises(ValidationError):
            ahn.Molecule(2, 0.0, np.zeros((3, 1)), np.zeros(1))
        with pytest.raises(ValidationError):
            ahn.Molecule(2, 0.0, np.zeros((2, 2)), np.zeros(1))

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            ahn.Molecule(1, np.nan, np.zeros((1, 1)), np.zeros(1))
        with pytest.raises(ValidationError):
            ahn.Molecule(1, 0.0, [[np.inf]], np.zeros(1))
        with pytest.raises(ValidationError):
            ahn.Molecule(1, 0.0, np.zeros((1, 1)), [np.nan])

    def test_params_layout_is_feature_major(self):
        mol = ahn.Molecule(2, 9.0, [[1.0, 3.0], [2.0, 4.0]], [0.0, 0.0])
        # [sigma, x1^1, x1^2, x2^1, x2^2]
        np.testing.assert_array_equal(mol.params, [9.0, 1.0, 2.0, 3.0, 4.0])

    def test_arrays_read_only(self):
        mol = molecule()
        with pytest.raises(ValueError):
            mol.center[0] = 1.0
        with pytest.raises(ValueError):
            mol.hydrogen_coeffs[0, 0] = 1.0


class TestCompoundModel:
    def test_chain_counts(self):
        assert chain_hydrogen_counts(2) == (3, 3)
        assert chain_hydrogen_counts(5) == (3, 2, 2, 2, 3)
        with pytest.raises(ValidationError):
            chain_hydrogen_counts(1)

    def test_valid_chain(self):
        model = make_chain(np.zeros((4, 2)))
        assert [m.hydrogen_count for m in model.molecules] == [3, 2, 2, 3]
        assert model.n_molecules == 4

    def test_wrong_topology_rejected(self):
        mols = (molecule(2), molecule(2), molecule(3))
        with pytest.raises(ValidationError):
            ahn.CompoundModel(mols, ("x1",), 0.01, 0.0, 1)

    def test_single_molecule_rejected(self):
        with pytest.raises(ValidationError):
            ahn.CompoundModel((molecule(3),), ("x1",), 0.01, 0.0, 1)

    def test_feature_count_mismatch_rejected(self):
        mols = (molecule(3, n=1), molecule(3, n=2))
        with pytest.raises(ValidationError):
            ahn.CompoundModel(mols, ("x1",), 0.01, 0.0, 1)

    @pytest.mark.parametrize("eta", [0.0, 1.0, -0.5, np.nan])
    def test_learning_rate_bounds(self, eta):
        mols = (molecule(3), molecule(3))
        with pytest.raises(ValidationError):
            ahn.CompoundModel(mols, ("x1",), eta, 0.0, 1)

    def test_padded_params_layout(self):
        mol_a = ahn.Molecule(3, 1.0, [[2.0], [3.0], [4.0]], [0.0])
        mol_b = ahn.Molecule(3, -1.0, [[5.0], [6.0], [7.0]], [1.0])
        model = ahn.CompoundModel((mol_a, mol_b), ("x1",), 0.1, 0.0, 1)
        np.testing.assert_array_equal(
            model.padded_params(), [[1.0, 2.0, 3.0, 4.0], [-1.0, 5.0, 6.0, 7.0]]
        )


class TestDataset:
    def test_basic(self):
        data = ahn.Dataset([[1.0], [2.0]], [3.0, 4.0], ("x",), "y")
        assert data.n_rows == 2 and data.n_features == 1

    def test_row_mismatch(self):
        with pytest.raises(ValidationError):
            ahn.Dataset([[1.0]], [1.0, 2.0], ("x",), "y")

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            ahn.Dataset(np.empty((0, 1)), np.empty(0), ("x",), "y")

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            ahn.Dataset([[np.nan]], [1.0], ("x",), "y")
        with pytest.raises(ValidationError):
            ahn.Dataset([[1.0]], [np.inf], ("x",), "y")

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValidationError):
            ahn.Dataset([[1.0, 2.0]], [1.0], ("x", "x"), "y")
        with pytest.raises(ValidationError):
            ahn.Dataset([[1.0]], [1.0], ("y",), "y")

    def test_select_preserves_order(self):
        data = ahn.Dataset([[1.0], [2.0], [3.0]], [1.0, 2.0, 3.0], ("x",), "y")
        sub = data.select([2, 0])
        np.testing.assert_array_equal(sub.x[:, 0], [3.0, 1.0])
        np.testing.assert_array_equal(sub.y, [3.0, 1.0])

    def test_immutable(self):
        data = ahn.Dataset([[1.0]], [1.0], ("x",), "y")
        with pytest.raises(ValueError):
            data.x[0, 0] = 5.0


class TestTrainConfig:
    def test_defaults(self):
        cfg = ahn.TrainConfig()
        assert cfg.n_molecules == 5
        assert cfg.learning_rate == 0.01
        assert cfg.max_iterations == 2000
        assert cfg.seed == 123
        assert cfg.error_tolerance == 1e-7
        assert cfg.relocation_fraction == 0.05

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n_molecules": 1},
            {"learning_rate": 0.0},
            {"learning_rate": 1.0},
            {"max_iterations": 0},
            {"seed": -1},
            {"error_tolerance": -1e-9},
            {"relocation_fraction": -0.1},
        ],
    )
    def test_bounds(self, kwargs):
        with pytest.raises(ValidationError):
            ahn.TrainConfig(**kwargs)


class TestMixture:
    def test_weight_length_mismatch(self):
        comp = make_chain(np.zeros((2, 1)))
        with pytest.raises(ValidationError):
            ahn.Mixture((comp,), [1.0, 2.0])

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            ahn.Mixture((), [])


class TestTrainReport:
    def test_history_length_checked(self):
        with pytest.raises(ValidationError):
            ahn.TrainReport(3, np.zeros(2), 0.0, np.zeros(2), False, "max-iter",
                            (False, False), 1)

    def test_unknown_reason_rejected(self):
        with pytest.raises(ValidationError):
            ahn.TrainReport(1, np.zeros(2), 0.0, np.zeros(1), False, "because",
                            (False, False), 1)
