"""CSV ingestion, scaling, splitting and window construction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ahn
from ahn.data import Scaler
from ahn.errors import DataError, NoRowsError, ValidationError
from helpers import write_csv


class TestLoadCsv:
    def test_small_file(self, tmp_path):
        path = tmp_path / "data.csv"
        write_csv(path, ["x", "y"], [[1, 2], [3, 4], [5, 6]])
        data = ahn.load_csv(path, ["x"], "y")
        assert data.n_rows == 3 and data.n_features == 1
        np.testing.assert_array_equal(data.x[:, 0], [1.0, 3.0, 5.0])
        np.testing.assert_array_equal(data.y, [2.0, 4.0, 6.0])

    def test_non_numeric_cell_cites_row_and_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        rows = [[i, i * 2] for i in range(1, 7)] + [["oops", 14]] + [[8, 16]]
        write_csv(path, ["x", "y"], rows)
        with pytest.raises(DataError, match=r"row 7.*'x'"):
            ahn.load_csv(path, ["x"], "y")

    def test_missing_cell_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n1,\n", encoding="utf-8")
        with pytest.raises(DataError, match=r"row 1.*'y'"):
            ahn.load_csv(path, ["x"], "y")

    def test_non_finite_cell_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        write_csv(path, ["x", "y"], [[1, "nan"]])
        with pytest.raises(DataError, match="non-finite"):
            ahn.load_csv(path, ["x"], "y")

    def test_missing_column_named(self, tmp_path):
        path = tmp_path / "data.csv"
        write_csv(path, ["x", "y"], [[1, 2]])
        with pytest.raises(DataError, match="target"):
            ahn.load_csv(path, ["x"], "target")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            ahn.load_csv(tmp_path / "nope.csv", ["x"], "y")

    def test_header_only_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("x,y\n", encoding="utf-8")
        with pytest.raises(NoRowsError):
            ahn.load_csv(path, ["x"], "y")

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("x,y\n1,2\n\n3,4\n", encoding="utf-8")
        data = ahn.load_csv(path, ["x"], "y")
        assert data.n_rows == 2

    def test_power_plant_shape(self, tmp_path):
        path = tmp_path / "plant.csv"
        rng = np.random.default_rng(0)
        rows = [
            [20.0 + rng.normal(), 1010.0 + rng.normal(), 450.0 + rng.normal()]
            for _ in range(12)
        ]
        write_csv(path, ["temperature", "relative_humidity", "energy_power"], rows)
        data = ahn.load_csv(path, ["temperature", "relative_humidity"], "energy_power")
        assert data.n_features == 2
        assert data.feature_names == ("temperature", "relative_humidity")
        assert data.target_name == "energy_power"


class TestScaler:
    def test_hand_computed_stats(self):
        scaler = Scaler.fit(np.array([[1.0], [2.0], [3.0]]), ("x",))
        assert scaler.means[0] == 2.0
        assert scaler.stds[0] == 1.0
        np.testing.assert_array_equal(
            scaler.transform(np.array([[1.0], [2.0], [3.0]]))[:, 0], [-1.0, 0.0, 1.0]
        )

    def test_round_trip(self):
        rng = np.random.default_rng(1)
        values = rng.normal(size=(50, 4)) * 3 + 1
        scaler = Scaler.fit(values, ("a", "b", "c", "d"))
        back = scaler.inverse(scaler.transform(values))
        np.testing.assert_allclose(back, values, atol=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_round_trip_property(self, seed):
        rng = np.random.default_rng(seed)
        values = rng.uniform(-100, 100, size=(rng.integers(2, 40), rng.integers(1, 5)))
        if np.any(np.ptp(values, axis=0) == 0.0):
            return
        names = tuple(f"c{i}" for i in range(values.shape[1]))
        scaler = Scaler.fit(values, names)
        back = scaler.inverse(scaler.transform(values))
        np.testing.assert_allclose(back, values, rtol=1e-12, atol=1e-12)

    def test_matches_two_pass_oracle(self):
        rng = np.random.default_rng(2)
        values = rng.normal(size=(101, 30)) * rng.uniform(0.5, 4.0, size=30)
        names = tuple(f"c{i}" for i in range(30))
        scaler = Scaler.fit(values, names)
        for c in range(30):
            column = values[:, c]
            mean = sum(column) / len(column)
            var = sum((v - mean) ** 2 for v in column) / (len(column) - 1)
            assert abs(scaler.means[c] - mean) <= 1e-12
            assert abs(scaler.stds[c] - np.sqrt(var)) <= 1e-12

    def test_constant_column_rejected(self):
        with pytest.raises(DataError, match="flat"):
            Scaler.fit(np.array([[1.0, 5.0], [2.0, 5.0]]), ("x", "flat"))

    def test_constant_column_unit_mode(self):
        scaler = Scaler.fit(np.array([[1.0], [1.0]]), ("x",), constant_columns="unit")
        assert scaler.stds[0] == 1.0
        np.testing.assert_array_equal(scaler.transform(np.array([[1.0]])), [[0.0]])

    def test_stats_frozen_after_fit(self):
        train = np.random.default_rng(3).normal(size=(20, 2))
        scaler = Scaler.fit(train, ("a", "b"))
        means, stds = scaler.means.copy(), scaler.stds.copy()
        scaler.transform(np.random.default_rng(4).normal(size=(30, 2)) * 100)
        np.testing.assert_array_equal(scaler.means, means)
        np.testing.assert_array_equal(scaler.stds, stds)
        with pytest.raises(ValueError):
            scaler.means[0] = 99.0

    def test_dataset_level_ops(self):
        data = ahn.Dataset([[1.0], [2.0], [3.0]], [10.0, 20.0, 30.0], ("x",), "y")
        scaler = ahn.fit_scaler(data)
        assert scaler.column_names == ("x", "y")
        scaled = ahn.apply_scaler(scaler, data)
        np.testing.assert_array_equal(scaled.x[:, 0], [-1.0, 0.0, 1.0])
        np.testing.assert_array_equal(scaled.y, [-1.0, 0.0, 1.0])
        np.testing.assert_allclose(
            ahn.invert_scaler(scaler, scaled.y, "y"), data.y, atol=1e-12
        )

    def test_apply_requires_matching_columns(self):
        data = ahn.Dataset([[1.0], [2.0]], [1.0, 2.0], ("x",), "y")
        other = ahn.Dataset([[1.0], [2.0]], [1.0, 2.0], ("z",), "y")
        scaler = ahn.fit_scaler(data)
        with pytest.raises(ValidationError):
            ahn.apply_scaler(scaler, other)

    def test_unknown_column_in_invert(self):
        scaler = Scaler.fit(np.array([[1.0], [2.0]]), ("x",))
        with pytest.raises(ValidationError):
            ahn.invert_scaler(scaler, [1.0], "nope")


class TestSplit:
    @staticmethod
    def dataset(n):
        return ahn.Dataset(
            np.arange(n, dtype=float)[:, np.newaxis], np.arange(n, dtype=float) * 2,
            ("x",), "y",
        )

    def test_chronological(self):
        train, test = ahn.split(self.dataset(10), 0.7, mode="chronological")
        np.testing.assert_array_equal(train.x[:, 0], np.arange(7))
        np.testing.assert_array_equal(test.x[:, 0], np.arange(7, 10))

    def test_paper_sized_split(self):
        train, test = ahn.split(self.dataset(221), 0.706, mode="chronological")
        assert train.n_rows == 156
        assert test.n_rows == 65

    def test_random_is_seed_deterministic(self):
        data = self.dataset(50)
        a_train, a_test = ahn.split(data, 0.8, seed=9, mode="random")
        b_train, b_test = ahn.split(data, 0.8, seed=9, mode="random")
        np.testing.assert_array_equal(a_train.x, b_train.x)
        np.testing.assert_array_equal(a_test.x, b_test.x)

    def test_random_partitions_rows(self):
        data = self.dataset(23)
        train, test = ahn.split(data, 0.6, seed=5, mode="random")
        assert train.n_rows == 13 and test.n_rows == 10
        together = np.concatenate([train.x[:, 0], test.x[:, 0]])
        np.testing.assert_array_equal(np.sort(together), np.arange(23))

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.2, 1.5])
    def test_bad_fraction(self, fraction):
        with pytest.raises(ValidationError):
            ahn.split(self.dataset(10), fraction)

    def test_empty_side_rejected(self):
        with pytest.raises(ValidationError):
            ahn.split(self.dataset(2), 0.1)

    def test_unknown_mode(self):
        with pytest.raises(ValidationError):
            ahn.split(self.dataset(10), 0.5, mode="sideways")


class TestMakeWindows:
    def test_minimal_series(self):
        data = ahn.make_windows([1.0, 2.0, 3.0, 4.0], ahn.WindowSpec(window=3))
        assert data.n_rows == 1
        np.testing.assert_array_equal(data.x[0], [1.0, 2.0, 3.0])
        assert data.y[0] == 1.0
        assert data.feature_names == ("lag_2", "lag_1", "lag_0")
        assert data.target_name == "delta"

    def test_constant_series_zero_targets(self):
        data = ahn.make_windows(np.full(9, 3.25), ahn.WindowSpec(window=2))
        np.testing.assert_array_equal(data.y, np.zeros(7))

    def test_row_count_and_reconstruction(self):
        t = np.arange(221)
        series = 10.0 + np.sin(0.3 * t)
        data = ahn.make_windows(series, ahn.WindowSpec(window=3))
        assert data.n_rows == 218
        reconstructed = data.x[:, -1] + data.y
        np.testing.assert_array_equal(reconstructed, series[3:])

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.floats(1.0, 2.0), min_size=3, max_size=40),
           st.integers(1, 4))
    def test_reconstruction_identity_property(self, values, window):
        series = np.asarray(values)
        if series.size < window + 1:
            return
        data = ahn.make_windows(series, ahn.WindowSpec(window=window))
        np.testing.assert_array_equal(data.x[:, -1] + data.y, series[window:])

    def test_too_short(self):
        with pytest.raises(ValidationError):
            ahn.make_windows([1.0, 2.0, 3.0], ahn.WindowSpec(window=3))

    def test_window_spec_validation(self):
        with pytest.raises(ValidationError):
            ahn.WindowSpec(window=0)
        with pytest.raises(ValidationError):
            ahn.WindowSpec(window=3, target_mode="level")
