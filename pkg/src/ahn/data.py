"""Dataset ingestion, standardization, splitting and window construction."""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, NoRowsError, ValidationError
from .types import Dataset, _freeze


@dataclass(frozen=True, eq=False)
class Scaler:
    """Per-column center/scale statistics with forward and inverse transforms."""

    means: np.ndarray
    stds: np.ndarray
    column_names: tuple

    def __post_init__(self):
        means = _freeze(self.means)
        stds = _freeze(self.stds)
        names = tuple(str(s) for s in self.column_names)
        if means.ndim != 1 or means.shape != stds.shape or means.size != len(names):
            raise ValidationError("scaler means/stds/column_names lengths do not match")
        if not np.all(np.isfinite(means)) or not np.all(np.isfinite(stds)):
            raise ValidationError("scaler statistics must be finite")
        if np.any(stds <= 0.0):
            raise ValidationError("scaler stds must be > 0")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stds", stds)
        object.__setattr__(self, "column_names", names)

    @classmethod
    def fit(cls, values, column_names, constant_columns="error"):
        """Estimate per-column mean and sample (N-1) standard deviation.

        ``constant_columns`` controls what a zero-range column does: ``"error"``
        rejects it, ``"unit"`` keeps it with scale 1.0 (centering only).
        """
        a = np.asarray(values, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] < 1:
            raise ValidationError("scaler input must be a non-empty 2-D matrix")
        names = tuple(str(s) for s in column_names)
        if len(names) != a.shape[1]:
            raise ValidationError(f"expected {a.shape[1]} column names, got {len(names)}")
        flat_range = np.ptp(a, axis=0)
        constant = np.nonzero(flat_range == 0.0)[0]
        if constant.size and constant_columns == "error":
            bad = ", ".join(names[i] for i in constant)
            raise DataError(
                f"column(s) {bad} are constant (std = 0); drop them before scaling"
            )
        means = a.mean(axis=0)
        stds = a.std(axis=0, ddof=1) if a.shape[0] > 1 else np.zeros(a.shape[1])
        stds = stds.copy()
        stds[flat_range == 0.0] = 1.0
        return cls(means=means, stds=stds, column_names=names)

    @property
    def n_columns(self):
        return len(self.column_names)

    def _column_index(self, column):
        try:
            return self.column_names.index(column)
        except ValueError:
            raise ValidationError(
                f"unknown column {column!r}; scaler knows {list(self.column_names)}"
            ) from None

    def transform(self, values):
        """Standardize values: (v - mean) / std, column-wise.

        Accepts an (N, c) matrix or a length-c vector (treated as one row).
        """
        a = np.asarray(values, dtype=np.float64)
        width = a.shape[-1] if a.ndim in (1, 2) else -1
        if width != self.n_columns:
            raise ValidationError(
                f"expected {self.n_columns} columns, got input shape {a.shape}"
            )
        return (a - self.means) / self.stds

    def inverse(self, values, column=None):
        """Undo the transform: v * std + mean.

        With ``column`` given, applies that single column's statistics to
        values of any shape; otherwise expects full-width rows.
        """
        a = np.asarray(values, dtype=np.float64)
        if column is not None:
            i = self._column_index(column)
            return a * self.stds[i] + self.means[i]
        width = a.shape[-1] if a.ndim in (1, 2) else -1
        if width != self.n_columns:
            raise ValidationError(
                f"expected {self.n_columns} columns, got input shape {a.shape}"
            )
        return a * self.stds + self.means


def fit_scaler(data: Dataset) -> Scaler:
    """Fit a scaler over all columns of a dataset (features and target).

    Fit on the training split only; applying the scaler never re-estimates
    its statistics.
    """
    values = np.column_stack([data.x, data.y])
    names = data.feature_names + (data.target_name,)
    return Scaler.fit(values, names)


def apply_scaler(scaler: Scaler, data: Dataset) -> Dataset:
    """Standardize every column of a dataset with a fitted scaler."""
    expected = data.feature_names + (data.target_name,)
    if scaler.column_names != expected:
        raise ValidationError(
            f"scaler columns {list(scaler.column_names)} do not match dataset "
            f"columns {list(expected)}"
        )
    values = scaler.transform(np.column_stack([data.x, data.y]))
    return Dataset(values[:, :-1], values[:, -1], data.feature_names, data.target_name)


def invert_scaler(scaler: Scaler, values, column):
    """Map standardized values of one named column back to original units."""
    return scaler.inverse(values, column=column)


def load_table(path, columns):
    """Read named numeric columns from a CSV file into an (N, c) matrix.

    Comma-separated, header row required, UTF-8, '.' decimal point. Any
    missing or non-numeric cell is rejected with its data row number
    (1-based, header excluded) and column name.
    """
    columns = [str(c) for c in columns]
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: file is empty")
        header = [h.strip() for h in header]
        missing = [c for c in columns if c not in header]
        if missing:
            raise DataError(
                f"{path}: missing column(s) {', '.join(missing)}; "
                f"file has {', '.join(header)}"
            )
        positions = [header.index(c) for c in columns]
        rows = []
        for row_number, row in enumerate(reader, start=1):
            if not row:
                continue  # blank line
            if len(row) != len(header):
                raise DataError(
                    f"{path}: row {row_number} has {len(row)} cells, "
                    f"expected {len(header)}"
                )
            values = []
            for col, pos in zip(columns, positions):
                cell = row[pos].strip()
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}: row {row_number}, column '{col}': "
                        f"cannot parse {cell!r} as a number"
                    ) from None
                if not math.isfinite(value):
                    raise DataError(
                        f"{path}: row {row_number}, column '{col}': "
                        f"non-finite value {cell!r}"
                    )
                values.append(value)
            rows.append(values)
    if not rows:
        raise NoRowsError(f"{path}: no data rows")
    return np.array(rows, dtype=np.float64)


def load_csv(path, feature_columns, target_column) -> Dataset:
    """Load a CSV file into a Dataset with the named features and target."""
    feature_columns = [str(c) for c in feature_columns]
    table = load_table(path, feature_columns + [str(target_column)])
    return Dataset(table[:, :-1], table[:, -1], tuple(feature_columns), str(target_column))


def split(data: Dataset, train_fraction, seed=123, mode="random"):
    """Split a dataset into (train, test).

    ``random`` draws a seeded permutation; ``chronological`` takes the first
    floor(fraction * N) rows as train, preserving order. Either way the train
    part has floor(fraction * N) rows.
    """
    f = float(train_fraction)
    if not 0.0 < f < 1.0:
        raise ValidationError(f"train_fraction must be in (0, 1), got {f}")
    n_train = math.floor(f * data.n_rows)
    if n_train < 1 or n_train >= data.n_rows:
        raise ValidationError(
            f"fraction {f} leaves an empty split for {data.n_rows} rows"
        )
    if mode == "chronological":
        train_idx = np.arange(n_train)
        test_idx = np.arange(n_train, data.n_rows)
    elif mode == "random":
        perm = np.random.default_rng(seed).permutation(data.n_rows)
        train_idx = perm[:n_train]
        test_idx = np.sort(perm[n_train:])
    else:
        raise ValidationError(f"unknown split mode {mode!r}; use 'random' or 'chronological'")
    return data.select(train_idx), data.select(test_idx)


@dataclass(frozen=True)
class WindowSpec:
    """Sliding-window layout for one-step-ahead forecasting."""

    window: int = 3
    target_mode: str = "delta"  # predict y_{t+1} - y_t

    def __post_init__(self):
        if not isinstance(self.window, (int, np.integer)) or self.window < 1:
            raise ValidationError(f"window must be an integer >= 1, got {self.window!r}")
        object.__setattr__(self, "window", int(self.window))
        if self.target_mode != "delta":
            raise ValidationError(f"unsupported target mode {self.target_mode!r}")

    @property
    def feature_names(self):
        return tuple(f"lag_{i}" for i in range(self.window - 1, -1, -1))


def make_windows(series, spec: WindowSpec) -> Dataset:
    """Turn a series into lagged feature rows with one-step-delta targets.

    Row t holds features (y_{t-w+1}, ..., y_t), oldest first, with target
    y_{t+1} - y_t. A series of length T yields T - w rows; adding each
    target back onto its last feature reproduces the series.
    """
    s = np.asarray(series, dtype=np.float64)
    if s.ndim != 1:
        raise ValidationError(f"series must be 1-D, got ndim={s.ndim}")
    if not np.all(np.isfinite(s)):
        raise ValidationError("series contains non-finite values")
    w = spec.window
    if s.size < w + 1:
        raise ValidationError(
            f"series of length {s.size} is too short for window {w}; need >= {w + 1}"
        )
    features = np.array(np.lib.stride_tricks.sliding_window_view(s, w)[:-1])
    targets = s[w:] - s[w - 1 : -1]
    return Dataset(features, targets, spec.feature_names, "delta")
