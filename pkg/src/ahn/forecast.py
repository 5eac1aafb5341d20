"""One-step-ahead forecasting on sliding-window deltas."""

import math
from dataclasses import dataclass

import numpy as np

from .core import compound_eval, compound_predict
from .data import Scaler, WindowSpec, make_windows
from .errors import ValidationError
from .train import train_compound
from .types import CompoundModel, Dataset, TrainConfig


@dataclass(frozen=True, eq=False)
class ForecastModel:
    """A compound trained on normalized window deltas, plus its scalers."""

    compound: CompoundModel
    x_scaler: Scaler
    y_scaler: Scaler
    window_spec: WindowSpec

    def __post_init__(self):
        w = self.window_spec.window
        if self.compound.n_features != w:
            raise ValidationError(
                f"compound expects {self.compound.n_features} features, window is {w}"
            )
        if self.x_scaler.n_columns != w:
            raise ValidationError(
                f"x_scaler has {self.x_scaler.n_columns} columns, window is {w}"
            )
        if self.y_scaler.n_columns != 1:
            raise ValidationError(
                f"y_scaler must have exactly 1 column, got {self.y_scaler.n_columns}"
            )

    @property
    def window(self):
        return self.window_spec.window


def _check_series(series, name="series"):
    s = np.asarray(series, dtype=np.float64)
    if s.ndim != 1:
        raise ValidationError(f"{name} must be 1-D, got ndim={s.ndim}")
    if not np.all(np.isfinite(s)):
        raise ValidationError(f"{name} contains non-finite values")
    return s


def level_predictions(model: ForecastModel, segment) -> np.ndarray:
    """One-step level predictions over a contiguous segment of observations.

    For every t >= window, predicts y_t from the true trailing window
    (y_{t-w}, ..., y_{t-1}): normalize, evaluate the compound, de-normalize
    the delta and add the last observed level. Returns len(segment) - window
    predictions, aligned with segment[window:].
    """
    s = _check_series(segment)
    w = model.window
    if s.size < w + 1:
        raise ValidationError(
            f"segment of length {s.size} is too short for window {w}; need >= {w + 1}"
        )
    features = np.array(np.lib.stride_tricks.sliding_window_view(s, w)[:-1])
    normalized = model.x_scaler.transform(features)
    deltas = model.y_scaler.inverse(compound_predict(model.compound, normalized), column="delta")
    return s[w - 1 : -1] + deltas


def train_forecaster(series, split_fraction, window_spec: WindowSpec, train_cfg: TrainConfig):
    """Fit a one-step forecaster on the chronological training part of a series.

    The first floor(split_fraction * T) observations are the training part;
    they are windowed, both scalers are fitted on those windows only, and the
    compound is trained on the normalized (lags, delta) rows. Returns
    (model, train_mse, report) with the training MSE measured on
    reconstructed levels in original units.
    """
    s = _check_series(series)
    f = float(split_fraction)
    if not 0.0 < f < 1.0:
        raise ValidationError(f"split_fraction must be in (0, 1), got {f}")
    w = window_spec.window
    n_train = math.floor(f * s.size)
    if n_train < w + 1:
        raise ValidationError(
            f"training part has {n_train} observations; window {w} needs >= {w + 1}"
        )
    train_series = s[:n_train]
    windows = make_windows(train_series, window_spec)
    # Constant columns scale by 1.0: a flat (sub)series is a legitimate input here.
    x_scaler = Scaler.fit(windows.x, windows.feature_names, constant_columns="unit")
    y_scaler = Scaler.fit(
        windows.y[:, np.newaxis], (windows.target_name,), constant_columns="unit"
    )
    normalized = Dataset(
        x_scaler.transform(windows.x),
        y_scaler.transform(windows.y[:, np.newaxis])[:, 0],
        windows.feature_names,
        windows.target_name,
    )
    compound, report = train_compound(normalized, train_cfg)
    model = ForecastModel(
        compound=compound, x_scaler=x_scaler, y_scaler=y_scaler, window_spec=window_spec
    )
    predictions = level_predictions(model, train_series)
    residual = train_series[w:] - predictions
    train_mse = float(np.mean(residual * residual))
    return model, train_mse, report


def predict_one_step(model: ForecastModel, last_w_values) -> float:
    """Predict the next level from exactly the last ``window`` observations."""
    v = np.asarray(last_w_values, dtype=np.float64)
    if v.ndim != 1 or v.size != model.window:
        raise ValidationError(
            f"history must hold exactly {model.window} values, got shape {v.shape}"
        )
    if not np.all(np.isfinite(v)):
        raise ValidationError("history contains non-finite values")
    normalized = model.x_scaler.transform(v)
    delta = model.y_scaler.inverse(
        compound_eval(model.compound, normalized), column="delta"
    )
    return float(v[-1] + delta)


def rolling_evaluate(model: ForecastModel, test_series):
    """Evaluate one-step predictions over a test series.

    Each step predicts from the true trailing window (never from earlier
    predictions), so the first ``window`` points have no prediction. Returns
    (predictions aligned with test_series[window:], MSE in original units).
    """
    s = _check_series(test_series, name="test series")
    w = model.window
    if s.size < w + 1:
        raise ValidationError(
            f"test series of length {s.size} is too short for window {w}; need >= {w + 1}"
        )
    predictions = level_predictions(model, s)
    residual = s[w:] - predictions
    return predictions, float(np.mean(residual * residual))


def persistence_mse(test_series, window) -> float:
    """MSE of the zero-delta baseline (predict y_t = y_{t-1}) on the same steps."""
    s = _check_series(test_series, name="test series")
    w = int(window)
    if s.size < w + 1:
        raise ValidationError(
            f"test series of length {s.size} is too short for window {w}; need >= {w + 1}"
        )
    diffs = s[w:] - s[w - 1 : -1]
    return float(np.mean(diffs * diffs))
