"""Command-line surface: fit, predict, summary, visualize, forecast, grid-search.

Exit codes: 0 on success, 1 on user or data errors, 2 on internal failures.
Data goes to stdout (or ``--output``), diagnostics to stderr. All output
files are written atomically. Every random choice flows from ``--seed``
(default 123); nothing reads wall-clock entropy.
"""

import argparse
import csv
import math
import sys
import traceback

import numpy as np

from .core import compound_predict
from .data import WindowSpec, load_csv, load_table
from .errors import AHNError, DataError, NoRowsError, ValidationError
from .forecast import (
    ForecastModel,
    level_predictions,
    persistence_mse,
    rolling_evaluate,
    train_forecaster,
)
from .io import export_dot, load_model, save_model, summary_text, write_text_atomic
from .train import grid_search, train_compound
from .types import Dataset, TrainConfig

DEFAULT_MOLECULES = 5
DEFAULT_LEARNING_RATE = 0.01
DEFAULT_MAX_ITER = 2000
DEFAULT_SEED = 123
DEFAULT_TOLERANCE = 1e-7


def sine_demo() -> Dataset:
    """Bundled demo: x1 = cos(t), x2 = t, y = sin(t) for t in [0, 15] step 0.01."""
    t = np.linspace(0.0, 15.0, 1501)
    return Dataset(np.column_stack([np.cos(t), t]), np.sin(t), ("x1", "x2"), "y")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 1 on usage errors (user errors)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _comma_list(text):
    return [part.strip() for part in str(text).split(",") if part.strip()]


def _add_train_flags(parser):
    parser.add_argument("--molecules", type=int, default=DEFAULT_MOLECULES,
                        help=f"number of molecules (default {DEFAULT_MOLECULES})")
    parser.add_argument("--learning-rate", type=float, default=DEFAULT_LEARNING_RATE,
                        help=f"learning rate in (0, 1) (default {DEFAULT_LEARNING_RATE})")
    _add_shared_train_flags(parser)


def _add_shared_train_flags(parser):
    parser.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER,
                        help=f"maximum training iterations (default {DEFAULT_MAX_ITER})")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"random seed (default {DEFAULT_SEED})")
    parser.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                        help=f"error-plateau stop tolerance (default {DEFAULT_TOLERANCE})")


def build_parser():
    parser = _Parser(prog="ahn", description="Artificial hydrocarbon network models")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fit = sub.add_parser("fit", help="train a compound on CSV data and save it")
    fit.add_argument("--input", help="training CSV file")
    fit.add_argument("--features", help="comma-separated feature column names")
    fit.add_argument("--target", help="target column name")
    fit.add_argument("--demo", choices=["sine"], help="train on a bundled demo dataset")
    fit.add_argument("--output", required=True, help="path of the model document to write")
    _add_train_flags(fit)
    fit.set_defaults(func=cmd_fit)

    predict = sub.add_parser("predict", help="predict with a saved model")
    predict.add_argument("--model", required=True, help="model document")
    predict.add_argument("--input", required=True, help="CSV file with the model's feature columns")
    predict.add_argument("--output", help="write predictions here instead of stdout")
    predict.add_argument("--target", help="target column (needed for --mse)")
    predict.add_argument("--mse", action="store_true",
                         help="also report mean squared error against --target")
    predict.set_defaults(func=cmd_predict)

    summary = sub.add_parser("summary", help="print a trained model's summary")
    summary.add_argument("--model", required=True, help="model document")
    summary.set_defaults(func=cmd_summary)

    visualize = sub.add_parser("visualize", help="print the network structure as DOT")
    visualize.add_argument("--model", required=True, help="model document")
    visualize.add_argument("--output", help="write DOT here instead of stdout")
    visualize.set_defaults(func=cmd_visualize)

    forecast = sub.add_parser("forecast", help="train and evaluate a one-step forecaster")
    forecast.add_argument("--input", required=True, help="CSV file holding the series")
    forecast.add_argument("--target", required=True, help="series column name")
    forecast.add_argument("--window", type=int, default=3, help="window size (default 3)")
    forecast.add_argument("--split", type=float, default=0.7,
                          help="training fraction (default 0.7)")
    forecast.add_argument("--split-mode", default="chronological",
                          choices=["chronological"],
                          help="forecasting always splits chronologically")
    forecast.add_argument("--output", help="write per-step predictions CSV here")
    _add_train_flags(forecast)
    forecast.set_defaults(func=cmd_forecast)

    grid = sub.add_parser("grid-search", help="cross-validated hyperparameter grid")
    grid.add_argument("--input", required=True, help="training CSV file")
    grid.add_argument("--features", required=True, help="comma-separated feature columns")
    grid.add_argument("--target", required=True, help="target column name")
    grid.add_argument("--molecules", default=str(DEFAULT_MOLECULES),
                      help="comma-separated molecule counts (default 5)")
    grid.add_argument("--learning-rate", default=str(DEFAULT_LEARNING_RATE),
                      help="comma-separated learning rates (default 0.01)")
    grid.add_argument("--folds", type=int, default=5, help="cross-validation folds (default 5)")
    grid.add_argument("--max-iter", dest="max_iter", type=int, default=200,
                      help="training iterations per fold (default 200)")
    grid.add_argument("--seed", type=int, default=DEFAULT_SEED,
                      help=f"random seed (default {DEFAULT_SEED})")
    grid.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                      help=f"error-plateau stop tolerance (default {DEFAULT_TOLERANCE})")
    grid.set_defaults(func=cmd_grid_search)

    return parser


def _training_config(args, n_molecules=None, learning_rate=None):
    return TrainConfig(
        n_molecules=args.molecules if n_molecules is None else n_molecules,
        learning_rate=args.learning_rate if learning_rate is None else learning_rate,
        max_iterations=args.max_iter,
        seed=args.seed,
        error_tolerance=args.tolerance,
    )


def _emit(text, output_path):
    if output_path:
        write_text_atomic(output_path, text)
    else:
        sys.stdout.write(text)


def cmd_fit(args):
    if args.demo and args.input:
        raise ValidationError("use either --demo or --input, not both")
    if args.demo:
        data = sine_demo()
    else:
        if not (args.input and args.features and args.target):
            raise ValidationError("fit needs --input, --features and --target (or --demo sine)")
        data = load_csv(args.input, _comma_list(args.features), args.target)
    model, _ = train_compound(data, _training_config(args))
    save_model(model, args.output)
    sys.stdout.write(summary_text(model))
    return 0


def _csv_header(path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            header = next(csv.reader(fh), None)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if header is None:
        raise DataError(f"{path}: file is empty")
    return [h.strip() for h in header]


def cmd_predict(args):
    model = load_model(args.model)
    if isinstance(model, ForecastModel):
        raise ValidationError(
            "model kind 'forecast' is not supported by predict; use the forecast subcommand"
        )
    header = _csv_header(args.input)
    missing = [name for name in model.feature_names if name not in header]
    if missing:
        raise ValidationError(
            f"model features {list(model.feature_names)} do not match CSV columns "
            f"{header}; missing: {missing}"
        )
    try:
        table = load_table(args.input, model.feature_names)
    except NoRowsError:
        _emit("prediction\n", args.output)
        return 0
    predictions = compound_predict(model, table)
    text = "prediction\n" + "".join(f"{repr(float(v))}\n" for v in predictions)
    _emit(text, args.output)
    if args.mse:
        if not args.target:
            raise ValidationError("--mse needs --target")
        actual = load_table(args.input, [args.target])[:, 0]
        mse = float(np.mean((actual - predictions) ** 2))
        stream = sys.stdout if args.output else sys.stderr
        stream.write(f"mse={repr(mse)}\n")
    return 0


def _compound_of(model):
    return model.compound if isinstance(model, ForecastModel) else model


def cmd_summary(args):
    sys.stdout.write(summary_text(_compound_of(load_model(args.model))))
    return 0


def cmd_visualize(args):
    _emit(export_dot(_compound_of(load_model(args.model))), args.output)
    return 0


def cmd_forecast(args):
    series = load_table(args.input, [args.target])[:, 0]
    spec = WindowSpec(window=args.window)
    cfg = _training_config(args)
    model, train_mse, _ = train_forecaster(series, args.split, spec, cfg)
    n_train = math.floor(args.split * series.size)
    test = series[n_train:]
    predictions, test_mse = rolling_evaluate(model, test)
    baseline = persistence_mse(test, spec.window)
    sys.stdout.write(f"train_mse={repr(train_mse)}\n")
    sys.stdout.write(f"test_mse={repr(test_mse)}\n")
    sys.stdout.write(f"persistence_mse={repr(baseline)}\n")
    if args.output:
        w = spec.window
        train_predictions = level_predictions(model, series[:n_train])
        lines = ["t,actual,predicted,split"]
        for i, value in enumerate(train_predictions):
            t = w + i
            lines.append(f"{t},{repr(float(series[t]))},{repr(float(value))},train")
        for i, value in enumerate(predictions):
            t = n_train + w + i
            lines.append(f"{t},{repr(float(series[t]))},{repr(float(value))},test")
        write_text_atomic(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_grid_search(args):
    data = load_csv(args.input, _comma_list(args.features), args.target)
    try:
        m_values = [int(v) for v in _comma_list(args.molecules)]
        eta_values = [float(v) for v in _comma_list(args.learning_rate)]
    except ValueError as exc:
        raise ValidationError(f"bad grid candidates: {exc}") from None
    best, cells = grid_search(
        data,
        m_values,
        eta_values,
        folds=args.folds,
        seed=args.seed,
        max_iterations=args.max_iter,
        error_tolerance=args.tolerance,
    )
    lines = ["n_molecules,learning_rate,mean_mse"]
    for cell in cells:
        lines.append(f"{cell.n_molecules},{cell.learning_rate:g},{repr(cell.mean_mse)}")
    sys.stdout.write("\n".join(lines) + "\n")
    sys.stderr.write(
        f"best: --molecules {best.n_molecules} --learning-rate {best.learning_rate:g}\n"
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AHNError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except Exception:
        traceback.print_exc()
        sys.stderr.write("internal error\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
