"""Artificial hydrocarbon networks.

Piecewise-polynomial supervised regression built from chemically-inspired
"molecules": local polynomials owning the region around their centers,
trained by alternating nearest-center partitioning, per-molecule least
squares and gradient center updates. Includes data preparation, one-step
time-series forecasting, model persistence and a CLI (``ahn``).
"""

from .backend import backend_name
from .core import (
    compound_eval,
    compound_predict,
    design_row,
    fit_molecule_lse,
    mixture_eval,
    molecule_eval,
    overall_error,
    partition,
)
from .data import (
    Scaler,
    WindowSpec,
    apply_scaler,
    fit_scaler,
    invert_scaler,
    load_csv,
    load_table,
    make_windows,
    split,
)
from .errors import (
    AHNError,
    DataError,
    EmptySubsetError,
    ModelFormatError,
    NoRowsError,
    NumericError,
    SchemaError,
    TrainingError,
    ValidationError,
    VersionMismatchError,
)
from .forecast import (
    ForecastModel,
    level_predictions,
    persistence_mse,
    predict_one_step,
    rolling_evaluate,
    train_forecaster,
)
from .io import export_dot, load_model, save_model, summary_text
from .train import (
    GridCell,
    grid_search,
    relocate_empty_centers,
    train_compound,
    update_centers,
)
from .types import (
    CompoundModel,
    Dataset,
    Mixture,
    Molecule,
    TrainConfig,
    TrainReport,
    chain_hydrogen_counts,
)

__version__ = "0.1.0"

__all__ = [
    "AHNError",
    "CompoundModel",
    "DataError",
    "Dataset",
    "EmptySubsetError",
    "ForecastModel",
    "GridCell",
    "Mixture",
    "ModelFormatError",
    "Molecule",
    "NoRowsError",
    "NumericError",
    "Scaler",
    "SchemaError",
    "TrainConfig",
    "TrainReport",
    "TrainingError",
    "ValidationError",
    "VersionMismatchError",
    "WindowSpec",
    "apply_scaler",
    "backend_name",
    "chain_hydrogen_counts",
    "compound_eval",
    "compound_predict",
    "design_row",
    "export_dot",
    "fit_molecule_lse",
    "fit_scaler",
    "grid_search",
    "invert_scaler",
    "level_predictions",
    "load_csv",
    "load_model",
    "load_table",
    "make_windows",
    "mixture_eval",
    "molecule_eval",
    "overall_error",
    "partition",
    "persistence_mse",
    "predict_one_step",
    "relocate_empty_centers",
    "rolling_evaluate",
    "save_model",
    "split",
    "summary_text",
    "train_compound",
    "train_forecaster",
    "update_centers",
    "__version__",
]
