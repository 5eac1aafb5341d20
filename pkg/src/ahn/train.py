"""Compound training loop, center updates and grid search."""

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from . import backend
from .core import _as_matrix, _as_vector, _lse_solve, overall_error
from .errors import NumericError, TrainingError, ValidationError
from .types import (
    CompoundModel,
    Dataset,
    Molecule,
    TrainConfig,
    TrainReport,
    chain_hydrogen_counts,
)

#: Consecutive small error deltas required for the plateau stop.
PLATEAU_ITERATIONS = 10


def update_centers(centers, errors, eta):
    """Gradient-style center update: mu_j -= eta * (E_{j-1} - E_j), with E_0 = 0.

    The scalar step is broadcast over every coordinate of mu_j. Returns a new
    center matrix; raises NumericError if the result is non-finite.
    """
    c = _as_matrix(centers, name="centers")
    e = _as_vector(errors, c.shape[0], name="errors")
    previous = np.concatenate(([0.0], e[:-1]))
    with np.errstate(over="ignore", invalid="ignore"):
        step = eta * (previous - e)
        updated = c - step[:, np.newaxis]
    if not np.all(np.isfinite(updated)):
        raise NumericError("center update produced non-finite coordinates")
    return updated


def relocate_empty_centers(centers, errors, empties, data_ranges, relocation_fraction, rng):
    """Move each empty molecule's center next to the worst-fitting molecule.

    The target is the non-empty molecule with the largest error; the new
    center is that center plus per-coordinate uniform noise within
    +/- (relocation_fraction * per-feature data range). Non-empty centers
    are returned unchanged.
    """
    c = _as_matrix(centers, name="centers").copy()
    m = c.shape[0]
    e = _as_vector(errors, m, name="errors")
    flags = np.asarray(empties, dtype=bool)
    if flags.shape != (m,):
        raise ValidationError(f"expected {m} empty flags, got shape {flags.shape}")
    if not flags.any():
        return c
    if flags.all():
        raise TrainingError("every molecule is empty; cannot relocate")
    ranges = _as_vector(data_ranges, c.shape[1], name="data_ranges")
    masked = np.where(flags, -np.inf, e)
    target = int(np.argmax(masked))
    scale = relocation_fraction * ranges
    for j in np.nonzero(flags)[0]:
        noise = rng.uniform(-1.0, 1.0, size=c.shape[1]) * scale
        c[j] = c[target] + noise
    return c


@dataclass
class _Snapshot:
    overall: float
    centers: np.ndarray
    params: list
    errors: np.ndarray
    empties: np.ndarray
    iteration: int


def _initial_centers(data, m, rng):
    # Distinct training rows when possible; duplicates are unavoidable for N < m
    # and are resolved by relocation during the first iterations.
    replace = data.n_rows < m
    idx = rng.choice(data.n_rows, size=m, replace=replace)
    return data.x[idx].copy()


def train_compound(data: Dataset, cfg: TrainConfig):
    """Train one saturated linear compound on a dataset.

    Alternates nearest-center partitioning, per-molecule least-squares fits,
    relocation of empty molecules and the gradient center update until the
    iteration limit, an error plateau, or a non-finite abort. Returns the
    best model observed (lowest overall error) and a TrainReport.
    Deterministic for a fixed config.
    """
    if not isinstance(data, Dataset):
        raise ValidationError(f"data must be a Dataset, got {type(data).__name__}")
    if not isinstance(cfg, TrainConfig):
        raise ValidationError(f"cfg must be a TrainConfig, got {type(cfg).__name__}")
    m = cfg.n_molecules
    n = data.n_features
    if data.n_rows < m:
        warnings.warn(
            f"dataset has {data.n_rows} rows for {m} molecules; "
            "some molecules will start empty",
            stacklevel=2,
        )
    k_counts = chain_hydrogen_counts(m)
    rng = np.random.default_rng(cfg.seed)
    centers = _initial_centers(data, m, rng)
    params = [np.zeros(1 + k * n) for k in k_counts]
    data_ranges = data.x.max(axis=0) - data.x.min(axis=0)

    best = None
    history = []
    plateau_run = 0
    stop_reason = "max-iter"

    for iteration in range(1, cfg.max_iterations + 1):
        if not np.all(np.isfinite(centers)):
            stop_reason = "non-finite-abort"
            break
        labels = backend.nearest_center_labels(data.x, centers)
        errors = np.zeros(m)
        empties = np.zeros(m, dtype=bool)
        residual = np.empty(data.n_rows)
        aborted = False
        for j in range(m):
            idx = np.nonzero(labels == j)[0]
            if idx.size == 0:
                empties[j] = True  # keeps the previous parameters, E_j = 0
                continue
            design = backend.polynomial_design(data.x[idx], k_counts[j])
            try:
                beta, _ = _lse_solve(design, data.y[idx])
            except NumericError:
                aborted = True
                break
            params[j] = beta
            res = data.y[idx] - backend.design_predict(design, beta)
            errors[j] = np.mean(res * res)
            residual[idx] = res
        if aborted or not np.all(np.isfinite(errors)):
            stop_reason = "non-finite-abort"
            break
        overall = float(np.mean(residual * residual))
        if not np.isfinite(overall):
            stop_reason = "non-finite-abort"
            break
        history.append(overall)
        if best is None or overall < best.overall:
            best = _Snapshot(
                overall=overall,
                centers=centers.copy(),
                params=list(params),
                errors=errors.copy(),
                empties=empties.copy(),
                iteration=iteration,
            )
        if len(history) >= 2 and abs(history[-1] - history[-2]) < cfg.error_tolerance:
            plateau_run += 1
        else:
            plateau_run = 0
        if plateau_run >= PLATEAU_ITERATIONS:
            stop_reason = "plateau"
            break
        if iteration == cfg.max_iterations:
            break
        if empties.any():
            centers = relocate_empty_centers(
                centers, errors, empties, data_ranges, cfg.relocation_fraction, rng
            )
        try:
            centers = update_centers(centers, errors, cfg.learning_rate)
        except NumericError:
            stop_reason = "non-finite-abort"
            break

    if best is None:
        raise TrainingError("training aborted before completing a single iteration")

    molecules = []
    for j, k in enumerate(k_counts):
        beta = best.params[j]
        molecules.append(
            Molecule(
                hydrogen_count=k,
                carbon_value=float(beta[0]),
                hydrogen_coeffs=beta[1:].reshape(n, k).T,
                center=best.centers[j],
            )
        )
    model = CompoundModel(
        molecules=tuple(molecules),
        feature_names=data.feature_names,
        learning_rate=cfg.learning_rate,
        overall_error=best.overall,
        n_features=n,
    )
    report = TrainReport(
        iterations_run=len(history),
        per_molecule_errors=best.errors,
        overall_error=best.overall,
        error_history=np.asarray(history),
        converged=stop_reason == "plateau",
        stop_reason=stop_reason,
        empty_molecules=tuple(bool(f) for f in best.empties),
        best_iteration=best.iteration,
    )
    return model, report


@dataclass(frozen=True)
class GridCell:
    """Cross-validated score of one (molecule count, learning rate) pair."""

    n_molecules: int
    learning_rate: float
    fold_mses: tuple
    mean_mse: float


def grid_search(
    data: Dataset,
    m_values,
    eta_values,
    folds=5,
    seed=123,
    max_iterations=200,
    error_tolerance=1e-7,
    relocation_fraction=0.05,
):
    """K-fold cross-validated grid search over molecule counts and learning rates.

    Every candidate pair is scored by the mean held-out MSE over the same
    seeded folds; every cell trains with the same seed. Returns the winning
    TrainConfig (ties: smaller molecule count, then smaller learning rate)
    and the full score table.
    """
    m_values = [int(m) for m in m_values]
    eta_values = [float(e) for e in eta_values]
    if not m_values or not eta_values:
        raise ValidationError("candidate lists must be non-empty")
    if folds < 2:
        raise ValidationError(f"at least 2 folds are required, got {folds}")
    if data.n_rows < folds:
        raise ValidationError(
            f"cannot split {data.n_rows} rows into {folds} non-empty folds"
        )
    rng = np.random.default_rng(seed)
    fold_indices = np.array_split(rng.permutation(data.n_rows), folds)

    cells = []
    for m, eta in itertools.product(m_values, eta_values):
        cfg = TrainConfig(
            n_molecules=m,
            learning_rate=eta,
            max_iterations=max_iterations,
            seed=seed,
            error_tolerance=error_tolerance,
            relocation_fraction=relocation_fraction,
        )
        fold_mses = []
        for f in range(folds):
            test_idx = fold_indices[f]
            train_idx = np.concatenate([fold_indices[g] for g in range(folds) if g != f])
            model, _ = train_compound(data.select(train_idx), cfg)
            fold_mses.append(overall_error(model, data.select(test_idx)))
        cells.append(
            GridCell(
                n_molecules=m,
                learning_rate=eta,
                fold_mses=tuple(fold_mses),
                mean_mse=float(np.mean(fold_mses)),
            )
        )

    winner = min(cells, key=lambda c: (c.mean_mse, c.n_molecules, c.learning_rate))
    best_cfg = TrainConfig(
        n_molecules=winner.n_molecules,
        learning_rate=winner.learning_rate,
        max_iterations=max_iterations,
        seed=seed,
        error_tolerance=error_tolerance,
        relocation_fraction=relocation_fraction,
    )
    return best_cfg, cells
