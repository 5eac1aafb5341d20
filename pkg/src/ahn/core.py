"""Evaluation and least-squares machinery for molecules and compounds."""

import numpy as np
import scipy.linalg

from . import backend
from .errors import EmptySubsetError, NumericError, ValidationError
from .types import CompoundModel, Dataset, Mixture, Molecule


def _as_vector(x, n=None, name="x"):
    v = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    if v.ndim != 1:
        raise ValidationError(f"{name} must be a 1-D vector, got ndim={v.ndim}")
    if n is not None and v.size != n:
        raise ValidationError(f"{name} has length {v.size}, expected {n}")
    if not np.all(np.isfinite(v)):
        raise ValidationError(f"{name} contains non-finite values")
    return v


def _as_matrix(x, n=None, name="x"):
    a = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    if a.ndim != 2:
        raise ValidationError(f"{name} must be a 2-D matrix, got ndim={a.ndim}")
    if n is not None and a.shape[1] != n:
        raise ValidationError(f"{name} has {a.shape[1]} columns, expected {n}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} contains non-finite values")
    return a


def _check_k(k):
    if not isinstance(k, (int, np.integer)) or not 1 <= int(k) <= 4:
        raise ValidationError(f"hydrogen count k must be an integer in 1..4, got {k!r}")
    return int(k)


def design_row(x, k):
    """Expand one input vector into [1, x_1, ..., x_1^k, ..., x_n, ..., x_n^k].

    The leading 1 pairs with the carbon value; the entry for ``x_r ** i``
    pairs with ``hydrogen_coeffs[i - 1][r]``.
    """
    k = _check_k(k)
    v = _as_vector(x)
    return backend.polynomial_design(v[np.newaxis, :], k)[0]


def molecule_eval(mol: Molecule, x) -> float:
    """Value of one molecule at input ``x``."""
    v = _as_vector(x, mol.n_features)
    design = backend.polynomial_design(v[np.newaxis, :], mol.hydrogen_count)
    return float(backend.design_predict(design, mol.params)[0])


def compound_eval(model: CompoundModel, x) -> float:
    """Value of the molecule owning ``x`` (nearest center, ties to lowest index)."""
    v = _as_vector(x, model.n_features)
    values = backend.piecewise_predict(v[np.newaxis, :], model.centers, model.padded_params())
    return float(values[0])


def compound_predict(model: CompoundModel, x) -> np.ndarray:
    """Vectorized ``compound_eval`` over the rows of a matrix."""
    a = _as_matrix(x, model.n_features)
    return backend.piecewise_predict(a, model.centers, model.padded_params())


def mixture_eval(mix: Mixture, x) -> float:
    """Weighted sum of the compound values at ``x``."""
    v = _as_vector(x, mix.n_features)
    total = 0.0
    for weight, comp in zip(mix.weights, mix.compounds):
        total += weight * compound_eval(comp, v)
    return float(total)


def partition(data: Dataset, centers):
    """Assign every row of ``data`` to its nearest center.

    Returns one index array per center; the arrays are disjoint and cover
    all row indices. Distance ties go to the lowest center index.
    """
    c = _as_matrix(centers, data.n_features, name="centers")
    if c.shape[0] < 1:
        raise ValidationError("at least one center is required")
    labels = backend.nearest_center_labels(data.x, c)
    return [np.nonzero(labels == j)[0] for j in range(c.shape[0])]


def _lse_solve(design, targets):
    """Minimum-norm least-squares solution via complete orthogonal factorization.

    Returns (coefficients, effective rank). Raises NumericError when the
    solver yields non-finite values.
    """
    beta, _, rank, _ = scipy.linalg.lstsq(design, targets, lapack_driver="gelsy")
    if not np.all(np.isfinite(beta)):
        raise NumericError("least-squares solve produced non-finite coefficients")
    return beta, rank


def fit_molecule_lse(x, y, k):
    """Least-squares fit of one molecule's parameters on a data subset.

    Returns (carbon_value, hydrogen_coeffs, mse). Rank-deficient and
    under-determined subsets get the minimum-norm solution.
    """
    k = _check_k(k)
    a = _as_matrix(x)
    targets = _as_vector(y, a.shape[0], name="y")
    if a.shape[0] == 0:
        raise EmptySubsetError("cannot fit a molecule on an empty subset")
    design = backend.polynomial_design(a, k)
    beta, _ = _lse_solve(design, targets)
    residual = targets - backend.design_predict(design, beta)
    mse = float(np.mean(residual * residual))
    carbon_value = float(beta[0])
    hydrogen_coeffs = beta[1:].reshape(a.shape[1], k).T.copy()
    return carbon_value, hydrogen_coeffs, mse


def overall_error(model: CompoundModel, data: Dataset) -> float:
    """Mean squared residual of the compound over a dataset."""
    if data.n_features != model.n_features:
        raise ValidationError(
            f"dataset has {data.n_features} features, model expects {model.n_features}"
        )
    residual = data.y - compound_predict(model, data.x)
    return float(np.mean(residual * residual))
