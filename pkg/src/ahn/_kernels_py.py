"""Pure NumPy implementations of the hot evaluation kernels.

These are the fallback for the compiled extension in ``_kernels.pyx``. Both
backends follow the same arithmetic contract so their outputs are bitwise
identical:

* squared distances accumulate over features in ascending order,
* powers are built by repeated multiplication (``p_i = p_{i-1} * x``),
* dot products accumulate over columns in ascending order.

All kernels expect finite float64 input; validation happens in the callers.
"""

import numpy as np


def _as_matrix(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.float64))


def nearest_center_labels(x, centers):
    """Index of the nearest center (squared Euclidean) for each row of ``x``.

    Ties resolve to the lowest center index.
    """
    x = _as_matrix(x)
    centers = _as_matrix(centers)
    n_rows, n_feat = x.shape
    m = centers.shape[0]
    dist = np.zeros((n_rows, m), dtype=np.float64)
    with np.errstate(over="ignore"):
        for r in range(n_feat):
            diff = x[:, r : r + 1] - centers[:, r][np.newaxis, :]
            dist += diff * diff
    return np.argmin(dist, axis=1)


def polynomial_design(x, k):
    """Expand rows of ``x`` into [1, x_1, ..., x_1^k, x_2, ..., x_n^k]."""
    x = _as_matrix(x)
    n_rows, n_feat = x.shape
    out = np.empty((n_rows, 1 + k * n_feat), dtype=np.float64)
    out[:, 0] = 1.0
    for r in range(n_feat):
        base = x[:, r]
        power = np.ones(n_rows, dtype=np.float64)
        for i in range(k):
            power = power * base
            out[:, 1 + r * k + i] = power
    return out


def design_predict(design, beta):
    """Row-wise dot of a design matrix with a coefficient vector."""
    design = _as_matrix(design)
    beta = np.ascontiguousarray(np.asarray(beta, dtype=np.float64))
    acc = design[:, 0] * beta[0]
    for c in range(1, design.shape[1]):
        acc += design[:, c] * beta[c]
    return acc


def piecewise_predict(x, centers, params):
    """Evaluate a piecewise polynomial model over the rows of ``x``.

    ``params`` is an (m, 1 + k_max * n) matrix; row j holds molecule j's
    intercept followed by its power coefficients in feature-major order,
    zero-padded up to the largest hydrogen count in the compound. Each row
    of ``x`` is evaluated with the parameter row of its nearest center.
    """
    x = _as_matrix(x)
    centers = _as_matrix(centers)
    params = _as_matrix(params)
    labels = nearest_center_labels(x, centers)
    n_feat = x.shape[1]
    k_max = (params.shape[1] - 1) // n_feat
    design = polynomial_design(x, k_max)
    chosen = params[labels]
    acc = chosen[:, 0] * design[:, 0]
    for c in range(1, design.shape[1]):
        acc += chosen[:, c] * design[:, c]
    return acc
