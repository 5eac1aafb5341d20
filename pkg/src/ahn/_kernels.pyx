# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot evaluation kernels.

Mirrors ``_kernels_py`` exactly: same arithmetic, same operation order,
bitwise-identical output. See that module for the contract.
"""

import numpy as np


cdef void _labels_impl(const double[:, ::1] x, const double[:, ::1] centers,
                       Py_ssize_t[::1] out) noexcept nogil:
    cdef Py_ssize_t n_rows = x.shape[0]
    cdef Py_ssize_t n_feat = x.shape[1]
    cdef Py_ssize_t m = centers.shape[0]
    cdef Py_ssize_t i, j, r, best
    cdef double d, t, best_d
    for i in range(n_rows):
        best = 0
        best_d = 0.0
        for j in range(m):
            d = 0.0
            for r in range(n_feat):
                t = x[i, r] - centers[j, r]
                d += t * t
            if j == 0 or d < best_d:
                best_d = d
                best = j
        out[i] = best


def nearest_center_labels(x, centers):
    """Index of the nearest center (squared Euclidean) for each row of ``x``.

    Ties resolve to the lowest center index.
    """
    cdef const double[:, ::1] xv = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    cdef const double[:, ::1] cv = np.ascontiguousarray(np.asarray(centers, dtype=np.float64))
    labels = np.empty(xv.shape[0], dtype=np.intp)
    cdef Py_ssize_t[::1] out = labels
    _labels_impl(xv, cv, out)
    return labels


def polynomial_design(x, k):
    """Expand rows of ``x`` into [1, x_1, ..., x_1^k, x_2, ..., x_n^k]."""
    cdef const double[:, ::1] xv = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    cdef Py_ssize_t kk = k
    cdef Py_ssize_t n_rows = xv.shape[0]
    cdef Py_ssize_t n_feat = xv.shape[1]
    design = np.empty((n_rows, 1 + kk * n_feat), dtype=np.float64)
    cdef double[:, ::1] out = design
    cdef Py_ssize_t i, r, p, col
    cdef double base, power
    with nogil:
        for i in range(n_rows):
            out[i, 0] = 1.0
            col = 1
            for r in range(n_feat):
                base = xv[i, r]
                power = 1.0
                for p in range(kk):
                    power = power * base
                    out[i, col] = power
                    col += 1
    return design


def design_predict(design, beta):
    """Row-wise dot of a design matrix with a coefficient vector."""
    cdef const double[:, ::1] dv = np.ascontiguousarray(np.asarray(design, dtype=np.float64))
    cdef const double[::1] bv = np.ascontiguousarray(np.asarray(beta, dtype=np.float64))
    cdef Py_ssize_t n_rows = dv.shape[0]
    cdef Py_ssize_t n_cols = dv.shape[1]
    values = np.empty(n_rows, dtype=np.float64)
    cdef double[::1] out = values
    cdef Py_ssize_t i, c
    cdef double acc
    with nogil:
        for i in range(n_rows):
            acc = dv[i, 0] * bv[0]
            for c in range(1, n_cols):
                acc += dv[i, c] * bv[c]
            out[i] = acc
    return values


def piecewise_predict(x, centers, params):
    """Evaluate a piecewise polynomial model over the rows of ``x``.

    Same contract as ``_kernels_py.piecewise_predict``: row j of ``params``
    holds molecule j's intercept and zero-padded feature-major power
    coefficients; each input row is evaluated with its nearest center's row.
    """
    cdef const double[:, ::1] xv = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    cdef const double[:, ::1] cv = np.ascontiguousarray(np.asarray(centers, dtype=np.float64))
    cdef const double[:, ::1] pv = np.ascontiguousarray(np.asarray(params, dtype=np.float64))
    cdef Py_ssize_t n_rows = xv.shape[0]
    cdef Py_ssize_t n_feat = xv.shape[1]
    cdef Py_ssize_t k_max = (pv.shape[1] - 1) // n_feat
    labels = np.empty(n_rows, dtype=np.intp)
    cdef Py_ssize_t[::1] lv = labels
    values = np.empty(n_rows, dtype=np.float64)
    cdef double[::1] out = values
    cdef Py_ssize_t i, j, r, p, col
    cdef double acc, base, power
    _labels_impl(xv, cv, lv)
    with nogil:
        for i in range(n_rows):
            j = lv[i]
            acc = pv[j, 0] * 1.0
            col = 1
            for r in range(n_feat):
                base = xv[i, r]
                power = 1.0
                for p in range(k_max):
                    power = power * base
                    acc += pv[j, col] * power
                    col += 1
            out[i] = acc
    return values
