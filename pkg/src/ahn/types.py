"""Domain types: molecules, compounds, mixtures, datasets and training config."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

#: Stop reasons a training run can report.
STOP_REASONS = ("max-iter", "plateau", "non-finite-abort")


def _freeze(a):
    """Return a read-only, C-contiguous float64 copy of ``a``."""
    out = np.array(a, dtype=np.float64, order="C", copy=True)
    out.flags.writeable = False
    return out


def _require_finite(a, name):
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} contains non-finite values")


@dataclass(frozen=True, eq=False)
class Molecule:
    """One CH_k unit: a local polynomial with an intercept and a center.

    ``hydrogen_coeffs[i - 1][r]`` is the coefficient of ``x_r ** i``; the
    molecule's value at ``x`` is
    ``carbon_value + sum_r sum_i hydrogen_coeffs[i-1][r] * x_r**i``.
    """

    hydrogen_count: int
    carbon_value: float
    hydrogen_coeffs: np.ndarray  # shape (hydrogen_count, n_features)
    center: np.ndarray           # shape (n_features,)

    def __post_init__(self):
        k = self.hydrogen_count
        if not isinstance(k, (int, np.integer)) or not 1 <= int(k) <= 4:
            raise ValidationError(f"hydrogen_count must be an integer in 1..4, got {k!r}")
        object.__setattr__(self, "hydrogen_count", int(k))
        sigma = float(self.carbon_value)
        if not np.isfinite(sigma):
            raise ValidationError("carbon_value must be finite")
        object.__setattr__(self, "carbon_value", sigma)
        coeffs = _freeze(self.hydrogen_coeffs)
        center = _freeze(self.center)
        if center.ndim != 1 or center.size < 1:
            raise ValidationError("center must be a non-empty vector")
        if coeffs.ndim != 2 or coeffs.shape != (self.hydrogen_count, center.size):
            raise ValidationError(
                f"hydrogen_coeffs must have shape ({self.hydrogen_count}, {center.size}), "
                f"got {coeffs.shape}"
            )
        _require_finite(coeffs, "hydrogen_coeffs")
        _require_finite(center, "center")
        object.__setattr__(self, "hydrogen_coeffs", coeffs)
        object.__setattr__(self, "center", center)

    @property
    def n_features(self):
        return self.center.size

    @property
    def params(self):
        """Flat parameter vector [intercept, coefficients in feature-major order].

        Matches the column layout of ``backend.polynomial_design``.
        """
        return np.concatenate(([self.carbon_value], self.hydrogen_coeffs.T.ravel()))


def chain_hydrogen_counts(n_molecules):
    """Hydrogen counts of a saturated linear chain: CH3, CH2, ..., CH2, CH3."""
    if n_molecules < 2:
        raise ValidationError(f"a compound needs at least 2 molecules, got {n_molecules}")
    return (3,) + (2,) * (n_molecules - 2) + (3,)


@dataclass(frozen=True, eq=False)
class CompoundModel:
    """A saturated linear chain of molecules acting as one piecewise model."""

    molecules: tuple
    feature_names: tuple
    learning_rate: float
    overall_error: float
    n_features: int

    def __post_init__(self):
        molecules = tuple(self.molecules)
        names = tuple(str(s) for s in self.feature_names)
        object.__setattr__(self, "molecules", molecules)
        object.__setattr__(self, "feature_names", names)
        m = len(molecules)
        if m < 2:
            raise ValidationError(f"a compound needs at least 2 molecules, got {m}")
        counts = tuple(mol.hydrogen_count for mol in molecules)
        if counts != chain_hydrogen_counts(m):
            raise ValidationError(
                f"molecule hydrogen counts {counts} do not form a saturated linear "
                f"chain {chain_hydrogen_counts(m)}"
            )
        n = int(self.n_features)
        object.__setattr__(self, "n_features", n)
        if len(names) != n:
            raise ValidationError(f"expected {n} feature names, got {len(names)}")
        for idx, mol in enumerate(molecules):
            if mol.n_features != n:
                raise ValidationError(
                    f"molecule {idx + 1} has {mol.n_features} features, expected {n}"
                )
        eta = float(self.learning_rate)
        if not (np.isfinite(eta) and 0.0 < eta < 1.0):
            raise ValidationError(f"learning_rate must be in (0, 1), got {eta}")
        object.__setattr__(self, "learning_rate", eta)
        err = float(self.overall_error)
        if not (np.isfinite(err) and err >= 0.0):
            raise ValidationError(f"overall_error must be finite and >= 0, got {err}")
        object.__setattr__(self, "overall_error", err)

    @property
    def n_molecules(self):
        return len(self.molecules)

    @property
    def centers(self):
        """Molecular centers stacked into an (m, n) matrix."""
        return np.stack([mol.center for mol in self.molecules])

    @property
    def max_hydrogen_count(self):
        return max(mol.hydrogen_count for mol in self.molecules)

    def padded_params(self):
        """(m, 1 + k_max * n) parameter matrix, zero-padded per molecule.

        Row layout matches ``backend.piecewise_predict``.
        """
        k_max = self.max_hydrogen_count
        n = self.n_features
        out = np.zeros((self.n_molecules, 1 + k_max * n))
        for j, mol in enumerate(self.molecules):
            out[j, 0] = mol.carbon_value
            for r in range(n):
                k = mol.hydrogen_count
                out[j, 1 + r * k_max : 1 + r * k_max + k] = mol.hydrogen_coeffs[:, r]
        return out


@dataclass(frozen=True, eq=False)
class Mixture:
    """Weighted combination of compounds with stoichiometric coefficients."""

    compounds: tuple
    weights: np.ndarray

    def __post_init__(self):
        compounds = tuple(self.compounds)
        object.__setattr__(self, "compounds", compounds)
        if len(compounds) < 1:
            raise ValidationError("a mixture needs at least one compound")
        weights = _freeze(self.weights)
        if weights.ndim != 1 or weights.size != len(compounds):
            raise ValidationError(
                f"expected {len(compounds)} weights, got shape {weights.shape}"
            )
        _require_finite(weights, "weights")
        object.__setattr__(self, "weights", weights)
        n = compounds[0].n_features
        for idx, comp in enumerate(compounds):
            if comp.n_features != n:
                raise ValidationError(
                    f"compound {idx + 1} has {comp.n_features} features, expected {n}"
                )

    @property
    def n_features(self):
        return self.compounds[0].n_features


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature matrix with named columns and a single named target vector."""

    x: np.ndarray  # shape (N, n)
    y: np.ndarray  # shape (N,)
    feature_names: tuple
    target_name: str

    def __post_init__(self):
        x = _freeze(self.x)
        y = _freeze(self.y)
        if x.ndim != 2:
            raise ValidationError(f"x must be a 2-D matrix, got ndim={x.ndim}")
        if y.ndim != 1:
            raise ValidationError(f"y must be a 1-D vector, got ndim={y.ndim}")
        if x.shape[0] != y.shape[0]:
            raise ValidationError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
        if x.shape[0] < 1:
            raise ValidationError("dataset needs at least one row")
        if x.shape[1] < 1:
            raise ValidationError("dataset needs at least one feature")
        _require_finite(x, "x")
        _require_finite(y, "y")
        names = tuple(str(s) for s in self.feature_names)
        if len(names) != x.shape[1]:
            raise ValidationError(f"expected {x.shape[1]} feature names, got {len(names)}")
        target = str(self.target_name)
        if len(set(names)) != len(names) or target in names:
            raise ValidationError("column names must be unique")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "target_name", target)

    @property
    def n_rows(self):
        return self.x.shape[0]

    @property
    def n_features(self):
        return self.x.shape[1]

    def select(self, indices):
        """New Dataset holding the given rows (order preserved)."""
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(self.x[idx], self.y[idx], self.feature_names, self.target_name)


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of the compound training loop."""

    n_molecules: int = 5
    learning_rate: float = 0.01
    max_iterations: int = 2000
    seed: int = 123
    error_tolerance: float = 1e-7   # plateau stop threshold
    relocation_fraction: float = 0.05

    def __post_init__(self):
        if not isinstance(self.n_molecules, (int, np.integer)) or self.n_molecules < 2:
            raise ValidationError(f"n_molecules must be an integer >= 2, got {self.n_molecules!r}")
        object.__setattr__(self, "n_molecules", int(self.n_molecules))
        eta = float(self.learning_rate)
        if not (np.isfinite(eta) and 0.0 < eta < 1.0):
            raise ValidationError(f"learning_rate must be in (0, 1), got {eta}")
        object.__setattr__(self, "learning_rate", eta)
        if not isinstance(self.max_iterations, (int, np.integer)) or self.max_iterations < 1:
            raise ValidationError(f"max_iterations must be an integer >= 1, got {self.max_iterations!r}")
        object.__setattr__(self, "max_iterations", int(self.max_iterations))
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValidationError(f"seed must be a non-negative integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        tol = float(self.error_tolerance)
        if not (np.isfinite(tol) and tol >= 0.0):
            raise ValidationError(f"error_tolerance must be >= 0, got {tol}")
        object.__setattr__(self, "error_tolerance", tol)
        frac = float(self.relocation_fraction)
        if not (np.isfinite(frac) and frac >= 0.0):
            raise ValidationError(f"relocation_fraction must be >= 0, got {frac}")
        object.__setattr__(self, "relocation_fraction", frac)


@dataclass(frozen=True, eq=False)
class TrainReport:
    """What happened during a training run."""

    iterations_run: int
    per_molecule_errors: np.ndarray  # MSE per molecule at the best iteration
    overall_error: float
    error_history: np.ndarray        # overall error per iteration
    converged: bool
    stop_reason: str                 # one of STOP_REASONS
    empty_molecules: tuple           # flags: molecule had no subset at the best iteration
    best_iteration: int              # 1-based index into error_history

    def __post_init__(self):
        if self.stop_reason not in STOP_REASONS:
            raise ValidationError(f"unknown stop reason {self.stop_reason!r}")
        errors = _freeze(self.per_molecule_errors)
        history = _freeze(self.error_history)
        if history.size != self.iterations_run:
            raise ValidationError(
                f"error_history has {history.size} entries for {self.iterations_run} iterations"
            )
        if np.any(errors < 0.0):
            raise ValidationError("per-molecule errors must be >= 0")
        object.__setattr__(self, "per_molecule_errors", errors)
        object.__setattr__(self, "error_history", history)
        object.__setattr__(self, "empty_molecules", tuple(bool(f) for f in self.empty_molecules))
