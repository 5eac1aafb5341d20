"""Shared builders for the test suite."""

import numpy as np

import ahn
from ahn.cli import main as cli_main
from ahn.types import chain_hydrogen_counts


def make_chain(centers, rng=None, coeff_scale=1.0, learning_rate=0.01, overall_error=0.0):
    """Random valid compound with the given (m, n) center matrix."""
    centers = np.asarray(centers, dtype=np.float64)
    m, n = centers.shape
    rng = rng or np.random.default_rng(0)
    molecules = []
    for j, k in enumerate(chain_hydrogen_counts(m)):
        molecules.append(
            ahn.Molecule(
                hydrogen_count=k,
                carbon_value=float(rng.normal() * coeff_scale),
                hydrogen_coeffs=rng.normal(size=(k, n)) * coeff_scale,
                center=centers[j],
            )
        )
    return ahn.CompoundModel(
        molecules=tuple(molecules),
        feature_names=tuple(f"x{i + 1}" for i in range(n)),
        learning_rate=learning_rate,
        overall_error=overall_error,
        n_features=n,
    )


def constant_chain(centers, values):
    """Compound whose molecule j always evaluates to values[j]."""
    centers = np.asarray(centers, dtype=np.float64)
    m, n = centers.shape
    molecules = []
    for j, k in enumerate(chain_hydrogen_counts(m)):
        molecules.append(
            ahn.Molecule(
                hydrogen_count=k,
                carbon_value=float(values[j]),
                hydrogen_coeffs=np.zeros((k, n)),
                center=centers[j],
            )
        )
    return ahn.CompoundModel(
        molecules=tuple(molecules),
        feature_names=tuple(f"x{i + 1}" for i in range(n)),
        learning_rate=0.01,
        overall_error=0.0,
        n_features=n,
    )


def unit_scaler(names):
    return ahn.Scaler(np.zeros(len(names)), np.ones(len(names)), tuple(names))


def run_cli(argv):
    """Invoke the CLI in-process; returns the exit code (SystemExit included)."""
    try:
        return cli_main(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0


def write_csv(path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
