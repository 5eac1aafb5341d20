"""Model persistence (JSON documents), text summaries and DOT export."""

import json
import os
import tempfile
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .data import Scaler, WindowSpec
from .errors import SchemaError, ValidationError, VersionMismatchError
from .forecast import ForecastModel
from .types import CompoundModel, Molecule

FORMAT_VERSION = "1"


@dataclass(frozen=True)
class ModelDocument:
    """On-disk model representation: a version, a kind and a parameter tree."""

    format_version: str
    kind: str  # "compound" or "forecast"
    payload: dict


def _compound_payload(model: CompoundModel) -> dict:
    return {
        "n_features": model.n_features,
        "feature_names": list(model.feature_names),
        "learning_rate": model.learning_rate,
        "overall_error": model.overall_error,
        "molecules": [
            {
                "hydrogen_count": mol.hydrogen_count,
                "carbon_value": mol.carbon_value,
                "hydrogen_coeffs": mol.hydrogen_coeffs.tolist(),
                "center": mol.center.tolist(),
            }
            for mol in model.molecules
        ],
    }


def _scaler_payload(scaler: Scaler) -> dict:
    return {
        "means": scaler.means.tolist(),
        "stds": scaler.stds.tolist(),
        "column_names": list(scaler.column_names),
    }


def document_for(model) -> ModelDocument:
    """Build the serializable document for a compound or forecast model."""
    if isinstance(model, CompoundModel):
        return ModelDocument(FORMAT_VERSION, "compound", _compound_payload(model))
    if isinstance(model, ForecastModel):
        payload = {
            "compound": _compound_payload(model.compound),
            "x_scaler": _scaler_payload(model.x_scaler),
            "y_scaler": _scaler_payload(model.y_scaler),
            "window": model.window_spec.window,
            "target_mode": model.window_spec.target_mode,
        }
        return ModelDocument(FORMAT_VERSION, "forecast", payload)
    raise ValidationError(f"cannot serialize a {type(model).__name__}")


def write_text_atomic(path, text):
    """Write a text file via a temp file + rename; never leaves partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def save_model(model, path):
    """Serialize a model to a JSON document at ``path`` (atomic write).

    Floats use shortest round-trip decimals, so a load reproduces every
    parameter bit for bit.
    """
    doc = document_for(model)
    text = json.dumps(
        {"format_version": doc.format_version, "kind": doc.kind, "payload": doc.payload},
        indent=2,
        allow_nan=False,
    )
    write_text_atomic(path, text + "\n")


def _need(mapping, key, kind):
    if not isinstance(mapping, dict) or key not in mapping:
        raise SchemaError(f"model document is missing {kind} field '{key}'")
    return mapping[key]


def _compound_from_payload(payload) -> CompoundModel:
    molecules = []
    for entry in _need(payload, "molecules", "payload"):
        molecules.append(
            Molecule(
                hydrogen_count=_need(entry, "hydrogen_count", "molecule"),
                carbon_value=_need(entry, "carbon_value", "molecule"),
                hydrogen_coeffs=_need(entry, "hydrogen_coeffs", "molecule"),
                center=_need(entry, "center", "molecule"),
            )
        )
    return CompoundModel(
        molecules=tuple(molecules),
        feature_names=tuple(_need(payload, "feature_names", "payload")),
        learning_rate=_need(payload, "learning_rate", "payload"),
        overall_error=_need(payload, "overall_error", "payload"),
        n_features=_need(payload, "n_features", "payload"),
    )


def _scaler_from_payload(payload) -> Scaler:
    return Scaler(
        means=_need(payload, "means", "scaler"),
        stds=_need(payload, "stds", "scaler"),
        column_names=tuple(_need(payload, "column_names", "scaler")),
    )


def load_model(path):
    """Load a model document; returns a CompoundModel or ForecastModel.

    Raises VersionMismatchError for unsupported versions and SchemaError for
    anything structurally wrong; never returns a partially built model.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read model file {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    version = _need(doc, "format_version", "top-level")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"{path} has format version {version!r}; this build supports {FORMAT_VERSION!r}"
        )
    kind = _need(doc, "kind", "top-level")
    payload = _need(doc, "payload", "top-level")
    try:
        if kind == "compound":
            return _compound_from_payload(payload)
        if kind == "forecast":
            return ForecastModel(
                compound=_compound_from_payload(_need(payload, "compound", "payload")),
                x_scaler=_scaler_from_payload(_need(payload, "x_scaler", "payload")),
                y_scaler=_scaler_from_payload(_need(payload, "y_scaler", "payload")),
                window_spec=WindowSpec(
                    window=_need(payload, "window", "payload"),
                    target_mode=_need(payload, "target_mode", "payload"),
                ),
            )
    except (ValidationError, TypeError) as exc:
        raise SchemaError(f"{path} holds an invalid model: {exc}") from exc
    raise SchemaError(f"unknown model kind {kind!r}; expected 'compound' or 'forecast'")


def _round3(value):
    """Decimal-string rounding to 3 places, half away from zero."""
    return str(Decimal(repr(float(value))).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def _table(row_labels, col_labels, values, fmt):
    """Small right-aligned text table with a left-aligned label column."""
    cells = [[fmt % v for v in row] for row in values]
    label_width = max(len(s) for s in row_labels)
    widths = [
        max(len(col_labels[c]), max(len(cells[r][c]) for r in range(len(cells))))
        for c in range(len(col_labels))
    ]
    lines = [
        " " * label_width + " " + " ".join(c.rjust(w) for c, w in zip(col_labels, widths))
    ]
    for label, row in zip(row_labels, cells):
        lines.append(label.ljust(label_width) + " " + " ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def summary_text(model: CompoundModel) -> str:
    """Human-readable account of a trained compound.

    Sections: molecule count, learning factor, overall error (3 decimals),
    the center table, then one coefficient table per molecule with rows
    C{j}, H{j}1..H{j}k and one column per feature. The carbon value is a
    single number repeated under every feature column.
    """
    names = list(model.feature_names)
    parts = [
        "Artificial Hydrocarbon Network trained:",
        "",
        "Number of molecules:",
        f" {model.n_molecules} ",
        "",
        "Learning factor:",
        f" {model.learning_rate:g} ",
        "",
        "Overall error:",
        f" {_round3(model.overall_error)} ",
        "",
        "Centers of the molecules:",
        _table(
            [f"molecule{j + 1}" for j in range(model.n_molecules)],
            names,
            model.centers,
            "%.7f",
        ),
        "",
        "Molecules:",
    ]
    for j, mol in enumerate(model.molecules, start=1):
        rows = [[mol.carbon_value] * model.n_features]
        rows.extend(mol.hydrogen_coeffs[i] for i in range(mol.hydrogen_count))
        labels = [f"C{j}"] + [f"H{j}{i + 1}" for i in range(mol.hydrogen_count)]
        parts.append(f"Molecule {j}:")
        parts.append(_table(labels, names, rows, "%.3f"))
        parts.append("")
    return "\n".join(parts).rstrip("\n") + "\n"


def export_dot(model: CompoundModel) -> str:
    """Graphviz DOT rendering of the molecular chain.

    Carbon nodes form a left-to-right chain with their hydrogens attached;
    every node label stacks its per-feature coefficients, first feature on
    top. Carbons carry red characters.
    """
    lines = [
        "graph ahn {",
        "  rankdir=LR;",
        '  node [shape=circle, fontsize=10];',
    ]
    for j, mol in enumerate(model.molecules, start=1):
        coeffs = "\\n".join("%.3f" % mol.carbon_value for _ in range(model.n_features))
        lines.append(f'  c{j} [label="C{j}\\n{coeffs}", fontcolor=red];')
        for i in range(mol.hydrogen_count):
            stacked = "\\n".join("%.3f" % v for v in mol.hydrogen_coeffs[i])
            lines.append(f'  h{j}_{i + 1} [label="H{j}{i + 1}\\n{stacked}"];')
    for j in range(1, model.n_molecules):
        lines.append(f"  c{j} -- c{j + 1};")
    for j, mol in enumerate(model.molecules, start=1):
        for i in range(mol.hydrogen_count):
            lines.append(f"  c{j} -- h{j}_{i + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
