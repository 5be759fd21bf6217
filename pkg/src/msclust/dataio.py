"""File formats: dataset CSV and versioned JSON result/metrics documents.

Dataset CSV: header ``x0,...,x{d-1}[,label]``, UTF-8, LF line endings,
full-precision decimal floats (shortest round-trip repr, lossless for
float64). The label column is optional.

All JSON documents carry a top-level ``"schema": 1`` field.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .engine import ClusteringResult, RunConfig
from .geometry import LabeledDataset, as_dataset
from .metrics import ContingencyTable, GScores, KScores

SCHEMA_VERSION = 1


class DataFormatError(ValueError):
    """Malformed dataset or result file."""


def write_dataset_csv(path, data, labels=None) -> None:
    data = as_dataset(data)
    d = data.shape[1]
    header = [f"x{k}" for k in range(d)]
    if labels is not None:
        labels = np.asarray(labels, dtype=np.int64)
        header.append("label")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for j in range(data.shape[0]):
            row = [repr(float(v)) for v in data[j]]
            if labels is not None:
                row.append(str(int(labels[j])))
            w.writerow(row)


def read_dataset_csv(path) -> tuple[np.ndarray, np.ndarray | None]:
    """Returns (data, labels-or-None)."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    header = rows[0]
    has_label = header and header[-1] == "label"
    d = len(header) - (1 if has_label else 0)
    if d < 1 or header[:d] != [f"x{k}" for k in range(d)]:
        raise DataFormatError(f"{path}: bad header {header!r}")
    data = np.empty((len(rows) - 1, d))
    labels = np.empty(len(rows) - 1, dtype=np.int64) if has_label else None
    for i, row in enumerate(rows[1:]):
        if len(row) != len(header):
            raise DataFormatError(f"{path}: row {i + 2} has {len(row)} fields")
        try:
            data[i] = [float(v) for v in row[:d]]
            if has_label:
                labels[i] = int(row[d])
        except ValueError as exc:
            raise DataFormatError(f"{path}: row {i + 2}: {exc}") from None
    if data.shape[0] < 1:
        raise DataFormatError(f"{path}: no data rows")
    return data, labels


def result_to_dict(result: ClusteringResult, algo: str, config: RunConfig) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "algo": algo,
        "config": {
            "h": config.h,
            "th1": config.th1,
            "th2": config.th2,
            "seed": config.seed,
            "max_inner_iters": config.max_inner_iters,
            "global_iter_budget": config.global_iter_budget,
            "stagnation_window": config.stagnation_window,
        },
        "n_clusters": result.n_clusters,
        "shift_count": result.shift_count,
        "assignments": result.assignments.tolist(),
        "modes": result.modes.tolist(),
        "final_positions": result.final_positions.tolist(),
    }
    if result.trajectories is not None:
        doc["trajectories"] = [t.tolist() for t in result.trajectories]
    return doc


def write_result_json(path, result: ClusteringResult, algo: str, config: RunConfig):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(result_to_dict(result, algo, config), fh)
        fh.write("\n")


def read_result_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION:
        raise DataFormatError(f"{path}: not a schema-{SCHEMA_VERSION} result document")
    return doc


def metrics_to_dict(table: ContingencyTable, g: GScores, k: KScores) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "pur_c": g.pur_c,
        "pur_d": g.pur_d,
        "g": g.g,
        "acp": k.acp,
        "asp": k.asp,
        "k": k.k,
        "n_clusters": table.n_clusters,
        "n_classes": table.n_classes,
        "contingency": table.counts.tolist(),
    }


def load_labeled(path) -> LabeledDataset:
    data, labels = read_dataset_csv(path)
    if labels is None:
        raise DataFormatError(f"{path}: labeled dataset required (no label column)")
    remapped = _densify(labels)
    return LabeledDataset(data, remapped)


def _densify(labels: np.ndarray) -> np.ndarray:
    """Remap arbitrary integer labels to dense 0..R-1 by first appearance."""
    seen: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, v in enumerate(labels.tolist()):
        if v not in seen:
            seen[v] = len(seen)
        out[i] = seen[v]
    return out
