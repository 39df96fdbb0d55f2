"""CSV ingestion/emission and report rendering."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .dataset import LabeledDataset
from .evaluation import ExperimentReport
from .exceptions import ParseError, SchemaError
from .metrics import METRIC_NAMES
from .samplers import ResampleResult


def _label_index(header, label_col) -> int:
    if label_col is None:
        return len(header) - 1
    if isinstance(label_col, int) or (isinstance(label_col, str) and label_col.lstrip("-").isdigit()
                                      and label_col not in header):
        idx = int(label_col)
        if not -len(header) <= idx < len(header):
            raise SchemaError(f"label column index {idx} out of range for {len(header)} columns")
        return idx % len(header)
    if label_col not in header:
        raise SchemaError(f"label column {label_col!r} not in header {header}")
    return header.index(label_col)


def read_csv(path, label_col: Union[str, int, None] = None,
             positive_label: Optional[str] = None) -> LabeledDataset:
    """Load a numeric CSV with a header row and one binary label column.

    The label column defaults to the last one. Its two tokens map to
    {0, 1}: the positive token (``positive_label`` if given, otherwise the
    less frequent one; the lexically larger on a tie) becomes 1.
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except csv.Error as err:
        raise ParseError(f"{path}: {err}") from err
    if not rows:
        raise ParseError(f"{path}: empty file", line=1)
    header = [h.strip() for h in rows[0]]
    if len(header) < 2:
        raise SchemaError(f"{path}: need at least one feature column and a label column")
    li = _label_index(header, label_col)
    n_cols = len(header)

    feats, tokens = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != n_cols:
            raise SchemaError(
                f"{path}: line {lineno} has {len(row)} fields, expected {n_cols}"
            )
        values = []
        for col, cell in enumerate(row):
            if col == li:
                continue
            try:
                v = float(cell)
            except ValueError:
                raise SchemaError(
                    f"{path}: line {lineno}, column {col + 1} ({header[col]!r}): "
                    f"non-numeric value {cell!r}"
                ) from None
            if not math.isfinite(v):
                raise SchemaError(
                    f"{path}: line {lineno}, column {col + 1} ({header[col]!r}): "
                    f"non-finite value {cell!r}"
                )
            values.append(v)
        feats.append(values)
        tokens.append(row[li].strip())
    if not feats:
        raise SchemaError(f"{path}: no data rows")

    distinct = sorted(set(tokens))
    if len(distinct) > 2:
        raise SchemaError(f"{path}: label column has {len(distinct)} distinct values {distinct[:5]}")
    if positive_label is not None:
        if positive_label not in distinct:
            raise SchemaError(f"{path}: positive label {positive_label!r} not among {distinct}")
        pos_tok = positive_label
    else:
        # on a tie the lexically larger token wins, so "1" beats "0"
        pos_tok = min(reversed(distinct), key=tokens.count)
    other = [t for t in distinct if t != pos_tok]
    neg_tok = other[0] if other else ""
    labels = np.array([t == pos_tok for t in tokens], dtype=np.int64)
    names = [h for i, h in enumerate(header) if i != li]
    return LabeledDataset(
        np.array(feats, dtype=np.float64), labels, positive_class=1,
        feature_names=names, label_tokens=(neg_tok, pos_tok),
        label_name=header[li], label_position=li,
    )


def _fmt(v: float) -> str:
    return repr(float(v))


def _columns(ds: LabeledDataset):
    names = list(ds.feature_names or [f"x{j}" for j in range(ds.n_features)])
    label_name = ds.label_name or "label"
    pos = ds.label_position if ds.label_position is not None else len(names)
    return names[:pos] + [label_name] + names[pos:], pos


def write_csv(data: Union[LabeledDataset, ResampleResult], path,
              provenance_path=None) -> None:
    """Write features and label tokens; optionally a provenance sidecar.

    Floats are written with ``repr`` so values round-trip bit-exactly. The
    sidecar lists, per synthetic row, its output row index, source row,
    neighbour row (both input-row indices), the random draw and the
    interpolation step.
    """
    result = data if isinstance(data, ResampleResult) else None
    ds = result.dataset if result is not None else data
    header, pos = _columns(ds)
    tokens = ds.label_tokens or ("0", "1")
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for x, y in zip(ds.features, ds.labels):
            cells = [_fmt(v) for v in x]
            cells.insert(pos, tokens[int(y)])
            w.writerow(cells)
    if provenance_path is not None:
        if result is None:
            raise ValueError("provenance requires a ResampleResult")
        write_provenance(result, provenance_path)


def write_provenance(result: ResampleResult, path) -> None:
    prov = result.provenance
    rows = np.flatnonzero(result.synthetic)
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["row", "source", "neighbor", "draw", "step"])
        for i in range(len(prov)):
            w.writerow([int(rows[i]), int(prov.source[i]), int(prov.neighbor[i]),
                        _fmt(prov.draw[i]), _fmt(prov.step[i])])


# -- reports -----------------------------------------------------------------

def _as_list(reports) -> list:
    return [reports] if isinstance(reports, ExperimentReport) else list(reports)


def report_to_dict(report: ExperimentReport) -> dict:
    cells = []
    for m in report.samplers:
        for c in report.classifiers:
            cell = report.cell(m, c)
            cells.append({
                "sampler": m,
                "classifier": c,
                "mean": cell.mean.as_dict(),
                "folds": {k: [getattr(b, k) for b in cell.folds] for k in METRIC_NAMES},
            })
    return {"dataset": report.dataset_name, "header": report.header, "cells": cells}


def _markdown(reports) -> str:
    samplers = []
    for r in reports:
        samplers += [s for s in r.samplers if s not in samplers]
    out = []
    for metric in METRIC_NAMES:
        out.append(f"### {metric} (mean over folds)")
        out.append("")
        out.append("| dataset | classifier | " + " | ".join(samplers) + " |")
        out.append("|---|---|" + "---:|" * len(samplers))
        for r in reports:
            for c in r.classifiers:
                vals = []
                for s in samplers:
                    cell = r.cells.get((s, c))
                    vals.append(f"{getattr(cell.mean, metric):.4f}" if cell else "")
                out.append(f"| {r.dataset_name} | {c} | " + " | ".join(vals) + " |")
        out.append("")
    return "\n".join(out)


CSV_COLUMNS = ("dataset", "sampler", "classifier", "fold") + METRIC_NAMES


def _csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        for s in r.samplers:
            for c in r.classifiers:
                cell = r.cell(s, c)
                for f, b in enumerate(cell.folds):
                    w.writerow([r.dataset_name, s, c, f] + [_fmt(getattr(b, k)) for k in METRIC_NAMES])
                w.writerow([r.dataset_name, s, c, "mean"]
                           + [_fmt(getattr(cell.mean, k)) for k in METRIC_NAMES])
    return buf.getvalue()


def render_report(reports, fmt: str = "markdown") -> str:
    """Render one report or a sequence of them as markdown, json or csv.

    Markdown gives one table per metric with a row per (dataset, classifier)
    and a column per sampler. JSON carries the header and per-fold values.
    CSV is long format with one row per fold plus a ``mean`` row per cell.
    """
    reports = _as_list(reports)
    if fmt == "markdown":
        return _markdown(reports)
    if fmt == "json":
        payload = [report_to_dict(r) for r in reports]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    if fmt == "csv":
        return _csv(reports)
    raise ValueError(f"unknown report format {fmt!r}")


def read_report_csv(text: str) -> dict:
    """Parse :func:`render_report` CSV output back to ``{(dataset, sampler, classifier, fold): {metric: value}}``."""
    reader = csv.DictReader(io.StringIO(text))
    out = {}
    for row in reader:
        fold = row["fold"] if row["fold"] == "mean" else int(row["fold"])
        out[(row["dataset"], row["sampler"], row["classifier"], fold)] = {
            k: float(row[k]) for k in METRIC_NAMES
        }
    return out
