"""Batch front end: CSV ingestion, config-driven fits, report emission.

Subcommands:
    fit <config.json>        run a configured fit, write report + plot data
    monthly <in.csv> <out.csv>   aggregate 365 daily columns to 12 monthly means
    validate <config.json>   check a config without running it

Exit codes: 0 success, 1 I/O or parse failure, 2 configuration or fit failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .basis import BasisSystem, basis_from_dict, basis_to_dict
from .errors import InvalidArgument, ParseError, SchemaMismatch
from .fdata import FunctionalDataSet, eval_fd, smooth_data
from .fit import FPCLogitFit, fit_fpc, fit_fpc_step, fit_pc, fit_pc_step
from .logit import logit_summary, summary_to_json
from .metrics import confusion_ccr

MODES = ("pc", "fpc", "pc-step", "fpc-step")

# 1-based inclusive day ranges of each month in a 365-day year
MONTH_RANGES = (
    (1, 31), (32, 59), (60, 90), (91, 120), (121, 151), (152, 181),
    (182, 212), (213, 243), (244, 273), (274, 304), (305, 334), (335, 365),
)


# ---------------------------------------------------------------------------
# CSV ingestion / export

def _parse_cell(text: str, line: int, column: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"cell {text!r} is not numeric", line=line, column=column) from None


def ingest_curves(path) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    """Read a curves CSV: header = numeric argvals, first column = row label."""
    rows: list[list[str]] = []
    with open(path, newline="") as handle:
        for row in csv.reader(handle):
            rows.append(row)
    rows = [r for r in rows if r]
    if len(rows) < 2:
        raise ParseError(f"{path}: need a header row and at least one curve")
    header = rows[0]
    if len(header) < 2:
        raise ParseError(f"{path}: header has no argument values", line=1)
    argvals = np.array([_parse_cell(c, 1, j + 2) for j, c in enumerate(header[1:])])
    if np.any(np.diff(argvals) <= 0):
        raise ParseError(f"{path}: header argvals must be strictly increasing", line=1)
    labels = []
    data = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(
                f"{path}: expected {len(header)} cells, got {len(row)}", line=i
            )
        labels.append(row[0])
        data.append([_parse_cell(c, i, j + 2) for j, c in enumerate(row[1:])])
    return argvals, np.array(data), tuple(labels)


def ingest_table(path) -> tuple[tuple[str, ...], tuple[str, ...], np.ndarray]:
    """Read a covariates CSV: named numeric columns, first column = row label."""
    with open(path, newline="") as handle:
        rows = [r for r in csv.reader(handle) if r]
    if len(rows) < 2:
        raise ParseError(f"{path}: need a header row and at least one observation")
    header = rows[0]
    names = tuple(header[1:])
    if len(set(names)) != len(names):
        raise ParseError(f"{path}: duplicate column names in header", line=1)
    labels = []
    data = []
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(
                f"{path}: expected {len(header)} cells, got {len(row)}", line=i
            )
        labels.append(row[0])
        data.append([_parse_cell(c, i, j + 2) for j, c in enumerate(row[1:])])
    return tuple(labels), names, np.array(data).reshape(len(labels), len(names))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def export_curves(path, argvals, values, labels=None) -> None:
    """Write curves to CSV in the same layout ingest_curves reads."""
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    if labels is None:
        labels = [f"curve{i + 1}" for i in range(values.shape[0])]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id"] + [_fmt(t) for t in argvals])
        for label, row in zip(labels, values):
            writer.writerow([label] + [_fmt(v) for v in row])


def monthly_means(daily) -> np.ndarray:
    """Aggregate n x 365 daily observations into n x 12 monthly means."""
    daily = np.atleast_2d(np.asarray(daily, dtype=np.float64))
    if daily.shape[1] != 365:
        raise InvalidArgument(f"expected 365 daily columns, got {daily.shape[1]}")
    out = np.empty((daily.shape[0], 12))
    for m, (a, b) in enumerate(MONTH_RANGES):
        out[:, m] = daily[:, a - 1 : b].mean(axis=1)
    return out


# ---------------------------------------------------------------------------
# Configuration

@dataclass(frozen=True)
class PredictorSpec:
    file: Path
    label: str
    basis: BasisSystem
    basis_dict: dict


@dataclass(frozen=True)
class FitConfig:
    response: str
    covariates_file: Path
    scalar_covariates: tuple[str, ...]
    predictors: tuple[PredictorSpec, ...]
    mode: str
    ncomp: tuple[int, ...] | None
    output_dir: Path
    beta_grid: int = 101
    threshold: float = 0.5


_KNOWN_KEYS = {
    "response", "covariates_file", "scalar_covariates", "functional_predictors",
    "mode", "ncomp", "output_dir", "beta_grid", "threshold",
}


def _cfg_fail(fieldname: str, message: str):
    raise InvalidArgument(f"config field '{fieldname}': {message}")


def parse_config(raw: dict, base_dir: Path) -> FitConfig:
    """Validate a raw config mapping; error messages name the offending field."""
    if not isinstance(raw, dict):
        raise InvalidArgument("config must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        _cfg_fail(sorted(unknown)[0], "unknown field")
    for key in ("response", "covariates_file", "mode", "output_dir"):
        if not isinstance(raw.get(key), str) or not raw.get(key):
            _cfg_fail(key, "required and must be a non-empty string")
    mode = raw["mode"]
    if mode not in MODES:
        _cfg_fail("mode", f"must be one of {MODES}")
    scalars = raw.get("scalar_covariates", [])
    if not isinstance(scalars, list) or not all(isinstance(s, str) and s for s in scalars):
        _cfg_fail("scalar_covariates", "must be a list of column names")
    if len(set(scalars)) != len(scalars):
        _cfg_fail("scalar_covariates", "names must be unique")
    if raw["response"] in scalars:
        _cfg_fail("scalar_covariates", "must not include the response column")
    preds_raw = raw.get("functional_predictors")
    if not isinstance(preds_raw, list) or not preds_raw:
        _cfg_fail("functional_predictors", "must be a non-empty list")
    predictors = []
    labels = []
    for i, spec in enumerate(preds_raw):
        fieldname = f"functional_predictors[{i}]"
        if not isinstance(spec, dict):
            _cfg_fail(fieldname, "must be an object")
        extra = set(spec) - {"file", "label", "basis"}
        if extra:
            _cfg_fail(f"{fieldname}.{sorted(extra)[0]}", "unknown field")
        for key in ("file", "label"):
            if not isinstance(spec.get(key), str) or not spec.get(key):
                _cfg_fail(f"{fieldname}.{key}", "required and must be a non-empty string")
        label = spec["label"]
        if not all(c.isalnum() or c in "_-" for c in label):
            _cfg_fail(f"{fieldname}.label", "may contain only letters, digits, '_' and '-'")
        labels.append(label)
        try:
            basis = basis_from_dict(spec.get("basis"))
        except InvalidArgument as exc:
            _cfg_fail(f"{fieldname}.basis", str(exc))
        path = (base_dir / spec["file"]).resolve()
        if not path.is_file():
            _cfg_fail(f"{fieldname}.file", f"file not found: {path}")
        predictors.append(
            PredictorSpec(file=path, label=label, basis=basis, basis_dict=basis_to_dict(basis))
        )
    if len(set(labels)) != len(labels):
        _cfg_fail("functional_predictors", "labels must be unique")
    ncomp_raw = raw.get("ncomp")
    if mode in ("pc", "fpc"):
        if not isinstance(ncomp_raw, list) or len(ncomp_raw) != len(predictors):
            _cfg_fail("ncomp", "must be a list with one count per functional predictor")
        if not all(
            isinstance(q, int) and not isinstance(q, bool) and q >= 0 for q in ncomp_raw
        ):
            _cfg_fail("ncomp", "entries must be non-negative integers")
        ncomp = tuple(ncomp_raw)
    else:
        if ncomp_raw is not None:
            _cfg_fail("ncomp", f"not allowed in mode {mode!r}")
        ncomp = None
    beta_grid = raw.get("beta_grid", 101)
    if not isinstance(beta_grid, int) or isinstance(beta_grid, bool) or beta_grid < 2:
        _cfg_fail("beta_grid", "must be an integer >= 2")
    threshold = raw.get("threshold", 0.5)
    if (
        not isinstance(threshold, (int, float))
        or isinstance(threshold, bool)
        or not 0.0 <= float(threshold) <= 1.0
    ):
        _cfg_fail("threshold", "must be a number in [0, 1]")
    cov_path = (base_dir / raw["covariates_file"]).resolve()
    if not cov_path.is_file():
        _cfg_fail("covariates_file", f"file not found: {cov_path}")
    return FitConfig(
        response=raw["response"],
        covariates_file=cov_path,
        scalar_covariates=tuple(scalars),
        predictors=tuple(predictors),
        mode=mode,
        ncomp=ncomp,
        output_dir=(base_dir / raw["output_dir"]).resolve(),
        beta_grid=beta_grid,
        threshold=float(threshold),
    )


def load_config(path) -> FitConfig:
    import json

    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(raw, path.parent)


# ---------------------------------------------------------------------------
# Deterministic JSON emission (floats at 17 significant digits)

def _json_scalar(value) -> str:
    import json as _json

    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            raise InvalidArgument(f"non-finite value {x} cannot be written to the report")
        return _fmt(x)
    if isinstance(value, str):
        return _json.dumps(value)
    raise InvalidArgument(f"cannot serialize {type(value).__name__} to the report")


def dump_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{inner}{_json_scalar(str(k))}: {dump_json(v, indent + 1)}"
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(value, (list, tuple, np.ndarray)):
        items = list(value)
        if not items:
            return "[]"
        parts = [f"{inner}{dump_json(v, indent + 1)}" for v in items]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    return _json_scalar(value)


# ---------------------------------------------------------------------------
# Fit orchestration

class StageFailure(Exception):
    """Wraps a module error with the pipeline stage where it happened."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@contextmanager
def _stage(name: str):
    try:
        yield
    except StageFailure:
        raise
    except (ValueError, OSError) as exc:
        raise StageFailure(name, exc) from exc


def _build_report(config: FitConfig, result: FPCLogitFit, y: np.ndarray) -> dict:
    table, ccr = confusion_ccr(y, result.glm.fitted, config.threshold)
    summary = summary_to_json(logit_summary(result.glm))
    predictors = []
    for spec, letter, fpca, selected, vtab, beta in zip(
        config.predictors, result.labels, result.fpcas, result.selected,
        result.pc_variance, result.betalist,
    ):
        predictors.append(
            {
                "label": spec.label,
                "letter": letter,
                "basis": spec.basis_dict,
                "selected_components": list(selected),
                "variance": {
                    "labels": list(vtab.labels),
                    "percent": list(vtab.percent),
                    "cumulative": list(vtab.cumulative),
                },
                "beta_coefs": list(beta.coefs[0]),
            }
        )
    report = {
        "mode": config.mode,
        "response": config.response,
        "n_obs": int(y.size),
        "threshold": config.threshold,
        "glm": {
            **summary,
            "converged": result.glm.converged,
            "separation": result.glm.separation_flag,
        },
        "intercept_alpha": result.intercept,
        "scalar_coefs": dict(result.scalar_coefs),
        "predictors": predictors,
        "auc": result.roc.auc,
        "ccr": ccr,
        "confusion": [[int(table[0, 0]), int(table[0, 1])],
                      [int(table[1, 0]), int(table[1, 1])]],
        "stepwise_trace": None,
    }
    if result.trace is not None:
        report["stepwise_trace"] = [
            {"action": s.action, "name": s.name, "aic": s.aic} for s in result.trace.steps
        ]
        report["stepwise_skipped"] = [
            {"round": r, "name": name} for r, name in result.trace.skipped
        ]
    return report


def run_fit(config: FitConfig, stdout=None) -> dict:
    """Run a configured fit; writes report.json, beta_*.csv and roc.csv.

    Returns the report mapping (the same structure written to disk).
    """
    stdout = stdout or sys.stdout
    with _stage("ingest covariates"):
        row_labels, colnames, table = ingest_table(config.covariates_file)
        available = dict(zip(colnames, table.T))
        if config.response not in available:
            raise InvalidArgument(
                f"response column {config.response!r} not in {config.covariates_file}"
            )
        y = available[config.response]
        nonfd = {}
        for name in config.scalar_covariates:
            if name not in available:
                raise InvalidArgument(
                    f"covariate column {name!r} not in {config.covariates_file}"
                )
            nonfd[name] = available[name]

    fds: list[FunctionalDataSet] = []
    for spec in config.predictors:
        with _stage(f"smooth predictor {spec.label!r}"):
            argvals, observations, curve_labels = ingest_curves(spec.file)
            if curve_labels != row_labels:
                raise SchemaMismatch(
                    f"row labels of {spec.file} do not match the covariates file"
                )
            fds.append(smooth_data(argvals, observations, spec.basis))

    with _stage("fit"):
        if config.mode == "pc":
            result = fit_pc(y, fds, config.ncomp, nonfd)
        elif config.mode == "fpc":
            result = fit_fpc(y, fds, config.ncomp, nonfd)
        elif config.mode == "pc-step":
            result = fit_pc_step(y, fds, nonfd)
        else:
            result = fit_fpc_step(y, fds, nonfd)

    with _stage("report"):
        report = _build_report(config, result, y)
        out = config.output_dir
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(dump_json(report) + "\n")
        for spec, beta in zip(config.predictors, result.betalist):
            lo, hi = spec.basis.rangeval
            grid = np.linspace(lo, hi, config.beta_grid)
            values = eval_fd(beta, grid)[0]
            with open(out / f"beta_{spec.label}.csv", "w", newline="") as handle:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(["t", "beta"])
                for t, v in zip(grid, values):
                    writer.writerow([_fmt(t), _fmt(v)])
        with open(out / "roc.csv", "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["fpr", "tpr", "threshold"])
            for f, t, thr in zip(result.roc.fpr, result.roc.tpr, result.roc.thresholds):
                writer.writerow([_fmt(f), _fmt(t), str(thr) if not math.isfinite(thr) else _fmt(thr)])

    print(f"mode: {config.mode}    response: {config.response}    n: {y.size}", file=stdout)
    print(logit_summary(result.glm).to_text(), file=stdout)
    print(f"\nIntercept alpha: {result.intercept:.6g}", file=stdout)
    print(f"AUC: {result.roc.auc:.6g}", file=stdout)
    print(f"CCR: {report['ccr']:.6g}% (threshold {config.threshold:g})", file=stdout)
    for spec, vtab in zip(config.predictors, result.pc_variance):
        print(f"\nExplained variance [{spec.label}]:", file=stdout)
        print(vtab.to_text(), file=stdout)
    if result.trace is not None:
        print("\nStepwise trace:", file=stdout)
        for s in result.trace.steps:
            print(f"  {s.action} {s.name}  (AIC {s.aic:.6g})", file=stdout)
    print(f"\nreport written to {config.output_dir / 'report.json'}", file=stdout)
    return report


# ---------------------------------------------------------------------------
# Entry point

def _cmd_fit(args) -> int:
    config = load_config(args.config)
    run_fit(config)
    return 0


def _cmd_monthly(args) -> int:
    argvals, daily, labels = ingest_curves(args.infile)
    if daily.shape[1] != 365:
        raise InvalidArgument(f"{args.infile}: expected 365 daily columns, got {daily.shape[1]}")
    monthly = monthly_means(daily)
    export_curves(args.outfile, np.arange(1, 13), monthly, labels)
    return 0


def _cmd_validate(args) -> int:
    load_config(args.config)
    print(f"{args.config}: ok")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fpclogit",
        description="Functional principal component logit regression, batch front end.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_fit = sub.add_parser("fit", help="run a configured fit")
    p_fit.add_argument("config", help="path to a JSON fit configuration")
    p_fit.set_defaults(func=_cmd_fit)
    p_month = sub.add_parser("monthly", help="aggregate daily curves to monthly means")
    p_month.add_argument("infile", help="curves CSV with 365 daily columns")
    p_month.add_argument("outfile", help="output CSV with 12 monthly columns")
    p_month.set_defaults(func=_cmd_monthly)
    p_val = sub.add_parser("validate", help="check a fit configuration")
    p_val.add_argument("config", help="path to a JSON fit configuration")
    p_val.set_defaults(func=_cmd_validate)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StageFailure as failure:
        print(f"error in stage '{failure.stage}': {failure.cause}", file=sys.stderr)
        return 1 if isinstance(failure.cause, (ParseError, OSError)) else 2
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
