# mvre/services/evaluation/report_emitter.py

"""
Rendering of EvalReports as CSV, Markdown or JSON documents.
"""

# Default libs
import io
import json

# Dependencies
import pandas as pd

# Deps from this project
from ...constants.constant import REFERENCE_ROWS
from ...objects.errors import ReportFormatError, ValidationError
from ...objects.eval_report import EvalReport
from ...objects.strategy import StrategyId
from .evaluate import improvement


FORMATS = ("csv", "md", "json")
CSV_COLUMNS = ["strategy", "split", "seed", "mae", "rmse", "n", "config_digest"]


def model_label(strategy: StrategyId) -> str:
    return "Baseline" if strategy == StrategyId.BASELINE else f"Model {strategy.rank}"


def sort_reports(reports: list[EvalReport]) -> list[EvalReport]:
    """ Strategy catalog order, then seed, then split """
    return sorted(reports, key=lambda r: (r.strategy.rank, r.seed, r.split_id))


def _baseline_gain(report: EvalReport, reports: list[EvalReport]) -> str:
    if report.strategy == StrategyId.BASELINE:
        return "-"
    base = next((r for r in reports if r.strategy == StrategyId.BASELINE
        and r.seed == report.seed and r.split_id == report.split_id), None)
    if base is None or base.mae == 0:
        return "-"
    return f"{improvement(base, report):+.1f}%"


def _emit_csv(reports: list[EvalReport]) -> str:
    frame = pd.DataFrame([{
        "strategy": r.strategy.value, "split": r.split_id, "seed": r.seed,
        "mae": r.mae, "rmse": r.rmse, "n": r.n, "config_digest": r.config_digest,
    } for r in reports], columns=CSV_COLUMNS)
    buf = io.StringIO()
    frame.to_csv(buf, index=False, float_format="%.4f", lineterminator="\n")
    return buf.getvalue()


def _emit_md(reports: list[EvalReport], reference: bool) -> str:
    out: list[str] = []
    out.append("## Performance of the strategies")
    out.append("")
    out.append("| Model | Strategy | Split | Seed | MAE | RMSE | n | MAE vs baseline |")
    out.append("|---|---|---|---|---:|---:|---:|---:|")
    for r in reports:
        out.append(f"| {model_label(r.strategy)} | {r.strategy.family} | {r.split_id} | {r.seed} "
            f"| {r.mae:,.0f} | {r.rmse:,.0f} | {r.n} | {_baseline_gain(r, reports)} |")

    kernels = [r for r in reports if r.extra]
    if kernels:
        out.append("")
        out.append("| Model | Seed | Metric | Value |")
        out.append("|---|---|---|---:|")
        for r in kernels:
            for key, value in sorted(r.extra.items()):
                out.append(f"| {model_label(r.strategy)} | {r.seed} | {key} | {value:,.0f} |")

    digests = sorted({r.config_digest for r in reports if r.config_digest})
    if digests:
        out.append("")
        out.append(f"Config digest: {', '.join(digests)}")

    if reference:
        out.append("")
        out.append("### Reference: full-scale Asheville results (external, not reproduced here)")
        out.append("")
        out.append("| Model | Strategy | MAE (USD) | RMSE (USD) |")
        out.append("|---|---|---:|---:|")
        for strategy in StrategyId:
            ref_mae, ref_rmse = REFERENCE_ROWS[strategy.value]
            out.append(f"| {model_label(strategy)} | {strategy.family} | {ref_mae:,} | {ref_rmse:,} |")

    return "\n".join(out) + "\n"


def _emit_json(reports: list[EvalReport], reference: bool, include_timestamps: bool) -> str:
    payload = {"reports": [r.to_dict(include_timestamp=include_timestamps) for r in reports]}
    if reference:
        payload["reference"] = {name: {"mae": m, "rmse": s} for name, (m, s) in REFERENCE_ROWS.items()}
    return json.dumps(payload, indent=2) + "\n"


def emit(reports: list[EvalReport], fmt: str, reference: bool = False,
         include_timestamps: bool = False) -> str:
    """
    Render reports in deterministic order. Identical inputs give
    byte-identical documents; timestamps appear only when asked for.

    Raises:
        ReportFormatError: fmt is not csv, md or json
    """
    fmt = (fmt or "").strip().lower()
    if fmt not in FORMATS:
        raise ReportFormatError(f"Unknown report format '{fmt}', expected one of {', '.join(FORMATS)}")
    if not reports:
        raise ValidationError("No reports to emit")

    ordered = sort_reports(reports)
    if fmt == "csv":
        return _emit_csv(ordered)
    if fmt == "md":
        return _emit_md(ordered, reference)
    return _emit_json(ordered, reference, include_timestamps)
