"""Deterministic structured-text and CSV rendering of verification runs.

Reports use 12 significant digits so repeated runs with identical inputs are
byte-identical and diffable; the CSV carries full round-trip precision via
repr.  No timestamps, no environment-dependent content.
"""

from __future__ import annotations

from .asymptotics import EquivalenceReport

__all__ = ["fmt", "render_report", "render_samples_csv"]

CSV_HEADER = "psi,s,log_f,prediction_leading,prediction_corrected,ratio"


def fmt(value: float) -> str:
    """12-significant-digit fixed formatting used throughout reports."""
    return f"{value:.12g}"


def _kv(key: str, value) -> str:
    if isinstance(value, float):
        return f"{key} = {fmt(value)}"
    return f"{key} = {value}"


def render_report(report: EquivalenceReport, title: str = "verify") -> str:
    """Structured-text document: input echo, derived values, samples, checks."""
    p = report.params
    lines = [f"report = {title}"]
    lines.append(f"status = {'pass' if report.passed else 'fail'}")
    lines.append("")
    lines.append("[input]")
    lines.append(_kv("a", p.a))
    lines.append(_kv("b", p.b))
    lines.append(_kv("c", p.c))
    lines.append(_kv("offset", p.offset))
    lines.append(_kv("target", report.target_label))
    lines.append(_kv("psi_min", report.grid.psi_values[0]))
    lines.append(_kv("psi_max", report.grid.psi_values[-1]))
    lines.append(_kv("n", len(report.grid)))
    lines.append("")
    lines.append("[derived]")
    lines.append(_kv("regime", p.regime.value))
    lines.append(_kv("d", p.d))
    lines.append(_kv("dual_exp", p.dual_exp))
    lines.append("")
    lines.append("[samples]")
    lines.append("psi s log_f prediction_leading prediction_corrected ratio")
    for s, lead, corr, ratio in zip(
        report.samples,
        report.predictions_leading,
        report.predictions_corrected,
        report.ratios,
    ):
        lines.append(
            " ".join(fmt(v) for v in (s.psi, s.s, s.log_f, lead, corr, ratio))
        )
    if report.mid_sample is not None:
        ms = report.mid_sample
        lines.append("")
        lines.append("[mid]")
        lines.append(_kv("psi", ms.psi))
        lines.append(_kv("log_f", ms.log_f))
        lines.append(_kv("ratio", ms.log_f / (p.d * ms.psi)))
    lines.append("")
    lines.append("[fit]")
    if report.fit is not None:
        lines.append(_kv("exponent_hat", report.fit.exponent_hat))
        lines.append(_kv("coefficient_hat", report.fit.coefficient_hat))
        lines.append(_kv("residual", report.fit.residual))
        lines.append(
            f"window = [{report.fit.window[0]}, {report.fit.window[1]})"
        )
    else:
        lines.append("exponent_hat = unavailable")
    if report.a_hat is not None and report.b_hat is not None:
        lines.append("")
        lines.append("[recovered]")
        lines.append(_kv("a_hat", report.a_hat))
        lines.append(_kv("b_hat", report.b_hat))
        lines.append(_kv("a_rel_gap", abs(report.a_hat - p.a) / abs(p.a)))
        lines.append(_kv("b_rel_gap", abs(report.b_hat - p.b) / abs(p.b)))
    lines.append("")
    lines.append("[checks]")
    for chk in report.checks:
        if chk.limit is None:
            lines.append(f"{chk.name} = {fmt(chk.value)} (informational)")
        else:
            verdict = "pass" if chk.passed else "FAIL"
            lines.append(
                f"{chk.name} = {fmt(chk.value)} (limit {fmt(chk.limit)}) {verdict}"
            )
    for note in report.notes:
        lines.append(f"note = {note}")
    lines.append("")
    return "\n".join(lines)


def render_samples_csv(report: EquivalenceReport) -> str:
    """CSV of (psi, s, log_f, predictions, ratio) at full binary precision."""
    rows = [CSV_HEADER]
    for s, lead, corr, ratio in zip(
        report.samples,
        report.predictions_leading,
        report.predictions_corrected,
        report.ratios,
    ):
        rows.append(
            ",".join(repr(v) for v in (s.psi, s.s, s.log_f, lead, corr, ratio))
        )
    return "\n".join(rows) + "\n"
