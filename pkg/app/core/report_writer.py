from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence

from app.core.errors import UsageError
from app.models.dto import QuadraticReciprocityRecord, VerificationReport

REPORT_SCHEMA = 1
CSV_COLUMNS = ("law", "row", "inputs", "expected", "got", "instances", "failures", "passed", "elapsed")


def render_reports(reports: Sequence[VerificationReport], output_format: str) -> str:
    if output_format == "text":
        return render_text(reports)
    if output_format == "json":
        return render_json(reports)
    if output_format == "csv":
        return render_csv(reports)
    raise UsageError(f"未知の出力形式です: {output_format}（text, json, csv から選んでください）")


def render_text(reports: Sequence[VerificationReport]) -> str:
    lines: list[str] = []
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        lines.append(
            f"law={report.law} instances={report.instances} failures={len(report.failures)} "
            f"elapsed={report.elapsed:.3f}s status={status}"
        )
        for failure in report.failures:
            lines.append(f"  inputs=({', '.join(failure.inputs)}) expected={failure.expected} got={failure.got}")
    return "\n".join(lines) + "\n"


def render_json(reports: Sequence[VerificationReport]) -> str:
    payload = {
        "schema": REPORT_SCHEMA,
        "passed": all(report.passed for report in reports),
        "reports": [report.to_dict() for report in reports],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def render_csv(reports: Sequence[VerificationReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        for failure in report.failures:
            writer.writerow([report.law, "failure", " ".join(failure.inputs), failure.expected, failure.got, "", "", "", ""])
        writer.writerow(
            [
                report.law,
                "summary",
                "",
                "",
                "",
                report.instances,
                len(report.failures),
                "true" if report.passed else "false",
                f"{report.elapsed:.6f}",
            ]
        )
    return buffer.getvalue()


def render_qr_table(records: Sequence[QuadraticReciprocityRecord]) -> str:
    header = f"{'p':>5} {'q':>5} {'(p/q)':>6} {'(q/p)':>6} {'sign':>5} {'<p,q>_2':>8}"
    lines = [header, "-" * len(header)]
    for record in records:
        lines.append(
            f"{record.p:>5} {record.q:>5} {record.legendre_pq:>+6d} {record.legendre_qp:>+6d} {record.rhs:>+5d} {record.local_factors['2']:>+8d}"
        )
    return "\n".join(lines) + "\n"
