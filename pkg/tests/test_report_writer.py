from __future__ import annotations

import csv
import io
import json
import unittest

from app.core.errors import UsageError
from app.core.report_writer import CSV_COLUMNS, render_csv, render_json, render_qr_table, render_reports, render_text
from app.models.dto import Failure, QuadraticReciprocityRecord, VerificationReport


def _reports() -> list[VerificationReport]:
    return [
        VerificationReport(law="qr", instances=72, elapsed=0.25),
        VerificationReport(
            law="bridge",
            instances=4,
            failures=[Failure(("2", "3", "7"), "-1", "1")],
            elapsed=1.5,
        ),
    ]


class ReportWriterTest(unittest.TestCase):
    def test_text(self) -> None:
        text = render_text(_reports())
        self.assertEqual(
            text.splitlines(),
            [
                "law=qr instances=72 failures=0 elapsed=0.250s status=PASS",
                "law=bridge instances=4 failures=1 elapsed=1.500s status=FAIL",
                "  inputs=(2, 3, 7) expected=-1 got=1",
            ],
        )

    def test_json_schema(self) -> None:
        payload = json.loads(render_json(_reports()))
        self.assertEqual(payload["schema"], 1)
        self.assertFalse(payload["passed"])
        self.assertEqual([report["law"] for report in payload["reports"]], ["qr", "bridge"])
        self.assertEqual(payload["reports"][1]["failures"], [{"inputs": ["2", "3", "7"], "expected": "-1", "got": "1"}])
        self.assertEqual(render_json(_reports()), render_json(_reports()))

    def test_csv_rows(self) -> None:
        rows = list(csv.reader(io.StringIO(render_csv(_reports()))))
        self.assertEqual(tuple(rows[0]), CSV_COLUMNS)
        self.assertEqual(rows[1], ["qr", "summary", "", "", "", "72", "0", "true", "0.250000"])
        self.assertEqual(rows[2], ["bridge", "failure", "2 3 7", "-1", "1", "", "", "", ""])
        self.assertEqual(rows[3][:2], ["bridge", "summary"])
        self.assertEqual(rows[3][7], "false")

    def test_unknown_format(self) -> None:
        with self.assertRaises(UsageError):
            render_reports(_reports(), "xml")

    def test_qr_table(self) -> None:
        record = QuadraticReciprocityRecord(
            p=3, q=7, lhs=-1, rhs=-1, local_factors={"inf": 1, "2": -1, "3": 1, "7": -1}, legendre_pq=-1, legendre_qp=1
        )
        lines = render_qr_table([record]).splitlines()
        self.assertEqual(lines[2].split(), ["3", "7", "-1", "+1", "-1", "-1"])


class VerificationReportTest(unittest.TestCase):
    def test_merge_is_order_independent(self) -> None:
        first = VerificationReport("qr", 3, [Failure(("5", "7"), "1", "-1")], 0.5)
        second = VerificationReport("qr", 2, [Failure(("3", "5"), "1", "-1")], 0.25)
        merged = first.merge(second)
        self.assertEqual(merged.instances, 5)
        self.assertEqual(merged.failures, second.merge(first).failures)
        self.assertEqual(merged.failures[0].inputs, ("3", "5"))

    def test_merge_rejects_other_law(self) -> None:
        with self.assertRaises(ValueError):
            VerificationReport("qr").merge(VerificationReport("crt"))


if __name__ == "__main__":
    unittest.main()
