from __future__ import annotations

import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from app.core.settings_service import JOBS_ENV, SettingsService
from app.models.settings import VerifierSettings


class SettingsServiceTest(unittest.TestCase):
    def setUp(self) -> None:
        self.tempdir = tempfile.TemporaryDirectory()
        self.root = Path(self.tempdir.name)
        self.settings_path = self.root / "settings.json"
        self.service = SettingsService(settings_path=str(self.settings_path))
        environment = {key: value for key, value in os.environ.items() if key != JOBS_ENV}
        self.env_patch = patch.dict(os.environ, environment, clear=True)
        self.env_patch.start()

    def tearDown(self) -> None:
        self.env_patch.stop()
        self.tempdir.cleanup()

    def test_load_creates_default_file_when_missing(self) -> None:
        settings = self.service.load()
        self.assertTrue(self.settings_path.exists())
        self.assertEqual(settings.default_jobs, 1)
        self.assertEqual(settings.output_format, "text")
        self.assertEqual(settings.cyclotomic_order_limit, 10_000)

    def test_save_and_load_roundtrip(self) -> None:
        settings = VerifierSettings(
            default_jobs=4,
            output_format="json",
            approx_digits=9,
            cyclotomic_order_limit=500,
            log_dir=str(self.root / "logs"),
        )
        self.service.save(settings)

        loaded = self.service.load()
        self.assertEqual(loaded.default_jobs, 4)
        self.assertEqual(loaded.output_format, "json")
        self.assertEqual(loaded.approx_digits, 9)
        self.assertEqual(loaded.cyclotomic_order_limit, 500)
        self.assertEqual(loaded.log_dir, str((self.root / "logs").resolve()))

    def test_junk_values_are_sanitized(self) -> None:
        self.settings_path.write_text(
            '{"default_jobs": "many", "output_format": "xml", "approx_digits": 99}\n',
            encoding="utf-8",
        )
        loaded = self.service.load()
        self.assertEqual(loaded.default_jobs, 1)
        self.assertEqual(loaded.output_format, "text")
        self.assertEqual(loaded.approx_digits, 15)

    def test_corrupt_file_falls_back_to_defaults(self) -> None:
        self.settings_path.write_text("{not json", encoding="utf-8")
        loaded = self.service.load()
        self.assertEqual(loaded.output_format, "text")
        self.assertIn('"output_format"', self.settings_path.read_text(encoding="utf-8"))

    def test_relative_log_dir_resolves_from_settings_directory(self) -> None:
        self.settings_path.write_text('{"log_dir":"logs"}\n', encoding="utf-8")
        loaded = self.service.load()
        self.assertEqual(loaded.log_dir, str((self.root / "logs").resolve()))

    def test_jobs_environment_override(self) -> None:
        with patch.dict(os.environ, {JOBS_ENV: "3"}):
            self.assertEqual(self.service.load().default_jobs, 3)
        with patch.dict(os.environ, {JOBS_ENV: "lots"}):
            self.assertEqual(self.service.load().default_jobs, 1)

    def test_default_path_shares_the_log_base_directory(self) -> None:
        with patch.dict(os.environ, {"LOCALAPPDATA": str(self.root)}):
            settings_path = SettingsService.default_settings_path()
            self.assertEqual(settings_path, self.root / "ReciprocityDesk" / "settings.json")
            self.assertEqual(SettingsService.default_settings().log_dir, str(settings_path.parent / "logs"))

    def test_reset_to_default(self) -> None:
        self.service.save(VerifierSettings(default_jobs=8, output_format="csv"))
        reset = self.service.reset_to_default()
        self.assertEqual(reset.default_jobs, 1)
        self.assertEqual(self.service.load().output_format, "text")


if __name__ == "__main__":
    unittest.main()
