from __future__ import annotations

import importlib
import logging
import tempfile
import unittest
from pathlib import Path

import app.core.app_logging as app_logging


class AppLoggingTest(unittest.TestCase):
    def setUp(self) -> None:
        self.tempdir = tempfile.TemporaryDirectory()
        self.log_dir = Path(self.tempdir.name)
        # Reset module-level state for deterministic tests.
        importlib.reload(app_logging)

    def tearDown(self) -> None:
        root = logging.getLogger()
        for handler in list(root.handlers):
            root.removeHandler(handler)
            try:
                handler.close()
            except Exception:
                pass
        self.tempdir.cleanup()

    def test_setup_logging_creates_daily_log_file(self) -> None:
        path = app_logging.setup_logging(self.log_dir)
        logging.getLogger("test").info("hello log")

        self.assertTrue(path.exists())
        self.assertTrue(path.name.startswith("reciprocity-"))
        content = path.read_text(encoding="utf-8")
        self.assertIn("hello log", content)
        self.assertIn("[INFO]", content)

    def test_setup_logging_is_idempotent(self) -> None:
        first = app_logging.setup_logging(self.log_dir)
        second = app_logging.setup_logging(self.log_dir / "elsewhere")
        self.assertEqual(first, second)
        file_handlers = [h for h in logging.getLogger().handlers if isinstance(h, logging.FileHandler)]
        self.assertEqual(len(file_handlers), 1)

    def test_enable_stderr_logging_adds_one_handler(self) -> None:
        app_logging.enable_stderr_logging()
        app_logging.enable_stderr_logging()
        stream_handlers = [
            h for h in logging.getLogger().handlers if type(h) is logging.StreamHandler
        ]
        self.assertEqual(len(stream_handlers), 1)

    def test_default_log_dir_uses_local_app_data(self) -> None:
        from unittest.mock import patch

        with patch.dict("os.environ", {"LOCALAPPDATA": str(self.log_dir)}):
            self.assertEqual(app_logging.default_log_dir(), self.log_dir / "ReciprocityDesk" / "logs")


if __name__ == "__main__":
    unittest.main()
