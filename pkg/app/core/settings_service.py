from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from app.core.app_logging import app_data_dir, default_log_dir
from app.models.settings import VerifierSettings

logger = logging.getLogger(__name__)

JOBS_ENV = "RECIPROCITY_JOBS"


class SettingsService:
    def __init__(self, settings_path: str | None = None) -> None:
        self.settings_path = Path(settings_path) if settings_path else self.default_settings_path()
        self.settings_path.parent.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def default_settings_path() -> Path:
        return app_data_dir() / "settings.json"

    @staticmethod
    def default_settings() -> VerifierSettings:
        return VerifierSettings(log_dir=str(default_log_dir())).sanitized()

    def load(self) -> VerifierSettings:
        if not self.settings_path.exists():
            default = self.default_settings()
            self.save(default)
            return self._apply_environment(default)

        try:
            payload = json.loads(self.settings_path.read_text(encoding="utf-8"))
            settings = VerifierSettings.from_dict(payload)
            merged = self._merge_with_defaults(settings)
        except Exception:
            logger.warning("Settings file is unreadable, falling back to defaults: %s", self.settings_path)
            merged = self.default_settings()
            self.save(merged)
        return self._apply_environment(merged)

    def save(self, settings: VerifierSettings) -> VerifierSettings:
        normalized = self._merge_with_defaults(settings.sanitized())
        content = json.dumps(normalized.to_dict(), ensure_ascii=False, indent=2)
        self.settings_path.write_text(content + "\n", encoding="utf-8")
        return normalized

    def reset_to_default(self) -> VerifierSettings:
        default = self.default_settings()
        return self.save(default)

    def _merge_with_defaults(self, settings: VerifierSettings) -> VerifierSettings:
        defaults = self.default_settings()
        log_dir = settings.log_dir or defaults.log_dir
        candidate = Path(log_dir).expanduser()
        if not candidate.is_absolute():
            candidate = self.settings_path.parent / candidate
        return VerifierSettings(
            schema_version=settings.schema_version,
            default_jobs=settings.default_jobs,
            output_format=settings.output_format,
            approx_digits=settings.approx_digits,
            cyclotomic_order_limit=settings.cyclotomic_order_limit,
            log_dir=str(candidate.resolve()),
        ).sanitized()

    @staticmethod
    def _apply_environment(settings: VerifierSettings) -> VerifierSettings:
        raw = os.environ.get(JOBS_ENV)
        if not raw:
            return settings
        try:
            jobs = int(raw)
        except ValueError:
            logger.warning("Ignoring %s=%r: not an integer", JOBS_ENV, raw)
            return settings
        settings.default_jobs = jobs
        return settings.sanitized()
