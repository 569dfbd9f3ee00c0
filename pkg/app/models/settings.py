from __future__ import annotations

from dataclasses import asdict, dataclass

OUTPUT_FORMATS = ("text", "json", "csv")


@dataclass(slots=True)
class VerifierSettings:
    schema_version: int = 1
    default_jobs: int = 1
    output_format: str = "text"
    approx_digits: int = 6
    cyclotomic_order_limit: int = 10_000
    log_dir: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> VerifierSettings:
        if not isinstance(data, dict):
            return cls()

        raw = cls(
            schema_version=cls._to_int(data.get("schema_version"), 1),
            default_jobs=cls._to_int(data.get("default_jobs"), 1),
            output_format=cls._to_str(data.get("output_format"), "text"),
            approx_digits=cls._to_int(data.get("approx_digits"), 6),
            cyclotomic_order_limit=cls._to_int(data.get("cyclotomic_order_limit"), 10_000),
            log_dir=cls._to_str(data.get("log_dir"), ""),
        )
        return raw.sanitized()

    def sanitized(self) -> VerifierSettings:
        output_format = self.output_format if self.output_format in OUTPUT_FORMATS else "text"
        return VerifierSettings(
            schema_version=max(1, int(self.schema_version)),
            default_jobs=max(1, min(int(self.default_jobs), 64)),
            output_format=output_format,
            approx_digits=max(1, min(int(self.approx_digits), 15)),
            cyclotomic_order_limit=max(1, min(int(self.cyclotomic_order_limit), 100_000)),
            log_dir=self.log_dir.strip(),
        )

    @staticmethod
    def _to_str(value, default: str) -> str:
        if value is None:
            return default
        return str(value)

    @staticmethod
    def _to_int(value, default: int) -> int:
        try:
            return int(value)
        except (TypeError, ValueError):
            return default
