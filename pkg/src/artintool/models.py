"""Data models for artintool: options, check records and reports."""

from enum import Enum

from pydantic import BaseModel, Field


class OutputFormat(str, Enum):
    """Report output formats."""
    HUMAN = "human"      # Fixed-width table
    RECORDS = "records"  # One JSON record per line


class Status(str, Enum):
    """Outcome of a single verification item."""
    PASS = "ok"
    FAIL = "FAIL"
    VACUOUS = "vacuous"
    EXPECTED_FAIL = "expected-fail"  # Known counterexample reproduced
    UNDETERMINED = "undetermined"    # A search bound was reached

    @property
    def is_success(self) -> bool:
        return self is not Status.FAIL and self is not Status.UNDETERMINED

    @classmethod
    def of(cls, holds: bool) -> "Status":
        return cls.PASS if holds else cls.FAIL


class ToolOptions(BaseModel):
    """Global options shared by every command."""
    cutoff: int = 24            # Word-length bound for lcm search on non-FC input
    radius: int = 2             # Radius of explored Deligne-complex balls
    bound: int = 4              # Length bound for enumerative checks
    output_format: OutputFormat = OutputFormat.HUMAN
    dot_path: str | None = None
    debug_checks: bool = False  # Cross-check Delta by two independent routes
    data_dir: str | None = None


class CheckItem(BaseModel):
    """One line of a verification report."""
    key: str
    label: str = ""
    status: Status
    detail: str = ""
    witness: str = ""


class Report(BaseModel):
    """An ordered list of check items."""
    title: str
    items: list[CheckItem] = Field(default_factory=list)

    def add(
        self,
        key: str,
        status: Status,
        label: str = "",
        detail: str = "",
        witness: str = "",
    ) -> CheckItem:
        item = CheckItem(key=key, label=label, status=status, detail=detail, witness=witness)
        self.items.append(item)
        return item

    def extend(self, other: "Report") -> None:
        self.items.extend(other.items)

    def get(self, key: str) -> CheckItem | None:
        for item in self.items:
            if item.key == key:
                return item
        return None

    @property
    def passed(self) -> bool:
        return all(item.status.is_success for item in self.items)
