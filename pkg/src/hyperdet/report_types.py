from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class CommandReport:
    """Class to represent the outcome of one command with its payload and check status."""

    command: str
    payload: dict[str, Any]
    checks_passed: bool = True
    budget_required: Optional[int] = field(default=None)
