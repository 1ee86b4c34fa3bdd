"""
Report assembly and rendering

Reports carry no timing and are rendered with sorted keys, so the same
request always produces byte-identical output.
"""

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional


@dataclass
class Report:
    command: str
    scenario: Optional[dict]
    results: Dict[str, Any] = dc_field(default_factory=dict)
    failures: List[str] = dc_field(default_factory=list)
    raw: Optional[str] = None  # pre-rendered output (ascii / svg diagrams)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, name: str, ok: bool):
        """Record a named assertion"""
        if not ok:
            self.failures.append(name)

    def as_dict(self) -> dict:
        out = {"command": self.command, "results": self.results, "passed": self.passed}
        if self.failures:
            out["failures"] = list(self.failures)
        if self.scenario is not None:
            out["scenario"] = self.scenario
        return out


def _scalar_text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (list, tuple)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _text_lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    for key in sorted(value, key=str):
        item = value[key]
        if isinstance(item, dict) and item:
            lines.append(f"{pad}{key}:")
            lines.extend(_text_lines(item, indent + 1))
        elif isinstance(item, list) and item and all(isinstance(x, dict) for x in item):
            lines.append(f"{pad}{key}:")
            for k, x in enumerate(item):
                lines.append(f"{pad}  [{k}]")
                lines.extend(_text_lines(x, indent + 2))
        else:
            lines.append(f"{pad}{key}: {_scalar_text(item)}")
    return lines


def render_structured(report: Report) -> str:
    return json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"


def render_text(report: Report) -> str:
    lines = [f"command: {report.command}"]
    if report.scenario is not None:
        lines.append(f"scenario: {report.scenario.get('name', '')}")
    lines.extend(_text_lines(report.results))
    if report.failures:
        lines.append("failed:")
        lines.extend(f"  {name}" for name in report.failures)
    lines.append(f"status: {'passed' if report.passed else 'FAILED'}")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str) -> str:
    if report.raw is not None and fmt not in ("text", "structured"):
        return report.raw
    if fmt == "structured":
        return render_structured(report)
    return render_text(report)
