#!/usr/bin/env python3
"""
Run Reports

Pydantic models for compute/validate/ordering runs and corpus runs, with
canonical JSON rendering and rich text rendering.
"""

import io
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from skeintrace.corpus import InstanceOutcome


class RunReport(BaseModel):
    """Outcome of one compute, validate or ordering run; deterministic given inputs and seed"""

    status: str = "ok"
    command: str
    run_id: str
    input_digests: Dict[str, str]
    seed: Optional[int] = None
    engine: Optional[str] = None
    policy: Optional[str] = None
    surface: Optional[Dict[str, Any]] = None
    normalization_notes: List[str] = Field(default_factory=list)
    components: List[Dict[str, Any]] = Field(default_factory=list)
    element: Optional[Dict[str, Any]] = None
    positive: Optional[bool] = None
    even: Optional[bool] = None
    x_form: Optional[Dict[str, Any]] = None
    checks: Dict[str, bool] = Field(default_factory=dict)
    output_digest: Optional[str] = None
    timing: Optional[Dict[str, float]] = None


class CorpusReport(BaseModel):
    status: str = "ok"
    command: str = "corpus"
    action: str
    sources: List[str]
    total: int
    passed: int
    failed: int
    instances: List[InstanceOutcome] = Field(default_factory=list)

    @classmethod
    def from_outcomes(cls, action: str, sources: List[str], outcomes: List[InstanceOutcome]) -> "CorpusReport":
        failed = sum(1 for o in outcomes if not o.passed)
        return cls(status="failed" if failed else "ok", action=action, sources=sources, total=len(outcomes),
                   passed=len(outcomes) - failed, failed=failed, instances=outcomes)


def render_json(report: BaseModel) -> str:
    """Sorted-key JSON so identical runs produce identical bytes"""
    return json.dumps(report.model_dump(mode="json", exclude_none=True), indent=2, sort_keys=True) + "\n"


def _console() -> Console:
    return Console(file=io.StringIO(), record=True, width=120, color_system=None)


def render_run_text(report: RunReport) -> str:
    console = _console()
    console.print(f"{report.command} {report.run_id} [{report.status}]", markup=False)
    if report.surface:
        console.print("surface: " + ", ".join(f"{k}={v}" for k, v in sorted(report.surface.items())),
                      markup=False)

    if report.components:
        table = Table(title="components")
        for column in ("weight", "peripheral", "junctures", "monomials", "terms"):
            table.add_column(column, justify="right")
        for c in report.components:
            table.add_row(*(str(c.get(k, "")) for k in ("weight", "peripheral", "junctures", "monomials", "terms")))
        console.print(table)

    for note in report.normalization_notes:
        console.print(f"note: {note}", markup=False)
    if report.element is not None:
        console.print(f"element ({report.element['monomials']} monomials):", markup=False)
        console.print(report.element["text"], markup=False, soft_wrap=True)
    if report.positive is not None:
        console.print(f"positive: {report.positive}", markup=False)
    if report.x_form is not None:
        if report.x_form.get("available"):
            console.print("x-form: " + report.x_form["text"], markup=False, soft_wrap=True)
        else:
            console.print(f"x-form: unavailable ({report.x_form.get('reason')})", markup=False)
    for name, ok in sorted(report.checks.items()):
        console.print(f"check {name}: {'pass' if ok else 'FAIL'}", markup=False)
    return console.export_text()


def render_corpus_text(report: CorpusReport) -> str:
    console = _console()
    table = Table(title=f"corpus {report.action}")
    table.add_column("instance")
    table.add_column("source")
    table.add_column("junctures", justify="right")
    table.add_column("monomials", justify="right")
    table.add_column("result")
    for o in report.instances:
        result = "pass" if o.passed else "FAIL: " + ", ".join(f["invariant"] for f in o.failures)
        if report.action == "list":
            result = ""
        table.add_row(o.name, o.source, str(o.junctures), "" if o.monomials is None else str(o.monomials), result)
    console.print(table)
    console.print(f"{report.passed}/{report.total} passed", markup=False)
    return console.export_text()
