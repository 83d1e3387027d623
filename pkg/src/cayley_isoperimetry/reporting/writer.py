"""Report serialisation.

``report.json`` is canonical JSON (sorted keys, two-space indent, trailing
newline) and holds only reproducible numerics; wall-clock timings and cache
counters go to ``timings.json``. Each curve becomes one CSV and a short
Markdown summary is rendered with jinja2.
"""

import json
import logging
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from jinja2 import Template

from cayley_isoperimetry.model.report import InvariantReport

logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
TIMINGS_FILE = "timings.json"
SUMMARY_FILE = "summary.md"

SUMMARY_TEMPLATE = """# {{ name }}

Toolkit version {{ version }}, group `{{ group }}`, seed {{ seed }}.

| task | type | status |
|------|------|--------|
{% for task, status in tasks.items() -%}
{% set outcome = "ok" if status.success else "failed: " ~ status.error -%}
| {{ task }} | {{ status.type }} | {{ outcome }} |
{% endfor %}
{{ passed }} of {{ total }} assertions passed.
{% if failed %}
Failing checks:
{% for check in failed %}
- `{{ check }}`
{% endfor %}
{% endif %}
{% if curves %}
Curves written as CSV: {{ curves | join(", ") }}.
{% endif %}
{% if littlewood %}
N′ values come from a finite subset search and are lower bounds unless tagged
exact. The Littlewood norm itself is bracketed by ½N ≤ N′ ≤ N, so N′ pins N
down to within a factor of two.
{% endif %}
"""


def to_jsonable(value: Any) -> Any:
    """Plain JSON types: Fractions and numpy scalars become numbers, inf/nan strings."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((to_jsonable(v) for v in value), key=str)
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, Fraction, np.floating)):
        as_float = float(value)
        if math.isinf(as_float) or math.isnan(as_float):
            return str(as_float)
        return as_float
    if isinstance(value, Path):
        return str(value)
    return value


def canonical_json(data: Any) -> str:
    text = json.dumps(to_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False)
    return text + "\n"


def curve_filename(name: str) -> str:
    return name.replace(".", "_").replace("/", "_") + ".csv"


def write_curves(curves: Dict[str, List[Dict[str, Any]]], out_dir: Path) -> List[Path]:
    written = []
    for name in sorted(curves):
        rows = curves[name]
        if not rows:
            continue
        path = out_dir / curve_filename(name)
        pd.DataFrame([to_jsonable(row) for row in rows]).to_csv(path, index=False)
        written.append(path)
    return written


def render_summary(report: InvariantReport) -> str:
    config = report.config
    return Template(SUMMARY_TEMPLATE).render(
        name=config.get("name", "job"),
        version=report.version,
        group=json.dumps(config.get("group", {}), sort_keys=True),
        seed=config.get("seed"),
        tasks=report.task_status,
        total=len(report.assertions),
        passed=len(report.assertions) - len(report.failed_checks),
        failed=report.failed_checks,
        curves=[curve_filename(c) for c in sorted(report.curves) if report.curves[c]],
        littlewood=any(
            s.get("type") == "littlewood" for s in report.task_status.values()
        ),
    )


def write_report(
    report: InvariantReport,
    out_dir: Path,
    extra_timings: Optional[Dict[str, Any]] = None,
) -> Dict[str, Path]:
    """Write report.json, timings.json, one CSV per curve and summary.md.

    Raises:
        OSError: the output directory cannot be created or written
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    paths = {"report": out_dir / REPORT_FILE, "timings": out_dir / TIMINGS_FILE}
    paths["report"].write_text(canonical_json(report.to_dict()), encoding="utf-8")
    timings = {"tasks": report.timings, "total": sum(report.timings.values())}
    timings.update(extra_timings or {})
    paths["timings"].write_text(canonical_json(timings), encoding="utf-8")

    for path in write_curves(report.curves, out_dir):
        paths[path.stem] = path
    paths["summary"] = out_dir / SUMMARY_FILE
    paths["summary"].write_text(render_summary(report), encoding="utf-8")

    logger.info(f"Report written to {out_dir} ({len(paths)} files)")
    return paths


def read_report(path: Path) -> Dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))
