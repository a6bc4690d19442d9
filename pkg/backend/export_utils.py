from datetime import datetime, timezone

import pandas as pd

from quality_checks import check_run


def _headline(result) -> str:
    if result.error is not None:
        return f"{result.error['error']}: {result.error['detail']}"
    payload = result.result
    if payload.get("failed"):
        return "failed: " + ", ".join(payload["failed"])
    if "issues" in payload and payload["issues"]:
        return payload["issues"][0]
    return ""


def summary_table(report) -> pd.DataFrame:
    rows = [
        {
            "#": r.index,
            "command": r.command,
            "args": " ".join(r.args),
            "status": r.status,
            "detail": _headline(r),
        }
        for r in report.results
    ]
    return pd.DataFrame(rows, columns=["#", "command", "args", "status", "detail"])


def report_to_markdown(report, stamp: bool = False):
    check = check_run(report)
    lines = []
    lines.append("# WORKBENCH RUN REPORT")
    lines.append("")
    lines.append("## 1. Run Settings")
    lines.append(f"**Schema:** {report.schema_version}")
    lines.append(f"**Seed:** {report.seed}")
    lines.append(f"**Samples:** {report.samples}")
    lines.append(f"**Depth:** {report.depth}")
    if stamp:
        lines.append(f"**Date:** {datetime.now(timezone.utc).date()}")
    lines.append("")
    lines.append("## 2. Results")
    lines.append("| # | Command | Arguments | Status | Detail |")
    lines.append("|---|---------|-----------|--------|--------|")
    for r in report.results:
        detail = _headline(r).replace("|", "\\|")
        lines.append(f"| {r.index} | {r.command} | {' '.join(r.args)} | {r.status} | {detail} |")
    lines.append("")
    lines.append("## 3. Outcome")
    lines.append(f"**Status:** {check['status']} (exit code {report.exit_code})")
    for issue in check["issues"]:
        lines.append(f"> {issue}")
    return "\n".join(lines)
