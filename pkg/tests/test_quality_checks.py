import json

from export_utils import report_to_markdown, summary_table
from quality_checks import check_run, exit_code
from workbench_document import parse
from workbench_runner import run

DOCUMENT = json.dumps({
    "algebras": {
        "S": {"atoms": 2, "adjacency": [[True, False], [False, True]]},
        "L": {"atoms": 2, "adjacency": [[True, True], [True, True]]},
    },
    "commands": ["check-axioms S LCA", "check-axioms L NCA"],
}, indent=2)


def test_exit_code_precedence():
    assert exit_code([]) == 0
    assert exit_code(["holds", "holds"]) == 0
    assert exit_code(["holds", "inconclusive"]) == 2
    assert exit_code(["inconclusive", "fails"]) == 1
    assert exit_code(["error", "holds"]) == 1


def test_check_run_lists_failures():
    check = check_run(run(parse(DOCUMENT)))
    assert check["status"] == "FAIL"
    assert check["commands"] == 2
    assert check["issues"] == ["#1 check-axioms L NCA: fails"]


def test_summary_table():
    table = summary_table(run(parse(DOCUMENT)))
    assert list(table.columns) == ["#", "command", "args", "status", "detail"]
    assert list(table["status"]) == ["holds", "fails"]
    assert table.loc[1, "detail"] == "failed: C6"


def test_markdown_report():
    text = report_to_markdown(run(parse(DOCUMENT), seed=11))
    assert text.startswith("# WORKBENCH RUN REPORT")
    assert "**Seed:** 11" in text
    assert "| 1 | check-axioms | L NCA | fails | failed: C6 |" in text
    assert "**Status:** FAIL (exit code 1)" in text
    assert "**Date:**" not in text
