"""Status roll-up for command results and whole runs."""
from typing import Iterable

from delta_ideals import BijectionReport, FrameReport
from duality_engine import RealizationReport, RoundtripReport, TMapReport
from lca_core import AxiomReport
from morphism_calculus import DLC_FAMILIES, Classification, DualMapReport, FunctorReport, NaturalityReport

EXIT_CODES = {"holds": 0, "fails": 1, "error": 1, "inconclusive": 2}


def status_of(report) -> str:
    """holds / fails / inconclusive for any report a command produces."""
    if isinstance(report, AxiomReport):
        return report.status
    if isinstance(report, (RoundtripReport, BijectionReport)):
        return "holds" if report.verdict else "fails"
    if isinstance(report, TMapReport):
        if not report.guaranteed:
            return "inconclusive"
        return "holds" if report.homeomorphism else "fails"
    if isinstance(report, FrameReport):
        return "holds" if report.iota_isomorphism and report.principal_onto_regular_open else "fails"
    if isinstance(report, (RealizationReport, DualMapReport, FunctorReport)):
        return "holds" if report.verdict else "fails"
    if isinstance(report, NaturalityReport):
        return "holds" if report.verdict else "fails"
    if isinstance(report, Classification):
        dlc = [v.status for v in report.verdicts if v.axiom in DLC_FAMILIES]
        if "fails" in dlc or any("disagrees" in note for note in report.notes):
            return "fails"
        return "inconclusive" if "inconclusive" in dlc else "holds"
    return "holds"


def exit_code(statuses: Iterable[str]) -> int:
    statuses = list(statuses)
    if any(EXIT_CODES[s] == 1 for s in statuses):
        return 1
    if "inconclusive" in statuses:
        return 2
    return 0


def check_run(report):
    issues = []
    for result in report.results:
        if result.status == "error":
            issues.append(f"#{result.index} {result.command}: {result.error['error']}: {result.error['detail']}")
        elif result.status != "holds":
            issues.append(f"#{result.index} {result.command} {' '.join(result.args)}: {result.status}")
    code = exit_code(r.status for r in report.results)
    return {
        "complete": len(issues) == 0,
        "issues": issues,
        "commands": len(report.results),
        "status": {0: "PASS", 1: "FAIL", 2: "INCONCLUSIVE"}[code],
    }
