import argparse
import logging
import os
import sys

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from errors import ParseError, WorkbenchError
from export_utils import report_to_markdown, summary_table
from settings import configure_logging, get_settings
from workbench_document import parse
from workbench_runner import dot_for, run

logger = logging.getLogger(__name__)


def _write(path: str, text: str) -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def main(args) -> int:
    configure_logging(get_settings().log_level)
    with open(args.file, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        document = parse(text)
    except WorkbenchError as e:
        print(f"{args.file}: {e}", file=sys.stderr)
        return 1

    print(f"Running {len(document.commands)} commands from {args.file}...")
    report = run(document, seed=args.seed, samples=args.samples, depth=args.depth, include_timings=args.timings)

    if args.report:
        _write(args.report, report.to_json() + "\n")
    else:
        print(report.to_json())
    if args.markdown:
        _write(args.markdown, report_to_markdown(report) + "\n")
    if args.dot:
        try:
            _write(args.dot, dot_for(document, args.dot_algebra, args.dot_target))
        except WorkbenchError as e:
            print(f"  dot export failed: {e}", file=sys.stderr)
            return 1

    table = summary_table(report)
    if not table.empty:
        print(table.to_string(index=False))
    passed = sum(1 for r in report.results if r.status == "holds")
    print(f"Completed. {passed}/{len(report.results)} commands hold (exit code {report.exit_code}).")
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Contact algebra and LCA verification workbench")
    sub = parser.add_subparsers(dest="action", required=True)
    run_p = sub.add_parser("run", help="run the commands of a workbench document")
    run_p.add_argument("file", help="workbench document (JSON)")
    run_p.add_argument("--seed", type=int, default=None, help="seed for every sampled quantifier")
    run_p.add_argument("--samples", type=int, default=None, help="samples per sampled axiom")
    run_p.add_argument("--depth", type=int, default=None, help="witness search depth for infinite models")
    run_p.add_argument("--report", default=None, help="write the JSON run report here")
    run_p.add_argument("--markdown", default=None, help="write a markdown summary here")
    run_p.add_argument("--dot", default=None, help="write DOT for a finite algebra here")
    run_p.add_argument("--dot-algebra", default=None, help="algebra to draw (default: first finite one)")
    run_p.add_argument("--dot-target", default="contact-graph", choices=["contact-graph", "dual-space"])
    run_p.add_argument("--timings", action="store_true", help="record elapsed_ms per command")
    return parser


if __name__ == "__main__":
    sys.exit(main(build_parser().parse_args()))
