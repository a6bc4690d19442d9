import json

from workbench_document import parse
from workbench_runner import dot_for, run

RHO_S3 = {"atoms": 3, "adjacency": [[True, False, False], [False, True, False], [False, False, True]]}
RHO_L2 = {"atoms": 2, "adjacency": [[True, True], [True, True]]}


def _document(commands, **declarations):
    body = {"algebras": {"S": RHO_S3, "L": RHO_L2, "N": "cofinite-nat", "R": "rational-interval"}}
    body.update(declarations)
    body["commands"] = commands
    return parse(json.dumps(body, indent=2))


def test_roundtrip_exits_zero():
    report = run(_document(["roundtrip S"]))
    assert report.exit_code == 0
    assert report.results[0].status == "holds"
    assert report.results[0].result["dual_points"] == 3


def test_nca_on_largest_contact_exits_one():
    report = run(_document(["check-axioms L NCA"]))
    assert report.exit_code == 1
    result = report.results[0]
    assert result.result["failed"] == ["C6"]
    c6 = next(v for v in result.result["verdicts"] if v["axiom"] == "C6")
    assert c6["rendered"] == ["{p}"]


def test_cofinite_con_failure_through_the_runner():
    report = run(_document(["check-axioms N CON"]), seed=7, samples=1000)
    assert report.exit_code == 1
    assert report.results[0].result["failed"] == ["CON"]
    assert report.samples == 1000


def test_workbench_errors_become_error_results():
    command = {"command": "check-axioms", "args": ["N", "CA"], "options": {"mode": "exhaustive"}}
    report = run(_document([command, "dualize S"]))
    first, second = report.results
    assert first.status == "error"
    assert first.error["error"] == "ExhaustiveUnavailable"
    assert second.status == "holds"
    assert report.exit_code == 1


def test_finite_commands_reject_stock_models():
    report = run(_document(["ideal-frame N"]))
    assert report.results[0].error["error"] == "NotFinite"


def test_delta_ideal_commands():
    report = run(_document(["ideal-frame S", "prime-bijection S", "clusters S ultrafilter"]))
    assert [r.status for r in report.results] == ["holds", "holds", "holds"]
    assert report.results[2].result["clusters"] == ["<{p}>", "<{q}>", "<{r}>"]


def test_morphism_commands():
    morphisms = {"id": {"source": "S", "target": "S",
                        "table": {"0": "0", "{p}": "{p}", "{q}": "{q}", "{r}": "{r}", "{p,q}": "{p,q}",
                                  "{p,r}": "{p,r}", "{q,r}": "{q,r}", "1": "1"}}}
    report = run(_document(["check-morphism id", "compose id id", "dual-map id", "classify id", "naturality id"],
                           morphisms=morphisms))
    assert [r.status for r in report.results] == ["holds"] * 5
    assert report.results[2].result["hypotheses"] == "DLC1-4"
    assert report.exit_code == 0


def test_symbolic_dual_map_command():
    maps = {"abs": {"kind": "pl", "points": [["0", "0"]], "left": "-1", "right": "1"}}
    morphisms = {"phi_abs": {"map": "abs"}}
    command = {"command": "dual-map", "args": ["phi_abs"], "options": {"points": ["2"], "regions": ["[1,3]"]}}
    report = run(_document([command], maps=maps, morphisms=morphisms))
    images = report.results[0].result["images"]
    assert images == [{"point": "2", "image": "2", "trace": {"[1,3]": True}}]
    assert report.results[0].result["issues"] == []
    assert report.results[0].status == "holds"


def test_reports_are_reproducible():
    document = _document(["check-axioms R CA", "check-axioms S LCA"])
    first = run(document, seed=3, samples=50)
    second = run(document, seed=3, samples=50)
    assert first.to_json() == second.to_json()
    assert all(r.elapsed_ms is None for r in first.results)


def test_timings_are_opt_in():
    report = run(_document(["dualize S"]), include_timings=True)
    assert report.results[0].elapsed_ms is not None


def test_dot_for_first_finite_algebra():
    text = dot_for(_document([]))
    assert text.count("label=") == 3
    assert " -- " not in text


def test_classify_reports_non_dlc_tables_as_failing():
    everything = ["0", "{p}", "{q}", "{r}", "{p,q}", "{p,r}", "{q,r}", "1"]
    morphisms = {"top": {"source": "S", "target": "S", "table": {e: "1" for e in everything}}}
    report = run(_document(["classify top"], morphisms=morphisms))
    result = report.results[0]
    assert result.status == "fails"
    assert result.result["is_DLC"] is False
    assert report.exit_code == 1
