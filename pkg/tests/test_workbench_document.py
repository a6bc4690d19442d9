import json

import pytest

from errors import ParseError, UnresolvedReference
from finite_models import FiniteContactStructure
from morphism_calculus import MapInducedMorphism, TableMorphism
from region_models import NAT_MODEL
from workbench_document import Command, build_workspace, parse, print_document

DOCUMENT = """{
  "algebras": {
    "S": {"atoms": 2, "adjacency": [[true, false], [false, true]]},
    "N": "cofinite-nat"
  },
  "spaces": {
    "X": {"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}
  },
  "maps": {
    "h": {"kind": "pl", "points": [["-1", "0"], ["0", "1"], ["1", "0"]]},
    "k": {"kind": "space", "source": "X", "target": "X", "assign": {"a": "a", "b": "b"}}
  },
  "morphisms": {
    "id": {"source": "S", "target": "S", "table": {"0": "0", "{p}": "{p}", "{q}": "{q}", "1": "1"}},
    "phi_h": {"map": "h"}
  },
  "commands": [
    "check-axioms S NCA",
    {"command": "check-morphism", "args": ["id", "DLC1,DLC2"]},
    "roundtrip X"
  ]
}
"""


def test_parse_builds_every_declaration():
    document = parse(DOCUMENT)
    ws = build_workspace(document)
    assert isinstance(ws.algebras["S"], FiniteContactStructure)
    assert ws.algebras["N"] is NAT_MODEL
    assert isinstance(ws.morphisms["id"], TableMorphism)
    assert isinstance(ws.morphisms["phi_h"], MapInducedMorphism)
    assert ws.morphisms["id"].table == (0, 1, 2, 3)
    assert document.commands[0] == Command(command="check-axioms", args=["S", "NCA"])


def test_print_then_parse_round_trips():
    document = parse(DOCUMENT)
    assert parse(print_document(document)) == document


def test_asymmetric_adjacency_reports_its_line():
    text = '{\n  "algebras": {\n    "T": {"atoms": 2, "adjacency": [[true, true], [false, true]]}\n  }\n}\n'
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == 3
    assert "asymmetric" in info.value.reason


def test_json_syntax_errors():
    with pytest.raises(ParseError) as info:
        parse('{\n  "algebras": {,}\n}')
    assert info.value.line == 2


def test_unknown_command():
    with pytest.raises(ParseError):
        parse(json.dumps({"commands": ["launch S"]}))


def test_unresolved_names():
    with pytest.raises(UnresolvedReference) as info:
        parse(json.dumps({"commands": ["dualize Missing"]}))
    assert info.value.name == "Missing"


def test_unknown_families_are_not_literals():
    doc = json.loads(DOCUMENT)
    doc["commands"] = ["check-morphism id DLC9"]
    with pytest.raises(UnresolvedReference):
        parse(json.dumps(doc))


def test_partial_tables_are_rejected():
    doc = json.loads(DOCUMENT)
    del doc["morphisms"]["id"]["table"]["1"]
    with pytest.raises(ParseError, match="not total"):
        parse(json.dumps(doc, indent=2))


def test_names_are_unique_across_kinds():
    doc = json.loads(DOCUMENT)
    doc["spaces"]["S"] = doc["spaces"]["X"]
    with pytest.raises(ParseError, match="declared twice"):
        parse(json.dumps(doc, indent=2))


def test_unsupported_schema_version():
    with pytest.raises(ParseError, match="schema_version"):
        parse(json.dumps({"schema_version": 2}))
