"""The JSON workbench document: declarations of algebras, spaces, maps and morphisms plus an ordered command list."""
import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from described_maps import nat_map, pl_map
from errors import ParseError, UnresolvedReference, WorkbenchError
from finite_models import FiniteContactStructure, make_finite_lca
from finite_spaces import FiniteSpace, SpaceMap, make_space_map, validate_topology
from lca_core import SUITES
from morphism_calculus import FAMILIES, MapInducedMorphism, Morphism, TableMorphism, morphism_from_map
from region_models import INTERVAL_MODEL, NAT_MODEL

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

COMMANDS = (
    "check-axioms",
    "clusters",
    "dualize",
    "roundtrip",
    "ideal-frame",
    "prime-bijection",
    "check-morphism",
    "compose",
    "dual-map",
    "functor-laws",
    "naturality",
    "classify",
)

STOCK_MODELS = {"cofinite-nat": NAT_MODEL, "rational-interval": INTERVAL_MODEL}


class FiniteAlgebraSpec(BaseModel):
    atoms: int
    adjacency: List[List[bool]]
    bound: Optional[List[int]] = None
    names: Optional[List[str]] = None


class SpaceSpec(BaseModel):
    points: List[str]
    opens: List[List[str]]


class MapSpec(BaseModel):
    kind: Literal["pl", "nat", "space"]
    points: List[Tuple[str, str]] = []
    left: str = "0"
    right: str = "0"
    exceptions: List[int] = []
    shift: Optional[int] = None
    constant: Optional[int] = None
    source: Optional[str] = None
    target: Optional[str] = None
    assign: Dict[str, str] = {}


class MorphismSpec(BaseModel):
    source: Optional[str] = None
    target: Optional[str] = None
    table: Dict[str, str] = {}
    map: Optional[str] = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.map is None) == (not self.table):
            raise ValueError("a morphism is either an explicit table or {map: name}")
        if self.map is None and (self.source is None or self.target is None):
            raise ValueError("a table morphism names its source and target algebras")
        return self


class Command(BaseModel):
    command: Literal[COMMANDS]
    args: List[str] = []
    options: Dict[str, Any] = {}


class WorkbenchDocument(BaseModel):
    schema_version: int = SCHEMA_VERSION
    algebras: Dict[str, Union[Literal["cofinite-nat", "rational-interval"], FiniteAlgebraSpec]] = {}
    spaces: Dict[str, SpaceSpec] = {}
    maps: Dict[str, MapSpec] = {}
    morphisms: Dict[str, MorphismSpec] = {}
    commands: List[Command] = Field(default_factory=list)


@dataclass
class Workspace:
    """Declarations of a document, built and validated."""

    algebras: Dict[str, Any] = field(default_factory=dict)
    spaces: Dict[str, FiniteSpace] = field(default_factory=dict)
    maps: Dict[str, Any] = field(default_factory=dict)
    morphisms: Dict[str, Morphism] = field(default_factory=dict)

    def lookup(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            raise UnresolvedReference(name)
        return table[name]

    def resolve(self, name: str):
        """Any declared object by name, searched in declaration order."""
        for kind in ("algebras", "spaces", "maps", "morphisms"):
            table = getattr(self, kind)
            if name in table:
                return table[name]
        raise UnresolvedReference(name)


def _line_of(text: str, name: str) -> int:
    match = re.search(r'"' + re.escape(name) + r'"\s*:', text)
    return text.count("\n", 0, match.start()) + 1 if match else 1


def _command_from_shorthand(raw: Any) -> Any:
    if isinstance(raw, str):
        tokens = raw.split()
        return {"command": tokens[0], "args": tokens[1:]} if tokens else {"command": ""}
    return raw


def _build_algebra(name: str, spec) -> Any:
    if isinstance(spec, str):
        return STOCK_MODELS[spec]
    return make_finite_lca(spec.atoms, spec.adjacency, spec.bound, spec.names, name=name)


def _build_map(name: str, spec: MapSpec, spaces: Dict[str, FiniteSpace]):
    if spec.kind == "pl":
        return pl_map([(Fraction(x), Fraction(y)) for x, y in spec.points], Fraction(spec.left), Fraction(spec.right), name=name)
    if spec.kind == "nat":
        return nat_map(spec.exceptions, shift=spec.shift, constant=spec.constant, name=name)
    for ref in (spec.source, spec.target):
        if ref not in spaces:
            raise UnresolvedReference(str(ref))
    return make_space_map(spaces[spec.source], spaces[spec.target], spec.assign, name=name)


def _build_morphism(name: str, spec: MorphismSpec, ws: Workspace) -> Morphism:
    if spec.map is not None:
        f = ws.lookup("maps", spec.map)
        if isinstance(f, SpaceMap):
            return morphism_from_map(f, name=name)
        return MapInducedMorphism(f, name=name)
    source, target = ws.lookup("algebras", spec.source), ws.lookup("algebras", spec.target)
    if not isinstance(source, FiniteContactStructure) or not isinstance(target, FiniteContactStructure):
        raise ValueError("table morphisms connect finite algebras")
    images = {source.parse_element(k): target.parse_element(v) for k, v in spec.table.items()}
    missing = [source.render(a) for a in source.enumerate() if a not in images]
    if missing:
        raise ValueError(f"table is not total: no image for {', '.join(missing)}")
    return TableMorphism(source, target, tuple(images[a] for a in source.enumerate()), name=name)


def build_workspace(document: WorkbenchDocument, text: Optional[str] = None) -> Workspace:
    """Builds every declaration; failures become ParseError at the declaration's line."""
    text = text if text is not None else print_document(document)
    ws = Workspace()
    steps = (
        [("algebras", n, lambda n=n, s=s: _build_algebra(n, s)) for n, s in document.algebras.items()]
        + [("spaces", n, lambda n=n, s=s: validate_topology(s.points, s.opens, n)) for n, s in document.spaces.items()]
        + [("maps", n, lambda n=n, s=s: _build_map(n, s, ws.spaces)) for n, s in document.maps.items()]
        + [("morphisms", n, lambda n=n, s=s: _build_morphism(n, s, ws)) for n, s in document.morphisms.items()]
    )
    for kind, name, build in steps:
        try:
            getattr(ws, kind)[name] = build()
        except UnresolvedReference:
            raise
        except (WorkbenchError, ValueError) as exc:
            raise ParseError(_line_of(text, name), f"{kind[:-1]} {name}: {exc}") from exc
    declared = set()
    for kind in ("algebras", "spaces", "maps", "morphisms"):
        for name in getattr(ws, kind):
            if name in declared:
                raise ParseError(_line_of(text, name), f"name {name} is declared twice")
            declared.add(name)
    for command in document.commands:
        for arg in command.args:
            if arg in declared or _is_literal(command, arg):
                continue
            raise UnresolvedReference(arg)
    return ws


def _is_literal(command: Command, arg: str) -> bool:
    """Command arguments that are not declaration names (suite names, family lists, modes)."""
    if command.command == "check-axioms" and arg in SUITES:
        return True
    if command.command == "clusters" and arg in ("brute", "ultrafilter", "rho", "alexandroff"):
        return True
    if command.command == "check-morphism" and all(part in FAMILIES for part in arg.split(",")):
        return True
    return False


def parse(text: str) -> WorkbenchDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from exc
    if not isinstance(raw, dict):
        raise ParseError(1, "a workbench document is a JSON object")
    raw["commands"] = [_command_from_shorthand(c) for c in raw.get("commands", [])]
    try:
        document = WorkbenchDocument.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = [str(p) for p in first["loc"]]
        anchor = next((p for p in reversed(location) if not p.isdigit()), location[0] if location else "")
        raise ParseError(_line_of(text, anchor), f"{'.'.join(location)}: {first['msg']}") from exc
    if document.schema_version != SCHEMA_VERSION:
        raise ParseError(_line_of(text, "schema_version"), f"unsupported schema_version {document.schema_version}")
    build_workspace(document, text)
    logger.debug("parsed document with %d commands", len(document.commands))
    return document


def print_document(document: WorkbenchDocument) -> str:
    return json.dumps(document.model_dump(mode="json", exclude_defaults=True), indent=2, sort_keys=True)
