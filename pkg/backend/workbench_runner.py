"""Executes the commands of a workbench document and collects a schema-versioned RunReport."""
import json
import logging
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from delta_ideals import prime_cluster_bijection, verify_frame
from described_maps import evaluate
from dot_export import emit_dot
from duality_engine import dualize, render_cluster, roundtrip_algebra, t_map, trace
from errors import NotFinite, UnresolvedReference, WorkbenchError
from finite_models import FiniteContactStructure, enumerate_clusters
from finite_spaces import FiniteSpace, is_discrete, is_hausdorff
from lca_core import QuantifierStrategy, check_axioms
from morphism_calculus import (
    DLC_FAMILIES,
    TableMorphism,
    check_morphism,
    classify,
    diamond,
    dual_map,
    verify_functor_laws,
    verify_naturality,
)
from quality_checks import exit_code, status_of
from region_models import Point, cluster_membership
from settings import WorkbenchSettings, get_settings
from workbench_document import SCHEMA_VERSION, Command, WorkbenchDocument, Workspace, build_workspace

logger = logging.getLogger(__name__)

Status = Literal["holds", "fails", "inconclusive", "error"]


class CommandResult(BaseModel):
    index: int
    command: str
    args: List[str] = []
    status: Status
    seed: Optional[int] = None
    result: Dict[str, Any] = {}
    error: Optional[Dict[str, str]] = None
    elapsed_ms: Optional[float] = None


class RunReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    seed: int
    samples: int
    depth: int
    results: List[CommandResult] = []
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True)


def _dump(report) -> Dict[str, Any]:
    return report.model_dump(mode="json")


def _arg(command: Command, i: int, default: Optional[str] = None) -> str:
    if i < len(command.args):
        return command.args[i]
    if default is None:
        raise UnresolvedReference(f"{command.command} argument {i + 1}")
    return default


def _finite(obj) -> FiniteContactStructure:
    if not isinstance(obj, FiniteContactStructure):
        raise NotFinite(f"{getattr(obj, 'name', obj)} is not a finite structure")
    return obj


def _strategy(algebra, settings: WorkbenchSettings, options: Dict[str, Any], samples: Optional[int] = None):
    if options.get("mode", "exhaustive" if algebra.enumerate() is not None else "sampled") == "exhaustive":
        return QuantifierStrategy.exhaustive()
    return QuantifierStrategy.sampled(
        int(options.get("samples", samples or settings.samples)),
        int(options.get("seed", settings.seed)),
        int(options.get("depth", settings.depth)),
    )


def _check_axioms(ws: Workspace, command: Command, settings: WorkbenchSettings) -> Tuple[str, Dict[str, Any]]:
    algebra = ws.lookup("algebras", _arg(command, 0))
    report = check_axioms(algebra, _arg(command, 1), _strategy(algebra, settings, command.options))
    return report.status, {**_dump(report), "failed": report.failed_axioms()}


def _clusters(ws, command, settings):
    S = _finite(ws.lookup("algebras", _arg(command, 0)))
    clusters = enumerate_clusters(S, _arg(command, 1, "brute"), _arg(command, 2, "rho"))
    return "holds", {
        "mode": clusters.mode,
        "contact": clusters.contact_choice,
        "clusters": [render_cluster(S, sigma) for sigma in clusters.clusters],
        "bounded": clusters.bounded,
        "warnings": clusters.warnings,
    }


def _dualize(ws, command, settings):
    S = _finite(ws.lookup("algebras", _arg(command, 0)))
    dual = dualize(S)
    topo = dual.topology
    return "holds", {
        "structure": S.name,
        "lca_passed": dual.lca_passed,
        "points": [render_cluster(S, trace(S, dual.cluster(i))) for i in dual.bounded_points],
        "all_clusters": len(dual.clusters),
        "opens": sorted(sorted(U) for U in topo.opens),
        "hausdorff": is_hausdorff(topo),
        "discrete": is_discrete(topo),
    }


def _roundtrip(ws, command, settings):
    target = ws.resolve(_arg(command, 0))
    report = t_map(target) if isinstance(target, FiniteSpace) else roundtrip_algebra(_finite(target))
    return status_of(report), _dump(report)


def _ideal_frame(ws, command, settings):
    report = verify_frame(_finite(ws.lookup("algebras", _arg(command, 0))))
    return status_of(report), _dump(report)


def _prime_bijection(ws, command, settings):
    report = prime_cluster_bijection(_finite(ws.lookup("algebras", _arg(command, 0))))
    return status_of(report), _dump(report)


def _morphism_strategy(phi, settings, options):
    if isinstance(phi, TableMorphism):
        return _strategy(phi.source, settings, options)
    return _strategy(phi.source, settings, options, samples=settings.morphism_samples)


def _check_morphism(ws, command, settings):
    phi = ws.lookup("morphisms", _arg(command, 0))
    families = _arg(command, 1, ",".join(DLC_FAMILIES)).split(",")
    report = check_morphism(phi, families, _morphism_strategy(phi, settings, command.options))
    return report.status, {**_dump(report), "failed": report.failed_axioms()}


def _compose(ws, command, settings):
    phi2 = ws.lookup("morphisms", _arg(command, 0))
    phi1 = ws.lookup("morphisms", _arg(command, 1))
    composite = diamond(phi2, phi1)
    report = check_morphism(composite, DLC_FAMILIES)
    return report.status, {"composite": composite.name, "table": composite.render(), "dlc": _dump(report)}


def _dual_map(ws, command, settings):
    phi = ws.lookup("morphisms", _arg(command, 0))
    result = dual_map(phi, None if isinstance(phi, TableMorphism) else _morphism_strategy(phi, settings, command.options))
    if isinstance(phi, TableMorphism):
        return status_of(result), _dump(result)
    model = phi.model
    raw_points = command.options.get("points")
    if raw_points is None:
        points = model.sample_points(np.random.default_rng(settings.seed), 5)
    else:
        points = [_point_literal(p) for p in raw_points]
    regions = [model.parse(text) for text in command.options.get("regions", [])]
    images, issues = [], []
    for x in points:
        image = result.image(Point(x))
        entry = {"point": str(x), "image": str(evaluate(phi.f, x))}
        if regions:
            entry["trace"] = {model.render(F): result.trace_contains(Point(x), F) for F in regions}
            for F in regions:
                if model.bounded(F) and entry["trace"][model.render(F)] != cluster_membership(model, image, F):
                    issues.append(f"trace at {x} disagrees with the cluster of {image.x} on {model.render(F)}")
        images.append(entry)
    payload = {"morphism": phi.name, "hypotheses": result.hypotheses, "images": images, "issues": issues}
    return ("fails" if issues else "holds"), payload


def _point_literal(text) -> Any:
    x = Fraction(str(text))
    return int(x) if x.denominator == 1 else x


def _functor_laws(ws, command, settings):
    f = ws.lookup("maps", _arg(command, 0))
    g = ws.lookup("maps", _arg(command, 1))
    report = verify_functor_laws(
        f, g, seed=int(command.options.get("seed", settings.seed)),
        regions=int(command.options.get("regions", 100)), depth=int(command.options.get("depth", settings.depth)),
    )
    return status_of(report), _dump(report)


def _naturality(ws, command, settings):
    subject = ws.resolve(_arg(command, 0))
    report = verify_naturality(
        subject, seed=int(command.options.get("seed", settings.seed)),
        points=int(command.options.get("points", 200)), depth=int(command.options.get("depth", settings.depth)),
    )
    return status_of(report), _dump(report)


def _classify(ws, command, settings):
    phi = ws.lookup("morphisms", _arg(command, 0))
    strategy = None if isinstance(phi, TableMorphism) else _morphism_strategy(phi, settings, command.options)
    result = classify(phi, strategy)
    return status_of(result), _dump(result)


HANDLERS: Dict[str, Callable[[Workspace, Command, WorkbenchSettings], Tuple[str, Dict[str, Any]]]] = {
    "check-axioms": _check_axioms,
    "clusters": _clusters,
    "dualize": _dualize,
    "roundtrip": _roundtrip,
    "ideal-frame": _ideal_frame,
    "prime-bijection": _prime_bijection,
    "check-morphism": _check_morphism,
    "compose": _compose,
    "dual-map": _dual_map,
    "functor-laws": _functor_laws,
    "naturality": _naturality,
    "classify": _classify,
}


def run(
    document: WorkbenchDocument,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    depth: Optional[int] = None,
    include_timings: bool = False,
) -> RunReport:
    settings = get_settings(seed=seed, samples=samples, depth=depth)
    ws = build_workspace(document)
    results = []
    for index, command in enumerate(document.commands):
        logger.info("running #%d %s %s", index, command.command, " ".join(command.args))
        started = time.perf_counter()
        try:
            status, payload = HANDLERS[command.command](ws, command, settings)
            result = CommandResult(index=index, command=command.command, args=command.args, status=status,
                                   seed=settings.seed, result=payload)
        except WorkbenchError as exc:
            logger.warning("#%d %s failed: %s", index, command.command, exc)
            result = CommandResult(index=index, command=command.command, args=command.args, status="error",
                                   seed=settings.seed, error={"error": type(exc).__name__, "detail": str(exc)})
        if include_timings:
            result.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
        results.append(result)
    report = RunReport(seed=settings.seed, samples=settings.samples, depth=settings.depth, results=results)
    report.exit_code = exit_code(r.status for r in results)
    return report


def dot_for(document: WorkbenchDocument, algebra: Optional[str] = None, target: str = "contact-graph") -> str:
    """DOT text for a named finite algebra of the document, or its first finite algebra."""
    ws = build_workspace(document)
    if algebra is None:
        finite = [name for name, obj in ws.algebras.items() if isinstance(obj, FiniteContactStructure)]
        if not finite:
            raise NotFinite("the document declares no finite algebra")
        algebra = finite[0]
    return emit_dot(target, ws.lookup("algebras", algebra))
