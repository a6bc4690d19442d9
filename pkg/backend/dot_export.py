import logging
from typing import Literal

import graphviz

from duality_engine import dualize, render_cluster, trace
from errors import NotFinite
from finite_models import FiniteContactStructure

logger = logging.getLogger(__name__)

DotTarget = Literal["contact-graph", "dual-space"]


def _require_finite(algebra) -> FiniteContactStructure:
    if not isinstance(algebra, FiniteContactStructure):
        raise NotFinite(f"{getattr(algebra, 'name', algebra)} is not a finite structure")
    return algebra


def contact_graph(S: FiniteContactStructure) -> graphviz.Graph:
    """Atoms as nodes, non-loop adjacency as edges; bounded atoms drawn doubled."""
    dot = graphviz.Graph(name=S.name, comment=f"contact graph of {S.name}")
    dot.attr("node", shape="circle", fontname="Helvetica", fontsize="12")
    for p in range(S.atom_count):
        bounded = bool(S.bound_mask >> p & 1)
        dot.node(S.atom_names[p], S.atom_names[p], shape="doublecircle" if bounded else "circle")
    for p in range(S.atom_count):
        for q in range(p + 1, S.atom_count):
            if S.adjacency[p][q]:
                dot.edge(S.atom_names[p], S.atom_names[q])
    return dot


def dual_space_graph(S: FiniteContactStructure) -> graphviz.Graph:
    """Bounded clusters labeled by their IB-traces; an edge joins two points when neither is separated from the other."""
    dual = dualize(S)
    topo = dual.topology
    dot = graphviz.Graph(name=f"Psi_{S.name}", comment=f"dual space of {S.name}")
    dot.attr("node", shape="box", style="rounded", fontname="Helvetica", fontsize="11")
    for i in dual.bounded_points:
        sigma = dual.cluster(i)
        label = render_cluster(S, trace(S, sigma))
        dot.node(f"c{i}", label)
    points = list(dual.bounded_points)
    for k, i in enumerate(points):
        for j in points[k + 1:]:
            i_sees_j = all(j in U for U in topo.opens if i in U)
            j_sees_i = all(i in U for U in topo.opens if j in U)
            if i_sees_j or j_sees_i:
                dot.edge(f"c{i}", f"c{j}")
    return dot


def emit_dot(target: DotTarget, algebra) -> str:
    S = _require_finite(algebra)
    if target == "contact-graph":
        graph = contact_graph(S)
    elif target == "dual-space":
        graph = dual_space_graph(S)
    else:
        raise ValueError(f"unknown dot target {target!r}")
    logger.debug("emitting %s for %s", target, S.name)
    return graph.source
