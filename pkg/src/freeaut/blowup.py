"""Irreducibility criterion via the blow-up of the rose's vertex.

The vertex is replaced by the 1-skeleton of a simplex with one vertex per
gate. Only simplex edges that some iterated edge image actually crosses are
kept (the taken turns, closed under the derivative map). The map is iwip when
its transition matrix is primitive, no power fixes a conjugacy class, and the
kept simplex edges connect all gate-vertices.

Germ-level views (one vertex per direction) are reported next to the
gate-level ones so both granularities can be compared.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from . import automorphisms as A
from . import nielsen_paths as NP
from . import traintrack as T
from .automorphisms import Automorphism, BasisChange
from .traintrack import Direction, RoseTrainTrack, Turn

logger = logging.getLogger(__name__)


def taken_turns(tt: RoseTrainTrack) -> Set[Turn]:
    turns = set()
    for image in tt.auto.images:
        for x, y in zip(image.letters, image.letters[1:]):
            turns.add(T.turn_between(x, y))
    return turns


@dataclass(frozen=True)
class TurnClosure:
    turns: FrozenSet[Turn]
    degenerate: FrozenSet[Direction]


def turn_closure(tt: RoseTrainTrack, seed: Set[Turn]) -> TurnClosure:
    """Forward orbit of `seed` under {d, e} -> {dmap d, dmap e}."""
    turns: Set[Turn] = set()
    degenerate: Set[Direction] = set()
    frontier = [t for t in seed if len(t) == 2]
    degenerate.update(next(iter(t)) for t in seed if len(t) == 1)
    turns.update(frontier)
    while frontier:
        nxt = []
        for current in frontier:
            image = frozenset(tt.dmap[d] for d in current)
            if len(image) == 1:
                degenerate.update(image)
            elif image not in turns:
                turns.add(image)
                nxt.append(image)
        frontier = nxt
    return TurnClosure(frozenset(turns), frozenset(degenerate))


def _component_count(nodes, edges) -> int:
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(edges)
    return nx.number_connected_components(graph)


@dataclass(frozen=True)
class BlowupGraph:
    tt: RoseTrainTrack = field(repr=False)
    gate_vertices: Tuple[int, ...]
    simplex_edges: FrozenSet[Tuple[int, int]]
    old_edges: Tuple[Tuple[int, int], ...]
    germ_turns_before: FrozenSet[Turn]
    germ_turns_after: FrozenSet[Turn]

    def simplex_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.gate_vertices)
        graph.add_edges_from(self.simplex_edges)
        return graph

    def components(self) -> int:
        return nx.number_connected_components(self.simplex_graph())

    def gate_components_before_closure(self) -> int:
        return _component_count(self.gate_vertices, _gate_edges(self.tt, self.germ_turns_before))

    def germ_components(self, closed: bool = True) -> int:
        turns = self.germ_turns_after if closed else self.germ_turns_before
        return _component_count(self.tt.directions(), [tuple(t) for t in turns])

    def vertex_label(self, gate: int) -> str:
        return "{" + ",".join(self.tt.gate_labels()[gate]) + "}"


def _gate_edges(tt: RoseTrainTrack, turns) -> Set[Tuple[int, int]]:
    edges = set()
    for t in turns:
        d, e = tuple(t)
        a, b = tt.gate_of[d], tt.gate_of[e]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return edges


def build_gamma2(tt: RoseTrainTrack) -> BlowupGraph:
    before = taken_turns(tt)
    closure = turn_closure(tt, before)
    old_edges = tuple(
        (tt.gate_of[Direction(i, 1)], tt.gate_of[Direction(i, -1)]) for i in range(tt.rank)
    )
    graph = BlowupGraph(
        tt=tt,
        gate_vertices=tuple(range(len(tt.gates))),
        simplex_edges=frozenset(_gate_edges(tt, closure.turns)),
        old_edges=old_edges,
        germ_turns_before=frozenset(before),
        germ_turns_after=closure.turns,
    )
    logger.debug("gamma2 for %s: %d gate-vertices, %d simplex edges",
                 tt.auto.name or "map", len(graph.gate_vertices), len(graph.simplex_edges))
    return graph


def theta_surjective(graph: BlowupGraph) -> bool:
    return graph.components() == 1


def to_dot(graph: BlowupGraph) -> str:
    lines = ["graph gamma2 {"]
    for v in graph.gate_vertices:
        lines.append(f'  g{v} [label="{graph.vertex_label(v)}"];')
    for a, b in sorted(graph.simplex_edges):
        lines.append(f'  g{a} -- g{b} [kind="simplex"];')
    for i, (a, b) in enumerate(graph.old_edges):
        name = graph.tt.basis.names[i]
        lines.append(f'  g{a} -- g{b} [kind="old", label="{name}", style="bold"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


class Verdict(str, enum.Enum):
    IWIP = "iwip"
    REDUCIBLE = "reducible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IwipCertificate:
    primitive: bool
    theta_surjective: Optional[bool]
    no_periodic_fixed_factor: Optional[bool]
    verdict: Verdict
    t_max: int
    reasons: Tuple[str, ...] = ()
    change: Optional[BasisChange] = None
    graph: Optional[BlowupGraph] = field(default=None, repr=False, compare=False)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.IWIP


def _verdict(primitive: bool, surjective: Optional[bool], no_fixed: Optional[bool]) -> Verdict:
    if not primitive:
        return Verdict.REDUCIBLE
    if primitive and surjective and no_fixed:
        return Verdict.IWIP
    if surjective is False and no_fixed:
        return Verdict.REDUCIBLE
    return Verdict.INCONCLUSIVE


def iwip_certificate(
    f: Automorphism,
    t_max: Optional[int] = None,
    max_len: Optional[int] = None,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> IwipCertificate:
    """Primitivity, theta_* surjectivity and no periodic fixed classes, combined."""
    rep, change = A.positive_representative(f)
    tt = T.build(rep)
    reasons: List[str] = []
    if not change.is_identity():
        reasons.append(f"positive in basis {change.describe()}")

    primitive = T.is_primitive(T.transition_matrix(rep))
    if t_max is None:
        t_max = T.default_t_max(tt)
    if not primitive:
        reasons.append("transition matrix is not primitive")
        return IwipCertificate(False, None, None, Verdict.REDUCIBLE, t_max, tuple(reasons), change)

    graph = build_gamma2(tt)
    surjective = theta_surjective(graph)
    reasons.append(
        f"gamma2 simplex subgraph: {graph.components()} component(s) on {len(graph.gate_vertices)} gates"
    )

    fixed = NP.fixed_subgroup_trivial(tt, max_len, t_max, budget, jobs)
    no_fixed = fixed.trivial if fixed.certified else None
    reasons.append(
        "no fixed conjugacy class up to power "
        f"{t_max}: single vertex, every fixed class is a concatenation of INPs; {fixed.reason}"
    )
    verdict = _verdict(primitive, surjective, no_fixed)
    logger.info("iwip certificate for %s: %s", f.name or "map", verdict.value)
    return IwipCertificate(primitive, surjective, no_fixed, verdict, t_max, tuple(reasons), change, graph)
