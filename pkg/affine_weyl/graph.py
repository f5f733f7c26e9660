"""
Graph module for affine-weyl.
Commuting involution graphs: connectivity verdicts, windowed components,
expanding-window distances with path witnesses and the finite baselines.
"""

import functools
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .commuting import commutes_oracle, neighbors_in_class
from .config import settings
from .conjugacy import (
    ClassDescriptor,
    FiniteClassDescriptor,
    FiniteFamily,
    check_realizable,
    class_of,
    enumerate_descriptors,
    finite_class_members,
    finite_class_of,
    finite_family_for,
    iter_class,
)
from .core import AffineElement, FamilyTag, GroupFamily, SignedPermutation
from .errors import (
    BudgetExceededError,
    NotAMemberError,
    UnsupportedCaseError,
    VerificationError,
)
from .involutions import CycleKind, label_bound, labelled_cycle_form

logger = logging.getLogger(__name__)


# =============================================================================
# 1. TYPES
# =============================================================================


class VerdictStatus(str, Enum):
    DISCONNECTED = "disconnected"
    CONNECTED = "connected"
    FINITE_BASELINE = "finite_baseline"


class WindowSpec(BaseModel):
    """Vertices whose labels all lie in [-L, L]."""

    model_config = ConfigDict(frozen=True)

    L: int = Field(..., ge=0, description="Label bound")
    max_nodes: Optional[int] = Field(None, gt=0, description="Vertex cap")


@dataclass(frozen=True)
class PathWitness:
    """A walk in a commuting involution graph."""

    vertices: Tuple[AffineElement, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, d: ClassDescriptor) -> "PathWitness":
        """
        Check every vertex lies in class d and every step commutes.

        Raises:
            VerificationError: On the first vertex or edge that fails
        """
        if not self.vertices:
            raise VerificationError("empty path")
        for i, v in enumerate(self.vertices):
            if class_of(v, d.family) != d:
                raise VerificationError(f"vertex {i} is outside the class")
        for i, (a, b) in enumerate(zip(self.vertices, self.vertices[1:])):
            if a == b or not commutes_oracle(a, b):
                raise VerificationError(f"step {i} is not an edge")
        return self


class ConnectivityVerdict(BaseModel):
    """Predicted shape of a commuting involution graph."""

    model_config = ConfigDict(frozen=True)

    status: VerdictStatus
    clause: str = Field(..., description="Which case of the case analysis fired")
    certificate: Optional[str] = Field(None, description="Kind of evidence")
    bound: Optional[int] = Field(None, description="Diameter bound when connected")
    exact: bool = Field(False, description="The bound is the exact diameter")
    justification: str = ""


@dataclass(frozen=True)
class DistanceResult:
    length: int
    witness: PathWitness
    lower_bound: Optional[int]
    window: int

    @property
    def certified_exact(self) -> bool:
        return self.lower_bound is not None and self.lower_bound == self.length


@dataclass
class WindowGraph:
    """
    Class members in a window as an nx.Graph.

    Nodes are enumeration indices 0..N-1 carrying the member under the
    "element" attribute; edges join commuting members.
    """

    descriptor: ClassDescriptor
    window: int
    graph: nx.Graph

    @functools.cached_property
    def vertices(self) -> List[AffineElement]:
        return [self.graph.nodes[i]["element"] for i in range(self.graph.number_of_nodes())]

    @functools.cached_property
    def edges(self) -> List[Tuple[int, int]]:
        return sorted((min(i, j), max(i, j)) for i, j in self.graph.edges)

    @functools.cached_property
    def components(self) -> List[List[int]]:
        """Components as sorted index lists, ordered by their smallest index."""
        return sorted(sorted(c) for c in nx.connected_components(self.graph))


# =============================================================================
# 2. PREDICTIONS
# =============================================================================

CONSTRUCTIVE_CLAUSES = ("transpositions-only", "single-transposition", "many-transpositions")


def _disconnected(clause: str, certificate: str, why: str) -> ConnectivityVerdict:
    return ConnectivityVerdict(
        status=VerdictStatus.DISCONNECTED,
        clause=clause,
        certificate=certificate,
        justification=why,
    )


def oriented_type(d: ClassDescriptor) -> Optional[Tuple[int, int, int, int]]:
    """
    The type as seen from AffineB after omega where needed, or None.

    AffineBbar classes and the AffineD classes equal to AffineBbar classes
    swap k_e and k_o; AffineC has no such reduction.
    """
    m, k_e, k_o, l = d.cycle_type
    if d.tag is FamilyTag.B:
        return (m, k_e, k_o, l)
    if d.tag is FamilyTag.BBAR:
        return (m, k_o, k_e, l)
    if d.tag is FamilyTag.D:
        return (m, k_e, k_o, l) if k_o == 0 else (m, k_o, k_e, l)
    return None


def _sharpened(d: ClassDescriptor) -> Optional[Tuple[int, str]]:
    oriented = oriented_type(d)
    if oriented is None:
        return None
    m, e, o, l = oriented
    n = d.n
    if o or l:
        return None
    if e == 0:
        return (4 if d.tag is FamilyTag.D else 3), "transpositions-only"
    if m == 1 and e > 2:
        return n + 1, "single-transposition"
    if m > 1 and e >= 2:
        return n - 1, "many-transpositions"
    return None


def _finite_refinement(d: ClassDescriptor) -> str:
    oriented = oriented_type(d)
    if oriented is None:
        return ""
    m, e, o, l = oriented
    if m == 1 and o == 0 and l == 0 and 0 < e <= 2:
        return (
            "; the finite projection is already disconnected"
            " for one transposition with at most two 1-cycles"
        )
    return ""


def predict_connectivity(d: ClassDescriptor) -> ConnectivityVerdict:
    """
    Decide connectivity from the cycle type.

    Raises:
        UnsupportedCaseError: For AffineA
        UnrealizableDescriptorError: If d names no class
    """
    if d.tag is FamilyTag.A:
        raise UnsupportedCaseError("connectivity is predicted for B, Bbar, C and D only")
    check_realizable(d)
    m, k_e, k_o, l = d.cycle_type
    n = d.n
    extra = _finite_refinement(d)
    if m == 0 and l == 0:
        return _disconnected(
            "i", "isolation", "vertices are products of negative 1-cycles" + extra
        )
    if m > 0 and l == 0 and (k_e == 1 or k_o == 1):
        return _disconnected(
            "ii", "conserved-one-cycle", "a lone 1-cycle is shared by every neighbour" + extra
        )
    if m > 0 and max(k_e, k_o, l) == 1:
        certificate = "conserved-one-cycle" if l == 0 else "affine-c-result"
        return _disconnected("iii", certificate, "the class equals its AffineC class" + extra)
    if n == 4 and m == 1:
        return _disconnected("iv", "finite-projection", "disconnected in the finite group" + extra)
    if n == 6 and m == 1 and k_e == 2 and k_o == 2:
        return _disconnected("v", "affine-c-result", "the class equals its AffineC class" + extra)
    sharp = _sharpened(d)
    if sharp is None:
        return ConnectivityVerdict(
            status=VerdictStatus.CONNECTED,
            clause="general",
            certificate="theorem",
            bound=n + 2,
            justification="connected with diameter at most n+2",
        )
    bound, clause = sharp
    return ConnectivityVerdict(
        status=VerdictStatus.CONNECTED,
        clause=clause,
        certificate="constructive",
        bound=bound,
        justification=f"explicit paths of length at most {bound}",
    )


def _baseline(clause: str, bound: Optional[int], exact: bool = False) -> ConnectivityVerdict:
    if bound is None:
        return ConnectivityVerdict(
            status=VerdictStatus.DISCONNECTED,
            clause=clause,
            certificate="finite-baseline",
            justification="finite commuting involution graph",
        )
    return ConnectivityVerdict(
        status=VerdictStatus.FINITE_BASELINE,
        clause=clause,
        certificate="finite-baseline",
        bound=bound,
        exact=exact,
        justification="finite commuting involution graph",
    )


def predict_finite_connectivity(fd: FiniteClassDescriptor) -> ConnectivityVerdict:
    """Connectivity and diameter bounds for finite involution classes."""
    m, k, l = fd.signed_type
    n = fd.n
    if fd.family is FiniteFamily.A:
        if l == 1:
            return _baseline("one-fixed-point", None)
        if n == 4 and m == 1:
            return _baseline("n4-transposition", None)
        if n in (6, 8, 10) and l == 2:
            return _baseline("two-fixed-points", 4, exact=True)
        return _baseline("general", 3)
    t = fd.t
    if m == 0:
        return _baseline("complete", 1)
    if t == 0:
        return _baseline("no-fixed", 2)
    if t == 1:
        return _baseline("t-one", None)
    if n == 4 and m == 1 and t == 2:
        return _baseline("n4-transposition", None)
    if n == 5 and m == 1 and t == 2:
        return _baseline("n5-outlier", 5, exact=True)
    if n == 5 and m == 1 and t == 3:
        return _baseline("n5-t3", 2)
    return _baseline("general", 4)


# =============================================================================
# 3. WINDOWS AND SEARCH
# =============================================================================


def _deadline(max_seconds: Optional[float]) -> float:
    return time.monotonic() + (max_seconds if max_seconds is not None else settings.max_seconds)


def window_graph(
    d: ClassDescriptor, w: WindowSpec, max_seconds: Optional[float] = None
) -> WindowGraph:
    """
    The commuting graph restricted to class members in the window.

    Raises:
        BudgetExceededError: When the window holds more than the node cap
    """
    check_realizable(d)
    cap = w.max_nodes or settings.max_nodes
    deadline = _deadline(max_seconds)
    vertices: List[AffineElement] = []
    for x in iter_class(d, w.L):
        vertices.append(x)
        if len(vertices) > cap:
            raise BudgetExceededError(f"window {w.L} holds more than {cap} vertices")
    index = {x: i for i, x in enumerate(vertices)}
    graph = nx.Graph(descriptor=str(d.cycle_type), window=w.L)
    graph.add_nodes_from((i, {"element": x}) for i, x in enumerate(vertices))
    for i, x in enumerate(vertices):
        if time.monotonic() > deadline:
            raise BudgetExceededError("time cap reached while building the window graph")
        for y in neighbors_in_class(x, d, w.L):
            j = index.get(y)
            if j is None:
                raise VerificationError("neighbour outside the enumerated window")
            if j > i:
                graph.add_edge(i, j)
    logger.debug(
        "window %d: %d vertices, %d edges", w.L, graph.number_of_nodes(), graph.number_of_edges()
    )
    return WindowGraph(d, w.L, graph)


def components_in_window(
    d: ClassDescriptor, w: WindowSpec, max_seconds: Optional[float] = None
) -> List[List[AffineElement]]:
    """Connected components of the window graph, in enumeration order."""
    graph = window_graph(d, w, max_seconds)
    return [[graph.vertices[i] for i in comp] for comp in graph.components]


Neighbours = Callable[[AffineElement], Iterable[AffineElement]]


def bidirectional_search(
    source: AffineElement,
    goal: AffineElement,
    neighbours: Neighbours,
    max_nodes: Optional[int] = None,
    deadline: Optional[float] = None,
) -> Optional[List[AffineElement]]:
    """
    Shortest path by alternating full-layer expansion from both ends.

    Returns:
        Optional[List[AffineElement]]: vertices from source to goal, or None
        when the reachable part is exhausted

    Raises:
        BudgetExceededError: When the node or time cap is reached
    """
    if source == goal:
        return [source]
    cap = max_nodes or settings.max_nodes
    seen: Tuple[Dict, Dict] = ({source: (None, 0)}, {goal: (None, 0)})
    frontiers = [[source], [goal]]
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = seen[side], seen[1 - side]
        best = None
        grown = []
        for u in frontiers[side]:
            depth = mine[u][1] + 1
            for w in neighbours(u):
                if w in mine:
                    continue
                mine[w] = (u, depth)
                grown.append(w)
                if w in other:
                    total = depth + other[w][1]
                    if best is None or total < best[0]:
                        best = (total, w)
                if len(mine) + len(other) > cap:
                    raise BudgetExceededError(f"search visited more than {cap} vertices")
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceededError("time cap reached during search")
        logger.debug("frontier %d grew to %d", side, len(grown))
        if best is not None:
            return _join(seen, best[1])
        frontiers[side] = grown
    return None


def _join(seen, meet: AffineElement) -> List[AffineElement]:
    forward = []
    node = meet
    while node is not None:
        forward.append(node)
        node = seen[0][node][0]
    forward.reverse()
    node = seen[1][meet][0]
    while node is not None:
        forward.append(node)
        node = seen[1][node][0]
    return forward


def projection_lower_bound(
    x: AffineElement, y: AffineElement, family: GroupFamily
) -> Optional[int]:
    """Distance between the finite projections, or None if they are disconnected."""
    return finite_baseline_distance(x.sigma, y.sigma, finite_family_for(family.tag))


def distance(
    x: AffineElement,
    y: AffineElement,
    family: GroupFamily,
    max_window: Optional[int] = None,
    max_nodes: Optional[int] = None,
    max_seconds: Optional[float] = None,
) -> Optional[DistanceResult]:
    """
    Search for a shortest path, widening the label window one step at a time.

    The window starts at the largest label of x and y. The returned length
    is exact within the final window and is always an upper bound on the
    distance; the finite projection distance is reported as a lower bound.

    Returns:
        Optional[DistanceResult]: None when no path exists up to max_window

    Raises:
        NotAMemberError: If x and y lie in different classes
        BudgetExceededError: When a cap is reached
    """
    d = class_of(x, family)
    if class_of(y, family) != d:
        raise NotAMemberError("the two involutions lie in different classes")
    start = max(label_bound(x), label_bound(y))
    lower = projection_lower_bound(x, y, family)
    if x == y:
        return DistanceResult(0, PathWitness((x,)), lower, start)
    if lower is None:
        logger.info("finite projections are disconnected; no path exists")
        return None
    if max_window is None:
        slack = settings.max_window_slack
        max_window = start + (slack if slack is not None else family.n + 2)
    deadline = _deadline(max_seconds)
    for window in range(start, max_window + 1):
        logger.info("searching window %d", window)
        path = bidirectional_search(
            x,
            y,
            lambda z, L=window: neighbors_in_class(z, d, L),
            max_nodes,
            deadline,
        )
        if path is not None:
            witness = PathWitness(tuple(path)).validate(d)
            if lower > witness.length:
                raise VerificationError(
                    f"path of length {witness.length} beats the projection bound {lower}"
                )
            return DistanceResult(witness.length, witness, lower, window)
    return None


# =============================================================================
# 4. FINITE BASELINES
# =============================================================================


def _lift(s: SignedPermutation) -> AffineElement:
    return AffineElement(s, (0,) * s.n)


@functools.lru_cache(maxsize=32)
def finite_class_graph(fd: FiniteClassDescriptor) -> nx.Graph:
    """The commuting involution graph of a finite class, nodes in member order."""
    members = finite_class_members(fd)
    member_set = set(members)
    ambient = GroupFamily.of(FamilyTag.C, fd.n)
    graph = nx.Graph()
    graph.add_nodes_from(members)
    for s in members:
        x = _lift(s)
        for y in neighbors_in_class(x, class_of(x, ambient), 0):
            if y.sigma in member_set:
                graph.add_edge(s, y.sigma)
    return graph


@functools.lru_cache(maxsize=32)
def _finite_components(fd: FiniteClassDescriptor) -> Dict[SignedPermutation, int]:
    graph = finite_class_graph(fd)
    order = {s: i for i, s in enumerate(graph)}
    parts = sorted(nx.connected_components(graph), key=lambda c: min(order[s] for s in c))
    return {s: i for i, part in enumerate(parts) for s in part}


def finite_component(s: SignedPermutation, family: FiniteFamily) -> int:
    """Index of the component holding s, components ordered by first member."""
    return _finite_components(finite_class_of(s, family))[s]


def finite_baseline_distance(
    s: SignedPermutation, t: SignedPermutation, family: FiniteFamily
) -> Optional[int]:
    """
    Exact distance in the finite commuting involution graph.

    Returns:
        Optional[int]: None when s and t lie in different components

    Raises:
        NotAMemberError: If s and t lie in different finite classes
    """
    fd = finite_class_of(s, family)
    if finite_class_of(t, family) != fd:
        raise NotAMemberError("the two involutions lie in different finite classes")
    try:
        return nx.shortest_path_length(finite_class_graph(fd), s, t)
    except nx.NetworkXNoPath:
        return None


def finite_path(
    s: SignedPermutation, t: SignedPermutation, family: FiniteFamily
) -> Optional[List[SignedPermutation]]:
    graph = finite_class_graph(finite_class_of(s, family))
    if t not in graph:
        return None
    try:
        return nx.shortest_path(graph, s, t)
    except nx.NetworkXNoPath:
        return None


def finite_diameter(fd: FiniteClassDescriptor) -> Optional[int]:
    """Diameter of the finite class graph, or None when it is disconnected."""
    graph = finite_class_graph(fd)
    if not nx.is_connected(graph):
        return None
    return nx.diameter(graph)


# =============================================================================
# 5. OBSTRUCTIONS
# =============================================================================


def lone_one_cycles(x: AffineElement) -> frozenset:
    """(point, label) of each negative 1-cycle that is alone in its label parity."""
    by_parity: Dict[int, List[Tuple[int, int]]] = {0: [], 1: []}
    for c in labelled_cycle_form(x).cycles:
        if c.kind is CycleKind.ONE:
            by_parity[c.label % 2].append((c.points[0], c.label))
    return frozenset(p for group in by_parity.values() if len(group) == 1 for p in group)


def transposition_support(x: AffineElement) -> frozenset:
    return frozenset(p for t in labelled_cycle_form(x).transpositions for p in t.points)


def projection_disconnected(d: ClassDescriptor) -> bool:
    """Whether the verdict for d rests on a disconnected finite projection."""
    verdict = predict_connectivity(d)
    return verdict.clause == "iv" or bool(_finite_refinement(d))


def obstruction(x: AffineElement, d: ClassDescriptor) -> Hashable:
    """
    What every edge at x preserves under a disconnected verdict for d.

    Isolation gives x itself. The conserved 1-cycle clauses give the lone
    negative 1-cycles; with every count at most one the transposition support
    is kept as well. Verdicts resting on the finite projection give the
    component of x's projection. Clause (v) gives ().
    """
    verdict = predict_connectivity(d)
    if verdict.status is not VerdictStatus.DISCONNECTED:
        raise UnsupportedCaseError(f"{d.cycle_type} is not predicted disconnected")
    if verdict.clause == "i":
        return x
    _, _, _, l = d.cycle_type
    parts: List[Hashable] = []
    if verdict.clause in ("ii", "iii") and l == 0:
        parts.append(lone_one_cycles(x))
    if verdict.clause == "iii":
        parts.append(transposition_support(x))
    if projection_disconnected(d):
        parts.append(finite_component(x.sigma, finite_family_for(d.tag)))
    return tuple(parts)


# =============================================================================
# 6. CENSUS
# =============================================================================


@dataclass
class CensusRow:
    descriptor: ClassDescriptor
    verdict: Optional[ConnectivityVerdict]
    window: int
    vertices: Optional[int]
    components: Optional[int]


def census(
    family: GroupFamily, window: int, max_nodes: Optional[int] = None
) -> List[CensusRow]:
    """One row per class: verdict, window size and component count."""
    rows = []
    for d in enumerate_descriptors(family):
        verdict = None if family.tag is FamilyTag.A else predict_connectivity(d)
        try:
            graph = window_graph(d, WindowSpec(L=window, max_nodes=max_nodes))
            size, parts = len(graph.vertices), len(graph.components)
        except BudgetExceededError:
            logger.warning("window %d too large for %s", window, d.cycle_type)
            size = parts = None
        rows.append(CensusRow(d, verdict, window, size, parts))
    return rows
