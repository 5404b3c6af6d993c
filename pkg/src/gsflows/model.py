"""Core data model for Lyapunov graphs on singular surfaces.

A Lyapunov graph is a finite directed acyclic multigraph whose vertices are
labelled with a local chart type (plane, cone, Whitney umbrella, double or
triple crossing) together with the dynamical nature of the singularity, and
whose edges carry positive integer weights (first Betti numbers of level-set
components).  Edges may dangle on either end, which turns the graph into a
semi-graph.

This module holds the numerical Conley index table for the admissible
(type, nature) labels and the arithmetic built on top of it: the
Poincare-Hopf residual of a single vertex, the degree inequalities, the fold
bookkeeping, and the two Euler characteristic formulas whose agreement on
fold-balanced closed graphs is the main global cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter


class SingularityType(Enum):
    """Local chart class of a singular point of the surface."""

    REGULAR = "R"
    CONE = "C"
    WHITNEY = "W"
    DOUBLE = "D"
    TRIPLE = "T"

    def __str__(self) -> str:
        return self.value


class Nature(Enum):
    """Dynamical character of a singularity."""

    A = "a"
    R = "r"
    S = "s"
    S_S = "s_s"
    S_U = "s_u"
    SA = "sa"
    SR = "sr"
    SS_S = "ss_s"
    SS_U = "ss_u"
    SSA = "ssa"
    SSR = "ssr"

    def __str__(self) -> str:
        return self.value


_T = SingularityType
_N = Nature

ADMISSIBLE_NATURES: dict[SingularityType, frozenset[Nature]] = {
    _T.REGULAR: frozenset({_N.A, _N.S, _N.R}),
    _T.CONE: frozenset({_N.A, _N.S, _N.R}),
    _T.WHITNEY: frozenset({_N.A, _N.S_S, _N.S_U, _N.R}),
    _T.DOUBLE: frozenset({_N.A, _N.SA, _N.SS_S, _N.SS_U, _N.SR, _N.R}),
    _T.TRIPLE: frozenset({_N.A, _N.SSA, _N.SSR, _N.R}),
}

_REVERSE = {
    _N.A: _N.R,
    _N.R: _N.A,
    _N.S: _N.S,
    _N.S_S: _N.S_U,
    _N.S_U: _N.S_S,
    _N.SA: _N.SR,
    _N.SR: _N.SA,
    _N.SS_S: _N.SS_U,
    _N.SS_U: _N.SS_S,
    _N.SSA: _N.SSR,
    _N.SSR: _N.SSA,
}

# Numerical Conley indices (h0, h1, h2) per admissible label.  The repelling
# Whitney index carries h2 = 2: this is what the boundary-count identity for
# the Whitney attractor (entering weight 2) and the Euler-sum coefficients
# both force, even though it is sometimes quoted as (0, 0, 1).
_CONLEY: dict[tuple[SingularityType, Nature], tuple[int, int, int]] = {
    (_T.REGULAR, _N.A): (1, 0, 0),
    (_T.REGULAR, _N.S): (0, 1, 0),
    (_T.REGULAR, _N.R): (0, 0, 1),
    (_T.CONE, _N.A): (1, 0, 0),
    (_T.CONE, _N.S): (0, 1, 0),
    (_T.CONE, _N.R): (0, 1, 2),
    (_T.WHITNEY, _N.A): (1, 0, 0),
    (_T.WHITNEY, _N.S_S): (0, 1, 0),
    (_T.WHITNEY, _N.S_U): (0, 0, 0),
    (_T.WHITNEY, _N.R): (0, 0, 2),
    (_T.DOUBLE, _N.A): (1, 0, 0),
    (_T.DOUBLE, _N.SA): (0, 1, 0),
    (_T.DOUBLE, _N.SS_S): (0, 3, 0),
    (_T.DOUBLE, _N.SS_U): (0, 1, 0),
    (_T.DOUBLE, _N.SR): (0, 0, 1),
    (_T.DOUBLE, _N.R): (0, 0, 3),
    (_T.TRIPLE, _N.A): (1, 0, 0),
    (_T.TRIPLE, _N.SSA): (0, 1, 0),
    (_T.TRIPLE, _N.SSR): (0, 1, 2),
    (_T.TRIPLE, _N.R): (0, 0, 7),
}

# Number of attracting / saddle / repelling natures packed into one label.
# Double crossings carry two natures, triple crossings three.
_NATURE_ASR: dict[tuple[SingularityType, Nature], tuple[int, int, int]] = {
    (_T.REGULAR, _N.A): (1, 0, 0),
    (_T.REGULAR, _N.S): (0, 1, 0),
    (_T.REGULAR, _N.R): (0, 0, 1),
    (_T.CONE, _N.A): (1, 0, 0),
    (_T.CONE, _N.S): (0, 1, 0),
    (_T.CONE, _N.R): (0, 0, 1),
    (_T.WHITNEY, _N.A): (1, 0, 0),
    (_T.WHITNEY, _N.S_S): (0, 1, 0),
    (_T.WHITNEY, _N.S_U): (0, 1, 0),
    (_T.WHITNEY, _N.R): (0, 0, 1),
    (_T.DOUBLE, _N.A): (2, 0, 0),
    (_T.DOUBLE, _N.SA): (1, 1, 0),
    (_T.DOUBLE, _N.SS_S): (0, 2, 0),
    (_T.DOUBLE, _N.SS_U): (0, 2, 0),
    (_T.DOUBLE, _N.SR): (0, 1, 1),
    (_T.DOUBLE, _N.R): (0, 0, 2),
    (_T.TRIPLE, _N.A): (3, 0, 0),
    (_T.TRIPLE, _N.SSA): (1, 2, 0),
    (_T.TRIPLE, _N.SSR): (0, 2, 1),
    (_T.TRIPLE, _N.R): (0, 0, 3),
}

# Folds whose omega-limit is the singularity, i.e. folds entering the minimal
# isolating block through its entering boundary.  Folds exiting the block are
# the mirror image under nature reversal.
_FOLDS_IN: dict[tuple[SingularityType, Nature], int] = {
    (_T.WHITNEY, _N.A): 1,
    (_T.WHITNEY, _N.S_S): 1,
    (_T.DOUBLE, _N.A): 2,
    (_T.DOUBLE, _N.SA): 2,
    (_T.DOUBLE, _N.SS_S): 2,
    (_T.TRIPLE, _N.A): 6,
    (_T.TRIPLE, _N.SSA): 4,
    (_T.TRIPLE, _N.SSR): 2,
}

# Total folds meeting the minimal block of each chart type.
_TOTAL_FOLDS: dict[SingularityType, int] = {
    _T.REGULAR: 0,
    _T.CONE: 0,
    _T.WHITNEY: 1,
    _T.DOUBLE: 2,
    _T.TRIPLE: 6,
}


@dataclass(frozen=True)
class ConleyIndex:
    """Ranks (h0, h1, h2) of the homology Conley index of a singularity."""

    h0: int
    h1: int
    h2: int

    def __post_init__(self) -> None:
        if min(self.h0, self.h1, self.h2) < 0:
            raise ValueError("Conley index ranks must be non-negative")
        if self.h0 not in (0, 1):
            raise ValueError("h0 must be 0 or 1")
        if self.h0 == 1 and (self.h1, self.h2) != (0, 0):
            raise ValueError("h0 = 1 forces h1 = h2 = 0")

    @property
    def euler_term(self) -> int:
        return self.h0 - self.h1 + self.h2


@dataclass(frozen=True)
class VertexLabel:
    """Pair (chart type, nature) attached to a graph vertex."""

    kind: SingularityType
    nature: Nature

    def __post_init__(self) -> None:
        if self.nature not in ADMISSIBLE_NATURES[self.kind]:
            raise ValueError(f"nature {self.nature} not admissible for type {self.kind}")

    def __str__(self) -> str:
        return f"{self.kind},{self.nature}"


#: Sentinel for a dangling edge end.
OPEN = None


@dataclass(frozen=True)
class Edge:
    """Weighted directed edge; OPEN (None) endpoints dangle."""

    src: str | None
    dst: str | None
    weight: int


@dataclass
class LyapunovGraph:
    """Finite directed multigraph with labelled vertices and weighted edges."""

    vertices: dict[str, VertexLabel] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)

    def add_vertex(self, vid: str, kind: SingularityType, nature: Nature) -> None:
        if vid in self.vertices:
            raise ValueError(f"duplicate vertex id {vid!r}")
        self.vertices[vid] = VertexLabel(kind, nature)

    def add_edge(self, src: str | None, dst: str | None, weight: int) -> None:
        self.edges.append(Edge(src, dst, weight))

    def is_closed(self) -> bool:
        return all(e.src is not None and e.dst is not None for e in self.edges)

    def in_edges(self, vid: str) -> list[tuple[int, Edge]]:
        return [(i, e) for i, e in enumerate(self.edges) if e.dst == vid]

    def out_edges(self, vid: str) -> list[tuple[int, Edge]]:
        return [(i, e) for i, e in enumerate(self.edges) if e.src == vid]

    def canonical(self) -> "LyapunovGraph":
        """Copy with sorted vertex ids and sorted edge list."""
        verts = dict(sorted(self.vertices.items()))
        key = lambda e: (e.src or "", e.dst or "", e.weight)
        return LyapunovGraph(verts, sorted(self.edges, key=key))


@dataclass(frozen=True)
class SemiGraph:
    """A single labelled vertex with its incident edge weights."""

    label: VertexLabel
    in_weights: tuple[int, ...]
    out_weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.in_weights) + len(self.out_weights) < 1:
            raise ValueError("semi-graph needs at least one incident edge")
        if any(w < 1 for w in self.in_weights + self.out_weights):
            raise ValueError("edge weights must be >= 1")

    @property
    def e_plus(self) -> int:
        return len(self.in_weights)

    @property
    def e_minus(self) -> int:
        return len(self.out_weights)

    @property
    def b_plus(self) -> int:
        return sum(self.in_weights)

    @property
    def b_minus(self) -> int:
        return sum(self.out_weights)


def reverse_nature(n: Nature) -> Nature:
    """Nature of the same singularity under time reversal (an involution)."""
    return _REVERSE[n]


def conley_index(kind: SingularityType, nature: Nature) -> ConleyIndex:
    """Numerical Conley index of an admissible (type, nature) label."""
    try:
        return ConleyIndex(*_CONLEY[(kind, nature)])
    except KeyError:
        raise ValueError(f"inadmissible label ({kind}, {nature})") from None


def reverse_semigraph(sg: SemiGraph) -> SemiGraph:
    """Semi-graph of the time-reversed flow: swap sides, reverse the nature."""
    label = VertexLabel(sg.label.kind, reverse_nature(sg.label.nature))
    return SemiGraph(label, sg.out_weights, sg.in_weights)


def validate_graph(g: LyapunovGraph) -> list[str]:
    """Collect all structural violations; an empty list means valid."""
    report: list[str] = []
    ids = set(g.vertices)
    for i, e in enumerate(g.edges):
        if e.weight < 1:
            report.append(f"edge {i}: weight must be >= 1, got {e.weight}")
        for end, name in ((e.src, "source"), (e.dst, "target")):
            if end is not None and end not in ids:
                report.append(f"edge {i}: unknown {name} vertex {end!r}")
    # Label admissibility is enforced by VertexLabel on construction, but
    # re-check here so graphs built by other means still get a report.
    for vid, label in g.vertices.items():
        if label.nature not in ADMISSIBLE_NATURES[label.kind]:
            report.append(f"vertex {vid}: nature {label.nature} not admissible for {label.kind}")
    deps: dict[str, set[str]] = {vid: set() for vid in g.vertices}
    for e in g.edges:
        if e.src in ids and e.dst in ids:
            deps[e.dst].add(e.src)
    try:
        tuple(TopologicalSorter(deps).static_order())
    except CycleError as err:
        cycle = "->".join(str(v) for v in err.args[1])
        report.append(f"oriented cycle: {cycle}")
    incident = set()
    for e in g.edges:
        incident.update(v for v in (e.src, e.dst) if v is not None)
    for vid in g.vertices:
        if vid not in incident:
            report.append(f"vertex {vid}: isolated (semi-graphs need degree >= 1)")
    return report


def semigraph(g: LyapunovGraph, vid: str) -> SemiGraph:
    """Project the vertex and its incident edges out of the graph."""
    if vid not in g.vertices:
        raise KeyError(f"unknown vertex id {vid!r}")
    ins = tuple(e.weight for e in g.edges if e.dst == vid)
    outs = tuple(e.weight for e in g.edges if e.src == vid)
    if not ins and not outs:
        raise ValueError(f"vertex {vid!r} has degree 0")
    return SemiGraph(g.vertices[vid], ins, outs)


def ph_residual(sg: SemiGraph) -> int:
    """Deviation from the Poincare-Hopf condition; zero iff it holds.

    The condition equates the difference of the Euler terms of the Conley
    index and the reversed-flow index with e+ - B+ - e- + B-, where B is the
    total boundary weight on each side.
    """
    fwd = conley_index(sg.label.kind, sg.label.nature).euler_term
    rev = conley_index(sg.label.kind, reverse_nature(sg.label.nature)).euler_term
    return (fwd - rev) - (sg.e_plus - sg.b_plus - sg.e_minus + sg.b_minus)


def degree_bounds_ok(sg: SemiGraph) -> bool:
    """Check e- - 1 <= h1 and e+ - 1 <= h1 of the reversed index."""
    h1 = conley_index(sg.label.kind, sg.label.nature).h1
    h1_rev = conley_index(sg.label.kind, reverse_nature(sg.label.nature)).h1
    return sg.e_minus - 1 <= h1 and sg.e_plus - 1 <= h1_rev


def fold_degrees(kind: SingularityType, nature: Nature) -> tuple[int, int]:
    """(folds entering, folds exiting) the minimal block of this label."""
    if nature not in ADMISSIBLE_NATURES[kind]:
        raise ValueError(f"inadmissible label ({kind}, {nature})")
    fin = _FOLDS_IN.get((kind, nature), 0)
    fout = _FOLDS_IN.get((kind, reverse_nature(nature)), 0)
    return fin, fout


def total_folds(kind: SingularityType) -> int:
    """Total number of folds meeting a minimal block of this chart type."""
    return _TOTAL_FOLDS[kind]


def _require_closed(g: LyapunovGraph, op: str) -> None:
    if not g.is_closed():
        raise ValueError(f"{op} requires a closed graph (no dangling edges)")


def fold_balance(g: LyapunovGraph) -> bool:
    """Whether entering and exiting fold counts agree over the whole graph."""
    _require_closed(g, "fold_balance")
    fin = fout = 0
    for label in g.vertices.values():
        i, o = fold_degrees(label.kind, label.nature)
        fin += i
        fout += o
    return fin == fout


def euler_conley(g: LyapunovGraph) -> int:
    """Euler characteristic as the alternating sum of Conley indices."""
    _require_closed(g, "euler_conley")
    return sum(conley_index(l.kind, l.nature).euler_term for l in g.vertices.values())


def nature_totals(g: LyapunovGraph) -> tuple[int, int, int]:
    """Total (attracting, saddle, repelling) nature counts over all vertices."""
    a = s = r = 0
    for label in g.vertices.values():
        da, ds, dr = _NATURE_ASR[(label.kind, label.nature)]
        a, s, r = a + da, s + ds, r + dr
    return a, s, r


def euler_characteristic(a: int, s: int, r: int, whitney: int, triple: int) -> Fraction:
    """a - s + r + W/2 + T as an exact rational."""
    return Fraction(a - s + r) + Fraction(whitney, 2) + Fraction(triple)


def euler_gs(g: LyapunovGraph) -> Fraction:
    """Euler characteristic from nature totals and W/T vertex counts.

    Returned as an exact rational so that integrality (equivalent to fold
    balance) is exactly testable.
    """
    _require_closed(g, "euler_gs")
    a, s, r = nature_totals(g)
    w = sum(1 for l in g.vertices.values() if l.kind is _T.WHITNEY)
    t = sum(1 for l in g.vertices.values() if l.kind is _T.TRIPLE)
    return euler_characteristic(a, s, r, w, t)


def parse_type(text: str) -> SingularityType:
    """Case-insensitive chart type lookup."""
    try:
        return SingularityType(text.strip().upper())
    except ValueError:
        raise ValueError(f"unknown singularity type {text!r}") from None


def parse_nature(text: str) -> Nature:
    """Case-insensitive nature lookup."""
    try:
        return Nature(text.strip().lower())
    except ValueError:
        raise ValueError(f"unknown nature {text!r}") from None
