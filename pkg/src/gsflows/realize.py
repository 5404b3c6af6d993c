"""Global realizability of closed Lyapunov graphs.

A graph is realizable when branched 1-manifolds can be assigned to its edges
so that around every vertex the induced boundary pair bounds an isolating
block for the vertex label.  Sufficient conditions are dispatched in order
of increasing generality: all-minimal weights, no bifurcation vertices,
minimal bifurcations, plane/cone/Whitney labels only, and the two uniform
edge-assignment families.  Each fires with an explicit certificate mapping
edges to canonical forms.  When no condition applies, a bounded exhaustive
search over per-edge form assignments either produces a certificate, proves
non-realizability within the bound, or reports the question as open.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blocks import LocalVerdict, boundary_feasible, local_realizable
from .branched import (
    Branched1Manifold,
    enumerate_connected,
    family_A,
    family_B,
    family_minimal,
    is_isomorphic,
    manifold,
)
from .model import (
    LyapunovGraph,
    Nature,
    SemiGraph,
    SingularityType,
    fold_balance,
    euler_gs,
    semigraph,
    validate_graph,
)

_T = SingularityType
_N = Nature

REALIZABLE = "realizable"
NOT_REALIZABLE = "not-realizable"
UNKNOWN = "unknown"

Certificate = dict[int, Branched1Manifold]


@dataclass(frozen=True)
class RealizationVerdict:
    status: str
    theorem: str | None = None
    certificate: Certificate | None = None
    witness: tuple = ()
    reason: str | None = None
    searched_bound: int = 0

    @property
    def realizable(self) -> bool:
        return self.status == REALIZABLE


@dataclass(frozen=True)
class GSGraphStatus:
    is_gs: bool
    is_minimal_gs: bool
    verdicts: dict[str, LocalVerdict] = field(default_factory=dict)


def classify_graph(g: LyapunovGraph) -> GSGraphStatus:
    """Aggregate the local verdicts of every vertex."""
    report = validate_graph(g)
    if report:
        raise ValueError("graph is structurally invalid: " + "; ".join(report))
    verdicts = {vid: local_realizable(semigraph(g, vid)) for vid in g.vertices}
    is_gs = all(v.ok for v in verdicts.values())
    is_minimal = is_gs and all(v.is_minimal for v in verdicts.values())
    return GSGraphStatus(is_gs, is_minimal, verdicts)


def _ready(g: LyapunovGraph, status: GSGraphStatus | None = None) -> GSGraphStatus | None:
    """Common guards of the sufficient conditions: GS, closed, fold-balanced."""
    if not g.is_closed():
        return None
    st = status or classify_graph(g)
    if not st.is_gs or not fold_balance(g):
        return None
    return st


def check_minimal_case(g: LyapunovGraph) -> Certificate | None:
    """All-minimal graphs: assign the minimal-weight form to every edge."""
    st = _ready(g)
    if st is None or not st.is_minimal_gs:
        return None
    return {i: family_minimal(e.weight) for i, e in enumerate(g.edges)}


def _kinds(g: LyapunovGraph) -> set[SingularityType]:
    return {label.kind for label in g.vertices.values()}


def _degree(g: LyapunovGraph, vid: str) -> int:
    return sum(1 for e in g.edges if vid in (e.src, e.dst))


def check_linear(g: LyapunovGraph) -> Certificate | None:
    """No bifurcation vertices, no triple crossings: the circle-chain family."""
    if _T.TRIPLE in _kinds(g):
        return None
    if any(_degree(g, vid) > 2 for vid in g.vertices):
        return None
    if _ready(g) is None:
        return None
    return {i: family_B(e.weight) for i, e in enumerate(g.edges)}


def check_blend(g: LyapunovGraph) -> Certificate | None:
    """Bifurcation vertices allowed if all their incident weights are minimal.

    Minimal weights at plane/cone/Whitney/double-crossing vertices are at
    most 3, where the circle-chain family coincides with the minimal-weight
    forms, so one uniform assignment covers both parts of the decomposition.
    """
    if _T.TRIPLE in _kinds(g):
        return None
    st = _ready(g)
    if st is None:
        return None
    for vid in g.vertices:
        if _degree(g, vid) >= 3 and not st.verdicts[vid].is_minimal:
            return None
    return {i: family_B(e.weight) for i, e in enumerate(g.edges)}


def check_rcw(g: LyapunovGraph) -> Certificate | None:
    """Plane, cone and Whitney labels only: the loop-chain family."""
    if not _kinds(g) <= {_T.REGULAR, _T.CONE, _T.WHITNEY}:
        return None
    if _ready(g) is None:
        return None
    return {i: family_A(e.weight) for i, e in enumerate(g.edges)}


def lemma_firstfamily_ok(sg: SemiGraph) -> bool:
    """Whether the vertex admits a block with loop-chain boundaries."""
    kind, nature = sg.label.kind, sg.label.nature
    if kind is _T.TRIPLE:
        return False
    degree = sg.e_plus + sg.e_minus
    if degree == 1:
        w = (sg.in_weights + sg.out_weights)[0]
        if w not in (1, 2):
            return False
    if kind is _T.DOUBLE and nature in (_N.SA, _N.SR) and degree != 2:
        return False
    if degree > 4:
        return False
    if kind is _T.DOUBLE and nature is _N.SS_S and (sg.e_plus, sg.e_minus) == (1, 2):
        if sorted(sg.out_weights) != sorted((1, sg.b_plus - 2)):
            return False
    if kind is _T.DOUBLE and nature is _N.SS_U and (sg.e_plus, sg.e_minus) == (2, 1):
        if sorted(sg.in_weights) != sorted((1, sg.b_minus - 2)):
            return False
    if sg.e_minus == 3 and sorted(sg.out_weights) != sorted((1, 1, sg.b_minus - 2)):
        return False
    if sg.e_plus == 3 and sorted(sg.in_weights) != sorted((1, 1, sg.b_plus - 2)):
        return False
    return True


def lemma_familyB_ok(sg: SemiGraph) -> bool:
    """Whether the vertex admits a block with circle-chain boundaries."""
    kind = sg.label.kind
    if kind is _T.TRIPLE:
        return False
    ep, em = sg.e_plus, sg.e_minus
    bp, bm = sg.b_plus, sg.b_minus

    def odd(values):
        return all(v % 2 == 1 for v in values)

    # Plane or double crossing splitting a flow in two.
    if kind in (_T.REGULAR, _T.DOUBLE) and abs(bp - bm) == 1:
        if (ep, em) == (1, 2) and bp % 2 == 1 and not odd(sg.out_weights):
            return False
        if (ep, em) == (2, 1) and bm % 2 == 1 and not odd(sg.in_weights):
            return False
    # Whitney with two components on one side.
    if kind is _T.WHITNEY:
        if (ep, em) == (1, 2):
            if bp % 2 == 1 or sorted(sg.out_weights) != sorted((1, bp - 1)):
                return False
        if (ep, em) == (2, 1):
            if bm % 2 == 1 or sorted(sg.in_weights) != sorted((1, bm - 1)):
                return False
    # Double crossing with two components on each side.
    if kind is _T.DOUBLE and (ep, em) == (2, 2) and bp != bm:
        big, small = (sg.in_weights, sg.out_weights) if bp > bm else (sg.out_weights, sg.in_weights)
        if any(v % 2 == 1 for v in big):
            return False
        options = (
            sorted((1, sum(big) - 3)),
            sorted(v - 1 for v in big),
        )
        if sorted(small) not in options:
            return False
    # Double crossing with three or four components on one side.
    if kind is _T.DOUBLE:
        for side, other_total in ((sg.out_weights, bp), (sg.in_weights, bm)):
            if len(side) == 3:
                if side.count(1) < 1:
                    return False
                if other_total % 2 == 1 and not odd(side):
                    return False
            if len(side) == 4:
                if side.count(1) < 2:
                    return False
                if other_total % 2 == 1 and not odd(side):
                    return False
    return True


def check_families(g: LyapunovGraph) -> tuple[Certificate, str] | None:
    """Uniform per-weight assignment from one of the two families."""
    if _T.TRIPLE in _kinds(g):
        return None
    st = _ready(g)
    if st is None:
        return None
    sgs = [semigraph(g, vid) for vid in g.vertices]
    if all(lemma_firstfamily_ok(sg) for sg in sgs):
        return {i: family_A(e.weight) for i, e in enumerate(g.edges)}, "Thm10-i"
    if all(lemma_familyB_ok(sg) for sg in sgs):
        return {i: family_B(e.weight) for i, e in enumerate(g.edges)}, "Thm10-ii"
    return None


# ---------------------------------------------------------------------------
# Certificate verification and the bounded search


def _edge_form(cert, idx: int, end: str) -> Branched1Manifold:
    value = cert[idx]
    if isinstance(value, tuple):
        return value[0] if end == "src" else value[1]
    return value


def verify_certificate(g: LyapunovGraph, cert) -> bool:
    """Soundness audit of an edge-to-form assignment.

    Certificate values are connected manifolds, or (source-end, target-end)
    pairs; paired ends must be isomorphic, every form must carry the edge
    weight, and every vertex boundary must be block-feasible.
    """
    for i in range(len(g.edges)):
        if i not in cert:
            raise ValueError(f"certificate misses edge {i}")
    for i, e in enumerate(g.edges):
        src_form = _edge_form(cert, i, "src")
        dst_form = _edge_form(cert, i, "dst")
        if not is_isomorphic(src_form, dst_form):
            return False
        for form in (src_form, dst_form):
            if len(form.components) != 1 or form.total_weight != e.weight:
                return False
    for vid, label in g.vertices.items():
        ins = [_edge_form(cert, i, "dst") for i, e in enumerate(g.edges) if e.dst == vid]
        outs = [_edge_form(cert, i, "src") for i, e in enumerate(g.edges) if e.src == vid]
        if not boundary_feasible(label, ins, outs):
            return False
    return True


def _search(g: LyapunovGraph, bound: int) -> RealizationVerdict:
    """Exhaustive per-edge assignment over all forms of each edge weight."""
    candidates: list[list[Branched1Manifold]] = []
    for e in g.edges:
        forms = [manifold([c]) for c in enumerate_connected(e.weight, bound=max(bound, e.weight))]
        candidates.append(sorted(forms, key=lambda m: m.encode()))
    vertex_edges: dict[str, list[int]] = {vid: [] for vid in g.vertices}
    for i, e in enumerate(g.edges):
        vertex_edges[e.src].append(i)
        vertex_edges[e.dst].append(i)
    check_after: dict[int, list[str]] = {i: [] for i in range(len(g.edges))}
    for vid, idxs in vertex_edges.items():
        check_after[max(idxs)].append(vid)

    assignment: Certificate = {}

    def feasible_at(vid: str) -> bool:
        ins = [assignment[i] for i, e in enumerate(g.edges) if e.dst == vid]
        outs = [assignment[i] for i, e in enumerate(g.edges) if e.src == vid]
        return boundary_feasible(g.vertices[vid], ins, outs)

    def backtrack(idx: int) -> bool:
        if idx == len(g.edges):
            return True
        for form in candidates[idx]:
            assignment[idx] = form
            if all(feasible_at(vid) for vid in check_after[idx]) and backtrack(idx + 1):
                return True
            del assignment[idx]
        return False

    if backtrack(0):
        return RealizationVerdict(
            REALIZABLE, theorem="Search", certificate=dict(assignment), searched_bound=bound
        )
    return RealizationVerdict(
        NOT_REALIZABLE,
        reason="search-exhausted",
        witness=tuple(range(len(g.edges))),
        searched_bound=bound,
    )


def realize(g: LyapunovGraph, search_bound: int | None = None) -> RealizationVerdict:
    """Decide realizability of a closed graph.

    Pipeline: local verdicts, fold balance and Euler integrality as
    necessary conditions, the sufficient-condition dispatch, and finally the
    bounded exhaustive search when a bound is given.
    """
    report = validate_graph(g)
    if report:
        raise ValueError("graph is structurally invalid: " + "; ".join(report))
    if not g.is_closed():
        raise ValueError("realization is defined for closed graphs")
    status = classify_graph(g)
    if not status.is_gs:
        bad = tuple(vid for vid, v in status.verdicts.items() if not v.ok)
        reasons = {vid: status.verdicts[vid].reason for vid in bad}
        return RealizationVerdict(
            NOT_REALIZABLE, witness=bad, reason="local: " + ", ".join(f"{v}={r}" for v, r in reasons.items())
        )
    if not fold_balance(g):
        return RealizationVerdict(NOT_REALIZABLE, reason="fold-imbalance")
    if euler_gs(g).denominator != 1:
        return RealizationVerdict(NOT_REALIZABLE, reason="fractional-euler-characteristic")

    cert = check_minimal_case(g)
    if cert is not None:
        return RealizationVerdict(REALIZABLE, theorem="Thm6", certificate=cert)
    cert = check_linear(g)
    if cert is not None:
        return RealizationVerdict(REALIZABLE, theorem="Thm7", certificate=cert)
    cert = check_blend(g)
    if cert is not None:
        return RealizationVerdict(REALIZABLE, theorem="Thm8", certificate=cert)
    cert = check_rcw(g)
    if cert is not None:
        return RealizationVerdict(REALIZABLE, theorem="Thm9", certificate=cert)
    pair = check_families(g)
    if pair is not None:
        return RealizationVerdict(REALIZABLE, theorem=pair[1], certificate=pair[0])

    if search_bound is None:
        return RealizationVerdict(UNKNOWN, searched_bound=0)
    if any(e.weight > search_bound for e in g.edges):
        return RealizationVerdict(UNKNOWN, searched_bound=search_bound)
    return _search(g, search_bound)
