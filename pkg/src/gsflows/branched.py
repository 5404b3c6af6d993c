"""Distinguished branched 1-manifolds as 4-regular multigraphs.

A connected component is either a circle or a connected multigraph in which
every vertex (branch point) has degree exactly 4, loops counting twice.  The
weight of a component is its first Betti number, which for a 4-regular
multigraph on V vertices is always V + 1.  A manifold is a disjoint union of
at most four components.

Isomorphism is plain multigraph isomorphism by default.  An optional
strand-sensitive mode additionally matches the pairing of the four arc ends
at each branch point into two transverse strands; the two notions agree on
everything enumerated at weight <= 4.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product

MAX_COMPONENTS = 4
DEFAULT_ENUM_BOUND = 6
ENUM_BOUND_ENV = "GS_ENUM_BOUND"


@dataclass(frozen=True, order=True)
class BranchedComponent:
    """Circle (order 0) or connected 4-regular multigraph on `order` vertices."""

    order: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.order == 0:
            if self.arcs:
                raise ValueError("a circle carries no arcs")
            return
        degree = [0] * self.order
        for u, v in self.arcs:
            if not (0 <= u <= v < self.order):
                raise ValueError(f"arc ({u},{v}) out of range or not normalized")
            degree[u] += 1
            degree[v] += 1
        if any(d != 4 for d in degree):
            raise ValueError("every branch point must have degree 4")
        if tuple(sorted(self.arcs)) != self.arcs:
            raise ValueError("arcs must be sorted")
        if not _connected(self.order, self.arcs):
            raise ValueError("component must be connected")

    @property
    def is_circle(self) -> bool:
        return self.order == 0

    @property
    def weight(self) -> int:
        # E - V + 1 with E = 2V, so V + 1; the circle contributes 1.
        return self.order + 1

    def encode(self) -> str:
        if self.is_circle:
            return "O"
        return ",".join(f"{u}:{v}" for u, v in self.arcs)


CIRCLE = BranchedComponent(0, ())


@dataclass(frozen=True, order=True)
class Branched1Manifold:
    """Disjoint union of 1 to 4 branched components."""

    components: tuple[BranchedComponent, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.components) <= MAX_COMPONENTS:
            raise ValueError(f"component count must be 1..{MAX_COMPONENTS}")

    @property
    def total_weight(self) -> int:
        return sum(c.weight for c in self.components)

    def encode(self) -> str:
        return "|".join(c.encode() for c in self.components)


def _connected(order: int, arcs: tuple[tuple[int, int], ...]) -> bool:
    if order <= 1:
        return True
    adj: dict[int, set[int]] = {v: set() for v in range(order)}
    for u, v in arcs:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == order


_CANON_CACHE: dict[tuple[int, tuple[tuple[int, int], ...]], BranchedComponent] = {}

_PERM_BUDGET = 2_000_000


def _refine_colors(order: int, arcs: tuple[tuple[int, int], ...], rounds: int = 3) -> list:
    """Isomorphism-invariant vertex colours by neighbourhood refinement."""
    mult: dict[tuple[int, int], int] = {}
    loops = [0] * order
    for u, v in arcs:
        if u == v:
            loops[u] += 1
        else:
            mult[(u, v)] = mult.get((u, v), 0) + 1
    neighbours: dict[int, list[tuple[int, int]]] = {v: [] for v in range(order)}
    for (u, w), m in mult.items():
        neighbours[u].append((m, w))
        neighbours[w].append((m, u))
    colors = [loops[v] for v in range(order)]
    for _ in range(rounds):
        fresh = [
            (colors[v], tuple(sorted((m, colors[n]) for m, n in neighbours[v])))
            for v in range(order)
        ]
        ranks = {c: i for i, c in enumerate(sorted(set(fresh)))}
        colors = [ranks[c] for c in fresh]
    return colors


def canonical_component(order: int, arcs: list[tuple[int, int]] | tuple) -> BranchedComponent:
    """Relabel vertices to the lexicographically least sorted arc list.

    The search runs over relabelings preserving refinement colour classes,
    which is still canonical because the classes are isomorphism-invariant.
    """
    if order == 0:
        return CIRCLE
    norm = tuple(sorted((min(u, v), max(u, v)) for u, v in arcs))
    cached = _CANON_CACHE.get((order, norm))
    if cached is not None:
        return cached
    colors = _refine_colors(order, norm)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    budget = 1
    for group in ordered:
        for i in range(2, len(group) + 1):
            budget *= i
        if budget > _PERM_BUDGET:
            raise ValueError("component too symmetric for canonical labeling")
    best = None
    for parts in product(*(permutations(group) for group in ordered)):
        flat = [v for group in parts for v in group]
        perm = [0] * order
        for new, old in enumerate(flat):
            perm[old] = new
        key = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in norm))
        if best is None or key < best:
            best = key
    comp = BranchedComponent(order, best)
    _CANON_CACHE[(order, norm)] = comp
    return comp


def manifold(components: list[BranchedComponent] | tuple) -> Branched1Manifold:
    """Assemble components in canonical (sorted) order."""
    return Branched1Manifold(tuple(sorted(components)))


def circle_manifold(n: int = 1) -> Branched1Manifold:
    return manifold([CIRCLE] * n)


def figure_eight() -> BranchedComponent:
    return canonical_component(1, [(0, 0), (0, 0)])


def weight(m: Branched1Manifold) -> tuple[list[int], int]:
    """Per-component first Betti numbers and their total."""
    per = [c.weight for c in m.components]
    return per, sum(per)


def is_isomorphic(x: Branched1Manifold, y: Branched1Manifold) -> bool:
    """Componentwise multigraph isomorphism, multiplicities and loops included.

    Components are stored canonically, so this is encoding equality.
    """
    return x.encode() == y.encode()


def parse_manifold(text: str) -> Branched1Manifold:
    """Inverse of Branched1Manifold.encode."""
    comps = []
    for part in text.strip().split("|"):
        part = part.strip()
        if part == "O":
            comps.append(CIRCLE)
            continue
        arcs = []
        for item in part.split(","):
            u, _, v = item.partition(":")
            arcs.append((int(u), int(v)))
        order = max(max(u, v) for u, v in arcs) + 1
        comps.append(canonical_component(order, arcs))
    return manifold(comps)


def enum_bound() -> int:
    value = os.environ.get(ENUM_BOUND_ENV)
    return int(value) if value else DEFAULT_ENUM_BOUND


_ENUM_CACHE: dict[int, list[BranchedComponent]] = {}


def enumerate_connected(w: int, bound: int | None = None) -> list[BranchedComponent]:
    """All pairwise non-isomorphic connected components of weight w.

    Generates 4-regular multigraphs on w - 1 labelled vertices by
    backtracking over edge-slot multiplicities, then deduplicates by
    canonical form.  Weight 1 is the circle.
    """
    if w < 1:
        raise ValueError("weight must be >= 1")
    limit = bound if bound is not None else enum_bound()
    if w > limit:
        raise ValueError(f"weight {w} exceeds enumeration bound {limit}")
    if w in _ENUM_CACHE:
        return list(_ENUM_CACHE[w])
    if w == 1:
        _ENUM_CACHE[1] = [CIRCLE]
        return [CIRCLE]
    n = w - 1
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    seen: set[str] = set()
    out: list[BranchedComponent] = []

    def recurse(idx: int, degree: tuple[int, ...], arcs: tuple[tuple[int, int], ...]) -> None:
        if idx == len(slots):
            if all(d == 4 for d in degree) and _connected(n, arcs):
                comp = canonical_component(n, arcs)
                if comp.encode() not in seen:
                    seen.add(comp.encode())
                    out.append(comp)
            return
        i, j = slots[idx]
        step = 2 if i == j else 1
        room = 4 - degree[i] if i == j else min(4 - degree[i], 4 - degree[j])
        for mult in range(room // step + 1):
            d = list(degree)
            d[i] += mult * step
            if i != j:
                d[j] += mult * step
            recurse(idx + 1, tuple(d), arcs + ((i, j),) * mult)

    recurse(0, (0,) * n, ())
    out.sort()
    _ENUM_CACHE[w] = out
    return list(out)


# ---------------------------------------------------------------------------
# Arc positions and the point-identification rewrite


@dataclass(frozen=True)
class ArcPosition:
    """Symbolic interior position: component index, arc index, ordinal slot.

    Circles use arc index 0.  Two positions on the same arc are ordered by
    slot; only the combinatorial pattern matters, not metric placement.
    """

    component: int
    arc: int
    slot: int = 0


def _check_position(m: Branched1Manifold, p: ArcPosition) -> None:
    if not 0 <= p.component < len(m.components):
        raise ValueError(f"no component {p.component}")
    comp = m.components[p.component]
    n_arcs = 1 if comp.is_circle else len(comp.arcs)
    if not 0 <= p.arc < n_arcs:
        raise ValueError(f"component {p.component} has no arc {p.arc}")


def identify_points(m: Branched1Manifold, p1: ArcPosition, p2: ArcPosition) -> Branched1Manifold:
    """Merge two interior points into one new degree-4 branch point.

    Within one component the weight rises by 1 and the component count is
    unchanged; across two components they merge and the total weight is
    unchanged.
    """
    _check_position(m, p1)
    _check_position(m, p2)
    if (p1.component, p1.arc, p1.slot) == (p2.component, p2.arc, p2.slot):
        raise ValueError("positions coincide")

    # Flatten into one labelled arc list; component c gets offset base[c].
    base: list[int] = []
    next_vertex = 0
    for comp in m.components:
        base.append(next_vertex)
        next_vertex += comp.order
    edges: list[list[int]] = []
    arc_index: dict[tuple[int, int], int] = {}
    for ci, comp in enumerate(m.components):
        if comp.is_circle:
            # Close the circle through a temporary degree-2 vertex.
            t = next_vertex
            next_vertex += 1
            arc_index[(ci, 0)] = len(edges)
            edges.append([t, t])
        else:
            for ai, (u, v) in enumerate(comp.arcs):
                arc_index[(ci, ai)] = len(edges)
                edges.append([u + base[ci], v + base[ci]])

    w = next_vertex
    e1 = arc_index[(p1.component, p1.arc)]
    e2 = arc_index[(p2.component, p2.arc)]
    if e1 == e2:
        u, v = edges[e1]
        edges[e1] = [u, w]
        edges.append([w, w])
        edges.append([w, v])
    else:
        for e in (e1, e2):
            u, v = edges[e]
            edges[e] = [u, w]
            edges.append([w, v])
    return manifold_from_arcs(edges)


def manifold_from_arcs(edges: list[list[int]]) -> Branched1Manifold:
    """Rebuild a manifold from labelled arcs, suppressing degree-2 vertices."""
    degree: Counter[int] = Counter()
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    if any(d not in (2, 4) for d in degree.values()):
        raise ValueError("vertices must have degree 2 or 4")
    branch = {v for v, d in degree.items() if d == 4}

    # half_edges[v]: list of (edge index, index of the far end within the edge)
    half_edges: dict[int, list[tuple[int, int]]] = {v: [] for v in degree}
    for idx, (u, v) in enumerate(edges):
        half_edges[u].append((idx, 1))
        half_edges[v].append((idx, 0))

    parent = list(range(len(edges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for incid in half_edges.values():
        for (i, _), (j, _) in zip(incid, incid[1:]):
            parent[find(i)] = find(j)

    used = [False] * len(edges)
    comp_arcs: dict[int, list[tuple[int, int]]] = {}
    for v in sorted(branch):
        for idx, far in half_edges[v]:
            if used[idx]:
                continue
            used[idx] = True
            node = edges[idx][far]
            cur = idx
            while node not in branch:
                step = [(i, f) for i, f in half_edges[node] if not used[i]]
                if not step:
                    raise AssertionError("arc walk left the complex")
                cur, far = step[0]
                used[cur] = True
                node = edges[cur][far]
            comp_arcs.setdefault(find(idx), []).append((v, node))

    comp_branch: dict[int, list[int]] = {}
    for v in branch:
        root = find(half_edges[v][0][0])
        comp_branch.setdefault(root, []).append(v)

    comps: list[BranchedComponent] = []
    for root, arcs in comp_arcs.items():
        verts = sorted(comp_branch[root])
        relabel = {v: i for i, v in enumerate(verts)}
        comps.append(
            canonical_component(len(verts), [(relabel[u], relabel[v]) for u, v in arcs])
        )
    rootless = {find(i) for i in range(len(edges))} - set(comp_arcs)
    comps.extend(CIRCLE for _ in rootless)
    return manifold(comps)


@dataclass(frozen=True)
class PuncturePiece:
    """Connected piece left after removing a branch point."""

    branch_points: int
    arcs: int


def puncture(c: BranchedComponent, v: int) -> list[PuncturePiece]:
    """Remove branch point v; the four arc ends at v become free ends.

    Returns the connected pieces of the remaining 1-complex with the number
    of surviving branch points and arcs in each.
    """
    if c.is_circle or not 0 <= v < c.order:
        raise ValueError(f"component has no branch point {v}")
    items: list[str] = [f"v{u}" for u in range(c.order) if u != v]
    items += [f"a{i}" for i in range(len(c.arcs))]
    parent: dict[str, str] = {x: x for x in items}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (a, b) in enumerate(c.arcs):
        for end in (a, b):
            if end != v:
                parent[find(f"a{i}")] = find(f"v{end}")
    groups: dict[str, list[int]] = {}
    for i in range(len(c.arcs)):
        groups.setdefault(find(f"a{i}"), [0, 0])[1] += 1
    for u in range(c.order):
        if u != v:
            groups.setdefault(find(f"v{u}"), [0, 0])[0] += 1
    pieces = [PuncturePiece(bp, arcs) for bp, arcs in groups.values()]
    pieces.sort(key=lambda p: (p.branch_points, p.arcs))
    return pieces


# ---------------------------------------------------------------------------
# Named families used as realization certificates


def family_minimal(w: int) -> Branched1Manifold:
    """Boundary forms occurring at minimal weights: w in {1, 2, 3, 5, 7}.

    1: circle; 2: figure eight; 3: two circles crossing twice; 5: chain of
    three circles with consecutive pairs crossing twice; 7: three circles
    pairwise crossing twice (the octahedron graph).
    """
    if w == 1:
        return circle_manifold()
    if w == 2:
        return manifold([figure_eight()])
    if w == 3:
        return manifold([canonical_component(2, [(0, 1)] * 4)])
    if w == 5:
        return manifold([_chain_component(5)])
    if w == 7:
        arcs = [
            (i, j)
            for i in range(6)
            for j in range(i + 1, 6)
            if {i, j} not in ({0, 1}, {2, 3}, {4, 5})
        ]
        return manifold([canonical_component(6, arcs)])
    raise ValueError(f"no minimal-weight form for weight {w}")


def family_A(w: int) -> Branched1Manifold:
    """Loop-chain family: figure eight with extra loop-carrying branch points
    strung along one petal.

    family_A(w) is reachable from family_A(w - 1) by one point
    identification on an end loop.
    """
    if w < 1:
        raise ValueError("weight must be >= 1")
    if w == 1:
        return circle_manifold()
    n = w - 1
    if n == 1:
        return manifold([figure_eight()])
    arcs = [(0, 0), (n - 1, n - 1)]
    for i in range(n - 1):
        arcs.extend([(i, i + 1)] * 2)
    return manifold([canonical_component(n, arcs)])


def family_B(w: int) -> Branched1Manifold:
    """Circle-chain family: odd weights are chains of circles crossing twice;
    even weights add one loop-carrying branch point on a terminal arc."""
    if w < 1:
        raise ValueError("weight must be >= 1")
    if w == 1:
        return circle_manifold()
    if w == 2:
        return manifold([figure_eight()])
    if w % 2 == 1:
        return manifold([_chain_component(w)])
    chain = _chain_component(w - 1)
    n = chain.order
    arcs = list(chain.arcs)
    # Subdivide one arc of a terminal triple and hang a loop on it.
    terminal = arcs[0]
    arcs.remove(terminal)
    arcs.extend([(terminal[0], n), (terminal[1], n), (n, n)])
    return manifold([canonical_component(n + 1, arcs)])


def _chain_component(w: int) -> BranchedComponent:
    """Chain of (w + 1) / 2 circles, consecutive pairs crossing in two points."""
    k = (w + 1) // 2
    if k < 2:
        raise ValueError("chain needs at least two circles")
    n = 2 * (k - 1)
    arcs: list[tuple[int, int]] = []
    for i in range(k - 1):
        arcs.extend([(2 * i, 2 * i + 1)] * 2)
    # End circles close off their crossing pair with a third parallel arc.
    arcs.append((0, 1))
    arcs.append((n - 2, n - 1))
    # Middle circles join consecutive crossing pairs.
    for i in range(k - 2):
        arcs.extend([(2 * i, 2 * i + 2), (2 * i + 1, 2 * i + 3)])
    return canonical_component(n, arcs)


# ---------------------------------------------------------------------------
# Strand-sensitive comparison (optional mode)


@dataclass(frozen=True)
class StrandedComponent:
    """Component plus, per branch point, the pairing of its four arc ends
    into two transverse strands.

    An arc end is (arc index, side) with side 0 for the first endpoint and 1
    for the second; a loop contributes both sides at its vertex.
    """

    component: BranchedComponent
    strands: tuple[frozenset[frozenset[tuple[int, int]]], ...]

    def __post_init__(self) -> None:
        c = self.component
        if len(self.strands) != c.order:
            raise ValueError("one strand pairing per branch point required")
        for v in range(c.order):
            ends = set(_vertex_ends(c, v))
            pairing = self.strands[v]
            flat = [e for pair in pairing for e in pair]
            if len(pairing) != 2 or len(flat) != 4 or set(flat) != ends:
                raise ValueError(f"strand pairing at vertex {v} must split its 4 ends in two")


def _vertex_ends(c: BranchedComponent, v: int) -> list[tuple[int, int]]:
    ends = []
    for i, (a, b) in enumerate(c.arcs):
        if a == v:
            ends.append((i, 0))
        if b == v:
            ends.append((i, 1))
    return ends


def stranded_is_isomorphic(x: StrandedComponent, y: StrandedComponent) -> bool:
    """Isomorphism of components that also preserves strand pairings."""
    cx, cy = x.component, y.component
    if cx.order != cy.order or len(cx.arcs) != len(cy.arcs):
        return False
    if cx.order == 0:
        return True
    targets_by_pair: dict[tuple[int, int], list[int]] = {}
    for j, arc in enumerate(cy.arcs):
        targets_by_pair.setdefault(arc, []).append(j)
    for perm in permutations(range(cx.order)):
        choices = []
        ok = True
        for u, v in cx.arcs:
            pair = (min(perm[u], perm[v]), max(perm[u], perm[v]))
            cands = targets_by_pair.get(pair)
            if not cands:
                ok = False
                break
            choices.append(cands)
        if not ok:
            continue
        for combo in product(*choices):
            if len(set(combo)) != len(combo):
                continue
            for flips in product((False, True), repeat=len(cx.arcs)):
                if _strand_map_ok(x, y, perm, combo, flips):
                    return True
    return False


def _strand_map_ok(
    x: StrandedComponent,
    y: StrandedComponent,
    perm: tuple[int, ...],
    combo: tuple[int, ...],
    flips: tuple[bool, ...],
) -> bool:
    cx, cy = x.component, y.component
    # The end map must send the end at vertex u to an end at perm[u].
    for i, (u, v) in enumerate(cx.arcs):
        j = combo[i]
        a, b = cy.arcs[j]
        ends = (b, a) if flips[i] else (a, b)
        if (perm[u], perm[v]) != ends:
            return False

    def map_end(end: tuple[int, int]) -> tuple[int, int]:
        i, side = end
        j = combo[i]
        return (j, 1 - side if flips[i] else side)

    for v in range(cx.order):
        image = frozenset(frozenset(map_end(e) for e in pair) for pair in x.strands[v])
        if image != y.strands[perm[v]]:
            return False
    return True
