"""Independent brute-force oracles kept deliberately separate from the
package implementations they check."""

from __future__ import annotations

from itertools import permutations


def connected_matrix(n: int, mat: list[list[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(n):
            if v != u and mat[u][v] > 0 and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def _canon_matrix(n: int, mat: list[list[int]]) -> tuple:
    best = None
    for p in permutations(range(n)):
        key = tuple(tuple(mat[p[i]][p[j]] for j in range(n)) for i in range(n))
        if best is None or key < best:
            best = key
    return best


def brute_force_components(weight: int) -> set[tuple]:
    """Connected 4-regular multigraph classes via adjacency matrices.

    Returned as canonical matrices; the circle (weight 1) is the empty
    matrix on zero vertices.
    """
    if weight == 1:
        return {()}
    n = weight - 1
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    reps: set[tuple] = set()

    def rec(idx: int, mat: list[list[int]]) -> None:
        if idx == len(pairs):
            degree = [sum(mat[i][j] for j in range(n) if j != i) + 2 * mat[i][i] for i in range(n)]
            if all(d == 4 for d in degree) and connected_matrix(n, mat):
                reps.add(_canon_matrix(n, mat))
            return
        i, j = pairs[idx]
        top = 2 if i == j else 4
        for m in range(top + 1):
            mat[i][j] = mat[j][i] = m
            rec(idx + 1, mat)
        mat[i][j] = mat[j][i] = 0

    rec(0, [[0] * n for _ in range(n)])
    return reps


def matrix_of_component(comp) -> tuple:
    """Canonical adjacency matrix of a BranchedComponent (oracle encoding)."""
    n = comp.order
    if n == 0:
        return ()
    mat = [[0] * n for _ in range(n)]
    for u, v in comp.arcs:
        if u == v:
            mat[u][u] += 1
        else:
            mat[u][v] += 1
            mat[v][u] += 1
    return _canon_matrix(n, mat)


def multigraphs_isomorphic(c1, c2) -> bool:
    """Permutation-search isomorphism on components."""
    if c1.order != c2.order:
        return False
    if c1.order == 0:
        return True
    target = sorted(c2.arcs)
    for p in permutations(range(c1.order)):
        arcs = sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in c1.arcs)
        if arcs == target:
            return True
    return False
