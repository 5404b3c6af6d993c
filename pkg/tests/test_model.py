import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from gsflows.model import (
    ADMISSIBLE_NATURES,
    OPEN,
    ConleyIndex,
    Edge,
    LyapunovGraph,
    Nature,
    SemiGraph,
    SingularityType,
    VertexLabel,
    conley_index,
    degree_bounds_ok,
    euler_characteristic,
    euler_conley,
    euler_gs,
    fold_balance,
    fold_degrees,
    nature_totals,
    parse_nature,
    parse_type,
    ph_residual,
    reverse_nature,
    reverse_semigraph,
    semigraph,
    total_folds,
    validate_graph,
)

T = SingularityType
N = Nature


def sg(t, n, ins, outs):
    return SemiGraph(VertexLabel(parse_type(t), parse_nature(n)), tuple(ins), tuple(outs))


def graph(verts, edges):
    g = LyapunovGraph()
    for vid, t, n in verts:
        g.add_vertex(vid, parse_type(t), parse_nature(n))
    for s, d, w in edges:
        g.add_edge(s, d, w)
    return g


ALL_LABELS = [(t, n) for t in T for n in ADMISSIBLE_NATURES[t]]


class TestConleyIndex:
    def test_table_values(self):
        assert conley_index(T.REGULAR, N.S) == ConleyIndex(0, 1, 0)
        assert conley_index(T.TRIPLE, N.R) == ConleyIndex(0, 0, 7)
        assert conley_index(T.DOUBLE, N.SS_S) == ConleyIndex(0, 3, 0)
        assert conley_index(T.CONE, N.R) == ConleyIndex(0, 1, 2)

    def test_whitney_repeller_is_consistent_with_attractor_weight(self):
        # Forced by the boundary-count identity for the Whitney attractor.
        assert conley_index(T.WHITNEY, N.R) == ConleyIndex(0, 0, 2)
        assert ph_residual(sg("W", "a", [2], [])) == 0

    def test_inadmissible(self):
        with pytest.raises(ValueError):
            conley_index(T.REGULAR, N.SA)
        with pytest.raises(ValueError):
            VertexLabel(T.REGULAR, N.SSA)

    def test_attractor_invariant(self):
        with pytest.raises(ValueError):
            ConleyIndex(1, 1, 0)
        with pytest.raises(ValueError):
            ConleyIndex(2, 0, 0)


class TestReverseNature:
    def test_pairings(self):
        assert reverse_nature(N.SS_S) is N.SS_U
        assert reverse_nature(N.S) is N.S
        assert reverse_nature(N.SSA) is N.SSR

    def test_involution(self):
        for n in N:
            assert reverse_nature(reverse_nature(n)) is n

    def test_index_stable_under_double_reversal(self):
        for t, n in ALL_LABELS:
            assert conley_index(t, reverse_nature(reverse_nature(n))) == conley_index(t, n)

    def test_reversal_preserves_admissibility(self):
        for t, n in ALL_LABELS:
            assert reverse_nature(n) in ADMISSIBLE_NATURES[t]


class TestValidate:
    def test_smallest_semigraph_is_valid(self):
        g = graph([("v", "R", "a")], [(OPEN, "v", 1)])
        assert validate_graph(g) == []

    def test_two_cycle(self):
        g = graph([("a", "R", "s"), ("b", "R", "s")], [("a", "b", 1), ("b", "a", 1)])
        assert any("oriented cycle" in item for item in validate_graph(g))

    def test_zero_weight(self):
        g = graph([("v", "R", "a")], [])
        g.edges.append(Edge(OPEN, "v", 0))
        assert any("weight" in item for item in validate_graph(g))

    def test_unknown_endpoint_and_isolated(self):
        g = graph([("v", "R", "a")], [("ghost", "v", 1)])
        assert any("unknown" in item for item in validate_graph(g))
        g2 = graph([("v", "R", "a")], [])
        assert any("isolated" in item for item in validate_graph(g2))


class TestSemigraph:
    def test_projection(self):
        g = graph(
            [("v", "D", "ss_s"), ("p", "D", "r"), ("q", "R", "a")],
            [("p", "v", 1), (OPEN, "v", 2), ("v", "q", 3)],
        )
        s = semigraph(g, "v")
        assert (s.in_weights, s.out_weights) == ((1, 2), (3,))
        assert (s.e_plus, s.e_minus, s.b_plus, s.b_minus) == (2, 1, 3, 3)

    def test_unknown_vertex(self):
        with pytest.raises(KeyError):
            semigraph(graph([("v", "R", "a")], [(OPEN, "v", 1)]), "w")

    def test_isolated_vertex(self):
        g = graph([("v", "R", "a")], [])
        with pytest.raises(ValueError):
            semigraph(g, "v")

    def test_dangling_out_edge_counts(self):
        g = graph([("v", "R", "s")], [(OPEN, "v", 1), ("v", OPEN, 1)])
        s = semigraph(g, "v")
        assert (s.e_plus, s.e_minus) == (1, 1)


class TestPoincareHopf:
    def test_regular_attractor(self):
        assert ph_residual(sg("R", "a", [1], [])) == 0
        assert ph_residual(sg("R", "a", [2], [])) != 0

    def test_triple_attractor(self):
        assert ph_residual(sg("T", "a", [7], [])) == 0
        assert ph_residual(sg("T", "a", [6], [])) != 0

    def test_double_saddle(self):
        assert ph_residual(sg("D", "ss_s", [4], [2])) == 0
        assert ph_residual(sg("D", "ss_s", [4], [3])) == -1

    @given(
        st.sampled_from(ALL_LABELS),
        st.lists(st.integers(1, 9), min_size=0, max_size=4),
        st.lists(st.integers(1, 9), min_size=0, max_size=4),
    )
    def test_antisymmetry(self, label, ins, outs):
        if not ins and not outs:
            ins = [1]
        s = SemiGraph(VertexLabel(*label), tuple(ins), tuple(outs))
        assert ph_residual(reverse_semigraph(s)) == -ph_residual(s)


class TestDegreeBounds:
    def test_double_saddle_out_degree(self):
        assert degree_bounds_ok(sg("D", "ss_s", [4], [1, 1, 1, 1]))
        assert not degree_bounds_ok(sg("D", "ss_s", [5], [1, 1, 1, 1, 1]))

    def test_triple_in_degree(self):
        assert not degree_bounds_ok(sg("T", "ssa", [2, 2, 2], [4]))
        assert degree_bounds_ok(sg("T", "ssa", [5], [3]))


class TestFolds:
    def test_degrees(self):
        assert fold_degrees(T.TRIPLE, N.SSA) == (4, 2)
        assert fold_degrees(T.TRIPLE, N.SSR) == (2, 4)
        assert fold_degrees(T.REGULAR, N.S) == (0, 0)
        assert fold_degrees(T.DOUBLE, N.R) == (0, 2)
        assert fold_degrees(T.WHITNEY, N.S_S) == (1, 0)

    def test_totals(self):
        assert [total_folds(t) for t in (T.REGULAR, T.CONE, T.WHITNEY, T.DOUBLE, T.TRIPLE)] == [0, 0, 1, 2, 6]

    def test_totals_agree_with_degrees(self):
        # For every label, entering plus exiting folds give the chart total.
        for t, n in ALL_LABELS:
            fin, fout = fold_degrees(t, n)
            assert fin + fout == total_folds(t)

    def test_balance_pairs(self):
        g = graph([("r", "T", "r"), ("a", "T", "a")], [("r", "a", 7)])
        assert fold_balance(g)
        sums = [fold_degrees(T.WHITNEY, N.A), fold_degrees(T.WHITNEY, N.S_S)]
        assert (sum(x for x, _ in sums), sum(y for _, y in sums)) == (2, 0)

    def test_balance_without_folds(self):
        g = graph([("r", "R", "r"), ("a", "R", "a")], [("r", "a", 1)])
        assert fold_balance(g)

    def test_balance_needs_closed(self):
        g = graph([("v", "R", "a")], [(OPEN, "v", 1)])
        with pytest.raises(ValueError):
            fold_balance(g)


class TestEuler:
    def test_conley_sums(self):
        assert euler_conley(graph([("r", "R", "r"), ("a", "R", "a")], [("r", "a", 1)])) == 2
        assert euler_conley(graph([("r", "T", "r"), ("a", "T", "a")], [("r", "a", 7)])) == 8
        g = graph(
            [("r", "C", "r"), ("s", "C", "s"), ("a", "C", "a")],
            [("r", "s", 1), ("s", "a", 1)],
        )
        assert euler_conley(g) == 1

    def test_formula_instances(self):
        assert euler_characteristic(3, 5, 2, 2, 0) == 1
        assert euler_characteristic(2, 3, 1, 2, 0) == 1
        assert euler_characteristic(2, 6, 2, 4, 0) == 0
        assert euler_characteristic(3, 2, 3, 2, 0) == 5

    def test_empty_graph(self):
        assert euler_gs(LyapunovGraph()) == 0

    def test_exact_rational(self):
        g = graph([("r", "W", "r"), ("a", "W", "a")], [("r", "a", 2)])
        # a - s + r + W/2 = 1 - 0 + 1 + 1, matching the Conley sum 1 + 2.
        assert euler_gs(g) == Fraction(3)
        assert euler_conley(g) == 3
        assert nature_totals(g) == (1, 0, 1)

    def test_nature_totals_multiplicity(self):
        g = graph([("r", "T", "r"), ("a", "T", "a")], [("r", "a", 7)])
        assert nature_totals(g) == (3, 0, 3)
        g2 = graph([("v", "D", "ss_s")], [(OPEN, "v", 3), ("v", OPEN, 1)])
        assert nature_totals(g2) == (0, 2, 0)


class TestFoldParity:
    def test_whitney_plus_double_triple_even_when_balanced(self):
        from gsflows.generator import gen_random_gs_graph

        for seed in range(200):
            g = gen_random_gs_graph(seed, size=5 + seed % 6)
            if fold_balance(g):
                w = sum(1 for l in g.vertices.values() if l.kind is T.WHITNEY)
                t = sum(1 for l in g.vertices.values() if l.kind is T.TRIPLE)
                assert (w + 2 * t) % 2 == 0


class TestCanonicalGraph:
    def test_sorted_copy(self):
        g = graph([("b", "R", "a"), ("a", "R", "r")], [("a", "b", 1)])
        canon = g.canonical()
        assert list(canon.vertices) == ["a", "b"]
        assert canon.edges == g.edges
