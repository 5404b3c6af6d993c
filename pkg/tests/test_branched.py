import random

import pytest
from hypothesis import given, settings, strategies as st

from gsflows.branched import (
    CIRCLE,
    ArcPosition,
    Branched1Manifold,
    BranchedComponent,
    StrandedComponent,
    canonical_component,
    circle_manifold,
    enumerate_connected,
    family_A,
    family_B,
    family_minimal,
    figure_eight,
    identify_points,
    is_isomorphic,
    manifold,
    parse_manifold,
    puncture,
    stranded_is_isomorphic,
    weight,
)

from oracles import brute_force_components, matrix_of_component, multigraphs_isomorphic

THREE_A = family_minimal(3).components[0]  # two circles crossing twice
THREE_B = family_A(3).components[0]  # loop, double arc, loop


def random_positions(rng: random.Random, m: Branched1Manifold, count: int = 2):
    spots = []
    for ci, comp in enumerate(m.components):
        arcs = 1 if comp.is_circle else len(comp.arcs)
        for ai in range(arcs):
            for slot in (0, 1):
                spots.append(ArcPosition(ci, ai, slot))
    return rng.sample(spots, count)


def random_manifold(rng: random.Random, moves: int) -> Branched1Manifold:
    m = circle_manifold(rng.randint(1, 3))
    for _ in range(moves):
        p1, p2 = random_positions(rng, m)
        m = identify_points(m, p1, p2)
    return m


class TestWeight:
    def test_circle(self):
        assert weight(circle_manifold()) == ([1], 1)

    def test_figure_eight(self):
        assert weight(manifold([figure_eight()])) == ([2], 2)

    def test_two_circles_crossing_twice(self):
        assert weight(manifold([THREE_A])) == ([3], 3)

    def test_component_relations(self):
        rng = random.Random(5)
        for _ in range(50):
            m = random_manifold(rng, rng.randint(0, 4))
            for comp in m.components:
                if not comp.is_circle:
                    assert len(comp.arcs) == 2 * comp.order
                    assert comp.weight == comp.order + 1
            per, total = weight(m)
            edges = sum(len(c.arcs) for c in m.components)
            verts = sum(c.order for c in m.components)
            assert total == edges - verts + len(m.components)


class TestIsomorphism:
    def test_weight_separates(self):
        assert not is_isomorphic(manifold([figure_eight()]), circle_manifold())

    def test_two_weight_three_types_differ(self):
        assert not is_isomorphic(manifold([THREE_A]), manifold([THREE_B]))

    def test_relabelled_copy(self):
        rng = random.Random(9)
        for _ in range(30):
            m = random_manifold(rng, rng.randint(1, 4))
            comp = rng.choice([c for c in m.components if not c.is_circle] or [None])
            if comp is None:
                continue
            perm = list(range(comp.order))
            rng.shuffle(perm)
            relabeled = canonical_component(comp.order, [(perm[u], perm[v]) for u, v in comp.arcs])
            assert relabeled == comp

    def test_equivalence_on_enumeration(self):
        for w in range(2, 6):
            forms = enumerate_connected(w)
            for i, a in enumerate(forms):
                for b in forms[i + 1 :]:
                    assert not multigraphs_isomorphic(a, b)
                assert multigraphs_isomorphic(a, a)


class TestEnumerate:
    def test_low_weight_counts(self):
        assert [len(enumerate_connected(w)) for w in (1, 2, 3, 4)] == [1, 1, 2, 4]

    def test_matches_independent_generator(self):
        for w in range(1, 6):
            ours = {matrix_of_component(c) for c in enumerate_connected(w)}
            assert ours == brute_force_components(w)

    def test_bound(self):
        with pytest.raises(ValueError):
            enumerate_connected(7, bound=6)
        with pytest.raises(ValueError):
            enumerate_connected(0)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("GS_ENUM_BOUND", "3")
        with pytest.raises(ValueError):
            enumerate_connected(4)
        assert len(enumerate_connected(3)) == 2


class TestIdentifyPoints:
    def test_circle_to_figure_eight(self):
        m = identify_points(circle_manifold(), ArcPosition(0, 0, 0), ArcPosition(0, 0, 1))
        assert is_isomorphic(m, manifold([figure_eight()]))

    def test_figure_eight_petals_to_crossing_pair(self):
        f8 = manifold([figure_eight()])
        m = identify_points(f8, ArcPosition(0, 0, 0), ArcPosition(0, 1, 0))
        assert is_isomorphic(m, manifold([THREE_A]))

    def test_same_petal_gives_loop_chain(self):
        f8 = manifold([figure_eight()])
        m = identify_points(f8, ArcPosition(0, 0, 0), ArcPosition(0, 0, 1))
        assert is_isomorphic(m, manifold([THREE_B]))

    def test_two_circles_merge(self):
        m = identify_points(circle_manifold(2), ArcPosition(0, 0, 0), ArcPosition(1, 0, 0))
        assert is_isomorphic(m, manifold([figure_eight()]))
        assert len(m.components) == 1 and m.total_weight == 2

    def test_coincident_positions_rejected(self):
        with pytest.raises(ValueError):
            identify_points(circle_manifold(), ArcPosition(0, 0, 0), ArcPosition(0, 0, 0))

    def test_conservation_laws(self):
        rng = random.Random(31)
        for _ in range(300):
            m = random_manifold(rng, rng.randint(0, 4))
            p1, p2 = random_positions(rng, m)
            result = identify_points(m, p1, p2)
            if p1.component == p2.component:
                assert result.total_weight == m.total_weight + 1
                assert len(result.components) == len(m.components)
            else:
                assert result.total_weight == m.total_weight
                assert len(result.components) == len(m.components) - 1


class TestPuncture:
    def test_figure_eight(self):
        pieces = puncture(figure_eight(), 0)
        assert [p.branch_points for p in pieces] == [0, 0]

    def test_crossing_pair_stays_connected(self):
        for v in (0, 1):
            assert len(puncture(THREE_A, v)) == 1

    def test_even_chain_member_disconnects(self):
        comp = family_B(4).components[0]
        results = [puncture(comp, v) for v in range(comp.order)]
        disconnecting = [r for r in results if len(r) == 2]
        assert len(disconnecting) == 1
        pieces = disconnecting[0]
        assert sorted(p.branch_points for p in pieces) == [0, comp.order - 1]

    def test_bad_vertex(self):
        with pytest.raises(ValueError):
            puncture(CIRCLE, 0)
        with pytest.raises(ValueError):
            puncture(figure_eight(), 1)


class TestFamilies:
    def test_minimal_members(self):
        assert family_minimal(1) == circle_manifold()
        assert is_isomorphic(family_minimal(2), manifold([figure_eight()]))
        assert is_isomorphic(family_minimal(3), manifold([THREE_A]))
        chain5 = family_minimal(5).components[0]
        assert (chain5.order, len(chain5.arcs)) == (4, 8)
        octa = family_minimal(7).components[0]
        assert (octa.order, len(octa.arcs)) == (6, 12)
        assert all(u != v for u, v in octa.arcs)

    def test_minimal_rejects_other_weights(self):
        for w in (4, 6, 8):
            with pytest.raises(ValueError):
                family_minimal(w)

    def test_family_weights(self):
        for w in range(1, 11):
            assert weight(family_A(w)) == ([w], w)
            assert weight(family_B(w)) == ([w], w)

    def test_family_A_single_move_growth(self):
        for w in range(2, 11):
            prev = family_A(w - 1)
            target = family_A(w)
            moves = []
            for p1 in all_positions(prev):
                for p2 in all_positions(prev):
                    if p1 != p2:
                        moves.append(identify_points(prev, p1, p2))
            assert any(is_isomorphic(m, target) for m in moves)

    def test_family_B_puncture_predicates(self):
        for w in range(3, 11):
            comp = family_B(w).components[0]
            results = [puncture(comp, v) for v in range(comp.order)]
            if w % 2 == 1:
                assert all(len(r) == 1 for r in results)
            else:
                split = [r for r in results if len(r) > 1]
                assert split
                assert any(
                    len(r) == 2 and sorted(p.branch_points for p in r)[0] == 0
                    and sorted(p.branch_points for p in r)[1] == comp.order - 1
                    for r in split
                )

    def test_agreement_at_low_weights(self):
        assert is_isomorphic(family_A(1), family_B(1))
        assert is_isomorphic(family_A(2), family_B(2))
        assert is_isomorphic(family_B(3), family_minimal(3))

    def test_weight_three_classes_exhausted(self):
        codes = {family_A(3).encode(), family_B(3).encode(), family_minimal(3).encode()}
        assert codes == {m.encode() for m in (manifold([c]) for c in enumerate_connected(3))}


def all_positions(m: Branched1Manifold):
    out = []
    for ci, comp in enumerate(m.components):
        arcs = 1 if comp.is_circle else len(comp.arcs)
        for ai in range(arcs):
            for slot in (0, 1):
                out.append(ArcPosition(ci, ai, slot))
    return out


class TestEncoding:
    def test_fixed_forms(self):
        assert circle_manifold().encode() == "O"
        assert manifold([figure_eight()]).encode() == "0:0,0:0"
        assert manifold([THREE_A]).encode() == "0:1,0:1,0:1,0:1"
        assert manifold([CIRCLE, figure_eight()]).encode() == "O|0:0,0:0"

    def test_round_trip(self):
        rng = random.Random(77)
        for _ in range(100):
            m = random_manifold(rng, rng.randint(0, 4))
            assert parse_manifold(m.encode()) == m

    @given(st.integers(1, 6))
    @settings(max_examples=20)
    def test_families_round_trip(self, w):
        for fam in (family_A, family_B):
            m = fam(w)
            assert parse_manifold(m.encode()) == m


class TestStrandMode:
    def test_figure_eight_strandings_differ(self):
        f8 = figure_eight()
        ends = [(0, 0), (0, 1), (1, 0), (1, 1)]
        per_petal = StrandedComponent(
            f8, (frozenset({frozenset(ends[:2]), frozenset(ends[2:])}),)
        )
        crossing = StrandedComponent(
            f8,
            (frozenset({frozenset({ends[0], ends[2]}), frozenset({ends[1], ends[3]})}),),
        )
        assert stranded_is_isomorphic(per_petal, per_petal)
        assert stranded_is_isomorphic(crossing, crossing)
        assert not stranded_is_isomorphic(per_petal, crossing)

    def test_plain_isomorphism_ignores_strands(self):
        assert is_isomorphic(manifold([figure_eight()]), manifold([figure_eight()]))

    def test_invalid_pairing_rejected(self):
        with pytest.raises(ValueError):
            StrandedComponent(figure_eight(), (frozenset({frozenset({(0, 0), (0, 1)})}),))


class TestCanonicalAgainstBruteForce:
    def test_weight_six_sample(self):
        rng = random.Random(13)
        forms = enumerate_connected(6)
        sample = rng.sample(forms, 8)
        for comp in sample:
            perm = list(range(comp.order))
            rng.shuffle(perm)
            relabeled = canonical_component(comp.order, [(perm[u], perm[v]) for u, v in comp.arcs])
            assert relabeled == comp
        for a in sample:
            for b in sample:
                assert multigraphs_isomorphic(a, b) == (a == b)
