"""Tests for burning, reduction, equivalence, and rank."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropdiv import Divisor, canonical_divisor, default_generic_chain
from tropdiv.errors import PreconditionError, ReductionCapError, TheoremViolation
from tropdiv.reduce import (default_base, default_rank_points, dhar_burn,
                            dhar_unburnt, effective_class, find_unoccupied_edge,
                            is_equivalent, is_reduced, rank,
                            rank_subdivision_oracle, riemann_roch_check,
                            v_reduce)
from tropdiv.sampling import SplitMix64, random_divisor, random_effective_divisor

from .conftest import circle_graph, theta_graph


class TestBurning:
    def test_effective_reduced_divisor_burns_completely(self):
        G = theta_graph()
        a = G.vertex_point("a")
        assert dhar_burn(G, Divisor({a: 5}), a).all_burnt
        assert dhar_unburnt(G, Divisor({a: 5}), a).is_empty

    def test_blocking_chips_survive(self):
        G = circle_graph(4)
        a = G.vertex_point("a")
        p = G.point(0, 1)
        # two chips at the antipode block fire from both sides
        far = G.point(1, Fraction(1))
        burn = dhar_burn(G, Divisor({far: 2}), a)
        assert not burn.all_burnt
        assert far in burn.unburnt
        assert p not in burn.unburnt

    def test_debt_away_from_base_rejected(self):
        G = theta_graph()
        a, b = G.vertex_point("a"), G.vertex_point("b")
        with pytest.raises(PreconditionError):
            dhar_burn(G, Divisor({b: -1}), a)


class TestReduction:
    def test_circle_group_law(self):
        # on a circle, deg-2 divisor p + q reduces at a to a + (p +_circle q)
        G = circle_graph(4)
        a = G.vertex_point("a")
        p = G.point(0, Fraction(1, 2))
        res = v_reduce(G, Divisor({p: 2}), a)
        assert res.reduced == Divisor({a: 1, G.point(0, 1): 1})

    def test_witness_equation_and_normalization(self, chain2, rng):
        G = chain2.graph
        base = default_base(G)
        for _ in range(5):
            D = random_divisor(G, rng, rng.randint(-2, 4))
            res = v_reduce(G, D, base)
            assert D + res.witness.divisor() == res.reduced
            assert res.witness(base) == 0

    def test_idempotent(self, chain2, rng):
        G = chain2.graph
        base = default_base(G)
        D = random_divisor(G, rng, 3)
        red = v_reduce(G, D, base).reduced
        assert is_reduced(G, red, base)
        assert v_reduce(G, red, base).reduced == red

    def test_debt_is_cleared(self, chain2):
        G = chain2.graph
        base = default_base(G)
        far = chain2.w(2)
        res = v_reduce(G, Divisor({far: -2, base: 5}), base)
        assert all(c >= 0 for p, c in res.reduced.items() if p != base)

    def test_cap_raises(self, chain2):
        G = chain2.graph
        D = Divisor({chain2.w(2): 3})
        with pytest.raises(ReductionCapError):
            v_reduce(G, D, default_base(G), max_steps=1)

    def test_track_witness_paths_agree(self, chain3, rng):
        G = chain3.graph
        base = default_base(G)
        for _ in range(5):
            D = random_divisor(G, rng, rng.randint(-1, 5))
            slow = v_reduce(G, D, base, track_witness=True).reduced
            fast = v_reduce(G, D, base, track_witness=False).reduced
            assert slow == fast


class TestEquivalence:
    def test_equivalent_after_firing(self, chain2, rng):
        from tropdiv.plfunc import distance_function
        G = chain2.graph
        D = random_effective_divisor(G, rng, 3)
        f = distance_function(G, default_base(G), cap=Fraction(1, 2))
        E = D + f.divisor()
        w = is_equivalent(G, D, E)
        assert w is not None
        assert D + w.divisor() == E

    def test_inequivalent(self, chain2):
        G = chain2.graph
        D = Divisor({chain2.v(1): 1})
        E = Divisor({chain2.w(2): 1})  # distinct points, genus > 0
        assert is_equivalent(G, D, E) is None

    def test_degree_mismatch(self, chain2):
        G = chain2.graph
        assert is_equivalent(G, Divisor(), Divisor({chain2.v(1): 1})) is None

    def test_effective_class(self, chain2):
        G = chain2.graph
        assert effective_class(G, Divisor({chain2.v(1): 1}))
        assert not effective_class(G, Divisor({chain2.v(1): -1}))


class TestRank:
    def test_known_values(self, chain3):
        G = chain3.graph
        K = canonical_divisor(G)
        assert rank(G, Divisor()) == 0
        assert rank(G, K) == 3 - 1
        assert rank(G, Divisor({chain3.v(1): -1})) == -1
        assert rank(G, Divisor({chain3.v(2): 1})) == 0
        # degree above 2g-2 forces rank d - g
        assert rank(G, K + Divisor({chain3.v(1): 2})) == 6 - 3

    def test_rank_is_class_invariant(self, chain2, rng):
        from tropdiv.plfunc import distance_function
        G = chain2.graph
        D = random_effective_divisor(G, rng, 2)
        f = distance_function(G, chain2.w(1), cap=Fraction(1, 3))
        assert rank(G, D) == rank(G, D + f.divisor())

    def test_subdivision_oracle_agrees(self, chain2, rng):
        G = chain2.graph
        for _ in range(4):
            D = random_divisor(G, rng, rng.randint(-1, 4))
            assert rank(G, D) == rank_subdivision_oracle(G, D, n=4)

    def test_default_rank_points_loopless(self, chain3):
        pts = default_rank_points(chain3.graph)
        assert all(p.is_vertex for p in pts)

    def test_default_rank_points_self_loop(self):
        from tropdiv import MetricGraph
        G = MetricGraph(["a"], [("a", "a", Fraction(3))])
        pts = default_rank_points(G)
        assert len(pts) == 2  # the vertex plus a loop-breaking midpoint


class TestRiemannRoch:
    @pytest.mark.parametrize("g", [2, 3])
    def test_identity_small_sample(self, g):
        chain = default_generic_chain(g)
        G = chain.graph
        rng = SplitMix64(5 * g)
        for _ in range(6):
            D = random_divisor(G, rng, rng.randint(-2, 2 * g))
            ok, r1, r2 = riemann_roch_check(G, D)
            assert ok, (D, r1, r2)


class TestUnoccupiedEdge:
    def test_canonical_skips_an_open_edge(self, chain3):
        G = chain3.graph
        K = canonical_divisor(G)
        tops = [chain3.top_edge(i) for i in range(1, 4)]
        ei = find_unoccupied_edge(G, K, tops)
        assert ei in tops

    def test_requires_canonical_class(self, chain3):
        with pytest.raises(PreconditionError):
            find_unoccupied_edge(chain3.graph, Divisor({chain3.v(1): 1}),
                                 [chain3.top_edge(1)])
