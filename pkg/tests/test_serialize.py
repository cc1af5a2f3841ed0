"""Round-trip tests for the JSON formats."""
import json
from fractions import Fraction

import pytest

from tropdiv import Divisor, default_generic_chain
from tropdiv.plfunc import distance_function
from tropdiv.serialize import (chain_from_json, chain_to_json,
                               divisor_from_json, divisor_to_json, dumps,
                               graph_from_json, graph_to_json,
                               plfunction_from_json, plfunction_to_json,
                               point_from_json, point_to_json, rat_from_json,
                               rat_to_json)

from .conftest import theta_graph


class TestRationals:
    @pytest.mark.parametrize("q", [Fraction(0), Fraction(3), Fraction(-7, 2),
                                   Fraction(22, 7)])
    def test_round_trip(self, q):
        assert rat_from_json(rat_to_json(q)) == q

    def test_integers_are_compact(self):
        assert rat_to_json(Fraction(5)) == "5"
        assert rat_to_json(Fraction(5, 2)) == "5/2"

    def test_zero_denominator_rejected(self):
        with pytest.raises(ValueError):
            rat_from_json("1/0")


class TestPointsAndDivisors:
    def test_point_round_trip(self):
        G = theta_graph()
        for p in [G.vertex_point("a"), G.point(2, Fraction(7, 3))]:
            assert point_from_json(G, point_to_json(G, p)) == p

    def test_divisor_round_trip(self):
        G = theta_graph()
        D = Divisor({G.vertex_point("b"): -2, G.point(0, 1): 3})
        assert divisor_from_json(G, divisor_to_json(G, D)) == D


class TestGraphsAndChains:
    def test_graph_round_trip(self):
        G = theta_graph()
        G2 = graph_from_json(graph_to_json(G))
        assert G2.vertices == G.vertices
        assert G2.edges == G.edges

    def test_chain_round_trip(self):
        ch = default_generic_chain(3, extended=True)
        ch2 = chain_from_json(chain_to_json(ch))
        assert ch2.g == 3 and ch2.extended
        assert ch2.ell == ch.ell and ch2.m == ch.m and ch2.beta == ch.beta

    def test_graph_from_json_dispatches_chain(self):
        ch = default_generic_chain(2)
        G = graph_from_json(chain_to_json(ch))
        assert G.edges == ch.graph.edges


class TestPLFunctions:
    def test_round_trip(self):
        G = theta_graph()
        f = distance_function(G, G.point(1, Fraction(1, 2)))
        f2 = plfunction_from_json(G, plfunction_to_json(f))
        for ei in range(3):
            for k in range(5):
                p = G.point(ei, G.edge_length(ei) * k / 4)
                assert f2(p) == f(p)


class TestDumps:
    def test_canonical_output(self):
        obj = {"b": Fraction(1, 2), "a": [Fraction(3)]}
        text = dumps(obj)
        assert text.endswith("\n")
        assert json.loads(text) == {"a": ["3"], "b": "1/2"}
        assert text.index('"a"') < text.index('"b"')
