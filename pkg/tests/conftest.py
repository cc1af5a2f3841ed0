"""Shared fixtures and helpers for the test suite."""
from fractions import Fraction

import pytest

from tropdiv import MetricGraph, default_generic_chain
from tropdiv.sampling import SplitMix64


@pytest.fixture(scope="session")
def chain2():
    return default_generic_chain(2)


@pytest.fixture(scope="session")
def chain3():
    return default_generic_chain(3)


@pytest.fixture(scope="session")
def chain4():
    return default_generic_chain(4)


@pytest.fixture()
def rng():
    return SplitMix64(0xC0FFEE)


def circle_graph(circumference=4) -> MetricGraph:
    """A single loop: two parallel edges between two vertices."""
    half = Fraction(circumference, 2)
    return MetricGraph(["a", "b"], [("a", "b", half), ("a", "b", half)])


def theta_graph() -> MetricGraph:
    """Two vertices joined by three edges of different lengths (genus 2)."""
    return MetricGraph(["a", "b"], [
        ("a", "b", Fraction(2)),
        ("a", "b", Fraction(3)),
        ("a", "b", Fraction(5)),
    ])


def random_connected_graph(rng: SplitMix64) -> MetricGraph:
    """A small random connected metric graph with rational edge lengths."""
    n = rng.randint(2, 4)
    names = [f"n{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = rng.randint(0, i - 1)
        edges.append((names[j], names[i],
                      Fraction(rng.randint(1, 12), rng.randint(1, 4))))
    for _ in range(rng.randint(0, 3)):
        i, j = rng.randint(0, n - 1), rng.randint(0, n - 1)
        if i == j:
            continue
        edges.append((names[i], names[j],
                      Fraction(rng.randint(1, 12), rng.randint(1, 4))))
    return MetricGraph(names, edges)
