"""JSON serialization with exact round-tripping.

Rationals travel as strings "p" or "p/q" in lowest terms; points as
{"edge": id, "offset": "p/q"} (or {"vertex": name} on input); divisors as
sorted lists of {point, coeff}.  Output is deterministic: keys sorted,
rationals canonical.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import GraphError
from .graph import ChainOfLoops, Divisor, MetricGraph, Point, make_chain
from .plfunc import PLFunction


def rat_to_json(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_json(s: Any) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise GraphError(f"expected a rational string, got {s!r}")
    parts = s.split("/")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if len(parts) == 2:
        num, den = int(parts[0]), int(parts[1])
        if den == 0:
            raise GraphError(f"zero denominator in {s!r}")
        return Fraction(num, den)
    raise GraphError(f"malformed rational {s!r}")


def point_to_json(graph: MetricGraph, p: Point) -> dict:
    ei, off = graph.edge_coordinates(p)[0]
    return {"edge": ei, "offset": rat_to_json(off)}


def point_from_json(graph: MetricGraph, obj: dict) -> Point:
    if "vertex" in obj:
        return graph.vertex_point(obj["vertex"])
    return graph.point(int(obj["edge"]), rat_from_json(obj["offset"]))


def divisor_to_json(graph: MetricGraph, D: Divisor) -> list:
    items = sorted(D.items(), key=lambda t: t[0].sort_key())
    return [{"point": point_to_json(graph, p), "coeff": c} for p, c in items]


def divisor_from_json(graph: MetricGraph, obj: list) -> Divisor:
    return Divisor([(point_from_json(graph, t["point"]), int(t["coeff"]))
                    for t in obj])


def graph_to_json(graph: MetricGraph) -> dict:
    return {
        "type": "graph",
        "vertices": list(graph.vertices),
        "edges": [[u, v, rat_to_json(l)] for (u, v, l) in graph.edges],
    }


def chain_to_json(chain: ChainOfLoops) -> dict:
    obj = {
        "type": "chain",
        "g": chain.g,
        "ell": [rat_to_json(x) for x in chain.ell],
        "m": [rat_to_json(x) for x in chain.m],
        "beta": [rat_to_json(x) for x in chain.beta],
        "extended": chain.extended,
    }
    if chain.extended:
        G = chain.graph
        obj["pendant"] = [rat_to_json(G.edge_length(chain.bridge_edge(0))),
                          rat_to_json(G.edge_length(chain.bridge_edge(chain.g)))]
    return obj


def graph_from_json(obj: dict) -> MetricGraph:
    kind = obj.get("type", "graph")
    if kind == "chain":
        return chain_from_json(obj).graph
    return MetricGraph(obj["vertices"],
                       [(u, v, rat_from_json(l)) for (u, v, l) in obj["edges"]])


def chain_from_json(obj: dict) -> ChainOfLoops:
    if obj.get("type") != "chain":
        raise GraphError("not a chain description")
    return make_chain(
        int(obj["g"]),
        [rat_from_json(x) for x in obj["ell"]],
        [rat_from_json(x) for x in obj["m"]],
        [rat_from_json(x) for x in obj["beta"]],
        extended=bool(obj.get("extended", False)),
        pendant=[rat_from_json(x) for x in obj.get("pendant", [1, 1])],
    )


def plfunction_to_json(f: PLFunction) -> dict:
    return {
        "edges": {
            str(ei): [{"offset": rat_to_json(o), "value": rat_to_json(v)}
                      for (o, v) in pts]
            for ei, pts in sorted(f.data.items())
        }
    }


def plfunction_from_json(graph: MetricGraph, obj: dict) -> PLFunction:
    data = {
        int(ei): [(rat_from_json(t["offset"]), rat_from_json(t["value"]))
                  for t in pts]
        for ei, pts in obj["edges"].items()
    }
    return PLFunction(graph, data)


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, stable layout, trailing newline.

    ``Fraction`` values anywhere in ``obj`` are rendered with
    :func:`rat_to_json`.
    """

    def default(o: Any) -> str:
        if isinstance(o, Fraction):
            return rat_to_json(o)
        raise TypeError(f"not JSON serializable: {o!r}")

    return json.dumps(obj, sort_keys=True, indent=2, default=default) + "\n"
