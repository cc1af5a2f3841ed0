"""Continuous piecewise-linear functions with integer slopes on a metric graph.

A function is stored edge-by-edge as a sorted list of (offset, value)
breakpoints covering the whole edge; consecutive breakpoints are joined
linearly, and every segment slope must be an integer.  The order of a
function at a point is the sum of its incoming slopes, so local maxima
have positive order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GraphError, PreconditionError, TheoremViolation
from .graph import (Divisor, Interval, MetricGraph, Point, Region,
                    contains_point_in)

EdgeData = list[tuple[Fraction, Fraction]]


def _normalize_edge(pts: EdgeData, length: Fraction) -> EdgeData:
    pts = sorted(pts)
    if not pts or pts[0][0] != 0 or pts[-1][0] != length:
        raise GraphError("edge data must cover the edge from offset 0 to its length")
    out: EdgeData = [pts[0]]
    for (o, v) in pts[1:]:
        po, pv = out[-1]
        if o == po:
            if v != pv:
                raise GraphError(f"conflicting values at offset {o}")
            continue
        out.append((o, v))
    # validate integer slopes, then drop interior breakpoints that are collinear
    for (o1, v1), (o2, v2) in zip(out, out[1:]):
        s = (v2 - v1) / (o2 - o1)
        if s.denominator != 1:
            raise GraphError(f"non-integer slope {s}")
    merged: EdgeData = [out[0]]
    for k in range(1, len(out) - 1):
        o1, v1 = merged[-1]
        o2, v2 = out[k]
        o3, v3 = out[k + 1]
        if (v2 - v1) * (o3 - o2) == (v3 - v2) * (o2 - o1):
            continue
        merged.append(out[k])
    merged.append(out[-1])
    return merged


class PLFunction:
    """A continuous piecewise-linear function with integer slopes."""

    def __init__(self, graph: MetricGraph, data: dict[int, EdgeData]):
        self.graph = graph
        norm: dict[int, EdgeData] = {}
        for ei in range(len(graph.edges)):
            if ei not in data:
                raise GraphError(f"missing data for edge {ei}")
            norm[ei] = _normalize_edge([(Fraction(x), Fraction(y)) for (x, y) in data[ei]],
                                       graph.edge_length(ei))
        self.data = norm
        # continuity at vertices
        for name in graph.vertices:
            vals = {self._edge_value(ei, off) for (ei, off) in
                    graph.edge_coordinates(graph.vertex_point(name))}
            if len(vals) > 1:
                raise GraphError(f"discontinuous at vertex {name}: {sorted(vals)}")

    # -- evaluation ------------------------------------------------------

    def _edge_value(self, ei: int, off: Fraction) -> Fraction:
        pts = self.data[ei]
        lo, hi = 0, len(pts) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if pts[mid][0] < off:
                lo = mid + 1
            else:
                hi = mid
        o2, v2 = pts[lo]
        if o2 == off:
            return v2
        o1, v1 = pts[lo - 1]
        return v1 + (v2 - v1) * (off - o1) / (o2 - o1)

    def __call__(self, p: Point) -> Fraction:
        ei, off = self.graph.edge_coordinates(p)[0]
        return self._edge_value(ei, off)

    # -- slopes and orders -----------------------------------------------

    def outgoing_slope(self, ei: int, off: Fraction, direction: int) -> Fraction:
        """Slope seen leaving offset ``off`` on edge ``ei`` toward direction +1/-1."""
        pts = self.data[ei]
        if direction == 1:
            for (o1, v1), (o2, v2) in zip(pts, pts[1:]):
                if o1 <= off < o2:
                    return (v2 - v1) / (o2 - o1)
        else:
            for (o1, v1), (o2, v2) in zip(pts, pts[1:]):
                if o1 < off <= o2:
                    return (v1 - v2) / (o2 - o1)
        raise GraphError(f"no germ at edge {ei} offset {off} direction {direction}")

    def germs_at(self, p: Point) -> list[tuple[int, Fraction, int]]:
        """All (edge, offset, direction) triples pointing away from p."""
        out = []
        for (ei, off) in self.graph.edge_coordinates(p):
            if off > 0:
                out.append((ei, off, -1))
            if off < self.graph.edge_length(ei):
                out.append((ei, off, 1))
        return out

    def incoming_slope(self, p: Point, ei: int, direction: int) -> Fraction:
        """Slope of the function arriving at p along the germ (ei, direction).

        ``direction`` is the direction pointing away from p, matching
        ``germs_at``; the incoming slope is the negative of the outgoing one.
        """
        for (e, off, d) in self.germs_at(p):
            if e == ei and d == direction:
                return -self.outgoing_slope(e, off, d)
        raise GraphError(f"point {p} has no germ on edge {ei} direction {direction}")

    def order_at(self, p: Point) -> int:
        total = Fraction(0)
        for (ei, off, d) in self.germs_at(p):
            total -= self.outgoing_slope(ei, off, d)
        assert total.denominator == 1
        return int(total)

    def divisor(self) -> Divisor:
        """div(f): orders at all breakpoints and vertices."""
        pts: set[Point] = {self.graph.vertex_point(v) for v in self.graph.vertices}
        for ei, data in self.data.items():
            for (off, _v) in data[1:-1]:
                pts.add(self.graph.point(ei, off))
        return Divisor({p: self.order_at(p) for p in pts if self.order_at(p) != 0})

    # -- algebra ---------------------------------------------------------

    @staticmethod
    def constant(graph: MetricGraph, c) -> "PLFunction":
        c = Fraction(c)
        return PLFunction(graph, {
            ei: [(Fraction(0), c), (graph.edge_length(ei), c)]
            for ei in range(len(graph.edges))})

    def _zip_with(self, other: "PLFunction", op) -> "PLFunction":
        data = {}
        for ei in self.data:
            offs = sorted({o for (o, _v) in self.data[ei]} |
                          {o for (o, _v) in other.data[ei]})
            data[ei] = [(o, op(self._edge_value(ei, o), other._edge_value(ei, o)))
                        for o in offs]
        return PLFunction(self.graph, data)

    def __add__(self, other: "PLFunction") -> "PLFunction":
        return self._zip_with(other, lambda a, b: a + b)

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return self._zip_with(other, lambda a, b: a - b)

    def __neg__(self) -> "PLFunction":
        return self.scale(-1)

    def scale(self, n: int) -> "PLFunction":
        return PLFunction(self.graph, {
            ei: [(o, n * v) for (o, v) in pts] for ei, pts in self.data.items()})

    def add_const(self, c) -> "PLFunction":
        c = Fraction(c)
        return PLFunction(self.graph, {
            ei: [(o, v + c) for (o, v) in pts] for ei, pts in self.data.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, PLFunction) and self.data == other.data

    def agrees_up_to_constant(self, other: "PLFunction") -> bool:
        diff = self - other
        vals = {v for pts in diff.data.values() for (_o, v) in pts}
        return len(vals) == 1


def min_combination(funcs: Sequence[PLFunction], offsets: Sequence) -> PLFunction:
    """Pointwise minimum of ``funcs[j] + offsets[j]``.

    Crossing points between pieces become exact rational breakpoints.
    """
    if not funcs:
        raise PreconditionError("need at least one function")
    if len(funcs) != len(offsets):
        raise PreconditionError("need one offset per function")
    graph = funcs[0].graph
    shifted = [f.add_const(b) for f, b in zip(funcs, offsets)]
    data: dict[int, EdgeData] = {}
    for ei in range(len(graph.edges)):
        offs = {o for f in shifted for (o, _v) in f.data[ei]}
        base = sorted(offs)
        # within each common cell every function is linear, so crossings of
        # pairs are the only extra breakpoints the envelope can have
        extra: set[Fraction] = set()
        for (a, b) in zip(base, base[1:]):
            for j in range(len(shifted)):
                for k in range(j + 1, len(shifted)):
                    fa, fb = shifted[j]._edge_value(ei, a), shifted[j]._edge_value(ei, b)
                    ga, gb = shifted[k]._edge_value(ei, a), shifted[k]._edge_value(ei, b)
                    da, db = fa - ga, fb - gb
                    if (da > 0 > db) or (da < 0 < db):
                        t = a + (b - a) * da / (da - db)
                        extra.add(t)
        allo = sorted(offs | extra)
        data[ei] = [(o, min(f._edge_value(ei, o) for f in shifted)) for o in allo]
    return PLFunction(graph, data)


def in_R(f: PLFunction, D: Divisor) -> bool:
    """Membership in R(D): whether D + div(f) is effective."""
    return (D + f.divisor()).is_effective


def distance_function(graph: MetricGraph, p: Point, cap=None) -> PLFunction:
    """x -> dist(x, p), optionally capped at ``cap`` (slopes stay in {-1,0,1})."""
    dv = graph.vertex_distances(p)
    data: dict[int, EdgeData] = {}

    def envelope(lo: Fraction, hi: Fraction, lines) -> EdgeData:
        offs = {lo, hi}
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                (s1, c1), (s2, c2) = lines[i], lines[j]
                if s1 != s2:
                    t = (c2 - c1) / (s1 - s2)
                    if lo < t < hi:
                        offs.add(t)
        return [(o, min(s * o + c for (s, c) in lines)) for o in sorted(offs)]

    for ei, (u, v, length) in enumerate(graph.edges):
        # around-the-graph candidates through either endpoint
        base = [(Fraction(1), dv[u]), (Fraction(-1), dv[v] + length)]
        if not p.is_vertex and p.edge == ei:
            # the straight-to-p piece |x - off| is concave-cornered, so the
            # edge is split at the source before taking lower envelopes
            off = p.offset
            left = envelope(Fraction(0), off, base + [(Fraction(-1), off)])
            right = envelope(off, length, base + [(Fraction(1), -off)])
            data[ei] = left + right
        else:
            data[ei] = envelope(Fraction(0), length, base)
    f = PLFunction(graph, data)
    if cap is not None:
        f = min_combination([f, PLFunction.constant(graph, cap)], [0, 0])
    return f


def agreement_region(f: PLFunction, g_: PLFunction) -> Region:
    """The closed set where the two functions are equal, as a region."""
    if f.graph is not g_.graph:
        raise PreconditionError("functions live on different graphs")
    diff = f - g_
    intervals: list[Interval] = []
    points: set[Point] = set()
    for ei, pts in diff.data.items():
        # collect zero locus on this edge: whole sub-intervals and crossings
        zero_offs: set[Fraction] = set()
        for (o1, v1), (o2, v2) in zip(pts, pts[1:]):
            if v1 == 0 and v2 == 0:
                intervals.append(Interval(ei, o1, o2))
            elif (v1 > 0 > v2) or (v1 < 0 < v2):
                zero_offs.add(o1 + (o2 - o1) * v1 / (v1 - v2))
            else:
                if v1 == 0:
                    zero_offs.add(o1)
                if v2 == 0:
                    zero_offs.add(o2)
        for off in zero_offs:
            p = f.graph.point(ei, off)
            points.add(p)
    return Region(f.graph, intervals, points)


def region_boundary_in(sub: Region, ambient: Region | None = None) -> frozenset[Point]:
    if ambient is None:
        return sub.boundary()
    return frozenset(p for p in sub.boundary() if ambient.contains(p))


def minchips_holds(D: Divisor, funcs: Sequence[PLFunction],
                   test_points: Iterable[Point] | None = None) -> bool:
    """Check, on a finite point set, that for theta = min(funcs) and each j:

    a point of the agreement set {theta = funcs[j]} lies in D + div(theta)
    iff it lies in D + div(funcs[j]) or on the agreement set's boundary.

    The default test set is every support or boundary point involved, which
    is where the statement has content.
    """
    theta = min_combination(funcs, [0] * len(funcs))
    Dt = D + theta.divisor()
    ok = True
    for f in funcs:
        Df = D + f.divisor()
        reg = agreement_region(theta, f)
        bd = reg.boundary()
        if test_points is None:
            pts = set(Dt.support()) | set(Df.support()) | set(bd)
        else:
            pts = set(test_points)
        for p in pts:
            if not reg.contains(p):
                continue
            lhs = Dt.coeff(p) > 0
            rhs = Df.coeff(p) > 0 or p in bd
            if lhs != rhs:
                ok = False
    return ok


def obstruction_holds(D: Divisor, funcs: Sequence[PLFunction], region: Region) -> bool:
    """If every D + div(funcs[j]) meets the connected region, so must
    D + div(min(funcs)).  Returns the conclusion's truth value and raises
    if the implication itself fails.
    """
    if not all(in_R(f, D) for f in funcs):
        raise PreconditionError("all functions must lie in R(D)")
    premise = all(contains_point_in(D + f.divisor(), region) for f in funcs)
    theta = min_combination(funcs, [0] * len(funcs))
    conclusion = contains_point_in(D + theta.divisor(), region)
    if premise and not conclusion:
        raise TheoremViolation(
            "minimum of functions fails to place a chip in a region met by every input")
    return conclusion
