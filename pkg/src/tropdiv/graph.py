"""Metric graphs, points, divisors, regions, and the chain-of-loops family.

All coordinates and lengths are exact rationals (`fractions.Fraction`);
nothing in this package touches floating point.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import GraphError, PreconditionError

Rat = Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise GraphError(f"not an exact rational: {x!r}")


_VERTEX_POINTS: dict[str, "Point"] = {}


@dataclass(frozen=True, eq=False)
class Point:
    """A location on a metric graph.

    Canonical form: a point at offset 0 or at the full edge length is stored
    as the vertex itself (``vertex`` set, ``edge`` = -1), so equality is
    well-defined across all edges incident to that vertex.  The hash is
    precomputed from integer parts; points live in hot dictionaries.
    """

    vertex: str | None
    edge: int
    offset: Fraction

    def __post_init__(self):
        if self.vertex is not None:
            h = hash(("v", self.vertex))
        else:
            h = hash((self.edge, self.offset.numerator, self.offset.denominator))
        object.__setattr__(self, "_hash", h)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Point):
            return NotImplemented
        return (self.vertex == other.vertex and self.edge == other.edge
                and self.offset == other.offset)

    @staticmethod
    def at_vertex(name: str) -> "Point":
        # interned so dictionary lookups short-circuit on identity
        p = _VERTEX_POINTS.get(name)
        if p is None:
            p = _VERTEX_POINTS[name] = Point(name, -1, Fraction(0))
        return p

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def sort_key(self):
        if self.vertex is not None:
            return (0, self.vertex, 0, Fraction(0))
        return (1, "", self.edge, self.offset)

    def __repr__(self):
        if self.vertex is not None:
            return f"Point({self.vertex})"
        return f"Point(e{self.edge}@{self.offset})"


class MetricGraph:
    """A connected graph with positive rational edge lengths.

    Parallel edges and self-loops are allowed.  Each edge carries a fixed
    orientation (first endpoint) used only for offset coordinates.
    """

    def __init__(self, vertices: Iterable[str], edges: Sequence[tuple[str, str, Rat]]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertex names")
        es = []
        for (u, v, length) in edges:
            length = _rat(length)
            if length <= 0:
                raise GraphError(f"edge ({u},{v}) has non-positive length {length}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge ({u},{v}) references unknown vertex")
            es.append((u, v, length))
        self.edges: tuple[tuple[str, str, Fraction], ...] = tuple(es)
        # vertex -> list of (edge index, side) where side 0 means the vertex
        # is the first endpoint (offset 0) and side 1 the second (offset L).
        self._incidence: dict[str, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        self._point_cache: dict[tuple[int, int, int], Point] = {}
        for i, (u, v, _l) in enumerate(self.edges):
            self._incidence[u].append((i, 0))
            self._incidence[v].append((i, 1))
        if not self._connected():
            raise GraphError("graph is not connected")

    def _connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            x = stack.pop()
            for (ei, side) in self._incidence[x]:
                u, v, _l = self.edges[ei]
                y = v if side == 0 else u
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    # -- basic accessors -------------------------------------------------

    def edge_length(self, ei: int) -> Fraction:
        return self.edges[ei][2]

    def edge_ends(self, ei: int) -> tuple[str, str]:
        u, v, _l = self.edges[ei]
        return u, v

    def incidence(self, vertex: str) -> list[tuple[int, int]]:
        return self._incidence[vertex]

    def valence(self, vertex: str) -> int:
        return len(self._incidence[vertex])

    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def total_length(self) -> Fraction:
        return sum((l for (_u, _v, l) in self.edges), Fraction(0))

    # -- points ----------------------------------------------------------

    def point(self, edge: int, offset) -> Point:
        """Canonicalized point on an edge; endpoints collapse to vertices."""
        if type(offset) is Fraction:
            p = self._point_cache.get((edge, offset.numerator, offset.denominator))
            if p is not None:
                return p
        offset = _rat(offset)
        if not (0 <= edge < len(self.edges)):
            raise GraphError(f"no edge {edge}")
        u, v, length = self.edges[edge]
        if offset < 0 or offset > length:
            raise GraphError(f"offset {offset} out of bounds for edge {edge} (length {length})")
        if offset == 0:
            p = Point.at_vertex(u)
        elif offset == length:
            p = Point.at_vertex(v)
        else:
            p = Point(None, edge, offset)
        self._point_cache[(edge, offset.numerator, offset.denominator)] = p
        return p

    def vertex_point(self, name: str) -> Point:
        if name not in self._incidence:
            raise GraphError(f"no vertex {name}")
        return Point.at_vertex(name)

    def check_point(self, p: Point) -> None:
        if p.is_vertex:
            if p.vertex not in self._incidence:
                raise GraphError(f"point at unknown vertex {p.vertex}")
        else:
            if not (0 <= p.edge < len(self.edges)):
                raise GraphError(f"point on unknown edge {p.edge}")
            if not (0 < p.offset < self.edge_length(p.edge)):
                raise GraphError(f"non-canonical or out-of-range point {p}")

    def edge_coordinates(self, p: Point) -> list[tuple[int, Fraction]]:
        """All (edge, offset) pairs naming this point."""
        if not p.is_vertex:
            return [(p.edge, p.offset)]
        out = []
        for (ei, side) in self._incidence[p.vertex]:
            out.append((ei, Fraction(0) if side == 0 else self.edge_length(ei)))
        return out

    # -- distances -------------------------------------------------------

    def vertex_distances(self, src: Point) -> dict[str, Fraction]:
        """Exact shortest-path distance from ``src`` to every vertex."""
        dist: dict[str, Fraction] = {}
        heap: list[tuple[Fraction, str]] = []
        if src.is_vertex:
            heapq.heappush(heap, (Fraction(0), src.vertex))
        else:
            u, v, length = self.edges[src.edge]
            heapq.heappush(heap, (src.offset, u))
            heapq.heappush(heap, (length - src.offset, v))
        while heap:
            d, x = heapq.heappop(heap)
            if x in dist:
                continue
            dist[x] = d
            for (ei, side) in self._incidence[x]:
                u, v, length = self.edges[ei]
                y = v if side == 0 else u
                if y not in dist:
                    heapq.heappush(heap, (d + length, y))
        return dist

    def distance(self, p: Point, q: Point) -> Fraction:
        dv = self.vertex_distances(p)
        if q.is_vertex:
            return dv[q.vertex]
        u, v, length = self.edges[q.edge]
        best = min(dv[u] + q.offset, dv[v] + (length - q.offset))
        if not p.is_vertex and p.edge == q.edge:
            best = min(best, abs(p.offset - q.offset))
        return best


class Divisor:
    """A finite formal integer combination of points; zero coefficients drop."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Point, int] | Iterable[tuple[Point, int]] = ()):
        d: dict[Point, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for p, c in items:
            if not isinstance(c, int):
                raise GraphError(f"divisor coefficient {c!r} is not an integer")
            if c:
                d[p] = d.get(p, 0) + c
                if d[p] == 0:
                    del d[p]
        self._coeffs = d

    @staticmethod
    def of(*terms: tuple[int, Point]) -> "Divisor":
        return Divisor([(p, c) for (c, p) in terms])

    def coeff(self, p: Point) -> int:
        return self._coeffs.get(p, 0)

    def items(self):
        return self._coeffs.items()

    def support(self) -> list[Point]:
        return list(self._coeffs)

    @property
    def degree(self) -> int:
        return sum(self._coeffs.values())

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._coeffs.values())

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "Divisor") -> "Divisor":
        d = dict(self._coeffs)
        for p, c in other._coeffs.items():
            d[p] = d.get(p, 0) + c
        return Divisor(d)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -c for p, c in self._coeffs.items()})

    def __mul__(self, n: int) -> "Divisor":
        return Divisor({p: n * c for p, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self):
        if not self._coeffs:
            return "Divisor(0)"
        terms = sorted(self._coeffs.items(), key=lambda t: t[0].sort_key())
        return "Divisor(" + " + ".join(f"{c}*{p}" for p, c in terms) + ")"


def degree(D: Divisor) -> int:
    return D.degree


@dataclass(frozen=True)
class Interval:
    """A sub-interval of one edge; endpoints may be open or closed."""

    edge: int
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True


class Region:
    """A finite union of edge intervals plus isolated points.

    Half-openness is tracked explicitly; the chain cells gamma_i and the
    bridges br_i are half-open.
    """

    def __init__(self, graph: MetricGraph, intervals: Iterable[Interval] = (),
                 points: Iterable[Point] = ()):
        self.graph = graph
        self.intervals: tuple[Interval, ...] = tuple(intervals)
        self.points: frozenset[Point] = frozenset(points)
        for iv in self.intervals:
            if not (0 <= iv.lo <= iv.hi <= graph.edge_length(iv.edge)):
                raise GraphError(f"interval {iv} out of bounds")

    @property
    def is_empty(self) -> bool:
        if self.points:
            return False
        for iv in self.intervals:
            if iv.lo < iv.hi or (iv.lo == iv.hi and iv.lo_closed and iv.hi_closed):
                return False
        return True

    def contains(self, p: Point) -> bool:
        if p in self.points:
            return True
        for (ei, off) in self.graph.edge_coordinates(p):
            for iv in self.intervals:
                if iv.edge != ei:
                    continue
                if iv.lo < off < iv.hi:
                    return True
                if off == iv.lo and iv.lo_closed and (iv.lo < iv.hi or iv.hi_closed):
                    return True
                if off == iv.hi and iv.hi_closed and (iv.lo < iv.hi or iv.lo_closed):
                    return True
        return False

    def boundary(self) -> frozenset[Point]:
        """Topological boundary, assuming the region is closed.

        A point of the region is on the boundary iff some direction at it
        immediately leaves the region.
        """
        G = self.graph
        cands: set[Point] = set(self.points)
        for iv in self.intervals:
            cands.add(G.point(iv.edge, iv.lo))
            cands.add(G.point(iv.edge, iv.hi))
        out = set()
        for p in cands:
            if not self.contains(p):
                continue
            for (ei, off) in G.edge_coordinates(p):
                length = G.edge_length(ei)
                for direction in (-1, 1):
                    if (direction == -1 and off == 0) or (direction == 1 and off == length):
                        continue
                    if not self._covers_germ(ei, off, direction):
                        out.add(p)
        return frozenset(out)

    def _covers_germ(self, edge: int, off: Fraction, direction: int) -> bool:
        """Whether the region contains a small segment from (edge, off) in the given direction."""
        for iv in self.intervals:
            if iv.edge != edge or iv.lo == iv.hi:
                continue
            if direction == 1 and iv.lo <= off < iv.hi:
                return True
            if direction == -1 and iv.lo < off <= iv.hi:
                return True
        return False


def contains_point_in(D: Divisor, region: Region) -> bool:
    """Whether an effective divisor has a point with positive coefficient in the region."""
    return any(c > 0 and region.contains(p) for p, c in D.items())


def canonical_divisor(G: MetricGraph) -> Divisor:
    """The divisor with coefficient (valence - 2) at every vertex."""
    return Divisor({G.vertex_point(v): G.valence(v) - 2
                    for v in G.vertices if G.valence(v) != 2})


@dataclass(frozen=True)
class BNParams:
    """Brill-Noether parameters (g, r, d) with rho = g - (r+1)(g-d+r)."""

    g: int
    r: int
    d: int

    def __post_init__(self):
        if self.g < 0 or self.r < 0 or self.d < 0:
            raise PreconditionError("g, r, d must be nonnegative")

    @property
    def rho(self) -> int:
        return self.g - (self.r + 1) * (self.g - self.d + self.r)


class ChainOfLoops:
    """The chain of g loops joined by bridges, with named points v_i, w_i.

    Loop i is a pair of parallel edges between v_i and w_i with lengths
    ell_i (top) and m_i (bottom), both oriented v_i -> w_i.  Bridge i runs
    from w_i to v_{i+1}.  With ``extended=True`` the graph also carries
    pendant vertices w_0 and v_{g+1} attached by bridges to v_1 and w_g.
    """

    def __init__(self, g: int, ell: Sequence, m: Sequence, beta: Sequence,
                 extended: bool = False, pendant: Sequence = (1, 1)):
        if g < 2:
            raise GraphError(f"chain of loops needs g >= 2, got {g}")
        ell = tuple(_rat(x) for x in ell)
        m = tuple(_rat(x) for x in m)
        beta = tuple(_rat(x) for x in beta)
        if len(ell) != g or len(m) != g:
            raise GraphError(f"need {g} loop lengths, got {len(ell)} top / {len(m)} bottom")
        if len(beta) != g - 1:
            raise GraphError(f"need {g - 1} bridge lengths, got {len(beta)}")
        for x in ell + m + beta:
            if x <= 0:
                raise GraphError(f"non-positive length {x}")
        self.g = g
        self.ell = ell
        self.m = m
        self.beta = beta
        self.extended = extended

        vertices = []
        if extended:
            vertices.append("w0")
        for i in range(1, g + 1):
            vertices.append(f"v{i}")
            vertices.append(f"w{i}")
        if extended:
            vertices.append(f"v{g + 1}")

        edges: list[tuple[str, str, Fraction]] = []
        self._top: dict[int, int] = {}
        self._bottom: dict[int, int] = {}
        self._bridge: dict[int, int] = {}
        for i in range(1, g + 1):
            self._top[i] = len(edges)
            edges.append((f"v{i}", f"w{i}", ell[i - 1]))
            self._bottom[i] = len(edges)
            edges.append((f"v{i}", f"w{i}", m[i - 1]))
            if i < g:
                self._bridge[i] = len(edges)
                edges.append((f"w{i}", f"v{i + 1}", beta[i - 1]))
        if extended:
            p0, p1 = (_rat(pendant[0]), _rat(pendant[1]))
            if p0 <= 0 or p1 <= 0:
                raise GraphError("non-positive pendant length")
            self._bridge[0] = len(edges)
            edges.append(("w0", "v1", p0))
            self._bridge[g] = len(edges)
            edges.append((f"w{g}", f"v{g + 1}", p1))
        self.graph = MetricGraph(vertices, edges)

    # -- named points and edges ------------------------------------------

    def v(self, i: int) -> Point:
        return self.graph.vertex_point(f"v{i}")

    def w(self, i: int) -> Point:
        return self.graph.vertex_point(f"w{i}")

    def top_edge(self, i: int) -> int:
        return self._top[i]

    def bottom_edge(self, i: int) -> int:
        return self._bottom[i]

    def bridge_edge(self, i: int) -> int:
        """Bridge i runs w_i -> v_{i+1}; 0 and g exist only on extended chains."""
        return self._bridge[i]

    def loop_of_point(self, p: Point) -> int | None:
        """Index of the loop whose closed point set contains p, else None."""
        for i in range(1, self.g + 1):
            if p == self.v(i) or p == self.w(i):
                return i
            if not p.is_vertex and p.edge in (self._top[i], self._bottom[i]):
                return i
        return None

    # -- cells -----------------------------------------------------------

    def cell(self, i: int) -> Region:
        """gamma_i: loop i minus w_i, the union of two half-open edges [v_i, w_i)."""
        G = self.graph
        return Region(G, [
            Interval(self._top[i], Fraction(0), self.ell[i - 1], True, False),
            Interval(self._bottom[i], Fraction(0), self.m[i - 1], True, False),
        ])

    def bridge_region(self, i: int) -> Region:
        """br_i: the half-open bridge [w_i, v_{i+1})."""
        ei = self._bridge[i]
        return Region(self.graph, [Interval(ei, Fraction(0), self.graph.edge_length(ei), True, False)])

    def cells(self) -> list[tuple[str, Region]]:
        """The decomposition gamma_1, br_1, ..., gamma_g, {w_g} (core chain part)."""
        out: list[tuple[str, Region]] = []
        for i in range(1, self.g + 1):
            out.append((f"gamma{i}", self.cell(i)))
            if i < self.g:
                out.append((f"br{i}", self.bridge_region(i)))
        out.append((f"w{self.g}", Region(self.graph, points=[self.w(self.g)])))
        return out

    # -- geometry helpers ------------------------------------------------

    def ccw_point(self, i: int, t) -> Point:
        """Point on loop i at distance t counterclockwise from w_i.

        Counterclockwise means: traverse the top edge (length ell_i) from
        w_i toward v_i first, then the bottom edge back to w_i; the cycle
        has length ell_i + m_i and t is taken modulo it.  This orientation
        is the one under which the tableau divisors acquire their expected
        rank; distance m_i from w_i lands inside the top edge.
        """
        t = _rat(t)
        c = self.ell[i - 1] + self.m[i - 1]
        t = t % c
        if t == 0:
            return self.w(i)
        if t <= self.ell[i - 1]:
            # top edge is oriented v_i -> w_i, so ccw-distance t from w_i
            # sits at offset ell_i - t
            return self.graph.point(self._top[i], self.ell[i - 1] - t)
        return self.graph.point(self._bottom[i], t - self.ell[i - 1])

    def rank_determining_set(self) -> list[Point]:
        """The vertex set: the chain model is loopless (each loop is a pair
        of parallel edges), so its vertices already determine rank."""
        return [self.graph.vertex_point(v) for v in self.graph.vertices]


def make_chain(g: int, ell: Sequence, m: Sequence, beta: Sequence,
               extended: bool = False, pendant: Sequence = (1, 1)) -> ChainOfLoops:
    return ChainOfLoops(g, ell, m, beta, extended=extended, pendant=pendant)


def default_generic_chain(g: int, extended: bool = False) -> ChainOfLoops:
    """Reproducible generic lengths: m_i = 1, ell_i = 2g-1 + i/(g+1), beta_i = 1.

    Each ratio ell_i/m_i exceeds every a/b with a + b <= 2g-2 and the
    ratios are pairwise distinct.
    """
    ell = [2 * g - 1 + Fraction(i, g + 1) for i in range(1, g + 1)]
    m = [Fraction(1)] * g
    beta = [Fraction(1)] * (g - 1)
    return make_chain(g, ell, m, beta, extended=extended)


def check_genericity(chain: ChainOfLoops) -> bool:
    """True iff no ell_i/m_i is a ratio of positive integers with sum <= 2g-2."""
    bound = 2 * chain.g - 2
    bad = set()
    for a in range(1, bound):
        for b in range(1, bound - a + 1):
            bad.add(Fraction(a, b))
    return all(ell / m not in bad for ell, m in zip(chain.ell, chain.m))
