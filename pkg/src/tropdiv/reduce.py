"""Reduced divisors, burning, linear equivalence, and rank.

Reduction to a base point runs the metric burning algorithm: fire spreads
from the base, a point survives only if its chip count is at least the
number of burning directions reaching it, and the surviving closed set is
fired toward the base until everything burns.  Divisors with negative
coefficients away from the base are first repaired by an explicit
debt-clearing pre-pass.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, ReductionCapError, TheoremViolation
from .graph import Divisor, Interval, MetricGraph, Point, Region
from .plfunc import PLFunction, distance_function

DEFAULT_MAX_STEPS = 10 ** 6


# ---------------------------------------------------------------------------
# burning on the subdivided model


@dataclass
class BurnResult:
    all_burnt: bool
    unburnt: set[Point]
    # outgoing germs of the unburnt set: (node, edge, offset, direction,
    # length of the burnt stretch ahead)
    germs: list[tuple[Point, int, Fraction, int, Fraction]]
    # segments with both endpoints unburnt: (edge, lo, hi)
    unburnt_segments: list[tuple[int, Fraction, Fraction]]
    # all segments of the model: (edge, lo, hi, node_lo, node_hi)
    segments: list[tuple[int, Fraction, Fraction, Point, Point]]
    # with extend=True: per germ, the burnt corridor it faces as a list of
    # (edge, lo, hi, direction) pieces, used to place the landing chip
    walks: list[list[tuple[int, Fraction, Fraction, int]]] | None = None


def _model_segments(graph: MetricGraph, D: Divisor, base: Point):
    """Subdivide each edge at interior support points (and the base).

    The result is cached per cut-set on the graph: during a rank search the
    same handful of support patterns recurs thousands of times.
    """
    interior = [p for p in D.support() if not p.is_vertex]
    key_set = {(p.edge, p.offset.numerator, p.offset.denominator) for p in interior}
    if not base.is_vertex:
        key_set.add((base.edge, base.offset.numerator, base.offset.denominator))
    key = tuple(sorted(key_set))
    cache = getattr(graph, "_segment_cache", None)
    if cache is None:
        cache = {}
        graph._segment_cache = cache
    model = cache.get(key)
    if model is not None:
        return model
    cuts: dict[int, set[Fraction]] = {}
    for p in interior:
        cuts.setdefault(p.edge, set()).add(p.offset)
    if not base.is_vertex:
        cuts.setdefault(base.edge, set()).add(base.offset)
    segments = []
    for ei in range(len(graph.edges)):
        length = graph.edge_length(ei)
        offs = [Fraction(0)] + sorted(cuts.get(ei, ())) + [length]
        for lo, hi in zip(offs, offs[1:]):
            segments.append((ei, lo, hi, graph.point(ei, lo), graph.point(ei, hi)))
    nodes: set[Point] = set()
    adj: dict[Point, list[Point]] = {}
    incident: dict[Point, list[int]] = {}
    for si, (_ei, _lo, _hi, a, b) in enumerate(segments):
        nodes.add(a)
        nodes.add(b)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
        incident.setdefault(a, []).append(si)
        incident.setdefault(b, []).append(si)
    model = (segments, nodes, adj, incident)
    cache[key] = model
    return model


def dhar_burn(graph: MetricGraph, D: Divisor, base: Point,
              extend: bool = False) -> BurnResult:
    """One pass of the burning algorithm from ``base``.

    Requires D effective away from the base point.  With ``extend=True``
    each germ is continued through burnt valence-two nodes, so a firing
    step can carry a chip across a whole burnt corridor instead of one
    segment at a time.
    """
    segments, nodes, adj, incident = _model_segments(graph, D, base)
    for p, c in D.items():
        if c < 0 and p != base:
            raise PreconditionError(f"divisor has debt {c} at {p} away from the base")

    burnt: set[Point] = {base}
    arrivals: dict[Point, int] = {}
    coeff = D._coeffs.get
    frontier = [base]
    while frontier:
        x = frontier.pop()
        for y in adj[x]:
            if y in burnt:
                continue
            a = arrivals.get(y, 0) + 1
            arrivals[y] = a
            if a > coeff(y, 0):
                burnt.add(y)
                frontier.append(y)

    unburnt = nodes - burnt
    germs: list[tuple[Point, int, Fraction, int, Fraction]] = []
    unb_segs: list[tuple[int, Fraction, Fraction]] = []
    germ_segs: list[int] = []
    for si, (ei, lo, hi, a, b) in enumerate(segments):
        a_in, b_in = a in unburnt, b in unburnt
        if a_in and b_in:
            unb_segs.append((ei, lo, hi))
        elif a_in:
            germs.append((a, ei, lo, +1, hi - lo))
            germ_segs.append(si)
        elif b_in:
            germs.append((b, ei, hi, -1, hi - lo))
            germ_segs.append(si)

    walks = None
    if extend and germs:
        walks = []
        ext_germs = []
        for (x, ei0, off0, d0, _l0), si0 in zip(germs, germ_segs):
            walk: list[tuple[int, Fraction, Fraction, int]] = []
            total = Fraction(0)
            si, prev = si0, x
            halve = False
            while True:
                ei, lo, hi, a, b = segments[si]
                nxt = b if prev == a else a
                walk.append((ei, lo, hi, +1 if prev == a else -1))
                total += hi - lo
                if nxt == base or nxt in unburnt or len(incident[nxt]) != 2:
                    # a corridor ending at an unburnt node has been entered
                    # from both ends; cap at the midpoint so ramps never
                    # overlap (this only happens when the corridor loops
                    # back to its own start)
                    halve = nxt in unburnt
                    break
                s1, s2 = incident[nxt]
                si, prev = (s2 if si == s1 else s1), nxt
            ext_germs.append((x, ei0, off0, d0, total / 2 if halve else total))
            walks.append(walk)
        germs = ext_germs
    return BurnResult(not unburnt, unburnt, germs, unb_segs, segments, walks)


def dhar_unburnt(graph: MetricGraph, D: Divisor, base: Point) -> Region:
    """The maximal closed set that survives burning from ``base``; empty iff
    D is reduced at the base."""
    burn = dhar_burn(graph, D, base)
    intervals = [Interval(ei, lo, hi) for (ei, lo, hi) in burn.unburnt_segments]
    covered = set()
    for (ei, lo, hi) in burn.unburnt_segments:
        covered.add(graph.point(ei, lo))
        covered.add(graph.point(ei, hi))
    isolated = burn.unburnt - covered
    return Region(graph, intervals, isolated)


def _firing_step(graph: MetricGraph, burn: BurnResult, eps: Fraction) -> PLFunction:
    """The function min(dist(., unburnt set), eps): 0 on the unburnt set,
    ramping up with slope 1 along each outgoing germ."""
    ramp: dict[tuple[int, Fraction, int], Fraction] = {
        (ei, off, d): eps for (_x, ei, off, d, _l) in burn.germs}
    unb_nodes = burn.unburnt
    unb_seg_set = {(ei, lo, hi) for (ei, lo, hi) in burn.unburnt_segments}
    data: dict[int, list[tuple[Fraction, Fraction]]] = {ei: [] for ei in range(len(graph.edges))}
    for (ei, lo, hi, a, b) in burn.segments:
        pts: list[tuple[Fraction, Fraction]]
        if (ei, lo, hi) in unb_seg_set:
            pts = [(lo, Fraction(0)), (hi, Fraction(0))]
        elif (ei, lo, +1) in ramp and a in unb_nodes:
            pts = [(lo, Fraction(0)), (lo + eps, eps), (hi, eps)]
        elif (ei, hi, -1) in ramp and b in unb_nodes:
            pts = [(lo, eps), (hi - eps, eps), (hi, Fraction(0))]
        else:
            va = Fraction(0) if a in unb_nodes else eps
            vb = Fraction(0) if b in unb_nodes else eps
            pts = [(lo, va), (hi, vb)]
        data[ei].extend(pts)
    return PLFunction(graph, data)


def _firing_divisor(graph: MetricGraph, burn: BurnResult, eps: Fraction) -> Divisor:
    """div of the firing-step function, computed without building it."""
    delta: dict[Point, int] = {}

    def bump(p: Point, c: int):
        delta[p] = delta.get(p, 0) + c

    if burn.walks is None:
        for (x, ei, off, d, _l) in burn.germs:
            bump(x, -1)
            bump(graph.point(ei, off + d * eps), +1)
        return Divisor(delta)
    for (x, _ei, _off, _d, _l), walk in zip(burn.germs, burn.walks):
        bump(x, -1)
        remaining = eps
        for (ei, lo, hi, d) in walk:
            if remaining <= hi - lo:
                pos = lo + remaining if d > 0 else hi - remaining
                bump(graph.point(ei, pos), +1)
                break
            remaining -= hi - lo
    return Divisor(delta)


# ---------------------------------------------------------------------------
# reduction


@dataclass
class ReductionResult:
    reduced: Divisor
    witness: PLFunction | None
    steps: int


def _clear_debt(graph: MetricGraph, D: Divisor, base: Point,
                track_witness: bool, budget: list[int]):
    """Make D effective away from the base by adding capped distance cones.

    Each step clears the debt point farthest from the base; the cone
    k*min(dist(., base), R) is nonnegative at every point except the base
    and every new debt it creates sits at a branch vertex strictly inside
    the ball of radius R, so the farthest debt distance strictly decreases.
    """
    witness = PLFunction.constant(graph, 0) if track_witness else None
    while True:
        debts = [(p, c) for p, c in D.items() if c < 0 and p != base]
        if not debts:
            return D, witness
        if budget[0] <= 0:
            raise ReductionCapError("debt-clearing step budget exhausted")
        budget[0] -= 1
        p, c = max(debts, key=lambda t: (graph.distance(base, t[0]), t[0].sort_key()))
        k = -c
        cap = graph.distance(base, p)
        cache = getattr(graph, "_cone_cache", None)
        if cache is None:
            cache = {}
            object.__setattr__(graph, "_cone_cache", cache)
        entry = cache.get((base, cap))
        if entry is None:
            f1 = distance_function(graph, base, cap=cap)
            entry = (f1, f1.divisor())
            cache[(base, cap)] = entry
        f1, div1 = entry
        D = D + Divisor({q: k * c1 for q, c1 in div1.items()})
        if track_witness:
            witness = witness + f1.scale(k)


def v_reduce(graph: MetricGraph, D: Divisor, base: Point,
             track_witness: bool = True,
             max_steps: int = DEFAULT_MAX_STEPS) -> ReductionResult:
    """The unique divisor equivalent to D that is reduced at ``base``,
    together with (optionally) a witness f such that D + div(f) is the
    reduced divisor.
    """
    graph.check_point(base)
    budget = [max_steps]
    D, witness = _clear_debt(graph, D, base, track_witness, budget)
    steps = max_steps - budget[0]
    while True:
        burn = dhar_burn(graph, D, base, extend=not track_witness)
        if burn.all_burnt:
            if track_witness:
                witness = witness.add_const(-witness(base))
            return ReductionResult(D, witness, steps)
        if budget[0] <= 0:
            raise ReductionCapError(f"reduction did not finish within {max_steps} steps")
        budget[0] -= 1
        steps += 1
        eps = min(l for (_x, _ei, _off, _d, l) in burn.germs)
        if track_witness:
            psi = _firing_step(graph, burn, eps)
            D = D + psi.divisor()
            witness = witness + psi
        else:
            D = D + _firing_divisor(graph, burn, eps)


def is_reduced(graph: MetricGraph, D: Divisor, base: Point) -> bool:
    if any(c < 0 for p, c in D.items() if p != base):
        return False
    return dhar_burn(graph, D, base).all_burnt


def default_base(graph: MetricGraph) -> Point:
    """Lexicographically first vertex name, the conventional base point."""
    return graph.vertex_point(min(graph.vertices))


def is_equivalent(graph: MetricGraph, D1: Divisor, D2: Divisor) -> PLFunction | None:
    """If D1 ~ D2, a witness f with D2 = D1 + div(f); otherwise None.

    Both divisors are reduced at the lexicographically first vertex and
    compared there.
    """
    if D1.degree != D2.degree:
        return None
    base = default_base(graph)
    r1 = v_reduce(graph, D1, base)
    r2 = v_reduce(graph, D2, base)
    if r1.reduced != r2.reduced:
        return None
    return r1.witness - r2.witness


def effective_class(graph: MetricGraph, D: Divisor, base: Point | None = None) -> bool:
    """Whether D is linearly equivalent to an effective divisor."""
    if base is None:
        base = default_base(graph)
    red = v_reduce(graph, D, base, track_witness=False).reduced
    return red.coeff(base) >= 0


# ---------------------------------------------------------------------------
# rank


def default_rank_points(graph: MetricGraph) -> list[Point]:
    """A rank-determining set: the vertex set of a loopless model.

    The vertices of any loopless model determine rank; only self-loop
    edges need an extra interior point to break the loop.  Parallel edges
    are fine as they stand.
    """
    pts = [graph.vertex_point(v) for v in graph.vertices]
    for ei, (u, v, _l) in enumerate(graph.edges):
        if u == v:
            pts.append(graph.point(ei, graph.edge_length(ei) / 2))
    return pts


def rank(graph: MetricGraph, D: Divisor,
         points: list[Point] | None = None,
         base: Point | None = None) -> int:
    """Baker-Norine rank, computed over a rank-determining point set.

    rank(D) >= r iff D - E has an effective representative for every
    effective E of degree r supported on the point set.  The search walks
    nondecreasing index multisets depth-first, re-reducing incrementally,
    and prunes with the fact that once D - E fails, so does every
    extension of E.
    """
    if points is None:
        points = default_rank_points(graph)
    if base is None:
        base = default_base(graph)
    red0 = v_reduce(graph, D, base, track_witness=False).reduced
    if red0.coeff(base) < 0:
        return -1
    # the rank of a divisor reduced at p is at most its coefficient at p,
    # and any E of degree deg(D)+1 drives the degree negative; both bound
    # the depth the search needs to certify
    best_fail = D.degree + 1
    for p in points:
        red_p = v_reduce(graph, D, p, track_witness=False).reduced
        cp = red_p.coeff(p)
        if cp < 0:
            return -1
        best_fail = min(best_fail, cp + 1)

    def dfs(cur: Divisor, start: int, depth: int):
        # cur is an effective representative of D minus the multiset chosen
        # so far; re-reducing at the point being subtracted keeps the only
        # debt at the reduction base, so no debt-clearing pass is ever needed
        nonlocal best_fail
        if depth + 1 >= best_fail:
            return
        for i in range(start, len(points)):
            p = points[i]
            if cur.coeff(p) >= 1:
                # a chip is present: the child is effective as it stands
                nxt = cur - Divisor({p: 1})
            else:
                nxt = v_reduce(graph, cur - Divisor({p: 1}), p,
                               track_witness=False).reduced
                if nxt.coeff(p) < 0:
                    best_fail = depth + 1
                    return
            dfs(nxt, i, depth + 1)
            if depth + 1 >= best_fail:
                return

    dfs(red0, 0, 0)
    return best_fail - 1


def rank_subdivision_oracle(graph: MetricGraph, D: Divisor, n: int = 8,
                            base: Point | None = None) -> int:
    """Independent rank computation over the n-fold subdivision points of
    every edge, for cross-checking the default point set."""
    pts: list[Point] = [graph.vertex_point(v) for v in graph.vertices]
    seen = set(pts)
    for ei in range(len(graph.edges)):
        length = graph.edge_length(ei)
        for k in range(1, n):
            p = graph.point(ei, length * k / n)
            if p not in seen:
                seen.add(p)
                pts.append(p)
    return rank(graph, D, points=pts, base=base)


def find_unoccupied_edge(graph: MetricGraph, D: Divisor,
                         open_edges: list[int]) -> int:
    """Given D equivalent to the canonical divisor and disjoint open edges
    whose complement is a tree, return an open edge with no point of D.

    One must exist; if none does, the underlying theorem is falsified and
    an error is raised rather than returning a wrong answer.
    """
    from .graph import canonical_divisor
    if not D.is_effective:
        raise PreconditionError("divisor must be effective")
    if is_equivalent(graph, D, canonical_divisor(graph)) is None:
        raise PreconditionError("divisor is not equivalent to the canonical divisor")
    for ei in open_edges:
        occupied = any((not p.is_vertex) and p.edge == ei and c > 0
                       for p, c in D.items())
        if not occupied:
            return ei
    raise TheoremViolation(
        "every designated open edge carries a point of a canonical divisor")


def riemann_roch_check(graph: MetricGraph, D: Divisor) -> tuple[bool, int, int]:
    """Verify rank(D) - rank(K - D) == deg(D) - g + 1; returns both ranks."""
    from .graph import canonical_divisor
    K = canonical_divisor(graph)
    r1 = rank(graph, D)
    r2 = rank(graph, K - D)
    g = graph.betti()
    return (r1 - r2 == D.degree - g + 1, r1, r2)
