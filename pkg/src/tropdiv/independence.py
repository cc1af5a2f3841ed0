"""Tropical dependence and independence of piecewise-linear functions.

A family psi_0..psi_r is tropically dependent if there are constants b_j
such that min_j(psi_j + b_j) is attained at least twice at every point of
the graph.  Verification works cell-by-cell on the exact lower envelope;
the search for constants is finite because on any envelope piece two
coinciding shifted functions pin their offset difference to one of
finitely many critical values (the values of the constant pieces of the
pairwise differences).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import PreconditionError, SearchCapError
from .graph import Interval, Point, Region
from .plfunc import PLFunction, min_combination

MAX_FAMILY = 12


def _shifted(funcs: Sequence[PLFunction], offsets: Sequence) -> list[PLFunction]:
    if len(funcs) < 2:
        raise PreconditionError("need at least two functions")
    if len(funcs) != len(offsets):
        raise PreconditionError("need one offset per function")
    graph = funcs[0].graph
    for f in funcs:
        if f.graph is not graph:
            raise PreconditionError("functions live on different graphs")
    return [f.add_const(Fraction(b)) for f, b in zip(funcs, offsets)]


def _edge_cells(shifted: list[PLFunction], ei: int) -> list[tuple[Fraction, Fraction, set[int]]]:
    """Refine an edge at all breakpoints and pairwise crossings; on each
    resulting cell every function is affine, so the set of indices that
    attain the envelope identically is just {j : f_j = env at both ends}."""
    offs = {o for f in shifted for (o, _v) in f.data[ei]}
    base = sorted(offs)
    extra: set[Fraction] = set()
    for (a, b) in zip(base, base[1:]):
        for j in range(len(shifted)):
            for k in range(j + 1, len(shifted)):
                da = shifted[j]._edge_value(ei, a) - shifted[k]._edge_value(ei, a)
                db = shifted[j]._edge_value(ei, b) - shifted[k]._edge_value(ei, b)
                if (da > 0 > db) or (da < 0 < db):
                    extra.add(a + (b - a) * da / (da - db))
    allo = sorted(offs | extra)
    cells = []
    vals = [[f._edge_value(ei, o) for f in shifted] for o in allo]
    for idx in range(len(allo) - 1):
        lo, hi = allo[idx], allo[idx + 1]
        mlo = min(vals[idx])
        mhi = min(vals[idx + 1])
        attain = {j for j in range(len(shifted))
                  if vals[idx][j] == mlo and vals[idx + 1][j] == mhi}
        cells.append((lo, hi, attain))
    return cells


def verify_dependence(funcs: Sequence[PLFunction],
                      offsets: Sequence) -> tuple[bool, Point | None]:
    """Whether min_j(funcs[j] + offsets[j]) is attained at least twice
    everywhere; on failure, also a point where it is attained only once."""
    shifted = _shifted(funcs, offsets)
    graph = shifted[0].graph
    for ei in range(len(graph.edges)):
        for (lo, hi, attain) in _edge_cells(shifted, ei):
            if len(attain) < 2:
                return False, graph.point(ei, (lo + hi) / 2)
    return True, None


def unique_min_locus(funcs: Sequence[PLFunction], offsets: Sequence) -> Region:
    """The open set where the minimum is attained by exactly one function;
    empty exactly when the offsets give a tropical dependence."""
    shifted = _shifted(funcs, offsets)
    graph = shifted[0].graph
    intervals = []
    for ei in range(len(graph.edges)):
        for (lo, hi, attain) in _edge_cells(shifted, ei):
            if len(attain) == 1:
                intervals.append(Interval(ei, lo, hi, False, False))
    return Region(graph, intervals)


@dataclass(frozen=True)
class DependenceCertificate:
    """Offsets realizing a dependence; None marks a function pushed to
    infinity (never minimal, effectively omitted from the family)."""

    offsets: tuple[Fraction | None, ...]
    theta: PLFunction

    @property
    def active(self) -> tuple[int, ...]:
        return tuple(j for j, b in enumerate(self.offsets) if b is not None)


@dataclass
class IndependenceReport:
    """One uniqueness witness per candidate offset vector examined."""

    witnesses: list[tuple[tuple[Fraction, ...], Point]] = field(default_factory=list)
    candidates_tried: int = 0


def _critical_values(fj: PLFunction, fk: PLFunction) -> list[Fraction]:
    """Values v such that fj - fk == v on a positive-length segment; only
    offsets with b_k - b_j equal to such a v let the pair coincide on a
    piece of the envelope."""
    diff = fj - fk
    out: set[Fraction] = set()
    for pts in diff.data.values():
        for (o1, v1), (o2, v2) in zip(pts, pts[1:]):
            if v1 == v2 and o1 < o2:
                out.add(v1)
    return sorted(out)


def find_dependence(funcs: Sequence[PLFunction],
                    max_candidates: int = 200_000,
                    report: IndependenceReport | None = None
                    ) -> DependenceCertificate | None:
    """Search for a tropical dependence among the functions.

    Subsets of the family are scanned by size then lexicographic order.
    Within a subset the first function's offset is fixed to 0 and the
    remaining offsets are propagated through the pairwise critical sets:
    every assignment in which each new function is pinned to an already
    assigned one is generated (all spanning-tree-shaped constraint
    systems), deduplicated, and verified.  A dependence whose binding
    structure is connected is always found this way; see the package notes
    for the completeness discussion.
    """
    n = len(funcs)
    if n < 2:
        raise PreconditionError("need at least two functions")
    if n > MAX_FAMILY:
        raise SearchCapError(MAX_FAMILY)

    crit: dict[tuple[int, int], list[Fraction]] = {}
    # essentiality boxes: in a minimal dependence no function lies strictly
    # above another everywhere, so b_k - b_j stays within the range of
    # f_j - f_k; assignments outside the box reduce to a smaller subset
    lo_box: dict[tuple[int, int], Fraction] = {}
    hi_box: dict[tuple[int, int], Fraction] = {}
    for j in range(n):
        for k in range(j + 1, n):
            crit[(j, k)] = _critical_values(funcs[j], funcs[k])
            diff = funcs[j] - funcs[k]
            vals_jk = [v for pts in diff.data.values() for (_o, v) in pts]
            lo_box[(j, k)] = min(vals_jk)
            hi_box[(j, k)] = max(vals_jk)

    def in_box(j: int, k: int, delta: Fraction) -> bool:
        # is b_k - b_j = delta compatible with both j and k being essential
        if j < k:
            return lo_box[(j, k)] <= delta <= hi_box[(j, k)]
        return lo_box[(k, j)] <= -delta <= hi_box[(k, j)]

    def pair_values(j: int, k: int) -> list[Fraction]:
        # candidate values of b_k - b_j
        if j < k:
            return crit[(j, k)]
        return [-v for v in crit[(k, j)]]

    # cheap rejection: a dependence needs the pointwise minimum attained
    # twice at every vertex, which candidate vectors rarely manage
    graph = funcs[0].graph
    probes = [graph.vertex_point(v) for v in graph.vertices]
    vals = [[f(p) for p in probes] for f in funcs]

    def probe_ok(subset: tuple[int, ...], b: tuple[Fraction, ...]) -> bool:
        for pi in range(len(probes)):
            lo = None
            count = 0
            for jpos, j in enumerate(subset):
                v = vals[j][pi] + b[jpos]
                if lo is None or v < lo:
                    lo, count = v, 1
                elif v == lo:
                    count += 1
            if count < 2:
                return False
        return True

    def full_check(subset, assignment):
        sub_funcs = [funcs[j] for j in subset]
        ok, witness = verify_dependence(sub_funcs, assignment)
        if ok:
            offsets: list[Fraction | None] = [None] * n
            for jpos, j in enumerate(subset):
                offsets[j] = assignment[jpos]
            theta = min_combination(sub_funcs, assignment)
            return DependenceCertificate(tuple(offsets), theta)
        if report is not None:
            report.witnesses.append((tuple(assignment), witness))
        return None

    for size in range(2, n + 1):
        for subset in combinations(range(n), size):
            # grow partial assignments by attaching any unassigned member to
            # any assigned one through a critical value, in every order, so
            # all spanning-tree-shaped constraint systems are produced;
            # None marks a still-unassigned position
            start = tuple(Fraction(0) if i == 0 else None
                          for i in range(size))
            current: set[tuple[Fraction | None, ...]] = {start}
            for _level in range(1, size):
                nxt: set[tuple[Fraction | None, ...]] = set()
                for a in current:
                    for kpos in range(1, size):
                        if a[kpos] is not None:
                            continue
                        for jpos in range(size):
                            if a[jpos] is None:
                                continue
                            for v in pair_values(subset[jpos], subset[kpos]):
                                bk = a[jpos] + v
                                if not all(in_box(subset[i], subset[kpos],
                                                  bk - a[i])
                                           for i in range(size)
                                           if a[i] is not None):
                                    continue
                                b = list(a)
                                b[kpos] = bk
                                nxt.add(tuple(b))
                                if len(nxt) > max_candidates:
                                    raise SearchCapError(max_candidates)
                current = nxt
            for assignment in sorted(current):
                if report is not None:
                    report.candidates_tried += 1
                if not probe_ok(subset, assignment):
                    continue
                cert = full_check(subset, assignment)
                if cert is not None:
                    return cert
    return None
