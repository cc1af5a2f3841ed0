"""Brill-Noether machinery on the chain of loops at rho = 0.

Rectangular standard tableaux classify the relevant divisor classes; each
tableau yields a lattice path, a divisor D on the chain, its adjoint E,
and the twisted representatives D_j / E_k with piecewise-linear witnesses.
The central experiment checks that the family {phi_j + psi_k} admits no
tropical dependence.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (GenericityError, PreconditionError, TheoremViolation)
from .graph import (BNParams, ChainOfLoops, Divisor, Point, canonical_divisor,
                    check_genericity, contains_point_in)
from .independence import DependenceCertificate, find_dependence
from .plfunc import PLFunction, in_R
from .reduce import v_reduce


# ---------------------------------------------------------------------------
# tableaux and lattice paths


@dataclass(frozen=True)
class Tableau:
    """A rectangular standard tableau: entries 1..rows*cols, strictly
    increasing along rows and columns."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.rows
        cols = self.cols
        flat = [x for row in self.entries for x in row]
        if any(len(row) != cols for row in self.entries):
            raise PreconditionError("ragged tableau")
        if sorted(flat) != list(range(1, rows * cols + 1)):
            raise PreconditionError("entries must be a bijection onto 1..n")
        for row in self.entries:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise PreconditionError("rows must strictly increase")
        for c in range(cols):
            col = [self.entries[r][c] for r in range(rows)]
            if any(a >= b for a, b in zip(col, col[1:])):
                raise PreconditionError("columns must strictly increase")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def transpose(self) -> "Tableau":
        return Tableau(tuple(zip(*self.entries)))

    def position(self, i: int) -> tuple[int, int]:
        """(row, col) of entry i, zero-indexed."""
        for r, row in enumerate(self.entries):
            for c, x in enumerate(row):
                if x == i:
                    return r, c
        raise PreconditionError(f"no entry {i}")

    def params(self) -> BNParams:
        """The (g, r, d) with rho = 0 classified by this shape."""
        g = self.size
        r = self.cols - 1
        d = g + r - self.rows
        return BNParams(g, r, d)


def hook_length_count(rows: int, cols: int) -> int:
    """Number of standard tableaux of rectangular shape, by the hook
    length formula; used as an enumeration oracle."""
    prod = 1
    for r in range(rows):
        for c in range(cols):
            prod *= (rows - r) + (cols - c) - 1
    return factorial(rows * cols) // prod


def enumerate_tableaux(rows: int, cols: int) -> list[Tableau]:
    """All rectangular standard tableaux, in lexicographic order of the
    row-concatenated entry sequence."""
    n = rows * cols
    out: list[Tableau] = []
    grid = [[0] * cols for _ in range(rows)]

    def place(i: int):
        if i > n:
            out.append(Tableau(tuple(tuple(row) for row in grid)))
            return
        for r in range(rows):
            for c in range(cols):
                if grid[r][c]:
                    continue
                if c > 0 and not grid[r][c - 1]:
                    continue
                if r > 0 and not grid[r - 1][c]:
                    continue
                grid[r][c] = i
                place(i + 1)
                grid[r][c] = 0

    place(1)
    out.sort(key=lambda t: t.entries)
    return out


@dataclass(frozen=True)
class DyckPath:
    """The lattice path p_0..p_g in Z^r attached to a tableau."""

    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = len(self.points[0])
        start = tuple(range(r, 0, -1))
        if self.points[0] != start or self.points[-1] != start:
            raise PreconditionError(f"path must start and end at {start}")
        for p in self.points:
            if any(p[a] <= p[a + 1] for a in range(r - 1)) or (r and p[-1] <= 0):
                raise PreconditionError(f"path point {p} leaves the open chamber")

    def coord(self, i: int, j: int) -> int:
        return self.points[i][j]


def tableau_to_dyck(T: Tableau) -> DyckPath:
    """Step +e_j for an entry in column j < r, (-1,..,-1) for the last
    column; the tableau conditions are exactly the chamber conditions."""
    r = T.cols - 1
    cur = list(range(r, 0, -1))
    pts = [tuple(cur)]
    for i in range(1, T.size + 1):
        _row, col = T.position(i)
        if col < r:
            cur[col] += 1
        else:
            cur = [x - 1 for x in cur]
        pts.append(tuple(cur))
    return DyckPath(tuple(pts))


# ---------------------------------------------------------------------------
# divisors from tableaux


def _require_generic(chain: ChainOfLoops):
    if not check_genericity(chain):
        raise GenericityError(
            "chain loop-length ratios admit a small integer ratio; "
            "divisor positions are not guaranteed to avoid the vertices")


def tableau_to_divisor(T: Tableau, chain: ChainOfLoops) -> Divisor:
    """The divisor classified by the tableau: r chips at v_1, plus one chip
    on loop i at counterclockwise distance p_{i-1}(j)*m_i from w_i whenever
    entry i sits in column j < r; loops with entries in the last column
    stay empty."""
    if chain.g != T.size:
        raise PreconditionError(f"tableau size {T.size} != genus {chain.g}")
    _require_generic(chain)
    r = T.cols - 1
    path = tableau_to_dyck(T)
    coeffs: list[tuple[Point, int]] = [(chain.v(1), r)] if r else []
    for i in range(1, chain.g + 1):
        _row, col = T.position(i)
        if col < r:
            dist = Fraction(path.coord(i - 1, col)) * chain.m[i - 1]
            coeffs.append((chain.ccw_point(i, dist), 1))
    return Divisor(coeffs)


def adjoint_divisor(T: Tableau, chain: ChainOfLoops) -> Divisor:
    """The divisor of the transposed tableau; D + E is canonical."""
    return tableau_to_divisor(T.transpose(), chain)


def build_Dj(T: Tableau, chain: ChainOfLoops, j: int) -> tuple[Divisor, PLFunction]:
    """The unique divisor D_j ~ D with D_j - j*v_1 - (r-j)*w_g effective,
    with the witness phi_j (D_j = D + div(phi_j), phi_j(w_g) = 0).

    D_j - j*v_1 - (r-j)*w_g has no chips on bridges or at vertices, so it
    is reduced at every point; it is recovered as the w_g-reduced
    representative of D - j*v_1 - (r-j)*w_g.
    """
    r = T.cols - 1
    if not (0 <= j <= r):
        raise PreconditionError(f"column index {j} out of range 0..{r}")
    D = tableau_to_divisor(T, chain)
    wg = chain.w(chain.g)
    shift = Divisor({chain.v(1): j, wg: r - j})
    res = v_reduce(chain.graph, D - shift, wg)
    Dj = res.reduced + shift
    if not (Dj - shift).is_effective:
        raise TheoremViolation("twisted representative failed to be effective")
    return Dj, res.witness


def build_Ek(T: Tableau, chain: ChainOfLoops, k: int) -> tuple[Divisor, PLFunction]:
    """Adjoint counterpart of build_Dj: E_k ~ E with
    E_k - k*v_1 - (rows-1-k)*w_g effective, via the transposed tableau."""
    return build_Dj(T.transpose(), chain, k)


# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class ShapeProfile:
    """Occupancy of the chain decomposition by an effective divisor."""

    cells: tuple[bool, ...]        # gamma_1..gamma_g
    bridges: tuple[bool, ...]      # br_1..br_{g-1}
    wg_coeff: int

    def empty_cells(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, occ in enumerate(self.cells) if not occ)


def shape_profile(D: Divisor, chain: ChainOfLoops) -> ShapeProfile:
    if not D.is_effective:
        raise PreconditionError("shape profile is defined for effective divisors")
    cells = tuple(contains_point_in(D, chain.cell(i))
                  for i in range(1, chain.g + 1))
    bridges = tuple(contains_point_in(D, chain.bridge_region(i))
                    for i in range(1, chain.g))
    return ShapeProfile(cells, bridges, D.coeff(chain.w(chain.g)))


def is_wg_reduced_shape(D: Divisor, chain: ChainOfLoops) -> bool:
    """The classification of w_g-reduced effective divisors on the core
    chain: no chips on bridges, at most one chip per cell gamma_i."""
    if not D.is_effective:
        return False
    for i in range(1, chain.g):
        if contains_point_in(D, chain.bridge_region(i)):
            return False
    for i in range(1, chain.g + 1):
        cell = chain.cell(i)
        chips = sum(c for p, c in D.items() if cell.contains(p))
        if chips > 1:
            return False
    return True


def canonical_shape_check(D: Divisor, chain: ChainOfLoops) -> int:
    """For an effective divisor equivalent to the canonical one, return the
    index of a cell gamma_i containing no chip; one must exist."""
    from .reduce import is_equivalent
    if not D.is_effective:
        raise PreconditionError("divisor must be effective")
    if is_equivalent(chain.graph, D, canonical_divisor(chain.graph)) is None:
        raise PreconditionError("divisor is not equivalent to the canonical divisor")
    prof = shape_profile(D, chain)
    empty = prof.empty_cells()
    if not empty:
        raise TheoremViolation(
            "effective canonical divisor occupies every cell of the chain")
    return empty[0]


def chips_on_each_loop_check(chain: ChainOfLoops, D: Divisor,
                             funcs: list[PLFunction], i: int) -> bool:
    """At most one of the divisors D + div(psi) misses cell gamma_i, given
    deg(D) <= 2g-2 and pairwise distinct incoming slopes at v_i along the
    bridge arriving from the left."""
    g = chain.g
    if D.degree > 2 * g - 2:
        raise PreconditionError("degree must be at most 2g-2")
    if i == 1 and not chain.extended:
        raise PreconditionError("loop 1 has no incoming bridge on the core chain")
    bridge = chain.bridge_edge(i - 1)
    vi = chain.v(i)
    slopes = [f.incoming_slope(vi, bridge, -1) for f in funcs]
    if len(set(slopes)) != len(slopes):
        raise PreconditionError(f"incoming slopes {slopes} are not pairwise distinct")
    for f in funcs:
        if not in_R(f, D):
            raise PreconditionError("every function must lie in R(D)")
    cell = chain.cell(i)
    misses = sum(1 for f in funcs
                 if not contains_point_in(D + f.divisor(), cell))
    return misses <= 1


# ---------------------------------------------------------------------------
# the rho = 0 experiment


@dataclass
class GPReport:
    params: BNParams
    tableau: Tableau
    verdict: str                      # "independent" | "dependent" | "trivial"
    certificate: DependenceCertificate | None
    empty_cell_table: dict[tuple[int, int], int]
    elapsed: float


def gp_rho_zero_experiment(T: Tableau, chain: ChainOfLoops) -> GPReport:
    """Build phi_j and psi_k from the tableau and test the family
    {phi_j + psi_k} for tropical dependence; the expected verdict on a
    generic chain is independence."""
    _require_generic(chain)
    params = T.params()
    if params.rho != 0:
        raise PreconditionError(f"(g,r,d)={params} has rho={params.rho}, need 0")
    if chain.g != params.g:
        raise PreconditionError("chain genus does not match the tableau")
    t0 = time.monotonic()
    r = T.cols - 1
    rows = T.rows

    phis = [build_Dj(T, chain, j) for j in range(r + 1)]
    psis = [build_Ek(T, chain, k) for k in range(rows)]

    # sanity table: the empty cell of D_j + E_k must be the tableau cell
    # in column j and row k
    table: dict[tuple[int, int], int] = {}
    for j, (Dj, _) in enumerate(phis):
        for k, (Ek, _) in enumerate(psis):
            empty = shape_profile(Dj + Ek, chain).empty_cells()
            if len(empty) != 1 or T.position(empty[0]) != (k, j):
                raise TheoremViolation(
                    f"divisor D_{j} + E_{k} has empty cells {empty}, "
                    f"expected exactly the entry in row {k}, column {j}")
            table[(j, k)] = empty[0]

    family = [phi + psi for (_D, phi) in phis for (_E, psi) in psis]
    if len(family) < 2:
        return GPReport(params, T, "trivial", None, table,
                        time.monotonic() - t0)
    cert = find_dependence(family)
    verdict = "dependent" if cert is not None else "independent"
    return GPReport(params, T, verdict, cert, table, time.monotonic() - t0)
