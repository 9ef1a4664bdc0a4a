"""Rational triangles, exact lattice-point counts, and Ehrhart quasi-polynomials."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .lattice import IntMatrix2, RationalPoint, content
from .scalars import as_fraction, frac, is_integer


@dataclass(frozen=True)
class LatticeTriangle:
    v0: RationalPoint
    v1: RationalPoint
    v2: RationalPoint

    def __post_init__(self):
        for name in ("v0", "v1", "v2"):
            v = getattr(self, name)
            if not isinstance(v, RationalPoint):
                object.__setattr__(self, name, RationalPoint.of(v[0], v[1]))
        if self.twice_signed_area() == 0:
            raise ValueError(f"degenerate triangle {self.vertices()}")

    @classmethod
    def of(cls, *vertices) -> "LatticeTriangle":
        return cls(*(RationalPoint.of(v[0], v[1]) for v in vertices))

    def vertices(self) -> tuple[RationalPoint, RationalPoint, RationalPoint]:
        return (self.v0, self.v1, self.v2)

    def twice_signed_area(self) -> Fraction:
        (x0, y0), (x1, y1), (x2, y2) = self.vertices()
        return (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)

    @property
    def area(self) -> Fraction:
        return abs(self.twice_signed_area()) / 2

    def is_integral(self) -> bool:
        return all(v.is_integral() for v in self.vertices())

    def scale(self, q) -> "LatticeTriangle":
        return LatticeTriangle(*(v.scale(q) for v in self.vertices()))


class LatticeCount(NamedTuple):
    interior: int
    boundary: int

    @property
    def total(self) -> int:
        return self.interior + self.boundary


class EdgeCounts(NamedTuple):
    """Boundary points of ``T_{gamma,x}`` split into a partition of its three edges."""

    closed_edge: int  # origin -- apex, both ends included
    base_edge: int  # (-{x1}, 0) included -- origin excluded
    open_edge: int  # (-{x1}, 0) -- apex, both ends excluded

    @property
    def total(self) -> int:
        return self.closed_edge + self.base_edge + self.open_edge


def triangle_T(gamma: IntMatrix2) -> LatticeTriangle:
    """Triangle with vertices ``(0, 0)``, ``(a - 1, c)``, ``(-1, 0)``."""
    if gamma.c == 0:
        raise ValueError("triangle needs c != 0")
    return LatticeTriangle.of((0, 0), (gamma.a - 1, gamma.c), (-1, 0))


def dilate(T: LatticeTriangle, q) -> LatticeTriangle:
    q = as_fraction(q)
    if q <= 0:
        raise ValueError(f"dilation factor must be positive, got {q}")
    return T.scale(q)


def _half_planes(T: LatticeTriangle) -> list[tuple[int, int, int]]:
    """Integer ``(A, B, C)`` with the closed triangle equal to ``{A x + B y + C >= 0}``."""
    verts = T.vertices()
    if T.twice_signed_area() < 0:
        verts = (verts[0], verts[2], verts[1])
    out = []
    for i in range(3):
        (xi, yi), (xj, yj) = verts[i], verts[(i + 1) % 3]
        A, B = yi - yj, xj - xi
        C = -(A * xi + B * yi)
        den = math.lcm(A.denominator, B.denominator, C.denominator)
        out.append((int(A * den), int(B * den), int(C * den)))
    return out


def _bounding_box(T: LatticeTriangle) -> tuple[int, int, int, int]:
    xs = [v.x1 for v in T.vertices()]
    ys = [v.x2 for v in T.vertices()]
    return math.ceil(min(xs)), math.floor(max(xs)), math.ceil(min(ys)), math.floor(max(ys))


def count_lattice(T: LatticeTriangle) -> LatticeCount:
    """Interior and boundary points of ``Z^2`` by testing every point of the bounding box."""
    planes = _half_planes(T)
    x_lo, x_hi, y_lo, y_hi = _bounding_box(T)
    interior = boundary = 0
    for px in range(x_lo, x_hi + 1):
        for py in range(y_lo, y_hi + 1):
            vals = [A * px + B * py + C for A, B, C in planes]
            if min(vals) < 0:
                continue
            if min(vals) == 0:
                boundary += 1
            else:
                interior += 1
    return LatticeCount(interior, boundary)


def count_lattice_columns(T: LatticeTriangle) -> LatticeCount:
    """Same counts as :func:`count_lattice`, one integer column at a time."""
    planes = _half_planes(T)
    x_lo, x_hi, _, _ = _bounding_box(T)
    closed = interior = 0
    for px in range(x_lo, x_hi + 1):
        lo_c = lo_o = None
        hi_c = hi_o = None
        closed_ok = open_ok = True
        for A, B, C in planes:
            r = A * px + C  # constraint: B*y + r >= 0 (closed), > 0 (open)
            if B > 0:
                lc = -(r // B)  # ceil(-r/B)
                lo_ = (-r) // B + 1  # smallest y with B y > -r
                lo_c = lc if lo_c is None else max(lo_c, lc)
                lo_o = lo_ if lo_o is None else max(lo_o, lo_)
            elif B < 0:
                hc = r // (-B)  # floor(r/|B|)
                ho = -((-r) // (-B)) - 1  # largest y with |B| y < r
                hi_c = hc if hi_c is None else min(hi_c, hc)
                hi_o = ho if hi_o is None else min(hi_o, ho)
            else:
                closed_ok = closed_ok and r >= 0
                open_ok = open_ok and r > 0
        if closed_ok:
            closed += max(0, hi_c - lo_c + 1)
        if open_ok:
            interior += max(0, hi_o - lo_o + 1)
    return LatticeCount(interior, closed - interior)


def weighted_count(T: LatticeTriangle) -> Fraction:
    """Lattice points weighted 1 inside and 1/2 on the boundary."""
    n = count_lattice(T)
    return n.interior + Fraction(n.boundary, 2)


def lattice_enumerator(P: LatticeTriangle, m: int, *, bruteforce: bool = False) -> int:
    """``#(Z^2 intersected with mP)``; ``mP`` is the origin when ``m == 0``."""
    if m < 0:
        raise ValueError("dilation index must be non-negative")
    if m == 0:
        return 1
    counter = count_lattice if bruteforce else count_lattice_columns
    return counter(P.scale(m)).total


# ---------------------------------------------------------------------------
# the content lemmas for T_{gamma,x}
# ---------------------------------------------------------------------------

def _check_counting_hypotheses(gamma: IntMatrix2, x1) -> tuple[Fraction, int]:
    x1 = as_fraction(x1)
    if not gamma.is_sl2():
        raise ValueError(f"need gamma in SL2(Z), det = {gamma.det}")
    if gamma.c <= 0:
        raise ValueError(f"need c > 0, got c = {gamma.c}")
    ell = content(gamma)
    if ell <= 1:
        raise ValueError(f"need content > 1, got {ell}")
    if is_integer(x1) or not is_integer(x1 * ell):
        raise ValueError(f"need x1 in (1/{ell})Z minus Z, got {x1}")
    return frac(x1), ell


def triangle_T_x(gamma: IntMatrix2, x1) -> LatticeTriangle:
    """``{x1} T_gamma``."""
    return dilate(triangle_T(gamma), frac(as_fraction(x1)))


def interior_floor_sum(gamma: IntMatrix2, x1) -> int:
    """``sum_{m=1}^{c{x1}-1} floor(m d/c) - floor(m (d-1)/c)``."""
    f, _ = _check_counting_hypotheses(gamma, x1)
    c, d = gamma.c, gamma.d
    top = int(c * f)
    return sum((m * d) // c - (m * (d - 1)) // c for m in range(1, top))


def interior_closed_form(gamma: IntMatrix2, x1) -> Fraction:
    """``({x1}/2)(c{x1} + 1 + c - content) - sum_{m=1}^{c{x1}} {m d/c}``."""
    f, ell = _check_counting_hypotheses(gamma, x1)
    c, d = gamma.c, gamma.d
    top = int(c * f)
    tail = sum((frac(Fraction(m * d, c)) for m in range(1, top + 1)), Fraction(0))
    return f / 2 * (c * f + 1 + c - ell) - tail


def edge_counts(gamma: IntMatrix2, x1) -> EdgeCounts:
    """Per-edge boundary counts: ``1 + content*{x1}`` on the closed edge through the origin, none elsewhere."""
    f, ell = _check_counting_hypotheses(gamma, x1)
    return EdgeCounts(1 + int(ell * f), 0, 0)


def _on_segment_points(p: RationalPoint, q: RationalPoint) -> list[tuple[int, int]]:
    """Integer points on the closed segment ``[p, q]`` (brute force over the box)."""
    x_lo, x_hi = math.ceil(min(p.x1, q.x1)), math.floor(max(p.x1, q.x1))
    y_lo, y_hi = math.ceil(min(p.x2, q.x2)), math.floor(max(p.x2, q.x2))
    dx, dy = q.x1 - p.x1, q.x2 - p.x2
    return [
        (i, j)
        for i in range(x_lo, x_hi + 1)
        for j in range(y_lo, y_hi + 1)
        if dx * (j - p.x2) - dy * (i - p.x1) == 0
    ]


def edge_counts_bruteforce(gamma: IntMatrix2, x1) -> EdgeCounts:
    """The same partition as :func:`edge_counts`, enumerated point by point."""
    T = triangle_T_x(gamma, x1)
    origin, apex, left = T.v0, T.v1, T.v2
    closed = _on_segment_points(origin, apex)
    base = [p for p in _on_segment_points(left, origin) if p != (origin.x1, origin.x2)]
    other = [
        p
        for p in _on_segment_points(left, apex)
        if p != (left.x1, left.x2) and p != (apex.x1, apex.x2)
    ]
    return EdgeCounts(len(closed), len(base), len(other))


# ---------------------------------------------------------------------------
# Ehrhart quasi-polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuasiPolynomial:
    """``c2[m mod d] m^2 + c1[m mod d] m + c0[m mod d]``."""

    period: int
    coeffs: tuple[tuple[Fraction, Fraction, Fraction], ...]

    def evaluate(self, m: int) -> Fraction:
        c0, c1, c2 = self.coeffs[m % self.period]
        return c2 * m * m + c1 * m + c0

    def coefficient(self, i: int, m: int) -> Fraction:
        if i not in (0, 1, 2):
            raise ValueError(f"coefficient index must be 0, 1 or 2, got {i}")
        return self.coeffs[m % self.period][i]

    def minimal_period(self, i: int) -> int:
        """Smallest ``g`` with ``c_i[m + g] == c_i[m]`` for all ``m``."""
        values = [row[i] for row in self.coeffs]
        for g in range(1, self.period + 1):
            if self.period % g == 0 and all(values[r] == values[r % g] for r in range(self.period)):
                return g
        return self.period


def denominator(P: LatticeTriangle) -> int:
    """Smallest ``d`` with ``dP`` integral."""
    return math.lcm(*(q.denominator for v in P.vertices() for q in v))


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals."""
    n = len(rhs)
    rows = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if rows[i][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for i in range(n):
            if i != col and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [u - f * v for u, v in zip(rows[i], rows[col])]
    return [r[n] for r in rows]


class FitError(ArithmeticError):
    pass


@functools.lru_cache(maxsize=8192)
def ehrhart_fit(P: LatticeTriangle, verify: bool = True) -> QuasiPolynomial:
    """Fit the Ehrhart quasi-polynomial of ``P`` from three dilations per residue class.

    With ``verify`` the fit is checked against exact counts for every
    ``m <= 6 * period``.
    """
    d = denominator(P)
    coeffs = []
    for r in range(d):
        ms = [r + k * d for k in range(3)]
        sol = _solve([[1, m, m * m] for m in ms], [lattice_enumerator(P, m) for m in ms])
        coeffs.append(tuple(sol))
    Q = QuasiPolynomial(d, tuple(coeffs))
    if verify:
        for m in range(6 * d + 1):
            if Q.evaluate(m) != lattice_enumerator(P, m):
                raise FitError(f"quasi-polynomial fit of {P} fails at m = {m}")
    return Q


def g_coefficient(Q: QuasiPolynomial, i: int, m: int) -> Fraction:
    return Q.coefficient(i, m)


def face_indices(P: LatticeTriangle) -> tuple[int, int, int]:
    """``(d0, d1, d2)``: smallest dilations whose vertices / edge lines / plane meet ``Z^2``."""
    d0 = denominator(P)
    d1 = 1
    verts = P.vertices()
    for i in range(3):
        p, q = verts[i], verts[(i + 1) % 3]
        nx, ny = q.x2 - p.x2, p.x1 - q.x1  # normal to the edge direction
        scale = math.lcm(nx.denominator, ny.denominator)
        nx, ny = int(nx * scale), int(ny * scale)
        g = math.gcd(nx, ny)
        nx, ny = nx // g, ny // g
        offset = nx * p.x1 + ny * p.x2  # the edge line is nx*X + ny*Y = offset
        d1 = math.lcm(d1, offset.denominator)
    return d0, d1, 1


def scaled_T(gamma: IntMatrix2, ell: int) -> LatticeTriangle:
    """``ell^{-1} T_gamma``."""
    return dilate(triangle_T(gamma), Fraction(1, ell))


def theorem3_residual(gamma: IntMatrix2, gamma_prime: IntMatrix2, m: int) -> Fraction:
    """``G0(P_prod, m) - G0(P, m) - G0(P', m) - {m/ell} + 1`` for the triangles scaled by ``1/ell``."""
    if not (gamma.is_sl2() and gamma_prime.is_sl2()):
        raise ValueError("both matrices must lie in SL2(Z)")
    prod = gamma @ gamma_prime
    if gamma.c <= 0 or gamma_prime.c <= 0 or prod.c <= 0:
        raise ValueError(
            f"need c, c' and ca' + dc' positive; got {gamma.c}, {gamma_prime.c}, {prod.c}"
        )
    if m < 0:
        raise ValueError("m must be non-negative")
    ell = math.gcd(content(gamma), content(gamma_prime))
    g0 = [ehrhart_fit(scaled_T(g, ell)).coefficient(0, m) for g in (prod, gamma, gamma_prime)]
    return g0[0] - g0[1] - g0[2] - frac(Fraction(m, ell)) + 1
