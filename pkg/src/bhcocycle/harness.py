"""Verification suites tying the cocycle to lattice-point counts, and table emitters.

Every check is an exact equality.  Suites are deterministic in
``(trials, seed, bounds)``.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import numpy as np

from . import cocycle as cz
from .dedekind import dedekind_rademacher
from .ehrhart import (
    count_lattice,
    denominator,
    edge_counts,
    edge_counts_bruteforce,
    ehrhart_fit,
    face_indices,
    interior_closed_form,
    interior_floor_sum,
    lattice_enumerator,
    scaled_T,
    theorem3_residual,
    triangle_T,
    triangle_T_x,
    weighted_count,
)
from .lattice import (
    IntMatrix2,
    RationalPoint,
    character_order,
    character_order_bruteforce,
    content,
    coset_reps,
    coset_reps_bruteforce,
    coset_key,
    divides,
    random_sl2_from,
    render_matrix,
    render_point,
    sl2_sweep,
)
from .scalars import (
    QuadraticReal,
    bernoulli_bar1,
    bernoulli_bar2,
    frac,
    indicator_int,
    parse_quad,
    quad_sign,
    render_quad,
    render_rational,
)

TAU_POOL_TEXT = (
    "sqrt(2)",
    "sqrt(3)",
    "sqrt(5)",
    "1/2+1/2*sqrt(5)",
    "-sqrt(2)",
    "-sqrt(3)",
    "-sqrt(5)",
    "-1/2-1/2*sqrt(5)",
)
TAU_POOL = tuple(parse_quad(s) for s in TAU_POOL_TEXT)


def negative_branch_tau(gamma: IntMatrix2) -> QuadraticReal:
    """A ratio with ``a + c*tau < 0`` when ``c > 0``: ``-sqrt((|a| + 2)^2 + 1)``."""
    return -QuadraticReal.sqrt((abs(gamma.a) + 2) ** 2 + 1)


def _as_result(v: QuadraticReal):
    return v.rat if v.irr == 0 else v


# ---------------------------------------------------------------------------
# cocycle <-> lattice points
# ---------------------------------------------------------------------------

def _check_hayes(gamma: IntMatrix2, m: int) -> int:
    if not gamma.is_sl2():
        raise cz.HypothesisError("not-sl2", f"det = {gamma.det}")
    if gamma.c <= 0:
        raise cz.HypothesisError("c-not-positive", f"c = {gamma.c}")
    ell = content(gamma)
    if ell <= 1:
        raise cz.HypothesisError("content-one", f"content = {ell}")
    if m % ell == 0:
        raise cz.HypothesisError("x-integral", f"m/content = {m}/{ell} is an integer")
    return ell


def hayes_sides(gamma: IntMatrix2, m: int, tau: QuadraticReal) -> tuple[QuadraticReal, QuadraticReal]:
    """Both sides of the Hayes-type identity at ``x = (m/content, 0)``.

    Left: ``zeta0(gamma)(x) - zeta0(gamma)(content * x)`` (rescaling omega by a
    positive factor leaves ``tau`` alone).  Right: weighted lattice count of
    ``{x1} T_gamma`` minus its area plus ``(sgn(a + c tau) - 3)/4``.
    """
    ell = _check_hayes(gamma, m)
    x = RationalPoint(Fraction(m, ell), Fraction(0))
    lhs = cz.zeta0(gamma, x, tau) - cz.zeta0(gamma, x.scale(ell), tau)
    T = triangle_T_x(gamma, x.x1)
    s = quad_sign(gamma.a + gamma.c * tau)
    rhs = weighted_count(T) - T.area + Fraction(s - 3, 4)
    return lhs, QuadraticReal(rhs, 0, tau.disc)


def verify_hayes(gamma: IntMatrix2, m: int, tau: QuadraticReal):
    lhs, rhs = hayes_sides(gamma, m, tau)
    return _as_result(lhs - rhs)


def prop41_sides(gamma: IntMatrix2, m: int, tau: QuadraticReal) -> tuple[QuadraticReal, QuadraticReal]:
    if not gamma.is_sl2():
        raise cz.HypothesisError("not-sl2", f"det = {gamma.det}")
    if gamma.c <= 0:
        raise cz.HypothesisError("c-not-positive", f"c = {gamma.c}")
    if m < 0:
        raise cz.HypothesisError("m-negative", f"m = {m}")
    ell = content(gamma)
    x = RationalPoint(Fraction(m, ell), Fraction(0))
    lhs = cz.zeta0(gamma, x, tau) - cz.zeta0(gamma, RationalPoint(Fraction(m), Fraction(0)), tau)
    g0 = ehrhart_fit(scaled_T(gamma, ell)).coefficient(0, m)
    q = Fraction(m, ell)
    rhs = g0 + frac(q) - 1
    if not indicator_int(q):
        rhs += Fraction(quad_sign(gamma.a + gamma.c * tau) - 1, 4)
    return lhs, QuadraticReal(rhs, 0, tau.disc)


def verify_prop41(gamma: IntMatrix2, m: int, tau: QuadraticReal):
    lhs, rhs = prop41_sides(gamma, m, tau)
    return _as_result(lhs - rhs)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def hayes_cases(c_max: int = 12) -> Iterator[tuple[IntMatrix2, int]]:
    """``(gamma, m)`` with ``1 <= c <= c_max``, content > 1 and ``m`` in ``1 .. 2*content - 1`` off multiples."""
    for gamma in sl2_sweep(c_max):
        ell = content(gamma)
        if ell > 1:
            for m in range(1, 2 * ell):
                if m % ell:
                    yield gamma, m


def theorem3_pairs(c_max: int = 10) -> Iterator[tuple[IntMatrix2, IntMatrix2]]:
    mats = list(sl2_sweep(c_max))
    for g, gp in itertools.product(mats, mats):
        if (g @ gp).c > 0:
            yield g, gp


def rational_grid(max_den: int) -> list[Fraction]:
    """All reduced fractions in ``[0, 1)`` with denominator at most ``max_den``."""
    return sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(q)})


def random_point(rng: random.Random, max_den: int, spread: int = 3) -> RationalPoint:
    return RationalPoint(
        Fraction(rng.randint(-spread * max_den, spread * max_den), rng.randint(1, max_den)),
        Fraction(rng.randint(-spread * max_den, spread * max_den), rng.randint(1, max_den)),
    )


def random_matrix(rng: random.Random, max_entry: int, *, need_c: bool = False) -> IntMatrix2:
    while True:
        a, b, c, d = (rng.randint(-max_entry, max_entry) for _ in range(4))
        if a * d - b * c != 0 and (c != 0 or not need_c):
            return IntMatrix2(a, b, c, d)


def small_matrices(max_entry: int = 6, max_det: int = 24) -> Iterator[IntMatrix2]:
    """Every integer matrix with entries in ``[-max_entry, max_entry]`` and ``0 < |det| <= max_det``."""
    r = range(-max_entry, max_entry + 1)
    for a, b, c, d in itertools.product(r, r, r, r):
        det = a * d - b * c
        if det != 0 and abs(det) <= max_det:
            yield IntMatrix2(a, b, c, d)


# ---------------------------------------------------------------------------
# exhaustive B2 coset-sum check in machine integers
# ---------------------------------------------------------------------------

def _b2_scaled(num: np.ndarray, den: int) -> np.ndarray:
    """``6 den^2 * B2(num/den)`` as exact integers."""
    r = np.mod(num, den)
    return 6 * r * r - 6 * r * den + den * den


def b2_lemma_grid_failures(gamma: IntMatrix2, max_den: int = 8) -> list[tuple[int, RationalPoint]]:
    """Grid points where the coset sum of B2 differs from its closed form.

    All arithmetic is on integers scaled by a common denominator, so the
    comparison is exact; the bounds keep every value far inside int64.
    """
    grid = rational_grid(max_den)
    N = math.lcm(*(q.denominator for q in grid))
    nums = np.array([int(q * N) for q in grid], dtype=np.int64)
    p1, p2 = np.meshgrid(nums, nums, indexing="ij")
    p1, p2 = p1.ravel(), p2.ravel()
    a, b, c, d = gamma.entries()
    det = gamma.det
    reps = np.array([(int(mu.x1), int(mu.x2)) for mu in coset_reps(gamma)], dtype=np.int64)
    Q = N * abs(det)
    if 6 * Q * Q * len(reps) * 4 >= 2**62:
        raise OverflowError("grid too fine for int64 verification")
    failures = []
    for j, (u, v, g) in ((1, (d, -b, math.gcd(b, d))), (2, (-c, a, math.gcd(a, c)))):
        # <x + mu, row_j> = (u (p1 + N mu1) + v (p2 + N mu2)) / (N det)
        base = u * p1 + v * p2
        shift = N * (u * reps[:, 0] + v * reps[:, 1])
        num = base[:, None] + shift[None, :]
        if det < 0:
            num = -num
        lhs = _b2_scaled(num, Q).sum(axis=1)
        # (det/g) <x, row_j> = base / (N g)
        rhs = _b2_scaled(base, N * g) * abs(det)
        bad = np.nonzero(lhs != rhs)[0]
        for k in bad:
            failures.append((j, RationalPoint(Fraction(int(p1[k]), N), Fraction(int(p2[k]), N))))
    return failures


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

@dataclass
class Bounds:
    max_entry: int = 50
    max_word_len: int = 12
    max_den: int = 30
    c_max: int | None = None


@dataclass
class SuiteReport:
    suite: str
    attempted: int
    passed: int
    counterexample: dict | None = None
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.counterexample is None and self.passed == self.attempted

    def to_dict(self, include_timing: bool = False) -> dict:
        out = asdict(self)
        if not include_timing:
            out.pop("wall_time")
        return out


Case = tuple[dict, Callable[[], bool]]


def _render(v) -> str:
    if isinstance(v, IntMatrix2):
        return render_matrix(v)
    if isinstance(v, RationalPoint):
        return render_point(v)
    if isinstance(v, QuadraticReal):
        return render_quad(v)
    if isinstance(v, (int, Fraction)):
        return render_rational(v)
    return str(v)


def _case(inputs: dict, check: Callable[[], bool]) -> Case:
    return {k: _render(v) for k, v in inputs.items()}, check


def _suite_bernoulli_raabe(rng, trials, bounds):
    for _ in range(trials):
        c = rng.randint(1, 30)
        q = Fraction(rng.randint(-200, 200), rng.randint(1, bounds.max_den))
        n = rng.randint(-5, 5)

        def check(c=c, q=q, n=n):
            s1 = sum((bernoulli_bar1((q + j) / c) for j in range(c)), Fraction(0))
            s2 = sum((bernoulli_bar2((q + j) / c) for j in range(c)), Fraction(0))
            return (
                s1 == bernoulli_bar1(q)
                and s2 == bernoulli_bar2(q) / c
                and bernoulli_bar1(q + n) == bernoulli_bar1(q)
                and bernoulli_bar2(q + n) == bernoulli_bar2(q) == bernoulli_bar2(-q)
            )

        yield _case({"c": c, "q": q, "n": n}, check)


def _suite_coset(rng, trials, bounds):
    for gamma in itertools.islice(small_matrices(6, 50), 0, None, 7):
        def check(g=gamma):
            reps = coset_reps(g)
            keys = {coset_key(g, mu) for mu in reps}
            return (
                len(reps) == abs(g.det)
                and len(keys) == len(reps)
                and sorted(reps) == sorted(coset_reps_bruteforce(g))
            )

        yield _case({"gamma": gamma}, check)


def _suite_character_order(rng, trials, bounds):
    for gamma in small_matrices(6, 24):
        def check(g=gamma):
            return all(character_order(g, j) == character_order_bruteforce(g, j) for j in (1, 2))

        yield _case({"gamma": gamma}, check)


def _suite_b2_coset_sum(rng, trials, bounds):
    for gamma in small_matrices(6, 24):
        yield _case({"gamma": gamma}, lambda g=gamma: not b2_lemma_grid_failures(g, 8))


def _suite_action_equivalence(rng, trials, bounds):
    for _ in range(trials):
        gamma = random_matrix(rng, bounds.max_entry, need_c=True)
        x = random_point(rng, bounds.max_den)
        tau = rng.choice(TAU_POOL)
        yield _case(
            {"gamma": gamma, "x": x, "tau": tau},
            lambda g=gamma, x=x, t=tau: cz.zeta0_via_action(g, x, t) == cz.zeta0(g, x, t),
        )


def _suite_cocycle(rng, trials, bounds):
    for _ in range(trials):
        A = random_sl2_from(rng, bounds.max_word_len)
        B = random_sl2_from(rng, bounds.max_word_len)
        x = random_point(rng, bounds.max_den)
        tau = rng.choice(TAU_POOL)
        yield _case(
            {"A": A, "B": B, "x": x, "tau": tau},
            lambda A=A, B=B, x=x, t=tau: cz.cocycle_residual(A, B, x, t) == 0,
        )


def _suite_distribution_relation(rng, trials, bounds):
    grid = rational_grid(6)
    for c in (2, 3, 5):
        for x1, x2 in itertools.product(grid, grid):
            for tau in TAU_POOL:
                x = RationalPoint(x1, x2)
                yield _case(
                    {"c": c, "x": x, "tau": tau},
                    lambda c=c, x=x, t=tau: cz.distribution_sum(cz.z0_base, c, x, t)
                    == cz.z0_base(x, t),
                )


def _rational_case_inputs(gamma: IntMatrix2, max_den: int) -> list[RationalPoint]:
    """Points on a small grid with ``x gamma^{-T} == x`` mod ``Z^2``."""
    return [
        RationalPoint(x1, x2)
        for x1, x2 in itertools.product(rational_grid(max_den), repeat=2)
        if (gamma.apply_inverse_transpose((x1, x2)) - (x1, x2)).is_integral()
    ]


def _suite_rational_case(rng, trials, bounds):
    done = 0
    while done < trials:
        gamma = random_sl2_from(rng, bounds.max_word_len)
        if gamma.c == 0 or abs(gamma.trace) <= 2:
            continue
        xs = _rational_case_inputs(gamma, 6)
        x = rng.choice(xs)
        done += 1

        def check(g=gamma, x=x):
            tau = cz.fixed_point_tau(g)
            alpha = g.a + g.c * tau
            same_sign = quad_sign(alpha) == quad_sign(alpha.conjugate())
            value = cz.zeta0_rational_case(g, x)
            return same_sign and cz.zeta0(g, x, tau) == value and cz.zeta0(g, x, tau.conjugate()) == value

        yield _case({"gamma": gamma, "x": x}, check)


def _suite_hayes(rng, trials, bounds):
    for gamma, m in hayes_cases(bounds.c_max or 12):
        for tau in TAU_POOL + (negative_branch_tau(gamma),):
            yield _case(
                {"gamma": gamma, "m": m, "tau": tau},
                lambda g=gamma, m=m, t=tau: verify_hayes(g, m, t) == 0,
            )


def _suite_prop41(rng, trials, bounds):
    for gamma in sl2_sweep(bounds.c_max or 10):
        ell = content(gamma)
        for m in range(0, 3 * ell + 1):
            for tau in (TAU_POOL[0], TAU_POOL[4], negative_branch_tau(gamma)):
                yield _case(
                    {"gamma": gamma, "m": m, "tau": tau},
                    lambda g=gamma, m=m, t=tau: verify_prop41(g, m, t) == 0,
                )


def check_ehrhart_triangle(gamma: IntMatrix2, ell: int) -> bool:
    """Fit ``ell^{-1} T_gamma`` and compare with box-enumerated counts and the McMullen constants."""
    P = scaled_T(gamma, ell)
    Q = ehrhart_fit(P)
    d = Q.period
    if any(Q.evaluate(m) != lattice_enumerator(P, m, bruteforce=True) for m in range(6 * d + 1)):
        return False
    if Q.evaluate(0) != 1:
        return False
    if ell == content(gamma):
        c = gamma.c
        if face_indices(P) != (ell, 1, 1):
            return False
        if Q.minimal_period(1) != 1 or Q.minimal_period(2) != 1:
            return False
        if not divides(Q.minimal_period(0), ell):
            return False
        if any(Q.coefficient(2, r) != Fraction(c, 2 * ell * ell) for r in range(d)):
            return False
        if any(Q.coefficient(1, r) != Fraction(ell + 2, 2 * ell) for r in range(d)):
            return False
    return True


def check_pick(gamma: IntMatrix2) -> bool:
    T = triangle_T(gamma)
    n = count_lattice(T)
    Q = ehrhart_fit(T)
    return (
        n.boundary == content(gamma) + 2
        and n.total == T.area + Fraction(n.boundary, 2) + 1
        and Q.period == 1
        and Q.coeffs[0] == (1, Fraction(n.boundary, 2), T.area)
    )


def _suite_ehrhart_oracle(rng, trials, bounds):
    for gamma in sl2_sweep(bounds.c_max or 12):
        ell = content(gamma)
        yield _case({"gamma": gamma, "ell": ell}, lambda g=gamma, l=ell: check_ehrhart_triangle(g, l))
        yield _case({"gamma": gamma, "ell": 1}, lambda g=gamma: check_pick(g))
    for gamma, m in hayes_cases(bounds.c_max or 12):
        x1 = Fraction(m, content(gamma))
        yield _case({"gamma": gamma, "x1": x1}, lambda g=gamma, x1=x1: counting_lemmas_hold(g, x1))


def counting_lemmas_hold(gamma: IntMatrix2, x1: Fraction) -> bool:
    n = count_lattice(triangle_T_x(gamma, x1))
    edges = edge_counts(gamma, x1)
    return (
        interior_floor_sum(gamma, x1) == n.interior
        and interior_closed_form(gamma, x1) == n.interior
        and edges == edge_counts_bruteforce(gamma, x1)
        and edges.total == n.boundary
    )


def _suite_theorem3(rng, trials, bounds):
    for g, gp in theorem3_pairs(bounds.c_max or 10):
        ell = math.gcd(content(g), content(gp))
        yield _case(
            {"gamma": g, "gamma_prime": gp, "m_max": 3 * ell},
            lambda g=g, gp=gp, l=ell: all(theorem3_residual(g, gp, m) == 0 for m in range(3 * l + 1)),
        )


SUITES: dict[str, Callable] = {
    "bernoulli-raabe": _suite_bernoulli_raabe,
    "coset": _suite_coset,
    "character-order": _suite_character_order,
    "b2-coset-sum": _suite_b2_coset_sum,
    "action-equivalence": _suite_action_equivalence,
    "cocycle": _suite_cocycle,
    "distribution-relation": _suite_distribution_relation,
    "rational-case": _suite_rational_case,
    "hayes": _suite_hayes,
    "prop41": _suite_prop41,
    "ehrhart-oracle": _suite_ehrhart_oracle,
    "theorem3": _suite_theorem3,
}


def run_suite(name: str, trials: int = 200, seed: int = 0, bounds: Bounds | None = None) -> SuiteReport:
    """Run a named suite; random suites draw ``trials`` cases, sweep suites run in full."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    bounds = bounds or Bounds()
    rng = random.Random(seed)
    start = time.perf_counter()
    attempted = passed = 0
    counterexample = None
    for inputs, check in SUITES[name](rng, trials, bounds):
        attempted += 1
        try:
            ok = check()
        except Exception as exc:  # a crash is a counterexample, not an abort
            ok = False
            inputs = {**inputs, "error": f"{type(exc).__name__}: {exc}"}
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = inputs
    return SuiteReport(name, attempted, passed, counterexample, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def emit_table(kind: str, params: dict) -> dict:
    """Rows of exact strings under ``{"kind", "params", "rows"}``."""
    if kind == "ehrhart":
        gamma = params["gamma"]
        ell = params.get("ell") or content(gamma)
        P = scaled_T(gamma, ell)
        Q = ehrhart_fit(P)
        rows = [
            {
                "m": str(m),
                "count": str(lattice_enumerator(P, m)),
                "g0": render_rational(Q.coefficient(0, m)),
                "g1": render_rational(Q.coefficient(1, m)),
                "g2": render_rational(Q.coefficient(2, m)),
            }
            for m in range(params.get("m_max", 3 * Q.period) + 1)
        ]
        shown = {"gamma": gamma, "ell": ell, "m_max": params.get("m_max", 3 * Q.period)}
    elif kind == "theorem3":
        g, gp = params["gamma"], params["gamma_prime"]
        ell = math.gcd(content(g), content(gp))
        m_max = params.get("m_max", 3 * ell)
        prod = g @ gp
        fits = [ehrhart_fit(scaled_T(h, ell)) for h in (prod, g, gp)]
        rows = []
        for m in range(m_max + 1):
            g0 = [f.coefficient(0, m) for f in fits]
            rows.append(
                {
                    "m": str(m),
                    "g0_product": render_rational(g0[0]),
                    "g0_gamma": render_rational(g0[1]),
                    "g0_gamma_prime": render_rational(g0[2]),
                    "frac_m_over_ell": render_rational(frac(Fraction(m, ell))),
                    "residual": render_rational(theorem3_residual(g, gp, m)),
                }
            )
        shown = {"gamma": g, "gamma_prime": gp, "ell": ell, "m_max": m_max}
    elif kind == "hayes":
        gamma = params["gamma"]
        tau = params.get("tau") or TAU_POOL[0]
        ms = params["m"] if isinstance(params.get("m"), (list, tuple)) else [params.get("m", 1)]
        rows = []
        for m in ms:
            lhs, rhs = hayes_sides(gamma, m, tau)
            rows.append(
                {"m": str(m), "lhs": render_quad(lhs), "rhs": render_quad(rhs), "residual": render_quad(lhs - rhs)}
            )
        shown = {"gamma": gamma, "m": ms if len(ms) > 1 else ms[0], "tau": tau}
    else:
        raise ValueError(f"unknown table kind {kind!r}; expected theorem3, ehrhart or hayes")
    return {"kind": kind, "params": {k: _render_param(v) for k, v in shown.items()}, "rows": rows}


def _render_param(v):
    if isinstance(v, list):
        return [_render(u) for u in v]
    return _render(v)


__all__ = [
    "TAU_POOL",
    "TAU_POOL_TEXT",
    "Bounds",
    "SuiteReport",
    "SUITES",
    "hayes_sides",
    "verify_hayes",
    "prop41_sides",
    "verify_prop41",
    "hayes_cases",
    "theorem3_pairs",
    "rational_grid",
    "small_matrices",
    "b2_lemma_grid_failures",
    "check_ehrhart_triangle",
    "check_pick",
    "counting_lemmas_hold",
    "negative_branch_tau",
    "run_suite",
    "emit_table",
    "dedekind_rademacher",
]
