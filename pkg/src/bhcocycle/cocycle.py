"""The cocycle at s = 0, its base distribution, and the monoid action on distributions.

The period vector ``omega`` enters only through ``tau = omega2/omega1``.
Every function here is invariant under ``omega -> alpha*omega`` (any real
``alpha != 0``), so ``tau`` carries all the information.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .dedekind import dedekind_rademacher
from .lattice import IntMatrix2, RationalPoint, coset_reps
from .scalars import (
    QuadraticReal,
    as_fraction,
    bernoulli_bar1,
    bernoulli_bar2,
    indicator_int,
    quad_mobius,
    quad_sign,
    sign,
)

Evaluator = Callable[[RationalPoint, QuadraticReal], QuadraticReal]


class HypothesisError(ValueError):
    """An input violates a theorem's hypotheses; ``code`` names which one."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def _point(x) -> RationalPoint:
    return x if isinstance(x, RationalPoint) else RationalPoint.of(x[0], x[1])


def _check_tau(tau: QuadraticReal) -> QuadraticReal:
    if not isinstance(tau, QuadraticReal) or tau.irr == 0:
        raise ValueError(f"tau must be an irrational quadratic number, got {tau}")
    return tau


def _zero(tau: QuadraticReal) -> QuadraticReal:
    return QuadraticReal(Fraction(0), Fraction(0), tau.disc)


def zeta0(gamma: IntMatrix2, x, tau: QuadraticReal) -> QuadraticReal:
    """Closed form of the cocycle at ``s = 0`` evaluated at ``(x, tau)``."""
    _check_tau(tau)
    x1, x2 = _point(x)
    a, c = gamma.a, gamma.c
    if c == 0:
        return _zero(tau)
    g = math.gcd(a, c)
    alpha = a + c * tau
    value = Fraction(g * g, 2 * c) / alpha * bernoulli_bar2((c * x1 - a * x2) / g)
    value += alpha * Fraction(1, 2 * c) * bernoulli_bar2(x2)
    value += sign(c) * dedekind_rademacher(-a, c, (x1, x2))
    if indicator_int(x1) and indicator_int(x2):
        value -= Fraction(sign(c) * quad_sign(alpha), 4)
    return value


def z0_base(x, tau: QuadraticReal) -> QuadraticReal:
    """The base distribution: the cocycle at the inversion ``[[0, -1], [1, 0]]``."""
    _check_tau(tau)
    x1, x2 = _point(x)
    value = bernoulli_bar2(x1) / (2 * tau) + tau * Fraction(1, 2) * bernoulli_bar2(x2)
    value += bernoulli_bar1(x1) * bernoulli_bar1(x2)
    if indicator_int(x1) and indicator_int(x2):
        value -= Fraction(quad_sign(tau), 4)
    return value


def act(gamma: IntMatrix2, nu: Evaluator, x, tau: QuadraticReal) -> QuadraticReal:
    """``(gamma . nu)(x, tau) = sgn(det) * sum_mu nu((x + mu) gamma^{-T}, gamma^T tau)``."""
    _check_tau(tau)
    x = _point(x)
    new_tau = quad_mobius(gamma, tau)
    total = _zero(tau)
    for mu in coset_reps(gamma):
        total = total + nu(gamma.apply_inverse_transpose(x + mu), new_tau)
    return total if gamma.det > 0 else -total


def zeta0_via_action(gamma: IntMatrix2, x, tau: QuadraticReal) -> QuadraticReal:
    """The cocycle as ``[[1, a], [0, c]]`` acting on the base distribution."""
    if gamma.c == 0:
        raise ValueError("the action route needs c != 0")
    sigma = IntMatrix2(1, gamma.a, 0, gamma.c)
    return act(sigma, z0_base, x, tau)


def fixed_point_tau(gamma: IntMatrix2) -> QuadraticReal:
    """Root of ``c t^2 + (a - d) t - b = 0`` with positive irrational part.

    These are the ratios ``tau`` with ``gamma^T omega = alpha * omega``.
    """
    a, b, c, d = gamma.entries()
    if c == 0:
        raise HypothesisError("c-zero", "lower-left entry is zero")
    disc = (a - d) ** 2 + 4 * b * c
    if disc <= 0:
        raise HypothesisError("not-hyperbolic", f"discriminant {disc} is not positive")
    root = QuadraticReal(Fraction(d - a, 2 * c), Fraction(1, 2 * abs(c)), disc)
    if root.irr == 0:
        raise HypothesisError("not-hyperbolic", f"discriminant {disc} is a perfect square")
    return root


def check_rational_case(gamma: IntMatrix2, x) -> RationalPoint:
    x = _point(x)
    if not gamma.is_sl2():
        raise HypothesisError("not-sl2", f"det = {gamma.det}")
    if gamma.c == 0:
        raise HypothesisError("c-zero", "lower-left entry is zero")
    if abs(gamma.trace) <= 2:
        raise HypothesisError("not-hyperbolic", f"|trace| = {abs(gamma.trace)}")
    if not (gamma.apply_inverse_transpose(x) - x).is_integral():
        raise HypothesisError("congruence-failed", f"x gamma^-T is not congruent to x = {x}")
    return x


def zeta0_rational_case(gamma: IntMatrix2, x) -> Fraction:
    """Rational value of the cocycle at a hyperbolic ``gamma`` fixing ``x`` mod ``Z^2``.

    ``tau`` is the fixed ratio of ``gamma^T``, so ``alpha = a + c*tau`` is a
    unit with ``alpha * alpha' = 1``; its sign is the same for both roots.
    """
    x1, x2 = check_rational_case(gamma, x)
    a, _, c, d = gamma.entries()
    value = Fraction(a + d, 2 * c) * bernoulli_bar2(x2) + sign(c) * dedekind_rademacher(-a, c, (x1, x2))
    if indicator_int(x1) and indicator_int(x2):
        alpha = a + c * fixed_point_tau(gamma)
        value -= Fraction(sign(c) * quad_sign(alpha), 4)
    return value


def cocycle_residual(A: IntMatrix2, B: IntMatrix2, x, tau: QuadraticReal) -> QuadraticReal:
    """``zeta0(AB) - zeta0(A) - A . zeta0(B)`` at ``(x, tau)``; zero when the cocycle law holds."""
    rhs_b = act(A, lambda y, t: zeta0(B, y, t), x, tau)
    return zeta0(A @ B, x, tau) - zeta0(A, x, tau) - rhs_b


def b2_coset_sum(gamma: IntMatrix2, x, j: int) -> Fraction:
    """``sum_{mu} B2(<x + mu, row_j(gamma^{-1})>)`` over the coset representatives."""
    if j not in (1, 2):
        raise ValueError(f"j must be 1 or 2, got {j}")
    x = _point(x)
    return sum(
        (bernoulli_bar2(gamma.apply_inverse_transpose(x + mu)[j - 1]) for mu in coset_reps(gamma)),
        Fraction(0),
    )


def b2_coset_sum_closed(gamma: IntMatrix2, x, j: int) -> Fraction:
    """``(g^2/|det|) * B2((det/g) * <x, row_j(gamma^{-1})>)``, ``g = gcd(b, d)`` or ``gcd(a, c)``."""
    if j == 1:
        g = math.gcd(gamma.b, gamma.d)
    elif j == 2:
        g = math.gcd(gamma.a, gamma.c)
    else:
        raise ValueError(f"j must be 1 or 2, got {j}")
    det = gamma.det
    inner = _point(x)
    y = gamma.apply_inverse_transpose(inner)[j - 1]
    return Fraction(g * g, abs(det)) * bernoulli_bar2(Fraction(det, g) * y)


def distribution_sum(nu: Evaluator, c: int, x, tau: QuadraticReal) -> QuadraticReal:
    """``sum_{y : c y = x mod Z^2} nu(y, tau)`` over the ``c^2`` preimages."""
    if c <= 0:
        raise ValueError("c must be a positive integer")
    x1, x2 = _point(x)
    total = _zero(tau)
    for k1 in range(c):
        for k2 in range(c):
            total = total + nu(RationalPoint((x1 + k1) / c, (x2 + k2) / c), tau)
    return total


__all__ = [
    "HypothesisError",
    "zeta0",
    "z0_base",
    "act",
    "zeta0_via_action",
    "fixed_point_tau",
    "zeta0_rational_case",
    "cocycle_residual",
    "b2_coset_sum",
    "b2_coset_sum_closed",
    "distribution_sum",
    "as_fraction",
]
