"""Integer 2x2 matrices, contents, and the finite quotient Z^2 / Z^2 gamma^T."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .scalars import as_fraction, frac, parse_rational, render_rational, sign


class RationalPoint(NamedTuple):
    """A row vector ``(x1, x2)`` in ``Q^2``."""

    x1: Fraction
    x2: Fraction

    @classmethod
    def of(cls, x1, x2) -> "RationalPoint":
        return cls(as_fraction(x1), as_fraction(x2))

    def reduce(self) -> "RationalPoint":
        """Representative in ``[0,1)^2`` of the class modulo ``Z^2``."""
        return RationalPoint(frac(self.x1), frac(self.x2))

    def is_integral(self) -> bool:
        return self.x1.denominator == 1 and self.x2.denominator == 1

    def __add__(self, other):
        return RationalPoint(self.x1 + other[0], self.x2 + other[1])

    def __sub__(self, other):
        return RationalPoint(self.x1 - other[0], self.x2 - other[1])

    def __neg__(self):
        return RationalPoint(-self.x1, -self.x2)

    def scale(self, k) -> "RationalPoint":
        return RationalPoint(self.x1 * k, self.x2 * k)

    def __str__(self):
        return render_point(self)


@dataclass(frozen=True)
class IntMatrix2:
    """``[[a, b], [c, d]]`` with integer entries and nonzero determinant."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError(f"singular matrix {self.entries()}")

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_sl2(self) -> bool:
        return self.det == 1

    def transpose(self) -> "IntMatrix2":
        return IntMatrix2(self.a, self.c, self.b, self.d)

    def scale(self, k: int) -> "IntMatrix2":
        return IntMatrix2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse_rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """Rows of ``gamma^{-1}`` as exact rationals."""
        det = self.det
        return (
            (Fraction(self.d, det), Fraction(-self.b, det)),
            (Fraction(-self.c, det), Fraction(self.a, det)),
        )

    def apply_inverse_transpose(self, x) -> RationalPoint:
        """``x gamma^{-T}`` for a row vector ``x``; its j-th entry is ``<x, row_j(gamma^{-1})>``."""
        det = self.det
        x1, x2 = as_fraction(x[0]), as_fraction(x[1])
        return RationalPoint((x1 * self.d - x2 * self.b) / det, (x2 * self.a - x1 * self.c) / det)

    def __str__(self):
        return render_matrix(self)


# A few named generators of SL2(Z).
S = IntMatrix2(0, -1, 1, 0)
S_INV = IntMatrix2(0, 1, -1, 0)
T = IntMatrix2(1, 1, 0, 1)
T_INV = IntMatrix2(1, -1, 0, 1)
GENERATORS = (S, S_INV, T, T_INV)


def content(gamma: IntMatrix2) -> int:
    """``gcd(c, a - 1)`` for ``gamma`` in SL2(Z).

    Returns 0 for the unipotent matrices ``[[1, b], [0, 1]]``, the one case
    where both arguments vanish.
    """
    if not gamma.is_sl2():
        raise ValueError(f"content is defined on SL2(Z); det{gamma.entries()} = {gamma.det}")
    return math.gcd(gamma.c, gamma.a - 1)


def _xgcd(x: int, y: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``u*x + v*y == g == gcd(x, y) >= 0``."""
    old_r, r = x, y
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def hermite_basis(gamma: IntMatrix2) -> tuple[int, int, int]:
    """Row-style HNF ``[[h11, h12], [0, h22]]`` of the lattice spanned by the rows of ``gamma^T``.

    ``h11, h22 > 0``, ``0 <= h12 < h22`` and ``h11 * h22 == |det gamma|``.
    """
    # rows of gamma^T are the columns (a, c) and (b, d) of gamma
    a, b, c, d = gamma.entries()
    g, u, v = _xgcd(a, b)
    h12 = u * c + v * d
    h22 = abs(gamma.det // g)
    return g, h12 % h22, h22


def coset_reps(gamma: IntMatrix2) -> list[RationalPoint]:
    """Lexicographically smallest non-negative representatives of ``Z^2 / Z^2 gamma^T``."""
    h11, _, h22 = hermite_basis(gamma)
    return [RationalPoint(Fraction(i), Fraction(j)) for i in range(h11) for j in range(h22)]


def coset_key(gamma: IntMatrix2, mu) -> RationalPoint:
    """Invariant of the class of ``mu``: ``mu gamma^{-T}`` reduced mod ``Z^2``."""
    return gamma.apply_inverse_transpose(mu).reduce()


def coset_reps_bruteforce(gamma: IntMatrix2) -> list[RationalPoint]:
    """Deduplicate the box ``[0, |det|)^2`` by the class invariant (test oracle)."""
    n = abs(gamma.det)
    a, b, c, d = gamma.entries()
    seen = {}
    for i in range(n):
        for j in range(n):
            # numerators over det of the coordinates of (i, j) gamma^{-T}
            key = ((i * d - j * b) % n, (j * a - i * c) % n)
            if key not in seen:
                seen[key] = RationalPoint(Fraction(i), Fraction(j))
    return list(seen.values())


def character_order(gamma: IntMatrix2, j: int) -> int:
    """Order of ``mu -> e(<mu, row_j(gamma^{-1})>)`` on ``Z^2 / Z^2 gamma^T``."""
    if j == 1:
        return abs(gamma.det) // math.gcd(gamma.b, gamma.d)
    if j == 2:
        return abs(gamma.det) // math.gcd(gamma.a, gamma.c)
    raise ValueError(f"j must be 1 or 2, got {j}")


def character_order_bruteforce(gamma: IntMatrix2, j: int) -> int:
    """Smallest ``m >= 1`` with ``chi_j^m`` trivial on every coset representative."""
    if j not in (1, 2):
        raise ValueError(f"j must be 1 or 2, got {j}")
    det = gamma.det
    # numerator of <mu, row_j(gamma^{-1})> over det
    if j == 1:
        nums = [int(mu.x1) * gamma.d - int(mu.x2) * gamma.b for mu in coset_reps(gamma)]
    else:
        nums = [int(mu.x2) * gamma.a - int(mu.x1) * gamma.c for mu in coset_reps(gamma)]
    m = 1
    while any((m * k) % det for k in nums):
        m += 1
    return m


def random_sl2(seed: int, max_word_len: int) -> IntMatrix2:
    """Product of a seeded random word in ``S, S^-1, T, T^-1`` of length ``1..max_word_len``."""
    if max_word_len < 1:
        raise ValueError("max_word_len must be at least 1")
    rng = random.Random(seed)
    return random_sl2_from(rng, max_word_len)


def random_sl2_from(rng: random.Random, max_word_len: int) -> IntMatrix2:
    length = rng.randint(1, max_word_len)
    g = IntMatrix2.identity()
    for _ in range(length):
        g = g @ rng.choice(GENERATORS)
    return g


def sl2_with_column(a: int, c: int) -> IntMatrix2:
    """An SL2(Z) matrix with first column ``(a, c)``, ``c > 0`` and ``0 <= d < c`` (``d = 1`` if c = 1)."""
    if c <= 0 or math.gcd(a, c) != 1:
        raise ValueError(f"need c > 0 and gcd(a, c) = 1, got a={a}, c={c}")
    d = pow(a, -1, c) if c > 1 else 1
    b, r = divmod(a * d - 1, c)
    assert r == 0
    return IntMatrix2(a, b, c, d)


def sl2_sweep(c_max: int, c_min: int = 1) -> Iterator[IntMatrix2]:
    """SL2(Z) matrices with ``c_min <= c <= c_max`` and ``1 - c <= a <= c``, one per first column."""
    for c in range(c_min, c_max + 1):
        for a in range(1 - c, c + 1):
            if math.gcd(a, c) == 1:
                yield sl2_with_column(a, c)


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def parse_matrix(s: str) -> IntMatrix2:
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != 4:
        raise ValueError(f"matrix needs four comma-separated integers, got {s!r}")
    try:
        return IntMatrix2(*(int(p) for p in parts))
    except ValueError as exc:
        raise ValueError(f"bad matrix {s!r}: {exc}") from None


def render_matrix(gamma: IntMatrix2) -> str:
    return ",".join(str(e) for e in gamma.entries())


def parse_point(s: str) -> RationalPoint:
    parts = [p.strip() for p in s.split(",")]
    if len(parts) != 2:
        raise ValueError(f"point needs two comma-separated rationals, got {s!r}")
    return RationalPoint(parse_rational(parts[0]), parse_rational(parts[1]))


def render_point(x) -> str:
    return f"{render_rational(x[0])},{render_rational(x[1])}"


def divides(m: int, n: int) -> bool:
    """``m | n`` with the convention that 0 divides only 0."""
    return n == 0 if m == 0 else n % m == 0


__all__ = [
    "IntMatrix2",
    "RationalPoint",
    "GENERATORS",
    "content",
    "hermite_basis",
    "coset_reps",
    "coset_key",
    "coset_reps_bruteforce",
    "character_order",
    "character_order_bruteforce",
    "random_sl2",
    "random_sl2_from",
    "sl2_with_column",
    "sl2_sweep",
    "parse_matrix",
    "render_matrix",
    "parse_point",
    "render_point",
    "divides",
    "sign",
]
