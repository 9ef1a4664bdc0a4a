"""Exact scalars: rationals, elements of real quadratic fields, periodic Bernoulli functions.

Rationals are plain :class:`fractions.Fraction` values.  Elements of
``Q(sqrt(D))`` are :class:`QuadraticReal`; signs are decided with integer
comparisons only, never floating point.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


def as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, QuadraticReal):
        return q.to_fraction()
    if isinstance(q, str):
        return parse_rational(q)
    raise TypeError(f"cannot convert {type(q).__name__} to an exact rational")


def frac(q: RationalLike) -> Fraction:
    """Fractional part ``q - floor(q)``, always in ``[0, 1)``."""
    q = as_fraction(q)
    return q - math.floor(q)


def angle_bracket(q: RationalLike) -> Fraction:
    """Representative of ``q`` mod 1 in the half-open interval ``(0, 1]``."""
    r = frac(q)
    return r if r else Fraction(1)


def is_integer(q: RationalLike) -> bool:
    return as_fraction(q).denominator == 1


def indicator_int(q: RationalLike) -> int:
    return 1 if is_integer(q) else 0


def bernoulli_bar1(q: RationalLike) -> Fraction:
    """Sawtooth: ``{q} - 1/2`` off the integers, ``0`` on them."""
    r = frac(q)
    if r == 0:
        return Fraction(0)
    return r - Fraction(1, 2)


def bernoulli_bar2(q: RationalLike) -> Fraction:
    r = frac(q)
    return r * r - r + Fraction(1, 6)


def sign(n) -> int:
    return (n > 0) - (n < 0)


@functools.lru_cache(maxsize=4096)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(k, core)`` with ``n == k**2 * core`` and ``core`` square-free."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    k, core = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            core *= p
        p += 1 if p == 2 else 2
    core *= m
    return k, core


@dataclass(frozen=True, eq=False)
class QuadraticReal:
    """The real number ``rat + irr*sqrt(disc)``.

    ``disc`` is stored square-free.  Pure rationals carry ``irr == 0`` and
    combine with any field; ``disc`` is ``None`` when no field was ever
    attached.
    """

    rat: Fraction
    irr: Fraction = Fraction(0)
    disc: int | None = None

    def __post_init__(self):
        rat = as_fraction(self.rat)
        irr = as_fraction(self.irr)
        disc = self.disc
        if disc is not None:
            if disc <= 0:
                raise ValueError(f"discriminant must be positive, got {disc}")
            k, core = squarefree_decompose(disc)
            if core == 1:
                # sqrt(disc) is the integer k
                rat, irr, core = rat + irr * k, Fraction(0), None
            else:
                irr *= k
            disc = core
        elif irr != 0:
            raise ValueError("an irrational part needs a discriminant")
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "irr", irr)
        object.__setattr__(self, "disc", disc)

    @classmethod
    def sqrt(cls, n: int) -> "QuadraticReal":
        return cls(Fraction(0), Fraction(1), n)

    @property
    def is_rational(self) -> bool:
        return self.irr == 0

    def to_fraction(self) -> Fraction:
        if self.irr != 0:
            raise ValueError(f"{self} is irrational")
        return self.rat

    def _coerce(self, other) -> "QuadraticReal":
        if isinstance(other, QuadraticReal):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticReal(Fraction(other), Fraction(0), self.disc)
        return NotImplemented

    def _field(self, other: "QuadraticReal") -> int | None:
        if self.irr == 0 and other.irr == 0:
            return self.disc if self.disc is not None else other.disc
        if self.irr == 0:
            return other.disc
        if other.irr == 0:
            return self.disc
        if self.disc != other.disc:
            raise ValueError(
                f"cannot combine elements of Q(sqrt({self.disc})) and Q(sqrt({other.disc}))"
            )
        return self.disc

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticReal(self.rat + other.rat, self.irr + other.irr, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.rat, -self.irr, self.disc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        disc = self._field(other)
        rat = self.rat * other.rat
        if self.irr and other.irr:
            rat += self.irr * other.irr * disc
        irr = self.rat * other.irr + self.irr * other.rat
        return QuadraticReal(rat, irr, disc)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticReal":
        return QuadraticReal(self.rat, -self.irr, self.disc)

    def norm(self) -> Fraction:
        if self.irr == 0:
            return self.rat * self.rat
        return self.rat * self.rat - self.irr * self.irr * self.disc

    def inverse(self) -> "QuadraticReal":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in a quadratic field")
        conj = self.conjugate()
        return QuadraticReal(conj.rat / n, conj.irr / n, self.disc)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def sign(self) -> int:
        return quad_sign(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        if not isinstance(other, QuadraticReal):
            return NotImplemented
        if self.rat != other.rat or self.irr != other.irr:
            return False
        return self.irr == 0 or self.disc == other.disc

    def __hash__(self):
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr, self.disc))

    def __lt__(self, other):
        return quad_sign(self - other) < 0

    def __le__(self, other):
        return quad_sign(self - other) <= 0

    def __gt__(self, other):
        return quad_sign(self - other) > 0

    def __ge__(self, other):
        return quad_sign(self - other) >= 0

    def __float__(self):
        return float(self.rat) + (float(self.irr) * math.sqrt(self.disc) if self.irr else 0.0)

    def __str__(self):
        return render_quad(self)

    def __repr__(self):
        return f"QuadraticReal({render_quad(self)!r})"


def quad_sign(t: QuadraticReal) -> int:
    """Exact sign of ``rat + irr*sqrt(D)``."""
    p, q = t.rat, t.irr
    sp, sq = sign(p), sign(q)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: compare p^2 against q^2 D (never equal, D is not a square)
    return sp if p * p > q * q * t.disc else sq


def quad_mobius(gamma, t: QuadraticReal) -> QuadraticReal:
    """``(b + d t) / (a + c t)``: the ratio coordinate after ``omega -> gamma^T omega``."""
    t = t if isinstance(t, QuadraticReal) else QuadraticReal(as_fraction(t))
    if t.irr == 0:
        raise ValueError(f"mobius action needs an irrational ratio, got {t}")
    if gamma.a == 0 and gamma.c == 0:
        raise ValueError("first column of the matrix is zero")
    return (gamma.b + gamma.d * t) / (gamma.a + gamma.c * t)


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def render_rational(q: RationalLike) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError(f"not an exact rational: {s!r}")
    if re.fullmatch(r".*/0+", s):
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(s)


def render_quad(t: QuadraticReal) -> str:
    if t.irr == 0:
        return render_rational(t.rat)
    coeff = t.irr
    if abs(coeff) == 1:
        irr = f"sqrt({t.disc})"
    else:
        irr = f"{render_rational(abs(coeff))}*sqrt({t.disc})"
    if t.rat == 0:
        return ("-" if coeff < 0 else "") + irr
    return render_rational(t.rat) + ("-" if coeff < 0 else "+") + irr


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(
    rf"\s*([+-]?)\s*(?:({_RAT})\s*\*\s*sqrt\(\s*(\d+)\s*\)|sqrt\(\s*(\d+)\s*\)|({_RAT}))\s*"
)


def parse_quad(s: str) -> QuadraticReal:
    """Parse ``"p/q+r/s*sqrt(D)"`` and its abbreviations (``"sqrt(3)"``, ``"26-15*sqrt(3)"``)."""
    pos = 0
    rat = Fraction(0)
    irr = Fraction(0)
    disc = None
    s = s.strip()
    if not s:
        raise ValueError("empty quadratic literal")
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse quadratic literal {s!r} at position {pos}")
        sgn, coeff, d1, d2, plain = m.groups()
        if not sgn and not first:
            raise ValueError(f"missing operator in {s!r}")
        neg = -1 if sgn == "-" else 1
        if plain is not None:
            rat += neg * parse_rational(plain)
        else:
            d = int(d1 if d1 is not None else d2)
            c = parse_rational(coeff) if coeff is not None else Fraction(1)
            k, core = squarefree_decompose(d)
            if core == 1:
                rat += neg * c * k
            else:
                if disc is not None and disc != core:
                    raise ValueError(f"mixed square roots in {s!r}")
                disc = core
                irr += neg * c * k
        pos = m.end()
        first = False
    return QuadraticReal(rat, irr, disc)
