"""Two-variable Dedekind-Rademacher sums, summed directly."""
from __future__ import annotations

from fractions import Fraction

from .scalars import as_fraction, bernoulli_bar1


def dedekind_rademacher(a: int, c: int, x, residues=None) -> Fraction:
    """``S(a, c; x) = sum_{m mod c} B1(x1 + (x2 + m) a/c) * B1((x2 + m)/c)``.

    ``m`` runs over ``0 .. |c|-1`` unless another complete residue system
    is passed in ``residues``.
    """
    if c == 0:
        raise ValueError("Dedekind-Rademacher sum needs c != 0")
    x1, x2 = as_fraction(x[0]), as_fraction(x[1])
    if residues is None:
        residues = range(abs(c))
    total = Fraction(0)
    for m in residues:
        y = x2 + m
        total += bernoulli_bar1(x1 + y * a / c) * bernoulli_bar1(y / c)
    return total
