import math
from fractions import Fraction as F

import pytest

from bhcocycle.dedekind import dedekind_rademacher
from bhcocycle.harness import rational_grid


@pytest.mark.parametrize(
    "a, c, x, expected",
    [
        (0, 1, (F(1, 4), F(1, 4)), F(1, 16)),
        (1, 3, (0, 0), F(1, 18)),
        (-26, -15, (F(1, 5), 0), F(29, 180)),
        (-1, 2, (F(1, 2), 0), F(0)),
    ],
)
def test_examples(a, c, x, expected):
    assert dedekind_rademacher(a, c, x) == expected


def test_zero_modulus_rejected():
    with pytest.raises(ValueError):
        dedekind_rademacher(1, 0, (0, 0))


def test_classical_value_s1k():
    # s(1, k) = (k - 1)(k - 2) / (12 k)
    for k in range(1, 60):
        assert dedekind_rademacher(1, k, (0, 0)) == F((k - 1) * (k - 2), 12 * k)


def test_classical_reciprocity():
    # s(a, c) + s(c, a) = (a/c + c/a + 1/(ac))/12 - 1/4 for coprime positive a, c
    for a in range(1, 30):
        for c in range(1, 30):
            if math.gcd(a, c) != 1:
                continue
            lhs = dedekind_rademacher(a, c, (0, 0)) + dedekind_rademacher(c, a, (0, 0))
            rhs = (F(a, c) + F(c, a) + F(1, a * c)) / 12 - F(1, 4)
            assert lhs == rhs


def _grid():
    g = rational_grid(12)
    return [(x1, x2) for x1 in g[::5] for x2 in g[::7]]


def test_periodicity_in_x():
    for c in [c for c in range(-12, 13) if c]:
        for a in (-7, -1, 0, 2, 5):
            for x1, x2 in _grid():
                base = dedekind_rademacher(a, c, (x1, x2))
                assert dedekind_rademacher(a, c, (x1 + 1, x2 - 2)) == base


def test_residue_system_independence_and_shift():
    for c in (-9, -4, 3, 7, 11):
        n = abs(c)
        shifted = [m + 5 * n * ((-1) ** m) for m in range(n)]
        for a in (-5, 1, 4):
            for x in _grid()[::3]:
                base = dedekind_rademacher(a, c, x)
                assert dedekind_rademacher(a, c, x, residues=shifted) == base
                # shifting a by c moves the first argument by x2 + m
                x1, x2 = x
                assert dedekind_rademacher(a + c, c, (x1 - x2, x2)) == base
                assert dedekind_rademacher(a + c, c, (x1, 0)) == dedekind_rademacher(a, c, (x1, 0))
