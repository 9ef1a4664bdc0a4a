"""The ten acceptance criteria, each checked exactly (tolerance 0).

Every criterion prints one ``PASS``/``FAIL`` line.  Run directly with
``python tests/test_acceptance.py`` or through pytest, which repeats the
lines in its terminal summary.
"""
import functools
import json
import sys
import time
from fractions import Fraction as F

from bhcocycle.cli import run
from bhcocycle.ehrhart import ehrhart_fit, scaled_T, theorem3_residual
from bhcocycle.harness import (
    TAU_POOL,
    Bounds,
    counting_lemmas_hold,
    hayes_cases,
    hayes_sides,
    negative_branch_tau,
    rational_grid,
    run_suite,
    small_matrices,
    verify_hayes,
)
from bhcocycle.lattice import IntMatrix2, content, sl2_sweep
from bhcocycle.scalars import QuadraticReal, quad_sign

RESULTS: list[str] = []
SEED = 20240601
G2 = IntMatrix2(1, 0, 2, 1)


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def inner():
            try:
                detail = fn()
            except BaseException as exc:
                line = f"FAIL criterion {number:>2} {title}: {type(exc).__name__}: {exc}"
                RESULTS.append(line)
                print(line)
                raise
            line = f"PASS criterion {number:>2} {title}" + (f" ({detail})" if detail else "")
            RESULTS.append(line)
            print(line)

        return inner

    return wrap


def _suite(name, **kw):
    report = run_suite(name, **kw)
    assert report.ok, f"{name}: {report.passed}/{report.attempted}, counterexample {report.counterexample}"
    return report


@criterion(1, "witness value -9/20")
def test_criterion_01_witness():
    start = time.perf_counter()
    code, out = run(["eval-zeta0", "--gamma", "26,-45,-15,26", "--x", "1/5,0", "--tau", "sqrt(3)"])
    assert code == 0 and json.loads(out)["value"] == "-9/20"
    code, out = run(["eval-zeta0-rational", "--gamma", "26,-45,-15,26", "--x", "1/5,0"])
    assert code == 0 and json.loads(out)["value"] == "-9/20"
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"took {elapsed:.2f} s"
    return f"{elapsed:.3f} s"


@criterion(2, "cocycle law on 200 random pairs")
def test_criterion_02_cocycle():
    start = time.perf_counter()
    report = _suite("cocycle", trials=200, seed=SEED, bounds=Bounds(max_word_len=12, max_den=30))
    elapsed = time.perf_counter() - start
    assert report.attempted == 200
    assert elapsed < 30.0, f"took {elapsed:.1f} s"
    return f"{report.passed}/200, {elapsed:.1f} s"


@criterion(3, "action equivalence on 200 random matrices")
def test_criterion_03_action():
    report = _suite("action-equivalence", trials=200, seed=SEED, bounds=Bounds(max_entry=50))
    assert report.attempted == 200
    return f"{report.passed}/200"


@criterion(4, "B2 coset-sum and character-order lemmas, exhaustive")
def test_criterion_04_lemmas():
    expected = sum(1 for _ in small_matrices(6, 24))
    b2 = _suite("b2-coset-sum")
    chars = _suite("character-order")
    assert b2.attempted == chars.attempted == expected
    return f"{expected} matrices, 2 characters, {len(rational_grid(8)) ** 2} grid points each"


@criterion(5, "distribution relation for the base distribution")
def test_criterion_05_distribution():
    report = _suite("distribution-relation")
    return f"{report.passed} cases"


@criterion(6, "Hayes-type identity on the c <= 12 sweep")
def test_criterion_06_hayes():
    lhs, rhs = hayes_sides(G2, 1, QuadraticReal.sqrt(2))
    assert lhs == rhs == F(1, 4)
    neg = negative_branch_tau(G2)
    assert quad_sign(G2.a + G2.c * neg) < 0 and verify_hayes(G2, 1, neg) == 0
    report = _suite("hayes", bounds=Bounds(c_max=12))
    assert report.attempted == len(list(hayes_cases(12))) * (len(TAU_POOL) + 1)
    return f"{report.passed} cases"


@criterion(7, "Ehrhart oracle, Pick and McMullen constants")
def test_criterion_07_ehrhart():
    report = _suite("ehrhart-oracle", bounds=Bounds(c_max=12))
    for gamma in sl2_sweep(12):
        ell = content(gamma)
        Q = ehrhart_fit(scaled_T(gamma, ell))
        assert {Q.coefficient(2, r) for r in range(Q.period)} == {F(gamma.c, 2 * ell * ell)}
        assert {Q.coefficient(1, r) for r in range(Q.period)} == {F(ell + 2, 2 * ell)}
    return f"{report.passed} cases"


@criterion(8, "G0 relation for products")
def test_criterion_08_theorem3():
    product, single = (ehrhart_fit(scaled_T(g, 2)).coefficient(0, 1) for g in (G2 @ G2, G2))
    assert (product, single) == (1, F(3, 4))
    assert product == single + single + F(1, 2) - 1
    assert all(theorem3_residual(G2, G2, m) == 0 for m in range(7))
    report = _suite("theorem3", bounds=Bounds(c_max=10))
    return f"{report.passed} pairs"


@criterion(9, "zeta0 differences versus G0")
def test_criterion_09_prop41():
    mats = list(sl2_sweep(10))
    assert any(content(g) == 1 for g in mats)
    assert any(content(g) > 1 for g in mats)
    report = _suite("prop41", bounds=Bounds(c_max=10))
    return f"{report.passed} cases incl. content 1 and content | m"


@criterion(10, "counting lemmas against brute force")
def test_criterion_10_counting():
    cases = list(hayes_cases(12))
    bad = [(g, m) for g, m in cases if not counting_lemmas_hold(g, F(m, content(g)))]
    assert not bad, f"first failure {bad[0]}"
    return f"{len(cases)} cases"


ALL = [
    test_criterion_01_witness,
    test_criterion_02_cocycle,
    test_criterion_03_action,
    test_criterion_04_lemmas,
    test_criterion_05_distribution,
    test_criterion_06_hayes,
    test_criterion_07_ehrhart,
    test_criterion_08_theorem3,
    test_criterion_09_prop41,
    test_criterion_10_counting,
]


if __name__ == "__main__":
    failed = 0
    for fn in ALL:
        try:
            fn()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
