import sys
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from bhcocycle.harness import TAU_POOL
from bhcocycle.lattice import GENERATORS, IntMatrix2, RationalPoint

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def rationals(max_den=30, max_abs=100):
    return st.builds(
        Fraction,
        st.integers(-max_abs * max_den, max_abs * max_den),
        st.integers(1, max_den),
    )


def points(max_den=30):
    return st.builds(RationalPoint, rationals(max_den, 5), rationals(max_den, 5))


def sl2_words(max_len=12):
    def product(word):
        g = IntMatrix2.identity()
        for i in word:
            g = g @ GENERATORS[i]
        return g

    return st.lists(st.integers(0, 3), min_size=1, max_size=max_len).map(product)


def nonsingular(max_entry=12):
    e = st.integers(-max_entry, max_entry)
    return st.tuples(e, e, e, e).filter(lambda t: t[0] * t[3] - t[1] * t[2] != 0).map(
        lambda t: IntMatrix2(*t)
    )


taus = st.sampled_from(TAU_POOL)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
