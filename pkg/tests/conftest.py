import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from superalg import QQi

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def rationals(bound=5):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=6)


@st.composite
def gaussian(draw, bound=5):
    return QQi(draw(rationals(bound)), draw(rationals(bound)))


def bubble_sign(seq):
    """Sign of the permutation sorting ``seq``, by counting bubble-sort swaps."""
    seq = list(seq)
    swaps = 0
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                swaps += 1
    return -1 if swaps % 2 else 1


F = Fraction


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
