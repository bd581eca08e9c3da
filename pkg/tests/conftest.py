from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from wittmod.poly import Poly
from wittmod.witt import D, WittElement, t

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=10)
nonzero_rationals = rationals.filter(bool)


def cvecs(n: int):
    return st.tuples(*[rationals] * n)


def indices(n: int, radius: int = 3):
    return st.tuples(*[st.integers(-radius, radius)] * n)


def exponents(n: int, max_degree: int = 3):
    return st.tuples(*[st.integers(0, max_degree)] * n).filter(lambda e: sum(e) <= max_degree)


@st.composite
def polys(draw, n: int, max_degree: int = 3, max_terms: int = 3):
    terms = draw(st.dictionaries(exponents(n, max_degree), nonzero_rationals, max_size=max_terms))
    return Poly(n, terms)


@st.composite
def witt_elements(draw, n: int, max_terms: int = 3, torus: bool = True):
    x = WittElement.zero(n)
    for _ in range(draw(st.integers(0, max_terms))):
        r = draw(indices(n))
        if torus and draw(st.booleans()):
            x = x + t(r, draw(nonzero_rationals))
        else:
            x = x + D(draw(cvecs(n)), r)
    return x


def F(x) -> Fraction:
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
