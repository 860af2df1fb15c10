import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from transgression.algebra import Element
from transgression.lie import bundled

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def sl2():
    return bundled("sl2")


@pytest.fixture(scope="session")
def gl2():
    return bundled("gl2")


@pytest.fixture(scope="session")
def sl3():
    return bundled("sl3")


def embed(ctx, p):
    """Purely even element moved into another context with the same generator positions."""
    return Element(ctx, {(e, ()): c for (e, _), c in p.terms.items()})


def elements(ctx, bound, max_terms=4):
    """Strategy: small random rational combinations of words of level <= bound."""
    words = ctx.basis_window(bound)
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.lists(st.tuples(st.sampled_from(words), coeff), min_size=0,
                    max_size=max_terms).map(
        lambda ts: sum((ctx.word(w, c) for w, c in ts), ctx.zero()))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
