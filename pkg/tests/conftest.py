import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from leonard.corpus import GF4, load_corpus
from leonard.field import Q, make_field
from leonard.errors import LeonardError
from leonard.parray import ParameterArray, complete_from_phi1
from leonard.recurrence import BETA2, BETA_M2, GENERIC, basis_values

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

FIELD_DESCRIPTORS = ("Q", "GF:2", "GF:7", "GF:13", GF4, "GF:3:1,0,1")


def elements(ctx):
    """Hypothesis strategy for elements of ctx."""
    if ctx.is_finite():
        return st.sampled_from(list(ctx.elements()))
    return st.fractions(max_denominator=50).filter(lambda f: abs(f.numerator) < 10**6).map(ctx)


@pytest.fixture(scope="session")
def kraw():
    return ParameterArray.make(Q, [0, 1, 2], [0, 1, 2], [-4, -4], [-2, -2])


@pytest.fixture(scope="session")
def kraw_fixture():
    return json.loads((FIXTURES / "krawtchouk_d2.json").read_text())


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(FIXTURES / "acceptance_corpus.json")


@pytest.fixture(scope="session")
def gf4():
    return make_field(GF4)


@st.composite
def recurrent_pair(draw, ctx, d):
    """theta, theta* sharing one closed-form case (hence one beta)."""
    case = draw(st.sampled_from([GENERIC, BETA2, BETA_M2]))
    q = None
    if case == GENERIC:
        pool = [x for x in (range(2, 7) if not ctx.is_finite() else range(2, ctx.characteristic() - 1))]
        q = ctx(draw(st.sampled_from(pool)))
        if draw(st.booleans()):
            q = q.inverse()
    seqs = []
    for _ in range(2):
        alphas = [ctx(draw(st.integers(-6, 6))) for _ in range(3)]
        seqs.append([sum((a * b for a, b in zip(alphas, basis_values(case, ctx, i, q))), ctx.zero) for i in range(d + 1)])
    assume(all(len(set(t)) == d + 1 for t in seqs))
    return seqs


@st.composite
def valid_parrays(draw, fields=("Q", "GF:13", "GF:101"), min_d=1, max_d=5):
    ctx = make_field(draw(st.sampled_from(fields)))
    d = draw(st.integers(min_d, max_d))
    theta, theta_star = draw(recurrent_pair(ctx, d))
    phi1 = ctx(draw(st.integers(-9, 9).filter(bool)))
    try:
        return complete_from_phi1(phi1, theta, theta_star)
    except LeonardError:
        assume(False)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
