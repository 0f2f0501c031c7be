from dataclasses import replace
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leonard.errors import MethodPrecondition
from leonard.field import Q
from leonard.linalg import Matrix
from leonard.parray import ParameterArray, is_valid
from leonard.recurrence import psi_products
from leonard.system import build_split
from leonard.intersection import (
    IntersectionData,
    METHODS,
    applicable_methods,
    brute_intersection,
    c1_from_a0,
    check_row_sums,
    closed_forms,
    duality_identity_suite,
    recurrence_identity_suite,
    standard_basis_rep,
    tau,
)

from conftest import valid_parrays


def test_matches_independent_fixture(kraw, kraw_fixture):
    r = build_split(kraw)
    RA, RS = standard_basis_rep(r)
    assert [[str(x) for x in row] for row in RA.entries()] == kraw_fixture["A_standard"]
    assert RS == Matrix.diag(Q, kraw.theta_star)
    data = brute_intersection(r)
    assert [str(x) for x in data.a] == kraw_fixture["a"]
    assert [str(x) for x in data.b] == kraw_fixture["b"] == ["-4", "-2"]
    assert [str(x) for x in data.c] == kraw_fixture["c"] == ["1", "2"]
    assert str(sum(data.a, Q.zero)) == kraw_fixture["sum_a"] == kraw_fixture["sum_theta"] == "3"


def test_d0():
    pa = ParameterArray.make(Q, [5], [7], [], [])
    r = build_split(pa)
    assert standard_basis_rep(r)[0] == Matrix(Q, [[5]])
    data = brute_intersection(r)
    assert data.a == (Q(5),) and data.b == () and data.c == ()
    assert applicable_methods(0) == []


def test_cibiform_example(kraw):
    data = closed_forms(kraw, "cibiform")
    assert data.b[0] == Q(-4)
    assert data.c[-1] == Q(2)


def test_method_preconditions():
    pa = ParameterArray.make(Q, [0, 1], [0, 1], [1], [2])
    for m in ("bici", "bcform"):
        with pytest.raises(MethodPrecondition):
            closed_forms(pa, m)
    assert applicable_methods(1) == ["bbcc", "cibiform"]
    assert closed_forms(pa, "bbcc") == brute_intersection(build_split(pa))
    with pytest.raises(ValueError):
        closed_forms(pa, "nope")


def test_all_methods_agree_on_example(kraw):
    brute = brute_intersection(build_split(kraw))
    for m in METHODS:
        assert closed_forms(kraw, m) == brute


def test_recurrence_example(kraw):
    data = brute_intersection(build_split(kraw))
    ts, th = kraw.theta_star, kraw.theta
    lhs = data.ci(1) * ts[0] + data.a[1] * ts[1] + data.bi(1) * ts[2]
    rhs = th[1] * ts[1] + data.a_star[0] * (th[0] - th[1])
    assert lhs == rhs == Q(-3)
    rep = recurrence_identity_suite(build_split(kraw), data)
    assert rep.ok and rep.to_json()["ok"]


def test_duality_examples(kraw, kraw_fixture):
    data = brute_intersection(build_split(kraw))
    th, ts = kraw.theta, kraw.theta_star
    assert th[0] == data.a[0] + data.b[0]
    assert str(kraw.varphi[1]) == kraw_fixture["varphi2_from_c1"]
    assert (data.c[0] - data.a[0] + th[1]) * (ts[2] - ts[0]) == kraw.varphi[1]
    assert (th[0] - data.a[0]) / (th[0] - th[1]) == (ts[0] - data.a_star[0]) / (ts[0] - ts[1]) == Q(4)
    rep = duality_identity_suite(kraw, data)
    assert rep.ok, rep.failures()
    assert {"bici", "bcform", "cerzo", "v2two", "thdual"} <= set(rep.results)


def test_json_roundtrip(kraw):
    data = brute_intersection(build_split(kraw))
    assert IntersectionData.from_json(Q, data.to_json()) == data


def test_suites_flag_tampering(kraw):
    data = brute_intersection(build_split(kraw))
    bad = replace(data, b=(data.b[0] + 1,) + data.b[1:])
    assert check_row_sums(bad, kraw.theta[0], kraw.theta_star[0])
    assert not duality_identity_suite(kraw, bad).ok
    assert not recurrence_identity_suite(kraw, bad).ok
    # a consistent shift in b and a together keeps row sums but still breaks the recurrences
    shifted = replace(data, b=(data.b[0] + 1,) + data.b[1:], a=(data.a[0] - 1,) + data.a[1:])
    assert not check_row_sums(shifted, kraw.theta[0], kraw.theta_star[0])
    assert not recurrence_identity_suite(kraw, shifted).ok


# --- properties -------------------------------------------------------------------

@given(valid_parrays(max_d=5))
def test_oracle_equivalence(pa):
    brute = brute_intersection(build_split(pa))
    for m in applicable_methods(pa.d):
        assert closed_forms(pa, m) == brute
    assert not check_row_sums(brute, pa.theta[0], pa.theta_star[0])
    assert recurrence_identity_suite(build_split(pa), brute).ok
    assert duality_identity_suite(pa, brute).ok


@given(valid_parrays(max_d=6))
def test_eigenvalue_ratio_duality(pa):
    th, ts, d = pa.theta, pa.theta_star, pa.d
    for i, j, r, s in product(range(d + 1), repeat=4):
        if i + j == r + s and r != s:
            assert (th[i] - th[j]) / (th[r] - th[s]) == (ts[i] - ts[j]) / (ts[r] - ts[s])


@given(valid_parrays(min_d=2, max_d=6))
def test_tau_ratio_bridge(pa):
    ts, d = pa.theta_star, pa.d
    psi = psi_products(ts)
    assert psi == psi_products(pa.theta)
    for i in range(1, d):
        lhs = tau(ts, i, ts[i]) / tau(ts, i + 1, ts[i + 1])
        rhs = psi[i - 1] * (ts[i] - ts[0]) / ((ts[i + 1] - ts[i]) * (ts[i + 1] - ts[i - 1]))
        assert lhs == rhs


def _affine(pa, al, be, al_s, be_s):
    return ParameterArray(
        pa.ctx, pa.d,
        tuple(al * t + be for t in pa.theta),
        tuple(al_s * t + be_s for t in pa.theta_star),
        tuple(al * al_s * x for x in pa.varphi),
        tuple(al * al_s * x for x in pa.phi),
    )


@given(valid_parrays(min_d=2, max_d=5))
def test_graph_normalization(pa):
    data = brute_intersection(build_split(pa))
    al, al_s = data.c[0].inverse(), data.c_star[0].inverse()
    norm = _affine(pa, al, -al * data.a[0], al_s, -al_s * data.a_star[0])
    assert is_valid(norm)
    nd = brute_intersection(build_split(norm))
    assert nd.a[0] == 0 and nd.a_star[0] == 0
    assert nd.c[0] == 1 and nd.c_star[0] == 1
    assert c1_from_a0(norm.theta, norm.theta_star, nd.a[0]) == 1
    assert c1_from_a0(norm.theta_star, norm.theta, nd.a_star[0]) == 1
    # b, c scale and a shifts exactly as the affine change predicts
    assert nd.b == tuple(al * x for x in data.b)
    assert nd.a == tuple(al * x - al * data.a[0] for x in data.a)


@given(valid_parrays(max_d=4), st.integers(0, 5))
def test_tampered_data_detected(pa, k):
    data = brute_intersection(build_split(pa))
    k = k % pa.d
    bad = replace(data, c=tuple(x + 1 if i == k else x for i, x in enumerate(data.c)))
    assert not recurrence_identity_suite(build_split(pa), bad).ok
