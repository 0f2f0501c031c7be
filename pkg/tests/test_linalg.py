from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leonard.errors import CtxMismatch, OrderMismatch, RepeatedEigenvalue, Singular
from leonard.field import Q, make_field
from leonard.linalg import (
    DensePoly,
    Matrix,
    TridiagonalClass,
    commutator,
    mat_arith,
    mat_inverse,
    poly_eval,
    primitive_idempotents,
    product_of_shifts,
    solve,
    split_lower,
    split_upper,
    tridiagonal_class,
)

from conftest import FIELD_DESCRIPTORS


def M(rows, ctx=Q):
    return Matrix(ctx, rows)


def test_mat_arith_examples():
    X = M([[1, 2], [3, 4]])
    I = Matrix.identity(Q, 2)
    assert commutator(I, X).is_zero()
    assert mat_arith("trace", Matrix.diag(Q, [1, 2, 3])) == Q(6)
    A = split_lower(Q, [0, 1])
    As = split_upper(Q, [0, 1], [1])
    assert mat_arith("mul", A, As) == M([[0, 0], [0, 2]])
    assert mat_arith("commutator", X, I).is_zero()
    assert mat_arith("transpose", X) == M([[1, 3], [2, 4]])
    assert mat_arith("scalar_mul", X, Q(2)) == M([[2, 4], [6, 8]])
    with pytest.raises(OrderMismatch):
        X + Matrix.identity(Q, 3)
    with pytest.raises(CtxMismatch):
        X + Matrix.identity(make_field("GF:7"), 2)


def test_split_product_example():
    # the two split matrices for d=1, theta=theta*=(0,1), phi_1=1, multiplied in the spec's order
    lower = M([[0, 0], [1, 1]])
    upper = M([[0, 1], [0, 1]])
    assert lower == split_lower(Q, [0, 1])
    assert upper == split_upper(Q, [0, 1], [1])
    assert upper * lower == M([[1, 1], [1, 1]])
    assert lower * upper == M([[0, 0], [0, 2]])


def test_inverse_examples():
    assert mat_inverse(Matrix.identity(Q, 3)) == Matrix.identity(Q, 3)
    assert mat_inverse(Matrix.diag(Q, [2, 3])) == Matrix.diag(Q, ["1/2", "1/3"])
    assert mat_inverse(M([[1, 1], [0, 1]])) == M([[1, -1], [0, 1]])
    with pytest.raises(Singular):
        mat_inverse(M([[1, 2], [2, 4]]))


def test_poly_eval_examples():
    theta0 = Q(5)
    assert poly_eval(DensePoly(Q, [-theta0, 1]), theta0) == 0
    assert poly_eval(DensePoly(Q, [1, 0, 1]), M([[0, 1], [1, 0]])) == M([[2, 0], [0, 2]])
    tau2 = DensePoly.from_roots(Q, [0, 1])
    assert poly_eval(tau2, Q(2)) == Q(2)
    assert DensePoly(Q, [0, 0]).coeffs == () and DensePoly(Q, []).degree == -1
    with pytest.raises(CtxMismatch):
        poly_eval(tau2, Matrix.identity(make_field("GF:7"), 2))


def test_idempotent_examples():
    E = primitive_idempotents(Matrix.diag(Q, [3, 5, 7]), [3, 5, 7])
    for i, Ei in enumerate(E):
        assert Ei == Matrix.diag(Q, [1 if j == i else 0 for j in range(3)])
    E0, E1 = primitive_idempotents(M([[0, 0], [1, 1]]), [0, 1])
    assert E0 == M([[1, 0], [-1, 0]])
    assert E1 == M([[0, 0], [1, 1]])
    with pytest.raises(RepeatedEigenvalue):
        primitive_idempotents(Matrix.diag(Q, [1, 1]), [1, 1])


def test_tridiagonal_class():
    assert tridiagonal_class(Matrix.diag(Q, [1, 2, 3])) is TridiagonalClass.Tridiagonal
    assert tridiagonal_class(split_lower(Q, [0, 1, 2])) is TridiagonalClass.Tridiagonal
    assert tridiagonal_class(M([[1, 1, 0], [1, 1, 1], [0, 1, 1]])) is TridiagonalClass.IrreducibleTridiagonal
    assert tridiagonal_class(M([[1, 0, 1], [0, 1, 0], [0, 0, 1]])) is TridiagonalClass.NotTridiagonal
    # order 1: vacuously irreducible
    assert tridiagonal_class(M([[4]])) is TridiagonalClass.IrreducibleTridiagonal


def test_json_roundtrip():
    gf4 = make_field("GF:2:1,1,1")
    X = Matrix(gf4, [["[0,1]", 1], [0, "[1,1]"]])
    doc = X.to_json()
    assert doc["order"] == 2
    assert Matrix.from_json(gf4, doc) == X
    with pytest.raises(OrderMismatch):
        Matrix.from_json(gf4, {"order": 3, "rows": doc["rows"]})


def _distinct(ctx, n, draw):
    if ctx.is_finite():
        pool = list(ctx.elements())
        return draw(st.permutations(pool))[:n]
    nums = draw(st.lists(st.integers(-20, 20), min_size=n, max_size=n, unique=True))
    den = draw(st.integers(1, 9))
    return [ctx(Fraction(v, den)) for v in nums]


@pytest.mark.parametrize("desc", ["Q", "GF:7", "GF:13", "GF:2:1,1,1"])
def test_multiplicity_free_properties(desc):
    ctx = make_field(desc)
    cap = 4 if ctx.is_finite() and len(list(ctx.elements())) < 5 else 5

    @given(st.data())
    def check(data):
        n = data.draw(st.integers(1, cap))
        eigs = _distinct(ctx, n, data.draw)
        # conjugate a split lower bidiagonal by a random unipotent upper matrix
        A = split_lower(ctx, eigs)
        entries = [data.draw(st.integers(-3, 3)) for _ in range(n * n)]
        U = Matrix(ctx, [[1 if i == j else (entries[i * n + j] if j > i else 0) for j in range(n)] for i in range(n)])
        X = U * A * U.inverse()
        E = primitive_idempotents(X, eigs)
        eye = Matrix.identity(ctx, n)
        assert sum(E[1:], E[0]) == eye
        assert sum((Ei.scale(t) for Ei, t in zip(E[1:], eigs[1:])), E[0].scale(eigs[0])) == X
        assert product_of_shifts(X, eigs).is_zero()
        for r in range(4):
            assert sum((Ei.scale(t ** r) for Ei, t in zip(E[1:], eigs[1:])), E[0].scale(eigs[0] ** r)) == X ** r

    check()


@given(st.integers(1, 5), st.lists(st.integers(-6, 6), min_size=25, max_size=25))
def test_inverse_roundtrip(n, vals):
    X = M([[Fraction(vals[i * 5 + j], 1 + (i + j) % 3) for j in range(n)] for i in range(n)])
    if X.rank() < n:
        with pytest.raises(Singular):
            X.inverse()
        return
    Y = X.inverse()
    eye = Matrix.identity(Q, n)
    assert X * Y == eye and Y * X == eye
    b = [Q(v) for v in vals[:n]]
    x = solve(X, b)
    assert X.apply(x) == b


@pytest.mark.parametrize("desc", FIELD_DESCRIPTORS)
def test_trace_is_linear_and_cyclic(desc):
    ctx = make_field(desc)
    X = Matrix(ctx, [[1, 2, 0], [0, 3, 1], [5, 0, 1]])
    Y = Matrix(ctx, [[0, 1, 1], [2, 0, 0], [1, 1, 4]])
    assert (X * Y).trace() == (Y * X).trace()
    assert (X + Y).trace() == X.trace() + Y.trace()
    assert commutator(X, Y).trace() == 0
