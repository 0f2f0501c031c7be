"""Dense exact matrices and univariate polynomials over a Field.

Matrices store raw field payloads internally and hand out FieldElem on
indexing; rows and columns are indexed 0..d.
"""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

from .errors import CtxMismatch, NotAnEigenvalue, OrderMismatch, RepeatedEigenvalue, Singular
from .field import Field, FieldElem, make_field


def _raw(ctx: Field, x):
    return ctx(x).v


class Matrix:
    __slots__ = ("ctx", "n", "rows")

    def __init__(self, ctx: Field, rows):
        """rows: square grid of FieldElem / int / Fraction / str entries."""
        self.ctx = ctx
        self.rows = tuple(tuple(_raw(ctx, x) for x in row) for row in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise OrderMismatch("matrix is not square")

    @classmethod
    def _wrap(cls, ctx: Field, raw_rows) -> "Matrix":
        m = cls.__new__(cls)
        m.ctx = ctx
        m.rows = tuple(tuple(r) for r in raw_rows)
        m.n = len(m.rows)
        return m

    @classmethod
    def identity(cls, ctx: Field, n: int) -> "Matrix":
        z, o = ctx.zero.v, ctx.one.v
        return cls._wrap(ctx, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ctx: Field, n: int) -> "Matrix":
        z = ctx.zero.v
        return cls._wrap(ctx, [[z] * n for _ in range(n)])

    @classmethod
    def diag(cls, ctx: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = ctx.zero.v
        return cls._wrap(ctx, [[_raw(ctx, entries[i]) if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, ctx: Field, cols: Sequence[Sequence[FieldElem]]) -> "Matrix":
        n = len(cols)
        return cls._wrap(ctx, [[_raw(ctx, cols[j][i]) for j in range(n)] for i in range(n)])

    # --- access -------------------------------------------------------------

    def __getitem__(self, ij) -> FieldElem:
        i, j = ij
        return FieldElem(self.ctx, self.rows[i][j])

    def row(self, i: int) -> list[FieldElem]:
        return [FieldElem(self.ctx, x) for x in self.rows[i]]

    def column(self, j: int) -> list[FieldElem]:
        return [FieldElem(self.ctx, r[j]) for r in self.rows]

    def entries(self) -> list[list[FieldElem]]:
        return [self.row(i) for i in range(self.n)]

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("matrix expected")
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
        if other.n != self.n:
            raise OrderMismatch(f"order {self.n} vs {other.n}")

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        add = self.ctx._add
        return Matrix._wrap(self.ctx, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        sub = self.ctx._sub
        return Matrix._wrap(self.ctx, [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.ctx._neg
        return Matrix._wrap(self.ctx, [[neg(x) for x in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = _raw(self.ctx, c)
        mul = self.ctx._mul
        return Matrix._wrap(self.ctx, [[mul(c, x) for x in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            cols = list(zip(*other.rows))
            dot = self.ctx._dot
            return Matrix._wrap(self.ctx, [[dot(r, c) for c in cols] for r in self.rows])
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        return self * other

    def __pow__(self, k: int) -> "Matrix":
        out = Matrix.identity(self.ctx, self.n)
        for _ in range(k):
            out = out * self
        return out

    def apply(self, v: Sequence[FieldElem]) -> list[FieldElem]:
        """Matrix times column vector."""
        raw = [_raw(self.ctx, x) for x in v]
        return [FieldElem(self.ctx, self.ctx._dot(r, raw)) for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.ctx, list(zip(*self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def trace(self) -> FieldElem:
        acc = self.ctx.zero
        for i in range(self.n):
            acc = acc + FieldElem(self.ctx, self.rows[i][i])
        return acc

    def is_zero(self) -> bool:
        z = self.ctx._is_zero
        return all(z(x) for r in self.rows for x in r)

    def nonzero_positions(self) -> list[tuple[int, int]]:
        z = self.ctx._is_zero
        return [(i, j) for i, r in enumerate(self.rows) for j, x in enumerate(r) if not z(x)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (other.ctx is self.ctx or other.ctx == self.ctx) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Matrix(" + "; ".join(" ".join(self.ctx.format(x) for x in r) for r in self.rows) + ")"

    # --- elimination --------------------------------------------------------

    def _echelon(self, rows: list[list]) -> tuple[list[list], list[int]]:
        """Reduced row echelon form in place; returns rows and pivot columns."""
        ctx = self.ctx
        pivots = []
        r = 0
        ncols = len(rows[0]) if rows else 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(rows)) if not ctx._is_zero(rows[i][c])), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = ctx._inv(rows[r][c])
            rows[r] = [ctx._mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and not ctx._is_zero(rows[i][c]):
                    f = rows[i][c]
                    rows[i] = [ctx._sub(x, ctx._mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return rows, pivots

    def rank(self) -> int:
        return rank_of_rows(self.ctx, [list(r) for r in self.rows])

    def inverse(self) -> "Matrix":
        n = self.n
        z, o = self.ctx.zero.v, self.ctx.one.v
        aug = [list(r) + [o if i == j else z for j in range(n)] for i, r in enumerate(self.rows)]
        aug, piv = self._echelon(aug)
        if piv[:n] != list(range(n)):
            raise Singular("matrix is singular")
        return Matrix._wrap(self.ctx, [r[n:] for r in aug])

    def to_json(self) -> dict:
        return {"order": self.n, "rows": [[self.ctx.format(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, ctx: Field, doc: dict) -> "Matrix":
        m = cls(ctx, [[ctx.parse(str(x)) for x in r] for r in doc["rows"]])
        if "order" in doc and doc["order"] != m.n:
            raise OrderMismatch(f"declared order {doc['order']} but {m.n} rows")
        return m


def rank_of_rows(ctx: Field, rows: list[list]) -> int:
    """Rank of a (not necessarily square) list of raw payload rows."""
    if not rows:
        return 0
    m = Matrix.__new__(Matrix)
    m.ctx = ctx
    _, piv = m._echelon([list(r) for r in rows])
    return len(piv)


def vector_rank(ctx: Field, vectors: Iterable[Sequence[FieldElem]]) -> int:
    return rank_of_rows(ctx, [[_raw(ctx, x) for x in v] for v in vectors])


def solve(M: Matrix, b: Sequence[FieldElem]) -> list[FieldElem]:
    """Solve M x = b for nonsingular M."""
    ctx = M.ctx
    aug = [list(r) + [_raw(ctx, bi)] for r, bi in zip(M.rows, b)]
    aug, piv = M._echelon(aug)
    if piv != list(range(M.n)):
        raise Singular("matrix is singular")
    return [FieldElem(ctx, r[-1]) for r in aug]


def commutator(X: Matrix, Y: Matrix) -> Matrix:
    return X * Y - Y * X


def mat_arith(op: str, X, Y=None):
    if op == "add":
        return X + Y
    if op == "sub":
        return X - Y
    if op == "mul":
        return X * Y
    if op == "scalar_mul":
        return X.scale(Y)
    if op == "transpose":
        return X.transpose()
    if op == "trace":
        return X.trace()
    if op == "commutator":
        return commutator(X, Y)
    raise ValueError(f"unknown matrix op {op!r}")


def mat_inverse(M: Matrix) -> Matrix:
    return M.inverse()


class DensePoly:
    """Univariate polynomial; coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Field, coeffs: Sequence):
        cs = [ctx(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_roots(cls, ctx: Field, roots: Sequence[FieldElem]) -> "DensePoly":
        """The monic polynomial prod (lambda - r)."""
        cs = [ctx.one]
        for r in roots:
            r = ctx(r)
            nxt = [ctx.zero] * (len(cs) + 1)
            for k, c in enumerate(cs):
                nxt[k + 1] = nxt[k + 1] + c
                nxt[k] = nxt[k] - r * c
            cs = nxt
        return cls(ctx, cs)

    def __call__(self, at):
        return poly_eval(self, at)

    def __eq__(self, other) -> bool:
        return isinstance(other, DensePoly) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"DensePoly({[str(c) for c in self.coeffs]})"


def poly_eval(f: DensePoly, at):
    """Horner evaluation at a scalar or a square matrix."""
    if isinstance(at, Matrix):
        if at.ctx != f.ctx:
            raise CtxMismatch(f"{f.ctx} vs {at.ctx}")
        out = Matrix.zeros(f.ctx, at.n)
        eye = Matrix.identity(f.ctx, at.n)
        for c in reversed(f.coeffs):
            out = out * at + eye.scale(c)
        return out
    x = f.ctx(at)
    acc = f.ctx.zero
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def product_of_shifts(M: Matrix, roots: Sequence[FieldElem]) -> Matrix:
    """prod_k (M - r_k I), evaluated factor by factor."""
    eye = Matrix.identity(M.ctx, M.n)
    out = eye
    for r in roots:
        out = out * (M - eye.scale(r))
    return out


def primitive_idempotents(M: Matrix, eigs: Sequence[FieldElem], check: bool = True) -> list[Matrix]:
    """E_i = prod_{j != i} (M - eig_j I)/(eig_i - eig_j), then validated."""
    ctx = M.ctx
    eigs = [ctx(t) for t in eigs]
    if len(eigs) != M.n:
        raise OrderMismatch(f"{len(eigs)} eigenvalues for order {M.n}")
    if len(set(eigs)) != len(eigs):
        raise RepeatedEigenvalue("eigenvalue list has repeats")
    eye = Matrix.identity(ctx, M.n)
    shifted = [M - eye.scale(t) for t in eigs]
    E = []
    for i, ti in enumerate(eigs):
        num = eye
        den = ctx.one
        for j, tj in enumerate(eigs):
            if j != i:
                num = num * shifted[j]
                den = den * (ti - tj)
        E.append(num.scale(den.inverse()))
    if check:
        bad = idempotent_failures(M, eigs, E)
        if bad:
            raise NotAnEigenvalue("; ".join(bad))
    return E


def idempotent_failures(M: Matrix, eigs: Sequence[FieldElem], E: Sequence[Matrix]) -> list[str]:
    """Check E_iE_j = delta_ij E_i, sum E_i = I, M E_i = eig_i E_i, rank 1, trace 1."""
    ctx = M.ctx
    eye = Matrix.identity(ctx, M.n)
    bad = []
    total = Matrix.zeros(ctx, M.n)
    for i, Ei in enumerate(E):
        total = total + Ei
        if M * Ei != Ei.scale(eigs[i]):
            bad.append(f"M E_{i} != theta_{i} E_{i}")
        if Ei.rank() != 1:
            bad.append(f"rank E_{i} != 1")
        if Ei.trace() != ctx.one:
            bad.append(f"tr E_{i} != 1")
        for j, Ej in enumerate(E):
            prod = Ei * Ej
            if (i == j and prod != Ei) or (i != j and not prod.is_zero()):
                bad.append(f"E_{i} E_{j} wrong")
    if total != eye:
        bad.append("sum of E_i != I")
    return bad


class TridiagonalClass(enum.Enum):
    NotTridiagonal = "NotTridiagonal"
    Tridiagonal = "Tridiagonal"
    IrreducibleTridiagonal = "IrreducibleTridiagonal"


def tridiagonal_class(M: Matrix) -> TridiagonalClass:
    z = M.ctx._is_zero
    for i, j in M.nonzero_positions():
        if abs(i - j) > 1:
            return TridiagonalClass.NotTridiagonal
    n = M.n
    if all(not z(M.rows[i + 1][i]) and not z(M.rows[i][i + 1]) for i in range(n - 1)):
        return TridiagonalClass.IrreducibleTridiagonal
    return TridiagonalClass.Tridiagonal


def split_lower(ctx: Field, diag: Sequence) -> Matrix:
    """Lower bidiagonal: given diagonal, subdiagonal all 1."""
    n = len(diag)
    rows = [[ctx.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = ctx(diag[i])
        if i:
            rows[i][i - 1] = ctx.one
    return Matrix(ctx, rows)


def split_upper(ctx: Field, diag: Sequence, superdiag: Sequence) -> Matrix:
    """Upper bidiagonal: given diagonal, superdiagonal entries (i-1, i) from the list."""
    n = len(diag)
    rows = [[ctx.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = ctx(diag[i])
        if i:
            rows[i - 1][i] = ctx(superdiag[i - 1])
    return Matrix(ctx, rows)


__all__ = [
    "Matrix", "DensePoly", "poly_eval", "primitive_idempotents", "tridiagonal_class",
    "TridiagonalClass", "commutator", "mat_arith", "mat_inverse", "solve", "vector_rank",
    "split_lower", "split_upper", "product_of_shifts", "make_field",
]
