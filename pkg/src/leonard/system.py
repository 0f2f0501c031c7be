"""Matrix realizations of Leonard systems and the checks that run on them.

A realization is always built in the split basis: A lower bidiagonal with
diagonal theta and subdiagonal 1, A* upper bidiagonal with diagonal theta* and
superdiagonal varphi. Other bases are reached through change-of-basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (
    CrossCheckFailed,
    InvalidParameterArray,
    NotLeonard,
    PatternViolation,
    PreconditionD,
    TDNonzero,
)
from .field import Field, FieldElem
from .linalg import (
    Matrix,
    TridiagonalClass,
    commutator,
    idempotent_failures,
    primitive_idempotents,
    split_lower,
    split_upper,
    tridiagonal_class,
    vector_rank,
)
from .parray import D4Element, ParameterArray, validate, vartheta_of
from .recurrence import P_eval, detect_beta, fit_gamma_rho


@dataclass(frozen=True)
class Realization:
    ctx: Field
    d: int
    A: Matrix
    A_star: Matrix
    E: tuple
    E_star: tuple
    theta: tuple
    theta_star: tuple

    def to_json(self) -> dict:
        return {
            "field": self.ctx.descriptor(),
            "d": self.d,
            "theta": [str(x) for x in self.theta],
            "theta_star": [str(x) for x in self.theta_star],
            "A": self.A.to_json(),
            "A_star": self.A_star.to_json(),
            "idempotents": {
                "E": [e.to_json() for e in self.E],
                "E_star": [e.to_json() for e in self.E_star],
            },
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Realization":
        from .field import make_field

        ctx = make_field(doc["field"])
        A = Matrix.from_json(ctx, doc["A"])
        As = Matrix.from_json(ctx, doc["A_star"])
        th = tuple(ctx.parse(str(x)) for x in doc["theta"])
        ts = tuple(ctx.parse(str(x)) for x in doc["theta_star"])
        E = tuple(Matrix.from_json(ctx, m) for m in doc["idempotents"]["E"])
        Es = tuple(Matrix.from_json(ctx, m) for m in doc["idempotents"]["E_star"])
        return cls(ctx, len(th) - 1, A, As, E, Es, th, ts)


def realize(A: Matrix, A_star: Matrix, theta: Sequence, theta_star: Sequence) -> Realization:
    """Attach the product-formula idempotents to a pair of matrices (no validation)."""
    ctx = A.ctx
    th = tuple(ctx(x) for x in theta)
    ts = tuple(ctx(x) for x in theta_star)
    E = tuple(primitive_idempotents(A, th, check=False))
    Es = tuple(primitive_idempotents(A_star, ts, check=False))
    return Realization(ctx, len(th) - 1, A, A_star, E, Es, th, ts)


def split_matrices(pa: ParameterArray) -> tuple[Matrix, Matrix]:
    return split_lower(pa.ctx, pa.theta), split_upper(pa.ctx, pa.theta_star, pa.varphi)


def build_split(pa: ParameterArray) -> Realization:
    rep = validate(pa)
    if not rep.valid:
        raise InvalidParameterArray("; ".join(v.message for v in rep.violations))
    A, As = split_matrices(pa)
    E = tuple(primitive_idempotents(A, pa.theta))
    Es = tuple(primitive_idempotents(As, pa.theta_star))
    return Realization(pa.ctx, pa.d, A, As, E, Es, pa.theta, pa.theta_star)


def transform_realization(real: Realization, g: D4Element | str) -> Realization:
    """Reorder or swap idempotent sequences: Down reverses E, down reverses E*, star swaps."""
    if isinstance(g, str):
        g = D4Element.parse(g)
    r = real
    for gen in g.word:
        if gen == "Down":
            r = Realization(r.ctx, r.d, r.A, r.A_star, r.E[::-1], r.E_star, r.theta[::-1], r.theta_star)
        elif gen == "down":
            r = Realization(r.ctx, r.d, r.A, r.A_star, r.E, r.E_star[::-1], r.theta, r.theta_star[::-1])
        else:
            r = Realization(r.ctx, r.d, r.A_star, r.A, r.E_star, r.E, r.theta_star, r.theta)
    return r


# --- verification --------------------------------------------------------------

@dataclass
class VerificationReport:
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def conditions(self) -> set:
        return {f[0] for f in self.failures}

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [{"condition": c, "witness": list(w), "message": m} for c, w, m in self.failures]}


def _sandwich(E: Sequence[Matrix], M: Matrix) -> list[list[bool]]:
    """nonzero[i][j] = (E_i M E_j != 0)."""
    right = [M * Ej for Ej in E]
    return [[not (Ei * R).is_zero() for R in right] for Ei in E]


def _pattern_failures(nz: list[list[bool]], name: str, label: str) -> list:
    out = []
    n = len(nz)
    for i in range(n):
        for j in range(n):
            gap = abs(i - j)
            if gap > 1 and nz[i][j]:
                out.append((label, (i, j), f"{name.format(i=i, j=j)} should vanish"))
            elif gap == 1 and not nz[i][j]:
                out.append((label, (i, j), f"{name.format(i=i, j=j)} should be nonzero"))
    return out


def verify_leonard(real: Realization) -> VerificationReport:
    """Check conditions (i)-(v) of the Leonard system definition; never raises."""
    fails: list = []
    try:
        for name, seq in (("theta", real.theta), ("theta*", real.theta_star)):
            for i in range(len(seq)):
                for j in range(i + 1, len(seq)):
                    if seq[i] == seq[j]:
                        fails.append(("i", (i, j), f"{name}_{i} = {name}_{j}"))
        for msg in idempotent_failures(real.A, real.theta, real.E):
            fails.append(("ii", (), msg))
        for msg in idempotent_failures(real.A_star, real.theta_star, real.E_star):
            fails.append(("iii", (), msg))
        fails += _pattern_failures(_sandwich(real.E_star, real.A), "E*_{i} A E*_{j}", "iv")
        fails += _pattern_failures(_sandwich(real.E, real.A_star), "E_{i} A* E_{j}", "v")
    except Exception as exc:  # report-based by design
        fails.append(("error", (), f"{type(exc).__name__}: {exc}"))
    return VerificationReport(fails)


def four_conditions(real: Realization) -> tuple[bool, bool, bool, bool]:
    """The lower/upper halves of the two tridiagonal patterns, evaluated separately."""
    def lower(nz):
        n = len(nz)
        return all((not nz[i][j]) if i - j > 1 else nz[i][j] for i in range(n) for j in range(n) if i - j >= 1)

    def upper(nz):
        n = len(nz)
        return all((not nz[i][j]) if j - i > 1 else nz[i][j] for i in range(n) for j in range(n) if j - i >= 1)

    s = _sandwich(real.E_star, real.A)
    t = _sandwich(real.E, real.A_star)
    return lower(s), upper(s), lower(t), upper(t)


# --- diagonal sequences ------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalData:
    a: tuple
    a_star: tuple


def a_from_varphi(pa: ParameterArray) -> tuple[list, list]:
    """Diagonal sequences from the first split sequence."""
    d, th, ts, vp = pa.d, pa.theta, pa.theta_star, pa.varphi
    if d == 0:
        return [th[0]], [ts[0]]
    a = [th[0] + vp[0] / (ts[0] - ts[1])]
    a += [th[i] + vp[i - 1] / (ts[i] - ts[i - 1]) + vp[i] / (ts[i] - ts[i + 1]) for i in range(1, d)]
    a += [th[d] + vp[d - 1] / (ts[d] - ts[d - 1])]
    s = [ts[0] + vp[0] / (th[0] - th[1])]
    s += [ts[i] + vp[i - 1] / (th[i] - th[i - 1]) + vp[i] / (th[i] - th[i + 1]) for i in range(1, d)]
    s += [ts[d] + vp[d - 1] / (th[d] - th[d - 1])]
    return a, s


def a_from_phi(pa: ParameterArray) -> tuple[list, list]:
    """Diagonal sequences from the second split sequence."""
    d, th, ts, ph = pa.d, pa.theta, pa.theta_star, pa.phi
    if d == 0:
        return [th[0]], [ts[0]]
    a = [th[d] + ph[0] / (ts[0] - ts[1])]
    a += [th[d - i] + ph[i - 1] / (ts[i] - ts[i - 1]) + ph[i] / (ts[i] - ts[i + 1]) for i in range(1, d)]
    a += [th[0] + ph[d - 1] / (ts[d] - ts[d - 1])]
    s = [ts[d] + ph[d - 1] / (th[0] - th[1])]
    s += [ts[d - i] + ph[d - i] / (th[i] - th[i - 1]) + ph[d - i - 1] / (th[i] - th[i + 1]) for i in range(1, d)]
    s += [ts[0] + ph[0] / (th[d] - th[d - 1])]
    return a, s


def split_from_diagonal(pa: ParameterArray, a: Sequence, a_star: Sequence) -> list[list]:
    """For each i, the four sum expressions for varphi_i and for phi_i."""
    d, th, ts = pa.d, pa.theta, pa.theta_star
    z = pa.ctx.zero
    out = []
    for i in range(1, d + 1):
        lo = sum((th[h] - a[h] for h in range(i)), z)
        hi = sum((th[h] - a[h] for h in range(i, d + 1)), z)
        lo_s = sum((ts[h] - a_star[h] for h in range(i)), z)
        hi_s = sum((ts[h] - a_star[h] for h in range(i, d + 1)), z)
        vp = [(ts[i] - ts[i - 1]) * lo, (ts[i - 1] - ts[i]) * hi, (th[i] - th[i - 1]) * lo_s, (th[i - 1] - th[i]) * hi_s]
        lo = sum((th[d - h] - a[h] for h in range(i)), z)
        hi = sum((th[d - h] - a[h] for h in range(i, d + 1)), z)
        lo_s = sum((ts[h] - a_star[d - h] for h in range(i)), z)
        hi_s = sum((ts[h] - a_star[d - h] for h in range(i, d + 1)), z)
        ph = [(ts[i] - ts[i - 1]) * lo, (ts[i - 1] - ts[i]) * hi,
              (th[d - i] - th[d - i + 1]) * lo_s, (th[d - i + 1] - th[d - i]) * hi_s]
        out.append((vp, ph))
    return out


def diagonal_sequences(real: Realization, pa: ParameterArray | None = None) -> DiagonalData:
    a = tuple((real.A * Es).trace() for Es in real.E_star)
    a_star = tuple((real.A_star * E).trace() for E in real.E)
    for i, Es in enumerate(real.E_star):
        if Es * real.A * Es != Es.scale(a[i]):
            raise CrossCheckFailed(f"E*_{i} A E*_{i} != a_{i} E*_{i}")
    for i, E in enumerate(real.E):
        if E * real.A_star * E != E.scale(a_star[i]):
            raise CrossCheckFailed(f"E_{i} A* E_{i} != a*_{i} E_{i}")
    z = real.ctx.zero
    if sum(a, z) != sum(real.theta, z) or sum(a_star, z) != sum(real.theta_star, z):
        raise CrossCheckFailed("diagonal sums differ from eigenvalue sums")
    if pa is not None:
        for label, (fa, fs) in (("varphi", a_from_varphi(pa)), ("phi", a_from_phi(pa))):
            if tuple(fa) != a or tuple(fs) != a_star:
                raise CrossCheckFailed(f"diagonal sequences disagree with the {label} formulas")
        for i, (vp, ph) in enumerate(split_from_diagonal(pa, a, a_star), start=1):
            if any(x != pa.varphi[i - 1] for x in vp) or any(x != pa.phi[i - 1] for x in ph):
                raise CrossCheckFailed(f"split value sums disagree at i={i}")
    return DiagonalData(a, a_star)


# --- normalizing idempotents ------------------------------------------------------------

def is_normalizing(real: Realization, which: str = "E_star_0") -> bool:
    """E*_0 normalizing: E_i E*_0 != 0 for all i (dually E*_i E_0 != 0)."""
    if which == "E_star_0":
        target, others, gen = real.E_star[0], real.E, real.A
    elif which == "E_0":
        target, others, gen = real.E[0], real.E_star, real.A_star
    else:
        raise ValueError(f"unknown idempotent {which!r}")
    direct = all(not (F * target).is_zero() for F in others)
    # dimension test: the span of the columns of gen^i target must be everything
    cols = []
    P = target
    for _ in range(real.d + 1):
        cols += [P.column(j) for j in range(P.n)]
        P = gen * P
    dim_full = vector_rank(real.ctx, cols) == real.d + 1
    if direct != dim_full:
        raise CrossCheckFailed("normalizing tests disagree")
    return direct


def products_basis_rank(real: Realization) -> int:
    """Rank of the (d+1)^2 products A^i E*_0 A^j, flattened."""
    n = real.d + 1
    powers = [Matrix.identity(real.ctx, n)]
    for _ in range(real.d):
        powers.append(powers[-1] * real.A)
    vecs = []
    for Pi in powers:
        left = Pi * real.E_star[0]
        for Pj in powers:
            M = left * Pj
            vecs.append([x for row in M.entries() for x in row])
    return vector_rank(real.ctx, vecs)


# --- bases -------------------------------------------------------------------------------

def first_nonzero_column(M: Matrix) -> list[FieldElem]:
    """First nonzero column, scaled so its first nonzero entry is 1."""
    for j in range(M.n):
        col = M.column(j)
        lead = next((x for x in col if not x.is_zero()), None)
        if lead is not None:
            inv = lead.inverse()
            return [x * inv for x in col]
    raise NotLeonard("idempotent is zero")


def shifted_basis(A: Matrix, xi: Sequence[FieldElem], roots: Sequence[FieldElem]) -> list[list[FieldElem]]:
    """u_0 = xi, u_{i+1} = (A - roots_i I) u_i."""
    out = [list(xi)]
    for r in roots[:-1] if roots else []:
        Au = A.apply(out[-1])
        out.append([x - r * y for x, y in zip(Au, out[-1])])
    return out


@dataclass(frozen=True)
class SplitDecomposition:
    xi: tuple
    U_basis: tuple


def split_decomposition(real: Realization) -> SplitDecomposition:
    xi = first_nonzero_column(real.E_star[0])
    U = shifted_basis(real.A, xi, list(real.theta))
    if vector_rank(real.ctx, U) != real.d + 1:
        raise NotLeonard("split vectors do not form a basis")
    return SplitDecomposition(tuple(xi), tuple(tuple(u) for u in U))


def _represent(M: Matrix, basis_cols: Sequence[Sequence[FieldElem]]) -> Matrix:
    S = Matrix.from_columns(M.ctx, basis_cols)
    return S.inverse() * M * S


def extract_parray(real: Realization, check: bool = True) -> ParameterArray:
    """Read varphi off A* in the basis tau_i(A) xi and phi off A* in the basis eta_i(A) xi."""
    if check:
        rep = verify_leonard(real)
        if not rep.ok:
            raise NotLeonard("; ".join(m for _, _, m in rep.failures[:5]))
    d, ctx = real.d, real.ctx
    xi = first_nonzero_column(real.E_star[0])
    out = []
    for order in (list(real.theta), list(real.theta)[::-1]):
        basis = shifted_basis(real.A, xi, order)
        try:
            RA = _represent(real.A, basis)
            RS = _represent(real.A_star, basis)
        except Exception as exc:
            raise NotLeonard(f"split basis singular: {exc}") from None
        if RA != split_lower(ctx, order):
            raise NotLeonard("A is not in split form")
        sup = [RS[i - 1, i] for i in range(1, d + 1)]
        if RS != split_upper(ctx, real.theta_star, sup):
            raise NotLeonard("A* is not upper bidiagonal in the split basis")
        out.append(sup)
    return ParameterArray(ctx, d, real.theta, real.theta_star, out[0], out[1])


# --- dagger -----------------------------------------------------------------------------

@dataclass(frozen=True)
class DaggerConjugator:
    K: Matrix
    basis: tuple
    B: Matrix
    B_star: Matrix
    checks: dict


def dagger_conjugator(real: Realization) -> DaggerConjugator:
    ctx, d = real.ctx, real.d
    basis = [first_nonzero_column(Es) for Es in real.E_star]
    S = Matrix.from_columns(ctx, basis)
    Si = S.inverse()
    B = Si * real.A * S
    Bs = Si * real.A_star * S
    if d >= 1 and tridiagonal_class(B) != TridiagonalClass.IrreducibleTridiagonal:
        raise PatternViolation("A is not irreducible tridiagonal in the E*-eigenbasis")
    diag = [ctx.one]
    for i in range(1, d + 1):
        diag.append(diag[-1] * B[i - 1, i] / B[i, i - 1])
    K = Matrix.diag(ctx, diag)
    Ki = K.inverse()

    def flat(X: Matrix) -> Matrix:
        return Ki * X.transpose() * K

    checks = {
        "B": flat(B) == B,
        "B_star": flat(Bs) == Bs,
        "B_star_diagonal": Bs == Matrix.diag(ctx, real.theta_star),
        "E": all(flat(R) == R for R in (Si * E * S for E in real.E)),
        "E_star": all(flat(R) == R for R in (Si * E * S for E in real.E_star)),
    }
    return DaggerConjugator(K, tuple(tuple(v) for v in basis), B, Bs, checks)


# --- tridiagonal relations --------------------------------------------------------------------

@dataclass(frozen=True)
class TDCoefficients:
    beta: FieldElem
    gamma: FieldElem
    gamma_star: FieldElem
    varrho: FieldElem
    varrho_star: FieldElem


def td_commutators(A: Matrix, As: Matrix, c: TDCoefficients, beta=None) -> tuple[Matrix, Matrix]:
    b = c.beta if beta is None else beta
    AA, SS = A * A, As * As
    AS, SA = A * As, As * A
    inner1 = AA * As - (A * As * A).scale(b) + As * AA - (AS + SA).scale(c.gamma) - As.scale(c.varrho)
    inner2 = SS * A - (As * A * As).scale(b) + A * SS - (SA + AS).scale(c.gamma_star) - A.scale(c.varrho_star)
    return commutator(A, inner1), commutator(As, inner2)


def choose_beta(real: Realization) -> FieldElem:
    ctx = real.ctx
    rc = detect_beta(list(real.theta))
    if rc.constrained:
        other = detect_beta(list(real.theta_star))
        if other.beta != rc.beta:
            raise CrossCheckFailed("beta from theta and theta* differ")
        return rc.beta
    return ctx(2) if ctx.char != 2 else ctx.zero


def td_coefficients(real: Realization) -> TDCoefficients:
    beta = choose_beta(real)
    g, r = fit_gamma_rho(list(real.theta), beta)
    gs, rs = fit_gamma_rho(list(real.theta_star), beta)
    c = TDCoefficients(beta, g, gs, r, rs)
    M1, M2 = td_commutators(real.A, real.A_star, c)
    if not M1.is_zero() or not M2.is_zero():
        raise TDNonzero("tridiagonal relation commutator is nonzero")
    return c


# --- wrap-around ------------------------------------------------------------------------------

def wraparound_sides(real: Realization, pa: ParameterArray | None = None) -> dict:
    d = real.d
    if d < 2:
        raise PreconditionD("wrap-around needs d >= 2")
    pa = pa if pa is not None else extract_parray(real, check=False)
    vt = vartheta_of(pa)
    th, ts = real.theta, real.theta_star
    E, Es, A, As = real.E, real.E_star, real.A, real.A_star
    ctx = real.ctx
    left = Matrix.zeros(ctx, d + 1)
    for i in range(d - 1):
        left = left + (E[d] * As * E[i] * Es[0]).scale(th[i] - th[d - 1])
    right = (E[d] * Es[0]).scale(vt[1] - vt[d])
    left2 = Matrix.zeros(ctx, d + 1)
    for i in range(2, d + 1):
        left2 = left2 + (Es[0] * A * Es[i] * E[d]).scale(ts[1] - ts[i])
    right2 = (Es[0] * E[d]).scale(vt[1] - vt[d])
    return {"primal": (left, right), "dual": (left2, right2)}


def wraparound_check(real: Realization, pa: ParameterArray | None = None) -> bool:
    s = wraparound_sides(real, pa)
    return all(l == r for l, r in s.values())


# --- commutator entries ---------------------------------------------------------------------------

def commutator_matrix(theta, theta_star, varphi, beta, gamma, varrho) -> Matrix:
    ctx = theta[0].ctx
    A = split_lower(ctx, theta)
    As = split_upper(ctx, theta_star, varphi)
    inner = A * A * As - (A * As * A).scale(beta) + As * A * A - (A * As + As * A).scale(gamma) - As.scale(varrho)
    return commutator(A, inner)


def commutator_entry_formulas(theta, theta_star, varphi, beta, gamma, varrho) -> Matrix:
    """The entrywise formulas for the cubic commutator on split bidiagonal matrices."""
    ctx = theta[0].ctx
    d = len(theta) - 1
    z = ctx.zero

    def th(k):
        return theta[k] if 0 <= k <= d else z

    def ts(k):
        return theta_star[k] if 0 <= k <= d else z

    def vp(k):
        return varphi[k - 1] if 1 <= k <= d else z

    def vt(k):
        if k < 1 or k > d:
            return z
        return vp(k) - (ts(k) - ts(0)) * (th(k - 1) - th(d))

    def P(x, y):
        return P_eval(beta, gamma, varrho, x, y)

    b1 = beta + 1
    C = [[z] * (d + 1) for _ in range(d + 1)]
    for i in range(2, d):
        C[i + 1][i - 2] = ts(i - 2) - b1 * ts(i - 1) + b1 * ts(i) - ts(i + 1)
    for i in range(2, d + 1):
        C[i][i - 2] = (
            vt(i - 2) - b1 * vt(i - 1) + b1 * vt(i) - vt(i + 1)
            + (ts(i - 2) - ts(0)) * (th(i - 3) - b1 * th(i - 2) + b1 * th(i - 1) - th(i))
            + (th(i) - th(d)) * (ts(i - 2) - b1 * ts(i - 1) + b1 * ts(i) - ts(i + 1))
            + (ts(i - 2) - ts(i)) * (th(i - 2) - beta * th(i - 1) + th(i) - gamma)
        )
    for i in range(1, d + 1):
        C[i][i - 1] = (
            vp(i - 1) * (th(i - 2) - beta * th(i - 1) + th(i) - gamma)
            - vp(i + 1) * (th(i - 1) - beta * th(i) + th(i + 1) - gamma)
            + (ts(i - 1) - ts(i)) * P(th(i - 1), th(i))
        )
    for i in range(d + 1):
        C[i][i] = vp(i) * P(th(i - 1), th(i)) - vp(i + 1) * P(th(i), th(i + 1))
    for i in range(1, d + 1):
        C[i - 1][i] = vp(i) * (th(i - 1) - th(i)) * P(th(i - 1), th(i))
    return Matrix(ctx, C)


def commutator_entry_oracle(theta, theta_star, varphi, beta, gamma, varrho) -> bool:
    return commutator_matrix(theta, theta_star, varphi, beta, gamma, varrho) == commutator_entry_formulas(
        theta, theta_star, varphi, beta, gamma, varrho
    )


# --- transition matrix between the two split bases ---------------------------------------------

def transition_G(pa: ParameterArray) -> Matrix:
    """Columns eta_i(A) e_0 in split coordinates, where tau_i(A) e_0 = e_i."""
    rep = validate(pa)
    if not rep.valid:
        raise NotLeonard("; ".join(v.message for v in rep.violations))
    ctx, d = pa.ctx, pa.d
    if d == 0:
        return Matrix.identity(ctx, 1)
    A, As = split_matrices(pa)
    e0 = [ctx.one] + [ctx.zero] * d
    G = Matrix.from_columns(ctx, shifted_basis(A, e0, list(pa.theta)[::-1]))
    Gi = G.inverse()
    if Gi * A * G != split_lower(ctx, list(pa.theta)[::-1]):
        raise NotLeonard("G does not reverse the split form of A")
    if Gi * As * G != split_upper(ctx, pa.theta_star, pa.phi):
        raise NotLeonard("G does not carry varphi to phi")
    return G
