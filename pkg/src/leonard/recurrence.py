"""Recurrent sequences: beta detection, (beta, gamma, varrho) fits, closed forms,
the normalized half-difference sums (vartheta), the psi products and P(x, y).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CrossCheckFailed,
    InconsistentFit,
    NoQSupplied,
    NotRecurrent,
    VerificationFailed,
    ZeroDenominator,
)
from .field import Field, FieldElem
from .linalg import Matrix, solve


class Unconstrained:
    """Marker variant for a beta that no condition pins down (d <= 2)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Unconstrained"


UNCONSTRAINED = Unconstrained()


@dataclass(frozen=True)
class RecurrenceClass:
    beta: FieldElem | Unconstrained
    gamma: FieldElem | None = None
    varrho: FieldElem | None = None

    @property
    def constrained(self) -> bool:
        return not isinstance(self.beta, Unconstrained)


def _div(a: FieldElem, b: FieldElem, what: str = "") -> FieldElem:
    if b.is_zero():
        raise ZeroDenominator(f"zero denominator {what}".strip())
    return a / b


def detect_beta(seq: Sequence[FieldElem]) -> RecurrenceClass:
    """beta + 1 is the common value of (s_{i-2} - s_{i+1})/(s_{i-1} - s_i), 2 <= i <= d-1."""
    d = len(seq) - 1
    if d <= 2:
        return RecurrenceClass(UNCONSTRAINED)
    ratios = [
        _div(seq[i - 2] - seq[i + 1], seq[i - 1] - seq[i], f"at i={i}")
        for i in range(2, d)
    ]
    if any(r != ratios[0] for r in ratios):
        raise NotRecurrent(f"ratios disagree: {[str(r) for r in ratios]}")
    return RecurrenceClass(ratios[0] - 1)


def beta_residuals(seq: Sequence[FieldElem], beta) -> list[FieldElem]:
    return [
        seq[i - 2] - (beta + 1) * seq[i - 1] + (beta + 1) * seq[i] - seq[i + 1]
        for i in range(2, len(seq) - 1)
    ]


def classify_recurrence(seq: Sequence[FieldElem], level: str, beta, gamma=None, varrho=None) -> bool:
    """Evaluate the beta / (beta, gamma) / (beta, gamma, varrho) recurrence condition."""
    d = len(seq) - 1
    if level == "beta":
        return all(r.is_zero() for r in beta_residuals(seq, beta))
    if level == "beta_gamma":
        return all(seq[i - 1] - beta * seq[i] + seq[i + 1] == gamma for i in range(1, d))
    if level == "beta_gamma_rho":
        return all(
            seq[i - 1] ** 2 - beta * seq[i - 1] * seq[i] + seq[i] ** 2 - gamma * (seq[i - 1] + seq[i]) == varrho
            for i in range(1, d + 1)
        )
    raise ValueError(f"unknown level {level!r}")


def fit_gamma_rho(seq: Sequence[FieldElem], beta) -> tuple[FieldElem, FieldElem]:
    """gamma from i = 1 of the three-term form, varrho from i = 1 of the quadratic form.

    Where an index range is empty the value is free and 0 is returned.
    """
    ctx = seq[0].ctx
    d = len(seq) - 1
    gamma = seq[0] - beta * seq[1] + seq[2] if d >= 2 else ctx.zero
    if d >= 1:
        varrho = seq[0] ** 2 - beta * seq[0] * seq[1] + seq[1] ** 2 - gamma * (seq[0] + seq[1])
    else:
        varrho = ctx.zero
    if not classify_recurrence(seq, "beta_gamma", beta, gamma):
        raise InconsistentFit("three-term recurrence fails for the fitted gamma")
    if not classify_recurrence(seq, "beta_gamma_rho", beta, gamma, varrho):
        raise InconsistentFit("quadratic recurrence fails for the fitted varrho")
    return gamma, varrho


def P_eval(beta, gamma, varrho, x, y):
    """P(x, y) = x^2 - beta x y + y^2 - gamma (x + y) - varrho."""
    return x * x - beta * x * y + y * y - gamma * (x + y) - varrho


# --- closed forms ------------------------------------------------------------

GENERIC, BETA2, BETA_M2, BETA0_CHAR2 = "Generic", "Beta2", "BetaMinus2", "Beta0Char2"


def recurrence_case(beta: FieldElem) -> str:
    ctx = beta.ctx
    if ctx.char == 2 and beta.is_zero():
        return BETA0_CHAR2
    if beta == 2:
        return BETA2
    if beta == -2:
        return BETA_M2
    return GENERIC


def half_triangular(ctx: Field, i: int) -> FieldElem:
    """i(i-1)/2, read modulo 4 in characteristic 2."""
    if ctx.char == 2:
        return ctx.one if i % 4 in (2, 3) else ctx.zero
    return ctx(i * (i - 1) // 2)


def basis_values(case: str, ctx: Field, i: int, q: FieldElem | None = None) -> tuple:
    if case == GENERIC:
        return (ctx.one, q ** i, q ** (-i))
    if case in (BETA2, BETA0_CHAR2):
        return (ctx.one, ctx(i), half_triangular(ctx, i))
    sign = ctx(1 if i % 2 == 0 else -1)
    return (ctx.one, sign, ctx(i) * sign)


@dataclass(frozen=True)
class ClosedFormFit:
    case: str
    alphas: tuple
    ext_ctx: Field
    q: FieldElem | None = None

    def value(self, i: int) -> FieldElem:
        f = basis_values(self.case, self.ext_ctx, i, self.q)
        return sum((a * b for a, b in zip(self.alphas, f)), self.ext_ctx.zero)


def lift(x: FieldElem, ctx: Field) -> FieldElem:
    """Embed an element of a prime field into an extension of it."""
    if x.ctx == ctx:
        return x
    if x.ctx.char != ctx.char or x.ctx.char == 0:
        raise VerificationFailed(f"cannot embed {x.ctx} in {ctx}")
    return ctx(int(str(x)))


def closed_form_fit(seq: Sequence[FieldElem], beta: FieldElem, q: FieldElem | None = None) -> ClosedFormFit:
    """Solve for alpha_1..alpha_3 from the first terms and verify against all terms."""
    case = recurrence_case(beta)
    ctx = seq[0].ctx
    if case == GENERIC:
        if q is None:
            raise NoQSupplied("generic beta needs q with q + 1/q = beta")
        ctx = q.ctx
        if q.is_zero() or q + q.inverse() != lift(beta, ctx):
            raise VerificationFailed("q + 1/q != beta")
    vals = [lift(x, ctx) for x in seq]
    m = min(len(vals), 3)
    rows = [list(basis_values(case, ctx, i, q))[:m] for i in range(m)]
    try:
        sol = solve(Matrix(ctx, rows), vals[:m])
    except Exception as exc:
        raise VerificationFailed(f"closed form system singular: {exc}") from None
    alphas = tuple(sol) + (ctx.zero,) * (3 - m)
    fit = ClosedFormFit(case, alphas, ctx, q)
    for i, v in enumerate(vals):
        if fit.value(i) != v:
            raise VerificationFailed(f"closed form misses term {i}")
    return fit


def ratio_closed(case: str, ctx: Field, i: int, j: int, r: int, s: int, q=None) -> FieldElem:
    """(theta_i - theta_j)/(theta_r - theta_s) for i + j = r + s, r != s, by case."""
    if case == GENERIC:
        return (q ** i - q ** j) / (q ** r - q ** s)
    if case == BETA2:
        return ctx(i - j) / ctx(r - s)
    if case == BETA_M2:
        sign = 1 if (i + r) % 2 == 0 else -1
        if (i + j) % 2 == 0:
            return ctx(sign) * ctx(i - j) / ctx(r - s)
        return ctx(sign)
    return ctx.zero if i == j else ctx.one


# --- sums and products ---------------------------------------------------------

def vartheta_sums(theta: Sequence[FieldElem]) -> list[FieldElem]:
    """sum_{h<i} (theta_h - theta_{d-h})/(theta_0 - theta_d) for 0 <= i <= d+1."""
    d = len(theta) - 1
    if d < 1:
        raise ZeroDenominator("sums need d >= 1")
    den = theta[0] - theta[d]
    if den.is_zero():
        raise ZeroDenominator("theta_0 = theta_d")
    out = [theta[0].ctx.zero]
    for h in range(d + 1):
        out.append(out[-1] + (theta[h] - theta[d - h]) / den)
    if out[1] != 1 or out[d] != 1 or not out[d + 1].is_zero():
        raise CrossCheckFailed("boundary values of the sums")
    if any(out[i] != out[d - i + 1] for i in range(d + 2)):
        raise CrossCheckFailed("sums not palindromic")
    return out


def vartheta_closed(case: str, ctx: Field, d: int, i: int, q=None) -> FieldElem:
    if case == GENERIC:
        return (q ** i - 1) / (q - 1) * (q ** (d - i + 1) - 1) / (q ** d - 1)
    if case == BETA2:
        return ctx(i * (d - i + 1)) / ctx(d)
    if case == BETA_M2:
        if d % 2 == 1:
            return ctx.zero if i % 2 == 0 else ctx.one
        return ctx(i) / ctx(d) if i % 2 == 0 else ctx(d - i + 1) / ctx(d)
    return ctx.zero if i % 2 == 0 else ctx.one


def vartheta_uniform_minus2(ctx: Field, d: int, i: int) -> FieldElem:
    """Single-expression form of the beta = -2 sums, valid for either parity of d."""
    s = lambda k: 1 if k % 2 == 0 else -1  # noqa: E731
    return ctx(2 * d + 1 + (2 * i - 2 * d - 1) * s(i) + s(d) + (2 * i - 1) * s(i + d)) / ctx(4 * d)


def vartheta_closed_check(theta: Sequence[FieldElem], beta: FieldElem, q: FieldElem | None = None) -> bool:
    d = len(theta) - 1
    if d < 3:
        raise ValueError("closed forms for the sums need d >= 3")
    case = recurrence_case(beta)
    if case == GENERIC and q is None:
        raise NoQSupplied("generic beta needs q")
    ctx = q.ctx if case == GENERIC else theta[0].ctx
    direct = [lift(x, ctx) for x in vartheta_sums(theta)]
    return all(direct[i] == vartheta_closed(case, ctx, d, i, q) for i in range(d + 2))


def psi_products(theta: Sequence[FieldElem]) -> list[FieldElem]:
    """[psi_1, ..., psi_{d-1}] with psi_i = prod_{h=0}^{i-2} (theta_i - theta_{h+1})/(theta_{i+1} - theta_h)."""
    d = len(theta) - 1
    out = []
    for i in range(1, d):
        acc = theta[0].ctx.one
        for h in range(i - 1):
            acc = acc * _div(theta[i] - theta[h + 1], theta[i + 1] - theta[h], f"psi_{i}")
        out.append(acc)
    if out and out[0] != 1:
        raise CrossCheckFailed("psi_1 != 1")
    return out


def psi_closed(case: str, ctx: Field, i: int, q=None) -> FieldElem:
    if case == GENERIC:
        return q ** (i - 1) * (q - 1) / (q ** i - 1) * (q ** 2 - 1) / (q ** (i + 1) - 1)
    if case == BETA2:
        return ctx(2) / ctx(i * (i + 1))
    if case == BETA_M2:
        return ctx(-2) / ctx(i) if i % 2 == 0 else ctx(2) / ctx(i + 1)
    return ctx.one


def psi_uniform_minus2(ctx: Field, i: int) -> FieldElem:
    s = 1 if i % 2 == 0 else -1
    return ctx(4 * s) / ctx(s - 1 - 2 * i)


def psi_closed_check(theta: Sequence[FieldElem], beta: FieldElem, q: FieldElem | None = None) -> bool:
    d = len(theta) - 1
    case = recurrence_case(beta)
    if case == GENERIC and q is None:
        raise NoQSupplied("generic beta needs q")
    ctx = q.ctx if case == GENERIC else theta[0].ctx
    direct = [lift(x, ctx) for x in psi_products(theta)]
    return all(direct[i - 1] == psi_closed(case, ctx, i, q) for i in range(1, d))


def scaled_sum_characterization(vt: Sequence[FieldElem], beta) -> bool:
    """True iff vt is beta-recurrent with vt_0 = 0, vt_1 = vt_d, vt_{d+1} = 0."""
    d = len(vt) - 2
    if not vt[0].is_zero() or not vt[d + 1].is_zero() or vt[1] != vt[d]:
        return False
    return all(r.is_zero() for r in beta_residuals(vt, beta))
