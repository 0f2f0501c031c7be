"""Intersection numbers: the standard-basis oracle, four closed-form routes,
and the recurrence and duality identities that tie them together.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .errors import CrossCheckFailed, MethodPrecondition, NotLeonard
from .field import FieldElem
from .linalg import Matrix, TridiagonalClass, tridiagonal_class
from .parray import ParameterArray
from .recurrence import psi_products
from .system import Realization, a_from_varphi, first_nonzero_column, transform_realization


@dataclass(frozen=True)
class IntersectionData:
    a: tuple
    b: tuple  # b_0 .. b_{d-1}
    c: tuple  # c_1 .. c_d
    a_star: tuple
    b_star: tuple
    c_star: tuple

    @property
    def d(self) -> int:
        return len(self.a) - 1

    def bi(self, i: int) -> FieldElem:
        """b_i with b_d = 0."""
        return self.b[i] if i < self.d else self.a[0].ctx.zero

    def ci(self, i: int) -> FieldElem:
        """c_i with c_0 = 0."""
        return self.c[i - 1] if i >= 1 else self.a[0].ctx.zero

    def bsi(self, i: int) -> FieldElem:
        return self.b_star[i] if i < self.d else self.a[0].ctx.zero

    def csi(self, i: int) -> FieldElem:
        return self.c_star[i - 1] if i >= 1 else self.a[0].ctx.zero

    def to_json(self) -> dict:
        return {k: [str(x) for x in getattr(self, k)] for k in ("a", "b", "c", "a_star", "b_star", "c_star")}

    @classmethod
    def from_json(cls, ctx, doc: dict) -> "IntersectionData":
        return cls(**{k: tuple(ctx.parse(str(x)) for x in doc[k]) for k in ("a", "b", "c", "a_star", "b_star", "c_star")})


def check_row_sums(data: IntersectionData, theta0: FieldElem, theta0_star: FieldElem) -> list[str]:
    bad = []
    for i in range(data.d + 1):
        if data.ci(i) + data.a[i] + data.bi(i) != theta0:
            bad.append(f"c_{i} + a_{i} + b_{i} != theta_0")
        if data.csi(i) + data.a_star[i] + data.bsi(i) != theta0_star:
            bad.append(f"c*_{i} + a*_{i} + b*_{i} != theta*_0")
    for name in ("b", "c", "b_star", "c_star"):
        for k, x in enumerate(getattr(data, name)):
            if x.is_zero():
                bad.append(f"{name}[{k}] = 0")
    return bad


# --- brute force ---------------------------------------------------------------------

def standard_basis_rep(real: Realization) -> tuple[Matrix, Matrix]:
    """A and A* in the basis E*_i xi, 0 != xi in E_0 V."""
    xi = first_nonzero_column(real.E[0])
    cols = [Es.apply(xi) for Es in real.E_star]
    S = Matrix.from_columns(real.ctx, cols)
    try:
        Si = S.inverse()
    except Exception:
        raise NotLeonard("E*_i xi do not form a basis") from None
    RA = Si * real.A * S
    RS = Si * real.A_star * S
    if real.d >= 1 and tridiagonal_class(RA) != TridiagonalClass.IrreducibleTridiagonal:
        raise NotLeonard("A is not irreducible tridiagonal in the standard basis")
    if RS != Matrix.diag(real.ctx, real.theta_star):
        raise NotLeonard("A* is not diag(theta*) in the standard basis")
    return RA, RS


def _read_tridiagonal(M: Matrix) -> tuple[tuple, tuple, tuple]:
    n = M.n
    a = tuple(M[i, i] for i in range(n))
    b = tuple(M[i, i + 1] for i in range(n - 1))
    c = tuple(M[i, i - 1] for i in range(1, n))
    return a, b, c


def brute_intersection(real: Realization) -> IntersectionData:
    a, b, c = _read_tridiagonal(standard_basis_rep(real)[0])
    a_s, b_s, c_s = _read_tridiagonal(standard_basis_rep(transform_realization(real, "star"))[0])
    data = IntersectionData(a, b, c, a_s, b_s, c_s)
    bad = check_row_sums(data, real.theta[0], real.theta_star[0])
    if bad:
        raise CrossCheckFailed("; ".join(bad))
    return data


# --- polynomial helpers ------------------------------------------------------------------

def tau(seq: Sequence[FieldElem], i: int, x: FieldElem) -> FieldElem:
    """tau_i(x) = prod_{h<i} (x - seq_h)."""
    out = x.ctx.one
    for h in range(i):
        out = out * (x - seq[h])
    return out


def eta(seq: Sequence[FieldElem], i: int, x: FieldElem) -> FieldElem:
    """eta_i(x) = prod_{h<i} (x - seq_{d-h})."""
    d = len(seq) - 1
    out = x.ctx.one
    for h in range(i):
        out = out * (x - seq[d - h])
    return out


def _prod(f: Callable[[int], FieldElem], rng, one: FieldElem) -> FieldElem:
    out = one
    for h in rng:
        out = out * f(h)
    return out


def _fill_a(pa: ParameterArray, b, c, b_s, c_s) -> IntersectionData:
    d, ctx = pa.d, pa.ctx
    z = ctx.zero
    bb = list(b) + [z]
    cc = [z] + list(c)
    bs = list(b_s) + [z]
    cs = [z] + list(c_s)
    a = tuple(pa.theta[0] - bb[i] - cc[i] for i in range(d + 1))
    a_s = tuple(pa.theta_star[0] - bs[i] - cs[i] for i in range(d + 1))
    return IntersectionData(a, tuple(b), tuple(c), a_s, tuple(b_s), tuple(c_s))


# --- closed forms --------------------------------------------------------------------

def _bbcc(pa: ParameterArray) -> IntersectionData:
    d, th, ts, vp, ph = pa.d, pa.theta, pa.theta_star, pa.varphi, pa.phi
    b = [vp[i] * tau(ts, i, ts[i]) / tau(ts, i + 1, ts[i + 1]) for i in range(d)]
    c = [ph[i - 1] * eta(ts, d - i, ts[i]) / eta(ts, d - i + 1, ts[i - 1]) for i in range(1, d + 1)]
    b_s = [vp[i] * tau(th, i, th[i]) / tau(th, i + 1, th[i + 1]) for i in range(d)]
    c_s = [ph[d - i] * eta(th, d - i, th[i]) / eta(th, d - i + 1, th[i - 1]) for i in range(1, d + 1)]
    return _fill_a(pa, b, c, b_s, c_s)


def _cibiform_side(th, ts, vp, first_c: Callable[[int], FieldElem], psi) -> tuple[list, list]:
    """b, c in terms of psi with eigenvalues th, dual eigenvalues ts (one side)."""
    d = len(th) - 1
    b = [vp[0] / (ts[1] - ts[0])]
    for i in range(1, d):
        b.append(vp[i] * psi[i - 1] * (ts[i] - ts[0]) / ((ts[i + 1] - ts[i]) * (ts[i + 1] - ts[i - 1])))
    c = []
    for i in range(1, d):
        c.append(first_c(i) * psi[d - i - 1] * (ts[i] - ts[d]) / ((ts[i - 1] - ts[i]) * (ts[i - 1] - ts[i + 1])))
    c.append(first_c(d) / (ts[d - 1] - ts[d]))
    return b, c


def _cibiform(pa: ParameterArray) -> IntersectionData:
    d, th, ts, vp, ph = pa.d, pa.theta, pa.theta_star, pa.varphi, pa.phi
    psi = psi_products(th)
    b, c = _cibiform_side(th, ts, vp, lambda i: ph[i - 1], psi)
    b_s, c_s = _cibiform_side(ts, th, vp, lambda i: ph[d - i], psi)
    return _fill_a(pa, b, c, b_s, c_s)


def _bici_side(th, ts, vp1) -> tuple[list, list]:
    d = len(th) - 1

    def f(i, s):
        return (ts[1] - ts[i + s]) / (ts[0] - ts[i]) - (ts[1] - ts[d - 1]) / (ts[0] - ts[d])

    def g(i, s):
        return (th[1] - th[2]) * (ts[i] - ts[d]) - (th[0] - th[1]) * (ts[i + s] - ts[d - 1])

    b = [vp1 / (ts[1] - ts[0])]
    for i in range(1, d):
        b.append((ts[0] - ts[i]) * (vp1 * f(i, -1) + g(i, -1)) / ((ts[i + 1] - ts[i]) * (ts[i + 1] - ts[i - 1])))
    c = []
    for i in range(1, d):
        c.append((ts[0] - ts[i]) * (vp1 * f(i, 1) + g(i, 1)) / ((ts[i - 1] - ts[i]) * (ts[i - 1] - ts[i + 1])))
    c.append((vp1 + (th[0] - th[1]) * (ts[0] - ts[d])) / (ts[d - 1] - ts[d]))
    return b, c


def _bici(pa: ParameterArray) -> IntersectionData:
    if pa.d < 2:
        raise MethodPrecondition("bici needs d >= 2")
    b, c = _bici_side(pa.theta, pa.theta_star, pa.varphi[0])
    b_s, c_s = _bici_side(pa.theta_star, pa.theta, pa.varphi[0])
    return _fill_a(pa, b, c, b_s, c_s)


def c1_from_a0(th, ts, a0) -> FieldElem:
    """c_1 in terms of a_0 and the eigenvalue sequences (d >= 2)."""
    d = len(th) - 1
    num = (ts[0] - ts[1]) * (th[1] - th[d - 1]) - (ts[1] - ts[2]) * (th[0] - th[d])
    return (th[d] - a0) * num / ((ts[0] - ts[2]) * (th[0] - th[d]))


def _bcform_side(th, ts, as0, cs1) -> tuple[list, list]:
    d = len(th) - 1
    b = [(ts[0] - as0) * (th[1] - th[0]) / (ts[1] - ts[0])]

    def num(i, s):
        return cs1 * (ts[0] - ts[i]) * (th[0] - th[2]) + (ts[i] - as0) * (
            (th[1] - th[2]) * (ts[0] - ts[i]) - (th[0] - th[1]) * (ts[1] - ts[i + s])
        )

    for i in range(1, d):
        b.append(num(i, -1) / ((ts[i + 1] - ts[i]) * (ts[i + 1] - ts[i - 1])))
    c = [num(i, 1) / ((ts[i - 1] - ts[i]) * (ts[i - 1] - ts[i + 1])) for i in range(1, d)]
    c.append((ts[d] - as0) * (th[1] - th[0]) / (ts[d - 1] - ts[d]))
    return b, c


def _bcform(pa: ParameterArray) -> IntersectionData:
    if pa.d < 2:
        raise MethodPrecondition("bcform needs d >= 2")
    th, ts = pa.theta, pa.theta_star
    a, a_s = a_from_varphi(pa)
    cs1 = c1_from_a0(ts, th, a_s[0])
    c1 = c1_from_a0(th, ts, a[0])
    b, c = _bcform_side(th, ts, a_s[0], cs1)
    b_s, c_s = _bcform_side(ts, th, a[0], c1)
    return _fill_a(pa, b, c, b_s, c_s)


METHODS = {"bbcc": _bbcc, "cibiform": _cibiform, "bici": _bici, "bcform": _bcform}
MIN_D = {"bbcc": 1, "cibiform": 1, "bici": 2, "bcform": 2}


def closed_forms(pa: ParameterArray, method: str) -> IntersectionData:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if pa.d < MIN_D[method]:
        raise MethodPrecondition(f"{method} needs d >= {MIN_D[method]}")
    return METHODS[method](pa)


def applicable_methods(d: int) -> list[str]:
    return [m for m in METHODS if d >= MIN_D[m]]


# --- identity suites ----------------------------------------------------------------------

@dataclass
class Report:
    results: dict = dc_field(default_factory=dict)

    def record(self, name: str, ok: bool, witness=None):
        entry = self.results.setdefault(name, {"checked": 0, "failures": []})
        entry["checked"] += 1
        if not ok:
            entry["failures"].append(witness)

    @property
    def ok(self) -> bool:
        return all(not e["failures"] for e in self.results.values())

    def failures(self) -> dict:
        return {k: e["failures"] for k, e in self.results.items() if e["failures"]}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "identities": {
                k: {"checked": e["checked"], "failures": [list(w) if isinstance(w, tuple) else w for w in e["failures"]]}
                for k, e in sorted(self.results.items())
            },
        }


def recurrence_identity_suite(real_or_pa, data: IntersectionData) -> Report:
    """Row sums, the three-term recurrences, the tau/eta recurrences and the solved b, c forms."""
    th = list(real_or_pa.theta)
    ts = list(real_or_pa.theta_star)
    pa = real_or_pa if isinstance(real_or_pa, ParameterArray) else None
    if pa is None:
        from .system import extract_parray

        pa = extract_parray(real_or_pa, check=False)
    d = len(th) - 1
    rep = Report()
    for i in range(d + 1):
        rep.record("row_sum", data.ci(i) + data.a[i] + data.bi(i) == th[0], (i,))
        rep.record("row_sum_dual", data.csi(i) + data.a_star[i] + data.bsi(i) == ts[0], (i,))
    if d < 1:
        return rep
    z = pa.ctx.zero

    def at(seq, k):
        # boundary terms carry a zero coefficient; any value works
        return seq[k] if 0 <= k <= d else z

    for i in range(d + 1):
        lhs = data.ci(i) * at(ts, i - 1) + data.a[i] * ts[i] + data.bi(i) * at(ts, i + 1)
        rep.record("rec3", lhs == th[1] * ts[i] + data.a_star[0] * (th[0] - th[1]), (i,))
        lhs = data.csi(i) * at(th, i - 1) + data.a_star[i] * th[i] + data.bsi(i) * at(th, i + 1)
        rep.record("rec3_dual", lhs == ts[1] * th[i] + data.a[0] * (ts[0] - ts[1]), (i,))

    def three(cf, af, bf, poly, seq, i, j):
        left = af * poly(seq, j, seq[i])
        if i >= 1:
            left = left + cf * poly(seq, j, seq[i - 1])
        if i < d:
            left = left + bf * poly(seq, j, seq[i + 1])
        return left

    for i in range(d + 1):
        for j in range(1, d + 1):
            rhs = th[j] * tau(ts, j, ts[i]) + pa.varphi[j - 1] * tau(ts, j - 1, ts[i])
            rep.record("Tmat_tau_star", three(data.ci(i), data.a[i], data.bi(i), tau, ts, i, j) == rhs, (i, j))
            rhs = th[j] * eta(ts, j, ts[i]) + pa.phi[d - j] * eta(ts, j - 1, ts[i])
            rep.record("Tmat_eta_star", three(data.ci(i), data.a[i], data.bi(i), eta, ts, i, j) == rhs, (i, j))
            rhs = ts[j] * tau(th, j, th[i]) + pa.varphi[j - 1] * tau(th, j - 1, th[i])
            rep.record("Tmat_tau", three(data.csi(i), data.a_star[i], data.bsi(i), tau, th, i, j) == rhs, (i, j))
            rhs = ts[j] * eta(th, j, th[i]) + pa.phi[j - 1] * eta(th, j - 1, th[i])
            rep.record("Tmat_eta", three(data.csi(i), data.a_star[i], data.bsi(i), eta, th, i, j) == rhs, (i, j))

    for tag, (t, s, a, as_, b, c) in {
        "solvebc": (th, ts, data.a, data.a_star, data.bi, data.ci),
        "solvebc_dual": (ts, th, data.a_star, data.a, data.bsi, data.csi),
    }.items():
        rep.record(tag, b(0) == t[0] - a[0], ("b", 0))
        for i in range(1, d):
            bi = ((a[i] - t[0]) * (s[i] - s[i - 1]) + (t[0] - t[1]) * (s[i] - as_[0])) / (s[i - 1] - s[i + 1])
            ci = ((a[i] - t[0]) * (s[i] - s[i + 1]) + (t[0] - t[1]) * (s[i] - as_[0])) / (s[i + 1] - s[i - 1])
            rep.record(tag, b(i) == bi, ("b", i))
            rep.record(tag, c(i) == ci, ("c", i))
        rep.record(tag, c(d) == t[0] - a[d], ("c", d))
    return rep


def duality_identity_suite(pa: ParameterArray, data: IntersectionData) -> Report:
    d, ctx = pa.d, pa.ctx
    th, ts, vp, ph = pa.theta, pa.theta_star, pa.varphi, pa.phi
    a, a_s = data.a, data.a_star
    one, z = ctx.one, ctx.zero
    rep = Report()
    if d < 1:
        return rep

    def P(f, rng):
        return _prod(f, rng, one)

    # partial-sum fractions
    for i in range(d):
        lhs = (sum(th[: i + 1], z) - sum(a[: i + 1], z)) / data.b[i]
        rhs = P(lambda h: (ts[i + 1] - ts[h]) / (ts[i] - ts[h]), range(i))
        rep.record("frac_b", lhs == rhs, (i,))
    for i in range(1, d + 1):
        lhs = (sum(a[:i], z) - sum(th[d - i + 1:], z)) / data.ci(i)
        rhs = P(lambda h: (ts[i - 1] - ts[h]) / (ts[i] - ts[h]), range(i + 1, d + 1))
        rep.record("frac_c", lhs == rhs, (i,))
    rep.record("bdm1", data.b[d - 1] == (a[d] - th[d]) * P(lambda h: (ts[d - 1] - ts[h]) / (ts[d] - ts[h]), range(d - 1)))
    rep.record("c1_from_a0", data.ci(1) == (a[0] - th[d]) * P(lambda h: (ts[1] - ts[h]) / (ts[0] - ts[h]), range(2, d + 1)))

    # eigenvalue recovery
    def Rb(i):
        return P(lambda h: (ts[i + 1] - ts[h]) / (ts[i] - ts[h]), range(i))

    rec1 = [a[0] + data.b[0]]
    rec1 += [a[i] + data.b[i] * Rb(i) - data.b[i - 1] * Rb(i - 1) for i in range(1, d)]
    rec1 += [a[d] - data.b[d - 1] * P(lambda h: (ts[d] - ts[h]) / (ts[d - 1] - ts[h]), range(d - 1))]
    rep.record("vv1", tuple(rec1) == tuple(th), tuple(str(x) for x in rec1))

    def Rc(k):
        # prod_{h=k+1}^{d} (ts[k-1]-ts[h])/(ts[k]-ts[h])
        return P(lambda h: (ts[k - 1] - ts[h]) / (ts[k] - ts[h]), range(k + 1, d + 1))

    rec2 = [a[d] + data.ci(d)]
    rec2 += [a[d - i] + data.ci(d - i) * Rc(d - i) - data.ci(d - i + 1) * Rc(d - i + 1) for i in range(1, d)]
    rec2 += [a[0] - data.ci(1) * P(lambda h: (ts[0] - ts[h]) / (ts[1] - ts[h]), range(2, d + 1))]
    rep.record("vv2", tuple(rec2) == tuple(th), tuple(str(x) for x in rec2))

    # eigenvalue ratio duality
    for i in range(d + 1):
        for j in range(d + 1):
            for r in range(d + 1):
                s = i + j - r
                if 0 <= s <= d and r != s:
                    ok = (th[i] - th[j]) / (th[r] - th[s]) == (ts[i] - ts[j]) / (ts[r] - ts[s])
                    rep.record("thdual", ok, (i, j, r, s))

    for i in range(d):
        lhs = data.b[i] * P(lambda h: ts[i + 1] - ts[h], range(i + 1)) / P(lambda h: ts[i] - ts[h], range(i))
        rhs = data.b_star[i] * P(lambda h: th[i + 1] - th[h], range(i + 1)) / P(lambda h: th[i] - th[h], range(i))
        rep.record("bdual", lhs == rhs and lhs == vp[i], (i,))

    rep.record("dd2", data.b[0] * (ts[1] - ts[0]) == data.b_star[0] * (th[1] - th[0]), (0,))
    for i in range(1, d):
        lhs = data.b[i] * (ts[i + 1] - ts[i]) * (ts[i + 1] - ts[i - 1]) / (ts[i] - ts[0])
        rhs = data.b_star[i] * (th[i + 1] - th[i]) * (th[i + 1] - th[i - 1]) / (th[i] - th[0])
        rep.record("dd2", lhs == rhs, (i,))

    for i in range(d):
        lhs = data.ci(i + 1) * P(lambda h: ts[i] - ts[h], range(i + 1, d + 1)) / P(lambda h: ts[i + 1] - ts[h], range(i + 2, d + 1))
        k = d - i
        rhs = data.csi(k) * P(lambda h: th[k - 1] - th[h], range(k, d + 1)) / P(lambda h: th[k] - th[h], range(k + 1, d + 1))
        rep.record("cdual", lhs == rhs and lhs == ph[i], (i,))

    for i in range(d):
        l1 = sum((th[h] - a[h] for h in range(i + 1)), z) / (th[i] - th[i + 1])
        r1 = sum((ts[h] - a_s[h] for h in range(i + 1)), z) / (ts[i] - ts[i + 1])
        l2 = sum((th[d - h] - a[h] for h in range(i + 1)), z) / (th[d - i] - th[d - i - 1])
        r2 = sum((ts[h] - a_s[d - h] for h in range(i + 1)), z) / (ts[i] - ts[i + 1])
        l3 = sum((th[h] - a[d - h] for h in range(i + 1)), z) / (th[i] - th[i + 1])
        r3 = sum((ts[d - h] - a_s[h] for h in range(i + 1)), z) / (ts[d - i] - ts[d - i - 1])
        l4 = sum((th[d - h] - a[d - h] for h in range(i + 1)), z) / (th[d - i] - th[d - i - 1])
        r4 = sum((ts[d - h] - a_s[d - h] for h in range(i + 1)), z) / (ts[d - i] - ts[d - i - 1])
        for k, (l, r) in enumerate(((l1, r1), (l2, r2), (l3, r3), (l4, r4)), start=1):
            rep.record(f"adual_{k}", l == r, (i,))

    rep.record("a0_1", (th[0] - a[0]) / (th[0] - th[1]) == (ts[0] - a_s[0]) / (ts[0] - ts[1]))
    rep.record("a0_2", (th[d] - a[0]) / (th[d] - th[d - 1]) == (ts[0] - a_s[d]) / (ts[0] - ts[1]))
    rep.record("a0_3", (th[0] - a[d]) / (th[0] - th[1]) == (ts[d] - a_s[0]) / (ts[d] - ts[d - 1]))
    rep.record("a0_4", (th[d] - a[d]) / (th[d] - th[d - 1]) == (ts[d] - a_s[d]) / (ts[d] - ts[d - 1]))

    # split values from diagonal sums
    for i in range(1, d + 1):
        vals = [
            (ts[i] - ts[i - 1]) * sum((th[h] - a[h] for h in range(i)), z),
            (ts[i - 1] - ts[i]) * sum((th[h] - a[h] for h in range(i, d + 1)), z),
            (th[i] - th[i - 1]) * sum((ts[h] - a_s[h] for h in range(i)), z),
            (th[i - 1] - th[i]) * sum((ts[h] - a_s[h] for h in range(i, d + 1)), z),
        ]
        rep.record("varphi_sums", all(v == vp[i - 1] for v in vals), (i,))

    if d >= 2:
        e = th[0] + th[1] - th[d - 1] - th[d]
        es = ts[0] + ts[1] - ts[d - 1] - ts[d]
        v2a = vp[0] * e / (th[0] - th[d]) + (ts[0] - ts[1]) * e + (ts[2] - ts[0]) * (th[1] - th[d])
        v2b = vp[0] * es / (ts[0] - ts[d]) + (th[0] - th[1]) * es + (th[2] - th[0]) * (ts[1] - ts[d])
        rep.record("cerzo", v2a == vp[1], ("primal",))
        rep.record("cerzo", v2b == vp[1], ("dual",))
        rep.record("v2two", (data.ci(1) - a[0] + th[1]) * (ts[2] - ts[0]) == vp[1], ("primal",))
        rep.record("v2two", (data.csi(1) - a_s[0] + ts[1]) * (th[2] - th[0]) == vp[1], ("dual",))
        rep.record("c1", data.ci(1) == c1_from_a0(th, ts, a[0]), ("primal",))
        rep.record("c1", data.csi(1) == c1_from_a0(ts, th, a_s[0]), ("dual",))
        for m in ("bici", "bcform"):
            rep.record(m, closed_forms(pa, m) == data)

    # tau/eta ratios against psi
    psi = psi_products(th)
    psi_s = psi_products(ts)
    for i in range(1, d):
        q = tau(ts, i, ts[i]) / tau(ts, i + 1, ts[i + 1])
        rep.record("tau_ratio_star", q == psi[i - 1] * (ts[i] - ts[0]) / ((ts[i + 1] - ts[i]) * (ts[i + 1] - ts[i - 1])), (i,))
        q = tau(th, i, th[i]) / tau(th, i + 1, th[i + 1])
        rep.record("tau_ratio", q == psi[i - 1] * (th[i] - th[0]) / ((th[i + 1] - th[i]) * (th[i + 1] - th[i - 1])), (i,))
        q = eta(th, d - i, th[i]) / eta(th, d - i + 1, th[i - 1])
        rep.record("eta_ratio", q == psi[d - i - 1] * (th[i] - th[d]) / ((th[i - 1] - th[i]) * (th[i - 1] - th[i + 1])), (i,))
        q = eta(ts, d - i, ts[i]) / eta(ts, d - i + 1, ts[i - 1])
        rep.record("eta_ratio_star", q == psi[d - i - 1] * (ts[i] - ts[d]) / ((ts[i - 1] - ts[i]) * (ts[i - 1] - ts[i + 1])), (i,))
        rep.record("psi_symmetric", psi[i - 1] == psi_s[i - 1], (i,))
    return rep
