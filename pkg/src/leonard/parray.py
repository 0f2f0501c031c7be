"""Parameter arrays (theta; theta*; varphi; phi): validation, the D4 action,
completion from varphi_1 and the vartheta sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import LeonardError, PA2Failure, ParseError, PostValidationFailed, PrereqFailure, StructuralError
from .field import Field, FieldElem, make_field
from .recurrence import vartheta_sums


@dataclass(frozen=True)
class ParameterArray:
    ctx: Field
    d: int
    theta: tuple
    theta_star: tuple
    varphi: tuple
    phi: tuple

    def __post_init__(self):
        for name in ("theta", "theta_star", "varphi", "phi"):
            object.__setattr__(self, name, tuple(self.ctx(x) for x in getattr(self, name)))
        check_structure(self)

    @classmethod
    def make(cls, ctx: Field, theta, theta_star, varphi, phi) -> "ParameterArray":
        return cls(ctx, len(theta) - 1, tuple(theta), tuple(theta_star), tuple(varphi), tuple(phi))

    def replace(self, **kw) -> "ParameterArray":
        vals = dict(theta=self.theta, theta_star=self.theta_star, varphi=self.varphi, phi=self.phi)
        vals.update(kw)
        return ParameterArray(self.ctx, self.d, **vals)

    def to_json(self) -> dict:
        return {
            "field": self.ctx.descriptor(),
            "d": self.d,
            "theta": [str(x) for x in self.theta],
            "theta_star": [str(x) for x in self.theta_star],
            "varphi": [str(x) for x in self.varphi],
            "phi": [str(x) for x in self.phi],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ParameterArray":
        try:
            ctx = make_field(doc["field"])
            vals = {k: tuple(ctx.parse(str(x)) for x in doc[k]) for k in ("theta", "theta_star", "varphi", "phi")}
            d = int(doc["d"])
        except KeyError as exc:
            raise ParseError(f"missing key {exc}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, LeonardError):
                raise
            raise ParseError(str(exc)) from None
        return cls(ctx, d, **vals)


def check_structure(pa: ParameterArray) -> None:
    d = pa.d
    if d < 0:
        raise StructuralError("d must be >= 0")
    lens = (len(pa.theta), len(pa.theta_star), len(pa.varphi), len(pa.phi))
    if lens != (d + 1, d + 1, d, d):
        raise StructuralError(f"lengths {lens} do not match d = {d}")


@dataclass(frozen=True)
class Violation:
    condition: str
    index: tuple
    message: str

    def to_json(self) -> dict:
        return {"condition": self.condition, "index": list(self.index), "message": self.message}


@dataclass
class ValidationReport:
    violations: list = dc_field(default_factory=list)
    vacuous: bool = False

    @property
    def valid(self) -> bool:
        return not self.violations

    def conditions(self) -> set:
        return {v.condition for v in self.violations}

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "vacuous": self.vacuous,
            "violations": [v.to_json() for v in self.violations],
        }


def _distinct_violations(seq, name: str) -> list[Violation]:
    out = []
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                out.append(Violation("PA1", (i, j), f"{name}_{i} = {name}_{j}"))
    return out


def _pa5_violations(theta, theta_star) -> list[Violation]:
    d = len(theta) - 1
    out = []
    ref = None
    for i in range(2, d):
        dt, ds = theta[i - 1] - theta[i], theta_star[i - 1] - theta_star[i]
        if dt.is_zero() or ds.is_zero():
            continue
        rt = (theta[i - 2] - theta[i + 1]) / dt
        rs = (theta_star[i - 2] - theta_star[i + 1]) / ds
        if rt != rs:
            out.append(Violation("PA5", (i,), f"theta ratio {rt} != theta* ratio {rs}"))
        if ref is None:
            ref = rt
        elif rt != ref:
            out.append(Violation("PA5", (i,), f"ratio {rt} differs from {ref} at i=2"))
    return out


def validate(pa: ParameterArray) -> ValidationReport:
    check_structure(pa)
    d = pa.d
    if d == 0:
        return ValidationReport(vacuous=True)
    th, ts, vp, ph = pa.theta, pa.theta_star, pa.varphi, pa.phi
    viol = _distinct_violations(th, "theta") + _distinct_violations(ts, "theta*")
    for i in range(1, d + 1):
        if vp[i - 1].is_zero():
            viol.append(Violation("PA2", (i,), f"varphi_{i} = 0"))
        if ph[i - 1].is_zero():
            viol.append(Violation("PA2", (i,), f"phi_{i} = 0"))
    if th[0] != th[d]:
        s = vartheta_sums(th)
        for i in range(1, d + 1):
            rhs3 = ph[0] * s[i] + (ts[i] - ts[0]) * (th[i - 1] - th[d])
            if vp[i - 1] != rhs3:
                viol.append(Violation("PA3", (i,), f"varphi_{i} = {vp[i - 1]} but PA3 gives {rhs3}"))
            rhs4 = vp[0] * s[i] + (ts[i] - ts[0]) * (th[d - i + 1] - th[0])
            if ph[i - 1] != rhs4:
                viol.append(Violation("PA4", (i,), f"phi_{i} = {ph[i - 1]} but PA4 gives {rhs4}"))
    viol += _pa5_violations(th, ts)
    return ValidationReport(viol)


def is_valid(pa: ParameterArray) -> bool:
    return validate(pa).valid


# --- D4 ----------------------------------------------------------------------

GENERATORS = ("down", "Down", "star")


@dataclass(frozen=True)
class D4Element:
    """A word over {down, Down, star}, applied left to right, kept reduced."""

    word: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "word", reduce_word(self.word))

    @classmethod
    def parse(cls, text: str) -> "D4Element":
        text = text.strip()
        if text in ("", "id", "identity"):
            return cls(())
        parts = tuple(p.strip() for p in text.split("."))
        bad = [p for p in parts if p not in GENERATORS]
        if bad:
            raise ParseError(f"unknown D4 generators {bad}; use down, Down, star")
        return cls(parts)

    def __mul__(self, other: "D4Element") -> "D4Element":
        return D4Element(self.word + other.word)

    def __str__(self) -> str:
        return ".".join(self.word) or "id"


def reduce_word(word: Sequence[str]) -> tuple:
    """Cancel adjacent equal generators (each generator is an involution)."""
    out: list[str] = []
    for g in word:
        if g not in GENERATORS:
            raise ParseError(f"unknown D4 generator {g!r}")
        if out and out[-1] == g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _apply_generator(pa: ParameterArray, g: str) -> ParameterArray:
    d = pa.d
    th, ts, vp, ph = pa.theta, pa.theta_star, pa.varphi, pa.phi
    if g == "Down":
        return ParameterArray(pa.ctx, d, th[::-1], ts, ph, vp)
    if g == "down":
        return ParameterArray(pa.ctx, d, th, ts[::-1], ph[::-1], vp[::-1])
    return ParameterArray(pa.ctx, d, ts, th, vp, ph[::-1])


def transform_d4(pa: ParameterArray, g: D4Element | str | Sequence[str]) -> ParameterArray:
    if isinstance(g, str):
        g = D4Element.parse(g)
    elif not isinstance(g, D4Element):
        g = D4Element(tuple(g))
    was_valid = is_valid(pa)
    out = pa
    for gen in g.word:
        out = _apply_generator(out, gen)
    if was_valid and not is_valid(out):
        raise PostValidationFailed(f"D4 image under {g} is not valid")
    return out


# --- completion and vartheta ---------------------------------------------------

def complete_from_phi1(varphi1: FieldElem, theta: Sequence[FieldElem], theta_star: Sequence[FieldElem]) -> ParameterArray:
    """The unique array with given eigenvalue sequences and first split value varphi_1."""
    ctx = varphi1.ctx
    d = len(theta) - 1
    if d < 1 or len(theta_star) != d + 1:
        raise PrereqFailure("need d >= 1 and matching lengths")
    pre = _distinct_violations(theta, "theta") + _distinct_violations(theta_star, "theta*") + _pa5_violations(theta, theta_star)
    if pre:
        raise PrereqFailure("; ".join(v.message for v in pre))
    th, ts = list(theta), list(theta_star)
    s = vartheta_sums(th)
    phi1 = varphi1 - (ts[1] - ts[0]) * (th[0] - th[d])
    varphi = [phi1 * s[i] + (ts[i] - ts[0]) * (th[i - 1] - th[d]) for i in range(1, d + 1)]
    phi = [varphi1 * s[i] + (ts[i] - ts[0]) * (th[d - i + 1] - th[0]) for i in range(1, d + 1)]
    zeros = [f"varphi_{i + 1}" for i, x in enumerate(varphi) if x.is_zero()]
    zeros += [f"phi_{i + 1}" for i, x in enumerate(phi) if x.is_zero()]
    if zeros:
        raise PA2Failure("zero split values: " + ", ".join(zeros))
    pa = ParameterArray(ctx, d, th, ts, varphi, phi)
    rep = validate(pa)
    if not rep.valid:
        raise PostValidationFailed("; ".join(v.message for v in rep.violations))
    return pa


def vartheta_of(pa: ParameterArray) -> list[FieldElem]:
    """[vartheta_0, ..., vartheta_{d+1}], vartheta_i = varphi_i - (theta*_i - theta*_0)(theta_{i-1} - theta_d)."""
    d = pa.d
    th, ts = pa.theta, pa.theta_star
    z = pa.ctx.zero
    inner = [pa.varphi[i - 1] - (ts[i] - ts[0]) * (th[i - 1] - th[d]) for i in range(1, d + 1)]
    return [z] + inner + [z]
