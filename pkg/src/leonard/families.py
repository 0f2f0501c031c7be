"""The thirteen named families of parameter arrays, their closed-form
intersection numbers, and a seeded search for admissible parameters.

Each family is a small record of formula callables.  Intersection numbers
for the dual system are either given explicitly or obtained by exchanging
named parameters, as the family dictates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from .errors import (
    ConstraintViolated,
    CrossCheckFailed,
    DivisionByZero,
    ExhaustedSearch,
    Inadmissible,
    ParseError,
    ZeroDenominator,
)
from .field import Field, FieldElem, make_field
from .intersection import IntersectionData
from .parray import ParameterArray, validate

FAMILY_NAMES = (
    "QRacah", "QHahn", "DualQHahn", "QuantumQKrawtchouk", "QKrawtchouk",
    "AffineQKrawtchouk", "DualQKrawtchouk", "Racah", "Hahn", "DualHahn",
    "Krawtchouk", "BannaiIto", "Orphan",
)
_ALIASES = {n.lower(): n for n in FAMILY_NAMES}


def canonical_name(name: str) -> str:
    """Accept 'QRacah', 'q-racah', 'q_racah', 'bannai/ito' and similar."""
    key = "".join(ch for ch in name.lower() if ch.isalnum())
    if key not in _ALIASES:
        raise ParseError(f"unknown family {name!r}")
    return _ALIASES[key]


def slug(name: str) -> str:
    """'QRacah' -> 'q-racah'."""
    out = []
    for k, ch in enumerate(name):
        if ch.isupper() and k > 0:
            out.append("-")
        out.append(ch.lower())
    return "".join(out)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    d: int
    ctx: Field
    params: dict = dc_field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "family", canonical_name(self.family))
        object.__setattr__(self, "params", {k: self.ctx(v) for k, v in self.params.items()})

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "d": self.d,
            "field": self.ctx.descriptor(),
            "params": {k: str(self.params[k]) for k in sorted(self.params)},
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FamilySpec":
        try:
            ctx = make_field(doc["field"])
            params = {k: ctx.parse(str(v)) for k, v in doc.get("params", {}).items()}
            return cls(doc["family"], int(doc["d"]), ctx, params)
        except KeyError as exc:
            raise ParseError(f"missing key {exc}") from None


# --- per-family formulas -------------------------------------------------------
# Every formula takes (p, d, i) where p maps parameter names to field elements
# (plus "one"); the dual callables are used as given.

def _sign(one, i):
    return one if i % 2 == 0 else -one


def _q_theta(p, h, s, i):
    """h(1-q^i)(1-s q^{i+1})q^{-i}; s=None drops the middle factor."""
    q = p["q"]
    v = p[h] * (1 - q ** i) * q ** (-i)
    return v if s is None else v * (1 - p[s] * q ** (i + 1))


def _ratio_bc(p, d, h, s):
    """b/c shared by q-Racah-like families with two r factors, written with (h, s*)."""
    q, H, S, r1, r2 = p["q"], p[h], p[s], p["r1"], p["r2"]
    b = [H * (1 - q ** (-d)) * (1 - r1 * q) * (1 - r2 * q) / (1 - S * q ** 2)]
    for i in range(1, d):
        b.append(
            H * (1 - q ** (i - d)) * (1 - S * q ** (i + 1)) * (1 - r1 * q ** (i + 1)) * (1 - r2 * q ** (i + 1))
            / ((1 - S * q ** (2 * i + 1)) * (1 - S * q ** (2 * i + 2)))
        )
    c = []
    for i in range(1, d):
        c.append(
            H * (1 - q ** i) * (1 - S * q ** (i + d + 1)) * (r1 - S * q ** i) * (r2 - S * q ** i)
            / (S * q ** d * (1 - S * q ** (2 * i)) * (1 - S * q ** (2 * i + 1)))
        )
    c.append(H * (1 - q ** d) * (r1 - S * q ** d) * (r2 - S * q ** d) / (S * q ** d * (1 - S * q ** (2 * d))))
    return b, c


def _qhahn_bc(p, d, h, s):
    """q-Hahn b/c written with (h, s*); the dual q-Hahn duals use (h*, s)."""
    q, H, S, r = p["q"], p[h], p[s], p["r"]
    b = [H * (1 - q ** (-d)) * (1 - r * q) / (1 - S * q ** 2)]
    for i in range(1, d):
        b.append(
            H * (1 - q ** (i - d)) * (1 - S * q ** (i + 1)) * (1 - r * q ** (i + 1))
            / ((1 - S * q ** (2 * i + 1)) * (1 - S * q ** (2 * i + 2)))
        )
    c = []
    for i in range(1, d):
        c.append(
            -H * q ** (i - d) * (1 - q ** i) * (1 - S * q ** (i + d + 1)) * (r - S * q ** i)
            / ((1 - S * q ** (2 * i)) * (1 - S * q ** (2 * i + 1)))
        )
    c.append(-H * (1 - q ** d) * (r - S * q ** d) / (1 - S * q ** (2 * d)))
    return b, c


def qhahn_general_overlap(p, d, h="h", s="s_star"):
    """The general q-Hahn b_i display at i = 0 and c_i display at i = d.

    These overlap the separately listed b_0 and c_d.
    """
    q, H, S, r = p["q"], p[h], p[s], p["r"]
    b0 = H * (1 - q ** (-d)) * (1 - S * q) * (1 - r * q) / ((1 - S * q) * (1 - S * q ** 2))
    cd = (
        -H * (1 - q ** d) * (1 - S * q ** (2 * d + 1)) * (r - S * q ** d)
        / ((1 - S * q ** (2 * d)) * (1 - S * q ** (2 * d + 1)))
    )
    return b0, cd


def _simple_q_bc(p, d, h, s):
    """q-Krawtchouk b/c written with (h, s*); dual q-Krawtchouk duals use (h*, s)."""
    q, H, S = p["q"], p[h], p[s]
    b = [H * (1 - q ** (-d)) / (1 - S * q ** 2)]
    for i in range(1, d):
        b.append(H * (1 - q ** (i - d)) * (1 - S * q ** (i + 1)) / ((1 - S * q ** (2 * i + 1)) * (1 - S * q ** (2 * i + 2))))
    c = []
    for i in range(1, d):
        c.append(H * S * q ** (2 * i - d) * (1 - q ** i) * (1 - S * q ** (i + d + 1)) / ((1 - S * q ** (2 * i)) * (1 - S * q ** (2 * i + 1))))
    c.append(H * S * q ** d * (1 - q ** d) / (1 - S * q ** (2 * d)))
    return b, c


def _racah_bc(p, d, h, s):
    H, S, r1, r2 = p[h], p[s], p["r1"], p["r2"]
    b = [-H * d * (1 + r1) * (1 + r2) / (2 + S)]
    for i in range(1, d):
        b.append(H * (i - d) * (i + 1 + S) * (i + 1 + r1) * (i + 1 + r2) / ((2 * i + 1 + S) * (2 * i + 2 + S)))
    c = [H * i * (i + d + 1 + S) * (i + S - r1) * (i + S - r2) / ((2 * i + S) * (2 * i + 1 + S)) for i in range(1, d)]
    c.append(H * d * (d + S - r1) * (d + S - r2) / (2 * d + S))
    return b, c


def _hahn_bc(p, d, lead, s):
    """Hahn b/c written with (s, s*); the dual Hahn duals use (s*, s)."""
    L, S, r = p[lead], p[s], p["r"]
    b = [-L * d * (1 + r) / (2 + S)]
    for i in range(1, d):
        b.append(L * (i - d) * (i + 1 + S) * (i + 1 + r) / ((2 * i + 1 + S) * (2 * i + 2 + S)))
    c = [-L * i * (i + d + 1 + S) * (i + S - r) / ((2 * i + S) * (2 * i + 1 + S)) for i in range(1, d)]
    c.append(-L * d * (d + S - r) / (2 * d + S))
    return b, c


def _bi_bc(p, d, h, s):
    one = p["one"]
    H, S, r1, r2 = p[h], p[s], p["r1"], p["r2"]
    two = 2 * one
    b = [
        H * (2 * i + 2 + r2 - S + _sign(one, i) * (r2 + S))
        * (2 * i + r1 - d + 1 - _sign(one, i + d) * (r1 + d + 1)) / (two * (2 * i + 2 - S))
        for i in range(d)
    ]
    c = [
        -H * (2 * i - r2 - S + _sign(one, i) * (r2 + S))
        * (2 * i - 2 * S - r1 + d + 1 - _sign(one, i + d) * (r1 + d + 1)) / (two * (2 * i - S))
        for i in range(1, d + 1)
    ]
    return b, c


def bannai_ito_parity_bc(p, d, h="h", s="s_star"):
    """The case-by-parity displays for Bannai/Ito b_i, c_i."""
    H, S, r1, r2 = p[h], p[s], p["r1"], p["r2"]
    b = []
    for i in range(d):
        den = 2 * i + 2 - S
        if i % 2 == 0 and d % 2 == 0:
            b.append(2 * H * (i - d) * (i + 1 + r2) / den)
        elif d % 2 == 0:
            b.append(2 * H * (i + 1 - S) * (i + 1 + r1) / den)
        elif i % 2 == 0:
            b.append(2 * H * (i + 1 + r1) * (i + 1 + r2) / den)
        else:
            b.append(2 * H * (i - d) * (i + 1 - S) / den)
    c = []
    for i in range(1, d + 1):
        den = 2 * i - S
        if i % 2 == 0 and d % 2 == 0:
            c.append(-2 * H * i * (i - S - r1) / den)
        elif d % 2 == 0:
            c.append(-2 * H * (i + d + 1 - S) * (i - S - r2) / den)
        elif i % 2 == 0:
            c.append(-2 * H * i * (i + d + 1 - S) / den)
        else:
            c.append(-2 * H * (i - S - r1) * (i - S - r2) / den)
    return b, c


def bannai_ito_parity_array(p, d):
    """The case-by-parity displays for Bannai/Ito theta, theta*, varphi, phi.

    The odd-index theta* display is read with theta*_0 as its base point.
    """
    h, hs, s, ss, r1, r2 = p["h"], p["h_star"], p["s"], p["s_star"], p["r1"], p["r2"]
    th = [p["theta0"] + (2 * h * i if i % 2 == 0 else 2 * h * (s - i - 1)) for i in range(d + 1)]
    ts = [p["theta0_star"] + (2 * hs * i if i % 2 == 0 else 2 * hs * (ss - i - 1)) for i in range(d + 1)]
    k = h * hs
    vp, ph = [], []
    for i in range(1, d + 1):
        if i % 2 == 0 and d % 2 == 0:
            vp.append(-4 * k * i * (i + r1))
            ph.append(4 * k * i * (i - ss - r1))
        elif d % 2 == 0:
            vp.append(-4 * k * (i - d - 1) * (i + r2))
            ph.append(4 * k * (i - d - 1) * (i - ss - r2))
        elif i % 2 == 0:
            vp.append(-4 * k * i * (i - d - 1))
            ph.append(-4 * k * i * (i - d - 1))
        else:
            vp.append(-4 * k * (i + r1) * (i + r2))
            ph.append(-4 * k * (i - ss - r1) * (i - ss - r2))
    return th, ts, vp, ph


def _orphan_bc(p, d, h, s, s_other):
    H, S, So, r = p[h], p[s], p[s_other], p["r"]
    b = [H * r / (1 + S), H * (1 + S) / S, H * (r + So + S) / (1 + S)]
    c = [H * (r + So + So * S) / (1 + S), H * (1 + S) / S, H * (r + S + So * S) / (1 + S)]
    return b, c


@dataclass(frozen=True)
class Family:
    name: str
    params: tuple  # the last entry is solved from the others when tied is set
    theta: Callable
    theta_star: Callable
    varphi: Callable
    phi: Callable
    bc: Callable
    bc_star: Callable
    tied: Callable | None = None  # (p, d) -> (value, divisor)
    tied_check: Callable | None = None
    uses_q: bool = False
    char2_d3: bool = False


def _tied_qracah(p, d):
    return p["s"] * p["s_star"] * p["q"] ** (d + 1), p["r1"]


def _tied_racah(p, d):
    return p["s"] + p["s_star"] + d + 1 - p["r1"], p["one"]


def _tied_bi(p, d):
    return -p["s"] - p["s_star"] + d + 1 - p["r1"], p["one"]


FAMILIES: dict[str, Family] = {}


def _register(f: Family):
    FAMILIES[f.name] = f


def _qf(h, s=None):
    return lambda p, d, i: _q_theta(p, h, s, i)


def _qvp(p, d, i):
    q = p["q"]
    return p["h"] * p["h_star"] * q ** (1 - 2 * i) * (1 - q ** i) * (1 - q ** (i - d - 1))


_register(Family(
    "QRacah", ("q", "h", "h_star", "s", "s_star", "r1", "r2"),
    theta=_qf("h", "s"), theta_star=_qf("h_star", "s_star"),
    varphi=lambda p, d, i: _qvp(p, d, i) * (1 - p["r1"] * p["q"] ** i) * (1 - p["r2"] * p["q"] ** i),
    phi=lambda p, d, i: _qvp(p, d, i) * (p["r1"] - p["s_star"] * p["q"] ** i) * (p["r2"] - p["s_star"] * p["q"] ** i) / p["s_star"],
    bc=lambda p, d: _ratio_bc(p, d, "h", "s_star"),
    bc_star=lambda p, d: _ratio_bc(p, d, "h_star", "s"),
    tied=_tied_qracah, uses_q=True,
))

_register(Family(
    "QHahn", ("q", "h", "h_star", "s_star", "r"),
    theta=_qf("h"), theta_star=_qf("h_star", "s_star"),
    varphi=lambda p, d, i: _qvp(p, d, i) * (1 - p["r"] * p["q"] ** i),
    phi=lambda p, d, i: -p["h"] * p["h_star"] * p["q"] ** (1 - i) * (1 - p["q"] ** i) * (1 - p["q"] ** (i - d - 1))
    * (p["r"] - p["s_star"] * p["q"] ** i),
    bc=lambda p, d: _qhahn_bc(p, d, "h", "s_star"),
    bc_star=lambda p, d: (
        [p["h_star"] * (1 - p["q"] ** (i - d)) * (1 - p["r"] * p["q"] ** (i + 1)) for i in range(d)],
        [p["h_star"] * (1 - p["q"] ** i) * (p["q"] * p["s_star"] - p["r"] * p["q"] ** (i - d)) for i in range(1, d + 1)],
    ),
    uses_q=True,
))

_register(Family(
    "DualQHahn", ("q", "h", "h_star", "s", "r"),
    theta=_qf("h", "s"), theta_star=_qf("h_star"),
    varphi=lambda p, d, i: _qvp(p, d, i) * (1 - p["r"] * p["q"] ** i),
    phi=lambda p, d, i: p["h"] * p["h_star"] * p["q"] ** (d + 2 - 2 * i) * (1 - p["q"] ** i) * (1 - p["q"] ** (i - d - 1))
    * (p["s"] - p["r"] * p["q"] ** (i - d - 1)),
    bc=lambda p, d: (
        [p["h"] * (1 - p["q"] ** (i - d)) * (1 - p["r"] * p["q"] ** (i + 1)) for i in range(d)],
        [p["h"] * (1 - p["q"] ** i) * (p["q"] * p["s"] - p["r"] * p["q"] ** (i - d)) for i in range(1, d + 1)],
    ),
    bc_star=lambda p, d: _qhahn_bc(p, d, "h_star", "s"),
    uses_q=True,
))

_register(Family(
    "QuantumQKrawtchouk", ("q", "s", "h_star", "r"),
    theta=lambda p, d, i: -p["s"] * p["q"] * (1 - p["q"] ** i),
    theta_star=_qf("h_star"),
    varphi=lambda p, d, i: -p["r"] * p["h_star"] * p["q"] ** (1 - i) * (1 - p["q"] ** i) * (1 - p["q"] ** (i - d - 1)),
    phi=lambda p, d, i: p["h_star"] * p["q"] ** (d + 2 - 2 * i) * (1 - p["q"] ** i) * (1 - p["q"] ** (i - d - 1))
    * (p["s"] - p["r"] * p["q"] ** (i - d - 1)),
    bc=lambda p, d: (
        [-p["r"] * p["q"] ** (i + 1) * (1 - p["q"] ** (i - d)) for i in range(d)],
        [(1 - p["q"] ** i) * (p["q"] * p["s"] - p["r"] * p["q"] ** (i - d)) for i in range(1, d + 1)],
    ),
    bc_star=lambda p, d: (
        [p["h_star"] * p["r"] * (1 - p["q"] ** (i - d)) / (p["s"] * p["q"] ** (2 * i + 1)) for i in range(d)],
        [p["h_star"] * (1 - p["q"] ** i) * (p["r"] - p["s"] * p["q"] ** i) / (p["s"] * p["q"] ** (2 * i)) for i in range(1, d + 1)],
    ),
    uses_q=True,
))

_register(Family(
    "QKrawtchouk", ("q", "h", "h_star", "s_star"),
    theta=_qf("h"), theta_star=_qf("h_star", "s_star"),
    varphi=_qvp,
    phi=lambda p, d, i: p["h"] * p["h_star"] * p["s_star"] * p["q"] * (1 - p["q"] ** i) * (1 - p["q"] ** (i - d - 1)),
    bc=lambda p, d: _simple_q_bc(p, d, "h", "s_star"),
    bc_star=lambda p, d: (
        [p["h_star"] * (1 - p["q"] ** (i - d)) for i in range(d)],
        [p["h_star"] * p["s_star"] * p["q"] * (1 - p["q"] ** i) for i in range(1, d + 1)],
    ),
    uses_q=True,
))


def _affine_bc(p, d, h):
    q, H, r = p["q"], p[h], p["r"]
    return (
        [H * (1 - q ** (i - d)) * (1 - r * q ** (i + 1)) for i in range(d)],
        [-H * r * q ** (i - d) * (1 - q ** i) for i in range(1, d + 1)],
    )


_register(Family(
    "AffineQKrawtchouk", ("q", "h", "h_star", "r"),
    theta=_qf("h"), theta_star=_qf("h_star"),
    varphi=lambda p, d, i: _qvp(p, d, i) * (1 - p["r"] * p["q"] ** i),
    phi=lambda p, d, i: -p["h"] * p["h_star"] * p["r"] * p["q"] ** (1 - i) * (1 - p["q"] ** i) * (1 - p["q"] ** (i - d - 1)),
    bc=lambda p, d: _affine_bc(p, d, "h"),
    bc_star=lambda p, d: _affine_bc(p, d, "h_star"),
    uses_q=True,
))

_register(Family(
    "DualQKrawtchouk", ("q", "h", "h_star", "s"),
    theta=_qf("h", "s"), theta_star=_qf("h_star"),
    varphi=_qvp,
    phi=lambda p, d, i: p["h"] * p["h_star"] * p["s"] * p["q"] ** (d + 2 - 2 * i) * (1 - p["q"] ** i) * (1 - p["q"] ** (i - d - 1)),
    bc=lambda p, d: (
        [p["h"] * (1 - p["q"] ** (i - d)) for i in range(d)],
        [p["h"] * p["s"] * p["q"] * (1 - p["q"] ** i) for i in range(1, d + 1)],
    ),
    bc_star=lambda p, d: _simple_q_bc(p, d, "h_star", "s"),
    uses_q=True,
))

_register(Family(
    "Racah", ("h", "h_star", "s", "s_star", "r1", "r2"),
    theta=lambda p, d, i: p["h"] * i * (i + 1 + p["s"]),
    theta_star=lambda p, d, i: p["h_star"] * i * (i + 1 + p["s_star"]),
    varphi=lambda p, d, i: p["h"] * p["h_star"] * i * (i - d - 1) * (i + p["r1"]) * (i + p["r2"]),
    phi=lambda p, d, i: p["h"] * p["h_star"] * i * (i - d - 1) * (i + p["s_star"] - p["r1"]) * (i + p["s_star"] - p["r2"]),
    bc=lambda p, d: _racah_bc(p, d, "h", "s_star"),
    bc_star=lambda p, d: _racah_bc(p, d, "h_star", "s"),
    tied=_tied_racah,
))

_register(Family(
    "Hahn", ("s", "h_star", "s_star", "r"),
    theta=lambda p, d, i: p["s"] * i,
    theta_star=lambda p, d, i: p["h_star"] * i * (i + 1 + p["s_star"]),
    varphi=lambda p, d, i: p["h_star"] * p["s"] * i * (i - d - 1) * (i + p["r"]),
    phi=lambda p, d, i: -p["h_star"] * p["s"] * i * (i - d - 1) * (i + p["s_star"] - p["r"]),
    bc=lambda p, d: _hahn_bc(p, d, "s", "s_star"),
    bc_star=lambda p, d: (
        [p["h_star"] * (i - d) * (i + 1 + p["r"]) for i in range(d)],
        [p["h_star"] * i * (i - d - 1 - p["s_star"] + p["r"]) for i in range(1, d + 1)],
    ),
))

_register(Family(
    "DualHahn", ("h", "s", "s_star", "r"),
    theta=lambda p, d, i: p["h"] * i * (i + 1 + p["s"]),
    theta_star=lambda p, d, i: p["s_star"] * i,
    varphi=lambda p, d, i: p["h"] * p["s_star"] * i * (i - d - 1) * (i + p["r"]),
    phi=lambda p, d, i: p["h"] * p["s_star"] * i * (i - d - 1) * (i + p["r"] - p["s"] - d - 1),
    bc=lambda p, d: (
        [p["h"] * (i - d) * (i + 1 + p["r"]) for i in range(d)],
        [p["h"] * i * (i - d - 1 - p["s"] + p["r"]) for i in range(1, d + 1)],
    ),
    bc_star=lambda p, d: _hahn_bc(p, d, "s_star", "s"),
))


def _kraw_bc(p, d, s, so):
    S, So, r = p[s], p[so], p["r"]
    return [r * (i - d) / So for i in range(d)], [i * (r - S * So) / So for i in range(1, d + 1)]


_register(Family(
    "Krawtchouk", ("s", "s_star", "r"),
    theta=lambda p, d, i: p["s"] * i,
    theta_star=lambda p, d, i: p["s_star"] * i,
    varphi=lambda p, d, i: p["r"] * i * (i - d - 1),
    phi=lambda p, d, i: (p["r"] - p["s"] * p["s_star"]) * i * (i - d - 1),
    bc=lambda p, d: _kraw_bc(p, d, "s", "s_star"),
    bc_star=lambda p, d: _kraw_bc(p, d, "s_star", "s"),
))


def _bi_theta(h, s):
    return lambda p, d, i: p[h] * (p[s] - 1 + (1 - p[s] + 2 * i) * _sign(p["one"], i))


_register(Family(
    "BannaiIto", ("h", "h_star", "s", "s_star", "r1", "r2"),
    theta=_bi_theta("h", "s"), theta_star=_bi_theta("h_star", "s_star"),
    varphi=lambda p, d, i: p["h"] * p["h_star"] * (_sign(p["one"], i) * p["r2"] - 2 * i - p["r2"])
    * (2 * i + p["r1"] - d - 1 + _sign(p["one"], i + d) * (p["r1"] + d + 1)),
    phi=lambda p, d, i: p["h"] * p["h_star"] * (p["s_star"] + p["r2"] + _sign(p["one"], i) * (2 * i - p["s_star"] - p["r2"]))
    * (d + 1 - p["s_star"] - p["r1"] + _sign(p["one"], i + d) * (2 * i - d - 1 - p["s_star"] - p["r1"])),
    bc=lambda p, d: _bi_bc(p, d, "h", "s_star"),
    bc_star=lambda p, d: _bi_bc(p, d, "h_star", "s"),
    tied=_tied_bi,
))


def _orphan_theta(h, s):
    def f(p, d, i):
        H, S = p[h], p[s]
        return (H * 0, H * (1 + S), H, H * S)[i]
    return f


def _orphan_varphi(p, d, i):
    k, r, s, ss = p["h"] * p["h_star"], p["r"], p["s"], p["s_star"]
    return (k * r, k, k * (r + s + ss))[i - 1]


def _orphan_phi(p, d, i):
    k, r, s, ss = p["h"] * p["h_star"], p["r"], p["s"], p["s_star"]
    return (k * (r + s + s * ss), k, k * (r + ss + s * ss))[i - 1]


_register(Family(
    "Orphan", ("h", "h_star", "s", "s_star", "r"),
    theta=_orphan_theta("h", "s"), theta_star=_orphan_theta("h_star", "s_star"),
    varphi=_orphan_varphi, phi=_orphan_phi,
    bc=lambda p, d: _orphan_bc(p, d, "h", "s_star", "s"),
    bc_star=lambda p, d: _orphan_bc(p, d, "h_star", "s", "s_star"),
    char2_d3=True,
))


# --- generation -----------------------------------------------------------------

def _prepared(spec: FamilySpec) -> tuple[Family, dict]:
    fam = FAMILIES[spec.family]
    ctx, d = spec.ctx, spec.d
    if d < 0:
        raise ConstraintViolated("d must be >= 0")
    if fam.char2_d3 and (ctx.characteristic() != 2 or d != 3):
        raise ConstraintViolated("this family needs characteristic 2 and d = 3")
    p = dict(spec.params)
    p.setdefault("theta0", ctx.zero)
    p.setdefault("theta0_star", ctx.zero)
    p["one"] = ctx.one
    needed = fam.params[:-1] if fam.tied else fam.params
    missing = [k for k in needed if k not in p]
    if missing:
        raise ParseError(f"{spec.family} needs parameters {missing}")
    unknown = set(spec.params) - set(fam.params) - {"theta0", "theta0_star"}
    if unknown:
        raise ParseError(f"{spec.family} has no parameters {sorted(unknown)}")
    if fam.uses_q and p["q"].is_zero():
        raise ZeroDenominator("q must be nonzero")
    if fam.tied:
        last = fam.params[-1]
        value, divisor = fam.tied(p, d)
        if last in p:
            if p[last] * divisor != value:
                raise ConstraintViolated(f"{spec.family} constraint fails for {last}")
        else:
            if divisor.is_zero():
                raise ZeroDenominator(f"cannot solve for {last}")
            p[last] = value / divisor
    return fam, p


def completed_spec(spec: FamilySpec) -> FamilySpec:
    """The spec with its tied parameter filled in."""
    fam, p = _prepared(spec)
    params = {k: p[k] for k in fam.params + ("theta0", "theta0_star")}
    return FamilySpec(spec.family, spec.d, spec.ctx, params)


def raw_parray(spec: FamilySpec) -> ParameterArray:
    """The array from the family formulas, without validation."""
    fam, p = _prepared(spec)
    d = spec.d
    try:
        th = [p["theta0"] + fam.theta(p, d, i) for i in range(d + 1)]
        ts = [p["theta0_star"] + fam.theta_star(p, d, i) for i in range(d + 1)]
        vp = [fam.varphi(p, d, i) for i in range(1, d + 1)]
        ph = [fam.phi(p, d, i) for i in range(1, d + 1)]
    except DivisionByZero as exc:
        raise ZeroDenominator(str(exc)) from None
    return ParameterArray(spec.ctx, d, th, ts, vp, ph)


def generate_parray(spec: FamilySpec) -> ParameterArray:
    pa = raw_parray(spec)
    rep = validate(pa)
    if not rep.valid:
        raise Inadmissible("; ".join(v.message for v in rep.violations[:4]))
    return pa


def closed_intersection(spec: FamilySpec) -> IntersectionData:
    fam, p = _prepared(spec)
    d, ctx = spec.d, spec.ctx
    th0, ts0 = p["theta0"], p["theta0_star"]
    try:
        b, c = fam.bc(p, d)
        bs, cs = fam.bc_star(p, d)
        if spec.family == "BannaiIto":
            if (b, c) != tuple(bannai_ito_parity_bc(p, d, "h", "s_star")) or (bs, cs) != tuple(
                bannai_ito_parity_bc(p, d, "h_star", "s")
            ):
                raise CrossCheckFailed("parity displays disagree with the unified displays")
    except DivisionByZero as exc:
        raise ZeroDenominator(str(exc)) from None
    z = ctx.zero
    a = tuple(th0 - (b[i] if i < d else z) - (c[i - 1] if i else z) for i in range(d + 1))
    a_s = tuple(ts0 - (bs[i] if i < d else z) - (cs[i - 1] if i else z) for i in range(d + 1))
    return IntersectionData(a, tuple(b), tuple(c), a_s, tuple(bs), tuple(cs))


# --- sampling -------------------------------------------------------------------

_Q_POOL = tuple(
    Fraction(n) for n in range(1, 7)
) + (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 2))
Q_POOL = tuple(sorted(set(_Q_POOL) | {-x for x in _Q_POOL}))


def _pool(ctx: Field) -> list:
    if ctx.is_finite():
        return list(ctx.elements())
    return [ctx(x) for x in Q_POOL]


def sample_admissible(family: str, d: int, ctx: Field, seed: int, count: int, budget: int | None = None) -> list[FamilySpec]:
    name = canonical_name(family)
    fam = FAMILIES[name]
    if fam.char2_d3 and (ctx.characteristic() != 2 or d != 3):
        raise ExhaustedSearch(f"{name} needs characteristic 2 and d = 3")
    rng = random.Random(seed)
    pool = _pool(ctx)
    free = (fam.params[:-1] if fam.tied else fam.params) + ("theta0", "theta0_star")
    budget = budget if budget is not None else 400 * count
    out: list[FamilySpec] = []
    seen = set()
    for _ in range(budget):
        if len(out) >= count:
            break
        params = {k: rng.choice(pool) for k in free}
        try:
            spec = completed_spec(FamilySpec(name, d, ctx, params))
            key = tuple(sorted((k, str(v)) for k, v in spec.params.items()))
            if key in seen:
                continue
            generate_parray(spec)
            closed_intersection(spec)
        except (ZeroDenominator, Inadmissible, ConstraintViolated, CrossCheckFailed):
            continue
        seen.add(key)
        out.append(spec)
    if not out:
        raise ExhaustedSearch(f"no admissible {name} parameters for d = {d} over {ctx.descriptor()}")
    return out


def intersection_table(spec: FamilySpec, data: IntersectionData) -> str:
    """Plain-text table of a, b, c and their duals."""
    d = spec.d
    cols = ("i", "c", "a", "b", "c*", "a*", "b*")
    rows = [cols]
    for i in range(d + 1):
        rows.append((
            str(i),
            str(data.ci(i)) if i else "-", str(data.a[i]), str(data.bi(i)) if i < d else "-",
            str(data.csi(i)) if i else "-", str(data.a_star[i]), str(data.bsi(i)) if i < d else "-",
        ))
    widths = [max(len(r[k]) for r in rows) for k in range(len(cols))]
    lines = [f"{spec.family} d={d} over {spec.ctx.descriptor()}"]
    lines += ["  ".join(r[k].rjust(widths[k]) for k in range(len(cols))) for r in rows]
    return "\n".join(lines) + "\n"
