"""Exact scalar fields: the rationals, prime fields GF(p) and extensions GF(p^k).

Every element carries its field, and arithmetic between elements of different
fields raises CtxMismatch. Python ints (and Fractions) are coerced into the
field of the other operand, so ``2 * x`` and ``x - 1`` work as expected.

Textual grammar:
    Q        "a" or "a/b"            (canonical: b > 0, gcd(a, b) = 1)
    GF(p)    decimal, reduced mod p  (canonical: in [0, p))
    GF(p^k)  "[c0,c1,...,c_{k-1}]"   (c0 is the constant term)
"""

from __future__ import annotations

import functools
import itertools
import operator
import re
from fractions import Fraction
from typing import Iterator

from .errors import (
    CompositeP,
    CtxMismatch,
    DivisionByZero,
    NonMonicModulus,
    OutOfRange,
    ParseError,
    ReducibleModulus,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- polynomials over GF(p) as coefficient lists, lowest degree first -------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        coef = r[-1] * inv_lead % p
        q[shift] = coef
        for i, bc in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * bc) % p
        _trim(r)
    return _trim(q), r


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pinverse_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Inverse of a modulo m over GF(p) by the extended Euclidean algorithm."""
    r0, r1 = list(m), _trim([x % p for x in a])
    s0, s1 = [], [1]
    if not r1:
        raise DivisionByZero("inverse of zero")
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    if len(r0) != 1:
        raise DivisionByZero("element not invertible modulo the modulus")
    c = pow(r0[0], -1, p)
    return [x * c % p for x in s0]


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..k//2."""
    k = len(modulus) - 1
    for m in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=m):
            _, r = _pdivmod(modulus, list(low) + [1], p)
            if not r:
                return False
    return True


# --- fields ------------------------------------------------------------------

class Field:
    """Base class for a field context. Subclasses implement payload arithmetic."""

    char: int = 0

    def __call__(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.ctx is not self and x.ctx != self:
                raise CtxMismatch(f"element of {x.ctx} used in {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return FieldElem(self, self._from_int(x))
        if isinstance(x, Fraction):
            return self(x.numerator) / self(x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, self._from_int(0))

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, self._from_int(1))

    def characteristic(self) -> int:
        return self.char

    def is_finite(self) -> bool:
        return self.char != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.descriptor() == other.descriptor()

    def __hash__(self) -> int:
        return hash(self.descriptor())

    def __repr__(self) -> str:
        return f"make_field({self.descriptor()!r})"


class Rationals(Field):
    char = 0

    def descriptor(self) -> str:
        return "Q"

    def _from_int(self, n):
        return Fraction(n)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _dot(self, xs, ys):
        # integer accumulation with a single normalization at the end
        num, den = 0, 1
        for x, y in zip(xs, ys):
            if x and y:
                n = x.numerator * y.numerator
                m = x.denominator * y.denominator
                if m == den:
                    num += n
                else:
                    num = num * m + n * den
                    den *= m
        return Fraction(num, den)

    def parse(self, text: str) -> "FieldElem":
        m = re.fullmatch(r"\s*([+\-−]?\d+)\s*(?:/\s*(\d+))?\s*", text)
        if not m:
            raise ParseError(f"not a rational: {text!r}")
        num = int(m.group(1).replace("−", "-"))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError(f"zero denominator: {text!r}")
        return FieldElem(self, Fraction(num, den))

    def format(self, a) -> str:
        return str(a)

    def elements(self) -> Iterator["FieldElem"]:
        raise TypeError("Q is infinite")


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        self.p = self.char = p

    def descriptor(self) -> str:
        return f"GF:{self.p}"

    def _from_int(self, n):
        return n % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def _dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys)) % self.p

    def parse(self, text: str) -> "FieldElem":
        m = re.fullmatch(r"\s*([+\-−]?\d+)\s*", text)
        if not m:
            raise ParseError(f"not an element of GF({self.p}): {text!r}")
        return FieldElem(self, int(m.group(1).replace("−", "-")) % self.p)

    def format(self, a) -> str:
        return str(a)

    def elements(self) -> Iterator["FieldElem"]:
        return (FieldElem(self, i) for i in range(self.p))


class ExtField(Field):
    """GF(p^k) as GF(p)[x] modulo a monic irreducible polynomial of degree k."""

    def __init__(self, p: int, modulus: list[int]):
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        modulus = [c % p for c in modulus]
        if len(modulus) < 2 or modulus[-1] != 1:
            raise NonMonicModulus(f"modulus {modulus} is not monic of degree >= 1")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
        self.p = self.char = p
        self.modulus = tuple(modulus)
        self.k = len(modulus) - 1

    def descriptor(self) -> str:
        return f"GF:{self.p}:" + ",".join(str(c) for c in self.modulus)

    def _pad(self, a: list[int]) -> tuple:
        return tuple(a) + (0,) * (self.k - len(a))

    def _from_int(self, n):
        return self._pad([n % self.p])

    def _add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x % self.p for x in a)

    def _mul(self, a, b):
        _, r = _pdivmod(_pmul(list(a), list(b), self.p), list(self.modulus), self.p)
        return self._pad(r)

    def _inv(self, a):
        return self._pad(_pinverse_mod(list(a), list(self.modulus), self.p))

    def _is_zero(self, a):
        return not any(a)

    def _dot(self, xs, ys):
        acc = self._from_int(0)
        for x, y in zip(xs, ys):
            if any(x) and any(y):
                acc = self._add(acc, self._mul(x, y))
        return acc

    def gen(self) -> "FieldElem":
        """The class of x."""
        if self.k == 1:
            return FieldElem(self, self._pad([-self.modulus[0] % self.p]))
        return FieldElem(self, self._pad([0, 1]))

    def parse(self, text: str) -> "FieldElem":
        s = text.strip()
        if re.fullmatch(r"[+\-−]?\d+", s):
            return self(int(s.replace("−", "-")))
        m = re.fullmatch(r"\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]", s)
        if not m:
            raise ParseError(f"not an element of GF({self.p}^{self.k}): {text!r}")
        coeffs = [int(c) for c in m.group(1).split(",")] if m.group(1) else []
        if len(coeffs) > self.k:
            raise OutOfRange(f"{len(coeffs)} coefficients for degree-{self.k} extension")
        if any(c >= self.p for c in coeffs):
            raise OutOfRange(f"coefficient outside [0,{self.p}) in {text!r}")
        return FieldElem(self, self._pad(coeffs))

    def format(self, a) -> str:
        return "[" + ",".join(str(c) for c in a) + "]"

    def elements(self) -> Iterator["FieldElem"]:
        return (FieldElem(self, tuple(c)) for c in itertools.product(range(self.p), repeat=self.k))


class FieldElem:
    """An immutable element of a Field with a canonical payload."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: Field, v):
        self.ctx = ctx
        self.v = v

    def _other(self, y):
        if isinstance(y, FieldElem):
            if y.ctx is not self.ctx and y.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {y.ctx}")
            return y.v
        if isinstance(y, (int, Fraction)):
            return self.ctx(y).v
        return NotImplemented

    def __add__(self, y):
        w = self._other(y)
        return NotImplemented if w is NotImplemented else FieldElem(self.ctx, self.ctx._add(self.v, w))

    __radd__ = __add__

    def __sub__(self, y):
        w = self._other(y)
        return NotImplemented if w is NotImplemented else FieldElem(self.ctx, self.ctx._sub(self.v, w))

    def __rsub__(self, y):
        w = self._other(y)
        return NotImplemented if w is NotImplemented else FieldElem(self.ctx, self.ctx._sub(w, self.v))

    def __mul__(self, y):
        w = self._other(y)
        return NotImplemented if w is NotImplemented else FieldElem(self.ctx, self.ctx._mul(self.v, w))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx._neg(self.v))

    def __pos__(self):
        return self

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx._inv(self.v))

    def __truediv__(self, y):
        w = self._other(y)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._mul(self.v, self.ctx._inv(w)))

    def __rtruediv__(self, y):
        w = self._other(y)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._mul(w, self.ctx._inv(self.v)))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = self.ctx.one
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return self.ctx._is_zero(self.v)

    def __bool__(self) -> bool:
        return not self.ctx._is_zero(self.v)

    def __eq__(self, y) -> bool:
        if isinstance(y, FieldElem):
            return (y.ctx is self.ctx or y.ctx == self.ctx) and self.v == y.v
        if isinstance(y, (int, Fraction)):
            try:
                return self.v == self.ctx(y).v
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.v)

    def __str__(self) -> str:
        return self.ctx.format(self.v)

    def __repr__(self) -> str:
        return f"{self.ctx.descriptor()}({self})"


@functools.lru_cache(maxsize=None)
def _cached_field(kind: str, p: int, modulus: tuple) -> Field:
    if kind == "Q":
        return Rationals()
    if kind == "GF":
        return PrimeField(p)
    return ExtField(p, list(modulus))


def make_field(descriptor) -> Field:
    """Build a field from "Q", "GF:p", "GF:p:c0,...,1" or a dict with a kind key.

    Dict form: {"kind": "Rationals"} | {"kind": "PrimeField", "p": 7} |
    {"kind": "ExtField", "p": 2, "modulus": [1, 1, 1]}.
    """
    if isinstance(descriptor, Field):
        return descriptor
    if isinstance(descriptor, dict):
        kind = descriptor.get("kind")
        if kind == "Rationals":
            return _cached_field("Q", 0, ())
        if kind == "PrimeField":
            return _cached_field("GF", int(descriptor["p"]), ())
        if kind == "ExtField":
            return _cached_field("EXT", int(descriptor["p"]), tuple(int(c) for c in descriptor["modulus"]))
        raise ParseError(f"unknown field kind {kind!r}")
    if not isinstance(descriptor, str):
        raise ParseError(f"bad field descriptor {descriptor!r}")
    parts = descriptor.strip().split(":")
    try:
        if parts[0] == "GF" and len(parts) in (2, 3):
            p = int(parts[1])
            modulus = tuple(int(c) for c in parts[2].split(",")) if len(parts) == 3 else None
    except ValueError as exc:
        raise ParseError(f"bad field descriptor {descriptor!r}: {exc}") from None
    if parts == ["Q"]:
        return _cached_field("Q", 0, ())
    if parts[0] == "GF" and len(parts) in (2, 3):
        return _cached_field("GF", p, ()) if modulus is None else _cached_field("EXT", p, modulus)
    raise ParseError(f"bad field descriptor {descriptor!r}")


def parse_elem(ctx: Field, text: str) -> FieldElem:
    return ctx.parse(text)


def format_elem(x: FieldElem) -> str:
    return str(x)


def arith(op: str, x: FieldElem, y: FieldElem | None = None) -> FieldElem:
    if op == "neg":
        return -x
    if not isinstance(y, FieldElem) or not (y.ctx is x.ctx or y.ctx == x.ctx):
        raise CtxMismatch("operands live in different fields")
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__}[op](y)


def inverse(x: FieldElem) -> FieldElem:
    return x.inverse()


Q = make_field("Q")
