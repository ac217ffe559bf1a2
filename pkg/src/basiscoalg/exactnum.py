"""Exact scalars: booleans, naturals, integers, rationals and Gaussian rationals.

Raw payloads are plain Python values (``bool``, ``int``, ``Fraction``) plus the
``Gaussian`` class below.  A ``ScalarDomain`` knows how to add, multiply, parse
and print its payloads; ``Scalar`` pairs a payload with its domain for callers
that want operator syntax with domain checks.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .errors import ScalarError

_RAT = r"-?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^({_RAT})$")
_GAUSS_FULL_RE = re.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)i$")
_GAUSS_IMAG_RE = re.compile(rf"^({_RAT})i$")


def _parse_rational(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ScalarError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _to_fraction(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise ScalarError(f"boolean {x!r} is not a number")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise ScalarError(f"cannot read {x!r} as a rational")


class Gaussian:
    """An exact element of Q(i), stored as two Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re_part: Any = 0, im_part: Any = 0):
        object.__setattr__(self, "re", _to_fraction(re_part))
        object.__setattr__(self, "im", _to_fraction(im_part))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    @staticmethod
    def lift(x: Any) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        return Gaussian(_to_fraction(x), 0)

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        try:
            o = Gaussian.lift(other)
        except ScalarError:
            return NotImplemented
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = Gaussian.lift(other)
        except ScalarError:
            return NotImplemented
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Gaussian.lift(other)
        except ScalarError:
            return NotImplemented
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "Gaussian":
        n = self.norm()
        if n == 0:
            raise ScalarError("division by zero")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = Gaussian.lift(other)
        except ScalarError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Gaussian.lift(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gaussian({format_gaussian(self)!r})"

    def __str__(self):
        return format_gaussian(self)


I = Gaussian(0, 1)


def format_gaussian(g: Gaussian) -> str:
    if g.im == 0:
        return str(g.re)
    if g.re == 0:
        return f"{g.im}i"
    if g.im > 0:
        return f"{g.re}+{g.im}i"
    return f"{g.re}-{-g.im}i"


@dataclass(frozen=True)
class ScalarDomain:
    """One of the five supported scalar semirings."""

    name: str

    # structural flags
    @property
    def is_field(self) -> bool:
        return self.name in ("rational", "gaussian_rational")

    @property
    def has_negation(self) -> bool:
        return self.name in ("integer", "rational", "gaussian_rational")

    @property
    def has_involution(self) -> bool:
        return self.name == "gaussian_rational"

    def zero(self):
        return {
            "boolean": False,
            "natural": 0,
            "integer": 0,
            "rational": Fraction(0),
            "gaussian_rational": Gaussian(0, 0),
        }[self.name]

    def one(self):
        return {
            "boolean": True,
            "natural": 1,
            "integer": 1,
            "rational": Fraction(1),
            "gaussian_rational": Gaussian(1, 0),
        }[self.name]

    def coerce(self, x: Any):
        """Canonical payload for ``x`` in this domain, or ScalarError."""
        if isinstance(x, Scalar):
            if x.domain != self:
                raise ScalarError(f"domain mismatch: {x.domain.name} vs {self.name}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.name == "boolean":
            if isinstance(x, bool):
                return x
            raise ScalarError(f"{x!r} is not a boolean")
        if isinstance(x, bool):
            raise ScalarError(f"boolean {x!r} in domain {self.name}")
        if self.name == "gaussian_rational":
            if isinstance(x, Gaussian):
                return x
            return Gaussian.lift(x)
        if isinstance(x, Gaussian):
            if x.im != 0:
                raise ScalarError(f"{x} is not real")
            x = x.re
        q = _to_fraction(x)
        if self.name == "rational":
            return q
        if q.denominator != 1:
            raise ScalarError(f"{x} is not an integer")
        n = q.numerator
        if self.name == "natural" and n < 0:
            raise ScalarError(f"{x} is negative")
        return n

    def contains(self, x: Any) -> bool:
        try:
            self.coerce(x)
        except ScalarError:
            return False
        return True

    def parse(self, text: str):
        t = text.strip()
        if self.name == "boolean":
            if t == "true":
                return True
            if t == "false":
                return False
            raise ScalarError(f"bad boolean literal {text!r}")
        if self.name == "gaussian_rational":
            m = _GAUSS_FULL_RE.match(t)
            if m:
                im = _parse_rational(m.group(3))
                return Gaussian(_parse_rational(m.group(1)), im if m.group(2) == "+" else -im)
            m = _GAUSS_IMAG_RE.match(t)
            if m:
                return Gaussian(0, _parse_rational(m.group(1)))
            m = _RAT_RE.match(t)
            if m:
                return Gaussian(_parse_rational(t), 0)
            raise ScalarError(f"bad Gaussian rational literal {text!r}")
        if not _RAT_RE.match(t):
            raise ScalarError(f"bad {self.name} literal {text!r}")
        return self.coerce(_parse_rational(t))

    def format(self, x: Any) -> str:
        x = self.coerce(x)
        if self.name == "boolean":
            return "true" if x else "false"
        return str(x)

    def add(self, x, y):
        if self.name == "boolean":
            return x or y
        return x + y

    def mul(self, x, y):
        if self.name == "boolean":
            return x and y
        return x * y

    def neg(self, x):
        if not self.has_negation:
            raise ScalarError(f"no negation in {self.name}")
        return -x

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def inv(self, x):
        if not self.is_field:
            raise ScalarError(f"no division in {self.name}")
        if x == 0:
            raise ScalarError("division by zero")
        if isinstance(x, Gaussian):
            return x.inverse()
        return 1 / x

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def conj(self, x):
        if isinstance(x, Gaussian):
            return x.conjugate()
        return x

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def total(self, xs):
        acc = self.zero()
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def random(self, rng: random.Random, bound: int = 3):
        """A small random payload; used by the sampling law checks."""
        if self.name == "boolean":
            return rng.random() < 0.5
        if self.name == "natural":
            return rng.randint(0, bound)
        if self.name == "integer":
            return rng.randint(-bound, bound)
        q = lambda: Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if self.name == "rational":
            return q()
        return Gaussian(q(), q())


BOOLEAN = ScalarDomain("boolean")
NATURAL = ScalarDomain("natural")
INTEGER = ScalarDomain("integer")
RATIONAL = ScalarDomain("rational")
GAUSSIAN = ScalarDomain("gaussian_rational")

DOMAINS = {d.name: d for d in (BOOLEAN, NATURAL, INTEGER, RATIONAL, GAUSSIAN)}


def domain_named(name: str) -> ScalarDomain:
    try:
        return DOMAINS[name]
    except KeyError:
        raise ScalarError(f"unknown scalar domain {name!r}") from None


@dataclass(frozen=True)
class Scalar:
    """A payload tagged with its domain; arithmetic refuses to mix domains."""

    domain: ScalarDomain
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.domain.coerce(self.value))

    def _other(self, other) -> Any:
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise ScalarError(
                    f"domain mismatch: {self.domain.name} vs {other.domain.name}"
                )
            return other.value
        return self.domain.coerce(other)

    def __add__(self, other):
        return Scalar(self.domain, self.domain.add(self.value, self._other(other)))

    def __mul__(self, other):
        return Scalar(self.domain, self.domain.mul(self.value, self._other(other)))

    def __sub__(self, other):
        return Scalar(self.domain, self.domain.sub(self.value, self._other(other)))

    def __truediv__(self, other):
        return Scalar(self.domain, self.domain.div(self.value, self._other(other)))

    def __neg__(self):
        return Scalar(self.domain, self.domain.neg(self.value))

    def conj(self) -> "Scalar":
        return Scalar(self.domain, self.domain.conj(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.domain, self.domain.inv(self.value))

    def __str__(self):
        return self.domain.format(self.value)


def scalar_parse(text: str, domain: ScalarDomain | str) -> Scalar:
    if isinstance(domain, str):
        domain = domain_named(domain)
    return Scalar(domain, domain.parse(text))


def scalar_print(s: Scalar) -> str:
    return s.domain.format(s.value)


_OPS: dict[str, Callable[..., Scalar]] = {
    "add": lambda a, b: a + b,
    "mul": lambda a, b: a * b,
    "sub": lambda a, b: a - b,
    "div": lambda a, b: a / b,
    "neg": lambda a: -a,
    "inv": lambda a: a.inverse(),
    "conj": lambda a: a.conj(),
}


def scalar_arith(op: str, a: Scalar, b: Scalar | None = None) -> Scalar:
    """Apply ``op`` (add, mul, sub, div, neg, inv, conj) exactly."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ScalarError(f"unknown operation {op!r}") from None
    if op in ("neg", "inv", "conj"):
        return fn(a)
    if b is None:
        raise ScalarError(f"{op} needs two operands")
    return fn(a, b)
