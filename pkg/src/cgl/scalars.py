"""Exact scalars: the rational function field Q(q) and monomials c*q^e.

Numerator and denominator are integer polynomials held as ``flint.fmpz_poly``.
Canonical form: gcd(num, den) = 1 in Z[q] (content included), leading
coefficient of the denominator positive, zero stored as 0/1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import flint

from .errors import DivisionByZero, SchemaError

__all__ = [
    "RationalFunction",
    "MonomialScalar",
    "ZERO",
    "ONE",
    "Q",
    "is_root_of_unity",
    "q_int_factorial",
    "field_arith",
    "parse_poly",
    "parse_scalar",
    "scalar_to_json",
]

_fz = flint.fmpz_poly


def _poly_key(p):
    return tuple(int(c) for c in p.coeffs())


class RationalFunction:
    """An element of Q(q), immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den == 0:
            raise DivisionByZero("zero denominator")
        if num == 0:
            self.num, self.den = _fz([0]), _fz([1])
        else:
            g = num.gcd(den)
            if g != 1:
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
            self.num, self.den = num, den
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_fraction(cls, x) -> "RationalFunction":
        x = Fraction(x)
        return cls._raw(_fz([x.numerator]), _fz([x.denominator]))

    @classmethod
    def monomial(cls, c, e: int) -> "RationalFunction":
        c = Fraction(c)
        if c == 0:
            return ZERO
        if e >= 0:
            return cls._raw(_fz([0] * e + [c.numerator]), _fz([c.denominator]))
        return cls(_fz([c.numerator]), _fz([0] * (-e) + [c.denominator]))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num == 0

    def __bool__(self):
        return self.num != 0

    def is_one(self) -> bool:
        return self.num == 1 and self.den == 1

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self.num[0]), int(self.den[0]))

    def as_monomial(self) -> "MonomialScalar | None":
        """Return the MonomialScalar equal to self, or None."""
        if self.is_zero():
            return None
        n, d = _single_term(self.num), _single_term(self.den)
        if n is None or d is None:
            return None
        return MonomialScalar(Fraction(n[0], d[0]), n[1] - d[1])

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.num == 0 or other.num == 0:
            return ZERO
        if other.den == 1 and other.num == 1:
            return self
        if self.den == 1 and self.num == 1:
            return other
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num / g1, other.den / g1) if g1 != 1 else (self.num, other.den)
        n2, d1 = (other.num / g2, self.den / g2) if g2 != 1 else (other.num, self.den)
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RationalFunction._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num == 0:
            raise DivisionByZero("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RationalFunction._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num**n, self.den**n)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((_poly_key(self.num), _poly_key(self.den)))
        return self._hash

    def subs(self, value) -> Fraction:
        """Evaluate at q = value (a rational number)."""
        value = Fraction(value)
        n = _eval(self.num, value)
        d = _eval(self.den, value)
        if d == 0:
            raise DivisionByZero(f"denominator vanishes at q = {value}")
        return n / d

    # -- text -------------------------------------------------------------

    def __str__(self):
        n = format_poly(self.num)
        if self.den == 1:
            return n
        d = format_poly(self.den)
        if len(_terms(self.num)) > 1:
            n = f"({n})"
        if len(_terms(self.den)) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def _eval(p, value: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p.coeffs()):
        acc = acc * value + int(c)
    return acc


def _terms(p):
    return [(int(c), i) for i, c in enumerate(p.coeffs()) if c != 0]


def _single_term(p):
    t = _terms(p)
    return t[0] if len(t) == 1 else None


def _coerce_poly(x):
    if isinstance(x, _fz):
        return x
    if isinstance(x, int):
        return _fz([x])
    if isinstance(x, (list, tuple)):
        return _fz([int(c) for c in x])
    raise TypeError(f"cannot build an integer polynomial from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, MonomialScalar):
        return x.to_rf()
    if isinstance(x, (int, Fraction)):
        return RationalFunction.from_fraction(x)
    return NotImplemented


def format_poly(p) -> str:
    """Ascending-degree text such as ``1 - q^2`` or ``-2*q + 3*q^3``."""
    terms = _terms(p)
    if not terms:
        return "0"
    out = []
    for idx, (c, e) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            var = "q" if e == 1 else f"q^{e}"
            body = var if a == 1 else f"{a}*{var}"
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


ZERO = RationalFunction._raw(_fz([0]), _fz([1]))
ONE = RationalFunction._raw(_fz([1]), _fz([1]))
Q = RationalFunction._raw(_fz([0, 1]), _fz([1]))


@dataclass(frozen=True)
class MonomialScalar:
    """The nonzero scalar c*q^e with c rational."""

    c: Fraction
    e: int = 0

    def __post_init__(self):
        c = Fraction(self.c)
        if c == 0:
            raise ValueError("MonomialScalar coefficient must be nonzero")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", int(self.e))

    @classmethod
    def q(cls, e: int = 1) -> "MonomialScalar":
        return cls(Fraction(1), e)

    def __mul__(self, other):
        if isinstance(other, MonomialScalar):
            return MonomialScalar(self.c * other.c, self.e + other.e)
        if isinstance(other, (int, Fraction)):
            return MonomialScalar(self.c * other, self.e)
        if isinstance(other, RationalFunction):
            return self.to_rf() * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MonomialScalar):
            return MonomialScalar(self.c / other.c, self.e - other.e)
        return NotImplemented

    def __pow__(self, n: int):
        return MonomialScalar(self.c**n, self.e * n)

    def inverse(self) -> "MonomialScalar":
        return MonomialScalar(1 / self.c, -self.e)

    def is_one(self) -> bool:
        return self.c == 1 and self.e == 0

    def to_rf(self) -> RationalFunction:
        return RationalFunction.monomial(self.c, self.e)

    def to_json(self) -> dict:
        return {"c": str(self.c), "e": self.e}

    def __str__(self):
        if self.e == 0:
            return str(self.c)
        var = "q" if self.e == 1 else f"q^{self.e}"
        if self.c == 1:
            return var
        if self.c == -1:
            return f"-{var}"
        return f"{self.c}*{var}"


ONE_M = MonomialScalar(1, 0)


def is_root_of_unity(s: MonomialScalar) -> bool:
    # q is transcendental, and the only roots of unity in Q are +1 and -1
    return s.e == 0 and s.c in (1, -1)


def q_int_factorial(lam: MonomialScalar, m: int) -> RationalFunction:
    """[m]_lam! = prod_{i=1..m} (1 + lam + ... + lam^(i-1)); [0]! = 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    lam_rf = lam.to_rf() if isinstance(lam, MonomialScalar) else lam
    result = ONE
    qint = ZERO
    power = ONE
    for _ in range(m):
        qint = qint + power
        power = power * lam_rf
        result = result * qint
    return result


def field_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# -- parsing ---------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)(?:\s*\*\s*(?P<v1>q)(?:\s*\^\s*(?P<e1>-?\d+))?)?
          |
          (?P<v2>q)(?:\s*\^\s*(?P<e2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> RationalFunction:
    """Parse ``<int> [* q^<int>]`` terms joined by + and -.

    Negative exponents are accepted and produce a monomial denominator.
    """
    if not isinstance(text, str):
        raise SchemaError(f"polynomial must be a string, got {type(text).__name__}")
    pos = 0
    s = text.strip()
    if not s:
        raise SchemaError("empty polynomial")
    coeffs: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not first and m.group("sign") is None):
            raise SchemaError(f"cannot parse polynomial {text!r} at offset {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = int(m.group("coef"))
            e = (int(m.group("e1")) if m.group("e1") else 1) if m.group("v1") else 0
        else:
            c = 1
            e = int(m.group("e2")) if m.group("e2") else 1
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
    shift = -min(0, min(coeffs))
    top = max(coeffs) + shift
    lst = [0] * (top + 1)
    for e, c in coeffs.items():
        lst[e + shift] = c
    return RationalFunction(_fz(lst), _fz([0] * shift + [1]))


def parse_scalar(obj) -> RationalFunction:
    """Accept an int, a rational string like "-1/2", a polynomial string,
    ``{"c", "e"}`` or ``{"num", "den"}``."""
    if isinstance(obj, bool):
        raise SchemaError("boolean is not a scalar")
    if isinstance(obj, int):
        return RationalFunction.from_fraction(obj)
    if isinstance(obj, str):
        if "q" in obj:
            return parse_poly(obj)
        try:
            return RationalFunction.from_fraction(Fraction(obj.strip()))
        except ValueError as exc:
            raise SchemaError(f"bad scalar {obj!r}") from exc
    if isinstance(obj, dict):
        if set(obj) == {"c", "e"}:
            return parse_monomial(obj).to_rf()
        if set(obj) == {"num", "den"}:
            den = parse_poly(obj["den"])
            if den.is_zero():
                raise SchemaError("zero denominator")
            return parse_poly(obj["num"]) / den
    raise SchemaError(f"bad scalar {obj!r}")


def parse_monomial(obj) -> MonomialScalar:
    if not isinstance(obj, dict) or set(obj) != {"c", "e"}:
        raise SchemaError(f"monomial scalar must have exactly keys c, e: {obj!r}")
    try:
        c = Fraction(str(obj["c"]).strip())
    except ValueError as exc:
        raise SchemaError(f"bad monomial coefficient {obj['c']!r}") from exc
    e = obj["e"]
    if isinstance(e, bool) or not isinstance(e, int):
        raise SchemaError(f"monomial exponent must be an integer: {e!r}")
    if c == 0:
        raise SchemaError("monomial coefficient must be nonzero")
    return MonomialScalar(c, e)


def scalar_to_json(x: RationalFunction):
    """Inverse of :func:`parse_scalar`, preferring the monomial form."""
    m = x.as_monomial()
    if m is not None:
        return m.to_json()
    return {"num": format_poly(x.num), "den": format_poly(x.den)}


def product(items, start=ONE):
    return reduce(lambda a, b: a * b, items, start)
