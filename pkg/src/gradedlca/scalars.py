"""Exact scalars: rational functions in named parameters over QQ.

A scalar is stored as ``num/den`` with both parts sparse polynomials from
``sympy.polys.rings``.  The pair is gcd-reduced and ``den`` is monic, so equal
scalars have identical representations.  Polynomial scalars (``den == 1``)
take a fast path that never calls a gcd.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.rings import PolyRing


class ParameterConstraintError(ArithmeticError):
    """A required inverse vanishes (identically, or after specialization)."""

    def __init__(self, message, vanishing=None):
        super().__init__(message)
        self.vanishing = vanishing


@lru_cache(maxsize=None)
def param_ring(names: tuple) -> PolyRing:
    return PolyRing(tuple(names), QQ)


def _qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(value)


class Scalar:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        # trusted constructor: callers pass reduced, monic-denominator pairs
        self.num = num
        self.den = num.ring.one if den is None else den

    # -- construction -------------------------------------------------
    @classmethod
    def from_value(cls, value, params=()):
        ring = param_ring(tuple(params))
        if isinstance(value, Scalar):
            return value.lift(tuple(params))
        return cls(ring.ground_new(_qq(value)))

    @classmethod
    def param(cls, name, params):
        ring = param_ring(tuple(params))
        return cls(ring.gens[ring.symbols.index(_sym(ring, name))])

    @classmethod
    def fraction(cls, num, den):
        if not den:
            raise ZeroDivisionError("scalar division by zero")
        if den.is_ground:
            return cls(num.quo_ground(den.LC))
        p, q = num.cancel(den)
        lc = q.LC
        if lc != 1:
            p, q = p.quo_ground(lc), q.quo_ground(lc)
        return cls(p, q)

    @property
    def ring(self):
        return self.num.ring

    @property
    def params(self) -> tuple:
        return tuple(str(s) for s in self.num.ring.symbols)

    def lift(self, params: tuple) -> "Scalar":
        if self.params == tuple(params):
            return self
        ring = param_ring(tuple(params))
        return Scalar(self.num.set_ring(ring), self.den.set_ring(ring))

    # -- predicates ---------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    @property
    def is_rational(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"scalar {self} depends on parameters")
        c = self.num.LC if self.num else QQ(0)
        return Fraction(int(c.numerator), int(c.denominator))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.num.ring is not self.num.ring:
                names = tuple(sorted(set(self.params) | set(other.params)))
                return self.lift(names), other.lift(names)
            return self, other
        return self, Scalar(self.num.ring.ground_new(_qq(other)))

    def __add__(self, other):
        a, b = self._coerce(other)
        if a.den == 1 and b.den == 1:
            return Scalar(a.num + b.num)
        if a.den == b.den:
            return Scalar.fraction(a.num + b.num, a.den)
        return Scalar.fraction(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a.den == 1 and b.den == 1:
            return Scalar(a.num * b.num)
        if not a.num or not b.num:
            return Scalar(a.num.ring.zero)
        return Scalar.fraction(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ParameterConstraintError("inverse of the zero scalar", vanishing=self)
        return Scalar.fraction(self.den, self.num)

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if b.num.is_ground and b.den == 1:
            if not b.num:
                raise ParameterConstraintError("division by the zero scalar", vanishing=b)
            return Scalar(a.num.quo_ground(b.num.LC), a.den)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.den == 1 and self.num == _qq(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        a, b = self._coerce(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        if self.is_rational:
            return hash(self.to_fraction())
        return hash((str(self.num), str(self.den)))

    # -- specialization -----------------------------------------------
    def specialize(self, values: dict) -> "Scalar":
        """Substitute rational values for some parameters."""
        values = {k: v for k, v in values.items() if k in self.params}
        if not values:
            return self
        keep = tuple(p for p in self.params if p not in values)
        num = _evaluate(self.num, values, keep)
        den = _evaluate(self.den, values, keep)
        if not den:
            raise ParameterConstraintError(
                f"denominator {format_param_poly(self.den)} vanishes at "
                + ", ".join(f"{k}={v}" for k, v in sorted(values.items())),
                vanishing=format_param_poly(self.den),
            )
        return Scalar.fraction(num, den)

    # -- printing -----------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({self})"


def _sym(ring, name):
    for s in ring.symbols:
        if str(s) == name:
            return s
    raise KeyError(name)


def _evaluate(p, values, keep):
    ring = param_ring(keep)
    idx = [str(s) for s in p.ring.symbols]
    out = ring.zero
    for monom, coeff in p.terms():
        c = QQ(coeff)
        new = [0] * len(keep)
        for name, e in zip(idx, monom):
            if name in values:
                c *= _qq(values[name]) ** e
            else:
                new[keep.index(name)] = e
        if c:
            out += ring({tuple(new): c})
    return out


def format_rational(c) -> str:
    n, d = int(c.numerator), int(c.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def format_param_poly(p) -> str:
    """Render a parameter polynomial in the expression grammar."""
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    parts = []
    terms = sorted(p.terms(), key=lambda t: (-sum(t[0]), [-e for e in t[0]]))
    for monom, coeff in terms:
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e
        )
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def format_scalar(c: Scalar) -> str:
    num = format_param_poly(c.num)
    if c.den == 1:
        return num
    return f"({num})/({format_param_poly(c.den)})"


def _rational_sqrt(c):
    from math import isqrt

    n, d = int(c.numerator), int(c.denominator)
    if n < 0:
        return None
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return QQ(rn, rd)


def sqrt_scalar(c: Scalar):
    """A square root of ``c`` inside the parameter field, or ``None``."""
    if not c:
        return c
    prod = c.num * c.den
    if prod.is_ground:
        root = _rational_sqrt(prod.LC)
        return None if root is None else Scalar.fraction(prod.ring.ground_new(root), c.den)
    const, factors = prod.factor_list()
    root = _rational_sqrt(const)
    if root is None:
        return None
    out = prod.ring.ground_new(root)
    for f, m in factors:
        if m % 2:
            return None
        out *= f ** (m // 2)
    return Scalar.fraction(out, c.den)
