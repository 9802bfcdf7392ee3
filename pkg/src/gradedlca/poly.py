"""Polynomials in d, x, y (for the bracket variables) and i, j, k (grading
indices) with coefficients in a rational function field of parameters.

A :class:`Poly` is stored as ``num / den`` where ``num`` lives in
``QQ[params, d, x, y, i, j, k]`` and ``den`` is a monic polynomial in the
parameters alone, coprime to ``num``.  Almost every polynomial met in practice
has ``den == 1`` and arithmetic then stays inside sympy's sparse ring.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce

from sympy import QQ
from sympy.polys.rings import PolyRing

from .scalars import ParameterConstraintError, Scalar, format_rational, param_ring

VARS = ("d", "x", "y", "i", "j", "k")
NVARS = len(VARS)
VAR_INDEX = {v: n for n, v in enumerate(VARS)}


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UndeclaredSymbolError(ValueError):
    def __init__(self, name, position=None):
        super().__init__(f"undeclared identifier {name!r}")
        self.name = name
        self.position = position


@lru_cache(maxsize=None)
def full_ring(params: tuple) -> PolyRing:
    clash = set(params) & set(VARS)
    if clash:
        raise ValueError(f"parameter names clash with variables: {sorted(clash)}")
    return PolyRing(tuple(params) + VARS, QQ)


def normalize_params(params) -> tuple:
    return tuple(sorted(set(params)))


def _union(a: tuple, b: tuple) -> tuple:
    return a if a == b else normalize_params(a + b)


class Poly:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = num.ring.one if den is None else den

    # -- construction -------------------------------------------------
    @classmethod
    def build(cls, num, den):
        """Reduce ``num/den`` (``den`` parameter-only) to canonical form."""
        if not den:
            raise ParameterConstraintError("polynomial with zero denominator")
        if den.is_ground:
            lc = den.LC
            return cls(num if lc == 1 else num.quo_ground(lc))
        if not num:
            return cls(num)
        p, q = num.cancel(den)
        lc = q.LC
        if lc != 1:
            p, q = p.quo_ground(lc), q.quo_ground(lc)
        return cls(p, q)

    @classmethod
    def zero(cls, params=()):
        return cls(full_ring(normalize_params(params)).zero)

    @classmethod
    def one(cls, params=()):
        return cls(full_ring(normalize_params(params)).one)

    @classmethod
    def const(cls, value, params=()):
        if isinstance(value, Scalar):
            return cls.from_scalar(value, params)
        if isinstance(value, Fraction):
            value = QQ(value.numerator, value.denominator)
        return cls(full_ring(normalize_params(params)).ground_new(QQ(value)))

    @classmethod
    def var(cls, name, params=()):
        ring = full_ring(normalize_params(params))
        return cls(ring.gens[len(ring.symbols) - NVARS + VAR_INDEX[name]])

    @classmethod
    def param(cls, name, params):
        params = normalize_params(tuple(params) + (name,))
        ring = full_ring(params)
        return cls(ring.gens[params.index(name)])

    @classmethod
    def from_scalar(cls, c: Scalar, params=()):
        params = _union(normalize_params(params), c.params)
        ring = full_ring(params)
        return cls(c.num.set_ring(ring), c.den.set_ring(ring))

    @classmethod
    def coerce(cls, value, params=()):
        if isinstance(value, Poly):
            return value
        if isinstance(value, str):
            return parse(value, params)
        return cls.const(value, params)

    # -- ring bookkeeping ---------------------------------------------
    @property
    def ring(self):
        return self.num.ring

    @property
    def params(self) -> tuple:
        return tuple(str(s) for s in self.num.ring.symbols[:-NVARS])

    def lift(self, params: tuple) -> "Poly":
        if self.params == params:
            return self
        ring = full_ring(params)
        return Poly(self.num.set_ring(ring), self.den.set_ring(ring))

    def with_params(self, params) -> "Poly":
        return self.lift(_union(self.params, normalize_params(params)))

    def _pair(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, Scalar):
                other = Poly.from_scalar(other, self.params)
            else:
                other = Poly.const(other, self.params)
        if other.num.ring is self.num.ring:
            return self, other
        names = _union(self.params, other.params)
        return self.lift(names), other.lift(names)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a.den == b.den:
            if a.den == 1:
                return Poly(a.num + b.num)
            return Poly.build(a.num + b.num, a.den)
        return Poly.build(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-self.num, self.den)

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.den == 1 and b.den == 1:
            return Poly(a.num * b.num)
        return Poly.build(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return Poly(self.num**n, self.den**n)

    def scale(self, c: Scalar) -> "Poly":
        return self * Poly.from_scalar(c, self.params)

    def __truediv__(self, other):
        """Division by a nonzero parameter-only quantity."""
        a, b = self._pair(other)
        if not b.is_scalar():
            raise ValueError("can only divide by a scalar; use divide_in_var")
        if not b.num:
            raise ParameterConstraintError("division by zero scalar")
        return Poly.build(a.num * b.den, a.den * b.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar, str)):
            other = Poly.coerce(other, self.params)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._pair(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        return hash(str(self))

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    # -- structure ----------------------------------------------------
    def var_terms(self) -> dict:
        """Map exponent tuples over ``VARS`` to parameter-ring numerators."""
        npar = len(self.num.ring.symbols) - NVARS
        pring = param_ring(self.params)
        out = {}
        for monom, coeff in self.num.terms():
            key, pm = monom[npar:], monom[:npar]
            out.setdefault(key, []).append((pm, coeff))
        return {k: pring(dict(v)) for k, v in out.items()}

    def terms(self) -> dict:
        """Map exponent tuples over ``VARS`` to :class:`Scalar` coefficients."""
        den = self.den.set_ring(param_ring(self.params))
        return {k: Scalar.fraction(v, den) for k, v in self.var_terms().items()}

    def free_vars(self) -> set:
        found = set()
        for key in self.var_terms():
            found.update(VARS[n] for n, e in enumerate(key) if e)
        return found

    def is_scalar(self) -> bool:
        return not self.free_vars()

    def scalar(self) -> Scalar:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        pring = param_ring(self.params)
        return Scalar.fraction(self.num.set_ring(pring), self.den.set_ring(pring))

    def degree(self, var=None) -> int:
        """Degree in ``var`` (or total degree in all of ``VARS``); -1 for zero."""
        if not self.num:
            return -1
        if var is None:
            return max(sum(k) for k in self.var_terms())
        n = VAR_INDEX[var]
        return max(k[n] for k in self.var_terms())

    def total_degree(self, variables) -> int:
        if not self.num:
            return -1
        idx = [VAR_INDEX[v] for v in variables]
        return max(sum(k[n] for n in idx) for k in self.var_terms())

    def coefficients(self, var) -> dict:
        """Map each power of ``var`` to its coefficient Poly."""
        ring = self.num.ring
        pos = len(ring.symbols) - NVARS + VAR_INDEX[var]
        parts = {}
        for monom, coeff in self.num.terms():
            e = monom[pos]
            m = list(monom)
            m[pos] = 0
            parts.setdefault(e, {})[tuple(m)] = coeff
        return {e: Poly(ring(t), self.den) for e, t in parts.items()}

    def coeff(self, var, power) -> "Poly":
        return self.coefficients(var).get(power, Poly.zero(self.params))

    def leading(self, var):
        d = self.degree(var)
        return d, self.coeff(var, d)

    def homogeneous_part(self, degree, variables=("d", "x", "y")) -> "Poly":
        idx = [len(self.ring.symbols) - NVARS + VAR_INDEX[v] for v in variables]
        num = self.ring(
            {m: c for m, c in self.num.terms() if sum(m[n] for n in idx) == degree}
        )
        return Poly(num, self.den)

    # -- substitution -------------------------------------------------
    def substitute(self, bindings: dict) -> "Poly":
        """Simultaneously replace distinguished variables by Polys."""
        if not bindings:
            return self
        images = {v: Poly.coerce(e, self.params) for v, e in bindings.items()}
        names = self.params
        for e in images.values():
            names = _union(names, e.params)
        me = self.lift(names)
        den = me.den
        repl = []
        ring = me.num.ring
        base = len(ring.symbols) - NVARS
        for v, e in images.items():
            e = e.lift(names)
            if e.den != 1:
                # rare: bring everything to a common denominator first
                return me._substitute_slow(images)
            repl.append((ring.gens[base + VAR_INDEX[v]], e.num))
        return Poly(me.num.compose(repl), den)

    def _substitute_slow(self, images):
        out = Poly.zero(self.params)
        for key, c in self.terms().items():
            term = Poly.from_scalar(c, self.params)
            for n, e in enumerate(key):
                if not e:
                    continue
                v = VARS[n]
                base = images[v] if v in images else Poly.var(v, self.params)
                term = term * base**e
            out = out + term
        return out

    def __call__(self, **bindings):
        return self.substitute(bindings)

    def specialize(self, values: dict) -> "Poly":
        """Substitute rational values for parameters (dropping them)."""
        values = {k: v for k, v in values.items() if k in self.params}
        if not values:
            return self
        keep = tuple(p for p in self.params if p not in values)
        ring = self.num.ring
        num, den = self.num, self.den
        for name, v in values.items():
            g = ring.gens[self.params.index(name)]
            if isinstance(v, Fraction):
                v = QQ(v.numerator, v.denominator)
            num = num.subs(g, QQ(v))
            den = den.subs(g, QQ(v))
        if not den:
            raise ParameterConstraintError(
                f"denominator {Poly(self.den)} vanishes at "
                + ", ".join(f"{k}={v}" for k, v in sorted(values.items())),
                vanishing=str(Poly(self.den)),
            )
        target = full_ring(keep)
        return Poly.build(num.set_ring(target), den.set_ring(target))

    def substitute_params(self, images: dict) -> "Poly":
        """Replace parameters by Polys free of the distinguished variables."""
        images = {k: Poly.coerce(v, ()) for k, v in images.items() if k in self.params}
        if not images:
            return self
        keep = tuple(p for p in self.params if p not in images)
        names = keep
        for v in images.values():
            if not v.is_scalar():
                raise ValueError("parameter images must be free of d, x, y, i, j, k")
            names = _union(names, v.params)
        npar = len(self.params)
        out = Poly.zero(names)
        for monom, coeff in self.num.terms():
            term = Poly(full_ring(names)({(0,) * len(names) + monom[npar:]: coeff}))
            for name, e in zip(self.params, monom[:npar]):
                if not e:
                    continue
                base = images[name] if name in images else Poly.param(name, names)
                term = term * base.lift(_union(names, base.params)) ** e
            out = out + term
        if self.den == 1:
            return out
        return out / Poly(self.den).substitute_params(images)

    # -- printing -----------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"


# -- printing -------------------------------------------------------------

def _monomial(names, exps):
    return [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]


def _format_num(num) -> str:
    if not num:
        return "0"
    names = [str(s) for s in num.ring.symbols]
    npar = len(names) - NVARS

    def key(t):
        m = t[0]
        vm, pm = m[npar:], m[:npar]
        return (-sum(vm), [-e for e in vm], -sum(pm), [-e for e in pm])

    parts = []
    for monom, coeff in sorted(num.terms(), key=key):
        factors = _monomial(names[:npar], monom[:npar]) + _monomial(
            names[npar:], monom[npar:]
        )
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def format_poly(p: Poly) -> str:
    num = _format_num(p.num)
    if p.den == 1:
        return num
    return f"({num})/({_format_num(p.den)})"


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, params):
        self.tokens = _tokenize(text)
        self.n = 0
        self.params = normalize_params(params)

    def peek(self):
        return self.tokens[self.n]

    def take(self, kind=None):
        tok = self.tokens[self.n]
        if kind is not None and tok[0] != kind:
            what = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", tok[2])
        self.n += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_scalar():
                    raise ParseError("divisor must be free of d, x, y, i, j, k", pos)
                if not rhs:
                    raise ParseError("division by zero", pos)
                value = value / rhs
        return value

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.factor()
        value = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            value = value ** int(tok[1])
        return value

    def base(self):
        kind, text, pos = self.peek()
        if kind == "int":
            self.take()
            return Poly.const(int(text), self.params)
        if kind == "id":
            self.take()
            if text in VAR_INDEX:
                return Poly.var(text, self.params)
            if text in self.params:
                return Poly.param(text, self.params)
            raise UndeclaredSymbolError(text, pos)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = text or "end of input"
        raise ParseError(f"unexpected {what!r}", pos)


def parse(text: str, params=()) -> Poly:
    """Parse an expression string into a canonical :class:`Poly`."""
    p = _Parser(str(text), params)
    value = p.expr()
    kind, text_, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {text_!r}", pos)
    return value


# -- division and gcd -----------------------------------------------------

def divide_in_var(p: Poly, q: Poly, var: str):
    """Long division of ``p`` by ``q`` viewed as univariate in ``var``.

    The leading coefficient of ``q`` must be a nonzero scalar.
    """
    p, q = p._pair(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    dq, lc = q.leading(var)
    if not lc.is_scalar():
        raise ValueError(f"leading coefficient {lc} of divisor is not a scalar")
    inv = lc.scalar().inverse()
    x = Poly.var(var, p.params)
    quotient = Poly.zero(p.params)
    rem = p
    while rem and rem.degree(var) >= dq:
        dr, lr = rem.leading(var)
        t = lr.scale(inv) * x ** (dr - dq)
        quotient = quotient + t
        rem = rem - t * q
    return quotient, rem


def exact_quotient(p: Poly, q: Poly, var: str = "d") -> Poly:
    quotient, rem = divide_in_var(p, q, var)
    if rem:
        raise ArithmeticError(f"{q} does not divide {p}: remainder {rem}")
    return quotient


def divides(q: Poly, p: Poly, var: str = "d") -> bool:
    """Whether ``q`` divides ``p`` over the field of the symbols other than ``var``."""
    p, q = p._pair(q)
    if not q:
        return not p
    if q.leading(var)[1].is_scalar():
        return not divide_in_var(p, q, var)[1]
    # by Gauss's lemma it is enough to divide by the primitive part, and a
    # single polynomial is a Groebner basis of the ideal it generates
    return not p.num.rem(normalize_in_var(q, var).num)


def _param_gcd(polys):
    return reduce(lambda a, b: a.gcd(b), polys)


def _content(num, var_pos):
    """Gcd of the coefficients of ``num`` viewed as univariate at ``var_pos``."""
    ring = num.ring
    groups = {}
    for monom, coeff in num.terms():
        m = list(monom)
        e = m[var_pos]
        m[var_pos] = 0
        groups.setdefault(e, {})[tuple(m)] = coeff
    return _param_gcd([ring(t) for t in groups.values()])


def normalize_in_var(p: Poly, var: str) -> Poly:
    """Scale ``p`` to a canonical associate over the coefficient field.

    The result is primitive in ``var``; when its leading coefficient is a
    scalar it is made monic.
    """
    if not p:
        return p
    ring = p.num.ring
    pos = len(ring.symbols) - NVARS + VAR_INDEX[var]
    num = p.num.exquo(_content(p.num, pos))
    q = Poly(num)
    _, lc = q.leading(var)
    if lc.is_scalar():
        return q.scale(lc.scalar().inverse())
    return q if num.LC > 0 else -q


def gcd_in_var(p: Poly, q: Poly, var: str) -> Poly:
    """Greatest common divisor over the field of the remaining symbols."""
    p, q = p._pair(q)
    if not p and not q:
        return p
    if not p:
        return normalize_in_var(q, var)
    if not q:
        return normalize_in_var(p, var)
    return normalize_in_var(Poly(p.num.gcd(q.num)), var)
