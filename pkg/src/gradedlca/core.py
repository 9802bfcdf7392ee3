"""Graded Lie conformal algebras with rank-one components.

An :class:`AlgebraSpec` answers ``p(i, j)``, the structure polynomial of
``[L_i _x L_j] = p(i, j)(d, x) L_{i+j}``.  Brackets are given either by an
:class:`ExplicitTable` on a finite window or by a :class:`PiecewiseRule`
whose branches are guarded polynomials in ``d, x, i, j``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from .poly import Poly, exact_quotient, divide_in_var, parse

# -- windows and support ----------------------------------------------------


def window_range(window):
    lo, hi = window
    return range(lo, hi + 1)


@dataclass(frozen=True)
class Support:
    """Degrees carrying a generator: an interval, possibly unbounded."""

    lo: int | None = None
    hi: int | None = None

    def __contains__(self, n: int) -> bool:
        return (self.lo is None or n >= self.lo) and (self.hi is None or n <= self.hi)

    @property
    def is_all(self) -> bool:
        return self.lo is None and self.hi is None

    def clip(self, window):
        lo, hi = window
        if self.lo is not None:
            lo = max(lo, self.lo)
        if self.hi is not None:
            hi = min(hi, self.hi)
        return (lo, hi)

    def to_json(self):
        if self.is_all:
            return {"rule": True}
        return {"window": [self.lo, self.hi]}


class OutOfWindow(LookupError):
    def __init__(self, degree):
        super().__init__(f"degree {degree} lies outside the presented window")
        self.degree = degree


class OutOfSupport(ValueError):
    def __init__(self, degree):
        super().__init__(f"no generator in degree {degree}")
        self.degree = degree


# -- guards -----------------------------------------------------------------

_OPS = {
    "==": lambda v: v == 0,
    "!=": lambda v: v != 0,
    "<=": lambda v: v <= 0,
    ">=": lambda v: v >= 0,
    "<": lambda v: v < 0,
    ">": lambda v: v > 0,
}
_ATOM = re.compile(r"^(.+?)\s*(==|!=|<=|>=|<|>)\s*(.+?)(?:\s+mod\s+(\d+))?$")


@dataclass(frozen=True)
class Atom:
    """``a*i + b*j + c  op  0``, or ``a*i + b*j + c == 0 (mod m)``."""

    a: int
    b: int
    c: int
    op: str
    mod: int = 0

    def holds(self, i: int, j: int) -> bool:
        v = self.a * i + self.b * j + self.c
        if self.mod:
            return v % self.mod == 0
        return _OPS[self.op](v)

    def swapped(self) -> "Atom":
        return Atom(self.b, self.a, self.c, self.op, self.mod)

    def __str__(self):
        lhs = []
        for coef, name in ((self.a, "i"), (self.b, "j")):
            if coef:
                mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
                sign = "-" if coef < 0 else ("+" if lhs else "")
                lhs.append(f"{' ' if lhs else ''}{sign}{' ' if lhs else ''}{mag}{name}")
        text = "".join(lhs) or "0"
        rhs = -self.c
        out = f"{text} {'==' if self.mod else self.op} {rhs}"
        return f"{out} mod {self.mod}" if self.mod else out


def parse_atom(text: str) -> Atom:
    m = _ATOM.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse guard atom {text!r}")
    lhs, op, rhs, mod = m.groups()
    form = parse(f"({lhs}) - ({rhs})")
    if form.free_vars() - {"i", "j"} or form.degree() > 1:
        raise ValueError(f"guard atom {text!r} must be linear in i, j")
    coeffs = {}
    for key, c in form.terms().items():
        f = c.to_fraction()
        if f.denominator != 1:
            raise ValueError(f"guard atom {text!r} needs integer coefficients")
        coeffs[key] = int(f)
    a = coeffs.get((0, 0, 0, 1, 0, 0), 0)
    b = coeffs.get((0, 0, 0, 0, 1, 0), 0)
    c = coeffs.get((0,) * 6, 0)
    if mod:
        if op != "==":
            raise ValueError("congruence atoms use ==")
        return Atom(a, b, c, "==", int(mod))
    return Atom(a, b, c, op)


@dataclass(frozen=True)
class Guard:
    atoms: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "Guard":
        text = text.strip()
        if text in ("", "true", "otherwise"):
            return cls(())
        parts = re.split(r"\s+and\s+|\s*&\s*", text)
        return cls(tuple(parse_atom(p) for p in parts))

    def holds(self, i: int, j: int) -> bool:
        return all(a.holds(i, j) for a in self.atoms)

    def swapped(self) -> "Guard":
        return Guard(tuple(a.swapped() for a in self.atoms))

    def __str__(self):
        return " and ".join(str(a) for a in self.atoms) or "true"


# -- bracket presentations -----------------------------------------------------


def skew_partner(p: Poly) -> Poly:
    """The polynomial ``-p(d, -d-x)`` that skew-symmetry forces on the swapped pair."""
    return -p.substitute({"x": "-d-x"})


@dataclass
class ExplicitTable:
    """Finite table ``(i, j) -> Poly`` valid for ``i, j, i+j`` in ``window``."""

    entries: dict
    window: tuple

    def lookup(self, i, j):
        lo, hi = self.window
        for n in (i, j, i + j):
            if not lo <= n <= hi:
                raise OutOfWindow(n)
        return self.entries.get((i, j))


@dataclass
class Branch:
    guard: Guard
    poly: Poly

    def at(self, i, j) -> Poly:
        return self.poly.substitute({"i": i, "j": j})


@dataclass
class PiecewiseRule:
    """First matching branch wins; unmatched pairs take the skew partner of a
    matching swapped branch, then ``otherwise``, and are zero if nothing applies."""

    branches: list
    otherwise: Poly | None = None

    @property
    def is_uniform(self) -> bool:
        return not self.branches and self.otherwise is not None

    def lookup(self, i, j):
        for br in self.branches:
            if br.guard.holds(i, j):
                return br.at(i, j)
        for br in self.branches:
            if br.guard.holds(j, i):
                return skew_partner(br.at(j, i))
        if self.otherwise is not None:
            return self.otherwise.substitute({"i": i, "j": j})
        return None

    def overlaps(self, window):
        """Points of ``window``^2 where two branches match with different values."""
        bad = []
        for i, j in product(window_range(window), repeat=2):
            hits = [br.at(i, j) for br in self.branches if br.guard.holds(i, j)]
            if len(hits) > 1 and any(h != hits[0] for h in hits[1:]):
                bad.append((i, j))
        return bad


# -- algebras ----------------------------------------------------------------


@dataclass
class AlgebraSpec:
    name: str
    bracket: object
    support: Support = field(default_factory=Support)
    params: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def param_names(self) -> tuple:
        return tuple(sorted(k for k, v in self.params.items() if v == "free"))

    def label(self, n: int) -> str:
        return self.labels.get(n, f"L{n}")

    def p(self, i: int, j: int) -> Poly:
        key = (i, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if i not in self.support or j not in self.support or (i + j) not in self.support:
            value = Poly.zero(self.param_names)
        else:
            value = self.bracket.lookup(i, j)
            value = Poly.zero(self.param_names) if value is None else value.with_params(self.param_names)
        self._cache[key] = value
        return value

    def shifted(self, kind: str, i: int, j: int) -> Poly:
        """Cached variable changes of ``p(i, j)`` used by the Jacobi residual."""
        key = (kind, i, j)
        hit = self._cache.get(key)
        if hit is None:
            hit = self.p(i, j).substitute(_SHIFTS[kind])
            self._cache[key] = hit
        return hit

    @property
    def is_uniform(self) -> bool:
        return isinstance(self.bracket, PiecewiseRule) and self.bracket.is_uniform

    def window_default(self, window):
        return self.support.clip(window)

    def materialize(self, window, name=None) -> "AlgebraSpec":
        """Explicit table of this algebra on ``window``."""
        lo, hi = self.support.clip(window)
        entries = {}
        for i, j in product(range(lo, hi + 1), repeat=2):
            if lo <= i + j <= hi:
                v = self.p(i, j)
                if v:
                    entries[(i, j)] = v
        support = Support(lo, hi) if self._finite_within(window) else self.support
        return AlgebraSpec(name or self.name, ExplicitTable(entries, (lo, hi)), support,
                           dict(self.params), dict(self.labels))

    def _finite_within(self, window):
        lo, hi = window
        return (self.support.lo is not None and self.support.hi is not None
                and lo <= self.support.lo and self.support.hi <= hi)

    def specialize(self, values: dict, name=None) -> "AlgebraSpec":
        """Fix some free parameters to rational values."""
        params = dict(self.params)
        for k, v in values.items():
            params[k] = Fraction(v)
        spec = _specialize_bracket(self.bracket, values)
        return AlgebraSpec(name or self.name, spec, self.support, params, dict(self.labels))


def _specialize_bracket(bracket, values):
    if isinstance(bracket, ExplicitTable):
        return ExplicitTable({k: v.specialize(values) for k, v in bracket.entries.items()},
                             bracket.window)
    return PiecewiseRule(
        [Branch(b.guard, b.poly.specialize(values)) for b in bracket.branches],
        None if bracket.otherwise is None else bracket.otherwise.specialize(values),
    )


_SHIFTS = {
    "A": {"d": "d+x", "x": "y"},  # p(d+x, y)
    "C": {"d": "-x-y"},  # p(-x-y, x)
    "D": {"x": "x+y"},  # p(d, x+y)
    "E": {"d": "d+y"},  # p(d+y, x)
    "F": {"x": "y"},  # p(d, y)
}


# -- elements and brackets ---------------------------------------------------


@dataclass(frozen=True)
class Element:
    """Finite sum of ``f_n(d) L_n``."""

    parts: tuple = ()

    @classmethod
    def of(cls, parts: dict, params=()):
        clean = {}
        for n, f in parts.items():
            f = Poly.coerce(f, params)
            if f.free_vars() - {"d"}:
                raise ValueError(f"coefficient {f} of L{n} must involve d only")
            if f:
                clean[int(n)] = f
        return cls(tuple(sorted(clean.items())))

    @classmethod
    def generator(cls, n, params=()):
        return cls.of({n: 1}, params)

    def as_dict(self) -> dict:
        return dict(self.parts)

    def d(self) -> "Element":
        return Element(tuple((n, f * Poly.var("d", f.params)) for n, f in self.parts))

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        if not self.parts:
            return "0"
        return " + ".join(f"({f})*L{n}" for n, f in self.parts)


def lambda_bracket(A: AlgebraSpec, lhs: Element, rhs: Element) -> dict:
    out = {}
    for (i, f), (j, g) in product(lhs.parts, rhs.parts):
        for n in (i, j):
            if n not in A.support:
                raise OutOfSupport(n)
        term = f.substitute({"d": "-x"}) * g.substitute({"d": "d+x"}) * A.p(i, j)
        out[i + j] = out[i + j] + term if i + j in out else term
    return {n: v for n, v in sorted(out.items()) if v}


def n_products(A: AlgebraSpec, lhs: Element, rhs: Element) -> dict:
    """``{n: a_(n) b}`` from ``[a_x b] = sum x^n/n! a_(n) b``."""
    out = {}
    for deg, poly in lambda_bracket(A, lhs, rhs).items():
        for n, c in poly.coefficients("x").items():
            out.setdefault(n, {})[deg] = c * factorial(n)
    return {n: Element.of(parts) for n, parts in sorted(out.items())}


# -- reports -----------------------------------------------------------------

PASS, FAIL, SKIPPED, NOT_APPLICABLE = "pass", "fail", "skipped", "not_applicable"


@dataclass(frozen=True)
class Check:
    name: str
    locus: tuple
    status: str
    residual: str = "0"
    note: str = ""

    def to_json(self):
        out = {"check": self.name, "locus": list(self.locus), "status": self.status}
        if self.status == FAIL:
            out["residual"] = self.residual
        if self.note:
            out["note"] = self.note
        return out


def _locus_key(locus):
    return tuple((0, x, "") if isinstance(x, int) else (1, 0, str(x)) for x in locus)


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, locus, residual=None, status=None, note=""):
        if status is None:
            status = FAIL if residual else PASS
        text = str(residual) if residual is not None and status == FAIL else "0"
        self.checks.append(Check(name, tuple(locus), status, text, note))

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)
        return self

    def sorted_checks(self):
        return sorted(self.checks, key=lambda c: (c.name, _locus_key(c.locus), c.status))

    def count(self, status):
        return sum(1 for c in self.checks if c.status == status)

    @property
    def failures(self):
        return [c for c in self.sorted_checks() if c.status == FAIL]

    @property
    def skipped(self):
        return [c for c in self.sorted_checks() if c.status == SKIPPED]

    @property
    def ok(self) -> bool:
        return not any(c.status == FAIL for c in self.checks)

    @property
    def not_applicable(self) -> bool:
        return bool(self.checks) and all(c.status == NOT_APPLICABLE for c in self.checks)

    def summary(self) -> dict:
        return {s: self.count(s) for s in (PASS, FAIL, SKIPPED, NOT_APPLICABLE)}

    def to_json(self, full=False) -> dict:
        checks = self.sorted_checks()
        if not full:
            checks = [c for c in checks if c.status != PASS]
        return {
            "title": self.title,
            "ok": self.ok,
            "summary": self.summary(),
            "checks": [c.to_json() for c in checks],
        }

    def dumps(self, full=False) -> str:
        return json.dumps(self.to_json(full), sort_keys=True, indent=2)

    def to_text(self) -> str:
        s = self.summary()
        lines = [
            f"{self.title}: {'OK' if self.ok else 'FAILED'} "
            f"({s[PASS]} pass, {s[FAIL]} fail, {s[SKIPPED]} skipped, {s[NOT_APPLICABLE]} n/a)"
        ]
        for c in self.sorted_checks():
            if c.status == PASS:
                continue
            where = ",".join(str(x) for x in c.locus)
            extra = f" residual {c.residual}" if c.status == FAIL else ""
            note = f" [{c.note}]" if c.note else ""
            lines.append(f"  {c.status.upper():<14} {c.name}({where}){extra}{note}")
        return "\n".join(lines)


# -- audits ------------------------------------------------------------------


def _diag_residual(p: Poly) -> Poly:
    # remainder of p modulo (d + 2x) in d
    return p.substitute({"d": "-2*x"})


def audit_skew(A: AlgebraSpec, window=(-6, 6)) -> Report:
    rep = Report(f"skew-symmetry of {A.name}")
    if A.is_uniform:
        P = A.bracket.otherwise
        swapped = P.substitute({"i": "j", "j": "i", "x": "-d-x"})
        rep.add("skew", ("i", "j"), P + swapped)
        rep.add("diagonal", ("i", "i"), _diag_residual(P.substitute({"j": "i"})))
        if not A.support.is_all:
            rep.extend(_support_closure(A))
        return rep
    lo, hi = A.support.clip(window)
    for i, j in product(range(lo, hi + 1), repeat=2):
        if i > j:
            continue
        try:
            pij, pji = A.p(i, j), A.p(j, i)
        except OutOfWindow as e:
            rep.add("skew", (i, j), status=SKIPPED, note=f"degree {e.degree} outside window")
            continue
        rep.add("skew", (i, j), pij + pji.substitute({"x": "-d-x"}))
        if i == j:
            rep.add("diagonal", (i, i), _diag_residual(pij))
    return rep


def _support_closure(A: AlgebraSpec) -> Report:
    """For a uniform rule on a half-line, the generic formula must vanish on the
    finitely many pairs whose sum leaves the support."""
    rep = Report("support closure")
    P = A.bracket.otherwise
    lo, hi = A.support.lo, A.support.hi
    pairs = []
    if lo is not None and lo < 0:
        pairs += [(i, j) for i in range(lo, 0) for j in range(lo, 0) if i + j < lo]
    if hi is not None and hi > 0:
        pairs += [(i, j) for i in range(1, hi + 1) for j in range(1, hi + 1) if i + j > hi]
    for i, j in pairs:
        rep.add("support", (i, j), P.substitute({"i": i, "j": j}))
    return rep


def jacobi_residual(A: AlgebraSpec, i, j, k) -> Poly:
    return (
        A.shifted("A", j, k) * A.p(i, j + k)
        - A.shifted("C", i, j) * A.shifted("D", i + j, k)
        - A.shifted("E", i, k) * A.shifted("F", j, i + k)
    )


def symbolic_jacobi_residual(P: Poly) -> Poly:
    """Jacobi residual of a single uniform rule ``P(d, x, i, j)`` in ``i, j, k``."""
    A = P.substitute({"d": "d+x", "x": "y", "i": "j", "j": "k"})
    B = P.substitute({"j": "j+k"})
    C = P.substitute({"d": "-x-y"})
    D = P.substitute({"x": "x+y", "i": "i+j", "j": "k"})
    E = P.substitute({"d": "d+y", "j": "k"})
    F = P.substitute({"x": "y", "i": "j", "j": "i+k"})
    return A * B - C * D - E * F


def audit_jacobi(A: AlgebraSpec, window=(-6, 6)) -> Report:
    rep = Report(f"Jacobi identity of {A.name}")
    if A.is_uniform:
        rep.add("jacobi", ("i", "j", "k"), symbolic_jacobi_residual(A.bracket.otherwise))
        if not A.support.is_all:
            rep.extend(_support_closure(A))
        return rep
    lo, hi = A.support.clip(window)
    for i, j, k in product(range(lo, hi + 1), repeat=3):
        try:
            r = jacobi_residual(A, i, j, k)
        except OutOfWindow as e:
            rep.add("jacobi", (i, j, k), status=SKIPPED, note=f"degree {e.degree} outside window")
            continue
        rep.add("jacobi", (i, j, k), r)
    return rep


# -- modules -----------------------------------------------------------------


@dataclass
class ModuleSpec:
    """Rank-one graded module: ``L_i _x v_m = rho(i, m) v_{i+m}``."""

    name: str
    base: AlgebraSpec
    action: object
    support: Support = field(default_factory=Support)
    labels: dict = field(default_factory=dict)

    def rho(self, i, m) -> Poly:
        names = self.base.param_names
        if i not in self.base.support or m not in self.support or (i + m) not in self.support:
            return Poly.zero(names)
        v = self.action.lookup(i, m)
        return Poly.zero(names) if v is None else v.with_params(names)


def module_residual(M: ModuleSpec, i, j, m) -> Poly:
    A = M.base
    return (
        M.rho(j, m).substitute(_SHIFTS["A"]) * M.rho(i, j + m)
        - M.rho(i, m).substitute(_SHIFTS["E"]) * M.rho(j, i + m).substitute(_SHIFTS["F"])
        - A.shifted("C", i, j) * M.rho(i + j, m).substitute(_SHIFTS["D"])
    )


def audit_module(M: ModuleSpec, window=(-6, 6)) -> Report:
    rep = Report(f"module identity of {M.name}")
    alo, ahi = M.base.support.clip(window)
    mlo, mhi = M.support.clip(window)
    for i, j in product(range(alo, ahi + 1), repeat=2):
        for m in range(mlo, mhi + 1):
            try:
                r = module_residual(M, i, j, m)
            except OutOfWindow as e:
                rep.add("module", (i, j, m), status=SKIPPED, note=f"degree {e.degree} outside window")
                continue
            rep.add("module", (i, j, m), r)
    return rep


__all__ = [
    "AlgebraSpec", "Atom", "Branch", "Check", "Element", "ExplicitTable", "Guard",
    "ModuleSpec", "OutOfSupport", "OutOfWindow", "PiecewiseRule", "Report", "Support",
    "audit_jacobi", "audit_module", "audit_skew", "divide_in_var", "exact_quotient",
    "jacobi_residual", "lambda_bracket", "n_products", "skew_partner", "window_range",
]
