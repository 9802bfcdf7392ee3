"""Classification of algebras generated in degrees -1, 0, 1 with abelian degree 0.

The pipeline is: read a :class:`VSeed` (the brackets among ``L_{-1}, L_0,
L_1``), extend it degree by degree to a table on ``[-N, N]``, and identify the
result with a catalog family through a verified :class:`MorphismWitness`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .catalog import build_family
from .core import (
    FAIL, AlgebraSpec, ExplicitTable, NOT_APPLICABLE, Report, Support, audit_jacobi,
    audit_skew, skew_partner,
)
from .derived import MorphismWitness, verify_morphism
from .linsolve import Inconsistent, LinearSystem, solve
from .poly import Poly, divide_in_var, parse
from .scalars import Scalar, sqrt_scalar

X, Y = "x", "y"


class SeedError(ValueError):
    """The seed violates a precondition (shape, skew consistency, abelian L_0)."""


class ShapeError(ValueError):
    """Linear parts of a table are not ``m d + (m+n) x``."""


class InconsistentTableError(ValueError):
    """Constant terms satisfy neither branch of the dichotomy."""


class FactorizationError(ValueError):
    """A quadratic does not split over the parameter field."""


# -- seeds -------------------------------------------------------------------------

SEED_KEYS = ("p01", "p_neg1_1", "p11", "p_neg1_neg1", "p0_neg1")


@dataclass
class VSeed:
    p01: Poly
    p_neg1_1: Poly
    p11: Poly
    p_neg1_neg1: Poly
    p0_neg1: Poly

    @property
    def params(self) -> tuple:
        names = set()
        for k in SEED_KEYS:
            names.update(getattr(self, k).params)
        return tuple(sorted(names))

    def lifted(self) -> "VSeed":
        names = self.params
        return VSeed(*(getattr(self, k).with_params(names) for k in SEED_KEYS))

    @classmethod
    def from_json(cls, doc: dict, params=()):
        missing = [k for k in SEED_KEYS if k not in doc]
        if missing:
            raise SeedError(f"seed is missing {missing}")
        params = tuple(params) or tuple(doc.get("params", ()))
        return cls(*(parse(doc[k], params) for k in SEED_KEYS)).lifted()

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in SEED_KEYS}

    @classmethod
    def from_algebra(cls, A: AlgebraSpec) -> "VSeed":
        return cls(A.p(0, 1), A.p(-1, 1), A.p(1, 1), A.p(-1, -1), A.p(0, -1)).lifted()

    def validate(self):
        for name in ("p01", "p0_neg1"):
            if getattr(self, name).free_vars() - {X}:
                raise SeedError(f"{name} must be a polynomial in x alone")
        if not self.p01 or not self.p_neg1_1:
            raise SeedError("p01 and p_neg1_1 must be nonzero")
        for name in ("p11", "p_neg1_neg1"):
            p = getattr(self, name)
            if p.free_vars() - {"d", X}:
                raise SeedError(f"{name} must be a polynomial in d, x")
            if p.substitute({"d": "-2*x"}):
                raise SeedError(f"d + 2x does not divide {name}")
        if self.p_neg1_1.free_vars() - {"d"}:
            raise SeedError("p_neg1_1 must be a polynomial in d alone")

    def shape(self) -> tuple:
        return (self.p_neg1_1.degree("d"), self.p01.degree(X))


# -- impossibility -------------------------------------------------------------------


@dataclass
class Impossible:
    """No algebra extends the seed; ``certificate`` is an inconsistent linear system."""

    reason: str
    step: str
    certificate: Inconsistent | None = None
    residual: str = ""

    def verify(self) -> bool:
        return self.certificate is not None and self.certificate.verify()

    def to_json(self) -> dict:
        out = {"tag": "Impossible", "reason": self.reason, "step": self.step}
        if self.certificate is not None:
            sysm = self.certificate.system
            out["certificate"] = {
                "unknowns": list(sysm.unknowns),
                "equations": [
                    {"label": lab, "coefficients": {u: str(c) for u, c in row.items() if c},
                     "rhs": str(b)}
                    for lab, row, b in zip(sysm.labels, sysm.rows, sysm.rhs)
                ],
                "multipliers": [str(y) for y in self.certificate.multipliers],
                "residue": str(self.certificate.residue),
                "verified": self.verify(),
            }
        if self.residual:
            out["residual"] = self.residual
        return out


class _Stop(Exception):
    def __init__(self, impossible: Impossible):
        self.impossible = impossible


# -- linear ansatz -------------------------------------------------------------------


def monomials(degree: int, variables=("d", X), params=()):
    out = []
    for total in range(degree + 1):
        for a in range(total, -1, -1):
            b = total - a
            name = f"{variables[0]}^{a}*{variables[1]}^{b}"
            out.append((name, Poly.var(variables[0], params) ** a * Poly.var(variables[1], params) ** b))
    return out


def solve_images(images: dict, rhs: Poly, params, label: str):
    """Solve ``sum_u u * images[u] == rhs`` coefficientwise in d, x, y."""
    system = LinearSystem(list(images))
    columns = {u: img.terms() for u, img in images.items()}
    target = rhs.terms()
    keys = set(target)
    for t in columns.values():
        keys |= set(t)
    zero = Scalar.from_value(0, params)
    for key in sorted(keys):
        row = {u: t[key] for u, t in columns.items() if key in t}
        system.add(row, target.get(key, zero), f"{label} [d^{key[0]} x^{key[1]} y^{key[2]}]")
    return solve(system, params)


def _fail(result, reason, step):
    if isinstance(result, Inconsistent):
        raise _Stop(Impossible(reason, step, result))
    return result


def solve_for_factor(known: Poly, sub: dict, rhs: Poly, params, step: str) -> Poly:
    """Find ``X(d, x)`` with ``known * X(substituted) == rhs`` by linear ansatz."""
    if not rhs:
        return Poly.zero(params)
    degree = rhs.degree() - known.degree()
    if degree < 0:
        sol = solve_images({}, rhs, params, step)
        _fail(sol, "degree mismatch", step)
    basis = monomials(degree, params=params)
    images = {name: known * m.substitute(sub) for name, m in basis}
    sol = _fail(solve_images(images, rhs, params, step), "no polynomial solution", step)
    out = Poly.zero(params)
    for name, m in basis:
        out = out + m.scale(sol.values[name])
    return out


# -- extension engine ---------------------------------------------------------------


@dataclass
class Extension:
    spec: AlgebraSpec
    lo: int
    hi: int
    reports: list = field(default_factory=list)


def _normalize(A: Poly, lead: int) -> tuple:
    """Scale a degree-one (or constant) polynomial so its d-coefficient is ``lead``
    (else its x-coefficient is 1, else it is the constant 1); returns (poly, factor)."""
    for var, target in (("d", lead), (X, 1)):
        c = A.coeff(var, 1).homogeneous_part(0)
        if c:
            f = Scalar.from_value(target, A.params) / c.scalar()
            return A.scale(f), f
    c = A.homogeneous_part(0)
    f = c.scalar().inverse()
    return A.scale(f), f


def _sub(p: Poly, kind: str) -> Poly:
    table = {
        "C": {"d": "-x-y"},  # p(-x-y, x)
        "D": {X: "x+y"},  # p(d, x+y)
        "E": {"d": "d+y"},  # p(d+y, x)
        "F": {X: Y},  # p(d, y)
        "A": {"d": "d+x", X: Y},  # p(d+x, y)
    }
    return p.substitute(table[kind])


class _Table:
    def __init__(self, params):
        self.params = params
        self.entries = {}
        self.zero = Poly.zero(params)

    def __getitem__(self, key):
        return self.entries.get(key, self.zero)

    def put(self, i, j, p):
        self.entries[(i, j)] = p
        self.entries[(j, i)] = skew_partner(p)


def _chain_step(T: _Table, u: int, k: int, seed_diag: Poly, params):
    """Produce ``p_{u, uk}`` and ``p_{-u, u(k+1)}``; ``None`` when the chain stops."""
    v = -u
    step = f"Jacobi(L{v}, L{u}, L{u * k})"
    F = (_sub(T[v, u], "C") * _sub(T[0, u * k], "D")
         + _sub(T[v, u * k], "E") * _sub(T[u, u * (k - 1)], "F"))
    if k == 1:
        if not seed_diag:
            if F:
                _fail(solve_images({}, F, params, step), "seed forbids a degree-2 generator", step)
            return None
        A, _ = _normalize(seed_diag, u)
        B = solve_for_factor(_sub(A, "A"), {}, F, params, step)
        return A, B
    if not F:
        return None
    F1 = F.coeff(Y, 1)
    if F1:
        # A(d+x, y) = a0 + a1 (d+x) + y, B = F1
        images = {"a0": F1, "a1": (Poly.var("d", params) + Poly.var(X, params)) * F1}
        rhs = F - F1 * Poly.var(Y, params)
        sol = _fail(solve_images(images, rhs, params, step), "inconsistent linear system", step)
        A = (Poly.from_scalar(sol.values["a0"], params)
             + Poly.var("d", params).scale(sol.values["a1"]) + Poly.var(X, params))
        A, f = _normalize(A, u)
        B = F1.scale(f.inverse())
        return A, B
    # no y-term: the L_0 Jacobi identity forces a constant factor
    return Poly.one(params), solve_for_factor(Poly.one(params), {}, F, params, step)


def _degree_zero_step(T: _Table, u: int, k: int, A: Poly, params) -> Poly:
    """``p_{0, u(k+1)}`` from the Jacobi identity of ``L_0, L_u, L_{uk}``."""
    step = f"Jacobi(L0, L{u}, L{u * k})"
    rhs = T[0, u] * A.substitute({X: "x+y"}) + T[0, u * k] * _sub(A, "F")
    known = _sub(A, "A")
    degree = rhs.degree() - known.degree()
    if degree < 0:
        _fail(solve_images({}, rhs, params, step), "degree mismatch", step)
    basis = [(f"x^{e}", Poly.var(X, params) ** e) for e in range(degree + 1)]
    images = {name: known * m for name, m in basis}
    sol = _fail(solve_images(images, rhs, params, step), "inconsistent linear system", step)
    out = Poly.zero(params)
    for name, m in basis:
        out = out + m.scale(sol.values[name])
    return out


def extend_v_seed(seed: VSeed, N: int = 4, *, audit: bool = True):
    """Extend the seed to a table on ``[-N, N]`` or return :class:`Impossible`."""
    if N < 2:
        raise ValueError("N must be at least 2")
    seed = seed.lifted()
    seed.validate()
    params = seed.params
    T = _Table(params)
    T.put(0, 0, Poly.zero(params))
    T.put(0, 1, seed.p01)
    T.put(0, -1, seed.p0_neg1)
    T.put(-1, 1, seed.p_neg1_1)
    bounds = {}
    try:
        for u, diag in ((1, seed.p11), (-1, seed.p_neg1_neg1)):
            end = None
            for k in range(1, N):
                got = _chain_step(T, u, k, diag, params)
                if got is None:
                    end = k
                    break
                A, B = got
                T.put(u, u * k, A)
                T.put(-u, u * (k + 1), B)
                T.put(0, u * (k + 1), _degree_zero_step(T, u, k, A, params))
            if end is not None:
                T.put(u, u * end, Poly.zero(params))
            bounds[u] = end
        lo = -bounds[-1] if bounds[-1] is not None else -N
        hi = bounds[1] if bounds[1] is not None else N
        for m in list(range(2, hi + 1)) + list(range(-2, lo - 1, -1)):
            u = 1 if m > 0 else -1
            div = _sub(T[u, m - u], "C")
            for n in range(lo, hi + 1):
                if not lo <= m + n <= hi or (m, n) in T.entries:
                    continue
                rhs = (_sub(T[m - u, n], "A") * T[u, m - u + n]
                       - _sub(T[u, n], "E") * _sub(T[m - u, n + u], "F"))
                step = f"Jacobi(L{u}, L{m - u}, L{n})"
                val = solve_for_factor(div, {X: "x+y"}, rhs, params, step)
                T.entries[(m, n)] = val
                if (n, m) not in T.entries:
                    T.entries[(n, m)] = skew_partner(val)
    except _Stop as stop:
        return stop.impossible
    entries = {k: v for k, v in T.entries.items()
               if v and lo <= k[0] <= hi and lo <= k[1] <= hi and lo <= sum(k) <= hi}
    support = Support(lo if bounds[-1] is not None else None, hi if bounds[1] is not None else None)
    spec = AlgebraSpec("extension", ExplicitTable(entries, (lo, hi)), support,
                       {p: "free" for p in params})
    ext = Extension(spec, lo, hi)
    if audit:
        for rep in (audit_skew(spec, (lo, hi)), audit_jacobi(spec, (lo, hi))):
            ext.reports.append(rep)
            if not rep.ok:
                c = rep.failures[0]
                return Impossible(f"extension violates {c.name}", f"locus {c.locus}",
                                  residual=c.residual)
    return ext


# -- constant-term normal form -----------------------------------------------------


@dataclass
class NormalFormState:
    tag: str
    s: Scalar | None = None
    d: dict = field(default_factory=dict)
    scalings: dict = field(default_factory=dict)
    witness: MorphismWitness | None = None
    reports: list = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_json(self) -> dict:
        out = {"tag": self.tag, "s": None if self.s is None else str(self.s)}
        if self.d:
            out["d"] = {f"{m},{n}": str(v) for (m, n), v in sorted(self.d.items())}
        if self.scalings:
            out["scalings"] = {str(k): str(v) for k, v in sorted(self.scalings.items())}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        out["checks"] = {r.title: r.summary() for r in self.reports}
        out["ok"] = self.ok
        if self.note:
            out["note"] = self.note
        return out


def _frac(n, d=1):
    return Fraction(n, d)


def normal_form(A: AlgebraSpec, window=(-4, 4)) -> NormalFormState:
    """Read constant terms of a table with linear parts ``m d + (m+n) x`` and
    decide between the two one-parameter families."""
    lo, hi = A.support.clip(window)
    names = A.param_names
    rng = range(lo, hi + 1)
    d = {}
    for m, n in product(rng, repeat=2):
        if not lo <= m + n <= hi:
            continue
        p = A.p(m, n)
        expect = parse(f"({m})*d + ({m + n})*x", names)
        if p.degree() > 1 or p.homogeneous_part(1) != expect:
            raise ShapeError(f"p({m},{n}) = {p} does not have linear part {expect}")
        d[(m, n)] = p.homogeneous_part(0).scalar()
    zero = Scalar.from_value(0, names)

    def D(m, n):
        return d.get((m, n))

    rep = Report("normal-form identities")

    def check(name, locus, lhs, rhs):
        if lhs is None or rhs is None:
            return
        rep.add(name, locus, Poly.from_scalar(lhs - rhs, names))

    d01, dm11 = D(0, 1), D(-1, 1)
    tot = d01 + dm11
    for n in rng:
        check("additivity", (0, n), D(0, n), d01 * n)
        if all(D(*k) is not None for k in ((-1, n + 1), (-1, n), (1, n), (1, n - 1), (0, n))):
            check("eq-a", (n,), D(-1, n + 1) - D(-1, n), D(1, n) - D(1, n - 1))
            check("eq-b", (n,), D(-1, n + 1) + D(1, n) * n,
                  D(0, n) + dm11 * n + D(1, n - 1) * (n - 1))
            check("eq-c", (n,), D(1, n) * D(-1, n + 1), dm11 * D(0, n) + D(-1, n) * D(1, n - 1))
        if (n > 1 or n <= -1) and D(-1, n) is not None:
            check("d(-1,n)", (n,), D(-1, n), tot * _frac(n + 1, 3))
        if (n >= 1 or n < -1) and D(1, n) is not None:
            check("d(1,n)", (n,), D(1, n), tot * _frac(n - 1, 3))
    for m, n in product(rng, repeat=2):
        if all(D(*k) is not None for k in ((m, n + 1), (m, n), (1, m + n), (1, m), (1, n))):
            check("eq-d", (m, n), D(m, n + 1) - D(m, n),
                  D(1, m + n) * m - D(1, m) * (m + 1) - D(1, n) * m)
        if m * n != 0 and m + n != 0 and D(m, n) is not None:
            check("d(m,n)", (m, n), D(m, n), tot * _frac(n - m, 3))
        if m + n == 0 and D(m, n) is not None and D(1, -1) is not None:
            check("d(m,-m)", (m,), D(m, n), D(1, -1) * m)
    first = dm11 == 2 * d01
    second = d01 == 2 * dm11
    if first:
        tag, s = "CL2_0", -d01
        target = family_at("CL2", s, b=0)
    elif second:
        tag, s = "CL3", -dm11
        target = family_at("CL3", s)
    else:
        raise InconsistentTableError(
            f"neither d(-1,1) = 2 d(0,1) nor d(0,1) = 2 d(-1,1) (d(0,1) = {d01}, d(-1,1) = {dm11})")
    note = ""
    if first and second:
        other = family_at("CL3", s)
        same = all(target.p(m, n) == other.p(m, n) for m, n in product(rng, repeat=2))
        rep.add("tie", (0,), status="pass" if same else FAIL,
                residual=None if same else "tables differ")
        note = "s = 0: CL3(0) and CL2(0,0) coincide on the window; reporting CL2_0"
    w = MorphismWitness(A, target, {n: Poly.one(names) for n in rng})
    state = NormalFormState(tag, s, d, witness=w, reports=[rep], note=note)
    state.reports.append(verify_morphism(w, (lo, hi)))
    return state


def family_at(tag: str, s, **fixed) -> AlgebraSpec:
    """Catalog family with ``s`` set to a scalar expression (rational or symbolic)."""
    params = {k: Fraction(v) for k, v in fixed.items()}
    if isinstance(s, Scalar) and s.is_rational:
        s = s.to_fraction()
    if isinstance(s, (int, Fraction)):
        return build_family(tag, {**params, "s": Fraction(s)}, check=False)
    A = build_family(tag, {**params, "s": "free"}, check=False)
    image = Poly.from_scalar(s) if isinstance(s, Scalar) else Poly.coerce(s)
    br = A.bracket
    from .core import Branch, PiecewiseRule

    rule = PiecewiseRule(
        [Branch(b.guard, b.poly.substitute_params({"s": image})) for b in br.branches],
        None if br.otherwise is None else br.otherwise.substitute_params({"s": image}),
    )
    params_out = {k: v for k, v in A.params.items() if k != "s"}
    params_out.update({p: "free" for p in image.params})
    return AlgebraSpec(f"{tag}(s={s})", rule, A.support, params_out, dict(A.labels))


# -- witnesses -----------------------------------------------------------------------


def scalar_ratio(P: Poly, Q: Poly):
    """``r`` with ``P == r Q`` for a scalar ``r``, else ``None``."""
    if not Q:
        return None
    key = max(Q.terms())
    r = P.terms().get(key)
    if r is None:
        return None
    r = r / Q.terms()[key]
    return r if P == Q.scale(r) else None


def ladder_witness(S: AlgebraSpec, T: AlgebraSpec, sigma: int = 1, window=(-4, 4)):
    """Scalar multipliers ``q_n`` with ``p^S_{ij} q_{i+j} = q_i q_j p^T_{sigma i, sigma j}``,
    found by stepping outward from ``q_1 = 1``; ``None`` if a ratio is not scalar."""
    lo, hi = S.support.clip(window)
    names = tuple(sorted(set(S.param_names) | set(T.param_names)))
    one = Scalar.from_value(1, names)
    q = {1: one}
    r = scalar_ratio(S.p(0, 1), T.p(0, sigma))
    if r is None:
        return None
    q[0] = r
    r = scalar_ratio(S.p(-1, 1) * Poly.from_scalar(q[0], names), T.p(-sigma, sigma))
    if r is None:
        return None
    q[-1] = r / q[1]
    for u in (1, -1):
        k = 1
        while lo <= u * (k + 1) <= hi:
            src = S.p(u, u * k)
            if not src:
                break
            r = scalar_ratio(T.p(sigma * u, sigma * u * k).scale(q[u] * q[u * k]), src)
            if r is None:
                return None
            q[u * (k + 1)] = r
            k += 1
    mult = {n: Poly.from_scalar(v, names) for n, v in q.items() if lo <= n <= hi}
    return MorphismWitness(S, T, mult, 0, sigma)


# -- dispatch ---------------------------------------------------------------------------


def normalize_seed(seed: VSeed):
    """Rescale ``L_0`` and ``L_{-1}`` so that p01 = x + ... and p_neg1_1 = -d + ..."""
    names = seed.params
    a = seed.p01.coeff(X, 1).scalar()
    t0 = a.inverse()
    g = seed.p_neg1_1.coeff("d", 1).scalar()
    tm1 = -t0 / g
    one = Scalar.from_value(1, names)
    # p'_{ij} = t_i t_j / t_{i+j} p_{ij}, with t_1 = 1
    out = VSeed(
        seed.p01.scale(t0),
        seed.p_neg1_1.scale(tm1 / t0),
        seed.p11,
        seed.p_neg1_neg1,
        seed.p0_neg1.scale(t0),
    )
    return out, {0: t0, -1: tm1, 1: one}


def quadratic_roots(p: Poly, var: str):
    """Roots of a quadratic in ``var`` with scalar coefficients, in a fixed order."""
    a, b, c = (p.coeff(var, e).scalar() for e in (2, 1, 0))
    disc = b * b - a * c * 4
    root = sqrt_scalar(disc)
    if root is None:
        raise FactorizationError(f"{p} does not split: discriminant {disc} is not a square")
    roots = {str(r): r for r in ((-b + root) / (a * 2), (-b - root) / (a * 2))}
    return [roots[k] for k in sorted(roots)] if len(roots) == 2 else list(roots.values()) * 2


def _reduce_ecl(seed: VSeed, y: Scalar) -> VSeed:
    names = seed.params
    lin = Poly.var("d", names) - Poly.from_scalar(y, names)
    shift = -Poly.var(X, names) - Poly.from_scalar(y, names)
    quo, rem = divide_in_var(seed.p_neg1_1, lin, "d")
    assert not rem
    return VSeed(shift * seed.p01, quo, seed.p11, seed.p_neg1_neg1, shift * seed.p0_neg1)


def _reduce_scl2(seed: VSeed, root: Scalar) -> VSeed:
    names = seed.params
    b = -root  # p01 has the factor x + b
    lin = Poly.var(X, names) + Poly.from_scalar(b, names)
    factor = -Poly.var("d", names) + Poly.from_scalar(b, names)
    q01, r01 = divide_in_var(seed.p01, lin, X)
    q0m, r0m = divide_in_var(seed.p0_neg1, lin, X)
    if r01 or r0m:
        raise SeedError("p0_neg1 does not share the divided factor of p01")
    return VSeed(q01, factor * seed.p_neg1_1, seed.p11, seed.p_neg1_neg1, q0m)


def classify_v(seed: VSeed, N: int = 4):
    """Return a :class:`NormalFormState` or :class:`Impossible`."""
    seed = seed.lifted()
    seed.validate()
    window = (-N, N)
    dm, d0 = seed.shape()
    total = dm + d0
    if total == 1:
        ext = extend_v_seed(seed, N)
        if isinstance(ext, Impossible):
            return ext
        raise SeedError("degree-sum-one seed extended without contradiction")
    if total > 2:
        return Impossible("degree bound", f"deg p_neg1_1 + deg p01 = {total} > 2")
    if total == 0:
        ext = extend_v_seed(seed, N)
        if isinstance(ext, Impossible):
            return ext
        top, bottom = bool(seed.p11), bool(seed.p_neg1_neg1)
        if not top and not bottom:
            tag, target, sigma = "CurSl2", build_family("CurG", check=False), 1
        elif top and not bottom:
            tag, target, sigma = "M1", build_family("M1", check=False), 1
        elif bottom and not top:
            tag, target, sigma = "M1", build_family("M1", check=False), -1
        else:
            tag, target, sigma = "M2", build_family("M2", check=False), 1
        return _with_witness(NormalFormState(tag, reports=list(ext.reports)), ext, target, sigma, window)
    if (dm, d0) == (2, 0):
        roots = quadratic_roots(seed.p_neg1_1, "d")
        found = [classify_v(_reduce_ecl(seed, y), N) for y in roots]
        return _from_reduction("ECL", seed, found, N, lambda s: family_at("ECL", s))
    if (dm, d0) == (0, 2):
        roots = quadratic_roots(seed.p01, X)
        found = [classify_v(_reduce_scl2(seed, r), N) for r in roots]
        return _from_reduction("SCL2_0", seed, found, N, lambda s: family_at("SCL2", s, b=0))
    normed, scalings = normalize_seed(seed)
    ext = extend_v_seed(normed, N)
    if isinstance(ext, Impossible):
        return ext
    state = normal_form(ext.spec, window)
    state.scalings = scalings
    state.reports = list(ext.reports) + state.reports
    raw = extend_v_seed(seed, N)
    if not isinstance(raw, Impossible):
        target = state.witness.target
        _with_witness(state, raw, target, 1, window)
    return state


def _from_reduction(tag, seed, found, N, target_of):
    for f in found:
        if isinstance(f, Impossible):
            return f
    values = {str(f.s) for f in found}
    if len(values) != 1:
        raise InconsistentTableError(f"the two factor choices give different s: {sorted(values)}")
    s = found[0].s
    state = NormalFormState(tag, s, note=f"reduced seeds classify as {[f.tag for f in found]}")
    state.reports = [r for f in found for r in f.reports]
    ext = extend_v_seed(seed, N)
    if isinstance(ext, Impossible):
        return ext
    state.reports += ext.reports
    return _with_witness(state, ext, target_of(s), 1, (-N, N))


def _with_witness(state, ext, target, sigma, window):
    w = ladder_witness(ext.spec, target, sigma, window)
    if w is None:
        rep = Report("witness construction")
        rep.add("ladder", (0,), status=FAIL, residual="multiplier ratio is not a scalar")
        state.reports.append(rep)
        return state
    state.witness = w
    state.reports.append(verify_morphism(w, window))
    return state


# -- structural audits ------------------------------------------------------------------


def _abelian_precondition(A: AlgebraSpec, window):
    lo, hi = A.support.clip(window)
    if 0 not in A.support:
        return "degree 0 is not in the support"
    if A.p(0, 0):
        return f"[L0 _x L0] = {A.p(0, 0)} is nonzero"
    for k in range(lo, hi + 1):
        if A.p(0, k).free_vars() - {X}:
            return f"p(0,{k}) = {A.p(0, k)} depends on d"
    return None


def audit_additivity(A: AlgebraSpec, window=(-6, 6)) -> Report:
    rep = Report(f"additivity of p(0,k) in {A.name}")
    why = _abelian_precondition(A, window)
    if why:
        rep.add("additivity", (0,), status=NOT_APPLICABLE, note=why)
        return rep
    lo, hi = A.support.clip(window)
    for k, s in product(range(lo, hi + 1), repeat=2):
        if not lo <= k + s <= hi or not A.p(k, s):
            continue
        rep.add("additivity", (k, s), A.p(0, k + s) - A.p(0, k) - A.p(0, s))
    return rep


def audit_degree_bound(A: AlgebraSpec, window=(-6, 6)) -> Report:
    rep = Report(f"degree bound in {A.name}")
    why = _abelian_precondition(A, window)
    if why:
        rep.add("degree-bound", (0,), status=NOT_APPLICABLE, note=why)
        return rep
    lo, hi = A.support.clip(window)
    for k in range(lo, hi + 1):
        if -k not in A.support or not lo <= -k <= hi:
            continue
        pm, p0 = A.p(-k, k), A.p(0, k)
        if not pm or not p0:
            continue
        lam = pm - pm.coeff(X, 0)
        rep.add("d-only", (-k, k), lam)
        total = pm.degree("d") + p0.degree(X)
        if total > 2:
            rep.add("degree-sum", (k,), status=FAIL, residual=f"deg sum {total} > 2")
        else:
            rep.add("degree-sum", (k,), status="pass")
    return rep
