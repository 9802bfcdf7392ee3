"""Named families of graded Lie conformal algebras and two module families."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .core import (
    AlgebraSpec, Branch, ExplicitTable, Guard, ModuleSpec, PiecewiseRule, Support,
    audit_jacobi, audit_module, audit_skew,
)
from .poly import Poly, divide_in_var, parse
from .scalars import Scalar

TAGS = ("Vir", "CurG", "V", "CL1", "CL2", "SCL2", "CL3", "ECL", "M1", "M2")
CLI_NAMES = {
    "vir": "Vir", "cur-sl2": "CurG", "v": "V", "cl1": "CL1", "cl2": "CL2",
    "scl2": "SCL2", "cl3": "CL3", "ecl": "ECL", "m1": "M1", "m2": "M2",
}
FAMILY_PARAMS = {
    "Vir": (), "CurG": (), "V": ("s",), "CL1": ("s",), "CL2": ("b", "s"),
    "SCL2": ("b", "s"), "CL3": ("s",), "ECL": ("s",), "M1": (), "M2": (),
}


class ParameterDomainError(ValueError):
    pass


class WindowDomainError(ValueError):
    pass


class ConstructionError(ValueError):
    pass


# -- finite-dimensional Lie algebra data --------------------------------------


@dataclass
class LieAlgebraData:
    """Structure constants on a basis of labelled, graded vectors.

    ``constants[(a, b)]`` maps labels to scalar coefficients; pairs not listed
    are derived by antisymmetry and otherwise zero.
    """

    basis: dict
    constants: dict = field(default_factory=dict)
    rank_one: bool = True

    def __post_init__(self):
        if self.rank_one:
            seen = {}
            for label, deg in self.basis.items():
                if deg in seen:
                    raise ValueError(f"degree {deg} carries both {seen[deg]} and {label}")
                seen[deg] = label
        for (a, b), v in self.constants.items():
            if (b, a) in self.constants:
                other = self.constants[(b, a)]
                keys = set(v) | set(other)
                if any(v.get(k, 0) + other.get(k, 0) != 0 for k in keys):
                    raise ValueError(f"constants ({a},{b}) and ({b},{a}) are not antisymmetric")
            if a == b and any(c != 0 for c in v.values()):
                raise ValueError(f"[{a},{a}] must vanish")

    def bracket(self, a, b) -> dict:
        if (a, b) in self.constants:
            return {k: v for k, v in self.constants[(a, b)].items() if v != 0}
        if (b, a) in self.constants:
            return {k: -v for k, v in self.constants[(b, a)].items() if v != 0}
        return {}

    def bracket_vec(self, u: dict, v: dict) -> dict:
        out = {}
        for (a, x), (b, y) in product(u.items(), v.items()):
            for c, z in self.bracket(a, b).items():
                out[c] = out.get(c, 0) + x * y * z
        return {k: v for k, v in out.items() if v != 0}

    def jacobi_failures(self, triples=None):
        labels = sorted(self.basis, key=lambda l: (self.basis[l], l))
        bad = []
        for a, b, c in triples or product(labels, repeat=3):
            t1 = self.bracket_vec({a: 1}, self.bracket_vec({b: 1}, {c: 1}))
            t2 = self.bracket_vec({b: 1}, self.bracket_vec({c: 1}, {a: 1}))
            t3 = self.bracket_vec({c: 1}, self.bracket_vec({a: 1}, {b: 1}))
            keys = set(t1) | set(t2) | set(t3)
            if any(t1.get(k, 0) + t2.get(k, 0) + t3.get(k, 0) != 0 for k in keys):
                bad.append((a, b, c))
        return bad

    def dimension(self) -> int:
        return len(self.basis)

    def is_abelian(self) -> bool:
        return not any(v != 0 for d in self.constants.values() for v in d.values())

    def to_json(self) -> dict:
        return {
            "basis": {k: self.basis[k] for k in sorted(self.basis, key=lambda l: (self.basis[l], l))},
            "dimension": self.dimension(),
            "constants": [
                {"pair": [a, b], "value": {k: str(v) for k, v in sorted(val.items())}}
                for (a, b), val in sorted(self.constants.items(), key=lambda kv: (self.basis[kv[0][0]], self.basis[kv[0][1]], kv[0]))
                if any(v != 0 for v in val.values())
            ],
        }


def sl2_data() -> LieAlgebraData:
    one = Scalar.from_value(1)
    data = LieAlgebraData(
        basis={"e": 1, "h": 0, "f": -1},
        constants={
            ("h", "e"): {"e": 2 * one},
            ("h", "f"): {"f": -2 * one},
            ("e", "f"): {"h": one},
        },
    )
    if data.jacobi_failures():
        raise ConstructionError("sl2 constants violate the Jacobi identity")
    return data


# -- helpers -------------------------------------------------------------------


def normalize_param_values(tag, params: dict | None) -> dict:
    """Every family parameter becomes 'free' or a Fraction."""
    names = FAMILY_PARAMS[tag]
    params = dict(params or {})
    unknown = set(params) - set(names)
    if unknown:
        raise ParameterDomainError(f"{tag} has no parameter(s) {sorted(unknown)}")
    out = {}
    for n in names:
        v = params.get(n, "free")
        try:
            out[n] = "free" if v in ("free", None) else Fraction(v)
        except (ValueError, TypeError) as exc:
            raise ParameterDomainError(f"{tag}: {n} = {v!r} is neither 'free' nor a rational") from exc
    return out


def _rule(otherwise=None, branches=(), params=()):
    br = [Branch(Guard.parse(g), parse(p, params)) for g, p in branches]
    return PiecewiseRule(br, None if otherwise is None else parse(otherwise, params))


def _finish(spec: AlgebraSpec, params: dict, window, check: bool) -> AlgebraSpec:
    fixed = {k: v for k, v in params.items() if v != "free"}
    if fixed:
        spec = spec.specialize(fixed)
    if isinstance(spec.bracket, PiecewiseRule) and spec.bracket.branches:
        bad = spec.bracket.overlaps(spec.support.clip(window))
        if bad:
            raise ConstructionError(f"{spec.name}: overlapping guards disagree at {bad[:3]}")
    if check:
        for rep in (audit_skew(spec, window), audit_jacobi(spec, window)):
            if not rep.ok:
                raise ConstructionError(f"{spec.name} failed self-audit: {rep.failures[0]}")
    return spec


def _title(tag, params):
    if not params:
        return tag
    return f"{tag}(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"


CL2_RULE = "(i+b)*d + (i+j+2*b)*x + s*(i-j)"
TYPE2_TAIL = "i*d + (i+j)*x + s*(i-j)"

M1_BRANCHES = (
    ("i == 1 and j == 1", "d + 2*x"),
    ("i == -1 and j >= 1", "(j+1)*(j-2)/2"),
    ("i == 0", "-j"),
    ("i == 1 and j >= 2", "1"),
)

M2_BRANCHES = (
    ("i == -1 and j == -1", "d + 2*x"),
    ("i == -1 and j <= -2", "1"),
    ("i == -1 and j >= 1", "(j+1)*(j-2)/2"),
    ("i == 0", "-j"),
    ("i == 1 and j == 1", "d + 2*x"),
    ("i == 1 and j <= -2", "(j-1)*(j+2)/2"),
    ("i == 1 and j >= 2", "1"),
)


def scl2_branches(P: Poly, c: int, q: Poly):
    """Bracket branches of the ideal spanned by ``q(d) L_c`` and ``L_n`` (n != c)
    inside the algebra with uniform rule ``P``; every division is checked exact."""
    params = P.params

    def at(i, j):
        return P.substitute({"i": i, "j": j})

    def div(num, guard):
        quo, rem = divide_in_var(num, q, "d")
        if rem:
            raise ConstructionError(f"bracket on {guard} is not divisible by {q}: remainder {rem}")
        return quo

    qm = q.substitute({"d": "-x"})
    qp = q.substitute({"d": "d+x"})
    out = []
    cc = qm * qp * at(c, c)
    out.append((f"i == {c} and j == {c}", div(cc, "(c,c)") if c == 0 else cc))
    if c != 0:
        out.append((f"i == {c} and j == 0", div(qm * at(c, 0), "(c,0)")))
        out.append((f"i == 0 and j == {c}", div(qp * at(0, c), "(0,c)")))
        out.append((f"i == {c} and j != {c} and j != 0", qm * P.substitute({"i": c})))
        out.append((f"j == {c} and i != {c} and i != 0", qp * P.substitute({"j": c})))
    else:
        out.append(("i == 0 and j != 0", qm * P.substitute({"i": 0})))
        out.append(("j == 0 and i != 0", qp * P.substitute({"j": 0})))
    diag = P.substitute({"j": f"{c}-i"})
    out.append((f"i + j == {c} and i != {c} and j != {c}", div(diag, "i+j=c")))
    return [Branch(Guard.parse(g), p.with_params(params)) for g, p in out]


# -- families --------------------------------------------------------------------


def cur_algebra(data: LieAlgebraData, name="Cur") -> AlgebraSpec:
    degs = sorted(data.basis.values())
    if degs != list(range(degs[0], degs[-1] + 1)):
        raise ValueError("graded Lie algebra data must occupy a contiguous range of degrees")
    label_of = {d: l for l, d in data.basis.items()}
    entries = {}
    for a, b in product(data.basis, repeat=2):
        out = data.bracket(a, b)
        if not out:
            continue
        deg = data.basis[a] + data.basis[b]
        if set(out) != {label_of.get(deg)}:
            raise ValueError(f"[{a},{b}] does not land in degree {deg}")
        entries[(data.basis[a], data.basis[b])] = Poly.from_scalar(out[label_of[deg]])
    window = (degs[0], degs[-1])
    return AlgebraSpec(name, ExplicitTable(entries, window), Support(*window),
                       {}, {d: l for d, l in label_of.items()})


def build_family(tag: str, params: dict | None = None, window=(-6, 6), *,
                 data: LieAlgebraData | None = None, check: bool = True) -> AlgebraSpec:
    """Construct a catalog family; with ``check`` the constructor self-audits."""
    tag = CLI_NAMES.get(tag, tag)
    if tag not in TAGS:
        raise ValueError(f"unknown family {tag!r}")
    values = normalize_param_values(tag, params)
    names = tuple(sorted(FAMILY_PARAMS[tag]))
    title = _title(tag, values)
    if tag == "Vir":
        spec = AlgebraSpec(title, ExplicitTable({(0, 0): parse("d + 2*x")}, (0, 0)), Support(0, 0))
    elif tag == "CurG":
        spec = cur_algebra(data or sl2_data(), "Cur(sl2)" if data is None else "Cur")
    elif tag == "V":
        spec = AlgebraSpec(title, _rule("d + 2*x + s*(i-j)", params=names), Support(), values)
    elif tag == "CL1":
        _require_window(window, -1, tag)
        spec = AlgebraSpec(title, _rule("(i+1)*d + (i+j+2)*x + s*(i-j)", params=names),
                           Support(-1, None), values)
    elif tag == "CL2":
        spec = AlgebraSpec(title, _rule(CL2_RULE, params=names), Support(), values)
    elif tag == "SCL2":
        b = values["b"]
        if b == "free" or (2 * b).denominator != 1:
            raise ParameterDomainError("SCL2 needs a rational b with 2b an integer")
        c = int(-2 * b)
        P = parse(CL2_RULE, names).specialize({"b": b})
        q = parse("d + 2*s", ("s",))
        rule = PiecewiseRule(scl2_branches(P, c, q), P)
        spec = AlgebraSpec(title, rule, Support(), dict(values), {c: f"M{c}"})
        values = {k: v for k, v in values.items() if k != "b"}
    elif tag == "CL3":
        spec = AlgebraSpec(title, _rule(TYPE2_TAIL, [
            ("i + j == 0", "i*(d+s)"),
            ("i == 0", "-j*(-x+2*s)"),
            ("j == 0", "i*(d+x+2*s)"),
        ], names), Support(), values)
    elif tag == "ECL":
        spec = AlgebraSpec(title, _rule(TYPE2_TAIL, [
            ("i + j == 0", "i*(d+s)*(d+2*s)"),
            ("i == 0", "-j"),
            ("j == 0", "i"),
        ], names), Support(), values)
    elif tag == "M1":
        _require_window(window, -1, tag)
        spec = AlgebraSpec(title, _rule(None, M1_BRANCHES), Support(-1, None))
    else:
        spec = AlgebraSpec(title, _rule(None, M2_BRANCHES), Support())
    return _finish(spec, values, window, check)


def _require_window(window, lo, tag):
    if window[1] < lo:
        raise WindowDomainError(f"{tag} lives in degrees >= {lo}; window {window} misses it")


# -- modules -----------------------------------------------------------------------


def build_module(tag: str, params: dict | None = None, base: AlgebraSpec | None = None,
                 *, u_degree: int = 0) -> ModuleSpec:
    params = dict(params or {})
    if tag == "Mab":
        if base is None:
            base = build_family("Vir")
        if not base.name.startswith("Vir"):
            raise ValueError("M_{a,b} is a module over Vir")
        names = tuple(sorted(k for k in ("a", "b") if params.get(k, "free") == "free"))
        rho = parse("d + a*x + b", ("a", "b"))
        rho = rho.specialize({k: Fraction(v) for k, v in params.items() if v != "free"})
        return ModuleSpec(f"M({params.get('a', 'a')},{params.get('b', 'b')})", base,
                          ExplicitTable({(0, 0): rho}, (0, 0)), Support(0, 0))
    if tag == "MU":
        if base is None:
            base = build_family("CurG")
        if not base.name.startswith("Cur"):
            raise ValueError("M_U is a module over a current algebra")
        # one-dimensional trivial U concentrated in a single degree
        return ModuleSpec("M(trivial)", base, ExplicitTable({}, (u_degree, u_degree)),
                          Support(u_degree, u_degree))
    raise ValueError(f"unknown module family {tag!r}")


def self_check_module(M: ModuleSpec, window=(-6, 6)):
    rep = audit_module(M, window)
    if not rep.ok:
        raise ConstructionError(f"{M.name} failed self-audit: {rep.failures[0]}")
    return M
