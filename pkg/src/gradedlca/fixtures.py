"""Shipped fixtures: ECL ideal witnesses and single-entry bracket mutations."""
from __future__ import annotations

from .catalog import build_family
from .core import AlgebraSpec, ExplicitTable, skew_partner
from .poly import parse

# degree-0 multiplier of the seed in ECL(s) -> (target family, fixed params)
ECL_IDEALS = (
    ("d+s", "CL2", {"b": 0}),
    ("d+2*s", "CL3", {}),
    ("(d+s)*(d+2*s)", "SCL2", {"b": 0}),
)


def ecl_witness_doc(window=(-5, 5)) -> dict:
    """Identity degree map, unit multipliers on the ideal's generators."""
    lo, hi = window
    return {"sigma_shift": 0, "sigma_scale": 1, "multipliers": {str(n): "1" for n in range(lo, hi + 1)}}


def _mutate(tag, params, window, changes, name):
    base = build_family(tag, params, window, check=False).materialize(window)
    names = base.param_names
    entries = dict(base.bracket.entries)
    for (i, j), expr in changes.items():
        p = parse(expr, names) if isinstance(expr, str) else expr(entries.get((i, j)), names)
        entries[(i, j)] = p
        if i != j:
            entries[(j, i)] = skew_partner(p)
    return AlgebraSpec(name, ExplicitTable(entries, base.bracket.window), base.support,
                       dict(base.params), dict(base.labels))


def _add(expr):
    return lambda old, names: (old if old is not None else parse("0", names)) + parse(expr, names)


def mutations(window=(-3, 3)) -> list:
    """Ten perturbed tables; each breaks the Jacobi identity inside ``window``."""
    odd = "x*(d+x)*(d+2*x)"  # skew-odd and divisible by d + 2x
    return [
        _mutate("V", {"s": 1}, window, {(1, 1): _add(odd)}, "V(1) + odd cubic at (1,1)"),
        _mutate("V", {"s": 1}, window, {(1, 2): _add("x^2")}, "V(1) + x^2 at (1,2)"),
        _mutate_rule("CL2", {"b": 0}, window, "i*d + (i+j)*x + s*(i+j)", "CL2(0,s) with s(i+j)"),
        _mutate_rule("V", {}, window, "d + 2*x + s*(i+j)", "V(s) with s(i+j)"),
        _mutate("Vir", {}, (0, 0), {(0, 0): _add("(d+2*x)*x*(d+x)")}, "Vir + odd cubic"),
        _mutate("M2", {}, window, {(1, 2): "2"}, "M2 with p(1,2) = 2"),
        _mutate("ECL", {}, window, {(1, -1): "(d+s)*(d+3*s)"}, "ECL(s) with p(1,-1) = (d+s)(d+3s)"),
        _mutate("CL3", {}, window, {(0, 1): "x - 3*s"}, "CL3(s) with p(0,1) = x - 3s"),
        _mutate("M1", {}, window, {(-1, 3): "3"}, "M1 with p(-1,3) = 3"),
        _mutate("CurG", {}, window, {(0, 1): "3"}, "Cur(sl2) with p(0,1) = 3"),
    ]


def _mutate_rule(tag, params, window, rule, name):
    """Use ``rule`` above the diagonal, its skew partner below, and keep the diagonal."""
    base = build_family(tag, params, window, check=False)
    names = base.param_names
    P = parse(rule, names)
    lo, hi = window
    entries = {}
    for i in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            if not lo <= i + j <= hi:
                continue
            if i < j:
                v = P.substitute({"i": i, "j": j})
            elif i > j:
                v = skew_partner(P.substitute({"i": j, "j": i}))
            else:
                v = base.p(i, j)
            if v:
                entries[(i, j)] = v
    return AlgebraSpec(name, ExplicitTable(entries, window), base.support, dict(base.params))
