"""Basic Lie algebra, annihilation truncation, ideals and graded morphisms."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb, factorial

from .catalog import LieAlgebraData
from .core import (
    FAIL, SKIPPED, AlgebraSpec, Element, ExplicitTable, OutOfWindow, Report, Support,
)
from .poly import Poly, divide_in_var, gcd_in_var, normalize_in_var
from .scalars import Scalar


def _degrees(A: AlgebraSpec, window):
    lo, hi = A.support.clip(window)
    return range(lo, hi + 1)


def _zero_scalar(A):
    return Scalar.from_value(0, A.param_names)


# -- basic Lie algebra ---------------------------------------------------------


def basic_lie_algebra(A: AlgebraSpec, window=(-6, 6)) -> LieAlgebraData:
    """The quotient by the image of d with bracket induced by the 0-th product."""
    degs = list(_degrees(A, window))
    basis = {f"l{n}": n for n in degs}
    constants = {}
    for i, j in product(degs, repeat=2):
        if i + j not in basis.values():
            continue
        p = A.p(i, j)
        # (d a)_(0) b is -x p at x = 0, so constants are well defined mod d
        assert not (p * Poly.var("x")).substitute({"d": 0, "x": 0})
        c = p.substitute({"d": 0, "x": 0}).scalar()
        if c:
            constants[(f"l{i}", f"l{j}")] = {f"l{i + j}": c}
    return LieAlgebraData(basis, constants)


# -- annihilation algebra --------------------------------------------------------


def _falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


@dataclass
class Truncation:
    algebra: LieAlgebraData
    truncated: list = field(default_factory=list)


def annihilation_truncation(A: AlgebraSpec, max_index=10, window=(-6, 6)) -> Truncation:
    """Brackets of ``a_m`` (0 <= m <= max_index) from the binomial n-product formula.

    ``(d^k u)_N`` is rewritten to ``(-1)^k N(N-1)...(N-k+1) u_{N-k}``.  Terms
    landing above ``max_index`` are recorded in ``truncated``.
    """
    degs = list(_degrees(A, window))

    def lab(i, n):
        return f"{A.label(i)}[{n}]"

    basis = {lab(i, n): i for i in degs for n in range(max_index + 1)}
    constants = {}
    truncated = []
    for i, j in product(degs, repeat=2):
        if i + j not in degs:
            continue
        p = A.p(i, j)
        if not p:
            continue
        prods = {}
        for t, c in p.coefficients("x").items():
            prods[t] = {k: v.scalar() * factorial(t) for k, v in c.coefficients("d").items()}
        for m, n in product(range(max_index + 1), repeat=2):
            out = {}
            for t, parts in prods.items():
                if t > m:
                    continue
                N = m + n - t
                for k, coef in parts.items():
                    target = N - k
                    value = coef * comb(m, t) * ((-1) ** k * _falling(N, k))
                    if not value:
                        continue
                    if target > max_index:
                        truncated.append((lab(i, m), lab(j, n), lab(i + j, target)))
                        continue
                    key = lab(i + j, target)
                    out[key] = out[key] + value if key in out else value
            out = {k: v for k, v in out.items() if v}
            if out:
                constants[(lab(i, m), lab(j, n))] = out
    return Truncation(LieAlgebraData(basis, constants, rank_one=False), sorted(set(truncated)))


# -- submodules and ideals ---------------------------------------------------------


@dataclass(frozen=True)
class SubmoduleSpec:
    """``parts[n] = m_n(d)``: the degree-n part is ``C[d] m_n L_n``; absent means zero."""

    parts: tuple = ()

    @classmethod
    def of(cls, parts: dict, params=()):
        clean = {}
        for n, m in parts.items():
            m = Poly.coerce(m, params)
            if m:
                clean[int(n)] = normalize_in_var(m, "d")
        return cls(tuple(sorted(clean.items())))

    def as_dict(self):
        return dict(self.parts)

    def multiplier(self, n):
        return self.as_dict().get(n)

    def is_full_on(self, degrees) -> bool:
        parts = self.as_dict()
        return all(n in parts and parts[n] == 1 for n in degrees)

    def to_json(self):
        return {"parts": {str(n): str(m) for n, m in self.parts}}


def _incoming(A, i, j, mj):
    """Coefficient at degree i+j of ``[L_i _x m_j(d) L_j]``."""
    return mj.substitute({"d": "d+x"}) * A.p(i, j)


def ideal_closure(A: AlgebraSpec, seed: Element, window=(-6, 6)):
    """Least graded ideal on ``window`` containing ``seed``; returns (submodule, report)."""
    names = A.param_names
    gens = {}
    for n, f in seed.parts:
        f = f.with_params(names)
        gens[n] = normalize_in_var(gcd_in_var(gens[n], f, "d") if n in gens else f, "d")
    degs = list(_degrees(A, window))
    rep = Report(f"ideal closure in {A.name}")
    changed = True
    while changed:
        changed = False
        for j in sorted(gens):
            mj = gens[j]
            for i in degs:
                try:
                    out = _incoming(A, i, j, mj)
                except OutOfWindow as e:
                    rep.add("closure", (i, j), status=SKIPPED, note=f"degree {e.degree} outside window")
                    continue
                if not out:
                    continue
                n = i + j
                if n not in degs:
                    rep.add("closure", (i, j), status=SKIPPED, note=f"degree {n} outside window")
                    continue
                g = gens.get(n, Poly.zero(names))
                for c in out.coefficients("x").values():
                    g = gcd_in_var(g, c, "d")
                if n not in gens or g != gens[n]:
                    gens[n] = g
                    changed = True
    rep.checks = sorted(set(rep.checks), key=lambda c: c.locus)
    return SubmoduleSpec.of(gens, names), rep


def is_ideal(A: AlgebraSpec, S: SubmoduleSpec, window=(-6, 6)) -> Report:
    rep = Report(f"ideal test in {A.name}")
    parts = S.as_dict()
    degs = list(_degrees(A, window))
    for j, mj in S.parts:
        for i in degs:
            try:
                out = _incoming(A, i, j, mj.with_params(A.param_names))
            except OutOfWindow as e:
                rep.add("ideal", (i, j), status=SKIPPED, note=f"degree {e.degree} outside window")
                continue
            if not out:
                rep.add("ideal", (i, j), out)
                continue
            n = i + j
            if n not in degs:
                rep.add("ideal", (i, j), status=SKIPPED, note=f"degree {n} outside window")
            elif n not in parts:
                rep.add("ideal", (i, j), out, note=f"degree {n} has no part")
            else:
                rep.add("ideal", (i, j), divide_in_var(out, parts[n], "d")[1])
    return rep


def is_proper(S: SubmoduleSpec, degrees) -> bool:
    return not S.is_full_on(degrees)


def subalgebra(A: AlgebraSpec, S: SubmoduleSpec, window=(-6, 6), name=None) -> AlgebraSpec:
    """Present the ideal ``S`` as a rank-one algebra with generators ``m_n L_n``."""
    parts = S.as_dict()
    lo, hi = A.support.clip(window)
    entries = {}
    for (i, mi), (j, mj) in product(parts.items(), repeat=2):
        n = i + j
        if not lo <= n <= hi:
            continue
        if n not in parts:
            if A.p(i, j):
                raise ValueError(f"bracket of degrees {i},{j} leaves the submodule")
            continue
        num = mi.substitute({"d": "-x"}) * mj.substitute({"d": "d+x"}) * A.p(i, j)
        quo, rem = divide_in_var(num, parts[n], "d")
        if rem:
            raise ValueError(f"bracket of degrees {i},{j} is not divisible by {parts[n]}")
        if quo:
            entries[(i, j)] = quo
    labels = {n: (A.label(n) if m == 1 else f"M{n}") for n, m in parts.items()}
    return AlgebraSpec(name or f"ideal of {A.name}", ExplicitTable(entries, (lo, hi)),
                       A.support, dict(A.params), labels)


# -- morphisms -----------------------------------------------------------------------


@dataclass
class MorphismWitness:
    """``phi(f(d) L_i) = f(d) q_i(d) L'_{scale*i + shift}``."""

    source: AlgebraSpec
    target: AlgebraSpec
    multipliers: dict
    sigma_shift: int = 0
    sigma_scale: int = 1

    def __post_init__(self):
        if self.sigma_shift != 0:
            raise ValueError("a graded morphism needs an additive degree map (sigma_shift = 0)")
        if self.sigma_scale not in (1, -1):
            raise ValueError("sigma_scale must be 1 or -1")

    def sigma(self, n):
        return self.sigma_scale * n + self.sigma_shift

    def to_json(self):
        return {
            "sigma_shift": self.sigma_shift,
            "sigma_scale": self.sigma_scale,
            "multipliers": {str(n): str(q) for n, q in sorted(self.multipliers.items())},
        }


def verify_morphism(w: MorphismWitness, window=(-6, 6)) -> Report:
    A, B = w.source, w.target
    rep = Report(f"morphism {A.name} -> {B.name}")
    names = tuple(sorted(set(A.param_names) | set(B.param_names)))
    q = {n: Poly.coerce(v, names).with_params(names) for n, v in w.multipliers.items()}
    for i, j in product(_degrees(A, window), repeat=2):
        try:
            pij = A.p(i, j)
            pt = B.p(w.sigma(i), w.sigma(j))
        except OutOfWindow as e:
            rep.add("morphism", (i, j), status=SKIPPED, note=f"degree {e.degree} outside window")
            continue
        if i not in q or j not in q or (pij and i + j not in q):
            missing = next(n for n in (i, j, i + j) if n not in q)
            rep.add("morphism", (i, j), status=SKIPPED, note=f"no multiplier for degree {missing}")
            continue
        lhs = pij * q[i + j] if pij else pij
        rhs = q[i].substitute({"d": "-x"}) * q[j].substitute({"d": "d+x"}) * pt
        rep.add("morphism", (i, j), lhs - rhs)
    return rep


def identity_witness(A: AlgebraSpec, window=(-6, 6)) -> MorphismWitness:
    return MorphismWitness(A, A, {n: Poly.one(A.param_names) for n in _degrees(A, window)})


def compose(w1: MorphismWitness, w2: MorphismWitness) -> MorphismWitness:
    """``w2 after w1``."""
    mult = {}
    for n, q in w1.multipliers.items():
        m = w1.sigma(n)
        if m in w2.multipliers:
            mult[n] = Poly.coerce(q) * Poly.coerce(w2.multipliers[m])
    scale = w1.sigma_scale * w2.sigma_scale
    return MorphismWitness(w1.source, w2.target, mult, 0, scale)
