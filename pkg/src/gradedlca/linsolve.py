"""Exact Gaussian elimination over :class:`Scalar` with inconsistency certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import Scalar


@dataclass
class LinearSystem:
    """Equations ``sum_u rows[r][u] * u == rhs[r]`` over named unknowns."""

    unknowns: list
    rows: list = field(default_factory=list)
    rhs: list = field(default_factory=list)
    labels: list = field(default_factory=list)

    def add(self, coeffs: dict, rhs, label=""):
        self.rows.append(dict(coeffs))
        self.rhs.append(rhs)
        self.labels.append(label)


@dataclass
class Solution:
    values: dict
    free: list
    nullspace: list


@dataclass
class Inconsistent:
    """Row multipliers ``y`` with ``y . M == 0`` and ``y . b == residue != 0``."""

    system: LinearSystem
    multipliers: list
    residue: Scalar

    def verify(self) -> bool:
        total = {}
        b = None
        for y, row, rhs in zip(self.multipliers, self.system.rows, self.system.rhs):
            if not y:
                continue
            for u, c in row.items():
                total[u] = total[u] + y * c if u in total else y * c
            b = y * rhs if b is None else b + y * rhs
        return all(not v for v in total.values()) and b is not None and b == self.residue and bool(b)


def _zero_like(x: Scalar) -> Scalar:
    return x * 0


def solve(system: LinearSystem, params=()):
    """Return a :class:`Solution` or an :class:`Inconsistent` certificate.

    Pivots are chosen among entries that are not identically zero, so the
    answer is the generic one over the parameter field.
    """
    zero = Scalar.from_value(0, params)
    one = Scalar.from_value(1, params)
    unknowns = list(system.unknowns)
    n = len(system.rows)
    mat = [[row.get(u, zero) + zero for u in unknowns] for row in system.rows]
    rhs = [r + zero for r in system.rhs]
    track = [[one if a == b else zero for b in range(n)] for a in range(n)]
    pivots = []
    r = 0
    for col in range(len(unknowns)):
        piv = next((q for q in range(r, n) if mat[q][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        track[r], track[piv] = track[piv], track[r]
        inv = mat[r][col].inverse()
        mat[r] = [v * inv for v in mat[r]]
        rhs[r] = rhs[r] * inv
        track[r] = [v * inv for v in track[r]]
        for q in range(n):
            if q != r and mat[q][col]:
                f = mat[q][col]
                mat[q] = [a - f * b for a, b in zip(mat[q], mat[r])]
                rhs[q] = rhs[q] - f * rhs[r]
                track[q] = [a - f * b for a, b in zip(track[q], track[r])]
        pivots.append(col)
        r += 1
    for q in range(r, n):
        if rhs[q]:
            return Inconsistent(system, track[q], rhs[q])
    values = {u: zero for u in unknowns}
    for q, col in enumerate(pivots):
        values[unknowns[col]] = rhs[q]
    free = [unknowns[c] for c in range(len(unknowns)) if c not in pivots]
    nullspace = []
    for fcol in (c for c in range(len(unknowns)) if c not in pivots):
        vec = {u: zero for u in unknowns}
        vec[unknowns[fcol]] = one
        for q, col in enumerate(pivots):
            vec[unknowns[col]] = -mat[q][fcol]
        nullspace.append(vec)
    return Solution(values, free, nullspace)
