"""JSON documents for algebras, submodules, witnesses and seeds."""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import product

from .core import (
    AlgebraSpec, Branch, ExplicitTable, Guard, PiecewiseRule, Support, skew_partner,
)
from .derived import MorphismWitness, SubmoduleSpec
from .poly import parse


class SchemaError(ValueError):
    pass


def _params(doc) -> tuple:
    raw = doc.get("params", {}) or {}
    if not isinstance(raw, dict):
        raise SchemaError("params must be an object")
    free = tuple(sorted(k for k, v in raw.items() if str(v) == "free"))
    fixed = {}
    for k, v in raw.items():
        if str(v) == "free":
            continue
        try:
            fixed[k] = Fraction(str(v))
        except ValueError as exc:
            raise SchemaError(f"parameter {k}: {v!r} is neither 'free' nor a rational") from exc
    return free, fixed


def _support(doc) -> Support:
    sup = doc.get("support", {"rule": True})
    if sup.get("rule"):
        return Support()
    if "window" in sup:
        lo, hi = sup["window"]
        return Support(lo, hi)
    raise SchemaError("support must be {window: [lo, hi]} or {rule: true}")


def algebra_from_json(doc: dict) -> AlgebraSpec:
    if "brackets" not in doc:
        raise SchemaError("algebra document needs 'brackets'")
    free, fixed = _params(doc)
    names = tuple(sorted(set(free) | set(fixed)))
    support = _support(doc)
    rows = doc["brackets"]
    table = [r for r in rows if "i" in r or "j" in r]
    if table and len(table) != len(rows):
        raise SchemaError("mix of table entries and guarded branches")
    if table:
        window = doc.get("window") or [support.lo, support.hi]
        if None in window:
            raise SchemaError("a table needs a finite window")
        entries = {}
        for r in table:
            entries[(int(r["i"]), int(r["j"]))] = parse(r["poly"], names)
        for (i, j), p in list(entries.items()):
            if (j, i) not in entries:
                entries[(j, i)] = skew_partner(p)
        bracket = ExplicitTable(entries, tuple(window))
    else:
        branches, otherwise = [], None
        for r in rows:
            if "guard" in r and str(r["guard"]).strip() not in ("", "true", "otherwise"):
                branches.append(Branch(Guard.parse(r["guard"]), parse(r["poly"], names)))
            else:
                if otherwise is not None:
                    raise SchemaError("more than one unguarded branch")
                otherwise = parse(r["poly"], names)
        bracket = PiecewiseRule(branches, otherwise)
    params = {k: "free" for k in free}
    A = AlgebraSpec(doc.get("name", "algebra"), bracket, support, params)
    return A.specialize(fixed) if fixed else A


def algebra_to_json(A: AlgebraSpec, window=None) -> dict:
    params = {k: (v if v == "free" else str(v)) for k, v in sorted(A.params.items())}
    out = {"name": A.name, "params": params, "support": A.support.to_json()}
    br = A.bracket
    if isinstance(br, ExplicitTable) or window is not None:
        if not isinstance(br, ExplicitTable):
            A = A.materialize(window)
            br = A.bracket
        out["window"] = list(br.window)
        out["brackets"] = [
            {"i": i, "j": j, "poly": str(p)} for (i, j), p in sorted(br.entries.items()) if p
        ]
    else:
        rows = [{"guard": str(b.guard), "poly": str(b.poly)} for b in br.branches]
        if br.otherwise is not None:
            rows.append({"poly": str(br.otherwise)})
        out["brackets"] = rows
    return out


def submodule_from_json(doc: dict, params=()) -> SubmoduleSpec:
    if "parts" not in doc:
        raise SchemaError("submodule document needs 'parts'")
    return SubmoduleSpec.of({int(k): parse(v, params) for k, v in doc["parts"].items()}, params)


def witness_from_json(doc: dict, source, target) -> MorphismWitness:
    names = tuple(sorted(set(source.param_names) | set(target.param_names)))
    mult = {int(k): parse(v, names) for k, v in doc.get("multipliers", {}).items()}
    return MorphismWitness(source, target, mult, int(doc.get("sigma_shift", 0)),
                           int(doc.get("sigma_scale", 1)))


def load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)
