"""Command-line front end.

Exit codes: 0 success, 1 a check failed or the input is inconsistent,
2 malformed input, 3 the seed admits no algebra (Impossible).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog
from .catalog import CLI_NAMES, build_family, build_module
from .classifier import (
    FactorizationError, Impossible, InconsistentTableError, SeedError, ShapeError, VSeed,
    audit_additivity, audit_degree_bound, classify_v, extend_v_seed,
)
from .core import Element, Report, audit_jacobi, audit_module, audit_skew
from .derived import (
    MorphismWitness, SubmoduleSpec, annihilation_truncation, basic_lie_algebra, ideal_closure,
    is_ideal, is_proper, subalgebra, verify_morphism,
)
from .fixtures import ECL_IDEALS, ecl_witness_doc
from .poly import ParseError, UndeclaredSymbolError
from .serialize import (
    SchemaError, algebra_from_json, algebra_to_json, dumps, load_json, submodule_from_json,
    witness_from_json,
)

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED, EXIT_IMPOSSIBLE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class CommandConfig:
    command: str
    family: str | None = None
    file: str | None = None
    params: dict = field(default_factory=dict)
    window: tuple = (-6, 6)
    max_index: int = 10
    format: str = "text"
    out: str | None = None
    subcommand: str | None = None
    module: str | None = None
    seeds: list = field(default_factory=list)

    def __post_init__(self):
        if self.window[0] > self.window[1]:
            raise UsageError(f"window {self.window} has lo > hi")
        if (self.family is None) == (self.file is None):
            raise UsageError("give exactly one of --family or --file")


def parse_param(text: str):
    if "=" not in text:
        raise UsageError(f"--param expects name=value, got {text!r}")
    name, value = text.split("=", 1)
    name, value = name.strip(), value.strip()
    if value == "free":
        return name, "free"
    try:
        return name, Fraction(value)
    except ValueError as exc:
        raise UsageError(f"--param {name}: {value!r} is neither 'free' nor a rational") from exc


def parse_window(text: str) -> tuple:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"--window expects lo..hi, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=sorted(CLI_NAMES))
    common.add_argument("--file")
    common.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    common.add_argument("--window", default="-6..6")
    common.add_argument("--max-index", type=int, default=10)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out")
    parser = argparse.ArgumentParser(prog="gradedlca", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="skew, Jacobi and structural audits")
    v.add_argument("--module", choices=("mab", "mu"))
    i = sub.add_parser("ideals", parents=[common], help="ideal closures, membership, witnesses")
    i.add_argument("--seed", action="append", default=[], metavar="DEG:EXPR")
    sub.add_parser("classify", parents=[common], help="classify a seed")
    d = sub.add_parser("derive", help="basic Lie algebra or annihilation truncation")
    dsub = d.add_subparsers(dest="subcommand", required=True)
    dsub.add_parser("basic", parents=[common])
    dsub.add_parser("annihilate", parents=[common])
    sub.add_parser("extend", parents=[common], help="extend a seed to a table")
    return parser


def config_from_args(ns) -> CommandConfig:
    return CommandConfig(
        command=ns.command, family=ns.family, file=ns.file,
        params=dict(parse_param(p) for p in ns.param), window=parse_window(ns.window),
        max_index=ns.max_index, format=ns.format, out=ns.out,
        subcommand=getattr(ns, "subcommand", None), module=getattr(ns, "module", None),
        seeds=getattr(ns, "seed", []),
    )


# -- helpers ------------------------------------------------------------------------


def _family(cfg: CommandConfig, **kw):
    tag = CLI_NAMES[cfg.family]
    return build_family(tag, cfg.params, cfg.window, check=False, **kw)


def _algebra(cfg: CommandConfig):
    if cfg.family:
        return _family(cfg)
    return algebra_from_json(load_json(cfg.file))


def _seed(cfg: CommandConfig) -> VSeed:
    if cfg.family:
        seed = VSeed.from_algebra(_family(cfg))
    else:
        doc = load_json(cfg.file)
        if "brackets" in doc:
            seed = VSeed.from_algebra(algebra_from_json(doc))
        else:
            params = doc.get("params", {})
            seed = VSeed.from_json(doc, tuple(params) if isinstance(params, (list, dict)) else ())
    seed.validate()
    return seed


def _n_from_window(window) -> int:
    return max(2, min(-window[0], window[1]))


def _emit(cfg: CommandConfig, payload: dict, text: str):
    body = dumps(payload) if cfg.format == "json" else text
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body + "\n")
    else:
        sys.stdout.write(body + "\n")


# -- commands ------------------------------------------------------------------------


def cmd_verify(cfg: CommandConfig) -> int:
    A = _algebra(cfg)
    reports = [audit_skew(A, cfg.window), audit_jacobi(A, cfg.window)]
    if cfg.module:
        M = build_module("Mab" if cfg.module == "mab" else "MU",
                         {k: v for k, v in cfg.params.items() if k in ("a", "b")} if cfg.module == "mab" else {},
                         A)
        reports.append(audit_module(M, cfg.window))
    if 0 in A.support:
        reports += [audit_additivity(A, cfg.window), audit_degree_bound(A, cfg.window)]
    ok = all(r.ok for r in reports)
    payload = {"algebra": A.name, "ok": ok, "reports": [r.to_json() for r in reports]}
    _emit(cfg, payload, "\n".join(r.to_text() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


def _parse_seed_arg(text, params):
    if ":" not in text:
        raise UsageError(f"--seed expects DEG:EXPR, got {text!r}")
    deg, expr = text.split(":", 1)
    return int(deg), expr


def cmd_ideals(cfg: CommandConfig) -> int:
    lines, payload, ok = [], {"ideals": []}, True
    if cfg.family == "scl2":
        b = cfg.params.get("b")
        if b in (None, "free") or (2 * b).denominator != 1:
            raise UsageError("scl2 ideals need --param b=<rational with 2b integral>")
        params = {"b": b, "s": cfg.params.get("s", "free")}
        A = build_family("CL2", params, cfg.window, check=False)
        c = int(-2 * b)
        lo, hi = cfg.window
        S = SubmoduleSpec.of({n: (1 if n != c else "d+2*s") for n in range(lo, hi + 1)},
                             A.param_names)
        rep = is_ideal(A, S, cfg.window)
        ok = rep.ok
        payload["ideals"].append({"ambient": A.name, "submodule": S.to_json(), "is_ideal": rep.to_json(),
                                  "proper": is_proper(S, range(lo, hi + 1))})
        lines.append(f"submodule with (d+2*s)L{c} inside {A.name}")
        lines.append(rep.to_text())
        _emit(cfg, payload, "\n".join(lines))
        return EXIT_OK if ok else EXIT_FAIL
    A = _algebra(cfg)
    names = A.param_names
    lo, hi = A.support.clip(cfg.window)
    degrees = range(lo, hi + 1)
    if cfg.seeds:
        seeds = [dict([_parse_seed_arg(t, names)]) for t in cfg.seeds]
        targets = [None] * len(seeds)
    elif cfg.family == "ecl":
        seeds = [{0: m} for m, _, _ in ECL_IDEALS]
        targets = [(t, p) for _, t, p in ECL_IDEALS]
    else:
        seeds = [{n: "1"} for n in (-1, 0, 1) if n in degrees]
        targets = [None] * len(seeds)
    closures = []
    for seed, target in zip(seeds, targets):
        S, skipped = ideal_closure(A, Element.of(seed, names), cfg.window)
        rep = is_ideal(A, S, cfg.window)
        proper = is_proper(S, degrees)
        entry = {"seed": {str(k): str(v) for k, v in seed.items()}, "closure": S.to_json(),
                 "proper": proper, "is_ideal": rep.to_json(),
                 "skipped": [list(c.locus) for c in skipped.skipped]}
        ok &= rep.ok
        lines.append(f"seed {seed}: {'proper' if proper else 'full'} closure {S.to_json()['parts']}")
        lines.append("  " + rep.to_text().replace("\n", "\n  "))
        if target is not None:
            tag, fixed = target
            T = build_family(tag, {**fixed, "s": cfg.params.get("s", "free")}, cfg.window, check=False)
            src = subalgebra(A, S, cfg.window)
            w = witness_from_json(ecl_witness_doc(cfg.window), src, T)
            wrep = verify_morphism(w, cfg.window)
            ok &= wrep.ok
            entry["witness"] = {"target": T.name, **w.to_json(), "report": wrep.to_json()}
            lines.append(f"  isomorphic to {T.name}: {'verified' if wrep.ok else 'FAILED'}")
        closures.append(S)
        payload["ideals"].append(entry)
    proper = [S for S in closures if is_proper(S, degrees)]
    distinct = len({json.dumps(S.to_json(), sort_keys=True) for S in proper}) == len(proper)
    payload["proper_count"] = len(proper)
    payload["pairwise_distinct"] = distinct
    if not proper:
        lines.append("no proper graded ideal found from the shipped seeds")
    else:
        lines.append(f"{len(proper)} proper ideal(s); pairwise distinct: {distinct}")
    payload["ok"] = ok
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(cfg: CommandConfig) -> int:
    seed = _seed(cfg)
    try:
        state = classify_v(seed, _n_from_window(cfg.window))
    except (InconsistentTableError, FactorizationError, ShapeError) as exc:
        _emit(cfg, {"error": str(exc), "kind": type(exc).__name__}, f"not classified: {exc}")
        return EXIT_FAIL
    if isinstance(state, Impossible):
        doc = state.to_json()
        _emit(cfg, doc, f"Impossible: {state.reason} at {state.step}"
              + (f"; certificate verified: {state.verify()}" if state.certificate else ""))
        return EXIT_IMPOSSIBLE
    doc = state.to_json()
    text = [f"tag {state.tag}" + (f", s = {state.s}" if state.s is not None else "")]
    if state.witness is not None:
        text.append(f"witness {json.dumps(state.witness.to_json(), sort_keys=True)}")
    text.append(f"checks {'OK' if state.ok else 'FAILED'}")
    _emit(cfg, doc, "\n".join(text))
    return EXIT_OK if state.ok else EXIT_FAIL


def _lie_text(data, title):
    lines = [f"{title}: dimension {data.dimension()}" + (", abelian" if data.is_abelian() else "")]
    for row in data.to_json()["constants"]:
        a, b = row["pair"]
        rhs = " + ".join(f"({v})*{k}" for k, v in row["value"].items())
        lines.append(f"  [{a}, {b}] = {rhs}")
    return "\n".join(lines)


def cmd_derive(cfg: CommandConfig) -> int:
    A = _algebra(cfg)
    if cfg.subcommand == "basic":
        data = basic_lie_algebra(A, cfg.window)
        payload = {"algebra": A.name, "lie_algebra": data.to_json(), "abelian": data.is_abelian()}
        _emit(cfg, payload, _lie_text(data, f"basic Lie algebra of {A.name}"))
        return EXIT_OK
    if cfg.max_index < 0:
        raise UsageError("--max-index must be nonnegative")
    tr = annihilation_truncation(A, cfg.max_index, cfg.window)
    payload = {"algebra": A.name, "max_index": cfg.max_index, "lie_algebra": tr.algebra.to_json(),
               "truncated": [list(t) for t in tr.truncated]}
    text = _lie_text(tr.algebra, f"annihilation algebra of {A.name} up to index {cfg.max_index}")
    text += f"\n  {len(tr.truncated)} bracket term(s) above the index bound were dropped"
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_extend(cfg: CommandConfig) -> int:
    seed = _seed(cfg)
    ext = extend_v_seed(seed, _n_from_window(cfg.window))
    if isinstance(ext, Impossible):
        _emit(cfg, ext.to_json(), f"Impossible: {ext.reason} at {ext.step}")
        return EXIT_IMPOSSIBLE
    doc = algebra_to_json(ext.spec)
    doc["reports"] = [r.to_json() for r in ext.reports]
    lines = [f"support [{ext.lo}, {ext.hi}]"]
    lines += [f"  p({e['i']},{e['j']}) = {e['poly']}" for e in doc["brackets"]]
    _emit(cfg, doc, "\n".join(lines))
    return EXIT_OK if all(r.ok for r in ext.reports) else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "ideals": cmd_ideals, "classify": cmd_classify,
            "derive": cmd_derive, "extend": cmd_extend}


def _join_window(argv):
    # "--window -4..4" would otherwise be read as an option
    out, it = [], iter(argv)
    for a in it:
        if a == "--window":
            out.append("--window=" + next(it, ""))
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_window(sys.argv[1:] if argv is None else list(argv))
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, SchemaError, ParseError, UndeclaredSymbolError, SeedError,
            catalog.ParameterDomainError, catalog.WindowDomainError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
