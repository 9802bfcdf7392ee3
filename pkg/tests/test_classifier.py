from fractions import Fraction

import pytest

from gradedlca.catalog import build_family
from gradedlca.classifier import (
    Impossible, InconsistentTableError, SeedError, VSeed, audit_additivity, audit_degree_bound,
    classify_v, extend_v_seed, family_at, normal_form,
)
from gradedlca.core import AlgebraSpec, ExplicitTable, Support, audit_jacobi
from gradedlca.derived import verify_morphism
from gradedlca.poly import parse
from gradedlca.scalars import Scalar

W4 = (-4, 4)
SYMBOLIC = ("a", "b", "c", "e", "f", "g", "h")
DEGSUM1 = {
    "deg p_neg1_1 = 1": dict(p_neg1_1="a*d + c", p01="e", p11="f*(d+2*x)",
                             p_neg1_neg1="g*(d+2*x)", p0_neg1="h"),
    "deg p01 = 1": dict(p_neg1_1="a", p01="b*x + c", p11="f*(d+2*x)",
                        p_neg1_neg1="g*(d+2*x)", p0_neg1="e*x + h"),
}


def seed_of(tag, **params):
    return VSeed.from_algebra(build_family(tag, params, W4, check=False))


def recheck_certificate(doc, params):
    """Verify an Impossible certificate from its JSON alone."""
    cert = doc["certificate"]
    ys = [parse(y, params) for y in cert["multipliers"]]
    combo = {u: parse("0", params) for u in cert["unknowns"]}
    rhs = parse("0", params)
    for y, eq in zip(ys, cert["equations"]):
        for u, c in eq["coefficients"].items():
            combo[u] = combo[u] + y * parse(c, params)
        rhs = rhs + y * parse(eq["rhs"], params)
    return all(not v for v in combo.values()) and rhs == parse(cert["residue"], params) and bool(rhs)


def test_extension_reproduces_cl2_table():
    A = build_family("CL2", {"b": 0, "s": 1}, W4)
    ext = extend_v_seed(VSeed.from_algebra(A), 4)
    assert ext.lo == -4 and ext.hi == 4
    for i in range(-4, 5):
        for j in range(-4, 5):
            if -4 <= i + j <= 4:
                assert ext.spec.p(i, j) == A.p(i, j), (i, j)
    assert all(r.ok for r in ext.reports)


def test_extension_of_cur_sl2_stops_at_one():
    ext = extend_v_seed(seed_of("CurG"), 4)
    assert (ext.lo, ext.hi) == (-1, 1)


def test_degree_sum_one_example_is_impossible():
    seed = VSeed.from_json(dict(p_neg1_1="1", p01="x", p11="d+2*x", p_neg1_neg1="d+2*x", p0_neg1="-x"))
    out = extend_v_seed(seed, 4)
    assert isinstance(out, Impossible)
    assert out.step == "Jacobi(L-1, L1, L2)"
    assert out.verify()


@pytest.mark.parametrize("shape", sorted(DEGSUM1))
def test_symbolic_degree_sum_one_is_impossible(shape):
    seed = VSeed.from_json(DEGSUM1[shape], SYMBOLIC)
    out = extend_v_seed(seed, 4)
    assert isinstance(out, Impossible) and out.verify()
    assert recheck_certificate(out.to_json(), SYMBOLIC)
    assert isinstance(classify_v(seed), Impossible)


def test_degree_sum_three_is_impossible():
    seed = VSeed.from_json(dict(p_neg1_1="d^2", p01="x", p11="d+2*x", p_neg1_neg1="d+2*x", p0_neg1="-x"))
    out = classify_v(seed)
    assert isinstance(out, Impossible) and out.reason == "degree bound"


def test_malformed_seeds():
    with pytest.raises(SeedError):
        VSeed.from_json(dict(p_neg1_1="1", p01="x"))
    with pytest.raises(SeedError):
        VSeed.from_json(dict(p_neg1_1="1", p01="x", p11="d+3*x", p_neg1_neg1="0", p0_neg1="-x")).validate()
    with pytest.raises(SeedError):
        VSeed.from_json(dict(p_neg1_1="0", p01="x", p11="0", p_neg1_neg1="0", p0_neg1="-x")).validate()


S_VALUES = [0, 1, -2, Fraction(3, 5), "free"]
CASES = [("CL2", {"b": 0}, "CL2_0"), ("CL3", {}, "CL3"), ("ECL", {}, "ECL"), ("SCL2", {"b": 0}, "SCL2_0")]


@pytest.mark.parametrize("s", S_VALUES, ids=str)
@pytest.mark.parametrize("family, fixed, tag", CASES, ids=lambda v: str(v))
def test_classification_round_trip(family, fixed, tag, s):
    state = classify_v(seed_of(family, **fixed, s=s))
    expected_tag = "CL2_0" if (tag == "CL3" and s == 0) else tag
    assert state.tag == expected_tag
    want = Scalar.param("s", ("s",)) if s == "free" else Scalar.from_value(s)
    assert state.s == want
    assert state.ok
    assert verify_morphism(state.witness, W4).ok


@pytest.mark.parametrize("family, tag, scale", [("CurG", "CurSl2", 1), ("M1", "M1", 1), ("M2", "M2", 1)])
def test_degree_sum_zero_families(family, tag, scale):
    state = classify_v(seed_of(family))
    assert state.tag == tag and state.ok
    assert state.witness.sigma_scale == scale
    assert verify_morphism(state.witness, W4).ok


def test_mirrored_m1_uses_degree_flip():
    M1 = build_family("M1", {}, W4)
    seed = VSeed(M1.p(0, -1) * -1, M1.p(-1, 1), M1.p(-1, -1), M1.p(1, 1), M1.p(0, 1) * -1)
    state = classify_v(seed)
    assert state.tag == "M1" and state.witness.sigma_scale == -1 and state.ok


def test_normal_form_examples():
    st = normal_form(build_family("CL2", {"b": 0}, W4), W4)
    assert st.tag == "CL2_0" and st.s == Scalar.param("s", ("s",))
    st = normal_form(build_family("CL3", {}, W4), W4)
    assert st.tag == "CL3"
    tie = normal_form(build_family("CL3", {"s": 0}, W4), W4)
    assert tie.tag == "CL2_0" and tie.s == 0 and tie.ok and tie.note


def test_normal_form_rejects_off_family_constants():
    A = build_family("CL2", {"b": 0, "s": 1}, W4).materialize(W4)
    entries = dict(A.bracket.entries)
    entries[(-1, 1)] = parse("-d + 7")
    entries[(1, -1)] = parse("d - 7")
    bad = AlgebraSpec("bad", ExplicitTable(entries, W4), Support(-4, 4))
    with pytest.raises(InconsistentTableError):
        normal_form(bad, W4)


def test_family_at_symbolic_expression():
    A = family_at("CL3", parse("2*t", ("t",)))
    assert A.p(0, 1) == parse("x - 4*t", ("t",))
    assert audit_jacobi(A, (-3, 3)).ok


def test_structural_audits():
    for tag, params in [("CL3", {}), ("ECL", {}), ("M1", {}), ("M2", {}), ("CurG", {}),
                        ("SCL2", {"b": 0}), ("CL2", {"b": 0})]:
        A = build_family(tag, params, check=False)
        for audit in (audit_additivity, audit_degree_bound):
            rep = audit(A)
            assert rep.ok and rep.summary()["pass"] > 0 and not rep.not_applicable
    rep = audit_additivity(build_family("V"))
    assert rep.ok and rep.summary()["not_applicable"] == 1


def test_degree_bound_flags_oversized_seed():
    A = AlgebraSpec("hand", ExplicitTable({(-1, 1): parse("d^2"), (1, -1): parse("d^2"),
                                          (0, 1): parse("x"), (1, 0): parse("-d - x")}, (-1, 1)),
                    Support(-1, 1))
    rep = audit_degree_bound(A, (-1, 1))
    assert not rep.ok
