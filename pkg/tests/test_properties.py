from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlca.catalog import build_family
from gradedlca.core import Element, jacobi_residual, lambda_bracket
from gradedlca.derived import ideal_closure, is_ideal
from gradedlca.poly import parse

degree = st.integers(-5, 5)
rational = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
small_d_poly = st.lists(st.integers(-3, 3), min_size=1, max_size=3).map(
    lambda cs: " + ".join(f"({c})*d^{n}" for n, c in enumerate(cs)))

FAMILIES = [("V", {}), ("CL2", {"b": "1/2"}), ("CL3", {}), ("ECL", {}), ("M2", {}),
            ("SCL2", {"b": -1})]


@settings(max_examples=30)
@given(st.sampled_from(FAMILIES), rational, degree, degree, degree)
def test_jacobi_holds_at_rational_points(family, s, i, j, k):
    tag, params = family
    A = build_family(tag, {**params, "s": s} if tag not in ("M2",) else params, (-8, 8), check=False)
    assert not jacobi_residual(A, i, j, k)


@settings(max_examples=30)
@given(st.sampled_from(FAMILIES), degree, degree)
def test_skew_symmetry_pointwise(family, i, j):
    tag, params = family
    A = build_family(tag, params, (-8, 8), check=False)
    assert A.p(i, j) == -A.p(j, i).substitute({"x": "-d-x"})


@settings(max_examples=25)
@given(degree, degree, small_d_poly, small_d_poly)
def test_bracket_is_bilinear_and_sesquilinear(i, j, f, g):
    A = build_family("V", {"s": Fraction(2, 3)})
    F, G = Element.of({i: f}), Element.of({j: g})
    want = parse(f).substitute({"d": "-x"}) * parse(g).substitute({"d": "d+x"}) * A.p(i, j)
    got = lambda_bracket(A, F, G).get(i + j, parse("0"))
    assert got == want


@settings(max_examples=15)
@given(st.sampled_from([("ECL", {}), ("CL2", {"b": 0}), ("CL3", {})]), st.integers(-3, 3), small_d_poly)
def test_ideal_closure_is_an_ideal_and_idempotent(family, n, f):
    tag, params = family
    A = build_family(tag, params, (-3, 3), check=False)
    seed = Element.of({n: f}, A.param_names)
    ideal, _ = ideal_closure(A, seed, (-3, 3))
    assert is_ideal(A, ideal, (-3, 3)).ok
    again, _ = ideal_closure(A, Element.of(ideal.as_dict(), A.param_names), (-3, 3))
    assert again == ideal
