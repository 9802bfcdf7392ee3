"""Random polynomial generators shared by the property tests and the acceptance run."""
import sympy
from hypothesis import strategies as st

VARS = ("d", "x", "s")
SYMS = {n: sympy.Symbol(n) for n in VARS + ("y",)}


def term_text(coef, exps):
    factors = [str(coef)] + [f"{v}^{e}" for v, e in zip(VARS, exps) if e]
    return "*".join(factors)


def poly_text(terms):
    if not terms:
        return "0"
    return " + ".join(f"({term_text(c, e)})" for c, e in terms)


def to_sympy(text):
    return sympy.expand(sympy.sympify(text.replace("^", "**"), locals=SYMS))


exponents = st.tuples(*(st.integers(0, 2) for _ in VARS))
terms = st.lists(st.tuples(st.integers(-4, 4), exponents), max_size=4)
poly_texts = terms.map(poly_text)


def random_poly_text(rng, max_terms=4, max_exp=2):
    out = []
    for _ in range(rng.randint(0, max_terms)):
        out.append((rng.randint(-4, 4), tuple(rng.randint(0, max_exp) for _ in VARS)))
    return poly_text(out)


def monic_in_d_text(rng, degree):
    """``d^degree + lower terms``, so that division by it is always defined."""
    lower = [(rng.randint(-3, 3), (rng.randint(0, degree - 1), rng.randint(0, 1), rng.randint(0, 1)))
             for _ in range(rng.randint(0, 3))] if degree else []
    return poly_text([(1, (degree, 0, 0))] + lower)
