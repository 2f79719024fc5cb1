from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from tek.exp_poly import ExpPolynomial, char_recurrence, fit_exp_polynomial, verify_recurrence
from tek.lambda_ops import vandermonde_extract, vandermonde_forward
from tek.toroidal import (AlgebraElement, basis_symbols, bracket, chi_A, invariant_form, k_normalize, make_config,
                          mat_mul2)

CFG = make_config(1, F(-3, 2))
SYMS = basis_symbols(CFG, 1)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
elements = st.dictionaries(st.sampled_from(SYMS), rationals, max_size=4).map(AlgebraElement)
unimodular = st.sampled_from([((0, 1), (1, 0)), ((1, 1), (0, 1)), ((-1, 0), (0, -1)), ((1, 0), (-2, 1)),
                              ((2, 1), (1, 1))])


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_antisymmetry(x, y):
    assert bracket(CFG, x, y) == bracket(CFG, y, x) * -1


@settings(max_examples=40, deadline=None)
@given(elements, elements, elements)
def test_jacobi(x, y, z):
    total = (bracket(CFG, x, bracket(CFG, y, z)) + bracket(CFG, y, bracket(CFG, z, x))
             + bracket(CFG, z, bracket(CFG, x, y)))
    assert not total


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_form_invariance(x, y, z):
    assert invariant_form(CFG, bracket(CFG, x, y), z) == invariant_form(CFG, x, bracket(CFG, y, z))


@settings(max_examples=40, deadline=None)
@given(unimodular, unimodular, elements, elements)
def test_twists(A, B, x, y):
    assert chi_A(CFG, A, bracket(CFG, x, y)) == bracket(CFG, chi_A(CFG, A, x), chi_A(CFG, A, y))
    assert AlgebraElement(chi_A(CFG, A, chi_A(CFG, B, x)).terms) == AlgebraElement(chi_A(CFG, mat_mul2(A, B), x).terms)


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.tuples(rationals, rationals), max_size=5),
       rationals)
def test_k_normalize_linear(raw, c):
    kc = k_normalize(raw)
    assert k_normalize({m: (a * c, b * c) for m, (a, b) in raw.items()}) == kc.scaled(c)
    assert k_normalize(kc.as_dict()) == kc


bases = st.sampled_from([F(1), F(-1), F(2), F(-3), F(1, 2), F(-2, 3)])
exp_polys = st.lists(st.tuples(rationals.filter(bool), st.integers(0, 2), bases), min_size=1, max_size=3).map(
    ExpPolynomial.from_terms)


@settings(max_examples=40, deadline=None)
@given(exp_polys)
def test_exp_poly_recurrence_and_fit(f):
    assert verify_recurrence(f, char_recurrence(f), range(-10, 11))
    assert fit_exp_polynomial({n: f.eval(n) for n in range(-12, 13)}) == f


@given(st.lists(rationals, min_size=1, max_size=6), rationals.filter(bool))
def test_vandermonde_round_trip(xs, ratio):
    assert vandermonde_extract(vandermonde_forward(xs, ratio), ratio) == xs
