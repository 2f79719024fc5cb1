from fractions import Fraction as F

import pytest

from tek.toroidal import (AlgebraElement, GElement, KClass, SElement, basis_symbols, bracket, bracket_d_k,
                          central_charge_transform, chi_A, det2, element_from_json, element_to_json,
                          exact_form_terms, form_terms, g_algebra_bracket, invariant_form, k_m, k_normalize,
                          make_config, pi_S, root_of, s_bracket, sl2_hat, check_sl2_hat)

E, H, FF = 0, 1, 2  # sl2 basis indices: e, h, f
el = AlgebraElement


@pytest.fixture(scope="module")
def sl2():
    return make_config(1, 0)


@pytest.fixture(scope="module")
def sl2_mu1():
    return make_config(1, 1)


@pytest.mark.parametrize("m, n, d", [((1, 0), (0, 1), 1), ((1, 2), (3, 4), -2), ((2, 3), (2, 3), 0)])
def test_det2(m, n, d):
    assert det2(m, n) == d


def test_k_normalize_examples():
    assert not k_normalize({(2, 0): (1, 0)})
    assert k_normalize({(1, 1): (0, 1)}) == k_normalize({(1, 1): (-1, 0)})
    assert k_normalize({(1, 1): (0, 1)}).as_dict() == {(1, 1): (F(-1), F(0))}
    assert k_normalize({(0, 0): (3, 5)}).as_dict() == {(0, 0): (F(3), F(5))}


def test_normal_form_invariants():
    for m0 in range(-2, 3):
        for m1 in range(-2, 3):
            kc = k_normalize({(m0, m1): (F(2), F(7))})
            for m, a, b in kc.entries:
                if m[1]:
                    assert b == 0
                elif m[0]:
                    assert a == 0
                assert a or b


def test_loop_bracket_example(sl2):
    got = bracket(sl2, el.loop((1, 0), E), el.loop((0, 1), FF))
    assert got == el.loop((1, 1), H) + el.k((1, 1), 0)


def test_skew_cocycle_example(sl2_mu1):
    got = bracket(sl2_mu1, el.skew((1, 0)), el.skew((0, 1)))
    assert got == el.skew((1, 1)) + el.k((1, 1), 0)


def test_degree_derivations_commute(sl2):
    assert not bracket(sl2, el.d(0), el.d(1))


def test_skew_on_loop(sl2):
    assert bracket(sl2, el.skew((1, 1)), el.loop((1, 0), E)) == el.loop((2, 1), E) * -1


def test_form_examples(sl2):
    assert invariant_form(sl2, el.d(0), el.k((0, 0), 0)) == 1
    assert invariant_form(sl2, el.d(0), el.k((0, 0), 1)) == 0
    assert invariant_form(sl2, el.skew((1, 2)), el.k((-1, -2), 1)) == 1
    assert form_terms(sl2, el.skew((1, 1)).terms, exact_form_terms((-1, -1))) == 0


def test_form_symmetric_and_invariant_sample(sl2_mu1):
    syms = basis_symbols(sl2_mu1, 1)
    xs = [el({s: 1}) for s in syms[::7]]
    for x in xs:
        for y in xs:
            assert invariant_form(sl2_mu1, x, y) == invariant_form(sl2_mu1, y, x)
            for z in xs:
                assert invariant_form(sl2_mu1, bracket(sl2_mu1, x, y), z) == invariant_form(
                    sl2_mu1, x, bracket(sl2_mu1, y, z))


def test_root_labels(sl2):
    r = root_of(sl2, (0, E, 2, 5))
    assert (r.finite_part, r.m0, r.m1, r.isotropic, r.type1, r.type2) == ((1,), 2, 5, False, 1, 1)
    r = root_of(sl2, (0, FF, -1, 3))
    assert (r.finite_part, r.type1, r.type2) == ((-1,), -1, -1)
    r = root_of(sl2, (3, 0, 4))
    assert r.isotropic and (r.m0, r.m1) == (0, 4)


def test_k_m_examples():
    assert k_m((3, 2)).as_dict() == {(3, 2): (F(1, 2), F(0))}
    assert k_m((4, 0)).as_dict() == {(4, 0): (F(0), F(-1, 4))}
    assert not k_m((0, 0))


def test_bracket_d_k_examples(sl2):
    assert bracket_d_k(sl2, (1, 0), (0, 1)) == k_m((1, 1))
    assert not bracket_d_k(sl2, (2, 3), (4, 6))
    assert bracket_d_k(sl2, (0, 1), (1, 0)) == k_m((1, 1)).scaled(-1)


def test_bracket_d_k_opposite_exponents(sl2):
    # m + n = 0: only a multiple of m0 k0 + m1 k1 appears, which is dropped
    assert not bracket_d_k(sl2, (1, 2), (-1, -2))


def test_sl2_hat_examples(sl2):
    gens = sl2_hat(sl2, (1,), (0, 1), 0, range(-2, 3))
    assert gens.c == el.k((0, 0), 1)
    assert gens.D == el.d(1)
    assert bracket(sl2, gens.E[1], gens.F[-1]) == el.loop((0, 0), H) + el.k((0, 0), 1)
    assert check_sl2_hat(sl2, gens) == []
    gens = sl2_hat(sl2, (1,), (1, 0), 0, range(-2, 3))
    assert gens.c == el.k((0, 0), 0) and gens.D == el.d(0)
    assert check_sl2_hat(sl2, gens) == []
    gens = sl2_hat(sl2, (1,), (1, 2), 2, range(-1, 2))
    assert exponent_of(gens.E[0]) == (1, 0)
    assert check_sl2_hat(sl2, gens) == []
    with pytest.raises(ValueError):
        sl2_hat(sl2, (1,), (1, 2), 1, range(1))


def exponent_of(x):
    (sym,) = x.terms
    return sym[2], sym[3]


def test_chi_examples(sl2):
    A = ((0, 1), (1, 0))
    I = ((1, 0), (0, 1))
    x = el.loop((1, 2), E) + el.skew((2, -1)) + el.d(0) + el.k((1, 1), 0)
    assert chi_A(sl2, I, x) == x
    assert chi_A(sl2, A, el.d(0)) == el.d(1)
    assert chi_A(sl2, A, el.skew((1, 0))) == el.skew((0, 1)) * -1


def test_central_charge_examples():
    assert central_charge_transform((2, 3), ((0, 1), (1, 0))) == (3, 2)
    assert central_charge_transform((5, 7), ((1, 0), (0, 1))) == (5, 7)
    assert central_charge_transform((2, 4), ((1, 0), (-2, 1))) == (-6, 4)
    with pytest.raises(ValueError):
        central_charge_transform((1, 1), ((2, 0), (0, 1)))


def test_quotient_examples(sl2):
    x = el.skew((1, 0)) + el.k((1, 1), 0) + el.loop((2, 0), E)
    assert pi_S(sl2, x) == SElement.build(dm={(1, 0): 1})
    assert s_bracket(SElement.build(dm={(1, 0): 1}), SElement.build(dm={(0, 1): 1})) == SElement.build(dm={(1, 1): 1})
    assert s_bracket(SElement.build(d0=1), SElement.build(dm={(2, 3): 1})) == SElement.build(dm={(2, 3): 2})


def test_g_algebra_examples(sl2):
    h = lambda m: GElement.build({(m, H): 1})
    d = lambda m: GElement.build(s=SElement.build(dm={m: 1}))
    assert g_algebra_bracket(sl2, d((1, 0)), h((0, 1))) == h((1, 1))
    assert g_algebra_bracket(sl2, h((1, 0)), h((0, 1))) == GElement.build()
    assert g_algebra_bracket(sl2, GElement.build(s=SElement.build(d1=1)), h((2, 3))) == GElement.build({((2, 3), H): 3})


def test_json_round_trip(sl2_mu1):
    x = el.loop((1, -2), E, F(1, 3)) + el.k((2, 1), 0, 5) + el.k((0, 0), 1) + el.d(1, 2) + el.skew((1, 1), -1)
    assert element_from_json(element_to_json(x), 3) == x
    with pytest.raises(IndexError):
        element_from_json({"loop": [[0, 0, 3, "1"]]}, 3)
    with pytest.raises(ValueError):
        element_from_json({"bogus": []})


def test_non_normal_k_input_is_normalized():
    x = el({(1, 1, 2, 0): F(1)})  # t^(2,0) k_1 stays, as m1 = 0
    assert x.k_part.as_dict() == {(2, 0): (F(0), F(1))}
    y = el({(1, 0, 2, 0): F(1)})  # t^(2,0) k_0 is exact
    assert not y
