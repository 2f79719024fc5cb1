from fractions import Fraction as F
from math import comb

import pytest

from tek.lambda_ops import (CommutingFamily, OperatorSeries, PreconditionFailed, ScalarKModule, check_factorization,
                            check_lemma_4_1, exp_series, lambda_alpha_m_n, lambda_s_decomposition,
                            recursive_series, vandermonde_extract, vandermonde_extract_vectors,
                            vandermonde_forward)
from tek.modules import make_realization, make_type_i
from tek.toroidal import AlgebraElement, make_config

V = {"v": F(1)}


def scalar_family(c):
    return CommutingFamily(lambda k: (lambda v: {key: c * x for key, x in v.items() if c * x}))


def test_zero_family():
    out = OperatorSeries(scalar_family(0), 5).apply_all(V)
    assert out[0] == V and all(not w for w in out[1:])


@pytest.mark.parametrize("c", [1, 2, 3, F(1, 2), -2])
def test_scalar_family_binomial(c):
    out = OperatorSeries(scalar_family(F(c)), 6).apply_all(V)
    for b, w in enumerate(out):
        coef = F(1)
        for i in range(b):
            coef *= F(c) - i
            coef /= i + 1
        assert w.get("v", 0) == (-1) ** b * coef


def test_nilpotent_family():
    # X_1 = N with N e0 = e1, N e1 = 0; X_k = 0 otherwise
    def member(k):
        if k == 1:
            return lambda v: {"e1": v["e0"]} if v.get("e0") else {}
        return lambda v: {}

    out = OperatorSeries(CommutingFamily(member), 4).apply_all({"e0": F(1)})
    assert out[1] == {"e1": F(-1)}
    assert out[2] == {} and out[3] == {}


def test_recursive_matches_expansion():
    def member(k):
        return lambda v: {key: F(k + 1, 3) * x for key, x in v.items()}

    fam = CommutingFamily(member)
    assert recursive_series(fam, 8, V) == OperatorSeries(fam, 8).apply_all(V)


def test_truncation_limits():
    with pytest.raises(ValueError):
        OperatorSeries(scalar_family(1), 13)
    with pytest.raises(ValueError):
        OperatorSeries(scalar_family(1), 3).apply(4, V)


def test_exp_series_checks_commutation():
    def member(k):
        if k == 1:
            return lambda v: {"b": v["a"]} if v.get("a") else {}
        return lambda v: {"a": v["b"]} if v.get("b") else {}

    with pytest.raises(ValueError):
        exp_series(CommutingFamily(member), 2, probe=[{"a": F(1)}])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_realization_binomial(k):
    cfg = make_config(1)
    spec = make_realization(1, 1, (k,))
    v = spec.top_vector().as_dict()
    (key,) = v
    out = lambda_alpha_m_n(cfg, spec, (1,), (1, 0), 0, k + 3).apply_all(v)
    for b in range(k + 4):
        want = {(b, 0) + key[2:]: F((-1) ** b * comb(k, b))} if b <= k else {}
        assert out[b] == want


def test_realization_small_cases():
    cfg = make_config(1)
    spec = make_realization(1, 1, (1,))
    v = spec.top_vector().as_dict()
    plus = lambda_alpha_m_n(cfg, spec, (1,), (1, 0), 0, 2).apply_all(v)
    minus = lambda_alpha_m_n(cfg, spec, (1,), (-1, 0), 0, 2).apply_all(v)
    assert plus[1] == {(1, 0, 0, 0): F(-1)} and minus[1] == {(-1, 0, 0, 0): F(-1)}
    assert plus[2] == {}
    assert lambda_alpha_m_n(cfg, spec, (1,), (1, 0), 0, 1).apply_all(minus[1])[1] == v
    spec2 = make_realization(1, 1, (2,))
    out = lambda_alpha_m_n(cfg, spec2, (1,), (1, 0), 0, 3).apply_all(spec2.top_vector().as_dict())
    assert out[2] == {(2, 0, 0, 0): F(1)} and out[3] == {}


def test_trivial_module_lambda_vanishes():
    cfg = make_config(1)
    spec = make_realization(1, 1, (0,))
    out = lambda_alpha_m_n(cfg, spec, (1,), (1, 0), 0, 4).apply_all(spec.top_vector().as_dict())
    assert all(not w for w in out[1:])


def test_n_is_irrelevant_on_realizations():
    cfg = make_config(1)
    spec = make_realization(1, 2, (2,))
    v = {(0, 0, 1, 1): F(1)}
    base = lambda_alpha_m_n(cfg, spec, (1,), (1, 1), 0, 4).apply_all(v)
    for n in (1, 3):
        assert lambda_alpha_m_n(cfg, spec, (1,), (1, 1), n, 4).apply_all(v) == base


def test_integrability_report_and_preconditions():
    cfg = make_config(1)
    spec = make_realization(1, 1, (3,))
    rep = check_lemma_4_1(cfg, spec, (1,), (1, 0), 0, spec.top_vector(), cap=6)
    assert rep.ok and rep.nbar == 3
    assert rep.to_json()["ii"] == "pass"
    low = spec.act(AlgebraElement.loop((0, 0), 2), spec.top_vector())
    with pytest.raises(PreconditionFailed):
        check_lemma_4_1(cfg, spec, (1,), (1, 0), 0, low, cap=4)


def scalar_module(cfg, m):
    p = {k: F(k + 1, 2) for k in range(1, 6)}
    q = {k: F(2 * k - 1, 3) for k in range(1, 6)}
    return ScalarKModule(cfg, (1,), m, p, q)


def test_factorization_scalar_k():
    cfg = make_config(1)
    for m in ((2, 1), (0, 1), (3, 0)):
        mod = scalar_module(cfg, m)
        assert check_factorization(cfg, mod, (1,), m, 5, range(6), [{(): F(1)}]) == []
        strata = lambda_s_decomposition(cfg, mod, (1,), m, 5).stratum({(): F(1)})
        assert any(s >= 1 and v for (s, _), v in strata.items())


def test_factorization_type_i_strata_vanish():
    cfg = make_config(1)
    spec = make_type_i(1, 2, (2,))
    probe = [{key: F(1)} for key in spec.basis(1)[:6]]
    assert check_factorization(cfg, spec, (1,), (1, 1), 5, range(6), probe) == []
    dec = lambda_s_decomposition(cfg, spec, (1,), (1, 1), 5)
    for w in probe:
        strata = dec.stratum(w)
        assert all(s == 0 for (s, _), v in strata.items() if v)
        assert strata[(0, 2)] == dec.lambda1.apply_all(w)[2]


def test_vandermonde():
    assert vandermonde_extract([F(7)], 3) == [F(7)]
    assert vandermonde_extract([F(2), F(5)], 1) == [F(2), F(3)]
    xs = [F(1, 2), F(-3), F(4, 7), F(0), F(1)]
    assert vandermonde_extract(vandermonde_forward(xs, F(2, 3)), F(2, 3)) == xs
    vals = [{"a": F(1)}, {"a": F(3), "b": F(1)}, {"a": F(7), "b": F(4)}]
    back = vandermonde_extract_vectors(vals, 1)
    for n, target in enumerate(vals):
        got = {}
        for s, comp in enumerate(back):
            for k, c in comp.items():
                got[k] = got.get(k, 0) + F(n) ** s * c if s else got.get(k, 0) + c
        assert {k: c for k, c in got.items() if c} == target
