from fractions import Fraction as F

import pytest

from tek.exp_poly import ExpPolynomial
from tek.modules import (Failure, HeisenbergFunctional, HeisenbergModule, LoopModule, ModuleVector, OutsideDomain,
                         heisenberg_act, heisenberg_decompose, loop_act, make_gmod, make_realization, make_type_i,
                         nilpotence_index, psi_from_triple, spec_from_json, support_gcd, twist, vector_from_json,
                         weight_of, weight_table)
from tek.simple_lie import DominantWeight, sl2_module
from tek.toroidal import AlgebraElement as el, mat_mul2

E, H, FF = 0, 1, 2


def vec(tag, key):
    return ModuleVector.build(tag, {key: F(1)})


def test_type_i_skew_action_is_e():
    spec = make_type_i(1, 2, (1,))
    out = spec.act(el.skew((1, 0)), vec("TypeI", (0, 0, 1)))
    assert out.as_dict() == {(1, 0, 0): F(1)}


def test_type_i_k_and_degree():
    spec = make_type_i(1, 2, (1,), gamma_p=(F(1, 2), 0))
    assert not spec.act(el.k((1, 1), 0), vec("TypeI", (0, 0, 0)))
    out = spec.act(el.d(0), vec("TypeI", (2, 3, 1)))
    assert out.as_dict() == {(2, 3, 1): F(5, 2)}
    with pytest.raises(OutsideDomain):
        spec.act(el.loop((0, 0), E), vec("TypeI", (0, 0, 0)))


def test_type_i_rejects_zero_lambda():
    with pytest.raises(ValueError):
        make_type_i(1, 2, (0,))


def test_gmod_cartan_action():
    spec = make_gmod(1, 2, (F(3),), (F(1, 2),))
    assert spec.act(el.loop((0, 0), H), vec("GMod", (1, -1, 0))).as_dict() == {(1, -1, 0): F(7, 2)}
    assert spec.act(el.loop((1, 0), H), vec("GMod", (0, 0, 0))).as_dict() == {(1, 0, 0): F(3)}
    with pytest.raises(OutsideDomain):
        spec.act(el.k((0, 0), 0), vec("GMod", (0, 0, 0)))


def test_gmod_zero_lambda_acts_trivially():
    spec = make_gmod(1, 1, (0,))
    assert not spec.act(el.loop((1, 0), H), vec("GMod", (0, 0, 0)))


def test_realization_examples():
    spec = make_realization(1, 2, (2,))
    top = spec.top_vector()
    out = spec.act(el.loop((1, 0), FF), top)
    assert out and {k[:3] for k in out.as_dict()} == {(1, 0, 0)}
    for k in ((5, 7, 1), (0, 0, 0), (1, 1, 0)):
        assert not spec.act(el.k(k[:2], k[2]), top)
    out = spec.act(el.skew((0, 1)), ModuleVector.build("Realization", {(0, 0, 0, 0): F(1)}))
    assert out.as_dict() == {(0, 1, 1, 0): F(-1)}


def test_weights():
    t = make_type_i(1, 2, (1,))
    assert t.weight((2, 3, 0)) == ((1,), 2, 3)
    r = make_realization(1, 2, (2,), gamma_p=(F(1, 2), F(-1, 3)))
    assert weight_of(r, r.top_vector()) == ((2,), F(1, 2), F(-1, 3))


def test_weight_table_sl2():
    spec = make_realization(1, 2, (2,))
    table = weight_table(spec, 2)
    assert len(table) == 75
    assert all(dim == 2 for _, dim in table)


def test_weight_table_sl3_adjoint():
    spec = make_realization(2, 1, (1, 1))
    for (beta, _, _), dim in weight_table(spec, 1):
        assert dim == (2 if beta == (0, 0) else 1)


def test_nilpotence_examples():
    spec = make_realization(1, 1, (2,))
    assert nilpotence_index(spec, el.loop((0, 0), FF), spec.top_vector(), 10) == 3
    assert nilpotence_index(spec, el.loop((1, 1), E), spec.top_vector(), 10) == 1
    assert nilpotence_index(spec, el.loop((0, 0), FF), spec.top_vector(), 2) == Failure(2)
    triv = make_realization(1, 1, (0,))
    for x in (E, FF):
        assert nilpotence_index(triv, el.loop((1, 0), x), triv.top_vector(), 5) == 1


def test_heisenberg_table_action():
    psi = HeisenbergFunctional(1, "table", direct_table={("h", 2, 1): F(5)})
    assert heisenberg_act(psi, ("h", 2, 1), 3) == (F(5), 5)
    assert psi(("k1", 0)) == 0


def test_psi_triple_values():
    lam = DominantWeight((1,), F(1, 2), F(2))
    phi = ExpPolynomial.from_terms([(1, 1, 2)])
    psi = psi_from_triple([lam], [3], phi, mu=0)
    assert psi(("k0", 2)) == 18
    assert psi(("d0", 0)) == F(1, 2)
    assert psi(("k1", 0)) == 0
    for m in (1, -2, 3):
        assert psi(("d0", m)) == phi.eval(m) / (m * m)
    mod = HeisenbergModule(psi)
    out = mod.act(el.skew((0, 2)), ModuleVector.build("Heisenberg", {0: F(1)}))
    assert out.as_dict() == {2: -2 * phi.eval(2) / 4}


def test_psi_rejects_bad_weights():
    with pytest.raises(ValueError):
        psi_from_triple([DominantWeight((2,), 0, 1)], [1], ExpPolynomial())
    with pytest.raises(ValueError):
        psi_from_triple([DominantWeight((0,), 0, 0)], [1], ExpPolynomial())
    with pytest.raises(ValueError):
        psi_from_triple([DominantWeight((1,), 0, 1)], [1], ExpPolynomial.from_terms([(1, 0, 2)]))


def test_support_gcd_examples():
    lam = DominantWeight((1,), 0, 1)
    assert support_gcd(psi_from_triple([lam], [1], ExpPolynomial()))[0] == 1
    table = {("h", n, 1): F(1) for n in (2, -2, 4, -4)}
    psi2 = HeisenbergFunctional(1, "table", direct_table=table)
    assert support_gcd(psi2)[0] == 2
    psi0 = HeisenbergFunctional(1, "table", direct_table={("k0", 0): F(1)})
    assert support_gcd(psi0)[0] == 0


def test_decompose_components():
    lam = DominantWeight((1,), 0, 1)
    comps = heisenberg_decompose(psi_from_triple([lam], [1], ExpPolynomial()), 1)
    assert len(comps) == 1 and len(comps[0].reached) == 49
    table = {("h", n, 1): F(1) for n in (2, -2, 4, -4)}
    comps = heisenberg_decompose(HeisenbergFunctional(1, "table", direct_table=table), 2)
    assert [c.residue for c in comps] == [0, 1]
    assert all(n % 2 == 0 for n in comps[0].reached) and all(n % 2 for n in comps[1].reached)
    assert len(heisenberg_decompose(HeisenbergFunctional(1), 0)) == 1


class NaturalSl2:
    """``sl_2`` acting on its natural module, ignoring loop exponents."""

    def __init__(self):
        self.U = sl2_module(2)

    def act_terms(self, x, w):
        out = {}
        for sym, a in x.items():
            if sym[0] != 0:
                continue
            for k, c in w.items():
                for k2, v in self.U.act(sym[1], {k: F(1)}).items():
                    out[k2] = out.get(k2, 0) + a * c * v
        return {k: c for k, c in out.items() if c}


def test_loop_module_examples():
    inner = NaturalSl2()
    mod = LoopModule(inner)
    assert mod.act(el.d(1), ModuleVector.build("Loop", {(5, 0): F(1)})).as_dict() == {(5, 0): F(5)}
    assert loop_act(inner, el.loop((0, 2), E), 3, 1).as_dict() == {(5, 0): F(1)}
    assert loop_act(inner, el.loop((0, 0), H), 0, 0).as_dict() == {(0, 0): F(1)}
    with pytest.raises(ValueError):
        loop_act(inner, el.loop((0, 1), E) + el.loop((0, 2), E), 0, 0)


def test_twist_identity_and_composition():
    base = make_realization(1, 2, (1,))
    I = ((1, 0), (0, 1))
    A, B = ((0, 1), (1, 0)), ((1, 1), (0, 1))
    w = base.top_vector()
    xs = [el.loop((1, 2), FF), el.skew((1, -1)), el.d(0) + el.d(1) * 2, el.loop((0, 1), H)]
    for x in xs:
        assert twist(base, I).act(x, w) == base.act(x, w)
        assert twist(twist(base, A), B).act(x, w).as_dict() == twist(base, mat_mul2(A, B)).act(x, w).as_dict()
    with pytest.raises(ValueError):
        twist(base, ((2, 0), (0, 1)))


def test_spec_json():
    spec = spec_from_json({"variant": "Realization", "lambda": [2], "U": 2, "gamma": ["1/2", 0]})
    assert spec.gamma == (F(1, 2), 0)
    w = vector_from_json({"terms": [[0, 0, 1, 0, "2"]]}, spec)
    assert w.as_dict() == {(0, 0, 1, 0): F(2)}
    with pytest.raises(ValueError):
        vector_from_json({"terms": [[0, 0, "1"]]}, spec)
    with pytest.raises(ValueError):
        spec_from_json({"variant": "Nope"})
    g = spec_from_json({"variant": "GMod", "lambda": ["1/3"], "lambda_prime": [1]})
    assert g.lam == (F(1, 3),)
    h = spec_from_json({"variant": "Heisenberg", "psi": {"variant": "table", "table": [["h", 2, 1, "5"]]}})
    assert h.psi(("h", 2, 1)) == 5
