"""Verification suites behind ``tek check``.

Each suite returns a :class:`SuiteReport` made of sections; a section names
the identity it checks, how many instances were checked and every violation
found (the listing is capped, the count is not).  Sweeps that shard across
worker processes merge their shards in task order, so reports do not
depend on scheduling.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exp_poly import (ExpPolynomial, char_recurrence, chi_from_phi, fit_exp_polynomial,
                       fit_from_values, phi_from_phi_prime, verify_recurrence)
from .lambda_ops import (PreconditionFailed, ScalarKModule, check_factorization, check_lemma_4_1,
                         lambda_alpha_m_n, lambda_s_decomposition, vandermonde_extract,
                         vandermonde_forward)
from .linalg import fmt, frac
from .modules import (Failure, GMod, HeisenbergFunctional, HeisenbergModule, ModuleVector,
                      Realization, TwistedModule, TypeI, heisenberg_decompose, make_gmod,
                      make_realization, make_type_i, nilpotence_index, psi_chi, psi_from_triple,
                      psi_lambda_a, support_gcd, twist, weight_table)
from .rng import Lcg
from .simple_lie import (DominantWeight, SimpleAlgebra, build_type_a, freudenthal_multiplicities,
                         root_to_weight, sl2_triple)
from .toroidal import (DER, KSYM, LOOP, SKEW, AlgebraConfig, AlgebraElement, GElement,
                       _apply, basis_bracket, basis_form, basis_symbols, bracket, bracket_terms,
                       central_charge_transform, chi_terms, check_sl2_hat, det2,
                       exact_form_terms, exponent, form_terms, g_algebra_bracket, k_m,
                       k_normalize, mat_mul2, pi_S, s_bracket, sl2_hat, symbol_name)

SUITES = ("jacobi", "invariance", "kwelldef", "module", "automorphism", "lambda", "heisenberg", "exppoly")
MAX_LISTED = 200
JACOBI_SHARDS = 16  # fixed, so the listed violations do not depend on the worker count


# -- reports ---------------------------------------------------------------------------


@dataclass
class Section:
    name: str
    identity: str
    params: Dict = field(default_factory=dict)
    checked: int = 0
    violations: List = field(default_factory=list)
    violation_count: int = 0
    stats: Dict = field(default_factory=dict)

    def fail(self, item) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_LISTED:
            self.violations.append(item)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "identity": self.identity,
            "params": self.params,
            "checked": self.checked,
            "passed": self.passed,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "stats": self.stats,
        }


@dataclass
class SuiteReport:
    suite: str
    sections: List[Section] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections)

    def section(self, name: str) -> Section:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "violation_count": sum(s.violation_count for s in self.sections),
            "sections": [s.to_json() for s in self.sections],
        }

    def to_text(self) -> str:
        lines = [f"{self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for s in self.sections:
            status = "ok" if s.passed else f"{s.violation_count} violation(s)"
            lines.append(f"  {s.name} [{s.identity}] checked={s.checked} {status}")
            for v in s.violations[:10]:
                lines.append(f"    - {v}")
            for k in sorted(s.stats):
                lines.append(f"    {k}: {s.stats[k]}")
        return "\n".join(lines) + "\n"


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("TEK_THREADS", "1")))
    except ValueError:
        return 1


def run_shards(fn: Callable, tasks: Sequence, threads: Optional[int] = None) -> List:
    """``[fn(*t) for t in tasks]``, possibly in worker processes; order is preserved."""
    threads = worker_count() if threads is None else threads
    if threads <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(threads, len(tasks))) as pool:
        return list(pool.map(fn, *zip(*tasks)))


def _cfg(rank: int, mu, base: Optional[SimpleAlgebra] = None) -> AlgebraConfig:
    return AlgebraConfig(base or build_type_a(rank), frac(mu))


def _name(sym) -> str:
    return symbol_name(sym)


def _terms_json(terms) -> Dict[str, str]:
    return {_name(s): fmt(c) for s, c in sorted(terms.items()) if c}


def _accumulate(acc: Dict, x, terms, cfg) -> None:
    for s, c in terms.items():
        for u, d in basis_bracket(cfg, x, s).items():
            acc[u] = acc.get(u, 0) + c * d


# -- jacobi ----------------------------------------------------------------------------


def _skew_pair(s, t) -> bool:
    return s[0] == SKEW and t[0] == SKEW and det2(s[1:], t[1:]) != 0


def _jacobi_shard(rank: int, mu, box: int, first: Sequence[int], base=None):
    cfg = _cfg(rank, mu, base)
    syms = basis_symbols(cfg, box)
    n = len(syms)
    checked = cocycle = 0
    bad = []
    bb = basis_bracket
    for i in first:
        x = syms[i]
        for j in range(i, n):
            y = syms[j]
            xy = bb(cfg, x, y)
            xy_skew = _skew_pair(x, y)
            for k in range(j, n):
                z = syms[k]
                acc: Dict = {}
                _accumulate(acc, x, bb(cfg, y, z), cfg)
                _accumulate(acc, y, bb(cfg, z, x), cfg)
                _accumulate(acc, z, xy, cfg)
                checked += 1
                if xy_skew or _skew_pair(x, z) or _skew_pair(y, z):
                    cocycle += 1
                if any(acc.values()):
                    bad.append(((i, j, k), [_name(x), _name(y), _name(z), _terms_json(acc)]))
    return checked, cocycle, bad


def _antisymmetry(cfg: AlgebraConfig, syms, section: Section) -> None:
    for x, y in combinations_with_replacement(syms, 2):
        a, b = basis_bracket(cfg, x, y), basis_bracket(cfg, y, x)
        section.checked += 1
        total = dict(a)
        for s, c in b.items():
            total[s] = total.get(s, 0) + c
        if any(total.values()):
            section.fail([_name(x), _name(y), _terms_json(total)])


def jacobi_suite(ranks=(1,), mus=(0, 1, Fraction(-3, 2)), box: int = 2, threads: Optional[int] = None,
                 base: Optional[SimpleAlgebra] = None) -> SuiteReport:
    """Exhaustive Jacobi identity over unordered basis triples plus antisymmetry of every pair.

    Together these cover every ordered triple: the Jacobiator is alternating
    once the bracket is antisymmetric.
    """
    report = SuiteReport("jacobi")
    for rank in ranks:
        for mu in mus:
            mu = frac(mu)
            cfg = _cfg(rank, mu, base)
            syms = basis_symbols(cfg, box)
            params = {"rank": rank, "mu": fmt(mu), "box": box, "basis_size": len(syms)}
            anti = Section(f"antisymmetry rank={rank} mu={fmt(mu)}", "bracket-antisymmetry", dict(params))
            _antisymmetry(cfg, syms, anti)
            shards = JACOBI_SHARDS
            tasks = [(rank, mu, box, list(range(s, len(syms), shards)), base) for s in range(shards)]
            sec = Section(f"jacobi rank={rank} mu={fmt(mu)}", "jacobi", params)
            found = []
            for checked, cocycle, bad in run_shards(_jacobi_shard, tasks, threads):
                sec.checked += checked
                sec.stats["skew_cocycle_triples"] = sec.stats.get("skew_cocycle_triples", 0) + cocycle
                found += bad
            for _, item in sorted(found, key=lambda t: t[0]):
                sec.fail(item)
            report.sections += [anti, sec]
    return report


# -- invariance ------------------------------------------------------------------------


def invariance_suite(rank: int = 1, mu=0, box: int = 2, samples: int = 10000, seed: int = 1,
                     base: Optional[SimpleAlgebra] = None) -> SuiteReport:
    """``<[x,y],z> = <x,[y,z]>`` and symmetry on seeded triples.

    Half the triples draw ``z`` uniformly; the other half draw ``z`` among
    symbols whose exponent cancels that of ``x`` and ``y`` when one exists,
    so that most of those triples have nonzero pairings.
    """
    cfg = _cfg(rank, mu, base)
    syms = basis_symbols(cfg, box)
    by_exp: Dict = {}
    for s in syms:
        by_exp.setdefault(exponent(s), []).append(s)
    rng = Lcg(seed)
    sec = Section("invariance", "form-invariance",
                  {"rank": rank, "mu": fmt(frac(mu)), "box": box, "samples": samples, "seed": seed})
    sym_sec = Section("symmetry", "form-symmetry", dict(sec.params))
    nonzero = 0
    for t in range(samples):
        x, y = rng.choice(syms), rng.choice(syms)
        z = None
        if t % 2:
            ex, ey = exponent(x), exponent(y)
            pool = by_exp.get((-ex[0] - ey[0], -ex[1] - ey[1]))
            if pool:
                z = rng.choice(pool)
        if z is None:
            z = rng.choice(syms)
        lhs = form_terms(cfg, bracket_terms(cfg, {x: 1}, {y: 1}), {z: 1})
        rhs = form_terms(cfg, {x: 1}, bracket_terms(cfg, {y: 1}, {z: 1}))
        sec.checked += 1
        nonzero += bool(lhs)
        if lhs != rhs:
            sec.fail([_name(x), _name(y), _name(z), fmt(lhs), fmt(rhs)])
        sym_sec.checked += 1
        if basis_form(cfg, x, y) != basis_form(cfg, y, x):
            sym_sec.fail([_name(x), _name(y)])
    sec.stats["nonzero_pairings"] = nonzero
    return SuiteReport("invariance", [sec, sym_sec])


# -- K well-definedness, the d-k bracket and the affine sl2 copies ------------------------


def kwelldef_suite(rank: int = 1, mu=0, box: int = 3, base: Optional[SimpleAlgebra] = None) -> SuiteReport:
    cfg = _cfg(rank, mu, base)
    syms = basis_symbols(cfg, box)
    r = range(-box, box + 1)
    params = {"rank": rank, "mu": fmt(cfg.mu), "box": box}
    exact = Section("exact forms", "exact-forms-vanish", dict(params))
    for m in ((a, b) for a in r for b in r):
        g = exact_form_terms(m)
        exact.checked += 1
        if k_normalize({m: (m[0], m[1])}):
            exact.fail(["normal form", list(m)])
        for x in syms:
            exact.checked += 1
            br = bracket_terms(cfg, {x: 1}, g)
            if any(br.values()):
                exact.fail(["bracket", list(m), _name(x), _terms_json(br)])
            f = form_terms(cfg, {x: 1}, g)
            if f:
                exact.fail(["form", list(m), _name(x), fmt(f)])

    dk = Section("d-k bracket", "skew-derivation-on-k", dict(params))
    for m in ((a, b) for a in r for b in r):
        for n in ((a, b) for a in r for b in r if (a, b) != (0, 0)):
            dk.checked += 1
            want = k_m((m[0] + n[0], m[1] + n[1])).scaled(det2(m, n))
            if m == (0, 0):
                got = AlgebraElement().k_part
            else:
                got = bracket(cfg, AlgebraElement.skew(m), AlgebraElement.kclass(k_m(n)))
                if got.loop_part or got.skew_part or any(got.degree_ders):
                    dk.fail([list(m), list(n), "non-central terms"])
                got = got.k_part
                if (m[0] + n[0], m[1] + n[1]) == (0, 0):
                    dropped = [e for e in got.entries if e[0] == (0, 0)]
                    # only a multiple of m_0 k_0 + m_1 k_1 may be dropped
                    if any(a * m[1] != b * m[0] for _, a, b in dropped):
                        dk.fail([list(m), list(n), "degree-zero part not along m_0 k_0 + m_1 k_1"])
                    dk.stats["degree_zero_central_terms"] = dk.stats.get("degree_zero_central_terms", 0) + len(dropped)
                    got = type(got)(tuple(e for e in got.entries if e[0] != (0, 0)))
            if got != want:
                dk.fail([list(m), list(n), str(got.to_terms()), str(want.to_terms())])

    hat = Section("affine sl2 copies", "affine-sl2-relations", dict(params))
    for alpha in cfg.base.positive_roots:
        for m in ((1, 0), (0, 1), (1, 1), (2, -1), (1, 2)):
            for n in range(0, 4):
                try:
                    gens = sl2_hat(cfg, alpha, m, n, range(-2, 3))
                except ValueError:
                    continue
                hat.checked += 1
                for msg in check_sl2_hat(cfg, gens):
                    hat.fail([list(alpha), list(m), n, msg])
    return SuiteReport("kwelldef", [exact, dk, hat])


# -- module axioms -----------------------------------------------------------------------


def module_symbols(spec, cfg: AlgebraConfig, box: int) -> List[tuple]:
    """Basis symbols of the acting algebra inside the box."""
    inner = spec.inner if isinstance(spec, TwistedModule) else spec
    syms = basis_symbols(cfg, box)
    if isinstance(inner, (TypeI, GMod)):
        cart = set(cfg.base.cartan_indices)
        syms = [s for s in syms if s[0] != LOOP or s[1] in cart]
        if isinstance(inner, GMod):
            syms = [s for s in syms if s[0] != KSYM]
    return syms


def _shift(spec, sym) -> Tuple[int, int]:
    e = exponent(sym)
    if isinstance(spec, TwistedModule):
        return _apply(spec.A, e)
    return e


def _drop_k(spec) -> bool:
    inner = spec.inner if isinstance(spec, TwistedModule) else spec
    return isinstance(inner, GMod)


class _Blocks:
    """Exact action blocks ``M_x(n)`` on the internal labels, over a square grid of ``n``."""

    def __init__(self, spec, radius: int):
        self.spec = spec
        self.radius = radius
        self.labels = spec.internal_labels()
        self.pos = {lab: i for i, lab in enumerate(self.labels)}
        self.side = 2 * radius + 1
        self.exact: Dict[tuple, List] = {}

    def index(self, n) -> int:
        return (n[0] + self.radius) * self.side + (n[1] + self.radius)

    def build(self, sym) -> None:
        if sym in self.exact:
            return
        d = len(self.labels)
        e = _shift(self.spec, sym)
        r = range(-self.radius, self.radius + 1)
        mats = []
        for n0 in r:
            for n1 in r:
                mat = {}
                for j, lab in enumerate(self.labels):
                    img = self.spec.act_terms({sym: Fraction(1)}, {(n0, n1) + lab: Fraction(1)})
                    for key, c in img.items():
                        if (key[0], key[1]) != (n0 + e[0], n1 + e[1]):
                            raise AssertionError(f"{_name(sym)} does not shift by {e}")
                        mat[(self.pos[key[2:]], j)] = c
                mats.append(mat)
        self.exact[sym] = mats
        assert d == len(self.labels)

    def integerize(self) -> int:
        den = 1
        for mats in self.exact.values():
            for mat in mats:
                for c in mat.values():
                    den = den * c.denominator // gcd(den, c.denominator)
        d = len(self.labels)
        self.scale = den
        self.ints = {}
        for sym, mats in self.exact.items():
            arr = np.zeros((len(mats), d, d), dtype=np.int64)
            for g, mat in enumerate(mats):
                for (i, j), c in mat.items():
                    arr[g, i, j] = int(c * den)
            self.ints[sym] = arr
        self.bound = max((int(np.abs(a).max()) for a in self.ints.values()), default=0)
        return den


def module_axiom_sweep(spec, cfg: AlgebraConfig, box: int = 2, vec_box: int = 2,
                       syms: Optional[List[tuple]] = None, label: str = "") -> Section:
    """``[x,y].w = x.(y.w) - y.(x.w)`` for all unordered symbol pairs and basis vectors.

    Blocks are computed exactly, scaled to integers by a common denominator
    and compared with integer matrix products over the whole ``n`` grid.
    """
    syms = module_symbols(spec, cfg, box) if syms is None else syms
    drop_k = _drop_k(spec)
    shifts = {s: _shift(spec, s) for s in syms}
    reach = max((max(abs(a), abs(b)) for a, b in shifts.values()), default=0)
    blocks = _Blocks(spec, vec_box + reach)
    pairs = []
    for i, x in enumerate(syms):
        for y in syms[i + 1:]:
            br = {s: c for s, c in basis_bracket(cfg, x, y).items() if c and not (drop_k and s[0] == KSYM)}
            pairs.append((x, y, br))
    for x in syms:
        blocks.build(x)
    for _, _, br in pairs:
        for s in br:
            blocks.build(s)
    D = blocks.integerize()
    d = len(blocks.labels)
    r = range(-vec_box, vec_box + 1)
    ns = [(a, b) for a in r for b in r]
    base_idx = np.array([blocks.index(n) for n in ns])
    sec = Section(f"module axiom {label}".strip(), "module-axiom",
                  {"module": label, "box": box, "vector_box": vec_box, "symbols": len(syms),
                   "internal_dim": d})
    for x, y, br in pairs:
        ex, ey = shifts[x], shifts[y]
        L = 1
        for c in br.values():
            L = L * c.denominator // gcd(L, c.denominator)
        coef_bound = sum(abs(int(c * L)) for c in br.values())
        if max(coef_bound * blocks.bound * D, L * d * blocks.bound ** 2 * 2) >= 2 ** 62:
            raise OverflowError("module axiom sweep would overflow int64")
        lhs = np.zeros((len(ns), d, d), dtype=np.int64)
        for s, c in br.items():
            es = _shift(spec, s)
            if max(abs(es[0]), abs(es[1])) > reach * 2:
                raise AssertionError("bracket symbol outside the block grid")
            lhs += int(c * L) * blocks.ints[s][base_idx]
        lhs *= D
        Mx, My = blocks.ints[x], blocks.ints[y]
        idx_x_after_y = np.array([blocks.index((n[0] + ey[0], n[1] + ey[1])) for n in ns])
        idx_y_after_x = np.array([blocks.index((n[0] + ex[0], n[1] + ex[1])) for n in ns])
        rhs = Mx[idx_x_after_y] @ My[base_idx] - My[idx_y_after_x] @ Mx[base_idx]
        rhs *= L
        sec.checked += len(ns) * d
        if not np.array_equal(lhs, rhs):
            diff = np.argwhere(lhs != rhs)
            for g, i, j in diff[:5]:
                sec.fail([label, _name(x), _name(y), list(ns[g]), list(blocks.labels[j])])
            sec.violation_count += max(0, len({(g, j) for g, _, j in diff}) - 5)
    sec.stats["denominator"] = D
    return sec


def module_axiom_direct(spec, cfg: AlgebraConfig, pairs, vectors, label: str = "") -> Section:
    """Plain exact check of the module axiom on explicit pairs and basis vectors."""
    drop_k = _drop_k(spec)
    sec = Section(f"module axiom direct {label}".strip(), "module-axiom", {"module": label})
    for x, y in pairs:
        br = {s: c for s, c in bracket_terms(cfg, x.terms, y.terms).items()
              if not (drop_k and s[0] == KSYM)}
        for key in vectors:
            w = {key: Fraction(1)}
            lhs = spec.act_terms(br, w)
            rhs = dict(spec.act_terms(x.terms, spec.act_terms(y.terms, w)))
            for k, c in spec.act_terms(y.terms, spec.act_terms(x.terms, w)).items():
                rhs[k] = rhs.get(k, 0) - c
            rhs = {k: c for k, c in rhs.items() if c}
            sec.checked += 1
            if lhs != rhs:
                sec.fail([label, repr(x), repr(y), repr(key)])
    return sec


def axiom_grid(U_dims=(1, 2, 3), lams=(1, 2), gammas=None) -> List[Tuple[str, object]]:
    """The TypeI / GMod / Realization parameter grid for ``sl_2``."""
    gammas = gammas or [(0, 0), (Fraction(1, 2), Fraction(-1, 3))]
    out = []
    for variant in ("TypeI", "GMod", "Realization"):
        for lam in lams:
            for U in U_dims:
                for g in gammas:
                    for gp in gammas:
                        label = (f"{variant} lam={lam}w U={U} gamma=({fmt(frac(g[0]))},{fmt(frac(g[1]))}) "
                                 f"gamma'=({fmt(frac(gp[0]))},{fmt(frac(gp[1]))})")
                        out.append((label, (variant, lam, U, tuple(g), tuple(gp))))
    return out


def _make_grid_spec(variant, lam, U, g, gp):
    if variant == "TypeI":
        return make_type_i(1, U, (lam,), g, gp)
    if variant == "GMod":
        return make_gmod(1, U, (lam,), (Fraction(lam, 2),), g, gp)
    return make_realization(1, U, (lam,), g, gp)


def _grid_task(label, params, mu, box, vec_box):
    spec = _make_grid_spec(*params)
    return module_axiom_sweep(spec, _cfg(1, mu), box, vec_box, label=label)


def _weights_section() -> Section:
    sec = Section("weight tables", "weight-multiplicities")
    fixtures = [(1, (2,), 2), (2, (1, 1), 1), (1, (1,), 3), (2, (1, 0), 2)]
    for rank, lam, U in fixtures:
        spec = make_realization(rank, U, lam)
        oracle = freudenthal_multiplicities(spec.base, DominantWeight(lam))
        table = weight_table(spec, 2)
        slots = 0
        for (beta, n0, n1), dim in table:
            slots += 1
            sec.checked += 1
            want = U * oracle.get(tuple(beta), 0)
            if dim != want:
                sec.fail([rank, list(lam), U, [list(beta), fmt(n0), fmt(n1)], dim, want])
        occupied = {tuple(b) for (b, _, _), _ in table}
        if occupied != {w for w, m in oracle.items() if m}:
            sec.fail([rank, list(lam), U, "occupied weights differ from the oracle"])
        zero = tuple(0 for _ in lam)
        key = f"rank={rank} lam={list(lam)} U={U}"
        sec.stats[key] = {"slots": slots, "zero_weight_dim": U * oracle.get(zero, 0)}
    return sec


def _nilpotence_section(box: int = 2) -> Section:
    """Local nilpotence of ``t^m (x) x_alpha^{+-}`` on realization basis vectors.

    The bound is the longest ``alpha``-string, ``max_beta beta(alpha^vee) + 1``
    over the weights of ``V``; for ``sl_2`` it is ``lambda(alpha^vee) + 1``.
    Every index must stay below the string length through the vector's own
    weight, with equality for ``sl_2`` (one-dimensional weight spaces).
    """
    sec = Section("nilpotence", "local-nilpotence")
    fixtures = [(1, (1,), 2), (1, (2,), 1), (1, (3,), 1), (1, (4,), 1), (2, (1, 1), 1)]
    for rank, lam, U in fixtures:
        spec = make_realization(rank, U, lam)
        alg = spec.base
        V = spec.V
        weights = set(V.weight_of_basis)
        r = range(-box, box + 1)
        for alpha in alg.positive_roots:
            xp, _, xm = sl2_triple(alg, alpha)
            aw = root_to_weight(alg, alpha)
            bound = max(sum(c * b for c, b in zip(alpha, beta)) for beta in weights) + 1
            lam_bound = DominantWeight(lam).pairing(alpha) + 1
            if rank == 1 and bound != lam_bound:
                sec.fail([rank, list(lam), list(alpha), "string bound", bound, lam_bound])
            sec.stats[f"rank={rank} lam={list(lam)} alpha={list(alpha)}"] = {
                "string_bound": bound, "lambda_bound": lam_bound}
            for sign, x in ((1, xp), (-1, xm)):
                for vi in range(V.dimension):
                    beta = V.weight_of_basis[vi]
                    k = 0
                    while tuple(b + sign * (k + 1) * a for b, a in zip(beta, aw)) in weights:
                        k += 1
                    string_cap = k + 1
                    for m in ((a, b) for a in r for b in r):
                        el = AlgebraElement.loop(m, x)
                        w = ModuleVector.build(spec.tag, {(0, 0, 0, vi): Fraction(1)})
                        got = nilpotence_index(spec, el, w, bound)
                        sec.checked += 1
                        if isinstance(got, Failure) or got > string_cap:
                            sec.fail([rank, list(lam), list(alpha), sign, vi, list(m), str(got), string_cap])
                        elif rank == 1 and got != string_cap:
                            sec.fail([rank, list(lam), list(alpha), sign, vi, list(m), got, string_cap])
                        if vi == V.highest_index and sign == -1 and got != lam_bound:
                            sec.fail([rank, list(lam), list(alpha), "top vector", list(m), str(got), lam_bound])
    return sec


def _k_trivial_section() -> Section:
    sec = Section("K acts trivially", "realization-k-zero")
    spec = make_realization(1, 2, (2,), (Fraction(1, 2), 0), (0, Fraction(-1, 3)))
    cfg = _cfg(1, 0)
    for s in basis_symbols(cfg, 2):
        if s[0] != KSYM:
            continue
        for key in spec.basis(1):
            sec.checked += 1
            if spec.act_terms({s: Fraction(1)}, {key: Fraction(1)}):
                sec.fail([_name(s), list(key)])
    return sec


def _twisted_sections(mu, box: int) -> List[Section]:
    out = []
    A = ((0, 1), (1, 0))
    B = ((1, 1), (0, 1))
    cfg = _cfg(1, mu)
    for label, spec in (("Realization lam=2w U=2 twisted by [[0,1],[1,0]]", twist(make_realization(1, 2, (2,)), A)),
                        ("TypeI lam=1w U=2 twisted by [[1,1],[0,1]]", twist(make_type_i(1, 2, (1,)), B))):
        out.append(module_axiom_sweep(spec, cfg, 1, 1, label=label))
    return out


def _direct_crosscheck(mu) -> Section:
    """Samples of the vectorized sweep redone with plain exact arithmetic."""
    cfg = _cfg(1, mu)
    spec = make_realization(1, 2, (2,), (Fraction(1, 2), Fraction(-1, 3)), (Fraction(1, 2), 0))
    syms = basis_symbols(cfg, 1)
    rng = Lcg(7)
    pairs = [(AlgebraElement({rng.choice(syms): 1}), AlgebraElement({rng.choice(syms): 1})) for _ in range(60)]
    return module_axiom_direct(spec, cfg, pairs, spec.basis(1), "Realization lam=2w U=2 (direct)")


def module_suite(mu=0, box: int = 2, vec_box: int = 2, spec=None, spec_label: str = "custom",
                 threads: Optional[int] = None, rank: int = 1) -> SuiteReport:
    report = SuiteReport("module")
    if spec is not None:
        report.sections.append(module_axiom_sweep(spec, _cfg(rank, mu), box, vec_box, label=spec_label))
        return report
    tasks = [(label, params, frac(mu), box, vec_box) for label, params in axiom_grid()]
    grid = run_shards(_grid_task, tasks, threads)
    summary = Section("module axiom grid", "module-axiom", {"specs": len(grid), "box": box, "vector_box": vec_box})
    for sec in grid:
        summary.checked += sec.checked
        for v in sec.violations:
            summary.fail(v)
        summary.violation_count += sec.violation_count - len(sec.violations)
    summary.stats["specs_passed"] = sum(s.passed for s in grid)
    report.sections.append(summary)
    report.sections += _twisted_sections(mu, box)
    report.sections.append(_direct_crosscheck(mu))
    report.sections += [_weights_section(), _nilpotence_section(box), _k_trivial_section()]
    return report


# -- coordinate changes ------------------------------------------------------------------

GENERATORS = (((0, 1), (1, 0)), ((1, 1), (0, 1)), ((-1, 0), (0, -1)))


def twist_matrices() -> List[tuple]:
    """The generators and all their products of length two."""
    mats = set(GENERATORS)
    for a in GENERATORS:
        for b in GENERATORS:
            mats.add(mat_mul2(a, b))
    return sorted(mats)


def _mat_json(A) -> List[List[int]]:
    return [list(A[0]), list(A[1])]


def _automorphism_task(mu, A, box):
    cfg = _cfg(1, mu)
    syms = basis_symbols(cfg, box)
    sec = Section(f"chi_A hom mu={fmt(frac(mu))} A={_mat_json(A)}", "twist-homomorphism",
                  {"mu": fmt(frac(mu)), "A": _mat_json(A), "box": box})
    images = {s: chi_terms(A, {s: Fraction(1)}) for s in syms}
    for x, y in combinations_with_replacement(syms, 2):
        left = AlgebraElement(chi_terms(A, basis_bracket(cfg, x, y)))
        right = AlgebraElement(bracket_terms(cfg, images[x], images[y]))
        sec.checked += 1
        if left != right:
            sec.fail([_mat_json(A), _name(x), _name(y)])
    return sec


def automorphism_suite(mus=(0, 1), box: int = 2, threads: Optional[int] = None) -> SuiteReport:
    report = SuiteReport("automorphism")
    mats = twist_matrices()
    tasks = [(frac(mu), A, box) for mu in mus for A in mats]
    homs = run_shards(_automorphism_task, tasks, threads)
    report.sections += homs

    cfg = _cfg(1, 0)
    syms = basis_symbols(cfg, box)
    comp = Section("chi_A composition", "twist-composition", {"box": box, "matrices": len(mats)})
    for A in mats:
        for B in mats:
            AB = mat_mul2(A, B)
            for s in syms:
                comp.checked += 1
                lhs = AlgebraElement(chi_terms(A, chi_terms(B, {s: Fraction(1)})))
                rhs = AlgebraElement(chi_terms(AB, {s: Fraction(1)}))
                if lhs != rhs:
                    comp.fail([_mat_json(A), _mat_json(B), _name(s)])
    report.sections.append(comp)

    charge = Section("central charge", "twist-central-charge")
    for c in ((2, 3), (1, 0)):
        inner = ScalarKModule(cfg, (1,), (1, 0), {}, {}, Fraction(c[0]), Fraction(c[1]))
        for A in mats:
            tw = TwistedModule(inner, A)
            got = tuple(tw.act_terms({(KSYM, j, 0, 0): Fraction(1)}, {(): Fraction(1)}).get((), Fraction(0))
                        for j in (0, 1))
            want = central_charge_transform(c, A)
            charge.checked += 1
            if got != tuple(want):
                charge.fail([list(c), _mat_json(A), [fmt(v) for v in got], [fmt(v) for v in want]])
    report.sections.append(charge)

    for mu in mus:
        cfgm = _cfg(1, mu)
        quo = Section(f"quotient maps mu={fmt(frac(mu))}", "quotient-homomorphism", {"mu": fmt(frac(mu))})
        cart = set(cfgm.base.cartan_indices)
        gsyms = [s for s in syms if s[0] != KSYM and (s[0] != LOOP or s[1] in cart)]
        for x, y in combinations_with_replacement(syms, 2):
            br = AlgebraElement(basis_bracket(cfgm, x, y))
            ex, ey = AlgebraElement({x: 1}), AlgebraElement({y: 1})
            quo.checked += 1
            if pi_S(cfgm, br) != s_bracket(pi_S(cfgm, ex), pi_S(cfgm, ey)):
                quo.fail(["pi_S", _name(x), _name(y)])
        for x, y in combinations_with_replacement(gsyms, 2):
            br = AlgebraElement(basis_bracket(cfgm, x, y))
            gx, gy = GElement.from_element(cfgm, AlgebraElement({x: 1})), GElement.from_element(cfgm, AlgebraElement({y: 1}))
            quo.checked += 1
            if g_algebra_bracket(cfgm, gx, gy) != GElement.from_element(cfgm, br):
                quo.fail(["G", _name(x), _name(y)])
        report.sections.append(quo)
    return report


# -- Lambda operators --------------------------------------------------------------------


def _lambda_binomial_sections() -> List[Section]:
    binom = Section("binomial action on top vectors", "lambda-binomial")
    integ = Section("vanishing and product", "lambda-integrability")
    for k in range(1, 5):
        cfg = _cfg(1, 0)
        spec = make_realization(1, 1, (k,))
        v = spec.top_vector()
        (top_key,) = v.as_dict()
        alpha = cfg.base.positive_roots[0]
        for m in ((1, 0), (0, 1), (1, 1), (-1, 2)):
            for n in (0, 1):
                series = lambda_alpha_m_n(cfg, spec, alpha, m, n, k + 3).apply_all(v.as_dict())
                for b in range(k + 4):
                    want = {}
                    if b <= k:
                        want = {(b * m[0], b * m[1]) + top_key[2:]: Fraction((-1) ** b * comb(k, b))}
                    binom.checked += 1
                    if series[b] != want:
                        binom.fail([k, list(m), n, b])
                rep = check_lemma_4_1(cfg, spec, alpha, m, n, v, cap=k + 3)
                integ.checked += 1
                if not rep.ok or rep.nbar != k:
                    integ.fail([k, list(m), n, rep.to_json()])
    return [binom, integ]


def _scalar_k_fixture(cfg, alpha, m) -> ScalarKModule:
    p = {k: Fraction(k + 1, 2) for k in range(1, 6)}
    q = {k: Fraction(3 - k, k + 1) + 1 for k in range(1, 6)}
    return ScalarKModule(cfg, tuple(alpha), tuple(m), p, q, Fraction(2), Fraction(-1))


def _eq_sections(B: int = 5, ns=range(0, 6)) -> List[Section]:
    scalar = Section("factorization on the K-scalar module", "lambda-factorization", {"B": B})
    typei = Section("factorization on TypeI", "lambda-factorization", {"B": B})
    for rank in (1, 2):
        cfg = _cfg(rank, 0)
        alpha = cfg.base.positive_roots[-1]
        for m in ((1, 0), (0, 1), (2, 1), (1, -2)):
            mod = _scalar_k_fixture(cfg, alpha, m)
            probe = [{(): Fraction(1)}]
            scalar.checked += 1
            for msg in check_factorization(cfg, mod, alpha, m, B, list(ns), probe):
                scalar.fail([rank, list(m), msg])
            strata = lambda_s_decomposition(cfg, mod, alpha, m, B).stratum(probe[0])
            if not any(s >= 1 and v for (s, _), v in strata.items()):
                scalar.fail([rank, list(m), "all strata with s >= 1 vanish"])
            scalar.stats[f"rank={rank} m={list(m)} nonzero_strata"] = len(strata)

            lam = (1,) if rank == 1 else (1, 1)
            spec = make_type_i(rank, 2, lam, (Fraction(1, 2), 0), (0, Fraction(-1, 3)))
            probe = [{key: Fraction(1)} for key in spec.basis(1)]
            typei.checked += len(probe)
            for msg in check_factorization(cfg, spec, alpha, m, B, list(ns), probe):
                typei.fail([rank, list(m), msg])
            dec = lambda_s_decomposition(cfg, spec, alpha, m, B)
            for w in probe:
                for (s, b), v in dec.stratum(w).items():
                    if s >= 1 and v:
                        typei.fail([rank, list(m), f"stratum s={s} b={b} nonzero"])
    return [scalar, typei]


def _vandermonde_section(seed: int, trials: int = 200) -> Section:
    sec = Section("vandermonde round trip", "vandermonde-solve", {"seed": seed, "trials": trials})
    rng = Lcg(seed)
    for _ in range(trials):
        b = rng.between(0, 5)
        ratio = rng.rational(nonzero=True)
        xs = [rng.rational(20, 7) for _ in range(b + 1)]
        sec.checked += 1
        if vandermonde_extract(vandermonde_forward(xs, ratio), ratio) != xs:
            sec.fail(["extract(forward)", [fmt(x) for x in xs], fmt(ratio)])
        if vandermonde_forward(vandermonde_extract(xs, ratio), ratio) != xs:
            sec.fail(["forward(extract)", [fmt(x) for x in xs], fmt(ratio)])
    return sec


def lambda_suite(seed: int = 1) -> SuiteReport:
    report = SuiteReport("lambda")
    report.sections += _lambda_binomial_sections()
    report.sections += _eq_sections()
    report.sections.append(_vandermonde_section(seed))
    return report


# -- Heisenberg ----------------------------------------------------------------------------


def heisenberg_fixtures() -> Dict[str, Tuple[HeisenbergFunctional, int]]:
    """Named functionals with their expected support gcd."""
    w = DominantWeight((1,), Fraction(0), Fraction(1))
    r0 = HeisenbergFunctional(1, "table", direct_table={("k0", 0): Fraction(2), ("h", 0, 1): Fraction(1)})
    r1 = psi_from_triple([w], [2], ExpPolynomial.from_terms([(1, 1, 3)]), mu=1)
    # a = (1, -1) and phi(m) = m^2 (1 + (-1)^m) kill every odd degree
    r2 = psi_from_triple([w, w], [1, -1], ExpPolynomial.from_terms([(1, 2, 1), (1, 2, -1)]), mu=0)
    r3 = HeisenbergFunctional(1, "table", direct_table={
        ("h", 3, 1): Fraction(1), ("h", -3, 1): Fraction(1), ("k0", 6): Fraction(2), ("d0", -6): Fraction(1)})
    return {"r0": (r0, 0), "r1": (r1, 1), "r2": (r2, 2), "r3": (r3, 3)}


def _heisenberg_axiom(psi, label: str) -> Section:
    mod = HeisenbergModule(psi, Fraction(1, 3))
    cfg = _cfg(psi.rank, 0)
    cart = cfg.base.cartan_indices
    els = [AlgebraElement.d(1), AlgebraElement.d(0), AlgebraElement.k((0, 0), 1)]
    for n in range(-4, 5):
        els += [AlgebraElement.loop((0, n), i) for i in cart]
        els.append(AlgebraElement.k((0, n), 0))
        if n:
            els.append(AlgebraElement.skew((0, n)))
    pairs = [(x, y) for i, x in enumerate(els) for y in els[i + 1:]]
    return module_axiom_direct(mod, cfg, pairs, range(-4, 5), label)


def heisenberg_suite(fixture: Optional[str] = None, psi: Optional[HeisenbergFunctional] = None,
                     expected_r: Optional[int] = None, probe_range: Optional[int] = None) -> SuiteReport:
    if psi is not None:
        cases = {"custom": (psi, expected_r)}
    else:
        cases = heisenberg_fixtures()
        if fixture is not None:
            if fixture not in cases:
                raise ValueError(f"unknown Heisenberg fixture {fixture!r}")
            cases = {fixture: cases[fixture]}
    report = SuiteReport("heisenberg")
    for name, (f, want) in cases.items():
        sec = Section(f"decomposition {name}", "support-gcd-decomposition", {"fixture": name})
        r, window = support_gcd(f, probe_range)
        comps = heisenberg_decompose(f, r, probe_range)
        sec.checked += 1
        sec.stats.update({"r": r, "probe_range": window, "components": len(comps),
                          "residues": [c.residue for c in comps]})
        if want is not None and r != want:
            sec.fail([name, "r", r, want])
        expected_components = r if r else 1
        if len(comps) != expected_components:
            sec.fail([name, "components", len(comps), expected_components])
        report.sections.append(sec)
        report.sections.append(_heisenberg_axiom(f, name))
    return report


# -- exp-polynomials -----------------------------------------------------------------------

BASES = [Fraction(b) for b in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 3), Fraction(3, 2),
                                                        Fraction(-2, 3)]


def random_exp_poly(rng: Lcg) -> ExpPolynomial:
    while True:
        terms = [(rng.rational(9, 5, nonzero=True), rng.between(0, 2), rng.choice(BASES))
                 for _ in range(rng.between(1, 4))]
        f = ExpPolynomial.from_terms(terms)
        if f:
            return f


def two_path_fixtures():
    w1 = DominantWeight((1,), Fraction(0), Fraction(1))
    w2 = DominantWeight((1,), Fraction(1, 2), Fraction(2))
    w3 = DominantWeight((0,), Fraction(0), Fraction(1))
    w4 = DominantWeight((2,), Fraction(1), Fraction(3))
    w5 = DominantWeight((1, 1), Fraction(0), Fraction(2))
    P = ExpPolynomial.from_terms
    return [
        ("one weight", [w1], [2], P([(1, 1, 3)]), 1),
        ("two weights", [w2, w3], [1, -1], P([(1, 2, 2), (-1, 1, 1)]), Fraction(-3, 2)),
        ("rank two", [w5], [3], P([]), 0),
        ("fractional base", [w4], [Fraction(1, 2)], P([(5, 2, Fraction(1, 2)), (1, 1, 1)]), 1),
        ("three weights", [w1, w2, w4], [1, 2, -3], P([(2, 1, -1), (1, 2, 3)]), Fraction(1, 2)),
    ]


def hsym_symbols(rank: int, degree: int) -> List[tuple]:
    return HeisenbergFunctional(rank).symbols_of_degree(degree)


def two_path_psi(lams, a, phi, mu, window: int = 20):
    """Rebuild ``psi`` from its values on ``d_(0,m)`` and ``t_1^m k_0`` only."""
    psi = psi_from_triple(lams, a, phi, mu)
    values = {}
    for m in range(-window, window + 1):
        # psi(d_(0,m)) = -m psi(t_1^m d_0)
        d_val = -m * psi(("d0", m)) if m else Fraction(0)
        values[m] = m * d_val + frac(mu) * m * m * psi(("k0", m))
    phi_prime = fit_exp_polynomial(values)
    phi2 = phi_from_phi_prime(phi_prime, lams, a, mu)
    chi = chi_from_phi(lams, a, mu, phi2)
    rank = len(lams[0].coords)
    return psi, psi_lambda_a(lams, a, mu) + psi_chi(rank, chi)


def exppoly_suite(seed: int = 1, count: int = 100) -> SuiteReport:
    rng = Lcg(seed)
    rec = Section("recurrences", "exp-poly-recurrence", {"seed": seed, "count": count})
    fit = Section("fit round trip", "exp-poly-fit", {"seed": seed, "count": count})
    window = range(-20, 21)
    for t in range(count):
        f = random_exp_poly(rng)
        p = char_recurrence(f)
        rec.checked += 1
        if not verify_recurrence(f, p, window):
            rec.fail([t, f.to_json()])
        values = {n: f.eval(n) for n in window}
        fit.checked += 1
        if fit_from_values(values, f.roots()) != f:
            fit.fail([t, "fixed roots", f.to_json()])
        if fit_exp_polynomial(values) != f:
            fit.fail([t, "minimal recurrence", f.to_json()])
    two = Section("two-path reconstruction", "psi-two-path")
    for name, lams, a, phi, mu in two_path_fixtures():
        psi, psi2 = two_path_psi(lams, a, phi, mu)
        rank = len(lams[0].coords)
        for n in range(-10, 11):
            for h in hsym_symbols(rank, n):
                two.checked += 1
                if psi(h) != psi2(h):
                    two.fail([name, list(h), fmt(psi(h)), fmt(psi2(h))])
    return SuiteReport("exppoly", [rec, fit, two])
