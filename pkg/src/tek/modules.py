"""Concrete modules for the toroidal algebra and its subalgebras.

Module vectors are sparse maps from basis keys to rationals.  Key shapes:

* ``TypeI``, ``GMod``: ``(n0, n1, u)`` for ``t^n (x) u``
* ``Realization``: ``(n0, n1, u, v)`` for ``t^n (x) u (x) v``
* ``HeisenbergModule``: the integer power ``m`` of ``t_1^m``
* ``LoopModule``: ``(n, inner_key)`` for ``t_1^n (x) w``

Every module exposes ``act_terms(x_terms, w_terms)``; algebra symbols outside
the module's domain raise :class:`OutsideDomain`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exp_poly import ExpPolynomial
from .linalg import axpy, fmt, frac
from .simple_lie import DominantWeight, FiniteModule, SimpleAlgebra, build_type_a, irreducible_module, sl2_module
from .toroidal import (
    DER, KSYM, LOOP, SKEW, AlgebraElement, GElement, Terms, chi_terms, det2, mat_det, mat_mul2, _as_mat,
)

Key = tuple
Vec = Dict[Key, Fraction]


class OutsideDomain(ValueError):
    """The algebra element has a component the module does not act on."""


@dataclass(frozen=True)
class ModuleVector:
    module: str
    terms: Tuple[Tuple[Key, Fraction], ...]

    @classmethod
    def build(cls, module: str, terms: Dict[Key, Fraction]) -> "ModuleVector":
        return cls(module, tuple(sorted((k, frac(c)) for k, c in terms.items() if c)))

    def as_dict(self) -> Vec:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self) -> dict:
        return {"module": self.module, "terms": [list(_flat(k)) + [fmt(c)] for k, c in self.terms]}


def _flat(key) -> tuple:
    if isinstance(key, tuple):
        out = ()
        for part in key:
            out += _flat(part)
        return out
    return (key,)


def _sl2_matrix_action(U: FiniteModule, a, b, c, u: int) -> Vec:
    """``(a h + b e + c f) . u_u`` on the sl2-module ``U``."""
    out: Vec = {}
    for idx, coef in ((1, a), (0, b), (2, c)):
        if coef:
            axpy(out, U.action[idx][u], coef)
    return out


def d_matrix(m) -> Tuple[int, int, int]:
    """Coefficients ``(a, b, c)`` of ``a h + b e + c f`` for the d_m matrix."""
    return -m[0] * m[1], m[0] * m[0], -m[1] * m[1]


def _as_pair(g) -> Tuple[Fraction, Fraction]:
    g = tuple(g)
    if len(g) != 2:
        raise ValueError("expected a pair")
    return frac(g[0]), frac(g[1])


class _TorusModule:
    """Shared d_0, d_1, d_m action on ``R (x) U (x) (extra)``."""

    U: FiniteModule
    gamma: Tuple[Fraction, Fraction]
    gamma_p: Tuple[Fraction, Fraction]
    tag = "torus"

    def _torus(self, sym, key: Key, c: Fraction, out: Vec) -> bool:
        n0, n1, u = key[0], key[1], key[2]
        rest = key[3:]
        if sym[0] == DER:
            i = sym[1]
            v = (n0, n1)[i] + self.gamma_p[i]
            if v:
                axpy(out, {key: c * v})
            return True
        if sym[0] == SKEW:
            m = (sym[1], sym[2])
            new = (n0 + m[0], n1 + m[1])
            a, b, cc = d_matrix(m)
            shift = m[0] * (self.gamma[1] + n1) - m[1] * (self.gamma[0] + n0)
            img = _sl2_matrix_action(self.U, a, b, cc, u)
            if shift:
                axpy(img, {u: shift})
            for u2, v in img.items():
                axpy(out, {(new[0], new[1], u2) + rest: c * v})
            return True
        return False

    def act_terms(self, x: Terms, w: Vec) -> Vec:
        out: Vec = {}
        for sym, a in x.items():
            for key, b in w.items():
                self._act_symbol(sym, key, a * b, out)
        return out

    def act(self, x: AlgebraElement, w: ModuleVector) -> ModuleVector:
        return ModuleVector.build(self.tag, self.act_terms(x.terms, w.as_dict()))

    def internal_labels(self) -> List[tuple]:
        return [(u,) for u in range(self.U.dimension)]

    def basis(self, box: int) -> List[Key]:
        r = range(-box, box + 1)
        return [(a, b) + lab for a in r for b in r for lab in self.internal_labels()]


@dataclass(eq=False)
class TypeI(_TorusModule):
    """``T_{U, lambda, gamma, gamma'}`` over ``g~^0 = (R (x) h) + K + S``."""

    base: SimpleAlgebra
    U: FiniteModule
    lam: DominantWeight
    gamma: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    gamma_p: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    tag = "TypeI"
    domain = "g0"

    def __post_init__(self):
        self.gamma, self.gamma_p = _as_pair(self.gamma), _as_pair(self.gamma_p)
        if len(self.lam.coords) != self.base.rank:
            raise ValueError("lambda has the wrong rank")
        if not any(self.lam.coords):
            raise ValueError("lambda must be a nonzero dominant weight")
        if self.U.algebra.rank != 1:
            raise ValueError("U must be an sl2-module")
        self._cartan_pos = {idx: i for i, idx in enumerate(self.base.cartan_indices)}

    def _h_value(self, idx: int, m) -> Fraction:
        pos = self._cartan_pos.get(idx)
        if pos is None:
            raise OutsideDomain("loop element outside R (x) h")
        return Fraction(self.lam.coords[pos])

    def _act_symbol(self, sym, key, c, out):
        if sym[0] == LOOP:
            v = self._h_value(sym[1], (sym[2], sym[3]))
            if v:
                axpy(out, {(key[0] + sym[2], key[1] + sym[3]) + key[2:]: c * v})
        elif sym[0] == KSYM:
            return
        else:
            self._torus(sym, key, c, out)

    def weight(self, key) -> tuple:
        return (self.lam.coords, key[0] + self.gamma_p[0], key[1] + self.gamma_p[1])


@dataclass(eq=False)
class GMod(TypeI):
    """``T_{U, lambda, lambda', gamma, gamma'}`` over ``G = (R (x) h) x| S~``.

    ``lam`` and ``lam_p`` are arbitrary functionals on ``h`` given by their
    values on ``h_1..h_l``.
    """

    lam: Tuple[Fraction, ...] = ()
    lam_p: Tuple[Fraction, ...] = ()
    tag = "GMod"
    domain = "G"

    def __post_init__(self):
        self.gamma, self.gamma_p = _as_pair(self.gamma), _as_pair(self.gamma_p)
        self.lam = tuple(frac(c) for c in self.lam)
        self.lam_p = tuple(frac(c) for c in (self.lam_p or [0] * self.base.rank))
        if len(self.lam) != self.base.rank or len(self.lam_p) != self.base.rank:
            raise ValueError("lambda has the wrong rank")
        if self.U.algebra.rank != 1:
            raise ValueError("U must be an sl2-module")
        self._cartan_pos = {idx: i for i, idx in enumerate(self.base.cartan_indices)}

    def _h_value(self, idx, m):
        pos = self._cartan_pos.get(idx)
        if pos is None:
            raise OutsideDomain("loop element outside R (x) h")
        v = self.lam[pos]
        if m == (0, 0):
            v += self.lam_p[pos]
        return v

    def _act_symbol(self, sym, key, c, out):
        if sym[0] == KSYM:
            raise OutsideDomain("K is not part of G")
        super()._act_symbol(sym, key, c, out)

    def act_g(self, x: GElement, w: ModuleVector) -> ModuleVector:
        return self.act(g_to_element(x), w)

    def weight(self, key) -> tuple:
        return (self.lam, key[0] + self.gamma_p[0], key[1] + self.gamma_p[1])


def g_to_element(x: GElement) -> AlgebraElement:
    terms: Terms = {}
    for (m, idx), c in x.h:
        terms[(LOOP, idx, m[0], m[1])] = c
    if x.s.d0:
        terms[(DER, 0)] = x.s.d0
    if x.s.d1:
        terms[(DER, 1)] = x.s.d1
    for m, c in x.s.dm:
        terms[(SKEW, m[0], m[1])] = c
    return AlgebraElement._raw(terms)


@dataclass(eq=False)
class Realization(_TorusModule):
    """``R (x) U (x) V(lambda)`` with the full algebra acting."""

    base: SimpleAlgebra
    U: FiniteModule
    lam: DominantWeight
    gamma: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    gamma_p: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    V: Optional[FiniteModule] = None
    tag = "Realization"
    domain = "full"

    def __post_init__(self):
        self.gamma, self.gamma_p = _as_pair(self.gamma), _as_pair(self.gamma_p)
        if len(self.lam.coords) != self.base.rank:
            raise ValueError("lambda has the wrong rank")
        if self.U.algebra.rank != 1:
            raise ValueError("U must be an sl2-module")
        if self.V is None:
            self.V = irreducible_module(self.base, self.lam)

    def _act_symbol(self, sym, key, c, out):
        if sym[0] == LOOP:
            new = (key[0] + sym[2], key[1] + sym[3], key[2])
            for v2, val in self.V.action[sym[1]][key[3]].items():
                axpy(out, {new + (v2,): c * val})
        elif sym[0] == KSYM:
            return
        else:
            self._torus(sym, key, c, out)

    def internal_labels(self):
        return [(u, v) for u in range(self.U.dimension) for v in range(self.V.dimension)]

    def top_vector(self, u: int = 0) -> ModuleVector:
        return ModuleVector.build(self.tag, {(0, 0, u, self.V.highest_index): Fraction(1)})

    def weight(self, key) -> tuple:
        return (self.V.weight_of_basis[key[3]], key[0] + self.gamma_p[0], key[1] + self.gamma_p[1])


def make_type_i(rank, U_dim, lam, gamma=(0, 0), gamma_p=(0, 0)) -> TypeI:
    return TypeI(build_type_a(rank), sl2_module(U_dim), DominantWeight(lam), gamma, gamma_p)


def make_gmod(rank, U_dim, lam, lam_p=None, gamma=(0, 0), gamma_p=(0, 0)) -> GMod:
    return GMod(build_type_a(rank), sl2_module(U_dim), lam=tuple(lam), lam_p=tuple(lam_p or ()),
                gamma=gamma, gamma_p=gamma_p)


def make_realization(rank, U_dim, lam, gamma=(0, 0), gamma_p=(0, 0)) -> Realization:
    return Realization(build_type_a(rank), sl2_module(U_dim), DominantWeight(lam), gamma, gamma_p)


def act_type_i(spec: TypeI, x: AlgebraElement, w: ModuleVector) -> ModuleVector:
    return spec.act(x, w)


def act_g(spec: GMod, x: Union[GElement, AlgebraElement], w: ModuleVector) -> ModuleVector:
    if isinstance(x, GElement):
        x = g_to_element(x)
    return spec.act(x, w)


def act_realization(spec: Realization, x: AlgebraElement, w: ModuleVector) -> ModuleVector:
    return spec.act(x, w)


# -- weights and integrability ------------------------------------------------------


def weight_of(spec, w: ModuleVector) -> tuple:
    weights = {spec.weight(k) for k, _ in w.terms}
    if len(weights) != 1:
        raise ValueError("vector is not homogeneous")
    return weights.pop()


def weight_table(spec, box: int) -> List[Tuple[tuple, int]]:
    """``[(weight, dimension)]`` over basis vectors with ``|n_i| <= box``, sorted."""
    counts: Dict[tuple, int] = {}
    for key in spec.basis(box):
        wt = spec.weight(key)
        counts[wt] = counts.get(wt, 0) + 1
    return sorted(counts.items())


@dataclass(frozen=True)
class Failure:
    bound: int


def nilpotence_index(spec, x: AlgebraElement, w: ModuleVector, bound: int):
    """Least ``k <= bound`` with ``x^k . w = 0``; :class:`Failure` otherwise."""
    cur = w.as_dict()
    if not cur:
        return 0
    for k in range(1, bound + 1):
        cur = spec.act_terms(x.terms, cur)
        if not cur:
            return k
    return Failure(bound)


# -- twists -----------------------------------------------------------------------


@dataclass(eq=False)
class TwistedModule:
    """``W_A``: the inner module with ``x`` acting as ``chi_A(x)``."""

    inner: object
    A: tuple

    def __post_init__(self):
        self.A = _as_mat(self.A)
        if abs(mat_det(self.A)) != 1:
            raise ValueError("twist matrix is not unimodular")
        self.tag = getattr(self.inner, "tag", "module")
        self.domain = getattr(self.inner, "domain", "full")

    def act_terms(self, x: Terms, w: Vec) -> Vec:
        return self.inner.act_terms(chi_terms(self.A, x), w)

    def act(self, x: AlgebraElement, w: ModuleVector) -> ModuleVector:
        return ModuleVector.build(self.tag, self.act_terms(x.terms, w.as_dict()))

    def basis(self, box):
        return self.inner.basis(box)

    def internal_labels(self):
        return self.inner.internal_labels()


def twist(spec, A) -> TwistedModule:
    return TwistedModule(spec, A)


# -- Heisenberg ----------------------------------------------------------------------

HSym = tuple  # ("h", n, i) | ("k0", n) | ("d0", n) | ("k1", 0)


def hsym_degree(h: HSym) -> int:
    return h[1]


@dataclass(eq=False)
class HeisenbergFunctional:
    """A linear functional on the Heisenberg algebra, evaluated on basis symbols.

    ``kind`` selects the formula: ``"triple"`` for ``psi_{lambda,a,phi}``,
    ``"lambda_a"`` for ``psi_{lambda,a}``, ``"chi"`` for ``psi_chi``,
    ``"table"`` for an explicit table, ``"sum"`` for a sum of ``parts``.
    ``direct_table`` overrides any formula value.
    """

    rank: int
    kind: str = "table"
    lambda_list: Tuple[DominantWeight, ...] = ()
    a_list: Tuple[Fraction, ...] = ()
    phi: ExpPolynomial = ExpPolynomial()
    mu: Fraction = Fraction(0)
    chi: ExpPolynomial = ExpPolynomial()
    direct_table: Dict[HSym, Fraction] = field(default_factory=dict)
    parts: Tuple["HeisenbergFunctional", ...] = ()

    def __call__(self, h: HSym) -> Fraction:
        return self.evaluate(h)

    def evaluate(self, h: HSym) -> Fraction:
        if h in self.direct_table:
            return frac(self.direct_table[h])
        kind, n = h[0], h[1]
        if kind == "k1":
            return Fraction(0)
        if self.kind == "sum":
            return sum((p.evaluate(h) for p in self.parts), Fraction(0))
        if self.kind == "table":
            return Fraction(0)
        if self.kind == "chi":
            if kind == "d0" and n:
                return -self.chi.eval(n) / (n * n)
            return Fraction(0)
        lams, a = self.lambda_list, self.a_list
        if kind == "h":
            return sum((Fraction(l.coords[h[2] - 1]) * ai ** n for l, ai in zip(lams, a)), Fraction(0))
        if kind == "k0":
            return sum((l.k0_value * ai ** n for l, ai in zip(lams, a)), Fraction(0))
        if kind == "d0":
            if n == 0:
                return sum((l.d0_value for l in lams), Fraction(0))
            if self.kind == "triple":
                return self.phi.eval(n) / (n * n)
            return sum(
                ((l.d0_value + self.mu * l.k0_value) * ai ** n for l, ai in zip(lams, a)), Fraction(0)
            )
        raise ValueError(f"unknown Heisenberg symbol {h!r}")

    def __add__(self, other: "HeisenbergFunctional") -> "HeisenbergFunctional":
        return HeisenbergFunctional(self.rank, "sum", parts=(self, other))

    def symbols_of_degree(self, n: int) -> List[HSym]:
        out = [("h", n, i) for i in range(1, self.rank + 1)] + [("k0", n), ("d0", n)]
        if n == 0:
            out.append(("k1", 0))
        return out

    def nonzero_at(self, n: int) -> bool:
        return any(self.evaluate(h) for h in self.symbols_of_degree(n))


def _check_affine_weight(lam: DominantWeight) -> None:
    level = lam.k0_value
    if level.denominator != 1 or level - sum(lam.coords) < 0:
        raise ValueError("lambda is not dominant integral for the affine algebra")
    if lam.is_zero():
        raise ValueError("each lambda_i must be nonzero")


def psi_from_triple(lams: Sequence[DominantWeight], a_list: Sequence, phi: ExpPolynomial, mu=0,
                    variant: str = "triple") -> HeisenbergFunctional:
    """``psi_{lambda,a,phi}`` (``variant="triple"``) or ``psi_{lambda,a}`` (``"lambda_a"``)."""
    lams = tuple(lams)
    a = tuple(frac(x) for x in a_list)
    if not lams or len(lams) != len(a):
        raise ValueError("lambda and a must have the same positive length")
    rank = len(lams[0].coords)
    for lam in lams:
        if len(lam.coords) != rank:
            raise ValueError("lambdas have different ranks")
        _check_affine_weight(lam)
    if any(x == 0 for x in a):
        raise ValueError("a_i must be nonzero")
    if len(set(a)) != len(a):
        raise ValueError("a_i must be distinct")
    if variant == "triple" and phi.eval(0):
        raise ValueError("phi(0) must vanish")
    if variant not in ("triple", "lambda_a"):
        raise ValueError(f"unknown variant {variant!r}")
    return HeisenbergFunctional(rank, variant, lams, a, phi, frac(mu))


def psi_lambda_a(lams, a_list, mu=0) -> HeisenbergFunctional:
    return psi_from_triple(lams, a_list, ExpPolynomial(), mu, variant="lambda_a")


def psi_chi(rank: int, chi: ExpPolynomial) -> HeisenbergFunctional:
    if chi.eval(0):
        raise ValueError("chi(0) must vanish")
    return HeisenbergFunctional(rank, "chi", chi=chi)


def element_to_hsym(sym, rank: int) -> Tuple[HSym, Fraction]:
    """The Heisenberg symbol (with scale) matching an algebra basis symbol."""
    kind = sym[0]
    if kind == LOOP and sym[2] == 0:
        alg = build_type_a(rank)
        if sym[1] in alg.cartan_indices:
            return ("h", sym[3], alg.cartan_indices.index(sym[1]) + 1), Fraction(1)
    if kind == KSYM and sym[2] == 0:
        if sym[1] == 0:
            return ("k0", sym[3]), Fraction(1)
        if sym[3] == 0:
            return ("k1", 0), Fraction(1)
    if kind == DER and sym[1] == 0:
        return ("d0", 0), Fraction(1)
    if kind == SKEW and sym[1] == 0:
        # d_(0,n) = -n t_1^n d_0
        return ("d0", sym[2]), Fraction(-sym[2])
    raise OutsideDomain(f"{sym!r} is not in the Heisenberg algebra")


@dataclass(eq=False)
class HeisenbergModule:
    """``L(psi)`` on ``C[t_1, t_1^{-1}]`` with ``d_1`` shifted by ``b``."""

    psi: HeisenbergFunctional
    b: Fraction = Fraction(0)
    tag = "Heisenberg"
    domain = "heisenberg"

    def act_symbol(self, h: HSym, m: int) -> Tuple[Fraction, int]:
        return heisenberg_act(self.psi, h, m)

    def act_terms(self, x: Terms, w: Vec) -> Vec:
        out: Vec = {}
        for sym, a in x.items():
            if sym == (DER, 1):
                for m, c in w.items():
                    v = m + self.b
                    if v:
                        axpy(out, {m: a * c * v})
                continue
            h, s = element_to_hsym(sym, self.psi.rank)
            for m, c in w.items():
                val, new = heisenberg_act(self.psi, h, m)
                if val:
                    axpy(out, {new: a * c * s * val})
        return out

    def act(self, x: AlgebraElement, w: ModuleVector) -> ModuleVector:
        return ModuleVector.build(self.tag, self.act_terms(x.terms, w.as_dict()))

    def basis(self, box: int) -> List[int]:
        return list(range(-box, box + 1))


def heisenberg_act(psi: HeisenbergFunctional, h: HSym, m: int) -> Tuple[Fraction, int]:
    """``h . t_1^m = psi(h) t_1^{m+n}`` for ``h`` of degree ``n``."""
    return psi.evaluate(h), m + hsym_degree(h)


def default_probe_range(psi: HeisenbergFunctional) -> int:
    terms = len(psi.phi.terms) + len(psi.chi.terms) + len(psi.lambda_list) + len(psi.direct_table)
    return max(24, 2 * terms)


def support_gcd(psi: HeisenbergFunctional, probe_range: Optional[int] = None) -> Tuple[int, int]:
    """``(r, N)``: gcd of nonzero degrees of ``psi`` with ``|n| <= N``."""
    n_max = default_probe_range(psi) if probe_range is None else probe_range
    r = 0
    for n in range(1, n_max + 1):
        for s in (n, -n):
            if psi.nonzero_at(s):
                r = gcd(r, n)
    return r, n_max


@dataclass(frozen=True)
class Component:
    residue: int
    modulus: int
    reached: Tuple[int, ...]


class DecompositionError(AssertionError):
    pass


def heisenberg_decompose(psi: HeisenbergFunctional, r: int, probe_range: Optional[int] = None) -> List[Component]:
    """Cosets ``i + rZ`` with a reachability check from ``t_1^i`` inside the window."""
    n_max = default_probe_range(psi) if probe_range is None else probe_range
    if r == 0:
        return [Component(0, 0, (0,))]
    steps = [n for n in range(-n_max, n_max + 1) if n and psi.nonzero_at(n)]
    window = range(-n_max, n_max + 1)
    comps = []
    for i in range(r):
        seen = {i}
        frontier = [i]
        while frontier:
            nxt = []
            for p in frontier:
                for s in steps:
                    q = p + s
                    if -n_max <= q <= n_max and q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        expected = {n for n in window if (n - i) % r == 0}
        if seen != expected:
            raise DecompositionError(
                f"powers reachable from t_1^{i} differ from {i} + {r}Z inside |n| <= {n_max}"
            )
        comps.append(Component(i, r, tuple(sorted(seen))))
    return comps


# -- loop modules --------------------------------------------------------------------


def d1_degree(sym) -> int:
    if sym[0] in (LOOP, KSYM):
        return sym[3]
    if sym[0] == SKEW:
        return sym[2]
    return 0


@dataclass(eq=False)
class LoopModule:
    """``L(V) = C[t_1, t_1^{-1}] (x) V`` for a module ``V`` over the algebra without ``d_1``."""

    inner: object
    tag = "Loop"
    domain = "full"

    def act_terms(self, x: Terms, w: Vec) -> Vec:
        out: Vec = {}
        for sym, a in x.items():
            if sym == (DER, 1):
                for (n, k), c in w.items():
                    if n:
                        axpy(out, {(n, k): a * c * n})
                continue
            deg = d1_degree(sym)
            for (n, k), c in w.items():
                img = self.inner.act_terms({sym: a * c}, {k: Fraction(1)})
                for k2, v in img.items():
                    axpy(out, {(n + deg, k2): v})
        return out

    def act(self, x: AlgebraElement, w: ModuleVector) -> ModuleVector:
        return ModuleVector.build(self.tag, self.act_terms(x.terms, w.as_dict()))

    def basis(self, box: int, inner_box: int = 0) -> List[Key]:
        return [(n, k) for n in range(-box, box + 1) for k in self.inner.basis(inner_box)]


def loop_act(inner, x: AlgebraElement, n: int, v: Key) -> ModuleVector:
    """``x . (t_1^n (x) v)`` for ``x`` homogeneous in the ``d_1``-grading."""
    degrees = {d1_degree(s) for s in x.terms if s != (DER, 1)}
    if len(degrees) > 1 or ((DER, 1) in x.terms and degrees - {0}):
        raise ValueError("element is not homogeneous for the d_1 grading")
    return LoopModule(inner).act(x, ModuleVector.build("Loop", {(n, v): Fraction(1)}))


# -- JSON specs ------------------------------------------------------------------------


def spec_from_json(obj: dict):
    """Build a module from ``{"variant": ..., ...}``; see the README for fields."""
    if not isinstance(obj, dict) or "variant" not in obj:
        raise ValueError("module spec needs a 'variant'")
    variant = obj["variant"]
    rank = int(obj.get("rank", 1))
    gamma = [frac(c) for c in obj.get("gamma", [0, 0])]
    gamma_p = [frac(c) for c in obj.get("gamma_prime", [0, 0])]
    if variant == "TypeI":
        spec = make_type_i(rank, int(obj.get("U", 1)), obj["lambda"], gamma, gamma_p)
    elif variant == "GMod":
        spec = make_gmod(rank, int(obj.get("U", 1)), [frac(c) for c in obj["lambda"]],
                         [frac(c) for c in obj.get("lambda_prime", [0] * rank)], gamma, gamma_p)
    elif variant == "Realization":
        spec = make_realization(rank, int(obj.get("U", 1)), obj["lambda"], gamma, gamma_p)
    elif variant == "Heisenberg":
        spec = HeisenbergModule(functional_from_json(obj["psi"]), frac(obj.get("b", 0)))
    else:
        raise ValueError(f"unknown module variant {variant!r}")
    if obj.get("twist") is not None:
        spec = twist(spec, obj["twist"])
    return spec


def functional_from_json(obj: dict) -> HeisenbergFunctional:
    variant = obj.get("variant", "triple")
    rank = int(obj.get("rank", 1))
    if variant == "table":
        table = {}
        for entry in obj.get("table", []):
            kind, n = entry[0], int(entry[1])
            sym = ("h", n, int(entry[2])) if kind == "h" else (kind, n)
            table[sym] = frac(entry[-1])
        return HeisenbergFunctional(rank, "table", direct_table=table)
    lams = [
        DominantWeight(tuple(l["coords"]), frac(l.get("d0", 0)), frac(l.get("k0", 0)))
        for l in obj["lambda"]
    ]
    phi = ExpPolynomial.from_json(obj.get("phi", []))
    return psi_from_triple(lams, obj["a"], phi, frac(obj.get("mu", 0)), variant=variant)


def vector_from_json(obj: dict, spec) -> ModuleVector:
    if not isinstance(obj, dict) or "terms" not in obj:
        raise ValueError("module vector needs 'terms'")
    width = {"TypeI": 3, "GMod": 3, "Realization": 4, "Heisenberg": 1}.get(spec.tag)
    terms = {}
    for entry in obj["terms"]:
        *key, c = entry
        key = tuple(int(k) for k in key)
        if width is not None and len(key) != width:
            raise ValueError(f"key {key} has the wrong length for {spec.tag}")
        terms[key[0] if width == 1 else key] = frac(c)
    return ModuleVector.build(spec.tag, terms)
