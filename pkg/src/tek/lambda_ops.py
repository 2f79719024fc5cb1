"""Truncated exponential series of commuting operator families.

For a family ``X_1, X_2, ...`` the series ``sum_b L_b z^b = exp(-sum_k X_k z^k / k)``
is expanded as ``L_b = sum_s ((-1)^s / s!) F_s(b)`` with
``F_s(b) = sum_k (X_k / k) F_{s-1}(b - k)`` and ``F_0(0) = Id``, which is the
sum over ordered compositions of ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .linalg import SingularSystem, axpy, frac, solve
from .modules import ModuleVector, Vec
from .simple_lie import coroot
from .toroidal import AlgebraConfig, AlgebraElement, Terms, k_m

MAX_B = 12

Operator = Callable[[Vec], Vec]


def _lincomb(pairs) -> Vec:
    out: Vec = {}
    for c, v in pairs:
        axpy(out, v, c)
    return out


@dataclass(eq=False)
class CommutingFamily:
    """Operators ``X_k`` for ``k >= 1``; ``members(k)`` returns the ``k``-th one."""

    members: Callable[[int], Operator]
    pairwise_commute_checked: bool = False
    _cache: Dict[int, Operator] = field(default_factory=dict, repr=False)

    def __call__(self, k: int) -> Operator:
        op = self._cache.get(k)
        if op is None:
            op = self.members(k)
            self._cache[k] = op
        return op

    def check_commute(self, ks: Sequence[int], probe: Sequence[Vec]) -> bool:
        for i in ks:
            for j in ks:
                if i < j:
                    for v in probe:
                        if self(i)(self(j)(v)) != self(j)(self(i)(v)):
                            return False
        self.pairwise_commute_checked = True
        return True


def family_from_elements(spec, element_of_k: Callable[[int], AlgebraElement]) -> CommutingFamily:
    def member(k: int) -> Operator:
        terms = element_of_k(k).terms
        return lambda v: spec.act_terms(terms, v)

    return CommutingFamily(member)


@dataclass(eq=False)
class OperatorSeries:
    """``L_0 .. L_B`` evaluated on demand."""

    family: CommutingFamily
    B: int

    def __post_init__(self):
        if not 0 <= self.B <= MAX_B:
            raise ValueError(f"truncation must lie in [0, {MAX_B}]")

    def strata(self, v: Vec) -> Dict[Tuple[int, int], Vec]:
        """``F_s(b) . v`` for ``0 <= s <= b <= B``."""
        F: Dict[Tuple[int, int], Vec] = {(0, 0): dict(v)}
        for s in range(1, self.B + 1):
            for b in range(s, self.B + 1):
                acc: Vec = {}
                for k in range(1, b - s + 2):
                    prev = F.get((s - 1, b - k))
                    if prev:
                        axpy(acc, self.family(k)(prev), Fraction(1, k))
                F[(s, b)] = acc
        return F

    def apply_all(self, v: Vec) -> List[Vec]:
        F = self.strata(v)
        return [
            _lincomb((Fraction((-1) ** s, factorial(s)), F[(s, b)]) for s in range(b + 1) if (s, b) in F)
            for b in range(self.B + 1)
        ]

    def apply(self, b: int, v: Vec) -> Vec:
        if b > self.B:
            raise ValueError("b exceeds the truncation")
        return self.apply_all(v)[b]


def exp_series(family: CommutingFamily, B: int, probe: Optional[Sequence[Vec]] = None) -> OperatorSeries:
    if probe is not None and not family.check_commute(range(1, B + 1), probe):
        raise ValueError("family members do not commute on the probe set")
    return OperatorSeries(family, B)


def recursive_series(family: CommutingFamily, B: int, v: Vec) -> List[Vec]:
    """Independent expansion via ``b L_b = -sum_k X_k L_{b-k}``."""
    out = [dict(v)]
    for b in range(1, B + 1):
        acc: Vec = {}
        for k in range(1, b + 1):
            if out[b - k]:
                axpy(acc, family(k)(out[b - k]), Fraction(-1, b))
        out.append(acc)
    return out


# -- the families of the affine sl2 subalgebras -------------------------------------


def _ratio(cfg: AlgebraConfig, alpha) -> Fraction:
    return Fraction(2) / cfg.base.root_pairing(alpha, alpha)


def loop_coroot(cfg: AlgebraConfig, alpha, e) -> AlgebraElement:
    return AlgebraElement.loop_vec(e, coroot(cfg.base, alpha))


def lambda_alpha_m_n(cfg: AlgebraConfig, spec, alpha, m, n: int, B: int) -> OperatorSeries:
    """Series of ``X_k = t^{km} (x) alpha^vee + (2n/<alpha,alpha>) k_{m,k}``."""
    m = tuple(m)
    if m == (0, 0):
        raise ValueError("m must be nonzero")
    c = _ratio(cfg, alpha) * n

    def element(k: int) -> AlgebraElement:
        return loop_coroot(cfg, alpha, (k * m[0], k * m[1])) + AlgebraElement.kclass(k_m(m, k).scaled(c))

    return OperatorSeries(family_from_elements(spec, element), B)


@dataclass(eq=False)
class SDecomposition:
    """``L_{1,b}``, ``L_{2,b}(s)`` and ``L_b(s) = sum L_{1,b1} L_{2,b2}(s)``."""

    cfg: AlgebraConfig
    spec: object
    alpha: tuple
    m: tuple
    B: int

    def __post_init__(self):
        m = self.m
        self.loop_family = family_from_elements(
            self.spec, lambda k: loop_coroot(self.cfg, self.alpha, (k * m[0], k * m[1]))
        )
        self.k_family = family_from_elements(self.spec, lambda k: AlgebraElement.kclass(k_m(m, k)))
        self.lambda1 = OperatorSeries(self.loop_family, self.B)
        self.k_series = OperatorSeries(self.k_family, self.B)

    def lambda2(self, v: Vec) -> Dict[Tuple[int, int], Vec]:
        """``L_{2,b}(s) . v`` keyed by ``(s, b)``; zero strata are omitted."""
        F = self.k_series.strata(v)
        return {key: {k: c * Fraction((-1) ** key[0], factorial(key[0])) for k, c in val.items()}
                for key, val in F.items() if val}

    def stratum(self, v: Vec) -> Dict[Tuple[int, int], Vec]:
        """``L_b(s) . v`` keyed by ``(s, b)`` for ``s <= b <= B``."""
        out: Dict[Tuple[int, int], Vec] = {}
        l2 = self.lambda2(v)
        for (s, b2), w in l2.items():
            ones = self.lambda1.apply_all(w)
            for b1 in range(self.B - b2 + 1):
                if ones[b1]:
                    acc = out.setdefault((s, b1 + b2), {})
                    axpy(acc, ones[b1])
        return {k: v for k, v in out.items() if v}

    def combined(self, v: Vec, n: int) -> List[Vec]:
        """``sum_s (2n/<alpha,alpha>)^s L_b(s) . v`` for ``b = 0..B``."""
        c = _ratio(self.cfg, self.alpha) * n
        strata = self.stratum(v)
        out = [dict() for _ in range(self.B + 1)]
        for (s, b), w in strata.items():
            axpy(out[b], w, c ** s)
        return out

    def top_stratum_direct(self, v: Vec, b: int) -> Vec:
        """``((-1)^b / b!) k_m^b . v`` by repeated application."""
        w = dict(v)
        op = self.k_family(1)
        for _ in range(b):
            w = op(w)
        return {k: c * Fraction((-1) ** b, factorial(b)) for k, c in w.items() if c}


def lambda_s_decomposition(cfg, spec, alpha, m, B) -> SDecomposition:
    m = tuple(m)
    if m == (0, 0):
        raise ValueError("m must be nonzero")
    return SDecomposition(cfg, spec, tuple(alpha), m, B)


def check_factorization(cfg, spec, alpha, m, B, ns: Sequence[int], probe: Sequence[Vec]) -> List[str]:
    """Operator identity ``L_b^{n} = sum_s c^s L_b(s)`` and the top-stratum formula."""
    dec = lambda_s_decomposition(cfg, spec, alpha, m, B)
    bad = []
    for v in probe:
        strata = dec.stratum(v)
        for b in range(B + 1):
            if strata.get((b, b), {}) != dec.top_stratum_direct(v, b):
                bad.append(f"top stratum b={b} on {sorted(v)}")
        for n in ns:
            direct = lambda_alpha_m_n(cfg, spec, alpha, m, n, B).apply_all(v)
            if direct != dec.combined(v, n):
                bad.append(f"n={n} on {sorted(v)}")
    return bad


def vandermonde_extract(values: Sequence, ratio) -> List[Fraction]:
    """Solve ``sum_s (ratio * n)^s X_s = values[n]`` for ``n = 0..b`` (with ``0^0 = 1``)."""
    ratio = frac(ratio)
    b = len(values) - 1
    if b > 0 and not ratio:
        raise SingularSystem("ratio must be nonzero")
    matrix = [[(ratio * n) ** s for s in range(b + 1)] for n in range(b + 1)]
    return solve(matrix, [frac(y) for y in values])


def vandermonde_forward(xs: Sequence, ratio) -> List[Fraction]:
    ratio = frac(ratio)
    b = len(xs) - 1
    return [sum(((ratio * n) ** s * frac(x) for s, x in enumerate(xs)), Fraction(0)) for n in range(b + 1)]


def vandermonde_extract_vectors(values: Sequence[Vec], ratio) -> List[Vec]:
    """Componentwise :func:`vandermonde_extract` for vector-valued data."""
    keys = sorted({k for v in values for k in v})
    cols = {k: vandermonde_extract([v.get(k, 0) for v in values], ratio) for k in keys}
    return [{k: cols[k][s] for k in keys if cols[k][s]} for s in range(len(values))]


# -- integrability ------------------------------------------------------------------


@dataclass
class IntegrabilityReport:
    nbar: int
    vanishing: Dict[str, Dict[int, bool]]
    product: bool

    @property
    def ok(self) -> bool:
        return self.product and all(all(d.values()) for d in self.vanishing.values())

    def to_json(self) -> dict:
        return {
            "nbar": self.nbar,
            "i": {d: {str(b): ("pass" if ok else "fail") for b, ok in sorted(v.items())}
                  for d, v in self.vanishing.items()},
            "ii": "pass" if self.product else "fail",
        }


class PreconditionFailed(ValueError):
    pass


def check_lemma_4_1(cfg, spec, alpha, m, n: int, v: ModuleVector, cap: int, window: int = 4) -> IntegrabilityReport:
    """``L_b v = 0`` for ``nbar < b <= cap`` in both directions and ``L_nbar L_-nbar v = v``."""
    from .simple_lie import sl2_triple

    m = tuple(m)
    vec = v.as_dict()
    xp, hv, _ = sl2_triple(cfg.base, alpha)
    for j in range(-window, window + 1):
        e = AlgebraElement.loop((j * m[0], j * m[1]), xp)
        if spec.act_terms(e.terms, vec):
            raise PreconditionFailed(f"t^({j}m) x_alpha^+ does not kill v")
    hvec = spec.act_terms(AlgebraElement.loop_vec((0, 0), hv).terms, vec)
    keys = set(vec) | set(hvec)
    ratios = {hvec.get(k, 0) / vec[k] for k in vec}
    if len(ratios) != 1 or any(k not in vec for k in keys):
        raise PreconditionFailed("v is not an alpha^vee eigenvector")
    nbar = ratios.pop()
    if nbar.denominator != 1 or nbar < 0:
        raise PreconditionFailed("alpha^vee eigenvalue is not a non-negative integer")
    nbar = int(nbar)
    top = max(cap, nbar)
    plus = lambda_alpha_m_n(cfg, spec, alpha, m, n, top)
    minus = lambda_alpha_m_n(cfg, spec, alpha, (-m[0], -m[1]), n, top)
    vp, vm = plus.apply_all(vec), minus.apply_all(vec)
    vanishing = {
        "+": {b: not vp[b] for b in range(nbar + 1, cap + 1)},
        "-": {b: not vm[b] for b in range(nbar + 1, cap + 1)},
    }
    product = plus.apply_all(vm[nbar])[nbar] == vec
    return IntegrabilityReport(nbar, vanishing, product)


check_integrability = check_lemma_4_1


# -- a commutative test module with nonzero K action --------------------------------


@dataclass(eq=False)
class ScalarKModule:
    """One-dimensional module where ``t^{km} (x) h`` acts by ``p[k] * w(h)`` and ``k_{m,k}`` by ``q[k]``.

    ``w`` is the functional on the Cartan with ``w(alpha^vee) = 1``; ``k0``
    and ``k1`` at exponent zero act by ``c0`` and ``c1``.  Only the span of
    these elements acts, which is commutative, so the family operators of
    the Lambda series commute automatically.
    """

    cfg: AlgebraConfig
    alpha: tuple
    m: tuple
    p: Dict[int, Fraction]
    q: Dict[int, Fraction]
    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    tag = "ScalarK"
    domain = "commutative"

    def __post_init__(self):
        hv = coroot(self.cfg.base, self.alpha)
        norm = sum(c * c for c in hv.values())
        self._w = {i: c / norm for i, c in hv.items()}
        self._k_scale: Dict[tuple, Tuple[int, Fraction]] = {}
        for k in self.q:
            (sym, coef), = AlgebraElement.kclass(k_m(self.m, k)).terms.items()
            self._k_scale[sym] = (k, coef)

    def _value(self, sym) -> Fraction:
        from .toroidal import KSYM, LOOP

        if sym[0] == LOOP:
            e = (sym[2], sym[3])
            for k, pk in self.p.items():
                if e == (k * self.m[0], k * self.m[1]):
                    return frac(pk) * self._w.get(sym[1], 0)
            return Fraction(0)
        if sym[0] == KSYM:
            if (sym[2], sym[3]) == (0, 0):
                return self.c0 if sym[1] == 0 else self.c1
            hit = self._k_scale.get(sym)
            if hit:
                k, coef = hit
                return frac(self.q[k]) / coef
        return Fraction(0)

    def act_terms(self, x: Terms, w: Vec) -> Vec:
        scalar = sum((c * self._value(s) for s, c in x.items()), Fraction(0))
        return {k: scalar * v for k, v in w.items() if scalar * v}

    def basis(self, box: int = 0):
        return [()]
