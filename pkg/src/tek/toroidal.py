"""The nullity-2 toroidal algebra ``g~(mu) = (R (x) g) + K + S`` over the rationals.

Elements are sparse maps from basis symbols to :class:`~fractions.Fraction`.
Symbols are tuples whose first entry is the kind, which also fixes the
canonical order ``(kind, g-index, m0, m1)``:

* ``(0, i, m0, m1)``  the loop element ``t^m (x) x_i``
* ``(1, j, m0, m1)``  ``t^m k_j``; stored only in K-normal form
* ``(2, j)``          the degree derivation ``d_j``
* ``(3, m0, m1)``     the skew derivation ``d_m`` (``m != 0``)

K-normal form: at ``m`` with ``m1 != 0`` only ``k_0`` survives, at ``m1 = 0 != m0``
only ``k_1``; at ``m = 0`` both are kept.  Brackets accept non-normal K
symbols as input, which is what the exact-form checks rely on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .linalg import axpy, fmt, frac
from .simple_lie import SimpleAlgebra, build_type_a, coroot, sl2_triple

LOOP, KSYM, DER, SKEW = 0, 1, 2, 3

Exp2 = Tuple[int, int]
Terms = Dict[tuple, Fraction]
ZERO = Fraction(0)


def det2(m, n) -> int:
    return m[0] * n[1] - n[0] * m[1]


def exponent(sym) -> Exp2:
    kind = sym[0]
    if kind in (LOOP, KSYM):
        return sym[2], sym[3]
    if kind == SKEW:
        return sym[1], sym[2]
    return 0, 0


# -- K ----------------------------------------------------------------------


def _k_add(out: Terms, m0: int, m1: int, a, b) -> None:
    """Add the raw class ``a t^m k_0 + b t^m k_1`` to ``out`` in normal form."""
    if m1:
        c = a - Fraction(b * m0, m1) if b else a
        if c:
            axpy(out, {(KSYM, 0, m0, m1): c})
    elif m0:
        if b:
            axpy(out, {(KSYM, 1, m0, 0): b})
    else:
        if a:
            axpy(out, {(KSYM, 0, 0, 0): a})
        if b:
            axpy(out, {(KSYM, 1, 0, 0): b})


@dataclass(frozen=True)
class KClass:
    """A class in K as ``{m: (a, b)}`` meaning ``sum a t^m k_0 + b t^m k_1``, normalized."""

    entries: Tuple[Tuple[Exp2, Fraction, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, terms: Terms) -> "KClass":
        acc: Dict[Exp2, List[Fraction]] = {}
        for sym, c in terms.items():
            if sym[0] != KSYM:
                continue
            pair = acc.setdefault((sym[2], sym[3]), [ZERO, ZERO])
            pair[sym[1]] += c
        return cls(tuple((m, a, b) for m, (a, b) in sorted(acc.items()) if a or b))

    def as_dict(self) -> Dict[Exp2, Tuple[Fraction, Fraction]]:
        return {m: (a, b) for m, a, b in self.entries}

    def to_terms(self) -> Terms:
        out: Terms = {}
        for (m0, m1), a, b in self.entries:
            _k_add(out, m0, m1, a, b)
        return out

    def __bool__(self) -> bool:
        return bool(self.entries)

    def scaled(self, c) -> "KClass":
        return k_normalize({m: (c * a, c * b) for m, a, b in self.entries})


def k_normalize(raw: Dict[Exp2, Tuple]) -> KClass:
    out: Terms = {}
    for (m0, m1), (a, b) in raw.items():
        _k_add(out, int(m0), int(m1), frac(a), frac(b))
    return KClass.from_terms(out)


def k_m(m: Exp2, k: int = 1) -> KClass:
    """``k_{m,k} = m'_0 t^{km} k_0 + m'_1 t^{km} k_1``."""
    m0, m1 = m
    if m1:
        prime = (Fraction(1, m1), ZERO)
    elif m0:
        prime = (ZERO, Fraction(-1, m0))
    else:
        return KClass()
    return k_normalize({(k * m0, k * m1): prime})


# -- elements ---------------------------------------------------------------


class AlgebraElement:
    """Finite rational combination of basis symbols (see module docstring)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Terms] = None):
        t: Terms = {}
        if terms:
            for sym, c in terms.items():
                if sym[0] == KSYM:
                    m0, m1 = sym[2], sym[3]
                    ab = (c, ZERO) if sym[1] == 0 else (ZERO, c)
                    _k_add(t, m0, m1, frac(ab[0]), frac(ab[1]))
                elif sym[0] == SKEW and sym[1] == 0 and sym[2] == 0:
                    raise ValueError("d_m with m = 0 is not a basis symbol")
                else:
                    axpy(t, {sym: frac(c)})
        self.terms = t

    @classmethod
    def _raw(cls, terms: Terms) -> "AlgebraElement":
        el = cls.__new__(cls)
        el.terms = terms
        return el

    # constructors
    @classmethod
    def loop(cls, m: Exp2, idx: int, c=1) -> "AlgebraElement":
        return cls({(LOOP, idx, m[0], m[1]): c})

    @classmethod
    def loop_vec(cls, m: Exp2, coords: Dict[int, Fraction], c=1) -> "AlgebraElement":
        return cls({(LOOP, i, m[0], m[1]): c * v for i, v in coords.items()})

    @classmethod
    def k(cls, m: Exp2, j: int, c=1) -> "AlgebraElement":
        return cls({(KSYM, j, m[0], m[1]): c})

    @classmethod
    def kclass(cls, kc: KClass) -> "AlgebraElement":
        return cls._raw(kc.to_terms())

    @classmethod
    def d(cls, j: int, c=1) -> "AlgebraElement":
        return cls({(DER, j): c})

    @classmethod
    def skew(cls, m: Exp2, c=1) -> "AlgebraElement":
        return cls({(SKEW, m[0], m[1]): c})

    # arithmetic
    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        t = dict(self.terms)
        axpy(t, other.terms)
        return AlgebraElement._raw(t)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        t = dict(self.terms)
        axpy(t, other.terms, -1)
        return AlgebraElement._raw(t)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._raw({s: -c for s, c in self.terms.items()})

    def __mul__(self, c) -> "AlgebraElement":
        c = frac(c)
        if not c:
            return AlgebraElement()
        return AlgebraElement._raw({s: c * v for s, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{fmt(c)}*{symbol_name(s)}" for s, c in sorted(self.terms.items()))

    # views
    @property
    def loop_part(self) -> Dict[Tuple[Exp2, int], Fraction]:
        return {((s[2], s[3]), s[1]): c for s, c in self.terms.items() if s[0] == LOOP}

    @property
    def k_part(self) -> KClass:
        return KClass.from_terms(self.terms)

    @property
    def degree_ders(self) -> Tuple[Fraction, Fraction]:
        return self.terms.get((DER, 0), ZERO), self.terms.get((DER, 1), ZERO)

    @property
    def skew_part(self) -> Dict[Exp2, Fraction]:
        return {(s[1], s[2]): c for s, c in self.terms.items() if s[0] == SKEW}

    def symbols(self) -> List[tuple]:
        return sorted(self.terms)


def symbol_name(sym) -> str:
    kind = sym[0]
    if kind == LOOP:
        return f"t^({sym[2]},{sym[3]})x{sym[1]}"
    if kind == KSYM:
        return f"t^({sym[2]},{sym[3]})k{sym[1]}"
    if kind == DER:
        return f"d{sym[1]}"
    return f"d({sym[1]},{sym[2]})"


@dataclass(frozen=True, eq=False)
class AlgebraConfig:
    base: SimpleAlgebra
    mu: Fraction = Fraction(0)
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", frac(self.mu))


def make_config(rank: int = 1, mu=0) -> AlgebraConfig:
    return AlgebraConfig(build_type_a(rank), frac(mu))


# -- bracket ----------------------------------------------------------------


def _k_sum_terms(out: Terms, m: Exp2, e: Exp2, c) -> None:
    """Add ``c * sum_a m_a t^e k_a`` (normalized)."""
    if c:
        _k_add(out, e[0], e[1], c * m[0], c * m[1])


def _bb_ordered(cfg: AlgebraConfig, s, t) -> Terms:
    """Bracket of basis symbols with ``kind(s) <= kind(t)``."""
    ks, kt = s[0], t[0]
    out: Terms = {}
    if ks == LOOP and kt == LOOP:
        m, n = (s[2], s[3]), (t[2], t[3])
        e = (m[0] + n[0], m[1] + n[1])
        for idx, c in cfg.base.structure[(s[1], t[1])].items():
            out[(LOOP, idx, e[0], e[1])] = c
        _k_sum_terms(out, m, e, cfg.base.form[s[1]][t[1]])
        return out
    if kt == KSYM and ks in (LOOP, KSYM):
        return out
    if ks == DER and kt == DER:
        return out
    if ks in (DER, SKEW):
        return _bb_der_left(cfg, s, t)
    # remaining pairs have a derivation on the right; flip sign
    return {sym: -c for sym, c in _bb_der_left(cfg, t, s).items()}


def _bb_der_left(cfg: AlgebraConfig, s, t) -> Terms:
    """``[s, t]`` where ``s`` is a degree or skew derivation."""
    out: Terms = {}
    n = exponent(t)
    kt = t[0]
    if s[0] == DER:
        i = s[1]
        if kt == DER:
            return out
        c = n[i]
        if c:
            if kt == KSYM:
                _k_add(out, n[0], n[1], c if t[1] == 0 else 0, c if t[1] == 1 else 0)
            else:
                out[t] = Fraction(c)
        return out
    m = (s[1], s[2])
    e = (m[0] + n[0], m[1] + n[1])
    if kt == DER:
        # [d_m, d_j] = -m_j d_m
        c = -m[t[1]]
        if c:
            out[s] = Fraction(c)
        return out
    dt = det2(m, n)
    if kt == LOOP:
        if dt:
            out[(LOOP, t[1], e[0], e[1])] = Fraction(dt)
        return out
    if kt == KSYM:
        j = t[1]
        if dt:
            _k_add(out, e[0], e[1], Fraction(dt) if j == 0 else ZERO, Fraction(dt) if j == 1 else ZERO)
        c = m[0] if j == 1 else -m[1]
        _k_sum_terms(out, m, e, Fraction(c))
        return out
    # skew-skew
    if dt:
        assert e != (0, 0)
        out[(SKEW, e[0], e[1])] = Fraction(dt)
        _k_sum_terms(out, m, e, cfg.mu * dt * dt)
    return out


def basis_bracket(cfg: AlgebraConfig, s, t) -> Terms:
    """Bracket of two basis symbols; the result is cached on ``cfg``."""
    key = (s, t)
    cache = cfg._cache
    r = cache.get(key)
    if r is None:
        if s[0] <= t[0]:
            r = _bb_ordered(cfg, s, t)
        else:
            r = _bb_der_left(cfg, s, t) if s[0] in (DER, SKEW) else {
                sym: -c for sym, c in _bb_ordered(cfg, t, s).items()
            }
        cache[key] = r
    return r


def bracket_terms(cfg: AlgebraConfig, x: Terms, y: Terms) -> Terms:
    out: Terms = {}
    bb = basis_bracket
    for s, a in x.items():
        for t, b in y.items():
            r = bb(cfg, s, t)
            if r:
                c = a * b
                for sym, v in r.items():
                    nv = out.get(sym, 0) + c * v
                    if nv:
                        out[sym] = nv
                    else:
                        del out[sym]
    return out


def bracket(cfg: AlgebraConfig, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._raw(bracket_terms(cfg, x.terms, y.terms))


# -- invariant form ---------------------------------------------------------


def basis_form(cfg: AlgebraConfig, s, t) -> Fraction:
    if s[0] > t[0]:
        s, t = t, s
    ks, kt = s[0], t[0]
    if ks == LOOP and kt == LOOP:
        if s[2] + t[2] == 0 and s[3] + t[3] == 0:
            return cfg.base.form[s[1]][t[1]]
        return ZERO
    if ks == KSYM and kt == DER:
        if s[2] == 0 and s[3] == 0 and s[1] == t[1]:
            return Fraction(1)
        return ZERO
    if ks == KSYM and kt == SKEW:
        if s[2] + t[1] == 0 and s[3] + t[2] == 0:
            m0, m1 = t[1], t[2]
            return Fraction(m0 if s[1] == 1 else -m1)
        return ZERO
    return ZERO


def form_terms(cfg: AlgebraConfig, x: Terms, y: Terms) -> Fraction:
    total = ZERO
    for s, a in x.items():
        for t, b in y.items():
            v = basis_form(cfg, s, t)
            if v:
                total += a * b * v
    return total


def invariant_form(cfg: AlgebraConfig, x: AlgebraElement, y: AlgebraElement) -> Fraction:
    return form_terms(cfg, x.terms, y.terms)


def exact_form_terms(m: Exp2) -> Terms:
    """Raw (non-normalized) terms of ``m0 t^m k_0 + m1 t^m k_1``."""
    out: Terms = {}
    if m[0]:
        out[(KSYM, 0, m[0], m[1])] = Fraction(m[0])
    if m[1]:
        out[(KSYM, 1, m[0], m[1])] = Fraction(m[1])
    return out


# -- roots and triangular decompositions ------------------------------------


@dataclass(frozen=True)
class RootLabel:
    finite_part: Tuple[int, ...]
    m0: int
    m1: int
    isotropic: bool
    type1: int  # sign of the finite part: +1, 0, -1
    type2: int  # sign of the affine part alpha + m0 delta_0: +1, 0, -1

    def __add__(self, other: "RootLabel") -> "RootLabel":
        fp = tuple(a + b for a, b in zip(self.finite_part, other.finite_part))
        return make_root_label(fp, self.m0 + other.m0, self.m1 + other.m1)


def _sign(t: Iterable[int]) -> int:
    for c in t:
        if c:
            return 1 if c > 0 else -1
    return 0


def make_root_label(finite_part, m0: int, m1: int) -> RootLabel:
    fp = tuple(finite_part)
    s1 = _sign(fp)
    # all coefficients of a root share the sign, so the first nonzero one decides
    if m0:
        s2 = 1 if m0 > 0 else -1
    else:
        s2 = s1
    return RootLabel(fp, m0, m1, not any(fp), s1, s2)


def root_of(cfg: AlgebraConfig, sym) -> RootLabel:
    rank = cfg.base.rank
    zero = tuple(0 for _ in range(rank))
    if sym[0] == LOOP:
        return make_root_label(cfg.base.roots[sym[1]], sym[2], sym[3])
    m = exponent(sym)
    return make_root_label(zero, m[0], m[1])


# -- [d_m, k_n] -------------------------------------------------------------


def bracket_d_k(cfg: AlgebraConfig, m: Exp2, n: Exp2) -> KClass:
    """``[d_m, k_n]`` via the full table; asserts agreement with ``det(m,n) k_{m+n}``.

    When ``m + n = 0`` the bracket is a multiple of ``m_0 k_0 + m_1 k_1``, which is
    dropped: the identity is one modulo the degree-zero centre.
    """
    if n == (0, 0):
        raise ValueError("n must be nonzero")
    if m == (0, 0):
        got = KClass()
    else:
        got = bracket(cfg, AlgebraElement.skew(m), AlgebraElement.kclass(k_m(n))).k_part
        if (m[0] + n[0], m[1] + n[1]) == (0, 0):
            # the identity holds modulo the degree-zero centre C k_0 + C k_1
            got = KClass(tuple(e for e in got.entries if e[0] != (0, 0)))
    expected = k_m((m[0] + n[0], m[1] + n[1])).scaled(det2(m, n))
    if got != expected:
        raise AssertionError(f"[d_{m}, k_{n}] = {got} but det*k = {expected}")
    return got


# -- the affine sl2 subalgebras ---------------------------------------------


def _m_prime(m: Exp2) -> Tuple[Fraction, Fraction]:
    if m[1]:
        return Fraction(1, m[1]), ZERO
    if m[0]:
        return ZERO, Fraction(-1, m[0])
    return ZERO, ZERO


def _m_second(m: Exp2) -> Tuple[Fraction, Fraction]:
    if m[1]:
        return ZERO, Fraction(1, m[1])
    return Fraction(1, m[0]), ZERO


@dataclass
class AffineSl2:
    alpha: Tuple[int, ...]
    m: Exp2
    n: int
    E: Dict[int, AlgebraElement]
    F: Dict[int, AlgebraElement]
    H: Dict[int, AlgebraElement]
    c: AlgebraElement
    D: AlgebraElement


def sl2_hat(cfg: AlgebraConfig, alpha, m: Exp2, n: int, krange: Iterable[int]) -> AffineSl2:
    """Generators of the affine ``sl_2`` attached to ``(alpha, m, n)`` for ``k`` in ``krange``."""
    m = (int(m[0]), int(m[1]))
    if m == (0, 0):
        raise ValueError("m must be nonzero")
    if m[1] and n % m[1]:
        raise ValueError(f"shift n*m' is not integral: {n} not divisible by m1={m[1]}")
    if not m[1] and n % m[0]:
        raise ValueError(f"shift n*m' is not integral: {n} not divisible by m0={m[0]}")
    mp = _m_prime(m)
    shift = (int(n * mp[0]), int(n * mp[1]))
    xp, hv, xm = sl2_triple(cfg.base, alpha)
    norm = cfg.base.root_pairing(alpha, alpha)
    ratio = Fraction(2 * n) / norm
    E, F, H = {}, {}, {}
    for k in krange:
        E[k] = AlgebraElement.loop((k * m[0] + shift[0], k * m[1] + shift[1]), xp)
        F[k] = AlgebraElement.loop((k * m[0] - shift[0], k * m[1] - shift[1]), xm)
        H[k] = AlgebraElement.loop_vec((k * m[0], k * m[1]), hv) + AlgebraElement.kclass(
            k_m(m, k).scaled(ratio)
        )
    c = AlgebraElement.k((0, 0), 0, m[0]) + AlgebraElement.k((0, 0), 1, m[1])
    ms = _m_second(m)
    D = AlgebraElement.d(0, ms[0]) + AlgebraElement.d(1, ms[1])
    return AffineSl2(tuple(alpha), m, n, E, F, H, c, D)


def check_sl2_hat(cfg: AlgebraConfig, gens: AffineSl2) -> List[str]:
    """Affine ``A_1^(1)`` relations on the generators; returns violated relations."""
    bad = []
    ks = sorted(gens.E)
    zero = AlgebraElement()

    def expect(name, got, want):
        if got != want:
            bad.append(f"{name}: got {got!r}, want {want!r}")

    for k in ks:
        for l in ks:
            delta = gens.c * k if k + l == 0 else zero
            if k + l in gens.H:
                expect(f"[E{k},F{l}]", bracket(cfg, gens.E[k], gens.F[l]), gens.H[k + l] + delta)
                expect(f"[H{k},E{l}]", bracket(cfg, gens.H[k], gens.E[l]), gens.E[k + l] * 2)
                expect(f"[H{k},F{l}]", bracket(cfg, gens.H[k], gens.F[l]), gens.F[k + l] * -2)
            expect(f"[H{k},H{l}]", bracket(cfg, gens.H[k], gens.H[l]), gens.c * (2 * k) if k + l == 0 else zero)
            expect(f"[E{k},E{l}]", bracket(cfg, gens.E[k], gens.E[l]), zero)
            expect(f"[F{k},F{l}]", bracket(cfg, gens.F[k], gens.F[l]), zero)
        for name, fam in (("E", gens.E), ("F", gens.F), ("H", gens.H)):
            expect(f"[D,{name}{k}]", bracket(cfg, gens.D, fam[k]), fam[k] * k)
            expect(f"[c,{name}{k}]", bracket(cfg, gens.c, fam[k]), zero)
    expect("[D,c]", bracket(cfg, gens.D, gens.c), zero)
    return bad


# -- coordinate changes -----------------------------------------------------

Mat2 = Tuple[Tuple[int, int], Tuple[int, int]]


def _as_mat(A) -> Mat2:
    return ((int(A[0][0]), int(A[0][1])), (int(A[1][0]), int(A[1][1])))


def mat_det(A) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_mul2(A, B) -> Mat2:
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def mat_inv2(A) -> Mat2:
    d = mat_det(A)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    return ((A[1][1] * d, -A[0][1] * d), (-A[1][0] * d, A[0][0] * d))


def _apply(A, m) -> Exp2:
    # m A^t as a row vector
    return (A[0][0] * m[0] + A[0][1] * m[1], A[1][0] * m[0] + A[1][1] * m[1])


def chi_terms(A, x: Terms) -> Terms:
    A = _as_mat(A)
    B = mat_inv2(A)
    dB = mat_det(B)
    out: Terms = {}
    for sym, c in x.items():
        kind = sym[0]
        if kind == LOOP:
            e = _apply(A, (sym[2], sym[3]))
            axpy(out, {(LOOP, sym[1], e[0], e[1]): c})
        elif kind == KSYM:
            e = _apply(A, (sym[2], sym[3]))
            j = sym[1]
            _k_add(out, e[0], e[1], c * A[0][j], c * A[1][j])
        elif kind == DER:
            j = sym[1]
            axpy(out, {(DER, i): c * B[j][i] for i in range(2) if B[j][i]})
        else:
            e = _apply(A, (sym[1], sym[2]))
            axpy(out, {(SKEW, e[0], e[1]): c * dB})
    return out


def chi_A(cfg: AlgebraConfig, A, x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement._raw(chi_terms(A, x.terms))


def central_charge_transform(c, A) -> Tuple[Fraction, Fraction]:
    A = _as_mat(A)
    if abs(mat_det(A)) != 1:
        raise ValueError("matrix is not unimodular")
    c0, c1 = frac(c[0]), frac(c[1])
    return c0 * A[0][0] + c1 * A[1][0], c0 * A[0][1] + c1 * A[1][1]


# -- the quotient S~ and the algebra G --------------------------------------


@dataclass(frozen=True)
class SElement:
    """Element of the Virasoro-like quotient: ``a d_0 + b d_1 + sum c_m d(m)``."""

    d0: Fraction = ZERO
    d1: Fraction = ZERO
    dm: Tuple[Tuple[Exp2, Fraction], ...] = ()

    @classmethod
    def build(cls, d0=0, d1=0, dm: Optional[Dict[Exp2, Fraction]] = None) -> "SElement":
        items = tuple(sorted((m, frac(c)) for m, c in (dm or {}).items() if c))
        return cls(frac(d0), frac(d1), items)


def pi_S(cfg: AlgebraConfig, x: AlgebraElement) -> SElement:
    d0, d1 = x.degree_ders
    return SElement.build(d0, d1, x.skew_part)


def s_bracket(x: SElement, y: SElement) -> SElement:
    dm: Dict[Exp2, Fraction] = {}
    xd, yd = dict(x.dm), dict(y.dm)
    for m, a in xd.items():
        for n, b in yd.items():
            dt = det2(m, n)
            if dt:
                e = (m[0] + n[0], m[1] + n[1])
                axpy(dm, {e: a * b * dt})
    for n, b in yd.items():
        axpy(dm, {n: (x.d0 * n[0] + x.d1 * n[1]) * b})
    for m, a in xd.items():
        axpy(dm, {m: -(y.d0 * m[0] + y.d1 * m[1]) * a})
    return SElement.build(0, 0, dm)


@dataclass(frozen=True)
class GElement:
    """Element of ``(R (x) h) x| S~``: loop Cartan part ``{(m, cartan index): c}`` plus ``S~`` part."""

    h: Tuple[Tuple[Tuple[Exp2, int], Fraction], ...] = ()
    s: SElement = SElement()

    @classmethod
    def build(cls, h: Optional[Dict[Tuple[Exp2, int], Fraction]] = None, s: Optional[SElement] = None):
        items = tuple(sorted((k, frac(c)) for k, c in (h or {}).items() if c))
        return cls(items, s or SElement())

    @classmethod
    def from_element(cls, cfg: AlgebraConfig, x: AlgebraElement) -> "GElement":
        cart = set(cfg.base.cartan_indices)
        h = {}
        for (m, idx), c in x.loop_part.items():
            if idx not in cart:
                raise ValueError("element has a loop component outside R (x) h")
            h[(m, idx)] = c
        return cls.build(h, pi_S(cfg, x))


def g_algebra_bracket(cfg: AlgebraConfig, x: GElement, y: GElement) -> GElement:
    h: Dict[Tuple[Exp2, int], Fraction] = {}
    for xs, ys, sign in ((x.s, y.h, 1), (y.s, x.h, -1)):
        for (n, idx), c in ys:
            for m, a in xs.dm:
                dt = det2(m, n)
                if dt:
                    axpy(h, {((m[0] + n[0], m[1] + n[1]), idx): sign * a * c * dt})
            coef = xs.d0 * n[0] + xs.d1 * n[1]
            if coef:
                axpy(h, {(n, idx): sign * coef * c})
    return GElement.build(h, s_bracket(x.s, y.s))


# -- enumeration and JSON ---------------------------------------------------


def basis_symbols(cfg: AlgebraConfig, box: int, k_box: Optional[int] = None) -> List[tuple]:
    """All basis symbols with exponents in ``[-box, box]^2`` in canonical order."""
    k_box = box if k_box is None else k_box
    r = range(-box, box + 1)
    syms = []
    for i in range(cfg.base.dim):
        syms.extend((LOOP, i, a, b) for a in r for b in r)
    for a in range(-k_box, k_box + 1):
        for b in range(-k_box, k_box + 1):
            if b:
                syms.append((KSYM, 0, a, b))
            elif a:
                syms.append((KSYM, 1, a, 0))
            else:
                syms.extend([(KSYM, 0, 0, 0), (KSYM, 1, 0, 0)])
    syms.extend([(DER, 0), (DER, 1)])
    syms.extend((SKEW, a, b) for a in r for b in r if (a, b) != (0, 0))
    return sorted(syms)


def element_to_json(x: AlgebraElement) -> dict:
    loop, skew = [], []
    for s, c in sorted(x.terms.items()):
        if s[0] == LOOP:
            loop.append([s[2], s[3], s[1], fmt(c)])
        elif s[0] == SKEW:
            skew.append([s[1], s[2], fmt(c)])
    d0, d1 = x.degree_ders
    return {
        "loop": loop,
        "k": [[m[0], m[1], fmt(a), fmt(b)] for m, a, b in x.k_part.entries],
        "d": [fmt(d0), fmt(d1)],
        "skew": skew,
    }


def element_from_json(obj, dim: Optional[int] = None) -> AlgebraElement:
    if not isinstance(obj, dict):
        raise ValueError("element must be a JSON object")
    unknown = set(obj) - {"loop", "k", "d", "skew"}
    if unknown:
        raise ValueError(f"unknown element keys: {sorted(unknown)}")
    el = AlgebraElement()
    for m0, m1, idx, c in obj.get("loop", []):
        if dim is not None and not 0 <= int(idx) < dim:
            raise IndexError(f"basis index {idx} out of range")
        el = el + AlgebraElement.loop((int(m0), int(m1)), int(idx), frac(c))
    raw = {}
    for m0, m1, a, b in obj.get("k", []):
        pa, pb = raw.get((int(m0), int(m1)), (ZERO, ZERO))
        raw[(int(m0), int(m1))] = (pa + frac(a), pb + frac(b))
    el = el + AlgebraElement.kclass(k_normalize(raw))
    d = obj.get("d", ["0", "0"])
    if len(d) != 2:
        raise ValueError("'d' must have two entries")
    el = el + AlgebraElement.d(0, frac(d[0])) + AlgebraElement.d(1, frac(d[1]))
    for m0, m1, c in obj.get("skew", []):
        el = el + AlgebraElement.skew((int(m0), int(m1)), frac(c))
    return el
