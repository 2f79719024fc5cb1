"""Exp-polynomial functions ``f(n) = sum c_i n^{m_i} b_i^n`` with rational data.

``0^0 = 1`` throughout, so ``f(0)`` is the sum of the ``c_i`` with ``m_i = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import sympy

from .linalg import InconsistentSystem, fmt, frac, nullspace, solve

Term = Tuple[Fraction, int, Fraction]


def _power(b: Fraction, n: int) -> Fraction:
    return b ** n  # Fraction handles negative exponents exactly


@dataclass(frozen=True)
class ExpPolynomial:
    terms: Tuple[Term, ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Sequence]) -> "ExpPolynomial":
        acc: Dict[Tuple[Fraction, int], Fraction] = {}
        for c, m, b in terms:
            c, b, m = frac(c), frac(b), int(m)
            if m < 0:
                raise ValueError("exponent m must be non-negative")
            if not b:
                raise ValueError("base b must be nonzero")
            acc[(b, m)] = acc.get((b, m), Fraction(0)) + c
        return cls(tuple((c, m, b) for (b, m), c in sorted(acc.items()) if c))

    def __call__(self, n: int) -> Fraction:
        return self.eval(n)

    def eval(self, n: int) -> Fraction:
        total = Fraction(0)
        for c, m, b in self.terms:
            total += c * (n ** m if m else 1) * _power(b, n)
        return total

    def __add__(self, other: "ExpPolynomial") -> "ExpPolynomial":
        return ExpPolynomial.from_terms(self.terms + other.terms)

    def __neg__(self) -> "ExpPolynomial":
        return ExpPolynomial(tuple((-c, m, b) for c, m, b in self.terms))

    def __sub__(self, other: "ExpPolynomial") -> "ExpPolynomial":
        return self + (-other)

    def scale(self, k) -> "ExpPolynomial":
        return ExpPolynomial.from_terms((frac(k) * c, m, b) for c, m, b in self.terms)

    def shift_degree(self, k: int) -> "ExpPolynomial":
        """Multiply by ``n^k``."""
        return ExpPolynomial.from_terms((c, m + k, b) for c, m, b in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def roots(self) -> List[Tuple[Fraction, int]]:
        """Distinct bases with multiplicity ``max m + 1``."""
        top: Dict[Fraction, int] = {}
        for _, m, b in self.terms:
            top[b] = max(top.get(b, -1), m)
        return [(b, m + 1) for b, m in sorted(top.items())]

    def to_json(self) -> List[dict]:
        return [{"c": fmt(c), "m": m, "b": fmt(b)} for c, m, b in self.terms]

    @classmethod
    def from_json(cls, obj) -> "ExpPolynomial":
        if not isinstance(obj, list):
            raise ValueError("exp-polynomial must be a JSON list")
        return cls.from_terms((t["c"], t["m"], t["b"]) for t in obj)


def eval_exp(f: ExpPolynomial, n: int) -> Fraction:
    return f.eval(n)


def _poly_mul(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def char_recurrence(f: ExpPolynomial) -> List[Fraction]:
    """Ascending coefficients of ``prod (x - b)^{m_b + 1}`` over the distinct bases."""
    p = [Fraction(1)]
    for b, mult in f.roots():
        for _ in range(mult):
            p = _poly_mul(p, [-b, Fraction(1)])
    return p


def verify_recurrence(f: ExpPolynomial, p: Sequence, window: Iterable[int]) -> bool:
    p = [frac(c) for c in p]
    for m in window:
        if sum((c * f.eval(m + i) for i, c in enumerate(p)), Fraction(0)):
            return False
    return True


def fit_from_values(values: Mapping[int, Fraction], roots: Sequence[Tuple]) -> ExpPolynomial:
    """Coefficients of ``n^j b^n`` (``j < mult``) matching every supplied value.

    Raises :class:`InconsistentSystem` if the values are not of that form.
    """
    cols = [(frac(b), j) for b, mult in roots for j in range(int(mult))]
    pts = sorted(values)
    if len(pts) < len(cols):
        raise ValueError("not enough sample points for the requested roots")
    matrix = [[(n ** j if j else 1) * _power(b, n) for b, j in cols] for n in pts]
    coeffs = solve(matrix, [frac(values[n]) for n in pts])
    return ExpPolynomial.from_terms((c, j, b) for c, (b, j) in zip(coeffs, cols) if c)


def minimal_recurrence(values: Mapping[int, Fraction]) -> List[Fraction]:
    """Shortest recurrence satisfied on a window of consecutive values (monic, ascending).

    The window must hold at least twice the order plus one points for the
    answer to be forced; shorter windows raise ``ValueError``.
    """
    pts = sorted(values)
    if pts != list(range(pts[0], pts[0] + len(pts))):
        raise ValueError("values must be given on consecutive integers")
    seq = [frac(values[n]) for n in pts]
    if not any(seq):
        return [Fraction(1)]
    for order in range(1, len(seq)):
        rows = [seq[s:s + order + 1] for s in range(len(seq) - order)]
        if len(rows) < order + 1:
            break
        ker = nullspace(rows)
        if ker:
            if len(ker) > 1:
                raise ValueError("window too short to pin down the recurrence")
            vec = ker[0]
            lead = vec[-1]
            if not lead:
                continue
            return [c / lead for c in vec]
    raise ValueError("no recurrence found within the window")


def rational_roots(p: Sequence[Fraction]) -> List[Tuple[Fraction, int]]:
    """Roots of the ascending coefficient list ``p``; all of them must be rational."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p])), x)
    found = sympy.roots(poly, filter="Q")
    if sum(found.values()) != poly.degree():
        raise ValueError("recurrence has non-rational roots")
    return sorted((Fraction(int(r.p), int(r.q)), int(k)) for r, k in found.items())


def fit_exp_polynomial(values: Mapping[int, Fraction]) -> ExpPolynomial:
    """Recover an exp-polynomial from consecutive values via its minimal recurrence."""
    p = minimal_recurrence(values)
    if len(p) == 1:
        return ExpPolynomial()
    roots = rational_roots(p)
    if any(b == 0 for b, _ in roots):
        raise InconsistentSystem("recurrence has a zero root")
    return fit_from_values(values, roots)


# -- the functional identities ---------------------------------------------------


def _level_terms(lams, a_list, mu, with_d0: bool) -> ExpPolynomial:
    terms = []
    for lam, a in zip(lams, a_list):
        c = (lam.d0_value if with_d0 else 0) + frac(mu) * lam.k0_value
        if c:
            terms.append((c, 2, frac(a)))
    return ExpPolynomial.from_terms(terms)


def chi_from_phi(lams, a_list, mu, phi: ExpPolynomial) -> ExpPolynomial:
    """``chi(m) = m^2 sum a_i^m (lambda_i(d_0) + mu lambda_i(k_0)) - phi(m)``."""
    chi = _level_terms(lams, a_list, mu, True) - phi
    if chi.eval(0):
        raise AssertionError("chi(0) must vanish; phi(0) is nonzero")
    return chi


def phi_from_phi_prime(phi_prime: ExpPolynomial, lams, a_list, mu) -> ExpPolynomial:
    """``phi(m) = -phi'(m) + mu m^2 sum lambda_s(k_0) a_s^m``."""
    return _level_terms(lams, a_list, mu, False) - phi_prime
