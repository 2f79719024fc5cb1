"""Seeded Lehmer generator used by every sampled sweep.

``x_{k+1} = A * x_k mod M`` with ``M = 2**63 - 25`` (prime) and
``A = 3512401965023503517``, a primitive root modulo ``M``, so the state
cycles through all of ``1 .. M-1``.  The seed maps to the initial state
``seed mod (M - 1) + 1``.  Plain integer arithmetic keeps the stream
identical in any language with 128-bit or big-integer multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, TypeVar

MODULUS = 2 ** 63 - 25
MULTIPLIER = 3512401965023503517

T = TypeVar("T")


class Lcg:
    def __init__(self, seed: int = 0):
        self.state = int(seed) % (MODULUS - 1) + 1

    def next(self) -> int:
        self.state = (MULTIPLIER * self.state) % MODULUS
        return self.state

    def below(self, n: int) -> int:
        """Integer in ``[0, n)`` (modulo reduction; the bias is below ``n / 2**63``)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next() % n

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]

    def rational(self, num: int = 9, den: int = 5, nonzero: bool = False) -> Fraction:
        while True:
            q = Fraction(self.between(-num, num), self.between(1, den))
            if q or not nonzero:
                return q

    def sample(self, items: Sequence[T], k: int) -> List[T]:
        return [self.choice(items) for _ in range(k)]
