"""Integer-scaled view of an additive instance.

Shares become integers over a common denominator ``D`` and weights integers
over ``E``; then ``g(S) = (D - A) * F / (D * E)`` with integer sums ``A`` and
``F``. The hot loops (the balance-point pass and subset enumeration) compare
these integers instead of Fractions. Values are identical, only faster.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .exact import NEG_INF, Infinity


class AdditiveTable:
    def __init__(self, instance):
        shares = instance.shares
        weights = instance.reward.weights
        finite = [s for s in shares if not isinstance(s, Infinity)]
        self.D = lcm(1, *(s.denominator for s in finite))
        self.E = lcm(1, *(w.denominator for w in weights))
        # a[i] is None for agents whose share is infinite (never hireable).
        self.a = [
            None if isinstance(s, Infinity) else s.numerator * (self.D // s.denominator)
            for s in shares
        ]
        self.v = [w.numerator * (self.E // w.denominator) for w in weights]
        qs = instance.quality_structure
        self.rank = qs.rank
        self.group = qs.group_of

    def sums(self, members):
        A = F = 0
        a, v = self.a, self.v
        for i in members:
            if a[i] is None:
                return None
            A += a[i]
            F += v[i]
        return A, F

    def utility_from(self, A: int, F: int) -> Fraction:
        return Fraction((self.D - A) * F, self.D * self.E)

    def utility(self, members):
        s = self.sums(members)
        if s is None:
            return NEG_INF
        return self.utility_from(*s)

    def share(self, A: int) -> Fraction:
        return Fraction(A, self.D)
