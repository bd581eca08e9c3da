"""Seeded random instances for the property checks.

Ranges: numerators in [-10, 10], denominators in [1, 10], multi-index entries
in [-3, 3], at most 3 terms per element. Everything is drawn from
:class:`random.Random`, so a seed fixes the whole stream.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .modules import WeightVec
from .poly import Poly
from .witt import D, WittElement, t

MAX_NUM = 10
MAX_DEN = 10
INDEX_RANGE = 3
MAX_TERMS = 3


def case_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th case of a run; printed in failure reports."""
    return (seed * 1_000_003 + index) % (1 << 63)


class Sampler:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def rational(self, nonzero: bool = False) -> Fraction:
        while True:
            x = Fraction(self.rng.randint(-MAX_NUM, MAX_NUM), self.rng.randint(1, MAX_DEN))
            if x or not nonzero:
                return x

    def cvec(self, n: int, nonzero: bool = False) -> tuple:
        while True:
            u = tuple(self.rational() for _ in range(n))
            if any(u) or not nonzero:
                return u

    def multi_index(self, n: int, nonzero: bool = False, radius: int = INDEX_RANGE) -> tuple:
        while True:
            k = tuple(self.rng.randint(-radius, radius) for _ in range(n))
            if any(k) or not nonzero:
                return k

    def exponent(self, n: int, max_degree: int) -> tuple:
        d = self.rng.randint(0, max_degree)
        cuts = sorted(self.rng.randint(0, d) for _ in range(n - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
        return tuple(parts)

    def poly(self, n: int, max_degree: int = 3, max_terms: int = MAX_TERMS, min_degree: int = 0) -> Poly:
        """A nonzero polynomial with at most ``max_terms`` terms."""
        while True:
            terms = {}
            for _ in range(self.rng.randint(1, max_terms)):
                terms[self.exponent(n, max_degree)] = self.rational(nonzero=True)
            p = Poly(n, terms)
            if p and p.total_degree() >= min_degree:
                return p

    def witt_element(self, n: int, max_terms: int = MAX_TERMS, torus: bool = True) -> WittElement:
        x = WittElement.zero(n)
        for _ in range(self.rng.randint(1, max_terms)):
            r = self.multi_index(n)
            if torus and self.rng.random() < 1 / 3:
                x = x + t(r, self.rational(nonzero=True))
            else:
                x = x + D(self.cvec(n, nonzero=True), r)
        return x

    def weight_vec(self, n: int, radius: int = INDEX_RANGE) -> WeightVec:
        coords = {}
        for _ in range(self.rng.randint(1, MAX_TERMS)):
            coords[self.multi_index(n, radius=radius)] = self.rational(nonzero=True)
        return WeightVec(n, coords)
