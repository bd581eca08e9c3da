"""Concrete modules over the (extended) Witt algebra.

``OmegaModule`` is the polynomial module C[d1..dn] built from the Weyl-algebra
modules Omega(lambda_i) and twisted by ``b``: the derivation ``D(u,j)`` acts as
``lambda^j (sum u_i d_i + (b-1)(u|j)) p(d - j)`` and ``t^j`` acts as
``lambda^j p(d - j)``.

``WeightModule`` is the weight module with basis ``t^k`` and constant
``alpha``: ``D(u,r) t^k = (u | alpha + k + b r) t^{r+k}``, restricted to a box
``|k_i| <= N``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .exact import (
    DimensionError,
    format_scalar,
    pairing,
    parse_scalar,
    scalar,
)
from .poly import Poly
from .witt import WittElement, bracket, sigma_b


class TruncationOverflow(ArithmeticError):
    """An action would leave the truncation box of a weight module."""

    def __init__(self, index: tuple, radius: int):
        super().__init__(f"basis vector t^{index} lies outside the box |k_i| <= {radius}")
        self.index = index
        self.radius = radius


# -- Omega family -------------------------------------------------------------


@dataclass(frozen=True)
class OmegaModule:
    n: int
    b: Fraction
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", scalar(self.b))
        object.__setattr__(self, "lam", tuple(scalar(x) for x in self.lam))
        if self.n < 1:
            raise ValueError("rank must be positive")
        if len(self.lam) != self.n:
            raise DimensionError(f"lambda has {len(self.lam)} entries, rank is {self.n}")
        if any(x == 0 for x in self.lam):
            raise ValueError("every lambda_i must be nonzero")

    @classmethod
    def from_a(cls, n: int, a, lam: Sequence) -> OmegaModule:
        """Construct with ``a = 1 - b`` (the sl(n+1) parametrisation)."""
        return cls(n, 1 - scalar(a), tuple(lam))

    @property
    def a(self) -> Fraction:
        return 1 - self.b

    def with_b(self, b) -> OmegaModule:
        return OmegaModule(self.n, scalar(b), self.lam)

    def lam_power(self, j: Sequence[int]) -> Fraction:
        out = Fraction(1)
        for x, e in zip(self.lam, j):
            if e:
                out *= x ** e
        return out

    def to_json(self) -> dict:
        return {
            "family": "omega",
            "n": self.n,
            "b": format_scalar(self.b),
            "lambda": [format_scalar(x) for x in self.lam],
        }


def act_weyl(m: OmegaModule, j: Sequence[int], l: Sequence[int], p: Poly) -> Poly:
    """Action of the Weyl-algebra monomial ``t^j d^l``: ``lambda^j (d^l p)(d - j)``."""
    if len(j) != m.n or len(l) != m.n or p.n != m.n:
        raise DimensionError("rank mismatch in Weyl action")
    q = p.mul_monomial(l) if any(l) else p
    return q.shift(j).scale(m.lam_power(j))


def _linear(n: int, u: Sequence[Fraction], const: Fraction) -> Poly:
    terms = {}
    for i, ui in enumerate(u):
        if ui:
            terms[tuple(1 if k == i else 0 for k in range(n))] = ui
    if const:
        terms[(0,) * n] = const
    return Poly(n, terms)


def act_witt_omega(m: OmegaModule, u: Sequence, j: Sequence[int], p: Poly) -> Poly:
    """``D(u,j)`` acting on ``p``: ``lambda^j (sum u_i d_i + (b-1)(u|j)) p(d - j)``."""
    u = tuple(scalar(x) for x in u)
    if len(u) != m.n or len(j) != m.n or p.n != m.n:
        raise DimensionError("rank mismatch in Witt action")
    if p.is_zero() or not any(u):
        return Poly.zero(m.n)
    factor = _linear(m.n, u, (m.b - 1) * pairing(u, j))
    return (factor * p.shift(j)).scale(m.lam_power(j))


def act_witt_element(m: OmegaModule, x: WittElement, p: Poly) -> Poly:
    """Linear extension to a whole element; ``t^r`` acts as ``act_weyl`` with ``l = 0``."""
    if x.n != m.n or p.n != m.n:
        raise DimensionError("rank mismatch in Witt action")
    out = Poly.zero(m.n)
    zero = (0,) * m.n
    for u, r in x.derivation_terms:
        out = out + act_witt_omega(m, u, r, p)
    for r, c in x.torus_terms:
        out = out + act_weyl(m, r, zero, p).scale(c)
    return out


def twist_consistency(m: OmegaModule, u: Sequence, k: Sequence[int], p: Poly) -> bool:
    """Check ``D(u,k) o p == (D(u,k) + b(u|k) t^k) p`` against the untwisted action."""
    u = tuple(scalar(x) for x in u)
    m0 = m.with_b(0)
    lhs = act_witt_omega(m, u, k, p)
    rhs = act_witt_omega(m0, u, k, p) + act_weyl(m, k, (0,) * m.n, p).scale(m.b * pairing(u, k))
    return lhs == rhs


def delta_combination(
    m: OmegaModule, u: Sequence, v: Sequence, i: Sequence[int], k: Sequence[int], p: Poly
) -> Poly:
    """Evaluate the quadratic combination

    ``-1/2 D(u,k-i)D(v,i) - 1/2 D(u,k+i)D(v,-i) + D(u,k)D(v,0)``

    on ``p`` through composed module actions (right factor first).
    """
    n = m.n
    kmi = tuple(a - b for a, b in zip(k, i))
    kpi = tuple(a + b for a, b in zip(k, i))
    mi = tuple(-a for a in i)
    zero = (0,) * n
    half = Fraction(1, 2)
    t1 = act_witt_omega(m, u, kmi, act_witt_omega(m, v, i, p))
    t2 = act_witt_omega(m, u, kpi, act_witt_omega(m, v, mi, p))
    t3 = act_witt_omega(m, u, k, act_witt_omega(m, v, zero, p))
    return t1.scale(-half) + t2.scale(-half) + t3


def delta_theta(m: OmegaModule, u: Sequence, v: Sequence, i: Sequence[int]) -> Fraction:
    return m.b * (m.b - 1) * pairing(tuple(map(scalar, u)), i) * pairing(tuple(map(scalar, v)), i)


def delta_check(
    m: OmegaModule, u: Sequence, v: Sequence, i: Sequence[int], k: Sequence[int], p: Poly
) -> bool:
    """The quadratic combination acts as ``b(b-1)(u|i)(v|i) t^k``."""
    lhs = delta_combination(m, u, v, i, k, p)
    rhs = act_weyl(m, k, (0,) * m.n, p).scale(delta_theta(m, u, v, i))
    return lhs == rhs


def torus_via_witt(
    m: OmegaModule, u: Sequence, v: Sequence, i: Sequence[int], k: Sequence[int], p: Poly
) -> Poly:
    """Express the action of ``t^k`` using only Witt derivations.

    Requires ``theta = b(b-1)(u|i)(v|i) != 0``; returns ``theta^{-1}`` times the
    quadratic combination applied to ``p``.
    """
    theta = delta_theta(m, u, v, i)
    if not theta:
        raise ZeroDivisionError("theta vanishes: need b not in {0,1} and (u|i)(v|i) != 0")
    return delta_combination(m, u, v, i, k, p).scale(1 / theta)


# -- weight family --------------------------------------------------------------


@dataclass(frozen=True)
class WeightModule:
    n: int
    b: Fraction
    alpha: tuple
    N: int

    def __post_init__(self):
        object.__setattr__(self, "b", scalar(self.b))
        object.__setattr__(self, "alpha", tuple(scalar(x) for x in self.alpha))
        if len(self.alpha) != self.n:
            raise DimensionError(f"alpha has {len(self.alpha)} entries, rank is {self.n}")
        if self.N < 1:
            raise ValueError("truncation radius must be at least 1")

    def inside(self, k: Sequence[int]) -> bool:
        return all(abs(x) <= self.N for x in k)

    def to_json(self) -> dict:
        return {
            "family": "weight",
            "n": self.n,
            "b": format_scalar(self.b),
            "alpha": [format_scalar(x) for x in self.alpha],
            "N": self.N,
        }


@dataclass(frozen=True)
class WeightVec:
    """Finite combination ``sum c_k t^k``."""

    n: int
    coords: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, c in self.coords.items():
            k = tuple(int(x) for x in k)
            if len(k) != self.n:
                raise DimensionError(f"index {k} has wrong rank")
            c = scalar(c)
            if c:
                clean[k] = c
        object.__setattr__(self, "coords", clean)

    @classmethod
    def basis(cls, k: Sequence[int], c=1) -> WeightVec:
        return cls(len(k), {tuple(k): scalar(c)})

    def __add__(self, other: WeightVec) -> WeightVec:
        if self.n != other.n:
            raise DimensionError("rank mismatch")
        out = dict(self.coords)
        for k, c in other.coords.items():
            out[k] = out.get(k, 0) + c
        return WeightVec(self.n, out)

    def __sub__(self, other: WeightVec) -> WeightVec:
        return self + other.scale(-1)

    def scale(self, c) -> WeightVec:
        c = scalar(c)
        return WeightVec(self.n, {k: c * v for k, v in self.coords.items()})

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightVec):
            return NotImplemented
        return self.n == other.n and dict(self.coords) == dict(other.coords)

    def __hash__(self):
        return hash((self.n, frozenset(self.coords.items())))


def _check_box(m: WeightModule, k: tuple) -> tuple:
    if not m.inside(k):
        raise TruncationOverflow(k, m.N)
    return k


def act_witt_weight(m: WeightModule, u: Sequence, r: Sequence[int], v: WeightVec) -> WeightVec:
    """``D(u,r) t^k = (u | alpha + k + b r) t^{r+k}``; raises on leaving the box."""
    u = tuple(scalar(x) for x in u)
    r = tuple(int(x) for x in r)
    if len(u) != m.n or len(r) != m.n or v.n != m.n:
        raise DimensionError("rank mismatch in weight action")
    out = {}
    for k, c in v.coords.items():
        w = tuple(a + x + m.b * y for a, x, y in zip(m.alpha, k, r))
        coef = pairing(u, w)
        if coef:
            target = _check_box(m, tuple(x + y for x, y in zip(k, r)))
            out[target] = out.get(target, 0) + c * coef
    return WeightVec(m.n, out)


def act_torus_weight(m: WeightModule, s: Sequence[int], v: WeightVec) -> WeightVec:
    out = {}
    for k, c in v.coords.items():
        target = _check_box(m, tuple(x + y for x, y in zip(k, s)))
        out[target] = out.get(target, 0) + c
    return WeightVec(m.n, out)


def act_witt_weight_element(m: WeightModule, x: WittElement, v: WeightVec) -> WeightVec:
    if x.n != m.n:
        raise DimensionError("rank mismatch in weight action")
    out = WeightVec(m.n)
    for u, r in x.derivation_terms:
        out = out + act_witt_weight(m, u, r, v)
    for r, c in x.torus_terms:
        out = out + act_torus_weight(m, r, v).scale(c)
    return out


# -- generic dispatch -------------------------------------------------------------

Module = Union[OmegaModule, WeightModule]


def act(m: Module, x: WittElement, v):
    if isinstance(m, OmegaModule):
        return act_witt_element(m, x, v)
    return act_witt_weight_element(m, x, v)


def module_axiom_holds(m: Module, x: WittElement, y: WittElement, v) -> bool:
    """``[x,y] v == x(y v) - y(x v)`` exactly."""
    lhs = act(m, bracket(x, y), v)
    rhs = act(m, x, act(m, y, v)) - act(m, y, act(m, x, v))
    return lhs == rhs


def untwisted_action_matches(m: OmegaModule, x: WittElement, p: Poly) -> bool:
    """The twisted action of ``x`` equals the untwisted action of ``sigma_b(x)``."""
    return act_witt_element(m, x, p) == act_witt_element(m.with_b(0), sigma_b(x, m.b), p)


# -- descriptors --------------------------------------------------------------------


def module_from_json(data: Union[str, Mapping]) -> Module:
    """Inverse of ``to_json`` for both families."""
    if isinstance(data, str):
        data = json.loads(data)
    family = data.get("family")
    n = int(data["n"])
    b = parse_scalar(str(data["b"]))
    if family == "omega":
        return OmegaModule(n, b, tuple(parse_scalar(str(x)) for x in data["lambda"]))
    if family == "weight":
        return WeightModule(n, b, tuple(parse_scalar(str(x)) for x in data["alpha"]), int(data["N"]))
    raise ValueError(f"unknown module family {family!r}")
