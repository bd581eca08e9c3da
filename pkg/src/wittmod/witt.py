"""The extended Witt algebra: derivations ``D(u,r) = t^r sum u_i d_i`` plus the
abelian ideal of Laurent monomials ``t^r``.

Elements are finite linear combinations. Since ``D(u,r)`` is linear in ``u``,
derivation terms are stored as one folded vector per exponent ``r``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import (
    DimensionError,
    format_cvec,
    format_multi_index,
    format_scalar,
    neg_index,
    pairing,
    parse_cvec,
    parse_multi_index,
    parse_scalar,
    scalar,
    unit,
)


def _vadd(u: tuple, v: tuple) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def _vscale(c: Fraction, u: tuple) -> tuple:
    return tuple(c * x for x in u)


class WittElement:
    """Immutable element of the extended Witt algebra of rank ``n``."""

    __slots__ = ("n", "_der", "_tor")

    def __init__(
        self,
        n: int,
        derivations: Mapping[tuple, Sequence] | None = None,
        torus: Mapping[tuple, Fraction] | None = None,
    ):
        self.n = n
        der: dict = {}
        for r, u in (derivations or {}).items():
            r, u = tuple(int(x) for x in r), tuple(scalar(x) for x in u)
            if len(r) != n or len(u) != n:
                raise DimensionError(f"term D({u},{r}) does not have rank {n}")
            if any(u):
                der[r] = u
        tor: dict = {}
        for r, c in (torus or {}).items():
            r, c = tuple(int(x) for x in r), scalar(c)
            if len(r) != n:
                raise DimensionError(f"term t^{r} does not have rank {n}")
            if c:
                tor[r] = c
        self._der = der
        self._tor = tor

    @classmethod
    def _raw(cls, n: int, der: dict, tor: dict) -> WittElement:
        x = cls.__new__(cls)
        x.n, x._der, x._tor = n, der, tor
        return x

    @classmethod
    def zero(cls, n: int) -> WittElement:
        return cls._raw(n, {}, {})

    # -- inspection ---------------------------------------------------------

    @property
    def derivation_terms(self) -> list[tuple[tuple, tuple]]:
        """``(u, r)`` pairs sorted by ``r``."""
        return [(self._der[r], r) for r in sorted(self._der)]

    @property
    def torus_terms(self) -> list[tuple[tuple, Fraction]]:
        """``(r, c)`` pairs sorted by ``r``."""
        return [(r, self._tor[r]) for r in sorted(self._tor)]

    def is_zero(self) -> bool:
        return not self._der and not self._tor

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittElement):
            return NotImplemented
        return self.n == other.n and self._der == other._der and self._tor == other._tor

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._der.items()), frozenset(self._tor.items())))

    # -- vector space structure --------------------------------------------

    def _check(self, other: WittElement) -> None:
        if self.n != other.n:
            raise DimensionError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other: WittElement) -> WittElement:
        if not isinstance(other, WittElement):
            return NotImplemented
        self._check(other)
        der = dict(self._der)
        for r, u in other._der.items():
            s = _vadd(der[r], u) if r in der else u
            if any(s):
                der[r] = s
            else:
                der.pop(r, None)
        tor = dict(self._tor)
        for r, c in other._tor.items():
            s = tor.get(r, 0) + c
            if s:
                tor[r] = s
            else:
                tor.pop(r, None)
        return WittElement._raw(self.n, der, tor)

    def scale(self, c) -> WittElement:
        c = scalar(c)
        if not c:
            return WittElement.zero(self.n)
        return WittElement._raw(
            self.n,
            {r: _vscale(c, u) for r, u in self._der.items()},
            {r: c * v for r, v in self._tor.items()},
        )

    def __neg__(self) -> WittElement:
        return self.scale(-1)

    def __sub__(self, other: WittElement) -> WittElement:
        if not isinstance(other, WittElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> WittElement:
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_witt(self)

    def __repr__(self) -> str:
        return f"WittElement({self.n}, {format_witt(self)!r})"


def D(u: Sequence, r: Sequence[int], c=1) -> WittElement:
    """``c * D(u, r)``."""
    u = tuple(scalar(x) for x in u)
    r = tuple(int(x) for x in r)
    if len(u) != len(r):
        raise DimensionError(f"D(u, r) with |u|={len(u)} and |r|={len(r)}")
    return WittElement(len(u), {r: _vscale(scalar(c), u)})


def t(r: Sequence[int], c=1) -> WittElement:
    """``c * t^r``."""
    r = tuple(int(x) for x in r)
    return WittElement(len(r), torus={r: scalar(c)})


def bracket(x: WittElement, y: WittElement) -> WittElement:
    """Lie bracket, extended bilinearly from

    ``[D(u,k), D(v,s)] = D((u|s)v - (v|k)u, k+s)``, ``[D(u,k), t^s] = (u|s) t^{k+s}``
    and ``[t^k, t^s] = 0``.
    """
    x._check(y)
    n = x.n
    der: dict = {}
    tor: dict = {}

    def add_der(r, w):
        s = _vadd(der[r], w) if r in der else w
        der[r] = s

    def add_tor(r, c):
        tor[r] = tor.get(r, 0) + c

    for k, u in x._der.items():
        for s, v in y._der.items():
            us, vk = pairing(u, s), pairing(v, k)
            if not us and not vk:
                continue
            w = tuple(us * vi - vk * ui for ui, vi in zip(u, v))
            if any(w):
                add_der(tuple(a + b for a, b in zip(k, s)), w)
        for s, c in y._tor.items():
            us = pairing(u, s)
            if us:
                add_tor(tuple(a + b for a, b in zip(k, s)), c * us)
    for s, c in x._tor.items():
        for k, u in y._der.items():
            us = pairing(u, s)
            if us:
                add_tor(tuple(a + b for a, b in zip(k, s)), -c * us)
    der = {r: w for r, w in der.items() if any(w)}
    tor = {r: c for r, c in tor.items() if c}
    return WittElement._raw(n, der, tor)


def sigma_b(x: WittElement, b) -> WittElement:
    """The automorphism ``D(u,k) -> D(u,k) + b(u|k) t^k``, ``t^k -> t^k``."""
    b = scalar(b)
    extra = {}
    if b:
        for k, u in x._der.items():
            c = b * pairing(u, k)
            if c:
                extra[k] = c
    return x + WittElement._raw(x.n, {}, extra)


def is_homomorphism_witness(b, x: WittElement, y: WittElement) -> bool:
    """Whether ``sigma_b([x,y]) == [sigma_b(x), sigma_b(y)]``."""
    return sigma_b(bracket(x, y), b) == bracket(sigma_b(x, b), sigma_b(y, b))


def sl_embed(i: int, j: int, n: int) -> WittElement:
    """The matrix unit ``e_ij`` of gl(n+1) realised inside the rank-``n`` Witt algebra.

    Indices are 1-based, ``1 <= i, j <= n+1``:
    ``e_ij = t_i t_j^{-1} d_j``, ``e_{i,n+1} = -t_i sum d_j``,
    ``e_{n+1,i} = t_i^{-1} d_i``, ``e_{n+1,n+1} = -sum d_j``.
    """
    if not (1 <= i <= n + 1 and 1 <= j <= n + 1):
        raise IndexError(f"e_{{{i},{j}}} out of range for sl({n + 1})")
    ones = tuple(Fraction(-1) for _ in range(n))
    if i <= n and j <= n:
        r = tuple(a - b for a, b in zip(unit(n, i - 1), unit(n, j - 1)))
        return D(unit(n, j - 1), r)
    if i <= n:
        return D(ones, unit(n, i - 1))
    if j <= n:
        return D(unit(n, j - 1), neg_index(unit(n, j - 1)))
    return D(ones, (0,) * n)


def cartan(i: int, n: int) -> WittElement:
    """``e_ii - e_{i+1,i+1}`` for ``1 <= i <= n``."""
    return sl_embed(i, i, n) - sl_embed(i + 1, i + 1, n)


def sl_generators(n: int) -> list[tuple[str, WittElement]]:
    """Chevalley-type generating set of sl(n+1): ``e_{i,i+1}``, ``e_{i+1,i}``."""
    gens = []
    for i in range(1, n + 1):
        gens.append((f"e_{i},{i + 1}", sl_embed(i, i + 1, n)))
        gens.append((f"e_{i + 1},{i}", sl_embed(i + 1, i, n)))
    return gens


# -- text ---------------------------------------------------------------------


def format_witt(x: WittElement) -> str:
    """E.g. ``D((1,0),(1,-1)) + 2*t^(0,1)``; ``0`` for the zero element."""
    parts: list[tuple[str, str]] = []
    for u, r in x.derivation_terms:
        parts.append(("+", f"D({format_cvec(u)},{format_multi_index(r)})"))
    for r, c in x.torus_terms:
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = f"t^{format_multi_index(r)}"
        if mag != 1:
            coeff = format_scalar(mag)
            if "/" in coeff:
                coeff = f"({coeff})"
            body = f"{coeff}*{body}"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_WITT_TERM = re.compile(
    r"\s*([+-])?\s*"
    r"(?:\(?\s*([+-]?\d+(?:\s*/\s*\d+)?)\s*\)?\s*\*\s*)?"
    r"(?:D\(\s*(\([^()]*\))\s*,\s*(\([^()]*\))\s*\)|t\^\s*(\([^()]*\)))"
)


def parse_witt(text: str, n: int | None = None) -> WittElement:
    """Parse the text produced by :func:`format_witt` (coefficients optional)."""
    src = text.strip()
    if src == "0":
        if n is None:
            raise ValueError("rank required to parse the zero element")
        return WittElement.zero(n)
    pos = 0
    total = None
    first = True
    while pos < len(src):
        m = _WITT_TERM.match(src, pos)
        if m is None or (not first and m.group(1) is None):
            raise ValueError(f"cannot parse Witt element {text!r} at offset {pos}")
        sign, coeff, u_txt, r_txt, tr_txt = m.groups()
        c = parse_scalar(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        if u_txt is not None:
            term = D(parse_cvec(u_txt), parse_multi_index(r_txt), c)
        else:
            term = t(parse_multi_index(tr_txt), c)
        if n is not None and term.n != n:
            raise DimensionError(f"term of rank {term.n} in rank-{n} element")
        total = term if total is None else total + term
        pos = m.end()
        first = False
        while pos < len(src) and src[pos].isspace():
            pos += 1
    if total is None:
        raise ValueError(f"empty Witt element {text!r}")
    return total


def witt_sum(terms: Iterable[WittElement], n: int) -> WittElement:
    total = WittElement.zero(n)
    for x in terms:
        total = total + x
    return total
