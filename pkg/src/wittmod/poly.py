"""Sparse polynomials in the commuting variables d1, ..., dn over Q.

The variables stand for the Euler operators ``t_i d/dt_i``; a polynomial is a
vector of the tensor-product module where ``t^j`` acts by the shift
``d_i -> d_i - j_i`` (up to a scalar).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping, Sequence

from .exact import DimensionError, format_scalar, scalar


class TruncationError(ValueError):
    """A polynomial does not fit under the requested degree bound."""


def grlex_key(exps: tuple) -> tuple:
    """Sort key for graded-lex order with d1 > d2 > ... > dn (larger key = higher)."""
    return (sum(exps), exps)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple, Fraction] | None = None):
        if n < 1:
            raise ValueError("rank must be positive")
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != n:
                    raise DimensionError(f"exponent {exps} has wrong length for rank {n}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = scalar(c)
                if c:
                    clean[tuple(exps)] = c
        self.n = n
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Poly:
        return cls(n)

    @classmethod
    def const(cls, n: int, c=1) -> Poly:
        return cls(n, {(0,) * n: scalar(c)})

    @classmethod
    def var(cls, n: int, i: int) -> Poly:
        """The variable ``d_i`` (``i`` is 1-based, as in the printed syntax)."""
        if not 1 <= i <= n:
            raise IndexError(f"variable d{i} out of range for rank {n}")
        return cls(n, {tuple(1 if k == i - 1 else 0 for k in range(n)): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Poly:
        return cls(len(exps), {tuple(exps): scalar(c)})

    @classmethod
    def _raw(cls, n: int, terms: dict) -> Poly:
        # terms already canonical: right length, no zero coefficients
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple, Fraction]]:
        """Terms in canonical graded-lex order, leading term first."""
        for exps in sorted(self._terms, key=grlex_key, reverse=True):
            yield exps, self._terms[exps]

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.n)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int | float:
        """Maximal exponent sum; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return float("-inf")
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int) -> int | float:
        """Maximal exponent of ``d_i`` (1-based); ``-inf`` for zero."""
        if not 1 <= i <= self.n:
            raise IndexError(f"variable d{i} out of range for rank {self.n}")
        if not self._terms:
            return float("-inf")
        return max(e[i - 1] for e in self._terms)

    def leading(self) -> tuple[tuple, Fraction]:
        """Leading ``(exponent, coefficient)`` in graded-lex order."""
        lead = max(self._terms, key=grlex_key)
        return lead, self._terms[lead]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- ring operations ----------------------------------------------------

    def _check(self, other: Poly) -> None:
        if self.n != other.n:
            raise DimensionError(f"rank mismatch: {self.n} vs {other.n}")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, str)):
            return Poly.const(self.n, other)
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def scale(self, c) -> Poly:
        c = scalar(c)
        if not c:
            return Poly._raw(self.n, {})
        return Poly._raw(self.n, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.n, out)

    def __rmul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, exps: Sequence[int]) -> Poly:
        exps = tuple(exps)
        if len(exps) != self.n:
            raise DimensionError("monomial length does not match rank")
        return Poly._raw(
            self.n,
            {tuple(x + y for x, y in zip(e, exps)): c for e, c in self._terms.items()},
        )

    # -- shift --------------------------------------------------------------

    def shift(self, j: Sequence[int]) -> Poly:
        """Substitute ``d_i -> d_i - j_i`` and expand."""
        j = tuple(j)
        if len(j) != self.n:
            raise DimensionError(f"shift of length {len(j)} on rank {self.n}")
        if not any(j):
            return self
        out: dict = {}
        for exps, c in self._terms.items():
            # integer expansion of prod_i (d_i - j_i)^{e_i}, scaled by c once
            partial = {(): 1}
            for e, s in zip(exps, j):
                row = _shift_row(e, s)
                partial = {
                    prefix + (k,): pc * bc for prefix, pc in partial.items() for k, bc in row
                }
            for key, v in partial.items():
                s = out.get(key, 0) + c * v
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Poly._raw(self.n, out)

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.n}, {format_poly(self)!r})"


@lru_cache(maxsize=4096)
def _shift_row(e: int, s: int) -> tuple:
    """Nonzero terms ``(k, coeff)`` of ``(x - s)^e``."""
    if s == 0:
        return ((e, 1),)
    return tuple(
        (k, comb(e, k) * (-s) ** (e - k)) for k in range(e + 1)
    )


def total_degree(p: Poly):
    return p.total_degree()


def degree_in(p: Poly, i: int):
    return p.degree_in(i)


def shift(p: Poly, j: Sequence[int]) -> Poly:
    return p.shift(j)


# -- coefficient vectors ----------------------------------------------------


@lru_cache(maxsize=256)
def monomials(n: int, bound: int) -> tuple:
    """All exponent tuples of total degree <= bound, in coefficient-vector order.

    Degrees ascend; inside one degree the order is lexicographic with
    ``d1 > d2 > ... > dn`` (so ``d1^2, d1*d2, d2^2`` for n=2).
    """
    out = []

    def rec(prefix: tuple, remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    for d in range(bound + 1):
        rec((), d, n)
    return tuple(out)


@lru_cache(maxsize=256)
def _monomial_index(n: int, bound: int) -> dict:
    return {e: i for i, e in enumerate(monomials(n, bound))}


def space_dim(n: int, bound: int) -> int:
    return comb(n + bound, n)


def coeff_vector(p: Poly, degree_bound: int) -> list[Fraction]:
    index = _monomial_index(p.n, degree_bound)
    row = [Fraction(0)] * len(index)
    for exps, c in p._terms.items():
        pos = index.get(exps)
        if pos is None:
            raise TruncationError(
                f"term of degree {sum(exps)} exceeds degree bound {degree_bound}"
            )
        row[pos] = c
    return row


def from_coeff_vector(row: Sequence, n: int, degree_bound: int) -> Poly:
    mons = monomials(n, degree_bound)
    if len(row) != len(mons):
        raise DimensionError(f"expected {len(mons)} coefficients, got {len(row)}")
    return Poly(n, {e: c for e, c in zip(mons, row) if c})


# -- text syntax ------------------------------------------------------------


def format_poly(p: Poly) -> str:
    """Canonical text, e.g. ``(3/2)*d1^2*d2 - d3 + 1``."""
    if p.is_zero():
        return "0"
    pieces = []
    for exps, c in p.items():
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        factors = []
        for i, e in enumerate(exps, start=1):
            if e == 1:
                factors.append(f"d{i}")
            elif e > 1:
                factors.append(f"d{i}^{e}")
        if not factors:
            body = format_scalar(mag)
        elif mag == 1:
            body = "*".join(factors)
        elif mag.denominator == 1:
            body = f"{mag.numerator}*" + "*".join(factors)
        else:
            body = f"({format_scalar(mag)})*" + "*".join(factors)
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(d)(\d+)|(\S))")


def parse_poly(text: str, n: int) -> Poly:
    """Parse the printed syntax; accepts ``+ - * ^``, parentheses and ``p/q``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        num, dvar, dindex, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif dvar is not None:
            tokens.append(("var", int(dindex)))
        else:
            tokens.append(("sym", sym))
        pos = m.end()
    return _Parser(tokens, n, text).parse()


class _Parser:
    def __init__(self, tokens: list, n: int, source: str):
        self.tokens = tokens
        self.i = 0
        self.n = n
        self.source = source

    def error(self, what: str) -> ValueError:
        return ValueError(f"cannot parse polynomial {self.source!r}: {what}")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise self.error("empty input")
        p = self.expr()
        if self.peek() is not None:
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok == ("sym", "-"):
            self.take()
            sign = -1
        elif tok == ("sym", "+"):
            self.take()
        p = self.term().scale(sign)
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok == ("sym", "*"):
                self.take()
                p = p * self.factor()
            elif tok == ("sym", "/"):
                self.take()
                d = self.factor()
                if d.total_degree() != 0:
                    raise self.error("division by a non-constant")
                p = p.scale(1 / d.constant_term())
            else:
                return p

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise self.error("exponent must be a non-negative integer")
            base = base ** val
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(self.n, val)
        if kind == "var":
            if not 1 <= val <= self.n:
                raise self.error(f"variable d{val} out of range for rank {self.n}")
            return Poly.var(self.n, val)
        if val == "(":
            inner = self.expr()
            if self.take() != ("sym", ")"):
                raise self.error("missing ')'")
            return inner
        if val == "-":
            return -self.factor()
        raise self.error(f"unexpected token {val!r}")


def poly(text: str, n: int) -> Poly:
    return parse_poly(text, n)


__all__ = [
    "Poly",
    "TruncationError",
    "coeff_vector",
    "degree_in",
    "format_poly",
    "from_coeff_vector",
    "monomials",
    "parse_poly",
    "poly",
    "shift",
    "space_dim",
    "total_degree",
]
