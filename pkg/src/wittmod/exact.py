"""Exact scalars, integer multi-indices and dense linear algebra over Q.

Scalars are :class:`fractions.Fraction`; vectors and multi-indices are plain
tuples. Matrices are lists of rows.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Scalar = Fraction
CVec = tuple  # tuple[Fraction, ...]
MultiIndex = tuple  # tuple[int, ...]
Matrix = list  # list[list[Fraction]]

ScalarLike = Union[Fraction, int, str]


class DimensionError(ValueError):
    """Operands have incompatible lengths or ranks."""


def scalar(x: ScalarLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floating-point input is not exact; pass 'p/q' instead")
    return Fraction(x)


_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``."""
    match = _SCALAR_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational number: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def cvec(values: Iterable[ScalarLike]) -> tuple:
    return tuple(scalar(v) for v in values)


def multi_index(values: Iterable[int]) -> tuple:
    out = []
    for v in values:
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError(f"multi-index entry must be an integer, got {v}")
            v = v.numerator
        out.append(int(v))
    return tuple(out)


def _split_tuple(text: str) -> list[str]:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if not text.strip():
        return []
    return [part.strip() for part in text.split(",")]


def parse_cvec(text: str) -> tuple:
    """Parse ``"(1/2,-3)"`` (parentheses optional) into a vector of scalars."""
    return tuple(parse_scalar(part) for part in _split_tuple(text))


def parse_multi_index(text: str) -> tuple:
    parts = _split_tuple(text)
    try:
        return tuple(int(part) for part in parts)
    except ValueError:
        raise ValueError(f"not an integer multi-index: {text!r}") from None


def format_cvec(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_scalar(scalar(x)) for x in v) + ")"


def format_multi_index(k: Sequence[int]) -> str:
    return "(" + ",".join(str(int(x)) for x in k) + ")"


def unit(n: int, i: int) -> tuple:
    """The ``i``-th standard basis multi-index of length ``n`` (0-based)."""
    return tuple(1 if j == i else 0 for j in range(n))


def add_index(a: Sequence[int], b: Sequence[int]) -> tuple:
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def neg_index(a: Sequence[int]) -> tuple:
    return tuple(-x for x in a)


def pairing(u: Sequence, k: Sequence) -> Fraction:
    """The standard bilinear form ``(u|k) = sum u_i k_i``."""
    if len(u) != len(k):
        raise DimensionError(f"pairing of lengths {len(u)} and {len(k)}")
    total = Fraction(0)
    for x, y in zip(u, k):
        if x and y:
            total += x * y
    return total


# -- dense linear algebra ---------------------------------------------------


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row to a primitive integer row (same span)."""
    den = 1
    for x in row:
        if x:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        if v:
            g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def row_reduce(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], int]:
    """Reduced row-echelon form over Q and the rank.

    Forward elimination runs on primitive integer rows (cross-multiplication,
    content removed after each step); pivots are chosen as the first row, in
    input order, with a nonzero entry in the current column. Back-substitution
    and normalisation happen in Fractions. Zero rows are kept at the bottom so
    the output has the input's shape.
    """
    rows = [_integer_row([scalar(x) for x in r]) for r in m]
    if not rows:
        return [], 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise DimensionError("matrix is not rectangular")

    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == len(rows):
            break
        pivot_row = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for i in range(rank + 1, len(rows)):
            c = rows[i][col]
            if c:
                r = rows[i]
                rows[i] = _primitive([p * r[j] - c * prow[j] for j in range(ncols)])
        pivots.append(col)
        rank += 1

    out = [[Fraction(v) for v in r] for r in rows]
    for i in range(rank - 1, -1, -1):
        col = pivots[i]
        inv = 1 / out[i][col]
        out[i] = [x * inv for x in out[i]]
        for k in range(i):
            c = out[k][col]
            if c:
                out[k] = [x - c * y for x, y in zip(out[k], out[i])]
    for i in range(rank, len(out)):
        out[i] = [Fraction(0)] * ncols
    return out, rank


def rank(m: Sequence[Sequence]) -> int:
    return row_reduce(m)[1]


def pivot_columns(rref: Sequence[Sequence[Fraction]]) -> list[int]:
    cols = []
    for row in rref:
        col = next((j for j, x in enumerate(row) if x), None)
        if col is None:
            break
        cols.append(col)
    return cols


def reduce_against(v: Sequence, basis: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Normal form of ``v`` modulo the row span of an RREF ``basis``.

    The result is zero in every pivot column, so it is a canonical
    representative of the coset ``v + span(basis)``.
    """
    out = [scalar(x) for x in v]
    for row in basis:
        col = next((j for j, x in enumerate(row) if x), None)
        if col is None:
            break
        if len(row) != len(out):
            raise DimensionError(f"width mismatch: {len(out)} vs {len(row)}")
        c = out[col]
        if c:
            out = [x - c * y for x, y in zip(out, row)]
    return out


def in_span(v: Sequence, basis: Sequence[Sequence[Fraction]]) -> bool:
    """Whether ``v`` lies in the row span of ``basis`` (which must be in RREF)."""
    if basis and len(basis[0]) != len(v):
        raise DimensionError(f"width mismatch: {len(v)} vs {len(basis[0])}")
    return not any(reduce_against(v, basis))
