"""Structure of the sl(n+1)-modules obtained by restricting Omega_{1-a}(lambda).

Everything here is finite: subspaces are cut off at a total-degree bound and
handled by exact elimination. When ``a = -m/(n+1)`` for a non-negative
integer ``m`` the polynomials

    Y(j) = prod_i (d_i + a)(d_i + a + 1)...(d_i + a + j_i - 1),  sum j = m + 1,

generate the ideal ``W`` (a proper submodule); otherwise the degree-reduction
procedure drives any nonzero vector down to a constant.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .exact import in_span, reduce_against, row_reduce, scalar
from .modules import OmegaModule, act_witt_element
from .poly import Poly, TruncationError, coeff_vector, from_coeff_vector, space_dim
from .witt import WittElement, cartan, sl_embed, sl_generators

log = logging.getLogger(__name__)


class ObstructionError(ArithmeticError):
    """The degree-reduction operator has vanishing leading coefficient."""

    def __init__(self, degree: int, a: Fraction):
        super().__init__(
            f"degree {degree} cannot be lowered: {degree}*({degree}-1+(n+1)*a) = 0 for a={a}"
        )
        self.degree = degree
        self.a = a


class StructuralViolation(AssertionError):
    """A computed identity that should hold modulo W failed."""

    def __init__(self, generator: str, detail: str):
        super().__init__(f"{generator}: {detail}")
        self.generator = generator


# -- parameters ---------------------------------------------------------------


def a_for(n: int, m: int) -> Fraction:
    """The value ``a = -m/(n+1)`` at which Omega_{1-a} is reducible."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return Fraction(-m, n + 1)


def reducibility_index(n: int, a) -> int | None:
    """``m`` if ``a = -m/(n+1)`` with ``m`` a non-negative integer, else ``None``."""
    x = -(n + 1) * scalar(a)
    if x.denominator == 1 and x >= 0:
        return int(x)
    return None


def is_irreducible_parameter(n: int, a) -> bool:
    return reducibility_index(n, a) is None


# -- Y polynomials ------------------------------------------------------------


def y_factor(i: int, j: int, a, n: int) -> Poly:
    """``(d_i + a)(d_i + a + 1)...(d_i + a + j - 1)``; ``1`` when ``j = 0``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range for rank {n}")
    a = scalar(a)
    out = Poly.const(n)
    x = Poly.var(n, i)
    for s in range(j):
        out = out * (x + (a + s))
    return out


def y_product(j: Sequence[int], a) -> Poly:
    """``Y(j_1, ..., j_n)``, the product of the ``y_factor`` terms."""
    n = len(j)
    out = Poly.const(n)
    for i, ji in enumerate(j, start=1):
        if ji:
            out = out * y_factor(i, ji, a, n)
    return out


def compositions(total: int, parts: int) -> list[tuple]:
    """Non-negative integer vectors of length ``parts`` summing to ``total``,
    lexicographically descending."""
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def w_generators(n: int, m: int) -> list[Poly]:
    a = a_for(n, m)
    return [y_product(j, a) for j in compositions(m + 1, n)]


def w_spanning_set(n: int, m: int, degree_bound: int) -> list[Poly]:
    """All ``d^k Y(j)`` with ``|k| + m + 1 <= degree_bound``."""
    free = degree_bound - (m + 1)
    if free < 0:
        return []
    out = []
    for g in w_generators(n, m):
        for d in range(free + 1):
            for k in compositions(d, n):
                out.append(g.mul_monomial(k))
    return out


# -- subspaces ----------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceBasis:
    """Row-reduced basis of a subspace of polynomials of degree <= ``degree_bound``."""

    n: int
    degree_bound: int
    rows: tuple = field(default=())

    @classmethod
    def from_polys(cls, n: int, degree_bound: int, polys: Iterable[Poly]) -> SubspaceBasis:
        vectors = [coeff_vector(p, degree_bound) for p in polys]
        if not vectors:
            return cls(n, degree_bound, ())
        rref, r = row_reduce(vectors)
        return cls(n, degree_bound, tuple(tuple(row) for row in rref[:r]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return space_dim(self.n, self.degree_bound) - self.dim

    def polys(self) -> list[Poly]:
        return [from_coeff_vector(row, self.n, self.degree_bound) for row in self.rows]

    def contains(self, p: Poly) -> bool:
        return in_span(coeff_vector(p, self.degree_bound), self.rows)

    def normal_form(self, p: Poly) -> Poly:
        """Canonical representative of ``p`` modulo the subspace."""
        rem = reduce_against(coeff_vector(p, self.degree_bound), self.rows)
        return from_coeff_vector(rem, self.n, self.degree_bound)


def w_basis(n: int, m: int, degree_bound: int) -> SubspaceBasis:
    """Degree-filtered piece of W at ``a = -m/(n+1)``; empty if the bound is below ``m+1``."""
    return SubspaceBasis.from_polys(n, degree_bound, w_spanning_set(n, m, degree_bound))


def member_w(p: Poly, basis: SubspaceBasis) -> bool:
    if p.total_degree() > basis.degree_bound:
        raise TruncationError(
            f"degree {p.total_degree()} exceeds the basis bound {basis.degree_bound}"
        )
    return basis.contains(p)


def quotient_dim_at(n: int, m: int, degree_bound: int) -> int:
    return w_basis(n, m, degree_bound).codim


class StabilizationError(RuntimeError):
    pass


def quotient_dims(n: int, m: int, bounds: Iterable[int]) -> dict[int, int]:
    return {d: quotient_dim_at(n, m, d) for d in bounds}


def quotient_dim(n: int, m: int, degree_bound: int | None = None, extra: int = 2) -> int:
    """Codimension of W in the polynomial space, stabilised over degree bounds.

    Computed at ``degree_bound, ..., degree_bound + extra`` (default starting at
    ``m + 1``); raises :class:`StabilizationError` if the values disagree.
    """
    start = m + 1 if degree_bound is None else degree_bound
    if start < m + 1:
        raise ValueError("degree bound must be at least m+1")
    values = quotient_dims(n, m, range(start, start + extra + 1))
    if len(set(values.values())) != 1:
        raise StabilizationError(f"quotient dimension not stable: {values}")
    return values[start]


def spanning_set_rank(n: int, m: int, degree_bound: int) -> tuple[int, int]:
    """``(size, rank)`` of the spanning set ``{d^k Y(j)}`` cut at the bound."""
    spanning = w_spanning_set(n, m, degree_bound)
    return len(spanning), w_basis(n, m, degree_bound).dim


# -- closure under sl(n+1) ------------------------------------------------------


@dataclass(frozen=True)
class ClosureResult:
    basis: SubspaceBasis
    stable: bool
    rounds: int
    window_dim: int


class _Echelon:
    """Incremental echelon form over polynomials keyed by leading monomial."""

    def __init__(self):
        self.rows: dict[tuple, Poly] = {}

    def insert(self, p: Poly) -> Poly | None:
        while p:
            lead, c = p.leading()
            row = self.rows.get(lead)
            if row is None:
                p = p.scale(1 / c)
                self.rows[lead] = p
                return p
            p = p - row.scale(c)
        return None


def sl_closure(
    m: OmegaModule,
    gens: Sequence[Poly],
    degree_bound: int,
    slack: int | None = None,
    max_rounds: int | None = None,
) -> ClosureResult:
    """Submodule generated by ``gens`` under the Chevalley generators, sliced at ``degree_bound``.

    Vectors are explored up to degree ``degree_bound + slack``; images one
    degree higher are kept only to cancel against each other, so the explored
    space is exactly (span of everything produced) meet (degree <= window).
    The search is breadth-first; it is ``stable`` when no new vector appears
    in the window, and inconclusive if ``max_rounds`` is hit first.
    """
    n = m.n
    if slack is None:
        r = reducibility_index(n, m.a)
        slack = (r if r is not None else 0) + 2
    window = degree_bound + slack
    ops = [x for _, x in sl_generators(n)]
    ech = _Echelon()
    queue: deque = deque()
    for g in gens:
        if g.n != n:
            raise ValueError("generator rank mismatch")
        if g.total_degree() > window:
            raise TruncationError(f"generator of degree {g.total_degree()} exceeds window {window}")
        row = ech.insert(g)
        if row is not None:
            queue.append((row, 0))
    rounds = 0
    stable = True
    while queue:
        p, depth = queue.popleft()
        if max_rounds is not None and depth >= max_rounds:
            stable = False
            break
        rounds = max(rounds, depth + 1)
        for op in ops:
            row = ech.insert(act_witt_element(m, op, p))
            if row is not None and row.total_degree() <= window:
                queue.append((row, depth + 1))
    inside = [p for p in ech.rows.values() if p.total_degree() <= degree_bound]
    window_dim = sum(1 for p in ech.rows.values() if p.total_degree() <= window)
    basis = SubspaceBasis.from_polys(n, degree_bound, inside)
    log.debug("closure: window %d, dim %d, rounds %d", window, window_dim, rounds)
    return ClosureResult(basis, stable, rounds, window_dim)


# -- degree reduction -----------------------------------------------------------


def elimination_operator(m: OmegaModule, r: int) -> WittElement:
    """``lambda_1 (lambda_r^{-1} e_{r,1} - e_{n+1,1})``: removes one power of ``d_r``."""
    n = m.n
    l1, lr = m.lam[0], m.lam[r - 1]
    return sl_embed(r, 1, n).scale(l1 / lr) - sl_embed(n + 1, 1, n).scale(l1)


def lowering_operator(m: OmegaModule) -> WittElement:
    """The five-term operator taking a monic ``f`` in C[d1] of degree ``p`` to
    ``p(p - 1 + (n+1)a) d1^{p-1} + (lower terms)``."""
    n = m.n
    l1 = m.lam[0]
    op = (
        sl_embed(1, n + 1, n).scale(-1 / l1)
        + sl_embed(n + 1, 1, n).scale(l1)
        - (sl_embed(1, 1, n) - sl_embed(n + 1, n + 1, n))
    )
    for j in range(2, n + 1):
        lj = m.lam[j - 1]
        op = op - sl_embed(1, j, n).scale(lj / l1) + sl_embed(n + 1, j, n).scale(lj)
    return op


def lowering_coefficient(n: int, d: int, a) -> Fraction:
    return d * (d - 1 + (n + 1) * scalar(a))


def reduce_degree(m: OmegaModule, p: Poly) -> Poly:
    """A nonzero element of the submodule generated by ``p`` of lower total degree.

    First the variables ``d_n, ..., d_2`` are cleared by the elimination
    operators (each application lowers the ``d_r``-degree by one). If the
    total degree survives, the result lies in C[d1] with degree ``d`` and the
    lowering operator produces degree exactly ``d - 1``. If an elimination
    step already drops the total degree, that element is returned.
    """
    if p.is_zero():
        raise ValueError("cannot reduce the zero polynomial")
    d = p.total_degree()
    if d == 0:
        raise ValueError("constant input: nothing to reduce")
    n = m.n
    limit = max(d * d, (n - 1) * d)
    steps = 0
    f = p
    for r in range(n, 1, -1):
        op = elimination_operator(m, r)
        while f.degree_in(r) > 0:
            steps += 1
            if steps > limit:
                raise RuntimeError(f"elimination did not terminate within {limit} steps")
            f = act_witt_element(m, op, f)
            if f.total_degree() < d:
                return f
    coefficient = lowering_coefficient(n, d, m.a)
    if coefficient == 0:
        raise ObstructionError(d, m.a)
    f = f.scale(1 / f.coeff((d,) + (0,) * (n - 1)))
    g = act_witt_element(m, lowering_operator(m), f)
    if g.total_degree() != d - 1 or g.coeff((d - 1,) + (0,) * (n - 1)) != coefficient:
        raise RuntimeError(f"lowering operator misbehaved on {f}: got {g}")
    return g


@dataclass
class ReductionChain:
    steps: list[Poly]
    obstruction: ObstructionError | None = None

    @property
    def reached_constant(self) -> bool:
        return self.obstruction is None and self.steps[-1].total_degree() == 0

    @property
    def length(self) -> int:
        return len(self.steps) - 1


def reduction_chain(m: OmegaModule, p: Poly) -> ReductionChain:
    """Iterate :func:`reduce_degree` until a constant (normalised to 1) or an obstruction."""
    steps = [p]
    f = p
    while f.total_degree() > 0:
        try:
            f = reduce_degree(m, f)
        except ObstructionError as exc:
            return ReductionChain(steps, exc)
        steps.append(f)
    steps[-1] = Poly.const(m.n)
    return ReductionChain(steps)


def irreducible_witness(m: OmegaModule, p: Poly) -> bool:
    """True when the submodule generated by ``p`` is shown to contain ``1``.

    Since ``1`` generates the whole module, this certifies that ``p`` generates
    everything. ``False`` means an obstruction was met, not a proof of
    reducibility; use :func:`is_irreducible_parameter` for the exact criterion.
    """
    if p.is_zero():
        raise ValueError("zero vector generates the zero submodule")
    return reduction_chain(m, p).reached_constant


# -- weights ----------------------------------------------------------------------


def lowest_weight_check(n: int, m: int, lam: Sequence) -> tuple:
    """Weight of ``Y_m^1 = (d1+a)...(d1+a+m-1)`` in the quotient by W.

    Verifies that each Cartan element ``e_ii - e_{i+1,i+1}`` maps ``Y_m^1`` to a
    multiple of itself modulo W and that the lowering generators
    ``e_{i+1,i}``, ``e_{n+1,n}`` map it into W. Returns the eigenvalues.
    """
    a = a_for(n, m)
    module = OmegaModule.from_a(n, a, lam)
    y = y_factor(1, m, a, n)
    basis = w_basis(n, m, m + 1)
    y_nf = basis.normal_form(y)
    if y_nf.is_zero():
        raise StructuralViolation("Y_m^1", "lies in W")
    lead, c = y_nf.leading()
    weight = []
    for i in range(1, n + 1):
        image = basis.normal_form(act_witt_element(module, cartan(i, n), y))
        ratio = image.coeff(lead) / c
        if image != y_nf.scale(ratio):
            raise StructuralViolation(f"e_{i}{i}-e_{i + 1}{i + 1}", "not an eigenvector modulo W")
        weight.append(ratio)
    for i in range(1, n + 1):
        name = f"e_{i + 1},{i}"
        if not member_w(act_witt_element(module, sl_embed(i + 1, i, n), y), basis):
            raise StructuralViolation(name, "image is not in W")
    return tuple(weight)


def highest_from_lowest(weight: Sequence) -> tuple:
    """Dynkin labels of the highest weight given the lowest one (longest Weyl element)."""
    return tuple(-x for x in reversed(weight))


def weyl_dimension(labels: Sequence[int]) -> int:
    """Dimension of the irreducible sl(n+1)-module with the given Dynkin labels."""
    n = len(labels)
    num = 1
    den = 1
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            num *= sum(labels[k] + 1 for k in range(i, j))
            den *= j - i
    return num // den


# -- isomorphism invariants ---------------------------------------------------------


def extract_params(m: OmegaModule) -> tuple[Fraction, tuple]:
    """Recover ``(a, lambda)`` from the action on the generator ``1``.

    ``e_{n+1,i} 1 = lambda_i^{-1}(d_i + a)`` gives ``lambda_i`` from the ``d_i``
    coefficient, and ``a`` as ``lambda_i e_{n+1,i} 1 - e_ii 1``.
    """
    n = m.n
    one = Poly.const(n)
    lam = []
    a_values = set()
    for i in range(1, n + 1):
        q = act_witt_element(m, sl_embed(n + 1, i, n), one)
        di = act_witt_element(m, sl_embed(i, i, n), one)
        coef = q.coeff(tuple(1 if k == i - 1 else 0 for k in range(n)))
        li = 1 / coef
        rest = q.scale(li) - di
        if rest.total_degree() > 0:
            raise StructuralViolation(f"e_{n + 1},{i}", f"unexpected image {q}")
        lam.append(li)
        a_values.add(rest.constant_term())
    if len(a_values) != 1:
        raise StructuralViolation("extract_params", f"inconsistent a values {sorted(a_values)}")
    return a_values.pop(), tuple(lam)


def isomorphic(m1: OmegaModule, m2: OmegaModule, submodule: bool = False) -> bool:
    """Isomorphism of the sl(n+1)-modules Omega (or of their submodules W when
    ``submodule`` is set): equal exactly when the recovered parameters agree."""
    if submodule:
        for mod in (m1, m2):
            if reducibility_index(mod.n, mod.a) is None:
                raise ValueError(f"a={mod.a} is not of the form -m/(n+1); W is undefined")
    if m1.n != m2.n:
        return False
    return extract_params(m1) == extract_params(m2)


# -- misc helpers used by reports -------------------------------------------------------


def expected_quotient_dim(n: int, m: int) -> int:
    return comb(m + n, m)


def count_points(n: int, m: int) -> int:
    """Number of non-negative integer vectors with coordinate sum <= m."""
    return sum(1 for c in product(range(m + 1), repeat=n) if sum(c) <= m)


__all__ = [
    "ClosureResult",
    "ObstructionError",
    "ReductionChain",
    "StabilizationError",
    "StructuralViolation",
    "SubspaceBasis",
    "a_for",
    "compositions",
    "count_points",
    "elimination_operator",
    "expected_quotient_dim",
    "extract_params",
    "highest_from_lowest",
    "irreducible_witness",
    "is_irreducible_parameter",
    "isomorphic",
    "lowering_coefficient",
    "lowering_operator",
    "lowest_weight_check",
    "member_w",
    "quotient_dim",
    "quotient_dim_at",
    "quotient_dims",
    "reduce_degree",
    "reducibility_index",
    "reduction_chain",
    "sl_closure",
    "spanning_set_rank",
    "w_basis",
    "w_generators",
    "w_spanning_set",
    "weyl_dimension",
    "y_factor",
    "y_product",
]
