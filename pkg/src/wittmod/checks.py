"""Randomised and exhaustive verification suites shared by the CLI and the tests.

Each randomised suite draws case ``i`` from ``Sampler(case_seed(seed, i))`` so
any failing case can be replayed from its seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .exact import unit
from .modules import (
    Module,
    OmegaModule,
    TruncationOverflow,
    act_witt_element,
    act_witt_omega,
    act_weyl,
    delta_check,
    module_axiom_holds,
    torus_via_witt,
    twist_consistency,
)
from .poly import Poly, space_dim
from .sampling import Sampler, case_seed
from .structure import (
    ObstructionError,
    SubspaceBasis,
    a_for,
    compositions,
    member_w,
    reduce_degree,
    reduction_chain,
    sl_closure,
    w_basis,
    w_generators,
    y_product,
)
from .witt import is_homomorphism_witness, sl_generators


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": self.ok,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "failures": self.failures,
        }


def _run(name: str, samples: int, seed: int, case: Callable[[Sampler], tuple[bool | None, dict]]) -> SuiteResult:
    result = SuiteResult(name)
    for i in range(samples):
        cs = case_seed(seed, i)
        verdict, info = case(Sampler(cs))
        if verdict is None:
            result.skipped += 1
        elif verdict:
            result.passed += 1
        else:
            result.failed += 1
            result.failures.append({"case_seed": cs, **info})
    return result


def module_axiom_suite(m: Module, samples: int, seed: int) -> SuiteResult:
    """``[x,y] v = x(y v) - y(x v)``; weight-module cases leaving the box are skipped."""

    def case(s: Sampler):
        x, y = s.witt_element(m.n), s.witt_element(m.n)
        v = s.poly(m.n) if isinstance(m, OmegaModule) else s.weight_vec(m.n)
        info = {"x": str(x), "y": str(y), "v": str(v) if isinstance(v, Poly) else repr(v)}
        try:
            return module_axiom_holds(m, x, y, v), info
        except TruncationOverflow:
            return None, info

    return _run("module_axiom", samples, seed, case)


def sigma_suite(n: int, b, samples: int, seed: int) -> SuiteResult:
    def case(s: Sampler):
        x, y = s.witt_element(n), s.witt_element(n)
        return is_homomorphism_witness(b, x, y), {"x": str(x), "y": str(y)}

    return _run("sigma_homomorphism", samples, seed, case)


def twist_suite(m: OmegaModule, samples: int, seed: int) -> SuiteResult:
    def case(s: Sampler):
        u, k, p = s.cvec(m.n), s.multi_index(m.n), s.poly(m.n)
        return twist_consistency(m, u, k, p), {"u": str(u), "k": str(k), "p": str(p)}

    return _run("twist_consistency", samples, seed, case)


def delta_suite(m: OmegaModule, samples: int, seed: int) -> SuiteResult:
    def case(s: Sampler):
        u, v = s.cvec(m.n), s.cvec(m.n)
        i, k = s.multi_index(m.n), s.multi_index(m.n)
        p = s.poly(m.n)
        info = {"u": str(u), "v": str(v), "i": str(i), "k": str(k), "p": str(p)}
        return delta_check(m, u, v, i, k, p), info

    return _run("delta_identity", samples, seed, case)


def torus_recovery_suite(m: OmegaModule, samples: int, seed: int) -> SuiteResult:
    """For ``b`` not in {0,1}: ``theta^{-1}`` times the quadratic combination acts as ``t^k``."""

    def case(s: Sampler):
        i = s.multi_index(m.n, nonzero=True)
        while True:
            u, v = s.cvec(m.n), s.cvec(m.n)
            if sum(a * b for a, b in zip(u, i)) and sum(a * b for a, b in zip(v, i)):
                break
        k, p = s.multi_index(m.n), s.poly(m.n)
        info = {"u": str(u), "v": str(v), "i": str(i), "k": str(k), "p": str(p)}
        return torus_via_witt(m, u, v, i, k, p) == act_weyl(m, k, (0,) * m.n, p), info

    return _run("torus_recovery", samples, seed, case)


def constant_term_suite(m: OmegaModule, samples: int, seed: int) -> SuiteResult:
    """At ``b = 1`` every derivation maps into the span of the ``d_i``-multiples."""

    def case(s: Sampler):
        u, j, p = s.cvec(m.n), s.multi_index(m.n), s.poly(m.n)
        out = act_witt_omega(m, u, j, p)
        return out.constant_term() == 0, {"u": str(u), "j": str(j), "p": str(p)}

    return _run("constant_term_vanishes", samples, seed, case)


def image_codimension(m: OmegaModule, degree_bound: int, radius: int = 1) -> tuple[int, bool]:
    """Codimension of the span of ``D(e_i, j) d^k`` (``|j_i| <= radius``) inside
    degree ``<= degree_bound``, and whether all those images lack a constant term.

    Only images of degree at most the bound are collected.
    """
    n = m.n
    images = []
    for d in range(degree_bound):
        for k in compositions(d, n):
            mon = Poly.monomial(k)
            for i in range(n):
                for j in product(range(-radius, radius + 1), repeat=n):
                    q = act_witt_omega(m, unit(n, i), j, mon)
                    if q.total_degree() <= degree_bound:
                        images.append(q)
    basis = SubspaceBasis.from_polys(n, degree_bound, images)
    constant_free = all(q.constant_term() == 0 for q in images)
    return space_dim(n, degree_bound) - basis.dim, constant_free


def witness_suite(m: OmegaModule, samples: int, seed: int, max_degree: int = 5) -> SuiteResult:
    """Random polynomials of degree 1..``max_degree`` are driven to the constant 1."""

    def case(s: Sampler):
        p = s.poly(m.n, max_degree=max_degree, min_degree=1)
        chain = reduction_chain(m, p)
        info = {"p": str(p), "chain_length": chain.length}
        if chain.obstruction is not None:
            info["obstruction_degree"] = chain.obstruction.degree
        return chain.reached_constant and chain.steps[-1] == Poly.const(m.n), info

    return _run("witness_reduction", samples, seed, case)


def y_obstruction_degrees(n: int, m: int, lam: tuple) -> list[int | None]:
    """Obstruction degree met by the reduction chain of every generator ``Y(j)``."""
    module = OmegaModule.from_a(n, a_for(n, m), lam)
    out = []
    for y in w_generators(n, m):
        chain = reduction_chain(module, y)
        out.append(chain.obstruction.degree if chain.obstruction else None)
    return out


def closure_violations(n: int, m: int, degree_bound: int, lam: tuple) -> list[str]:
    """Generators mapping some basis vector of W (at the bound) outside W (at bound+1)."""
    module = OmegaModule.from_a(n, a_for(n, m), lam)
    basis = w_basis(n, m, degree_bound)
    bigger = w_basis(n, m, degree_bound + 1)
    bad = []
    for name, op in sl_generators(n):
        for p in basis.polys():
            if not member_w(act_witt_element(module, op, p), bigger):
                bad.append(f"{name} on {p}")
    return bad


def reduction_is_sound(m: OmegaModule, p: Poly, degree_bound: int) -> bool:
    """The output of one reduction step lies in the submodule generated by ``p``."""
    try:
        q = reduce_degree(m, p)
    except ObstructionError:
        return True
    closure = sl_closure(m, [p], degree_bound)
    return closure.stable and closure.basis.contains(q)


def top_generator(n: int, m: int) -> Poly:
    return y_product((m + 1,) + (0,) * (n - 1), a_for(n, m))


__all__ = [
    "SuiteResult",
    "closure_violations",
    "constant_term_suite",
    "delta_suite",
    "image_codimension",
    "module_axiom_suite",
    "reduction_is_sound",
    "sigma_suite",
    "top_generator",
    "torus_recovery_suite",
    "twist_suite",
    "witness_suite",
    "y_obstruction_degrees",
]
