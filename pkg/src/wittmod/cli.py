"""Command-line driver: every subcommand builds a JSON report and exits 0 only
if all checks in it passed."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import checks
from .exact import format_scalar, parse_cvec, parse_scalar
from .modules import OmegaModule, WeightModule
from .poly import Poly, parse_poly
from .sampling import Sampler, case_seed
from .structure import (
    ObstructionError,
    a_for,
    expected_quotient_dim,
    extract_params,
    highest_from_lowest,
    is_irreducible_parameter,
    isomorphic,
    lowest_weight_check,
    member_w,
    quotient_dims,
    reducibility_index,
    reduction_chain,
    sl_closure,
    w_basis,
    weyl_dimension,
)

COMMANDS = ("check-axioms", "analyze", "iso", "member", "reduce", "quotient-dim")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 2
    b: Optional[Fraction] = None
    a: Optional[Fraction] = None
    lam: Optional[tuple] = None
    alpha: Optional[tuple] = None
    m: Optional[int] = None
    degree_bound: Optional[int] = None
    slack: Optional[int] = None
    samples: int = 200
    seed: int = 0
    output_path: Optional[str] = None
    family: str = "omega"
    box: int = 6
    b2: Optional[Fraction] = None
    a2: Optional[Fraction] = None
    lam2: Optional[tuple] = None
    submodule: bool = False
    polynomial: Optional[str] = None
    emit_json: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.n < 1:
            raise UsageError("--n must be positive")
        if self.a is not None and self.b is not None and self.a != 1 - self.b:
            raise UsageError("give only one of --a / --b (a = 1 - b)")
        if self.a2 is not None and self.b2 is not None and self.a2 != 1 - self.b2:
            raise UsageError("give only one of --a2 / --b2")
        for name, vec in (("--lambda", self.lam), ("--lambda2", self.lam2), ("--alpha", self.alpha)):
            if vec is not None and len(vec) != self.n:
                raise UsageError(f"{name} needs {self.n} entries")
        for name, vec in (("--lambda", self.lam), ("--lambda2", self.lam2)):
            if vec is not None and any(x == 0 for x in vec):
                raise UsageError(f"{name} entries must be nonzero")
        if self.samples < 0:
            raise UsageError("--samples must be non-negative")

    # parameter resolution ------------------------------------------------

    def resolved_a(self) -> Fraction:
        if self.a is not None:
            return self.a
        if self.b is not None:
            return 1 - self.b
        if self.m is not None:
            return a_for(self.n, self.m)
        raise UsageError("one of --a, --b or --m is required")

    def lambdas(self) -> tuple:
        return self.lam if self.lam is not None else tuple(Fraction(i + 2) for i in range(self.n))

    def omega(self) -> OmegaModule:
        return OmegaModule.from_a(self.n, self.resolved_a(), self.lambdas())

    def omega2(self) -> OmegaModule:
        if self.a2 is not None:
            a2 = self.a2
        elif self.b2 is not None:
            a2 = 1 - self.b2
        else:
            a2 = self.resolved_a()
        return OmegaModule.from_a(self.n, a2, self.lam2 if self.lam2 is not None else self.lambdas())

    def reducible_m(self) -> Optional[int]:
        if self.m is not None and self.a is None and self.b is None:
            return self.m
        return reducibility_index(self.n, self.resolved_a())


def _check(name: str, ok: bool, **extra) -> dict:
    return {"name": name, "pass": bool(ok), **extra}


def _finish(report: dict) -> dict:
    report["checks"] = sorted(report["checks"], key=lambda c: c["name"])
    report["pass"] = all(c["pass"] for c in report["checks"])
    return report


def _fmt(xs: Sequence[Fraction]) -> list[str]:
    return [format_scalar(Fraction(x)) for x in xs]


# -- commands ---------------------------------------------------------------------


def cmd_check_axioms(cfg: RunConfig) -> dict:
    """Randomised module-axiom suite (plus twist and quadratic identities for Omega)."""
    if cfg.family == "weight":
        b = cfg.b if cfg.b is not None else (1 - cfg.a if cfg.a is not None else Fraction(0))
        alpha = cfg.alpha if cfg.alpha is not None else tuple(Fraction(0) for _ in range(cfg.n))
        module = WeightModule(cfg.n, b, alpha, cfg.box)
        suites = [checks.module_axiom_suite(module, cfg.samples, cfg.seed)]
    else:
        module = cfg.omega()
        suites = [
            checks.module_axiom_suite(module, cfg.samples, cfg.seed),
            checks.twist_suite(module, cfg.samples, cfg.seed),
            checks.delta_suite(module, cfg.samples, cfg.seed),
            checks.sigma_suite(cfg.n, module.b, cfg.samples, cfg.seed),
        ]
        if module.b not in (0, 1):
            suites.append(checks.torus_recovery_suite(module, cfg.samples, cfg.seed))
        if module.b == 1:
            suites.append(checks.constant_term_suite(module, cfg.samples, cfg.seed))
    report = {
        "command": "check-axioms",
        "module": module.to_json(),
        "samples": cfg.samples,
        "seed": cfg.seed,
        "skipped": sum(s.skipped for s in suites),
        "checks": [s.to_json() for s in suites],
    }
    return _finish(report)


def cmd_analyze(cfg: RunConfig) -> dict:
    """Irreducibility verdict; for reducible parameters, the structure of W and the quotient."""
    module = cfg.omega()
    n, a = cfg.n, module.a
    m = reducibility_index(n, a)
    report: dict = {
        "command": "analyze",
        "n": n,
        "a": format_scalar(a),
        "lambda": _fmt(module.lam),
        "m": m,
        "verdict": "irreducible" if is_irreducible_parameter(n, a) else "reducible",
        "quotient_dim": None,
        "expected": None,
        "lowest_weight": None,
        "closure_stable": None,
        "checks": [],
    }
    samples = cfg.samples
    if m is None:
        bound = cfg.degree_bound if cfg.degree_bound is not None else 3
        wit = checks.witness_suite(module, samples, cfg.seed)
        report["witness_chain_lengths"] = _chain_lengths(module, samples, cfg.seed)
        report["checks"].append(wit.to_json())
        closure = sl_closure(module, [Poly.const(n)], bound, cfg.slack)
        report["closure_stable"] = closure.stable
        report["checks"].append(
            _check("cyclic_on_one", closure.stable and closure.basis.codim == 0, degree_bound=bound)
        )
        return _finish(report)

    bound = cfg.degree_bound if cfg.degree_bound is not None else m + 2
    if bound < m + 1:
        raise UsageError(f"--degree-bound must be at least m+1 = {m + 1}")
    dims = quotient_dims(n, m, range(bound, bound + 3))
    expected = expected_quotient_dim(n, m)
    qdim = dims[bound]
    report["quotient_dim"] = qdim
    report["expected"] = expected
    report["quotient_dims_by_bound"] = {str(k): v for k, v in dims.items()}
    report["checks"].append(_check("quotient_dim_stable", len(set(dims.values())) == 1))
    report["checks"].append(_check("quotient_dim_matches", qdim == expected))

    try:
        weight = lowest_weight_check(n, m, module.lam)
        report["lowest_weight"] = _fmt(weight)
        highest = highest_from_lowest(weight)
        report["highest_weight"] = _fmt(highest)
        report["checks"].append(
            _check("lowest_weight", weight == (Fraction(-m),) + (Fraction(0),) * (n - 1))
        )
        report["checks"].append(
            _check("weyl_dimension", weyl_dimension([int(x) for x in highest]) == qdim)
        )
    except AssertionError as exc:
        report["checks"].append(_check("lowest_weight", False, error=str(exc)))

    bad = checks.closure_violations(n, m, bound, module.lam)
    report["checks"].append(_check("w_closed", not bad, violations=bad[:5]))

    closure = sl_closure(module, [checks.top_generator(n, m)], bound, cfg.slack)
    report["closure_stable"] = closure.stable
    report["checks"].append(_check("closure_stable", closure.stable))
    report["checks"].append(
        _check("generated_by_top_y", closure.basis == w_basis(n, m, bound))
    )
    degrees = checks.y_obstruction_degrees(n, m, module.lam)
    report["obstruction_degrees"] = degrees
    report["checks"].append(_check("obstruction_at_m_plus_1", all(d == m + 1 for d in degrees)))
    return _finish(report)


def _chain_lengths(module: OmegaModule, samples: int, seed: int) -> list[int]:
    out = []
    for i in range(samples):
        p = Sampler(case_seed(seed, i)).poly(module.n, max_degree=5, min_degree=1)
        out.append(reduction_chain(module, p).length)
    return out


def cmd_iso(cfg: RunConfig) -> dict:
    """Compare two parameter sets through the invariants recovered from module actions."""
    m1, m2 = cfg.omega(), cfg.omega2()
    entries = []
    roundtrip = True
    for mod in (m1, m2):
        a, lam = extract_params(mod)
        roundtrip &= a == mod.a and lam == mod.lam
        entries.append(
            {
                "module": mod.to_json(),
                "extracted": {"a": format_scalar(a), "lambda": _fmt(lam)},
            }
        )
    if cfg.submodule:
        for mod in (m1, m2):
            if reducibility_index(mod.n, mod.a) is None:
                raise UsageError(f"a={format_scalar(mod.a)} is not -m/(n+1); W is undefined")
    verdict = isomorphic(m1, m2, submodule=cfg.submodule)
    report = {
        "command": "iso",
        "family": "W" if cfg.submodule else "omega",
        "first": entries[0],
        "second": entries[1],
        "isomorphic": verdict,
        "checks": [_check("extract_params_roundtrip", roundtrip)],
    }
    return _finish(report)


def _parse_poly_arg(cfg: RunConfig) -> Poly:
    if cfg.polynomial is None:
        raise UsageError("a polynomial argument is required")
    try:
        return parse_poly(cfg.polynomial, cfg.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_member(cfg: RunConfig) -> dict:
    """Membership of a polynomial in W at ``a = -m/(n+1)``."""
    m = cfg.reducible_m()
    if m is None:
        raise UsageError("membership in W needs a = -m/(n+1); pass --m")
    p = _parse_poly_arg(cfg)
    deg = p.total_degree() if p else 0
    bound = cfg.degree_bound if cfg.degree_bound is not None else max(m + 1, deg)
    fits = deg <= bound
    report = {
        "command": "member",
        "n": cfg.n,
        "m": m,
        "a": format_scalar(a_for(cfg.n, m)),
        "degree_bound": bound,
        "polynomial": str(p),
        "member": member_w(p, w_basis(cfg.n, m, bound)) if fits else None,
        "checks": [_check("degree_within_bound", fits)],
    }
    return _finish(report)


def cmd_reduce(cfg: RunConfig) -> dict:
    """Run the degree-reduction chain from a polynomial."""
    module = cfg.omega()
    p = _parse_poly_arg(cfg)
    if p.is_zero():
        raise UsageError("cannot reduce the zero polynomial")
    chain = reduction_chain(module, p)
    degrees = [q.total_degree() for q in chain.steps]
    obstruction = None
    if chain.obstruction is not None:
        obstruction = {"degree": chain.obstruction.degree, "a": format_scalar(chain.obstruction.a)}
    report = {
        "command": "reduce",
        "module": module.to_json(),
        "a": format_scalar(module.a),
        "polynomial": str(p),
        "steps": [str(q) for q in chain.steps],
        "degrees": degrees,
        "obstruction": obstruction,
        "reached_constant": chain.reached_constant,
        "irreducible_parameter": is_irreducible_parameter(module.n, module.a),
        "checks": [
            _check("degrees_decrease", all(x > y for x, y in zip(degrees, degrees[1:]))),
        ],
    }
    return _finish(report)


def cmd_quotient_dim(cfg: RunConfig) -> dict:
    if cfg.m is None:
        m = cfg.reducible_m() if (cfg.a is not None or cfg.b is not None) else None
        if m is None:
            raise UsageError("--m (or a reducible --a) is required")
    else:
        m = cfg.m
    bound = cfg.degree_bound if cfg.degree_bound is not None else m + 1
    if bound < m + 1:
        raise UsageError(f"--degree-bound must be at least m+1 = {m + 1}")
    dims = quotient_dims(cfg.n, m, range(bound, bound + 3))
    expected = expected_quotient_dim(cfg.n, m)
    labels = [0] * (cfg.n - 1) + [m]
    report = {
        "command": "quotient-dim",
        "n": cfg.n,
        "m": m,
        "a": format_scalar(a_for(cfg.n, m)),
        "quotient_dims_by_bound": {str(k): v for k, v in dims.items()},
        "quotient_dim": dims[bound],
        "expected": expected,
        "checks": [
            _check("stable", len(set(dims.values())) == 1),
            _check("matches_binomial", dims[bound] == expected),
            _check("matches_weyl_dimension", dims[bound] == weyl_dimension(labels)),
        ],
    }
    return _finish(report)


HANDLERS = {
    "check-axioms": cmd_check_axioms,
    "analyze": cmd_analyze,
    "iso": cmd_iso,
    "member": cmd_member,
    "reduce": cmd_reduce,
    "quotient-dim": cmd_quotient_dim,
}


SUMMARY_KEYS = (
    "verdict",
    "m",
    "quotient_dim",
    "expected",
    "lowest_weight",
    "isomorphic",
    "member",
    "steps",
    "obstruction",
)


# -- argument parsing -------------------------------------------------------------------


def _scalar_arg(text: str) -> Fraction:
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _vec_arg(text: str) -> tuple:
    try:
        return parse_cvec(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="rank (sl(n+1))")
    common.add_argument("--a", type=_scalar_arg, help="parameter a = 1 - b")
    common.add_argument("--b", type=_scalar_arg, help="twist parameter b")
    common.add_argument("--lambda", dest="lam", type=_vec_arg, help='e.g. "(2,3)"')
    common.add_argument("--alpha", type=_vec_arg, help="weight-family alpha")
    common.add_argument("--m", type=int, help="reducibility index, a = -m/(n+1)")
    common.add_argument("--degree-bound", type=int)
    common.add_argument("--slack", type=int)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", dest="output_path", help="write the JSON report here")
    common.add_argument("--json", dest="emit_json", action="store_true", help="print the JSON report")

    parser = argparse.ArgumentParser(
        prog="wittmod", description="Exact checks for twisted Witt-algebra and sl(n+1) modules."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check-axioms", parents=[common], help="randomised module-axiom suite")
    p.add_argument("--family", choices=("omega", "weight"), default="omega")
    p.add_argument("--N", dest="box", type=int, default=6, help="weight-family box radius")
    sub.add_parser("analyze", parents=[common], help="irreducibility and submodule structure")
    p = sub.add_parser("iso", parents=[common], help="isomorphism of two parameter sets")
    p.add_argument("--a2", type=_scalar_arg)
    p.add_argument("--b2", type=_scalar_arg)
    p.add_argument("--lambda2", dest="lam2", type=_vec_arg)
    p.add_argument("--submodule", action="store_true", help="compare the submodules W instead")
    p = sub.add_parser("member", parents=[common], help="membership in W")
    p.add_argument("polynomial")
    p = sub.add_parser("reduce", parents=[common], help="degree-reduction chain")
    p.add_argument("polynomial")
    sub.add_parser("quotient-dim", parents=[common], help="dimension of the quotient by W")
    return parser


_NEGATIVE_VALUE = re.compile(r"^-[\d(.]")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--a -1/3`` into ``--a=-1/3``; argparse would read ``-1/3`` as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok.startswith("--")
            and "=" not in tok
            and i + 1 < len(argv)
            and _NEGATIVE_VALUE.match(argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_join_negative_values(argv))
    return RunConfig(**vars(args))


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
        report = HANDLERS[cfg.command](cfg)
    except (UsageError, ObstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if cfg.emit_json:
        sys.stdout.write(text)
    else:
        for key in SUMMARY_KEYS:
            if report.get(key) is not None:
                print(f"{key}: {report[key]}")
        for c in report["checks"]:
            print(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}")
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
