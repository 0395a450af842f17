"""Command-line interface: ``tregular {algebra, verify, tpoly, fueter, stem, classify}``.

Every command can emit JSON (``--json``); ``verify`` always does.  Exit codes
are 0 when every case passes, 1 when some case fails and 2 on usage errors.
``TREGULAR_THREADS`` caps the number of worker threads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import analysis as an
from . import checks
from .algebra import Algebra, AlgebraError, builtin, classify_basis, load_algebra
from .fueter import dbar, fueter_poly
from .polymap import slice_restrict
from .stem import recover_stem
from .subspace import Fan, HypercomplexBasis, StepList, make_fan, rational_torus_point, slice_basis, torus_point
from .tregular import equivalence_classes, t_poly

ANALYSIS_SUITES = ("cauchy", "borel", "meanvalue", "gauss", "maxmod")


class UsageError(ValueError):
    """Invalid command-line input; reported with exit code 2."""


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def threads() -> int:
    raw = os.environ.get("TREGULAR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"TREGULAR_THREADS must be an integer, got {raw!r}") from None


def load(name: str) -> Algebra:
    try:
        if Path(name).suffix == ".json" or os.sep in name:
            return load_algebra(name)
        return builtin(name)
    except (AlgebraError, OSError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None


def default_basis(alg: Algebra, kind: str = "auto") -> HypercomplexBasis:
    """Paravectors for Clifford algebras, the standard basis otherwise."""
    try:
        if kind == "paravector" or (kind == "auto" and alg.name.startswith("Cl(")):
            return HypercomplexBasis.paravectors(alg)
        return HypercomplexBasis.standard(alg)
    except (AlgebraError, ValueError, KeyError) as exc:
        raise UsageError(f"no {kind} hypercomplex basis for {alg.name}: {exc}") from None


def parse_fan(alg: Algebra, text: str, kind: str = "auto") -> Fan:
    try:
        steps = StepList.parse(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"invalid fan {text!r}: {exc}") from None
    basis = default_basis(alg, kind)
    if steps.n != basis.m:
        raise UsageError(f"fan {text!r} needs n = {basis.m} for {alg.name}")
    return make_fan(basis, steps)


def parse_k(text: str, length: int | None = None) -> tuple[int, ...]:
    try:
        k = tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise UsageError(f"invalid multi-index {text!r}") from None
    if any(v < 0 for v in k):
        raise UsageError("multi-index entries must be nonnegative")
    if length is not None and len(k) != length:
        raise UsageError(f"multi-index {text!r} must have {length} entries")
    return k


def parse_torus(fan: Fan, text: str):
    """``"1:3/5,4/5;2:0,1"``: coordinates of each ``J_h`` on its block vectors.

    An integer alone (``"7"``) selects a seeded rational torus point.
    """
    text = text.split("=", 1)[1] if "=" in text else text
    if text.strip().lstrip("-").isdigit():
        return rational_torus_point(fan, int(text))
    coords: dict[int, list[Fraction]] = {}
    try:
        for part in text.split(";"):
            idx, values = part.split(":")
            coords[int(idx)] = [Fraction(v) for v in values.split(",")]
        return torus_point(fan, [coords[h] for h in range(1, fan.tau + 1)])
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid torus point {text!r}: {exc}") from None


def dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def make_report(suite: str, cases: list[checks.Case], config: dict) -> dict:
    return {"suite": suite, "cases": [c.to_json() for c in cases], "config": config}


def report_exit_code(report: dict) -> int:
    return 1 if any(c["status"] == "fail" for c in report["cases"]) else 0


def run_suite(suite: str, config: checks.CheckConfig, workers: int = 1) -> list[checks.Case]:
    numbers = checks.SUITES[suite]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda n: checks.run_criterion(n, config), numbers))
    else:
        parts = [checks.run_criterion(n, config) for n in numbers]
    return [case for part in parts for case in part]


def analysis_cases(args, config: checks.CheckConfig) -> list[checks.Case]:
    """Single quadrature theorem on a Fueter polynomial or on a T-slice."""
    alg = load(args.algebra)
    s = config.sigmas
    if args.fan:
        fan = parse_fan(alg, args.fan)
        k = parse_k(args.k, fan.t0 + fan.tau) if args.k else (1,) * (fan.t0 + fan.tau)
        J = rational_torus_point(fan, config.seed)
        basis = slice_basis(fan, J)
        phi = slice_restrict(t_poly(fan, k).poly, J, fan)
        label = f"T_{k} on {fan.algebra.name}/{fan.steps}"
    else:
        basis = default_basis(alg)
        k = parse_k(args.k, basis.m) if args.k else (1,) * basis.m
        phi = fueter_poly(basis, k)
        label = f"P_{k} on {alg.name}"
    n = basis.m + 1
    center = [0.1] + [0.0] * (n - 1)
    inside = [0.3, -0.2] + [0.15] * (n - 2)
    outside = [1.6, 0.2] + [-0.1] * (n - 2)

    def spec(tag):
        return an.QuadratureSpec(tuple(center), 1.0, config.samples, config.seed * 1000 + tag, workers=config.workers)

    if args.suite == "cauchy":
        reports = [
            an.verify_cauchy(basis, phi, spec(1), inside, f"cauchy interior[{label}]", s),
            an.verify_cauchy(basis, phi, spec(2), outside, f"cauchy exterior[{label}]", s),
        ]
    elif args.suite == "borel":
        nonmono = an.random_polynomial(basis, 2, config.seed)
        reports = [
            an.verify_borel_pompeiu(basis, nonmono, spec(3), inside, "borel-pompeiu interior[random degree 2]", s),
            an.verify_borel_pompeiu(basis, nonmono, spec(4), outside, "borel-pompeiu exterior[random degree 2]", s),
        ]
    elif args.suite == "meanvalue":
        reports = [an.verify_mean_value(basis, phi, spec(5), f"mean value[{label}]", s)]
    elif args.suite == "gauss":
        reports = [
            an.verify_gauss(basis, an.random_polynomial(basis, 2, config.seed + 2 * i), an.random_polynomial(basis, 2, config.seed + 2 * i + 1), spec(6 + i), f"gauss[pair {i}]", s)
            for i in range(5)
        ]
    else:
        reports = [an.verify_max_modulus(basis, phi, center, 1.0, 10_000, config.seed, name=f"max modulus[{label}]")]
    return [checks._from_report(r) for r in reports]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def zero_divisor_witnesses(alg: Algebra) -> list[list[str]]:
    """Pairs ``(1 + e, 1 - e)`` for basis elements with ``e^2 = 1`` and ``(e, e)`` when ``e^2 = 0``."""
    out = []
    one = alg.one()
    for e in alg.basis_elements()[1:]:
        sq = e * e
        if sq == one:
            out.append([str(one + e), str(one - e)])
        elif sq.is_zero():
            out.append([str(e), str(e)])
    return out


def cmd_algebra(args) -> int:
    if not (args.builtin or args.algebra):
        raise UsageError("give --builtin NAME or --algebra PATH")
    alg = load(args.builtin or args.algebra)
    cls = classify_basis(alg.basis_elements())
    info = {
        "name": alg.name,
        "dimension": alg.dim,
        "labels": list(alg.labels),
        "standard_basis": {"fitted": cls.fitted, "adapted": cls.adapted, "distinguished": cls.distinguished, "signature": list(cls.signature)},
        "associative": alg.is_associative,
        "alternative": alg.check_alternative(),
        "zero_divisor_witnesses": zero_divisor_witnesses(alg),
    }
    if args.json:
        print(dump(info))
    else:
        print(f"{info['name']}  (dimension {info['dimension']})")
        print("basis:        " + " ".join(info["labels"]))
        flags = info["standard_basis"]
        print(f"fitted:       {flags['fitted']}")
        print(f"adapted:      {flags['adapted']}")
        print(f"distinguished:{flags['distinguished']}")
        print(f"signature:    {tuple(flags['signature'])}")
        print(f"associative:  {info['associative']}")
        print(f"alternative:  {info['alternative']}")
        for a, b in info["zero_divisor_witnesses"]:
            print(f"zero divisors: ({a}) * ({b}) = 0")
    return 0


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    workers = threads()
    config = checks.CheckConfig(seed=args.seed, samples=args.samples, sigmas=args.tolerance_sigma, workers=workers)
    echo = config.to_json()
    if args.suite in ANALYSIS_SUITES:
        echo.update({"algebra": args.algebra, "fan": args.fan, "k": args.k})
        cases = analysis_cases(args, config)
    elif args.suite == "classify" and args.n != 3:
        classes = equivalence_classes(args.n)
        # reference classes are only known for n = 3; other n are reported, not judged
        cases = [checks.Case(f"equivalence classes n={args.n}", "skip", checks.json_classes(classes))]
        echo["n"] = args.n
    else:
        cases = run_suite(args.suite, config, workers)
    report = make_report(args.suite, cases, echo)
    print(dump(report))
    return report_exit_code(report)


def cmd_tpoly(args) -> int:
    alg = load(args.algebra)
    fan = parse_fan(alg, args.fan)
    k = parse_k(args.k, fan.t0 + fan.tau)
    p = t_poly(fan, k).poly
    if args.json:
        print(dump({"fan": str(fan.steps), "algebra": alg.name, "k": list(k), "poly": p.to_json()}))
    else:
        print(f"T_{k} on {alg.name}/{fan.steps}:")
        print(p)
    return 0


def cmd_fueter(args) -> int:
    alg = load(args.algebra)
    basis = default_basis(alg, args.basis)
    k = parse_k(args.k, basis.m)
    p = fueter_poly(basis, k)
    residual = dbar(basis, p)
    if args.json:
        print(dump({"algebra": alg.name, "k": list(k), "poly": p.to_json(), "dbar_residual_zero": residual.is_zero()}))
    else:
        print(f"P_{k} on {alg.name}:")
        print(p)
        print(f"dbar residual: {residual}")
    return 0


def cmd_stem(args) -> int:
    alg = load(args.algebra)
    fan = parse_fan(alg, args.fan)
    k = parse_k(args.poly, fan.t0 + fan.tau)
    I = parse_torus(fan, args.at)
    table = recover_stem(t_poly(fan, k).poly, fan, I)
    print(dump({"fan": str(fan.steps), "algebra": alg.name, "k": list(k), "stem": table.to_json()}))
    return 0


def cmd_classify(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    classes = equivalence_classes(args.n)
    data = {"n": args.n, "classes": [[list(t) for t in c] for c in classes]}
    if args.list_all:
        data["step_lists"] = sorted({tuple(t) for c in classes for t in c})
    if args.json or args.list_all:
        print(dump(data))
    else:
        print(checks.json_classes(classes))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tregular", description="T-regular functions over real alternative *-algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="inspect a builtin or JSON-specified algebra")
    p.add_argument("--builtin")
    p.add_argument("--algebra", help="builtin name or path to a JSON spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("verify", help="run verification suites and print a JSON report")
    p.add_argument("suite", choices=tuple(checks.SUITES) + ANALYSIS_SUITES)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--tolerance-sigma", type=float, default=4.0)
    p.add_argument("--algebra", default="quaternion")
    p.add_argument("--fan")
    p.add_argument("--k")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--json", action="store_true", help="accepted for symmetry; verify always prints JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tpoly", help="print the polynomial T_k of a fan")
    p.add_argument("--fan", required=True)
    p.add_argument("--algebra", default="quaternion")
    p.add_argument("--k", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tpoly)

    p = sub.add_parser("fueter", help="print the Fueter polynomial P_k")
    p.add_argument("--algebra", default="quaternion")
    p.add_argument("--basis", choices=("auto", "paravector", "standard"), default="auto")
    p.add_argument("--k", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fueter)

    p = sub.add_parser("stem", help="recover the stem function of T_k")
    p.add_argument("--fan", required=True)
    p.add_argument("--algebra", default="quaternion")
    p.add_argument("--poly", required=True, help="multi-index k of T_k")
    p.add_argument("--at", default="I=0", help="torus point I: 'I=1:3/5,4/5;2:0,1' or a seed 'I=7'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stem)

    p = sub.add_parser("classify", help="equivalence classes of step lists")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--list-all", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tregular: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
