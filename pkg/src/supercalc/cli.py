"""Command-line entry point: expression evaluation, integration commands
and the invariant-suite runner.

Exit codes: 0 all checks pass, 1 check failures, 2 usage or input error.
Reports are byte-reproducible for a fixed seed; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import suites
from .berezin import Domain, MixedFunction, Normalization, berezin_integral, mixed_integral
from .exprlang import Context, ExprError, evaluate
from .grassmann import from_json_terms, format_supernumber, Supernumber
from .polynomials import from_json_poly
from .scalars import CRat


def _common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=0, help="random seed for suites")
    parser.add_argument("--trials", type=int, default=None, help="trial count override")


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="supercalc",
        description="Exact Z2-graded calculus: Grassmann arithmetic, Berezin "
        "integration, graded exterior calculus, Fock spaces and Clifford "
        "representations.",
    )
    sub = root.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate an expression")
    p_eval.add_argument("expression")
    p_eval.add_argument("--nu", type=int, default=0, help="Grassmann generator count")
    p_eval.add_argument("--n", type=int, default=0, help="bosonic coordinate count (form mode)")
    p_eval.add_argument(
        "--let",
        action="append",
        default=[],
        metavar="NAME=FILE",
        help="bind NAME to the supernumber in FILE (JSON term map)",
    )
    _common_flags(p_eval)

    p_ber = sub.add_parser("berezin", help="Berezin-integrate a supernumber file")
    p_ber.add_argument("--nu", type=int, required=True)
    p_ber.add_argument("--expr", required=True, help="JSON term map file")
    p_ber.add_argument(
        "--normalization",
        choices=["one", "sqrt2pii", "invsqrt2pii"],
        default="one",
    )
    _common_flags(p_ber)

    p_mixed = sub.add_parser("mixed", help="integrate a mixed function over a box")
    p_mixed.add_argument("--n", type=int, required=True)
    p_mixed.add_argument("--nu", type=int, required=True)
    p_mixed.add_argument("--expr", required=True, help="JSON mixed-function file")
    p_mixed.add_argument("--domain", required=True, help="bounds like '0,1' or '0,1;-1,1'")
    p_mixed.add_argument("--quad", type=float, default=1e-10, help="quadrature tolerance")
    _common_flags(p_mixed)

    p_check = sub.add_parser("check", help="run invariant suites")
    p_check.add_argument(
        "suite",
        choices=sorted(suites.SUITES) + ["all"],
    )
    p_check.add_argument("--n", type=int, default=None)
    p_check.add_argument("--nu", type=int, default=None)
    p_check.add_argument("--dim", type=int, default=None)
    p_check.add_argument("--metric", default=None, help="identity|minkowski|FILE")
    p_check.add_argument("--nb", type=int, default=2)
    p_check.add_argument("--nf", type=int, default=2)
    p_check.add_argument("--max-occ", type=int, default=3)
    _common_flags(p_check)

    for name, help_text in (
        ("fock", "Fock-space checks"),
        ("clifford", "Clifford-representation checks"),
        ("complexes", "exterior-calculus checks"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("action", choices=["check"])
        if name == "fock":
            p.add_argument("--nb", type=int, default=2)
            p.add_argument("--nf", type=int, default=2)
            p.add_argument("--max-occ", type=int, default=3)
        elif name == "clifford":
            p.add_argument("--dim", type=int, default=4)
            p.add_argument("--metric", default=None, help="identity|minkowski|FILE")
        else:
            p.add_argument("--n", type=int, default=2)
            p.add_argument("--nu", type=int, default=2)
        _common_flags(p)

    return root


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_domain(text: str, n: int, tol: float) -> Domain:
    chunks = [c for c in text.split(";") if c.strip()]
    if len(chunks) != n:
        raise ValueError(f"domain has {len(chunks)} intervals, expected {n}")
    bounds = []
    for chunk in chunks:
        lo, hi = chunk.split(",")
        bounds.append((Fraction(lo.strip()), Fraction(hi.strip())))
    return Domain(tuple(bounds), tol=tol)


_BUILTIN_INTEGRANDS = {
    "gaussian": lambda x: math.exp(-x * x),
}


def _load_mixed(data: dict, n: int, nu: int) -> MixedFunction:
    n = int(data.get("n", n))
    nu = int(data.get("nu", nu))
    terms = {}
    from .grassmann import mask_of

    for key, value in data["terms"].items():
        indices = tuple(int(tok) for tok in key.split(",")) if key else ()
        mask = mask_of(indices, nu)
        if isinstance(value, str):
            if value not in _BUILTIN_INTEGRANDS:
                raise ValueError(
                    f"unknown builtin integrand {value!r}; known: {sorted(_BUILTIN_INTEGRANDS)}"
                )
            terms[mask] = _BUILTIN_INTEGRANDS[value]
        else:
            terms[mask] = from_json_poly(value, n)
    return MixedFunction(n, nu, terms)


def cmd_eval(args) -> int:
    bindings = {}
    for item in args.let:
        name, _, path = item.partition("=")
        if not path:
            raise ValueError(f"--let needs NAME=FILE, got {item!r}")
        data = _load_json(path)
        terms = data["terms"] if isinstance(data, dict) and "terms" in data else data
        bindings[name] = from_json_terms(terms, args.nu)
    ctx = Context(args.n, args.nu, bindings)
    value = evaluate(args.expression, ctx)
    if isinstance(value, Supernumber):
        text = format_supernumber(value)
    else:
        text = repr(value)
    if args.json:
        print(json.dumps({"result": text}, sort_keys=True))
    else:
        print(text)
    return 0


def cmd_berezin(args) -> int:
    data = _load_json(args.expr)
    terms = data["terms"] if isinstance(data, dict) and "terms" in data else data
    z = from_json_terms(terms, args.nu)
    norm = {
        "one": Normalization.ONE,
        "sqrt2pii": Normalization.SQRT_2PI_I,
        "invsqrt2pii": Normalization.INV_SQRT_2PI_I,
    }[args.normalization]
    value = berezin_integral(z, norm)
    if norm is Normalization.ONE:
        text = str(value)
    else:
        power = {1: "1/2", -1: "-1/2"}[value.half_power]
        text = f"{value.coeff} * (2*pi*i)^({power})"
    print(json.dumps({"result": text}, sort_keys=True) if args.json else text)
    return 0


def cmd_mixed(args) -> int:
    f = _load_mixed(_load_json(args.expr), args.n, args.nu)
    domain = _parse_domain(args.domain, f.n, args.quad)
    value = mixed_integral(f, domain)
    text = str(value) if isinstance(value, CRat) else repr(value)
    print(json.dumps({"result": text}, sort_keys=True) if args.json else text)
    return 0


def _metric_rows(spec: str | None):
    if spec in (None, "identity", "minkowski"):
        return spec
    data = _load_json(spec)
    return [[Fraction(str(v)) for v in row] for row in data]


def cmd_check(args, suite: str) -> int:
    trials = args.trials
    reports = []
    if suite == "all":
        reports = suites.run_all(trials=trials or 50, seed=args.seed)
    elif suite == "grassmann":
        reports = [suites.run_grassmann(trials=trials or 200, seed=args.seed)]
    elif suite == "berezin":
        reports = [suites.run_berezin(trials=trials or 200, seed=args.seed)]
    elif suite == "linalg":
        reports = [suites.run_linalg(trials=trials or 100, seed=args.seed)]
    elif suite == "complexes":
        mixes = None
        n = getattr(args, "n", None)
        nu = getattr(args, "nu", None)
        if n is not None and nu is not None:
            mixes = ((n, nu),)
        kwargs = {"mixes": mixes} if mixes else {}
        reports = [
            suites.run_complexes(
                trials=trials or 50, seed=args.seed, table_cases=12, **kwargs
            )
        ]
    elif suite == "metric":
        reports = [suites.run_metric(trials=trials or 5, seed=args.seed)]
    elif suite == "fock":
        reports = [
            suites.run_fock(
                trials=trials or 30,
                seed=args.seed,
                n_bose=getattr(args, "nb", 2),
                n_fermi=getattr(args, "nf", 2),
                max_occupation=getattr(args, "max_occ", 3),
            )
        ]
    elif suite == "clifford":
        dim = getattr(args, "dim", None)
        dims = (dim,) if dim else (1, 2, 3, 4)
        reports = [
            suites.run_clifford(
                trials=trials or 5,
                seed=args.seed,
                dims=dims,
                metric_spec=_metric_rows(getattr(args, "metric", None)),
            )
        ]
    else:
        raise ValueError(f"unknown suite {suite!r}")

    if args.json:
        print(json.dumps([r.to_json_dict() for r in reports], sort_keys=True))
    else:
        for r in reports:
            print(r.to_text())
    elapsed = sum(r.elapsed for r in reports)
    print(f"[elapsed {elapsed:.2f}s]", file=sys.stderr)
    return 0 if all(r.ok for r in reports) else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "berezin":
            return cmd_berezin(args)
        if args.command == "mixed":
            return cmd_mixed(args)
        if args.command == "check":
            return cmd_check(args, args.suite)
        if args.command in ("fock", "clifford", "complexes"):
            return cmd_check(args, args.command)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
