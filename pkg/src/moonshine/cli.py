"""Command-line front end. Every subcommand prints JSON (or plain text with --plain).

Exit codes: 0 success, 1 a check came out false, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .exact_arith import format_rational

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _plain(obj: Any, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, float, str, bool)) for x in v):
                lines.append(f"{indent}{k}:")
                lines.append(_plain(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_plain(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(isinstance(x, (int, float, str, bool)) or x is None for x in obj):
            return " ".join(str(x) for x in obj)
        return ("\n" + indent + "--\n").join(_plain(x, indent) for x in obj)
    return str(obj)


def _series_out(series, var: str = "q") -> dict[str, Any]:
    out = series.to_json()
    out["text"] = series.render(var)
    return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _partition(text: str):
    from .fusion import parse_partition

    return parse_partition(text)


# subcommands ------------------------------------------------------------------


def cmd_jq(args) -> tuple[int, Any]:
    from .modular_forms import jay

    return EXIT_OK, _series_out(jay(args.order))


def cmd_eta(args) -> tuple[int, Any]:
    from .modular_forms import eta

    if args.method == "both":
        a = eta(args.order, "theta_sum")
        b = eta(args.order, "discriminant")
        out = _series_out(a)
        out["methods_agree"] = a == b
        return (EXIT_OK if a == b else EXIT_FAILED), out
    return EXIT_OK, _series_out(eta(args.order, args.method))


def cmd_jcube(args) -> tuple[int, Any]:
    from .modular_forms import j_cuberoot

    return EXIT_OK, _series_out(j_cuberoot(args.order))


def cmd_theta(args) -> tuple[int, Any]:
    from .lattice_theta import Lattice, parse_gram, theta_series

    if args.gram:
        lattice = parse_gram(_read(args.gram))
    else:
        lattice = Lattice.identity(args.dim)
    series = theta_series(lattice, args.order).rescale(2)
    out = _series_out(series, "x")
    out["variable"] = "x = q^(1/2), exponent = x.x"
    return EXIT_OK, out


def cmd_psi(args) -> tuple[int, Any]:
    from .lattice_theta import CosetLabel, coset_psi

    return EXIT_OK, _series_out(coset_psi(CosetLabel(args.n, args.m), args.order))


def cmd_transforms(args) -> tuple[int, Any]:
    from .lattice_theta import CosetLabel, s_transform_residual, t_transform_check

    points = [complex(p.replace(" ", "").replace("i", "j")) for p in args.tau]
    t_checks = {str(m): t_transform_check(CosetLabel(args.n, m), args.order) for m in range(args.n)}
    residuals = {str(p): s_transform_residual(args.n, p, order=max(args.order, 64)) for p in points}
    ok = all(t_checks.values()) and all(r < args.tol for r in residuals.values())
    return (EXIT_OK if ok else EXIT_FAILED), {
        "n": args.n,
        "T": t_checks,
        "S_residual": residuals,
        "tol": args.tol,
        "ok": ok,
    }


def _load_moddata(args):
    from .modular_data import ModularData, builtin

    if args.file:
        return ModularData.loads(_read(args.file))
    if args.builtin:
        return builtin(args.builtin)
    raise InputError("give --file or --builtin")


def cmd_moddata_validate(args) -> tuple[int, Any]:
    from .modular_data import validate_axioms

    report = validate_axioms(_load_moddata(args), tol=args.tol)
    out = report.to_json()
    if not out["notes"]:
        del out["notes"]
    return (EXIT_OK if report.ok else EXIT_FAILED), out


def cmd_moddata_fuse(args) -> tuple[int, Any]:
    from .fusion import FusionRing, validate_fusion_ring
    from .modular_data import VerlindeError, verlinde

    d = _load_moddata(args)
    try:
        n = verlinde(d, tol=args.tol)
    except VerlindeError as exc:
        return EXIT_FAILED, {"ok": False, "error": str(exc)}
    report = validate_fusion_ring(FusionRing.from_tensor(n, d.identity, d.labels))
    return (EXIT_OK if report.ok else EXIT_FAILED), {
        "labels": list(d.labels),
        "N": n,
        "ring": report.to_json(),
    }


def cmd_lr(args) -> tuple[int, Any]:
    from .fusion import lr_coeff
    from .fusion.lr import lr_product

    alpha, beta = _partition(args.alpha), _partition(args.beta)
    if args.gamma is not None:
        return EXIT_OK, {"coeff": lr_coeff(alpha, beta, _partition(args.gamma))}
    rows = args.rows or (len(alpha) + len(beta))
    product = lr_product(alpha, beta, rows)
    return EXIT_OK, {"product": {",".join(map(str, g)) or "()": c for g, c in sorted(product.items())}}


def cmd_fusion(args) -> tuple[int, Any]:
    from .fusion import affine_fusion, fusion_monotonicity_check, sl_tensor_coeff

    lam, mu, nu = (_partition(x) for x in (args.lam, args.mu, args.nu))
    if args.kmax is None:
        return EXIT_OK, {"coeff": affine_fusion(args.n, args.k, lam, mu, nu)}
    levels = range(args.k, args.kmax + 1)
    by_level = {k: affine_fusion(args.n, k, lam, mu, nu) for k in levels}
    monotone = fusion_monotonicity_check(args.n, args.kmax, lam, mu, nu)
    return (EXIT_OK if monotone else EXIT_FAILED), {
        "by_level": by_level,
        "tensor": sl_tensor_coeff(args.n, lam, mu, nu),
        "monotone": monotone,
    }


def cmd_aw(args) -> tuple[int, Any]:
    from .fusion import aw_crosscheck

    report = aw_crosscheck(
        args.alpha, args.beta, args.gamma, k_max=args.kmax, iters=args.iters, tol=args.tol, seed=args.seed
    )
    return (EXIT_OK if report.verdict == "CONSISTENT" else EXIT_FAILED), report.to_json()


def cmd_knot_count(args) -> tuple[int, Any]:
    from .knots import count_colourings, load_knot

    return EXIT_OK, {"count": count_colourings(load_knot(args.pd))}


def cmd_knot_homs(args) -> tuple[int, Any]:
    from .knots import ColourSet, count_surjective_flag, load_group, load_knot

    d = load_knot(args.pd)
    g = load_group(args.group)
    if args.colours:
        colours = ColourSet(g, tuple(int(x) for x in args.colours.split(",")))
    else:
        colours = ColourSet.whole(g)
    total, multi = count_surjective_flag(d, g, colours)
    return EXIT_OK, {"count": total, "multicoloured": multi}


def cmd_moonshine_report(args) -> tuple[int, Any]:
    from .moonshine_checks import load_dims, mckay_report

    monster = load_dims(args.monster_dims) if args.monster_dims else None
    e8 = load_dims(args.e8_dims) if args.e8_dims else None
    report = mckay_report(monster, e8)
    return (EXIT_OK if report.ok else EXIT_FAILED), report.to_json()


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--plain", action="store_true", help="plain text instead of JSON")
    # repeated after the subcommand; SUPPRESS keeps it from resetting the top-level flag
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--plain", action="store_true", default=argparse.SUPPRESS, help="plain text instead of JSON")

    parser = argparse.ArgumentParser(prog="moonshine", description=__doc__, parents=[top])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable, help: str, order: int | None = None, tol: float | None = None):
        p = sub.add_parser(name, help=help, parents=[common])
        if order is not None:
            p.add_argument("--order", type=int, default=order)
        if tol is not None:
            p.add_argument("--tol", type=float, default=tol)
        p.set_defaults(func=func)
        return p

    add("jq", cmd_jq, "q-expansion of j", order=4)
    p = add("eta", cmd_eta, "Dedekind eta", order=10)
    p.add_argument("--method", choices=("theta_sum", "discriminant", "both"), default="theta_sum")
    add("jcube", cmd_jcube, "q-expansion of j^(1/3)", order=3)

    p = add("theta", cmd_theta, "theta series of a lattice", order=10)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--gram", help="Gram matrix file")
    g.add_argument("--dim", type=int, help="use the standard lattice Z^dim")

    p = add("psi", cmd_psi, "coset function psi_m", order=10)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("transforms", cmd_transforms, "T and S checks for psi_m", order=20, tol=1e-8)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", nargs="+", default=["1i", "0.2+1.1i"])

    for name, func, help in (
        ("moddata-validate", cmd_moddata_validate, "check M1-M4"),
        ("moddata-fuse", cmd_moddata_fuse, "Verlinde fusion ring"),
    ):
        p = add(name, func, help, tol=1e-6)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--file", help="modular data JSON file")
        g.add_argument("--builtin", help="'s3' or 'cyclic:<n>'")

    p = add("lr", cmd_lr, "Littlewood-Richardson coefficient or product")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--gamma")
    p.add_argument("--rows", type=int, help="row bound for the full product")

    p = add("fusion", cmd_fusion, "sl_n level-k fusion coefficient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--kmax", type=int, help="also scan levels k..kmax and check monotonicity")

    p = add("aw", cmd_aw, "unitary search against affine fusion", tol=1e-6)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)

    p = add("knot-count", cmd_knot_count, "number of 3-colourings")
    p.add_argument("--pd", required=True, help="PD file or bundled diagram name")

    p = add("knot-homs", cmd_knot_homs, "homomorphisms into a finite group")
    p.add_argument("--pd", required=True)
    p.add_argument("--group", default="s3", help="CSV file or bundled group name")
    p.add_argument("--colours", help="comma list of allowed element indices")

    p = add("moonshine-report", cmd_moonshine_report, "Monster and E8 decompositions")
    p.add_argument("--monster-dims")
    p.add_argument("--e8-dims")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, result = args.func(args)
    except (InputError, ValueError, FileNotFoundError, KeyError) as exc:
        print(f"moonshine {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = _jsonable(result)
    if args.plain:
        print(_plain(result))
    else:
        print(json.dumps(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
