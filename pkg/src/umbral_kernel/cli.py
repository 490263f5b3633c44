"""Command-line entry point: ``table``, ``verify``, ``errata`` and ``export``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .harness import (
    GridConfig,
    all_ids,
    dumps,
    errata_text,
    run_verify,
    verify_document,
    verify_exit_code,
)
from .identities import SUITE_B, UsageError
from .mixed import MixedParams, cp_table
from .polynomial import Polynomial
from .rational import parse_text, to_text
from .sequences import (
    bernoulli_polys,
    cauchy1_polys,
    cauchy2_polys,
    falling_poly,
    frobenius_euler_polys,
    peters_polys,
    poly_cauchy1_polys,
    poly_cauchy2_polys,
    rising_poly,
)
from .series import SeriesError
from .umbral import UmbralError, working_order

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- families ------------------------------------------------------------------

def _cp(hat: bool):
    def build(a, n):
        params = MixedParams(a["k"], a["lambda"], a["mu"])
        return cp_table(params, working_order(n), hat)[: n + 1]
    return build


# family -> (required parameters, builder(params, n_max) -> polynomials 0..n_max)
FAMILIES: dict[str, tuple[tuple[str, ...], Callable]] = {
    "peters": (("lambda", "mu"), lambda a, n: peters_polys(a["lambda"], a["mu"], n)),
    "boole": (("lambda",), lambda a, n: peters_polys(a["lambda"], 1, n)),
    "changhee": ((), lambda a, n: peters_polys(Fraction(1), 1, n)),
    "poly-cauchy1": (("k",), lambda a, n: poly_cauchy1_polys(a["k"], n)),
    "poly-cauchy2": (("k",), lambda a, n: poly_cauchy2_polys(a["k"], n)),
    "bernoulli": (("s",), lambda a, n: bernoulli_polys(a["s"], n)),
    "frobenius-euler": (("s", "lambda"), lambda a, n: frobenius_euler_polys(a["s"], a["lambda"], n)),
    "cauchy1": (("s",), lambda a, n: cauchy1_polys(a["s"], n)),
    "cauchy2": (("s",), lambda a, n: cauchy2_polys(a["s"], n)),
    "cp": (("k", "lambda", "mu"), _cp(False)),
    "cphat": (("k", "lambda", "mu"), _cp(True)),
    "falling": ((), lambda a, n: [falling_poly(i) for i in range(n + 1)]),
    "rising": ((), lambda a, n: [rising_poly(i) for i in range(n + 1)]),
}


def family_table(family: str, params: dict, n_max: int) -> list[Polynomial]:
    """Polynomials ``0..n_max`` of a named family; ``params`` holds parsed values."""
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    required, build = FAMILIES[family]
    missing = [p for p in required if params.get(p) is None]
    if missing:
        raise UsageError(f"family {family} needs --{', --'.join(missing)}")
    if n_max < 0:
        raise UsageError("--n must be >= 0")
    if "s" in required and params["s"] < 0:
        raise UsageError("--s must be nonnegative")
    return list(build(params, n_max))


def _row(p: Polynomial, n: int) -> list[str]:
    """Coefficients of ``x^0..x^n``, zero-padded to length ``n + 1``."""
    return [to_text(p[j]) for j in range(n + 1)]


def _params_json(family: str, params: dict) -> dict:
    required = FAMILIES[family][0]
    return {k: (to_text(v) if isinstance(v, Fraction) else v)
            for k, v in sorted(params.items()) if k in required}


def render_table(family: str, params: dict, polys: Sequence[Polynomial], fmt: str) -> str:
    if fmt == "text":
        return "".join(", ".join(_row(p, n)) + "\n" for n, p in enumerate(polys))
    if fmt == "json":
        pj = _params_json(family, params)
        return dumps([{"family": family, "params": pj, "n": n, "coeffs": _row(p, n)}
                      for n, p in enumerate(polys)])
    if fmt == "csv":
        width = len(polys)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n"] + [f"x^{j}" for j in range(width)])
        for n, p in enumerate(polys):
            w.writerow([n] + _row(p, n) + [""] * (width - n - 1))
        return buf.getvalue()
    raise UsageError(f"unknown format {fmt!r}")


def parse_table_json(text: str) -> list[Polynomial]:
    """Inverse of the JSON table rendering."""
    return [Polynomial(parse_text(c) for c in row["coeffs"]) for row in json.loads(text)]


# -- argument handling -------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_text(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not an exact rational: {text!r} (use p/q)") from None


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None


def _list(text: Optional[str], conv) -> Optional[list]:
    if text is None:
        return None
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError("empty value list")
    return [conv(t.strip()) for t in items]


def _single(text: Optional[str], conv, flag: str):
    values = _list(text, conv)
    if values is None:
        return None
    if len(values) != 1:
        raise UsageError(f"{flag} takes one value for this command")
    return values[0]


def _add_param_flags(p: argparse.ArgumentParser, lists: bool) -> None:
    suffix = " (comma list)" if lists else ""
    p.add_argument("--k", help="poly-Cauchy index k" + suffix)
    p.add_argument("--lambda", dest="lam", help="lambda as p/q" + suffix)
    p.add_argument("--mu", help="integer mu" + suffix)
    p.add_argument("--s", help="order s (Bernoulli, Frobenius-Euler, Cauchy)" + suffix)


def _add_n_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", "--n-max", dest="n", help="largest index n")


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str], default: str) -> None:
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="umbral-kernel", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    t = sub.add_parser("table", help="coefficient table of one polynomial family")
    t.add_argument("--family", required=True)
    _add_param_flags(t, lists=False)
    _add_n_flag(t)
    _add_output(t, ("text", "json", "csv"), "text")

    for name, helptext in (("verify", "check identities over a parameter grid"),
                           ("errata", "written versus corrected forms of the suite B identities")):
        v = sub.add_parser(name, help=helptext)
        v.add_argument("--identities", help="comma list of identity ids")
        v.add_argument("--all", action="store_true", help="every registered identity")
        v.add_argument("--grid", help="JSON grid file, or 'default'")
        v.add_argument("--y", help="y values for addition formulas (comma list)")
        _add_param_flags(v, lists=True)
        _add_n_flag(v)
        v.add_argument("--jobs", type=int, default=1, help="worker processes")
        if name == "verify":
            _add_output(v, ("json",), "json")
            v.add_argument("--summary-only", action="store_true",
                           help="omit per-point reports from the JSON document")
        else:
            _add_output(v, ("text", "json"), "text")

    e = sub.add_parser("export", help="cp and cphat tables for every grid point")
    e.add_argument("--grid", help="JSON grid file, or 'default'")
    _add_param_flags(e, lists=True)
    _add_n_flag(e)
    e.add_argument("--format", choices=("json", "csv", "text"), default="json")
    e.add_argument("--output", required=True, help="target directory")
    return parser


def grid_from_args(args) -> GridConfig:
    if args.grid in (None, "default"):
        grid = GridConfig()
    else:
        try:
            grid = GridConfig.load(args.grid)
        except OSError as exc:
            raise UsageError(f"cannot read grid file: {exc}") from None
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise UsageError(f"bad grid file {args.grid}: {exc}") from None
    overrides = {
        "k_values": _list(args.k, _integer),
        "lambda_values": _list(args.lam, _rational),
        "mu_values": _list(args.mu, _integer),
        "s_values": _list(args.s, _integer),
        "y_values": _list(getattr(args, "y", None), _rational),
    }
    data = {name: getattr(grid, name) for name in overrides}
    data.update({k: v for k, v in overrides.items() if v is not None})
    n_max = grid.n_max if args.n is None else _integer(args.n)
    return GridConfig(n_max=n_max, **data)


def _selected_ids(args, default: Optional[Sequence[str]] = None) -> list[str]:
    if args.all and args.identities:
        raise UsageError("give --identities or --all, not both")
    if args.all:
        return all_ids()
    if args.identities:
        ids = [i.strip() for i in args.identities.split(",") if i.strip()]
        if not ids:
            raise UsageError("--identities is empty")
        return ids
    if default is not None:
        return list(default)
    raise UsageError("give --identities or --all")


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------

def cmd_table(args) -> int:
    params = {
        "k": _single(args.k, _integer, "--k"),
        "lambda": _single(args.lam, _rational, "--lambda"),
        "mu": _single(args.mu, _integer, "--mu"),
        "s": _single(args.s, _integer, "--s"),
    }
    if args.n is None:
        raise UsageError("table needs --n")
    polys = family_table(args.family, params, _integer(args.n))
    _emit(render_table(args.family, params, polys, args.format), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = _selected_ids(args)
    grid = grid_from_args(args)
    sections = run_verify(ids, grid, jobs=args.jobs)
    _emit(dumps(verify_document(sections, grid, not args.summary_only)), args.output)
    for s in sections:
        print(f"{s.ident.id}: {s.state}", file=sys.stderr)
    return verify_exit_code(sections)


def cmd_errata(args) -> int:
    ids = _selected_ids(args, default=SUITE_B)
    grid = grid_from_args(args)
    sections = run_verify(ids, grid, jobs=args.jobs)
    if args.format == "json":
        text = dumps(verify_document(sections, grid, include_reports=False))
    else:
        text = errata_text(sections, grid)
    _emit(text, args.output)
    return EXIT_OK


def _file_tag(params: MixedParams) -> str:
    lam = to_text(params.lam).replace("/", "_")
    return f"k{params.k}_lambda{lam}_mu{params.mu}"


def cmd_export(args) -> int:
    grid = grid_from_args(args)
    os.makedirs(args.output, exist_ok=True)
    ext = {"json": "json", "csv": "csv", "text": "txt"}[args.format]
    files = []
    for params in grid.params():
        for family, hat in (("cp", False), ("cphat", True)):
            values = {"k": params.k, "lambda": params.lam, "mu": params.mu}
            polys = cp_table(params, working_order(grid.n_max), hat)[: grid.n_max + 1]
            name = f"{family}_{_file_tag(params)}.{ext}"
            with open(os.path.join(args.output, name), "w", newline="") as fh:
                fh.write(render_table(family, values, polys, args.format))
            files.append({"family": family, "params": params.to_json(), "file": name})
    manifest = {"grid": grid.to_json(), "format": args.format, "files": files}
    with open(os.path.join(args.output, "manifest.json"), "w") as fh:
        fh.write(dumps(manifest))
    return EXIT_OK


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "errata": cmd_errata, "export": cmd_export}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("choose a command: " + ", ".join(COMMANDS))
        return COMMANDS[args.command](args)
    except (UsageError, UmbralError, SeriesError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
