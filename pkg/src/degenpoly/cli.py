"""Command-line surface: family tables, identity verification, Monte-Carlo checks.

Configuration precedence is flags > environment variables (DEGENPOLY_*) >
config file (key=value lines) > built-in defaults.  Rational numbers are
always serialized as num/den strings, never floats, so emitted JSON
round-trips exactly.

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
from typing import Sequence

from .poly import Poly, VAR_NAMES, ZERO, X, canonical_var
from .series import OrderExceeded
from . import families
from .families import FamilyId
from . import identities
from .randvar import (
    Bernoulli,
    IidSum,
    MomentProvider,
    ShefferSequence,
    Uniform01,
    UnsamplableProvider,
    Zero,
    mc_estimate,
)

SCHEMA_VERSION = "1"
ENV_PREFIX = "DEGENPOLY_"
FORMATS = ("plain", "json", "csv", "latex")

DEFAULTS = {
    "order": None,  # resolved per command
    "n": None,
    "format": "plain",
    "samples": 100_000,
    "seed": 42,
}
_DEFAULT_TABLE_ORDER = 16
_DEFAULT_TABLE_N = 10
_DEFAULT_VERIFY_N = 8


class BadParams(Exception):
    """Invalid command parameters (reported with usage text, exit code 2)."""


# -- configuration layering ----------------------------------------------------


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise BadParams(f"{path}:{lineno}: expected key=value, got {line!r}")
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise BadParams(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve(key: str, flag_value, file_values: dict[str, str], parse=str):
    if flag_value is not None:
        return parse(flag_value)
    env = os.environ.get(ENV_PREFIX + key.upper())
    if env is not None:
        return parse(env)
    if key in file_values:
        return parse(file_values[key])
    return DEFAULTS[key]


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise BadParams(f"expected an integer, got {text!r}") from exc


def _parse_format(text: str) -> str:
    if text not in FORMATS:
        raise BadParams(f"unknown format {text!r}; pick one of {', '.join(FORMATS)}")
    return text


def resolve_common(args) -> dict:
    file_values = _read_config_file(args.config) if args.config else {}
    return {
        "order": _resolve("order", args.order, file_values, _parse_int),
        "n": _resolve("n", getattr(args, "n", None), file_values, _parse_int),
        "format": _resolve("format", args.format, file_values, _parse_format),
        "samples": _resolve("samples", getattr(args, "samples", None), file_values, _parse_int),
        "seed": _resolve("seed", getattr(args, "seed", None), file_values, _parse_int),
    }


# -- shared parsing helpers -------------------------------------------------------


def _parse_poly(text: str, what: str) -> Poly:
    try:
        return Poly.parse(text)
    except ValueError as exc:
        raise BadParams(f"cannot parse {what} value {text!r}: {exc}") from exc


def _parse_rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadParams(f"{what} must be a rational like 3/4, got {text!r}") from exc


def parse_provider(spec: str) -> MomentProvider:
    """Provider specs: uniform01 | zero | ber:<p> | iid:<base spec>:<m>."""
    if spec == "uniform01":
        return Uniform01()
    if spec == "zero":
        return Zero()
    if spec.startswith("ber:"):
        value = spec[4:]
        if value == "p":
            return Bernoulli(Poly.var("p"))
        return Bernoulli(_parse_rational(value, "Bernoulli probability"))
    if spec.startswith("iid:"):
        body, _, count = spec[4:].rpartition(":")
        if not body:
            raise BadParams(f"iid spec needs iid:<base>:<m>, got {spec!r}")
        return IidSum(parse_provider(body), _parse_int(count))
    raise BadParams(f"unknown provider spec {spec!r}")


# -- rendering -------------------------------------------------------------------


def _latex_fraction(value: Fraction) -> str:
    sign = "-" if value < 0 else ""
    mag = abs(value)
    if mag.denominator == 1:
        return f"{sign}{mag.numerator}"
    return f"{sign}\\frac{{{mag.numerator}}}{{{mag.denominator}}}"


_LATEX_VARS = {"λ": "\\lambda"}


def poly_latex(p: Poly) -> str:
    """Render in canonical term order with \\frac coefficients."""
    if not p:
        return "0"
    pieces: list[str] = []
    for exps, coeff in p.sorted_terms():
        factors = []
        for i, e in enumerate(exps):
            if not e:
                continue
            name = _LATEX_VARS.get(VAR_NAMES[i], VAR_NAMES[i])
            factors.append(name if e == 1 else f"{name}^{{{e}}}")
        mono = " ".join(factors)
        mag = abs(coeff)
        if not mono:
            body = _latex_fraction(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_latex_fraction(mag)} {mono}"
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _render_rows(rows: list[dict], columns: list[str], fmt: str, meta: dict) -> str:
    if fmt == "json":
        doc = {"version": SCHEMA_VERSION, **meta, "rows": rows}
        return json.dumps(doc, ensure_ascii=False, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
        return buffer.getvalue()
    if fmt == "latex":
        lines = ["\\begin{tabular}{" + "r" * (len(columns) - 1) + "l}", "\\hline"]
        lines.append(" & ".join(columns) + " \\\\")
        lines.append("\\hline")
        for row in rows:
            cells = [str(row[c]) for c in columns[:-1]]
            cells.append(f"${row['latex']}$")
            lines.append(" & ".join(cells) + " \\\\")
        lines.append("\\hline")
        lines.append("\\end{tabular}")
        return "\n".join(lines)
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in columns]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(str(row[c]).ljust(w) for c, w in zip(columns, widths)).rstrip())
    return "\n".join(lines)


# -- table command ----------------------------------------------------------------

_SHEFFER_Y = "sheffer-y"
_FAMILY_NAMES = [f.value for f in FamilyId] + [_SHEFFER_Y]


def _family_rows(args, config) -> tuple[list[dict], dict]:
    family = args.family
    n_max = config["n"] if config["n"] is not None else _DEFAULT_TABLE_N
    if n_max < 0:
        raise BadParams("--n must be non-negative")
    order = config["order"]
    needs_series = family not in (FamilyId.FALLING_LAMBDA.value, FamilyId.STIRLING1.value)
    if needs_series:
        effective_order = order if order is not None else max(_DEFAULT_TABLE_ORDER, n_max)
        if effective_order < n_max:
            raise BadParams(
                f"truncation order {effective_order} is too small for --n {n_max}; need order >= n"
            )
    else:
        effective_order = order

    pins: dict[str, Poly] = {}
    meta_params: dict[str, str] = {}
    for flag, var in (("lam", "λ"), ("x", "x"), ("p", "p")):
        raw = getattr(args, flag)
        if raw is not None:
            pins[var] = _parse_poly(raw, var)
            meta_params[canonical_var(var)] = raw

    default_at = X if family == FamilyId.FALLING_LAMBDA.value else ZERO
    at = _parse_poly(args.x, "x") if args.x is not None else default_at

    def finish(value: Poly) -> Poly:
        return value.substitute(pins) if pins else value

    rows: list[dict] = []
    if family == FamilyId.STIRLING1.value:
        for n in range(n_max + 1):
            for k in range(n + 1):
                value = families.stirling_first(n, k)
                rows.append({"n": n, "k": k, "value": str(value), "latex": _latex_fraction(value)})
        meta = {"command": "table", "family": family, "n_max": n_max, "params": meta_params}
        return rows, meta

    if family == FamilyId.FALLING_LAMBDA.value:
        values = [families.falling_factorial(at, n) for n in range(n_max + 1)]
    elif family == FamilyId.DEG_BERNOULLI.value:
        values = families.bernoulli_polynomials(n_max, at, order=effective_order)
    elif family == FamilyId.DEG_EULER.value:
        values = families.euler_polynomials(n_max, at, order=effective_order)
    elif family == FamilyId.HIGHER_BERNOULLI.value:
        a = _parse_poly(args.a, "a") if args.a is not None else Poly.var("a")
        meta_params["a"] = str(a)
        series = families.higher_bernoulli_series(a, at, effective_order)
        values = [series.egf_coefficient(n) for n in range(n_max + 1)]
    elif family == FamilyId.HIGHER_EULER.value:
        b = _parse_poly(args.b, "b") if args.b is not None else Poly.var("b")
        meta_params["b"] = str(b)
        series = families.higher_euler_series(b, at, effective_order)
        values = [series.egf_coefficient(n) for n in range(n_max + 1)]
    elif family == FamilyId.SHEFFER_T.value:
        a = _parse_poly(args.a, "a") if args.a is not None else Poly.var("a")
        b = _parse_poly(args.b, "b") if args.b is not None else Poly.var("b")
        meta_params["a"] = str(a)
        meta_params["b"] = str(b)
        series = families.sheffer_type_series(a, b, at, effective_order)
        values = [series.egf_coefficient(n) for n in range(n_max + 1)]
    elif family == _SHEFFER_Y:
        if args.provider is None:
            raise BadParams("family sheffer-y needs --provider")
        provider = parse_provider(args.provider)
        meta_params["provider"] = args.provider
        values = ShefferSequence(provider, effective_order).polynomials(n_max, at)
    else:
        raise BadParams(f"unknown family {family!r}; pick one of {', '.join(_FAMILY_NAMES)}")

    for n, value in enumerate(values):
        value = finish(value)
        rows.append({"n": n, "value": str(value), "latex": poly_latex(value)})
    meta = {"command": "table", "family": family, "n_max": n_max, "params": meta_params}
    return rows, meta


def cmd_table(args) -> int:
    config = resolve_common(args)
    rows, meta = _family_rows(args, config)
    columns = ["n", "k", "value"] if args.family == FamilyId.STIRLING1.value else ["n", "value"]
    _emit(_render_rows(rows, columns, config["format"], meta))
    return 0


# -- verify command ----------------------------------------------------------------


def cmd_verify(args) -> int:
    config = resolve_common(args)
    max_n = config["n"] if config["n"] is not None else _DEFAULT_VERIFY_N
    order = config["order"]
    if order is not None and order < max_n + 1:
        raise BadParams(f"truncation order {order} is too small; shift identities need order >= n+1")
    injected = None
    if args.inject_fault:
        injected = identities.broken_case()
        identities.register(injected)
    try:
        ids = identities.select_ids(args.patterns if args.patterns else None)
        reports = identities.verify_all(ids, max_n=max_n, order=order)
    finally:
        if injected is not None:
            identities.unregister(injected.id)

    fmt = config["format"]
    if fmt == "json":
        cases = []
        for r in reports:
            mismatch = None
            if r.mismatch is not None:
                mismatch = {"n": r.mismatch.n, "diff": str(r.mismatch.diff)}
            cases.append({"id": r.id, "maxN": r.max_n, "equal": r.equal, "mismatch": mismatch})
        _emit(json.dumps({"version": SCHEMA_VERSION, "cases": cases}, ensure_ascii=False, indent=2))
    elif fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerow(["id", "maxN", "equal", "mismatch_n", "diff"])
        for r in reports:
            if r.mismatch is None:
                writer.writerow([r.id, r.max_n, "true", "", ""])
            else:
                writer.writerow([r.id, r.max_n, "false", r.mismatch.n, str(r.mismatch.diff)])
        _emit(buffer.getvalue())
    elif fmt == "latex":
        lines = ["\\begin{tabular}{ll}", "\\hline", "id & status \\\\", "\\hline"]
        for r in reports:
            status = "ok" if r.equal else f"mismatch at $n={r.mismatch.n}$"
            lines.append(f"\\verb|{r.id}| & {status} \\\\")
        lines += ["\\hline", "\\end{tabular}"]
        _emit("\n".join(lines))
    else:
        for r in reports:
            if r.equal:
                _emit(f"{r.id}: ok (n <= {r.max_n})")
            else:
                where = f" [{r.mismatch.instance}]" if r.mismatch.instance else ""
                _emit(f"{r.id}: MISMATCH at n={r.mismatch.n}{where} diff = {r.mismatch.diff}")
        equal_count = sum(r.equal for r in reports)
        _emit(f"{equal_count}/{len(reports)} identities verified")
    return 0 if all(r.equal for r in reports) else 1


# -- mc command --------------------------------------------------------------------


def cmd_mc(args) -> int:
    config = resolve_common(args)
    n = config["n"] if config["n"] is not None else 1
    if n < 0:
        raise BadParams("--n must be non-negative")
    if args.lam is None or args.x is None:
        raise BadParams("mc needs explicit --lambda and --x rationals")
    lam_v = _parse_rational(args.lam, "lambda")
    x_v = _parse_rational(args.x, "x")
    samples = config["samples"]
    seed = config["seed"]
    if samples < 1:
        raise BadParams("--samples must be positive")
    order = config["order"]
    if order is not None and order < n:
        raise BadParams(f"truncation order {order} is too small for n={n}")
    effective_order = max(order if order is not None else 0, n, 1)

    point = {"λ": lam_v, "x": x_v}
    meta: dict = {
        "command": "mc",
        "identity": args.identity,
        "n": n,
        "lambda": str(lam_v),
        "x": str(x_v),
        "samples": samples,
        "seed": seed,
    }
    if args.identity == "thm3.1":
        provider = parse_provider(args.provider)
        target = ShefferSequence(provider, effective_order).polynomial(n, X + Poly.var("y"))
        exact = families.falling_factorial(X, n).evaluate(point)
        meta["provider"] = provider.label()
    else:  # thm3.7
        m = args.m if args.m is not None else 2
        l = args.l if args.l is not None else 1
        if not 1 <= l <= m:
            raise BadParams("thm3.7 needs integers m >= l >= 1")
        outer = IidSum(Bernoulli(Fraction(1, 2)), m)
        provider = IidSum(Bernoulli(Fraction(1, 2)), l)
        target = ShefferSequence(outer, effective_order).polynomial(n, X + Poly.var("y"))
        exact = families.higher_euler(n, m - l, X).evaluate(point)
        meta["provider"] = provider.label()
        meta["m"] = m
        meta["l"] = l

    result = mc_estimate(target, provider, point, samples, seed)
    exact_float = float(exact)
    if result.std_error > 0:
        z = (result.estimate - exact_float) / result.std_error
    else:
        z = 0.0 if result.estimate == exact_float else float("inf")
    passed = abs(z) <= 3.0

    report = {
        **meta,
        "exact": f"{exact.numerator}/{exact.denominator}",
        "exact_float": exact_float,
        "estimate": result.estimate,
        "std_error": result.std_error,
        "z": z,
        "pass": passed,
    }
    fmt = config["format"]
    if fmt == "json":
        _emit(json.dumps({"version": SCHEMA_VERSION, **report}, ensure_ascii=False, indent=2))
    elif fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        keys = list(report)
        writer.writerow(keys)
        writer.writerow([report[k] for k in keys])
        _emit(buffer.getvalue())
    elif fmt == "latex":
        lines = ["\\begin{tabular}{ll}", "\\hline"]
        for key, value in report.items():
            lines.append(f"{key} & {value} \\\\")
        lines += ["\\hline", "\\end{tabular}"]
        _emit("\n".join(lines))
    else:
        for key, value in report.items():
            _emit(f"{key}: {value}")
    return 0 if passed else 1


# -- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degenpoly",
        description="Exact tables and identity checks for degenerate polynomial families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_mc: bool = False):
        p.add_argument("--n", type=int, default=None, help="largest index n")
        p.add_argument("--order", type=int, default=None, help="series truncation order")
        p.add_argument("--format", default=None, help="plain, json, csv or latex")
        p.add_argument("--config", default=None, help="key=value config file")
        if with_mc:
            p.add_argument("--samples", type=int, default=None)
            p.add_argument("--seed", type=int, default=None)

    table = sub.add_parser("table", help="emit a family value table")
    table.add_argument("family", choices=_FAMILY_NAMES)
    common(table)
    table.add_argument("--lambda", dest="lam", default=None, help="pin λ (rational or polynomial)")
    table.add_argument("--x", default=None, help="evaluation argument (rational, 0, or x)")
    table.add_argument("--p", default=None, help="pin p (rational)")
    table.add_argument("--a", default=None, help="first order parameter (rational or a)")
    table.add_argument("--b", default=None, help="second order parameter (rational or b)")
    table.add_argument("--provider", default=None, help="provider spec for sheffer-y")
    table.set_defaults(func=cmd_table)

    verify = sub.add_parser("verify", help="check registered identities")
    verify.add_argument("patterns", nargs="*", help="identity ids or globs (default: all)")
    common(verify)
    verify.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    verify.set_defaults(func=cmd_verify)

    mc = sub.add_parser("mc", help="Monte-Carlo spot check of an expectation identity")
    mc.add_argument("identity", choices=["thm3.1", "thm3.7"])
    common(mc, with_mc=True)
    mc.add_argument("--provider", default="uniform01", help="sampling provider (thm3.1)")
    mc.add_argument("--lambda", dest="lam", default=None, help="rational value for λ")
    mc.add_argument("--x", default=None, help="rational value for x")
    mc.add_argument("--m", type=int, default=None, help="outer copy count (thm3.7)")
    mc.add_argument("--l", type=int, default=None, help="averaged copy count (thm3.7)")
    mc.set_defaults(func=cmd_mc)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BadParams, identities.UnknownIdentity, UnsamplableProvider, OrderExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"run 'degenpoly {args.command} --help' for usage", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
