"""Command-line front end: sequence tables, series inspection, identity
audits, and congruence scans.

Data goes to stdout, diagnostics to stderr. Output is deterministic for a
given invocation: canonical row ordering, normalized rational rendering, no
timestamps, and a version string only in the text-format header comment.

Exit codes (stable, for CI use):
    0   success / every audited point HOLDS
    1   at least one audited point FAILS
    2   no failures, but some points UNDEFINED
    64  usage, parse, or parameter-validation error
"""

from __future__ import annotations

import argparse
import ast
import json
import sys
from fractions import Fraction

from . import __version__
from .audit import (
    DEFAULT_GRID,
    GridSpec,
    exit_code,
    report_to_dict,
    run_identity,
)
from .exact import (
    SingularParameterError,
    factorial,
    format_rational,
    is_prime,
    parse_rational,
    rational_to_json,
)
from .sequences import (
    Family,
    Params,
    explicit_sequence,
    oracle_sequence,
)
from .series import KERNEL_NAMES, egf_coeff, kernel
from .stirling import FIRST_UNSIGNED, SECOND, triangle_rows

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_UNDEFINED = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# identity tokens accepted on the command line, in canonical run order
_IDENTITY_TOKENS = (
    "thm1",
    "thm2",
    "thm3",
    "thm4",
    "thm5",
    "thm6",
    "eq9",
    "eq10",
    "eq11",
    "eq12",
    "thm8",
    "thm9",
    "thm10",
    "thm11",
    "stirling-ortho",
)

_TOKEN_TO_IDENTITIES = {
    **{t: (t.upper(),) for t in _IDENTITY_TOKENS if t not in ("thm8", "stirling-ortho")},
    "thm8": ("THM8_C1", "THM8_C2", "THM8_B"),
    "stirling-ortho": ("STIRLING_ORTHO",),
}


def canonical_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog="hlpoly", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hlpoly {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    subparsers: dict[str, _Parser] = {}

    def add(name: str, help_text: str) -> _Parser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key/value JSON file mirroring flags")
        subparsers[name] = p
        return p

    p = add("table", "sequence-family tables or Stirling triangles")
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--stirling", choices=["1", "2"])
    p.add_argument("--k", default="1", help="integer exponent (default 1)")
    p.add_argument("--alpha", default="1", help="rational, e.g. 1/2 (default 1)")
    p.add_argument("--a", default="1", help="rational (default 1)")
    p.add_argument("--n-max", default="8", help="last index (default 8)")
    p.add_argument("--max-n", default="10", help="triangle size (default 10)")
    p.add_argument(
        "--method",
        choices=["formula", "oracle", "both"],
        default="formula",
        help="Stirling-sum path, generating-function path, or both (default formula)",
    )
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = add("series", "coefficients of a named kernel series")
    p.add_argument("--kernel", choices=list(KERNEL_NAMES), required=True)
    p.add_argument("--order", default=None, help="truncation order (required)")
    p.add_argument(
        "--egf", action="store_true", help="print n!*c_n instead of c_n"
    )
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = add("audit", "check catalogued identities over a parameter grid")
    p.add_argument(
        "--identity",
        choices=list(_IDENTITY_TOKENS) + ["all"],
        required=True,
    )
    p.add_argument("--n-max", default="12", help="largest sequence index (default 12)")
    p.add_argument(
        "--k-values",
        default="-2,-1,0,1,2,3",
        help="comma list; write --k-values=-2,... for negatives (default -2..3)",
    )
    p.add_argument(
        "--pair",
        action="append",
        help="alpha,a pair, repeatable (default six standard pairs)",
    )
    p.add_argument("--primes", default="3,5,7,11", help="comma list of primes")
    p.add_argument(
        "--multipliers",
        default="1,2,3",
        help="congruence checks use index multiplier*prime (default 1,2,3)",
    )
    p.add_argument(
        "--stirling-n-max",
        default="20",
        help="triangle size for stirling-ortho (default 20)",
    )
    p.add_argument(
        "--variant-prefactor",
        default=None,
        help="replacement prefactor over n, m for eq9..eq12, e.g. '(-1)**(m+n)/fact(m)'",
    )
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("congruence-scan", "prime-period congruence scan across families")
    p.add_argument(
        "--family", choices=[f.value for f in Family] + ["all"], default="all"
    )
    p.add_argument("--k-values", default="1,2,3", help="comma list of k >= 1")
    p.add_argument("--pair", action="append", help="alpha,a pair, repeatable")
    p.add_argument("--primes", default="3,5,7,11", help="comma list of primes")
    p.add_argument("--multipliers", default="1,2,3", help="comma list of n >= 1")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")

    return parser, subparsers


def _apply_config(parser: _Parser, subparsers, argv, args):
    """Merge --config file values as defaults, then re-parse so that flags
    given on the command line still win."""
    if not getattr(args, "config", None):
        return args
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            config = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}")
    if not isinstance(config, dict):
        raise UsageError("config file must hold a flat JSON object")
    command_parser = subparsers[args.command]
    valid = {action.dest for action in command_parser._actions}
    defaults = {}
    for key, value in config.items():
        dest = key.replace("-", "_")
        if dest not in valid:
            raise UsageError(f"unknown config key: {key!r}")
        if dest == "pair" and isinstance(value, str):
            value = [value]
        defaults[dest] = value
    command_parser.set_defaults(**defaults)
    return parser.parse_args(argv)


# ---------------------------------------------------------------------------
# value parsing helpers (accept both flag strings and config-file values)
# ---------------------------------------------------------------------------


def _as_int(value, label: str) -> int:
    try:
        return int(str(value).strip())
    except ValueError:
        raise UsageError(f"{label} must be an integer, got {value!r}")


def _as_nonneg_int(value, label: str) -> int:
    parsed = _as_int(value, label)
    if parsed < 0:
        raise UsageError(f"{label} must be >= 0, got {parsed}")
    return parsed


def _as_rational(value, label: str) -> Fraction:
    try:
        return parse_rational(str(value).strip())
    except ValueError:
        raise UsageError(f"{label} must be a rational like 3 or 1/2, got {value!r}")


def _as_int_list(value, label: str) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        items = list(value)
    else:
        items = [part for part in str(value).split(",") if part.strip()]
    if not items:
        raise UsageError(f"{label} must not be empty")
    return tuple(_as_int(item, label) for item in items)


def _as_primes(value) -> tuple[int, ...]:
    primes = _as_int_list(value, "primes")
    for p in primes:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
    return primes


def _as_pairs(value) -> tuple[tuple[Fraction, Fraction], ...]:
    pairs = []
    for item in value:
        parts = str(item).split(",")
        if len(parts) != 2:
            raise UsageError(f"pair must look like ALPHA,A, got {item!r}")
        alpha = _as_rational(parts[0], "alpha")
        a = _as_rational(parts[1], "a")
        if alpha == 0:
            raise UsageError("alpha must be nonzero")
        pairs.append((alpha, a))
    return tuple(pairs)


def _validated_params(k, alpha, a, n_max: int, reach: int = 0) -> Params:
    params = Params(_as_int(k, "k"), _as_rational(alpha, "alpha"), _as_rational(a, "a"))
    m = params.singular_index(n_max + reach)
    if m is not None:
        raise UsageError(
            f"singular parameter: alpha*m + a = 0 at m = {m} "
            f"(alpha = {format_rational(params.alpha)}, a = {format_rational(params.a)})"
        )
    return params


# ---------------------------------------------------------------------------
# variant prefactor expressions
# ---------------------------------------------------------------------------

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_prefactor(expression: str):
    """Compile a prefactor expression over the names n and m.

    Allowed: integer literals, n, m, fact(...), + - * / ** and parentheses.
    Evaluates to an exact rational for each (n, m).
    """
    try:
        tree = ast.parse(expression, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"bad prefactor expression: {exc.msg}")

    def check(node) -> None:
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            check(node.operand)
        elif isinstance(node, ast.Constant) and isinstance(node.value, int):
            pass
        elif isinstance(node, ast.Name) and node.id in ("n", "m"):
            pass
        elif (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id == "fact"
            and len(node.args) == 1
            and not node.keywords
        ):
            check(node.args[0])
        else:
            raise UsageError(
                "prefactor may only use integers, n, m, fact(...), + - * / ** "
                "and parentheses"
            )

    check(tree)

    def evaluate(node, env):
        if isinstance(node, ast.Expression):
            return evaluate(node.body, env)
        if isinstance(node, ast.Constant):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return Fraction(env[node.id])
        if isinstance(node, ast.UnaryOp):
            operand = evaluate(node.operand, env)
            return operand if isinstance(node.op, ast.UAdd) else -operand
        if isinstance(node, ast.Call):
            arg = evaluate(node.args[0], env)
            if arg.denominator != 1 or arg < 0:
                raise UsageError("fact(...) requires a nonnegative integer")
            return Fraction(factorial(int(arg)))
        left = evaluate(node.left, env)
        right = evaluate(node.right, env)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right == 0:
                raise UsageError("prefactor divides by zero")
            return left / right
        if right.denominator != 1:
            raise UsageError("** requires an integer exponent")
        if left == 0 and right < 0:
            raise UsageError("prefactor raises 0 to a negative power")
        return left ** int(right)

    def prefactor(n: int, m: int) -> Fraction:
        return evaluate(tree, {"n": n, "m": m})

    return prefactor


# ---------------------------------------------------------------------------
# rendering helpers
# ---------------------------------------------------------------------------


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _aligned_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines)


def _report_rows(report) -> tuple[list[str], list[list[str]]]:
    point_keys = list(report.verdicts[0].point.keys()) if report.verdicts else []
    with_hyp = any(v.hypothesis_ok is not None for v in report.verdicts)
    header = point_keys + ["status", "lhs", "rhs", "reason"]
    if with_hyp:
        header += ["hypothesis_ok", "hypothesis_note"]
    rows = []
    for v in report.verdicts:
        row = [_cell(v.point[key]) for key in point_keys]
        row += [v.status, _cell(v.lhs), _cell(v.rhs), _cell(v.reason)]
        if with_hyp:
            row += [_cell(v.hypothesis_ok), _cell(v.hypothesis_note)]
        rows.append(row)
    return header, rows


def _render_reports_text(reports) -> str:
    lines = [f"# hlpoly {__version__}"]
    for report in reports:
        s = report.summary
        title = f"identity {report.identity.lower()}"
        if report.variant:
            title += f" (variant prefactor: {report.variant})"
        lines.append("")
        lines.append(
            f"{title}: points={len(report.verdicts)} "
            f"holds={s['holds']} fails={s['fails']} undefined={s['undefined']}"
        )
        header, rows = _report_rows(report)
        if rows:
            lines.append(_aligned_table(header, rows))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_table(args) -> int:
    if (args.family is None) == (args.stirling is None):
        raise UsageError("table needs exactly one of --family or --stirling")

    if args.stirling is not None:
        max_n = _as_nonneg_int(args.max_n, "max-n")
        kind = FIRST_UNSIGNED if args.stirling == "1" else SECOND
        rows = triangle_rows(kind, max_n)
        if args.format == "json":
            payload = {
                "command": "table",
                "kind": f"stirling{args.stirling}",
                "max_n": max_n,
                "rows": [[str(entry) for entry in row] for row in rows],
            }
            sys.stdout.write(canonical_json(payload))
        else:
            for row in rows:
                print(",".join(str(entry) for entry in row))
        return EXIT_OK

    family = Family(args.family)
    n_max = _as_nonneg_int(args.n_max, "n-max")
    params = _validated_params(args.k, args.alpha, args.a, n_max)
    values: dict[str, list[Fraction]] = {}
    if args.method in ("formula", "both"):
        values["formula"] = explicit_sequence(family, n_max, params)
    if args.method in ("oracle", "both"):
        values["oracle"] = oracle_sequence(family, n_max, params)

    if args.format == "json":
        rows = []
        for n in range(n_max + 1):
            entry: dict = {"n": n}
            if args.method == "both":
                entry["formula"] = rational_to_json(values["formula"][n])
                entry["oracle"] = rational_to_json(values["oracle"][n])
                entry["agree"] = values["formula"][n] == values["oracle"][n]
            else:
                entry["value"] = rational_to_json(values[args.method][n])
            rows.append(entry)
        payload = {
            "command": "table",
            "family": family.value,
            "k": params.k,
            "alpha": rational_to_json(params.alpha),
            "a": rational_to_json(params.a),
            "method": args.method,
            "values": rows,
        }
        sys.stdout.write(canonical_json(payload))
    else:
        for n in range(n_max + 1):
            if args.method == "both":
                formula, oracle = values["formula"][n], values["oracle"][n]
                disagreement = (
                    ""
                    if formula == oracle
                    else f"formula={format_rational(formula)};oracle={format_rational(oracle)}"
                )
                print(
                    f"{n},{format_rational(formula)},{format_rational(oracle)},{disagreement}"
                )
            else:
                print(f"{n},{format_rational(values[args.method][n])}")
    return EXIT_OK


def _cmd_series(args) -> int:
    if args.order is None:
        raise UsageError("series requires --order")
    order = _as_nonneg_int(args.order, "order")
    f = kernel(args.kernel, order)
    out = [egf_coeff(f, n) if args.egf else f.coefficient(n) for n in range(order + 1)]
    if args.format == "json":
        payload = {
            "command": "series",
            "kernel": args.kernel,
            "order": order,
            "egf": bool(args.egf),
            "coefficients": [rational_to_json(c) for c in out],
        }
        sys.stdout.write(canonical_json(payload))
    else:
        for n, c in enumerate(out):
            print(f"{n},{format_rational(c)}")
    return EXIT_OK


def _grid_from_args(args) -> GridSpec:
    pairs = _as_pairs(args.pair) if args.pair else DEFAULT_GRID.pairs
    return GridSpec(
        n_max=_as_nonneg_int(getattr(args, "n_max", DEFAULT_GRID.n_max), "n-max"),
        k_values=_as_int_list(args.k_values, "k-values"),
        pairs=pairs,
        primes=_as_primes(args.primes),
        multipliers=_as_int_list(args.multipliers, "multipliers"),
        stirling_n_max=_as_nonneg_int(
            getattr(args, "stirling_n_max", DEFAULT_GRID.stirling_n_max),
            "stirling-n-max",
        ),
    )


def _grid_to_dict(grid: GridSpec) -> dict:
    return {
        "n_max": grid.n_max,
        "k_values": list(grid.k_values),
        "pairs": [[format_rational(alpha), format_rational(a)] for alpha, a in grid.pairs],
        "primes": list(grid.primes),
        "multipliers": list(grid.multipliers),
        "stirling_n_max": grid.stirling_n_max,
    }


def _cmd_audit(args) -> int:
    grid = _grid_from_args(args)
    for multiplier in grid.multipliers:
        if multiplier < 1:
            raise UsageError("multipliers must be >= 1")
    prefactor = None
    if args.variant_prefactor is not None:
        if args.identity not in ("eq9", "eq10", "eq11", "eq12"):
            raise UsageError("--variant-prefactor only applies to eq9..eq12")
        prefactor = parse_prefactor(args.variant_prefactor)

    if args.identity == "all":
        tokens = list(_IDENTITY_TOKENS)
    else:
        tokens = [args.identity]
    identity_keys = [key for token in tokens for key in _TOKEN_TO_IDENTITIES[token]]
    reports = [
        run_identity(
            key,
            grid,
            prefactor=prefactor,
            variant_label=args.variant_prefactor,
        )
        for key in identity_keys
    ]

    if args.format == "json":
        payload = {
            "command": "audit",
            "grid": _grid_to_dict(grid),
            "reports": [report_to_dict(r) for r in reports],
        }
        sys.stdout.write(canonical_json(payload))
    else:
        sys.stdout.write(_render_reports_text(reports))
    return exit_code(reports)


def _cmd_congruence_scan(args) -> int:
    pairs = _as_pairs(args.pair) if args.pair else DEFAULT_GRID.pairs
    k_values = _as_int_list(args.k_values, "k-values")
    for k in k_values:
        if k < 1:
            raise UsageError("congruence scans require k >= 1")
    multipliers = _as_int_list(args.multipliers, "multipliers")
    for multiplier in multipliers:
        if multiplier < 1:
            raise UsageError("multipliers must be >= 1")
    grid = GridSpec(
        k_values=k_values,
        pairs=pairs,
        primes=_as_primes(args.primes),
        multipliers=multipliers,
    )
    if args.family == "all":
        identity_keys = ["THM8_C1", "THM8_C2", "THM8_B"]
    else:
        identity_keys = {
            "cauchy1": ["THM8_C1"],
            "cauchy2": ["THM8_C2"],
            "bernoulli": ["THM8_B"],
        }[args.family]
    reports = [run_identity(key, grid) for key in identity_keys]

    if args.format == "json":
        payload = {
            "command": "congruence-scan",
            "grid": _grid_to_dict(grid),
            "reports": [report_to_dict(r) for r in reports],
        }
        sys.stdout.write(canonical_json(payload))
    elif args.format == "csv":
        header = [
            "identity",
            "k",
            "alpha",
            "a",
            "n",
            "p",
            "status",
            "lhs",
            "rhs",
            "reason",
            "hypothesis_ok",
            "hypothesis_note",
        ]
        print(",".join(header))
        for report in reports:
            for v in report.verdicts:
                row = [
                    report.identity.lower(),
                    _cell(v.point["k"]),
                    _cell(v.point["alpha"]),
                    _cell(v.point["a"]),
                    _cell(v.point["n"]),
                    _cell(v.point["p"]),
                    v.status,
                    _cell(v.lhs),
                    _cell(v.rhs),
                    _cell(v.reason),
                    _cell(v.hypothesis_ok),
                    _cell(v.hypothesis_note),
                ]
                print(",".join(row))
    else:
        sys.stdout.write(_render_reports_text(reports))
    return exit_code(reports)


_HANDLERS = {
    "table": _cmd_table,
    "series": _cmd_series,
    "audit": _cmd_audit,
    "congruence-scan": _cmd_congruence_scan,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, subparsers = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (table, series, audit, congruence-scan)")
        args = _apply_config(parser, subparsers, argv, args)
        try:
            return _HANDLERS[args.command](args)
        except SingularParameterError as exc:
            raise UsageError(f"singular parameter: {exc}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
