"""Grid audits of the catalogued identities, with exact verdicts.

Every check is exact rational (or residue) arithmetic: a point either HOLDS,
FAILS with the two unequal values as witness, or is UNDEFINED with a reason
code when the statement is not evaluable there (singular parameters, or a
denominator a chosen prime divides).

Identity catalogue and labels:

    THM1/THM2/THM3    Stirling-sum formula vs generating-function expansion,
                      one per family
    THM4/THM5/THM6    Stirling-transform collapses of the three families
    EQ9..EQ12         double-sum interchange identities between families
    THM8_C1/C2/B      index-times-prime congruences s_{np} = s_0 (mod p)
    THM9/THM10/THM11  closed-form derivative coefficients vs the series side
    STIRLING_ORTHO    signed orthogonality of the two Stirling triangles

Reports are deterministic: rows are sorted by a canonical point key, no
timestamps or environment data are recorded, and rerunning the same grid
reproduces the same report byte for byte once serialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exact import (
    NonreducibleDenominatorError,
    format_rational,
    factorial,
    is_prime,
    mod_reduce,
    rational_to_json,
)
from .sequences import (
    Family,
    Params,
    deriv_coeffs_oracle,
    deriv_coeffs_printed,
    explicit_value,
    oracle_sequence,
)
from .stirling import stirling1_unsigned, stirling2

__all__ = [
    "AuditReport",
    "DEFAULT_GRID",
    "FAILS",
    "GridSpec",
    "HOLDS",
    "IDENTITIES",
    "NONREDUCIBLE_DENOMINATOR",
    "P_DIVIDES_ALPHA",
    "PrimeDividesAlphaError",
    "SINGULAR_PARAMETER",
    "UNDEFINED",
    "Verdict",
    "audit_congruence",
    "audit_derivative",
    "audit_duality",
    "audit_explicit",
    "audit_orthogonality",
    "audit_stirling_orthogonality",
    "exit_code",
    "report_to_dict",
    "run_identity",
    "sequence_comparison",
]

HOLDS = "HOLDS"
FAILS = "FAILS"
UNDEFINED = "UNDEFINED"

SINGULAR_PARAMETER = "SINGULAR_PARAMETER"
NONREDUCIBLE_DENOMINATOR = "NONREDUCIBLE_DENOMINATOR"
P_DIVIDES_ALPHA = "P_DIVIDES_ALPHA"

IDENTITIES = (
    "THM1",
    "THM2",
    "THM3",
    "THM4",
    "THM5",
    "THM6",
    "EQ9",
    "EQ10",
    "EQ11",
    "EQ12",
    "THM8_C1",
    "THM8_C2",
    "THM8_B",
    "THM9",
    "THM10",
    "THM11",
    "STIRLING_ORTHO",
)


class PrimeDividesAlphaError(ValueError):
    """The congruence's standing assumption p does not divide alpha fails."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of one identity check at one grid point.

    FAILS always carries the unequal (lhs, rhs) pair; UNDEFINED always
    carries a reason code. lhs/rhs are Fractions for value identities and
    plain ints (residues; the modulus sits in the point) for congruences.
    The hypothesis fields are populated only by congruence checks.
    """

    status: str
    point: dict
    lhs: Fraction | int | None = None
    rhs: Fraction | int | None = None
    reason: str | None = None
    hypothesis_ok: bool | None = None
    hypothesis_note: str | None = None


def _compare(point: dict, lhs, rhs, **extra) -> Verdict:
    status = HOLDS if lhs == rhs else FAILS
    return Verdict(status=status, point=point, lhs=lhs, rhs=rhs, **extra)


def _undefined(point: dict, reason: str, **extra) -> Verdict:
    return Verdict(status=UNDEFINED, point=point, reason=reason, **extra)


@dataclass
class AuditReport:
    identity: str
    verdicts: list[Verdict]
    variant: str | None = None

    @property
    def grid(self) -> list[dict]:
        return [v.point for v in self.verdicts]

    @property
    def summary(self) -> dict[str, int]:
        counts = {HOLDS: 0, FAILS: 0, UNDEFINED: 0}
        for v in self.verdicts:
            counts[v.status] += 1
        return {
            "holds": counts[HOLDS],
            "fails": counts[FAILS],
            "undefined": counts[UNDEFINED],
        }


def exit_code(reports) -> int:
    """0 if everything HOLDS, 1 on any FAILS, 2 for a HOLDS/UNDEFINED mix."""
    statuses = {v.status for r in reports for v in r.verdicts}
    if FAILS in statuses:
        return 1
    if UNDEFINED in statuses:
        return 2
    return 0


# ---------------------------------------------------------------------------
# single-point checks
# ---------------------------------------------------------------------------


def _params_point(params: Params, n: int) -> dict:
    return {"k": params.k, "alpha": params.alpha, "a": params.a, "n": n}


_ORTHO_RUNNERS = {
    Family.BERNOULLI: "THM4",
    Family.CAUCHY1: "THM5",
    Family.CAUCHY2: "THM6",
}


def audit_orthogonality(family: Family, n: int, params: Params) -> Verdict:
    """Check one family's Stirling-transform collapse at one point:

        bernoulli: sum_m [n m] B_m  = n! / (alpha n + a)^k
        cauchy1:   sum_m {n m} c_m  = 1 / (alpha n + a)^k
        cauchy2:   sum_m {n m} ch_m = (-1)^n / (alpha n + a)^k
    """
    point = _params_point(params, n)
    if params.singular_index(n) is not None:
        return _undefined(point, SINGULAR_PARAMETER)
    if family is Family.BERNOULLI:
        lhs = sum(
            stirling1_unsigned(n, m) * explicit_value(family, m, params)
            for m in range(n + 1)
        )
        rhs = factorial(n) * params.weight(n)
    else:
        lhs = sum(
            stirling2(n, m) * explicit_value(family, m, params)
            for m in range(n + 1)
        )
        rhs = params.weight(n)
        if family is Family.CAUCHY2:
            rhs = (-1) ** n * rhs
    return _compare(point, Fraction(lhs), Fraction(rhs))


_PRINTED_PREFACTOR: dict[str, Callable[[int, int], Fraction]] = {
    "EQ9": lambda n, m: Fraction((-1) ** (m + n) * factorial(m)),
    "EQ10": lambda n, m: Fraction((-1) ** m * factorial(m)),
    "EQ11": lambda n, m: Fraction((-1) ** (m + n) * factorial(m)),
    "EQ12": lambda n, m: Fraction((-1) ** n * factorial(m)),
}

_DUALITY_SHAPE = {
    # identity -> (lhs family, summed family, stirling triangle)
    "EQ9": (Family.BERNOULLI, Family.CAUCHY1, stirling2),
    "EQ10": (Family.BERNOULLI, Family.CAUCHY2, stirling2),
    "EQ11": (Family.CAUCHY1, Family.BERNOULLI, stirling1_unsigned),
    "EQ12": (Family.CAUCHY2, Family.BERNOULLI, stirling1_unsigned),
}


def audit_duality(
    identity: str,
    n: int,
    params: Params,
    prefactor: Callable[[int, int], Fraction] | None = None,
) -> Verdict:
    """Exact check of one double-sum interchange identity at one point.

        EQ9:  B_n  = sum_{l,m<=n} (-1)^(m+n) m! {n m} {m l} c_l
        EQ10: B_n  = sum_{l,m<=n} (-1)^m     m! {n m} {m l} ch_l
        EQ11: c_n  = sum_{l,m<=n} (-1)^(m+n) m! [n m] [m l] B_l
        EQ12: ch_n = sum_{l,m<=n} (-1)^n     m! [n m] [m l] B_l

    `prefactor(n, m)` substitutes the catalogued prefactor for exploratory
    reruns; the check itself never promotes any variant to "intended".
    """
    if identity not in _DUALITY_SHAPE:
        raise ValueError(f"unknown duality identity: {identity!r}")
    point = _params_point(params, n)
    if params.singular_index(n) is not None:
        return _undefined(point, SINGULAR_PARAMETER)
    lhs_family, summed_family, triangle = _DUALITY_SHAPE[identity]
    pf = prefactor if prefactor is not None else _PRINTED_PREFACTOR[identity]
    inner = [explicit_value(summed_family, l, params) for l in range(n + 1)]
    rhs = Fraction(0)
    for m in range(n + 1):
        outer = triangle(n, m)
        if outer == 0:
            continue
        weight = pf(n, m) * outer
        for l in range(n + 1):
            rhs += weight * triangle(m, l) * inner[l]
    lhs = explicit_value(lhs_family, n, params)
    return _compare(point, lhs, rhs)


def _invertibility_scan(params: Params, m_max: int, p: int) -> tuple[bool, str | None]:
    """Does (alpha*m + a) stay invertible mod p for every m in 0..m_max?"""
    for m in range(m_max + 1):
        value = params.alpha * m + params.a
        if value.numerator % p == 0 or value.denominator % p == 0:
            return False, f"alpha*m + a not invertible mod {p} at m = {m}"
    return True, None


_CONGRUENCE_IDENTITY = {
    Family.CAUCHY1: "THM8_C1",
    Family.CAUCHY2: "THM8_C2",
    Family.BERNOULLI: "THM8_B",
}


def audit_congruence(
    family: Family, n: int, k: int, alpha, a, p: int
) -> Verdict:
    """Check s_{n*p} = s_0 (mod p) for one family at one parameter point.

    Both sequence values are computed exactly and then reduced mod p. A
    denominator divisible by p makes the point UNDEFINED (the congruence is
    not evaluable), never a pass or a fail. Every verdict also records
    whether (alpha*m + a) stays invertible mod p over the whole range
    m = 0..n*p, the assumption under which the congruence is claimed. The
    flag is reported, never used to suppress a result.
    """
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if n < 1 or k < 1:
        raise ValueError("congruence check requires n >= 1 and k >= 1")
    alpha, a = Fraction(alpha), Fraction(a)
    if alpha.numerator % p == 0:
        raise PrimeDividesAlphaError(
            f"p = {p} divides alpha = {format_rational(alpha)}"
        )
    params = Params(k, alpha, a)
    point = {"k": k, "alpha": params.alpha, "a": params.a, "n": n, "p": p}
    hyp_ok, hyp_note = _invertibility_scan(params, n * p, p)
    flags = {"hypothesis_ok": hyp_ok, "hypothesis_note": hyp_note}
    if params.singular_index(n * p) is not None:
        return _undefined(point, SINGULAR_PARAMETER, **flags)
    lhs_exact = explicit_value(family, n * p, params)
    rhs_exact = explicit_value(family, 0, params)
    try:
        lhs = mod_reduce(lhs_exact, p)
        rhs = mod_reduce(rhs_exact, p)
    except NonreducibleDenominatorError:
        return _undefined(
            point, NONREDUCIBLE_DENOMINATOR, lhs=lhs_exact, rhs=rhs_exact, **flags
        )
    return _compare(point, lhs.value, rhs.value, **flags)


def sequence_comparison(
    points: list[dict],
    lhs_values: list[Fraction],
    rhs_values: list[Fraction],
    undefined_points: list[dict] | None = None,
) -> list[Verdict]:
    """Index-by-index comparison of two value lists, plus UNDEFINED tails."""
    verdicts = [
        _compare(point, lhs, rhs)
        for point, lhs, rhs in zip(points, lhs_values, rhs_values)
    ]
    for point in undefined_points or []:
        verdicts.append(_undefined(point, SINGULAR_PARAMETER))
    return verdicts


def _split_defined(params: Params, n_max: int, reach: int) -> tuple[int, list[int]]:
    """Largest index whose check is evaluable, given that index n touches
    alpha*m + a up to m = n + reach."""
    s = params.singular_index(n_max + reach)
    if s is None:
        return n_max, []
    last = min(n_max, s - 1 - reach)
    return last, list(range(last + 1, n_max + 1))


_EXPLICIT_IDENTITY = {
    Family.BERNOULLI: "THM1",
    Family.CAUCHY1: "THM2",
    Family.CAUCHY2: "THM3",
}


def audit_explicit(family: Family, n_max: int, params: Params) -> AuditReport:
    """Stirling-sum path vs generating-function path, index by index."""
    last, undefined_tail = _split_defined(params, n_max, reach=0)
    points = [_params_point(params, n) for n in range(last + 1)]
    lhs = [explicit_value(family, n, params) for n in range(last + 1)]
    rhs = oracle_sequence(family, last, params) if last >= 0 else []
    verdicts = sequence_comparison(
        points, lhs, rhs, [_params_point(params, n) for n in undefined_tail]
    )
    return AuditReport(_EXPLICIT_IDENTITY[family], verdicts)


_DERIVATIVE_IDENTITY = {
    Family.CAUCHY1: "THM9",
    Family.CAUCHY2: "THM10",
    Family.BERNOULLI: "THM11",
}


def audit_derivative(family: Family, n_max: int, params: Params) -> AuditReport:
    """Closed-form derivative coefficients vs series-forced ones, 0..n_max.

    FAILS rows carry the (printed, series) pair as lhs/rhs witness.
    """
    last, undefined_tail = _split_defined(params, n_max, reach=1)
    points = [_params_point(params, n) for n in range(last + 1)]
    if last >= 0:
        printed = deriv_coeffs_printed(family, last, params)
        oracle = deriv_coeffs_oracle(family, last, params)
    else:
        printed, oracle = [], []
    verdicts = sequence_comparison(
        points, printed, oracle, [_params_point(params, n) for n in undefined_tail]
    )
    return AuditReport(_DERIVATIVE_IDENTITY[family], verdicts)


def audit_stirling_orthogonality(n_max: int) -> AuditReport:
    """sum_{m=l..n} T(n,m) U(m,l) (-1)^m = (-1)^n delta_{n,l} over the full
    triangle 0 <= l <= n <= n_max, for both triangle orders:

        form first_second: T = [..], U = {..}
        form second_first: T = {..}, U = [..]
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    verdicts = []
    for form, outer, inner in (
        ("first_second", stirling1_unsigned, stirling2),
        ("second_first", stirling2, stirling1_unsigned),
    ):
        for n in range(n_max + 1):
            for l in range(n + 1):
                total = sum(
                    outer(n, m) * inner(m, l) * (-1) ** m for m in range(l, n + 1)
                )
                expected = (-1) ** n if n == l else 0
                point = {"form": form, "n": n, "l": l}
                verdicts.append(_compare(point, Fraction(total), Fraction(expected)))
    return AuditReport("STIRLING_ORTHO", verdicts)


# ---------------------------------------------------------------------------
# grid runner
# ---------------------------------------------------------------------------

DEFAULT_PAIRS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(2)),
    (Fraction(2), Fraction(1)),
    (Fraction(1, 2), Fraction(1)),
    (Fraction(3), Fraction(1, 3)),
    (Fraction(1), Fraction(5, 2)),
)


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid for audits; the defaults are the documented ones.

    `multipliers` is the n of s_{n*p} in congruence checks (kept small by
    default: the sequence index reaches multiplier * prime). `k_values` is
    filtered to k >= 1 for congruence identities, which are only stated for
    positive k.
    """

    n_max: int = 12
    k_values: tuple[int, ...] = (-2, -1, 0, 1, 2, 3)
    pairs: tuple[tuple[Fraction, Fraction], ...] = DEFAULT_PAIRS
    primes: tuple[int, ...] = (3, 5, 7, 11)
    multipliers: tuple[int, ...] = (1, 2, 3)
    stirling_n_max: int = 20


DEFAULT_GRID = GridSpec()

_POINT_KEY_ORDER = ("form", "k", "alpha", "a", "n", "l", "p")


def _point_sort_key(verdict: Verdict):
    return tuple(
        verdict.point[key] for key in _POINT_KEY_ORDER if key in verdict.point
    )


def _sorted_report(identity: str, verdicts: list[Verdict], variant=None) -> AuditReport:
    return AuditReport(identity, sorted(verdicts, key=_point_sort_key), variant)


_FAMILY_BY_IDENTITY = {
    "THM1": Family.BERNOULLI,
    "THM2": Family.CAUCHY1,
    "THM3": Family.CAUCHY2,
    "THM4": Family.BERNOULLI,
    "THM5": Family.CAUCHY1,
    "THM6": Family.CAUCHY2,
    "THM8_C1": Family.CAUCHY1,
    "THM8_C2": Family.CAUCHY2,
    "THM8_B": Family.BERNOULLI,
    "THM9": Family.CAUCHY1,
    "THM10": Family.CAUCHY2,
    "THM11": Family.BERNOULLI,
}


def run_identity(
    identity: str,
    grid: GridSpec = DEFAULT_GRID,
    prefactor: Callable[[int, int], Fraction] | None = None,
    variant_label: str | None = None,
) -> AuditReport:
    """Evaluate one catalogued identity over the grid.

    The report's rows are canonically sorted (k, alpha, a, then indices), so
    identical grids always serialize to identical bytes. `prefactor` is only
    honoured for EQ9..EQ12.
    """
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity: {identity!r}")
    if prefactor is not None and not identity.startswith("EQ"):
        raise ValueError("a variant prefactor only applies to EQ9..EQ12")

    verdicts: list[Verdict] = []
    if identity == "STIRLING_ORTHO":
        return audit_stirling_orthogonality(grid.stirling_n_max)

    if identity in ("THM1", "THM2", "THM3"):
        family = _FAMILY_BY_IDENTITY[identity]
        for alpha, a in grid.pairs:
            for k in grid.k_values:
                report = audit_explicit(family, grid.n_max, Params(k, alpha, a))
                verdicts.extend(report.verdicts)
        return _sorted_report(identity, verdicts)

    if identity in ("THM4", "THM5", "THM6"):
        family = _FAMILY_BY_IDENTITY[identity]
        for alpha, a in grid.pairs:
            for k in grid.k_values:
                params = Params(k, alpha, a)
                for n in range(grid.n_max + 1):
                    verdicts.append(audit_orthogonality(family, n, params))
        return _sorted_report(identity, verdicts)

    if identity in ("EQ9", "EQ10", "EQ11", "EQ12"):
        for alpha, a in grid.pairs:
            for k in grid.k_values:
                params = Params(k, alpha, a)
                for n in range(grid.n_max + 1):
                    verdicts.append(audit_duality(identity, n, params, prefactor))
        return _sorted_report(identity, verdicts, variant_label)

    if identity in ("THM8_C1", "THM8_C2", "THM8_B"):
        family = _FAMILY_BY_IDENTITY[identity]
        for alpha, a in grid.pairs:
            for k in grid.k_values:
                if k < 1:
                    continue
                for n in grid.multipliers:
                    for p in grid.primes:
                        try:
                            verdicts.append(
                                audit_congruence(family, n, k, alpha, a, p)
                            )
                        except PrimeDividesAlphaError:
                            point = {
                                "k": k,
                                "alpha": Fraction(alpha),
                                "a": Fraction(a),
                                "n": n,
                                "p": p,
                            }
                            hyp_ok, hyp_note = _invertibility_scan(
                                Params(k, alpha, a), n * p, p
                            )
                            verdicts.append(
                                _undefined(
                                    point,
                                    P_DIVIDES_ALPHA,
                                    hypothesis_ok=hyp_ok,
                                    hypothesis_note=hyp_note,
                                )
                            )
        return _sorted_report(identity, verdicts)

    # THM9 / THM10 / THM11
    family = _FAMILY_BY_IDENTITY[identity]
    for alpha, a in grid.pairs:
        for k in grid.k_values:
            report = audit_derivative(family, grid.n_max, Params(k, alpha, a))
            verdicts.extend(report.verdicts)
    return _sorted_report(identity, verdicts)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _json_value(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return rational_to_json(value)
    raise TypeError(f"cannot serialize {value!r}")


def _json_point(point: dict) -> dict:
    out = {}
    for key, value in point.items():
        out[key] = format_rational(value) if isinstance(value, Fraction) else value
    return out


def verdict_to_dict(verdict: Verdict) -> dict:
    return {
        "point": _json_point(verdict.point),
        "status": verdict.status,
        "lhs": _json_value(verdict.lhs),
        "rhs": _json_value(verdict.rhs),
        "reason": verdict.reason,
        "hypothesis_ok": verdict.hypothesis_ok,
        "hypothesis_note": verdict.hypothesis_note,
    }


def report_to_dict(report: AuditReport) -> dict:
    return {
        "identity": report.identity,
        "variant": report.variant,
        "points": len(report.verdicts),
        "summary": report.summary,
        "verdicts": [verdict_to_dict(v) for v in report.verdicts],
    }
