import json
from fractions import Fraction

import pytest

from hlpoly.audit import (
    DEFAULT_GRID,
    FAILS,
    GridSpec,
    HOLDS,
    NONREDUCIBLE_DENOMINATOR,
    P_DIVIDES_ALPHA,
    PrimeDividesAlphaError,
    SINGULAR_PARAMETER,
    UNDEFINED,
    audit_congruence,
    audit_derivative,
    audit_duality,
    audit_explicit,
    audit_orthogonality,
    audit_stirling_orthogonality,
    exit_code,
    report_to_dict,
    run_identity,
    sequence_comparison,
)
from hlpoly.sequences import Family, Params, deriv_coeffs_oracle

P111 = Params(1, 1, 1)


# -- orthogonality ------------------------------------------------------------


def test_orthogonality_base_cases():
    for family in Family:
        for params in [P111, Params(-2, 2, Fraction(1, 3))]:
            assert audit_orthogonality(family, 0, params).status == HOLDS


def test_orthogonality_fixtures():
    # cauchy1 at n=2: {2 1} c_1 + {2 2} c_2 = 1/2 - 1/6 = 1/3 = 1/(2+1)
    verdict = audit_orthogonality(Family.CAUCHY1, 2, P111)
    assert verdict.status == HOLDS
    assert verdict.lhs == Fraction(1, 3)
    verdict = audit_orthogonality(Family.CAUCHY2, 2, P111)
    assert verdict.status == HOLDS
    assert verdict.lhs == Fraction(1, 3)


def test_orthogonality_holds_broadly():
    for family in Family:
        for k in (-2, 0, 1, 3):
            for alpha, a in [(1, 1), (Fraction(1, 2), 1), (3, Fraction(1, 3))]:
                params = Params(k, alpha, a)
                for n in range(9):
                    assert audit_orthogonality(family, n, params).status == HOLDS


def test_orthogonality_singular_point_undefined():
    verdict = audit_orthogonality(Family.BERNOULLI, 4, Params(1, 1, -2))
    assert verdict.status == UNDEFINED
    assert verdict.reason == SINGULAR_PARAMETER


# -- duality ------------------------------------------------------------------


def test_eq9_holds():
    for n in range(7):
        assert audit_duality("EQ9", n, P111).status == HOLDS


def test_eq11_witness_fixture():
    verdict = audit_duality("EQ11", 2, P111)
    assert verdict.status == FAILS
    assert verdict.lhs == Fraction(-1, 6)
    assert verdict.rhs == Fraction(5, 6)


def test_eq11_holds_at_n1():
    assert audit_duality("EQ11", 1, P111).status == HOLDS


def test_unknown_duality_identity():
    with pytest.raises(ValueError):
        audit_duality("EQ13", 1, P111)


def test_duality_variant_prefactor():
    # a variant prefactor changes the double sum; geometry stays the same
    printed = audit_duality("EQ11", 2, P111)
    variant = audit_duality(
        "EQ11", 2, P111, prefactor=lambda n, m: Fraction((-1) ** (m + n), 1)
    )
    assert printed.rhs != variant.rhs


# -- congruence ---------------------------------------------------------------


def test_congruence_fixtures():
    verdict = audit_congruence(Family.CAUCHY1, 1, 1, 1, 1, 3)
    assert verdict.status == HOLDS
    assert (verdict.lhs, verdict.rhs) == (1, 1)
    assert verdict.hypothesis_ok is False
    assert "m = 2" in verdict.hypothesis_note

    verdict = audit_congruence(Family.BERNOULLI, 1, 1, 1, 1, 3)
    assert verdict.status == FAILS
    assert (verdict.lhs, verdict.rhs) == (0, 1)

    verdict = audit_congruence(Family.CAUCHY1, 1, 1, 2, 1, 3)
    assert verdict.status == UNDEFINED
    assert verdict.reason == NONREDUCIBLE_DENOMINATOR
    assert verdict.lhs == Fraction(22, 105)


def test_congruence_preconditions():
    with pytest.raises(ValueError):
        audit_congruence(Family.CAUCHY1, 0, 1, 1, 1, 3)
    with pytest.raises(ValueError):
        audit_congruence(Family.CAUCHY1, 1, 0, 1, 1, 3)
    with pytest.raises(ValueError):
        audit_congruence(Family.CAUCHY1, 1, 1, 1, 1, 4)
    with pytest.raises(PrimeDividesAlphaError):
        audit_congruence(Family.CAUCHY1, 1, 1, 3, 1, 3)


def test_congruence_consistent_with_exact_recomputation():
    # recompute both residues through the generating-function path, which
    # shares nothing with the Stirling sums the audit reduces
    from hlpoly.exact import mod_reduce
    from hlpoly.sequences import oracle_sequence

    for family in Family:
        for p in (3, 5):
            verdict = audit_congruence(family, 1, 1, 1, 2, p)
            if verdict.status == UNDEFINED:
                continue
            params = Params(1, 1, 2)
            values = oracle_sequence(family, p, params)
            lhs = mod_reduce(values[p], p).value
            rhs = mod_reduce(values[0], p).value
            assert (verdict.status == HOLDS) == (lhs == rhs)
            assert (verdict.lhs, verdict.rhs) == (lhs, rhs)


# -- explicit and derivative reports ------------------------------------------


def test_audit_explicit_all_holds():
    for family in Family:
        report = audit_explicit(family, 6, P111)
        assert report.summary == {"holds": 7, "fails": 0, "undefined": 0}


def test_audit_explicit_singular_tail():
    report = audit_explicit(Family.CAUCHY1, 5, Params(1, 1, -3))
    statuses = [v.status for v in report.verdicts]
    assert statuses[:3] == [HOLDS, HOLDS, HOLDS]
    assert statuses[3:] == [UNDEFINED] * 3
    assert all(v.reason == SINGULAR_PARAMETER for v in report.verdicts[3:])


def test_audit_derivative_fixtures():
    report = audit_derivative(Family.CAUCHY1, 1, P111)
    assert report.identity == "THM9"
    first, second = report.verdicts
    assert first.status == FAILS and (first.lhs, first.rhs) == (0, Fraction(1, 2))
    assert second.status == FAILS
    assert (second.lhs, second.rhs) == (Fraction(1, 2), Fraction(1, 3))


def test_audit_derivative_self_consistency_control():
    # x = x control: the comparison machinery reports HOLDS when both sides
    # are the oracle's own recomputation
    oracle = deriv_coeffs_oracle(Family.CAUCHY1, 10, P111)
    points = [{"n": n} for n in range(11)]
    verdicts = sequence_comparison(points, oracle, list(oracle))
    assert all(v.status == HOLDS for v in verdicts)


def test_audit_derivative_bernoulli_agrees_then_diverges():
    report = audit_derivative(Family.BERNOULLI, 3, P111)
    assert [v.status for v in report.verdicts] == [HOLDS, HOLDS, FAILS, FAILS]
    assert report.verdicts[2].lhs == Fraction(13, 6)
    assert report.verdicts[2].rhs == Fraction(5, 6)


# -- stirling orthogonality ---------------------------------------------------


def test_stirling_orthogonality_holds_to_20():
    report = audit_stirling_orthogonality(20)
    assert report.summary["fails"] == 0
    assert report.summary["undefined"] == 0
    # both triangle orders, full triangle each
    assert len(report.verdicts) == 2 * (21 * 22 // 2)


def test_stirling_orthogonality_diagonal_points():
    report = audit_stirling_orthogonality(3)
    by_point = {
        (v.point["form"], v.point["n"], v.point["l"]): v for v in report.verdicts
    }
    verdict = by_point[("first_second", 3, 1)]
    assert verdict.status == HOLDS and verdict.lhs == 0
    verdict = by_point[("first_second", 3, 3)]
    assert verdict.lhs == -1


# -- grid runner --------------------------------------------------------------

QUICK_GRID = GridSpec(
    n_max=4,
    k_values=(1, 2),
    pairs=((Fraction(1), Fraction(1)), (Fraction(2), Fraction(1))),
    primes=(3,),
    multipliers=(1,),
    stirling_n_max=4,
)


def test_run_identity_rejects_unknown():
    with pytest.raises(ValueError):
        run_identity("THM99")
    with pytest.raises(ValueError):
        run_identity("THM4", QUICK_GRID, prefactor=lambda n, m: Fraction(1))


def test_run_identity_shapes():
    report = run_identity("THM5", QUICK_GRID)
    assert report.identity == "THM5"
    assert len(report.verdicts) == 2 * 2 * 5
    assert report.summary["fails"] == 0

    report = run_identity("THM8_C1", QUICK_GRID)
    assert len(report.verdicts) == 2 * 2 * 1 * 1
    assert {v.status for v in report.verdicts} <= {HOLDS, FAILS, UNDEFINED}
    assert all(v.hypothesis_ok is not None for v in report.verdicts)


def test_run_identity_p_divides_alpha_row():
    grid = GridSpec(
        n_max=2,
        k_values=(1,),
        pairs=((Fraction(3), Fraction(1, 3)),),
        primes=(3,),
        multipliers=(1,),
    )
    report = run_identity("THM8_C1", grid)
    assert len(report.verdicts) == 1
    verdict = report.verdicts[0]
    assert verdict.status == UNDEFINED
    assert verdict.reason == P_DIVIDES_ALPHA
    assert verdict.hypothesis_ok is False


def test_fails_rows_always_carry_witness():
    for identity in ("EQ10", "EQ11", "EQ12", "THM9", "THM10", "THM11"):
        report = run_identity(identity, QUICK_GRID)
        for verdict in report.verdicts:
            if verdict.status == FAILS:
                assert verdict.lhs is not None and verdict.rhs is not None
                assert verdict.lhs != verdict.rhs
            if verdict.status == UNDEFINED:
                assert verdict.reason is not None


def test_report_rows_are_canonically_sorted():
    report = run_identity("THM4", QUICK_GRID)
    keys = [
        (v.point["k"], v.point["alpha"], v.point["a"], v.point["n"])
        for v in report.verdicts
    ]
    assert keys == sorted(keys)


def test_reports_are_reproducible():
    first = report_to_dict(run_identity("EQ11", QUICK_GRID))
    second = report_to_dict(run_identity("EQ11", QUICK_GRID))
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_exit_code_contract():
    holds = run_identity("EQ9", QUICK_GRID)
    fails = run_identity("EQ11", QUICK_GRID)
    undef = run_identity(
        "THM8_C1",
        GridSpec(k_values=(1,), pairs=((Fraction(2), Fraction(1)),), primes=(3,), multipliers=(1,)),
    )
    assert exit_code([holds]) == 0
    assert exit_code([holds, fails]) == 1
    assert exit_code([holds, undef]) == 2
    assert exit_code([fails, undef]) == 1


def test_undefined_tallied_separately():
    report = run_identity(
        "THM8_C1",
        GridSpec(k_values=(1,), pairs=((Fraction(2), Fraction(1)),), primes=(3,), multipliers=(1,)),
    )
    summary = report.summary
    assert summary["undefined"] == 1
    assert summary["holds"] == 0 and summary["fails"] == 0


def test_default_grid_is_documented_shape():
    assert DEFAULT_GRID.n_max == 12
    assert DEFAULT_GRID.k_values == (-2, -1, 0, 1, 2, 3)
    assert len(DEFAULT_GRID.pairs) == 6
    assert DEFAULT_GRID.primes == (3, 5, 7, 11)
    assert DEFAULT_GRID.stirling_n_max == 20
