import math
from fractions import Fraction

import pytest

from ffk.bounds import (
    alpha,
    beta_sp_closed,
    bound_report,
    euler_phi,
    factor_odd_squarefree,
    geometric_contribution,
    lower_bound,
    mertens_diag,
    odd_squarefree_composites,
    q_np,
    scan_rows,
    simple_lower,
    upper_bound,
)
from ffk.divisors import lambda_nu, per_prime_geometric
from ffk.errors import ParameterError


def test_factorization():
    assert factor_odd_squarefree(15) == [3, 5]
    assert factor_odd_squarefree(105) == [3, 5, 7]
    with pytest.raises(ParameterError, match="squareful"):
        factor_odd_squarefree(9)
    with pytest.raises(ParameterError, match="odd"):
        factor_odd_squarefree(30)
    with pytest.raises(ParameterError, match="prime"):
        factor_odd_squarefree(17)
    with pytest.raises(ParameterError):
        factor_odd_squarefree(1)


def test_euler_phi():
    assert euler_phi([3, 5]) == 8
    assert euler_phi([3, 5, 7]) == 48
    assert euler_phi([3]) == 2


def test_q_values():
    assert q_np(15, 5) == Fraction(133, 60)
    assert q_np(15, 3) == Fraction(407, 180)


def test_q_matches_graph(models):
    for (p, m), model in models.items():
        assert q_np(p * m, p) == per_prime_geometric(model)


def test_alpha_values():
    assert alpha(15, 5) == 330975
    # spelled-out evaluation at (15, 3)
    want = (4 * 50625 * 3 - 6 * 3375 * 9 - 24 * 3375 * 3 + 37 * 225 * 9
            + 44 * 225 * 3 - 72 * 15 * 9 - 900 - 540 + 324)
    assert alpha(15, 3) == want


def test_alpha_positive_scan():
    for n, primes in odd_squarefree_composites(3000):
        for p in primes:
            assert alpha(n, p) > 0


def test_beta_closed_values(models):
    assert beta_sp_closed(15, 5) == Fraction(4413, 11648)
    assert beta_sp_closed(21, 3) > 0
    # equality of the two closed forms on every acceptance configuration
    for (p, m), model in models.items():
        params = model.params
        b = params.n * lambda_nu(params).total
        prop57 = b * (b * Fraction(params.genus - 1, params.genus) + 4 * m - 6)
        assert beta_sp_closed(p * m, p) == prop57


def test_geometric_contribution():
    terms, total = geometric_contribution(15)
    assert dict(terms) == {3: Fraction(407, 45), 5: Fraction(133, 30)}
    want = float(Fraction(407, 45)) * math.log(3) + float(Fraction(133, 30)) * math.log(5)
    assert math.isclose(total, want, rel_tol=1e-15)
    assert all(c > 0 for _, c in terms)


def test_upper_bound():
    up = upper_bound(15, 1.0, 1.0)
    _, geo = geometric_contribution(15)
    assert math.isclose(up, 180 * (8 * (math.log(15) + 1) + geo), rel_tol=1e-15)
    # strictly increasing in both kappas
    assert upper_bound(15, 2.0, 1.0) > up
    assert upper_bound(15, 1.0, 2.0) > up
    with pytest.raises(ParameterError):
        upper_bound(15, 0.0, 0.0)
    with pytest.raises(ParameterError):
        upper_bound(15, 1.0, 0.0)


def test_lower_bound_assembly():
    # independent assembly in a different summation order
    want = 8 * (float(beta_sp_closed(15, 3) / 2) * math.log(3)
                + float(beta_sp_closed(15, 5) / 4) * math.log(5))
    got = lower_bound(15)
    assert math.isclose(got, want, rel_tol=4e-16)  # <= 4 ulp
    assert got > 0


def test_simple_lower():
    assert math.isclose(simple_lower(15), 8 * math.log(15) / 1125, rel_tol=1e-15)
    assert abs(simple_lower(15) - 0.01926) < 5e-6
    assert abs(simple_lower(33) - 0.01284) < 5e-6


def test_lower_exceeds_simple():
    for n in (15, 21, 33, 105):
        assert lower_bound(n) > simple_lower(n)


def test_mertens():
    got = mertens_diag(15)
    assert math.isclose(got, math.log(3) / 2 + math.log(5) / 4, rel_tol=1e-15)
    assert abs(got - 0.9516) < 1e-4  # quoted value is truncated, not rounded
    assert math.isclose(mertens_diag(105) - got, math.log(7) / 6, rel_tol=1e-12)
    for n, _ in odd_squarefree_composites(500):
        assert mertens_diag(n) < math.log(n)


def test_bound_report():
    rep = bound_report(15)
    assert rep.upper is None and not rep.conditional
    assert rep.phi == 8 and rep.genus == 91
    assert [r.p for r in rep.primes] == [3, 5]
    assert rep.primes[1].beta_sp == Fraction(4413, 11648)
    assert rep.primes[1].s == 0 and rep.primes[1].rho == 0
    rep2 = bound_report(15, 1.0, 1.0)
    assert rep2.conditional and rep2.upper is not None
    with pytest.raises(ParameterError):
        bound_report(15, 1.0, None)


def test_report_rho_field():
    rep = bound_report(21)
    by_p = {r.p: r for r in rep.primes}
    assert by_p[7].s == 2 and by_p[7].rho == 2 * 3  # m * s with m = 3
    assert by_p[3].s == 0


def test_scan_list():
    ns = [n for n, _ in odd_squarefree_composites(100)]
    assert ns == [15, 21, 33, 35, 39, 51, 55, 57, 65, 69, 77, 85, 87, 91, 93, 95]
    assert list(odd_squarefree_composites(10)) == []


def test_scan_rows():
    rows = scan_rows(100)
    assert len(rows) == 16
    assert all(r["ratio"] > 1 for r in rows)
    first = rows[0]
    assert first["N"] == 15 and first["phi"] == 8
    assert dict(first["geometric_coeffs"]) == {3: Fraction(407, 45), 5: Fraction(133, 30)}
