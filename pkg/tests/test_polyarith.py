import pytest

from ffk.errors import CapExceeded, ParameterError
from ffk.polyarith import (
    BiPoly,
    FpPoly,
    IntPoly,
    capital_psi,
    double_root_count,
    double_roots,
    fermat_split_check,
    psi_diag,
    psi_poly,
    rho,
)

PRIMES_TO_101 = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                 61, 67, 71, 73, 79, 83, 89, 97, 101]


def slow_trinomial_pow(n):
    """Independent oracle: (a+b-1)^n by repeated naive multiplication."""
    acc = {(0, 0): 1}
    base = {(1, 0): 1, (0, 1): 1, (0, 0): -1}
    for _ in range(n):
        nxt = {}
        for (i1, j1), c1 in acc.items():
            for (i2, j2), c2 in base.items():
                k = (i1 + i2, j1 + j2)
                nxt[k] = nxt.get(k, 0) + c1 * c2
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def test_psi_poly_p3_explicit():
    # oracle: -a^2 b - a b^2 + a^2 + 2ab + b^2 - a - b
    want = {(2, 1): -1, (1, 2): -1, (2, 0): 1, (1, 1): 2, (0, 2): 1,
            (1, 0): -1, (0, 1): -1}
    assert psi_poly(3).terms == want


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_psi_defining_identity(p):
    # p*psi + (a+b-1)^p - a^p - b^p + 1 = 0, against the naive-power oracle
    tri = slow_trinomial_pow(p)
    lhs = psi_poly(p).scale(p) + BiPoly(tri)
    lhs = lhs - BiPoly.monomial(p, 0) - BiPoly.monomial(0, p) + BiPoly.monomial(0, 0)
    assert not lhs


def test_psi_value_at_one_one():
    assert psi_poly(5)(1, 1) == 0


@pytest.mark.parametrize("p", [4, 9, 2, 1, 15])
def test_psi_rejects_non_odd_primes(p):
    with pytest.raises(ParameterError):
        psi_poly(p)


def test_psi_diag_explicit():
    assert psi_diag(3) == IntPoly((0, -1, 1))  # a^2 - a
    assert psi_diag(5) == IntPoly((0, -1, 2, -2, 1))  # a^4 - 2a^3 + 2a^2 - a


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_psi_diag_two_paths_agree(p):
    assert psi_poly(p).substitute_diag() == psi_diag(p)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_psi_diag_shape(p):
    f = psi_diag(p)
    assert f.degree == p - 1
    assert f.coeffs[0] == 0  # constant term
    assert f(1) == 0


def test_capital_psi_small_values():
    assert capital_psi(3) == IntPoly((1,))
    assert capital_psi(5) == IntPoly((1, -1, 1))  # a^2 - a + 1
    assert FpPoly(5, capital_psi(5).coeffs).coeffs == (1, 4, 1)


def test_capital_psi_7_factors_mod_7():
    got = FpPoly.from_intpoly(7, capital_psi(7))
    want = FpPoly(7, (2, 1)) * FpPoly(7, (2, 1)) * FpPoly(7, (4, 1)) * FpPoly(7, (4, 1))
    # equality up to a unit of F_7
    u = got.coeffs[-1] * pow(want.coeffs[-1], -1, 7) % 7
    assert got.coeffs == tuple(u * c % 7 for c in want.coeffs)


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_capital_psi_degree(p):
    assert capital_psi(p).degree == p - 3


def test_double_root_counts():
    assert double_root_count(3) == 0
    assert double_root_count(5) == 0
    assert double_root_count(7) == 2
    assert double_roots(7) == [3, 5]  # representatives of -4, -2


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_double_root_count_bound(p):
    s = double_root_count(p)
    assert 0 <= 2 * s <= p - 3


@pytest.mark.parametrize("p", PRIMES_TO_101)
def test_repeated_part_is_exactly_squared(p):
    # gcd(Psi, Psi') is squarefree, splits over F_p, and its square divides Psi
    f = FpPoly.from_intpoly(p, capital_psi(p))
    rep = f.gcd(f.derivative())
    if rep.degree > 0:
        assert rep.gcd(rep.derivative()).degree == 0
        _, r = f.divmod(rep * rep)
        assert not r
        assert len(rep.roots_in_fp()) == rep.degree


def test_rho_values():
    assert rho(5, 3) == 0
    assert rho(7, 3) == 6
    assert rho(7, 5) == 10


def test_rho_rejects_bad_m():
    with pytest.raises(ParameterError):
        rho(5, 0)


@pytest.mark.parametrize("p,m", [(3, 5), (5, 3), (3, 7), (7, 3), (5, 7), (7, 5),
                                 (3, 11), (11, 3)])
def test_fermat_split(p, m):
    assert fermat_split_check(p, m)


def test_fermat_split_cap():
    with pytest.raises(CapExceeded, match="2000"):
        fermat_split_check(3, 667)
    assert fermat_split_check(3, 667, cap=2001)


def test_fppoly_gcd_monic():
    f = FpPoly(7, (1, 0, 1)) * FpPoly(7, (3, 1))
    g = FpPoly(7, (3, 1)) * FpPoly(7, (5, 1))
    assert f.gcd(g).coeffs == (3, 1)


def test_roots_large_prime_path():
    # exercise the gcd-based root counting branch
    p = 1009
    f = FpPoly(p, (-6, 11, -6, 1))  # (x-1)(x-2)(x-3)
    assert f.roots_in_fp() == [1, 2, 3]
