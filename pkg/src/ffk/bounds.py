"""Global bound assembly over all primes dividing N.

Exact rational per-prime coefficients are kept alongside the float64
assembly: floats only appear at the final multiplication by log p, so any
consumer can re-evaluate the exact data at arbitrary precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import polyarith
from .errors import MathContractError, ParameterError


def factor_odd_squarefree(n: int) -> list[int]:
    """Prime factors of N, requiring N odd, squarefree and composite."""
    if n < 3:
        raise ParameterError(f"N must be >= 3, got {n}")
    if n % 2 == 0:
        raise ParameterError(f"N must be odd, got {n}")
    primes = []
    rest = n
    d = 3
    while d * d <= rest:
        if rest % d == 0:
            rest //= d
            if rest % d == 0:
                raise ParameterError(f"N = {n} is squareful (divisible by {d}^2)")
            primes.append(d)
        d += 2
    if rest > 1:
        primes.append(rest)
    if len(primes) < 2:
        raise ParameterError(f"N = {n} is prime; a composite exponent is required")
    return primes


def euler_phi(primes: list[int]) -> int:
    """Euler phi of a squarefree number with the given prime factors."""
    out = 1
    for p in primes:
        out *= p - 1
    return out


def q_np(n: int, p: int) -> Fraction:
    """Exact per-prime geometric coefficient Q(N, p)."""
    m = n // p
    return Fraction(
        3 * n * n - 2 * n * p - 10 * n + 6 * p - 6 - 4 * m * m + 12 * m,
        n * (n - 3),
    )


def alpha(n: int, p: int) -> int:
    return (
        4 * n**4 * p
        - 6 * n**3 * p**2
        - 24 * n**3 * p
        + 37 * n**2 * p**2
        + 44 * n**2 * p
        - 72 * n * p**2
        - 4 * n**2
        - 12 * n * p
        + 36 * p**2
    )


def beta_sp_closed(n: int, p: int) -> Fraction:
    """Per-prime lower-bound quantity in closed form."""
    num = alpha(n, p) * (n * p + 2 * n - 6 * p) * (p - 2)
    den = (n - 1) * (n - 2) * (n - 3) ** 3 * p**4
    return Fraction(num, den)


def geometric_contribution(n: int) -> tuple[list[tuple[int, Fraction]], float]:
    """Per-prime exact coefficients of log p, plus their float64 assembly."""
    primes = factor_odd_squarefree(n)
    phi = euler_phi(primes)
    terms = [(p, Fraction(phi, p - 1) * q_np(n, p)) for p in primes]
    total = math.fsum(float(c) * math.log(p) for p, c in terms)
    return terms, total


def upper_bound(n: int, kappa1: float, kappa2: float) -> float:
    """Conditional upper bound (2g-2)(phi(N)(k1 log N + k2) + geometric term)."""
    if not (kappa1 > 0 and kappa2 > 0):
        raise ParameterError("kappa1 and kappa2 must be positive")
    primes = factor_odd_squarefree(n)
    phi = euler_phi(primes)
    g = (n - 1) * (n - 2) // 2
    _, geo = geometric_contribution(n)
    return (2 * g - 2) * (phi * (kappa1 * math.log(n) + kappa2) + geo)


def lower_bound(n: int) -> float:
    """Unconditional lower bound phi(N) sum_p beta_{S,p}/(p-1) log p."""
    primes = factor_odd_squarefree(n)
    phi = euler_phi(primes)
    return math.fsum(
        float(Fraction(phi, p - 1) * beta_sp_closed(n, p)) * math.log(p)
        for p in primes
    )


def simple_lower(n: int) -> float:
    """The simplified lower bound phi(N) log N / (5 N^2)."""
    primes = factor_odd_squarefree(n)
    return euler_phi(primes) * math.log(n) / (5 * n * n)


def mertens_diag(n: int) -> float:
    """Diagnostic sum of log p/(p-1) over p | N."""
    return math.fsum(math.log(p) / (p - 1) for p in factor_odd_squarefree(n))


@dataclass(frozen=True)
class PrimeRecord:
    p: int
    m: int
    s: int
    rho: int
    q: Fraction
    beta_sp: Fraction
    alpha: int


@dataclass(frozen=True)
class BoundReport:
    n: int
    genus: int
    phi: int
    primes: tuple[PrimeRecord, ...]
    geometric_terms: tuple[tuple[int, Fraction], ...]
    geometric_float: float
    lower: float
    simple: float
    mertens: float
    upper: float | None = None
    conditional: bool = field(default=False)


def bound_report(n: int, kappa1: float | None = None, kappa2: float | None = None) -> BoundReport:
    """Assemble the full per-N report; the upper bound only if kappas given."""
    primes = factor_odd_squarefree(n)
    phi = euler_phi(primes)
    records = []
    for p in primes:
        s = polyarith.double_root_count(p)
        m = n // p
        records.append(
            PrimeRecord(p, m, s, m * s, q_np(n, p), beta_sp_closed(n, p), alpha(n, p))
        )
    terms, geo = geometric_contribution(n)
    upper = None
    conditional = False
    if kappa1 is not None or kappa2 is not None:
        if kappa1 is None or kappa2 is None:
            raise ParameterError("kappa1 and kappa2 must be given together")
        upper = upper_bound(n, kappa1, kappa2)
        conditional = True
    lower = lower_bound(n)
    simple = simple_lower(n)
    if not lower > simple:
        raise MathContractError(
            f"lower-bound inequality fails at N={n}: {lower} <= {simple}"
        )
    return BoundReport(
        n=n,
        genus=(n - 1) * (n - 2) // 2,
        phi=phi,
        primes=tuple(records),
        geometric_terms=tuple(terms),
        geometric_float=geo,
        lower=lower,
        simple=simple,
        mertens=mertens_diag(n),
        upper=upper,
        conditional=conditional,
    )


# ---------------------------------------------------------------------------
# range scans
# ---------------------------------------------------------------------------


def odd_squarefree_composites(max_n: int):
    """Yield (N, prime factors) for odd squarefree composite N <= max_n."""
    if max_n < 3:
        return
    spf = list(range(max_n + 1))  # smallest prime factor sieve
    for i in range(3, int(math.isqrt(max_n)) + 1, 2):
        if spf[i] == i:
            for j in range(i * i, max_n + 1, 2 * i):
                if spf[j] == j:
                    spf[j] = i
    for n in range(15, max_n + 1, 2):
        rest = n
        primes = []
        squarefree = True
        while rest > 1:
            p = spf[rest]
            rest //= p
            if rest % p == 0:
                squarefree = False
                break
            primes.append(p)
        if squarefree and len(primes) >= 2:
            yield n, primes


def scan_rows(max_n: int) -> list[dict]:
    """One row per odd squarefree composite N <= max_n, with the strict
    lower/simple inequality asserted per row."""
    rows = []
    for n, primes in odd_squarefree_composites(max_n):
        phi = euler_phi(primes)
        coeffs = [(p, Fraction(phi, p - 1) * beta_sp_closed(n, p)) for p in primes]
        lower = math.fsum(float(c) * math.log(p) for p, c in coeffs)
        simple = phi * math.log(n) / (5 * n * n)
        geo = [(p, Fraction(phi, p - 1) * q_np(n, p)) for p in primes]
        if not lower > simple:
            raise MathContractError(
                f"lower-bound inequality fails at N={n}: {lower} <= {simple}"
            )
        rows.append(
            {
                "N": n,
                "phi": phi,
                "geometric_coeffs": geo,
                "lower": lower,
                "simple": simple,
                "ratio": lower / simple,
            }
        )
    return rows
