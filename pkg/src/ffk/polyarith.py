"""Integer and finite-field polynomial arithmetic behind the splitting identity.

The curve X^N + Y^N - 1 with N = p*m factors p-adically as
F_m^p + p*psi(X^m, Y^m) where psi(a,b) = (a^p + b^p - 1 - (a+b-1)^p)/p.
This module builds psi, the diagonal psi(a, 1-a) = a(a-1)*PsiCap(a), and the
multiplicity structure of PsiCap mod p that controls the component census of
the special fiber.
"""

from __future__ import annotations

from math import comb, factorial, isqrt

from .errors import CapExceeded, MathContractError, ParameterError

#: default degree cap for the full bivariate splitting check (memory guard)
DEFAULT_SPLIT_CAP = 2000

#: below this prime, roots in F_p are counted by enumeration; above, via
#: gcd with a^p - a
ROOT_ENUM_THRESHOLD = 1000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _require_odd_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ParameterError(f"p must be an odd prime, got {p}")


class IntPoly:
    """Dense univariate polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-v for v in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self or not other:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    def scale(self, k: int) -> "IntPoly":
        return IntPoly(k * v for v in self.coeffs)

    def exact_div_scalar(self, k: int) -> "IntPoly":
        if any(v % k for v in self.coeffs):
            raise MathContractError(f"polynomial not divisible by {k}")
        return IntPoly(v // k for v in self.coeffs)

    def exact_div(self, divisor: "IntPoly") -> "IntPoly":
        """Exact polynomial division; raises if the remainder is nonzero."""
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dc = divisor.coeffs
        lead = dc[-1]
        qdeg = len(rem) - len(dc)
        if qdeg < 0:
            if any(rem):
                raise MathContractError("nonzero remainder in exact division")
            return IntPoly(())
        q = [0] * (qdeg + 1)
        for i in range(qdeg, -1, -1):
            head = rem[i + len(dc) - 1]
            if head % lead:
                raise MathContractError("nonzero remainder in exact division")
            q[i] = head // lead
            if q[i]:
                for j, d in enumerate(dc):
                    rem[i + j] -= q[i] * d
        if any(rem):
            raise MathContractError("nonzero remainder in exact division")
        return IntPoly(q)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"


class BiPoly:
    """Sparse bivariate polynomial over Z, stored as {(i, j): coeff}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BiPoly":
        return cls({(i, j): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    def scale(self, k: int) -> "BiPoly":
        return BiPoly({key: k * v for key, v in self.terms.items()})

    def exact_div_scalar(self, k: int) -> "BiPoly":
        if any(v % k for v in self.terms.values()):
            raise MathContractError(f"polynomial not divisible by {k}")
        return BiPoly({key: v // k for key, v in self.terms.items()})

    def substitute_powers(self, m: int) -> "BiPoly":
        """Replace (a, b) by (a^m, b^m): scales every exponent by m."""
        return BiPoly({(i * m, j * m): v for (i, j), v in self.terms.items()})

    def substitute_diag(self) -> IntPoly:
        """Evaluate at b = 1 - a, returning a univariate polynomial."""
        acc = IntPoly(())
        one_minus_a = IntPoly((1, -1))
        pow_cache = {0: IntPoly((1,))}

        def ompow(n: int) -> IntPoly:
            if n not in pow_cache:
                pow_cache[n] = ompow(n - 1) * one_minus_a
            return pow_cache[n]

        for (i, j), c in sorted(self.terms.items()):
            term = IntPoly([0] * i + [c])
            acc = acc + term * ompow(j)
        return acc

    def __call__(self, a, b):
        return sum(c * a**i * b**j for (i, j), c in self.terms.items())

    def __repr__(self) -> str:
        return f"BiPoly({self.terms})"


def trinomial_pow(n: int) -> BiPoly:
    """(a + b - 1)^n expanded by the multinomial theorem."""
    terms = {}
    fn = factorial(n)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            k = n - i - j
            c = fn // (factorial(i) * factorial(j) * factorial(k))
            terms[(i, j)] = c if k % 2 == 0 else -c
    return BiPoly(terms)


def psi_poly(p: int) -> BiPoly:
    """The splitting polynomial psi(a,b) = (a^p + b^p - 1 - (a+b-1)^p)/p."""
    _require_odd_prime(p)
    num = (
        BiPoly.monomial(p, 0)
        + BiPoly.monomial(0, p)
        + BiPoly.monomial(0, 0, -1)
        - trinomial_pow(p)
    )
    return num.exact_div_scalar(p)


def psi_diag(p: int) -> IntPoly:
    """psi(a, 1-a) = (a^p + (1-a)^p - 1)/p, computed by direct expansion."""
    _require_odd_prime(p)
    coeffs = [0] * (p + 1)
    coeffs[p] += 1
    for k in range(p + 1):  # (1-a)^p
        coeffs[k] += comb(p, k) * (-1) ** k
    coeffs[0] -= 1
    return IntPoly(coeffs).exact_div_scalar(p)


def capital_psi(p: int) -> IntPoly:
    """PsiCap with psi(a, 1-a) = a(a-1)*PsiCap(a); monic of degree p-3."""
    quotient = psi_diag(p).exact_div(IntPoly((0, -1, 1)))
    if quotient.degree != p - 3:
        raise MathContractError(
            f"PsiCap for p={p} has degree {quotient.degree}, expected {p - 3}"
        )
    return quotient


# ---------------------------------------------------------------------------
# F_p polynomials
# ---------------------------------------------------------------------------


class FpPoly:
    """Dense univariate polynomial over F_p; gcds are returned monic."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        self.p = p
        c = [v % p for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_intpoly(cls, p: int, f: IntPoly) -> "FpPoly":
        return cls(p, f.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def monic(self) -> "FpPoly":
        if not self:
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return FpPoly(self.p, [v * inv for v in self.coeffs])

    def __add__(self, other: "FpPoly") -> "FpPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return FpPoly(self.p, out)

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, v in enumerate(other.coeffs):
            out[i] -= v
        return FpPoly(self.p, out)

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        if not self or not other:
            return FpPoly(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % self.p
        return FpPoly(self.p, out)

    def divmod(self, other: "FpPoly"):
        if not other:
            raise ZeroDivisionError
        p = self.p
        rem = list(self.coeffs)
        dc = other.coeffs
        inv = pow(dc[-1], -1, p)
        qdeg = len(rem) - len(dc)
        if qdeg < 0:
            return FpPoly(p, ()), FpPoly(p, rem)
        q = [0] * (qdeg + 1)
        for i in range(qdeg, -1, -1):
            factor = rem[i + len(dc) - 1] * inv % p
            q[i] = factor
            if factor:
                for j, d in enumerate(dc):
                    rem[i + j] = (rem[i + j] - factor * d) % p
        return FpPoly(p, q), FpPoly(p, rem)

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return self.divmod(other)[1]

    def gcd(self, other: "FpPoly") -> "FpPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "FpPoly":
        return FpPoly(self.p, [i * v for i, v in enumerate(self.coeffs)][1:])

    def pow_x_mod(self, e: int) -> "FpPoly":
        """x^e mod self, by square and multiply."""
        result = FpPoly(self.p, (1,))
        base = FpPoly(self.p, (0, 1)) % self
        while e:
            if e & 1:
                result = (result * base) % self
            base = (base * base) % self
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def roots_in_fp(self) -> list[int]:
        """Distinct roots in F_p; enumeration below ROOT_ENUM_THRESHOLD."""
        if not self:
            raise ValueError("zero polynomial")
        if self.p <= ROOT_ENUM_THRESHOLD:
            return [x for x in range(self.p) if self(x) == 0]
        # gcd with x^p - x isolates the F_p-rational part
        frob = self.pow_x_mod(self.p) - FpPoly(self.p, (0, 1))
        rational_part = self.gcd(frob)
        # the rational part splits into distinct linear factors; find them
        # by successive root extraction (degrees here are tiny)
        roots = []
        f = rational_part
        x = 0
        while f.degree > 0 and x < self.p:
            if f(x) == 0:
                roots.append(x)
                f, _ = f.divmod(FpPoly(self.p, (-x, 1)))
            else:
                x += 1
        return roots


def double_root_count(p: int) -> int:
    """Number of multiplicity-2 roots of PsiCap mod p lying in F_p.

    Also asserts the multiplicity contract: every repeated irreducible factor
    of PsiCap mod p is linear with F_p-rational root, no factor has
    multiplicity >= 3, and 0 <= 2s <= p-3.
    """
    _require_odd_prime(p)
    f = FpPoly.from_intpoly(p, capital_psi(p))
    # deg f = p-3 < p, so gcd(f, f') = prod q_i^(e_i - 1) classically
    rep = f.gcd(f.derivative())
    if rep.degree > 0 and rep.gcd(rep.derivative()).degree > 0:
        raise MathContractError(
            f"multiplicity contract violation: PsiCap mod {p} has a factor of multiplicity >= 3"
        )
    s = rep.degree
    if s:
        n_roots = len(rep.roots_in_fp())
        if n_roots != s:
            raise MathContractError(
                f"multiplicity contract violation: repeated factor of PsiCap mod {p} "
                "is not a product of F_p-rational linear factors"
            )
    if not 0 <= 2 * s <= p - 3:
        raise MathContractError(
            f"multiplicity contract violation: 2s = {2 * s} outside [0, {p - 3}] for p={p}"
        )
    return s


def double_roots(p: int) -> list[int]:
    """The multiplicity-2 roots of PsiCap mod p, as elements of [0, p)."""
    _require_odd_prime(p)
    f = FpPoly.from_intpoly(p, capital_psi(p))
    rep = f.gcd(f.derivative())
    return sorted(rep.roots_in_fp()) if rep.degree > 0 else []


def rho(p: int, m: int) -> int:
    """Count of squared linear factors of PsiCap(X^m) over the algebraic closure.

    Each F_p-rational double root contributes m distinct m-th roots, so this
    is m * double_root_count(p).
    """
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    return m * double_root_count(p)


def fermat_split_check(p: int, m: int, cap: int = DEFAULT_SPLIT_CAP) -> bool:
    """Exact check of X^N + Y^N - 1 = (X^m + Y^m - 1)^p + p*psi(X^m, Y^m)."""
    _require_odd_prime(p)
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    n = p * m
    if n > cap:
        raise CapExceeded(f"degree N = {n} exceeds the splitting-check cap {cap}")
    lhs = (
        BiPoly.monomial(n, 0)
        + BiPoly.monomial(0, n)
        + BiPoly.monomial(0, 0, -1)
    )
    rhs = trinomial_pow(p).substitute_powers(m) + psi_poly(p).substitute_powers(m).scale(p)
    return lhs == rhs
