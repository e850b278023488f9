"""Construction of the Fermat special-fiber configuration for N = p*m.

Component census for the minimal regular model at a prime above p (writing
s for the number of F_p-rational double roots of the splitting polynomial,
so the closure count is rho = m*s):

    Chain(j,k,i)   3mp per level j in [1, m-1]   mult j   genus 0          self -2
    LXYZ(i)        3m                            mult m   genus 0          self -p
    Lgamma(i)      m*rho = m^2 s                 mult 2   genus 0          self -p
    LgammaLeaf(j,i) p*m*rho = p m^2 s            mult 1   genus 0          self -2
    Ldelta(i)      m^2 (p-3) - 2 m rho           mult 1   genus 0          self -p
    Fm             1                             mult p   genus (m-1)(m-2)/2  self -m^2

Adjacency is a tree: chains hang off each LXYZ, leaves off each Lgamma, and
LXYZ/Lgamma/Ldelta all meet Fm, every intersection a single transversal point.
Each multiplicity-one chain end Chain(1,k,i) is met by exactly one cusp section.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import polyarith
from .errors import ParameterError
from .fiber import (
    Component,
    CuspSection,
    FiberConfig,
    QDivisor,
    pair_component,
)

KINDS = ("Fm", "LXYZ", "Chain", "Lgamma", "LgammaLeaf", "Ldelta")


@dataclass(frozen=True, order=True)
class FermatLabel:
    """Canonical component label; sort order (kind, i, k, j) is the id order."""

    kind: str
    i: int = 0
    k: int = 0
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "Fm":
            return "Fm"
        if self.kind in ("LXYZ", "Lgamma", "Ldelta"):
            return f"{self.kind}({self.i})"
        if self.kind == "LgammaLeaf":
            return f"LgammaLeaf(j={self.j},i={self.i})"
        return f"Chain(j={self.j},k={self.k},i={self.i})"


def genus_formula(n: int) -> int:
    """Genus (N-1)(N-2)/2 of the degree-N Fermat curve."""
    if n < 3:
        raise ParameterError(f"N must be >= 3, got {n}")
    return (n - 1) * (n - 2) // 2


def _is_squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FermatParams:
    """Validated parameters (p, m, s) with N = p*m odd squarefree composite."""

    p: int
    m: int
    s: int

    def __post_init__(self):
        if not polyarith.is_prime(self.p) or self.p == 2:
            raise ParameterError(f"p must be an odd prime, got {self.p}")
        if self.m == 1:
            raise ParameterError(
                "m = 1 (prime exponent) uses a different minimal model; not supported"
            )
        if self.m < 3 or self.m % 2 == 0:
            raise ParameterError(f"m must be odd and >= 3, got {self.m}")
        if self.m % self.p == 0:
            raise ParameterError(f"gcd(p, m) must be 1, got p={self.p}, m={self.m}")
        if not _is_squarefree(self.m):
            raise ParameterError(f"N = p*m must be squarefree; m={self.m} is not")
        if not 0 <= 2 * self.s <= self.p - 3:
            raise ParameterError(
                f"s={self.s} violates 0 <= 2s <= p-3 for p={self.p}"
            )

    @property
    def n(self) -> int:
        return self.p * self.m

    @property
    def genus(self) -> int:
        return genus_formula(self.n)

    @property
    def rho(self) -> int:
        return self.m * self.s


@dataclass(frozen=True)
class FermatModel:
    """A built configuration plus its label index and cusp sections."""

    params: FermatParams
    config: FiberConfig
    labels: tuple[FermatLabel, ...]
    by_label: dict = field(repr=False)
    cusps: tuple[CuspSection, ...]

    def cid(self, label: FermatLabel) -> int:
        try:
            return self.by_label[label]
        except KeyError:
            raise ParameterError(f"no component labelled {label}") from None

    @property
    def fm(self) -> int:
        return self.cid(FermatLabel("Fm"))

    def lxyz(self, i: int) -> int:
        return self.cid(FermatLabel("LXYZ", i=i))

    def chain(self, j: int, k: int, i: int) -> int:
        return self.cid(FermatLabel("Chain", i=i, k=k, j=j))

    def lgamma(self, i: int) -> int:
        return self.cid(FermatLabel("Lgamma", i=i))

    def leaf(self, j: int, i: int) -> int:
        return self.cid(FermatLabel("LgammaLeaf", i=i, j=j))

    def ldelta(self, i: int) -> int:
        return self.cid(FermatLabel("Ldelta", i=i))

    def cusp(self, i: int, k: int) -> CuspSection:
        """The cusp section meeting Chain(1, k, i)."""
        return CuspSection(self.chain(1, k, i))

    def census(self) -> dict[str, int]:
        out = {kind: 0 for kind in KINDS}
        for lab in self.labels:
            out[lab.kind] += 1
        return out


def build_config(p: int, m: int, s: int | None = None) -> FermatModel:
    """Build the special-fiber configuration for given (p, m, s).

    s (the double-root count) is an explicit parameter so synthetic
    configurations can be exercised; pass None to derive it from the
    polynomial arithmetic.
    """
    if s is None:
        s = polyarith.double_root_count(p)
    params = FermatParams(p, m, s)
    n_gamma = m * params.rho
    n_delta = m * m * (p - 3) - 2 * m * params.rho

    labels: list[FermatLabel] = [FermatLabel("Fm")]
    labels += [FermatLabel("LXYZ", i=i) for i in range(1, 3 * m + 1)]
    labels += [
        FermatLabel("Chain", i=i, k=k, j=j)
        for i in range(1, 3 * m + 1)
        for k in range(1, p + 1)
        for j in range(1, m)
    ]
    labels += [FermatLabel("Lgamma", i=i) for i in range(1, n_gamma + 1)]
    labels += [
        FermatLabel("LgammaLeaf", i=i, j=j)
        for i in range(1, n_gamma + 1)
        for j in range(1, p + 1)
    ]
    labels += [FermatLabel("Ldelta", i=i) for i in range(1, n_delta + 1)]
    labels.sort()

    by_label = {lab: cid for cid, lab in enumerate(labels)}
    comps = []
    for cid, lab in enumerate(labels):
        if lab.kind == "Fm":
            comp = Component(cid, lab, p, (m - 1) * (m - 2) // 2, -m * m)
        elif lab.kind == "LXYZ":
            comp = Component(cid, lab, m, 0, -p)
        elif lab.kind == "Chain":
            comp = Component(cid, lab, lab.j, 0, -2)
        elif lab.kind == "Lgamma":
            comp = Component(cid, lab, 2, 0, -p)
        elif lab.kind == "LgammaLeaf":
            comp = Component(cid, lab, 1, 0, -2)
        else:
            comp = Component(cid, lab, 1, 0, -p)
        comps.append(comp)

    fm = by_label[FermatLabel("Fm")]
    pairs: dict[tuple[int, int], int] = {}

    def edge(a: int, b: int) -> None:
        pairs[(min(a, b), max(a, b))] = 1

    for i in range(1, 3 * m + 1):
        lx = by_label[FermatLabel("LXYZ", i=i)]
        edge(lx, fm)
        for k in range(1, p + 1):
            for j in range(1, m - 1):
                edge(
                    by_label[FermatLabel("Chain", i=i, k=k, j=j)],
                    by_label[FermatLabel("Chain", i=i, k=k, j=j + 1)],
                )
            edge(by_label[FermatLabel("Chain", i=i, k=k, j=m - 1)], lx)
    for i in range(1, n_gamma + 1):
        lg = by_label[FermatLabel("Lgamma", i=i)]
        edge(lg, fm)
        for j in range(1, p + 1):
            edge(by_label[FermatLabel("LgammaLeaf", i=i, j=j)], lg)
    for i in range(1, n_delta + 1):
        edge(by_label[FermatLabel("Ldelta", i=i)], fm)

    config = FiberConfig(comps, pairs, params.genus)
    cusps = tuple(
        CuspSection(by_label[FermatLabel("Chain", i=i, k=k, j=1)])
        for i in range(1, 3 * m + 1)
        for k in range(1, p + 1)
    )
    return FermatModel(params, config, tuple(labels), by_label, cusps)


def i_c(config: FiberConfig, cid: int) -> int:
    """Sum of neighbor multiplicities weighted by intersection points."""
    return sum(
        config.component(nbr).multiplicity * cnt
        for nbr, cnt in config.neighbors(cid).items()
    )


def transversality_check(model: FermatModel) -> bool:
    """Exact check of 2g - 2 = sum I_C + 2 p g_a(F_m) - 2 sum d_C.

    Equivalent, for these fibers, to 2g - 2 = m^2 p^2 - 3 m p.
    """
    config = model.config
    p, m = model.params.p, model.params.m
    total_ic = sum(i_c(config, c.cid) for c in config.components)
    total_d = sum(c.multiplicity for c in config.components)
    g_fm = (m - 1) * (m - 2) // 2
    lhs = 2 * model.params.genus - 2
    if lhs != total_ic + 2 * p * g_fm - 2 * total_d:
        return False
    return lhs == m * m * p * p - 3 * m * p


def i_c_matches_pairing(model: FermatModel) -> bool:
    """Transversality makes I_C = (C . F - d_C C) an equality for every C."""
    config = model.config
    fpi = config.fiber_divisor()
    for c in config.components:
        rest = fpi - QDivisor.single(c.cid, c.multiplicity)
        if Fraction(i_c(config, c.cid)) != pair_component(config, rest, c.cid):
            return False
    return True
