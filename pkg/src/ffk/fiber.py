"""Exact intersection theory on a single special fiber.

A fiber is a weighted graph: vertices are irreducible components carrying
multiplicity, genus and self-intersection; off-diagonal pairings count
transversal intersection points. All arithmetic is exact over Q.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import CapExceeded, MathContractError, NoSolutionError, ParameterError

DEFAULT_COMPONENT_CAP = 10**6
COMPONENT_CAP_ENV = "FFK_COMPONENT_CAP"


def component_cap() -> int:
    raw = os.environ.get(COMPONENT_CAP_ENV)
    if raw is None:
        return DEFAULT_COMPONENT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ParameterError(f"bad {COMPONENT_CAP_ENV} value: {raw!r}") from exc


@dataclass(frozen=True)
class Component:
    """One irreducible component of the special fiber."""

    cid: int
    label: Any
    multiplicity: int
    genus: int
    self_int: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ParameterError(f"component {self.label}: multiplicity must be >= 1")
        if self.genus < 0:
            raise ParameterError(f"component {self.label}: genus must be >= 0")


@dataclass(frozen=True)
class CuspSection:
    """Horizontal cusp section; meets exactly one vertical component once."""

    target: int


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


class QDivisor:
    """Vertical Q-divisor: finite map from component id to a rational coefficient.

    Zero coefficients are dropped on construction, so equality is structural.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self._c = {cid: Fraction(v) for cid, v in items if v != 0}

    @classmethod
    def zero(cls) -> "QDivisor":
        return cls()

    @classmethod
    def single(cls, cid: int, coeff=1) -> "QDivisor":
        return cls({cid: Fraction(coeff)})

    def coeff(self, cid: int) -> Fraction:
        return self._c.get(cid, Fraction(0))

    def items(self):
        return self._c.items()

    @property
    def support(self):
        return self._c.keys()

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        return isinstance(other, QDivisor) and self._c == other._c

    def __add__(self, other: "QDivisor") -> "QDivisor":
        out = dict(self._c)
        for cid, v in other._c.items():
            out[cid] = out.get(cid, Fraction(0)) + v
        return QDivisor(out)

    def __sub__(self, other: "QDivisor") -> "QDivisor":
        return self + other.scale(-1)

    def scale(self, k) -> "QDivisor":
        k = Fraction(k)
        return QDivisor({cid: v * k for cid, v in self._c.items()})

    def __rmul__(self, k) -> "QDivisor":
        return self.scale(k)

    def is_effective_integral(self) -> bool:
        return all(v.denominator == 1 and v > 0 for v in self._c.values())

    def __repr__(self) -> str:
        inner = ", ".join(f"{cid}: {v}" for cid, v in sorted(self._c.items()))
        return f"QDivisor({{{inner}}})"


class FiberConfig:
    """Immutable weighted intersection graph of one special fiber.

    `pairings` holds the off-diagonal entries: (i, j) -> number of transversal
    intersection points, with i < j. Self-intersections live on the components.
    """

    def __init__(self, components: Iterable[Component], pairings: Mapping[tuple[int, int], int],
                 genus: int, cap: int | None = None):
        comps = tuple(components)
        limit = component_cap() if cap is None else cap
        if len(comps) > limit:
            raise CapExceeded(f"{len(comps)} components exceed the component cap {limit}")
        for i, c in enumerate(comps):
            if c.cid != i:
                raise ParameterError("component ids must be 0..n-1 in order")
        pairs = {}
        nbrs: list[dict[int, int]] = [{} for _ in comps]
        for (a, b), cnt in pairings.items():
            if a == b:
                raise ParameterError("diagonal entries belong to Component.self_int")
            if not (0 <= a < len(comps) and 0 <= b < len(comps)):
                raise ParameterError(f"unknown component id in pairing ({a}, {b})")
            if cnt == 0:
                continue
            key = (min(a, b), max(a, b))
            pairs[key] = pairs.get(key, 0) + cnt
        for (a, b), cnt in pairs.items():
            nbrs[a][b] = cnt
            nbrs[b][a] = cnt
        self.components = comps
        self.genus = genus
        self._pairs = pairs
        self._nbrs = tuple(nbrs)

    @property
    def n_components(self) -> int:
        return len(self.components)

    def component(self, cid: int) -> Component:
        try:
            return self.components[cid]
        except IndexError:
            raise ParameterError(f"unknown component id {cid}") from None

    def neighbors(self, cid: int) -> Mapping[int, int]:
        return self._nbrs[cid]

    def pair_cc(self, a: int, b: int) -> int:
        """Intersection number of two irreducible components."""
        if a == b:
            return self.component(a).self_int
        return self._nbrs[a].get(b, 0)

    def fiber_divisor(self) -> QDivisor:
        return QDivisor({c.cid: Fraction(c.multiplicity) for c in self.components})

    def edges(self):
        return self._pairs.items()


# ---------------------------------------------------------------------------
# pairing operations
# ---------------------------------------------------------------------------


def pair_component(config: FiberConfig, D: QDivisor, cid: int) -> Fraction:
    """(D . C) for a single component C."""
    comp = config.component(cid)
    total = D.coeff(cid) * comp.self_int
    for nbr, cnt in config.neighbors(cid).items():
        v = D.coeff(nbr)
        if v:
            total += v * cnt
    return total


def pair(config: FiberConfig, D: QDivisor, E: QDivisor) -> Fraction:
    """Bilinear extension of the component pairing; symmetric in D, E."""
    if len(D._c) > len(E._c):
        D, E = E, D
    total = Fraction(0)
    for cid, v in D.items():
        total += v * pair_component(config, E, cid)
    return total


def pair_profile(config: FiberConfig, D: QDivisor) -> dict[int, Fraction]:
    """All nonzero values of (D . C), keyed by component id.

    Sparse: touches only the support of D and its graph neighborhood.
    """
    out: dict[int, Fraction] = {}
    for cid, v in D.items():
        c = config.component(cid)
        out[cid] = out.get(cid, Fraction(0)) + v * c.self_int
        for nbr, cnt in config.neighbors(cid).items():
            out[nbr] = out.get(nbr, Fraction(0)) + v * cnt
    return {cid: v for cid, v in out.items() if v != 0}


def section_pair(config: FiberConfig, section: CuspSection, D: QDivisor) -> Fraction:
    """(S . D) for a cusp section: the coefficient of its target component."""
    return D.coeff(section.target)


def a_number(config: FiberConfig, cid: int) -> int:
    """Adjunction number -C^2 + 2 g_C - 2 = (K . C)."""
    c = config.component(cid)
    return -c.self_int + 2 * c.genus - 2


def canonical_pair(config: FiberConfig, D: QDivisor) -> Fraction:
    """(K . D) via adjunction, without constructing a canonical divisor."""
    return sum((v * a_number(config, cid) for cid, v in D.items()), Fraction(0))


def p_a_divisor(config: FiberConfig, D: QDivisor) -> Fraction:
    """Arithmetic genus 1 + (D^2 + K.D)/2 of an effective nonzero divisor."""
    if not D:
        raise ParameterError("p_a is undefined for the zero divisor")
    if not D.is_effective_integral():
        raise ParameterError("p_a requires integral coefficients >= 1")
    return 1 + Fraction(pair(config, D, D) + canonical_pair(config, D), 2)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(config: FiberConfig) -> list[CheckResult]:
    """Structural checks: symmetry, fiber orthogonality, kernel, adjunction sum.

    Failures are reported as data, never raised.
    """
    results = []

    sym_ok = all(
        config._nbrs[a].get(b) == config._nbrs[b].get(a) for (a, b) in config._pairs
    )
    results.append(CheckResult("pairing matrix symmetric", sym_ok))

    fpi = config.fiber_divisor()
    offender = next(
        (c.cid for c in config.components if pair_component(config, fpi, c.cid) != 0),
        None,
    )
    results.append(
        CheckResult(
            "fiber orthogonality (F.C = 0 for all C)",
            offender is None,
            "" if offender is None else f"fails at component {config.component(offender).label}",
        )
    )

    # kernel is exactly the multiplicity line: fix one coefficient, demand the
    # homogeneous solution reproduce the multiplicity vector
    gauge_cid = 0
    gauge_val = Fraction(config.component(gauge_cid).multiplicity)
    try:
        hom = solve_gauge(config, {}, (gauge_cid, gauge_val))
        kernel_ok = all(
            hom.coeff(c.cid) == c.multiplicity for c in config.components
        )
        detail = "" if kernel_ok else "homogeneous solution is not the multiplicity vector"
    except (NoSolutionError, MathContractError) as exc:
        kernel_ok, detail = False, str(exc)
    results.append(CheckResult("kernel spanned by multiplicity vector", kernel_ok, detail))

    total = sum(c.multiplicity * a_number(config, c.cid) for c in config.components)
    want = 2 * config.genus - 2
    results.append(
        CheckResult(
            "sum d_C a_C = 2g - 2",
            total == want,
            "" if total == want else f"got {total}, want {want}",
        )
    )
    return results


# ---------------------------------------------------------------------------
# gauged solver
# ---------------------------------------------------------------------------


class GaugeSolver:
    """Factor-once solver for (V . C) = t_C with one pinned coefficient.

    The sparse elimination depends only on the pairing matrix and the gauge
    component, so it is performed once; each solve replays the recorded row
    operations on a fresh right-hand side. On tree-shaped fibers this is
    linear per solve.
    """

    def __init__(self, config: FiberConfig, gauge_cid: int):
        import heapq

        config.component(gauge_cid)
        self.config = config
        self.gauge_cid = gauge_cid
        n = config.n_components

        rows: list[dict[int, Fraction]] = []
        for c in config.components:
            row = {c.cid: Fraction(c.self_int)} if c.self_int else {}
            for nbr, cnt in config.neighbors(c.cid).items():
                row[nbr] = Fraction(cnt)
            rows.append(row)
        rows.append({gauge_cid: Fraction(1)})

        col_rows: dict[int, set[int]] = {v: set() for v in range(n)}
        for ri, row in enumerate(rows):
            for v in row:
                col_rows[v].add(ri)

        heap = [(len(col_rows[v]), v) for v in range(n)]
        heapq.heapify(heap)
        ops: list[tuple[int, int, Fraction]] = []  # (target row, pivot row, factor)
        eliminated: list[tuple[int, int]] = []
        done: set[int] = set()
        active_rows = set(range(len(rows)))

        while heap:
            deg, var = heapq.heappop(heap)
            if var in done:
                continue
            occ = col_rows[var]
            if deg != len(occ):
                heapq.heappush(heap, (len(occ), var))
                continue
            if not occ:
                continue
            pivot_ri = min(occ, key=lambda ri: (len(rows[ri]), ri))
            pivot = rows[pivot_ri]
            pval = pivot[var]
            touched: set[int] = set()
            for ri in list(occ):
                if ri == pivot_ri:
                    continue
                row = rows[ri]
                factor = row[var] / pval
                ops.append((ri, pivot_ri, factor))
                for v2, c2 in pivot.items():
                    newv = row.get(v2, Fraction(0)) - factor * c2
                    if newv == 0:
                        if v2 in row:
                            del row[v2]
                            col_rows[v2].discard(ri)
                            touched.add(v2)
                    else:
                        if v2 not in row:
                            col_rows[v2].add(ri)
                            touched.add(v2)
                        row[v2] = newv
            for v2 in pivot:
                col_rows[v2].discard(pivot_ri)
                touched.add(v2)
            done.add(var)
            eliminated.append((var, pivot_ri))
            active_rows.discard(pivot_ri)
            for v2 in touched:
                if v2 not in done:
                    heapq.heappush(heap, (len(col_rows[v2]), v2))

        if len(eliminated) < n:
            raise MathContractError(
                "pairing system is rank-deficient beyond the fiber kernel"
            )
        for ri in active_rows:
            if rows[ri]:
                raise MathContractError("elimination left a non-empty row")

        self._rows = rows
        self._ops = ops
        self._eliminated = eliminated
        self._residual_rows = active_rows

    def solve(self, targets: Mapping[int, Fraction], gauge_val) -> QDivisor:
        config = self.config
        t = {cid: Fraction(v) for cid, v in targets.items() if v != 0}
        for cid in t:
            config.component(cid)
        compat = sum(
            (Fraction(config.component(cid).multiplicity) * v for cid, v in t.items()),
            Fraction(0),
        )
        if compat != 0:
            raise NoSolutionError(
                "no solution: targets are not orthogonal to the fiber "
                f"(sum d_C t_C = {compat})"
            )
        rhs = [t.get(c.cid, Fraction(0)) for c in config.components]
        rhs.append(Fraction(gauge_val))
        for ri, pivot_ri, factor in self._ops:
            if factor:
                rhs[ri] -= factor * rhs[pivot_ri]
        for ri in self._residual_rows:
            if rhs[ri] != 0:
                raise NoSolutionError("no solution: inconsistent targets")
        x: dict[int, Fraction] = {}
        for var, ri in reversed(self._eliminated):
            row = self._rows[ri]
            acc = rhs[ri]
            for v2, c2 in row.items():
                if v2 != var:
                    acc -= c2 * x.get(v2, Fraction(0))
            x[var] = acc / row[var]
        return QDivisor(x)


def solve_gauge(
    config: FiberConfig,
    targets: Mapping[int, Fraction],
    gauge: tuple[int, Fraction],
) -> QDivisor:
    """Solve (V . C) = targets[C] for all C, with one coefficient pinned.

    The pairing matrix of a connected fiber has a one-dimensional kernel, so
    the gauge row (coefficient of one chosen component) makes the solution
    unique. Targets must be orthogonal to the kernel: sum d_C targets[C] = 0.
    """
    gauge_cid, gauge_val = gauge
    return GaugeSolver(config, gauge_cid).solve(targets, gauge_val)
