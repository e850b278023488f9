"""Identity suites: every exact claim the package encodes, as pass/fail checks.

The CLI's verify command runs these; the acceptance tests reuse them. Checks
return data (CheckResult), they do not raise, so a single run reports every
failure at once.
"""

from __future__ import annotations

from fractions import Fraction

from . import bounds, divisors, polyarith
from .errors import MathContractError, ParameterError
from .fiber import (
    CheckResult,
    QDivisor,
    a_number,
    canonical_pair,
    p_a_divisor,
    pair,
    pair_profile,
    validate,
)
from .model import FermatModel, build_config, i_c, i_c_matches_pairing, transversality_check

#: the (p, m) pairs the acceptance suites run on
ACCEPTANCE_PAIRS = ((3, 5), (5, 3), (3, 7), (7, 3), (5, 7), (7, 5), (3, 11), (11, 3))


def _models(pairs=ACCEPTANCE_PAIRS) -> list[FermatModel]:
    return [build_config(p, m) for p, m in pairs]


# ---------------------------------------------------------------------------
# polynomial suite
# ---------------------------------------------------------------------------


def suite_polynomial() -> list[CheckResult]:
    out = []

    psi5 = polyarith.capital_psi(5)
    out.append(
        CheckResult(
            "PsiCap(5) = a^2 - a + 1, also mod 5",
            psi5.coeffs == (1, -1, 1)
            and polyarith.FpPoly.from_intpoly(5, psi5).coeffs == (1, 4, 1),
        )
    )

    psi7 = polyarith.FpPoly.from_intpoly(7, polyarith.capital_psi(7))
    # (a+2)^2 (a+4)^2 over F_7, up to a unit
    factor = polyarith.FpPoly(7, (2, 1)) * polyarith.FpPoly(7, (2, 1))
    factor = factor * polyarith.FpPoly(7, (4, 1)) * polyarith.FpPoly(7, (4, 1))
    unit_ok = False
    if psi7.degree == factor.degree and psi7.degree >= 0:
        u = psi7.coeffs[-1] * pow(factor.coeffs[-1], -1, 7) % 7
        unit_ok = all(
            a == u * b % 7 for a, b in zip(psi7.coeffs, factor.coeffs)
        )
    out.append(CheckResult("PsiCap(7) mod 7 = unit*(a+2)^2 (a+4)^2", unit_ok))

    for p, want in ((3, 0), (5, 0), (7, 2)):
        got = polyarith.double_root_count(p)
        out.append(
            CheckResult(
                f"double_root_count({p}) = {want}",
                got == want,
                "" if got == want else f"got {got}",
            )
        )

    for p, m in ACCEPTANCE_PAIRS:
        out.append(
            CheckResult(
                f"splitting identity for (p, m) = ({p}, {m})",
                polyarith.fermat_split_check(p, m),
            )
        )
    return out


# ---------------------------------------------------------------------------
# fiber/configuration suite
# ---------------------------------------------------------------------------


def expected_census(p: int, m: int, s: int) -> dict[str, int]:
    rho = m * s
    return {
        "Fm": 1,
        "LXYZ": 3 * m,
        "Chain": 3 * m * p * (m - 1),
        "Lgamma": m * rho,
        "LgammaLeaf": p * m * rho,
        "Ldelta": m * m * (p - 3) - 2 * m * rho,
    }


def suite_fiber(models: list[FermatModel] | None = None) -> list[CheckResult]:
    out = []
    for model in models or _models():
        p, m, s = model.params.p, model.params.m, model.params.s
        tag = f"(p={p}, m={m})"

        want = expected_census(p, m, s)
        got = model.census()
        out.append(
            CheckResult(
                f"census {tag}",
                got == want,
                "" if got == want else f"got {got}, want {want}",
            )
        )

        checks = validate(model.config)
        for chk in checks:
            out.append(CheckResult(f"{chk.name} {tag}", chk.passed, chk.detail))

        out.append(
            CheckResult(f"transversality identity {tag}", transversality_check(model))
        )
        out.append(
            CheckResult(f"I_C = (C . F - d_C C) for all C {tag}", i_c_matches_pairing(model))
        )

        ic_ok = (
            all(
                i_c(model.config, model.chain(j, 1, 1)) == 2 * j
                for j in range(1, m)
            )
            and i_c(model.config, model.lxyz(1)) == p + p * (m - 1)
            and i_c(model.config, model.fm) == m * m * p
        )
        out.append(CheckResult(f"I_C table values {tag}", ic_ok))

        n_l1 = sum(
            1 for lab in model.labels if lab.kind == "Chain" and lab.j == 1
        )
        out.append(
            CheckResult(
                f"cusp sections biject with mult-1 chain ends {tag}",
                len(model.cusps) == n_l1 == 3 * model.params.n
                and len({c.target for c in model.cusps}) == len(model.cusps),
            )
        )
    return out


# ---------------------------------------------------------------------------
# divisor suite
# ---------------------------------------------------------------------------


def representative_relation_full(model: FermatModel) -> CheckResult:
    """(V_D . C) = a_C/(2g-2) - delta_{D,C}/d_D for every ordered pair (D, C)."""
    config = model.config
    two_g2 = 2 * model.params.genus - 2
    base = {
        c.cid: Fraction(a_number(config, c.cid), two_g2)
        for c in config.components
        if a_number(config, c.cid) != 0
    }
    for d in config.components:
        vd = divisors.v_divisor(model, d.cid)
        prof = pair_profile(config, vd)
        want = dict(base)
        corr = want.get(d.cid, Fraction(0)) - Fraction(1, d.multiplicity)
        if corr:
            want[d.cid] = corr
        else:
            want.pop(d.cid, None)
        if prof != want:
            return CheckResult(
                "representative pairing relation (all pairs)",
                False,
                f"fails for D={d.label}",
            )
    return CheckResult("representative pairing relation (all pairs)", True)


def gauge_reproduction(model: FermatModel) -> CheckResult:
    """solve_gauge with the relation targets reproduces every representative."""
    from .fiber import GaugeSolver

    config = model.config
    two_g2 = 2 * model.params.genus - 2
    gauge_val = Fraction(model.params.p - 2, two_g2)
    solver = GaugeSolver(config, model.fm)
    base = {c.cid: Fraction(a_number(config, c.cid), two_g2) for c in config.components}
    for d in config.components:
        targets = dict(base)
        targets[d.cid] = targets[d.cid] - Fraction(1, d.multiplicity)
        got = solver.solve(targets, gauge_val)
        if got != divisors.v_divisor(model, d.cid):
            return CheckResult(
                "gauged solver reproduces representatives",
                False,
                f"fails for D={d.label}",
            )
    return CheckResult("gauged solver reproduces representatives", True)


def suite_divisor(models: list[FermatModel] | None = None) -> list[CheckResult]:
    out = []
    for model in models or _models():
        p, m = model.params.p, model.params.m
        tag = f"(p={p}, m={m})"
        config = model.config

        out.append(_retag(representative_relation_full(model), tag))

        closed_ok = True
        detail = ""
        for c in config.components:
            vc = divisors.v_divisor(model, c.cid)
            if pair(config, vc, vc) != divisors.v_self_closed(model, c.cid):
                closed_ok, detail = False, f"V_D^2 fails for D={c.label}"
                break
            if pair(config, divisors.v_s(model), vc) != divisors.vs_pair_closed(
                model, c.cid
            ):
                closed_ok, detail = False, f"(V_S.V_D) fails for D={c.label}"
                break
        out.append(CheckResult(f"self/cross closed forms {tag}", closed_ok, detail))

        out.append(_retag(gauge_reproduction(model), tag))
    return out


def suite_beta(models: list[FermatModel] | None = None) -> list[CheckResult]:
    out = []
    for model in models or _models():
        params = model.params
        p, m, n, g = params.p, params.m, params.n, params.genus
        tag = f"(p={p}, m={m})"
        config = model.config
        ln = divisors.lambda_nu(params)
        b = n * ln.total
        cusps = [(1, 1), (2, 3), (3, p)]

        try:
            betas = [divisors.beta_s(model, c) for c in cusps]
            beta_ok = len(set(betas)) == 1
            detail = ""
        except MathContractError as exc:
            beta_ok, betas, detail = False, [], str(exc)
        out.append(CheckResult(f"beta graph = closed form, all cusps {tag}", beta_ok, detail))

        if betas:
            closed69 = bounds.beta_sp_closed(n, p)
            out.append(
                CheckResult(
                    f"beta equals alpha-polynomial closed form {tag}",
                    betas[0] == closed69,
                    "" if betas[0] == closed69 else f"{betas[0]} != {closed69}",
                )
            )

        gs_vals = [
            pair(config, divisors.g_s(model, c), divisors.g_s(model, c)) for c in cusps
        ]
        want_gs = -Fraction(n - p + 1, n)
        out.append(
            CheckResult(
                f"G_S^2 = -(N-p+1)/N, all cusps {tag}",
                all(v == want_gs for v in gs_vals),
            )
        )

        vsq_ok = True
        ku_ok = True
        semi_ok = True
        for c in cusps:
            us = divisors.u_s(model, c)
            x = divisors.v_s(model, c).scale(2) + us
            vsq_ok &= pair(config, x, x) == -b * b
            ku_ok &= canonical_pair(config, us) == (2 * m - 3) * b
            semi_ok &= min(v for _, v in divisors.semipos_check(model, c)) >= 0
        out.append(CheckResult(f"square identity for 2V_S+U_S {tag}", vsq_ok))
        out.append(CheckResult(f"canonical pairing of U_S {tag}", ku_ok))
        out.append(CheckResult(f"semipositivity at every component {tag}", semi_ok))

        es_ok = True
        for c in cusps:
            gs = divisors.g_s(model, c)
            prof = pair_profile(config, gs)
            sect = divisors.cusp_section(model, c)
            want = {model.fm: Fraction(1, p), sect.target: Fraction(-1)}
            es_ok &= prof == want
        out.append(CheckResult(f"(S + G_S) pairing profile {tag}", es_ok))
    return out


def _retag(chk: CheckResult, tag: str) -> CheckResult:
    return CheckResult(f"{chk.name} {tag}", chk.passed, chk.detail)


# ---------------------------------------------------------------------------
# fundamental cycles
# ---------------------------------------------------------------------------


def suite_cycles(models: list[FermatModel] | None = None) -> list[CheckResult]:
    out = []
    for model in models or _models():
        p, m = model.params.p, model.params.m
        tag = f"(p={p}, m={m})"
        config = model.config
        ok = True
        for i in range(1, 3 * m + 1):
            for k in range(1, p + 1):
                z = QDivisor({model.chain(j, k, i): Fraction(1) for j in range(1, m)})
                if p_a_divisor(config, z) != 0:
                    ok = False
        for lab in model.labels:
            if lab.kind == "LgammaLeaf":
                if p_a_divisor(config, QDivisor.single(model.cid(lab))) != 0:
                    ok = False
        out.append(CheckResult(f"fundamental cycles have p_a = 0 {tag}", ok))
    return out


# ---------------------------------------------------------------------------
# bounds suite
# ---------------------------------------------------------------------------


def suite_bounds(models: list[FermatModel] | None = None, scan_to: int = 10**4) -> list[CheckResult]:
    out = []
    for model in models or _models():
        params = model.params
        n, p = params.n, params.p
        tag = f"(p={p}, m={params.m})"
        try:
            graph = divisors.per_prime_geometric(model)
            ok = graph == bounds.q_np(n, p)
            detail = ""
        except MathContractError as exc:
            ok, detail = False, str(exc)
        out.append(CheckResult(f"per-prime geometric = Q(N,p) {tag}", ok, detail))
        out.append(
            CheckResult(
                f"beta closed forms agree {tag}",
                bounds.beta_sp_closed(n, p)
                == n
                * divisors.lambda_nu(params).total
                * (
                    n * divisors.lambda_nu(params).total * Fraction(params.genus - 1, params.genus)
                    + 4 * params.m
                    - 6
                ),
            )
        )
    try:
        rows = bounds.scan_rows(scan_to)
        out.append(
            CheckResult(
                f"strict lower/simple inequality for all N <= {scan_to}",
                all(r["ratio"] > 1 for r in rows),
                f"{len(rows)} values of N",
            )
        )
    except MathContractError as exc:
        out.append(CheckResult(f"strict lower/simple inequality for all N <= {scan_to}", False, str(exc)))
    return out


SUITES = {
    "polynomial": lambda: suite_polynomial(),
    "fiber": lambda: suite_fiber(),
    "divisor": lambda: suite_divisor() + suite_beta() + suite_cycles(),
    "bounds": lambda: suite_bounds(),
}


def run_suites(which: str = "all") -> list[CheckResult]:
    if which == "all":
        names = list(SUITES)
    elif which in SUITES:
        names = [which]
    else:
        raise ParameterError(f"unknown suite {which!r}; choose from all, " + ", ".join(SUITES))
    results = []
    for name in names:
        results.extend(SUITES[name]())
    return results
