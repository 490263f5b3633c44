"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py``; the lines are printed even
when output capture is on.  Criteria 4, 5 and 9 share one full default-grid
verification run (about two minutes).
"""

import math
import random
import time
from fractions import Fraction

import pytest

from umbral_kernel.harness import (
    GridConfig,
    all_ids,
    dumps,
    resolve_identity,
    verify_document,
    verify_exit_code,
)
from umbral_kernel.identities import SUITE_A, SUITE_B, mu_certification
from umbral_kernel.mixed import (
    MixedParams,
    cp_oracle,
    cp_sheffer_pair,
    cphat_oracle,
    cphat_sheffer_pair,
    one_plus_exp_pow_explicit,
)
from umbral_kernel.polynomial import Polynomial
from umbral_kernel.sequences import (
    changhee_poly,
    falling_poly,
    peters_base_series,
    peters_base_series_explicit,
    peters_poly,
    rising_poly,
    stirling1,
)
from umbral_kernel.series import (
    Series,
    exp_series,
    log1p_series,
    one,
    ps_comp_inverse,
    ps_compose,
    ps_mul,
    ps_pow,
    variable,
)
from umbral_kernel.umbral import (
    ShefferPair,
    connection_constants,
    pair,
    sheffer_coeff_formula,
    sheffer_polys,
    transfer,
    working_order,
)

F = Fraction
GRID = GridConfig()


@pytest.fixture
def report(capsys):
    def emit(number, ok, text, seconds):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}  {text} ({seconds:.2f} s)")
    return emit


def classical_pairs(order):
    return {
        "(1, t)": ShefferPair.associated(variable(order)),
        "(1, e^t - 1)": ShefferPair.associated(exp_series(order) - one(order)),
        "(1, 1 - e^-t)": ShefferPair.associated(one(order) - exp_series(order, -1)),
    }


@pytest.fixture(scope="module")
def full_run():
    """Every identity over the default grid, timed one identity at a time."""
    sections, times = [], {}
    start = time.perf_counter()
    for ident_id in all_ids():
        t0 = time.perf_counter()
        sections.append(resolve_identity(ident_id, GRID))
        times[ident_id] = time.perf_counter() - t0
    total = time.perf_counter() - start
    return sections, times, total


def test_criterion_1_small_case_values(report):
    t0 = time.perf_counter()
    lambdas = list(GRID.lambda_values) + [F(0)]
    bad = []
    for lam in lambdas:
        for mu in GRID.mu_values:
            if peters_poly(lam, mu, 0) != Polynomial([F(1, 2) ** mu]):
                bad.append(("S0", lam, mu))
            if peters_poly(lam, mu, 1) != Polynomial([-lam * mu, 2]) * F(1, 2) ** (mu + 1):
                bad.append(("S1", lam, mu))
    changhee_ok = peters_poly(1, 1, 1) == changhee_poly(1) == Polynomial([F(-1, 4), F(1, 2)])
    dt = time.perf_counter() - t0
    ok = not bad and changhee_ok and dt < 1
    report(1, ok, f"S0, S1 over {len(lambdas) * len(GRID.mu_values)} (lambda, mu) points, "
                  f"Changhee S1(x;1,1); mismatches={bad}", dt)
    assert ok


def test_criterion_2_oracle_matches_sheffer(report):
    t0 = time.perf_counter()
    n = 10
    order = working_order(n)
    bad = []
    points = GRID.params()
    for p in points:
        if sheffer_polys(cp_sheffer_pair(p, order), n) != cp_oracle(p, n):
            bad.append(("CP", p))
        if sheffer_polys(cphat_sheffer_pair(p, order), n) != cphat_oracle(p, n):
            bad.append(("CPhat", p))
    dt = time.perf_counter() - t0
    ok = not bad and len(points) == 150 and dt < 30
    report(2, ok, f"generating function vs Sheffer route, {len(points)} triples, n <= {n}, "
                  f"both families; mismatches={len(bad)}", dt)
    assert ok


def test_criterion_3_dual_construction(report):
    t0 = time.perf_counter()
    n = 10
    order = working_order(n)
    pairs = list(classical_pairs(order).items())
    for p in GRID.params():
        pairs.append((f"CP{p.to_json()}", cp_sheffer_pair(p, order)))
        pairs.append((f"CPhat{p.to_json()}", cphat_sheffer_pair(p, order)))
    bad = [name for name, sp in pairs
           if [sheffer_coeff_formula(sp, i) for i in range(n + 1)] != sheffer_polys(sp, n)]
    dt = time.perf_counter() - t0
    report(3, not bad, f"expansion vs coefficient formula, 3 classical pairs + both mixed pairs "
                       f"at all {len(GRID.params())} grid triples, n <= {n}; mismatches={bad[:3]}", dt)
    assert not bad


def test_criterion_4_suite_a(report, full_run):
    sections, times, _ = full_run
    suite_a = [s for s in sections if s.ident.suite == "A"]
    ok = (sorted(s.ident.id for s in suite_a) == sorted(SUITE_A)
          and all(s.state == "verified" for s in suite_a))
    add_y = {r.aux.get("y") for s in suite_a if s.ident.id.startswith("ADD") for r in s.printed}
    ok = ok and set(GRID.y_values) | {None} <= add_y and verify_exit_code(suite_a) == 0
    states = {s.ident.id: s.state for s in suite_a}
    report(4, ok, f"suite A as written, n <= {GRID.n_max}, default grid, ADD at all y and "
                  f"bivariate; states={states}", sum(times[i] for i in SUITE_A))
    assert ok


def test_criterion_5_suite_b(report, full_run, tmp_path):
    sections, times, _ = full_run
    suite_b = [s for s in sections if s.ident.suite == "B"]
    states = {s.ident.id: s.state for s in suite_b}
    ok = (sorted(states) == sorted(SUITE_B)
          and all(v in ("verified", "errata-resolved") for v in states.values()))
    for s in suite_b:
        if s.state == "errata-resolved":
            ok = ok and s.correction_note is not None and all(r.verified for r in s.corrected)
            ok = ok and any(not r.verified for r in s.printed)
    doc = verify_document(sections, GRID)
    ok = ok and len(doc["identities"]) == 30 and doc["exit_code"] == 0
    (tmp_path / "report.json").write_text(dumps(doc))
    resolved = sorted(k for k, v in states.items() if v == "errata-resolved")
    report(5, ok, f"suite B terminal states; errata-resolved={resolved}, "
                  f"others verified; report has {len(doc['identities'])} sections",
           sum(times[i] for i in SUITE_B))
    assert ok


def test_criterion_6_mu_certification(report):
    t0 = time.perf_counter()
    results = {}
    for ident_id in SUITE_A:
        rep = mu_certification(ident_id, 2, F(1, 2), 5)
        cert = rep.certificate or {}
        results[ident_id] = (rep.verified and cert.get("certified") is True
                             and cert.get("mu_values") == list(range(1, 14))
                             and cert.get("degree_bound") == 12 and "argument" in cert)
    dt = time.perf_counter() - t0
    ok = all(results.values())
    failed = [k for k, v in results.items() if not v]
    report(6, ok, f"mu certificates at (k, lambda) = (2, 1/2), n = 5, mu in 1..13 for "
                  f"{len(results)} suite A identities; failed={failed}", dt)
    assert ok


def test_criterion_7_structural_invariants(report):
    t0 = time.perf_counter()
    failures = []
    # log powers and Stirling numbers
    n = 12
    for m in range(7):
        power = one(n)
        for _ in range(m):
            power = ps_mul(power, log1p_series(n))
        if any(power.coeffs[l] != F(math.factorial(m) * stirling1(l, m), math.factorial(l))
               for l in range(n + 1)):
            failures.append(("log-power", m))
    # rising/falling reflection
    failures += [("reflection", i) for i in range(13)
                 if rising_poly(i) != falling_poly(i).reflect() * (-1) ** i]
    # two expansions of the Peters and exponential kernels
    for lam in GRID.lambda_values:
        for mu in GRID.mu_values:
            if peters_base_series(lam, mu, 10) != peters_base_series_explicit(lam, mu, 10):
                failures.append(("peters-kernel", lam, mu))
            for sign in (-1, 1):
                base = one(10) + exp_series(10, sign * lam)
                if one_plus_exp_pow_explicit(lam, mu, 10, sign) != ps_pow(base, mu):
                    failures.append(("exp-kernel", lam, mu, sign))
    # orthogonality
    order = working_order(8)
    pairs = list(classical_pairs(order).values())
    for p in GRID.params():
        pairs += [cp_sheffer_pair(p, order), cphat_sheffer_pair(p, order)]
    for sp in pairs:
        polys = sheffer_polys(sp, 8)
        gfk = sp.g
        for k in range(9):
            for i in range(9):
                if pair(gfk, polys[i]) != (math.factorial(i) if i == k else 0):
                    failures.append(("orthogonality", k, i))
            gfk = ps_mul(gfk, sp.f)
    # compositional inverse round trips
    rng = random.Random(20260101)
    deltas = [exp_series(16) - one(16), log1p_series(16), exp_series(16, -1) - one(16)]
    for _ in range(40):
        size = rng.randint(1, 16)
        cs = [F(0), F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))]
        cs += [F(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(size - 1)]
        deltas.append(Series(size, tuple(cs)))
    for f in deltas:
        inv = ps_comp_inverse(f)
        t = variable(f.order)
        if ps_compose(f, inv) != t or ps_compose(inv, f) != t:
            failures.append(("inverse", f))
    dt = time.perf_counter() - t0
    report(7, not failures, f"log powers (m <= 6, N = 12), reflection (n <= 12), kernel dual paths "
                            f"(N = 10), orthogonality on {len(pairs)} pairs (n, k <= 8), "
                            f"{len(deltas)} inverse round trips (N <= 16); failures={failures[:3]}", dt)
    assert not failures


def _triangular_expansion(basis, s):
    rest, row = s, [F(0)] * (s.degree + 1)
    for m in range(s.degree, -1, -1):
        row[m] = rest[m] / basis[m][m]
        rest = rest - basis[m] * row[m]
    return row if rest == 0 else None


def test_criterion_8_brute_force_cross_checks(report):
    t0 = time.perf_counter()
    failures = []
    order = working_order(8)
    classical = classical_pairs(order)
    mixed = [cp_sheffer_pair(MixedParams(2, F(1, 2), 3), order),
             cphat_sheffer_pair(MixedParams(-1, F(-1), -1), order)]
    combos = [(a, b) for a in list(classical.values()) + mixed for b in list(classical.values()) + mixed]
    for src, dst in combos:
        s_polys, r_polys = sheffer_polys(src, 6), sheffer_polys(dst, 6)
        for n in range(7):
            if connection_constants(src, dst, n) != _triangular_expansion(r_polys, s_polys[n]):
                failures.append(("connection", n))
    for n in range(1, 9):
        o = working_order(n)
        if transfer(variable(o), exp_series(o, -1) - one(o), n) != rising_poly(n) * (-1) ** n:
            failures.append(("transfer", n))
    dt = time.perf_counter() - t0
    report(8, not failures, f"connection constants vs triangular solve on {len(combos)} pair "
                            f"combinations (n <= 6), transfer vs signed rising factorial (n <= 8); "
                            f"failures={failures}", dt)
    assert not failures


def test_criterion_9_performance(report, full_run):
    sections, times, total = full_run
    slowest_a = max(SUITE_A, key=lambda i: times[i])
    ok = total < 300 and all(times[i] < 30 for i in SUITE_A) and len(sections) == 30
    report(9, ok, f"full default-grid verification {total:.1f} s (limit 300 s); slowest suite A "
                  f"identity {slowest_a} {times[slowest_a]:.1f} s (limit 30 s)", total)
    assert ok
