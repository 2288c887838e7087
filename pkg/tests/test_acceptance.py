"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS lines as
they complete.  The moment experiments (criteria 8-10) share module-scoped
fixtures so the determinism criterion can reuse the single-worker runs.
"""

import math
import time

import pytest

from iqhecke.fields import FIELD_DS
from iqhecke.moments import MomentConfig, run_experiment
from iqhecke.sweeps import (
    applicable_orders,
    dual_sweep,
    fe_sweep,
    gauss_multiplicativity_sweep,
    gauss_prime_sweep,
    gauss_primepower_sweep,
    reciprocity_sweep,
    supplementary_sweep,
    theta_sweep,
)
from iqhecke.zeta import ideal_sum_partial, residue_at_one, zeta_K

pytestmark = pytest.mark.acceptance


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


def test_criterion_1_reciprocity_sweep():
    t0 = time.perf_counter()
    total = 0
    bad = []
    for d in FIELD_DS:
        for j in applicable_orders(d):
            res = reciprocity_sweep(d, j, 500)
            total += res.checked
            if not res.ok:
                bad.append((d, j, res.violations[0]))
    elapsed = time.perf_counter() - t0
    _report(
        "criterion 1 (reciprocity, norms<=500, all laws)",
        not bad and elapsed < 120.0,
        f"{total} coprime primary pairs, {len(bad)} violations, {elapsed:.1f}s (<120s)",
    )


def test_criterion_2_supplementary_sweep():
    total = 0
    bad = []
    for d in (-1, -3):
        res = supplementary_sweep(d, 2000)
        total += res.checked
        if not res.ok:
            bad.append((d, res.violations[0]))
    _report(
        "criterion 2 (supplementary laws, norms<=2000)",
        not bad,
        f"{total} closed-form values, {len(bad)} violations",
    )


def test_criterion_3_gauss_closed_forms():
    total = 0
    bad = []
    for d in FIELD_DS:
        for name, res in (
            ("prime", gauss_prime_sweep(d, 500, tol=1e-10)),
            ("multiplicativity", gauss_multiplicativity_sweep(d, 300, tol=1e-9)),
            ("prime powers", gauss_primepower_sweep(d, 2000, tol=1e-9)),
        ):
            total += res.checked
            if not res.ok:
                bad.append((d, name, res.violations[0]))
    _report(
        "criterion 3 (Gauss closed forms vs direct sums)",
        not bad,
        f"{total} comparisons over all nine fields, {len(bad)} mismatches",
    )


def test_criterion_4_functional_equation():
    worst = 0.0
    bad = []
    for d in FIELD_DS:
        res = fe_sweep(d, count=20, s_values=(0.3, 0.5, 0.5 + 0.7j, 1.2),
                       tol_fe=1e-8, tol_w=1e-10)
        if not res.ok:
            bad.append((d, res.violations[0]))
    _report(
        "criterion 4 (functional equation, 20 primitives/field, 4 s-values)",
        not bad,
        f"residual tol 1e-8, |W| tol 1e-10, {len(bad)} failures",
    )


def test_criterion_5_theta_identity():
    bad = []
    total = 0
    for d in FIELD_DS:
        res = theta_sweep(d, count=10, y_values=(0.5, 1.0, 2.0), tol=1e-10)
        total += res.checked
        if not res.ok:
            bad.append((d, res.violations[0]))
    _report(
        "criterion 5 (theta identity, 10 chars/field, y in {0.5,1,2})",
        not bad,
        f"{total} evaluations at tol 1e-10, {len(bad)} failures",
    )


def test_criterion_6_dual_series():
    bad = []
    total = 0
    for d in FIELD_DS:
        res = dual_sweep(d, count=5, s=-1.0, max_modulus_norm=200, tol=1e-6)
        total += res.checked
        if not res.ok:
            bad.append((d, res.violations[0]))
    _report(
        "criterion 6 (dual series at s=-1, 5 imprimitive chars/field)",
        not bad,
        f"{total} checks at tol 1e-6 (degenerate point: both sides vanish), "
        f"{len(bad)} failures",
    )


def test_criterion_7_zeta_and_residue():
    worst_z = 0.0
    worst_r = 0.0
    for d in FIELD_DS:
        dz = abs(zeta_K(d, 2.0) - ideal_sum_partial(d, 2.0, 10**6))
        worst_z = max(worst_z, dz)
        h = 1e-4
        est = (h * zeta_K(d, 1 + h) - h * zeta_K(d, 1 - h)).real / 2
        worst_r = max(worst_r, abs(est - residue_at_one(d)))
    _report(
        "criterion 7 (zeta_K(2) vs ideal sums; r_K vs limit)",
        worst_z < 1e-8 and worst_r < 1e-6,
        f"worst zeta diff {worst_z:.2e} (<1e-8), worst r_K diff {worst_r:.2e} (<1e-6)",
    )


@pytest.fixture(scope="module")
def crit8_reports():
    out = {}
    for d in (-1, -3):
        t0 = time.perf_counter()
        cfg = MomentConfig(d=d, j=2, alpha=0.25, x_list=(100.0, 200.0, 500.0), threads=1)
        out[d] = (run_experiment(cfg), time.perf_counter() - t0)
    return out


@pytest.fixture(scope="module")
def crit9_report():
    t0 = time.perf_counter()
    cfg = MomentConfig(d=-3, j=3, alpha=0.25, x_list=(100.0, 300.0), S=9, threads=1)
    return run_experiment(cfg), time.perf_counter() - t0


def test_criterion_8_quadratic_moment(crit8_reports):
    ok = True
    details = []
    for d, (rep, elapsed) in crit8_reports.items():
        ratios = [row.ratio for row in rep.rows]
        devs = [abs(r - 1) for r in ratios]
        final_ok = devs[-1] <= 0.10
        trend_ok = all(
            ratios[i + 1].real <= 1.2 * ratios[i].real for i in range(len(ratios) - 1)
        )
        time_ok = elapsed < 900.0
        ok &= final_ok and trend_ok and time_ok
        details.append(
            f"d={d}: |ratio-1|={['%.4f' % v for v in devs]}, "
            f"final<=0.10 {final_ok}, ratio trend {trend_ok}, {elapsed:.0f}s (<900s)"
        )
    _report("criterion 8 (quadratic moment, X=100/200/500)", ok, "; ".join(details))


def test_criterion_9_cubic_moment(crit9_report):
    rep, elapsed = crit9_report
    devs = [abs(row.ratio - 1) for row in rep.rows]
    final_ok = devs[-1] <= 0.15
    # the ratio-form main term must fit strictly better than the literal
    # product-form at every X
    forms_ok = True
    for row in rep.rows:
        prod_ratio = complex(*row.extras["ratio_product_form"])
        forms_ok &= abs(row.ratio - 1) < abs(prod_ratio - 1)
    time_ok = elapsed < 1200.0
    _report(
        "criterion 9 (cubic moment, d=-3, S=9, X=100/300)",
        final_ok and forms_ok and time_ok,
        f"|ratio-1|={['%.4f' % v for v in devs]} (final<=0.15), "
        f"ratio-form beats product-form {forms_ok}, {elapsed:.0f}s (<1200s)",
    )


def test_criterion_10_determinism(crit8_reports, crit9_report):
    ok = True
    details = []
    base8 = {d: rep.to_csv(include_timing=False) for d, (rep, _) in crit8_reports.items()}
    for threads in (4, 8):
        for d in (-1, -3):
            cfg = MomentConfig(
                d=d, j=2, alpha=0.25, x_list=(100.0, 200.0, 500.0), threads=threads
            )
            same = run_experiment(cfg).to_csv(include_timing=False) == base8[d]
            ok &= same
            details.append(f"j=2 d={d} threads={threads}: {'identical' if same else 'DIFFERS'}")
    base9 = crit9_report[0].to_csv(include_timing=False)
    for threads in (4, 8):
        cfg = MomentConfig(d=-3, j=3, alpha=0.25, x_list=(100.0, 300.0), S=9, threads=threads)
        same = run_experiment(cfg).to_csv(include_timing=False) == base9
        ok &= same
        details.append(f"j=3 threads={threads}: {'identical' if same else 'DIFFERS'}")
    _report(
        "criterion 10 (bit-identical outputs across 1/4/8 workers)",
        ok,
        "; ".join(details),
    )
