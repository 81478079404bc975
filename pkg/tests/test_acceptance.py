"""Exit criteria. Each test prints one PASS/FAIL line (also echoed in the summary)."""

import time

import numpy as np

from ptdiscord import qmat
from ptdiscord.bounds import discord_bounds, entanglement_bounds, l_ppt, l_sipt
from ptdiscord.criteria import Verdict, moment_gaps, sipt_moment_test, sipt_test
from ptdiscord.oracles import deficit_oracle, gqd_oracle, simplex_qp_oracle, states
from ptdiscord.spectra import Spectrum, negativity_stats, ratio_bound, simplex_project

from conftest import random_states

# float rounding guard for inequalities between O(1) quantities
ROUNDING = 1e-12


def test_criterion_1_max_entangled_golden_values(criterion):
    t0 = time.perf_counter()
    errors = []
    for d in (2, 3, 4):
        rho = states.max_entangled(d)
        errors.append(abs(l_ppt(rho) - (1 - 2 / (d + 1))))
        errors.append(abs(l_sipt(rho) - (0.75 - 1 / (2 * d) - 1 / (2 * (d + 1)))))
    gqd_err = abs(gqd_oracle(states.max_entangled(2)).value - 0.5)
    elapsed = time.perf_counter() - t0
    ok = max(errors) <= 1e-9 and gqd_err <= 1e-4 and elapsed < 1.0
    criterion(1, ok, f"max bound error {max(errors):.2e} (tol 1e-9), "
                     f"gqd d=2 error {gqd_err:.2e} (tol 1e-4), {elapsed:.2f}s (< 1s)")
    assert ok


def test_criterion_2_ordering_claim(criterion):
    gaps = {d: l_ppt(states.max_entangled(d)) - l_sipt(states.max_entangled(d))
            for d in (2, 3, 4, 5)}
    ok = all(gaps[d] > 0 for d in (3, 4, 5)) and abs(gaps[2]) <= 1e-9
    criterion(2, ok, "L_PPT - L_SIPT: " + ", ".join(f"d={d}: {g:.6f}" for d, g in gaps.items()))
    assert ok


def test_criterion_3_theorem1_suite(criterion):
    dims_list = [(m, n) for m in (2, 3, 4) for n in (2, 3, 4)]
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(500):
        rho = states.random_cq(dims_list[i % len(dims_list)], seed=30_000 + i)
        a = qmat.spectrum(rho).values
        b = qmat.spectrum(qmat.partial_transpose(rho, "A")).values
        worst = max(worst, float(np.max(np.abs(a - b))))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 30
    criterion(3, ok, f"500 CQ states, max |lam - lam'|_inf {worst:.2e} (< 1e-10), "
                     f"{elapsed:.2f}s (< 30s)")
    assert ok


def test_criterion_4_lemma_oracle_equivalence(criterion):
    rng = np.random.default_rng(40_000)
    worst, violations, with_neg = 0.0, 0, 0
    for _ in range(1000):
        length = int(rng.integers(1, 11))
        v = rng.standard_normal(length) * rng.uniform(0.05, 1.0)
        v += (1.0 - v.sum()) / length
        s = Spectrum(v)
        bound = simplex_project(s).bound_value
        worst = max(worst, abs(bound - simplex_qp_oracle(v)[1]))
        stats = negativity_stats(s)
        if stats.n_minus:
            with_neg += 1
            if bound < ratio_bound(stats) - ROUNDING:
                violations += 1
    ok = worst <= 1e-8 and violations == 0
    criterion(4, ok, f"1000 vectors, max |L - QP| {worst:.2e} (tol 1e-8); "
                     f"ratio inequality violations {violations}/{with_neg}")
    assert ok


def test_criterion_5_sandwich_suite(criterion):
    t0 = time.perf_counter()
    gqd_viol = deficit_viol = 0
    min_gqd_margin = min_def_margin = np.inf
    for rho in random_states(200, [(2, 2)], seed=50_000):
        b = discord_bounds(rho)
        g = gqd_oracle(rho).value
        w = deficit_oracle(rho).value
        gqd_viol += b.combined > g + 1e-6
        deficit_viol += b.deficit_bound_bits > w + 1e-6
        min_gqd_margin = min(min_gqd_margin, g - b.combined)
        min_def_margin = min(min_def_margin, w - b.deficit_bound_bits)
    elapsed = time.perf_counter() - t0
    ok = gqd_viol == 0 and deficit_viol == 0 and elapsed < 300
    criterion(5, ok, f"200 two-qubit states, violations gqd {gqd_viol} deficit {deficit_viol}; "
                     f"min margins {min_gqd_margin:.2e}/{min_def_margin:.2e}; "
                     f"{elapsed:.1f}s (< 300s)")
    assert ok


def test_criterion_6_ppt_blind_discord(criterion):
    rho = states.werner(0.2)
    neg = negativity_stats(qmat.spectrum(qmat.partial_transpose(rho))).negativity
    witness = sipt_test(rho).witness_value
    ls = l_sipt(rho)
    g = gqd_oracle(rho).value
    ok = (neg == 0.0 and abs(witness - 0.04) <= 1e-9 and abs(ls - 0.01) <= 1e-9
          and abs(g - 0.02) <= 1e-4)
    criterion(6, ok, f"Werner p=0.2: negativity {neg}, SIPT witness {witness:.12f}, "
                     f"L_SIPT {ls:.12f}, gqd {g:.8f}")
    assert ok


def test_criterion_7_entanglement_bound_ordering(criterion):
    violations = 0
    for rho in random_states(1000, [(2, 2), (2, 3), (3, 3)], seed=70_000):
        e = entanglement_bounds(rho)
        if not (e.e_hs_lemma >= e.e_hs_ratio - ROUNDING
                and e.e_hs_ratio >= e.e_hs_floor - ROUNDING):
            violations += 1
    e3 = entanglement_bounds(states.max_entangled(3))
    tighter = (abs(e3.e_hs_floor - 4 / 9) <= 1e-12 and abs(e3.e_hs_literature - 1 / 4) <= 1e-12
               and e3.e_hs_floor > e3.e_hs_literature)
    ok = violations == 0 and tighter
    criterion(7, ok, f"1000 states, chain violations {violations}; d=3 floor "
                     f"{e3.e_hs_floor:.6f} vs literature {e3.e_hs_literature:.6f}")
    assert ok


def test_criterion_8_moment_consistency(criterion):
    pool = random_states(800, [(2, 2), (2, 3), (3, 3)], seed=80_000)
    dims_list = [(2, 2), (2, 3), (3, 3), (3, 2)]
    pool += [states.random_cq(dims_list[i % 4], seed=81_000 + i) for i in range(200)]
    disagree, worst_low, violated = 0, 0.0, 0
    for rho in pool:
        a = sipt_test(rho)
        b = sipt_moment_test(rho, rho.dims.total)
        disagree += a.verdict is not b.verdict
        violated += a.verdict is Verdict.VIOLATED
        worst_low = max(worst_low, float(np.max(moment_gaps(rho, 2))))
    ok = disagree == 0 and worst_low < 1e-12
    criterion(8, ok, f"1000 states ({violated} violated), disagreements {disagree}; "
                     f"max Pi_1/Pi_2 gap {worst_low:.2e} (< 1e-12)")
    assert ok
