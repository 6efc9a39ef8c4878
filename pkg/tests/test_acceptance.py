"""Acceptance suite: one test per numbered criterion, each printing a
PASS/FAIL line (collected again in the terminal summary)."""

import shutil
import subprocess
import sys
import time

import numpy as np
import pytest

from oracles import (
    enumerated_hemisphere_margin,
    enumerated_min_ball_radius,
    grid_min_ball_radius,
    sampled_hemisphere_margin,
)
from simplexorder.comparisons import (
    m1_euclidean_from_spherical,
    m2_euclidean_from_hyperbolic,
    m3_bracket,
    m4_rigidity_witness,
    Verdict,
)
from simplexorder.models import (
    extension_growth_rate,
    min_enclosing_spherical_ball,
    minkowski_dot,
    spherical_third_side,
    support_certificate,
)
from simplexorder.numeric import cofactor_matrix, hemisphere_margin, hemisphere_witness
from simplexorder.sampling import random_boundary_center_simplex, random_simplex
from simplexorder.simplex import (
    GramClass,
    Order,
    classify_gram,
    compare,
    dihedral_angles,
    facet_normals,
    gram_of,
    realize,
    spherical_dual,
)

pytestmark = pytest.mark.acceptance

DIMS = (2, 3, 4, 5)


def upper(a):
    return a[np.triu_indices(len(a), 1)]


def dim_for(k):
    return DIMS[k % len(DIMS)]


def sphere_dist(rows):
    return np.arccos(np.clip(rows @ rows.T, -1.0, 1.0))


# -- 1 ------------------------------------------------------------------------------


def test_criterion_1_classification_roundtrip(acceptance_log):
    start = time.perf_counter()
    wrong, worst = [], 0.0
    for geometry in ("spherical", "euclidean", "hyperbolic"):
        for k in range(500):
            x = random_simplex(geometry, dim_for(k), 1000 + k)
            g = gram_of(x)
            if classify_gram(g).kind.value != geometry:
                wrong.append((geometry, k))
            worst = max(worst, float(np.max(np.abs(gram_of(realize(g)).matrix - g.matrix))))
    elapsed = time.perf_counter() - start
    ok = not wrong and worst < 1e-8 and elapsed < 60
    acceptance_log(1, ok, f"1500 simplexes, {len(wrong)} misclassified, "
                          f"worst roundtrip {worst:.2e} (< 1e-8), {elapsed:.1f} s (< 60 s)")
    assert ok


# -- 2 ------------------------------------------------------------------------------


def test_criterion_2_m3_bracket(acceptance_log):
    bad, margin = [], np.inf
    for k in range(200):
        e = random_simplex("euclidean", dim_for(k), 2000 + k)
        r = m3_bracket(e, 0.1)
        angles = dihedral_angles(gram_of(e))
        h = dihedral_angles(r.gram_hyp)
        s = dihedral_angles(r.gram_sph)
        ok = (classify_gram(r.gram_hyp).kind is GramClass.HYPERBOLIC
              and classify_gram(r.gram_sph).kind is GramClass.SPHERICAL
              and compare(h, angles).order is Order.STRICTLY_LESS
              and compare(s, angles).order is Order.STRICTLY_GREATER)
        margin = min(margin, r.min_margin)
        if not ok:
            bad.append(k)
    ok = not bad and margin > 1e-10
    acceptance_log(2, ok, f"200 brackets, {len(bad)} failures, min margin {margin:.2e} (> 1e-10)")
    assert ok


def test_criterion_2_m3_regular_triangle_closed_form(acceptance_log, regular_triangle_gram):
    r = m3_bracket(regular_triangle_gram, 0.2)
    h = upper(dihedral_angles(r.gram_hyp).angles)
    s = upper(dihedral_angles(r.gram_sph).angles)
    err_h = float(np.max(np.abs(h - np.arccos(0.6))))
    err_s = float(np.max(np.abs(s - np.arccos(0.4))))
    ok = r.t_hyp == r.t_sph == 0.2 and err_h < 1e-12 and err_s < 1e-12
    acceptance_log(2, ok, f"regular triangle t=0.2: hyperbolic error {err_h:.1e}, "
                          f"spherical error {err_s:.1e} (< 1e-12)")
    assert ok


def test_criterion_2_m3_small_t_deviation(acceptance_log):
    # stated literally: at t = 1e-3 every angle moves by less than 2e-3
    worst, worst_zeta, over = 0.0, 0.0, 0
    for k in range(200):
        e = random_simplex("euclidean", dim_for(k), 2000 + k)
        r = m3_bracket(e, 1e-3)
        zeta = upper(dihedral_angles(gram_of(e)).angles)
        dev = max(float(np.max(np.abs(upper(dihedral_angles(g).angles) - zeta)))
                  for g in (r.gram_hyp, r.gram_sph))
        over += dev >= 2e-3
        if dev > worst:
            worst, worst_zeta = dev, float(np.max(zeta))
    ok = worst < 2e-3
    acceptance_log(2, ok, f"t=1e-3: max deviation {worst:.2e} (< 2e-3); {over}/200 simplexes "
                          f"exceed, largest angle there {np.degrees(worst_zeta):.1f} deg")
    assert ok


# -- 3 ------------------------------------------------------------------------------


def test_criterion_3_m2(acceptance_log):
    margin, residual, balance, min_lambda = np.inf, 0.0, 0.0, np.inf
    for k in range(200):
        h = random_simplex("hyperbolic", dim_for(k), 3000 + k)
        r = m2_euclidean_from_hyperbolic(h)
        margin = min(margin, float(np.min(upper(r.xi.angles - r.eta.angles))))
        ins = r.insphere
        # independent residual: sinh of the signed distance to facet i is <x, n_i>_M
        dists = np.arcsinh([minkowski_dot(ins.center.coords, n) for n in facet_normals(h).normals])
        residual = max(residual, float(np.max(np.abs(dists - ins.inradius))))
        balance = max(balance, float(np.max(np.abs(ins.balance @ ins.tangency_dirs))))
        min_lambda = min(min_lambda, float(np.min(ins.balance)))
    ok = margin > 1e-10 and residual < 1e-9 and balance < 1e-10 and min_lambda > 0
    acceptance_log(3, ok, f"200 simplexes: min(xi - eta) {margin:.2e} (> 1e-10), facet residual "
                          f"{residual:.1e} (< 1e-9), |sum lambda u| {balance:.1e} (< 1e-10), "
                          f"min lambda {min_lambda:.2e} (> 0)")
    assert ok


# -- 4 ------------------------------------------------------------------------------


def chain_report(chain):
    """Worst values of the chain invariants: (equator residual, distance
    increase, closed hemisphere found, balance residual, min coefficient)."""
    dv = chain.dual_distances
    inc_u = float(np.min(upper(sphere_dist(chain.extended) - dv)))
    inc_w = float(np.min(upper(sphere_dist(chain.perturbed) - dv)))
    y = chain.perturbed @ chain.span_basis.T
    y /= np.linalg.norm(y, axis=1)[:, None]
    hemi = hemisphere_witness(y, "closed") is not None
    bal = float(np.max(np.abs(chain.coefficients @ chain.perturbed)))
    return chain.equator_residual, min(inc_u, inc_w), hemi, bal, float(np.min(chain.coefficients))


def run_m1_batch(simplexes):
    margin, eq, inc, hemis, bal, coef = np.inf, 0.0, np.inf, 0, 0.0, np.inf
    perturbed = 0
    for s in simplexes:
        r = m1_euclidean_from_spherical(s)
        perturbed += r.chain.delta > 0
        margin = min(margin, float(np.min(upper(r.sigma.angles - r.xi.angles))))
        e, i, h, b, c = chain_report(r.chain)
        eq, inc, hemis, bal, coef = max(eq, e), min(inc, i), hemis + h, max(bal, b), min(coef, c)
    ok = margin > 1e-10 and eq < 1e-10 and inc > 0 and hemis == 0 and bal < 1e-9 and coef > 0
    detail = (f"min(sigma - xi) {margin:.2e} (> 1e-10), equator residual {eq:.1e} (< 1e-10), "
              f"min distance increase {inc:.2e}, closed hemispheres {hemis}, "
              f"|sum b w| {bal:.1e}, min b {coef:.1e}")
    return ok, detail, perturbed


def test_criterion_4_m1_random(acceptance_log):
    sims = [random_simplex("spherical", dim_for(k), 4000 + k) for k in range(200)]
    ok, detail, _ = run_m1_batch(sims)
    acceptance_log(4, ok, "200 random simplexes: " + detail)
    assert ok


def test_criterion_4_m1_boundary_center(acceptance_log):
    sims = [random_boundary_center_simplex(dim_for(k), 4500 + k) for k in range(24)]
    ok, detail, perturbed = run_m1_batch(sims)
    ok = ok and perturbed == len(sims)
    acceptance_log(4, ok, f"24 boundary-center simplexes ({perturbed} perturbed): " + detail)
    assert ok


def test_criterion_4_m1_orthant(acceptance_log, orthant):
    r = m1_euclidean_from_spherical(orthant)
    err = float(np.max(np.abs(upper(r.xi.angles) - np.pi / 3)))
    measured = float(np.max(np.abs(upper(dihedral_angles(gram_of(r.euclidean)).angles) - np.pi / 3)))
    ok = err < 1e-9 and measured < 1e-9
    acceptance_log(4, ok, f"orthant: |xi - pi/3| {err:.1e}, measured {measured:.1e} (< 1e-9)")
    assert ok


# -- 5 ------------------------------------------------------------------------------


def test_criterion_5_m4_rigidity(acceptance_log):
    rng = np.random.default_rng(5)
    fired, premise, strict = 0, 0, 0
    for k in range(200):
        dim = dim_for(k)
        g1 = gram_of(random_simplex("euclidean", dim, 5000 + k)).matrix
        size = dim + 1
        if k % 4 == 0:
            bump = np.zeros((size, size))  # no strict pair
        elif k % 4 == 1:
            i, j = rng.choice(size, 2, replace=False)
            bump = np.zeros((size, size))
            bump[min(i, j), max(i, j)] = 10 ** rng.uniform(-8, -1)
        else:
            bump = np.triu(rng.uniform(0, 0.1, (size, size)) * (rng.random((size, size)) < 0.5), 1)
        g2 = np.clip(g1 + bump + bump.T, -1, 1)
        np.fill_diagonal(g2, 1.0)
        rep = m4_rigidity_witness(g1, g2)
        fired += rep.verdict is Verdict.THEOREM_VIOLATION_SUSPECTED
        premise += rep.premise_holds
        strict += rep.premise_holds and rep.strict_pair is not None
    euclidean_after_raise = 0
    for k in range(50):
        dim = dim_for(k)
        g = gram_of(random_simplex("euclidean", dim, 5500 + k)).matrix.copy()
        i, j = sorted(rng.choice(dim + 1, 2, replace=False))
        g[i, j] = g[j, i] = g[i, j] + 0.05
        euclidean_after_raise += classify_gram(g).kind is GramClass.EUCLIDEAN
    ok = fired == 0 and strict == 0 and euclidean_after_raise == 0
    acceptance_log(5, ok, f"200 premise trials: {fired} violation verdicts, {premise} with both "
                          f"Euclidean, {strict} of those with a strict pair; "
                          f"{euclidean_after_raise}/50 raised Grams still Euclidean")
    assert ok


# -- 6 ------------------------------------------------------------------------------


def test_criterion_6_growth_rate(acceptance_log):
    rng = np.random.default_rng(6)
    worst, min_rate, count = 0.0, np.inf, 0
    while count < 1000:
        x, y = rng.uniform(0.01, np.pi - 0.01, 2)
        if x + y >= np.pi - 0.01:
            continue
        c = rng.uniform(0.01, np.pi - 0.01)
        g = rng.uniform(0.05, 3.0)
        z = lambda t: spherical_third_side(x + g * t, y + g * t, c)  # noqa: E731
        # the step stays well inside the admissible region
        h = 1e-3 * min(x, y, np.pi - x - y) / g
        fd = (z(-2 * h) - 8 * z(-h) + 8 * z(h) - z(2 * h)) / (12 * h)
        rate = extension_growth_rate(x, y, c, g)
        worst = max(worst, abs(fd - rate) / abs(rate))
        min_rate = min(min_rate, rate)
        count += 1
    ok = worst < 1e-6 and min_rate > 0
    acceptance_log(6, ok, f"1000 samples: max relative error {worst:.1e} (< 1e-6), "
                          f"min rate {min_rate:.2e} (> 0)")
    assert ok


# -- 7 ------------------------------------------------------------------------------


def test_criterion_7_min_enclosing_ball(acceptance_log):
    max_radius, min_support, witnesses = 0.0, np.inf, 0
    for k in range(200):
        dual = spherical_dual(random_simplex("spherical", dim_for(k), 7000 + k))
        ball, support = min_enclosing_spherical_ball(dual.points)
        max_radius = max(max_radius, ball.radius)
        min_support = min(min_support, len(support))
        witnesses += support_certificate(ball, dual.points, support) is not None
    oracle_err, oracle_gap = 0.0, 0.0
    for k in range(100):
        dual = spherical_dual(random_simplex("spherical", 2, 7500 + k)).vertices
        ball, _ = min_enclosing_spherical_ball(dual)
        hi, lo = grid_min_ball_radius(dual)
        oracle_gap = max(oracle_gap, hi - lo)
        oracle_err = max(oracle_err, abs(ball.radius - hi), abs(ball.radius - lo))
        # exact 2- and 3-point enumeration agrees as well
        oracle_err = max(oracle_err, abs(ball.radius - enumerated_min_ball_radius(dual)))
    ok = (max_radius < np.pi / 2 and min_support >= 2 and witnesses == 0
          and oracle_err < 1e-6)
    acceptance_log(7, ok, f"200 dual balls: max radius {max_radius:.4f} (< pi/2), min support "
                          f"{min_support}, open witnesses {witnesses}; n=2 grid oracle "
                          f"error {oracle_err:.1e} (< 1e-6, grid bracket {oracle_gap:.1e})")
    assert ok


# -- 8 ------------------------------------------------------------------------------


def test_criterion_8_numeric_oracles(acceptance_log):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(500):
        size = int(rng.integers(2, 8))
        a = rng.uniform(-1, 1, (size, size))
        a = 0.5 * (a + a.T)
        cof = cofactor_matrix(a)
        det = np.linalg.det(a)
        worst = max(worst, float(np.max(np.abs(np.einsum("ij,ij->i", a, cof) - det))))
    agree, band, disagree = 0, 0, []
    while agree + len(disagree) < 1000:
        k = int(rng.integers(2, 4))
        pts = rng.standard_normal((int(rng.integers(2, 7)), k))
        pts /= np.linalg.norm(pts, axis=1)[:, None]
        exact = enumerated_hemisphere_margin(pts)
        if abs(exact) <= 1e-9:
            band += 1
            continue
        value, _ = hemisphere_margin(pts)
        lp_open = hemisphere_witness(pts, "open") is not None
        est, _ = sampled_hemisphere_margin(pts, rng, samples=100_000)
        consistent = est <= max(exact, 0.0) + 1e-12 and abs(value - max(exact, 0.0)) < 1e-9
        if lp_open == (est > 0) and consistent:
            agree += 1
        else:
            disagree.append((value, est))
    ok = worst < 1e-9 and not disagree
    acceptance_log(8, ok, f"cofactor identity worst {worst:.1e} (< 1e-9) on 500 matrices; "
                          f"hemisphere LP vs sampling: {agree}/1000 agree "
                          f"({band} skipped inside the band)")
    assert ok


# -- 9 ------------------------------------------------------------------------------


def cli_command():
    exe = shutil.which("simplexorder")
    return [exe] if exe else [sys.executable, "-m", "simplexorder"]


def test_criterion_9_harness_determinism(acceptance_log):
    argv = cli_command() + ["verify", "--trials", "10", "--dims", "2..3", "--seed", "42"]
    runs = []
    for _ in range(2):
        start = time.perf_counter()
        proc = subprocess.run(argv, capture_output=True, check=False)
        runs.append((proc.returncode, proc.stdout, time.perf_counter() - start))
    codes = [r[0] for r in runs]
    slowest = max(r[2] for r in runs)
    identical = runs[0][1] == runs[1][1] and len(runs[0][1]) > 0
    ok = identical and codes == [0, 0] and slowest < 10
    acceptance_log(9, ok, f"verify --trials 10 --dims 2..3 --seed 42: exit codes {codes}, "
                          f"byte-identical {identical}, slowest run {slowest:.2f} s (< 10 s)")
    assert ok
