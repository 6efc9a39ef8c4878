"""Seeded verification runs over all four comparison constructions.

Each suite runs ``trials`` independent trials; trial ``k`` uses the integer
seed ``seed + k`` and dimension ``dims[k % len(dims)]``, so any failure can
be replayed alone. Reports are pure functions of ``(trials, dims, seed,
tolerances)``: timing is kept out of them and reductions are
order-independent, which makes the parallel path produce the same bytes.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .comparisons import (
    m1_euclidean_from_spherical,
    m2_euclidean_from_hyperbolic,
    m3_bracket,
    m4_rigidity_witness,
)
from .errors import InputError, SimplexOrderError
from .numeric import DEFAULT_TOL
from .sampling import random_boundary_center_simplex, random_simplex
from .simplex import GramClass, Order, classify_gram, dihedral_angles, gram_of, realize

SUITES = ("classify", "m1", "m1_boundary", "m2", "m3", "m4")
ROUNDTRIP_TOL = 1e-8
RESIDUAL_TOL = 1e-9
RAISE_BY = 0.05


@dataclass
class TrialOutcome:
    passed: bool
    margin: float | None = None
    residual: float | None = 0.0
    note: str | None = None  # set when the trial raised


@dataclass
class SuiteStats:
    trials: int = 0
    passed: int = 0
    min_margin: float | None = None
    worst_residual: float = 0.0
    errors: int = 0
    failing_seeds: list = field(default_factory=list)

    def add(self, seed, outcome):
        self.trials += 1
        self.passed += bool(outcome.passed)
        if outcome.margin is not None:
            m = float(outcome.margin)
            self.min_margin = m if self.min_margin is None else min(self.min_margin, m)
        if outcome.residual is not None:
            self.worst_residual = max(self.worst_residual, float(outcome.residual))
        self.errors += outcome.note is not None
        if not outcome.passed:
            self.failing_seeds.append(int(seed))

    def as_dict(self):
        return {
            "trials": self.trials,
            "passed": self.passed,
            "min_margin": self.min_margin,
            "worst_residual": self.worst_residual,
            "errors": self.errors,
            "failing_seeds": sorted(self.failing_seeds),
        }


def _upper(a):
    return a[np.triu_indices(a.shape[0], 1)]


def _failed(exc):
    return TrialOutcome(False, None, None, f"{type(exc).__name__}: {exc}")


def trial_classify(seed, dim, tol):
    geometry = ("spherical", "euclidean", "hyperbolic")[seed % 3]
    x = random_simplex(geometry, dim, seed)
    g = gram_of(x)
    kind = classify_gram(g, tol).kind
    err = float(np.max(np.abs(gram_of(realize(g, tol)).matrix - g.matrix)))
    return TrialOutcome(kind.value == geometry and err < ROUNDTRIP_TOL, None, err)


def _m1_outcome(simplex, tol):
    r = m1_euclidean_from_spherical(simplex, tol)
    chain = r.chain
    margin = float(np.min(_upper(r.sigma.angles - r.xi.angles)))
    measured = dihedral_angles(gram_of(r.euclidean)).angles
    extended = np.arccos(np.clip(chain.extended @ chain.extended.T, -1.0, 1.0))
    growth = float(np.min(_upper(extended - chain.dual_distances)))
    residual = max(
        chain.equator_residual,
        float(np.max(np.abs(chain.coefficients @ chain.perturbed))),
        float(np.max(np.abs(measured - r.xi.angles))),
    )
    ok = (margin > tol.angle_eps and residual < RESIDUAL_TOL and growth > 0
          and bool(np.all(chain.coefficients > 0)))
    return TrialOutcome(ok, margin, residual)


def trial_m1(seed, dim, tol):
    return _m1_outcome(random_simplex("spherical", dim, seed), tol)


def trial_m1_boundary(seed, dim, tol):
    return _m1_outcome(random_boundary_center_simplex(dim, seed), tol)


def trial_m2(seed, dim, tol):
    r = m2_euclidean_from_hyperbolic(random_simplex("hyperbolic", dim, seed), tol)
    ins = r.insphere
    margin = float(np.min(_upper(r.xi.angles - r.eta.angles)))
    residual = max(ins.facet_residual, float(np.max(np.abs(ins.balance @ ins.tangency_dirs))))
    ok = margin > tol.angle_eps and residual < RESIDUAL_TOL and bool(np.all(ins.balance > 0))
    return TrialOutcome(ok, margin, residual)


def trial_m3(seed, dim, tol):
    r = m3_bracket(random_simplex("euclidean", dim, seed), 0.1, tol)
    residual = max(
        float(np.max(np.abs(gram_of(r.simplex_hyp).matrix - r.gram_hyp.matrix))),
        float(np.max(np.abs(gram_of(r.simplex_sph).matrix - r.gram_sph.matrix))),
    )
    ok = (r.hyp_vs_euc.order is Order.STRICTLY_LESS and r.sph_vs_euc.order is Order.STRICTLY_GREATER
          and r.min_margin > tol.angle_eps and residual < ROUNDTRIP_TOL)
    return TrialOutcome(ok, r.min_margin, residual)


def trial_m4(seed, dim, tol):
    """Random entrywise-dominating pair plus the raise-one-entry check."""
    rng = np.random.default_rng([seed, 4])
    g1 = gram_of(random_simplex("euclidean", dim, seed)).matrix
    size = dim + 1
    bump = np.triu(rng.uniform(0.0, 0.1, (size, size)) * (rng.random((size, size)) < 0.5), 1)
    g2 = np.clip(g1 + bump + bump.T, -1.0, 1.0)
    np.fill_diagonal(g2, 1.0)
    report = m4_rigidity_witness(g1, g2, tol)
    i, j = sorted(rng.choice(size, 2, replace=False))
    raised = g1.copy()
    raised[i, j] = raised[j, i] = min(g1[i, j] + RAISE_BY, 1.0)
    still_euclidean = classify_gram(raised, tol).kind is GramClass.EUCLIDEAN
    ok = report.verdict.value == "consistent" and not still_euclidean
    return TrialOutcome(ok, None, 0.0)


TRIALS = {
    "classify": trial_classify,
    "m1": trial_m1,
    "m1_boundary": trial_m1_boundary,
    "m2": trial_m2,
    "m3": trial_m3,
    "m4": trial_m4,
}


def run_trial(suite, seed, dim, tol=DEFAULT_TOL):
    try:
        return TRIALS[suite](seed, dim, tol)
    except SimplexOrderError as exc:
        return _failed(exc)


def _shard(args):
    suite, seeds_dims, tol = args
    return [(seed, run_trial(suite, seed, dim, tol)) for seed, dim in seeds_dims]


def parse_dims(text):
    """``"2..5"`` -> ``[2, 3, 4, 5]``; also accepts ``"3"`` and ``"2,4"``."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split(".."))
            dims = list(range(lo, hi + 1))
        else:
            dims = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse dims {text!r}; expected e.g. 2..5") from None
    if not dims or any(not 2 <= d <= 7 for d in dims):
        raise InputError(f"dims must be a non-empty subset of 2..7, got {text!r}")
    return dims


def verify(trials, dims, seed, tol=DEFAULT_TOL, jobs=1, suites=SUITES):
    """Run every suite and return the report as a plain dict."""
    if not isinstance(trials, int) or trials < 1:
        raise InputError("trials must be a positive integer")
    if isinstance(dims, str):
        dims = parse_dims(dims)
    dims = [int(d) for d in dims]
    plan = [(s, seed + k, dims[k % len(dims)]) for s in suites for k in range(trials)]
    stats = {s: SuiteStats() for s in suites}
    if jobs > 1:
        shards = []
        for s in suites:
            items = [(sd, d) for name, sd, d in plan if name == s]
            for j in range(jobs):
                if items[j::jobs]:
                    shards.append((s, items[j::jobs], tol))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for (s, _, _), results in zip(shards, pool.map(_shard, shards)):
                for sd, outcome in results:
                    stats[s].add(sd, outcome)
    else:
        for s, sd, d in plan:
            stats[s].add(sd, run_trial(s, sd, d, tol))
    suites_out = {s: stats[s].as_dict() for s in suites}
    return {
        "seed": int(seed),
        "trials": trials,
        "dims": dims,
        "tolerances": {"eq_zero": tol.eq_zero, "strict_margin": tol.strict_margin,
                       "angle_eps": tol.angle_eps},
        "suites": suites_out,
        "all_passed": all(v["passed"] == v["trials"] for v in suites_out.values()),
    }

