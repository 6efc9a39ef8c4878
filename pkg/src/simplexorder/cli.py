"""Command-line front end: JSON in, JSON out.

Exit codes: 0 success, 1 invalid input, 2 numerical failure (and a
``verify`` run with any failing suite). Errors are also written to stderr
as a JSON object.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import harness
from .comparisons import (
    m1_euclidean_from_spherical,
    m2_euclidean_from_hyperbolic,
    m3_bracket,
)
from .errors import InputError, NumericalFailure, SimplexOrderError
from .models import Geometry
from .numeric import TolerancePolicy
from .sampling import random_simplex
from .simplex import (
    GramMatrix,
    Simplex,
    classify_gram,
    dihedral_angles,
    gram_of,
    spherical_dual,
    compare,
)
from .specio import dumps, parse_simplex_spec, to_spec

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rows(a):
    return [[float(x) for x in row] for row in np.asarray(a)]


def _load(path, tol):
    try:
        if path == "-":
            text = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", "$") from None
    return parse_simplex_spec(text)


def _gram(obj):
    return obj if isinstance(obj, GramMatrix) else gram_of(obj)


def _need(obj, geometry, what):
    if not isinstance(obj, Simplex) or obj.geometry is not geometry:
        raise InputError(f"{what} needs a {geometry.value} simplex given by vertices", "geometry")
    return obj


def cmd_classify(args, tol):
    g = _gram(_load(args.spec, tol))
    c = classify_gram(g, tol)
    d = g.diagnostics
    out = {"class": c.kind.value, "det": d.det, "min_cofactor": d.min_cofactor,
           "min_eigenvalue": float(np.linalg.eigvalsh(g.matrix)[0])}
    if c.reason:
        out["reason"] = c.reason
    return out


def cmd_angles(args, tol):
    obj = _load(args.spec, tol)
    ang = dihedral_angles(_gram(obj))
    out = {"angles": _rows(ang.angles), "pairs": [float(x) for x in ang.pairs()]}
    if isinstance(obj, Simplex):
        out["geometry"] = obj.geometry.value
    return out


def cmd_dual(args, tol):
    s = _need(_load(args.spec, tol), Geometry.SPHERICAL, "dual")
    d = spherical_dual(s)
    return {"dual": to_spec(d), "angles": _rows(dihedral_angles(gram_of(d)).angles)}


def _chain_dict(chain):
    out = {
        "dual": to_spec(chain.dual),
        "ball": {"center": [float(x) for x in chain.ball.center.coords],
                 "radius": chain.ball.radius},
        "support": list(chain.support),
        "boundary_count": chain.boundary_count,
        "t_hat": chain.t_hat,
        "extended": _rows(chain.extended),
        "face_dim": chain.face_dim,
        "delta": chain.delta,
        "perturbed": _rows(chain.perturbed),
        "coefficients": [float(x) for x in chain.coefficients],
        "equator_residual": chain.equator_residual,
    }
    if chain.face is not None:
        out["face"] = list(chain.face)
    return out


def cmd_construct(args, tol):
    obj = _load(args.spec, tol)
    if args.method == "m1":
        r = m1_euclidean_from_spherical(_need(obj, Geometry.SPHERICAL, "m1"), tol)
        gap = r.sigma.angles - r.xi.angles
        return {"method": "m1", "euclidean": to_spec(r.euclidean),
                "angles": _rows(r.xi.angles), "input_angles": _rows(r.sigma.angles),
                "min_margin": float(np.min(gap[np.triu_indices(len(gap), 1)])),
                "trace": _chain_dict(r.chain)}
    if args.method == "m2":
        r = m2_euclidean_from_hyperbolic(_need(obj, Geometry.HYPERBOLIC, "m2"), tol)
        ins = r.insphere
        gap = r.xi.angles - r.eta.angles
        return {"method": "m2", "euclidean": to_spec(r.euclidean),
                "angles": _rows(r.xi.angles), "input_angles": _rows(r.eta.angles),
                "min_margin": float(np.min(gap[np.triu_indices(len(gap), 1)])),
                "insphere": {"center": [float(x) for x in ins.center.coords],
                             "inradius": ins.inradius,
                             "tangency_dirs": _rows(ins.tangency_dirs),
                             "balance": [float(x) for x in ins.balance],
                             "facet_residual": ins.facet_residual}}
    if isinstance(obj, Simplex):
        _need(obj, Geometry.EUCLIDEAN, "m3")
    r = m3_bracket(obj, args.t, tol)
    return {"method": "m3", "t_hyp": r.t_hyp, "t_sph": r.t_sph,
            "hyperbolic": to_spec(r.simplex_hyp), "spherical": to_spec(r.simplex_sph),
            "gram_hyp": _rows(r.gram_hyp.matrix), "gram_sph": _rows(r.gram_sph.matrix),
            "hyp_vs_euc": r.hyp_vs_euc.order.value, "sph_vs_euc": r.sph_vs_euc.order.value,
            "min_margin": r.min_margin}


def cmd_compare(args, tol):
    a = dihedral_angles(_gram(_load(args.spec_a, tol)))
    b = dihedral_angles(_gram(_load(args.spec_b, tol)))
    rel = compare(a, b, tol)
    return {"order": rel.order.value, "min_margin": rel.min_margin,
            "max_margin": rel.max_margin}


def cmd_random(args, tol):
    return to_spec(random_simplex(args.geometry, args.dim, args.seed))


def cmd_verify(args, tol):
    start = time.perf_counter()
    report = harness.verify(args.trials, args.dims, args.seed, tol, jobs=args.jobs)
    elapsed = time.perf_counter() - start
    print(dumps({"wall_time_s": round(elapsed, 3)}), file=sys.stderr)
    return report


def build_parser():
    p = _Parser(prog="simplexorder", description="Dihedral-angle comparison of simplexes.")
    p.add_argument("--angle-eps", type=float, default=None,
                   help="angle tolerance in radians (default 1e-10)")
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("classify", "classify a Gram matrix or simplex"),
                           ("angles", "dihedral angle table"),
                           ("dual", "spherical dual of a spherical simplex")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("spec", help="path to a JSON spec, or - for stdin")

    s = sub.add_parser("construct", help="run one of the comparison constructions")
    s.add_argument("method", choices=("m1", "m2", "m3"))
    s.add_argument("spec")
    s.add_argument("--t", type=float, default=0.1, help="m3 starting path parameter")

    s = sub.add_parser("compare", help="angle order between two simplexes")
    s.add_argument("spec_a")
    s.add_argument("spec_b")

    s = sub.add_parser("random", help="seeded random simplex spec")
    s.add_argument("--geometry", required=True, choices=[g.value for g in Geometry])
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("verify", help="run every verification suite")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--dims", default="2..5")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    return p


COMMANDS = {
    "classify": cmd_classify,
    "angles": cmd_angles,
    "dual": cmd_dual,
    "construct": cmd_construct,
    "compare": cmd_compare,
    "random": cmd_random,
    "verify": cmd_verify,
}


def _error(kind, exc, **extra):
    body = {"error": type(exc).__name__, "kind": kind, "message": str(exc)}
    path = getattr(exc, "path", None)
    if path is not None:
        body["path"] = path
    diag = getattr(exc, "diagnostics", None)
    if diag:
        body["diagnostics"] = diag
    body.update(extra)
    print(dumps(body, default=str), file=sys.stderr)


def run_command(argv=None):
    """Run one CLI invocation and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        overrides = {} if args.angle_eps is None else {"angle_eps": args.angle_eps}
        tol = TolerancePolicy.from_env(**overrides)
        result = COMMANDS[args.command](args, tol)
    except UsageError as exc:
        _error("input", exc)
        return EXIT_INPUT
    except InputError as exc:
        _error("input", exc)
        return EXIT_INPUT
    except (NumericalFailure, SimplexOrderError, np.linalg.LinAlgError) as exc:
        _error("numerical", exc)
        return EXIT_NUMERIC
    print(dumps(result, indent=2, sort_keys=True))
    if args.command == "verify" and not result["all_passed"]:
        failing = {k: v["failing_seeds"] for k, v in result["suites"].items() if v["failing_seeds"]}
        print(dumps({"error": "VerificationFailed", "kind": "numerical",
                     "failing_seeds": failing}), file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main():
    sys.exit(run_command())
