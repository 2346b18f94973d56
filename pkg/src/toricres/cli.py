"""Command-line interface: JSON instance files in, JSON results out.

Exit codes: 0 success, 1 unreadable or malformed input, 2 a mathematical
precondition failed (or ``validate`` found an invalid fan), 3 two
independent computations disagreed.  Ray indices in output are 1-based;
colors, tuple positions and generator positions stay 0-based.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .coloring import (
    ViolatingCone,
    cdeg,
    cdeg_flags,
    fan_coloring_on_polytope,
    pl_degree_oracle,
)
from .errors import DomainError, InternalInconsistency, NotCartier, NotRefinement, UncoloredRay
from .fan import validate, witness_polytope
from .residue import ideal_member_semiample, residue_monomials, search_degree_one
from .semiample import b_alpha_generators, primitive_collections, semiample_fan

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_INTERNAL = 0, 1, 2, 3


def rays1(indices):
    return [j + 1 for j in sorted(indices)]


def _violating_doc(v: ViolatingCone):
    return {"cone": rays1(v.cone), "rays_by_color": [j + 1 for j in v.witness]}


def error_doc(e: Exception) -> dict:
    doc = {"error": type(e).__name__, "message": str(e)}
    witness = getattr(e, "witness", None)
    if isinstance(witness, ViolatingCone):
        doc["witness"] = _violating_doc(witness)
    if isinstance(e, (NotCartier, NotRefinement)):
        doc["cone"] = rays1(e.cone)
    if isinstance(e, UncoloredRay):
        doc["ray"] = e.ray + 1
    return doc


def _emit(obj):
    sys.stdout.write(io.dumps(obj))


# -- commands ---------------------------------------------------------------

def cmd_validate(args) -> int:
    f = io.load(args.fan, "fan")
    report = validate(f).as_dict()
    _emit(report)
    if report["complete"] and report["projective"]:
        return EXIT_OK
    print("fan is not complete and projective", file=sys.stderr)
    return EXIT_DOMAIN


def cmd_cdeg(args) -> int:
    f = io.load(args.fan, "fan")
    c = io.load(args.coloring, "coloring", f)
    degree = cdeg(f, c)
    if not args.oracle:
        _emit(degree)
        return EXIT_OK
    p = witness_polytope(f)
    fc = fan_coloring_on_polytope(p, f, c)
    flags = cdeg_flags(p, fc)
    oracle = pl_degree_oracle(p, fc, seed=args.seed)
    if degree == flags == oracle:
        _emit(degree)
        return EXIT_OK
    _emit({"error": "OracleDisagreement", "cones": degree, "flags": flags, "oracle": oracle})
    print("degree routes disagree", file=sys.stderr)
    return EXIT_INTERNAL


def cmd_residue(args) -> int:
    f = io.load(args.fan, "fan")
    z = io.load(args.tuple, "tuple", f)
    _emit(residue_monomials(f, z))
    return EXIT_OK


def reduction_doc(f, red) -> dict:
    sa = red.sigma_alpha
    return {
        "quotient_matrix": [list(r) for r in red.q.matrix],
        "target_dim": red.q.target_dim,
        "sigma_alpha": {
            "dim": sa.dim,
            "rays": [list(r) for r in sa.rays],
            "max_cones": [rays1(c) for c in sa.max_cones],
        },
        "ray_images": [list(v) for v in red.ray_images],
        "pi_tilde": [{"cone": rays1(c), "image": rays1(red.pi_tilde[c])} for c in f.cones],
        "polytope_vertices": [[str(x) for x in v] for v in red.polytope.vertices],
        "b_alpha": [rays1(g) for g in b_alpha_generators(red, f)],
        "primitive_collections": [rays1(s) for s in primitive_collections(red, f)],
    }


def cmd_semiample(args) -> int:
    f = io.load(args.fan, "fan")
    a = io.load(args.divisor, "divisor", f)
    _emit(reduction_doc(f, semiample_fan(f, a)))
    return EXIT_OK


def membership_doc(m) -> dict:
    certs = m.certificates
    out = {
        "member": m.member,
        "verdicts": m.verdicts,
        "sections": [
            {"point": [str(x) for x in c["point"]], "monomial": c["monomial"],
             "vertex": c["vertex"], "generator": c["divisor"]}
            for c in certs["sections"]
        ],
        "b_alpha": [{"monomial": rays1(c["generator"]), "generator": c["divisor"]} for c in certs["b_alpha"]],
    }
    if "witness_cone" in certs:
        w = certs["witness_cone"]
        out["witness"] = {"sigma_alpha_cone": rays1(w["cone"]), "rays": [j + 1 for j in w["rays"]]}
    if "common_orbit" in certs:
        out["common_orbit"] = rays1(certs["common_orbit"])
    return out


def cmd_ideal_member(args) -> int:
    f = io.load(args.fan, "fan")
    gens = io.load(args.ideal, "ideal", f)
    a = io.load(args.divisor, "divisor", f)
    _emit(membership_doc(ideal_member_semiample(f, gens, a)))
    return EXIT_OK


def cmd_search(args) -> int:
    f = io.load(args.fan, "fan")
    degrees = [io.load(p, "divisor", f) for p in args.divisors]
    if len(degrees) != f.dim + 1:
        raise io.InstanceError(f"search needs {f.dim + 1} divisor files, got {len(degrees)}")
    _emit(search_degree_one(f, degrees, jobs=args.jobs).as_dict())
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_suite

    dims = (args.n,) if args.n else (2, 3)
    summary = run_suite(seed=args.seed, count=args.count, dims=dims, force_failure=args.force_failure)
    _emit(summary)
    if summary["ok"]:
        return EXIT_OK
    print("self-test failures: " + ", ".join(k for k, v in summary["checks"].items() if v["failed"]),
          file=sys.stderr)
    return EXIT_INTERNAL


# -- entry point ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not domain errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="toricres", description="Toric residues of monomial tuples via fan colorings.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a fan: complete, simplicial, projective")
    p.add_argument("fan")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cdeg", help="combinatorial degree of a simplicial coloring")
    p.add_argument("fan")
    p.add_argument("coloring")
    p.add_argument("--oracle", action="store_true", help="cross-check with flag counting and the PL map")
    p.add_argument("--seed", type=int, default=0, help="sampling seed for the PL oracle")
    p.set_defaults(func=cmd_cdeg)

    p = sub.add_parser("residue", help="toric residue of a monomial tuple")
    p.add_argument("fan")
    p.add_argument("tuple")
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("semiample", help="reduced fan of a semiample divisor")
    p.add_argument("fan")
    p.add_argument("divisor")
    p.set_defaults(func=cmd_semiample)

    p = sub.add_parser("ideal-member", help="is every section of the degree in the monomial ideal?")
    p.add_argument("fan")
    p.add_argument("ideal")
    p.add_argument("divisor")
    p.set_defaults(func=cmd_ideal_member)

    p = sub.add_parser("search", help="smallest compatible disjoint coloring of degree one")
    p.add_argument("fan")
    p.add_argument("divisors", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("selftest", help="run the randomized property suites")
    p.add_argument("--n", type=int, choices=(2, 3), default=None, help="dimension (default: both 2 and 3)")
    p.add_argument("--count", type=int, default=10, help="instances per check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force-failure", action="store_true", help="add a check that always fails")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.InstanceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistency as e:
        _emit(error_doc(e))
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except DomainError as e:
        _emit(error_doc(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
