"""Command line interface.

Every subcommand prints one JSON report (sorted keys) to stdout. Exit codes:
0 success or verdict true, 1 verdict false, 2 input error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds, design_verify, group_designs, unitary_sets, weighted_opt
from .errors import DesignError, GroupTooLargeError, InputError, InvariantViolation
from .moments import haar_moment
from .repdims import dim_hom, dim_hom_closed, weyl_dimension
from .signatures import enumerate_signatures

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("unitary_designs")


def _rational(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unitary-designs",
                                description="Unitary t-designs and codes: dimensions, moments, bounds, verification.")
    p.add_argument("--tol", type=float, default=1e-6, help="relative design tolerance (default 1e-6)")
    p.add_argument("--cluster-tol", type=float, default=1e-6, help="distance clustering gap (default 1e-6)")
    p.add_argument("--unitarity-tol", type=float, default=1e-8, help="max |U^dag U - I| entry (default 1e-8)")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("dims", help="dim Hom(d, r, s) with closed-form cross-check")
    s.add_argument("--d", type=_pos, required=True)
    s.add_argument("--r", type=_nonneg, required=True)
    s.add_argument("--s", type=_nonneg, required=True)
    s.add_argument("--list", action="store_true", help="also list signatures and their dimensions")

    s = sub.add_parser("moment", help="Haar moment int |tr U|^{2t} dU")
    s.add_argument("--d", type=_pos, required=True)
    s.add_argument("--t", type=_nonneg, required=True)

    s = sub.add_parser("verify", help="t-design test of a uset file")
    s.add_argument("uset")
    s.add_argument("--t", type=_pos, required=True)
    s.add_argument("--criterion", choices=sorted(design_verify.CRITERIA), default="potential")

    s = sub.add_parser("strength", help="largest t for which a set is a t-design")
    s.add_argument("uset")
    s.add_argument("--max-t", type=_pos, required=True)

    s = sub.add_parser("profile", help="distance profile |tr(U^dag V)|^2 of a set")
    s.add_argument("uset")

    s = sub.add_parser("bounds", help="absolute and relative size bounds")
    bsub = s.add_subparsers(dest="kind", required=True)
    b = bsub.add_parser("design")
    b.add_argument("--d", type=_pos, required=True)
    b.add_argument("--t", type=_pos, required=True)
    b = bsub.add_parser("code")
    b.add_argument("--d", type=_pos, required=True)
    b.add_argument("--s", type=_pos, required=True)
    b.add_argument("--orthogonal", action="store_true", help="some pair in the code is orthogonal")
    b = bsub.add_parser("rel1")
    b.add_argument("--d", type=_pos, required=True)
    b.add_argument("--alpha", type=_rational, required=True)
    b.add_argument("--design", action="store_true", help="lower bound for designs instead of codes")
    b = bsub.add_parser("rel2")
    b.add_argument("--d", type=_pos, required=True)
    b.add_argument("--alpha", type=_rational, required=True)
    b.add_argument("--beta", type=_rational, required=True)
    b.add_argument("--design", action="store_true", help="lower bound for designs instead of codes")

    s = sub.add_parser("group", help="construct group designs")
    gsub = s.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("clifford")
    g.add_argument("--q", type=_pos, required=True)
    g.add_argument("--out")
    g = gsub.add_parser("chau")
    g.add_argument("--d", type=_pos, required=True)
    g.add_argument("--out")
    g = gsub.add_parser("close")
    g.add_argument("generators", help="uset file of generators")
    g.add_argument("--max-size", type=_pos, default=100_000)
    g.add_argument("--out")

    s = sub.add_parser("chartab", help="character-table design certificates")
    csub = s.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("check")
    c.add_argument("file")
    c.add_argument("--t", type=_nonneg, required=True)
    c = csub.add_parser("export", help="write |chi| data of a closed group (uset) as chartab-v1")
    c.add_argument("uset")
    c.add_argument("--out", required=True)

    s = sub.add_parser("weighted", help="weighted designs")
    wsub = s.add_subparsers(dest="kind", required=True)
    w = wsub.add_parser("fit")
    w.add_argument("uset")
    w.add_argument("--t", type=_pos, required=True)
    w.add_argument("--max-iter", type=_pos, default=200_000)
    w.add_argument("--out")
    w = wsub.add_parser("prune")
    w.add_argument("uset")
    w.add_argument("--t", type=_pos, required=True)
    w.add_argument("--out")

    s = sub.add_parser("sample", help="Haar-random unitaries")
    s.add_argument("--d", type=_pos, required=True)
    s.add_argument("--n", type=_nonneg, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out")
    return p


def _num(v):
    if isinstance(v, Fraction):
        return {"value": float(v), "exact": str(v)}
    return v


def _load(args):
    return unitary_sets.load_set(args.uset, unitarity_tol=args.unitarity_tol)


def _save(X, path, outputs: dict):
    if path:
        unitary_sets.save_set(X, path)
        outputs["written"] = path


def _cmd_dims(args):
    value = dim_hom(args.d, args.r, args.s)
    closed = dim_hom_closed(args.d, args.r, args.s)
    if closed is not None and closed != value:
        raise InvariantViolation(f"closed form {closed} disagrees with the signature sum {value}")
    out = {"dim_hom": value, "closed_form": closed, "closed_form_agrees": closed is None or closed == value}
    if args.list:
        out["signatures"] = [{"mu": list(mu), "dim": weyl_dimension(mu)}
                             for mu in enumerate_signatures(args.d, args.r, args.s)]
    return out, None


def _cmd_moment(args):
    return {"moment": haar_moment(args.d, args.t)}, None


def _cmd_verify(args):
    X = _load(args)
    rep = design_verify.CRITERIA[args.criterion](X, args.t, args.tol)
    out = rep.to_dict()
    out.update(d=X.d, size=len(X), weighted=isinstance(X, unitary_sets.WeightedUnitarySet))
    return out, rep.verdict


def _cmd_strength(args):
    X = _load(args)
    reps = design_verify.design_reports(X, args.max_t, args.tol)
    value = design_verify.strength(X, args.max_t, args.tol)
    return {"strength": value, "d": X.d, "size": len(X),
            "potentials": [r.potential for r in reps], "moments": [r.moment for r in reps]}, value >= 1


def _cmd_profile(args):
    X = _load(args)
    prof = unitary_sets.distance_profile(X, args.cluster_tol)
    return {"d": X.d, "size": len(X), "degree": prof.degree,
            "clusters": [{"value": v, "multiplicity": m} for v, m in prof.clusters],
            "phase_duplicates": [list(p) for p in prof.phase_duplicates]}, None


def _cmd_bounds(args):
    if args.kind == "design":
        return {"bound": bounds.absolute_design_bound(args.d, args.t), "kind": "lower"}, None
    if args.kind == "code":
        return {"bound": bounds.absolute_code_bound(args.d, args.s, args.orthogonal), "kind": "upper"}, None
    if args.kind == "rel1":
        fn = bounds.rel_design_bound_1 if args.design else bounds.rel_code_bound_1
        rep = fn(args.d, args.alpha)
    else:
        fn = bounds.rel_design_bound_2 if args.design else bounds.rel_code_bound_2
        rep = fn(args.d, args.alpha, args.beta)
    out = rep.to_dict()
    out["bound"] = out.pop("value")
    return out, None


def _cmd_group(args):
    if args.kind == "clifford":
        X = group_designs.clifford_design(args.q)
    elif args.kind == "chau":
        X = group_designs.chau_design(args.d)
    else:
        gens = unitary_sets.load_set(args.generators, unitarity_tol=args.unitarity_tol)
        X = group_designs.close_group(gens.matrices if hasattr(gens, "matrices") else gens,
                                      max_size=args.max_size, tol=args.unitarity_tol)
    out = {"d": X.d, "size": len(X)}
    _save(X, args.out, out)
    return out, None


def _cmd_chartab(args):
    if args.kind == "check":
        table = group_designs.load_chartab(args.file)
        rep = group_designs.character_design_check(table, args.t, args.tol)
        out = rep.to_dict()
        out.update(group_order=table.group_order, degree=table.degree)
        return out, rep.verdict
    X = _load(args)
    table = group_designs.abs_character_data(group_designs.PhaseCanonicalSet(X.matrices))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(group_designs.dumps_chartab(table))
    return {"group_order": table.group_order, "degree": table.degree, "written": args.out}, None


def _cmd_weighted(args):
    X = _load(args)
    if args.kind == "fit":
        base = X.base if isinstance(X, unitary_sets.WeightedUnitarySet) else X
        res = weighted_opt.fit_weights(base, args.t, args.tol, args.max_iter)
        W = res.to_weighted(base)
        out = {"gap": res.gap, "iterations": res.iterations, "converged": res.converged,
               "pool_size": len(base), "support_size": len(W),
               "weights": [float(w) for w in res.weights]}
        _save(W, args.out, out)
        return out, res.converged
    W = X if isinstance(X, unitary_sets.WeightedUnitarySet) else unitary_sets.WeightedUnitarySet(X, X.uniform_weights())
    P = weighted_opt.prune_support(W, args.t, args.tol)
    pot = design_verify.frame_potential(P, args.t)
    out = {"input_support": len(W), "support_size": len(P), "potential": pot,
           "moment": haar_moment(P.d, args.t), "dim_hom_tt": dim_hom(P.d, args.t, args.t)}
    _save(P, args.out, out)
    return out, None


def _cmd_sample(args):
    X = unitary_sets.sample_haar(args.d, args.n, args.seed)
    out = {"d": args.d, "size": len(X)}
    _save(X, args.out, out)
    return out, None


COMMANDS = {
    "dims": _cmd_dims,
    "moment": _cmd_moment,
    "verify": _cmd_verify,
    "strength": _cmd_strength,
    "profile": _cmd_profile,
    "bounds": _cmd_bounds,
    "group": _cmd_group,
    "chartab": _cmd_chartab,
    "weighted": _cmd_weighted,
    "sample": _cmd_sample,
}


def _inputs(args) -> dict:
    skip = {"cmd", "kind", "tol", "cluster_tol", "unitarity_tol"}
    return {k: _num(v) for k, v in vars(args).items() if k not in skip}


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    report = {
        "command": argv,
        "subcommand": " ".join(x for x in (args.cmd, getattr(args, "kind", None)) if x),
        "inputs": _inputs(args),
        "tolerances": {"tol": args.tol, "cluster_tol": args.cluster_tol, "unitarity_tol": args.unitarity_tol},
    }
    try:
        outputs, verdict = COMMANDS[args.cmd](args)
    except (InputError, GroupTooLargeError) as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        print(json.dumps(report, sort_keys=True, indent=2))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        print(json.dumps(report, sort_keys=True, indent=2))
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    report["outputs"] = {k: _num(v) for k, v in outputs.items()}
    report["verdict"] = verdict
    print(json.dumps(report, sort_keys=True, indent=2))
    return EXIT_FALSE if verdict is False else EXIT_OK


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
