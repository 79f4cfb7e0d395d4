"""Command-line interface.

Subcommands: ``analyze`` (split, Gram data, both Riesz verdicts, bounds),
``certify`` (factored operators, duals, residuals; fails on non-Riesz
input), ``duals`` (certify, duals only), ``gen`` (deterministic instance
files), ``verify`` (batch cross-validation suite).

Exit codes: 0 analyzed/verified, 1 semantic failure (not a Riesz basis,
suite violations), 2 unusable input (JSON, schema or flag errors).
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .core import fundamental_decomposition
from .errors import BadFlags, KreinError, NotRiesz, ParseError, SchemaError
from .family import VectorFamily
from .generate import DEFECTS, GenSpec, gen_defective_family, gen_metric, gen_operator_pair
from .gram import absolute_sum_bessel_test, bessel_from_gram, gram_matrices
from .instances import (
    LoadedInstance,
    dumps,
    encode_complex_matrix,
    encode_complex_vector,
    instance_document,
    load_instance,
)
from .numerics import Tolerances
from .riesz import (
    RieszVerdict,
    biorthogonality_residual,
    build_certificate,
    dual_sequence,
    factor_riesz,
    optimal_frame_bounds,
    riesz_via_gram,
    riesz_via_inequalities,
)
from .rng import SplitMix64
from .verify import run_suite


def _tolerances(args) -> Tolerances:
    try:
        return Tolerances(
            rank_tol=args.rank_tol, sym_tol=args.sym_tol, recon_tol=args.recon_tol
        )
    except ValueError as exc:
        raise BadFlags(str(exc)) from exc


def _add_tolerance_flags(parser):
    parser.add_argument("--rank-tol", type=float, default=1e-10, help="relative rank cutoff")
    parser.add_argument("--sym-tol", type=float, default=1e-10, help="relative Hermitian-deviation cutoff")
    parser.add_argument("--recon-tol", type=float, default=1e-8, help="relative reconstruction residual")


def _add_output_flags(parser):
    parser.add_argument("--json", action="store_true", help="emit the JSON report on stdout")
    parser.add_argument("--out", help="write the JSON report to this file")


def _verdict_dict(v: RieszVerdict, tol: Tolerances) -> dict:
    a, b, a_prime, b_prime = v.bounds_witness if v.bounds_witness else (None,) * 4
    def margin(low, high):
        if low is None or not high:
            return None
        return low / (tol.rank_tol * high)
    return {
        "is_riesz": v.is_riesz,
        "failure_reason": v.failure_reason.value,
        "complete_plus": v.complete_plus,
        "complete_minus": v.complete_minus,
        "margins": {"plus": margin(a, b), "minus": margin(a_prime, b_prime)},
    }


def _split_dict(fam: VectorFamily) -> dict:
    return {
        "i_plus": list(fam.i_plus),
        "i_minus": list(fam.i_minus),
        "neutral": list(fam.neutral),
    }


def analyze_report(inst: LoadedInstance, tol: Tolerances) -> dict:
    start = time.perf_counter()
    fam = inst.family
    gp = gram_matrices(fam)
    b_plus, b_minus = bessel_from_gram(gp)
    v_ineq = riesz_via_inequalities(fam)
    v_gram = riesz_via_gram(fam)
    bounds = v_ineq.bounds_witness
    report = {
        "version": "krein/1-report",
        "dim": inst.metric.dim,
        "signature": [inst.fd.p, inst.fd.q],
        "split": _split_dict(fam),
        "gram": {
            "norm_plus": gp.norm_plus,
            "norm_minus": gp.norm_minus,
            "sigma_min_plus": gp.sigma_min_plus,
            "sigma_min_minus": gp.sigma_min_minus,
            "bessel_plus": b_plus,
            "bessel_minus": b_minus,
            "absolute_sum": absolute_sum_bessel_test(fam),
        },
        "verdicts": {
            "inequalities": _verdict_dict(v_ineq, tol),
            "gram": _verdict_dict(v_gram, tol),
        },
        "bounds": list(bounds) if bounds is not None else None,
        "timings": {"seconds": time.perf_counter() - start},
    }
    return report


def certify_report(inst: LoadedInstance, tol: Tolerances, samples: int, sample_seed: int) -> dict:
    report = analyze_report(inst, tol)
    start = time.perf_counter()
    fam, fd = inst.family, inst.fd
    ops = factor_riesz(fam)  # NotRiesz propagates to the command handler
    duals = dual_sequence(ops, fd)
    stream = SplitMix64(sample_seed)
    residuals = {}
    for side, dim, basis in (("plus", fd.p, fd.plus_basis), ("minus", fd.q, fd.minus_basis)):
        if dim == 0:
            residuals[side] = 0.0
            continue
        coords = stream.complex_gaussians(dim * samples).reshape(dim, samples)
        ambient = basis @ coords
        members = fam.plus_vectors if side == "plus" else fam.minus_vectors
        dual_members = duals.plus_vectors if side == "plus" else duals.minus_vectors
        sign = 1.0 if side == "plus" else -1.0
        weights = dual_members.conj().T @ (inst.metric.G @ ambient)
        recon = sign * (members @ weights)
        resid = np.linalg.norm(fd.W_inv @ (recon - ambient), axis=0)
        residuals[side] = float(np.max(resid / np.linalg.norm(coords, axis=0)))
    report["certificate"] = {
        "u_plus": encode_complex_matrix(ops.u_plus),
        "u_minus": encode_complex_matrix(ops.u_minus),
        "bounds": list(optimal_frame_bounds(ops)),
        "duals": [encode_complex_vector(duals.vector(n)) for n in range(duals.size)],
        "biorthogonality_residual": biorthogonality_residual(fam, duals),
        "reconstruction_residual_plus": residuals["plus"],
        "reconstruction_residual_minus": residuals["minus"],
        "reconstruction_ok": max(residuals.values()) <= tol.recon_tol,
        "samples": samples,
    }
    report["timings"]["seconds"] += time.perf_counter() - start
    return report


def _print_human_analysis(report: dict, path: str):
    split = report["split"]
    gram = report["gram"]
    print(f"instance {path}: dim {report['dim']}, signature ({report['signature'][0]}, {report['signature'][1]})")
    print(f"split: I+ = {split['i_plus']}  I- = {split['i_minus']}  neutral = {split['neutral']}")
    print(
        f"gram: |G+| = {gram['norm_plus']:.6g} (sigma_min {gram['sigma_min_plus']:.3g})  "
        f"|G-| = {gram['norm_minus']:.6g} (sigma_min {gram['sigma_min_minus']:.3g})"
    )
    print(
        f"bessel: B = {gram['bessel_plus']:.6g}  B' = {gram['bessel_minus']:.6g}  "
        f"absolute-sum = {gram['absolute_sum']:.6g}"
    )
    for name in ("inequalities", "gram"):
        verdict = report["verdicts"][name]
        if verdict["is_riesz"]:
            print(f"verdict ({name}): RIESZ")
        else:
            print(f"verdict ({name}): not a Riesz basis ({verdict['failure_reason']})")
    if report["bounds"] is not None:
        a, b, a_prime, b_prime = report["bounds"]
        print(f"bounds: A = {a:.6g}  B = {b:.6g}  A' = {a_prime:.6g}  B' = {b_prime:.6g}")


def _emit(report: dict, args) -> None:
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    tol = _tolerances(args)
    inst = load_instance(args.path, tol)
    report = analyze_report(inst, tol)
    if not args.json:
        _print_human_analysis(report, args.path)
    _emit(report, args)
    return 0


def _cmd_certify(args, duals_only: bool = False) -> int:
    tol = _tolerances(args)
    inst = load_instance(args.path, tol)
    try:
        report = certify_report(inst, tol, args.samples, args.sample_seed)
    except NotRiesz as exc:
        report = analyze_report(inst, tol)
        if not args.json:
            _print_human_analysis(report, args.path)
            print(f"certification failed: {exc}")
        _emit(report, args)
        return 1
    duals_only = duals_only or args.duals_only
    if duals_only:
        report = {
            "version": report["version"],
            "split": report["split"],
            "duals": report["certificate"]["duals"],
        }
    if not args.json:
        if duals_only:
            print(f"duals ({len(report['duals'])} vectors):")
            for n, vec in enumerate(report["duals"]):
                print(f"  g_{n} = {vec}")
        else:
            _print_human_analysis(report, args.path)
            cert = report["certificate"]
            print(f"biorthogonality residual: {cert['biorthogonality_residual']:.3e}")
            print(
                f"reconstruction residual: plus {cert['reconstruction_residual_plus']:.3e}, "
                f"minus {cert['reconstruction_residual_minus']:.3e} "
                f"({cert['samples']} samples per side)"
            )
    _emit(report, args)
    return 0


def _cmd_gen(args) -> int:
    if args.dim is None and args.signature is None:
        raise BadFlags("gen requires --dim or --signature")
    signature = None
    if args.signature is not None:
        try:
            p, q = (int(part) for part in args.signature.split(","))
        except ValueError as exc:
            raise BadFlags(f"--signature expects P,Q with integers, got {args.signature!r}") from exc
        if p < 0 or q < 0:
            raise BadFlags("--signature entries must be nonnegative")
        signature = (p, q)
        if args.dim is not None and args.dim != p + q:
            raise BadFlags(f"--dim {args.dim} conflicts with --signature {p},{q}")
    dim = args.dim if args.dim is not None else signature[0] + signature[1]
    if dim < 1 or dim > 64:
        raise BadFlags(f"--dim must be in [1, 64], got {dim}")
    try:
        spec = GenSpec(
            seed=args.seed,
            dim_range=(dim, dim),
            signature=signature,
            cond_cap=args.cond_cap,
            defect=args.defect,
        )
    except ValueError as exc:
        raise BadFlags(str(exc)) from exc
    metric = gen_metric(spec)
    fd = fundamental_decomposition(metric)
    if spec.defect is None:
        cert = build_certificate(gen_operator_pair(spec, fd), fd)
        doc = instance_document(
            metric.G, cert.family.vectors, (cert.ops.u_plus, cert.ops.u_minus)
        )
    else:
        outcome = gen_defective_family(spec, metric, fd)
        doc = instance_document(metric.G, outcome.family.vectors)
    text = dumps(doc)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    tol = _tolerances(args)
    if args.dim_min < 1 or args.dim_max > 64 or args.dim_min > args.dim_max:
        raise BadFlags(f"dims must satisfy 1 <= min <= max <= 64, got {args.dim_min}..{args.dim_max}")
    if args.trials < 1:
        raise BadFlags(f"--trials must be positive, got {args.trials}")
    summary = run_suite(
        trials=args.trials,
        seed=args.seed,
        dim_range=(args.dim_min, args.dim_max),
        cond_cap=args.cond_cap,
        tol=tol,
    )
    if args.json:
        sys.stdout.write(dumps(summary.to_dict()))
    else:
        print(
            f"verification suite: {args.trials} clean + {args.trials} defective instances, "
            f"seed {args.seed}, dims {args.dim_min}..{args.dim_max}"
        )
        for prop in summary.properties:
            total = prop.passes + prop.failures
            status = "ok" if prop.failures == 0 else "FAIL"
            print(
                f"  {prop.name:<28} {status}  {prop.passes}/{total} pass, "
                f"worst margin {prop.worst_margin:.3e}"
            )
        print(f"violations: {summary.violations}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(summary.to_dict()))
    return 0 if summary.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krein",
        description="Analyze, certify and generate Riesz-basis instances over indefinite metrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="split, Gram data, verdicts and bounds")
    p_analyze.add_argument("path")
    _add_output_flags(p_analyze)
    _add_tolerance_flags(p_analyze)

    for name, help_text in (
        ("certify", "factor the family, emit duals and residuals (exit 1 if not Riesz)"),
        ("duals", "emit only the dual family (certify --duals-only)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path")
        p.add_argument("--duals-only", action="store_true", help="emit only the dual family")
        p.add_argument("--samples", type=int, default=20, help="reconstruction samples per side")
        p.add_argument("--sample-seed", type=int, default=0, help="seed for reconstruction samples")
        _add_output_flags(p)
        _add_tolerance_flags(p)

    p_gen = sub.add_parser("gen", help="write a deterministic instance file")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--dim", type=int, help="space dimension")
    p_gen.add_argument("--signature", help="inertia as P,Q (overrides the random split)")
    p_gen.add_argument("--cond-cap", type=float, default=1e4, help="operator condition-number cap")
    p_gen.add_argument("--defect", choices=DEFECTS, help="plant this defect into the family")
    p_gen.add_argument("--out", default="-", help="output path ('-' for stdout)")

    p_verify = sub.add_parser("verify", help="run the generated-instance verification suite")
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--dim-min", type=int, default=2)
    p_verify.add_argument("--dim-max", type=int, default=12)
    p_verify.add_argument("--cond-cap", type=float, default=1e4)
    _add_output_flags(p_verify)
    _add_tolerance_flags(p_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "certify": _cmd_certify,
        "duals": lambda a: _cmd_certify(a, duals_only=True),
        "gen": _cmd_gen,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ParseError, SchemaError, BadFlags, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KreinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
