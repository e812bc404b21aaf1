"""Batch command line: load JSON descriptions, run checks, emit reports.

Exit codes: 0 all requested checks passed, 2 a check failed, 3 bad input,
4 internal consistency error (the two Hopf-image algorithms disagreed).
Reports are deterministic for a fixed seed and fixed inputs (wall time is
reported separately from the results object).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import groups, hopfimage, increasing, quantumgroups as qg, serialize
from .errors import (
    ConvergenceError, InternalCheckError, MethodDisagreementError,
    PreconditionError, ShapeError,
)
from .families import check_family, family_from_magic_unitary, multiplicative_witness
from .linalg import Tolerance

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_INPUT_ERROR = 3
EXIT_INTERNAL = 4


@dataclass(frozen=True)
class RunConfig:
    tol: Tolerance
    max_iter: int = 10000
    method: str = "both"
    output: str = "text"
    seed: int = 0


def _default_tol() -> float:
    env = os.environ.get("QSYM_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise ShapeError(f"QSYM_TOL is not a number: {env!r}")
    return 1e-9


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qsym",
        description="Finite quantum symmetries: family checks, Hopf images, "
                    "generated subgroups, inner faithfulness, increasing sequences.")
    ap.add_argument("--tol", type=float, default=None,
                    help="entrywise equality tolerance (default 1e-9; env QSYM_TOL)")
    ap.add_argument("--rank-tol", type=float, default=1e-8,
                    help="singular-value threshold for rank decisions")
    ap.add_argument("--max-iter", type=int, default=10000)
    ap.add_argument("--method", choices=["kernel", "coideal", "both"], default="both",
                    help="Hopf image algorithm (default: both, cross-checked)")
    ap.add_argument("--output", choices=["json", "text"], default="text")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-family", help="run every quantum-family check")
    p.add_argument("family_file")

    p = sub.add_parser("hopf-image", help="Hopf image of a *-homomorphism")
    p.add_argument("fqg_file")
    p.add_argument("hom_file")

    p = sub.add_parser("gen-subgroup", help="quantum subgroup generated by subgroups")
    p.add_argument("fqg_file")
    p.add_argument("hom_files", nargs="+")

    p = sub.add_parser("inner-faithful", help="Cesaro test for inner faithfulness")
    p.add_argument("fqg_file")
    p.add_argument("hom_file")
    p.add_argument("state_file")

    q = sub.add_parser("qinc", help="quantum increasing sequences")
    qsub = q.add_subparsers(dest="qinc_command", required=True)
    p = qsub.add_parser("enumerate", help="classical increasing sequences")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p = qsub.add_parser("complete", help="complete a representation to a magic unitary")
    p.add_argument("--rep", help="representation JSON file")
    p.add_argument("--seq", help="comma-separated 1-based increasing sequence")
    p.add_argument("--n", type=int, help="ambient size when using --seq")
    qsub.add_parser("s4check", help="closure of the six completed (2,4) sequences")
    p = qsub.add_parser("freepair", help="two-projection representation at parameter t")
    p.add_argument("--t", type=float, default=0.5)
    p = qsub.add_parser("growth", help="coefficient algebra growth under composition")
    p.add_argument("--rep", required=True)
    p.add_argument("--depth", type=int, default=3)
    return ap


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        tol_eq = args.tol if args.tol is not None else _default_tol()
        config = RunConfig(
            tol=Tolerance(eps_eq=tol_eq, eps_rank=args.rank_tol),
            max_iter=args.max_iter, method=args.method,
            output=args.output, seed=args.seed)
    except (ValueError, ShapeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    started = time.perf_counter()
    try:
        report, passed = _dispatch(args, config)
    except MethodDisagreementError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ShapeError, PreconditionError, FileNotFoundError,
            json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (InternalCheckError, ConvergenceError) as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    report["wall_time_s"] = round(time.perf_counter() - started, 6)
    _emit(report, config)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _emit(report: dict, config: RunConfig) -> None:
    if config.output == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    print(f"command: {report['command']}")
    for key, value in report.get("results", {}).items():
        print(f"  {key}: {value}")
    residuals = report.get("residuals", {})
    if residuals:
        worst = max(residuals.values())
        print(f"  residuals: worst {worst:.3e} " +
              "(" + ", ".join(f"{k}={v:.2e}" for k, v in residuals.items()) + ")")
    print(f"  passed: {report['passed']}   [{report['wall_time_s']}s]")


def _dispatch(args, config: RunConfig) -> tuple[dict, bool]:
    handlers = {
        "verify-family": cmd_verify_family,
        "hopf-image": cmd_hopf_image,
        "gen-subgroup": cmd_gen_subgroup,
        "inner-faithful": cmd_inner_faithful,
        "qinc": cmd_qinc,
    }
    return handlers[args.command](args, config)


def cmd_verify_family(args, config: RunConfig) -> tuple[dict, bool]:
    tol = config.tol
    fam = serialize.decode_family(_load_json(args.family_file), tol)
    rep = check_family(fam, tol)
    residuals = {
        "state_preserving": rep.state_preserving,
        "multiplicative": rep.multiplicative,
        "unital": rep.unital,
        "star_map": rep.star_map,
        "unitary": rep.unitary,
    }
    passed = rep.all_ok(tol, slack=10.0)
    results = {
        "n": fam.n,
        "index_dim": fam.index.dim,
        "podles_rank": rep.podles_rank,
        "podles_full": rep.podles_full,
        "state_preserved": rep.state_preserved,
    }
    if rep.multiplicative > tol.eps_eq * 10:
        _, witness = multiplicative_witness(fam)
        results["multiplicative_witness_pij"] = [w + 1 for w in witness]  # 1-based
    report = {
        "command": "verify-family",
        "inputs": {args.family_file: _digest(args.family_file)},
        "results": results,
        "residuals": residuals,
        "passed": passed,
    }
    return report, passed


def _hopf_oracle(q, result, config: RunConfig) -> dict:
    """Classical cross-check data, where the quotient is (co)commutative."""
    oracle: dict = {}
    tol = config.tol
    rng = np.random.default_rng(config.seed)
    try:
        if result.quotient.alg.is_commutative(tol):
            g = qg.extract_group(result.quotient, tol, rng)
            oracle["quotient_group_order"] = g.order
        else:
            d = qg.dual(result.quotient, tol)
            if d.alg.is_commutative(tol):
                g = qg.extract_group(d, tol, rng)
                oracle["dual_quotient_group_order"] = g.order
    except (PreconditionError, InternalCheckError):
        pass
    return oracle


def cmd_hopf_image(args, config: RunConfig) -> tuple[dict, bool]:
    tol = config.tol
    q = serialize.decode_quantum_group(_load_json(args.fqg_file), tol)
    hom, _ = serialize.decode_hom(_load_json(args.hom_file), q.alg, tol)
    result = hopfimage.hopf_image(q, hom, method=config.method, tol=tol)
    passed = max(result.residuals.values()) <= tol.eps_eq * 1000
    report = {
        "command": "hopf-image",
        "inputs": {args.fqg_file: _digest(args.fqg_file),
                   args.hom_file: _digest(args.hom_file)},
        "results": {
            "dim_A": q.dim,
            "dim_S": result.dim,
            "method": result.method,
            "n_stabilized": result.n_stabilized,
            "inner_faithful": result.dim == q.dim,
            "oracle": _hopf_oracle(q, result, config),
        },
        "residuals": result.residuals,
        "passed": passed,
    }
    return report, passed


def cmd_gen_subgroup(args, config: RunConfig) -> tuple[dict, bool]:
    tol = config.tol
    q = serialize.decode_quantum_group(_load_json(args.fqg_file), tol)
    subgroups = []
    inputs = {args.fqg_file: _digest(args.fqg_file)}
    for path in args.hom_files:
        hom, target_q = serialize.decode_hom(_load_json(path), q.alg, tol)
        if target_q is None:
            raise ShapeError(f"{path}: gen-subgroup homs need a \"target_fqg\"")
        subgroups.append((hom, target_q))
        inputs[path] = _digest(path)
    result = hopfimage.generated_subgroup(q, subgroups, method=config.method, tol=tol)
    dual_dim = hopfimage.dual_generated_dim(q, subgroups, tol)
    passed = (max(result.hopf.residuals.values()) <= tol.eps_eq * 1000
              and dual_dim == result.dim)
    report = {
        "command": "gen-subgroup",
        "inputs": inputs,
        "results": {
            "dim_A": q.dim,
            "dim_S": result.dim,
            "dual_generated_dim": dual_dim,
            "method": result.hopf.method,
            "n_stabilized": result.hopf.n_stabilized,
            "subgroup_dims": [tq.dim for _, tq in subgroups],
            "oracle": _hopf_oracle(q, result.hopf, config),
        },
        "residuals": result.hopf.residuals,
        "passed": passed,
    }
    return report, passed


def cmd_inner_faithful(args, config: RunConfig) -> tuple[dict, bool]:
    tol = config.tol
    q = serialize.decode_quantum_group(_load_json(args.fqg_file), tol)
    hom, _ = serialize.decode_hom(_load_json(args.hom_file), q.alg, tol)
    phi_b = serialize.decode_state(_load_json(args.state_file), hom.target.dim)
    cesaro_tol = max(tol.eps_eq * 100, 1e-7)
    flag = hopfimage.inner_faithful(q, hom, phi_b, tol=cesaro_tol, mode="exact")
    result = hopfimage.hopf_image(q, hom, method=config.method, tol=tol)
    dim_flag = result.dim == q.dim
    agreement = flag == dim_flag
    if not agreement:
        raise MethodDisagreementError(
            f"Cesaro test says {flag}, Hopf image dimension says {dim_flag}")
    report = {
        "command": "inner-faithful",
        "inputs": {args.fqg_file: _digest(args.fqg_file),
                   args.hom_file: _digest(args.hom_file),
                   args.state_file: _digest(args.state_file)},
        "results": {
            "inner_faithful": flag,
            "dim_A": q.dim,
            "dim_S": result.dim,
            "criteria_agree": agreement,
        },
        "residuals": result.residuals,
        "passed": agreement,
    }
    return report, True


def cmd_qinc(args, config: RunConfig) -> tuple[dict, bool]:
    tol = config.tol
    if args.qinc_command == "enumerate":
        seqs = increasing.enumerate_sequences(args.k, args.n)
        report = {
            "command": "qinc enumerate",
            "inputs": {},
            "results": {"k": args.k, "n": args.n, "count": len(seqs),
                        "sequences": [list(s) for s in seqs]},
            "residuals": {},
            "passed": True,
        }
        return report, True
    if args.qinc_command == "s4check":
        order, is_s4, perms, _ = increasing.s4_generation_check()
        report = {
            "command": "qinc s4check",
            "inputs": {},
            "results": {
                "completed_permutations": [[i + 1 for i in p.images] for p in perms],
                "group_order": order,
                "is_s4": is_s4,
            },
            "residuals": {},
            "passed": is_s4,
        }
        return report, is_s4
    if args.qinc_command == "complete":
        if args.rep:
            rep = serialize.decode_rep(_load_json(args.rep))
            inputs = {args.rep: _digest(args.rep)}
        elif args.seq and args.n:
            seq = [int(tok) for tok in args.seq.split(",")]
            rep = increasing.classical_rep(seq, args.n)
            inputs = {}
        else:
            raise ShapeError("complete needs --rep FILE or --seq LIST --n N")
        u = increasing.complete(rep, tol)
        magic_rep = increasing.validate_magic(u)
        passed = magic_rep.ok(tol)
        report = {
            "command": "qinc complete",
            "inputs": inputs,
            "results": {"n": u.n, "d": u.d, "magic_unitary": serialize.encode_magic(u)},
            "residuals": {"projection": magic_rep.projection,
                          "row_sums": magic_rep.row_sums,
                          "column_sums": magic_rep.column_sums},
            "passed": passed,
        }
        return report, passed
    if args.qinc_command == "freepair":
        p1, p2, q1, q2 = increasing.two_projection_pair(args.t)
        rep = increasing.free_pair_rep(p1, p2, q1, q2, tol)
        val = increasing.validate(rep)
        u = increasing.complete(rep, tol)
        magic_rep = increasing.validate_magic(u)
        fam = family_from_magic_unitary(u.p, tol)
        fam_rep = check_family(fam, tol)
        passed = val.ok(tol) and magic_rep.ok(tol) and fam_rep.all_ok(tol, slack=10.0)
        report = {
            "command": "qinc freepair",
            "inputs": {},
            "results": {"t": args.t, "rep": serialize.encode_rep(rep),
                        "family_podles_full": fam_rep.podles_full},
            "residuals": {
                "rep_worst": val.worst,
                "magic_worst": magic_rep.worst,
                "family_state_preserving": fam_rep.state_preserving,
                "family_multiplicative": fam_rep.multiplicative,
                "family_unital": fam_rep.unital,
                "family_star_map": fam_rep.star_map,
                "family_unitary": fam_rep.unitary,
            },
            "passed": passed,
        }
        return report, passed
    if args.qinc_command == "growth":
        rep = serialize.decode_rep(_load_json(args.rep))
        growth = increasing.coefficient_growth(rep, args.depth, tol=config.tol)
        monotone = all(a <= b for a, b in zip(growth.dims, growth.dims[1:]))
        report = {
            "command": "qinc growth",
            "inputs": {args.rep: _digest(args.rep)},
            "results": {"dims": growth.dims, "truncated": growth.truncated,
                        "monotone": monotone},
            "residuals": {},
            "passed": monotone,
        }
        return report, monotone
    raise ShapeError(f"unknown qinc subcommand {args.qinc_command!r}")


if __name__ == "__main__":
    sys.exit(main())
