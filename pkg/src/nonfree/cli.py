"""Command-line front end: JSON reports on stdout, logs on stderr.

Exit codes: 0 for a true verdict or successful computation, 1 for a false
verdict or failed reduction/flow, 2 for input errors. Identical arguments
(and seed) produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .certify import NonFreenessReport, certify_family, certify_named
from .construct import build_family_tensor, s0_tensor
from .family import family_data, family_to_doc, halfspace_check
from .flow import flow, ness_minimality
from .jsonio import dumps
from .moment import WeylPoint, herm_triple_to_doc, moment_map, spec_point
from .polytope import hull_refute, outer_halfspace
from .reduction import ReductionError, reduce_to_s0
from .supports import is_free_support
from .tensor import (
    TensorFormatError,
    support,
    tensor_from_doc,
    tensor_to_doc,
)


class InputError(ValueError):
    """Anything wrong with the files or flags the user handed us."""


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_tensor(path: str):
    try:
        return tensor_from_doc(_load_json(path))
    except TensorFormatError as exc:
        raise InputError(str(exc)) from exc


def _parse_number(value) -> Fraction | float:
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as exc:
            raise InputError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise InputError(f"expected a number or 'p/q' string, got {value!r}")


def _header(command: str, config: dict) -> dict:
    return {"tool": "nonfree", "version": __version__, "command": command, "config": config}


def _group_triple_doc(g) -> dict:
    doc = {}
    for name, m in zip(("a", "b", "c"), g.factors):
        doc[name] = {"re": m.real.tolist(), "im": m.imag.tolist()}
    return doc


def _decimate(values: list[float], limit: int = 1000) -> list[float]:
    if len(values) <= limit:
        return values
    stride = (len(values) + limit - 1) // limit
    sampled = values[::stride]
    if sampled[-1] != values[-1]:
        sampled.append(values[-1])
    return sampled


def cmd_family(args) -> tuple[dict, int]:
    data = family_data(args.n)
    doc = _header("family", {"n": args.n, "verify": bool(args.verify)})
    doc["family_data"] = family_to_doc(data)
    doc["s0"] = tensor_to_doc(s0_tensor(args.n))
    if args.n >= 3:
        ft = build_family_tensor(args.n)
        doc["family_tensor"] = tensor_to_doc(ft.tensor)
        if args.verify:
            left, right = ft.W.gram_defects()
            mu = moment_map(ft.tensor)
            q_float = [np.diag([float(x) for x in qi]) for qi in data.q]
            mu_defect = float(
                np.sqrt(
                    sum(np.linalg.norm(c - qd) ** 2 for c, qd in zip(mu.components, q_float))
                )
            )
            ness = ness_minimality(ft.tensor)
            half = halfspace_check(args.n)
            doc["verification"] = {
                "gram_defect_wsw": left,
                "gram_defect_wws": right,
                "mu_defect": mu_defect,
                "ness_lambda": ness.lam,
                "ness_residual": ness.residual,
                "halfspace_valid": half.valid,
                "halfspace_equality_is_gamma": half.equals_gamma,
            }
    return doc, 0


def cmd_moment_map(args) -> tuple[dict, int]:
    t = _load_tensor(args.input)
    try:
        mu = moment_map(t)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    doc = _header("moment-map", {"input": args.input})
    doc["mu"] = herm_triple_to_doc(mu)
    doc["spec_point"] = [list(c) for c in spec_point(mu).components]
    return doc, 0


def cmd_flow(args) -> tuple[dict, int]:
    t = _load_tensor(args.input)
    result = flow(
        t,
        step_size=args.step,
        residual_tol=args.residual_tol,
        max_steps=args.max_steps,
    )
    ness = ness_minimality(result.limit)
    doc = _header(
        "flow",
        {
            "input": args.input,
            "step": args.step,
            "residual_tol": args.residual_tol,
            "max_steps": args.max_steps,
        },
    )
    doc["result"] = {
        "converged": result.converged,
        "steps": result.steps,
        "final_residual": result.final_residual,
        "lambda": ness.lam,
        "mu_norm_trajectory": _decimate(result.mu_norm_trajectory),
        "limit": tensor_to_doc(result.limit),
    }
    return doc, 0 if result.converged else 1


def cmd_free_support(args) -> tuple[dict, int]:
    t = _load_tensor(args.input)
    witness = is_free_support(support(t, args.tol))
    doc = _header("free-support", {"input": args.input, "tol": args.tol})
    doc["free"] = witness.verdict
    doc["offending_pair"] = (
        [list(x) for x in witness.offending_pair] if witness.offending_pair else None
    )
    return doc, 0 if witness.verdict else 1


def _report_doc(report: NonFreenessReport) -> dict:
    doc = {
        "input": report.input_id,
        "verdict": report.verdict,
        "failed_stage": report.failed_stage,
        "details": report.details,
    }
    if report.ness is not None:
        doc["ness"] = {"lambda": report.ness.lam, "residual": report.ness.residual}
    if report.blocks is not None:
        doc["stabilizer_blocks"] = [list(map(list, f)) for f in report.blocks.factors]
    if report.obstruction is not None:
        doc["obstruction"] = {"kind": report.obstruction.kind, "data": report.obstruction.data}
    return doc


def cmd_certify(args) -> tuple[dict, int]:
    if (args.family is None) == (args.named is None):
        raise InputError("choose exactly one of --family N or --named T2|T5")
    if args.family is not None:
        try:
            report = certify_family(args.family, tol=args.tol)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        config = {"family": args.family, "tol": args.tol}
    else:
        try:
            report = certify_named(args.named, tol=args.tol)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        config = {"named": args.named, "tol": args.tol}
    doc = _header("certify-nonfree", config)
    doc["report"] = _report_doc(report)
    return doc, 0 if report.verdict else 1


def cmd_reduce_s0(args) -> tuple[dict, int]:
    t = _load_tensor(args.input)
    doc = _header("reduce-s0", {"input": args.input, "tol": args.tol})
    try:
        result = reduce_to_s0(t, tol=args.tol)
    except ReductionError as exc:
        doc["success"] = False
        doc["reason"] = str(exc)
        return doc, 1
    doc["success"] = result.success
    doc["residual"] = result.residual
    doc["steps"] = result.log
    doc["g"] = _group_triple_doc(result.g)
    return doc, 0 if result.success else 1


def cmd_polytope(args) -> tuple[dict, int]:
    t = _load_tensor(args.input)
    if (args.halfspace is None) == (args.refute is None):
        raise InputError("choose exactly one of --halfspace or --refute")
    if args.halfspace is not None:
        halfspace_doc = _load_json(args.halfspace)
        try:
            h = tuple(
                tuple(_parse_number(x) for x in halfspace_doc[key]) for key in ("h1", "h2", "h3")
            )
            c = _parse_number(halfspace_doc["c"])
        except KeyError as exc:
            raise InputError(f"halfspace document missing {exc}") from exc
        cert = outer_halfspace(t, h, c)
        doc = _header("polytope", {"input": args.input, "halfspace": args.halfspace})
        doc["halfspace"] = {
            "valid": cert.valid,
            "c": cert.c,
            "min_support_value": cert.min_support_value,
            "vertices_checked": cert.vertex_count,
        }
        return doc, 0 if cert.valid else 1
    point_doc = _load_json(args.refute)
    try:
        point = WeylPoint(
            tuple(float(x) for x in point_doc["p1"]),
            tuple(float(x) for x in point_doc["p2"]),
            tuple(float(x) for x in point_doc["p3"]),
        )
    except KeyError as exc:
        raise InputError(f"point document missing {exc}") from exc
    except ValueError as exc:
        raise InputError(f"invalid Weyl point: {exc}") from exc
    result = hull_refute(t, point, samples=args.samples, seed=args.seed)
    doc = _header(
        "polytope",
        {"input": args.input, "refute": args.refute, "samples": args.samples, "seed": args.seed},
    )
    doc["refutation"] = {
        "outcome": result.outcome,
        "refuting_sample": result.refuting_sample,
        "samples_checked": result.samples_checked,
        "support_sizes": result.support_sizes,
        "upper_triple": _group_triple_doc(result.upper_triple),
    }
    return doc, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonfree",
        description="Constructions and certificates around explicit non-free tensors.",
    )
    parser.add_argument("--version", action="version", version=f"nonfree {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="family constants, tensor and 0/1 representative")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("moment-map", help="moment map image of a tensor")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_moment_map)

    p = sub.add_parser("flow", help="integrate the scaling gradient flow")
    p.add_argument("--input", required=True)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--residual-tol", type=float, default=1e-8)
    p.add_argument("--max-steps", type=int, default=200_000)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("free-support", help="check whether the support is free")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_free_support)

    p = sub.add_parser("certify-nonfree", help="emit a non-freeness certificate")
    p.add_argument("--family", type=int)
    p.add_argument("--named", choices=["T2", "T5", "t2", "t5"])
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("reduce-s0", help="reduce a staircase tensor to the 0/1 form")
    p.add_argument("--input", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_reduce_s0)

    p = sub.add_parser("polytope", help="one-sided moment polytope certificates")
    p.add_argument("--input", required=True)
    p.add_argument("--halfspace")
    p.add_argument("--refute")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_polytope)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.func(args)
    except InputError as exc:
        print(dumps({"error": {"kind": "input", "message": str(exc)}}))
        return 2
    except ValueError as exc:
        print(dumps({"error": {"kind": type(exc).__name__, "message": str(exc)}}))
        return 2
    print(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
