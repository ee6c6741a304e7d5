"""Command-line front end for batch and CI use.

Subcommands generate certificates, re-verify stored ones, evaluate the
integer bound formulas, conjugate finite symmetry groups into rotations,
and produce reproducible random inputs.  Exit codes form the contract:
0 verified, 1 malformed input, 2 mathematical failure.  Standard output
carries file paths (or the report for ``bounds``); standard error carries
human-readable diagnostics.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import serialize
from .algebra import GroupSpec
from .bounds import stable_rank_bounds
from .elimination import (VerificationReport, bezout_certificate, verify_bezout,
                          verify_winding, winding_obstruction)
from .errors import ToolkitError
from .moebius import conjugation_residual, make_finite_subgroup, rotation_action_of
from .randomness import random_crossed, random_su11, seeded_generator

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_MATH = 2

DEFAULT_TOLERANCES = {
    "certificate": 1e-6,
    "bezout_residual": 1e-8,
    "verify_agreement": 1e-9,
    "conjugation": 1e-8,
}


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by the generating commands."""

    seed: int = 0
    n: int = 2
    m: int = 1
    degree_cap: int = 4
    epsilon: float = 0.1
    samples: int = 1024
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.degree_cap < 0:
            raise ValueError("degree cap must be nonnegative")
        if self.samples < 64 or self.samples & (self.samples - 1):
            raise ValueError("samples must be a power of two, at least 64")
        if any(t <= 0 for t in self.tolerances.values()):
            raise ValueError("tolerances must be positive")


def _config(args) -> RunConfig:
    return RunConfig(seed=args.seed, n=args.n, m=args.m,
                     degree_cap=getattr(args, "degree_cap", 4),
                     epsilon=getattr(args, "epsilon", 0.1),
                     samples=getattr(args, "samples", 1024))


def _report_failures(report: VerificationReport, path: str) -> None:
    for failure in report.failures:
        print(f"{path}: {failure}", file=sys.stderr)


def _cmd_cert_upper(args) -> int:
    config = _config(args)
    x = serialize.crossed_from_obj(serialize.read_file(args.x))
    y = serialize.crossed_from_obj(serialize.read_file(args.y))
    if x.spec != y.spec:
        raise ValueError(f"input group specs disagree: {x.spec} vs {y.spec}")
    rng = seeded_generator(config.seed)
    cert = bezout_certificate(x, y, config.epsilon, rng, seed=config.seed)
    out = serialize.write_file(args.out, serialize.bezout_to_obj(cert))
    report = verify_bezout(cert)
    if not report.ok:
        _report_failures(report, str(out))
        return EXIT_MATH
    print(out)
    return EXIT_OK


def _cmd_cert_lower(args) -> int:
    config = _config(args)
    spec = GroupSpec(config.n, config.m)
    rng = seeded_generator(config.seed)
    obs = winding_obstruction(spec, args.epsilon, rng, samples=config.samples,
                              seed=config.seed)
    out = serialize.write_file(args.out, serialize.winding_to_obj(obs))
    report = verify_winding(obs)
    if not report.ok:
        _report_failures(report, str(out))
        return EXIT_MATH
    print(out)
    return EXIT_OK


def _verify_conjugation(obj) -> VerificationReport:
    subgroup = serialize.subgroup_from_obj(obj["subgroup"])
    h = serialize.su11_from_obj(obj["h"])
    residual, _ = conjugation_residual(subgroup, h)
    failures = []
    if residual >= DEFAULT_TOLERANCES["conjugation"]:
        failures.append(f"conjugation residual {residual:.3e} >= 1e-08")
    if abs(residual - float(obj["residual"])) > DEFAULT_TOLERANCES["verify_agreement"]:
        failures.append("stored residual disagrees with recomputed value")
    derived = obj["derived_spec"]
    GroupSpec(int(derived["n"]), int(derived["m"]))  # validates primitivity
    return VerificationReport(kind="conjugation", ok=not failures,
                              failures=tuple(failures),
                              recomputed={"residual": residual})


def _cmd_verify(args) -> int:
    worst = EXIT_OK
    for path in args.certificate:
        obj = serialize.read_file(path)
        kind = obj.get("type") if isinstance(obj, dict) else None
        if kind == "bezout":
            report = verify_bezout(serialize.bezout_from_obj(obj))
        elif kind == "winding":
            report = verify_winding(serialize.winding_from_obj(obj))
        elif kind == "conjugation":
            report = _verify_conjugation(obj)
        else:
            raise ValueError(f"{path}: unknown certificate type {kind!r}")
        if not report.ok:
            _report_failures(report, str(path))
            worst = EXIT_MATH
    return worst


def _cmd_bounds(args) -> int:
    report = stable_rank_bounds(args.ltsr_a, group_order=args.n,
                                matrix_size=args.matrix_size, ltsr_b=args.ltsr_b)
    payload = {
        "ltsr_a": report.ltsr_a,
        "group_order": report.group_order,
        "matrix_size": report.matrix_size,
        "ltsr_b": report.ltsr_b,
        "crossed_product_bound": report.crossed_product_bound,
        "cyclic_bound": report.cyclic_bound,
        "matrix_formula": report.matrix_formula,
        "reverse_bound": report.reverse_bound,
    }
    print(serialize.dumps(payload), end="")
    return EXIT_OK


def _cmd_conjugate(args) -> int:
    subgroup = serialize.subgroup_from_obj(serialize.read_file(args.subgroup))
    action = rotation_action_of(subgroup)
    out = serialize.write_file(args.out,
                               serialize.rotation_action_to_obj(action, subgroup))
    if action.conjugation.residual >= DEFAULT_TOLERANCES["conjugation"]:
        print(f"{out}: conjugation residual {action.conjugation.residual:.3e}",
              file=sys.stderr)
        return EXIT_MATH
    print(out)
    return EXIT_OK


def _cmd_random(args) -> int:
    config = _config(args)
    spec = GroupSpec(config.n, config.m)
    rng = seeded_generator(config.seed)
    stem = Path(args.out)
    paths = []
    for tag in ("x", "y"):
        element = random_crossed(rng, spec, config.degree_cap)
        paths.append(serialize.write_file(
            stem.with_name(stem.name + f"-{tag}.json"),
            serialize.crossed_to_obj(element)))
    for p in paths:
        print(p)
    return EXIT_OK


def _cmd_random_subgroup(args) -> int:
    config = _config(args)
    rng = seeded_generator(config.seed)
    subgroup = make_finite_subgroup(config.n, random_su11(rng), config.m)
    out = serialize.write_file(args.out, serialize.subgroup_to_obj(subgroup))
    print(out)
    return EXIT_OK


def _add_common(parser, *, epsilon=None, samples=False, degree_cap=False):
    parser.add_argument("--seed", type=int, default=0,
                        help="64-bit seed for the counter-based generator")
    parser.add_argument("--n", type=int, default=2, help="group order")
    parser.add_argument("--m", type=int, default=1,
                        help="primitive-root selector, coprime to n")
    if epsilon is not None:
        parser.add_argument("--epsilon", type=float, default=epsilon,
                            help="accuracy / perturbation margin")
    if samples:
        parser.add_argument("--samples", type=int, default=1024,
                            help="circle sample count (power of two, >= 64)")
    if degree_cap:
        parser.add_argument("--degree-cap", dest="degree_cap", type=int, default=4,
                            help="maximum component degree for random elements")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crossrank",
        description="stable-rank certificates for crossed products of the "
                    "polynomial disk algebra")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cert-upper",
                       help="Bezout certificate that a pair generates")
    p.add_argument("x", help="JSON file with the first element")
    p.add_argument("y", help="JSON file with the second element")
    _add_common(p, epsilon=0.1)
    p.add_argument("--out", required=True, help="certificate output path")
    p.set_defaults(func=_cmd_cert_upper)

    p = sub.add_parser("cert-lower",
                       help="winding obstruction against single generators")
    _add_common(p, epsilon=0.05, samples=True)
    p.add_argument("--out", required=True, help="obstruction output path")
    p.set_defaults(func=_cmd_cert_lower)

    p = sub.add_parser("verify", help="re-verify stored certificates")
    p.add_argument("certificate", nargs="+", help="certificate JSON files")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bounds", help="integer stable-rank bound formulas")
    p.add_argument("--ltsr-a", dest="ltsr_a", type=int, required=True,
                   help="stable rank of the base algebra")
    p.add_argument("--n", type=int, default=None, help="group order / index size")
    p.add_argument("--matrix-size", dest="matrix_size", type=int, default=None)
    p.add_argument("--ltsr-b", dest="ltsr_b", type=int, default=None,
                   help="stable rank of the larger algebra (reverse bound)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("conjugate",
                       help="conjugate a finite subgroup into rotations")
    p.add_argument("subgroup", help="subgroup JSON file")
    p.add_argument("--out", required=True, help="conjugation output path")
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser("random", help="write a reproducible random element pair")
    _add_common(p, degree_cap=True)
    p.add_argument("--out", required=True,
                   help="output stem; writes <stem>-x.json and <stem>-y.json")
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("random-subgroup",
                       help="write a reproducible random conjugated subgroup "
                            "of order --n")
    _add_common(p)
    p.add_argument("--out", required=True, help="subgroup output path")
    p.set_defaults(func=_cmd_random_subgroup)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (json.JSONDecodeError, OSError, KeyError, TypeError, ValueError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
