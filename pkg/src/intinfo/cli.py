"""Command-line entry point.

Exit codes: 0 on success (a declined classification is still a success),
1 on bad input, 2 when an internal identity check fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from .causal_strength import strength_report
from .dist_core import JointDistribution, joint_from_bayesnet, load_bayesnet
from .estimation import empirical_joint, forward_sample, read_samples_csv, write_samples_csv
from .harness import run_weak_arrow_sweep
from .info_measures import InvariantError, info_profile, yeung_bounds
from .structure_inference import (
    DEFAULT_EPSILON,
    classify_p2,
    classify_triangle,
    classify_triangle_with_root,
    weak_edge_from_strengths,
)

SCHEMA = 1
SAMPLE_EPSILON = 0.01


class InputError(ValueError):
    pass


def _emit(command: str, payload: dict) -> None:
    doc = {"schema": SCHEMA, "command": command, **payload}
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _names(text: str, what: str) -> list[str]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise InputError(f"{what}: expected a comma-separated list, got {text!r}")
    return items


def _cards(text: str) -> list[int]:
    try:
        cards = [int(c) for c in _names(text, "--cards")]
    except ValueError:
        raise InputError(f"--cards: expected integers, got {text!r}") from None
    return cards


def _index(joint: JointDistribution, name: str) -> int:
    try:
        return joint.index(name)
    except ValueError as e:
        raise InputError(str(e)) from None


def _triple(joint: JointDistribution, spec: str | None) -> tuple[int, int, int]:
    if spec is None:
        if len(joint.vars) < 3:
            raise InputError(f"need at least three variables, have {len(joint.vars)}")
        return (0, 1, 2)
    names = _names(spec, "--triple")
    if len(names) != 3:
        raise InputError("--triple: expected exactly three variable names")
    return tuple(_index(joint, n) for n in names)


def cmd_analyze(args) -> None:
    net = load_bayesnet(args.net)
    joint = joint_from_bayesnet(net)
    x, y, z = _triple(joint, args.triple)
    profile = info_profile(joint, x, y, z)
    lower, upper = yeung_bounds(joint, x, y, z)
    _emit("analyze", {
        "profile": profile.to_dict(),
        "yeung_bounds": {"lower": lower, "upper": upper},
        "strengths": strength_report(net).to_dict() if net.edges else None,
    })


def _load_joint(args):
    """Joint plus ground-truth network (None for sample input) and default epsilon."""
    if (args.net is None) == (args.samples is None):
        raise InputError("give exactly one of --net or --samples")
    if args.net is not None:
        net = load_bayesnet(args.net)
        return joint_from_bayesnet(net), net, DEFAULT_EPSILON
    if args.cards is None:
        raise InputError("--samples needs --cards")
    samples = read_samples_csv(args.samples, _cards(args.cards))
    return empirical_joint(samples, args.smoothing), None, SAMPLE_EPSILON


def cmd_classify(args) -> None:
    joint, net, epsilon = _load_joint(args)
    if args.epsilon is not None:
        epsilon = args.epsilon
    x, y, z = _triple(joint, args.triple)
    profile = info_profile(joint, x, y, z)
    strengths = strength_report(net) if net is not None and net.edges else None
    if args.weak is not None:
        weak = [_index(joint, n) for n in _names(args.weak, "--weak")]
        if len(weak) != 2:
            raise InputError("--weak: expected two variable names")
    elif strengths is not None:
        weak = weak_edge_from_strengths(strengths)
        if weak is None:
            _emit("classify", {"verdict": None, "reason": "weakest edge is tied; pass --weak"})
            return
    else:
        raise InputError("--weak is required with --samples")
    if args.root is not None:
        verdict = classify_triangle_with_root(profile, weak, _index(joint, args.root), strengths, epsilon)
    else:
        verdict = classify_triangle(profile, weak, strengths, epsilon)
    _emit("classify", {"epsilon": epsilon, "verdict": verdict.to_dict()})


def cmd_simulate(args) -> None:
    net = load_bayesnet(args.net)
    samples = forward_sample(net, args.n, args.seed)
    if args.out is None:
        write_samples_csv(samples, sys.stdout)
    else:
        write_samples_csv(samples, args.out)


def cmd_classify_p2(args) -> None:
    joint, _, epsilon = _load_joint(args)
    if args.epsilon is not None:
        epsilon = args.epsilon
    if len(joint.vars) != 3:
        raise InputError("classify-p2 needs exactly three variables")
    mid = _index(joint, args.middle)
    a, b = [i for i in range(3) if i != mid]
    profile = info_profile(joint, a, mid, b)
    _emit("classify-p2", {
        "epsilon": epsilon,
        "middle": args.middle,
        "interaction": profile.interaction,
        "class": classify_p2(profile, epsilon).value,
    })


def cmd_sweep(args) -> None:
    report = run_weak_arrow_sweep(args.trials, args.seed, _cards(args.cards), args.alpha)
    if not report.check_counters():
        raise InvariantError("sweep counters are inconsistent")
    _emit("sweep", {"seed": args.seed, "alpha": args.alpha, "cards": _cards(args.cards), "report": report.to_dict()})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intinfo",
        description="Interaction information and causal orientation of small discrete networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="information profile, Yeung bounds and edge strengths of a network")
    p.add_argument("--net", required=True)
    p.add_argument("--triple", help="three variable names (default: first three)")
    p.set_defaults(func=cmd_analyze)

    def add_source(p):
        p.add_argument("--net")
        p.add_argument("--samples")
        p.add_argument("--cards", help="comma-separated cardinalities of the CSV columns")
        p.add_argument("--smoothing", type=float, default=0.0, help="additive count smoothing for --samples")
        p.add_argument("--epsilon", type=float, help=f"sign threshold (default {DEFAULT_EPSILON} exact, {SAMPLE_EPSILON} samples)")

    p = sub.add_parser("classify", help="orient a triangle")
    add_source(p)
    p.add_argument("--weak", help="weak edge as two names, e.g. X,Z")
    p.add_argument("--root", help="known root variable")
    p.add_argument("--triple", help="three variable names (default: first three)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="forward-sample a network to CSV")
    p.add_argument("--net", required=True)
    p.add_argument("--n", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify-p2", help="chain/fork versus v-structure on a path")
    add_source(p)
    p.add_argument("--middle", required=True)
    p.set_defaults(func=cmd_classify_p2)

    p = sub.add_parser("sweep", help="check the weak-arrow claim on random triangles")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--cards", default="2,2,2")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InvariantError as e:
        print(f"error: internal check failed: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
