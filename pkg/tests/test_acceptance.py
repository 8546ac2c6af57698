"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES, dirichlet_joint
from intinfo.causal_strength import causal_strength
from intinfo.dist_core import joint_from_bayesnet, save_bayesnet
from intinfo.estimation import estimate_profile, forward_sample
from intinfo.harness import (
    copy_chain_net,
    copy_pair_net,
    noisy_xor_triangle_net,
    random_p2_net,
    random_triangle_net,
    run_weak_arrow_sweep,
    xor_net,
)
from intinfo.info_measures import (
    conditional_mutual_information,
    info_profile,
    interaction_forms3,
    interaction_information,
    joint_mi_forms3,
    mutual_information,
    yeung_bounds,
)
from intinfo.structure_inference import classify_triangle_with_root, roles_from_dag

TOL = 1e-9
X, Y, Z = 0, 1, 2


def record(name, ok, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def identity_joints():
    return [dirichlet_joint(s + 10_000) for s in range(10_000)]


def test_c1_interaction_identities(identity_joints):
    start = time.perf_counter()
    worst = 0.0
    for j in identity_joints:
        values = [interaction_information(j, (X, Y, Z)), *interaction_forms3(j, X, Y, Z), *joint_mi_forms3(j, X, Y, Z)]
        worst = max(worst, max(values) - min(values))
    elapsed = time.perf_counter() - start
    record(
        "C1 interaction identities (10^4 joints)",
        worst < TOL and elapsed < 10,
        f"max pairwise deviation {worst:.2e} bits, {elapsed:.1f}s",
    )


def test_c2_yeung_bounds(identity_joints):
    violations = 0
    for j in identity_joints:
        lo, hi = yeung_bounds(j, X, Y, Z)
        i = interaction_information(j, (X, Y, Z))
        violations += not (lo - TOL <= i <= hi + TOL)
    record("C2 Yeung bounds (10^4 joints)", violations == 0, f"{violations} violations")


def test_c3_strength_identities():
    start = time.perf_counter()
    worst_eq = 0.0
    worst_rs = worst_bs = float("inf")
    for seed in range(1000):
        net = random_triangle_net(seed + 30_000)
        roles = roles_from_dag(net.edges)
        r, b, s = roles.root, roles.bridge, roles.sink
        j = joint_from_bayesnet(net)
        worst_eq = max(worst_eq, abs(causal_strength(net, [(r, b)]) - mutual_information(j, [r], [b])))
        worst_rs = min(worst_rs, causal_strength(net, [(r, s)]) - conditional_mutual_information(j, [r], [s], [b]))
        worst_bs = min(worst_bs, causal_strength(net, [(b, s)]) - conditional_mutual_information(j, [b], [s], [r]))
    elapsed = time.perf_counter() - start
    record(
        "C3 strength identities (10^3 triangles)",
        worst_eq < TOL and worst_rs >= -TOL and worst_bs >= -TOL and elapsed < 30,
        f"max |C_RB - I(R;B)| {worst_eq:.2e}, min slack R->S {worst_rs:.2e}, B->S {worst_bs:.2e}, {elapsed:.1f}s",
    )


def test_c4_weak_arrow_sweep():
    start = time.perf_counter()
    rep = run_weak_arrow_sweep(10_000, seed=1, cards=(2, 2, 2), alpha=1.0)
    elapsed = time.perf_counter() - start
    record(
        "C4 weak-arrow sweep (10^4 triangles)",
        rep.violations == 0 and rep.condition_met_count >= 1 and rep.check_counters() and elapsed < 120,
        f"{rep.violations} violations among {rep.condition_met_count} premise-satisfying nets "
        f"({rep.negative_interaction_count} negative, {rep.tie_count} ties), {elapsed:.1f}s",
    )


def test_c5_p2_sign():
    def interactions(kind, offset, n=1000):
        return [
            info_profile(joint_from_bayesnet(random_p2_net(kind, s + offset)), X, Y, Z).interaction
            for s in range(n)
        ]

    # half the chains run X -> Y -> Z, half Z -> Y -> X
    chains = interactions("chain", 50_000, 500) + interactions("reverse-chain", 51_000, 500)
    forks = interactions("fork", 53_000)
    colliders = interactions("v-structure", 54_000)
    ok = min(chains) >= -TOL and min(forks) >= -TOL and max(colliders) <= TOL
    record(
        "C5 path sign (10^3 chains, forks, v-structures)",
        ok,
        f"min chain {min(chains):.2e}, min fork {min(forks):.2e}, max v-structure {max(colliders):.2e}",
    )


def test_c6_canonical_values():
    xor = info_profile(joint_from_bayesnet(xor_net()), X, Y, Z).interaction
    copied = info_profile(joint_from_bayesnet(copy_chain_net()), X, Y, Z).interaction
    strength = causal_strength(copy_pair_net(), [(0, 1)])
    ok = abs(xor + 1) <= TOL and abs(copied - 1) <= TOL and abs(strength - 1) <= TOL
    record(
        "C6 canonical values",
        ok,
        f"xor {xor:.9f}, copied triple {copied:.9f}, copy-pair strength {strength:.9f}",
    )


def test_c7_known_root_end_to_end():
    net = noisy_xor_triangle_net()
    expected = tuple(sorted([(X, Z), (Z, Y), (X, Y)]))
    exact = classify_triangle_with_root(info_profile(joint_from_bayesnet(net), X, Y, Z), (X, Z), root=X)
    exact_ok = exact.condition_met and exact.candidates == (expected,)
    hits = 0
    for seed in range(20):
        profile = estimate_profile(forward_sample(net, 100_000, seed=seed), X, Y, Z)
        v = classify_triangle_with_root(profile, (X, Z), root=X, epsilon=0.01)
        hits += v.condition_met and v.candidates == (expected,) and v.sink == exact.sink
    record(
        "C7 known-root classification",
        exact_ok and hits >= 19,
        f"exact verdict {'matches' if exact_ok else 'differs'}, samples {hits}/20 seeds",
    )


def test_c8_estimation_convergence():
    details, ok = [], True
    for name, net, exact in [("xor", xor_net(), -1.0), ("copy chain", copy_chain_net(), 1.0)]:
        errs = [
            abs(estimate_profile(forward_sample(net, 100_000, seed=s), X, Y, Z).interaction - exact)
            for s in range(20)
        ]
        passed = sum(e <= 0.02 for e in errs)
        ok &= passed == 20
        details.append(f"{name} {passed}/20 (max err {max(errs):.4f})")
    record("C8 plug-in convergence", ok, ", ".join(details))


def test_c9_cli_determinism(tmp_path):
    noisy = tmp_path / "noisy.json"
    xor = tmp_path / "xor.json"
    save_bayesnet(noisy_xor_triangle_net(), noisy)
    save_bayesnet(xor_net(), xor)
    samples = tmp_path / "s.csv"
    base = [sys.executable, "-m", "intinfo"]
    subprocess.run(base + ["simulate", "--net", str(noisy), "--n", "20000", "--seed", "7", "--out", str(samples)], check=True)
    commands = {
        "analyze": ["analyze", "--net", str(xor)],
        "classify": ["classify", "--net", str(noisy), "--weak", "X,Z", "--root", "X"],
        "classify samples": ["classify", "--samples", str(samples), "--cards", "2,2,2", "--weak", "X,Z"],
        "simulate": ["simulate", "--net", str(noisy), "--n", "1000", "--seed", "7"],
        "classify-p2": ["classify-p2", "--samples", str(samples), "--middle", "Y", "--cards", "2,2,2"],
        "sweep": ["sweep", "--trials", "100", "--seed", "1"],
    }
    differing = []
    for name, argv in commands.items():
        a = subprocess.run(base + argv, capture_output=True, check=True).stdout
        b = subprocess.run(base + argv, capture_output=True, check=True).stdout
        if a != b or not a:
            differing.append(name)
    record(
        "C9 CLI determinism",
        not differing,
        f"{len(commands) - len(differing)}/{len(commands)} commands byte-identical" + (f"; differ: {differing}" if differing else ""),
    )
