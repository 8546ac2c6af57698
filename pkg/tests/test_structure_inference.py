from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from intinfo.causal_strength import strength_report
from intinfo.dist_core import StructureError, joint_from_bayesnet
from intinfo.harness import random_triangle_net, xor_net
from intinfo.info_measures import info_profile
from intinfo.structure_inference import (
    P2Class,
    TriangleRoles,
    classify_p2,
    classify_triangle,
    classify_triangle_with_root,
    dag_from_roles,
    roles_from_dag,
    triangle_dags,
    check_weak_arrow,
    weak_edge_from_strengths,
)

X, Y, Z = 0, 1, 2


def test_roles_examples():
    assert roles_from_dag([(X, Y), (X, Z), (Z, Y)]) == TriangleRoles(root=X, bridge=Z, sink=Y)
    assert roles_from_dag([(X, Y), (X, Z), (Y, Z)]) == TriangleRoles(root=X, bridge=Y, sink=Z)


def test_roles_over_all_orientations():
    # enumerate every orientation of the three skeleton edges and keep the acyclic ones
    from itertools import product

    acyclic = []
    for flips in product([False, True], repeat=3):
        dag = [(b, a) if f else (a, b) for f, (a, b) in zip(flips, [(X, Y), (Y, Z), (X, Z)])]
        try:
            acyclic.append(roles_from_dag(dag))
        except StructureError:
            continue
    assert len(acyclic) == 6 and len(set(acyclic)) == 6
    for role in ("root", "bridge", "sink"):
        assert Counter(getattr(r, role) for r in acyclic) == {X: 2, Y: 2, Z: 2}
    assert {dag_from_roles(r.root, r.bridge, r.sink) for r in acyclic} == set(triangle_dags([X, Y, Z]))


def test_roles_reject_cycle_and_non_triangle():
    with pytest.raises(StructureError):
        roles_from_dag([(X, Y), (Y, Z), (Z, X)])
    with pytest.raises(StructureError):
        roles_from_dag([(X, Y), (Y, Z)])


def test_p2_examples(xor_joint, copy_joint, independent_joint):
    assert classify_p2(info_profile(xor_joint, X, Y, Z)) is P2Class.V_STRUCTURE
    assert classify_p2(info_profile(copy_joint, X, Y, Z)) is P2Class.CHAIN_OR_FORK
    assert classify_p2(info_profile(independent_joint, X, Y, Z)) is P2Class.INDETERMINATE
    assert classify_p2(info_profile(xor_joint, X, Y, Z), epsilon=2.0) is P2Class.INDETERMINATE


def _noisy_profile(net):
    return info_profile(joint_from_bayesnet(net), X, Y, Z)


def test_classify_noisy_xor(noisy_xor):
    profile = _noisy_profile(noisy_xor)
    # interaction from the enumeration oracle
    assert profile.interaction == pytest.approx(-0.7077522143649362, abs=1e-12)
    v = classify_triangle(profile, (X, Z))
    assert v.condition_met and v.sink == Y
    assert set(v.candidates) == {
        dag_from_roles(X, Z, Y),
        dag_from_roles(Z, X, Y),
    }
    with_strengths = classify_triangle(profile, (Z, X), strength_report(noisy_xor))
    assert with_strengths.condition_met
    assert with_strengths.min_strength == pytest.approx(0.007225546012191859, abs=1e-12)


def test_classify_declines_positive_interaction(copy_joint):
    v = classify_triangle(info_profile(copy_joint, X, Y, Z), (X, Z))
    assert not v.condition_met and v.candidates == () and v.sink is None
    assert v.interaction == pytest.approx(1.0)


def test_classify_declines_when_no_weak_arrow():
    # search the random sweep for a net with negative interaction but no arrow below |interaction|
    for seed in range(2000):
        net = random_triangle_net(seed)
        check = check_weak_arrow(net)
        if check.negative and not check.weak_condition:
            break
    else:
        pytest.fail("no witness found")
    profile = _noisy_profile(net)
    rep = strength_report(net)
    assert rep.min_strength >= abs(profile.interaction)
    roles = check.roles
    v = classify_triangle(profile, (roles.root, roles.bridge), rep)
    assert not v.condition_met and v.candidates == ()
    # without strengths the same inputs would pass
    assert classify_triangle(profile, (roles.root, roles.bridge)).condition_met


def test_classify_bad_weak_edge(noisy_xor):
    with pytest.raises(ValueError):
        classify_triangle(_noisy_profile(noisy_xor), (X, X))


def test_classify_with_root(noisy_xor):
    profile = _noisy_profile(noisy_xor)
    v = classify_triangle_with_root(profile, (X, Z), root=X)
    assert v.candidates == (tuple(sorted([(X, Z), (Z, Y), (X, Y)])),)
    v = classify_triangle_with_root(profile, (X, Z), root=Z)
    assert v.candidates == (tuple(sorted([(Z, X), (X, Y), (Z, Y)])),)
    with pytest.raises(ValueError):
        classify_triangle_with_root(profile, (X, Z), root=Y)


def test_classify_with_root_declined_keeps_root(copy_joint):
    v = classify_triangle_with_root(info_profile(copy_joint, X, Y, Z), (X, Z), root=X)
    assert not v.condition_met and v.root == X and v.candidates == ()


def test_verdict_json(noisy_xor):
    d = classify_triangle_with_root(_noisy_profile(noisy_xor), (X, Z), root=X).to_dict()
    assert d["sink"] == "Y" and d["root"] == "X" and d["weak_edge"] == ["X", "Z"]
    assert d["candidates"] == [[["X", "Y"], ["X", "Z"], ["Z", "Y"]]]


@given(st.integers(0, 2**32 - 1), st.sampled_from([(X, Y), (X, Z), (Y, Z)]))
@settings(max_examples=100, deadline=None)
def test_root_verdict_is_a_candidate(seed, weak):
    profile = _noisy_profile(random_triangle_net(seed))
    both = classify_triangle(profile, weak)
    for root in weak:
        one = classify_triangle_with_root(profile, weak, root)
        assert one.condition_met == both.condition_met
        if one.condition_met:
            assert one.candidates[0] in both.candidates
    for dag in both.candidates:
        roles = roles_from_dag(dag)
        assert roles.sink == both.sink
        assert {roles.root, roles.bridge} == set(weak)
        assert both.sink not in weak


def test_weak_edge_from_strengths(noisy_xor):
    from intinfo.harness import copy_chain_net

    assert weak_edge_from_strengths(strength_report(noisy_xor)) == (X, Z)
    assert weak_edge_from_strengths(strength_report(copy_chain_net())) is None


def test_verify_noisy_xor(noisy_xor):
    c = check_weak_arrow(noisy_xor)
    assert c.premises and c.argmin_is_root_bridge and c.others_above and c.claim_holds
    assert c.roles == TriangleRoles(X, Z, Y)


def test_verify_vacuous_when_interaction_positive():
    for seed in range(100):
        c = check_weak_arrow(random_triangle_net(seed))
        if c.interaction > 0:
            break
    assert not c.premises and c.claim_holds and c.argmin_is_root_bridge is None


def test_verify_rejects_non_triangle():
    with pytest.raises(ValueError):
        check_weak_arrow(xor_net())


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=300, deadline=None)
def test_weak_arrow_property(seed):
    c = check_weak_arrow(random_triangle_net(seed))
    assert c.claim_holds
    if c.premises:
        assert c.strength_rs >= abs(c.interaction) - 1e-9
        assert c.strength_bs >= abs(c.interaction) - 1e-9
