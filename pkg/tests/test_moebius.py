"""Disk symmetries: the SL(2,R) picture, finite subgroups, conjugation into
rotations, and the reduction to rotation actions."""
from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from crossrank.algebra import GroupSpec
from crossrank.elimination import bezout_certificate, verify_bezout
from crossrank.moebius import (FiniteCyclicSubgroup,
                               SL2RMatrix, SU11Element, average_gram,
                               conjugate_into_rotations, conjugation_residual,
                               from_sl2r, make_finite_subgroup, mobius_apply,
                               nearest_rotation, rotation_action_of, to_sl2r)
from crossrank.randomness import random_crossed, random_su11, seeded_generator


def test_membership_validation():
    SU11Element(1.0, 0.0)
    with pytest.raises(ValueError):
        SU11Element(1.0, 1.0)


def test_identity_fixes_disk():
    g = SU11Element.identity()
    for z in (0.3, -0.2 + 0.4j, 0.9j):
        assert abs(mobius_apply(g, z) - z) < 1e-15


def test_diagonal_rotates_by_doubled_angle():
    theta = 0.7
    g = SU11Element.u1(theta)
    for z in (0.5, 0.1 - 0.6j):
        assert abs(mobius_apply(g, z) - cmath.exp(2j * theta) * z) < 1e-12


def test_circle_maps_to_circle():
    rng = seeded_generator(1)
    for _ in range(5):
        g = random_su11(rng)
        for k in range(64):
            z = cmath.exp(2j * math.pi * k / 64)
            assert abs(abs(mobius_apply(g, z)) - 1.0) < 1e-10


def test_disk_maps_into_disk():
    rng = seeded_generator(2)
    for _ in range(5):
        g = random_su11(rng)
        for k in range(32):
            z = 0.8 * cmath.exp(2j * math.pi * k / 32)
            assert abs(mobius_apply(g, z)) < 1.0


def test_group_operations():
    rng = seeded_generator(3)
    g, h = random_su11(rng), random_su11(rng)
    z = 0.3 + 0.2j
    composed = mobius_apply(g * h, z)
    assert abs(composed - mobius_apply(g, mobius_apply(h, z))) < 1e-10
    assert (g * g.inverse()).distance(SU11Element.identity()) < 1e-12
    assert (g.power(3)).distance(g * g * g) < 1e-10


def test_rep_identity():
    rep = to_sl2r(SU11Element.identity())
    assert np.allclose(rep.as_array(), np.eye(2))


def test_rep_of_rotation_lands_in_so2():
    theta = 0.4
    rep = to_sl2r(SU11Element.u1(theta)).as_array()
    expected = np.array([[math.cos(theta), math.sin(theta)],
                         [-math.sin(theta), math.cos(theta)]])
    assert np.max(np.abs(rep - expected)) < 1e-12


def test_rep_is_multiplicative_and_unimodular():
    rng = seeded_generator(4)
    for _ in range(50):
        g, h = random_su11(rng), random_su11(rng)
        rg, rh = to_sl2r(g).as_array(), to_sl2r(h).as_array()
        rgh = to_sl2r(g * h).as_array()
        assert np.max(np.abs(rgh - rg @ rh)) < 1e-10
        assert abs(np.linalg.det(rg) - 1.0) < 1e-10


def test_rep_round_trip():
    rng = seeded_generator(5)
    for _ in range(20):
        g = random_su11(rng)
        back = from_sl2r(to_sl2r(g))
        assert back.distance(g) < 1e-10


def test_sl2r_validation():
    with pytest.raises(ValueError):
        SL2RMatrix(1.0, 0.0, 0.0, 2.0)


def test_make_subgroup_requires_coprime():
    h = SU11Element.identity()
    with pytest.raises(ValueError):
        make_finite_subgroup(4, h, 2)


def test_subgroup_power_closes():
    rng = seeded_generator(6)
    for order in (2, 3, 4, 6):
        K = make_finite_subgroup(order, random_su11(rng))
        power = K.generator.power(order)
        ident = SU11Element.identity()
        assert min(power.distance(ident),
                   power.distance(SU11Element(-1.0, 0.0))) < 1e-8
        assert K.sign in (-1, 1)


def test_subgroup_elements_distinct_projectively():
    K = make_finite_subgroup(6, random_su11(seeded_generator(7)), 5)
    for i in range(6):
        for j in range(i + 1, 6):
            assert K.elements[i].projective_distance(K.elements[j]) > 1e-6


def test_gram_of_rotations_is_identity():
    K = FiniteCyclicSubgroup.build(SU11Element.u1(math.pi / 3), 3)
    assert np.max(np.abs(average_gram(K) - np.eye(2))) < 1e-12


def test_gram_fixed_point_and_positivity():
    rng = seeded_generator(8)
    K = make_finite_subgroup(3, random_su11(rng))
    gram = average_gram(K)
    assert np.allclose(gram, gram.T, atol=1e-12)
    assert np.all(np.linalg.eigvalsh(gram) > 0)
    for g in K.elements:
        rep = to_sl2r(g).as_array()
        assert np.max(np.abs(rep.T @ gram @ rep - gram)) < 1e-10


def test_gram_two_term_hand_sum():
    # order-2 subgroup: the generator has trace zero (conjugation preserves
    # the trace of diag(i, -i)) and the average is (I + pi(k)^T pi(k)) / 2
    K = make_finite_subgroup(2, random_su11(seeded_generator(9)))
    assert abs(K.generator.a + K.generator.a.conjugate()) < 1e-8
    rep = to_sl2r(K.generator).as_array()
    hand = (np.eye(2) + rep.T @ rep) / 2.0
    assert np.max(np.abs(average_gram(K) - hand)) < 1e-12


def test_conjugator_trivial_for_rotations():
    K = FiniteCyclicSubgroup.build(SU11Element.u1(math.pi / 4), 4)
    result = conjugate_into_rotations(K)
    assert result.residual < 1e-12
    ident = SU11Element.identity()
    assert min(result.h.distance(ident),
               result.h.distance(SU11Element(-1.0, 0.0))) < 1e-10


def test_conjugator_random_subgroups():
    rng = seeded_generator(10)
    for order in (2, 3, 4, 5, 8):
        K = make_finite_subgroup(order, random_su11(rng))
        result = conjugate_into_rotations(K)
        assert result.residual < 1e-8
        # independent recomputation agrees
        fresh, _ = conjugation_residual(K, result.h)
        assert abs(fresh - result.residual) < 1e-12


def test_conjugator_angles_are_root_pattern():
    K = make_finite_subgroup(5, random_su11(seeded_generator(11)))
    result = conjugate_into_rotations(K)
    base = 2.0 * math.pi / 5
    seen = sorted(round(a / base) % 5 for a in result.rotation_angles)
    for angle in result.rotation_angles:
        nearest = round(angle / base) * base
        assert abs(angle - nearest) < 1e-8
    assert seen == [0, 1, 2, 3, 4]


def test_nearest_rotation_projects():
    rot, phi = nearest_rotation(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert abs(phi - math.pi / 2) < 1e-12
    assert np.max(np.abs(rot - np.array([[0.0, -1.0], [1.0, 0.0]]))) < 1e-12


def test_rotation_action_of_rotations_is_identity_conjugator():
    K = FiniteCyclicSubgroup.build(SU11Element.u1(math.pi / 3), 3)
    action = rotation_action_of(K)
    assert action.spec.n == 3
    assert action.intertwining_residual < 1e-9
    ident = SU11Element.identity()
    assert min(action.conjugator.distance(ident),
               action.conjugator.distance(SU11Element(-1.0, 0.0))) < 1e-10


def test_rotation_action_order_two():
    K = make_finite_subgroup(2, random_su11(seeded_generator(12)))
    action = rotation_action_of(K)
    assert action.spec == GroupSpec(2, 1)
    assert abs(action.spec.omega + 1.0) < 1e-12
    assert action.intertwining_residual < 1e-9


def test_rotation_action_matches_selector():
    K = make_finite_subgroup(5, random_su11(seeded_generator(13)), 2)
    action = rotation_action_of(K)
    assert action.spec.n == 5
    assert math.gcd(action.spec.m, 5) == 1
    assert action.intertwining_residual < 1e-9


def test_full_pipeline_to_certificate():
    rng = seeded_generator(14)
    for order in (2, 3, 4):
        K = make_finite_subgroup(order, random_su11(rng))
        action = rotation_action_of(K)
        x = random_crossed(rng, action.spec, 3)
        y = random_crossed(rng, action.spec, 3)
        cert = bezout_certificate(x, y, 0.1, rng)
        assert verify_bezout(cert).ok
