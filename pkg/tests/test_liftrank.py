"""Left-invertible matrix lifts and tuple lifting through the expectation."""
from __future__ import annotations

import functools
import operator

import pytest

from crossrank.algebra import AlgMatrix, CrossedElement, GroupSpec
from crossrank.errors import OracleFailure, PerturbationExhausted
from crossrank.liftrank import (ElementaryOp, disk_column_oracle,
                                left_invertible_lift, lift_generating_tuple)
from crossrank.poly import Poly, roots
from crossrank.randomness import random_crossed, random_poly, seeded_generator


def test_elementary_op_inverse_exact():
    a = Poly([0.5, -1.5j])
    op = ElementaryOp(0, 2, a)
    one, zero = Poly.one(), Poly.zero()
    product = op.as_matrix(3, one, zero) * op.inverse().as_matrix(3, one, zero)
    assert (product - AlgMatrix.identity(3, one, zero)).norm_l1() == 0.0


def test_elementary_op_touches_one_row():
    a = Poly([2.0])
    op = ElementaryOp(1, 0, a)
    one, zero = Poly.one(), Poly.zero()
    m = AlgMatrix([[Poly([1]), Poly([2])], [Poly([3]), Poly([4])],
                   [Poly([5]), Poly([6])]])
    moved = op.as_matrix(3, one, zero) * m
    assert (moved.entry(0, 0) - m.entry(0, 0)).is_zero
    assert (moved.entry(2, 1) - m.entry(2, 1)).is_zero
    assert (moved.entry(1, 0) - Poly([5])).is_zero


def test_elementary_op_rejects_diagonal():
    with pytest.raises(ValueError):
        ElementaryOp(1, 1, Poly.one())


def test_oracle_unit_column_unchanged():
    col, row = disk_column_oracle([Poly.one(), Poly.monomial(1)], 0.1,
                                  seeded_generator(0))
    assert col == [Poly.one(), Poly.monomial(1)]
    assert row == [Poly.one(), Poly.zero()]


def test_oracle_splits_equal_entries():
    z = Poly.monomial(1)
    col, row = disk_column_oracle([z, z], 0.1, seeded_generator(1))
    r0 = roots(col[0])
    r1 = roots(col[1])
    assert min(abs(u - v) for u in r0 for v in r1) > 1e-6
    combo = functools.reduce(operator.add, (d * c for d, c in zip(row, col)))
    assert (combo - Poly.one()).wiener_norm() < 1e-8


def test_oracle_folds_triple():
    col0 = [Poly.monomial(1), Poly.monomial(2), Poly.monomial(3)]
    col, row = disk_column_oracle(col0, 0.1, seeded_generator(2))
    assert sum((c - o).wiener_norm() for c, o in zip(col, col0)) < 0.1
    combo = functools.reduce(operator.add, (d * c for d, c in zip(row, col)))
    assert (combo - Poly.one()).wiener_norm() < 1e-8


def test_oracle_needs_width_two():
    with pytest.raises(ValueError):
        disk_column_oracle([Poly.one()], 0.1, seeded_generator(0))


def residual_of(lift) -> float:
    one, zero = Poly.one(), Poly.zero()
    ident = AlgMatrix.identity(lift.output.cols, one, zero)
    return (lift.left_inverse * lift.output - ident).norm_l1()


def test_lift_base_case_delegates():
    rng = seeded_generator(3)
    mat = AlgMatrix([[random_poly(rng, 3)] for _ in range(2)])
    res = left_invertible_lift(mat, 0.1, disk_column_oracle, rng)
    assert res.residual < 1e-8
    assert res.distance < 0.1
    assert res.left_inverse.rows == 1 and res.left_inverse.cols == 2


def test_lift_random_3x2():
    rng = seeded_generator(4)
    for _ in range(10):
        mat = AlgMatrix([[random_poly(rng, 3, 0.5) for _ in range(2)]
                         for _ in range(3)])
        res = left_invertible_lift(mat, 0.1, disk_column_oracle, rng)
        assert res.residual < 1e-6
        assert res.distance < 0.1
        assert abs(residual_of(res) - res.residual) < 1e-9


def test_lift_random_4x3():
    rng = seeded_generator(5)
    for _ in range(10):
        mat = AlgMatrix([[random_poly(rng, 3, 0.5) for _ in range(3)]
                         for _ in range(4)])
        res = left_invertible_lift(mat, 0.1, disk_column_oracle, rng)
        assert res.residual < 1e-6
        assert res.distance < 0.1


def test_lift_already_invertible_margin():
    # column (1, z): the oracle returns it unchanged, so the zero
    # perturbation path is available
    mat = AlgMatrix([[Poly.one()], [Poly.monomial(1)]])
    res = left_invertible_lift(mat, 0.1, disk_column_oracle, seeded_generator(6))
    assert res.distance == 0.0
    assert res.residual < 1e-12


def test_lift_rejects_wide_matrices():
    mat = AlgMatrix([[Poly.one(), Poly.one()]])
    with pytest.raises(ValueError):
        left_invertible_lift(mat, 0.1, disk_column_oracle, seeded_generator(0))


def test_lift_propagates_oracle_failure_with_level():
    def broken(column, eps, rng, **kwargs):
        raise PerturbationExhausted("stub", attempts=0)

    rng = seeded_generator(7)
    mat = AlgMatrix([[random_poly(rng, 2) for _ in range(2)] for _ in range(3)])
    with pytest.raises(OracleFailure) as info:
        left_invertible_lift(mat, 0.1, broken, rng)
    assert info.value.level >= 1


def test_tuple_lift_trivial_generator():
    spec = GroupSpec(3)
    b = [CrossedElement.unit(spec)] + [CrossedElement.zero(spec)] * 3
    result = lift_generating_tuple(b, 0.1, seeded_generator(8))
    assert result.residual < 1e-6
    assert max(result.distances) < 0.1


def test_tuple_lift_random_order_two():
    rng = seeded_generator(9)
    spec = GroupSpec(2)
    for _ in range(8):
        b = [random_crossed(rng, spec, 3) for _ in range(3)]
        result = lift_generating_tuple(b, 0.1, rng)
        assert result.residual < 1e-6
        assert max(result.distances) < 0.1


def test_tuple_lift_coordinate_functions():
    spec = GroupSpec(3)
    z = Poly.monomial(1)
    b = [CrossedElement.monomial(spec, g, z) for g in range(3)]
    b.append(CrossedElement.zero(spec))
    result = lift_generating_tuple(b, 0.1, seeded_generator(10))
    assert result.residual < 1e-6
    assert max(result.distances) < 0.1


def test_tuple_lift_witness_lives_in_subalgebra():
    rng = seeded_generator(11)
    spec = GroupSpec(2)
    b = [random_crossed(rng, spec, 2) for _ in range(3)]
    result = lift_generating_tuple(b, 0.1, rng)
    for w in result.witness:
        for g in range(1, spec.n):
            assert w.component(g).is_zero
    # the witness row certifies generation by direct convolution
    combo = functools.reduce(
        operator.add, (w * y for w, y in zip(result.witness, result.outputs)))
    assert (combo - CrossedElement.unit(spec)).l1_norm() < 1e-6


def test_tuple_lift_length_contract():
    spec = GroupSpec(3)
    with pytest.raises(ValueError):
        lift_generating_tuple([CrossedElement.unit(spec)] * 3, 0.1,
                              seeded_generator(0))
