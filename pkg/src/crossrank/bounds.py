"""Integer stable-rank bound calculator.

Closed-form consequences of the index-finite inclusion machinery, in exact
integer arithmetic:

* crossed product by a group with quasi-basis size ``n``:
  ``ltsr(B) <= ltsr(A) + n - 1``;
* cyclic group actions (through the integer-group estimate):
  ``ltsr <= ltsr(A) + 1``;
* matrix amplification: ``ltsr(M_m(A)) = ceil((ltsr(A) - 1)/m) + 1``;
* reverse estimate through the basic construction:
  ``ltsr(A) <= n * ltsr(B) + n^2 - n + 1``.

For the disk algebra ``ltsr = 2``, so the cyclic bound gives 3, while the
elimination certificates sharpen the crossed-product value to exactly 2.
"""
from __future__ import annotations

from dataclasses import dataclass

DISK_ALGEBRA_LTSR = 2


@dataclass(frozen=True)
class BoundsReport:
    """Named bound values; every output equals its formula exactly."""

    ltsr_a: int
    group_order: int | None = None
    matrix_size: int | None = None
    ltsr_b: int | None = None
    crossed_product_bound: int | None = None
    cyclic_bound: int | None = None
    matrix_formula: int | None = None
    reverse_bound: int | None = None


def _ceil_div(num: int, den: int) -> int:
    return -(-num // den)


def stable_rank_bounds(ltsr_a: int, group_order: int | None = None,
                       matrix_size: int | None = None,
                       ltsr_b: int | None = None) -> BoundsReport:
    if ltsr_a < 1:
        raise ValueError("stable rank is a positive integer")
    if group_order is not None and group_order < 1:
        raise ValueError("group order must be positive")
    if matrix_size is not None and matrix_size < 1:
        raise ValueError("matrix size must be positive")
    if ltsr_b is not None and ltsr_b < 1:
        raise ValueError("stable rank is a positive integer")

    crossed = ltsr_a + group_order - 1 if group_order is not None else None
    matrix = _ceil_div(ltsr_a - 1, matrix_size) + 1 if matrix_size is not None else None
    reverse = None
    if ltsr_b is not None and group_order is not None:
        reverse = group_order * ltsr_b + group_order * group_order - group_order + 1
    return BoundsReport(
        ltsr_a=ltsr_a, group_order=group_order, matrix_size=matrix_size,
        ltsr_b=ltsr_b, crossed_product_bound=crossed, cyclic_bound=ltsr_a + 1,
        matrix_formula=matrix, reverse_bound=reverse)
