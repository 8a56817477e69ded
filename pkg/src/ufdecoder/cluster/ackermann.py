"""Ackermann's function (Tarjan's variant) and its inverse."""

from __future__ import annotations

import math

# values above this are never needed exactly: no representable n has log2 n > 2**64
DEFAULT_CAP = 1 << 64


def ackermann(i: int, j: int, cap: int = DEFAULT_CAP) -> int | float:
    """``A(i, j)`` with A(0, j) = 2j, A(i, 0) = 0, A(i, 1) = 2, A(i, j) = A(i-1, A(i, j-1)).

    Returns ``math.inf`` as soon as an intermediate value exceeds ``cap``.
    """
    if i < 0 or j < 0:
        raise ValueError("ackermann is defined on non-negative integers")
    if i == 0:
        return 2 * j if 2 * j <= cap else math.inf
    if j == 0:
        return 0
    # unroll the recursion in j: a_1 = 2, a_k = A(i-1, a_{k-1})
    a: int | float = 2
    for _ in range(j - 1):
        a = ackermann(i - 1, a, cap)
        if a == math.inf:
            return math.inf
    return a


def inverse_ackermann(n: int) -> int:
    """``min { i : A(i, 4) >= log2 n }`` for integer ``n >= 1``."""
    if n < 1:
        raise ValueError("inverse_ackermann needs n >= 1")
    i = 0
    while True:
        a = ackermann(i, 4)
        # A(i, 4) >= log2 n  <=>  n <= 2**A(i, 4)  <=>  bit_length(n - 1) <= A(i, 4)
        if a == math.inf or (n - 1).bit_length() <= a:
            return i
        i += 1
