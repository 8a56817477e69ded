import math

import pytest

from ufdecoder.cluster import ackermann, inverse_ackermann


@pytest.mark.parametrize(
    "i,j,expected",
    [(0, 0, 0), (0, 5, 10), (3, 0, 0), (3, 1, 2), (1, 2, 4), (1, 3, 8), (1, 4, 16), (2, 2, 4), (2, 3, 16), (2, 4, 65536)],
)
def test_small_values(i, j, expected):
    assert ackermann(i, j) == expected


def test_row_one_is_powers_of_two():
    assert all(ackermann(1, j) == 2**j for j in range(1, 40))


def test_recursion_holds():
    for i in range(1, 3):
        for j in range(2, 5):
            assert ackermann(i, j) == ackermann(i - 1, ackermann(i, j - 1))


def test_cap_gives_infinity():
    assert ackermann(3, 4) == math.inf
    assert ackermann(1, 70) == math.inf
    assert ackermann(1, 70, cap=1 << 80) == 2**70


def test_negative_arguments_rejected():
    with pytest.raises(ValueError):
        ackermann(-1, 2)


@pytest.mark.parametrize(
    "log2n,expected",
    [(0, 0), (8, 0), (9, 1), (16, 1), (17, 2), (1000, 2), (65536, 2), (65537, 3)],
)
def test_inverse_bands(log2n, expected):
    assert inverse_ackermann(2**log2n) == expected


def test_inverse_between_powers():
    # log2 n just above 16 already needs the next band
    assert inverse_ackermann(2**16 + 1) == 2
    assert inverse_ackermann(2**16 - 1) == 1


def test_inverse_rejects_zero():
    with pytest.raises(ValueError):
        inverse_ackermann(0)
