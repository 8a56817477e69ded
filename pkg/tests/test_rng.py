import numpy as np

from ufdecoder.rng import _splitmix64, next_double, next_u64, stream


def test_splitmix64_reference_vector():
    x = np.uint64(1234567)
    out = []
    for _ in range(3):
        x, z = _splitmix64(x)
        out.append(int(z))
    assert out == [6457827717110365317, 3203168211198807973, 9817491932198370423]


def test_xoshiro256starstar_reference_vector():
    s = np.array([1, 2, 3, 4], dtype=np.uint64)
    assert [int(next_u64(s)) for _ in range(4)] == [11520, 0, 1509978240, 1215971899390074240]


def test_streams_are_keyed_by_seed_and_trial():
    a = [next_double(stream(7, 3)) for _ in range(2)]
    assert a[0] == a[1]
    firsts = {next_double(stream(seed, t)) for seed in range(4) for t in range(50)}
    assert len(firsts) == 200


def test_doubles_are_uniform_in_unit_interval():
    s = stream(1, 0)
    x = np.array([next_double(s) for _ in range(20000)])
    assert ((x >= 0) & (x < 1)).all()
    assert abs(x.mean() - 0.5) < 4 * np.sqrt(1 / 12 / len(x))
