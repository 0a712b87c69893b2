"""RNG correctness: published vectors, draw conventions, stream derivation."""

import math

import pytest

from evo2048.rng import MASK64, Xoshiro256StarStar, derive, mix64, splitmix64

# Published splitmix64 outputs for seed 0.
SPLITMIX_SEED0 = [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]

# First xoshiro256** outputs from raw state (1, 2, 3, 4), derived by hand
# from the recurrence (s1*5 rotl 7 *9; the third needs two state updates).
XOSHIRO_STATE_1234 = [11520, 0, 1509978240]


def test_splitmix64_published_vector():
    state = 0
    outs = []
    for _ in range(3):
        state, value = splitmix64(state)
        outs.append(value)
    assert outs == SPLITMIX_SEED0


def test_xoshiro_hand_vector():
    rng = Xoshiro256StarStar.from_state(1, 2, 3, 4)
    assert [rng.next_u64() for _ in range(3)] == XOSHIRO_STATE_1234


def test_seeding_is_splitmix_expansion():
    rng = Xoshiro256StarStar(12345)
    state = 12345
    expect = []
    for _ in range(4):
        state, value = splitmix64(state)
        expect.append(value)
    assert rng.state() == tuple(expect)


def test_next_u64_range_and_determinism():
    a = Xoshiro256StarStar(987654321)
    b = Xoshiro256StarStar(987654321)
    seq_a = [a.next_u64() for _ in range(100)]
    seq_b = [b.next_u64() for _ in range(100)]
    assert seq_a == seq_b
    assert all(0 <= v <= MASK64 for v in seq_a)
    assert len(set(seq_a)) == 100


def test_random_unit_interval_and_granularity():
    rng = Xoshiro256StarStar(7)
    for _ in range(1000):
        x = rng.random()
        assert 0.0 <= x < 1.0
        # exactly the top 53 bits: x * 2**53 is integral
        assert float(int(x * 2.0**53)) == x * 2.0**53


def test_random_uses_one_u64():
    a = Xoshiro256StarStar(55)
    b = Xoshiro256StarStar(55)
    x = a.random()
    assert x == (b.next_u64() >> 11) * 2.0**-53


def test_randbelow_bounds_and_rough_uniformity():
    rng = Xoshiro256StarStar(2024)
    counts = [0] * 7
    n = 70_000
    for _ in range(n):
        k = rng.randbelow(7)
        counts[k] += 1
    assert sum(counts) == n
    # each bucket within 5 sigma of n/7
    expect = n / 7
    sigma = math.sqrt(n * (1 / 7) * (6 / 7))
    for c in counts:
        assert abs(c - expect) < 5 * sigma


def test_randbelow_rejects_nonpositive():
    rng = Xoshiro256StarStar(1)
    with pytest.raises(ValueError):
        rng.randbelow(0)


def test_gauss_moments():
    rng = Xoshiro256StarStar(99)
    n = 20_000
    xs = [rng.gauss() for _ in range(n)]
    mean = sum(xs) / n
    var = sum((x - mean) ** 2 for x in xs) / (n - 1)
    assert abs(mean) < 0.03
    assert abs(var - 1.0) < 0.05


def test_gauss_consumes_two_draws():
    a = Xoshiro256StarStar(3)
    b = Xoshiro256StarStar(3)
    a.gauss()
    b.next_u64()
    b.next_u64()
    assert a.next_u64() == b.next_u64()


def test_gauss_scaling():
    a = Xoshiro256StarStar(14)
    b = Xoshiro256StarStar(14)
    assert a.gauss(2.0, 3.0) == 2.0 + 3.0 * b.gauss()


def test_derive_path_order_matters():
    assert derive(42, 1, 2) != derive(42, 2, 1)
    assert derive(42, 1) != derive(42, 2)
    assert derive(42) == 42  # empty path is the key itself


def test_derive_frozen_values():
    # regression anchors for the stream-derivation convention; changing
    # these breaks replay of every persisted run
    assert derive(42, 1, 2) == 17330402255290839518
    assert derive(42, 2, 1) == 16329793242460435561


def test_derive_spread():
    seen = {derive(0, i, j) for i in range(30) for j in range(30)}
    assert len(seen) == 900


def test_mix64_avalanche_smoke():
    # flipping one input bit flips roughly half the output bits
    flips = bin(mix64(0x123456789ABCDEF0) ^ mix64(0x123456789ABCDEF1)).count("1")
    assert 16 <= flips <= 48


def test_copy_is_independent():
    rng = Xoshiro256StarStar(5)
    rng.next_u64()
    dup = rng.copy()
    assert dup.state() == rng.state()
    a = [rng.next_u64() for _ in range(5)]
    b = [dup.next_u64() for _ in range(5)]
    assert a == b
    rng.next_u64()
    assert dup.state() != rng.state()
