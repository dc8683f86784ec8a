import random
from fractions import Fraction as F

import pytest

from momentkit.errors import InvalidParameter, ModeMismatch
from momentkit.scalars import (
    FloatMode,
    RationalMode,
    complex_scalar,
    default_float_bits,
    exact_fraction,
    mode_from_string,
    mode_to_string,
)


def test_exact_arithmetic_error_free():
    rng = random.Random(7)
    mode = RationalMode()
    for _ in range(200):
        a = F(rng.randint(-10**12, 10**12), rng.randint(1, 10**9))
        b = F(rng.randint(-10**12, 10**12), rng.randint(1, 10**9))
        assert (a + b) - b == a
        if b != 0:
            assert (a * b) / b == a
    assert mode.convert("22/7") == F(22, 7)


def test_rational_mode_rejects_floats():
    mode = RationalMode()
    with pytest.raises(ModeMismatch):
        mode.convert(0.5)
    with pytest.raises(ModeMismatch):
        mode.convert(True)


def test_float_round_trip_bit_exact():
    rng = random.Random(11)
    for bits in (53, 128, 517):
        mode = FloatMode(bits)
        for _ in range(50):
            v = mode.convert(F(rng.randint(-10**18, 10**18), rng.randint(1, 10**12)))
            s = mode.to_string(v)
            assert mode.from_string(s) == v
        assert mode.to_string(mode.zero()) == "0x0p+0"
        assert mode.from_string("0x0p+0") == 0


def test_float_modes_with_different_precision_are_distinct():
    assert FloatMode(128) == FloatMode(128)
    assert FloatMode(128) != FloatMode(256)
    assert RationalMode() == RationalMode()
    assert RationalMode() != FloatMode(64)
    m = FloatMode(64)
    with pytest.raises(ModeMismatch):
        m.convert(FloatMode(128).one())


def test_mode_strings():
    assert mode_to_string(mode_from_string("rational")) == "rational"
    assert mode_to_string(mode_from_string("float:192")) == "float:192"
    with pytest.raises(InvalidParameter):
        mode_from_string("decimal")
    assert default_float_bits(10) == 64 + 400


def test_rational_sqrt():
    mode = RationalMode()
    assert mode.sqrt(F(9, 4)) == F(3, 2)
    assert mode.sqrt(F(0)) == 0
    approx = mode.sqrt(F(2))
    assert abs(approx * approx - 2) < F(1, 2**100)
    with pytest.raises(InvalidParameter):
        mode.sqrt(F(-1))


def test_rational_pi_brackets():
    mode = RationalMode()
    pi = mode.pi(128)
    assert F(314159, 100000) < pi < F(314160, 100000)


def test_exact_fraction_of_mpf():
    mode = FloatMode(80)
    v = mode.convert(F(3, 8))
    assert exact_fraction(v) == F(3, 8)


def test_complex_scalar_field_ops():
    mode = RationalMode()
    z = complex_scalar(mode, F(1, 3), F(1, 2))
    w = complex_scalar(mode, 2, -1)
    assert (z * w) / w == z
    assert (z + w) - w == z
    assert z.abs2() == F(1, 9) + F(1, 4)
    assert z.conj().im == -z.im
    one = (z / z)
    assert one.re == 1 and one.im == 0
