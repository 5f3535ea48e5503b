from fractions import Fraction

import pytest

from interactive_cover.utils import (
    as_fraction, derive_seed, fraction_to_pair, full_mask, get_int_env,
    iter_bits, popcount, ratio_greater,
)


def test_popcount():
    assert popcount(0) == 0
    assert popcount(0b1011) == 3
    assert popcount(full_mask(70)) == 70


def test_iter_bits():
    assert list(iter_bits(0)) == []
    assert list(iter_bits(0b100101)) == [0, 2, 5]


@pytest.mark.parametrize('value,expected', [
    (3, Fraction(3)),
    (Fraction(1, 3), Fraction(1, 3)),
    ('5/2', Fraction(5, 2)),
    ([7, 4], Fraction(7, 4)),
])
def test_as_fraction(value, expected):
    assert as_fraction(value) == expected


@pytest.mark.parametrize('value', [0.5, True, None, [1, 2, 3], ['1', 2]])
def test_as_fraction_rejects(value):
    with pytest.raises(TypeError):
        as_fraction(value)


def test_fraction_to_pair():
    assert fraction_to_pair(Fraction(6, 4)) == [3, 2]


def test_ratio_greater():
    assert ratio_greater(3, Fraction(1), 5, Fraction(2))
    assert not ratio_greater(1, Fraction(2), 1, Fraction(2))
    assert not ratio_greater(1, Fraction(3), 1, Fraction(2))


def test_derive_seed_is_stable():
    assert derive_seed(1, 'trial', 3) == derive_seed(1, 'trial', 3)
    assert derive_seed(1, 'trial', 3) != derive_seed(1, 'trial', 4)
    assert derive_seed(1, 'trial', 3) != derive_seed(2, 'trial', 3)
    assert 0 <= derive_seed(0) < 1 << 64


def test_get_int_env():
    assert get_int_env('X', 5, {}) == 5
    assert get_int_env('X', 5, {'X': '7'}) == 7
    assert get_int_env('X', 5, {'X': ' '}) == 5
    assert get_int_env('X', 5, {'X': 'seven'}) == 5
