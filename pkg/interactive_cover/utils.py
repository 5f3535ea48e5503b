import hashlib
import os
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence


if hasattr(int, 'bit_count'):
    def popcount(mask: int) -> int:
        return mask.bit_count()
else:  # pragma: no cover
    def popcount(mask: int) -> int:
        return bin(mask).count('1')


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order"""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def full_mask(size: int) -> int:
    return (1 << size) - 1


def as_fraction(value: Any) -> Fraction:
    """
    Convert a cost given as int, Fraction, ``"num/den"`` string or
    ``[num, den]`` pair into an exact Fraction. Floats are rejected:
    bound audits must stay exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError('cost must be rational, not %r' % (value,))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, Sequence) and len(value) == 2:
        numerator, denominator = value
        if isinstance(numerator, int) and isinstance(denominator, int):
            return Fraction(numerator, denominator)
    raise TypeError('can not interpret %r as a rational cost' % (value,))


def fraction_to_pair(value: Fraction) -> Sequence[int]:
    return [value.numerator, value.denominator]


def ratio_greater(gain_a: int, cost_a: Fraction,
                  gain_b: int, cost_b: Fraction) -> bool:
    """gain_a / cost_a > gain_b / cost_b, compared by cross-multiplication"""
    return gain_a * cost_b > gain_b * cost_a


def derive_seed(seed: int, *parts: Any) -> int:
    """
    Derive a child seed from a parent seed and a label. Stable across
    interpreter runs, unlike hash() on strings.
    """
    key = ':'.join([str(seed)] + [str(part) for part in parts])
    digest = hashlib.sha256(key.encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big')


def get_int_env(name: str, default: int,
                environ: Optional[dict] = None) -> int:
    environ = os.environ if environ is None else environ
    value = environ.get(name)
    if value is None or value.strip() == '':
        return default
    try:
        return int(value)
    except ValueError:
        return default
