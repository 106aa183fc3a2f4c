"""Random sample points for identity testing over generic letters.

Identities between rational functions of the letters are tested by
exact evaluation at random integer points drawn from a 32-bit box; a
false identity survives a random point with negligible probability.
"""

import random
from fractions import Fraction

from .mould import Alphabet

BOX = 2 ** 31
TRIALS = 8
RETRIES = 100


def rng_for(seed):
    return random.Random(seed)


def random_scalar(rng, box=BOX, nonzero=True):
    while True:
        x = rng.randint(-box, box - 1)
        if x or not nonzero:
            return Fraction(x)


def random_multiplier(rng, box=BOX):
    # away from 0 and the roots of unity +-1
    while True:
        q = rng.randint(-box, box - 1)
        if q not in (-1, 0, 1):
            return Fraction(q)


def basis_letters(size):
    """The unit vectors e_1, ..., e_size of Z^size."""
    return tuple(tuple(1 if j == i else 0 for j in range(size)) for i in range(size))


def generic_alphabet(size, rng, box=BOX):
    """Basis letters with random spectrum and random multipliers."""
    return Alphabet(
        basis_letters(size),
        spectrum=[random_scalar(rng, box) for _ in range(size)],
        multipliers=[random_multiplier(rng, box) for _ in range(size)],
    )
