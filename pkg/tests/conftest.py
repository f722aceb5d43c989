import random
from fractions import Fraction

import pytest

from tropcurve import TropicalPolynomial, curve_from_polynomial


@pytest.fixture
def rng():
    return random.Random(2024)


def make_line(c0=0, c1=0, c2=0):
    """Tropical line max(c0, c1 + x, c2 + y); vertex at (c0-c1, c0-c2)."""
    return curve_from_polynomial(
        TropicalPolynomial({(0, 0): Fraction(c0), (1, 0): Fraction(c1), (0, 1): Fraction(c2)})
    )
