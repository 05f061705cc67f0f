import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from berkcrucial.maps import RationalMapRep  # noqa: E402
from berkcrucial.points import BerkPoint  # noqa: E402


@pytest.fixture
def square():
    """z^2 over Q_5: good reduction at S_can."""
    return RationalMapRep.from_coefficients([0, 0, 1], [1], 5)


@pytest.fixture
def p_square():
    """5 z^2: good reduction after moving to zeta(0; -1)."""
    return RationalMapRep.from_coefficients([0, 0, 5], [1], 5)


@pytest.fixture
def shifted_square():
    """z^2 + 1/5: bad reduction, minimum at zeta(0; -1/2)."""
    return RationalMapRep.from_coefficients([Fraction(1, 5), 0, 1], [1], 5)


@pytest.fixture
def square_plus_z():
    """z^2 + z over Q_3, with a parabolic fixed point at 0."""
    return RationalMapRep.from_coefficients([0, 1, 1], [1], 3)


@pytest.fixture
def zeta():
    def make(center, t, p=5):
        return BerkPoint.type_ii(center, Fraction(t), p)
    return make


@pytest.fixture
def can():
    return BerkPoint.canonical(5)
