import random
from fractions import Fraction

import pytest

from birsphere.poly import Poly
from birsphere.projmat import ProjMat
from birsphere.scalars import CoeffScalar
from birsphere.sphere import FiberPattern, in_reality_group


@pytest.fixture
def rng():
    return random.Random(20260810)


def random_scalar(rng, size=4, complex_ok=True):
    re = Fraction(rng.randint(-size, size), rng.randint(1, 3))
    im = Fraction(rng.randint(-size, size), rng.randint(1, 3)) if complex_ok else 0
    return CoeffScalar(re, im)


def random_poly(rng, degree, size=4, complex_ok=True):
    while True:
        coeffs = [random_scalar(rng, size, complex_ok) for _ in range(degree + 1)]
        p = Poly(coeffs)
        if p.degree == degree:
            return p


def random_reality_element(rng, max_degree=2) -> ProjMat:
    """A random member of the reality group, from a random pattern pair."""
    while True:
        a = random_poly(rng, rng.randint(0, max_degree))
        b = random_poly(rng, rng.randint(0, max_degree))
        pat = FiberPattern(a, b)
        det = pat.determinant()
        if not det:
            continue
        try:
            mat = pat.matrix()
        except ValueError:
            continue
        assert in_reality_group(mat)
        return mat


def random_sphere_point(rng):
    """A random rational point of the real sphere via stereographic data."""
    u = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
    v = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
    den = 1 + u * u + v * v
    return (
        CoeffScalar(1),
        CoeffScalar(2 * u / den),
        CoeffScalar(2 * v / den),
        CoeffScalar((1 - u * u - v * v) / den),
    )
