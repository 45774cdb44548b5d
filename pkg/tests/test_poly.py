import random
from fractions import Fraction

import pytest

from birsphere.errors import NotRealPolynomial
from birsphere.poly import (
    ONE_MINUS_Z2,
    Poly,
    RatFn,
    RealAlgebraic,
    factor_rational_poly,
    isolate_real_roots_poly,
    poly_gcd,
    real_roots_in_tower_poly,
    square_class_part,
    square_free_part,
    sturm_count,
)
from birsphere.scalars import CoeffScalar, TowerReal

Z = Poly.z()
I = CoeffScalar.i()


def test_conjugation_examples():
    assert (Z + Poly.const(I)).conj() == Z - Poly.const(I)
    assert (Z * Z - 2).conj() == Z * Z - 2
    assert (Z * Z).scale(CoeffScalar(1, 1)).conj() == (Z * Z).scale(CoeffScalar(1, -1))


def test_reflect_examples():
    assert (Z * Z + Z).reflect_z() == Z * Z - Z
    assert ONE_MINUS_Z2.reflect_z() == ONE_MINUS_Z2
    assert Z.scale(I).reflect_z() == Z.scale(-I)


def test_involutions_commute(rng):
    from conftest import random_poly

    for _ in range(20):
        p = random_poly(rng, rng.randint(0, 5))
        assert p.conj().conj() == p
        assert p.reflect_z().reflect_z() == p
        assert p.conj().reflect_z() == p.reflect_z().conj()


def test_degree_marker():
    assert Poly().degree == -1
    assert Poly.const(3).degree == 0


def test_divmod_and_gcd():
    a = (Z * Z + 1) * (Z - 2)
    b = (Z * Z + 1) * (Z + 5)
    assert poly_gcd(a, b) == Z * Z + 1
    q, r = a.divmod(Z * Z + 1)
    assert q == Z - 2 and not r


def test_sturm_examples():
    assert sturm_count(2 * Z * Z - 1, Fraction(-1), Fraction(1)) == 2
    assert sturm_count(Z * Z + 3) == 0
    assert sturm_count(Z - Fraction(1, 2), Fraction(0), Fraction(1)) == 1
    # open interval: endpoint roots are excluded
    assert sturm_count(Z * (Z - 1), Fraction(0), Fraction(1)) == 0
    assert sturm_count(Z * (Z - 1), Fraction(-1), Fraction(2)) == 2


def test_sturm_rejects_imaginary():
    with pytest.raises(NotRealPolynomial):
        sturm_count(Z + Poly.const(I))


def _horner(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def test_sturm_against_scanning_oracle():
    """Every isolated root is witnessed by a sign change at bracketing
    rational samples, and a scan between the brackets finds no other."""
    rng = random.Random(99)
    for _ in range(100):
        deg = rng.randint(1, 8)
        coeffs = [rng.randint(-6, 6) for _ in range(deg + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = 1
        p = Poly.from_rational_coeffs(coeffs)
        g = poly_gcd(p, p.derivative())
        reduced = p.exact_div(g) if g.degree > 0 else p
        rcoeffs = reduced.rational_coeffs()
        lo, hi = Fraction(-8), Fraction(8)  # beyond the Cauchy bound for these polys
        intervals = isolate_real_roots_poly(p)
        assert sturm_count(p, lo, hi) == len(intervals)
        for a, b in intervals:
            assert _horner(rcoeffs, a) * _horner(rcoeffs, b) < 0, (coeffs, a, b)
        # no sign change away from the isolating intervals
        samples = sorted(
            [lo, hi]
            + [x for pair in intervals for x in pair]
            + [lo + (hi - lo) * Fraction(k, 64) for k in range(65)]
        )
        inside = lambda x: any(a <= x <= b for a, b in intervals)
        prev = None
        for x in samples:
            if inside(x):
                prev = None
                continue
            val = _horner(rcoeffs, x)
            s = (val > 0) - (val < 0)
            assert s != 0 or inside(x)
            if prev is not None:
                assert s == prev, (coeffs, x)
            prev = s


def test_square_free_part_examples():
    assert square_free_part((Z * Z + 1) ** 2 * (Z * Z + 4)) == (Z * Z + 1) * (Z * Z + 4)
    assert square_free_part(Z**3) == Z
    assert square_free_part(-2 * Z * Z + 2) == -(Z * Z - 1)


def test_square_class_part():
    assert square_class_part((Z * Z - 1) ** 2) == Poly.const(1)
    assert square_class_part((Z * Z + 1) ** 2 * (Z * Z + 4)) == Z * Z + 4
    assert square_class_part(-(Z * Z - 1) ** 2) == Poly.const(-1)


def test_factor_rational():
    const, factors = factor_rational_poly(Z**4 + 5 * Z * Z + 4)
    polys = sorted(str(f) for f, _ in factors)
    assert const == 1 and polys == ["z^2+1", "z^2+4"]


def test_root_isolation_and_real_algebraic():
    roots = RealAlgebraic.roots_of_rational_poly(2 * Z * Z - 1)
    assert len(roots) == 2
    assert roots[0] == -roots[1]
    assert roots[1] > Fraction(0) and roots[1] < Fraction(1)
    assert roots[1].to_tower() == TowerReal.sqrt_rational(2) / 2
    r = RealAlgebraic.from_rational(Fraction(3, 7))
    assert r.is_rational() and r.as_rational() == Fraction(3, 7)


def test_tower_coefficient_roots():
    r2 = CoeffScalar(TowerReal.sqrt_rational(2))
    p = Z * Z - Poly.const(r2)
    roots = real_roots_in_tower_poly(p)
    assert len(roots) == 2
    assert str(roots[0].minpoly) == "z^4-2"
    for root in roots:
        assert sturm_count(p, root.lo, root.hi) == 1


def test_isolation_intervals_disjoint():
    p = (Z - 1) * (Z - 2) * (Z + 3) * (2 * Z - 1)
    ivs = isolate_real_roots_poly(p)
    assert len(ivs) == 4
    for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
        assert b1 <= a2


def test_ratfn_normalisation():
    f = RatFn(Z * Z - 1, Z * Z + Z)
    assert f.num == Z - 1 and f.den == Z
    g = RatFn(Z, Poly.const(2))
    assert g.den == Poly.const(1)  # monic denominator
    assert f + -f == RatFn(Poly())
    assert f * f.inverse() == RatFn(Poly.const(1))
