"""Rank-2 projective matrices over the function field of the line.

Entries are polynomials in z (denominators are cleared on construction).
The canonical form divides out the entry gcd and scales the first nonzero
entry in row-major order to be monic, so projective equality is a plain
tuple comparison.  Möbius specialisation to a fiber z = z0 and finite-order
detection by iterated multiplication live here too.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import IndeterminateFiber
from .poly import Poly, RatFn, poly_gcd, _coerce_poly
from .scalars import CoeffScalar


def _rational_content(polys) -> Fraction:
    """Positive rational content across every coefficient fraction of the
    given polynomials (tower terms and imaginary parts included)."""
    from math import gcd

    num, den = 0, 1
    for p in polys:
        for c in p.coeffs:
            for part in (c.re, c.im):
                for frac in part.terms.values():
                    num = gcd(num, abs(frac.numerator))
                    den = den * frac.denominator // gcd(den, frac.denominator)
    return Fraction(num, den) if num else Fraction(1)


class Infinity:
    """Point at infinity of the projective fiber coordinate."""

    _singleton = None

    def __new__(cls):
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self):
        return "INF"


INF = Infinity()


def default_max_order() -> int:
    return int(os.environ.get("BIRSPHERE_MAX_ORDER", "24"))


def raw_mul(a, b):
    """Product of two matrices given as flat entry 4-tuples, unreduced."""
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def proportional(p, q) -> bool:
    """Projective equality of two nonzero entry 4-tuples over a domain."""
    if not any(p) or not any(q):
        return False
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    return all(bool(p[k]) == bool(q[k]) for k in range(4))


@dataclass(frozen=True)
class ProjMat:
    """Element of PGL(2, C(z)), stored in canonical polynomial form."""

    a11: Poly
    a12: Poly
    a21: Poly
    a22: Poly

    @classmethod
    def of(cls, a11, a12, a21, a22) -> ProjMat:
        entries = []
        for e in (a11, a12, a21, a22):
            if isinstance(e, RatFn):
                entries.append(e)
            else:
                entries.append(RatFn(_coerce_poly(e)))
        den = Poly.const(1)
        for e in entries:
            den = den * e.den
        polys = [e.num * den.exact_div(e.den) for e in entries]
        return cls._canonical(polys)

    @classmethod
    def _canonical(cls, polys: list[Poly]) -> ProjMat:
        nonzero = [p for p in polys if p]
        if not nonzero:
            raise ValueError("zero matrix is not projective")
        content = _rational_content(nonzero)
        if content != 1:
            inv = CoeffScalar(Fraction(1) / content)
            polys = [p.scale(inv) for p in polys]
            nonzero = [p for p in polys if p]
        g = nonzero[0]
        for p in nonzero[1:]:
            g = poly_gcd(g, p)
        if g.degree > 0:
            polys = [p.exact_div(g) if p else p for p in polys]
        lead_inv = next(p for p in polys if p).lead().inverse()
        polys = [p.scale(lead_inv) for p in polys]
        mat = cls(*polys)
        if not mat.det():
            raise ValueError("matrix has identically zero determinant")
        return mat

    @classmethod
    def identity(cls) -> ProjMat:
        one, zero = Poly.const(1), Poly()
        return cls(one, zero, zero, one)

    @classmethod
    def diag(cls, a, b) -> ProjMat:
        zero = Poly()
        return cls.of(a, zero, zero, b)

    def entries(self) -> tuple[Poly, Poly, Poly, Poly]:
        return (self.a11, self.a12, self.a21, self.a22)

    def det(self) -> Poly:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> Poly:
        return self.a11 + self.a22

    def __mul__(self, other: ProjMat) -> ProjMat:
        if not isinstance(other, ProjMat):
            return NotImplemented
        return ProjMat._canonical(
            [
                self.a11 * other.a11 + self.a12 * other.a21,
                self.a11 * other.a12 + self.a12 * other.a22,
                self.a21 * other.a11 + self.a22 * other.a21,
                self.a21 * other.a12 + self.a22 * other.a22,
            ]
        )

    def inverse(self) -> ProjMat:
        return ProjMat._canonical([self.a22, -self.a12, -self.a21, self.a11])

    def conj(self) -> ProjMat:
        return ProjMat._canonical([p.conj() for p in self.entries()])

    def reflect_z(self) -> ProjMat:
        """Entrywise substitution z -> -z."""
        return ProjMat._canonical([p.reflect_z() for p in self.entries()])

    def is_identity(self) -> bool:
        return self == ProjMat.identity()

    def order(self, max_order: int | None = None) -> int | None:
        """Least n <= max_order with self^n = 1 in PGL, else None."""
        limit = default_max_order() if max_order is None else max_order
        acc = self
        for n in range(1, limit + 1):
            if acc.is_identity():
                return n
            acc = acc * self
        return None

    def pow(self, n: int) -> ProjMat:
        if n < 0:
            return self.inverse().pow(-n)
        acc, base = ProjMat.identity(), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def act_on_fiber(self, t, z0) -> CoeffScalar | Infinity:
        """Möbius action of the specialised matrix on t in the fiber z = z0.

        t may be a scalar or INF.  Raises IndeterminateFiber when all four
        entries vanish at z0; on a rank-1 specialisation the single 0/0
        point raises BasePointHit and every other point maps to the
        constant image.
        """
        from .errors import BasePointHit

        z0 = z0 if isinstance(z0, CoeffScalar) else CoeffScalar(z0)
        a, b, c, d = (p(z0) for p in self.entries())
        if not (a or b or c or d):
            raise IndeterminateFiber(f"matrix vanishes identically at z = {z0}")
        if t is INF:
            num, den = a, c
        else:
            t = t if isinstance(t, CoeffScalar) else CoeffScalar(t)
            num, den = a * t + b, c * t + d
        if not den:
            if not num:
                raise BasePointHit(f"base point on the contracted fiber z = {z0}")
            return INF
        return num / den

    def eigen_ratio_trace_invariant(self) -> RatFn:
        """The conjugation invariant trace^2 / det as a reduced function."""
        tr = self.trace()
        return RatFn(tr * tr, self.det())

    def __repr__(self):
        return f"[[{self.a11}, {self.a12}], [{self.a21}, {self.a22}]]"
