"""The sphere w^2 = x^2+y^2+z^2 with its conic-bundle projection to (w:z).

Over C the sphere minus two imaginary conjugate points is identified with
the affine (t, z)-plane by t = x - i*y; fiber-preserving birational maps
become 2x2 projective matrices over C(z), and compatibility with the real
structure becomes the condition  tau A tau = conj(A)  with
tau = [[0, 1-z^2], [1, 0]].  This module provides that bridge: membership
tests, the normal pattern [[a, b*h], [conj b, conj a]] produced by a
constructive Hilbert-90 step, determinants and their positivity (the
birational-diffeomorphism criterion), contracted fibers and boundary-line
behaviour, maps with nontrivial action on the base interval, exact sphere
formulas, and the builtin catalogue of named maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bipoly import BiFrac, BiPoly
from .errors import (
    BasePointHit,
    InfiniteOrderBase,
    NotFiniteOrder,
    NotOnSphere,
    NotRealityMember,
    UnsupportedExtension,
)
from .poly import ONE_MINUS_Z2, Poly, RatFn, poly_gcd
from .positivity import is_real_positive
from .projmat import INF, ProjMat, default_max_order, proportional, raw_mul
from .scalars import CoeffScalar, TowerReal, scalar


def reality_twist() -> ProjMat:
    """The matrix [[0, 1-z^2], [1, 0]] expressing the real structure on the
    fiber coordinate: a fiber map is real iff  twist A twist = conj(A)."""
    return ProjMat.of(Poly(), ONE_MINUS_Z2, Poly.const(1), Poly())


# -- membership and patterns -----------------------------------------------------


def in_reality_group(mat: ProjMat) -> bool:
    """True iff the fiber map commutes with the sphere's real structure."""
    tw = reality_twist().entries()
    product = raw_mul(raw_mul(tw, mat.entries()), tw)
    return proportional(product, tuple(p.conj() for p in mat.entries()))


@dataclass(frozen=True)
class FiberPattern:
    """The normal shape (a, b) with matrix [[a, b*h], [conj b, conj a]]."""

    a: Poly
    b: Poly

    def matrix(self) -> ProjMat:
        return ProjMat.of(self.a, self.b * ONE_MINUS_Z2, self.b.conj(), self.a.conj())

    def lift(self) -> tuple[Poly, Poly, Poly, Poly]:
        """GL lift with exact entries (no projective rescaling)."""
        return (self.a, self.b * ONE_MINUS_Z2, self.b.conj(), self.a.conj())

    def determinant(self) -> Poly:
        return self.a * self.a.conj() - self.b * self.b.conj() * ONE_MINUS_Z2


def _strip_common_real_factors(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if a and b:
        g = poly_gcd(a, b)
        real_part = poly_gcd(g, g.conj())
        if real_part.degree > 0:
            a, b = a.exact_div(real_part), b.exact_div(real_part)
    # scale by a rational to reduce coefficient clutter (a real scalar keeps the shape)
    nums = [c for p in (a, b) for c in p.coeffs if c]
    scale = None
    for c in nums:
        mag = c.norm()
        if not mag.is_rational():
            scale = None
            break
        q = mag.as_rational()
        scale = q if scale is None else min(scale, q)
    if scale and scale != 1:
        import math

        # divide by sqrt of a rational square factor when it is one
        root = Fraction(math.isqrt(scale.numerator), math.isqrt(scale.denominator))
        if root * root == scale and root != 1:
            inv = CoeffScalar(Fraction(1) / root)
            a, b = a.scale(inv), b.scale(inv)
    return a, b


@lru_cache(maxsize=512)
def canonical_pattern(mat: ProjMat) -> FiberPattern:
    """Rewrite a reality-group element in the shape [[a, b*h], [~b, ~a]].

    The scalar fixing the shape is produced constructively: the quotient
    relating the matrix to its twisted conjugate is a norm-one unit u, and
    mu = 1 + u (or i when u = -1) satisfies mu/conj(mu) = u.
    """
    if not in_reality_group(mat):
        raise NotRealityMember(f"{mat} does not satisfy the reality condition")
    a11, a12, a21, a22 = mat.entries()
    h = ONE_MINUS_Z2
    if a11:
        lam = RatFn(a11 * h, a22.conj())
    else:
        lam = RatFn(a12, a21.conj())
    u = lam / RatFn(h)
    mu = RatFn(Poly.const(1)) + u
    if not mu:
        mu = RatFn(Poly.const(CoeffScalar.i()))
    a = RatFn(a11) * mu.conj()
    b = mu * RatFn(a21.conj())
    den = a.den * a.den.conj() * b.den * b.den.conj()
    a_poly = (a * RatFn(den)).as_poly()
    b_poly = (b * RatFn(den)).as_poly()
    a_poly, b_poly = _strip_common_real_factors(a_poly, b_poly)
    pattern = FiberPattern(a_poly, b_poly)
    if pattern.matrix() != mat:
        raise RuntimeError(f"pattern construction failed to verify for {mat}")
    return pattern


def _primitive_real(p: Poly) -> Poly:
    """Divide a rational-coefficient polynomial by its positive content."""
    if p.is_rational() and p:
        coeffs = p.rational_coeffs()
        from math import gcd

        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        return Poly.from_rational_coeffs([c // g for c in ints])
    return p


def fiber_determinant(mat: ProjMat) -> Poly:
    """The pattern determinant a*~a - b*~b*h, primitive; real, positive
    outside the closed interval [-1, 1]."""
    return _primitive_real(canonical_pattern(mat).determinant())


def is_orientation_preserving(mat: ProjMat) -> bool:
    """True iff the map is a birational diffeomorphism preserving
    orientation: the determinant is strictly positive on all of R."""
    return is_real_positive(fiber_determinant(mat))


def in_diffeo_group(mat: ProjMat) -> bool:
    """True iff the map is defined at every real point (either orientation)."""
    if is_orientation_preserving(mat):
        return True
    return is_orientation_preserving(mat * reality_twist())


def contracted_fibers(mat: ProjMat):
    """Real z0 in the open interval (-1, 1) whose conic is contracted to a
    point, i.e. the real roots of the determinant there."""
    from .poly import real_roots_in_tower_poly

    det = fiber_determinant(mat)
    return [r for r in real_roots_in_tower_poly(det) if r > Fraction(-1) and r < Fraction(1)]


@dataclass(frozen=True)
class BoundaryReport:
    """Behaviour on the two pairs of imaginary lines over z = 1 and z = -1."""

    north_exchanges: bool
    south_exchanges: bool

    @property
    def preserves_both(self) -> bool:
        return not (self.north_exchanges or self.south_exchanges)


def boundary_behavior(mat: ProjMat) -> BoundaryReport:
    pat = canonical_pattern(mat)
    return BoundaryReport(
        north_exchanges=not pat.a(1),
        south_exchanges=not pat.a(-1),
    )


# -- the base interval group ----------------------------------------------------------


@dataclass(frozen=True)
class BaseMobius:
    """Möbius map of the base line preserving the pair {1, -1}.

    Every such map is shift_b : z -> (z+b)/(bz+1) for b in (-1,1), possibly
    composed with the flip z -> -z applied first.
    """

    b: TowerReal
    flip: bool

    @classmethod
    def identity(cls) -> BaseMobius:
        return cls(TowerReal(), False)

    @classmethod
    def negation(cls) -> BaseMobius:
        return cls(TowerReal(), True)

    @classmethod
    def shift(cls, b) -> BaseMobius:
        b = b if isinstance(b, TowerReal) else TowerReal.from_rational(b)
        if not (TowerReal.from_rational(-1) < b and b < TowerReal.from_rational(1)):
            raise ValueError("interval parameter must lie in (-1, 1)")
        return cls(b, False)

    @classmethod
    def flipped_shift(cls, b) -> BaseMobius:
        m = cls.shift(b)
        return cls(m.b, True)

    @property
    def kind(self) -> str:
        if not self.b:
            return "neg" if self.flip else "id"
        return "flipped_shift" if self.flip else "shift"

    def is_identity(self) -> bool:
        return self.kind == "id"

    def sign(self) -> int:
        return -1 if self.flip else 1

    def compose(self, other: BaseMobius) -> BaseMobius:
        # shift_a flip^e shift_b flip^f = shift_{a (+) eps*b} flip^(e+f)
        eb = -other.b if self.flip else other.b
        num = self.b + eb
        den = 1 + self.b * eb
        return BaseMobius(num / den, self.flip != other.flip)

    def inverse(self) -> BaseMobius:
        if self.flip:
            return self  # flipped shifts are involutions
        return BaseMobius(-self.b, False)

    def order(self) -> int | None:
        if self.kind == "id":
            return 1
        if self.flip:
            return 2
        return None

    def matrix(self) -> tuple[tuple[TowerReal, TowerReal], tuple[TowerReal, TowerReal]]:
        one = TowerReal.from_rational(1)
        e = TowerReal.from_rational(self.sign())
        return ((e, self.b), (self.b * e, one))

    def apply(self, zval):
        if zval is INF:
            return CoeffScalar(self.b.inverse()) if self.b else INF
        zval = zval if isinstance(zval, CoeffScalar) else scalar(zval)
        e = CoeffScalar(Fraction(self.sign()))
        num = e * zval + CoeffScalar(self.b)
        den = CoeffScalar(self.b) * e * zval + 1
        if not den:
            return INF
        return num / den

    def num_den_polys(self) -> tuple[Poly, Poly]:
        """The pair (eps*z + b, b*eps*z + 1) defining the map."""
        e = Fraction(self.sign())
        num = Poly([CoeffScalar(self.b), CoeffScalar(e)])
        den = Poly([CoeffScalar(1), CoeffScalar(self.b) * CoeffScalar(e)])
        return num, den

    def substitute_into(self, p: Poly, degree: int | None = None) -> Poly:
        """p(m(z)) * den^deg, cleared to a polynomial."""
        num, den = self.num_den_polys()
        d = p.degree if degree is None else degree
        acc = Poly()
        for k in range(d + 1):
            c = p[k]
            if c:
                acc = acc + (num**k * den ** (d - k)).scale(c)
        return acc

    def substitute_matrix(self, mat: ProjMat) -> ProjMat:
        d = max(p.degree for p in mat.entries())
        return ProjMat._canonical([self.substitute_into(p, d) for p in mat.entries()])

    def __str__(self):
        return self.kind if not self.b else f"{self.kind}({self.b})"


# -- sphere maps ---------------------------------------------------------------------


@dataclass(frozen=True)
class SphereMap:
    """Fiber matrix plus base action: (t, z) -> (A(z) . t, m(z))."""

    fiber: ProjMat
    base: BaseMobius

    @classmethod
    def trivial_base(cls, fiber: ProjMat) -> SphereMap:
        return cls(fiber, BaseMobius.identity())

    @classmethod
    def identity(cls) -> SphereMap:
        return cls(ProjMat.identity(), BaseMobius.identity())

    def compose(self, other: SphereMap) -> SphereMap:
        fiber = other.base.substitute_matrix(self.fiber) * other.fiber
        return SphereMap(fiber, self.base.compose(other.base))

    def inverse(self) -> SphereMap:
        minv = self.base.inverse()
        return SphereMap(minv.substitute_matrix(self.fiber.inverse()), minv)

    def is_identity(self) -> bool:
        return self.base.is_identity() and self.fiber.is_identity()

    def order(self, max_order: int | None = None) -> int | None:
        limit = default_max_order() if max_order is None else max_order
        if self.base.kind == "shift":
            return None
        acc = self
        for n in range(1, limit + 1):
            if acc.is_identity():
                return n
            acc = acc.compose(self)
        return None

    def reality_check(self) -> bool:
        """Compatibility with the real structure: A(z) tau(z) equals
        tau(m(z)) conj(A)(z) projectively.  Reduces to the plain reality
        condition when the base action is trivial."""
        num, den = self.base.num_den_polys()
        twist_at_m = (Poly(), den * den - num * num, den * den, Poly())
        lhs = raw_mul(self.fiber.entries(), reality_twist().entries())
        rhs = raw_mul(twist_at_m, tuple(p.conj() for p in self.fiber.entries()))
        return proportional(lhs, rhs)

    def trivial_base_part(self) -> SphereMap:
        """The composition with a base realisation killing the base action;
        the result has trivial base and decides diffeomorphism membership."""
        if self.base.is_identity():
            return self
        realisation = base_realisation(self.base)
        out = self.compose(realisation.inverse())
        assert out.base.is_identity()
        return out

    def is_diffeo(self) -> bool:
        return in_diffeo_group(self.trivial_base_part().fiber)

    def is_orientation_preserving_diffeo(self) -> bool:
        part = self.trivial_base_part()
        if not in_diffeo_group(part.fiber):
            return False
        return is_orientation_preserving(part.fiber) == (not self.base.flip)

    def __str__(self):
        return f"SphereMap(fiber={self.fiber}, base={self.base})"


def base_realisation(base: BaseMobius) -> SphereMap:
    """A sphere map realising the given base action: the composition of the
    interval-shift automorphism with the equatorial flip.

    Needs sqrt(1 - b^2) in the tower (always for rational b).
    """
    parts = SphereMap.identity()
    if base.b:
        s = (1 - base.b * base.b).sqrt()
        fiber = ProjMat.of(
            Poly.const(CoeffScalar(s)),
            Poly(),
            Poly(),
            Poly([CoeffScalar(1), CoeffScalar(base.b)]),
        )
        parts = SphereMap(fiber, BaseMobius.shift(base.b))
    if base.flip:
        parts = parts.compose(z_flip())
    assert parts.base == base
    return parts


def reduce_to_trivial_base(g: SphereMap) -> tuple[ProjMat, str, SphereMap]:
    """Conjugate a finite-order map to one whose base action is id or neg.

    Returns (fiber, residual kind, conjugator) with
    conjugator . g . conjugator^-1 = (fiber, residual).
    """
    kind = g.base.kind
    if kind == "id" or kind == "neg":
        return g.fiber, kind, SphereMap.identity()
    if kind == "shift":
        raise InfiniteOrderBase("interval shifts with b != 0 have infinite order")
    b = g.base.b
    s = (1 - b * b).sqrt()
    for c in ((1 - s) / b, (1 + s) / b):
        if not (TowerReal.from_rational(-1) < c and c < TowerReal.from_rational(1)):
            continue
        for param in (c, -c):
            try:
                conj = base_realisation(BaseMobius.shift(param))
            except (UnsupportedExtension, ValueError):
                continue
            cand = conj.compose(g).compose(conj.inverse())
            if cand.base.kind == "neg":
                return cand.fiber, "neg", conj
    raise UnsupportedExtension("no tower conjugator reduces this base action")


# -- the coordinate bridge -----------------------------------------------------------


def on_sphere(point) -> bool:
    w, x, y, z = (scalar(c) for c in point)
    return w * w == x * x + y * y + z * z


def _normalize_point(point):
    pt = tuple(scalar(c) for c in point)
    if not any(pt):
        raise ValueError("projective point cannot be all zero")
    first = next(c for c in pt if c)
    inv = first.inverse()
    return tuple(c * inv for c in pt)


def psi_forward(point):
    """Affine-chart image ((x - i y)/w, z/w) of a sphere point; values may
    be INF.  Raises NotOnSphere off the sphere and BasePointHit at the two
    imaginary base points (w = z = 0)."""
    w, x, y, z = (scalar(c) for c in point)
    if not on_sphere((w, x, y, z)):
        raise NotOnSphere(f"{point} does not satisfy w^2 = x^2+y^2+z^2")
    i = CoeffScalar.i()
    if not w and not z:
        raise BasePointHit("the two imaginary points with w = z = 0 are blown up")
    tnum = x - i * y
    tval = tnum / w if w else INF
    if w and not tnum:
        tval = CoeffScalar(0)
    zval = z / w if w else INF
    return tval, zval


def psi_inverse(tval, zval):
    """Sphere point of an affine pair; INF coordinates allowed.  Raises
    BasePointHit at (0, 1), (0, -1) and (INF, INF)."""
    i = CoeffScalar.i()
    if tval is INF:
        u, t = CoeffScalar(0), CoeffScalar(1)
    else:
        u, t = CoeffScalar(1), scalar(tval)
    if zval is INF:
        v, z = CoeffScalar(0), CoeffScalar(1)
    else:
        v, z = CoeffScalar(1), scalar(zval)
    w = 2 * t * u * v * v
    x = t * t * v * v - z * z * u * u + u * u * v * v
    y = i * (t * t * v * v + z * z * u * u - u * u * v * v)
    zc = 2 * t * z * u * v
    if not (w or x or y or zc):
        raise BasePointHit(f"({tval}, {zval}) is a base point of the inverse chart")
    return _normalize_point((w, x, y, zc))


POLE_NORTH = (CoeffScalar(1), CoeffScalar(0), CoeffScalar(0), CoeffScalar(1))
POLE_SOUTH = (CoeffScalar(1), CoeffScalar(0), CoeffScalar(0), CoeffScalar(-1))


def _is_pole(point) -> int | None:
    pt = _normalize_point(point)
    if pt == POLE_NORTH:
        return 1
    if pt == POLE_SOUTH:
        return -1
    return None


class SphereFormula:
    """The rational self-map of the sphere induced by a SphereMap."""

    def __init__(self, mapping: SphereMap):
        self.mapping = mapping
        self._is_real = mapping.reality_check()

    def eval(self, point):
        """Exact image of a sphere point; raises BasePointHit where the map
        is undefined.  For reality-compatible maps the two poles are fixed
        or swapped according to the base action."""
        point = _normalize_point(point)
        pole = _is_pole(point)
        if pole is not None and self._is_real:
            image_z = self.mapping.base.apply(CoeffScalar(Fraction(pole)))
            return POLE_NORTH if image_z == CoeffScalar(1) else POLE_SOUTH
        tval, zval = psi_forward(point)
        if zval is INF:
            # the conic at infinity maps within itself; act by leading terms
            entries = self.mapping.fiber.entries()
            d = max(p.degree for p in entries)
            top = ProjMat._canonical([Poly.const(p[d]) if p[d] else Poly() for p in entries])
            tval = top.act_on_fiber(tval, 0)
            return psi_inverse(tval, INF)
        timg = self.mapping.fiber.act_on_fiber(tval, zval)
        zimg = self.mapping.base.apply(zval)
        return psi_inverse(timg, zimg)

    def symbolic_xyz(self) -> tuple[BiFrac, BiFrac, BiFrac]:
        """The images (X, Y, Z) as elements of C(z)(t) with
        x = (t^2 + h)/(2t), y = i (t^2 - h)/(2t)."""
        a11, a12, a21, a22 = self.mapping.fiber.entries()
        tvar = BiPoly.t()
        tnum = BiPoly.const(a11) * tvar + BiPoly.const(a12)
        tden = BiPoly.const(a21) * tvar + BiPoly.const(a22)
        tprime = BiFrac(tnum, tden)
        mnum, mden = self.mapping.base.num_den_polys()
        h_at_m = BiFrac(BiPoly.const(mden * mden - mnum * mnum), BiPoly.const(mden * mden))
        i = CoeffScalar.i()
        two = BiFrac(BiPoly.const(Poly.const(2)))
        x_img = (tprime * tprime + h_at_m) / (two * tprime)
        y_img = (tprime * tprime - h_at_m) * BiFrac(BiPoly.const(Poly.const(i))) / (two * tprime)
        z_img = BiFrac(BiPoly.const(mnum), BiPoly.const(mden))
        return x_img, y_img, z_img


def coordinate_functions() -> tuple[BiFrac, BiFrac, BiFrac]:
    """(x, y, z) as elements of the sphere's function field C(z)(t)."""
    tvar = BiPoly.t()
    h = BiPoly.const(ONE_MINUS_Z2)
    i = CoeffScalar.i()
    two = BiFrac(BiPoly.const(Poly.const(2)))
    x = BiFrac(tvar * tvar + h) / (two * BiFrac(tvar))
    y = BiFrac((tvar * tvar - h) * BiPoly.const(Poly.const(i))) / (two * BiFrac(tvar))
    z = BiFrac(BiPoly([Poly.z()]))
    return x, y, z


# -- builtins --------------------------------------------------------------------------


def y_flip() -> SphereMap:
    """(x, y, z) -> (x, -y, z); fiber part equals the reality twist."""
    return SphereMap.trivial_base(reality_twist())


def x_flip() -> SphereMap:
    """(x, y, z) -> (-x, y, z); the reflection with fixed circle x = 0."""
    return SphereMap.trivial_base(
        ProjMat.of(Poly(), -ONE_MINUS_Z2, Poly.const(1), Poly())
    )


def z_flip() -> SphereMap:
    """(x, y, z) -> (x, y, -z); identity fiber, base negation."""
    return SphereMap(ProjMat.identity(), BaseMobius.negation())


def antipodal_map() -> SphereMap:
    """(w:x:y:z) -> (-w:x:y:z); no real fixed points."""
    return SphereMap(ProjMat.diag(Poly.const(1), Poly.const(-1)), BaseMobius.negation())


_UNIT_TABLE: dict[int, tuple[Fraction | None, ...]] = {}


def unit_root(k: int, n: int) -> CoeffScalar:
    """Exact cos + i sin of 2 pi k / n for n in {1, 2, 3, 4, 6, 8, 12}."""
    half = TowerReal.from_rational(Fraction(1, 2))
    r2h = TowerReal.sqrt_rational(2) / 2
    r3h = TowerReal.sqrt_rational(3) / 2
    primitives = {
        1: CoeffScalar(1),
        2: CoeffScalar(-1),
        3: CoeffScalar(-half, r3h),
        4: CoeffScalar.i(),
        6: CoeffScalar(half, r3h),
        8: CoeffScalar(r2h, r2h),
        12: CoeffScalar(r3h, half),
    }
    if n not in primitives:
        raise UnsupportedExtension(
            f"exact rotations support orders dividing 24 with tower cosines, not {n}"
        )
    return primitives[n] ** (k % n)


def rotation(k: int, n: int) -> SphereMap:
    """The rotation by angle 2 pi k / n about the z-axis."""
    zeta = unit_root(k, n)
    return SphereMap.trivial_base(ProjMat.diag(Poly.const(1), Poly.const(zeta)))


def interval_shift(t) -> SphereMap:
    """The automorphism moving the base by b = 2t/(1+t^2), with exact
    sqrt(1-b^2) = (1-t^2)/(1+t^2); t rational in (-1, 1), t != 0."""
    t = Fraction(t)
    if not -1 < t < 1 or t == 0:
        raise ValueError("parameter must be a nonzero rational in (-1, 1)")
    b = Fraction(2 * t, 1 + t * t)
    return base_realisation(BaseMobius.shift(b))


def _special_mu(t: Fraction) -> CoeffScalar:
    t = Fraction(t)
    if t == 0:
        raise ValueError("parameter 0 degenerates the surface (mu = 1)")
    den = 1 + t * t
    return CoeffScalar(Fraction(1 - t * t, den), Fraction(2 * t, den))


def special_involution(t) -> SphereMap:
    """Involution with trivial base whose fixed curve is rational with no
    real points; the two isolated real fixed points sit at the poles."""
    mu = _special_mu(t)
    i = CoeffScalar.i()
    h = ONE_MINUS_Z2
    fiber = ProjMat.of(
        Poly.const(-2 * i * mu),
        h.scale(1 + mu),
        Poly.const(mu * (1 + mu)),
        Poly.const(2 * i * mu),
    )
    return SphereMap.trivial_base(fiber)


def flipped_special_involution(t) -> SphereMap:
    """Involution acting by z -> -z on the base; the base-flip twin of
    special_involution with twist class generated by z^2 + t^2."""
    mu = _special_mu(t)
    i = CoeffScalar.i()
    h = ONE_MINUS_Z2
    fiber = ProjMat.of(
        h.scale(i * (1 + mu)),
        h.scale(-2),
        Poly.const(-2 * mu),
        h.scale(-i * (1 + mu)),
    )
    return SphereMap(fiber, BaseMobius.negation())


def builtin_map(spec: str) -> SphereMap:
    """Resolve a builtin token: tau | upsilon | antipodal | tilde_eta |
    rot:k/n | gb:t | g1p:t | g2p:t."""
    from .errors import ParseError

    name, _, arg = spec.partition(":")
    simple = {
        "tau": y_flip,
        "upsilon": x_flip,
        "antipodal": antipodal_map,
        "tilde_eta": z_flip,
    }
    if name in simple:
        if arg:
            raise ParseError(f"builtin {name} takes no parameter")
        return simple[name]()
    if name == "rot":
        num, _, den = arg.partition("/")
        try:
            return rotation(int(num), int(den))
        except ValueError as exc:
            raise ParseError(f"rotation spec k/n expected, got {arg!r}") from exc
    try:
        param = Fraction(arg)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"rational parameter expected in {spec!r}") from exc
    if name == "gb":
        return interval_shift(param)
    if name == "g1p":
        return special_involution(param)
    if name == "g2p":
        return flipped_special_involution(param)
    raise ParseError(f"unknown builtin {spec!r}")


BUILTIN_NAMES = ("tau", "upsilon", "antipodal", "tilde_eta", "rot:k/n", "gb:t", "g1p:t", "g2p:t")


# -- automorphisms of the sphere itself --------------------------------------------------


@dataclass(frozen=True)
class SphereAutClass:
    """Conjugacy datum of a finite-order automorphism of the sphere."""

    kind: str  # rotation | reflection | antipodal
    angle: tuple[int, int] | None
    conjugator: tuple[tuple[CoeffScalar, ...], ...] | None


def _const_matrix(rows):
    return tuple(tuple(scalar(c) for c in row) for row in rows)


def _mat_mul(a, b):
    return (
        (
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ),
        (
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ),
    )


def _mat_conj(a):
    return tuple(tuple(c.conj() for c in row) for row in a)


def _mat_det(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def classify_sphere_automorphism(rows, swap: bool) -> SphereAutClass:
    """Classify a finite-order automorphism of the sphere given by a
    constant matrix (acting on the first ruling) and a swap flag.

    Without swap the class is a rotation with its angle; with swap the
    scalar of A * conj(A) decides between the reflection (positive) and the
    antipodal map (negative), with a constructive conjugator either way.
    """
    a0 = _const_matrix(rows)
    if _mat_det(a0) == CoeffScalar(0):
        raise ValueError("singular matrix")
    if not swap:
        proj = ProjMat.of(*(Poly.const(c) for row in a0 for c in row))
        n = proj.order()
        if n is None:
            raise NotFiniteOrder("matrix has infinite projective order")
        ratio = proj.eigen_ratio_trace_invariant()
        angle = _angle_from_trace_invariant(ratio, n)
        return SphereAutClass("rotation", angle, None)
    m = _mat_mul(a0, _mat_conj(a0))
    if m[0][1] or m[1][0] or m[0][0] != m[1][1]:
        raise NotFiniteOrder("swap element does not square to a scalar")
    lam = m[0][0]
    if not lam.is_real():
        raise RuntimeError("scalar of A*conj(A) must be real")
    lam_r = lam.as_real()
    scale = abs(lam_r).sqrt().inverse()
    a1 = tuple(tuple(c * CoeffScalar(scale) for c in row) for row in a0)
    if lam_r.sign() > 0:
        # additive Hilbert-90: B = C + A1 conj(C) with any C keeping B invertible
        for c in _hilbert90_trials():
            bmat = tuple(
                tuple(c[r][s] + sum(a1[r][k] * c[k][s].conj() for k in range(2)) for s in range(2))
                for r in range(2)
            )
            if _mat_det(bmat):
                return SphereAutClass("reflection", None, bmat)
        raise RuntimeError("no invertible additive Hilbert-90 witness found")
    # negative scalar: antipodal, with basis (v1, A1 conj(v1))
    for v1 in ((CoeffScalar(1), CoeffScalar(0)), (CoeffScalar(0), CoeffScalar(1))):
        av = tuple(sum(a1[r][k] * v1[k].conj() for k in range(2)) for r in range(2))
        bmat = ((v1[0], av[0]), (v1[1], av[1]))
        if _mat_det(bmat):
            return SphereAutClass("antipodal", None, bmat)
    raise RuntimeError("no basis of the form (v, A conj(v)) found")


def _hilbert90_trials():
    """Constant trial matrices for additive Hilbert-90 witnesses: a fixed
    asymmetric batch followed by deterministic pseudo-random ones (the
    singular locus is proper, so a random trial succeeds)."""
    import random

    one, zero, i = CoeffScalar(1), CoeffScalar(0), CoeffScalar.i()
    fixed = (
        ((one, zero), (zero, one)),
        ((i, zero), (zero, one)),
        ((one, zero), (zero, i)),
        ((i, zero), (zero, i)),
        ((one, zero), (zero, -one)),
        ((zero, one), (one, zero)),
        ((one, one), (zero, one)),
        ((zero, i), (one, zero)),
    )
    yield from fixed
    rng = random.Random(1729)
    for _ in range(60):
        yield tuple(
            tuple(
                CoeffScalar(Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)))
                for _ in range(2)
            )
            for _ in range(2)
        )


def _angle_from_trace_invariant(ratio: RatFn, order: int) -> tuple[int, int]:
    if not ratio.is_constant():
        raise NotFiniteOrder("trace invariant is not constant")
    value = ratio.num.lead() / ratio.den.lead() if ratio.num else CoeffScalar(0)
    for k in range(0, order + 1):
        zeta = unit_root(k, order)
        expected = zeta + zeta.inverse() + 2
        if expected == value:
            kk = min(k % order, (order - k) % order)
            from math import gcd

            g = gcd(kk, order) if kk else 1
            return (kk // g, order // g) if kk else (0, 1)
    raise RuntimeError(f"no supported angle matches invariant {ratio}")
