"""Involutions whose base action is z -> -z, and their complete invariant.

Such a map is a pair (A, flip) with A a fiberwise-real matrix; it is an
involution exactly when A * A(-z) is a scalar mu, necessarily an even real
rational function.  The class of mu modulo the norms f(z) * f(-z) is a sign
together with a multiset of positive reals (one generator z^2 + b for each
b > 0), computed here by factoring in w = z^2.  Equality of classes decides
conjugacy among all fiber-compatible birational maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotDiffeomorphism,
    NotEvenFunction,
    NotInvolution,
    UnsupportedExtension,
)
from .poly import (
    Poly,
    RatFn,
    RealAlgebraic,
    factor_rational_poly,
)
from .projmat import ProjMat
from .scalars import CoeffScalar, TowerReal
from .sphere import SphereMap, canonical_pattern, in_diffeo_group, z_flip


def _pattern_lift(mat: ProjMat):
    from .poly import ONE_MINUS_Z2

    pat = canonical_pattern(mat)
    return (
        (pat.a, pat.b * ONE_MINUS_Z2),
        (pat.b.conj(), pat.a.conj()),
    )


def twisted_square(mat: ProjMat) -> RatFn | None:
    """The scalar mu with  L * L(-z) = mu * Id  on the pattern lift, or
    None when the product is not scalar (the pair is not an involution)."""
    (a11, a12), (a21, a22) = _pattern_lift(mat)
    b11, b12, b21, b22 = (p.reflect_z() for p in (a11, a12, a21, a22))
    m11 = a11 * b11 + a12 * b21
    m12 = a11 * b12 + a12 * b22
    m21 = a21 * b11 + a22 * b21
    m22 = a21 * b12 + a22 * b22
    if m12 or m21 or m11 != m22:
        return None
    mu = RatFn(m11)
    return mu


@dataclass(frozen=True)
class TwistClass:
    """Sign and multiset of positive reals; the group law is componentwise
    mod 2 (signs multiply, generator multisets add symmetric-difference)."""

    sign: int
    gens: tuple[RealAlgebraic, ...]

    @classmethod
    def trivial(cls) -> TwistClass:
        return cls(1, ())

    def is_trivial(self) -> bool:
        return self.sign == 1 and not self.gens

    def is_linear_model(self) -> bool:
        """True for the two classes realised by linear maps: (+-1, {})."""
        return not self.gens

    def combine(self, other: TwistClass) -> TwistClass:
        gens = list(self.gens)
        for g in other.gens:
            for k, mine in enumerate(gens):
                if mine == g:
                    del gens[k]
                    break
            else:
                gens.append(g)
        gens.sort()
        return TwistClass(self.sign * other.sign, tuple(gens))

    def __eq__(self, other):
        if not isinstance(other, TwistClass):
            return NotImplemented
        if self.sign != other.sign or len(self.gens) != len(other.gens):
            return False
        return all(a == b for a, b in zip(self.gens, other.gens))

    def __hash__(self):
        return hash((self.sign, len(self.gens)))

    def to_json(self) -> dict:
        return {
            "sign": "+" if self.sign > 0 else "-",
            "gens": [
                {
                    "minpoly": str(g.minpoly),
                    "interval": [str(g.lo), str(g.hi)],
                    "approx": float(g),
                }
                for g in self.gens
            ],
        }

    def __str__(self):
        gens = ", ".join(f"{float(g):.6g}" for g in self.gens)
        return f"({'+' if self.sign > 0 else '-'}1, {{{gens}}})"


def _even_to_w(p: Poly) -> Poly:
    if not p.is_even():
        raise NotEvenFunction(f"{p} is not invariant under z -> -z")
    return Poly(list(p.coeffs[0::2]))


def h2_reduce(mu: RatFn) -> TwistClass:
    """Reduce an even real rational function modulo norms f(z) f(-z).

    In the variable w = z^2: a negative constant flips the sign, a real
    w-root d >= 0 of odd multiplicity flips the sign, a real root d < 0
    contributes the generator b = -d, and imaginary root pairs vanish.
    """
    num, den = mu.num, mu.den
    if not num:
        raise ValueError("zero is not a unit")
    if not (num.is_real() and den.is_real()):
        raise NotEvenFunction(f"{mu} is not a real rational function")
    w_poly = _even_to_w(num) * _even_to_w(den)
    if not w_poly.is_rational():
        raise UnsupportedExtension("twist class needs rational coefficients in z^2")
    const, factors = factor_rational_poly(w_poly)
    sign = 1 if const > 0 else -1
    gens: list[RealAlgebraic] = []
    for factor, mult in factors:
        if mult % 2 == 0:
            continue
        for root in RealAlgebraic.roots_of_rational_poly(factor):
            if root.sign() >= 0:
                sign = -sign
            else:
                gens.append(-root)
    base = TwistClass(sign, ())
    for g in gens:
        base = base.combine(TwistClass(1, (g,)))
    return base


def h2_invariant(pair: SphereMap) -> TwistClass:
    """The twist class of an involution with base action z -> -z."""
    if pair.base.kind != "neg":
        raise ValueError("base action must be the flip z -> -z")
    mu = twisted_square(pair.fiber)
    if mu is None:
        raise NotInvolution("the pair does not square to the identity")
    return h2_reduce(mu)


def pair_conjugacy_bir(p1: SphereMap, p2: SphereMap) -> bool:
    """Conjugacy in the full fiber-compatible birational group: the twist
    classes agree."""
    return h2_invariant(p1) == h2_invariant(p2)


# -- norm factorization in C(z) with z -> -z ------------------------------------------


def factor_even(f: RatFn) -> RatFn:
    """g with g(z) * g(-z) = f, for f even; exact over the tower.

    Linear w-factors split as -(z - r)(-z - r) with r = sqrt of the root;
    quadratic w-factors split with two square roots; higher-degree factors
    raise UnsupportedExtension.
    """
    if f.reflect_z() != f:
        raise NotEvenFunction(f"{f} is not even")
    gnum = _factor_even_poly(f.num)
    gden = _factor_even_poly(f.den)
    out = RatFn(gnum, gden)
    if out * out.reflect_z() != f:
        raise RuntimeError("even factorization failed to verify")
    return out


def _factor_even_poly(p: Poly) -> Poly:
    w_poly = _even_to_w(p)
    if not w_poly.is_rational():
        raise UnsupportedExtension("even factorization needs rational coefficients")
    const, factors = factor_rational_poly(w_poly)
    i = CoeffScalar.i()
    acc = Poly.const(_scalar_sqrt_signed(CoeffScalar(Fraction(const))))
    for factor, mult in factors:
        if factor.degree == 1:
            # w - d: z^2 - d = -(z - r)(-z - r) with r^2 = d
            d = -factor[0]
            r = _scalar_sqrt_signed(d)
            piece = Poly([-r, CoeffScalar(1)]).scale(i)  # i*(z - r); i^2 absorbs the -1
        elif factor.degree == 2:
            # w^2 + p w + q: find G = z^2 + s z + t with G(z) G(-z) = F(z^2)
            pw, qw = factor[1], factor[0]
            piece = None
            for tsign in (1, -1):
                try:
                    t = _scalar_sqrt_signed(qw) * CoeffScalar(Fraction(tsign))
                    s = _scalar_sqrt_signed(2 * t - pw)
                except UnsupportedExtension:
                    continue
                cand = Poly([t, s, CoeffScalar(1)])
                if cand * cand.reflect_z() == Poly(
                    [qw, CoeffScalar(0), pw, CoeffScalar(0), CoeffScalar(1)]
                ):
                    piece = cand
                    break
            if piece is None:
                raise UnsupportedExtension(f"no tower splitting of the even factor {factor}")
        else:
            raise UnsupportedExtension(
                f"even factors of degree {2 * factor.degree} in z are out of tower reach"
            )
        for _ in range(mult):
            acc = acc * piece
    return acc


def _scalar_sqrt_signed(c: CoeffScalar) -> CoeffScalar:
    """A square root of a real scalar: sqrt(c) or i*sqrt(-c)."""
    r = c.as_real()
    if r.sign() >= 0:
        return CoeffScalar(r.sqrt())
    return CoeffScalar(TowerReal(), (-r).sqrt())


# -- the twisted group algebra, for coboundary witnesses ----------------------------------


class TwistedAlgebra:
    """C(z) + C(z) xi with xi^2 = 1 - z^2 and  a(z) xi = xi conj(a)(z);
    elements are pairs (a, b) standing for a + b xi.  Its unit group is the
    matrix group of pattern lifts."""

    @staticmethod
    def mul(u, v):
        from .poly import ONE_MINUS_Z2

        a, b = u
        c, d = v
        h = RatFn(ONE_MINUS_Z2)
        return (a * c + b * d.conj() * h, a * d + b * c.conj())

    @staticmethod
    def one():
        return (RatFn(Poly.const(1)), RatFn(Poly()))

    @staticmethod
    def reflect(u):
        return (u[0].reflect_z(), u[1].reflect_z())

    @staticmethod
    def inverse(u):
        a, b = u
        det = a * a.conj() - b * b.conj() * RatFn(Poly([1, 0, -1]))
        if not det:
            raise ZeroDivisionError("non-invertible element")
        return (a.conj() / det, -(b / det))

    @classmethod
    def coboundary_witness(cls, u):
        """For u with u * reflect(u) = 1, a unit B with u = B * reflect(B)^-1,
        via B = C + u * reflect(C) over a small trial set."""
        one = RatFn(Poly.const(1))
        zero = RatFn(Poly())
        zvar = RatFn(Poly.z())
        i = RatFn(Poly.const(CoeffScalar.i()))
        for c in ((one, zero), (zvar, zero), (i * zvar, zero), (zero, one), (zero, zvar), (u[0], u[1])):
            cand = cls.add(c, cls.mul(u, cls.reflect(c)))
            try:
                cls.inverse(cand)
            except ZeroDivisionError:
                continue
            return cand
        raise RuntimeError("no invertible coboundary witness in the trial set")

    @staticmethod
    def add(u, v):
        return (u[0] + v[0], u[1] + v[1])


# -- real fixed locus probe and the family report ----------------------------------------------


def real_fixed_points_on_flip(pair: SphereMap):
    """Exact real fixed points of a base-flip involution.

    Real fixed points can only sit on the fiber z = 0; they are the fixed
    points of the z = 0 Möbius action lying on the unit circle t conj(t)=1.
    Returns a list of fiber coordinates (possibly a marker for the whole
    circle), or None when the needed square root leaves the tower.
    """
    a, b, c, d = (p(CoeffScalar(0)) for p in pair.fiber.entries())
    # fixed points of t -> (a t + b)/(c t + d)
    if not c and a == d:
        if not b:
            return ["circle"]  # identity on the fiber: the whole circle is fixed
        return []
    candidates = []
    if not c:
        candidates.append(b / (d - a))
    else:
        disc = (a - d) * (a - d) + 4 * b * c
        try:
            root = disc.sqrt()
        except UnsupportedExtension:
            return None
        for sign in (1, -1):
            candidates.append((a - d + root * CoeffScalar(Fraction(sign))) / (2 * c))
    return [t for t in candidates if t * t.conj() == CoeffScalar(1)]


@dataclass(frozen=True)
class FlipReport:
    family: object  # 8, 5 or "linear-stratum"
    twist_class: TwistClass
    caveats: tuple[str, ...] = ()


def classify_flip_involution(pair: SphereMap) -> FlipReport:
    """Family report for an involution acting by z -> -z on the base."""
    if pair.base.kind != "neg":
        raise ValueError("base action must be the flip z -> -z")
    trivial_part = pair.compose(z_flip().inverse())
    if not in_diffeo_group(trivial_part.fiber):
        raise NotDiffeomorphism("the pair is not defined at every real point")
    cls = h2_invariant(pair)
    if not cls.is_linear_model():
        return FlipReport(family=8, twist_class=cls)
    fixed = real_fixed_points_on_flip(pair)
    caveats = (
        "class is linear at the birational level; the finer conjugacy "
        "within birational diffeomorphisms is reported, not decided",
    )
    if fixed is None:
        return FlipReport(
            family="linear-stratum",
            twist_class=cls,
            caveats=caveats + ("real fixed locus probe left the tower",),
        )
    if not fixed:
        return FlipReport(family=5, twist_class=cls)
    return FlipReport(family="linear-stratum", twist_class=cls, caveats=caveats)
