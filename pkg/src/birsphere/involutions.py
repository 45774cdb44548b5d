"""Involutions among fiberwise-real maps: normal forms, fixed curves,
conjugacy decisions with certificates, realization, and rotation normal
forms for higher order.

An involution with trivial base action has the shape
[[i*p, q*h], [conj q, -i*p]] with p real; its fixed curve is the double
cover w^2 = -D with D the pattern determinant, and D's square class in
R(z)* is a complete conjugacy invariant.  Conjugators are produced
constructively: both sides are brought to the companion shape
[[0, -D], [1, 0]], aligned by a square-root rescale, and glued with a
multiplicative Hilbert-90 witness in the quadratic algebra C(z)[w]/(w^2+D).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .bipoly import BiPoly
from .errors import (
    HasRealRoot,
    NotDiffeomorphism,
    NotInvolution,
    NotFiniteOrder,
    UnsupportedExtension,
)
from .poly import (
    ONE_MINUS_Z2,
    Poly,
    RatFn,
    poly_gcd,
    real_roots_in_tower_poly,
    square_class_part,
    squarefree_decomposition,
    sturm_count,
)
from .positivity import is_real_positive, norm_factor, v_decomp
from .projmat import ProjMat
from .scalars import CoeffScalar
from .sphere import (
    FiberPattern,
    canonical_pattern,
    fiber_determinant,
    in_diffeo_group,
    is_orientation_preserving,
    in_reality_group,
    unit_root,
)


# -- normal forms and fixed curves ---------------------------------------------------


@dataclass(frozen=True)
class InvolutionForm:
    """The pair (p, q) with matrix [[i*p, q*h], [conj q, -i*p]], p real."""

    p: Poly
    q: Poly

    def matrix(self) -> ProjMat:
        i = CoeffScalar.i()
        return ProjMat.of(
            self.p.scale(i), self.q * ONE_MINUS_Z2, self.q.conj(), self.p.scale(-i)
        )

    def determinant(self) -> Poly:
        return self.p * self.p - self.q * self.q.conj() * ONE_MINUS_Z2


def involution_normal_form(mat: ProjMat) -> InvolutionForm:
    if mat.order(2) != 2:
        raise NotInvolution(f"{mat} does not have order 2")
    pat = canonical_pattern(mat)
    if pat.a + pat.a.conj():
        raise NotInvolution(f"{mat} has nonzero invariant trace")
    i = CoeffScalar.i()
    p = pat.a.scale(-i)  # a = i*p
    if not p.is_real():
        raise RuntimeError("involution trace part failed to be real")
    return InvolutionForm(p, pat.b)


def _poly_square_root(p: Poly) -> Poly:
    """s with s^2 = p, for real p with even factor multiplicities."""
    if not p:
        return p
    lead = p.lead().as_real()
    s = Poly.const(CoeffScalar(lead.sqrt()))
    for factor, mult in squarefree_decomposition(p):
        if mult % 2:
            raise ValueError(f"{p} is not a polynomial square")
        s = s * factor ** (mult // 2)
    if s * s != p:
        raise ValueError(f"{p} is not a polynomial square")
    return s


@dataclass(frozen=True)
class HyperellipticModel:
    """Canonical fixed-curve datum: w^2 = sign * m(z) with m square-free,
    monic, positive leading coefficient.  The scale polynomial and positive
    rational content record the exact relation
    -D = content * sign * m * scale^2 to the raw form determinant, for the
    fiberwise oracle."""

    m: Poly
    sign: int
    scale: Poly
    content: Fraction = Fraction(1)

    @property
    def degree(self) -> int:
        return self.m.degree

    def genus(self) -> int:
        d = self.degree
        return 0 if d <= 2 else (d + 1) // 2 - 1

    def value_at(self, z0) -> CoeffScalar:
        return self.m(z0) * CoeffScalar(Fraction(self.sign))

    def raw_value_at(self, z0) -> CoeffScalar:
        """-D(z0) for the normal form this model came from."""
        s = self.scale(z0)
        return self.value_at(z0) * CoeffScalar(self.content) * s * s

    def same_curve(self, other: HyperellipticModel) -> bool:
        return self.m == other.m and self.sign == other.sign


def fixed_curve(mat: ProjMat) -> HyperellipticModel:
    """The double cover w^2 = -D traced by the fiberwise fixed points,
    reduced to its square-free model."""
    form = involution_normal_form(mat)
    raw = -form.determinant()
    neg_d = _primitive(raw)
    content = Fraction(1)
    if raw != neg_d:
        ratio = (raw.lead() / neg_d.lead()).as_rational()
        if neg_d.scale(ratio) != raw:
            raise RuntimeError("determinant content extraction failed")
        content = ratio
    sf = square_class_part(neg_d)
    sign = sf.lead().as_real().sign() if sf.degree >= 0 else 1
    m = sf if sign > 0 else -sf
    scale2 = neg_d.exact_div(m.scale(Fraction(sign)))
    return HyperellipticModel(m, sign, _poly_square_root(scale2), content)


def _primitive(p: Poly) -> Poly:
    from .sphere import _primitive_real

    return _primitive_real(p)


def genus_of_model(model: HyperellipticModel) -> int:
    return model.genus()


def real_locus_class(mat: ProjMat) -> str:
    """'no_real_points' or 'one_oval' for an involution that is a
    birational diffeomorphism."""
    if not in_diffeo_group(mat):
        raise NotDiffeomorphism(f"{mat} is not defined at every real point")
    return "no_real_points" if is_orientation_preserving(mat) else "one_oval"


# -- conjugacy decision and certificates --------------------------------------------------


def conj_decision(mat_a: ProjMat, mat_b: ProjMat) -> bool:
    """Conjugacy of two involutions among fiberwise maps: the determinants
    must agree up to a square of a real rational function."""
    da = fiber_determinant(mat_a)
    db = fiber_determinant(mat_b)
    sf = square_class_part(da * db)
    return sf.degree == 0 and sf.lead().as_real().sign() > 0


@dataclass(frozen=True)
class ConjugacyCertificate:
    source: ProjMat
    target: ProjMat
    conjugator: ProjMat

    def verify(self) -> bool:
        from .projmat import proportional, raw_mul

        if not in_reality_group(self.conjugator):
            return False
        # C A C^-1 = B projectively <=> C A = B C
        return proportional(
            raw_mul(self.conjugator.entries(), self.source.entries()),
            raw_mul(self.target.entries(), self.conjugator.entries()),
        )


class _FracMat:
    """2x2 polynomial matrix with a scalar polynomial denominator; all
    arithmetic is performed without fraction reduction (the result is only
    needed projectively, or compared exactly)."""

    __slots__ = ("m", "d")

    def __init__(self, m, d: Poly | None = None):
        self.m = m
        self.d = Poly.const(1) if d is None else d

    def mul(self, other: _FracMat) -> _FracMat:
        a, b = self.m, other.m
        return _FracMat(
            (
                (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
                (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
            ),
            self.d * other.d,
        )

    def inverse(self) -> _FracMat:
        a = self.m
        det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
        if not det:
            raise ZeroDivisionError("singular matrix")
        adj = ((a[1][1] * self.d, -(a[0][1] * self.d)), (-(a[1][0] * self.d), a[0][0] * self.d))
        return _FracMat(adj, det)

    def conj(self) -> _FracMat:
        return _FracMat(tuple(tuple(e.conj() for e in row) for row in self.m), self.d.conj())


class _QuadAlgebra:
    """The commutative algebra C(z)[w]/(w^2 - f), f a polynomial, with
    coefficient conjugation.  Elements are (x, y, d) standing for
    (x + y w)/d; no reduction is performed."""

    def __init__(self, f: Poly):
        self.f = f

    def mul(self, u, v):
        x1, y1, d1 = u
        x2, y2, d2 = v
        return (x1 * x2 + self.f * y1 * y2, x1 * y2 + y1 * x2, d1 * d2)

    def add(self, u, v):
        x1, y1, d1 = u
        x2, y2, d2 = v
        return (x1 * d2 + x2 * d1, y1 * d2 + y2 * d1, d1 * d2)

    def conj(self, u):
        return (u[0].conj(), u[1].conj(), u[2].conj())

    def inverse(self, u):
        x, y, d = u
        n = x * x - self.f * y * y
        if not n:
            raise ZeroDivisionError("non-invertible element of the quadratic algebra")
        return (x * d, -(y * d), n)

    def is_one(self, u) -> bool:
        x, y, d = u
        return not y and x == d

    def matrix(self, u) -> _FracMat:
        x, y, d = u
        return _FracMat(((x, self.f * y), (y, x)), d)


def _companion_data(form: InvolutionForm) -> tuple[_FracMat, Poly]:
    """(alpha, f) with alpha [[0, f], [1, 0]] alpha^-1 = A projectively and
    alpha^-1 tau conj(alpha) inside the centralizer algebra; f = -D.

    Requires q != 0 (callers move diagonal involutions off the diagonal
    first)."""
    i = CoeffScalar.i()
    p, q = form.p, form.q
    if not q:
        raise ValueError("off-diagonal involution form required")
    f = -form.determinant()
    alpha = _FracMat(((Poly(), q * ONE_MINUS_Z2), (Poly.const(-1), p.scale(-i))))
    return alpha, f


_TAU_FM = _FracMat(((Poly(), ONE_MINUS_Z2), (Poly.const(1), Poly())))


def _move_off_diagonal(mat: ProjMat) -> tuple[ProjMat, ProjMat]:
    """Conjugate a diagonal involution to one with q != 0; returns the new
    matrix and the conjugator g with g mat g^-1 = new."""
    if involution_normal_form(mat).q:
        return mat, ProjMat.identity()
    candidates = (
        FiberPattern(Poly.z(), Poly.const(1)).matrix(),
        FiberPattern(Poly.const(2), Poly.const(1)).matrix(),
        FiberPattern(Poly.const(CoeffScalar(1, 1)), Poly.const(1)).matrix(),
    )
    for g in candidates:
        moved = g * mat * g.inverse()
        if involution_normal_form(moved).q:
            return moved, g
    raise RuntimeError("failed to move a diagonal involution off the diagonal")


def construct_conjugator(mat_a: ProjMat, mat_b: ProjMat) -> ConjugacyCertificate:
    """An explicit conjugator C in the reality group with C A C^-1 = B.

    Both involutions are written as alpha [[0,-D],[1,0]] alpha^-1, the two
    companion forms are aligned by the rescale diag(1, u) with
    u^2 = D_A / D_B, and the reality defect is repaired by a Hilbert-90
    element of the quadratic algebra attached to the common fixed curve.
    """
    if mat_a == mat_b:
        return ConjugacyCertificate(mat_a, mat_b, ProjMat.identity())
    if not conj_decision(mat_a, mat_b):
        raise ValueError("maps are not conjugate: determinants differ by a non-square")
    moved_a, pre_a = _move_off_diagonal(mat_a)
    moved_b, pre_b = _move_off_diagonal(mat_b)
    if (moved_a, moved_b) != (mat_a, mat_b):
        inner = construct_conjugator(moved_a, moved_b)
        conj = pre_b.inverse() * inner.conjugator * pre_a
        cert = ConjugacyCertificate(mat_a, mat_b, conj)
        if not cert.verify():
            raise RuntimeError("composed conjugator failed to verify")
        return cert
    form_a = involution_normal_form(mat_a)
    form_b = involution_normal_form(mat_b)
    alpha, f = _companion_data(form_a)
    beta0, f_b = _companion_data(form_b)
    # rescale aligning the companion of B to [[0, f], [1, 0]]
    u_num, u_den = _ratio_square_root(f, f_b)
    beta = beta0.mul(_FracMat(((u_den, Poly()), (Poly(), u_num)), u_den))
    algebra = _QuadAlgebra(f)
    # closed forms of the twist units alpha^-1 tau conj(alpha), namely
    # [[i p, -f], [-1, i p]] / q (checked against the matrix product in the
    # tests); the rescale by diag(1, u) twists the second one
    i = CoeffScalar.i()
    mu_a = (form_a.p.scale(i), Poly.const(-1), form_a.q)
    mu_b = (form_b.p.scale(i) * u_num, -u_den, form_b.q * u_num)
    w = algebra.mul(mu_b, algebra.inverse(mu_a))
    if not algebra.is_one(algebra.mul(w, algebra.conj(w))):
        raise RuntimeError("twist units failed to have norm one")
    xi = _hilbert90_multiplicative(w, algebra)
    gamma = beta.mul(algebra.matrix(xi)).mul(alpha.inverse())
    conj = ProjMat.of(gamma.m[0][0], gamma.m[0][1], gamma.m[1][0], gamma.m[1][1])
    cert = ConjugacyCertificate(mat_a, mat_b, conj)
    if not cert.verify():
        raise RuntimeError("constructed conjugator failed to verify")
    return cert


def _twist_unit(alpha: _FracMat, algebra: _QuadAlgebra):
    """mu = alpha^-1 tau conj(alpha), as an element of the algebra."""
    out = alpha.inverse().mul(_TAU_FM).mul(alpha.conj())
    m, d = out.m, out.d
    if m[0][0] * d != m[1][1] * d or m[0][1] != algebra.f * m[1][0]:
        raise RuntimeError("twist unit left the centralizer algebra")
    return (m[0][0], m[1][0], d)


def _hilbert90_multiplicative(w, algebra: _QuadAlgebra):
    """xi with xi = w * conj(xi), given w of norm one: xi = C + w*conj(C)."""
    import random

    one, zero, zvar = Poly.const(1), Poly(), Poly.z()
    i = Poly.const(CoeffScalar.i())
    trials = [
        (one, zero, one),
        (i, zero, one),
        (zero, one, one),
        (zero, i, one),
        (zvar, zero, one),
        (zero, zvar, one),
    ]
    rng = random.Random(1729)
    for _ in range(40):
        trials.append(
            (
                Poly([CoeffScalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)]),
                Poly([CoeffScalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)]),
                one,
            )
        )
    for c in trials:
        xi = algebra.add(c, algebra.mul(w, algebra.conj(c)))
        try:
            algebra.inverse(xi)
        except ZeroDivisionError:
            continue
        return xi
    raise RuntimeError("no invertible Hilbert-90 witness in the trial set")


def _ratio_square_root(f: Poly, f_b: Poly) -> tuple[Poly, Poly]:
    """(num, den) with (num/den)^2 = f / f_b, for real polynomial inputs in
    the same square class."""
    prod = f * f_b
    lead = prod.lead().as_real()
    monic = prod.scale(prod.lead().inverse())
    s = Poly.const(CoeffScalar(lead.sqrt()))
    for factor, mult in squarefree_decomposition(monic):
        if mult % 2:
            raise ValueError("determinants are not in the same square class")
        s = s * factor ** (mult // 2)
    # (s / f_b)^2 = prod / f_b^2 = f / f_b
    if s * s != prod:
        raise ValueError("determinants are not in the same square class")
    return s, f_b


# -- realization ---------------------------------------------------------------------------


def realize_oval(beta: Poly) -> ProjMat:
    """The involution [[0, beta*h], [conj beta, 0]]; orientation-reversing
    with fixed curve w^2 = (1-z^2) * beta * conj(beta)."""
    if not beta:
        raise HasRealRoot("zero polynomial is not allowed")
    norm = beta * beta.conj()
    if sturm_count(norm) != 0:
        raise HasRealRoot(f"{beta} has a real root")
    return ProjMat.of(Poly(), beta * ONE_MINUS_Z2, beta.conj(), Poly())


def realize_no_oval(f: Poly) -> ProjMat:
    """An orientation-preserving involution with fixed curve w^2 = -f, for
    strictly positive f, via the a^2 + P*(z^2-1) decomposition."""
    if not is_real_positive(f):
        raise ValueError("strictly positive polynomial required")
    a, p = v_decomp(f)
    i = CoeffScalar.i()
    if not p:
        return ProjMat.diag(a.scale(i), a.scale(-i))
    b = norm_factor(p)
    return InvolutionForm(a, b).matrix()


# -- rotation normal form ---------------------------------------------------------------------


@dataclass(frozen=True)
class RotationForm:
    angle: tuple[int, int]  # (k, n) with 0 < k <= n/2
    conjugator: ProjMat
    target: ProjMat

    def verify(self, source: ProjMat) -> bool:
        from .projmat import proportional, raw_mul

        if not in_reality_group(self.conjugator):
            return False
        return proportional(
            raw_mul(self.conjugator.entries(), source.entries()),
            raw_mul(self.target.entries(), self.conjugator.entries()),
        )


def _canonical_angle(k: int, n: int) -> tuple[int, int]:
    k %= n
    k = min(k, n - k)
    g = int_gcd(k, n)
    return (k // g, n // g) if k else (0, 1)


def rotation_normal_form(mat: ProjMat, max_order: int | None = None) -> RotationForm:
    """Diagonalise a finite-order fiberwise-real map of order > 2 to the
    rotation diag(1, zeta) by a conjugator inside the reality group."""
    n = mat.order(max_order)
    if n is None:
        raise NotFiniteOrder(f"{mat} has infinite order (or order beyond the cutoff)")
    if n <= 2:
        raise ValueError("rotation normal form needs order > 2")
    pat = canonical_pattern(mat)
    lift = [
        [RatFn(pat.a), RatFn(pat.b * ONE_MINUS_Z2)],
        [RatFn(pat.b.conj()), RatFn(pat.a.conj())],
    ]
    trace = pat.a + pat.a.conj()
    det = pat.determinant()
    ratio = RatFn(trace * trace, det)
    if not ratio.is_constant():
        raise NotFiniteOrder("trace invariant is not constant")
    kappa = ratio.num.lead() / ratio.den.lead() if ratio.num else CoeffScalar(0)
    angle = None
    for k in range(1, n):
        zeta = unit_root(k, n)
        if zeta + zeta.inverse() + 2 == kappa:
            angle = k
            break
    if angle is None:
        raise UnsupportedExtension(f"no supported rotation angle matches {mat}")
    # Delta^2 = trace^2 - 4 det = det * (kappa - 4); need det = const * square
    monic_det = det.scale(det.lead().inverse())
    s = Poly.const(1)
    for factor, mult in squarefree_decomposition(monic_det):
        if mult % 2:
            raise UnsupportedExtension("determinant is not a square times a constant")
        s = s * factor ** (mult // 2)
    const = det.lead() * (kappa - 4)
    delta = RatFn(s.scale(const.sqrt()))
    tr = RatFn(trace)
    twod = RatFn(Poly.const(2))
    zeta = unit_root(angle, n)
    for lam_plus, lam_minus in (
        ((tr + delta) / twod, (tr - delta) / twod),
        ((tr - delta) / twod, (tr + delta) / twod),
    ):
        alpha = _eigen_matrix(lift, lam_plus, lam_minus)
        if alpha is None:
            continue
        for jmat in _rot_conjugator_candidates(alpha):
            if jmat is None:
                continue
            if not in_reality_group(jmat):
                continue
            target = jmat * mat * jmat.inverse()
            for kk in range(1, n):
                if int_gcd(kk, n) != int_gcd(angle, n):
                    continue
                if target == ProjMat.diag(Poly.const(1), Poly.const(unit_root(kk, n))):
                    return RotationForm(_canonical_angle(kk, n), jmat, target)
    raise UnsupportedExtension(f"failed to build a rotation conjugator for {mat}")


def _eigen_matrix(lift, lam_plus: RatFn, lam_minus: RatFn):
    a11, a12 = lift[0]
    a21, a22 = lift[1]
    cols = []
    for lam in (lam_plus, lam_minus):
        if a12:
            cols.append((a12, lam - a11))
        elif a21:
            cols.append((lam - a22, a21))
        else:
            # already diagonal
            cols = [(RatFn(Poly.const(1)), RatFn(Poly())), (RatFn(Poly()), RatFn(Poly.const(1)))]
            break
    alpha = [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]
    det = alpha[0][0] * alpha[1][1] - alpha[0][1] * alpha[1][0]
    return alpha if det else None


def _rot_conjugator_candidates(alpha):
    a, b = alpha[0]
    c, d = alpha[1]
    zero = RatFn(Poly())
    one = RatFn(Poly.const(1))
    h = RatFn(ONE_MINUS_Z2)
    svals = []
    if a:
        svals.append(d / a)
    if c:
        svals.append((b / c) / h)
    det = a * d - b * c
    inv = ((d / det, -(b / det)), (-(c / det), a / det))
    for s in svals:
        try:
            yield ProjMat.of(inv[0][0], inv[0][1], s * inv[1][0], s * inv[1][1])
        except (ZeroDivisionError, ValueError):
            yield None


# -- moduli comparison under the interval group ----------------------------------------------


@dataclass(frozen=True)
class ModuliComparison:
    status: str  # equivalent | inequivalent | undecided_exact
    witness_b: object | None = None
    flipped: bool = False


def _transport_poly(m: Poly) -> BiPoly:
    """(bz+1)^deg * m((z+b)/(bz+1)) as a polynomial in the parameter b."""
    num = BiPoly([Poly.z(), Poly.const(1)])  # z + b
    den = BiPoly([Poly.const(1), Poly.z()])  # b z + 1
    d = m.degree
    acc = BiPoly()
    for k in range(d + 1):
        c = m[k]
        if c:
            acc = acc + (num**k * den ** (d - k)) * BiPoly.const(Poly.const(c))
    return acc


def _proportionality_minors(transported: BiPoly, target: Poly) -> list[Poly]:
    """Polynomials in b whose common roots make the transport proportional
    to the target."""
    cols = transported.z_coefficients()  # in the parameter variable
    tcoeffs = [target[j] for j in range(len(cols))]
    minors = []
    for j in range(len(cols)):
        for k in range(j + 1, len(cols)):
            minor = cols[j].scale(tcoeffs[k]) - cols[k].scale(tcoeffs[j])
            if minor:
                minors.append(minor)
    return minors


def _check_candidate(m_from: Poly, m_to: Poly, bval: CoeffScalar) -> bool:
    num = Poly([bval, CoeffScalar(1)])
    den = Poly([CoeffScalar(1), bval])
    d = m_from.degree
    acc = Poly()
    for k in range(d + 1):
        c = m_from[k]
        if c:
            acc = acc + (num**k * den ** (d - k)).scale(c)
    cross = acc * Poly.const(m_to.lead()) - m_to.scale(acc.lead())
    return not cross


def basis_equiv_moduli(model_a: HyperellipticModel, model_b: HyperellipticModel) -> ModuliComparison:
    """Decide whether an interval-preserving base map carries the branch
    divisor of one fixed-curve model to the other.

    Candidate parameters are cut out by proportionality of the transported
    polynomial with the target; each real candidate in (-1, 1) is checked
    exactly when it lies in a quadratic tower, otherwise the comparison is
    reported undecided.
    """
    if model_a.sign != model_b.sign or model_a.degree != model_b.degree:
        return ModuliComparison("inequivalent")
    if model_a.m == model_b.m:
        return ModuliComparison("equivalent", witness_b=Fraction(0))
    undecided = False
    for flipped in (False, True):
        source = model_a.m.reflect_z() if flipped else model_a.m
        if source == model_b.m:
            return ModuliComparison("equivalent", witness_b=Fraction(0), flipped=True)
        minors = _proportionality_minors(_transport_poly(source), model_b.m)
        if not minors:
            return ModuliComparison("equivalent", witness_b=Fraction(0), flipped=flipped)
        g = minors[0]
        for minor in minors[1:]:
            g = poly_gcd(g, minor)
            if g.degree == 0:
                break
        if g.degree == 0:
            continue
        if not g.is_real():
            real_part = poly_gcd(g, g.conj())
            if real_part.degree == 0:
                continue
            g = real_part
        for root in real_roots_in_tower_poly(g):
            if not (root > Fraction(-1) and root < Fraction(1)):
                continue
            try:
                bval = CoeffScalar(root.to_tower())
            except ValueError:
                undecided = True
                continue
            if _check_candidate(source, model_b.m, bval):
                witness = root.as_rational() if root.is_rational() else root
                return ModuliComparison("equivalent", witness_b=witness, flipped=flipped)
    if undecided:
        return ModuliComparison("undecided_exact")
    return ModuliComparison("inequivalent")


# -- family report for trivial-base elements ---------------------------------------------------


@dataclass(frozen=True)
class TrivialBaseReport:
    family: object  # 3, 4, 6, 7 or "rational-special"
    angle: tuple[int, int] | None = None
    model: HyperellipticModel | None = None
    parameter: object | None = None
    certificate: ConjugacyCertificate | None = None
    rotation: RotationForm | None = None


def classify_trivialbase(mat: ProjMat, max_order: int | None = None) -> TrivialBaseReport:
    """Sort a finite-order birational diffeomorphism with trivial base
    action into its conjugacy family."""
    if not in_diffeo_group(mat):
        raise NotDiffeomorphism(f"{mat} is not defined at every real point")
    n = mat.order(max_order)
    if n is None:
        raise NotFiniteOrder(f"{mat} has infinite order (or order beyond the cutoff)")
    if n == 1:
        return TrivialBaseReport(family=3, angle=(0, 1))
    if n > 2:
        rot = rotation_normal_form(mat, max_order)
        return TrivialBaseReport(family=3, angle=rot.angle, rotation=rot)
    model = fixed_curve(mat)
    locus = real_locus_class(mat)
    if locus == "one_oval":
        if model.degree <= 2:
            cert = construct_conjugator(mat, x_flip_fiber())
            return TrivialBaseReport(family=4, model=model, certificate=cert)
        return TrivialBaseReport(family=7, model=model)
    if model.degree == 0:
        cert = construct_conjugator(mat, ProjMat.diag(Poly.const(1), Poly.const(-1)))
        return TrivialBaseReport(family=3, angle=(1, 2), model=model, certificate=cert)
    if model.degree == 2:
        # rational curve without real points: the one-parameter stratum
        # conjugate to base-flip representatives; branch points z^2 = -c
        c = model.m[0] / model.m[2]
        return TrivialBaseReport(family="rational-special", model=model, parameter=c)
    return TrivialBaseReport(family=6, model=model)


def x_flip_fiber() -> ProjMat:
    return ProjMat.of(Poly(), -ONE_MINUS_Z2, Poly.const(1), Poly())
