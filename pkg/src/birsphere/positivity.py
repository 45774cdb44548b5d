"""Strictly positive real polynomials and their multiplicative structure.

A real polynomial is "positive" when it takes positive values on all of R,
equivalently it has no real root and positive leading behaviour.  Such
polynomials are exactly the norms p * conj(p) of complex polynomials without
real roots, and every one of them can be written as a^2 + P*(z^2-1) with P
positive again.  Both witnesses are produced here exactly, over the
quadratic tower, raising UnsupportedExtension when a factorization would
need roots outside every real multi-quadratic extension.
"""

from __future__ import annotations

from .errors import NotRealPolynomial, UnsupportedExtension
from .poly import (
    Poly,
    factor_rational_poly,
    squarefree_decomposition,
    sturm_count,
)
from .scalars import CoeffScalar, TowerReal


def is_real_positive(f: Poly) -> bool:
    """True iff f is real with f(x) > 0 for every real x."""
    if not f.is_real():
        raise NotRealPolynomial(f"real polynomial required, got {f}")
    if not f:
        return False
    if f.degree == 0:
        return f.lead().as_real().sign() > 0
    if f.degree % 2:
        return False
    if sturm_count(f) != 0:
        return False
    return f(0).as_real().sign() > 0


def real_quadratic_factors(f: Poly) -> tuple[TowerReal, list[tuple[Poly, int]]]:
    """Write a positive polynomial as lead * prod q_k^(e_k) with monic real
    quadratics q_k over the tower.

    Raises UnsupportedExtension when some irreducible factor cannot be split
    into quadratics using square roots alone (e.g. needs a cube root).
    """
    if not is_real_positive(f):
        raise ValueError("strictly positive polynomial required")
    lead = f.lead().as_real()
    out: list[tuple[Poly, int]] = []
    for part, mult in squarefree_decomposition(f):
        for quad in _split_into_quadratics(part):
            out.append((quad, mult))
    return lead, out


def _split_into_quadratics(m: Poly) -> list[Poly]:
    """Split a monic squarefree real polynomial without real roots into
    monic real quadratic factors over the tower."""
    if m.degree == 0:
        return []
    if m.degree == 2:
        return [m]
    if m.degree % 2:
        raise UnsupportedExtension(f"odd-degree factor {m} has a real root")
    if m.is_rational():
        _, factors = factor_rational_poly(m)
        if len(factors) > 1 or factors[0][1] > 1:
            out = []
            for g, mult in factors:
                out.extend(_split_into_quadratics(g) * mult)
            return out
    if m.is_even():
        return _split_even(m)
    if m.degree == 4:
        return _split_quartic(m)
    raise UnsupportedExtension(f"cannot split {m} with square roots alone")


def _split_even(m: Poly) -> list[Poly]:
    """Split a monic even polynomial via its polynomial in w = z^2."""
    inner = Poly(list(m.coeffs[0::2]))
    pieces = [(inner, 1)]
    if inner.is_rational():
        _, pieces = factor_rational_poly(inner)
    out: list[Poly] = []
    for g, mult in pieces:
        back = Poly([c for gc in g.coeffs for c in (gc, CoeffScalar(0))][:-1])
        if g.degree == 1:
            out.extend([back] * mult)  # z^2 + e, e > 0 since m has no real root
        elif g.degree == 2:
            out.extend(_split_quartic(back) * mult)
        else:
            raise UnsupportedExtension(f"cannot split {m} with square roots alone")
    return out


def _split_quartic(m: Poly) -> list[Poly]:
    """Split a monic quartic without real roots, when square roots suffice."""
    if any(m[k] for k in (1, 3)):
        raise UnsupportedExtension(f"cannot split non-even quartic {m} with square roots alone")
    p, q = m[2].as_real(), m[0].as_real()
    try:
        disc = p * p - 4 * q
        if disc.sign() >= 0:
            s = disc.sqrt()
            quads = [
                Poly([(p - s) / 2, 0, 1]),
                Poly([(p + s) / 2, 0, 1]),
            ]
        else:
            b = q.sqrt()
            a = (2 * b - p).sqrt()
            quads = [Poly([b, a, 1]), Poly([b, -a, 1])]
    except (UnsupportedExtension, ValueError) as exc:
        raise UnsupportedExtension(f"cannot split {m} with square roots alone") from exc
    if quads[0] * quads[1] != m:
        raise UnsupportedExtension(f"cannot split {m} with square roots alone")
    return quads


def _lower_half_root_factor(quad: Poly) -> Poly:
    """For a monic real quadratic with imaginary roots b +- i*d, the linear
    factor z - (b - i*d) with its root in the lower half plane."""
    b = -(quad[1].as_real()) / 2
    d2 = quad[0].as_real() - b * b
    d = d2.sqrt()
    return Poly([CoeffScalar(-b, d), CoeffScalar(1)])


def norm_factor(f: Poly) -> Poly:
    """A complex polynomial p with p * conj(p) = f, for positive f."""
    if not is_real_positive(f):
        raise ValueError("strictly positive polynomial required")
    lead, quads = real_quadratic_factors(f)
    p = Poly.const(CoeffScalar(lead.sqrt()))
    for quad, mult in quads:
        p = p * quad ** (mult // 2)
        if mult % 2:
            p = p * _lower_half_root_factor(quad)
    if p * p.conj() != f:
        raise RuntimeError("norm factorization failed to verify")
    return p


def quadratic_decomp(f: Poly) -> tuple[Poly, TowerReal]:
    """Write a positive monic quadratic as a(z)^2 + c*(z^2 - 1), 0 < c <= 1."""
    if f.degree != 2 or f.lead() != CoeffScalar(1):
        raise ValueError("monic quadratic required")
    if not is_real_positive(f):
        raise ValueError("strictly positive polynomial required")
    b = -(f[1].as_real()) / 2
    f0 = f[0].as_real()
    if not b:
        # f = z^2 + d^2: take c = 1, a = sqrt(d^2 + 1)
        a = Poly.const(CoeffScalar((f0 + 1).sqrt()))
        c = TowerReal.from_rational(1)
    else:
        big = f0 - 1  # b^2 + d^2 - 1
        c = ((big * big + 4 * (f0 - b * b)).sqrt() - big) / 2
        s = (TowerReal.from_rational(1) - c).sqrt()
        a = Poly([-b / s, s])
    c_poly = Poly.const(CoeffScalar(c))
    if a * a + c_poly * Poly([-1, 0, 1]) != f:
        raise RuntimeError("quadratic decomposition failed to verify")
    return a, c


def _v_product(first: tuple[Poly, Poly], second: tuple[Poly, Poly]) -> tuple[Poly, Poly]:
    # (a^2 + P w)(b^2 + Q w) = (ab)^2 + w * (a^2 Q + P (b^2 + Q w)),  w = z^2 - 1
    a, p = first
    b, q = second
    w = Poly([-1, 0, 1])
    return a * b, a * a * q + p * (b * b + q * w)


def v_decomp(f: Poly) -> tuple[Poly, Poly]:
    """Write a positive real polynomial as a^2 + P*(z^2-1), P positive.

    For nonconstant f the returned P is strictly positive on R.  A positive
    constant c admits no witness with P > 0 (the right side would have to be
    nonconstant), so constants return the degenerate pair (sqrt(c), 0);
    callers treat P = 0 as the diagonal boundary case.  Composite inputs are
    split into quadratics and folded with the product rule.
    """
    if not is_real_positive(f):
        raise ValueError("strictly positive polynomial required")
    lead, quads = real_quadratic_factors(f)
    acc = (Poly.const(CoeffScalar(lead.sqrt())), Poly())
    for quad, mult in quads:
        a, c = quadratic_decomp(quad)
        for _ in range(mult):
            acc = _v_product(acc, (a, Poly.const(CoeffScalar(c))))
    a, p = acc
    if a * a + p * Poly([-1, 0, 1]) != f:
        raise RuntimeError("V-decomposition failed to verify")
    if f.degree > 0 and not is_real_positive(p):
        raise RuntimeError("V-decomposition produced non-positive P")
    return a, p
