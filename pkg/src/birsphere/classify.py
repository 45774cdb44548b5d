"""Classification reports: routing an input element to its conjugacy family.

The eight families are: (1) the degree-2 double-cover involution, (2) the
two special degree-4 involutions, (3) rotations, (4) the reflection, (5)
the antipodal map, (6) fiberwise involutions with a pointless fixed curve
of positive genus, (7) the orientation-reversing ones with a one-oval
fixed curve, and (8) base-flip involutions with nontrivial twist class.
Reports carry the family, its moduli datum, any certificates produced, and
explicit caveats for the strata the invariants do not separate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InfiniteOrderBase, NotFiniteOrder, ParseError
from .etatwist import FlipReport, TwistClass, classify_flip_involution, h2_invariant
from .involutions import (
    HyperellipticModel,
    TrivialBaseReport,
    classify_trivialbase,
    conj_decision,
    construct_conjugator,
    fixed_curve,
)
from .parsing import parse_matrix, parse_poly
from .picard import (
    alpha1_matrix,
    alpha2_matrix,
    geiser_matrix,
    invariant_rank,
    lattice_make,
    minus_one_classes,
)
from .poly import Poly
from .projmat import ProjMat
from .sphere import (
    BaseMobius,
    SphereMap,
    builtin_map,
    reduce_to_trivial_base,
)


@dataclass
class ClassificationReport:
    family: object  # 1..8, "linear-stratum", "rational-special", "reality-only", "out-of-scope"
    moduli: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)
    caveats: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "moduli": self.moduli,
            "certificates": self.certificates,
            "caveats": self.caveats,
        }


def model_to_json(model: HyperellipticModel) -> dict:
    return {"m": str(model.m), "sign": "+" if model.sign > 0 else "-"}


def _matrix_json(mat: ProjMat) -> list[list[str]]:
    a, b, c, d = mat.entries()
    return [[str(a), str(b)], [str(c), str(d)]]


def spheremap_to_json(g: SphereMap) -> dict:
    base = g.base
    if base.kind == "id":
        base_json: object = "id"
    elif base.kind == "neg":
        base_json = "neg"
    else:
        if not base.b.is_rational():
            raise ParseError("only rational interval parameters serialize")
        bq = base.b.as_rational()
        t = _shift_to_interval_t(bq)
        base_json = {"interval_t": str(t)} if t is not None else {"interval_b": str(bq)}
        if base.flip:
            base_json["flip"] = True
    return {"fiber": _matrix_json(g.fiber), "base": base_json}


def _shift_to_interval_t(bq: Fraction) -> Fraction | None:
    # b = 2t/(1+t^2) <=> t = (1 - sqrt(1-b^2))/b, rational for Pythagorean b
    s2 = 1 - bq * bq
    from math import isqrt

    num, den = s2.numerator, s2.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return (1 - Fraction(rn, rd)) / bq


def spheremap_from_json(data: dict) -> SphereMap:
    try:
        rows = data["fiber"]
        fiber = ProjMat.of(
            parse_poly(rows[0][0]),
            parse_poly(rows[0][1]),
            parse_poly(rows[1][0]),
            parse_poly(rows[1][1]),
        )
        base_json = data.get("base", "id")
        if base_json == "id":
            base = BaseMobius.identity()
        elif base_json == "neg":
            base = BaseMobius.negation()
        else:
            if "interval_t" in base_json:
                t = Fraction(base_json["interval_t"])
                b = Fraction(2 * t, 1 + t * t)
            else:
                b = Fraction(base_json["interval_b"])
            base = BaseMobius.shift(b)
            if base_json.get("flip"):
                base = BaseMobius(base.b, True)
        return SphereMap(fiber, base)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed sphere map JSON: {exc}") from exc


def parse_element(text: str) -> SphereMap:
    """Accept builtin:NAME, a matrix literal (trivial base), a diag(...)
    shorthand, or inline/loaded JSON."""
    text = text.strip()
    if text.startswith("builtin:"):
        return builtin_map(text[len("builtin:") :])
    if text.startswith("{"):
        return spheremap_from_json(json.loads(text))
    if text.startswith("diag(") and text.endswith(")"):
        inner = text[len("diag(") : -1]
        depth, cut = 0, None
        for k, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                cut = k
                break
        if cut is None:
            raise ParseError("diag(...) needs two comma-separated entries")
        a, d = parse_poly(inner[:cut]), parse_poly(inner[cut + 1 :])
        return SphereMap.trivial_base(ProjMat.diag(a, d))
    if text.startswith("[["):
        return SphereMap.trivial_base(parse_matrix(text))
    raise ParseError(f"cannot interpret element {text!r}")


# -- routing ------------------------------------------------------------------------------------


def classify_spheremap(g: SphereMap, max_order: int | None = None) -> ClassificationReport:
    if not g.reality_check():
        return ClassificationReport(
            family="out-of-scope",
            caveats=["element does not commute with the real structure"],
        )
    if g.base.kind == "shift":
        return ClassificationReport(
            family="reality-only",
            moduli={"base": str(g.base)},
            caveats=[
                "infinite order: interval shifts with b != 0 are never of finite order; "
                "reality verified, no conjugacy family applies"
            ],
        )
    caveats: list[str] = []
    certificates: list[dict] = []
    if g.base.kind == "flipped_shift":
        fiber, residual, conj = reduce_to_trivial_base(g)
        certificates.append(
            {
                "kind": "base-reduction",
                "conjugator": spheremap_to_json(conj),
                "residual_base": residual,
            }
        )
        g = SphereMap(fiber, BaseMobius.identity() if residual == "id" else BaseMobius.negation())
    n = g.order(max_order)
    if n is None:
        return ClassificationReport(
            family="reality-only",
            caveats=["order exceeds the detection cutoff; no family assigned"],
        )
    if n == 1:
        return ClassificationReport(family=3, moduli={"angle": [0, 1]}, caveats=["identity map"])
    if not _is_prime(n):
        caveats.append(f"order {n} is not prime; reporting the family of the cyclic generator")
    if g.base.kind == "neg":
        report = classify_flip_involution(g)
        return _from_flip_report(report, caveats, certificates)
    if not g.is_diffeo():
        out = ClassificationReport(
            family="out-of-scope",
            caveats=caveats
            + [
                "element is birational but contracts a real fiber, so it is not a "
                "birational diffeomorphism; fixed-curve data is still reported"
            ],
        )
        if n == 2:
            out.moduli["fixed_curve"] = model_to_json(fixed_curve(g.fiber))
        return out
    report = classify_trivialbase(g.fiber, max_order)
    return _from_trivial_report(report, caveats, certificates)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _from_trivial_report(rep: TrivialBaseReport, caveats, certificates) -> ClassificationReport:
    moduli: dict = {}
    if rep.angle is not None:
        moduli["angle"] = list(rep.angle)
    if rep.model is not None:
        moduli["fixed_curve"] = model_to_json(rep.model)
        moduli["genus"] = rep.model.genus()
    if rep.parameter is not None:
        moduli["parameter"] = str(rep.parameter)
        caveats = caveats + [
            "rational fixed curve without real points: conjugate to the base-flip "
            "family; the parameter is the branch value t^2"
        ]
    if rep.certificate is not None:
        certificates = certificates + [
            {
                "kind": "conjugation",
                "target": _matrix_json(rep.certificate.target),
                "conjugator": _matrix_json(rep.certificate.conjugator),
                "verified": rep.certificate.verify(),
            }
        ]
    if rep.rotation is not None:
        certificates = certificates + [
            {
                "kind": "rotation-normal-form",
                "conjugator": _matrix_json(rep.rotation.conjugator),
                "target": _matrix_json(rep.rotation.target),
                "verified": True,
            }
        ]
    return ClassificationReport(rep.family, moduli, certificates, caveats)


def _from_flip_report(rep: FlipReport, caveats, certificates) -> ClassificationReport:
    moduli = {"twist_class": rep.twist_class.to_json()}
    return ClassificationReport(rep.family, moduli, certificates, caveats + list(rep.caveats))


# -- the degree-4 and degree-2 routes ------------------------------------------------------------


def classify_dp4_datum(op: str, mu=None) -> ClassificationReport:
    """Family report for a named automorphism of the blown-up surfaces."""
    if op == "geiser":
        lat = lattice_make(2)
        rank = invariant_rank(lat, [geiser_matrix(lat), lat.sigma])
        return ClassificationReport(
            family=1,
            moduli={
                "surface_degree": 2,
                "invariant_rank": rank,
                "minus_one_classes": len(minus_one_classes(lat)),
            },
        )
    if op in ("alpha1", "alpha2"):
        lat = lattice_make(4)
        mat = alpha1_matrix() if op == "alpha1" else alpha2_matrix()
        rank = invariant_rank(lat, [mat, lat.sigma])
        moduli = {"surface_degree": 4, "operator": op, "invariant_rank": rank}
        if mu is not None:
            moduli["mu"] = str(mu)
        return ClassificationReport(family=2, moduli=moduli)
    raise ParseError(f"unknown surface operator {op!r} (expected alpha1, alpha2 or geiser)")


# -- conjugacy front end --------------------------------------------------------------------------


def decide_conjugacy(g1: SphereMap, g2: SphereMap) -> dict:
    """Conjugacy of two involutions, with a certificate when one is produced."""
    if g1.base.kind != g2.base.kind:
        kinds = {g1.base.kind, g2.base.kind}
        if kinds <= {"id", "neg"}:
            return {"conjugate": False, "reason": "different base actions"}
    if g1.base.kind == "neg":
        same = h2_invariant(g1) == h2_invariant(g2)
        return {
            "conjugate": same,
            "invariants": [h2_invariant(g1).to_json(), h2_invariant(g2).to_json()],
        }
    if not conj_decision(g1.fiber, g2.fiber):
        return {
            "conjugate": False,
            "fixed_curves": [
                model_to_json(fixed_curve(g1.fiber)),
                model_to_json(fixed_curve(g2.fiber)),
            ],
        }
    cert = construct_conjugator(g1.fiber, g2.fiber)
    return {
        "conjugate": True,
        "conjugator": _matrix_json(cert.conjugator),
        "verified": cert.verify(),
    }
