"""Integer Picard lattices of the blown-up sphere with their real structure.

The complex sphere is a smooth quadric; blowing up r pairs of conjugate
imaginary points gives a Del Pezzo surface of degree 8 - 2r whose lattice
has basis f, fbar (the two rulings) and the exceptional classes in
conjugate pairs.  The real structure swaps f with fbar and each class with
its partner.  Curve classes are enumerated by exact search, automorphisms
are validated against the intersection form and the canonical class, and
the printed matrices of the degree-4 story (the two order-2 automorphisms
preserving a conic bundle, the rank-1 kernel elements, and the rejected
half-integer actions) ship as data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateConfiguration, NotAutomorphism
from .scalars import CoeffScalar, scalar

Vector = tuple[int, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def _frac_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(c) for c in row) for row in rows)


def _mat_vec(m: Matrix, v) -> tuple[Fraction, ...]:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _mat_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def _identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [c / pv for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [c - factor * p for c, p in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


@dataclass(frozen=True)
class PicLattice:
    """Intersection lattice with canonical class and real-structure action."""

    degree: int
    labels: tuple[str, ...]
    gram: Matrix
    canonical: Vector  # K
    sigma: Matrix

    @property
    def rank(self) -> int:
        return len(self.labels)

    def dot(self, v, w) -> Fraction:
        return sum(
            self.gram[i][j] * v[i] * w[j] for i in range(self.rank) for j in range(self.rank)
        )

    def k_square(self) -> Fraction:
        return self.dot(self.canonical, self.canonical)


def lattice_make(degree: int) -> PicLattice:
    if degree not in (8, 6, 4, 2):
        raise ValueError("degree must be one of 8, 6, 4, 2")
    pairs = (8 - degree) // 2
    labels = ["f", "fbar"]
    point_names = ["p", "q", "r"][:pairs]
    for name in point_names:
        labels += [f"E_{name}", f"E_{name}bar"]
    n = len(labels)
    gram = [[Fraction(0)] * n for _ in range(n)]
    gram[0][1] = gram[1][0] = Fraction(1)
    for k in range(2, n):
        gram[k][k] = Fraction(-1)
    canonical = tuple([-2, -2] + [1] * (n - 2))
    sigma = [[Fraction(0)] * n for _ in range(n)]
    sigma[0][1] = sigma[1][0] = Fraction(1)
    for k in range(2, n, 2):
        sigma[k][k + 1] = sigma[k + 1][k] = Fraction(1)
    return PicLattice(degree, tuple(labels), _frac_matrix(gram), canonical, _frac_matrix(sigma))


def _enumerate_exceptional(lat: PicLattice, self_int: int, k_int: int) -> list[Vector]:
    """Integer classes with C*C = self_int and C*K = k_int, by pruned search."""
    n_exc = lat.rank - 2
    out: list[Vector] = []
    bound_xy = 4
    for x in range(-bound_xy, bound_xy + 1):
        for y in range(-bound_xy, bound_xy + 1):
            # C = x f + y fbar + sum a_i E_i: C*C = 2xy - sum a^2, K*C = -2(x+y) - sum a
            sumsq = 2 * x * y - self_int
            asum = -k_int - 2 * (x + y)
            if sumsq < 0:
                continue
            for avec in _sum_square_solutions(n_exc, asum, sumsq, 3):
                out.append((x, y) + avec)
    return sorted(out)


def _sum_square_solutions(n: int, total: int, total_sq: int, bound: int):
    """Integer vectors of length n with given sum and sum of squares."""
    if n == 0:
        if total == 0 and total_sq == 0:
            yield ()
        return
    if total * total > total_sq * n:  # Cauchy-Schwarz prune
        return
    if n == 1:
        if -bound <= total <= bound and total * total == total_sq:
            yield (total,)
        return
    for a in range(-bound, bound + 1):
        rem_sq = total_sq - a * a
        if rem_sq < 0:
            continue
        for rest in _sum_square_solutions(n - 1, total - a, rem_sq, bound):
            yield (a,) + rest


def minus_one_classes(lat: PicLattice) -> list[Vector]:
    """All classes with C*C = C*K = -1 (the exceptional curves)."""
    return _enumerate_exceptional(lat, -1, -1)


def conic_classes(lat: PicLattice) -> list[Vector]:
    """Classes with C*C = 0 and C*K = -2 (the conic bundle fibers)."""
    return _enumerate_exceptional(lat, 0, -2)


def conic_pairs(lat: PicLattice) -> list[tuple[Vector, Vector]]:
    """The conic classes grouped so each pair sums to -K."""
    classes = conic_classes(lat)
    mk = tuple(-c for c in lat.canonical)
    pairs = []
    seen = set()
    for c in classes:
        if c in seen:
            continue
        partner = tuple(m - ci for m, ci in zip(mk, c))
        if partner not in classes:
            raise RuntimeError(f"conic class {c} has no partner summing to -K")
        seen.add(c)
        seen.add(partner)
        pairs.append((c, partner) if c <= partner else (partner, c))
    return sorted(set(pairs))


def is_lattice_aut(lat: PicLattice, rows) -> bool:
    """Integrality, intersection-form preservation, and K-fixing."""
    m = _frac_matrix(rows)
    if len(m) != lat.rank or any(len(r) != lat.rank for r in m):
        raise ValueError("matrix size does not match the lattice rank")
    if any(c.denominator != 1 for row in m for c in row):
        return False
    if _mat_mul(_mat_transpose(m), _mat_mul(lat.gram, m)) != lat.gram:
        return False
    return _mat_vec(m, lat.canonical) == tuple(Fraction(c) for c in lat.canonical)


def invariant_rank(lat: PicLattice, gens) -> int:
    """Rank of the common fixed sublattice of the given automorphisms."""
    mats = [_frac_matrix(g) for g in gens]
    for m in mats:
        if not is_lattice_aut(lat, m):
            raise NotAutomorphism("generator does not preserve the lattice data")
    stacked: list[list[Fraction]] = []
    ident = _identity(lat.rank)
    for m in mats:
        for i in range(lat.rank):
            stacked.append([m[i][j] - ident[i][j] for j in range(lat.rank)])
    return lat.rank - _rank(stacked)


def geiser_matrix(lat: PicLattice) -> Matrix:
    """The involution D -> (D*K) K - D on the degree-2 lattice."""
    if lat.degree != 2:
        raise ValueError("the anticanonical double cover involution needs degree 2")
    cols = []
    for j in range(lat.rank):
        e = tuple(1 if i == j else 0 for i in range(lat.rank))
        ke = lat.dot(e, lat.canonical)
        cols.append([ke * k - ei for k, ei in zip(lat.canonical, e)])
    return tuple(tuple(Fraction(cols[j][i]) for j in range(lat.rank)) for i in range(lat.rank))


def geiser_action(lat: PicLattice, v) -> Vector:
    kv = lat.dot(v, lat.canonical)
    return tuple(int(kv * k - vi) for k, vi in zip(lat.canonical, v))


def order3_rank_check(lat: PicLattice, rows) -> int:
    """For an order-3 automorphism of the degree-2 lattice fixing K, the
    invariant rank together with the real structure is at least 2."""
    if lat.degree != 2:
        raise ValueError("degree-2 lattice expected")
    m = _frac_matrix(rows)
    if not is_lattice_aut(lat, m):
        raise NotAutomorphism("matrix does not preserve the lattice data")
    ident = _identity(lat.rank)
    if m == ident or _mat_mul(m, _mat_mul(m, m)) != ident:
        raise ValueError("order-3 matrix expected")
    rank = invariant_rank(lat, [m, lat.sigma])
    if rank < 2:
        raise RuntimeError(
            "order-3 automorphism with invariant rank < 2 contradicts the classification"
        )
    return rank


# -- shipped degree-4 matrices (basis f, fbar, E_p, E_pbar, E_q, E_qbar) ------------------


def g1_matrix() -> Matrix:
    return _frac_matrix(
        [
            [2, 1, 1, 1, 1, 1],
            [1, 2, 1, 1, 1, 1],
            [-1, -1, 0, -1, -1, -1],
            [-1, -1, -1, 0, -1, -1],
            [-1, -1, -1, -1, -1, 0],
            [-1, -1, -1, -1, 0, -1],
        ]
    )


def g2_matrix() -> Matrix:
    return _frac_matrix(
        [
            [2, 1, 1, 1, 1, 1],
            [1, 2, 1, 1, 1, 1],
            [-1, -1, -1, 0, -1, -1],
            [-1, -1, 0, -1, -1, -1],
            [-1, -1, -1, -1, 0, -1],
            [-1, -1, -1, -1, -1, 0],
        ]
    )


def alpha1_matrix() -> Matrix:
    return _frac_matrix(
        [
            [1, 2, 1, 1, 1, 1],
            [2, 1, 1, 1, 1, 1],
            [-1, -1, -1, -1, -1, 0],
            [-1, -1, -1, -1, 0, -1],
            [-1, -1, -1, 0, -1, -1],
            [-1, -1, 0, -1, -1, -1],
        ]
    )


def alpha2_matrix() -> Matrix:
    """alpha1 conjugated by the swap of E_q with E_qbar."""
    swap = _frac_matrix(
        [
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 0],
        ]
    )
    return _mat_mul(swap, _mat_mul(alpha1_matrix(), swap))


def rejected_half_integer_matrices() -> tuple[Matrix, Matrix]:
    """The two printed candidate actions that fail integrality (the would-be
    exchanges of a single conic-bundle pair)."""
    h = Fraction(1, 2)
    first = (
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, h, -h, h, h),
        (0, 0, -h, h, h, h),
        (0, 0, h, h, -h, h),
        (0, 0, h, h, h, -h),
    )
    second = (
        (0, 1, 0, 0, 0, 0),
        (1, 0, 0, 0, 0, 0),
        (0, 0, h, h, -h, h),
        (0, 0, h, h, h, -h),
        (0, 0, -h, h, h, h),
        (0, 0, h, -h, h, h),
    )
    return _frac_matrix(first), _frac_matrix(second)


# -- the degree-4 surface in P^4 ----------------------------------------------------------


@dataclass(frozen=True)
class DP4Surface:
    """Intersection of the two quadrics cut out by blowing up the two pairs
    (1:0)(0:1), (1:1)(1:mu) and embedding anticanonically."""

    mu: CoeffScalar

    def __post_init__(self):
        m = self.mu
        if not m or m == CoeffScalar(1) or m == CoeffScalar(-1):
            raise DegenerateConfiguration("mu must avoid {0, 1, -1}")

    def quadrics(self) -> tuple[dict, dict]:
        """Monomial dictionaries {(i, j): coeff} for the two quadrics, with
        (i, j) the indices (1-based) of the coordinate pair."""
        m = self.mu
        mb = m.conj()
        n = m * mb
        c = 1 - mb + n - m
        q1 = {
            (1, 1): m - n + mb,
            (1, 2): CoeffScalar(-2),
            (2, 2): CoeffScalar(1),
            (3, 3): c,
            (4, 4): CoeffScalar(1),
        }
        q2 = {
            (1, 1): n,
            (1, 2): -2 * n,
            (2, 2): m - 1 + mb,
            (4, 4): n,
            (5, 5): c,
        }
        return q1, q2

    def eval_quadric(self, q: dict, point) -> CoeffScalar:
        pt = [scalar(c) for c in point]
        acc = CoeffScalar(0)
        for (i, j), coeff in q.items():
            acc = acc + coeff * pt[i - 1] * pt[j - 1]
        return acc

    def on_surface(self, point) -> bool:
        q1, q2 = self.quadrics()
        return not self.eval_quadric(q1, point) and not self.eval_quadric(q2, point)


SIGN_MAPS = {
    "gamma1": (1, 1, -1, 1, -1),
    "gamma2": (1, 1, 1, -1, -1),
    "gamma": (1, 1, -1, -1, -1),
    "alpha1": (1, 1, 1, 1, -1),
    "alpha2": (1, 1, -1, 1, 1),
}


def apply_coordinate_auto(name: str, point):
    if name not in SIGN_MAPS:
        raise ValueError(f"unknown coordinate automorphism {name!r}")
    signs = SIGN_MAPS[name]
    return tuple(scalar(c) * CoeffScalar(Fraction(s)) for c, s in zip(point, signs))


def sign_map_preserves_quadric(name: str, q: dict) -> bool:
    """Symbolic check: every monomial of q is even in the flipped variables."""
    signs = SIGN_MAPS[name]
    return all(signs[i - 1] * signs[j - 1] == 1 for (i, j) in q)


def image_rho_check(mu) -> bool:
    """Whether the surface has the extra automorphism swapping the two
    middle conic-bundle pairs: exactly when mu * conj(mu) = 1."""
    m = scalar(mu)
    if not m or m == CoeffScalar(1) or m == CoeffScalar(-1):
        raise DegenerateConfiguration("mu must avoid {0, 1, -1}")
    return m * m.conj() == CoeffScalar(1)


# -- anticanonical-system verification dataset ----------------------------------------------


def anticanonical_matrices(mu) -> dict[str, tuple[tuple[CoeffScalar, ...], ...]]:
    """The printed 5x5 actions of the three kernel generators on the
    anticanonical basis, plus the base change N to the diagonalising
    coordinates.  Shipped as verification data, not as lattice actions."""
    m = scalar(mu)
    mb = m.conj()
    i = CoeffScalar.i()
    one = CoeffScalar(1)
    zero = CoeffScalar(0)
    inv_m = m.inverse()
    m1 = (
        (zero, -(m - mb) * inv_m, one, m - mb, 1 - mb),
        (zero, one, zero, zero, zero),
        (one, zero, zero, m - mb, 1 - mb),
        (zero, inv_m, zero, -one, zero),
        (zero, zero, zero, zero, -one),
    )
    m2 = (
        (one, (2 * m - mb) * inv_m, zero, zero, 1 - mb),
        (zero, -one, zero, zero, zero),
        (zero, one, one, zero, m - 2 * mb + 1),
        (zero, -inv_m, zero, one, -one),
        (zero, zero, zero, zero, -one),
    )
    mm = (
        (zero, -(m - mb) * inv_m, one, m - mb, zero),
        (zero, one, zero, zero, zero),
        (one, zero, zero, m - mb, mb - m),
        (zero, inv_m, zero, -one, one),
        (zero, zero, zero, zero, one),
    )
    n = (
        (one, one, -one, -mb - m, mb),
        (zero, -inv_m, zero, 2 * one, -one),
        (one, one, one, m - mb, 1 - mb),
        (zero, zero, zero, zero, -i),
        (zero, -inv_m, zero, zero, zero),
    )
    return {"gamma1": m1, "gamma2": m2, "gamma": mm, "N": n}


def _cmat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _cmat_inverse(a):
    n = len(a)
    aug = [list(row) + [CoeffScalar(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [c - factor * p for c, p in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def verify_anticanonical_dataset(mu) -> bool:
    """Check that the base change N diagonalises the three shipped actions
    to the +-1 diagonals of the matching coordinate sign maps (up to an
    overall projective sign)."""
    data = anticanonical_matrices(mu)
    n = data["N"]
    n_inv = _cmat_inverse(n)
    for name in ("gamma1", "gamma2", "gamma"):
        diag = _cmat_mul(n, _cmat_mul(data[name], n_inv))
        expected = SIGN_MAPS[name]
        for overall in (1, -1):
            ok = True
            for r in range(5):
                for c in range(5):
                    want = CoeffScalar(Fraction(overall * expected[r])) if r == c else CoeffScalar(0)
                    if diag[r][c] != want:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                break
        else:
            return False
    return True


# -- moving point pairs to the standard position ---------------------------------------------


def normalize_point_pair(p, q):
    """Move two imaginary, non-conjugate points of the product of two lines
    into the standard pair (1:0)(0:1), (1:1)(1:mu).

    p and q are pairs ((r, s), (u, v)) of projective coordinates.  Returns
    (first_factor_matrix, mu); the sphere automorphism is the pair action
    of that matrix and its conjugate.  Degenerate configurations (mu in
    {0, 1, -1} or shared fibers) raise DegenerateConfiguration.
    """
    (r1, s1), (u1, v1) = (tuple(scalar(c) for c in f) for f in p)
    a = ((v1.conj(), -u1.conj()), (-s1, r1))
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if not det:
        raise DegenerateConfiguration("point shares a fiber with its conjugate")
    abar = tuple(tuple(c.conj() for c in row) for row in a)

    def act(mat, coord):
        return (
            mat[0][0] * coord[0] + mat[0][1] * coord[1],
            mat[1][0] * coord[0] + mat[1][1] * coord[1],
        )

    q1, q2 = (tuple(scalar(c) for c in f) for f in q)
    q1n, q2n = act(a, q1), act(abar, q2)
    if not q1n[1] or not q2n[1] or not q1n[0] or not q2n[0]:
        raise DegenerateConfiguration("second point lies on a fiber through the first pair")
    lam = q1n[0] / q1n[1]
    rho = q2n[0] / q2n[1]
    mu = lam.conj() / rho
    if not mu or mu == CoeffScalar(1) or mu == CoeffScalar(-1):
        raise DegenerateConfiguration(f"normalized parameter mu = {mu} is degenerate")
    scale_first = ((CoeffScalar(1), CoeffScalar(0)), (CoeffScalar(0), lam.inverse()))
    total = _cmat2_mul(scale_first, a)
    return total, mu


def _cmat2_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )
