"""Exact arithmetic in Q(i) extended by square roots of positive rationals.

A real tower element is stored as a finite sum  sum_m  c_m * sqrt(m)  where
the keys m are distinct squarefree positive integers (m = 1 carries the
rational part) and the c_m are nonzero Fractions.  Since the square roots of
distinct squarefree integers are linearly independent over Q, equality is a
coefficient comparison and the representation is canonical.  Multiplication
closes because sqrt(m)*sqrt(n) = g*sqrt(mn/g^2) with g = gcd(m, n).

Signs of nonzero elements are decided by refining rational interval
enclosures of the square roots; a decided sign never flips under further
refinement.  Square roots of tower elements are computed by a recursive
denesting on the primes of the support and raise UnsupportedExtension when
the result lies outside every real multi-quadratic tower.

Complex scalars are pairs (re, im) of tower reals representing re + im*i.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from .errors import UnsupportedExtension

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def _factorint(n: int) -> dict[int, int]:
    """Factor a positive integer by trial division plus Pollard rho."""
    if n <= 0:
        raise ValueError("positive integer expected")
    factors: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n == 1:
        return factors
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return factors


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s^2 * m and m squarefree, for n > 0."""
    s, m = 1, 1
    for p, e in _factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def _sqrt_interval(m: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of sqrt(m) with width 2^-bits."""
    scale = 1 << bits
    lo = math.isqrt(m * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


class TowerReal:
    """Element of Q(sqrt(d_1), ..., sqrt(d_k)) for positive rational d_i."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def _make(cls, terms: dict[int, Fraction]) -> TowerReal:
        """Fast constructor for term dicts known to carry no zero values."""
        out = object.__new__(cls)
        out._terms = terms
        return out

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> TowerReal:
        q = Fraction(q)
        return cls({1: q}) if q else cls()

    @classmethod
    def sqrt_rational(cls, q) -> TowerReal:
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("nonnegative rational expected")
        if q == 0:
            return cls()
        s, m = squarefree_decompose(q.numerator * q.denominator)
        return cls({m: Fraction(s, q.denominator)})

    # -- structure ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_rational(self) -> bool:
        return all(m == 1 for m in self._terms)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def support_primes(self) -> set[int]:
        primes: set[int] = set()
        for m in self._terms:
            if m != 1:
                primes.update(_factorint(m))
        return primes

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> TowerReal:
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a:
            return other
        if not b:
            return self
        terms = dict(a)
        for m, c in b.items():
            terms[m] = terms.get(m, _ZERO_FRACTION) + c
        return TowerReal(terms)

    __radd__ = __add__

    def __neg__(self) -> TowerReal:
        return TowerReal._make({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_tower(other) + (-self)

    def __mul__(self, other) -> TowerReal:
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _TOWER_ZERO
        if len(a) == 1 and 1 in a:
            c = a[1]
            return TowerReal._make({m: c * d for m, d in b.items()})
        if len(b) == 1 and 1 in b:
            d = b[1]
            return TowerReal._make({m: c * d for m, c in a.items()})
        terms: dict[int, Fraction] = {}
        for m, c in a.items():
            for n, d in b.items():
                g = math.gcd(m, n)
                key = (m // g) * (n // g)
                terms[key] = terms.get(key, _ZERO_FRACTION) + c * d * g
        return TowerReal(terms)

    __rmul__ = __mul__

    def inverse(self) -> TowerReal:
        """Field inverse, via the product of Galois conjugates."""
        if not self._terms:
            raise ZeroDivisionError("tower zero has no inverse")
        if self.is_rational():
            return TowerReal.from_rational(1 / self.as_rational())
        primes = sorted(self.support_primes())
        conj = TowerReal.from_rational(1)
        for mask in range(1, 1 << len(primes)):
            flips = {p for k, p in enumerate(primes) if mask >> k & 1}
            conj = conj * self._galois(flips)
        denom = (self * conj).as_rational()
        return conj * TowerReal.from_rational(Fraction(1) / denom)

    def _galois(self, flips: set[int]) -> TowerReal:
        terms = {}
        for m, c in self._terms.items():
            parity = sum(1 for p in flips if m % p == 0)
            terms[m] = -c if parity % 2 else c
        return TowerReal(terms)

    def __truediv__(self, other):
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce_tower(other) * self.inverse()

    def __pow__(self, n: int) -> TowerReal:
        if n < 0:
            return self.inverse() ** (-n)
        result = TowerReal.from_rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce_tower(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}, decided by interval refinement."""
        if not self._terms:
            return 0
        if self.is_rational():
            q = self.as_rational()
            return (q > 0) - (q < 0)
        bits = 16
        while True:
            lo = hi = Fraction(0)
            for m, c in self._terms.items():
                slo, shi = _sqrt_interval(m, bits)
                if c >= 0:
                    lo += c * slo
                    hi += c * shi
                else:
                    lo += c * shi
                    hi += c * slo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
            if bits > 1 << 20:  # unreachable for nonzero exact input
                raise RuntimeError("sign refinement failed to terminate")

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self) -> TowerReal:
        return -self if self.sign() < 0 else self

    def interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational enclosure with width about 2^-bits per term."""
        lo = hi = Fraction(0)
        for m, c in self._terms.items():
            slo, shi = _sqrt_interval(m, bits)
            if c >= 0:
                lo, hi = lo + c * slo, hi + c * shi
            else:
                lo, hi = lo + c * shi, hi + c * slo
        return lo, hi

    def __float__(self) -> float:
        lo, hi = self.interval(64)
        return float((lo + hi) / 2)

    # -- square roots ----------------------------------------------------------

    def sqrt(self) -> TowerReal:
        """Exact nonnegative square root inside a real quadratic tower.

        Rationals always succeed (a new radicand is adjoined if needed);
        irrational inputs succeed exactly when recursive denesting on the
        support primes bottoms out in rational squares.  Inputs whose root
        generates a non-multiquadratic field (e.g. sqrt(2 - sqrt(2))) raise
        UnsupportedExtension.
        """
        return self._sqrt(budget=[256])

    def _sqrt(self, budget: list[int]) -> TowerReal:
        budget[0] -= 1
        if budget[0] <= 0:
            raise UnsupportedExtension(f"no tower square root found for {self}")
        s = self.sign()
        if s < 0:
            raise ValueError("square root of negative tower element")
        if s == 0:
            return TowerReal()
        if self.is_rational():
            return TowerReal.sqrt_rational(self.as_rational())
        p = max(self.support_primes())
        inner = {m: c for m, c in self._terms.items() if m % p == 0}
        outer = {m: c for m, c in self._terms.items() if m % p != 0}
        a = TowerReal(outer)
        bprime = TowerReal({m // p: c for m, c in inner.items()})  # self = a + bprime*sqrt(p)
        try:
            # A root C + D*sqrt(p) needs C, D in the p-free subfield, hence
            # C^2 - D^2 p = +-sqrt(a^2 - p b'^2) must stay p-free as well.
            disc = (a * a - bprime * bprime * p)._sqrt(budget)
            if p in disc.support_primes():
                raise UnsupportedExtension(f"no tower square root for {self}")
            c = None
            for chalf in ((a + disc) / 2, (a - disc) / 2):
                if not chalf or chalf.sign() < 0:
                    continue
                try:
                    cand = chalf._sqrt(budget)
                except (UnsupportedExtension, ValueError):
                    continue
                if cand and p not in cand.support_primes():
                    c = cand
                    break
            if c is None:
                raise UnsupportedExtension(f"no tower square root for {self}")
            d = bprime / (2 * c)
        except (UnsupportedExtension, ValueError) as exc:
            raise UnsupportedExtension(f"no tower square root for {self}") from exc
        root = c + d * TowerReal({p: Fraction(1)})
        if root * root != self:
            raise UnsupportedExtension(f"no tower square root for {self}")
        return abs(root)

    # -- display -----------------------------------------------------------------

    def __repr__(self) -> str:
        return f"TowerReal({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms):
            c = self._terms[m]
            if m == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({m})")
            elif c == -1:
                parts.append(f"-sqrt({m})")
            else:
                parts.append(f"{c}*sqrt({m})")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


_ZERO_FRACTION = Fraction(0)
_TOWER_ZERO = TowerReal()


def _coerce_tower(x):
    if isinstance(x, TowerReal):
        return x
    if isinstance(x, (int, Fraction)):
        return TowerReal.from_rational(x)
    return NotImplemented


class CoeffScalar:
    """Element re + im*i of Q(i) extended by a real quadratic tower."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, TowerReal) else TowerReal.from_rational(re)
        self.im = im if isinstance(im, TowerReal) else TowerReal.from_rational(im)

    @classmethod
    def i(cls) -> CoeffScalar:
        return cls(0, 1)

    @classmethod
    def from_rational(cls, q) -> CoeffScalar:
        return cls(Fraction(q))

    def conj(self) -> CoeffScalar:
        return CoeffScalar(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_rational(self) -> bool:
        return self.im.sign() == 0 and self.re.is_rational()

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.re.as_rational()

    def as_real(self) -> TowerReal:
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return self.re

    def norm(self) -> TowerReal:
        """The real value |self|^2."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return CoeffScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return CoeffScalar(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_scalar(other) + (-self)

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            return CoeffScalar(self.re * other.re)
        return CoeffScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> CoeffScalar:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("scalar zero has no inverse")
        ninv = n.inverse()
        return CoeffScalar(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce_scalar(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CoeffScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def sqrt(self) -> CoeffScalar:
        """A complex square root within the tower, or UnsupportedExtension."""
        if not self:
            return CoeffScalar(0)
        if self.is_real():
            r = self.re
            if r.sign() >= 0:
                return CoeffScalar(r.sqrt())
            return CoeffScalar(0, (-r).sqrt())
        try:
            mod = self.norm().sqrt()
            re2 = (mod + self.re) / 2
            im2 = (mod - self.re) / 2
            re_root = re2.sqrt()
            im_root = im2.sqrt()
        except (UnsupportedExtension, ValueError) as exc:
            raise UnsupportedExtension(f"no tower square root for {self}") from exc
        cand = CoeffScalar(re_root, im_root if self.im.sign() >= 0 else -im_root)
        if cand * cand != self:
            raise UnsupportedExtension(f"no tower square root for {self}")
        return cand

    def __repr__(self):
        return f"CoeffScalar({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = str(self.im)
        im_part = "i" if im == "1" else "-i" if im == "-1" else f"({im})*i"
        if not self.re:
            return im_part
        joiner = "" if im_part.startswith("-") else "+"
        return f"{self.re}{joiner}{im_part}"


def _coerce_scalar(x):
    if isinstance(x, CoeffScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return CoeffScalar(Fraction(x))
    if isinstance(x, TowerReal):
        return CoeffScalar(x)
    return NotImplemented


ZERO = CoeffScalar(0)
ONE = CoeffScalar(1)
I = CoeffScalar.i()


def scalar(x) -> CoeffScalar:
    """Coerce an int, Fraction, TowerReal or CoeffScalar to CoeffScalar."""
    out = _coerce_scalar(x)
    if out is NotImplemented:
        raise TypeError(f"cannot coerce {x!r} to CoeffScalar")
    return out


def product(values, start=None):
    """Product of an iterable of scalars."""
    return reduce(lambda a, b: a * b, values, ONE if start is None else start)
