"""Places of Q, normalized absolute values and exact logarithms.

Every height of a rational point is the logarithm of a positive rational,
and every height of an algebraic point of degree e is (1/e) times such a
logarithm plus a Mahler-measure term.  ``LogVal`` stores ``log(q) / n``
exactly so that threshold comparisons like ``m >= t*h`` reduce to integer
power comparisons.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

import flint

from .errors import ParseError, ZeroInput

DEFAULT_PREC = 64


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {x!r}") from exc


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ZeroInput("valuation of 0")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rat_valuation(x: Fraction, p: int) -> int:
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    if n <= 1:
        return []
    return [int(p) for p, _ in flint.fmpz(n).factor()]


# --------------------------------------------------------------------------
# places


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q; ``p == 0`` encodes the archimedean place."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (self.p > 1 and flint.fmpz(self.p).is_prime()):
            raise ValueError(f"{self.p} is not a prime")

    @property
    def is_archimedean(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "inf" if self.p == 0 else str(self.p)

    @classmethod
    def parse(cls, s) -> "Place":
        if isinstance(s, Place):
            return s
        s = str(s).strip().lower()
        if s in ("inf", "infinity", "oo", "arch", "archimedean"):
            return ARCH
        try:
            return cls(int(s))
        except ValueError as exc:
            raise ParseError(f"bad place {s!r}") from exc


ARCH = Place(0)


class PlaceSet(tuple):
    """Deduplicated finite set of places, archimedean first then primes ascending."""

    def __new__(cls, places: Iterable = ()):
        ps = sorted({Place.parse(v) for v in places})
        return super().__new__(cls, ps)

    @classmethod
    def parse(cls, spec) -> "PlaceSet":
        if isinstance(spec, PlaceSet):
            return spec
        if isinstance(spec, str):
            spec = spec.strip().strip("{}")
            return cls(s for s in spec.split(",") if s.strip())
        return cls(spec)

    @property
    def has_archimedean(self) -> bool:
        return bool(self) and self[0].is_archimedean

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(v.p for v in self if not v.is_archimedean)

    def __str__(self):
        return "{" + ",".join(str(v) for v in self) + "}"


# --------------------------------------------------------------------------
# exact logarithms


def _to_dyadic(x) -> Fraction:
    man, exp = x.man_exp()
    man, exp = int(man), int(exp)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


@dataclass(frozen=True)
class RealEnclosure:
    """Closed interval [lo, hi] with dyadic endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @classmethod
    def from_arb(cls, x) -> "RealEnclosure":
        mid, rad = _to_dyadic(x.mid()), _to_dyadic(x.rad())
        return cls(mid - rad, mid + rad)

    @classmethod
    def point(cls, x) -> "RealEnclosure":
        x = as_fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        if not isinstance(other, RealEnclosure):
            other = RealEnclosure.point(other)
        return RealEnclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RealEnclosure(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RealEnclosure":
        c = as_fraction(c)
        a, b = self.lo * c, self.hi * c
        return RealEnclosure(min(a, b), max(a, b))

    def abs(self) -> "RealEnclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealEnclosure(Fraction(0), max(-self.lo, self.hi))

    def __float__(self):
        return self.mid

    def __repr__(self):
        return f"RealEnclosure([{float(self.lo):.12g}, {float(self.hi):.12g}])"


class LogVal:
    """The exact real number ``log(q) / n`` with ``q`` a positive rational."""

    __slots__ = ("q", "n")

    def __init__(self, q=1, n: int = 1):
        q = as_fraction(q)
        if q <= 0:
            raise ZeroInput(f"log of non-positive {q}")
        if n <= 0:
            raise ValueError("denominator must be positive")
        if q == 1:
            n = 1
        self.q = q
        self.n = int(n)

    @classmethod
    def zero(cls) -> "LogVal":
        return cls(1, 1)

    @classmethod
    def log_of(cls, x) -> "LogVal":
        """log|x| for a nonzero rational x."""
        x = as_fraction(x)
        if x == 0:
            raise ZeroInput("log|0|")
        return cls(abs(x), 1)

    @classmethod
    def sum(cls, items: Iterable["LogVal"]) -> "LogVal":
        total = cls.zero()
        for v in items:
            total = total + v
        return total

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "LogVal") -> "LogVal":
        if not isinstance(other, LogVal):
            return NotImplemented
        if other.q == 1:
            return self
        if self.q == 1:
            return other
        n = lcm(self.n, other.n)
        return LogVal(self.q ** (n // self.n) * other.q ** (n // other.n), n)

    def __neg__(self) -> "LogVal":
        return LogVal(1 / self.q, self.n)

    def __sub__(self, other: "LogVal") -> "LogVal":
        return self + (-other)

    def scale(self, c) -> "LogVal":
        """c * self for a rational c."""
        c = as_fraction(c)
        if c == 0 or self.q == 1:
            return LogVal.zero()
        num, den = c.numerator, c.denominator
        return LogVal(self.q**num, self.n * den)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    # comparisons ----------------------------------------------------------

    def sign(self) -> int:
        return (self.q > 1) - (self.q < 1)

    def is_zero(self) -> bool:
        return self.q == 1

    def __eq__(self, other):
        if not isinstance(other, LogVal):
            return NotImplemented
        return self.q**other.n == other.q**self.n

    def __hash__(self):
        return hash(("LogVal", float(self)))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # numerics -------------------------------------------------------------

    def arb(self, prec: int = DEFAULT_PREC):
        with flint.ctx.workprec(prec + 16):
            q = flint.fmpq(self.q.numerator, self.q.denominator)
            return flint.arb(q).log() / self.n

    def enclosure(self, prec: int = DEFAULT_PREC) -> RealEnclosure:
        if self.q == 1:
            return RealEnclosure.point(0)
        return RealEnclosure.from_arb(self.arb(prec))

    def __float__(self):
        return self.enclosure(60).mid

    def __repr__(self):
        if self.n == 1:
            return f"LogVal(log {self.q})"
        return f"LogVal(log({self.q})/{self.n})"


# --------------------------------------------------------------------------
# operations


def norm_at(x, v: Place) -> LogVal:
    """log ||x||_v with |p|_p = 1/p."""
    x = as_fraction(x)
    if x == 0:
        raise ZeroInput("norm of 0")
    if v.is_archimedean:
        return LogVal.log_of(x)
    e = rat_valuation(x, v.p)
    return LogVal(Fraction(1, v.p**e) if e >= 0 else Fraction(v.p**-e), 1)


def support(x: Fraction) -> list[Place]:
    """The places where x is not a unit, plus the archimedean place."""
    x = as_fraction(x)
    primes = set(prime_factors(x.numerator)) | set(prime_factors(x.denominator))
    return [ARCH] + [Place(p) for p in sorted(primes)]


def product_formula_defect(x) -> LogVal:
    """Sum of log ||x||_v over all places; exactly zero for nonzero x."""
    x = as_fraction(x)
    if x == 0:
        raise ZeroInput("product formula for 0")
    return LogVal.sum(norm_at(x, v) for v in support(x))


def compare_scaled(a: LogVal, t, b: LogVal) -> Ordering:
    """Exact ordering of ``a`` against ``t * b`` (t rational, t >= 0)."""
    t = as_fraction(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    r, s = t.numerator, t.denominator
    # log(qa)/na  vs  (r/s) log(qb)/nb   <=>   qa^(s nb)  vs  qb^(r na)
    lhs = a.q ** (s * b.n)
    rhs = b.q ** (r * a.n)
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def enclosure_sign(x: RealEnclosure) -> int | None:
    """Certified sign of an enclosure, or None when it straddles zero."""
    if x.lo > 0:
        return 1
    if x.hi < 0:
        return -1
    if x.lo == x.hi == 0:
        return 0
    return None


def content(coeffs: Iterable[int]) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, int(c))
    return g
