"""Morphisms of P^1 sending many divisor points to {0, inf}, and the exceptional set.

``Phi(D, d, t)`` is the set of morphisms of degree at most d with at least t
points of Supp D in the preimage of {0, inf}; ``Z(D, d, t)`` is the union of
their preimages of P^1(Q).  Membership of an algebraic point is decided
exactly in the power basis of Q(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, factorial
from typing import Iterator, Sequence

import flint

from .algebraic import AlgPoint
from .binforms import (
    as_rational,
    bf_clear,
    bf_degree,
    bf_eval,
    bf_linear,
    bf_mul,
    bf_parse,
    bf_prod,
    bf_raise,
    bf_str,
    bf_substitute,
    field_elem,
    field_inv,
    resultant,
)
from .errors import BadIndex, DegreeTooSmall, OnSupport, ParseError, UnsupportedRegime
from .exact_core import as_fraction
from .heights import Divisor1, ProjPoint

IN, OUT, UNSUPPORTED = "In", "Out", "Unsupported"


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class Rat1Map:
    """The morphism (x:y) -> (f1(x,y) : f2(x,y)) of P^1."""

    f1: tuple[int, ...]
    f2: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.f1) != len(self.f2):
            raise ValueError("forms must have the same degree")
        if len(self.f1) < 2:
            raise ValueError("constant maps are not morphisms")
        f1, f2 = bf_clear([self.f1, self.f2])
        if resultant(f1, f2) == 0:
            raise ValueError("forms share a root")
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)

    @classmethod
    def from_forms(cls, f1: Sequence, f2: Sequence, label: str = "") -> "Rat1Map":
        """Pad two forms of possibly different degree with powers of y."""
        k = max(len(f1), len(f2))
        return cls(bf_raise(f1, k - len(f1)), bf_raise(f2, k - len(f2)), label)

    @classmethod
    def parse(cls, s: str) -> "Rat1Map":
        parts = [p for p in s.replace(",", ";").split(";") if p.strip()]
        if len(parts) != 2:
            raise ParseError(f"expected 'f1; f2', got {s!r}")
        try:
            return cls.from_forms(bf_parse(parts[0]), bf_parse(parts[1]))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @property
    def degree(self) -> int:
        return len(self.f1) - 1

    def __call__(self, P: ProjPoint) -> ProjPoint:
        a, b = P.coords
        return ProjPoint((bf_eval(self.f1, a, b), bf_eval(self.f2, a, b)))

    def compose_mobius(self, m: tuple) -> "Rat1Map":
        """self o mu where mu(x:y) = (p x + q y : r x + s y), m = (p, q, r, s)."""
        return Rat1Map(bf_substitute(self.f1, m), bf_substitute(self.f2, m), self.label)

    def image(self, P: AlgPoint) -> ProjPoint | None:
        """phi(P) if it lies in P^1(Q), else None; exact."""
        if P.is_rational:
            return self(P.projpoint())
        g = flint.fmpq_poly(list(P.minpoly))
        A = field_elem(self.f1, g)
        B = field_elem(self.f2, g)
        if B == 0:
            return ProjPoint((1, 0))
        r = as_rational(A * field_inv(B, g) % g)
        return None if r is None else ProjPoint((r.numerator, r.denominator))

    def zero_pole_count(self, D: Divisor1) -> int:
        """|phi^-1({0, inf}) cap Supp D|."""
        n = 0
        for P in D.points:
            a, b = P.coords
            if bf_eval(self.f1, a, b) == 0 or bf_eval(self.f2, a, b) == 0:
                n += 1
        return n

    def strings(self) -> tuple[str, str]:
        return bf_str(self.f1), bf_str(self.f2)

    def __str__(self):
        s1, s2 = self.strings()
        return f"({s1} : {s2})"


@dataclass(frozen=True)
class IndexPair:
    """Disjoint index sets into the points of a divisor (zeros, poles)."""

    I1: tuple[int, ...]
    I2: tuple[int, ...]

    def validate(self, q: int, d: int | None = None):
        if len(self.I1) != len(self.I2) or not self.I1:
            raise BadIndex("index sets must be nonempty of equal size")
        if d is not None and len(self.I1) != d:
            raise BadIndex(f"index sets must have size {d}")
        if set(self.I1) & set(self.I2):
            raise BadIndex("index sets must be disjoint")
        if len(set(self.I1)) != len(self.I1) or len(set(self.I2)) != len(self.I2):
            raise BadIndex("repeated index")
        if any(not 0 <= i < q for i in self.I1 + self.I2):
            raise BadIndex("index out of range")


def _forms(D: Divisor1, idx: Sequence[int]) -> tuple:
    return bf_prod(bf_linear(*D.points[i].coords) for i in idx)


def _label(D: Divisor1, I) -> str:
    def names(idx):
        return "{" + ",".join(str(D.points[i]) for i in idx) + "}"

    return f"I1={names(I.I1)} I2={names(I.I2)}"


def phi_from_index(D: Divisor1, I: IndexPair) -> Rat1Map:
    I.validate(D.q)
    return Rat1Map(_forms(D, I.I1), _forms(D, I.I2), _label(D, I))


def index_pairs(q: int, d: int) -> Iterator[IndexPair]:
    for I1 in combinations(range(q), d):
        rest = [i for i in range(q) if i not in I1]
        for I2 in combinations(rest, d):
            yield IndexPair(I1, I2)


def multinomial_count(q: int, d: int) -> int:
    if q < 2 * d:
        return 0
    return factorial(q) // (factorial(d) ** 2 * factorial(q - 2 * d))


def enumerate_phi(D: Divisor1, d: int, t) -> list[Rat1Map]:
    """All phi_I for t > 2d - 1; empty when q < 2d or t > 2d."""
    t = as_fraction(t)
    if d < 1:
        raise ValueError("d must be positive")
    if t <= 2 * d - 1:
        raise UnsupportedRegime(f"t = {t} <= 2d - 1 = {2 * d - 1}: Phi is not finite in general")
    if t > 2 * d:
        return []
    return phi_I_list(D, d)


def phi_I_list(D: Divisor1, d: int) -> list[Rat1Map]:
    """The maps phi_I for every index pair of size d (Phi itself when 2d - 1 < t <= 2d)."""
    return [phi_from_index(D, I) for I in index_pairs(D.q, d)]


@dataclass(frozen=True)
class Profile:
    images: tuple[ProjPoint, ...]
    counts: tuple[int, ...]


def pullback_profile(phi: Rat1Map, D: Divisor1) -> Profile:
    """Images phi(P_i) with multiplicities n_1 >= n_2 >= ..."""
    tally: dict[ProjPoint, int] = {}
    for P in D.points:
        Q = phi(P)
        tally[Q] = tally.get(Q, 0) + 1
    items = sorted(tally.items(), key=lambda kv: (-kv[1], kv[0].coords))
    return Profile(tuple(k for k, _ in items), tuple(v for _, v in items))


# --------------------------------------------------------------------------
# witnesses


def _free_integers(D: Divisor1, avoid=()) -> Iterator[int]:
    used = {p.affine() for p in D.points} | set(avoid)
    s = 0
    while True:
        for c in (s, -s) if s else (0,):
            if Fraction(c) not in used:
                yield c
        s += 1


def _phi_with_counts(D: Divisor1, d: int, c: int) -> Rat1Map:
    """Some phi of degree d with exactly c points of D over {0, inf} (c <= min(2d, q))."""
    n0 = min(d, c)
    zeros, poles = list(range(n0)), list(range(n0, c))
    free = _free_integers(D)
    e0, e1 = next(free), next(free)
    f1 = bf_mul(_forms(D, zeros), bf_prod([bf_linear(e0, 1)] * (d - len(zeros))))
    f2 = bf_mul(_forms(D, poles), bf_prod([bf_linear(e1, 1)] * (d - len(poles))))
    return Rat1Map(f1, f2, "counts")


def rem_witness(P: AlgPoint, D: Divisor1, d: int, t: int) -> Rat1Map:
    """phi with phi(P) = 1, deg phi <= d and t points of D over {0, inf}."""
    if not isinstance(t, int) or t < 1:
        raise DegreeTooSmall("t must be a positive integer")
    if t > min(d + 1, D.q):
        raise DegreeTooSmall(f"t = {t} exceeds min(d + 1, q) = {min(d + 1, D.q)}")
    if P.degree > d:
        raise DegreeTooSmall(f"point of degree {P.degree} > d = {d}")
    if P.is_rational and P.projpoint() in D.points:
        raise OnSupport("point lies in Supp D")

    finite = [i for i, p in enumerate(D.points) if not p.is_infinity]
    chosen = (finite + [i for i in range(D.q) if i not in finite])[:t]
    pts = [D.points[i] for i in chosen]

    # move everything off infinity: mu(x:y) = (y : x - s y) sends s to inf
    mu = None
    if P.at_infinity or any(p.is_infinity for p in pts):
        avoid = [P.projpoint().affine()] if P.is_rational and not P.at_infinity else []
        s = next(_free_integers(D, avoid))
        mu = (0, 1, 1, -s)
        mu_inv = (s, 1, 1, 0)
        pts = [ProjPoint((b, a - s * b)) for a, b in (p.coords for p in pts)]
        g = bf_substitute(P.minpoly if not P.at_infinity else (0, 1), mu_inv)
    else:
        g = P.minpoly
    g = flint.fmpq_poly(list(g))
    alphas = [p.affine() for p in pts]

    N = bf_prod(bf_linear(a.numerator, a.denominator) for a in alphas[:-1])
    M = bf_linear(alphas[-1].numerator, alphas[-1].denominator)
    phi0 = field_elem(N, g) * field_inv(field_elem(M, g), g) % g
    C = [Fraction(int(c.p), int(c.q)) for c in (phi0[i] for i in range(g.degree()))]

    def forbidden(cs):
        return any(bf_eval(cs, a, 1) == 0 for a in alphas)

    if forbidden(C) and g.degree() < d:
        gc = [Fraction(int(c.p), int(c.q)) for c in (g[i] for i in range(g.degree() + 1))]
        k = 1
        while True:
            trial = [(C[i] if i < len(C) else 0) + k * gc[i] for i in range(len(gc))]
            if not forbidden(trial):
                C = trial
                break
            k += 1

    degC = max(bf_degree(C), 0)
    C = C[: degC + 1]
    B = bf_mul(M, C)
    k = max(len(N), len(B))
    A = bf_raise(N, k - len(N))
    B = bf_raise(B, k - len(B))
    f1, f2 = bf_clear([A, B])
    phi = Rat1Map(f1, f2, "rem")
    if mu is not None:
        phi = phi.compose_mobius(mu)
    _check_rem(phi, P, D, d, t)
    return phi


def _check_rem(phi: Rat1Map, P: AlgPoint, D: Divisor1, d: int, t: int):
    if phi.image(P) != ProjPoint((1, 1)):
        raise DegreeTooSmall("construction failed: phi(P) != 1")
    if phi.degree > d:
        raise DegreeTooSmall("construction failed: degree too large")
    if phi.zero_pole_count(D) < t:
        raise DegreeTooSmall("construction failed: too few divisor points over {0, inf}")


def rem_postconditions(phi: Rat1Map, P: AlgPoint, D: Divisor1, d: int, t: int) -> bool:
    try:
        _check_rem(phi, P, D, d, t)
    except DegreeTooSmall:
        return False
    return True


# --------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class ZResult:
    status: str
    witness: Rat1Map | None = None
    tested: int = 0
    regime: str = ""


def _near_family(P: AlgPoint, D: Divisor1, d: int) -> tuple[Rat1Map | None, int]:
    """Search maps with d zeros and d - 1 poles in Supp D taking P into P^1(Q).

    phi = A1 / (A2 * l) with l linear is rational at alpha iff
    A1(alpha)/A2(alpha) lies in span_Q(1, alpha); then l is read off.
    """
    g = flint.fmpq_poly(list(P.minpoly))
    tested = 0
    for I1 in combinations(range(D.q), d):
        rest = [i for i in range(D.q) if i not in I1]
        for I2 in combinations(rest, d - 1):
            tested += 1
            A1, A2 = _forms(D, I1), _forms(D, I2)
            rho = field_elem(A1, g) * field_inv(field_elem(A2, g), g) % g
            if rho.degree() > 1:
                continue
            u = Fraction(int(rho[0].p), int(rho[0].q))
            v = Fraction(int(rho[1].p), int(rho[1].q)) if rho.degree() == 1 else Fraction(0)
            (ell,) = bf_clear([(u, v)])
            try:
                label = _label(D, IndexPair(I1, I2)) + "+line"
                return Rat1Map(A1, bf_mul(A2, ell), label), tested
            except ValueError:
                continue
    return None, tested


def z_member(P: AlgPoint, D: Divisor1, d: int, t) -> ZResult:
    """Decide whether P lies in Z(D, d, t).

    Only the smallest integer c >= t matters.  Supported regimes:
    c <= min(d + 1, q) (always In), c > min(2d, q) (Phi empty, Out),
    c = 2d (the phi_I), c = 2d - 1 (maps with d zeros and d - 1 poles in D).
    """
    t = as_fraction(t)
    if P.degree > d:
        raise DegreeTooSmall(f"point of degree {P.degree} > d = {d}")
    c = max(ceil(t), 0)
    top = min(2 * d, D.q)
    if c > top:
        return ZResult(OUT, None, 0, "Phi empty")
    if c == 0:
        return ZResult(IN, _phi_with_counts(D, d, 0), 0, "trivial")
    if P.is_rational:
        return ZResult(IN, _phi_with_counts(D, d, c), 0, "rational point")
    if c <= min(d + 1, D.q):
        return ZResult(IN, rem_witness(P, D, d, c), 0, "universal")
    if c == 2 * d:
        maps = enumerate_phi(D, d, Fraction(2 * d))
        for k, phi in enumerate(maps, 1):
            if phi.image(P) is not None:
                return ZResult(IN, phi, k, "phi_I")
        return ZResult(OUT, None, len(maps), "phi_I")
    if c == 2 * d - 1:
        phi, tested = _near_family(P, D, d)
        if phi is not None:
            return ZResult(IN, phi, tested, "near phi_I")
        return ZResult(OUT, None, tested, "near phi_I")
    return ZResult(UNSUPPORTED, None, 0, f"d + 1 < {c} < 2d - 1")


def brute_force_phi_I(P: AlgPoint, D: Divisor1, d: int) -> list[IndexPair]:
    """All index pairs whose phi_I takes P into P^1(Q) (oracle for tests)."""
    return [I for I in index_pairs(D.q, d) if phi_from_index(D, I).image(P) is not None]
