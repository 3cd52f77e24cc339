"""Algebraic points of bounded degree on P^1 and the symmetric-power maps.

A point of degree e is carried by its primitive irreducible minimal
polynomial f = c_0 + c_1 x + ... + c_e x^e.  Galois-symmetric sums over the
places of Q(P) collapse to norms:

* above p:  sum_w h_{(a:b),w}(P) = (1/e) v_p(F(a, b)) log p,
* above oo: sum_w h_{(a:b),w}(P) = log max(|a|,|b|) + (1/e)(log M(f) - log|F(a, b)|),

where F is the homogenization of f and M(f) its Mahler measure.  So the only
non-exact ingredient anywhere is log M(f), which is rational for quadratics
with complex roots and in several other certified cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm, log
from typing import Sequence

import flint

from .errors import OnSupport, ParseError, PrecisionExhausted, WrongDegree
from .exact_core import (
    DEFAULT_PREC,
    LogVal,
    PlaceSet,
    RealEnclosure,
    as_fraction,
    content,
    enclosure_sign,
    valuation,
)
from .heights import Divisor1, Form, ProjPoint, global_height, prox

PRECISION_CAP = 1024


# --------------------------------------------------------------------------
# integer polynomials


def normalize_poly(coeffs: Sequence[int]) -> tuple[int, ...]:
    """Primitive, trailing zeros stripped, positive leading coefficient."""
    cs = [int(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    g = content(cs)
    cs = [c // g for c in cs]
    if cs[-1] < 0:
        cs = [-c for c in cs]
    return tuple(cs)


def is_irreducible(coeffs: Sequence[int]) -> bool:
    cs = normalize_poly(coeffs)
    if len(cs) <= 2:
        return len(cs) == 2
    if len(cs) == 3:
        c0, c1, c2 = cs
        disc = c1 * c1 - 4 * c2 * c0
        return disc < 0 or isqrt(disc) ** 2 != disc
    _, factors = flint.fmpz_poly(list(cs)).factor()
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree() == len(cs) - 1


def parse_poly(s) -> tuple[int, ...]:
    """Coefficients (ascending) from '[-2,0,1]', a list, or 'x^2-2'."""
    if isinstance(s, (list, tuple)):
        return tuple(int(c) for c in s)
    s = str(s).strip()
    if s.startswith("["):
        try:
            return tuple(int(c) for c in s.strip("[]").split(",") if c.strip())
        except ValueError as exc:
            raise ParseError(f"bad coefficient list {s!r}") from exc
    import sympy

    x = sympy.Symbol("x")
    try:
        poly = sympy.Poly(sympy.sympify(s.replace("^", "**")), x)
    except (sympy.SympifyError, sympy.PolynomialError, SyntaxError) as exc:
        raise ParseError(f"cannot parse polynomial {s!r}") from exc
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    den = lcm(*(c.denominator for c in coeffs))
    return tuple(int(c * den) for c in coeffs)


def poly_str(coeffs: Sequence[int], var: str = "x") -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mon else (mon if mag == 1 else f"{mag}*{mon}")
        parts.append(("-" if c < 0 else "+") + body)
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def homogeneous_eval(coeffs: Sequence[int], a: int, b: int) -> int:
    """F(a, b) = sum c_j a^j b^(e-j) for f = sum c_j x^j."""
    e = len(coeffs) - 1
    total = 0
    apow = 1
    bpows = [1] * (e + 1)
    for j in range(1, e + 1):
        bpows[j] = bpows[j - 1] * b
    for j, c in enumerate(coeffs):
        total += c * apow * bpows[e - j]
        apow *= a
    return total


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class AlgPoint:
    """A point of P^1(Qbar) of degree e given by its minimal polynomial.

    ``minpoly`` is ascending, primitive, irreducible, with positive leading
    coefficient.  The point at infinity has ``minpoly == ()``.
    """

    minpoly: tuple[int, ...]
    root_index: int = 0

    @classmethod
    def from_minpoly(cls, coeffs, root_index: int = 0, check: bool = True) -> "AlgPoint":
        cs = normalize_poly(parse_poly(coeffs) if isinstance(coeffs, str) else coeffs)
        if check and not is_irreducible(cs):
            raise ValueError(f"{poly_str(cs)} is not irreducible over Q")
        if not 0 <= root_index < len(cs) - 1:
            raise ValueError("root index out of range")
        return cls(cs, root_index)

    @classmethod
    def rational(cls, P) -> "AlgPoint":
        if not isinstance(P, ProjPoint):
            P = ProjPoint.rational(P)
        a, b = P.coords
        if b == 0:
            return cls.infinity()
        return cls(normalize_poly((-a, b)), 0)

    @classmethod
    def infinity(cls) -> "AlgPoint":
        return cls((), 0)

    @classmethod
    def parse(cls, s: str, root_index: int = 0) -> "AlgPoint":
        return cls.from_minpoly(parse_poly(s), root_index)

    @property
    def at_infinity(self) -> bool:
        return self.minpoly == ()

    @property
    def degree(self) -> int:
        return 1 if self.at_infinity else len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def projpoint(self) -> ProjPoint:
        if self.at_infinity:
            return ProjPoint((1, 0))
        if not self.is_rational:
            raise WrongDegree("point is not rational")
        c0, c1 = self.minpoly
        return ProjPoint((-c0, c1))

    def form_at(self, a: int, b: int) -> int:
        """F(a, b); up to sign and the leading coefficient, the norm of b*alpha - a."""
        if self.at_infinity:
            return -b
        return homogeneous_eval(self.minpoly, a, b)

    def __str__(self):
        if self.at_infinity:
            return "inf"
        if self.is_rational:
            return str(self.projpoint())
        return f"root[{self.root_index}] of {poly_str(self.minpoly)}"


# --------------------------------------------------------------------------
# certified roots


@lru_cache(maxsize=4096)
def _roots_at(minpoly: tuple[int, ...], prec: int):
    with flint.ctx.workprec(prec):
        roots = flint.fmpz_poly(list(minpoly)).complex_roots()
    if any(m != 1 for _, m in roots):
        raise ValueError("polynomial is not squarefree")
    out = [r for r, _ in roots]
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if out[i].overlaps(out[j]):
                raise PrecisionExhausted("root enclosures overlap")
    out.sort(key=lambda z: (float(z.real.mid()), float(z.imag.mid())))
    return tuple(out)


def conjugates(P: AlgPoint, precision: int = DEFAULT_PREC, cap: int = PRECISION_CAP):
    """Certified, pairwise disjoint complex balls around all conjugates of P.

    Order is by real part then imaginary part of the ball centers.
    """
    if P.at_infinity:
        raise ValueError("the point at infinity has no affine conjugates")
    prec = precision
    while True:
        try:
            return list(_roots_at(P.minpoly, prec))
        except PrecisionExhausted:
            prec *= 2
            if prec > cap:
                raise PrecisionExhausted(
                    f"cannot separate roots of {poly_str(P.minpoly)} below {cap} bits"
                ) from None


def root(P: AlgPoint, precision: int = DEFAULT_PREC):
    return conjugates(P, precision)[P.root_index]


# --------------------------------------------------------------------------
# Mahler measure


@lru_cache(maxsize=65536)
def exact_mahler(minpoly: tuple[int, ...]) -> Fraction | None:
    """M(f) when it is certifiably rational (all roots inside or all outside
    the closed unit disk), else None."""
    e = len(minpoly) - 1
    lead, const = abs(minpoly[-1]), abs(minpoly[0])
    if e == 1:
        return Fraction(max(lead, const))
    if e == 2:
        c0, c1, c2 = minpoly
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0:
            return Fraction(max(c2, c0))
        big_out = (2 * c2 - abs(c1) < 0) or disc > (2 * c2 - abs(c1)) ** 2
        if not big_out:
            return Fraction(c2)
        small_out = (2 * const - abs(c1) > 0) and disc < (2 * const - abs(c1)) ** 2
        return Fraction(const) if small_out else None
    prec = DEFAULT_PREC
    while prec <= PRECISION_CAP:
        roots = _roots_at(minpoly, prec)
        signs = []
        for z in roots:
            s = enclosure_sign(RealEnclosure.from_arb(z.real**2 + z.imag**2 - 1))
            signs.append(s)
        if None not in signs:
            if all(s < 0 for s in signs):
                return Fraction(lead)
            if all(s > 0 for s in signs):
                return Fraction(const)
            return None
        prec *= 2
    return None


def log_mahler_arb(minpoly: tuple[int, ...], prec: int = DEFAULT_PREC):
    """Ball containing log M(f)."""
    exact = exact_mahler(minpoly)
    if exact is not None:
        return LogVal(exact).arb(prec)
    with flint.ctx.workprec(prec + 20):
        if len(minpoly) == 3:
            c0, c1, c2 = minpoly
            disc = c1 * c1 - 4 * c2 * c0
            return ((abs(c1) + flint.arb(disc).sqrt()) / 2).log()
        total = flint.arb(abs(minpoly[-1])).log()
        for z in _roots_at(minpoly, prec + 20):
            r2 = z.real**2 + z.imag**2
            if r2 > 1:
                total += r2.log() / 2
            elif not r2 < 1:
                # straddles the unit circle: log max(1,|z|) lies in [0, log|z|_upper]
                half = (r2.log() / 2).upper() / 2
                total += flint.arb(half, half)
        return total


# --------------------------------------------------------------------------
# height expressions  exact + coef * log M(poly)


@dataclass(frozen=True)
class HeightExpr:
    """The real number ``exact + coef * log M(poly)``."""

    exact: LogVal
    coef: Fraction = Fraction(0)
    poly: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.poly is not None and self.coef != 0:
            m = exact_mahler(self.poly)
            if m is not None:
                object.__setattr__(self, "exact", self.exact + LogVal(m).scale(self.coef))
                object.__setattr__(self, "coef", Fraction(0))
        if self.coef == 0:
            object.__setattr__(self, "poly", None)

    @property
    def is_exact(self) -> bool:
        return self.coef == 0

    def _check(self, other: "HeightExpr"):
        if self.poly is not None and other.poly is not None and self.poly != other.poly:
            raise ValueError("cannot combine Mahler terms of different polynomials")
        return self.poly if self.poly is not None else other.poly

    def __add__(self, other: "HeightExpr") -> "HeightExpr":
        if isinstance(other, LogVal):
            return HeightExpr(self.exact + other, self.coef, self.poly)
        poly = self._check(other)
        return HeightExpr(self.exact + other.exact, self.coef + other.coef, poly)

    def __neg__(self) -> "HeightExpr":
        return HeightExpr(-self.exact, -self.coef, self.poly)

    def __sub__(self, other) -> "HeightExpr":
        return self + (-other)

    def scale(self, c) -> "HeightExpr":
        c = as_fraction(c)
        return HeightExpr(self.exact.scale(c), self.coef * c, self.poly)

    def arb(self, prec: int = DEFAULT_PREC):
        x = self.exact.arb(prec)
        if self.coef:
            c = flint.fmpq(self.coef.numerator, self.coef.denominator)
            with flint.ctx.workprec(prec + 20):
                x = x + log_mahler_arb(self.poly, prec) * c
        return x

    def enclosure(self, prec: int = DEFAULT_PREC) -> RealEnclosure:
        if self.is_exact:
            return self.exact.enclosure(prec)
        return RealEnclosure.from_arb(self.arb(prec))

    def sign(self, prec: int = DEFAULT_PREC, cap: int = PRECISION_CAP) -> int | None:
        """Certified sign, escalating precision; None if undecided at the cap."""
        if self.is_exact:
            return self.exact.sign()
        while prec <= cap:
            s = enclosure_sign(self.enclosure(prec))
            if s is not None:
                return s
            prec *= 2
        return None

    def __float__(self):
        return self.enclosure(60).mid


# --------------------------------------------------------------------------
# heights and proximity of algebraic points


def alg_height_expr(P: AlgPoint) -> HeightExpr:
    if P.at_infinity:
        return HeightExpr(LogVal.zero())
    if P.is_rational:
        return HeightExpr(global_height(P.projpoint()))
    return HeightExpr(LogVal.zero(), Fraction(1, P.degree), P.minpoly)


def alg_height(P: AlgPoint, prec: int = DEFAULT_PREC) -> RealEnclosure:
    """Enclosure of the absolute logarithmic height, (1/e) log M(f)."""
    return alg_height_expr(P).enclosure(prec)


def prox_alg_expr(P: AlgPoint, D: Divisor1, S) -> HeightExpr:
    S = PlaceSet.parse(S)
    if P.is_rational:
        return HeightExpr(prox(P.projpoint(), D, S))
    e = P.degree
    arch = S.has_archimedean
    primes = S.primes
    exact = LogVal.zero()
    mahler_coef = Fraction(0)
    for pt, w in zip(D.points, D.weights):
        a, b = pt.coords
        F = P.form_at(a, b)
        if F == 0:
            raise OnSupport(f"{P} lies on the divisor point {pt}", form=Form.of_point(pt))
        term = LogVal.zero()
        if arch:
            term = term + LogVal(max(abs(a), abs(b))) - LogVal(abs(F), e)
            mahler_coef += w / e
        for p in primes:
            v = valuation(F, p)
            if v:
                term = term + LogVal(p**v, e)
        exact = exact + term.scale(w)
    return HeightExpr(exact, mahler_coef, P.minpoly)


def prox_alg(P: AlgPoint, D: Divisor1, S, prec: int = DEFAULT_PREC) -> RealEnclosure:
    """Enclosure of m_{D,S}(P) summed over the places of Q(P) above S."""
    return prox_alg_expr(P, D, S).enclosure(prec)


# --------------------------------------------------------------------------
# symmetric power maps


def sigma_coeffs(pairs: Sequence[tuple]) -> list:
    """Coefficients p_0..p_d of prod (b_i x - a_i y) = sum p_i x^i y^(d-i).

    Works over any commutative ring whose elements support + and *.
    """
    coeffs = [1]
    for a, b in pairs:
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = nxt[i] - c * a
            nxt[i + 1] = nxt[i + 1] + c * b
        coeffs = nxt
    return coeffs


def sigma(points: Sequence[ProjPoint]) -> ProjPoint:
    """(P^1)^d -> P^d = Sym^d P^1."""
    if not points:
        raise ValueError("need at least one point")
    return ProjPoint.from_ints(sigma_coeffs([p.coords for p in points]))


def psi(P: AlgPoint, d: int | None = None) -> ProjPoint:
    """Coefficient vector (c_0, ..., c_d) of the minimal polynomial of P."""
    if d is not None and P.degree != d:
        raise WrongDegree(f"point has degree {P.degree}, expected {d}")
    if P.at_infinity:
        return ProjPoint((1, 0))
    return ProjPoint.from_ints(P.minpoly)


def hyperplane_of_point(P: ProjPoint, d: int) -> Form:
    """H_P: sum_i a^i b^(d-i) x_i = 0 in P^d."""
    a, b = P.coords
    return Form.linear([a**i * b ** (d - i) for i in range(d + 1)])


def transport_defect_exprs(P: AlgPoint, D: Divisor1, S) -> tuple[HeightExpr, HeightExpr]:
    d = P.degree
    Q = psi(P)
    hyper = [(hyperplane_of_point(pt, d), w) for pt, w in zip(D.points, D.weights)]
    m_up = HeightExpr(prox(Q, hyper, S))
    h_up = HeightExpr(global_height(Q))
    m_def = m_up - prox_alg_expr(P, D, S).scale(d)
    h_def = h_up - alg_height_expr(P).scale(d)
    return m_def, h_def


def transport_defect(P: AlgPoint, D: Divisor1, S, prec: int = DEFAULT_PREC):
    """Enclosures of |sum_i m_{H_{P_i},S}(psi P) - d m_{D,S}(P)| and |h(psi P) - d h(P)|."""
    m_def, h_def = transport_defect_exprs(P, D, S)
    return m_def.enclosure(prec).abs(), h_def.enclosure(prec).abs()


def monomial_slack(d: int) -> float:
    """log N for the d+1 monomials of a linear form on P^d."""
    return log(d + 1)
