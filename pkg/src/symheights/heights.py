"""Local and global heights, proximity functions and pair heights on P^n(Q).

Points carry coprime integer coordinates and forms are primitive, so most
non-archimedean quantities collapse to valuations of a single integer.  The
general normalized-absolute-value formulas are still used, which keeps the
functions correct for unnormalized input built by hand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import EqualPoints, OnSupport, ParseError
from .exact_core import (
    ARCH,
    LogVal,
    Place,
    PlaceSet,
    as_fraction,
    content,
    prime_factors,
    valuation,
)

VARNAMES = ("x", "y", "z", "w")


def var_names(n: int) -> tuple[str, ...]:
    """Variable names for the n+1 coordinates of P^n."""
    if n + 1 <= len(VARNAMES):
        return VARNAMES[: n + 1]
    return tuple(f"x{i}" for i in range(n + 1))


def _clear_denominators(values: Sequence) -> list[int]:
    fr = [as_fraction(v) for v in values]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in fr]


def _normalize(ints: Sequence[int]) -> tuple[int, ...]:
    g = content(ints)
    if g == 0:
        raise ValueError("all coordinates are zero")
    out = [c // g for c in ints]
    for c in out:
        if c:
            if c < 0:
                out = [-x for x in out]
            break
    return tuple(out)


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^n(Q) with coprime integer coordinates, first nonzero positive."""

    coords: tuple[int, ...]

    def __init__(self, coords: Iterable):
        coords = list(coords)
        if len(coords) < 2:
            raise ValueError("a projective point needs at least two coordinates")
        object.__setattr__(self, "coords", _normalize(_clear_denominators(coords)))

    @classmethod
    def from_ints(cls, coords: Sequence[int]) -> "ProjPoint":
        """Fast path for integer coordinates."""
        p = object.__new__(cls)
        object.__setattr__(p, "coords", _normalize([int(c) for c in coords]))
        return p

    @classmethod
    def rational(cls, x) -> "ProjPoint":
        """The point (x : 1) of P^1, or infinity for x = 'inf'."""
        if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo"):
            return cls((1, 0))
        x = as_fraction(x)
        return cls((x.numerator, x.denominator))

    @classmethod
    def parse(cls, s: str) -> "ProjPoint":
        s = s.strip()
        m = re.fullmatch(r"\((.*)\)", s)
        if not m:
            return cls.rational(s)
        parts = [p.strip() for p in m.group(1).split(":")]
        if len(parts) < 2:
            raise ParseError(f"bad projective point {s!r}")
        return cls([as_fraction(p) for p in parts])

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def is_infinity(self) -> bool:
        return self.dim == 1 and self.coords[1] == 0

    def affine(self) -> Fraction | None:
        """a/b for (a:b) in P^1; None at infinity."""
        a, b = self.coords
        return None if b == 0 else Fraction(a, b)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __str__(self):
        if self.dim == 1:
            a, b = self.coords
            if b == 0:
                return "inf"
            return str(Fraction(a, b))
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self):
        return "ProjPoint(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Form:
    """Primitive homogeneous integer polynomial in the n+1 coordinates of P^n."""

    dim: int
    terms: tuple[tuple[tuple[int, ...], int], ...]
    degree: int = field(compare=False)

    def __init__(self, dim: int, coeffs: dict):
        items = {tuple(int(e) for e in k): int(c) for k, c in coeffs.items() if c}
        if not items:
            raise ValueError("zero form")
        degs = {sum(k) for k in items}
        if len(degs) != 1:
            raise ValueError("form is not homogeneous")
        if any(len(k) != dim + 1 for k in items):
            raise ValueError("exponent vector length does not match dimension")
        (deg,) = degs
        if deg < 1:
            raise ValueError("form must have degree >= 1")
        keys = sorted(items, reverse=True)
        vals = _normalize([items[k] for k in keys])
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", tuple(zip(keys, vals)))
        object.__setattr__(self, "degree", deg)

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "Form":
        n = len(coeffs) - 1
        ints = _clear_denominators(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n + 1)): c for i, c in enumerate(ints)})

    @classmethod
    def binary(cls, coeffs: Sequence[int]) -> "Form":
        """sum_i coeffs[i] x^i y^(e-i) for e = len(coeffs)-1."""
        e = len(coeffs) - 1
        return cls(1, {(i, e - i): c for i, c in enumerate(_clear_denominators(coeffs))})

    @classmethod
    def of_point(cls, P: ProjPoint) -> "Form":
        """The form b x - a y vanishing at (a:b) in P^1."""
        a, b = P.coords
        return cls(1, {(1, 0): b, (0, 1): -a})

    @classmethod
    def parse(cls, s: str, dim: int | None = None) -> "Form":
        import sympy

        names = list(var_names(dim)) if dim is not None else None
        try:
            expr = sympy.sympify(s.replace("^", "**"))
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ParseError(f"cannot parse form {s!r}") from exc
        free = {str(v) for v in expr.free_symbols}
        if names is None:
            for n in range(1, 10):
                if free <= set(var_names(n)):
                    names = list(var_names(n))
                    break
            else:
                raise ParseError(f"unknown variables in {s!r}")
        if not free <= set(names):
            raise ParseError(f"unknown variables in {s!r}")
        gens = sympy.symbols(names)
        poly = sympy.Poly(expr, *gens)
        coeffs = {}
        for monom, c in poly.terms():
            if not c.is_rational:
                raise ParseError(f"non-rational coefficient in {s!r}")
            coeffs[monom] = Fraction(int(c.p), int(c.q))
        keys = list(coeffs)
        ints = _clear_denominators([coeffs[k] for k in keys])
        return cls(len(names) - 1, dict(zip(keys, ints)))

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.terms)

    @property
    def num_monomials(self) -> int:
        return len(self.terms)

    @property
    def is_linear(self) -> bool:
        return self.degree == 1

    def linear_coeffs(self) -> tuple[int, ...]:
        if not self.is_linear:
            raise ValueError("not a linear form")
        out = [0] * (self.dim + 1)
        for k, c in self.terms:
            out[k.index(1)] = c
        return tuple(out)

    def __call__(self, coords: Sequence):
        total = 0
        for k, c in self.terms:
            term = c
            for x, e in zip(coords, k):
                if e:
                    term *= x**e
            total += term
        return total

    def __str__(self):
        names = var_names(self.dim)
        parts = []
        for k, c in self.terms:
            mon = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e
            )
            if mon == "":
                s = str(abs(c))
            elif abs(c) == 1:
                s = mon
            else:
                s = f"{abs(c)}*{mon}"
            parts.append(("-" if c < 0 else "+") + s)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


@dataclass(frozen=True)
class Divisor1:
    """Weighted divisor sum c_i P_i of distinct rational points of P^1."""

    points: tuple[ProjPoint, ...]
    weights: tuple[Fraction, ...]

    def __init__(self, points: Iterable, weights: Iterable | None = None):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint.rational(p) for p in points)
        if any(p.dim != 1 for p in pts):
            raise ValueError("divisor points must lie in P^1")
        if len(set(pts)) != len(pts):
            raise ValueError("divisor points must be distinct")
        if weights is None:
            ws = tuple(Fraction(1) for _ in pts)
        else:
            ws = tuple(as_fraction(w) for w in weights)
        if len(ws) != len(pts) or any(w <= 0 for w in ws):
            raise ValueError("weights must be positive, one per point")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", ws)

    @classmethod
    def parse(cls, s: str, weights=None) -> "Divisor1":
        tokens = [t.strip() for t in s.split(",") if t.strip()]
        return cls([ProjPoint.parse(t) for t in tokens], weights)

    @property
    def q(self) -> int:
        return len(self.points)

    @property
    def degree(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def forms(self) -> list[tuple[Form, Fraction]]:
        return [(Form.of_point(p), w) for p, w in zip(self.points, self.weights)]

    def sorted_weights(self) -> list[Fraction]:
        return sorted(self.weights, reverse=True)

    def __contains__(self, P) -> bool:
        return P in self.points

    def __str__(self):
        body = ",".join(str(p) for p in self.points)
        if all(w == 1 for w in self.weights):
            return body
        return body + " @ " + ",".join(str(w) for w in self.weights)


# --------------------------------------------------------------------------
# normalized absolute values of integers / rationals


def _norm(x, v: Place) -> Fraction:
    x = as_fraction(x)
    if v.is_archimedean:
        return abs(x)
    if x == 0:
        return Fraction(0)
    e = valuation(x.numerator, v.p) - valuation(x.denominator, v.p)
    return Fraction(1, v.p**e) if e >= 0 else Fraction(v.p**-e)


def _max_norm(values: Iterable, v: Place) -> Fraction:
    return max(_norm(x, v) for x in values)


def local_height(P: ProjPoint, f: Form, v: Place) -> LogVal:
    """h_{D,v}(P) = log(||f||_v max||x_i||_v^deg / ||f(P)||_v) for D = {f = 0}."""
    fp = f(P.coords)
    if fp == 0:
        raise OnSupport(f"{P} lies on {f} = 0", form=f)
    if v.is_archimedean:
        num = max(abs(c) for c in f.coefficients) * max(abs(x) for x in P.coords) ** f.degree
        return LogVal(Fraction(num, abs(fp)))
    num = _max_norm(f.coefficients, v) * _max_norm(P.coords, v) ** f.degree
    return LogVal(num / _norm(fp, v))


def global_height(P: ProjPoint) -> LogVal:
    """Absolute logarithmic height; log max|x_i| for coprime integer coordinates."""
    return LogVal(max(abs(x) for x in P.coords))


def global_height_by_places(P: ProjPoint) -> LogVal:
    """The same height summed place by place (independent route)."""
    primes = set()
    for x in P.coords:
        if x:
            primes.update(prime_factors(x))
    places = [ARCH] + [Place(p) for p in sorted(primes)]
    return LogVal.sum(LogVal(_max_norm(P.coords, v)) for v in places)


def _as_weighted_forms(forms) -> list[tuple[Form, Fraction]]:
    if isinstance(forms, Divisor1):
        return forms.forms()
    out = []
    for item in forms:
        if isinstance(item, Form):
            out.append((item, Fraction(1)))
        else:
            f, w = item
            out.append((f, as_fraction(w)))
    return out


def prox(P: ProjPoint, forms, S) -> LogVal:
    """m_{D,S}(P) = sum over v in S and weighted forms of local heights."""
    S = PlaceSet.parse(S)
    total = LogVal.zero()
    for f, w in _as_weighted_forms(forms):
        for v in S:
            total = total + local_height(P, f, v).scale(w)
    return total


def pair_height(P: ProjPoint, Q: ProjPoint, v: Place) -> LogVal:
    """h_{Q,v}(P) = log(max||x_i|| max||y_i|| / max_{i<j} ||x_i y_j - x_j y_i||)."""
    if P == Q:
        raise EqualPoints(f"{P} = {Q}")
    if P.dim != Q.dim:
        raise ValueError("points in different dimensions")
    x, y = P.coords, Q.coords
    n = len(x)
    cross = [x[i] * y[j] - x[j] * y[i] for i in range(n) for j in range(i + 1, n)]
    num = _max_norm(x, v) * _max_norm(y, v)
    return LogVal(num / _max_norm(cross, v))


def form_height(f: Form) -> LogVal:
    """sum_v log ||f||_v = log max|coef| for a primitive integer form."""
    return LogVal(max(abs(c) for c in f.coefficients))


def height_degree_identity_defect(P: ProjPoint, f: Form) -> LogVal:
    """sum_v h_{D,v}(P) - deg(f) h(P), summed over every place.

    With the coefficient norm inside the local height this equals form_height(f),
    which vanishes only when max|coef| = 1.
    """
    fp = f(P.coords)
    if fp == 0:
        raise OnSupport(f"{P} lies on {f} = 0", form=f)
    primes = set(prime_factors(fp))
    primes.update(prime_factors(content(f.coefficients)))
    for x in P.coords:
        if x:
            primes.update(prime_factors(x))
    places = [ARCH] + [Place(p) for p in sorted(primes)]
    total = LogVal.sum(local_height(P, f, v) for v in places)
    return total - global_height_by_places(P).scale(f.degree)
