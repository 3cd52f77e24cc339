"""Hyperplane configurations: subgeneral position, triple points, Type I/II/III."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import flint

from .errors import CoincidentPlane, NotSubgeneral, ParseError
from .heights import Form, ProjPoint

TYPE_CONSTANT = {"I": Fraction(5), "II": Fraction(9, 2), "III": Fraction(4)}


def _rank(rows: Sequence[Sequence[int]]) -> int:
    return flint.fmpz_mat([list(r) for r in rows]).rank()


def _det3(a, b, c) -> int:
    return int(flint.fmpz_mat([list(a), list(b), list(c)]).det())


def _cross(a, b) -> tuple[int, int, int]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def subgeneral_position(forms: Sequence[Form], m: int) -> bool:
    """Every k <= m + 1 of the hyperplanes meet in dimension <= m - k."""
    if not forms:
        return True
    n = forms[0].dim
    if any(f.dim != n or not f.is_linear for f in forms):
        raise ValueError("expected linear forms on a common P^n")
    rows = [f.linear_coeffs() for f in forms]
    for k in range(1, min(m + 1, len(rows)) + 1):
        for sub in combinations(rows, k):
            if n - _rank(sub) > m - k:
                return False
    return True


@dataclass(frozen=True)
class LineConfig:
    """Lines in P^2 given by primitive, sign-normalized linear forms (repeats allowed)."""

    lines: tuple[Form, ...]

    def __init__(self, lines):
        ls = tuple(Form.linear(l) if not isinstance(l, Form) else l for l in lines)
        if any(l.dim != 2 or not l.is_linear for l in ls):
            raise ValueError("lines must be linear forms on P^2")
        object.__setattr__(self, "lines", ls)

    @classmethod
    def parse(cls, s: str) -> "LineConfig":
        parts = [p.strip() for p in s.split(";") if p.strip()]
        if not parts:
            raise ParseError("empty line configuration")
        return cls([Form.parse(p, dim=2) for p in parts])

    @property
    def q(self) -> int:
        return len(self.lines)

    def coeffs(self) -> list[tuple[int, ...]]:
        return [l.linear_coeffs() for l in self.lines]

    def __str__(self):
        return ";".join(str(l) for l in self.lines)


@dataclass(frozen=True)
class TypeTag:
    tag: str
    c: Fraction
    repeated: tuple[int, int] | None
    triple_points: tuple[ProjPoint, ...]

    def __str__(self):
        return f"Type {self.tag}, c = {self.c}"


def triple_points(cfg: LineConfig) -> list[ProjPoint]:
    """Points on at least three distinct lines of the configuration."""
    distinct = list(dict.fromkeys(cfg.coeffs()))
    candidates = []
    for a, b in combinations(distinct, 2):
        candidates.append(ProjPoint.from_ints(_cross(a, b)))
    out = []
    for P in dict.fromkeys(candidates):
        through = sum(1 for l in distinct if sum(c * x for c, x in zip(l, P.coords)) == 0)
        if through >= 3:
            out.append(P)
    return sorted(out, key=lambda p: p.coords)


def noncollinear_triple(points: Sequence[ProjPoint]) -> tuple[ProjPoint, ...] | None:
    for a, b, c in combinations(points, 3):
        if _det3(a.coords, b.coords, c.coords) != 0:
            return a, b, c
    return None


def classify_type(cfg: LineConfig) -> TypeTag:
    if not subgeneral_position(list(cfg.lines), 3):
        raise NotSubgeneral("lines are not in 3-subgeneral position")
    coeffs = cfg.coeffs()
    repeated = next(
        ((i, j) for i, j in combinations(range(cfg.q), 2) if coeffs[i] == coeffs[j]), None
    )
    triples = triple_points(cfg)
    if cfg.q > 4:
        if repeated is not None and triples:
            return TypeTag("I", TYPE_CONSTANT["I"], repeated, (triples[0],))
        if repeated is None:
            nc = noncollinear_triple(triples)
            if nc is not None:
                return TypeTag("II", TYPE_CONSTANT["II"], None, nc)
    return TypeTag("III", TYPE_CONSTANT["III"], repeated, tuple(triples))


def plane_basis(H: Form) -> list[tuple[int, ...]]:
    """An integer basis of the hyperplane H = 0, as vectors of the ambient space."""
    h = H.linear_coeffs()
    j = next(i for i, c in enumerate(h) if c)
    basis = []
    for i in range(len(h)):
        if i == j:
            continue
        v = [0] * len(h)
        v[i] = h[j]
        v[j] = -h[i]
        basis.append(tuple(v))
    return basis


def restrict_to_plane(hplanes: Sequence[Form], H: Form, basis=None) -> LineConfig:
    """Hyperplanes of P^3 restricted to H, in the coordinates given by ``basis``."""
    if not H.is_linear or H.dim != 3:
        raise ValueError("H must be a plane in P^3")
    basis = [tuple(b) for b in (basis or plane_basis(H))]
    h = H.linear_coeffs()
    if len(basis) != 3 or any(sum(x * y for x, y in zip(h, b)) for b in basis):
        raise ValueError("basis must span H")
    if _rank(basis) != 3:
        raise ValueError("basis vectors are dependent")
    lines = []
    for L in hplanes:
        coeffs = L.linear_coeffs()
        r = [sum(x * y for x, y in zip(coeffs, b)) for b in basis]
        if not any(r):
            raise CoincidentPlane(f"{L} coincides with the plane")
        lines.append(Form.linear(r))
    return LineConfig(lines)
