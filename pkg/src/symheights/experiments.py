"""Desk-scale verification harnesses and explicit point families.

Scans walk all points of bounded degree and coefficient size and certify
``m < t h`` or flag the point.  Families build the points that make the
approximation constants sharp: S-unit pullbacks under a morphism, S-unit
points near triple points of line configurations, and cubic points whose
coefficient vectors lie on a special plane of P^3.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

import flint

from .algebraic import (
    PRECISION_CAP,
    AlgPoint,
    HeightExpr,
    alg_height_expr,
    hyperplane_of_point,
    is_irreducible,
    normalize_poly,
    poly_str,
    prox_alg_expr,
    psi,
)
from .binforms import bf_clear
from .configs import LineConfig, TypeTag, classify_type, restrict_to_plane
from .errors import BadHypothesis, DegenerateUnit
from .exact_core import (
    ARCH,
    DEFAULT_PREC,
    LogVal,
    Place,
    PlaceSet,
    RealEnclosure,
    as_fraction,
    content,
    norm_at,
)
from .exceptional import (
    IN,
    OUT,
    Rat1Map,
    brute_force_phi_I,
    pullback_profile,
    z_member,
)
from .heights import Divisor1, Form, ProjPoint, global_height, prox

FLAGGED, CLEAR, UNDECIDED = "flagged", "clear", "undecided"


def _down(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, -math.inf) if Fraction(f) > x else f


def _up(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, math.inf) if Fraction(f) < x else f


def ratio_bracket(m: RealEnclosure, h: RealEnclosure) -> tuple[float, float]:
    """[m.lo / h.hi, m.hi / h.lo] for h certified positive."""
    if h.lo <= 0:
        raise ValueError("height not certified positive")
    lo = m.lo / h.hi if m.lo >= 0 else m.lo / h.lo
    return _down(lo), _up(m.hi / h.lo)


# --------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class ScanRecord:
    point: AlgPoint | ProjPoint
    m: RealEnclosure
    h: RealEnclosure
    ratio_lo: float
    ratio_hi: float
    flag: str = CLEAR
    z_status: str | None = None
    witness: str | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def flagged(self) -> bool:
        return self.flag != CLEAR

    def to_dict(self) -> dict:
        P = self.point
        if isinstance(P, AlgPoint):
            minpoly = "inf" if P.at_infinity else poly_str(P.minpoly)
            degree = P.degree
        else:
            minpoly = "(" + ":".join(str(c) for c in P.coords) + ")"
            degree = 1
        out = {
            "minpoly": minpoly,
            "degree": degree,
            "m_lo": _down(self.m.lo),
            "m_hi": _up(self.m.hi),
            "h_lo": _down(self.h.lo),
            "h_hi": _up(self.h.hi),
            "ratio_lo": self.ratio_lo,
            "ratio_hi": self.ratio_hi,
            "flagged": {FLAGGED: True, CLEAR: False}.get(self.flag, UNDECIDED),
            "z_status": self.z_status,
            "witness": self.witness,
        }
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


CSV_FIELDS = (
    "minpoly", "degree", "m_lo", "m_hi", "h_lo", "h_hi",
    "ratio_lo", "ratio_hi", "flagged", "z_status", "witness",
)


def write_ndjson(records: Iterable[ScanRecord], fh):
    for r in records:
        fh.write(r.to_json() + "\n")


def write_csv(records: Iterable[ScanRecord], fh):
    import csv

    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        d = r.to_dict()
        w.writerow(["" if d[k] is None else d[k] for k in CSV_FIELDS])


# --------------------------------------------------------------------------
# point enumeration


def _coeff_vectors(e: int, B: int, lead: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    rng = range(-B, B + 1)
    for ce in lead if lead is not None else range(1, B + 1):
        for rest in product(rng, repeat=e):
            yield tuple(rest) + (ce,)


def enumerate_points(
    d: int, B: int, all_conjugates: bool = False, lead: Sequence[int] | None = None
) -> Iterator[AlgPoint]:
    """Points of degree <= d whose minimal polynomial has |coefficients| <= B.

    One point per Galois orbit unless ``all_conjugates``.  ``lead`` restricts
    the leading coefficients (used to partition work).
    """
    if d < 1 or B < 1:
        raise ValueError("d and B must be positive")
    if lead is None or 0 in lead:
        yield AlgPoint.infinity()
    lead_pos = None if lead is None else [c for c in lead if c > 0]
    for e in range(1, d + 1):
        for cs in _coeff_vectors(e, B, lead_pos):
            if content(cs) != 1:
                continue
            if e > 1 and (cs[0] == 0 or not is_irreducible(cs)):
                continue
            if e == 1:
                yield AlgPoint(cs, 0)
                continue
            for i in range(e if all_conjugates else 1):
                yield AlgPoint(cs, i)


# --------------------------------------------------------------------------
# ratio scan


@dataclass
class ScanResult:
    records: list[ScanRecord]
    scanned: int = 0
    on_support: int = 0
    height_zero: int = 0
    flagged: int = 0
    undecided: int = 0
    wirsing_exceed: int = 0
    z_counts: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "scanned": self.scanned,
            "on_support": self.on_support,
            "height_zero": self.height_zero,
            "flagged": self.flagged,
            "undecided": self.undecided,
            "wirsing_exceed": self.wirsing_exceed,
            "z_counts": dict(sorted(self.z_counts.items())),
        }

    def merge(self, other: "ScanResult"):
        self.records.extend(other.records)
        self.scanned += other.scanned
        self.on_support += other.on_support
        self.height_zero += other.height_zero
        self.flagged += other.flagged
        self.undecided += other.undecided
        self.wirsing_exceed += other.wirsing_exceed
        for k, v in other.z_counts.items():
            self.z_counts[k] = self.z_counts.get(k, 0) + v


def _certified_sign(expr: HeightExpr, cap: int) -> int | None:
    return expr.sign(DEFAULT_PREC, cap)


def evaluate_point(P: AlgPoint, D: Divisor1, S, d: int, t: Fraction, cap: int,
                   with_z: bool = True) -> ScanRecord | str:
    """A ScanRecord, or 'support' / 'height0' for excluded points."""
    if P.is_rational and P.projpoint() in D.points:
        return "support"
    h_expr = alg_height_expr(P)
    hs = _certified_sign(h_expr, cap)
    if hs is None or hs <= 0:
        return "height0"
    m_expr = prox_alg_expr(P, D, S)
    s = _certified_sign(m_expr - h_expr.scale(t), cap)
    flag = CLEAR if s is not None and s < 0 else (UNDECIDED if s is None else FLAGGED)
    m, h = m_expr.enclosure(), h_expr.enclosure()
    lo, hi = ratio_bracket(m, h)
    extra = {}
    z_status = witness = None
    if flag != CLEAR:
        w = _certified_sign(m_expr - h_expr.scale(2 * d + Fraction(1, 10)), cap)
        extra["exceeds_2d_plus"] = w is None or w > 0
        if with_z:
            res = z_member(P, D, d, t)
            z_status = res.status
            witness = str(res.witness) if res.witness is not None else None
    return ScanRecord(P, m, h, lo, hi, flag, z_status, witness, extra)


def _scan_part(args) -> ScanResult:
    D, S, d, B, t, cap, lead, keep_all = args
    res = ScanResult([])
    for P in enumerate_points(d, B, lead=lead):
        res.scanned += 1
        r = evaluate_point(P, D, S, d, t, cap)
        if r == "support":
            res.on_support += 1
            continue
        if r == "height0":
            res.height_zero += 1
            continue
        if r.flag == FLAGGED:
            res.flagged += 1
        elif r.flag == UNDECIDED:
            res.undecided += 1
        if r.flagged:
            if r.extra.get("exceeds_2d_plus"):
                res.wirsing_exceed += 1
            res.z_counts[r.z_status] = res.z_counts.get(r.z_status, 0) + 1
        if keep_all or r.flagged:
            res.records.append(r)
    return res


def ratio_scan(D: Divisor1, S, d: int, B: int, t, cap: int = 256, jobs: int = 1,
               keep_all: bool = False) -> ScanResult:
    """Scan all points of degree <= d and coefficient bound B against m >= t h.

    Records are kept for flagged and undecided points (all points with
    ``keep_all``).  Work is split by leading coefficient; merging follows the
    enumeration order so output does not depend on ``jobs``.
    """
    t = as_fraction(t)
    S = PlaceSet.parse(S)
    parts = [[0]] + [[c] for c in range(1, B + 1)]
    tasks = [(D, S, d, B, t, cap, lead, keep_all) for lead in parts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            partials = list(ex.map(_scan_part, tasks))
    else:
        partials = [_scan_part(a) for a in tasks]
    out = ScanResult([])
    for part in partials:
        out.merge(part)
    out.records.sort(key=canonical_key)
    return out


def canonical_key(r: ScanRecord):
    """Degree, then minimal polynomial read from the leading coefficient down."""
    P = r.point
    if P.at_infinity:
        return (0, (), 0)
    return (P.degree, tuple(reversed(P.minpoly)), P.root_index)


# --------------------------------------------------------------------------
# transport defects for quadratic points


def _quad_log_ratio_float(c0: int, c1: int, c2: int) -> float:
    """log(max|c| / M(f)) in floating point (candidate search only)."""
    disc = c1 * c1 - 4 * c2 * c0
    mx = max(abs(c0), abs(c1), c2)
    if disc < 0:
        return math.log(mx / max(c2, abs(c0)))
    r = math.sqrt(disc)
    a1 = abs(c1)
    in_big = 2 * c2 - a1 >= 0 and r <= 2 * c2 - a1
    if in_big:
        return math.log(mx / c2)
    out_small = 2 * abs(c0) - a1 > 0 and r < 2 * abs(c0) - a1
    if out_small:
        return math.log(mx / abs(c0))
    return math.log(mx / ((a1 + r) / 2))


def quad_transport_defects(f: Sequence[int], D: Divisor1, S) -> tuple[RealEnclosure, RealEnclosure]:
    """Signed defects (m(psi Q) - 2m(Q), h(psi Q) - 2h(Q)) via the closed form.

    Both equal log(max|c| / M(f)), the m-defect weighted by deg D when the
    archimedean place is in S; p-adic contributions cancel exactly.
    """
    S = PlaceSet.parse(S)
    f = tuple(f)
    expr = HeightExpr(LogVal(max(abs(c) for c in f)), Fraction(-1), f)
    h_def = expr.enclosure()
    m_def = h_def.scale(D.degree) if S.has_archimedean else RealEnclosure.point(0)
    return m_def, h_def


@dataclass
class TransportStats:
    B: int
    count: int
    h_max: RealEnclosure
    h_min: RealEnclosure
    m_max: RealEnclosure
    argmax: tuple[int, ...]
    argmin: tuple[int, ...]

    @property
    def abs_h_max(self) -> Fraction:
        return max(abs(self.h_max.hi), abs(self.h_min.lo))

    @property
    def abs_m_max(self) -> Fraction:
        return max(abs(self.m_max.hi), abs(self.m_max.lo))


def transport_scan(D: Divisor1, S, bounds: Sequence[int]) -> dict[int, TransportStats]:
    """Extremes of the quadratic transport defects for each coefficient bound.

    One pass over the largest bound; floating point locates the extremal
    polynomials, which are then certified with ball arithmetic.
    """
    bounds = sorted(bounds)
    Bmax = bounds[-1]
    best_hi = {B: (-math.inf, None) for B in bounds}
    best_lo = {B: (math.inf, None) for B in bounds}
    counts = {B: 0 for B in bounds}
    rng = range(-Bmax, Bmax + 1)
    isq = math.isqrt
    for c2 in range(1, Bmax + 1):
        for c1 in rng:
            for c0 in rng:
                if c0 == 0:
                    continue
                disc = c1 * c1 - 4 * c2 * c0
                if disc >= 0 and isq(disc) ** 2 == disc:
                    continue
                if math.gcd(math.gcd(c0, c1), c2) != 1:
                    continue
                val = _quad_log_ratio_float(c0, c1, c2)
                mx = max(c2, abs(c1), abs(c0))
                for B in bounds:
                    if mx <= B:
                        counts[B] += 1
                        if val > best_hi[B][0]:
                            best_hi[B] = (val, (c0, c1, c2))
                        if val < best_lo[B][0]:
                            best_lo[B] = (val, (c0, c1, c2))
    out = {}
    for B in bounds:
        fhi, flo = best_hi[B][1], best_lo[B][1]
        m_hi, h_hi = quad_transport_defects(fhi, D, S)
        _, h_lo = quad_transport_defects(flo, D, S)
        out[B] = TransportStats(B, counts[B], h_hi, h_lo, m_hi, fhi, flo)
    return out


# --------------------------------------------------------------------------
# S-units


def s_units(S: PlaceSet, signs: bool = True) -> Iterator[Fraction]:
    """+-prod p^a_p over the primes of S, by increasing max |a_p|."""
    primes = S.primes
    if not primes:
        return
    k = 0
    while True:
        for exps in product(range(-k, k + 1), repeat=len(primes)):
            if max((abs(a) for a in exps), default=0) != k:
                continue
            u = Fraction(1)
            for p, a in zip(primes, exps):
                u *= Fraction(p) ** a
            yield u
            if signs:
                yield -u
        k += 1


@dataclass(frozen=True)
class UnitProfile:
    """An S-unit with target and realized log-norms per place of S."""

    unit: Fraction
    target: dict
    realized: dict

    def to_dict(self) -> dict:
        return {
            "unit": str(self.unit),
            "target": {str(k): v for k, v in self.target.items()},
            "realized": {str(k): [_down(e.lo), _up(e.hi)] for k, e in self.realized.items()},
        }


def unit_profile(u: Fraction, S: PlaceSet, target: dict) -> UnitProfile:
    realized = {v: norm_at(u, v).enclosure() for v in S}
    return UnitProfile(u, target, realized)


# --------------------------------------------------------------------------
# S-unit pullbacks under a morphism


def _mobius_to_zero_inf(Q1: ProjPoint, Q2: ProjPoint) -> tuple:
    a1, b1 = Q1.coords
    a2, b2 = Q2.coords
    return a1, b1, a2, b2


def solve_pullback(phi: Rat1Map, Q1: ProjPoint, Q2: ProjPoint, u: Fraction,
                   D: Divisor1 | None = None) -> list[AlgPoint]:
    """Points P with mu(phi(P)) = u, mu the Moebius map sending Q1 -> 0, Q2 -> inf.

    One AlgPoint per irreducible factor.  Raises DegenerateUnit if the
    equation degenerates or a solution lies in Supp D.
    """
    a1, b1, a2, b2 = _mobius_to_zero_inf(Q1, Q2)
    u = as_fraction(u)
    lam, nu = b1 - u * b2, u * a2 - a1
    F = [lam * x + nu * y for x, y in zip(phi.f1, phi.f2)]
    if not any(F):
        raise DegenerateUnit(f"u = {u} gives the zero equation")
    (F,) = bf_clear([F])
    pts = []
    k = len(F) - 1
    deg = max(i for i, c in enumerate(F) if c)
    if deg < k:
        pts.append(AlgPoint.infinity())
    low = min(i for i, c in enumerate(F) if c)
    if low > 0:
        pts.append(AlgPoint.rational(0))
    core = F[low: deg + 1]
    if len(core) > 1:
        _, factors = flint.fmpz_poly(list(core)).factor()
        for g, _mult in factors:
            cs = normalize_poly([int(c) for c in g.coeffs()])
            pts.append(AlgPoint(cs, 0) if len(cs) > 2 else AlgPoint.rational(ProjPoint((-cs[0], cs[1]))))
    if D is not None:
        for P in pts:
            if P.is_rational and P.projpoint() in D.points:
                raise DegenerateUnit(f"u = {u}: solution {P} lies in Supp D")
    return pts


def tbor_family(phi: Rat1Map, D: Divisor1, S, count: int) -> list[ScanRecord]:
    """S-unit pullback points with their defect (n1 + n2) h - m."""
    S = PlaceSet.parse(S)
    if len(S) < 2 or not S.has_archimedean:
        raise BadHypothesis("need |S| > 1 with the archimedean place")
    prof = pullback_profile(phi, D)
    if len(prof.images) < 2:
        raise BadHypothesis("phi maps all of Supp D to one point")
    n1, n2 = prof.counts[0], prof.counts[1]
    Q1, Q2 = prof.images[0], prof.images[1]
    out: list[ScanRecord] = []
    if count <= 0:
        return out
    seen = set()
    skipped = 0
    running = None
    for u in s_units(S):
        try:
            pts = solve_pullback(phi, Q1, Q2, u, D)
        except DegenerateUnit:
            skipped += 1
            continue
        for P in pts:
            if P in seen or (P.is_rational and P.projpoint() in D.points):
                continue
            seen.add(P)
            h_expr = alg_height_expr(P)
            m_expr = prox_alg_expr(P, D, S)
            defect = (h_expr.scale(n1 + n2) - m_expr).enclosure()
            m, h = m_expr.enclosure(), h_expr.enclosure()
            if h.lo > 0:
                lo, hi = ratio_bracket(m, h)
            else:
                lo = hi = math.nan
            running = defect.hi if running is None else max(running, defect.hi)
            extra = {
                "unit": str(u),
                "n1": n1,
                "n2": n2,
                "defect_lo": _down(defect.lo),
                "defect_hi": _up(defect.hi),
                "running_max": _up(running),
            }
            out.append(ScanRecord(P, m, h, lo, hi, CLEAR, None, None, extra))
            if len(out) >= count:
                return out
    return out


# --------------------------------------------------------------------------
# sharp families in P^2


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _record_plane(P: ProjPoint, lines: Sequence[Form], S: PlaceSet, extra: dict) -> ScanRecord:
    m_val = prox(P, list(lines), S)
    h_val = global_height(P)
    m, h = m_val.enclosure(), h_val.enclosure()
    lo, hi = ratio_bracket(m, h)
    return ScanRecord(P, m, h, lo, hi, CLEAR, None, None, extra)


def type2_units(S: PlaceSet, steps: int) -> Iterator[tuple[int, Fraction, Fraction, dict]]:
    """(m, u1, u2, profiles) with u1 = q^b and u2 = p^-a q^b, b the nearest integer to a log p / log q.

    log||u1|| = (b log q, 0, -b log q) and log||u2|| = (O(1), a log p, -b log q)
    at (inf, p, q), which is the valuation profile of the construction.
    """
    if len(S) < 3 or not S.has_archimedean:
        raise BadHypothesis("Type II needs |S| > 2 with the archimedean place")
    p, q = S.primes[0], S.primes[1]
    slope = math.log(p) / math.log(q)
    for a in range(1, steps + 1):
        b = max(1, round(a * slope))
        u1 = Fraction(q**b)
        u2 = Fraction(q**b, p**a)
        mq = b * math.log(q)
        prof1 = unit_profile(u1, S, {ARCH: mq, Place(p): 0.0, Place(q): -mq})
        prof2 = unit_profile(u2, S, {ARCH: 0.0, Place(p): a * math.log(p), Place(q): -mq})
        yield a, u1, u2, {"u1": prof1, "u2": prof2}


def _lines_through(Q, avoid: Sequence[tuple], n: int) -> list[tuple]:
    """n rational lines through Q distinct from the lines in ``avoid``."""
    out = []
    avoid_set = {ProjPoint.from_ints(a) for a in avoid}
    r = 1
    while len(out) < n:
        for R in product(range(-r, r + 1), repeat=3):
            if max(abs(c) for c in R) != r:
                continue
            L = _cross(Q, R)
            if not any(L):
                continue
            key = ProjPoint.from_ints(L)
            if key in avoid_set or key in {ProjPoint.from_ints(x) for x in out}:
                continue
            out.append(tuple(key.coords))
            if len(out) >= n:
                break
        r += 1
    return out


def sharp_family(kind: str, cfg: LineConfig, S, steps: int, n_lines: int = 4) -> list[ScanRecord]:
    """Points whose proximity to the lines approaches c(cfg) h.

    Type II: P = u1 Q1 + u2 Q2 + Q3 with Q_i the noncollinear triple points.
    Types I and III: P = lam Q + Q' on rational lines through a triple point
    Q, with Q' the intersection with the repeated line (I) or another line
    (III) and lam = p^k an S-unit.
    """
    S = PlaceSet.parse(S)
    tag = classify_type(cfg)
    if tag.tag != kind:
        raise BadHypothesis(f"configuration is of Type {tag.tag}, not {kind}")
    lines = list(cfg.lines)
    coeffs = cfg.coeffs()
    out: list[ScanRecord] = []
    if kind == "II":
        Q1, Q2, Q3 = (tuple(P.coords) for P in tag.triple_points)
        for a, u1, u2, profs in type2_units(S, steps):
            coords = [u1 * x + u2 * y + z for x, y, z in zip(Q1, Q2, Q3)]
            P = ProjPoint(coords)
            if any(_dot(c, P.coords) == 0 for c in coeffs):
                continue
            extra = {"step": a, "u1": str(u1), "u2": str(u2),
                     "profiles": {k: v.to_dict() for k, v in profs.items()}}
            out.append(_record_plane(P, lines, S, extra))
        return out

    if len(S) < 2 or not S.has_archimedean:
        raise BadHypothesis("Types I and III need |S| > 1 with the archimedean place")
    if not tag.triple_points:
        raise BadHypothesis("configuration has no triple point")
    p = S.primes[0]
    Q = None
    L4 = None
    for T in tag.triple_points:
        Tc = tuple(T.coords)
        if kind == "I":
            cand = coeffs[tag.repeated[0]]
        else:
            cand = next((c for c in coeffs if _dot(c, Tc) != 0), None)
        if cand is not None and _dot(cand, Tc) != 0:
            Q, L4 = Tc, cand
            break
    if Q is None:
        raise BadHypothesis("no triple point off the auxiliary line")
    dirs = _lines_through(Q, coeffs, n_lines)
    for k in range(1, steps + 1):
        L = dirs[k % n_lines]
        Qp = _cross(L, L4)
        lam = p**k
        P = ProjPoint([lam * x + y for x, y in zip(Q, Qp)])
        if any(_dot(c, P.coords) == 0 for c in coeffs):
            continue
        extra = {"step": k, "line": list(L), "lambda": str(lam)}
        out.append(_record_plane(P, lines, S, extra))
    return out


def zariski_density_check(points: Sequence[ProjPoint], e: int) -> bool:
    """True iff no nonzero form of degree e (hence none of degree <= e) vanishes on all points."""
    if not points:
        return False
    n = points[0].dim
    monomials = [m for m in product(range(e + 1), repeat=n + 1) if sum(m) == e]
    if len(points) < len(monomials):
        return False
    rows = []
    for P in points:
        row = []
        for m in monomials:
            v = 1
            for x, k in zip(P.coords, m):
                v *= x**k
            row.append(v)
        rows.append(row)
    return flint.fmpz_mat(rows).rank() == len(monomials)


# --------------------------------------------------------------------------
# cubic counterexamples


def _kernel3(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Generator of the kernel of a rank-3 integer 3x4 matrix."""
    v = []
    for j in range(4):
        minor = [[r[i] for i in range(4) if i != j] for r in rows]
        v.append((-1) ** j * int(flint.fmpz_mat(minor).det()))
    g = content(v)
    return tuple(c // g for c in v)


@dataclass
class Td3bResult:
    records: list[ScanRecord]
    Q: tuple
    plane: Form
    plane_type: TypeTag
    reducible: int = 0
    not_cubic: int = 0
    below_t: int = 0
    undecided: int = 0
    in_z: int = 0
    tried: int = 0

    def summary(self) -> dict:
        return {
            "Q1": list(self.Q[0]),
            "Q2": list(self.Q[1]),
            "Q3": list(self.Q[2]),
            "plane": str(self.plane),
            "plane_type": str(self.plane_type),
            "tried": self.tried,
            "reducible": self.reducible,
            "not_cubic": self.not_cubic,
            "below_t": self.below_t,
            "undecided": self.undecided,
            "in_z": self.in_z,
            "kept": len(self.records),
        }


def td3b_family(D: Divisor1, S, t, count: int, max_steps: int | None = None,
                cap: int = PRECISION_CAP) -> Td3bResult:
    """Cubic points with m > t h lying outside Z(D, 3, t), for 4 < t < 9/2."""
    t = as_fraction(t)
    S = PlaceSet.parse(S)
    if D.q != 6:
        raise BadHypothesis("need a divisor with six points")
    if not Fraction(4) < t < Fraction(9, 2):
        raise BadHypothesis("need 4 < t < 9/2")
    if len(S) < 3 or not S.has_archimedean:
        raise BadHypothesis("need |S| > 2 with the archimedean place")
    H = [hyperplane_of_point(P, 3) for P in D.points]
    Hc = [h.linear_coeffs() for h in H]
    Q1 = _kernel3([Hc[0], Hc[1], Hc[2]])
    Q2 = _kernel3([Hc[0], Hc[3], Hc[4]])
    Q3 = _kernel3([Hc[1], Hc[3], Hc[5]])
    plane = Form.linear(_kernel3([Q1, Q2, Q3]))
    cfg = restrict_to_plane(H, plane, basis=[Q1, Q2, Q3])
    tag = classify_type(cfg)
    res = Td3bResult([], (Q1, Q2, Q3), plane, tag)
    steps = max_steps if max_steps is not None else 20 * count + 100
    for a, u1, u2, _ in type2_units(S, steps):
        res.tried += 1
        R = [u1 * x + u2 * y + z for x, y, z in zip(Q1, Q2, Q3)]
        (cs,) = bf_clear([R])
        if cs[3] == 0:
            res.not_cubic += 1
            continue
        cs = normalize_poly(cs)
        if not is_irreducible(cs):
            res.reducible += 1
            continue
        P = AlgPoint(cs, 0)
        on_plane = plane(psi(P).coords) == 0
        h_expr = alg_height_expr(P)
        m_expr = prox_alg_expr(P, D, S)
        s = (m_expr - h_expr.scale(t)).sign(DEFAULT_PREC, cap)
        if s is None:
            res.undecided += 1
            continue
        if s <= 0:
            res.below_t += 1
            continue
        z = z_member(P, D, 3, t)
        if z.status != OUT:
            res.in_z += 1
            continue
        phi_I_hits = brute_force_phi_I(P, D, 3)
        m, h = m_expr.enclosure(), h_expr.enclosure()
        lo, hi = ratio_bracket(m, h)
        extra = {
            "step": a,
            "on_plane": on_plane,
            "phi_I_status": IN if phi_I_hits else OUT,
        }
        res.records.append(ScanRecord(
            P, m, h, lo, hi, FLAGGED, z.status,
            str(z.witness) if z.witness is not None else None, extra))
        if len(res.records) >= count:
            break
    return res
