"""Acceptance criteria, one pass/fail line each (see the terminal summary).

Criteria that cannot hold as stated are run unchanged and marked strict
xfail, so the red line is printed and any unexpected pass breaks the suite.
"""

import math
import random
import time
from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy

from symheights.algebraic import (
    AlgPoint,
    hyperplane_of_point,
    is_irreducible,
    monomial_slack,
    psi,
    sigma,
    transport_defect,
)
from symheights.configs import LineConfig, subgeneral_position
from symheights.exact_core import product_formula_defect
from symheights.exceptional import IN, OUT, Rat1Map, brute_force_phi_I
from symheights.experiments import (
    FLAGGED,
    UNDECIDED,
    ratio_scan,
    sharp_family,
    tbor_family,
    td3b_family,
    transport_scan,
    zariski_density_check,
)
from symheights.heights import Divisor1, Form, ProjPoint, form_height, height_degree_identity_defect

S3 = "inf,2,3"
FOUR = Divisor1.parse("0,1,inf,2")
SIX = Divisor1.parse("0,1,-1,2,-2,inf")
Z = sympy.symbols("z")
X, Y = sympy.symbols("x y")

# ---------------------------------------------------------------- criterion 1


def _identity_instances(n):
    rng = random.Random(1)
    out = []
    while len(out) < n:
        dim, deg = rng.randint(1, 3), rng.randint(1, 3)
        monos = [k for k in product(range(deg + 1), repeat=dim + 1) if sum(k) == deg]
        cs = {k: rng.randint(-5, 5) for k in monos}
        if not any(cs.values()):
            continue
        f = Form(dim, cs)
        P = ProjPoint.from_ints([rng.randint(-1000, 1000) for _ in range(dim + 1)])
        if not any(P.coords) or f(P.coords) == 0:
            continue
        out.append((P, f))
    return out


@pytest.fixture(scope="module")
def identity_run():
    t0 = time.perf_counter()
    rng = random.Random(2)
    pf_bad = 0
    for _ in range(10_000):
        x = Fraction(rng.randint(-10**9, 10**9) or 1, rng.randint(1, 10**9))
        pf_bad += not product_formula_defect(x).is_zero()
    inst = _identity_instances(10_000)
    defects = [(height_degree_identity_defect(P, f), f) for P, f in inst]
    return {"pf_bad": pf_bad, "defects": defects, "seconds": time.perf_counter() - t0}


def test_c1_product_formula(identity_run, criterion):
    r = identity_run
    ok = r["pf_bad"] == 0 and r["seconds"] < 10
    criterion("C1a product formula defect is 0 on 10^4 rationals", ok,
              f"nonzero={r['pf_bad']}, {r['seconds']:.1f}s for all of C1")
    assert ok


@pytest.mark.xfail(strict=True, reason="sum of local heights carries h(f) = log max|coef|")
def test_c1_identity_literal(identity_run, criterion):
    defects = identity_run["defects"]
    bad = sum(1 for d, _ in defects if not d.is_zero())
    ok = bad == 0
    criterion("C1b h_D(P) = deg(D) h(P) exactly on 10^4 instances", ok,
              f"{bad}/{len(defects)} nonzero; each equals log max|coef f|")
    assert ok


def test_c1_identity_corrected(identity_run, criterion):
    defects = identity_run["defects"]
    bad = sum(1 for d, f in defects if d != form_height(f))
    monic = sum(1 for d, f in defects if max(abs(c) for c in f.coefficients) == 1)
    zero_there = all(d.is_zero() for d, f in defects if max(abs(c) for c in f.coefficients) == 1)
    ok = bad == 0 and zero_there
    criterion("C1c h_D(P) = deg(D) h(P) + h(f) exactly on 10^4 instances", ok,
              f"mismatches={bad}; exact zero on all {monic} forms with max|coef| = 1")
    assert ok


# ---------------------------------------------------------------- criterion 2


def test_c2_structural(criterion):
    t0 = time.perf_counter()
    rng = random.Random(3)
    vand_bad = 0
    for _ in range(200):
        d = rng.randint(1, 4)
        xs = rng.sample(range(-30, 31), d + 1)
        pts = [ProjPoint.rational(x) for x in xs]
        if rng.random() < 0.5:
            pts[-1] = ProjPoint((1, 0))
        forms = [hyperplane_of_point(p, d) for p in pts]
        for k in range(1, d + 2):
            for sub in combinations(forms, k):
                if not subgeneral_position(list(sub), d):
                    vand_bad += 1
    slot_bad = 0
    for _ in range(500):
        d = rng.randint(1, 4)
        pairs = [(rng.randint(-20, 20), rng.randint(0, 20)) for _ in range(d)]
        tup = [ProjPoint.from_ints(ab) if any(ab) else ProjPoint((1, 0)) for ab in pairs]
        s = sigma(tup)
        for P in tup:
            slot_bad += hyperplane_of_point(P, d)(s.coords) != 0
    psi_bad = cubics = 0
    while cubics < 500:
        cs = [rng.randint(-20, 20) for _ in range(3)] + [rng.randint(1, 20)]
        if cs[0] == 0 or not is_irreducible(cs):
            continue
        P = AlgPoint.from_minpoly(cs)
        f = sum(c * Z**i for i, c in enumerate(P.minpoly))
        # Res_z(f(z), x - z y) = lead * prod (x - alpha_j y): the sigma image of the conjugates
        res = sympy.Poly(sympy.resultant(f, X - Z * Y, Z), X, Y)
        coeffs = [int(res.coeff_monomial(X**i * Y ** (3 - i))) for i in range(4)]
        psi_bad += ProjPoint.from_ints(coeffs) != psi(P, 3)
        cubics += 1
    secs = time.perf_counter() - t0
    ok = vand_bad == slot_bad == psi_bad == 0 and secs < 30
    criterion("C2 Vandermonde, H_P(sigma) = 0, psi = sigma(conjugates)", ok,
              f"bad={vand_bad}/{slot_bad}/{psi_bad}, 500 cubics, {secs:.1f}s")
    assert ok


# ---------------------------------------------------------------- criterion 3


def test_c3_transport(criterion):
    t0 = time.perf_counter()
    D = Divisor1.parse("0,1,inf")
    stats = transport_scan(D, S3, [50, 100])
    a, b = stats[50], stats[100]
    slack = monomial_slack(2)
    grow_h = float(b.abs_h_max - a.abs_h_max)
    grow_m = float(b.abs_m_max - a.abs_m_max)
    widths = [e.width for s in (a, b) for e in (s.h_max, s.h_min, s.m_max)]
    # independent oracle: the generic two-route defect on a random sample stays under the maxima
    rng = random.Random(4)
    sample_bad = 0
    for _ in range(1500):
        cs = [rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(-50, 50), rng.randint(1, 50)]
        try:
            P = AlgPoint.from_minpoly(cs)
        except ValueError:
            continue
        m, h = transport_defect(P, D, S3)
        sample_bad += float(h.hi) > float(a.abs_h_max) + 1e-9 or float(m.hi) > float(a.abs_m_max) + 1e-9
    secs = time.perf_counter() - t0
    ok = (grow_h <= slack and grow_m <= slack and max(widths) <= Fraction(1, 10**6)
          and sample_bad == 0 and secs < 300)
    criterion("C3 transport defects bounded, doubling B grows maxima by <= log 3", ok,
              f"|h| max {float(a.abs_h_max):.4f} -> {float(b.abs_h_max):.4f}, "
              f"|m| max {float(a.abs_m_max):.4f} -> {float(b.abs_m_max):.4f}, "
              f"{a.count}/{b.count} points, {secs:.0f}s")
    assert ok


# ---------------------------------------------------------------- criteria 4 and 8


@pytest.fixture(scope="module")
def wirsing_scans():
    runs = {}
    for name, D, d, B, t in (("d=2", FOUR, 2, 40, Fraction(16, 5)), ("d=3", SIX, 3, 10, Fraction(21, 4))):
        t0 = time.perf_counter()
        res = ratio_scan(D, S3, d, B, t, cap=256)
        runs[name] = (res, time.perf_counter() - t0, d, t)
    return runs


def _scan_detail(res, secs):
    outs = [r for r in res.records if r.z_status == OUT]
    top = max(outs, key=lambda r: r.h.mid) if outs else None
    s = (f"scanned={res.scanned} flagged={res.flagged} In={res.z_counts.get(IN, 0)} "
         f"Out={res.z_counts.get(OUT, 0)} undecided={res.undecided} {secs:.0f}s")
    if top is not None:
        s += f"; highest Out flag h={top.h.mid:.3f} ratio>={top.ratio_lo:.3f} ({top.point})"
    return s


@pytest.mark.xfail(strict=True, reason="finitely many exceptions exist in range; see the ledger")
@pytest.mark.parametrize("case", ["d=2", "d=3"])
def test_c4_wirsing_scan(wirsing_scans, criterion, case):
    res, secs, d, t = wirsing_scans[case]
    ok = res.z_counts.get(OUT, 0) == 0 and res.undecided == 0 and secs < 600
    criterion(f"C4 {case} t={t}: every flag has z_status In, none undecided", ok, _scan_detail(res, secs))
    assert ok


@pytest.mark.parametrize("case", ["d=2", "d=3"])
def test_c4_certification(wirsing_scans, criterion, case):
    """The parts of the scan that are decidable: no undecided flags, runtime, witnesses valid."""
    res, secs, d, t = wirsing_scans[case]
    flagged = [r for r in res.records if r.flag == FLAGGED]
    rng = random.Random(5)
    D = FOUR if d == 2 else SIX
    sample = rng.sample(flagged, min(60, len(flagged)))
    oracle_bad = 0
    for r in sample:
        hits = brute_force_phi_I(r.point, D, d) if r.point.degree > 1 else [None]
        oracle_bad += (r.z_status == IN) != bool(hits)
    ok = res.undecided == 0 and secs < 600 and oracle_bad == 0
    criterion(f"C4 {case} certification: zero undecided at 256 bits, z_status matches phi_I oracle", ok,
              f"undecided={res.undecided}, oracle mismatches={oracle_bad}/{len(sample)}, {secs:.0f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="small-height points exceed 2d + 0.1; see the ledger")
def test_c8_no_flag_above_2d_plus(wirsing_scans, criterion):
    parts = []
    total = 0
    for case, (res, secs, d, t) in wirsing_scans.items():
        n = res.wirsing_exceed
        worst = max((r for r in res.records if r.extra.get("exceeds_2d_plus")),
                    key=lambda r: r.h.mid, default=None)
        total += n
        parts.append(f"{case}: {n} above {2 * d}+0.1" +
                     (f", highest at h={worst.h.mid:.3f} ({worst.point})" if worst else ""))
    ok = total == 0
    criterion("C8 no scan flag exceeds ratio 2d + 0.1 outside Supp D", ok, "; ".join(parts))
    assert ok


# ---------------------------------------------------------------- criterion 5


def test_c5_tbor(criterion):
    t0 = time.perf_counter()
    phi = Rat1Map((0, 0, 1), (1, 0, 0))
    recs = tbor_family(phi, Divisor1.parse("0,inf,1,-1"), "inf,2", 50)
    secs = time.perf_counter() - t0
    n = {(r.extra["n1"], r.extra["n2"]) for r in recs}
    running = [r.extra["running_max"] for r in recs]
    stable = all(x == running[9] for x in running[9:])
    ok = len(recs) == 50 and n == {(2, 1)} and stable and math.isfinite(running[-1]) and secs < 60
    criterion("C5 z^2 pullbacks: (2+1)h - m bounded, running max stable after 10", ok,
              f"max defect {running[-1]:.4f}, {len(recs)} points, {secs:.1f}s")
    assert ok


# ---------------------------------------------------------------- criterion 6


def test_c6_sharp(criterion):
    t0 = time.perf_counter()
    cases = [("II", "z;y;x;y-z;x-z;x-y", 4.5), ("I", "x;y;x+y;z;z", 5.0), ("III", "x;y;x+y;z", 4.0)]
    parts, ok = [], True
    for kind, cfg, c in cases:
        recs = sharp_family(kind, LineConfig.parse(cfg), S3, 60)
        last = recs[-1].ratio_lo
        dense = zariski_density_check([r.point for r in recs], 3)
        ok &= last >= c - 0.15 and dense
        if kind == "II":
            ok &= last > c - 0.15
        parts.append(f"{kind}: {last:.3f} vs {c} dense={dense}")
    secs = time.perf_counter() - t0
    ok &= secs < 300
    criterion("C6 sharp families reach c - 0.15 and are dense to degree 3", ok, "; ".join(parts) + f", {secs:.1f}s")
    assert ok


# ---------------------------------------------------------------- criterion 7


def test_c7_td3b(criterion):
    t0 = time.perf_counter()
    t = Fraction(17, 4)
    res = td3b_family(SIX, S3, t, 20)
    secs = time.perf_counter() - t0
    good = [
        r for r in res.records
        if r.point.degree == 3 and r.ratio_lo > t and r.z_status == OUT
        and not brute_force_phi_I(r.point, SIX, 3)
    ]
    ok = len(good) >= 20 and res.undecided == 0 and secs < 600
    s = res.summary()
    criterion("C7 cubic points with m > (17/4) h outside Z", ok,
              f"kept={len(good)} tried={s['tried']} reducible={s['reducible']} in_z={s['in_z']} "
              f"plane {s['plane']} ({s['plane_type']}), {secs:.1f}s")
    assert ok
