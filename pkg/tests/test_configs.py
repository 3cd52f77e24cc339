from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from symheights.algebraic import hyperplane_of_point
from symheights.configs import (
    LineConfig,
    classify_type,
    restrict_to_plane,
    subgeneral_position,
    triple_points,
)
from symheights.errors import CoincidentPlane, NotSubgeneral
from symheights.heights import Form, ProjPoint

QUAD = "z;y;x;y-z;x-z;x-y"


def rank_oracle(rows):
    return sympy.Matrix(rows).rank()


def subgeneral_oracle(rows, m):
    n = len(rows[0]) - 1
    for k in range(1, min(m + 1, len(rows)) + 1):
        for sub in combinations(rows, k):
            if n - rank_oracle(list(sub)) > m - k:
                return False
    return True


def witness_search(cfg):
    """Brute-force tag from the definitions, with its own intersection code."""
    rows = [tuple(l.linear_coeffs()) for l in cfg.lines]
    distinct = sorted(set(rows))
    pts = set()
    for a, b in combinations(distinct, 2):
        v = sympy.Matrix([a, b]).nullspace()[0]
        v = v * sympy.ilcm(*[x.q for x in v])
        g = sympy.igcd(*[int(x) for x in v])
        v = tuple(int(x) // g for x in v)
        if next(x for x in v if x) < 0:
            v = tuple(-x for x in v)
        if sum(1 for l in distinct if sum(c * x for c, x in zip(l, v)) == 0) >= 3:
            pts.add(v)
    repeated = len(distinct) < len(rows)
    noncollinear = any(sympy.Matrix(list(t)).det() != 0 for t in combinations(pts, 3))
    if len(rows) > 4 and repeated and pts:
        return "I", pts
    if len(rows) > 4 and not repeated and noncollinear:
        return "II", pts
    return "III", pts


def test_subgeneral_examples():
    lines = [Form.parse(s, dim=2) for s in ("x", "y", "z", "x+y")]
    assert subgeneral_position(lines, 3)
    conc = [Form.parse(s, dim=2) for s in ("x", "y", "x+y", "x-y", "x+2*y")]
    assert not subgeneral_position(conc, 3)
    hyper = [hyperplane_of_point(ProjPoint.rational(x), 3) for x in (0, 1, -1, 2)]
    assert subgeneral_position(hyper, 3)


def test_subgeneral_random_against_oracle(rng):
    for _ in range(200):
        q, n = rng.randint(3, 6), rng.randint(2, 3)
        rows = [[rng.randint(-2, 2) for _ in range(n + 1)] for _ in range(q)]
        rows = [r for r in rows if any(r)]
        if not rows:
            continue
        m = rng.randint(n, n + 2)
        assert subgeneral_position([Form.linear(r) for r in rows], m) == subgeneral_oracle(rows, m)


def test_vandermonde_general_position(rng):
    for _ in range(100):
        d = rng.randint(1, 4)
        xs = rng.sample(range(-20, 21), d + 1)
        pts = [ProjPoint.rational(x) for x in xs[:-1]] + [ProjPoint((1, 0)) if rng.random() < 0.3 else ProjPoint.rational(xs[-1])]
        rows = [hyperplane_of_point(p, d).linear_coeffs() for p in pts]
        assert rank_oracle(rows) == d + 1
        assert subgeneral_position([Form.linear(r) for r in rows], d)


def test_classify_examples():
    t1 = classify_type(LineConfig.parse("x;y;x+y;z;z"))
    assert (t1.tag, t1.c) == ("I", 5)
    assert ProjPoint((0, 0, 1)) in t1.triple_points
    t2 = classify_type(LineConfig.parse(QUAD))
    assert (t2.tag, t2.c) == ("II", Fraction(9, 2))
    assert str(t2) == "Type II, c = 9/2"
    assert (classify_type(LineConfig.parse("x;y;x+y;z")).tag) == "III"
    with pytest.raises(NotSubgeneral):
        classify_type(LineConfig.parse("x;y;x+y;x-y;x+2*y"))


def test_classify_against_witness_search(rng):
    pool = ["x", "y", "z", "x+y", "x-y", "y-z", "x-z", "x+y+z", "x+2*y", "y+2*z", "x-y+z"]
    seen = set()
    for _ in range(300):
        q = rng.randint(3, 7)
        cfg = LineConfig.parse(";".join(rng.choice(pool) for _ in range(q)))
        rows = [l.linear_coeffs() for l in cfg.lines]
        if not subgeneral_oracle(rows, 3):
            with pytest.raises(NotSubgeneral):
                classify_type(cfg)
            continue
        tag = classify_type(cfg)
        expected, pts = witness_search(cfg)
        assert tag.tag == expected
        seen.add(expected)
        assert {p.coords for p in triple_points(cfg)} == pts
        if tag.tag == "II":
            a, b, c = tag.triple_points
            assert sympy.Matrix([a.coords, b.coords, c.coords]).det() != 0
        if cfg.q <= 4:
            assert tag.tag == "III"
    assert seen == {"I", "II", "III"}


def test_triple_point_examples():
    assert len(triple_points(LineConfig.parse(QUAD))) == 4
    assert triple_points(LineConfig.parse("x;y;x+y;x-y")) == [ProjPoint((0, 0, 1))]
    assert triple_points(LineConfig.parse("x;y;z")) == []


def test_restriction(rng):
    hyper = [hyperplane_of_point(ProjPoint.rational(x), 3) for x in (0, 1, -1, 2)]
    H = Form.linear((3, -1, 7, 2))
    cfg = restrict_to_plane(hyper, H)
    assert len(set(cfg.coeffs())) == 4
    with pytest.raises(CoincidentPlane):
        restrict_to_plane(hyper, hyper[0])
    six = [hyperplane_of_point(ProjPoint.rational(x), 3) for x in (0, 1, -1, 2, -2)] + [
        hyperplane_of_point(ProjPoint((1, 0)), 3)
    ]
    for _ in range(50):
        H = Form.linear([rng.randint(-9, 9) for _ in range(4)] or [1, 0, 0, 0])
        try:
            cfg = restrict_to_plane(six, H)
        except CoincidentPlane:
            continue
        assert subgeneral_position(list(cfg.lines), 3)


def test_restriction_tag_invariant_under_basis():
    hyper = [hyperplane_of_point(ProjPoint.rational(x), 3) for x in (0, 1, -1, 2, -2)] + [
        hyperplane_of_point(ProjPoint((1, 0)), 3)
    ]
    H = Form.linear((1, 0, -2, 0))  # the plane through Q1, Q2, Q3 for this divisor
    b1 = [(0, 1, 0, -1), (0, 4, 0, -1), (2, -3, 1, 0)]
    b2 = [(0, 1, 0, 0), (0, 0, 0, 1), (2, 0, 1, 0)]
    t1 = classify_type(restrict_to_plane(hyper, H, b1))
    t2 = classify_type(restrict_to_plane(hyper, H, b2))
    assert t1.tag == t2.tag == "II"
