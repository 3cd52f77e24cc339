import math
from fractions import Fraction
from itertools import combinations, permutations

import flint
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from symheights.algebraic import (
    AlgPoint,
    alg_height,
    conjugates,
    hyperplane_of_point,
    monomial_slack,
    prox_alg,
    prox_alg_expr,
    psi,
    sigma,
    transport_defect,
)
from symheights.errors import OnSupport, WrongDegree
from symheights.exact_core import LogVal, PlaceSet
from symheights.heights import Divisor1, ProjPoint, global_height, prox

Z = sympy.symbols("z")


def mahler_oracle(minpoly):
    roots = sympy.Poly(list(reversed(minpoly)), Z).nroots(n=30)
    val = abs(minpoly[-1])
    for r in roots:
        val *= max(1, abs(complex(r)))
    return math.log(val)


def random_irreducible(rng, e, B=9):
    while True:
        cs = [rng.randint(-B, B) for _ in range(e)] + [rng.randint(1, B)]
        if cs[0] == 0:
            continue
        try:
            return AlgPoint.from_minpoly(cs)
        except ValueError:
            continue


def test_conjugate_examples():
    r = conjugates(AlgPoint.parse("x^2-2"))
    assert [round(float(z.real.mid()), 6) for z in r] == [-1.414214, 1.414214]
    r = conjugates(AlgPoint.parse("x^2+1"))
    assert sorted(round(float(z.imag.mid()), 6) for z in r) == [-1.0, 1.0]
    r = conjugates(AlgPoint.parse("x^3-x-1"))
    real = [z for z in r if z.imag.contains(0) and abs(float(z.real.mid()) - 1.3247) < 1e-4]
    assert len(real) == 1
    for a, b in combinations(r, 2):
        assert not a.overlaps(b)


def test_height_examples():
    enc = alg_height(AlgPoint.rational(Fraction(-7, 3)))
    assert float(enc.width) < 1e-20 and enc.mid == pytest.approx(math.log(7))
    half_log2 = math.log(2) / 2
    for s in ("x^2-2", "2*x^2-1"):
        enc = alg_height(AlgPoint.parse(s))
        assert float(enc.lo) - 1e-15 <= half_log2 <= float(enc.hi) + 1e-15


def test_heights_against_nroots(rng):
    for e in (2, 3, 4):
        for _ in range(20):
            P = random_irreducible(rng, e)
            enc = alg_height(P)
            assert float(enc.width) < 1e-12
            assert abs(enc.mid - mahler_oracle(P.minpoly) / e) < 1e-10


def test_prox_examples():
    P = AlgPoint.parse("x^2-2")
    assert prox_alg(P, Divisor1.parse("2"), "7").hi == 0
    for x in (Fraction(5, 3), Fraction(-8), Fraction(1, 12)):
        D = Divisor1.parse("0,1,inf")
        enc = prox_alg(AlgPoint.rational(x), D, "inf,2,3")
        assert float(enc.width) < 1e-20
        assert enc.mid == pytest.approx(float(prox(ProjPoint.rational(x), D, "inf,2,3")))
    with pytest.raises(OnSupport):
        prox_alg(AlgPoint.rational(1), Divisor1.parse("0,1"), "inf")


def test_two_adic_closeness_to_zero():
    # |sqrt 2|_2 = 2^(-1/2) on the single ramified place above 2
    expr = prox_alg_expr(AlgPoint.parse("x^2-2"), Divisor1.parse("0"), "2")
    assert expr.is_exact and expr.exact == LogVal(2, 2)


def test_archimedean_prox_against_nroots(rng):
    D = Divisor1.parse("0,1,-2,inf")
    for _ in range(30):
        P = random_irreducible(rng, rng.choice([2, 3]))
        roots = [complex(r) for r in sympy.Poly(list(reversed(P.minpoly)), Z).nroots(n=30)]
        total = 0.0
        for pt in D.points:
            a, b = pt.coords
            for al in roots:
                total += math.log(max(abs(a), abs(b)) * max(1, abs(al)) / abs(b * al - a))
        total /= P.degree
        assert prox_alg(P, D, "inf").mid == pytest.approx(total, abs=1e-9)


def test_all_places_sum(rng):
    """Summed over every place, m_{Q,S}(P) = h(P) + h(Q)."""
    for _ in range(40):
        P = random_irreducible(rng, rng.choice([2, 3]))
        Q = ProjPoint.from_ints([rng.randint(-9, 9), rng.randint(1, 9)])
        a, b = Q.coords
        F = P.form_at(a, b)
        primes = sorted(set(sympy.primefactors(F * P.minpoly[-1])))
        S = PlaceSet.parse(["inf"] + [str(p) for p in primes])
        lhs = prox_alg(P, Divisor1([Q]), S)
        rhs = alg_height(P).mid + float(global_height(Q))
        assert lhs.mid == pytest.approx(rhs, abs=1e-9)


def test_sigma_examples():
    assert sigma([ProjPoint((1, 1)), ProjPoint((2, 1))]).coords == (2, -3, 1)
    assert sigma([ProjPoint((0, 1)), ProjPoint((1, 0))]).coords == (0, 1, 0)


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(any), min_size=3, max_size=3))
@settings(max_examples=100)
def test_sigma_symmetric(pairs):
    pts = [ProjPoint(p) for p in pairs]
    ref = sigma(pts)
    assert all(sigma(list(perm)) == ref for perm in permutations(pts))


def test_psi_examples():
    assert psi(AlgPoint.parse("x^2-2"), 2) == ProjPoint((-2, 0, 1))
    assert psi(AlgPoint.parse("x^3-x-1"), 3) == ProjPoint((-1, -1, 0, 1))
    with pytest.raises(WrongDegree):
        psi(AlgPoint.parse("x^2-2"), 3)


def test_psi_equals_sigma_of_conjugates_enclosure(rng):
    for _ in range(30):
        P = random_irreducible(rng, 3)
        prod = [flint.acb(1)]
        for r in conjugates(P):
            nxt = [flint.acb(0)] * (len(prod) + 1)
            for i, c in enumerate(prod):
                nxt[i] -= c * r
                nxt[i + 1] += c
            prod = nxt
        lead = P.minpoly[-1]
        for c, ball in zip(P.minpoly, prod):
            assert (ball * lead).contains(c)


def test_hyperplane_examples():
    assert hyperplane_of_point(ProjPoint((2, 1)), 2).linear_coeffs() == (1, 2, 4)
    assert hyperplane_of_point(ProjPoint((0, 1)), 3).linear_coeffs() == (1, 0, 0, 0)
    assert hyperplane_of_point(ProjPoint((1, 0)), 2).linear_coeffs() == (0, 0, 1)


def test_hyperplane_preimage_by_division(rng):
    """A point of H_P is a binary form vanishing at P; dividing out P leaves the other slots."""
    for _ in range(200):
        d = rng.randint(2, 4)
        P = ProjPoint.from_ints([rng.randint(-6, 6), rng.randint(1, 6)])
        others = [ProjPoint.from_ints([rng.randint(-6, 6), rng.randint(0, 6) or 1]) for _ in range(d - 1)]
        c = sigma([P] + others).coords
        assert hyperplane_of_point(P, d)(c) == 0
        a, b = P.coords
        x, y = sympy.symbols("x y")
        form = sum(ci * x**i * y ** (d - i) for i, ci in enumerate(c))
        q, r = sympy.div(sympy.Poly(form, x, y), sympy.Poly(b * x - a * y, x, y))
        assert r.is_zero
        rest = sympy.Poly(sympy.prod([o.coords[1] * x - o.coords[0] * y for o in others]), x, y)
        assert sympy.simplify(q.as_expr() / rest.as_expr()).is_rational


def test_psi_on_no_rational_hyperplane(rng):
    for _ in range(200):
        P = random_irreducible(rng, rng.choice([2, 3, 4]))
        Q = ProjPoint.from_ints([rng.randint(-20, 20), rng.randint(0, 20) or 1])
        assert hyperplane_of_point(Q, P.degree)(psi(P).coords) != 0


@pytest.mark.parametrize("e", [2, 3])
def test_transport_families_bounded(e):
    D = Divisor1.parse("0,1,inf")
    slack = D.q * monomial_slack(e)
    worst = [0.0, 0.0]
    for n in range(2, 1001):
        try:
            P = AlgPoint.from_minpoly([-n] + [0] * (e - 1) + [1])
        except ValueError:
            continue
        m, h = transport_defect(P, D, "inf,2")
        worst = [max(worst[0], float(m.hi)), max(worst[1], float(h.hi))]
    assert worst[0] <= slack and worst[1] <= monomial_slack(e)


def test_transport_example_sqrt2():
    m, h = transport_defect(AlgPoint.parse("x^2-2"), Divisor1.parse("0,1,inf"), "inf,2")
    assert float(m.hi) < 10 and float(h.hi) < 10
