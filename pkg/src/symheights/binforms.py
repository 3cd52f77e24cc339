"""Integer binary forms and exact arithmetic in Q(alpha).

A binary form of degree k is a tuple ``(c_0, ..., c_k)`` meaning
sum c_i x^i y^(k-i).  Elements of Q(alpha) are ``flint.fmpq_poly`` residues
modulo the minimal polynomial of alpha.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import flint

from .exact_core import content


def bf_mul(f: Sequence, g: Sequence) -> tuple:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def bf_prod(forms) -> tuple:
    out = (1,)
    for f in forms:
        out = bf_mul(out, f)
    return out


def bf_linear(a, b) -> tuple:
    """b x - a y, vanishing at (a:b)."""
    return (-a, b)


def bf_raise(f: Sequence, k: int) -> tuple:
    """Multiply by y^k (keeps the affine part, raises the formal degree)."""
    return tuple(list(f) + [0] * k)


def bf_eval(f: Sequence, a, b):
    k = len(f) - 1
    total = 0
    for i, c in enumerate(f):
        if c:
            total += c * a**i * b ** (k - i)
    return total


def bf_substitute(f: Sequence, m: tuple) -> tuple:
    """f(p x + q y, r x + s y) for m = (p, q, r, s)."""
    p, q, r, s = m
    X = (q, p)  # p x + q y
    Y = (s, r)
    k = len(f) - 1
    xpows = [(1,)]
    ypows = [(1,)]
    for _ in range(k):
        xpows.append(bf_mul(xpows[-1], X))
        ypows.append(bf_mul(ypows[-1], Y))
    out = [0] * (k + 1)
    for i, c in enumerate(f):
        if c:
            term = bf_mul(xpows[i], ypows[k - i])
            for j, t in enumerate(term):
                out[j] += c * t
    return tuple(out)


def bf_clear(forms: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Scale rational forms jointly to coprime integers."""
    fr = [[Fraction(c) for c in f] for f in forms]
    den = lcm(*(c.denominator for f in fr for c in f))
    ints = [[int(c * den) for c in f] for f in fr]
    g = content(c for f in ints for c in f)
    return [tuple(c // g for c in f) for f in ints]


def bf_degree(f: Sequence) -> int:
    """Affine degree (highest power of x with nonzero coefficient)."""
    for i in range(len(f) - 1, -1, -1):
        if f[i]:
            return i
    return -1


def bf_str(f: Sequence, names=("x", "y")) -> str:
    x, y = names
    k = len(f) - 1
    parts = []
    for i in range(k, -1, -1):
        c = f[i]
        if not c:
            continue
        mon = []
        if i:
            mon.append(x if i == 1 else f"{x}^{i}")
        if k - i:
            mon.append(y if k - i == 1 else f"{y}^{k - i}")
        m = "*".join(mon)
        mag = abs(c)
        body = str(mag) if not m else (m if mag == 1 else f"{mag}*{m}")
        parts.append(("-" if c < 0 else "+") + body)
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def bf_parse(s: str) -> tuple[int, ...]:
    import sympy

    x, y = sympy.symbols("x y")
    poly = sympy.Poly(sympy.sympify(s.replace("^", "**")), x, y)
    k = poly.total_degree()
    coeffs = [Fraction(0)] * (k + 1)
    for (i, j), c in poly.terms():
        if i + j != k:
            raise ValueError(f"{s!r} is not homogeneous")
        coeffs[i] = Fraction(int(c.p), int(c.q))
    (out,) = bf_clear([coeffs])
    return out


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Homogeneous resultant of two binary forms of formal degrees m, n.

    Zero exactly when the forms share a root in P^1 (infinity included).
    """
    m, n = len(f) - 1, len(g) - 1
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    fd = list(reversed(f))
    gd = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return int(flint.fmpz_mat(rows).det())


# --------------------------------------------------------------------------
# Q(alpha)


def field_elem(f: Sequence, modulus) -> "flint.fmpq_poly":
    """The value f(alpha, 1) of a binary form, reduced modulo the minimal polynomial."""
    cs = [Fraction(c) for c in f]
    return flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in cs]) % modulus


def field_inv(a, modulus):
    g, s, _ = a.xgcd(modulus)
    if g.degree() != 0:
        raise ZeroDivisionError("not invertible in Q(alpha)")
    return (s / g[0]) % modulus


def as_rational(a) -> Fraction | None:
    """The rational number a, or None if a is not in Q."""
    if a.degree() > 0:
        return None
    c = a[0]
    return Fraction(int(c.p), int(c.q))
