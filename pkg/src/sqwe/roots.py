"""Exact real-root isolation on [0, 1/sqrt(3)] for integer polynomials.

Points are elements of Q(sqrt 3) so that the pure-state endpoint 1/sqrt(3)
is represented exactly; every sign decision is made without rounding.
Polynomials are coefficient lists in ascending order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Number = Union[int, Fraction]


@dataclass(frozen=True)
class QSqrt3:
    """The number a + b*sqrt(3) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def lift(v: Union[Number, QSqrt3]) -> QSqrt3:
        return v if isinstance(v, QSqrt3) else QSqrt3(Fraction(v), Fraction(0))

    def __add__(self, o):
        o = QSqrt3.lift(o)
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QSqrt3.lift(o))

    def __rsub__(self, o):
        return QSqrt3.lift(o) - self

    def __mul__(self, o):
        o = QSqrt3.lift(o)
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QSqrt3.lift(o)
        norm = o.a * o.a - 3 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return self * QSqrt3(o.a / norm, -o.b / norm)

    def __rtruediv__(self, o):
        return QSqrt3.lift(o) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        d = self.a * self.a - 3 * self.b * self.b
        return sa if d > 0 else (-sa if d < 0 else 0)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, QSqrt3)):
            o = QSqrt3.lift(o)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(3)

    @property
    def is_rational(self) -> bool:
        return self.b == 0


INV_SQRT3 = QSqrt3(0, Fraction(1, 3))


def evaluate(coeffs: Sequence, x):
    acc = 0 * x if isinstance(x, QSqrt3) else 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def trim(p: Sequence[Number]) -> list[Fraction]:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def derivative(p: Sequence[Number]) -> list[Fraction]:
    return trim([k * p[k] for k in range(1, len(p))])


def divmod_poly(p: Sequence[Number], d: Sequence[Number]) -> tuple[list[Fraction], list[Fraction]]:
    p, d = trim(p), trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(p) - len(d) + 1, 0)
    r = list(p)
    while len(r) >= len(d) and r:
        shift = len(r) - len(d)
        f = r[-1] / d[-1]
        q[shift] = f
        for i, c in enumerate(d):
            r[shift + i] -= f * c
        r = trim(r)
    return trim(q), r


def gcd_poly(p: Sequence[Number], q: Sequence[Number]) -> list[Fraction]:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def squarefree(p: Sequence[Number]) -> list[Fraction]:
    p = trim(p)
    if len(p) <= 1:
        return p
    g = gcd_poly(p, derivative(p))
    return divmod_poly(p, g)[0] if len(g) > 1 else p


def sturm_sequence(p: Sequence[Number]) -> list[list[Fraction]]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(seq: list[list[Fraction]], x: QSqrt3) -> int:
    signs = [QSqrt3.lift(evaluate(s, x)).sign() for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(seq: list[list[Fraction]], lo: QSqrt3, hi: QSqrt3) -> int:
    """Distinct roots in (lo, hi]; valid when the polynomial is square-free."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def isolate(p: Sequence[Number], lo: QSqrt3, hi: QSqrt3) -> list[tuple[QSqrt3, QSqrt3]]:
    """Disjoint intervals (a, b] each holding exactly one root of p in (lo, hi).

    p must be square-free and nonzero at lo and hi.
    """
    seq = sturm_sequence(p)
    out: list[tuple[QSqrt3, QSqrt3]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        k = count_roots(seq, a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = (a + b) * Fraction(1, 2)
        stack.append((mid, b))
        stack.append((a, mid))
    return sorted(out, key=lambda ab: float(ab[0]))


def refine(p: Sequence[Number], a: QSqrt3, b: QSqrt3, tol: float = 1e-12) -> tuple[QSqrt3, QSqrt3]:
    """Bisect an isolating interval (a, b] of a simple root down to width <= tol."""
    sb = QSqrt3.lift(evaluate(p, b)).sign()
    if sb == 0:
        return b, b
    # one simple root inside, so p has the opposite sign just right of a
    sa = -sb
    while float(b - a) > tol:
        mid = (a + b) * Fraction(1, 2)
        sm = QSqrt3.lift(evaluate(p, mid)).sign()
        if sm == 0:
            return mid, mid
        if sm == sa:
            a = mid
        else:
            b = mid
    return a, b


def roots_in_open_unit_t(p: Sequence[Number], tol: float = 1e-12) -> list[tuple[QSqrt3, QSqrt3]]:
    """Bracketed distinct roots of p strictly inside (0, 1/sqrt 3).

    The factors r and 3r^2 - 1 are divided out first, so the Sturm sequence
    never meets an endpoint root.
    """
    q = squarefree(p)
    if len(q) <= 1:
        return []
    while q and q[0] == 0:
        q = q[1:]
    quot, rem = divmod_poly(q, [-1, 0, 3])
    if not rem:
        q = quot
    if len(q) <= 1:
        return []
    return [refine(q, a, b, tol) for a, b in isolate(q, QSqrt3(0), INV_SQRT3)]
