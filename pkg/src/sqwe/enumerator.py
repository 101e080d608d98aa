"""Signed quantum weight enumerators and the distillation behaviour they fix.

For a code with recovery frame (X̄, Ȳ, Z̄) the enumerator of axis Q sums
``lambda(P) * r**wt(P)`` over the coset Q̄G.  Everything here is exact
(integers, fractions, Q(sqrt 3)) except the final float rendering of roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import gf2
from .code import (
    AXES,
    CodeError,
    LogicalFrame,
    Relabeling,
    StabilizerCode,
    choose_logical_frame,
    group_elements,
    is_m3_code,
    relabelings,
    require_valid,
)
from .pauli import PauliOperator, multiply, parse_bitvector, weight
from .roots import INV_SQRT3, QSqrt3, roots_in_open_unit_t

SQRT3 = math.sqrt(3.0)
Scalar = Union[int, Fraction, float, QSqrt3]


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in r̄, coefficients in ascending powers."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __call__(self, x: Scalar):
        acc = 0 * x if isinstance(x, QSqrt3) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __len__(self) -> int:
        return len(self.coeffs)

    def _pad(self, other: IntPolynomial) -> tuple[list[int], list[int]]:
        m = max(len(self), len(other))
        return (list(self.coeffs) + [0] * (m - len(self)), list(other.coeffs) + [0] * (m - len(other)))

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self._pad(other)
        return IntPolynomial(tuple(u + v for u, v in zip(a, b)))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self._pad(other)
        return IntPolynomial(tuple(u - v for u, v in zip(a, b)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def scale(self, k: int) -> IntPolynomial:
        return IntPolynomial(tuple(k * c for c in self.coeffs))

    def shift(self) -> IntPolynomial:
        """Multiply by r̄."""
        return IntPolynomial((0,) + self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def same_as(self, other: IntPolynomial) -> bool:
        """Equality ignoring trailing zero coefficients."""
        a, b = self._pad(other)
        return a == b

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: f"{'' if mag == 1 else mag}r"}.get(k, f"{'' if mag == 1 else mag}r^{k}")
            terms.append(("- " if c < 0 else "+ ") + body)
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class SignedEnumeratorSet:
    W_I: IntPolynomial
    W_X: IntPolynomial
    W_Y: IntPolynomial
    W_Z: IntPolynomial
    frame: LogicalFrame | None = None

    def axis(self, a: str) -> IntPolynomial:
        return {"I": self.W_I, "X": self.W_X, "Y": self.W_Y, "Z": self.W_Z}[a]

    @property
    def axes_equal(self) -> bool:
        return self.W_X == self.W_Y == self.W_Z

    @property
    def n(self) -> int:
        return len(self.W_I) - 1

    def relabel(self, relabeling: Relabeling, frame: LogicalFrame | None = None) -> SignedEnumeratorSet:
        """Enumerators after a signed axis permutation of the frame: W'_k = s_k W_{a_k}."""
        polys = [self.axis(a).scale(s) for s, a in relabeling]
        return SignedEnumeratorSet(self.W_I, *polys, frame=frame)


def compute_enumerators(code: StabilizerCode, frame: LogicalFrame) -> SignedEnumeratorSet:
    """Walk G in Gray-code order and each coset L̄G alongside it."""
    n = code.n
    reps = {"I": PauliOperator.identity(n), "X": frame.xbar, "Y": frame.ybar, "Z": frame.zbar}
    polys = {}
    elements = group_elements(code)
    for q, rep in reps.items():
        coeffs = [0] * (n + 1)
        for g in elements:
            p = multiply(rep, g)
            if p.phase_exp % 2:
                raise CodeError(f"coset element {p} has imaginary phase")
            coeffs[weight(p)] += 1 if p.phase_exp == 0 else -1
        polys[q] = IntPolynomial(tuple(coeffs))
    return SignedEnumeratorSet(polys["I"], polys["X"], polys["Y"], polys["Z"], frame)


def unsigned_enumerator(code: StabilizerCode) -> IntPolynomial:
    require_valid(code)
    coeffs = [0] * (code.n + 1)
    for g in group_elements(code):
        coeffs[weight(g)] += 1
    return IntPolynomial(tuple(coeffs))


def cancellation_free(code: StabilizerCode, frame: LogicalFrame) -> bool:
    """True when no opposite-sign operators share a weight in G or any coset L̄G."""
    enums = compute_enumerators(code, frame)
    total = sum(abs(c) for q in "IXYZ" for c in enums.axis(q).coeffs)
    return total == 4 * 2 ** (code.n - 1)


# -- threshold ---------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdResult:
    threshold_r: float
    useful: bool
    rbar_star: float | None = None
    fixed_points: tuple[float, ...] = ()
    positive_somewhere: bool = False
    multi_root: bool = False
    degenerate: bool = False
    root_bracket: tuple[QSqrt3, QSqrt3] | None = field(default=None, compare=False)


def threshold(poly: IntPolynomial, tol: float = 1e-12) -> ThresholdResult:
    """Threshold r* from a distillation polynomial.

    Distinct roots in (0, 1/sqrt 3) are isolated with a Sturm sequence and
    bisected to width ``tol``.  If the polynomial is positive just below
    1/sqrt 3, r* is sqrt(3) times the largest interior root (or 0 when there
    is none); otherwise r* = 1.
    """
    if poly.is_zero:
        return ThresholdResult(1.0, False, degenerate=True)
    brackets = roots_in_open_unit_t(poly.coeffs, tol)
    edges = [(QSqrt3(0), QSqrt3(0))] + brackets + [(INV_SQRT3, INV_SQRT3)]
    signs = []
    for (_, hi), (lo, _) in zip(edges, edges[1:]):
        signs.append(QSqrt3.lift(poly((hi + lo) * Fraction(1, 2))).sign())
    roots = [float((a + b) * Fraction(1, 2)) for a, b in brackets]
    fixed = tuple([0.0] + roots + [float(INV_SQRT3)])
    positive = any(s > 0 for s in signs)
    if signs[-1] > 0:
        rbar0 = roots[-1] if roots else 0.0
        bracket = brackets[-1] if brackets else None
        return ThresholdResult(SQRT3 * rbar0, True, rbar0, fixed, positive, len(roots) > 1, root_bracket=bracket)
    return ThresholdResult(1.0, False, None, fixed, positive, len(roots) > 1)


def distillation_polynomial(enums: SignedEnumeratorSet) -> IntPolynomial:
    """W_L - r̄ W_I for an axis-preserving enumerator set."""
    if not enums.axes_equal:
        raise ValueError("distillation polynomial needs W_X = W_Y = W_Z")
    return enums.W_X - enums.W_I.shift()


def output_gain(enums: SignedEnumeratorSet, rbar: Scalar):
    """(r̄' - r̄) * W_I(r̄), which must equal W_dist(r̄)."""
    wi = enums.W_I(rbar)
    return (enums.W_X(rbar) / wi - rbar) * wi


# -- output state and success probability ------------------------------------


@dataclass(frozen=True)
class Theorem1Output:
    bloch: tuple
    success_probability: object


def _exact(v):
    if isinstance(v, QSqrt3) and v.is_rational:
        return v.a
    return v


def rbar_from_r(r: Union[int, Fraction]) -> QSqrt3:
    """r̄ = r / sqrt(3) as an exact element of Q(sqrt 3)."""
    return QSqrt3(0, Fraction(r) / 3)


def theorem1_outputs(enums: SignedEnumeratorSet, rbar: Scalar) -> Theorem1Output:
    """Output Bloch vector W_L/W_I and success probability W_I/2^(n-1) at r̄."""
    if isinstance(rbar, (int, Fraction)):
        rbar = Fraction(rbar)
    wi = enums.W_I(rbar)
    sign = wi.sign() if isinstance(wi, QSqrt3) else (wi > 0) - (wi < 0)
    if sign <= 0:
        raise ValueError(f"W_I({rbar}) = {wi} is not positive; projection never succeeds")
    bloch = tuple(_exact(enums.axis(a)(rbar) / wi) for a in AXES)
    denom = 2 ** (enums.n - 1)
    if isinstance(wi, float):
        prob = wi / denom
    elif isinstance(wi, QSqrt3):
        prob = _exact(wi / denom)
    else:
        prob = Fraction(wi) / denom
    return Theorem1Output(bloch, prob)


def twirl(bloch: Sequence[float]) -> tuple:
    m = sum(bloch) / 3
    return (m, m, m)


# -- axis preservation and the full report ------------------------------------


@dataclass(frozen=True)
class AxisVerdict:
    preserving: bool
    relabeling: Relabeling | None
    enumerators: SignedEnumeratorSet


def preserving_relabelings(base: SignedEnumeratorSet) -> list[Relabeling]:
    return [rl for rl in relabelings() if base.relabel(rl).axes_equal]


def orientation_preference(w_i: IntPolynomial, w_l: IntPolynomial) -> tuple[bool, bool]:
    """Ranking key for the two orientations +-W_L of a preserving code.

    A pure |T> input decodes to a pure state on the T axis, so exactly one
    sign makes r̄ = 1/sqrt 3 a fixed point (both do when W_I(1/sqrt 3) = 0).
    That sign wins; among ties a useful threshold wins.
    """
    wd = w_l - w_i.shift()
    return (wd(INV_SQRT3) == 0, threshold(wd).useful)


def check_t_axis_preserving(code: StabilizerCode) -> AxisVerdict:
    """Try all 24 relabelings of the canonical frame.

    The relabelings that make the axes coincide give W_L or -W_L; the
    orientation is chosen by :func:`orientation_preference`, and remaining
    ties keep W_L equal to the canonical frame's W_X.
    """
    base_frame = choose_logical_frame(code)
    base = compute_enumerators(code, base_frame)
    candidates = preserving_relabelings(base)
    if not candidates:
        return AxisVerdict(False, None, base)
    candidates.sort(key=lambda rl: base.relabel(rl).W_X != base.W_X)
    chosen = max(candidates, key=lambda rl: orientation_preference(base.W_I, base.relabel(rl).W_X))
    frame = choose_logical_frame(code, chosen)
    return AxisVerdict(True, chosen, base.relabel(chosen, frame))


@dataclass(frozen=True)
class DistillationReport:
    code: StabilizerCode
    enumerators: SignedEnumeratorSet
    t_axis_preserving: bool
    relabeling: Relabeling | None
    w_dist: IntPolynomial | None
    threshold: ThresholdResult | None
    m3_code: bool
    wi_zero_points: tuple[float, ...] = ()

    @property
    def useful(self) -> bool:
        return bool(self.threshold and self.threshold.useful)

    @property
    def threshold_r(self) -> float:
        return self.threshold.threshold_r if self.threshold else 1.0

    def success_probability(self, rbar: Scalar):
        return theorem1_outputs(self.enumerators, rbar).success_probability

    def output_bloch(self, rbar: Scalar) -> tuple:
        return theorem1_outputs(self.enumerators, rbar).bloch

    def to_dict(self) -> dict:
        e = self.enumerators
        th = self.threshold
        return {
            "n": self.code.n,
            "generators": [str(g) for g in self.code.generators],
            "m3_code": self.m3_code,
            "t_axis_preserving": self.t_axis_preserving,
            "relabeling": [list(t) for t in self.relabeling] if self.relabeling else None,
            "logical": {
                "X": str(e.frame.xbar), "Y": str(e.frame.ybar), "Z": str(e.frame.zbar)
            } if e.frame else None,
            "W_I": list(e.W_I.coeffs),
            "W_X": list(e.W_X.coeffs),
            "W_Y": list(e.W_Y.coeffs),
            "W_Z": list(e.W_Z.coeffs),
            "W_dist": list(self.w_dist.coeffs) if self.w_dist else None,
            "threshold": f"{self.threshold_r:.12f}",
            "useful": self.useful,
            "fixed_points_rbar": [f"{v:.12f}" for v in th.fixed_points] if th else [],
            "multi_root": bool(th and th.multi_root),
            "wi_zero_points_rbar": [f"{v:.12f}" for v in self.wi_zero_points],
        }


def analyze(code: StabilizerCode) -> DistillationReport:
    require_valid(code)
    verdict = check_t_axis_preserving(code)
    enums = verdict.enumerators
    wdist = th = None
    if verdict.preserving:
        wdist = distillation_polynomial(enums)
        th = threshold(wdist)
    wi_zeros = tuple(float((a + b) * Fraction(1, 2)) for a, b in roots_in_open_unit_t(enums.W_I.coeffs))
    return DistillationReport(
        code, enums, verdict.preserving, verdict.relabeling, wdist, th, is_m3_code(code), wi_zeros
    )


# -- reduction from classical weight problems ---------------------------------


def build_x_code(vectors: Sequence[Union[str, int]], n: int | None = None) -> StabilizerCode:
    """All-X stabilizer code with one generator X(a) per binary vector a."""
    bits = []
    for v in vectors:
        if isinstance(v, str):
            if n is None:
                n = len(v.strip())
            elif len(v.strip()) != n:
                raise CodeError(f"vector {v!r} does not have length {n}")
            bits.append(parse_bitvector(v))
        else:
            bits.append(int(v))
    if n is None:
        raise CodeError("vector length unknown")
    if len(bits) != n - 1:
        raise CodeError(f"need {n - 1} vectors of length {n}, got {len(bits)}")
    if gf2.rank(bits) != len(bits):
        raise CodeError("vectors are linearly dependent")
    return StabilizerCode(n, tuple(PauliOperator(n, b, 0, 0) for b in bits))


def x_weight_distribution(vectors: Sequence[str], n: int | None = None) -> IntPolynomial:
    """Weight distribution of the group generated by X(a) for independent vectors a.

    Unlike :func:`build_x_code` any number k <= n of vectors is allowed; the
    result is W_I of the (generally not [[n,1]]) stabilizer group they generate.
    """
    bits = []
    for v in vectors:
        v = v.strip()
        if n is None:
            n = len(v)
        elif len(v) != n:
            raise CodeError(f"vector {v!r} does not have length {n}")
        bits.append(parse_bitvector(v))
    if n is None:
        raise CodeError("vector length unknown")
    if gf2.rank(bits) != len(bits):
        raise CodeError("vectors are linearly dependent")
    coeffs = [0] * (n + 1)
    for v in gf2.span(bits):
        coeffs[v.bit_count()] += 1
    return IntPolynomial(tuple(coeffs))
