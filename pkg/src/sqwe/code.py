"""[[n,1]] stabilizer codes and the coset classification of the recovery map.

The recovery map sends a Pauli operator to 0 unless it commutes with the whole
stabilizer group G; on the normalizer it is a homomorphism onto the
single-qubit Pauli group with kernel G.  We never build a decoding circuit:
a :class:`LogicalFrame` fixes representatives of the X, Y, Z cosets and every
operator is classified by which coset it lands in and with what phase.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from . import gf2
from .pauli import (
    PauliOperator,
    commutes,
    m3_conjugate,
    multiply,
    parse_pauli,
    product_phase,
    symplectic_product,
    weight,
)

AXES = ("X", "Y", "Z")


class CodeError(ValueError):
    """The generator list does not define a valid [[n,1]] stabilizer code."""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str = ""
    detail: str = ""
    indices: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


class _PhasedEchelon:
    """Row echelon form of a set of commuting Hermitian Paulis, with phases.

    Rows are keyed by the highest set bit of their pattern.  Reducing an
    operator multiplies it by rows until the pattern vanishes or no pivot
    applies; the phase of the leftover identity tells the sign.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, PauliOperator] = {}

    def reduce(self, p: PauliOperator) -> PauliOperator:
        n = self.n
        mask = (1 << n) - 1
        x, z, k = p.x, p.z, p.phase_exp
        bits = x | (z << n)
        while bits:
            row = self.rows.get(bits.bit_length() - 1)
            if row is None:
                break
            k = product_phase(x, z, k, row.x, row.z, row.phase_exp)
            x ^= row.x
            z ^= row.z
            bits = x | (z << n)
        return PauliOperator(n, x & mask, z, k)

    def add(self, p: PauliOperator) -> PauliOperator:
        """Insert p; returns the reduced residue (identity pattern if dependent)."""
        r = self.reduce(p)
        if r.x or r.z:
            self.rows[r.bits.bit_length() - 1] = r
        return r


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    generators: tuple[PauliOperator, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.n != self.n:
                raise CodeError(f"generator {g} has {g.n} qubits, expected {self.n}")

    @classmethod
    def from_strings(cls, texts: Iterable[str], n: int | None = None) -> StabilizerCode:
        gens = tuple(parse_pauli(t) for t in texts)
        if n is None:
            if not gens:
                raise CodeError("qubit count required for an empty generator list")
            n = gens[0].n
        return cls(n, gens)

    @cached_property
    def _echelon(self) -> _PhasedEchelon:
        ech = _PhasedEchelon(self.n)
        for g in self.generators:
            ech.add(g)
        return ech

    @cached_property
    def patterns(self) -> tuple[int, ...]:
        return tuple(g.bits for g in self.generators)

    def __str__(self) -> str:
        return "\n".join(str(g) for g in self.generators)


def validate(code: StabilizerCode) -> ValidationReport:
    gens = code.generators
    for i, g in enumerate(gens):
        if not g.is_hermitian:
            return ValidationReport(False, "complex_phase", f"generator {i} ({g}) has phase ±i", (i,))
    for i, j in itertools.combinations(range(len(gens)), 2):
        if symplectic_product(gens[i], gens[j]):
            return ValidationReport(
                False, "anticommuting", f"generators {i} ({gens[i]}) and {j} ({gens[j]}) anticommute", (i, j)
            )
    ech = _PhasedEchelon(code.n)
    for i, g in enumerate(gens):
        r = ech.add(g)
        if r.x or r.z:
            continue
        if r.phase_exp == 2:
            return ValidationReport(False, "minus_identity", f"generators up to {i} produce -I", (i,))
        return ValidationReport(False, "dependent", f"generator {i} ({g}) is a product of earlier ones", (i,))
    if len(gens) != code.n - 1:
        return ValidationReport(
            False, "count", f"{len(gens)} generators given, an [[{code.n},1]] code needs {code.n - 1}"
        )
    return ValidationReport(True)


def require_valid(code: StabilizerCode) -> None:
    report = validate(code)
    if not report:
        raise CodeError(report.detail)


def membership_with_phase(p: PauliOperator, code: StabilizerCode) -> int | None:
    """+1 if p is in G, -1 if p is in -G, None otherwise."""
    r = code._echelon.reduce(p)
    if r.x or r.z or r.phase_exp % 2:
        return None
    return 1 if r.phase_exp == 0 else -1


def normalizer_basis(code: StabilizerCode) -> list[PauliOperator]:
    """The generators followed by two operators that complete a basis of G⊥."""
    require_valid(code)
    n = code.n
    normal = gf2.truncate(code.patterns, gf2.full_basis(n), gf2.symplectic_form(n))
    piv = gf2.rref(code.patterns)
    extra: list[PauliOperator] = []
    for v in normal:
        r = gf2.reduce(v, piv)
        if r:
            extra.append(PauliOperator.from_bits(n, v))
            piv = gf2.rref(list(piv.values()) + [r])
        if len(extra) == 2:
            break
    return list(code.generators) + extra


# Signed axis permutations: entry k says which base axis (and sign) becomes axis k.
Relabeling = tuple[tuple[int, str], tuple[int, str], tuple[int, str]]

IDENTITY_RELABELING: Relabeling = ((1, "X"), (1, "Y"), (1, "Z"))


def _perm_parity(perm: Sequence[str]) -> int:
    idx = [AXES.index(a) for a in perm]
    inversions = sum(1 for i, j in itertools.combinations(range(3), 2) if idx[i] > idx[j])
    return -1 if inversions % 2 else 1


def relabelings() -> list[Relabeling]:
    """The 24 rotations of the octahedron as signed permutations, identity first."""
    out = []
    for perm in itertools.permutations(AXES):
        for signs in itertools.product((1, -1), repeat=3):
            if _perm_parity(perm) * signs[0] * signs[1] * signs[2] == 1:
                out.append(tuple(zip(signs, perm)))
    return out


@dataclass(frozen=True)
class LogicalFrame:
    xbar: PauliOperator
    ybar: PauliOperator
    zbar: PauliOperator
    relabeling: Relabeling = IDENTITY_RELABELING

    def rep(self, axis: str) -> PauliOperator:
        return {"X": self.xbar, "Y": self.ybar, "Z": self.zbar}[axis]


def _base_frame(code: StabilizerCode) -> tuple[PauliOperator, PauliOperator, PauliOperator]:
    n = code.n
    a, b, _ = gf2.logical_reps(code.patterns, n)
    xbar = PauliOperator.from_bits(n, a)
    zbar = PauliOperator.from_bits(n, b)
    y = multiply(xbar, zbar)
    ybar = y.with_phase(y.phase_exp + 1)
    return xbar, ybar, zbar


def choose_logical_frame(code: StabilizerCode, relabeling: Relabeling = IDENTITY_RELABELING) -> LogicalFrame:
    """Deterministic logical operators, then a signed axis permutation.

    The base X̄ and Z̄ are the two smallest canonical coset representatives
    (reduced against the RREF of G), with phase +1; Ȳ = iX̄Z̄.
    """
    require_valid(code)
    base = dict(zip(AXES, _base_frame(code)))
    reps = []
    for sign, axis in relabeling:
        b = base[axis]
        reps.append(b if sign == 1 else -b)
    frame = LogicalFrame(reps[0], reps[1], reps[2], tuple(relabeling))
    y = multiply(frame.xbar, frame.zbar)
    if y.with_phase(y.phase_exp + 1) != frame.ybar:
        raise CodeError(f"relabeling {relabeling} is not a rotation")
    return frame


@dataclass(frozen=True)
class CosetLabel:
    """Image of an operator under the recovery map: 0, or i**phase_exp times I/X/Y/Z."""

    axis: str | None
    phase_exp: int = 0

    @property
    def is_zero(self) -> bool:
        return self.axis is None

    @property
    def sign(self) -> complex:
        return (1, 1j, -1, -1j)[self.phase_exp]

    def __mul__(self, other: CosetLabel) -> CosetLabel:
        if self.is_zero or other.is_zero:
            return ZERO
        p = multiply(_one_qubit(self.axis, self.phase_exp), _one_qubit(other.axis, other.phase_exp))
        axis = "IXZY"[p.x | (p.z << 1)]
        return CosetLabel(axis, p.phase_exp)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return ("", "i", "-", "-i")[self.phase_exp] + self.axis


ZERO = CosetLabel(None)


def _one_qubit(axis: str, k: int) -> PauliOperator:
    x, z = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}[axis]
    return PauliOperator(1, x, z, k)


def classify(p: PauliOperator, code: StabilizerCode, frame: LogicalFrame) -> CosetLabel:
    for g in code.generators:
        if not commutes(p, g):
            return ZERO
    a = symplectic_product(p, frame.zbar)
    b = symplectic_product(p, frame.xbar)
    axis = "IXZY"[a | (b << 1)]
    residue = p if axis == "I" else multiply(p, frame.rep(axis))
    r = code._echelon.reduce(residue)
    if r.x or r.z:
        raise CodeError(f"{p} commutes with G but is not in its normalizer cosets; frame is corrupt")
    return CosetLabel(axis, r.phase_exp)


def is_m3_code(code: StabilizerCode) -> bool:
    return all(membership_with_phase(m3_conjugate(g), code) == 1 for g in code.generators)


def standard_form(code: StabilizerCode) -> StabilizerCode:
    """Diagonalize the X part of the first n-1 qubits by generator products.

    The row whose pivot is X on qubit c is placed at index c; rows without a
    pivot (rank-deficient X part) fill the remaining slots in order.
    """
    require_valid(code)
    n = code.n
    rows = list(code.generators)
    pivots: dict[int, int] = {}
    for col in range(n - 1):
        pick = next(
            (i for i in range(len(rows)) if i not in pivots.values() and (rows[i].x >> col) & 1), None
        )
        if pick is None:
            continue
        pivots[col] = pick
        for i in range(len(rows)):
            if i != pick and (rows[i].x >> col) & 1:
                rows[i] = multiply(rows[i], rows[pick])
    out: list[PauliOperator | None] = [None] * len(rows)
    for col, i in pivots.items():
        out[col] = rows[i]
    rest = iter(i for i in range(len(rows)) if i not in pivots.values())
    for slot in range(len(out)):
        if out[slot] is None:
            out[slot] = rows[next(rest)]
    return StabilizerCode(n, tuple(out))


def m3_pairs(code: StabilizerCode) -> list[tuple[int, int]] | None:
    """Partition generator indices into pairs whose patterns are related by M3 conjugation.

    Returns None when no such pairing of the listed generators exists.
    """
    gens = list(code.generators)
    remaining = list(range(len(gens)))
    pairs = []
    while remaining:
        i = remaining.pop(0)
        forward = m3_conjugate(gens[i]).bits
        backward = m3_conjugate(m3_conjugate(gens[i])).bits
        j = next((j for j in remaining if gens[j].bits in (forward, backward)), None)
        if j is None:
            return None
        remaining.remove(j)
        pairs.append((i, j))
    return pairs


def group_elements(code: StabilizerCode) -> list[PauliOperator]:
    """All 2^(n-1) elements of G with exact phases, in Gray-code order."""
    n = code.n
    g = PauliOperator.identity(n)
    out = [g]
    gens = code.generators
    for i in range(1, 1 << len(gens)):
        g = multiply(g, gens[(i & -i).bit_length() - 1])
        out.append(g)
    return out


def min_weight(code: StabilizerCode) -> int:
    """Smallest weight of a non-identity element of G (0 for the trivial group)."""
    ws = [weight(g) for g in group_elements(code)[1:]]
    return min(ws) if ws else 0


def read_code_file(path: str | Path) -> StabilizerCode:
    return parse_code_text(Path(path).read_text(encoding="utf-8"))


def parse_code_text(text: str, n: int | None = None) -> StabilizerCode:
    """One generator per line; '#' starts a comment; blank lines are skipped.

    A line ``n = 1`` style directive is accepted so that an empty [[1,1]] code
    can be written down.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.replace(" ", "").startswith("n="):
            n = int(line.split("=", 1)[1])
            continue
        lines.append(line)
    return StabilizerCode.from_strings(lines, n)


def format_code_text(code: StabilizerCode) -> str:
    body = "\n".join(str(g) for g in code.generators)
    if not code.generators:
        return f"n = {code.n}\n"
    return body + "\n"
