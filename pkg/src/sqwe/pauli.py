"""n-qubit Pauli operators in the binary symplectic representation.

An operator is stored as ``i**phase_exp * s_0 (x) s_1 (x) ... (x) s_{n-1}``
where each ``s_j`` is one of the Hermitian matrices I, X, Y, Z.  The letter on
qubit ``j`` is encoded by bit ``j`` of the two integers ``x`` and ``z``::

    (x_j, z_j) = (0, 0) -> I,  (1, 0) -> X,  (0, 1) -> Z,  (1, 1) -> Y

so ``phase_exp`` is exactly the phase of the operator relative to its
Hermitian Pauli string.  Products follow the convention ``Y = iXZ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

_LETTERS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_PREFIXES = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "−": 2, "-i": 3, "−i": 3}
_PREFIX_OUT = ("", "i", "-", "-i")


class PauliError(ValueError):
    """Malformed operator text or mismatched qubit counts."""


def popcount(v: int) -> int:
    return v.bit_count()


def product_phase(x1: int, z1: int, k1: int, x2: int, z2: int, k2: int) -> int:
    """Phase exponent of the product of two Pauli strings given as raw fields.

    Each string is rewritten as ``i**(k + |x & z|) X(x) Z(z)``, the middle
    ``Z(z1) X(x2)`` is commuted past at a cost of ``(-1)**|z1 & x2|`` and the
    result is brought back to Hermitian-string form.
    """
    x = x1 ^ x2
    z = z1 ^ z2
    return (
        k1 + k2
        + (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        + 2 * (z1 & x2).bit_count()
        - (x & z).bit_count()
    ) & 3


@dataclass(frozen=True, slots=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase_exp: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise PauliError("qubit count must be non-negative")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise PauliError(f"bit vectors do not fit in {self.n} qubits")
        if not 0 <= self.phase_exp < 4:
            object.__setattr__(self, "phase_exp", self.phase_exp & 3)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_bits(cls, n: int, bits: int, phase_exp: int = 0) -> PauliOperator:
        """Build from the packed pattern ``x | z << n``."""
        mask = (1 << n) - 1
        return cls(n, bits & mask, bits >> n, phase_exp)

    @property
    def bits(self) -> int:
        """Packed 2n-bit pattern ``x | z << n`` (sign-blind)."""
        return self.x | (self.z << self.n)

    @property
    def sign(self) -> complex:
        return (1, 1j, -1, -1j)[self.phase_exp]

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    def with_phase(self, phase_exp: int) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, phase_exp & 3)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return self.with_phase(self.phase_exp + 2)

    def __str__(self) -> str:
        return format_pauli(self)

    def __repr__(self) -> str:
        return f"PauliOperator({format_pauli(self)!r})"


def _check_same_n(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise PauliError(f"qubit count mismatch: {p.n} vs {q.n}")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    _check_same_n(p, q)
    k = product_phase(p.x, p.z, p.phase_exp, q.x, q.z, q.phase_exp)
    return PauliOperator(p.n, p.x ^ q.x, p.z ^ q.z, k)


def weight(p: PauliOperator) -> int:
    return (p.x | p.z).bit_count()


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """0 if ``p`` and ``q`` commute, 1 if they anticommute."""
    _check_same_n(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) & 1


def dot_product(p: PauliOperator, q: PauliOperator) -> int:
    """Standard bilinear form ``x.x' + z.z'`` over GF(2)."""
    _check_same_n(p, q)
    return ((p.x & q.x).bit_count() + (p.z & q.z).bit_count()) & 1


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) == 0


def m3_conjugate(p: PauliOperator) -> PauliOperator:
    """Conjugate every qubit by M3, cycling X -> Y -> Z -> X.

    On the bit fields this is ``(x, z) -> (x ^ z, x)``; the phase is unchanged
    because M3 maps each Hermitian Pauli to a Hermitian Pauli with sign +1.
    """
    return PauliOperator(p.n, p.x ^ p.z, p.x, p.phase_exp)


def build_x_operator(a: int | str, n: int | None = None) -> PauliOperator:
    bits, n = _bitvector(a, n)
    return PauliOperator(n, bits, 0, 0)


def build_z_operator(b: int | str, n: int | None = None) -> PauliOperator:
    bits, n = _bitvector(b, n)
    return PauliOperator(n, 0, bits, 0)


def _bitvector(a: int | str, n: int | None) -> tuple[int, int]:
    if isinstance(a, str):
        return parse_bitvector(a), len(a.strip())
    if n is None:
        raise PauliError("qubit count required for integer bit vectors")
    return a, n


def parse_bitvector(text: str) -> int:
    """'1100' -> int with bit j set for character j."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise PauliError(f"not a binary vector: {text!r}")
    return sum(1 << j for j, c in enumerate(text) if c == "1")


def format_bitvector(v: int, n: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def parse_pauli(text: str) -> PauliOperator:
    s = text.strip()
    if not s:
        raise PauliError("empty operator text")
    body_start = len(s) - len(s.lstrip("+-−i"))
    prefix, body = s[:body_start], s[body_start:]
    if prefix not in _PREFIXES:
        raise PauliError(f"bad phase prefix {prefix!r} in {text!r}")
    if not body:
        raise PauliError(f"no Pauli letters in {text!r}")
    x = z = 0
    for j, c in enumerate(body):
        try:
            xb, zb = _LETTERS[c]
        except KeyError:
            raise PauliError(f"illegal character {c!r} in {text!r}") from None
        x |= xb << j
        z |= zb << j
    return PauliOperator(len(body), x, z, _PREFIXES[prefix])


def format_pauli(p: PauliOperator) -> str:
    letters = []
    for j in range(p.n):
        letters.append("IXZY"[((p.x >> j) & 1) | (((p.z >> j) & 1) << 1)])
    return _PREFIX_OUT[p.phase_exp] + "".join(letters)


def single_qubit(n: int, qubit: int, letter: str) -> PauliOperator:
    xb, zb = _LETTERS[letter]
    return PauliOperator(n, xb << qubit, zb << qubit, 0)


def product(ops: Iterable[PauliOperator], n: int) -> PauliOperator:
    acc = PauliOperator.identity(n)
    for op in ops:
        acc = multiply(acc, op)
    return acc
