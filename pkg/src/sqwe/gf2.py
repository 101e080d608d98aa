"""Sign-blind GF(2) helpers on packed Pauli patterns.

A pattern is the integer ``x | z << n``.  Nothing in here tracks phases;
callers that need signs work with :class:`sqwe.pauli.PauliOperator`.
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

InnerProduct = Callable[[int, int], int]


def full_basis(n: int) -> list[int]:
    """``[Z_1, ..., Z_n, X_1, ..., X_n]`` as patterns."""
    return [1 << (n + j) for j in range(n)] + [1 << j for j in range(n)]


def symplectic_form(n: int) -> InnerProduct:
    mask = (1 << n) - 1

    def form(u: int, v: int) -> int:
        swapped = (v >> n) | ((v & mask) << n)
        return (u & swapped).bit_count() & 1

    return form


def dot_form(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def pattern_weight(v: int, n: int) -> int:
    return ((v | (v >> n)) & ((1 << n) - 1)).bit_count()


def truncate(S: Sequence[int], R: Sequence[int], inner: InnerProduct) -> list[int]:
    """Spanning set of the part of span(R) orthogonal to every element of S.

    For each constraint the elements of R split into good (orthogonal) and
    bad; bad elements survive only as products of consecutive pairs.  If R is
    independent the output is a basis.
    """
    R = list(R)
    for p in S:
        good: list[int] = []
        bad: list[int] = []
        for q in R:
            (bad if inner(p, q) else good).append(q)
        R = good + [a ^ b for a, b in zip(bad, bad[1:])]
    return R


def inspace(p: int, parity: Sequence[int]) -> bool:
    """Membership test against a parity-check basis from ``truncate(.., dot_form)``."""
    for q in parity:
        if (p & q).bit_count() & 1:
            return False
    return True


def disjoint(S: Sequence[int], R: Sequence[int], n: int) -> list[int]:
    """Greedy subset of R, independent and meeting span(S) only in 0."""
    null = truncate(S, full_basis(n), dot_form)
    out: list[int] = []
    R = list(R)
    while R:
        R = [r for r in R if not inspace(r, null)]
        if not R:
            break
        head = R.pop(0)
        null = truncate([head], null, dot_form)
        out.append(head)
    return out


def span(basis: Sequence[int]) -> Iterator[int]:
    """All elements of span(basis), 0 first, in Gray-code order."""
    v = 0
    yield 0
    for i in range(1, 1 << len(basis)):
        v ^= basis[(i & -i).bit_length() - 1]
        yield v


def rref(rows: Sequence[int]) -> dict[int, int]:
    """Reduced echelon form keyed by pivot (highest set bit of each row)."""
    piv: dict[int, int] = {}
    for r in rows:
        r = reduce(r, piv)
        if not r:
            continue
        top = r.bit_length() - 1
        for k, row in piv.items():
            if (row >> top) & 1:
                piv[k] = row ^ r
        piv[top] = r
    return piv


def reduce(v: int, piv: dict[int, int]) -> int:
    for k, row in piv.items():
        if (v >> k) & 1:
            v ^= row
    return v


def rank(rows: Sequence[int]) -> int:
    return len(rref(rows))


def canonical_span(rows: Sequence[int]) -> tuple[int, ...]:
    """Hashable key identifying span(rows)."""
    return tuple(sorted(rref(rows).values(), reverse=True))


def logical_reps(gens: Sequence[int], n: int) -> tuple[int, int, int]:
    """Canonical patterns of the three non-trivial cosets of G in its normalizer.

    Each representative is fully reduced against the RREF of G, so the
    result depends only on span(gens).  Returned in increasing order.
    """
    piv = rref(gens)
    normal = truncate(gens, full_basis(n), symplectic_form(n))
    first = second = 0
    for v in normal:
        r = reduce(v, piv)
        if not r:
            continue
        if not first:
            first = r
        elif r != first:
            second = r
            break
    if not second:
        raise ValueError("normalizer quotient is not two-dimensional")
    a, b, c = sorted((first, second, first ^ second))
    return a, b, c
