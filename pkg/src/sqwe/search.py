"""Exhaustive pruned search over standard-form [[n,1]] codes and M3-codes.

The i-th generator is drawn from span{Z_1..Z_n, X_i, X_n}, first pruned to
be independent of the generators chosen so far (``disjoint``) and then to
commute with them (``truncate`` with the symplectic form).  Leaves are
analysed immediately.  In the general search every one of the 2^(n-1) sign
assignments of a leaf is analysed in one shot: flipping generator j
multiplies the sign of group element A by (-1)^(A_j), so all signed
enumerators are a single product with a +/-1 character matrix.

Work is split over the first recursion level; each top-level candidate is a
branch that can run in its own process and be checkpointed.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import gf2
from .code import StabilizerCode, is_m3_code, relabelings, validate
from .enumerator import IntPolynomial, ThresholdResult, orientation_preference, threshold
from .pauli import PauliOperator, dot_product, product_phase

log = logging.getLogger(__name__)

TABLE1_BITS = {2: 4, 3: 9, 4: 15, 5: 22}


class SearchConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    n: int
    mode: str = "general"
    jobs: int = 1
    min_weight: int = 2
    instrument: bool = True
    records: str = "useful"  # which signed codes become records: useful | preserving | none
    keep_records: bool = True

    def __post_init__(self) -> None:
        if self.n < 2:
            raise SearchConfigError("n must be at least 2")
        if self.mode not in ("general", "m3"):
            raise SearchConfigError(f"unknown mode {self.mode!r}")
        if self.mode == "m3" and (self.n - 1) % 2:
            raise SearchConfigError("M3-codes have an even number of generators; n - 1 must be even")
        if self.jobs < 1:
            raise SearchConfigError("jobs must be positive")
        if self.records not in ("useful", "preserving", "none"):
            raise SearchConfigError(f"unknown record filter {self.records!r}")


# -- Pauli-level wrappers of the pruning subroutines ----------------------------


def _form(product: str, n: int):
    if product in ("dot", "·"):
        return gf2.dot_form
    if product in ("symplectic", "*"):
        return gf2.symplectic_form(n)
    raise ValueError(f"unknown inner product {product!r}")


def truncate(S: Sequence[PauliOperator], R: Sequence[PauliOperator], product: str) -> list[PauliOperator]:
    """Spanning set of the subspace of span(R) orthogonal to S (signs dropped)."""
    if not R:
        return []
    n = R[0].n
    out = gf2.truncate([p.bits for p in S], [q.bits for q in R], _form(product, n))
    return [PauliOperator.from_bits(n, v) for v in out]


def inspace(p: PauliOperator, parity_basis: Sequence[PauliOperator]) -> bool:
    return all(dot_product(p, q) == 0 for q in parity_basis)


def parity_basis(S: Sequence[PauliOperator], n: int) -> list[PauliOperator]:
    """Dot-product null space of span(S), usable with :func:`inspace`."""
    out = gf2.truncate([p.bits for p in S], gf2.full_basis(n), gf2.dot_form)
    return [PauliOperator.from_bits(n, v) for v in out]


def disjoint(S: Sequence[PauliOperator], R: Sequence[PauliOperator]) -> list[PauliOperator]:
    if not R:
        return []
    n = R[0].n
    out = gf2.disjoint([p.bits for p in S], [q.bits for q in R], n)
    return [PauliOperator.from_bits(n, v) for v in out]


def standard_span(n: int, i: int) -> list[int]:
    """Patterns {Z_1, ..., Z_n, X_i, X_n} (i is 1-based)."""
    basis = [1 << (n + j) for j in range(n)] + [1 << (i - 1)]
    if i != n:
        basis.append(1 << (n - 1))
    return basis


def candidate_basis(S: Sequence[int], n: int) -> list[int]:
    """Basis whose span holds every admissible next generator after S."""
    R = standard_span(n, len(S) + 1)
    R = gf2.disjoint(S, R, n)
    return gf2.truncate(S, R, gf2.symplectic_form(n))


def m3_bits(v: int, n: int) -> int:
    mask = (1 << n) - 1
    x, z = v & mask, v >> n
    return (x ^ z) | (x << n)


# -- leaf analysis --------------------------------------------------------------


@lru_cache(maxsize=None)
def _character_matrix(m: int) -> np.ndarray:
    idx = np.arange(1 << m)
    parity = np.zeros((1 << m, 1 << m), dtype=np.int64)
    for j in range(m):
        bit = (idx >> j) & 1
        parity ^= np.outer(bit, bit)
    return 1 - 2 * parity


@dataclass
class LeafTables:
    """Signed enumerators of every sign assignment of one unsigned generator list.

    ``W[s, q, w]`` is the coefficient of r̄^w in W_q (q = I, X, Y, Z) when the
    generators whose bit is set in ``s`` carry a minus sign.
    """

    W: np.ndarray
    logical: tuple[int, int, int]


def leaf_tables(gens: Sequence[int], n: int, signs: Sequence[int] | None = None) -> LeafTables:
    mask = (1 << n) - 1
    m = len(gens)
    a, b, _ = gf2.logical_reps(gens, n)
    ax, az, bx, bz = a & mask, a >> n, b & mask, b >> n
    yk = (product_phase(ax, az, 0, bx, bz, 0) + 1) & 3
    reps = ((0, 0, 0), (ax, az, 0), (ax ^ bx, az ^ bz, yk), (bx, bz, 0))
    gx = [g & mask for g in gens]
    gz = [g >> n for g in gens]
    size = 1 << m
    F = np.zeros((size, 4 * (n + 1)), dtype=np.int64)
    x = z = k = 0
    A = 0
    for step in range(size):
        if step:
            j = (step & -step).bit_length() - 1
            k = product_phase(x, z, k, gx[j], gz[j], 0)
            x ^= gx[j]
            z ^= gz[j]
            A ^= 1 << j
        for q, (lx, lz, lk) in enumerate(reps):
            kk = product_phase(lx, lz, lk, x, z, k)
            w = ((x ^ lx) | (z ^ lz)).bit_count()
            F[A, q * (n + 1) + w] = 1 - kk
    if signs is None:
        W = _character_matrix(m) @ F
    else:
        W = _character_matrix(m)[list(signs)] @ F
    return LeafTables(W.reshape(len(W), 4, n + 1), (a, b, a ^ b))


def preserving_mask(W: np.ndarray) -> np.ndarray:
    """Axis enumerators agree up to sign; by rotating the frame this is exactly
    the existence of a relabeling with W_X = W_Y = W_Z."""
    wx, wy, wz = W[:, 1], W[:, 2], W[:, 3]
    xy = np.all(wx == wy, axis=1) | np.all(wx == -wy, axis=1)
    xz = np.all(wx == wz, axis=1) | np.all(wx == -wz, axis=1)
    return xy & xz


@dataclass(frozen=True)
class Orientation:
    w_l: tuple[int, ...]
    w_dist: tuple[int, ...]
    threshold: ThresholdResult


class ThresholdCache:
    def __init__(self) -> None:
        self._cache: dict[tuple, Orientation] = {}

    def best(self, wi: tuple[int, ...], wx: tuple[int, ...]) -> Orientation:
        """Pick W_L = +W_X or -W_X by the same rule as the single-code analysis."""
        key = (wi, wx)
        hit = self._cache.get(key)
        if hit is None:
            w_i = IntPolynomial(wi)
            options = []
            for t in (1, -1):
                w_l = IntPolynomial(tuple(t * c for c in wx))
                wd = w_l - w_i.shift()
                rank = orientation_preference(w_i, w_l)
                options.append((rank, Orientation(w_l.coeffs, wd.coeffs, threshold(wd))))
            hit = max(options, key=lambda o: o[0])[1]
            self._cache[key] = hit
        return hit


def witness_relabeling(axes: dict[str, tuple[int, ...]], w_l: tuple[int, ...]) -> list:
    for rl in relabelings():
        if all(tuple(s * c for c in axes[a]) == w_l for s, a in rl):
            return [list(t) for t in rl]
    raise AssertionError("no relabeling realizes the chosen orientation")


# -- recursion ------------------------------------------------------------------


@dataclass
class BranchResult:
    branch: int
    leaves: int = 0
    groups: int = 0
    analyzed: int = 0
    preserving: int = 0
    useful: int = 0
    rejected: int = 0
    nodes: int = 0
    max_bits: int = 0
    level_bits: list[int] = field(default_factory=list)
    useful_sets: set = field(default_factory=set)
    preserving_sets: set = field(default_factory=set)
    thresholds: set = field(default_factory=set)
    records: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "leaves": self.leaves,
            "groups": self.groups,
            "analyzed": self.analyzed,
            "preserving": self.preserving,
            "useful": self.useful,
            "rejected": self.rejected,
            "nodes": self.nodes,
            "max_bits": self.max_bits,
            "level_bits": self.level_bits,
            "useful_sets": sorted([list(a), list(b)] for a, b in self.useful_sets),
            "preserving_sets": sorted([list(a), list(b)] for a, b in self.preserving_sets),
            "thresholds": sorted(self.thresholds),
        }

    @classmethod
    def from_dict(cls, d: dict) -> BranchResult:
        out = cls(d["branch"])
        for key in ("leaves", "groups", "analyzed", "preserving", "useful", "rejected", "nodes", "max_bits"):
            setattr(out, key, d[key])
        out.level_bits = list(d["level_bits"])
        out.useful_sets = {(tuple(a), tuple(b)) for a, b in d["useful_sets"]}
        out.preserving_sets = {(tuple(a), tuple(b)) for a, b in d["preserving_sets"]}
        out.thresholds = set(d["thresholds"])
        return out


class _Branch:
    def __init__(self, config: SearchConfig, branch: int):
        self.config = config
        self.n = config.n
        self.result = BranchResult(branch)
        self.seen: set[tuple[int, ...]] = set()
        self.cache = ThresholdCache()
        self.seq = 0

    def note_level(self, level: int, nbits: int) -> None:
        lb = self.result.level_bits
        while len(lb) <= level:
            lb.append(0)
        lb[level] = max(lb[level], nbits)

    def general(self, S: list[int], bits: int) -> None:
        n = self.n
        self.result.nodes += 1
        if len(S) == n - 1:
            self.leaf(S, bits)
            return
        R = candidate_basis(S, n)
        self.note_level(len(S), len(R))
        floor = self.config.min_weight
        for P in gf2.span(R):
            if gf2.pattern_weight(P, n) < floor:
                continue
            S.append(P)
            self.general(S, bits + len(R))
            S.pop()

    def m3(self, S: list[int], bits: int) -> None:
        n = self.n
        self.result.nodes += 1
        if len(S) == n - 1:
            self.leaf(S, bits)
            return
        R = candidate_basis(S, n)
        self.note_level(len(S) // 2, len(R))
        floor = self.config.min_weight
        for P in gf2.span(R):
            w = gf2.pattern_weight(P, n)
            if w % 2 or w == 0 or w < floor:
                continue
            Pm = m3_bits(P, n)
            if gf2.rank(S + [P, Pm]) != len(S) + 2:
                self.result.rejected += 1
                continue
            S.extend((P, Pm))
            self.m3(S, bits + len(R))
            del S[-2:]

    def leaf(self, S: list[int], bits: int) -> None:
        res = self.result
        res.leaves += 1
        res.max_bits = max(res.max_bits, bits)
        key = gf2.canonical_span(S)
        if key in self.seen:
            return
        self.seen.add(key)
        res.groups += 1
        n = self.n
        if self.config.mode == "m3":
            signs = sum(1 << j for j, g in enumerate(S) if gf2.pattern_weight(g, n) % 4)
            code = _signed_code(S, signs, n)
            if not validate(code) or not is_m3_code(code):
                res.rejected += 1
                return
            sign_list = [signs]
        else:
            sign_list = range(1 << len(S))
        tables = leaf_tables(S, n, None if self.config.mode == "general" else sign_list)
        W = tables.W
        keep = preserving_mask(W)
        res.analyzed += len(W)
        if self.config.mode == "m3" and not keep.all():
            raise AssertionError(f"M3-code {S} is not T-axis preserving")
        for row, s in enumerate(sign_list):
            if not keep[row]:
                continue
            res.preserving += 1
            wi = tuple(int(c) for c in W[row, 0])
            wx = tuple(int(c) for c in W[row, 1])
            orient = self.cache.best(wi, wx)
            res.preserving_sets.add((wi, orient.w_l))
            useful = orient.threshold.useful
            if useful:
                res.useful += 1
                res.useful_sets.add((wi, orient.w_l))
                res.thresholds.add(f"{orient.threshold.threshold_r:.12f}")
            if self.config.records == "none" or (self.config.records == "useful" and not useful):
                continue
            axes = {a: tuple(int(c) for c in W[row, q]) for q, a in enumerate("IXYZ")}
            code = _signed_code(S, s, n)
            rec = {
                "branch": res.branch,
                "seq": self.seq,
                "n": n,
                "generators": [str(g) for g in code.generators],
                "W_I": list(wi),
                "W_L": list(orient.w_l),
                "W_dist": list(orient.w_dist),
                "relabeling": witness_relabeling(axes, orient.w_l),
                "t_axis_preserving": True,
                "threshold": f"{orient.threshold.threshold_r:.12f}",
                "useful": useful,
                "free_bits": bits,
            }
            if self.config.mode == "m3":
                rec["m3_code"] = True
            self.seq += 1
            if self.config.keep_records:
                res.records.append(rec)


def _signed_code(S: Sequence[int], signs: int, n: int) -> StabilizerCode:
    return StabilizerCode(n, tuple(PauliOperator.from_bits(n, g, 2 * ((signs >> j) & 1)) for j, g in enumerate(S)))


def top_level_basis(config: SearchConfig) -> list[int]:
    return candidate_basis([], config.n)


def branch_count(config: SearchConfig) -> int:
    return 1 << len(top_level_basis(config))


def run_branch(config: SearchConfig, branch: int) -> BranchResult:
    """Explore the subtree whose first generator is the branch-th span element."""
    n = config.n
    R = top_level_basis(config)
    gray = branch ^ (branch >> 1)
    P = 0
    for j, v in enumerate(R):
        if (gray >> j) & 1:
            P ^= v
    worker = _Branch(config, branch)
    worker.result.nodes += 1
    worker.note_level(0, len(R))
    w = gf2.pattern_weight(P, n)
    if config.mode == "general":
        if w >= config.min_weight:
            worker.general([P], len(R))
    elif w % 2 == 0 and w and w >= config.min_weight:
        Pm = m3_bits(P, n)
        if gf2.rank([P, Pm]) == 2:
            worker.m3([P, Pm], len(R))
        else:
            worker.result.rejected += 1
    return worker.result


def _run_branch_args(args: tuple[SearchConfig, int]) -> BranchResult:
    return run_branch(*args)


# -- aggregation ------------------------------------------------------------------


@dataclass
class SearchSummary:
    n: int
    mode: str
    branches: int = 0
    leaves: int = 0
    groups: int = 0
    analyzed: int = 0
    preserving: int = 0
    useful: int = 0
    rejected: int = 0
    nodes: int = 0
    max_bits: int = 0
    level_bits: list[int] = field(default_factory=list)
    useful_sets: set = field(default_factory=set)
    preserving_sets: set = field(default_factory=set)
    thresholds: set = field(default_factory=set)
    records: list[dict] = field(default_factory=list)

    def add(self, r: BranchResult) -> None:
        self.branches += 1
        for key in ("leaves", "groups", "analyzed", "preserving", "useful", "rejected", "nodes"):
            setattr(self, key, getattr(self, key) + getattr(r, key))
        self.max_bits = max(self.max_bits, r.max_bits)
        for lvl, b in enumerate(r.level_bits):
            if lvl >= len(self.level_bits):
                self.level_bits.append(b)
            else:
                self.level_bits[lvl] = max(self.level_bits[lvl], b)
        self.useful_sets |= r.useful_sets
        self.preserving_sets |= r.preserving_sets
        self.thresholds |= r.thresholds
        self.records.extend(r.records)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "branches": self.branches,
            "leaves": self.leaves,
            "distinct_groups_per_branch": self.groups,
            "codes_analyzed": self.analyzed,
            "axis_preserving": self.preserving,
            "useful": self.useful,
            "rejected": self.rejected,
            "nodes": self.nodes,
            "distinct_useful_enumerator_sets": len(self.useful_sets),
            "useful_enumerator_sets": [
                {"W_I": list(a), "W_L": list(b)} for a, b in sorted(self.useful_sets)
            ],
            "distinct_preserving_enumerator_sets": len(self.preserving_sets),
            "useful_thresholds": sorted(self.thresholds),
            "instrumentation": instrument_bits(self),
        }


def instrument_bits(
    trace: SearchSummary | BranchResult | Iterable[BranchResult], n: int | None = None, mode: str | None = None
) -> dict:
    """Search-space size actually iterated, in bits.

    ``max_path_bits`` is the largest sum of log2|span(R)| over the recursion
    levels of any root-to-leaf path that reached a complete code.
    """
    if isinstance(trace, (SearchSummary, BranchResult)):
        items = [trace]
    else:
        items = list(trace)
    if n is None:
        n = getattr(items[0], "n", None) if items else None
    if mode is None:
        mode = getattr(items[0], "mode", "general") if items else "general"
    max_bits = max((t.max_bits for t in items), default=0)
    levels: list[int] = []
    for t in items:
        for lvl, b in enumerate(t.level_bits):
            if lvl >= len(levels):
                levels.append(b)
            else:
                levels[lvl] = max(levels[lvl], b)
    out = {"max_path_bits": max_bits, "per_level_max_bits": levels}
    if n is not None:
        out["naive_bits"] = (n - 1) * (n + 2) // (2 if mode == "m3" else 1)
        if mode == "general":
            out["table1_bits"] = TABLE1_BITS.get(n)
            out["matches_table1"] = TABLE1_BITS[n] == max_bits if n in TABLE1_BITS else None
    return out


def search(
    config: SearchConfig,
    skip: Iterable[int] = (),
    on_branch: Callable[[BranchResult], None] | None = None,
    prior: Iterable[BranchResult] = (),
) -> SearchSummary:
    """Run every branch not in ``skip``; results merge in branch order."""
    skip = set(skip)
    todo = [k for k in range(branch_count(config)) if k not in skip]
    results: list[BranchResult] = list(prior)
    if config.jobs == 1:
        for k in todo:
            r = run_branch(config, k)
            if on_branch:
                on_branch(r)
            results.append(r)
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for r in pool.map(_run_branch_args, [(config, k) for k in todo], chunksize=1):
                if on_branch:
                    on_branch(r)
                results.append(r)
    summary = SearchSummary(config.n, config.mode)
    for r in sorted(results, key=lambda r: r.branch):
        summary.add(r)
    return summary


def search_general(config: SearchConfig, **kw) -> SearchSummary:
    if config.mode != "general":
        raise SearchConfigError("search_general needs mode='general'")
    return search(config, **kw)


def search_m3(config: SearchConfig, **kw) -> SearchSummary:
    if config.mode != "m3":
        raise SearchConfigError("search_m3 needs mode='m3'")
    return search(config, **kw)
