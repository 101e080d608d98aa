from __future__ import annotations

import itertools
import random

import pytest

from sqwe import gf2
from sqwe import search as search_mod
from sqwe.code import StabilizerCode, choose_logical_frame, is_m3_code, relabelings, validate
from sqwe.enumerator import compute_enumerators
from sqwe.pauli import PauliOperator, commutes, parse_pauli
from sqwe.search import (
    BranchResult,
    SearchConfig,
    SearchConfigError,
    _signed_code,
    branch_count,
    candidate_basis,
    disjoint,
    inspace,
    instrument_bits,
    leaf_tables,
    m3_bits,
    parity_basis,
    preserving_mask,
    run_branch,
    search,
    search_general,
    search_m3,
    standard_span,
    truncate,
)
from strategies import random_code

P = parse_pauli


def ops(texts):
    return [P(t) for t in texts]


def brute_span(vectors):
    return set(gf2.span(vectors))


def explored_groups(n, mode, min_weight=2):
    """Canonical spans of every generator list that reaches a leaf."""
    found = set()
    original = search_mod._Branch.leaf

    def leaf(self, S, bits):
        found.add(gf2.canonical_span(S))
        return original(self, S, bits)

    search_mod._Branch.leaf = leaf
    try:
        cfg = SearchConfig(n=n, mode=mode, records="none", min_weight=min_weight)
        for b in range(branch_count(cfg)):
            run_branch(cfg, b)
    finally:
        search_mod._Branch.leaf = original
    return found


def naive_standard_form_groups(n, min_weight=2):
    """Reference: every tuple (P_1..P_{n-1}) with P_i in span(R_i), weight >= floor,
    pairwise commuting and independent; returned as canonical spans."""
    form = gf2.symplectic_form(n)
    spans = [
        [v for v in gf2.span(standard_span(n, i)) if gf2.pattern_weight(v, n) >= min_weight]
        for i in range(1, n)
    ]
    out = set()

    def rec(S):
        if len(S) == n - 1:
            out.add(gf2.canonical_span(S))
            return
        for v in spans[len(S)]:
            if all(form(v, s) == 0 for s in S) and gf2.rank(S + [v]) == len(S) + 1:
                S.append(v)
                rec(S)
                S.pop()

    rec([])
    return out


def has_light_element(key, n):
    return any(v and gf2.pattern_weight(v, n) < 2 for v in gf2.span(list(key)))


class TestTruncate:
    def test_example(self):
        assert truncate(ops(["ZI"]), ops(["XI", "IX"]), "symplectic") == ops(["IX"])

    def test_bad_pairs_are_multiplied(self):
        out = truncate(ops(["ZZ"]), ops(["XI", "IX", "ZI"]), "symplectic")
        assert {p.bits for p in out} == {P("ZI").bits, P("XX").bits}

    @pytest.mark.parametrize("seed", range(10))
    def test_output_commutes_and_spans(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 5)
        S = [PauliOperator.from_bits(n, rng.randrange(1, 1 << 2 * n)) for _ in range(rng.randint(1, 3))]
        R = [PauliOperator.from_bits(n, v) for v in gf2.full_basis(n)]
        out = truncate(S, R, "symplectic")
        for p in out:
            assert all(commutes(p, s) for s in S)
        # spans exactly the commutant
        want = {v for v in range(1 << 2 * n) if all(commutes(PauliOperator.from_bits(n, v), s) for s in S)}
        assert brute_span([p.bits for p in out]) == want

    def test_five_qubit_parity_basis(self, five):
        basis = parity_basis(five.generators, 5)
        group = brute_span(list(five.patterns))
        for v in range(1 << 10):
            assert inspace(PauliOperator.from_bits(5, v), basis) == (v in group)


class TestInspace:
    def test_identity_and_generators(self, steane):
        basis = parity_basis(steane.generators, 7)
        assert inspace(PauliOperator.identity(7), basis)
        assert all(inspace(g, basis) for g in steane.generators)
        assert not inspace(P("XIIIIII"), basis)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_against_span(self, seed):
        rng = random.Random(seed)
        code = random_code(rng.randint(2, 5), rng)
        n = code.n
        basis = parity_basis(code.generators, n)
        group = brute_span(list(code.patterns))
        for _ in range(200):
            v = rng.randrange(1 << 2 * n)
            assert inspace(PauliOperator.from_bits(n, v), basis) == (v in group)


class TestDisjoint:
    def test_self(self, five):
        assert disjoint(five.generators, five.generators) == []

    def test_empty_s(self):
        R = ops(["XI", "XI", "IX", "XX", "ZZ"])
        out = disjoint([], R)
        assert gf2.rank([p.bits for p in out]) == len(out)
        assert brute_span([p.bits for p in out]) == brute_span([p.bits for p in R])

    @pytest.mark.parametrize("seed", range(10))
    def test_random_disjointness(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 4)
        S = []
        while len(S) < rng.randint(1, n):
            v = rng.randrange(1, 1 << 2 * n)
            if gf2.rank(S + [v]) == len(S) + 1:
                S.append(v)
        R = [rng.randrange(1 << 2 * n) for _ in range(rng.randint(1, 2 * n))]
        out = disjoint([PauliOperator.from_bits(n, v) for v in S], [PauliOperator.from_bits(n, v) for v in R])
        bits = [p.bits for p in out]
        assert brute_span(bits) & brute_span(S) == {0}
        assert gf2.rank(S + bits) == len(S) + len(bits)
        # nothing in R is lost modulo span(S)
        assert brute_span(S + bits) == brute_span(S + R)


class TestConfig:
    def test_rejections(self):
        with pytest.raises(SearchConfigError):
            SearchConfig(n=1)
        with pytest.raises(SearchConfigError):
            SearchConfig(n=4, mode="m3")
        with pytest.raises(SearchConfigError):
            SearchConfig(n=3, mode="bogus")
        with pytest.raises(SearchConfigError):
            SearchConfig(n=3, jobs=0)
        with pytest.raises(SearchConfigError):
            search_m3(SearchConfig(n=3))
        with pytest.raises(SearchConfigError):
            search_general(SearchConfig(n=3, mode="m3"))


class TestCandidateBasis:
    def test_standard_span(self):
        assert len(standard_span(4, 1)) == 6
        assert len(standard_span(4, 4)) == 5

    @pytest.mark.parametrize("seed", range(10))
    def test_pruning_is_sound(self, seed):
        # every standard-form continuation of a random prefix is reachable from span(R) modulo span(S)
        rng = random.Random(seed)
        n = rng.randint(3, 5)
        code = random_code(n, rng)
        k = rng.randint(0, n - 2)
        S = list(code.patterns[:k])
        form = gf2.symplectic_form(n)
        R = candidate_basis(S, n)
        reach = brute_span(S + R)
        for v in gf2.span(standard_span(n, k + 1)):
            if all(form(v, s) == 0 for s in S) and gf2.rank(S + [v]) == len(S) + 1:
                assert v in reach
        assert gf2.rank(S + R) == len(S) + len(R)
        assert all(form(r, s) == 0 for r in R for s in S)


class TestLeafTables:
    @pytest.mark.parametrize("seed", range(6))
    def test_matches_exact_enumerators(self, seed):
        rng = random.Random(seed)
        code = random_code(rng.randint(2, 5), rng)
        n = code.n
        gens = list(code.patterns)
        tables = leaf_tables(gens, n)
        for s in range(1 << len(gens)):
            signed = _signed_code(gens, s, n)
            if not validate(signed):
                continue
            e = compute_enumerators(signed, choose_logical_frame(signed))
            for q, a in enumerate("IXYZ"):
                assert tuple(int(c) for c in tables.W[s, q]) == e.axis(a).coeffs

    @pytest.mark.parametrize("seed", range(6))
    def test_preserving_mask_matches_relabelings(self, seed):
        rng = random.Random(seed)
        code = random_code(rng.randint(2, 5), rng)
        n = code.n
        gens = list(code.patterns)
        mask = preserving_mask(leaf_tables(gens, n).W)
        for s in range(1 << len(gens)):
            signed = _signed_code(gens, s, n)
            if not validate(signed):
                continue
            found = any(
                compute_enumerators(signed, choose_logical_frame(signed, rl)).axes_equal for rl in relabelings()
            )
            assert bool(mask[s]) == found


class TestSmallRuns:
    def test_n2_baseline(self):
        s = search(SearchConfig(n=2))
        assert s.useful == 0
        assert s.max_bits == 4

    def test_n3(self):
        s = search(SearchConfig(n=3))
        assert s.useful == 0
        assert s.max_bits == 9

    def test_n4_useful_set(self):
        s = search(SearchConfig(n=4))
        assert s.max_bits == 15
        assert s.useful_sets == {((1, 0, 0, 4, 3), (0, 0, 2, 4, -2))}
        for rec in s.records:
            code = StabilizerCode.from_strings(rec["generators"])
            assert validate(code)
            assert float(rec["threshold"]) < 1

    def test_m3_n5_matches_five_qubit(self):
        s = search(SearchConfig(n=5, mode="m3"))
        assert s.useful_sets == {((1, 0, 0, 0, 15, 0), (0, 0, 0, 10, 0, -6))}
        for rec in s.records:
            assert is_m3_code(StabilizerCode.from_strings(rec["generators"]))

    def test_deterministic_across_jobs(self):
        a = search(SearchConfig(n=4, jobs=1))
        b = search(SearchConfig(n=4, jobs=2))
        assert a.to_dict() == b.to_dict()
        assert a.records == b.records

    def test_skip_and_prior_merge(self):
        cfg = SearchConfig(n=4)
        full = search(cfg)
        done = [run_branch(cfg, b) for b in range(0, branch_count(cfg), 3)]
        prior = [BranchResult.from_dict(r.to_dict()) for r in done]
        resumed = search(cfg, skip={r.branch for r in done}, prior=prior)
        d1, d2 = full.to_dict(), resumed.to_dict()
        assert d1 == d2

    def test_no_duplicate_groups_per_branch(self):
        cfg = SearchConfig(n=4, records="preserving")
        for b in range(branch_count(cfg)):
            r = run_branch(cfg, b)
            keys = [tuple(sorted(rec["generators"])) for rec in r.records]
            assert len(keys) == len(set(keys))


class TestCompleteness:
    @pytest.mark.parametrize("n", [3, 4])
    def test_against_naive_enumerator(self, n):
        found = explored_groups(n, "general")
        reference = naive_standard_form_groups(n)
        # the search only emits standard-form groups
        assert found <= reference
        # anything the reference finds whose group has no weight-1 element is found too
        missing = reference - found
        assert all(has_light_element(k, n) for k in missing)

    def test_m3_n3_against_brute_force(self):
        n = 3
        found = explored_groups(n, "m3")
        form = gf2.symplectic_form(n)
        brute = set()
        for a, b in itertools.combinations(range(1, 1 << 2 * n), 2):
            if form(a, b) or gf2.rank([a, b]) != 2:
                continue
            elems = brute_span([a, b])
            if any(m3_bits(v, n) not in elems for v in elems):
                continue
            if any(gf2.pattern_weight(v, n) % 2 for v in elems):
                continue
            signs = sum(1 << j for j, g in enumerate((a, b)) if gf2.pattern_weight(g, n) % 4)
            code = _signed_code([a, b], signs, n)
            if validate(code) and is_m3_code(code):
                brute.add(gf2.canonical_span([a, b]))
        assert brute == found


class TestInstrumentation:
    def test_bounds(self):
        for n in (2, 3, 4):
            s = search(SearchConfig(n=n))
            info = instrument_bits(s, n, "general")
            assert info["max_path_bits"] <= info["table1_bits"]
            assert info["max_path_bits"] <= (n - 1) * (n + 2)

    def test_m3_fields(self):
        info = instrument_bits(search(SearchConfig(n=3, mode="m3")), 3, "m3")
        assert "table1_bits" not in info
        assert info["naive_bits"] == 5
