from itertools import product

import numpy as np
import pytest

from deriva.checkers import check_additive, check_derivation, check_equation_E, check_leibniz
from deriva.errors import (
    BudgetExceededError,
    HalfUndefinedError,
    NotAFieldError,
    NotASolutionError,
    PreconditionError,
)
from deriva.ring import parse_ring_spec
from deriva.solvers import (
    Corollary,
    compose_solution,
    decompose,
    enumerate_additive,
    enumerate_bruteforce,
    enumerate_derivations,
    enumerate_leibniz,
    represent_cocycle,
    solve_linear_solutions,
)
from deriva.tables import FunctionTable, TwoPlaceTable, cauchy_diff, leibniz_diff, tabulate

from oracles import NaiveField, all_tables, brute_solutions_E, is_additive, is_leibniz

GF2, GF3, GF4, GF5, GF9 = (parse_ring_spec(s) for s in ("GF:2", "GF:3", "GF:4", "GF:5", "GF:9"))


def keys(sols):
    return sorted(tuple(t.key() for t in s) for s in sols)


@pytest.fixture(scope="module")
def gf5_brute():
    return enumerate_bruteforce(GF5)


# --- brute force and linear census ----------------------------------------------------


@pytest.mark.parametrize("ring,count", [(GF2, 2), (GF3, 9)])
def test_bruteforce_matches_naive_oracle(ring, count):
    res = enumerate_bruteforce(ring)
    F = NaiveField(ring.prime, ring.poly)
    assert res.count == count
    assert keys(res.solutions) == brute_solutions_E(F)


def test_gf5_counts(gf5_brute):
    assert gf5_brute.count == 25 and gf5_brute.nullity == 2
    for f, g in gf5_brute.solutions:
        assert check_equation_E(f, g)


# char 2 rows are pinned from brute force; the 2k^2 count needs 1/2
@pytest.mark.parametrize("spec,nullity", [("GF:2", 1), ("GF:3", 2), ("GF:4", 4), ("GF:5", 2), ("GF:7", 2), ("GF:9", 8)])
def test_linear_nullity(spec, nullity):
    R = parse_ring_spec(spec)
    res = solve_linear_solutions(R)
    assert res.nullity == nullity and res.count == R.prime**nullity
    for f, g in res.basis:
        assert check_equation_E(f, g)


@pytest.mark.parametrize("ring", [GF2, GF3, GF4, GF5])
def test_oracle_agreement(ring, gf5_brute):
    brute = gf5_brute if ring == GF5 else enumerate_bruteforce(ring)
    lin = solve_linear_solutions(ring)
    assert brute.count == lin.count
    assert brute.as_set() == lin.as_set()


def test_listing_respects_cap():
    res = solve_linear_solutions(GF9)
    assert res.count == 6561 and res.solutions is None
    with pytest.raises(ValueError):
        res.as_set()
    small = solve_linear_solutions(GF9, cap=10**4)
    assert len(small.solutions) == 6561
    assert all(check_equation_E(f, g) for f, g in small.solutions[::97])


def test_char2_note():
    res = enumerate_bruteforce(GF2)
    assert res.notes == ("char-2: decomposition unavailable",)
    assert res.to_dict()["notes"] == ["char-2: decomposition unavailable"]
    assert not enumerate_bruteforce(GF3).notes


def test_budget_refusal(monkeypatch):
    with pytest.raises(BudgetExceededError) as info:
        enumerate_bruteforce(parse_ring_spec("GF:7"))
    assert info.value.kind == "budget-exceeded"
    # 7^14 pairs of tables, 7^2 pair checks each
    assert info.value.to_dict()["needed"] == str(7**16)
    assert info.value.to_dict()["budget"] == str(2**32)
    with pytest.raises(BudgetExceededError):
        enumerate_bruteforce(GF3, budget=100)
    monkeypatch.setenv("DERIVA_BUDGET", "100")
    with pytest.raises(BudgetExceededError):
        enumerate_bruteforce(GF3)


def test_requires_field():
    with pytest.raises(NotAFieldError):
        enumerate_bruteforce(parse_ring_spec("Z:6"))
    with pytest.raises(NotAFieldError):
        solve_linear_solutions(parse_ring_spec("Q"))


def test_jobs_do_not_change_output(gf5_brute):
    a = enumerate_bruteforce(GF3, jobs=1).to_dict()
    b = enumerate_bruteforce(GF3, jobs=3).to_dict()
    assert a == b
    assert enumerate_bruteforce(GF5, jobs=2).to_dict() == gf5_brute.to_dict()


def test_serialization_shape():
    d = enumerate_bruteforce(GF3).to_dict()
    assert d["count"] == "9" and d["nullity"] == "2" and d["ring"] == "GF:3" and d["equation"] == "E"
    assert len(d["list"]) == 9 and all(len(pair) == 2 and len(pair[0]) == 3 for pair in d["list"])


# --- corollary -----------------------------------------------------------------------


@pytest.mark.parametrize("lam,mu", list(product([1, 2], repeat=2)))
def test_corollary_solutions_are_derivations(lam, mu):
    eq = Corollary(GF3(lam), GF3(mu))
    brute = enumerate_bruteforce(GF3, eq)
    ders = {(d,) for d in enumerate_derivations(GF3)}
    assert brute.as_set() == ders
    assert solve_linear_solutions(GF3, eq).as_set() == ders
    # independently: filter all 27 tables with the naive predicates
    F = NaiveField(3)
    naive = {tuple(t) for t in all_tables(3) if is_additive(F, t) and is_leibniz(F, t)}
    assert {d.key() for (d,) in ders} == naive


def test_corollary_rejects_zero():
    with pytest.raises(PreconditionError):
        enumerate_bruteforce(GF3, Corollary(GF3(0), GF3(1)))
    assert str(Corollary(GF3(1), GF3(2))) == "corollary(lambda=1,mu=2)"


@pytest.mark.parametrize("spec", ["GF:5", "GF:7", "GF:9"])
def test_corollary_linear_has_only_zero(spec):
    R = parse_ring_spec(spec)
    res = solve_linear_solutions(R, Corollary(R(2), R(1)))
    assert res.count == 1


# --- function classes -------------------------------------------------------------------


def test_enumerate_additive_small():
    F = NaiveField(3)
    assert {a.key() for a in enumerate_additive(GF3)} == {tuple(t) for t in all_tables(3) if is_additive(F, t)}
    assert [a.key() for a in enumerate_additive(GF2)] == [(0, 0), (0, 1)]


def test_enumerate_additive_gf9():
    maps = enumerate_additive(GF9)
    assert len(maps) == 81 == len(set(maps))
    assert all(check_additive(a) for a in maps)
    # a random sample of tables: those that are additive must be in the list
    rng = np.random.default_rng(1)
    listed = set(maps)
    for _ in range(2000):
        t = FunctionTable(GF9, rng.integers(0, 9, 9))
        assert bool(check_additive(t)) == (t in listed)
    frob = tabulate("x^3", GF9)
    assert frob in listed


@pytest.mark.parametrize("spec", ["GF:2", "GF:3", "GF:4", "GF:5", "GF:9", "GF:25"])
def test_derivations_vanish(spec):
    R = parse_ring_spec(spec)
    assert enumerate_derivations(R) == [FunctionTable.zero(R)]


def test_derivations_gf5_bruteforce():
    hits = [t for t in all_tables(5) if check_derivation(FunctionTable(GF5, t))]
    assert hits == [[0] * 5]


def test_leibniz_only_vanish_on_fields():
    for R in (GF3, GF5, GF9):
        ls = enumerate_leibniz(R)
        assert ls == [FunctionTable.zero(R)]
        assert all(check_leibniz(t) for t in ls)


# --- decomposition -----------------------------------------------------------------------


def test_decompose_zero():
    d = decompose(FunctionTable.zero(GF3), FunctionTable.zero(GF3))
    assert d.alpha == d.beta == d.phi == FunctionTable.zero(GF3)


def test_decompose_square():
    d = decompose(tabulate("x^2", GF3), tabulate("x", GF3))
    assert d.alpha == tabulate("x", GF3)
    assert d.beta == d.phi == FunctionTable.zero(GF3)
    assert d.to_dict() == {"ring": "GF:3", "alpha": ["0", "1", "2"], "beta": ["0", "0", "0"], "phi": ["0", "0", "0"]}


def test_decompose_frobenius_round_trip():
    frob = tabulate("x^3", GF9)
    f, g = compose_solution(frob, FunctionTable.zero(GF9), FunctionTable.zero(GF9))
    assert g == frob and check_equation_E(f, g)
    d = decompose(f, g)
    assert (d.alpha, d.beta, d.phi) == (frob, FunctionTable.zero(GF9), FunctionTable.zero(GF9))


def test_decompose_rejects_non_solution():
    with pytest.raises(NotASolutionError) as info:
        decompose(tabulate("x^2", GF3), FunctionTable.zero(GF3))
    assert info.value.kind == "not-a-solution"
    assert info.value.report.witness.tuple == (GF3(1), GF3(1))


def test_decompose_char2():
    with pytest.raises(HalfUndefinedError):
        decompose(FunctionTable.zero(GF2), FunctionTable.zero(GF2))
    with pytest.raises(HalfUndefinedError):
        decompose(FunctionTable.zero(GF4), FunctionTable.zero(GF4))


@pytest.mark.parametrize("ring", [GF3, GF5])
def test_completeness_and_round_trip(ring, gf5_brute):
    brute = gf5_brute if ring == GF5 else enumerate_bruteforce(ring)
    adds, ders = enumerate_additive(ring), enumerate_derivations(ring)
    built = {compose_solution(a, b, p) for a in adds for b in adds for p in ders}
    assert built == brute.as_set()
    for f, g in brute.solutions:
        d = decompose(f, g)
        assert d.reconstruct() == (f, g)


def test_round_trip_gf9_all_pairs_sampled():
    adds = enumerate_additive(GF9)
    zero = FunctionTable.zero(GF9)
    rng = np.random.default_rng(5)
    for _ in range(60):
        a, b = adds[rng.integers(81)], adds[rng.integers(81)]
        f, g = compose_solution(a, b, zero)
        assert check_equation_E(f, g)
        d = decompose(f, g)
        assert (d.alpha, d.beta, d.phi) == (a, b, zero)


# --- cocycle representation -----------------------------------------------------------------


def test_represent_zero():
    f = represent_cocycle(TwoPlaceTable.zero(GF3), TwoPlaceTable.zero(GF3))
    assert cauchy_diff(f).is_zero() and leibniz_diff(f).is_zero()


def test_represent_square():
    f0 = tabulate("x^2", GF3)
    assert represent_cocycle(cauchy_diff(f0), leibniz_diff(f0)) == f0


def test_represent_perturbed():
    f0 = tabulate("x^2", GF3)
    G = leibniz_diff(f0).with_entry(1, 2, 0)
    with pytest.raises(NotASolutionError) as info:
        represent_cocycle(cauchy_diff(f0), G)
    assert not info.value.report


def test_represent_char2():
    with pytest.raises(HalfUndefinedError):
        represent_cocycle(TwoPlaceTable.zero(GF2), TwoPlaceTable.zero(GF2))


@pytest.mark.parametrize("spec", ["GF:5", "GF:7", "GF:9"])
def test_represent_random(spec):
    R = parse_ring_spec(spec)
    rng = np.random.default_rng(11)
    for _ in range(200 if R.order < 9 else 40):
        f = FunctionTable(R, rng.integers(0, R.order, R.order))
        assert represent_cocycle(cauchy_diff(f), leibniz_diff(f)) == f
