import random

from circenum import oracle
from circenum.enumerate import enumerate_models
from circenum.solver import BOT, TOP

from conftest import T1, T3_CARDS, T3_CLAUSES, X0, X1, X2, A, B, L, random_card, random_clauses, solver_for


def run(solver, visible, assumptions, limit=None, trace=None):
    out = []
    n = enumerate_models(solver, visible, assumptions, out.append, limit=limit, trace=trace)
    assert n == len(out)
    return out


def t3_solver():
    return solver_for(7, T3_CLAUSES, T3_CARDS)


def test_example_all_relevant_single_model():
    out = run(t3_solver(), range(1, 6), L(X0, -X1, -X2, -A, -B, 6, 7))
    assert out == [frozenset({X0})]


def test_example_irrelevant_ab_two_models():
    out = run(t3_solver(), range(1, 6), L(X0, -X1, -X2, 6, 7))
    assert len(out) == 2
    assert set(out) == {frozenset({X0}), frozenset({B, X0})}


def test_unsat_assumptions_give_nothing():
    assert run(solver_for(5, T1), range(1, 6), L(-X0, -X1, -X2)) == []


def test_limit():
    assert len(run(solver_for(5, T1), range(1, 6), [], limit=3)) == 3


def test_empty_theory_enumerates_all_assignments():
    out = run(solver_for(3), range(1, 4), [])
    assert len(out) == 8 and len(set(out)) == 8


def _random_case(rng):
    n = rng.randint(1, 12)
    clauses = random_clauses(rng, n, rng.randint(0, 2 * n))
    cards = [random_card(rng, n)] if rng.random() < 0.3 else []
    fixed = rng.sample(range(1, n + 1), rng.randint(0, n // 2))
    assumptions = [a if rng.random() < 0.5 else -a for a in fixed]
    return n, clauses, cards, assumptions


def test_enumeration_matches_oracle_projection():
    rng = random.Random(21)
    for _ in range(300):
        n, clauses, cards, assumptions = _random_case(rng)
        units = [[d] for d in assumptions]
        expected = oracle.all_models(n, clauses + units, cards)
        out = run(solver_for(n, clauses, cards), range(1, n + 1), L(*assumptions))
        assert len(out) == len(set(out))
        assert set(out) == expected


def test_projection_with_hidden_atoms_fixed_by_assumptions():
    rng = random.Random(22)
    for _ in range(100):
        n, clauses, cards, _ = _random_case(rng)
        hidden = rng.sample(range(1, n + 1), rng.randint(0, n))
        assumptions = [a if rng.random() < 0.5 else -a for a in hidden]
        visible = set(range(1, n + 1)) - set(hidden)
        units = [[d] for d in assumptions]
        expected = oracle.project(oracle.all_models(n, clauses + units, cards), visible)
        out = run(solver_for(n, clauses, cards), visible, L(*assumptions))
        assert len(out) == len(set(out))
        assert set(out) == expected


def test_polyspace_and_guard_safety():
    rng = random.Random(23)
    for _ in range(100):
        n, clauses, cards, assumptions = _random_case(rng)
        s = solver_for(n, clauses, cards)
        count = len(s.clauses)
        a = L(*assumptions)
        stacks = []
        run(s, range(1, n + 1), a, trace=stacks.append)
        for st in stacks:
            assert len(st) <= len(a) + n + 1
            assert st[: len(a)] == a
            assert st[len(a)] in (TOP, BOT)
            for lit in a:
                assert lit ^ 1 not in st
        # only learned clauses may appear; no blocking clauses
        assert len(s.clauses) == count
