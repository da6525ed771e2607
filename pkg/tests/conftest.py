import random

import pytest

from circenum.solver import Solver, from_dimacs

# atoms of the running examples: a=1, b=2, x0=3, x1=4, x2=5, then r or y1/y2
A, B, X0, X1, X2 = 1, 2, 3, 4, 5
T1 = [[A, X0], [-A, B, X1], [-A, -B, X2]]
# r -> x0 & x1 & x2, with r = 6
T2 = T1 + [[-6, X0], [-6, X1], [-6, X2]]
# T1 plus -x0 + -x1 + -x2 + y1 + y2 >= 2 and y2 -> y1, with y1 = 6, y2 = 7
T3_CLAUSES = T1 + [[-7, 6]]
T3_CARDS = [([-X0, -X1, -X2, 6, 7], 2)]
P_EX = {X0, X1, X2}
CIRC_T1 = {frozenset(s) for s in ({X0}, {X0, B}, {X1, A}, {X2, A, B})}


def solver_for(num_atoms, clauses=(), cards=()):
    s = Solver()
    if num_atoms:
        s.add_atoms(num_atoms)
    for c in clauses:
        s.add_clause([from_dimacs(d) for d in c])
    for lits, k in cards:
        s.add_cardinality([from_dimacs(d) for d in lits], k)
    return s


def L(*ds):
    return [from_dimacs(d) for d in ds]


def random_clauses(rng, n, m, max_len=4):
    clauses = []
    for _ in range(m):
        k = rng.randint(1, min(max_len, n))
        atoms = rng.sample(range(1, n + 1), k)
        clauses.append([a if rng.random() < 0.5 else -a for a in atoms])
    return clauses


def random_circ_instance(rng, max_atoms=12, max_clauses=30):
    n = rng.randint(1, max_atoms)
    m = rng.randint(0, max_clauses)
    clauses = random_clauses(rng, n, m)
    P, Z = set(), set()
    for a in range(1, n + 1):
        r = rng.random()
        if r < 0.5:
            P.add(a)
        elif r < 0.7:
            Z.add(a)
    return n, clauses, P, Z


def random_card(rng, n, max_len=8):
    k_lits = rng.randint(1, min(max_len, n))
    atoms = rng.sample(range(1, n + 1), k_lits)
    lits = [a if rng.random() < 0.5 else -a for a in atoms]
    return lits, rng.randint(0, len(lits))


@pytest.fixture
def rng():
    return random.Random(1234)
