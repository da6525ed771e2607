"""Crafted unsatisfiable instance used as a smoke benchmark for MCS mode.

The instance is three disjoint pigeonhole blocks (3 pigeons, 2 holes, plus a
redundant "not all three in hole 1" clause: 10 clauses each) followed by a
satisfiable filler over its own atoms. Blocks and filler share no atoms, so
the MCSes of the whole are exactly one MCS per block, and the count is the
product of the per-block counts.
"""

from __future__ import annotations

import random
from importlib import resources

from .dimacs import ProblemFile, render

BLOCKS = 3
PIGEONS = 3
HOLES = 2
TOTAL_CLAUSES = 100
FILLER_ATOMS = 30
SEED = 20180101


def pigeonhole_block(first_atom: int) -> tuple[list[list[int]], int]:
    """Clauses of one block and the number of atoms it uses."""

    def p(i: int, h: int) -> int:
        return first_atom + i * HOLES + h

    clauses = [[p(i, h) for h in range(HOLES)] for i in range(PIGEONS)]
    for h in range(HOLES):
        for i in range(PIGEONS):
            for j in range(i + 1, PIGEONS):
                clauses.append([-p(i, h), -p(j, h)])
    clauses.append([-p(i, 0) for i in range(PIGEONS)])
    return clauses, PIGEONS * HOLES


def build(seed: int = SEED) -> tuple[ProblemFile, list[list[list[int]]]]:
    """The benchmark problem and, separately, the clauses of each block."""
    rng = random.Random(seed)
    clauses: list[list[int]] = []
    blocks = []
    atom = 1
    for _ in range(BLOCKS):
        block, used = pigeonhole_block(atom)
        blocks.append(block)
        clauses.extend(block)
        atom += used
    filler_atoms = list(range(atom, atom + FILLER_ATOMS))
    planted = {a: rng.random() < 0.5 for a in filler_atoms}
    while len(clauses) < TOTAL_CLAUSES:
        picked = rng.sample(filler_atoms, 3)
        c = [a if rng.random() < 0.5 else -a for a in picked]
        if any((lit > 0) == planted[abs(lit)] for lit in c):
            clauses.append(c)
    num_atoms = atom + FILLER_ATOMS - 1
    return ProblemFile(num_atoms=num_atoms, clauses=clauses), blocks


def bundled_path():
    return resources.files("circenum") / "data" / "php_blocks_100.cnf"


if __name__ == "__main__":
    pf, _ = build()
    print("c three disjoint 3-pigeon/2-hole blocks plus satisfiable filler", end="\n")
    print(render(pf), end="")
