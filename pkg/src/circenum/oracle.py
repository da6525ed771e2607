"""Brute-force reference implementations for the test suite.

Everything here is deliberately naive: models are found by trying every
assignment, the preference filter is a pairwise scan, and MCSes come from
checking every clause subset. Theories use signed DIMACS integers; a model
is a frozenset of the atoms it makes true.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

MAX_ATOMS = 20
MAX_MCS_CLAUSES = 12


class TooLarge(ValueError):
    pass


def _holds(lit: int, true_atoms) -> bool:
    return (lit in true_atoms) if lit > 0 else (-lit not in true_atoms)


def satisfies(true_atoms, clauses: Iterable[Sequence[int]] = (), cards: Iterable = ()) -> bool:
    for c in clauses:
        if not any(_holds(lit, true_atoms) for lit in c):
            return False
    for lits, k in cards:
        if sum(1 for lit in set(lits) if _holds(lit, true_atoms)) < k:
            return False
    return True


def all_models(num_atoms: int, clauses=(), cards=(), atoms: Sequence[int] | None = None) -> set:
    """Every model of the theory over ``atoms`` (default ``1..num_atoms``)."""
    atoms = list(range(1, num_atoms + 1)) if atoms is None else list(atoms)
    if len(atoms) > MAX_ATOMS:
        raise TooLarge(f"{len(atoms)} atoms exceeds the oracle cap of {MAX_ATOMS}")
    clauses = [list(c) for c in clauses]
    cards = [(list(lits), k) for lits, k in cards]
    models = set()
    for mask in range(1 << len(atoms)):
        true_atoms = frozenset(a for i, a in enumerate(atoms) if mask >> i & 1)
        if satisfies(true_atoms, clauses, cards):
            models.add(true_atoms)
    return models


def leq_pz(i, j, minimized, irrelevant, atoms) -> bool:
    """``i <=^{PZ} j``: same values outside P and Z, and i's P-part within j's."""
    fixed = set(atoms) - set(minimized) - set(irrelevant)
    return (i & fixed) == (j & fixed) and (i & minimized) <= (j & minimized)


def circ_filter(models, minimized, irrelevant) -> set:
    """Keep the models that are preferred under ``<=^{PZ}``."""
    models = list(models)
    minimized = frozenset(minimized)
    atoms = set().union(*models) | minimized | set(irrelevant) if models else set()
    # only pairs agreeing outside P and Z are comparable
    fixed = frozenset(atoms - minimized - set(irrelevant))
    groups: dict = {}
    for m in models:
        groups.setdefault(m & fixed, []).append(m)
    keep = set()
    for group in groups.values():
        for i in group:
            if not any(
                leq_pz(j, i, minimized, irrelevant, atoms)
                and not leq_pz(i, j, minimized, irrelevant, atoms)
                for j in group
            ):
                keep.add(i)
    return keep


def circ(num_atoms: int, clauses, minimized, irrelevant=(), cards=()) -> set:
    return circ_filter(all_models(num_atoms, clauses, cards), minimized, irrelevant)


def project(models, atoms) -> set:
    atoms = frozenset(atoms)
    return {m & atoms for m in models}


def _sat(num_atoms: int, clauses) -> bool:
    atoms = sorted({abs(lit) for c in clauses for lit in c})
    if len(atoms) > MAX_ATOMS:
        raise TooLarge(f"{len(atoms)} atoms exceeds the oracle cap of {MAX_ATOMS}")
    for mask in range(1 << len(atoms)):
        true_atoms = {a for i, a in enumerate(atoms) if mask >> i & 1}
        if satisfies(true_atoms, clauses):
            return True
    return False


def all_mcs(clauses, num_atoms: int | None = None) -> set:
    """Minimal correction subsets as frozensets of 1-based clause indices."""
    clauses = [list(c) for c in clauses]
    if len(clauses) > MAX_MCS_CLAUSES:
        raise TooLarge(f"{len(clauses)} clauses exceeds the oracle cap of {MAX_MCS_CLAUSES}")
    n = len(clauses)
    correcting = []
    for size in range(n + 1):
        for removed in combinations(range(1, n + 1), size):
            rs = frozenset(removed)
            if any(prev <= rs for prev in correcting):
                continue
            kept = [c for i, c in enumerate(clauses, 1) if i not in rs]
            if _sat(num_atoms or 0, kept):
                correcting.append(rs)
    return set(correcting)
