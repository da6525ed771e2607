"""Core-guided enumeration of the preferred models of CIRC(T, P, Z).

The loop asks the solver for a model falsifying every objective atom. A
model found this way is minimal on P; its cone of witnesses (models that
agree on P and the relevant atoms) is enumerated and then cut off with a
blocking clause. An unsatisfiable core instead triggers the ONE rewrite:
the core's objectives are replaced by ``|C| - 1`` fresh ones and a
cardinality constraint forcing all but one core literal. An empty core
means nothing is left.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .enumerate import enumerate_models, project
from .solver import Sat, Solver, Unsat, from_dimacs, mk_lit

log = logging.getLogger(__name__)

DEFAULT_SHRINK_BUDGET = 1000


class ContractViolation(AssertionError):
    pass


@dataclass
class CircInstance:
    """A theory held by ``solver`` with the atom partition for CIRC.

    ``visible`` defaults to every atom present at construction and only
    controls what is reported; ``relevant`` is always computed from the
    full atom set.
    """

    solver: Solver
    minimized: frozenset
    irrelevant: frozenset = frozenset()
    visible: Optional[frozenset] = None
    relevant: frozenset = field(init=False)
    atoms: frozenset = field(init=False)

    def __post_init__(self) -> None:
        self.minimized = frozenset(self.minimized)
        self.irrelevant = frozenset(self.irrelevant)
        self.atoms = frozenset(range(1, self.solver.num_atoms + 1))
        if self.minimized & self.irrelevant:
            raise ValueError("minimized and irrelevant atoms overlap")
        if not (self.minimized | self.irrelevant) <= self.atoms:
            raise ValueError("P and Z must be atoms of the theory")
        self.relevant = self.atoms - self.minimized - self.irrelevant
        self.visible = self.atoms if self.visible is None else frozenset(self.visible)

    @classmethod
    def from_clauses(cls, num_atoms: int, clauses, minimized, irrelevant=(), cards=(), visible=None):
        """Build from DIMACS-style clauses and ``(lits, bound)`` cardinality pairs."""
        solver = Solver()
        if num_atoms:
            solver.add_atoms(num_atoms)
        for c in clauses:
            solver.add_clause([from_dimacs(d) for d in c])
        for lits, k in cards:
            solver.add_cardinality([from_dimacs(d) for d in lits], k)
        return cls(solver, frozenset(minimized), frozenset(irrelevant), visible)


@dataclass
class EngineState:
    objectives: list  # objective atoms, falsified by the top-level solve
    minimized: frozenset
    fresh: list = field(default_factory=list)  # every atom introduced by core analysis
    models_emitted: int = 0
    top_solve_calls: int = 0
    cores_analyzed: int = 0
    shrink_solves: int = 0
    cones: int = 0
    witnesses: int = 0


@dataclass
class EnumerationReport:
    complete: bool
    models: int
    stats: dict


def blocking_clause(model: frozenset, minimized: Iterable[int], relevant: Iterable[int]) -> list[int]:
    """Clause for ``⋀ I|_R → ⋁ {¬p | p ∈ P ∩ I}``.

    Literals come out sorted by atom; the clause is empty when R is empty and
    the model makes no P atom true.
    """
    out = []
    for a in sorted(relevant):
        pos = mk_lit(a)
        out.append(pos ^ 1 if pos in model else pos)
    for p in sorted(minimized):
        if mk_lit(p) in model:
            out.append(mk_lit(p, True))
    return out


def witness_assumptions(
    model: frozenset, minimized: Iterable[int], relevant: Iterable[int], fresh: Sequence[int]
) -> list[int]:
    """Fix the P and R atoms as in ``model`` and assume every fresh atom true.

    With all fresh atoms true each constraint added by core analysis holds
    whatever the P atoms are, so the witnesses are exactly the models of the
    original theory agreeing with ``model`` on P and R.
    """
    out = []
    for a in sorted(set(minimized) | set(relevant)):
        pos = mk_lit(a)
        out.append(pos if pos in model else pos ^ 1)
    out.extend(mk_lit(y) for y in fresh)
    return out


def shrink_core(
    solver: Solver, core: Iterable[int], budget: int = DEFAULT_SHRINK_BUDGET, state: Optional[EngineState] = None
) -> list[int]:
    """Progression-based core shrinking.

    Re-solves under prefixes of the core of length 1, 2, 4, ... with at most
    ``budget`` conflicts each; an unsat answer replaces the core and restarts
    the progression. The whole core is tried last, so the result is never
    larger than the input.
    """
    core = sorted(set(core))
    if budget <= 0 or len(core) <= 1:
        return core
    size = 1
    while True:
        k = min(size, len(core))
        outcome = solver.solve(core[:k], budget=budget)
        if state is not None:
            state.shrink_solves += 1
        if isinstance(outcome, Unsat) and len(outcome.core) < len(core):
            core = sorted(outcome.core)
            size = 1
            if len(core) <= 1:
                return core
            continue
        if k == len(core):
            return core
        size *= 2


def analyze_core(state: EngineState, solver: Solver, core: Iterable[int]) -> list[int]:
    """Apply ONE to a nonempty core ``{¬x_0, ..., ¬x_n}``; returns the new atoms."""
    core = sorted(set(core))
    if not core:
        raise ContractViolation("empty core passed to core analysis")
    objectives = set(state.objectives)
    for lit in core:
        if not lit & 1 or lit >> 1 not in objectives:
            raise ContractViolation(f"core literal {lit} is not a negated objective")
    xs = [lit >> 1 for lit in core]
    n = len(xs) - 1
    ys = list(solver.add_atoms(n)) if n else []
    removed = set(xs)
    state.objectives = [o for o in state.objectives if o not in removed] + ys
    state.fresh.extend(ys)
    state.cores_analyzed += 1
    if n:
        solver.add_cardinality(core + [mk_lit(y) for y in ys], n)
        for i in range(1, n):
            solver.add_clause([mk_lit(ys[i], True), mk_lit(ys[i - 1])])
    return ys


def circ_enumerate(
    instance: CircInstance,
    sink: Callable[[frozenset], None],
    max_models: int = 0,
    max_witnesses: int = 0,
    shrink_budget: int = DEFAULT_SHRINK_BUDGET,
    state: Optional[EngineState] = None,
) -> EnumerationReport:
    """Emit every member of CIRC(T, P, Z), projected to the visible atoms.

    Limits of 0 mean unbounded. ``max_models`` caps the total number of
    emitted models; ``max_witnesses`` caps the models reported per cone,
    and a value of 1 reports the minimal model itself without enumerating
    witnesses. The report is complete only if the run ended on an empty core.
    """
    solver = instance.solver
    P = instance.minimized
    R = instance.relevant
    V = instance.visible
    if state is None:
        state = EngineState(objectives=sorted(P), minimized=P)

    def emit(m: frozenset) -> None:
        state.models_emitted += 1
        sink(m)

    while True:
        state.top_solve_calls += 1
        outcome = solver.solve([mk_lit(x, True) for x in state.objectives])
        if isinstance(outcome, Sat):
            state.cones += 1
            model = outcome.model
            remaining = max_models - state.models_emitted if max_models else None
            if max_witnesses == 1:
                emit(project(model, V))
            else:
                caps = [c for c in (remaining, max_witnesses or None) if c]
                limit = min(caps) if caps else None
                assumptions = witness_assumptions(model, P, R, state.fresh)
                state.witnesses += enumerate_models(solver, V, assumptions, emit, limit=limit)
            if max_models and state.models_emitted >= max_models:
                return _report(False, state, solver)
            solver.add_clause(blocking_clause(model, P, R))
        elif outcome.core:
            core = shrink_core(solver, outcome.core, shrink_budget, state)
            log.debug("core of size %d (shrunk from %d)", len(core), len(outcome.core))
            if not core:
                # shrinking proved the theory itself unsatisfiable
                return _report(True, state, solver)
            analyze_core(state, solver, core)
        else:
            return _report(True, state, solver)


def _report(complete: bool, state: EngineState, solver: Solver) -> EnumerationReport:
    stats = {
        "solve_calls": state.top_solve_calls,
        "cores": state.cores_analyzed,
        "shrink_solves": state.shrink_solves,
        "models": state.models_emitted,
        "cones": state.cones,
        "witnesses": state.witnesses,
        "conflicts": solver.stats["conflicts"],
        "clauses": solver.num_clauses,
        "deleted": solver.stats["deleted"],
    }
    return EnumerationReport(complete, state.models_emitted, stats)
