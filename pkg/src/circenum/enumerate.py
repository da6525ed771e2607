"""Polyspace model enumeration over a stack of flippable assumptions."""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .solver import BOT, TOP, Sat, Solver


def project(model: frozenset, visible: frozenset) -> frozenset:
    """True atoms of ``model`` that are in ``visible``."""
    return frozenset(lit >> 1 for lit in model if not lit & 1 and lit >> 1 in visible)


def enumerate_models(
    solver: Solver,
    visible: Iterable[int],
    assumptions: Iterable[int],
    sink: Callable[[frozenset], None],
    limit: Optional[int] = None,
    trace: Optional[Callable[[list], None]] = None,
) -> int:
    """Report every ``I ∩ visible`` for the models I of the theory extending
    ``assumptions``; returns how many were reported.

    The input assumptions sit below a ``¬⊥`` guard and are never flipped.
    Above the guard, branching literals of each model are pushed and then
    flipped one at a time, backjumping on unsatisfiable cores. No clauses are
    added, so memory does not grow with the number of models. Each reported
    projection is distinct when every atom outside ``visible`` is fixed by
    the assumptions and the theory.

    ``trace`` (testing hook) receives the assumption stack before each solve.
    """
    visible = frozenset(visible)
    stack = list(assumptions)
    stack.append(TOP)
    guard = len(stack) - 1
    flipped: set[int] = set()
    count = 0
    while stack[-1] != BOT:
        if trace is not None:
            trace(list(stack))
        outcome = solver.solve(stack)
        if isinstance(outcome, Sat):
            sink(project(outcome.model, visible))
            count += 1
            if limit is not None and count >= limit:
                break
            on_stack = set(stack)
            for lit in outcome.branching:
                if lit not in on_stack:
                    stack.append(lit)
                    on_stack.add(lit)
        else:
            core = outcome.core
            while stack[-1] != TOP and stack[-1] not in core:
                flipped.discard(stack.pop())
        while stack[-1] in flipped:
            flipped.discard(stack.pop())
        top = stack.pop() ^ 1
        stack.append(top)
        flipped.add(top)
        assert len(stack) > guard
    return count
