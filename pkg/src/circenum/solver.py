"""Incremental CDCL solver with assumptions and native cardinality constraints.

Literals are plain ints in the MiniSat encoding: atom ``a`` yields the
positive literal ``2*a`` and the negative literal ``2*a + 1``. Atom 0 is the
reserved falsum atom, fixed false for the lifetime of the solver, so
``BOT`` (the literal ``⊥``) is always false and ``TOP`` (``¬⊥``) always true.

Use :func:`from_dimacs` / :func:`to_dimacs` to move between this encoding and
signed DIMACS integers.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

BOT = 0
TOP = 1

_TRUE = 1
_FALSE = -1
_UNDEF = 0


def mk_lit(atom: int, negative: bool = False) -> int:
    return 2 * atom + int(negative)


def neg(lit: int) -> int:
    return lit ^ 1


def atom_of(lit: int) -> int:
    return lit >> 1


def is_negative(lit: int) -> bool:
    return bool(lit & 1)


def from_dimacs(d: int) -> int:
    if d == 0:
        raise ValueError("0 is not a DIMACS literal")
    return 2 * d if d > 0 else -2 * d + 1


def to_dimacs(lit: int) -> int:
    a = lit >> 1
    if a == 0:
        raise ValueError("the falsum atom has no DIMACS form")
    return -a if lit & 1 else a


def value(model: frozenset, atom: int) -> bool:
    """Truth value of ``atom`` in a total model (a set of literals)."""
    return 2 * atom in model


class InfeasibleConstraint(ValueError):
    """Raised when a cardinality bound exceeds the number of literals."""


@dataclass(frozen=True)
class Sat:
    model: frozenset
    branching: tuple = ()

    def true_atoms(self) -> list[int]:
        return sorted(lit >> 1 for lit in self.model if not lit & 1 and lit > 1)


@dataclass(frozen=True)
class Unsat:
    core: frozenset = field(default_factory=frozenset)


SolveOutcome = Union[Sat, Unsat]


class _Card:
    # at least `bound` of `lits` true; fires once `slack` literals are false
    __slots__ = ("lits", "bound", "slack", "nfalse")

    def __init__(self, lits: list[int], bound: int) -> None:
        self.lits = lits
        self.bound = bound
        self.slack = len(lits) - bound
        self.nfalse = 0

    def __repr__(self) -> str:
        return f"_Card({self.lits!r} >= {self.bound})"


class Solver:
    """CDCL engine; see the module docstring for the literal encoding.

    Clauses and cardinality constraints are only ever added, never removed,
    and learned clauses are kept for the whole lifetime of the solver.
    """

    var_decay = 0.95
    restart_first = 100
    restart_inc = 1.5

    def __init__(self) -> None:
        self.ok = True
        self._nvars = 0
        self._vals: list[int] = [_UNDEF, _UNDEF]
        self._level: list[int] = [0]
        self._reason: list = [None]
        self._trail_pos: list[int] = [0]
        self._phase: list[bool] = [True]  # True = negative polarity
        self._activity: list[float] = [0.0]
        self._seen: list[bool] = [False]
        self._watches: list[list] = [[], []]
        self._card_occ: list[list] = [[], []]
        self._heap: list = []
        self._var_inc = 1.0

        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._decisions: list[Optional[int]] = []
        self._qhead = 0

        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.cards: list[_Card] = []
        self.stats = {
            "solves": 0,
            "conflicts": 0,
            "decisions": 0,
            "propagations": 0,
            "restarts": 0,
            "deleted": 0,
        }
        self._assign(TOP, None)

    # ------------------------------------------------------------------
    # universe

    @property
    def num_atoms(self) -> int:
        return self._nvars

    def add_atoms(self, count: int) -> range:
        if count < 1:
            raise ValueError("count must be positive")
        first = self._nvars + 1
        for v in range(first, first + count):
            self._vals += (_UNDEF, _UNDEF)
            self._level.append(0)
            self._reason.append(None)
            self._trail_pos.append(0)
            self._phase.append(True)
            self._activity.append(0.0)
            self._seen.append(False)
            self._watches += ([], [])
            self._card_occ += ([], [])
            heapq.heappush(self._heap, (-0.0, v))
        self._nvars += count
        return range(first, first + count)

    def _check_lits(self, lits: Iterable[int]) -> None:
        top = 2 * self._nvars + 1
        for lit in lits:
            if lit < 0 or lit > top:
                raise ValueError(f"literal {lit} refers to an unallocated atom")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses) + len(self.learnts) + len(self.cards)

    # ------------------------------------------------------------------
    # constraints

    def add_clause(self, lits: Iterable[int]) -> None:
        """Add a clause; an empty clause makes the solver permanently unsat."""
        lits = list(lits)
        self._check_lits(lits)
        if not self.ok:
            return
        self._cancel_until(0)
        vals = self._vals
        out: list[int] = []
        present = set()
        for lit in lits:
            if lit in present:
                continue
            if lit ^ 1 in present or vals[lit] == _TRUE:
                return
            present.add(lit)
            if vals[lit] != _FALSE:
                out.append(lit)
        if not out:
            self.ok = False
        elif len(out) == 1:
            self._assign(out[0], None)
            self.ok = self._propagate() is None
        else:
            self.clauses.append(out)
            self._watches[out[0]].append(out)
            self._watches[out[1]].append(out)

    def add_cardinality(self, lits: Iterable[int], bound: int) -> None:
        """Add ``lits[0] + ... + lits[n-1] >= bound`` with native propagation."""
        lits = list(dict.fromkeys(lits))
        self._check_lits(lits)
        if bound < 0:
            raise ValueError("bound must be non-negative")
        if bound > len(lits):
            raise InfeasibleConstraint(f"bound {bound} exceeds {len(lits)} literals")
        if bound == 0 or not self.ok:
            return
        self._cancel_until(0)
        vals = self._vals
        free = []
        for lit in lits:
            if vals[lit] == _TRUE:
                bound -= 1
            elif vals[lit] == _UNDEF:
                free.append(lit)
        if bound <= 0:
            return
        if bound > len(free):
            self.ok = False
            return
        if bound == len(free):
            for lit in free:
                if vals[lit] == _UNDEF:
                    self._assign(lit, None)
                elif vals[lit] == _FALSE:
                    self.ok = False
                    return
            self.ok = self._propagate() is None
            return
        card = _Card(free, bound)
        self.cards.append(card)
        for lit in free:
            self._card_occ[lit].append(card)

    # ------------------------------------------------------------------
    # trail

    def _decision_level(self) -> int:
        return len(self._trail_lim)

    def _assign(self, lit: int, reason) -> None:
        v = lit >> 1
        self._vals[lit] = _TRUE
        self._vals[lit ^ 1] = _FALSE
        self._level[v] = len(self._trail_lim)
        self._reason[v] = reason
        self._trail_pos[v] = len(self._trail)
        self._trail.append(lit)

    def _new_level(self, decision: Optional[int]) -> None:
        self._trail_lim.append(len(self._trail))
        self._decisions.append(decision)
        if decision is not None:
            self._assign(decision, None)

    def _cancel_until(self, level: int) -> None:
        if len(self._trail_lim) <= level:
            return
        trail = self._trail
        vals = self._vals
        start = self._trail_lim[level]
        qhead = self._qhead
        for i in range(len(trail) - 1, start - 1, -1):
            lit = trail[i]
            v = lit >> 1
            if i < qhead:
                for card in self._card_occ[lit ^ 1]:
                    card.nfalse -= 1
            vals[lit] = _UNDEF
            vals[lit ^ 1] = _UNDEF
            self._reason[v] = None
            self._phase[v] = bool(lit & 1)
            heapq.heappush(self._heap, (-self._activity[v], v))
        del trail[start:]
        del self._trail_lim[level:]
        del self._decisions[level:]
        self._qhead = min(qhead, start)

    # ------------------------------------------------------------------
    # propagation

    def _propagate(self):
        """Unit propagation; returns a falsified clause (list of lits) or None."""
        vals = self._vals
        trail = self._trail
        watches = self._watches
        card_occ = self._card_occ
        confl = None
        while self._qhead < len(trail):
            p = trail[self._qhead]
            self._qhead += 1
            self.stats["propagations"] += 1
            false_lit = p ^ 1

            occ = card_occ[false_lit]
            if occ:
                for card in occ:
                    card.nfalse += 1
                    if confl is not None:
                        continue
                    if card.nfalse > card.slack:
                        confl = self._card_conflict(card)
                    elif card.nfalse == card.slack:
                        for lit in card.lits:
                            if vals[lit] == _UNDEF:
                                self._assign(lit, card)
                if confl is not None:
                    return confl

            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if vals[first] == _TRUE:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    if vals[lit] != _FALSE:
                        c[1] = lit
                        c[k] = false_lit
                        watches[lit].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if vals[first] == _FALSE:
                        confl = c
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                    else:
                        self._assign(first, c)
            del ws[j:]
            if confl is not None:
                return confl
        return None

    def _card_conflict(self, card: _Card) -> list[int]:
        vals = self._vals
        return [lit for lit in card.lits if vals[lit] == _FALSE]

    def _reason_lits(self, lit: int) -> list[int]:
        """Clause form of the reason for ``lit``, with ``lit`` first."""
        r = self._reason[lit >> 1]
        if isinstance(r, _Card):
            vals = self._vals
            pos = self._trail_pos
            limit = pos[lit >> 1]
            return [lit] + [
                q for q in r.lits if vals[q] == _FALSE and pos[q >> 1] < limit
            ]
        return r

    # ------------------------------------------------------------------
    # conflict analysis

    def _bump(self, v: int) -> None:
        act = self._activity
        act[v] += self._var_inc
        if act[v] > 1e100:
            for u in range(1, self._nvars + 1):
                act[u] *= 1e-100
            self._var_inc *= 1e-100
            self._heap = [(-act[u], u) for u in range(1, self._nvars + 1)]
            heapq.heapify(self._heap)
        elif self._vals[2 * v] == _UNDEF:
            heapq.heappush(self._heap, (-act[v], v))

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = self._seen
        level = self._level
        trail = self._trail
        cur = len(self._trail_lim)
        learnt = [0]
        touched = []
        path = 0
        p = -1
        lits = confl
        idx = len(trail) - 1
        while True:
            for q in lits if p < 0 else lits[1:]:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    touched.append(v)
                    self._bump(v)
                    if level[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            seen[p >> 1] = False
            path -= 1
            if path == 0:
                break
            lits = self._reason_lits(p)
        learnt[0] = p ^ 1
        for v in touched:
            seen[v] = False
        self._var_inc /= self.var_decay

        if len(learnt) == 1:
            return learnt, 0
        best = 1
        for k in range(2, len(learnt)):
            if level[learnt[k] >> 1] > level[learnt[best] >> 1]:
                best = k
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[learnt[1] >> 1]

    def _analyze_final(self, p: int) -> frozenset:
        """Core for a falsified assumption ``p``: assumptions implying ``¬p``."""
        core = {p}
        if self._level[p >> 1] == 0 or not self._trail_lim:
            return frozenset(core)
        seen = self._seen
        seen[p >> 1] = True
        trail = self._trail
        for i in range(len(trail) - 1, self._trail_lim[0] - 1, -1):
            lit = trail[i]
            v = lit >> 1
            if not seen[v]:
                continue
            seen[v] = False
            if self._reason[v] is None:
                core.add(lit)
            else:
                for q in self._reason_lits(lit)[1:]:
                    if self._level[q >> 1] > 0:
                        seen[q >> 1] = True
        seen[p >> 1] = False
        return frozenset(core)

    # ------------------------------------------------------------------
    # search

    def _pick_branch(self) -> Optional[int]:
        heap = self._heap
        vals = self._vals
        act = self._activity
        while heap:
            negact, v = heapq.heappop(heap)
            if vals[2 * v] == _UNDEF and -negact == act[v]:
                return 2 * v + int(self._phase[v])
        return None

    def solve(
        self, assumptions: Sequence[int] = (), budget: Optional[int] = None
    ) -> Optional[SolveOutcome]:
        """Search for a model containing every assumption.

        Returns :class:`Sat` or :class:`Unsat`; with a conflict ``budget``,
        returns None if the budget runs out first.
        """
        assumptions = list(assumptions)
        self._check_lits(assumptions)
        self.stats["solves"] += 1
        if not self.ok:
            return Unsat()
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return Unsat()
        if len(self._heap) > 4 * self._nvars + 1024:
            act = self._activity
            self._heap = [
                (-act[v], v) for v in range(1, self._nvars + 1)
                if self._vals[2 * v] == _UNDEF
            ]
            heapq.heapify(self._heap)

        nassump = len(assumptions)
        conflicts = 0
        restart_at = float(self.restart_first)
        try:
            while True:
                confl = self._propagate()
                if confl is not None:
                    conflicts += 1
                    self.stats["conflicts"] += 1
                    if not self._trail_lim:
                        self.ok = False
                        return Unsat()
                    learnt, back = self._analyze(confl)
                    self._cancel_until(back)
                    if len(learnt) == 1:
                        self._assign(learnt[0], None)
                    else:
                        self.learnts.append(learnt)
                        self._watches[learnt[0]].append(learnt)
                        self._watches[learnt[1]].append(learnt)
                        self._assign(learnt[0], learnt)
                    continue

                if budget is not None and conflicts >= budget:
                    return None
                if conflicts >= restart_at:
                    restart_at += restart_at * self.restart_inc
                    self.stats["restarts"] += 1
                    self._cancel_until(min(nassump, len(self._trail_lim)))

                next_lit = None
                while len(self._trail_lim) < nassump:
                    p = assumptions[len(self._trail_lim)]
                    val = self._vals[p]
                    if val == _TRUE:
                        self._new_level(None)
                    elif val == _FALSE:
                        return Unsat(self._analyze_final(p))
                    else:
                        next_lit = p
                        break
                if next_lit is None:
                    next_lit = self._pick_branch()
                    if next_lit is None:
                        model = frozenset(self._trail)
                        branching = tuple(d for d in self._decisions if d is not None)
                        return Sat(model, branching)
                    self.stats["decisions"] += 1
                self._new_level(next_lit)
        finally:
            self._cancel_until(0)

    # ------------------------------------------------------------------
    # inspection helpers (tests, oracles)

    def export(self) -> tuple[list[list[int]], list[tuple[list[int], int]]]:
        """Stored clauses, root-level units and cardinality constraints as DIMACS.

        Learned clauses are left out; root units may include learned facts,
        which are consequences of the theory anyway.
        """
        self._cancel_until(0)
        clauses = [[to_dimacs(lit)] for lit in self._trail if lit >> 1]
        clauses += [[to_dimacs(lit) for lit in c] for c in self.clauses]
        cards = [([to_dimacs(lit) for lit in card.lits], card.bound) for card in self.cards]
        if not self.ok:
            clauses.append([])
        return clauses, cards

    def check_model(self, model: frozenset) -> bool:
        """Literal check of ``model`` against every stored constraint."""
        for c in self.clauses:
            if not any(lit in model for lit in c):
                return False
        for card in self.cards:
            if sum(1 for lit in card.lits if lit in model) < card.bound:
                return False
        return True
