"""DIMACS CNF input with ``m``/``z`` lines for the minimized and irrelevant atoms.

::

    c comment
    p cnf 5 3
    1 3 0
    -1 2 4 0
    -1 -2 5 0
    m 3 4 5 0

``m <atoms> 0`` adds atoms to P, ``z <atoms> 0`` adds atoms to Z; both may
appear several times anywhere after the header. Other atoms are relevant.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Union

from .engine import CircInstance
from .solver import Solver, from_dimacs

CIRC = "circumscription"
MCS = "mcs"


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str) -> None:
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass
class ProblemFile:
    num_atoms: int
    clauses: list = field(default_factory=list)
    minimized: set = field(default_factory=set)
    irrelevant: set = field(default_factory=set)
    mode: str = CIRC


def _ints(tokens, lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse(source: Union[str, IO[str]], mode: str = CIRC) -> ProblemFile:
    """Parse a path (``"-"`` is not special here) or an open text stream."""
    if isinstance(source, str):
        with open(source) as fh:
            return parse(fh, mode)

    pf = None
    for lineno, line in enumerate(source, 1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("c"):
            continue
        head = tokens[0]
        if head == "p":
            if pf is not None:
                raise ParseError(lineno, "duplicate problem line")
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError(lineno, f"malformed problem line {line.strip()!r}")
            nvars, _ = _ints(tokens[2:], lineno)
            if nvars < 0:
                raise ParseError(lineno, "negative variable count")
            pf = ProblemFile(num_atoms=nvars, mode=mode)
            continue
        if pf is None:
            raise ParseError(lineno, "missing problem line before data")
        if head in ("m", "z"):
            if mode == MCS:
                raise ParseError(lineno, f"'{head}' lines are not allowed in mcs mode")
            atoms = _ints(tokens[1:], lineno)
            if not atoms or atoms[-1] != 0:
                raise ParseError(lineno, f"'{head}' line not terminated by 0")
            atoms = atoms[:-1]
            for a in atoms:
                if a <= 0 or a > pf.num_atoms:
                    raise ParseError(lineno, f"atom {a} out of range")
            target = pf.minimized if head == "m" else pf.irrelevant
            target.update(atoms)
            if pf.minimized & pf.irrelevant:
                raise ParseError(lineno, "minimized and irrelevant atoms overlap")
            continue
        lits = _ints(tokens, lineno)
        if lits[-1] != 0:
            raise ParseError(lineno, "clause not terminated by 0")
        clause: list[int] = []
        for d in lits:
            if d == 0:
                pf.clauses.append(clause)
                clause = []
            elif abs(d) > pf.num_atoms:
                raise ParseError(lineno, f"literal {d} out of range")
            else:
                clause.append(d)
    if pf is None:
        raise ParseError(0, "missing problem line")
    return pf


def parse_string(text: str, mode: str = CIRC) -> ProblemFile:
    return parse(io.StringIO(text), mode)


def render(pf: ProblemFile) -> str:
    lines = [f"p cnf {pf.num_atoms} {len(pf.clauses)}"]
    lines += [" ".join(map(str, c + [0])) for c in pf.clauses]
    if pf.minimized:
        lines.append(" ".join(["m"] + [str(a) for a in sorted(pf.minimized)] + ["0"]))
    if pf.irrelevant:
        lines.append(" ".join(["z"] + [str(a) for a in sorted(pf.irrelevant)] + ["0"]))
    return "\n".join(lines) + "\n"


def to_instance(pf: ProblemFile) -> CircInstance:
    return CircInstance.from_clauses(pf.num_atoms, pf.clauses, pf.minimized, pf.irrelevant)


def mcs_transform(pf: ProblemFile) -> tuple[CircInstance, dict]:
    """Relax clause i into ``clause ∨ s_i`` with a fresh selector s_i.

    Selectors are minimized, the original atoms are irrelevant and only
    selectors are visible. Returns the instance and the selector -> 1-based
    clause index map.
    """
    solver = Solver()
    total = pf.num_atoms + len(pf.clauses)
    if total:
        solver.add_atoms(total)
    selectors = {}
    for i, c in enumerate(pf.clauses, 1):
        s = pf.num_atoms + i
        selectors[s] = i
        solver.add_clause([from_dimacs(d) for d in c] + [from_dimacs(s)])
    instance = CircInstance(
        solver,
        minimized=frozenset(selectors),
        irrelevant=frozenset(range(1, pf.num_atoms + 1)),
        visible=frozenset(selectors),
    )
    return instance, selectors
