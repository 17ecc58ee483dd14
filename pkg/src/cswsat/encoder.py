"""CNF encoding of bounded careful-synchronization questions.

For an automaton with n states and m letters and a target length ell, the
instance uses one variable per (letter, position) pair and one per
(state, step) pair. A satisfying assignment pins down exactly one letter per
position, and the chosen word carefully synchronizes the automaton; the
sequence of chosen letters is recoverable from any model.

Clause groups, in emission order:
  initial        n unit clauses: every state is active after 0 steps;
  letter         per position, one at-least-one clause over the m letter
                 variables plus all pairwise at-most-one clauses;
  transition     per position and (state, letter) pair, either an
                 implication activating the successor or, when the
                 transition is missing, a veto on picking that letter while
                 the state is active;
  sync           pairwise at-most-one over the final-step state variables.

The emission order is fixed so instances are byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .automaton import Pfa

__all__ = [
    "VarLayout",
    "GroupSizes",
    "CnfInstance",
    "DecodeError",
    "DimacsError",
    "encode",
    "decode_word",
    "scale",
    "to_dimacs",
    "parse_dimacs",
    "clause_count",
    "variable_count",
]


def variable_count(n: int, m: int, ell: int) -> int:
    return (m + n) * ell + n


def clause_count(n: int, m: int, ell: int) -> int:
    return ell * (m * (m - 1) // 2 + m * n + 1) + n * (n + 1) // 2


@dataclass(frozen=True)
class VarLayout:
    """Bijection between (letter, position) / (state, step) pairs and
    variable numbers 1..(m+n)*ell + n.

    Step 0 state variables come first; afterwards each position t occupies a
    contiguous block of width m+n, letters before states. Keeping blocks
    contiguous makes stretching a length-1 instance pure index arithmetic.
    """

    n: int
    m: int
    ell: int

    def letter_var(self, i: int, t: int) -> int:
        """Variable asserting position t (1-based) holds letter i."""
        return self.n + (t - 1) * (self.m + self.n) + i

    def state_var(self, j: int, t: int) -> int:
        """Variable asserting state j is active after t steps (t >= 0)."""
        if t == 0:
            return j
        return self.n + (t - 1) * (self.m + self.n) + self.m + j

    @property
    def var_count(self) -> int:
        return variable_count(self.n, self.m, self.ell)


@dataclass(frozen=True)
class GroupSizes:
    initial: int
    letter: int
    transition: int
    sync: int

    def total(self) -> int:
        return self.initial + self.letter + self.transition + self.sync


@dataclass(frozen=True)
class CnfInstance:
    """An immutable CNF formula.

    Clauses are tuples of nonzero ints, positive for a variable and negative
    for its negation. `layout` and `group_sizes` are present on instances
    built by encode/scale and absent on ones read back from DIMACS text
    without a layout comment.
    """

    var_count: int
    clauses: tuple
    layout: Optional[VarLayout] = None
    group_sizes: Optional[GroupSizes] = None

    def __post_init__(self):
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.var_count:
                    raise ValueError(f"literal {lit} out of range for {self.var_count} variables")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


class DecodeError(ValueError):
    """A model does not pin down exactly one letter at some position."""


class DimacsError(ValueError):
    """Malformed DIMACS text."""


def encode(pfa: Pfa, ell: int) -> CnfInstance:
    """Build the instance asking for a carefully synchronizing word of
    length exactly ell (ell >= 1)."""
    if ell < 1:
        raise ValueError(f"target length must be >= 1, got {ell}")
    n, m = pfa.n, pfa.m
    layout = VarLayout(n=n, m=m, ell=ell)
    clauses = []

    # every state active after 0 steps
    for j in range(1, n + 1):
        clauses.append((j,))

    for t in range(1, ell + 1):
        letter_vars = [layout.letter_var(i, t) for i in range(1, m + 1)]
        clauses.append(tuple(letter_vars))
        for r in range(m):
            for s in range(r + 1, m):
                clauses.append((-letter_vars[r], -letter_vars[s]))
        for j in range(1, n + 1):
            active_prev = layout.state_var(j, t - 1)
            for i in range(1, m + 1):
                k = pfa.delta[i - 1][j - 1]
                if k is None:
                    clauses.append((-active_prev, -letter_vars[i - 1]))
                else:
                    clauses.append((-active_prev, -letter_vars[i - 1], layout.state_var(k, t)))

    for r in range(1, n + 1):
        for s in range(r + 1, n + 1):
            clauses.append((-layout.state_var(r, ell), -layout.state_var(s, ell)))

    groups = GroupSizes(
        initial=n,
        letter=ell * (m * (m - 1) // 2 + 1),
        transition=ell * m * n,
        sync=n * (n - 1) // 2,
    )
    instance = CnfInstance(
        var_count=layout.var_count,
        clauses=tuple(clauses),
        layout=layout,
        group_sizes=groups,
    )
    assert instance.clause_count == clause_count(n, m, ell)
    return instance


def scale(template: CnfInstance, ell: int) -> CnfInstance:
    """Stretch a length-1 instance to length ell without re-reading the
    automaton.

    The step-1 letter and transition block is replicated once per position:
    variables above the step-0 region shift by (t-1)*(m+n) in copy t, and
    references to step-0 state variables in copies t >= 2 are rewritten to
    the previous step's state variables. The final at-most-one-state block
    is emitted fresh. The result equals encode(pfa, ell) clause for clause.
    """
    layout = template.layout
    if layout is None or layout.ell != 1:
        raise ValueError("template must be an encoded instance of length 1")
    if ell < 1:
        raise ValueError(f"target length must be >= 1, got {ell}")
    n, m = layout.n, layout.m
    width = m + n
    per_step = m * (m - 1) // 2 + 1 + m * n
    new_layout = VarLayout(n=n, m=m, ell=ell)

    clauses = list(template.clauses[:n])
    step_block = template.clauses[n : n + per_step]
    for t in range(1, ell + 1):
        shift = (t - 1) * width
        if t == 1:
            clauses.extend(step_block)
            continue
        for clause in step_block:
            rewritten = []
            for lit in clause:
                v = abs(lit)
                if v > n:
                    rewritten.append(lit + shift if lit > 0 else lit - shift)
                else:
                    # step-0 state reference becomes the previous step's
                    replacement = new_layout.state_var(v, t - 1)
                    rewritten.append(replacement if lit > 0 else -replacement)
            clauses.append(tuple(rewritten))
    for r in range(1, n + 1):
        for s in range(r + 1, n + 1):
            clauses.append((-new_layout.state_var(r, ell), -new_layout.state_var(s, ell)))

    groups = GroupSizes(
        initial=n,
        letter=ell * (m * (m - 1) // 2 + 1),
        transition=ell * m * n,
        sync=n * (n - 1) // 2,
    )
    return CnfInstance(
        var_count=new_layout.var_count,
        clauses=tuple(clauses),
        layout=new_layout,
        group_sizes=groups,
    )


def decode_word(assignment, layout: VarLayout) -> tuple:
    """Read the chosen word off a model.

    `assignment` maps every variable to a truth value (mapping or sequence
    indexed by variable number). Raises DecodeError naming the first
    position whose letter variables are not exactly-one.
    """
    word = []
    for t in range(1, layout.ell + 1):
        chosen = [i for i in range(1, layout.m + 1) if assignment[layout.letter_var(i, t)]]
        if len(chosen) != 1:
            raise DecodeError(
                f"exactly-one letter violated at step {t}: {len(chosen)} letters set"
            )
        word.append(chosen[0])
    return tuple(word)


LAYOUT_COMMENT = "c layout n={n} m={m} l={ell}"


def to_dimacs(instance: CnfInstance, comment: Optional[str] = None) -> str:
    """Serialize to DIMACS CNF. `comment` adds one leading 'c' line."""
    lines = []
    if comment is not None:
        lines.append(f"c {comment}")
    lines.append(f"p cnf {instance.var_count} {instance.clause_count}")
    for clause in instance.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def layout_comment(layout: VarLayout) -> str:
    """Traceability comment recording the instance shape."""
    return f"layout n={layout.n} m={layout.m} l={layout.ell}"


def _parse_layout_comment(line: str) -> Optional[VarLayout]:
    parts = line.split()
    if parts[:2] != ["c", "layout"]:
        return None
    fields = {}
    for part in parts[2:]:
        if "=" not in part:
            return None
        key, _, value = part.partition("=")
        try:
            fields[key] = int(value)
        except ValueError:
            return None
    if set(fields) != {"n", "m", "l"}:
        return None
    return VarLayout(n=fields["n"], m=fields["m"], ell=fields["l"])


def parse_dimacs(text: str) -> CnfInstance:
    """Read DIMACS CNF text back into an instance.

    Comment lines are skipped, except that a layout comment written by the
    CLI is recovered so words can be decoded from models of the file.
    """
    header = None
    layout = None
    clauses = []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            found = _parse_layout_comment(line)
            if found is not None:
                layout = found
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError(f"expected 'p cnf <vars> <clauses>' at line {lineno}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"bad header counts at line {lineno}") from None
            continue
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"bad literal {token!r} at line {lineno}") from None
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("unterminated clause at end of input")
    var_count, declared = header
    if len(clauses) != declared:
        raise DimacsError(f"header declares {declared} clauses, found {len(clauses)}")
    if layout is not None and layout.var_count != var_count:
        layout = None
    return CnfInstance(var_count=var_count, clauses=tuple(clauses), layout=layout)
