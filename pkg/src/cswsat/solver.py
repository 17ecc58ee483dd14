"""Complete CNF solving: a built-in conflict-driven solver plus a subprocess
adapter for external DIMACS solvers.

The built-in engine is a conflict-driven clause-learning loop: two watched
literals per clause, first-unique-implication-point learning with local
clause minimization, exponentially decayed variable activities breaking ties
toward the lowest variable index, saved phases (default false, which suits
the mostly-false models of the synchronization encoding), reluctant-doubling
restarts, and periodic forgetting of high-glue learned clauses. Runs are
deterministic for a fixed seed.

Every model, from either backend, is re-checked against the original clauses
by the separate `satisfies` evaluator before being returned; the solver's
own bookkeeping is never trusted.
"""

from __future__ import annotations

import heapq
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .encoder import CnfInstance, to_dimacs

__all__ = [
    "SAT",
    "UNSAT",
    "SolverLimits",
    "SolveStats",
    "SolveResult",
    "BudgetExceeded",
    "ModelVerificationError",
    "ExternalSolverError",
    "SolverOutputError",
    "satisfies",
    "solve",
    "solve_external",
    "Backend",
    "backend_from_spec",
]

SAT = "SAT"
UNSAT = "UNSAT"


class BudgetExceeded(RuntimeError):
    """A configured resource limit was hit before reaching a decision."""

    def __init__(self, message: str, stats=None):
        super().__init__(message)
        self.stats = stats


class ModelVerificationError(RuntimeError):
    """A claimed model failed the independent clause check."""


class ExternalSolverError(RuntimeError):
    """The external solver process could not be run or exited abnormally."""


class SolverOutputError(ExternalSolverError):
    """The external solver ran but produced no interpretable result."""


@dataclass(frozen=True)
class SolverLimits:
    """Optional resource caps; None means unlimited."""

    max_conflicts: Optional[int] = None
    max_decisions: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class SolveStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    restarts: int = 0
    elapsed_s: float = 0.0


@dataclass
class SolveResult:
    status: str
    model: Optional[dict]
    stats: SolveStats


def satisfies(instance: CnfInstance, model) -> bool:
    """Independent check that `model` (mapping var -> bool) satisfies every
    clause. Used to vet all solver output."""
    for clause in instance.clauses:
        for lit in clause:
            if model[abs(lit)] == (lit > 0):
                break
        else:
            return False
    return True


# Literal codes: variable v becomes 2v (positive) or 2v+1 (negative), so
# code ^ 1 negates and code >> 1 recovers the variable. val[v] is 1 (true),
# 0 (false) or -1 (unassigned); literal code c is true iff val[c>>1] equals
# (c & 1) ^ 1.


def _code(lit: int) -> int:
    return lit << 1 if lit > 0 else (-lit << 1) | 1


class _Engine:
    def __init__(self, instance: CnfInstance, limits: SolverLimits, seed: int):
        self.nvars = instance.var_count
        self.limits = limits
        self.stats = SolveStats()
        self.ok = True

        nv = self.nvars
        self.val = [-1] * (nv + 1)
        self.level = [0] * (nv + 1)
        self.reason = [-1] * (nv + 1)
        self.polarity = [False] * (nv + 1)
        self.activity = [0.0] * (nv + 1)
        self.seen = bytearray(nv + 1)
        self.watches = [[] for _ in range(2 * nv + 2)]
        self.clauses = []
        self.learned = {}  # clause index -> glue (distinct decision levels)
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.var_inc = 1.0
        self.deadline = None

        if seed:
            # reproducible jitter so different seeds explore differently
            import random

            rng = random.Random(seed)
            self.activity = [0.0] + [rng.random() * 1e-6 for _ in range(nv)]

        self.heap = [(-self.activity[v], v) for v in range(1, nv + 1)]
        heapq.heapify(self.heap)

        for clause in instance.clauses:
            if not self._add_input_clause(clause):
                self.ok = False
                return

    def _add_input_clause(self, clause) -> bool:
        lits = sorted({_code(l) for l in clause})
        for a, b in zip(lits, lits[1:]):
            if a ^ b == 1:
                return True  # tautology, always satisfied
        if not lits:
            return False
        if len(lits) == 1:
            return self._enqueue(lits[0], -1)
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.watches[lits[0]].append(ci)
        self.watches[lits[1]].append(ci)
        return True

    def _enqueue(self, code: int, reason: int) -> bool:
        v = code >> 1
        want = (code & 1) ^ 1
        cur = self.val[v]
        if cur != -1:
            return cur == want
        self.val[v] = want
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(code)
        return True

    def _propagate(self) -> int:
        """Exhaust unit propagation; return a conflicting clause index or -1."""
        watches = self.watches
        clauses = self.clauses
        val = self.val
        trail = self.trail
        props = 0
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            falsified = p ^ 1
            wl = watches[falsified]
            i = j = 0
            end = len(wl)
            while i < end:
                ci = wl[i]
                i += 1
                lits = clauses[ci]
                if lits[0] == falsified:
                    lits[0] = lits[1]
                    lits[1] = falsified
                first = lits[0]
                fv = val[first >> 1]
                if fv == (first & 1) ^ 1:
                    wl[j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    lk = lits[k]
                    if val[lk >> 1] != lk & 1:
                        lits[1] = lk
                        lits[k] = falsified
                        watches[lk].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                wl[j] = ci
                j += 1
                if fv == first & 1:
                    # conflict: keep the rest of the watch list intact
                    while i < end:
                        wl[j] = wl[i]
                        j += 1
                        i += 1
                    del wl[j:]
                    self.qhead = len(trail)
                    self.stats.propagations += props
                    return ci
                props += 1
                v = first >> 1
                self.val[v] = (first & 1) ^ 1
                self.level[v] = len(self.trail_lim)
                self.reason[v] = ci
                trail.append(first)
            del wl[j:]
        self.stats.propagations += props
        return -1

    def _bump(self, v: int):
        act = self.activity[v] + self.var_inc
        self.activity[v] = act
        if act > 1e100:
            scale = 1e-100
            for u in range(1, self.nvars + 1):
                self.activity[u] *= scale
            self.var_inc *= scale
            self.heap = [(-self.activity[u], u) for u in range(1, self.nvars + 1) if self.val[u] == -1]
            heapq.heapify(self.heap)
        else:
            heapq.heappush(self.heap, (-act, v))

    def _analyze(self, confl: int):
        """Derive the first-unique-implication-point clause for the current
        conflict. Returns (learnt literal codes, backjump level, glue)."""
        seen = self.seen
        level = self.level
        trail = self.trail
        cur = len(self.trail_lim)
        learnt = [0]
        counter = 0
        p = -1
        idx = len(trail) - 1
        while True:
            lits = self.clauses[confl]
            for k in range(0 if p == -1 else 1, len(lits)):
                q = lits[k]
                vq = q >> 1
                lq = level[vq]
                if not seen[vq] and lq > 0:
                    seen[vq] = 1
                    self._bump(vq)
                    if lq >= cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            vp = p >> 1
            seen[vp] = 0
            counter -= 1
            if counter == 0:
                learnt[0] = p ^ 1
                break
            confl = self.reason[vp]

        # local minimization: drop literals implied by the rest of the clause
        kept = [learnt[0]]
        for q in learnt[1:]:
            r = self.reason[q >> 1]
            if r == -1:
                kept.append(q)
                continue
            for other in self.clauses[r]:
                ov = other >> 1
                if other != q ^ 1 and not seen[ov] and level[ov] > 0:
                    kept.append(q)
                    break
        for q in learnt[1:]:
            seen[q >> 1] = 0

        if len(kept) == 1:
            return kept, 0, 1
        # second position must hold a literal from the backjump level
        best = 1
        for k in range(2, len(kept)):
            if level[kept[k] >> 1] > level[kept[best] >> 1]:
                best = k
        kept[1], kept[best] = kept[best], kept[1]
        back = level[kept[1] >> 1]
        glue = len({level[q >> 1] for q in kept})
        return kept, back, glue

    def _backtrack(self, target: int):
        trail = self.trail
        val = self.val
        limit = self.trail_lim[target]
        for idx in range(len(trail) - 1, limit - 1, -1):
            code = trail[idx]
            v = code >> 1
            self.polarity[v] = val[v] == 1
            val[v] = -1
            self.reason[v] = -1
            heapq.heappush(self.heap, (-self.activity[v], v))
        del trail[limit:]
        del self.trail_lim[target:]
        self.qhead = limit

    def _pick_branch(self) -> int:
        heap = self.heap
        val = self.val
        activity = self.activity
        while heap:
            negact, v = heapq.heappop(heap)
            if val[v] == -1 and -negact == activity[v]:
                return (v << 1) | (0 if self.polarity[v] else 1)
        return -1

    def _reduce_db(self):
        """Forget the weakest half of the learned clauses, keeping low-glue
        clauses and any clause currently acting as a reason."""
        by_worst = sorted(
            (ci for ci, glue in self.learned.items() if glue > 2),
            key=lambda ci: (-self.learned[ci], -len(self.clauses[ci]), ci),
        )
        drop = set()
        for ci in by_worst[: len(by_worst) // 2]:
            lits = self.clauses[ci]
            v0 = lits[0] >> 1
            if self.reason[v0] == ci and self.val[v0] != -1:
                continue
            drop.add(ci)
        if not drop:
            return
        for ci in drop:
            self.clauses[ci] = None
            del self.learned[ci]
        for code in range(2, 2 * self.nvars + 2):
            self.watches[code] = [ci for ci in self.watches[code] if self.clauses[ci] is not None]

    def _check_budget(self):
        lim = self.limits
        st = self.stats
        if lim.max_conflicts is not None and st.conflicts > lim.max_conflicts:
            raise BudgetExceeded(f"conflict limit {lim.max_conflicts} exceeded", st)
        if lim.max_decisions is not None and st.decisions > lim.max_decisions:
            raise BudgetExceeded(f"decision limit {lim.max_decisions} exceeded", st)
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise BudgetExceeded(f"time limit {lim.max_seconds}s exceeded", st)

    @property
    def _limited(self) -> bool:
        lim = self.limits
        return (
            lim.max_conflicts is not None
            or lim.max_decisions is not None
            or lim.max_seconds is not None
        )

    def run(self) -> tuple:
        """Returns (status, model dict or None)."""
        if self.limits.max_seconds is not None:
            self.deadline = time.perf_counter() + self.limits.max_seconds
        if not self.ok or self._propagate() != -1:
            return UNSAT, None

        limited = self._limited
        max_learned = 2000
        restart_u = restart_v = 1
        while True:
            conflicts_left = 100 * restart_v
            while conflicts_left > 0:
                confl = self._propagate()
                if confl != -1:
                    self.stats.conflicts += 1
                    conflicts_left -= 1
                    if not self.trail_lim:
                        return UNSAT, None
                    learnt, back, glue = self._analyze(confl)
                    self._backtrack(back)
                    if len(learnt) == 1:
                        if not self._enqueue(learnt[0], -1):
                            return UNSAT, None
                    else:
                        ci = len(self.clauses)
                        self.clauses.append(learnt)
                        self.watches[learnt[0]].append(ci)
                        self.watches[learnt[1]].append(ci)
                        self.learned[ci] = glue
                        self._enqueue(learnt[0], ci)
                    self.var_inc /= 0.95
                    if limited:
                        self._check_budget()
                    continue
                if len(self.learned) > max_learned:
                    self._reduce_db()
                    max_learned += 500
                code = self._pick_branch()
                if code == -1:
                    model = {v: self.val[v] == 1 for v in range(1, self.nvars + 1)}
                    return SAT, model
                self.stats.decisions += 1
                if limited:
                    self._check_budget()
                self.trail_lim.append(len(self.trail))
                self._enqueue(code, -1)
            # restart: reluctant doubling schedule
            self.stats.restarts += 1
            if self.trail_lim:
                self._backtrack(0)
            if restart_u & -restart_u == restart_v:
                restart_u += 1
                restart_v = 1
            else:
                restart_v <<= 1
            self._check_budget()


def solve(
    instance: CnfInstance,
    limits: Optional[SolverLimits] = None,
    seed: int = 0,
) -> SolveResult:
    """Decide the instance with the built-in engine.

    Returns a SolveResult whose model (when SAT) has passed the independent
    evaluator. Raises BudgetExceeded when a limit from `limits` is hit.
    """
    start = time.perf_counter()
    engine = _Engine(instance, limits or SolverLimits(), seed)
    try:
        status, model = engine.run()
    except BudgetExceeded:
        engine.stats.elapsed_s = time.perf_counter() - start
        raise
    stats = engine.stats
    stats.elapsed_s = time.perf_counter() - start
    if status == SAT and not satisfies(instance, model):
        raise ModelVerificationError("model verification failed for built-in solver")
    return SolveResult(status=status, model=model, stats=stats)


def _parse_result_lines(lines, var_count):
    """Extract (status, literals) from solver output lines; accepts both the
    's'/'v' line convention and the bare SAT/UNSAT file convention."""
    status = None
    literals = []
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            continue
        if line.startswith("s "):
            word = line[2:].strip()
            if word == "SATISFIABLE":
                status = SAT
            elif word == "UNSATISFIABLE":
                status = UNSAT
            continue
        if line in ("SAT", "SATISFIABLE"):
            status = SAT
            continue
        if line in ("UNSAT", "UNSATISFIABLE"):
            status = UNSAT
            continue
        if line.startswith("v ") or line[0] in "-0123456789":
            body = line[2:] if line.startswith("v ") else line
            for token in body.split():
                try:
                    lit = int(token)
                except ValueError:
                    literals = []
                    break
                if lit != 0:
                    literals.append(lit)
    return status, literals


def solve_external(
    instance: CnfInstance,
    command: str,
    timeout: Optional[float] = None,
) -> SolveResult:
    """Run an external DIMACS solver and vet its answer.

    `command` is a shell-style template. A '{cnf}' placeholder is replaced
    with the path of a temporary DIMACS file and '{out}' with a path the
    solver may write its result to (the two-file convention). Without
    '{cnf}' the DIMACS text is piped to the process's standard input.
    Output is accepted either as 's SATISFIABLE'/'s UNSATISFIABLE' plus 'v'
    model lines, or as a result file starting with SAT/UNSAT.

    A SAT claim is only reported after the model passes `satisfies`.
    """
    start = time.perf_counter()
    dimacs = to_dimacs(instance)
    tokens = shlex.split(command)
    with tempfile.TemporaryDirectory(prefix="cswsat-") as tmp:
        cnf_path = Path(tmp) / "instance.cnf"
        out_path = Path(tmp) / "result.txt"
        uses_file = any("{cnf}" in t for t in tokens)
        uses_out = any("{out}" in t for t in tokens)
        if uses_file:
            cnf_path.write_text(dimacs)
        argv = [
            t.replace("{cnf}", str(cnf_path)).replace("{out}", str(out_path))
            for t in tokens
        ]
        try:
            proc = subprocess.run(
                argv,
                input=None if uses_file else dimacs,
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except FileNotFoundError as exc:
            raise ExternalSolverError(f"cannot launch external solver: {exc}") from exc
        except subprocess.TimeoutExpired as exc:
            raise BudgetExceeded(f"external solver exceeded {timeout}s") from exc

        status, literals = _parse_result_lines(proc.stdout.splitlines(), instance.var_count)
        if status is None and uses_out and out_path.exists():
            status, literals = _parse_result_lines(
                out_path.read_text().splitlines(), instance.var_count
            )
        if status is None:
            if proc.returncode not in (0, 10, 20):
                raise ExternalSolverError(
                    f"external solver exited with code {proc.returncode}: "
                    f"{proc.stderr.strip()[:200]}"
                )
            raise SolverOutputError("no result line found in external solver output")

    stats = SolveStats(elapsed_s=time.perf_counter() - start)
    if status == UNSAT:
        return SolveResult(status=UNSAT, model=None, stats=stats)
    model = {v: False for v in range(1, instance.var_count + 1)}
    for lit in literals:
        if 1 <= abs(lit) <= instance.var_count:
            model[abs(lit)] = lit > 0
    if not satisfies(instance, model):
        raise ModelVerificationError("model verification failed for external solver")
    return SolveResult(status=SAT, model=model, stats=stats)


@dataclass(frozen=True)
class Backend:
    """A solver choice that `search` and the CLI can pass around."""

    kind: str = "builtin"
    command: Optional[str] = None
    seed: int = 0
    limits: SolverLimits = field(default_factory=SolverLimits)
    timeout: Optional[float] = None

    def run(self, instance: CnfInstance) -> SolveResult:
        if self.kind == "builtin":
            return solve(instance, limits=self.limits, seed=self.seed)
        return solve_external(instance, self.command, timeout=self.timeout)


def backend_from_spec(spec: str, seed: int = 0, limits: Optional[SolverLimits] = None) -> Backend:
    """Parse a backend flag value: 'builtin' or 'external:<command>'."""
    limits = limits or SolverLimits()
    if spec == "builtin":
        return Backend(kind="builtin", seed=seed, limits=limits)
    if spec.startswith("external:"):
        command = spec[len("external:") :].strip()
        if not command:
            raise ValueError("external backend needs a command after the colon")
        return Backend(kind="external", command=command, timeout=limits.max_seconds)
    raise ValueError(f"unknown backend {spec!r}, expected 'builtin' or 'external:<command>'")
