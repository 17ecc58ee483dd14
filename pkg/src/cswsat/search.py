"""Minimum-length search over bounded synchronization questions.

The key fact: prepending the first letter of a carefully synchronizing word
yields another one, so "a word of length exactly ell exists" is monotone in
ell once true. min_csw therefore gallops (1, 2, 4, ...) until the first
satisfiable length, then binary-searches the bracketed interval; the probe
record doubles as a minimality certificate, ending with an unsatisfiable
probe one below the answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .automaton import STATE_SET_CAP, Pfa, is_carefully_synchronizing
from .encoder import decode_word, encode, scale
from .solver import SAT, UNSAT, Backend, BudgetExceeded, ModelVerificationError

__all__ = [
    "FOUND",
    "NOT_SYNCHRONIZING",
    "UNKNOWN_UP_TO_BOUND",
    "DEFAULT_MAX_LENGTH",
    "Probe",
    "SearchOutcome",
    "min_csw",
]

FOUND = "FOUND"
NOT_SYNCHRONIZING = "NOT_SYNCHRONIZING"
UNKNOWN_UP_TO_BOUND = "UNKNOWN_UP_TO_BOUND"

DEFAULT_MAX_LENGTH = 1 << 20


@dataclass(frozen=True)
class Probe:
    """One bounded question: is there a word of length exactly `length`?"""

    length: int
    status: str
    seconds: float


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    min_length: Optional[int] = None
    witness: Optional[tuple] = None
    probes: tuple = ()
    bound: int = 0
    visited: Optional[int] = None  # subsets expanded; breadth-first path only


def min_csw(
    pfa: Pfa,
    max_length: int = DEFAULT_MAX_LENGTH,
    backend: Optional[Backend] = None,
    precheck: bool = True,
    precheck_budget: int = 1 << 20,
) -> SearchOutcome:
    """Minimal carefully-synchronizing word length via repeated bounded
    solver questions.

    Fast refutations come first: a one-state automaton synchronizes with the
    empty word; an automaton with no everywhere-defined letter cannot start
    any synchronizing word at any length; and, when the state count permits
    subset search and `precheck` is on, an exact reachability pass refutes
    synchronizability outright, since unbounded non-existence can never be
    concluded from length probes alone. The pre-check's positive answers are
    deliberately ignored so the probe sequence stays a pure solver product.

    Raises BudgetExceeded (with a `probes` attribute holding the partial
    record) when the backend gives out.
    """
    if max_length < 1:
        raise ValueError(f"max_length must be >= 1, got {max_length}")
    if pfa.n == 1:
        return SearchOutcome(status=FOUND, min_length=0, witness=())
    if not pfa.has_total_letter():
        return SearchOutcome(status=NOT_SYNCHRONIZING)
    if precheck and pfa.n <= STATE_SET_CAP:
        from .oracle import power_bfs

        try:
            exact = power_bfs(pfa, max_visited=precheck_budget)
        except BudgetExceeded:
            pass
        else:
            if exact.status == NOT_SYNCHRONIZING:
                return SearchOutcome(status=NOT_SYNCHRONIZING, visited=exact.visited)

    backend = backend or Backend()
    template = encode(pfa, 1)
    probes = []
    words = {}

    def probe(length: int) -> str:
        instance = scale(template, length)
        start = time.perf_counter()
        try:
            result = backend.run(instance)
        except BudgetExceeded as exc:
            exc.probes = tuple(probes)
            raise
        elapsed = time.perf_counter() - start
        probes.append(Probe(length=length, status=result.status, seconds=elapsed))
        if result.status == SAT:
            words[length] = decode_word(result.model, instance.layout)
        return result.status

    # gallop until the first satisfiable length
    length = 1
    last_unsat = 0
    while True:
        if probe(length) == SAT:
            break
        last_unsat = length
        if length >= max_length:
            return SearchOutcome(
                status=UNKNOWN_UP_TO_BOUND, probes=tuple(probes), bound=max_length
            )
        length = min(length * 2, max_length)

    # binary search inside (last_unsat, length]
    lo, hi = last_unsat + 1, length
    while lo < hi:
        mid = (lo + hi) // 2
        if probe(mid) == SAT:
            hi = mid
        else:
            lo = mid + 1

    witness = words[hi]
    if not is_carefully_synchronizing(pfa, witness):
        raise ModelVerificationError(
            f"decoded word {witness!r} fails the synchronization check"
        )
    return SearchOutcome(
        status=FOUND,
        min_length=hi,
        witness=witness,
        probes=tuple(probes),
        bound=max(p.length for p in probes),
    )
