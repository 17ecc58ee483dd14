"""Small independent checkers the library must agree with.

Everything here works from raw data (clause lists, transition tables) using
plain sets and integers, on purpose: these are the cross-checks, so they
avoid the library code paths they are checking.
"""

from functools import lru_cache

from hypothesis import strategies as st

from cswsat.automaton import Pfa


# cached: only nvars^2 distinct tables exist and sweeps reuse them heavily
@lru_cache(maxsize=None)
def truth_table(var: int, nvars: int) -> int:
    """Bit r of the result is the value of variable `var` in row r of the
    2^nvars truth table (row index read as a binary assignment)."""
    p = 1 << (var - 1)
    unit = ((1 << p) - 1) << p
    period = 2 * p
    reps = (1 << nvars) // period
    rep_mask = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
    return unit * rep_mask


def formula_table(var_count: int, clauses) -> int:
    """Truth table of the whole CNF as one big integer."""
    full = (1 << (1 << var_count)) - 1
    acc = full
    for clause in clauses:
        ct = 0
        for lit in clause:
            t = truth_table(abs(lit), var_count)
            ct |= t if lit > 0 else full ^ t
        acc &= ct
        if acc == 0:
            break
    return acc


def brute_force_satisfiable(var_count: int, clauses) -> bool:
    return formula_table(var_count, clauses) != 0


def brute_force_models(var_count: int, clauses):
    """Yield every satisfying assignment as a dict {var: bool}."""
    table = formula_table(var_count, clauses)
    while table:
        low = table & -table
        row = low.bit_length() - 1
        yield {v: bool(row >> (v - 1) & 1) for v in range(1, var_count + 1)}
        table ^= low


def eval_clauses(clauses, assignment) -> bool:
    """assignment maps var -> bool; true iff every clause holds."""
    return all(
        any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in clauses
    )


def set_image(delta, states, letter):
    """Image of a state set under one letter, from the raw table; None when
    the letter is undefined somewhere on the set."""
    row = delta[letter - 1]
    out = set()
    for q in states:
        t = row[q - 1]
        if t is None:
            return None
        out.add(t)
    return out


def word_synchronizes(n: int, delta, word) -> bool:
    cur = set(range(1, n + 1))
    for a in word:
        cur = set_image(delta, cur, a)
        if cur is None:
            return False
    return len(cur) == 1


def shortest_sync_word(n: int, delta, m: int, max_len: int):
    """Shortest carefully synchronizing word by breadth-first search over
    state subsets, or None if there is none of length <= max_len.

    Letters are tried in ascending order and the frontier keeps insertion
    order, so the first hit is the lexicographically least shortest word.
    """
    start = frozenset(range(1, n + 1))
    if len(start) == 1:
        return ()
    seen = {start}
    frontier = [(start, ())]
    for _ in range(max_len):
        nxt = []
        for states, word in frontier:
            for a in range(1, m + 1):
                img = set_image(delta, states, a)
                if img is None:
                    continue
                img = frozenset(img)
                if img in seen:
                    continue
                grown = word + (a,)
                if len(img) == 1:
                    return grown
                seen.add(img)
                nxt.append((img, grown))
        frontier = nxt
    return None


@st.composite
def pfas(draw, max_n: int = 6, max_m: int = 4, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(1, max_m))
    entry = st.one_of(st.none(), st.integers(1, n))
    delta = tuple(tuple(draw(entry) for _ in range(n)) for _ in range(m))
    return Pfa(n=n, m=m, delta=delta)


@st.composite
def pfas_with_subset(draw, max_n: int = 6, max_m: int = 4):
    pfa = draw(pfas(max_n=max_n, max_m=max_m))
    subset = draw(
        st.frozensets(st.integers(1, pfa.n), min_size=1, max_size=pfa.n)
    )
    return pfa, subset
