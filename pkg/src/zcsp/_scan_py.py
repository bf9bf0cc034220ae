"""Pure-Python assignment scan: reference twin of the compiled kernel.

Enumerates total assignments in lexicographic order, restricted to those that
can still meet the size target (or the per-value count targets), checking each
constraint as soon as its last scope variable is assigned.  Returns the first
satisfying assignment together with the number of search nodes visited.
"""

from __future__ import annotations

BACKEND = "python"


def scan_first(prog, k, counts):
    """First satisfying assignment meeting the targets, in lex order.

    prog: a ScanProgram (see kernel.prepare_program).
    k: exact number of nonzero entries required.
    counts: None (size mode) or a list indexed by value, counts[d] = exact
        occurrences required for each nonzero d (sum equals k).

    Returns (assignment tuple or None, nodes visited).
    """
    n = prog.n
    delta = prog.delta
    nodes = 0
    if n == 0:
        ok = k == 0 and prog.start[0] == prog.start[-1]
        return ((), nodes) if ok else (None, nodes)

    scope_flat = prog.scope_flat
    scope_off = prog.scope_off
    strides_flat = prog.strides_flat
    table_blob = prog.table_blob
    table_off = prog.table_off
    start = prog.start

    rem = list(counts) if counts is not None else None
    need = k
    assignment = [0] * n
    choice = [-1] * n
    p = 0

    while True:
        v = choice[p]
        if v >= 1:
            need += 1
            if rem is not None:
                rem[v] += 1
        v += 1
        placed = False
        while v <= delta:
            nodes += 1
            if v == 0:
                ok = need <= n - p - 1
            elif rem is not None:
                ok = rem[v] > 0 and need - 1 <= n - p - 1
            else:
                ok = need > 0 and need - 1 <= n - p - 1
            if ok:
                assignment[p] = v
                good = True
                for ci in range(start[p], start[p + 1]):
                    lo = scope_off[ci]
                    hi = scope_off[ci + 1]
                    idx = 0
                    for j in range(lo, hi):
                        idx += assignment[scope_flat[j]] * strides_flat[j]
                    if not table_blob[table_off[ci] + idx]:
                        good = False
                        break
                if good:
                    placed = True
                    break
            v += 1
        if not placed:
            choice[p] = -1
            assignment[p] = 0
            p -= 1
            if p < 0:
                return None, nodes
            continue
        choice[p] = v
        if v >= 1:
            need -= 1
            if rem is not None:
                rem[v] -= 1
        if p == n - 1:
            # count feasibility guarantees need == 0 here
            return tuple(assignment), nodes
        p += 1
        choice[p] = -1
