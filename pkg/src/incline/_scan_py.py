"""Pure-Python walk-reduction scanner.

Fallback for the compiled extension in ``incline._scan``; same contract.
Enumerates every walk of the long length over all start vertices and checks
for a reduction of the short length, either by edge-multiset comparison, by
prime-code divisibility, or by both at once (verifying they agree pair by
pair).

Whether a short walk reduces a long one depends only on the long walk's
endpoints and edge counts, so results are memoized on that key; for n = 3
and length 11 this collapses ~5*10^5 walks onto ~10^4 distinct keys.  Codes
are Python ints, so this path has no overflow limit.
"""

from __future__ import annotations

import sys
from itertools import product
from math import prod

from incline.errors import OracleDisagreementError

MODES = ("multiset", "prime-code", "both")


def candidate_table(n: int, h: int, primes_flat):
    """Candidate short walks grouped by endpoint pair, in lexicographic order.

    Returns {(s, e): (count_vectors, codes)} over 0-based vertices; the
    ordering matches enumerating the h-1 interior vertices as lexicographic
    tuples, which is the order every search in this package uses.
    """
    table = {}
    for s in range(n):
        for e in range(n):
            counts_list = []
            codes = []
            for interior in product(range(n), repeat=h - 1):
                walk = (s,) + interior + (e,)
                c = [0] * (n * n)
                for p, q in zip(walk, walk[1:]):
                    c[p * n + q] += 1
                counts_list.append(tuple(c))
                codes.append(prod(primes_flat[i] ** ci for i, ci in enumerate(c)))
            table[(s, e)] = (counts_list, codes)
    return table


def _dominates(big, small, cells) -> bool:
    for i in range(cells):
        if small[i] > big[i]:
            return False
    return True


def scan(n: int, length: int, short: int, primes_flat, mode: str):
    """Scan all n^(length+1) walks; return (examined, failing walk term tuples).

    Failures use 1-based vertices and come out in lexicographic walk order.
    In "both" mode every candidate comparison is run through both mechanisms
    and any disagreement raises OracleDisagreementError.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    use_counts = mode in ("multiset", "both")
    use_codes = mode in ("prime-code", "both")
    cands = candidate_table(n, short, primes_flat)
    cells = n * n

    counts = [0] * cells
    terms = []
    failures = []
    memo: dict[tuple, bool] = {}
    examined = 0

    sys.setrecursionlimit(max(sys.getrecursionlimit(), length + 100))

    def has_reduction(start, end, ckey):
        counts_list, codes = cands[(start, end)]
        if use_codes:
            code = prod(primes_flat[i] ** ci for i, ci in enumerate(ckey) if ci)
        ok = False
        for idx in range(len(counts_list)):
            if use_counts:
                ok = _dominates(ckey, counts_list[idx], cells)
            if use_codes:
                ok_code = code % codes[idx] == 0
                if mode == "both" and ok_code != ok:
                    raise OracleDisagreementError(
                        f"walk {[t + 1 for t in terms]}: multiset and prime-code "
                        f"checks disagree on candidate #{idx} from "
                        f"{start + 1} to {end + 1}"
                    )
                if mode == "prime-code":
                    ok = ok_code
            if ok:
                return True
        return False

    def descend(pos, vertex, start):
        nonlocal examined
        if pos == length:
            examined += 1
            ckey = tuple(counts)
            key = (start, vertex, ckey)
            found = memo.get(key)
            if found is None:
                found = has_reduction(start, vertex, ckey)
                memo[key] = found
            if not found:
                failures.append(tuple(t + 1 for t in terms))
            return
        base = vertex * n
        for nxt in range(n):
            counts[base + nxt] += 1
            terms.append(nxt)
            descend(pos + 1, nxt, start)
            terms.pop()
            counts[base + nxt] -= 1

    for s in range(n):
        terms.append(s)
        descend(0, s, s)
        terms.pop()
    return examined, failures
