# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled walk-reduction scanner.

Same contract as ``incline._scan_py.scan``: enumerate every walk of the long
length over all start vertices, search the lexicographically ordered
candidate short walks for a reduction, collect the walks that have none.
This version runs the search directly in C with no memoization; prime codes
use unsigned 64-bit arithmetic, so the caller must ensure
max(primes) ** long_length < 2**63 before selecting a code-checking mode.
"""

from libc.stdlib cimport free, malloc

from incline.errors import OracleDisagreementError

MODES = ("multiset", "prime-code", "both")

cdef int MODE_MULTISET = 0
cdef int MODE_CODE = 1
cdef int MODE_BOTH = 2


cdef class _Scanner:
    cdef int n, length, short_len, cells, mode, ncand
    cdef int *cand_counts           # [pair][cand][cell]
    cdef unsigned long long *cand_codes   # [pair][cand]
    cdef unsigned long long *primes
    cdef int *counts
    cdef int *terms
    cdef unsigned long long code
    cdef long long examined
    cdef list failures

    def __cinit__(self, int n, int length, int short_len, primes_flat, int mode):
        cdef int pair, idx, j, digit, prev, cur, base
        cdef size_t total
        self.n = n
        self.length = length
        self.short_len = short_len
        self.cells = n * n
        self.mode = mode
        self.examined = 0
        self.code = 1
        self.failures = []
        self.cand_counts = NULL
        self.cand_codes = NULL
        self.primes = NULL
        self.counts = NULL
        self.terms = NULL

        ncand_py = n ** (short_len - 1)
        if ncand_py * self.cells * self.cells > 200_000_000:
            raise ValueError(
                "short length too large for the compiled scanner's candidate table"
            )
        self.ncand = ncand_py

        self.primes = <unsigned long long *> malloc(self.cells * sizeof(unsigned long long))
        self.counts = <int *> malloc(self.cells * sizeof(int))
        self.terms = <int *> malloc((length + 1) * sizeof(int))
        total = <size_t> self.cells * self.ncand
        self.cand_counts = <int *> malloc(total * self.cells * sizeof(int))
        self.cand_codes = <unsigned long long *> malloc(total * sizeof(unsigned long long))
        if (self.primes == NULL or self.counts == NULL or self.terms == NULL
                or self.cand_counts == NULL or self.cand_codes == NULL):
            raise MemoryError()

        for j in range(self.cells):
            self.primes[j] = primes_flat[j]
            self.counts[j] = 0

        # Candidate short walks per endpoint pair, interiors in lex order.
        for pair in range(self.cells):
            for idx in range(self.ncand):
                base = (pair * self.ncand + idx) * self.cells
                for j in range(self.cells):
                    self.cand_counts[base + j] = 0
                prev = pair // n      # start vertex
                rem = idx
                for j in range(short_len - 1):
                    digit = rem // n ** (short_len - 2 - j) % n
                    self.cand_counts[base + prev * n + digit] += 1
                    prev = digit
                self.cand_counts[base + prev * n + pair % n] += 1
                code = 1
                if mode != MODE_MULTISET:
                    for j in range(self.cells):
                        for digit in range(self.cand_counts[base + j]):
                            code *= self.primes[j]
                self.cand_codes[pair * self.ncand + idx] = code

    def __dealloc__(self):
        free(self.cand_counts)
        free(self.cand_codes)
        free(self.primes)
        free(self.counts)
        free(self.terms)

    cdef int leaf(self, int start, int end) except -1:
        cdef int pair = start * self.n + end
        cdef int idx, j, base
        cdef bint ok = False
        cdef bint ok_code
        cdef int *cand
        for idx in range(self.ncand):
            base = (pair * self.ncand + idx) * self.cells
            cand = self.cand_counts + base
            if self.mode != MODE_CODE:
                ok = True
                for j in range(self.cells):
                    if cand[j] > self.counts[j]:
                        ok = False
                        break
            if self.mode != MODE_MULTISET:
                ok_code = self.code % self.cand_codes[pair * self.ncand + idx] == 0
                if self.mode == MODE_BOTH and ok_code != ok:
                    raise OracleDisagreementError(
                        "multiset and prime-code checks disagree on walk "
                        f"{[self.terms[j] + 1 for j in range(self.length + 1)]}, "
                        f"candidate #{idx} from {start + 1} to {end + 1}"
                    )
                if self.mode == MODE_CODE:
                    ok = ok_code
            if ok:
                return 1
        return 0

    cdef int descend(self, int pos, int vertex, int start) except -1:
        cdef int nxt, edge
        if pos == self.length:
            self.examined += 1
            if not self.leaf(start, vertex):
                self.failures.append(
                    tuple(self.terms[j] + 1 for j in range(self.length + 1))
                )
            return 0
        cdef bint track_code = self.mode != MODE_MULTISET
        for nxt in range(self.n):
            edge = vertex * self.n + nxt
            self.counts[edge] += 1
            if track_code:
                self.code *= self.primes[edge]
            self.terms[pos + 1] = nxt
            self.descend(pos + 1, nxt, start)
            if track_code:
                self.code //= self.primes[edge]
            self.counts[edge] -= 1
        return 0

    def run(self):
        cdef int s
        for s in range(self.n):
            self.terms[0] = s
            self.descend(0, s, s)
        return self.examined, self.failures


def scan(int n, int length, int short_len, primes_flat, str mode):
    """Scan all n^(length+1) walks; return (examined, failing walk term tuples)."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    cdef int mode_id = MODES.index(mode)
    scanner = _Scanner(n, length, short_len, primes_flat, mode_id)
    return scanner.run()
