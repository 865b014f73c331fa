"""Walks on {1..n}, edge multisets, reductions, and the exhaustive verifier.

A walk V: v0, ..., vl visits vertices from {1..n}; its length l is the
number of steps.  U is a reduction of V when both endpoints match and U uses
no directed edge more often than V does.  Labeling the n^2 edges with
pairwise-distinct primes turns the edge multiset of a walk into an integer
(the product of its edge primes), and reduction into divisibility of codes;
the two tests are equivalent by unique factorization.

``verify_all`` exhaustively checks that every walk of one length admits a
reduction of a shorter length.  The instance (n=3, long=11, short=5) always
comes out empty, which is exactly what forces A^11 <= A^5 for every 3x3
matrix over a commutative incline.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from itertools import product

from incline import _scan_py
from incline.errors import StructureError

try:
    from incline import _scan  # compiled extension
except ImportError:  # pragma: no cover - depends on build environment
    _scan = None

MODES = _scan_py.MODES

#: Force the pure-Python scanner even when the extension is available.
_FORCE_PURE_ENV = "INCLINE_PURE_PYTHON"


def compiled_available() -> bool:
    return _scan is not None


@dataclass(frozen=True)
class Walk:
    """A walk: 1-based vertex terms v0, ..., vl on the vertex set {1..n}."""

    n: int
    terms: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex-set size must be a positive integer, got {self.n!r}")
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("a walk needs at least one term")
        for v in terms:
            if not isinstance(v, int) or not 1 <= v <= self.n:
                raise ValueError(f"walk term {v!r} outside 1..{self.n}")

    @property
    def length(self) -> int:
        """Number of edges (one less than the number of terms)."""
        return len(self.terms) - 1

    @property
    def start(self) -> int:
        return self.terms[0]

    @property
    def end(self) -> int:
        return self.terms[-1]

    def __str__(self):
        return " ".join(str(v) for v in self.terms)

    @classmethod
    def from_string(cls, text: str, n: int | None = None) -> "Walk":
        terms = tuple(int(tok) for tok in text.split())
        if n is None:
            n = max(terms, default=0)
        return cls(n, terms)


def edge_counts(walk: Walk) -> tuple[tuple[int, ...], ...]:
    """The n x n matrix of directed-edge multiplicities along the walk.

    Entry [p-1][q-1] counts the steps from p to q; a one-term walk gives all
    zeros.  The entries always sum to the walk's length.
    """
    n = walk.n
    counts = [[0] * n for _ in range(n)]
    for p, q in zip(walk.terms, walk.terms[1:]):
        counts[p - 1][q - 1] += 1
    return tuple(tuple(row) for row in counts)


def is_reduction(shorter: Walk, longer: Walk) -> bool:
    """True iff ``shorter`` is a reduction of ``longer``.

    Endpoints must coincide and every directed edge count of ``shorter`` must
    be <= the corresponding count of ``longer``.  No relation between the
    lengths is required by the definition; count domination already forces
    the reduction to be no longer than the original.
    """
    if shorter.n != longer.n:
        raise StructureError(f"vertex-set mismatch: {shorter.n} vs {longer.n}")
    if shorter.start != longer.start or shorter.end != longer.end:
        return False
    cu = edge_counts(shorter)
    cv = edge_counts(longer)
    return all(
        u <= v for ru, rv in zip(cu, cv) for u, v in zip(ru, rv)
    )


# ---------------------------------------------------------------------------
# Prime labelings and walk codes


def _first_primes(k: int) -> list[int]:
    primes: list[int] = []
    cand = 2
    while len(primes) < k:
        if all(cand % p for p in primes if p * p <= cand):
            primes.append(cand)
        cand += 1
    return primes


def _is_prime(m: int) -> bool:
    if not isinstance(m, int) or m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeLabeling:
    """An n x n matrix of pairwise-distinct primes labeling directed edges.

    ``primes[p-1][q-1]`` is the prime attached to the edge p -> q.  Any such
    labeling makes walk codes multiplicative fingerprints of edge multisets.
    """

    primes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.primes)
        object.__setattr__(self, "primes", rows)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ValueError("prime labeling must be a square matrix")
        flat = [p for row in rows for p in row]
        if len(set(flat)) != len(flat):
            raise ValueError("prime labeling entries must be pairwise distinct")
        for p in flat:
            if not _is_prime(p):
                raise ValueError(f"prime labeling entry {p!r} is not prime")

    @property
    def n(self) -> int:
        return len(self.primes)

    def flat(self) -> tuple[int, ...]:
        return tuple(p for row in self.primes for p in row)

    @classmethod
    def default(cls, n: int) -> "PrimeLabeling":
        """The first n^2 primes in row-major order.

        For n = 3 this is ((2,3,5),(7,11,13),(17,19,23)), the labeling used
        throughout this package's reference runs.
        """
        flat = _first_primes(n * n)
        return cls(tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n)))


def walk_code(walk: Walk, labeling: PrimeLabeling) -> int:
    """Product of edge primes along the walk; 1 for a zero-length walk.

    Python integers are unbounded, so codes never overflow for any n or
    length.
    """
    if walk.n != labeling.n:
        raise StructureError(f"vertex-set mismatch: {walk.n} vs {labeling.n}")
    code = 1
    for p, q in zip(walk.terms, walk.terms[1:]):
        code *= labeling.primes[p - 1][q - 1]
    return code


def divisibility_reduction(shorter: Walk, longer: Walk, labeling: PrimeLabeling) -> bool:
    """Reduction test via prime codes: does shorter's code divide longer's?

    Assumes matching endpoints and lengths >= 1 (the regime in which code
    divisibility coincides with the multiset test); violations raise.
    """
    if shorter.n != longer.n:
        raise StructureError(f"vertex-set mismatch: {shorter.n} vs {longer.n}")
    if shorter.start != longer.start or shorter.end != longer.end:
        raise ValueError(
            f"endpoint mismatch: {shorter.start}->{shorter.end} vs "
            f"{longer.start}->{longer.end}"
        )
    if shorter.length < 1 or longer.length < 1:
        raise ValueError("divisibility test needs walks of length >= 1")
    return walk_code(longer, labeling) % walk_code(shorter, labeling) == 0


def find_reduction(walk: Walk, short_length: int) -> Walk | None:
    """First reduction of the given length, searching interior vertices
    in lexicographic order; None when no reduction of that length exists.

    The witness is deterministic: all n^(short_length - 1) interior
    assignments between the fixed endpoints are tried in lexicographic
    order and the first hit is returned.
    """
    if walk.length < 1:
        raise ValueError("walk must have length >= 1")
    if not isinstance(short_length, int) or short_length < 1:
        raise ValueError(f"short length must be a positive integer, got {short_length!r}")
    n = walk.n
    for interior in product(range(1, n + 1), repeat=short_length - 1):
        candidate = Walk(n, (walk.start,) + interior + (walk.end,))
        if is_reduction(candidate, walk):
            return candidate
    return None


def lcm_upto(n: int) -> int:
    """Least common multiple of 1..n."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"need a positive integer, got {n!r}")
    return math.lcm(*range(1, n + 1))


# ---------------------------------------------------------------------------
# Exhaustive verification


@dataclass(frozen=True)
class VerificationReport:
    """Result of an exhaustive reduction search over all long walks.

    ``failures`` lists, in lexicographic order, every walk of the long
    length with no reduction of the short length; an empty tuple proves the
    reduction property for these parameters.  ``elapsed`` is wall time in
    seconds and is deliberately left out of ``to_obj`` so that reports are
    byte-for-byte reproducible.
    """

    n: int
    long_length: int
    short_length: int
    mode: str
    backend: str
    walks_examined: int
    failures: tuple[Walk, ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "long": self.long_length,
            "short": self.short_length,
            "mode": self.mode,
            "examined": self.walks_examined,
            "count": len(self.failures),
            "failures": [str(w) for w in self.failures],
        }


def codes_fit_uint64(labeling: PrimeLabeling, long_length: int) -> bool:
    """Whether every possible walk code stays below 2**63 for this run."""
    return max(labeling.flat()) ** long_length < 2**63


def _pick_backend(backend: str, mode: str, labeling: PrimeLabeling, long_length: int) -> str:
    if backend not in ("auto", "compiled", "pure"):
        raise ValueError(f"backend must be auto, compiled or pure, got {backend!r}")
    if backend == "compiled":
        if _scan is None:
            raise RuntimeError("compiled scanner is not available in this install")
        if mode != "multiset" and not codes_fit_uint64(labeling, long_length):
            raise ValueError(
                "prime codes for this run exceed 64 bits; use the pure backend"
            )
        return "compiled"
    if backend == "pure":
        return "pure"
    if (
        _scan is not None
        and not os.environ.get(_FORCE_PURE_ENV)
        and (mode == "multiset" or codes_fit_uint64(labeling, long_length))
    ):
        return "compiled"
    return "pure"


def verify_all(
    n: int,
    long_length: int,
    short_length: int,
    labeling: PrimeLabeling | None = None,
    mode: str = "multiset",
    backend: str = "auto",
) -> VerificationReport:
    """Check that every walk of ``long_length`` on {1..n} has a reduction of
    ``short_length``, over all n^(long_length+1) choices of terms.

    ``mode`` selects the reduction test: "multiset" compares edge counts,
    "prime-code" tests divisibility of walk codes, and "both" runs the two
    side by side, raising OracleDisagreementError if they ever differ.  The
    failure list does not depend on the labeling, only on (n, lengths).
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    if not isinstance(long_length, int) or long_length < 1:
        raise ValueError(f"long length must be >= 1, got {long_length!r}")
    if not isinstance(short_length, int) or short_length < 1:
        raise ValueError(f"short length must be >= 1, got {short_length!r}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if labeling is None:
        labeling = PrimeLabeling.default(n)
    elif labeling.n != n:
        raise StructureError(f"labeling is {labeling.n}x{labeling.n}, expected {n}x{n}")

    chosen = _pick_backend(backend, mode, labeling, long_length)
    scanner = _scan if chosen == "compiled" else _scan_py
    started = time.perf_counter()
    examined, failing = scanner.scan(n, long_length, short_length, labeling.flat(), mode)
    elapsed = time.perf_counter() - started
    if examined != n ** (long_length + 1):
        raise AssertionError(
            f"scanner examined {examined} walks, expected {n ** (long_length + 1)}"
        )
    return VerificationReport(
        n=n,
        long_length=long_length,
        short_length=short_length,
        mode=mode,
        backend=chosen,
        walks_examined=examined,
        failures=tuple(Walk(n, t) for t in failing),
        elapsed=elapsed,
    )
