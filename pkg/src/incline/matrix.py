"""Square matrices over a commutative incline.

Product entries are joins of entrywise products, the order is elementwise,
and powers follow A^1 = A, A^l = A^(l-1) A (computed by repeated squaring,
which associativity makes equivalent).  Everything is immutable and exact.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass

from incline.core import Incline, element_display, incline_from_obj, load_incline
from incline.errors import FormatError, StructureError


class Matrix:
    """An n x n matrix (n >= 2) with entries in a fixed incline."""

    __slots__ = ("incline", "n", "rows")

    def __init__(self, incline: Incline, rows):
        entries = tuple(tuple(incline.coerce(v) for v in row) for row in rows)
        n = len(entries)
        if n < 2:
            raise StructureError(f"matrix dimension must be >= 2, got {n}")
        if any(len(row) != n for row in entries):
            raise StructureError("matrix rows must all have length n")
        object.__setattr__(self, "incline", incline)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def filled(cls, incline: Incline, n: int, value) -> "Matrix":
        return cls(incline, [[value] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.incline == other.incline
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.incline, self.rows))

    def __repr__(self):
        body = "; ".join(
            " ".join(element_display(v) for v in row) for row in self.rows
        )
        return f"Matrix({self.incline.name}, [{body}])"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def pow(self, exponent: int) -> "Matrix":
        return mat_pow(self, exponent)

    def leq(self, other: "Matrix") -> bool:
        return mat_leq(self, other)

    def to_obj(self) -> dict:
        return {
            "incline": self.incline.to_obj(),
            "n": self.n,
            "entries": [
                [self.incline.element_to_obj(v) for v in row] for row in self.rows
            ],
        }

    def entries_obj(self) -> list:
        return self.to_obj()["entries"]


def _check_compatible(a: Matrix, b: Matrix):
    if a.incline != b.incline:
        raise StructureError(
            f"incline mismatch: {a.incline.name} vs {b.incline.name}"
        )
    if a.n != b.n:
        raise StructureError(f"dimension mismatch: {a.n} vs {b.n}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product: entry (i,j) is the join over k of a[i,k] * b[k,j]."""
    _check_compatible(a, b)
    inc = a.incline
    add, mul = inc.add, inc.mul
    n = a.n
    rows = []
    for i in range(n):
        arow = a.rows[i]
        out = []
        for j in range(n):
            acc = mul(arow[0], b.rows[0][j])
            for k in range(1, n):
                acc = add(acc, mul(arow[k], b.rows[k][j]))
            out.append(acc)
        rows.append(tuple(out))
    return Matrix(inc, rows)


def mat_pow(a: Matrix, exponent: int) -> Matrix:
    """A^exponent for exponent >= 1, by repeated squaring."""
    if not isinstance(exponent, int) or exponent < 1:
        raise ValueError(f"exponent must be a positive integer, got {exponent!r}")
    result = None
    base = a
    e = exponent
    while True:
        if e & 1:
            result = base if result is None else mat_mul(result, base)
        e >>= 1
        if not e:
            return result
        base = mat_mul(base, base)


def mat_leq(a: Matrix, b: Matrix) -> bool:
    """Elementwise induced order: a <= b iff every entry of a is <= b's."""
    _check_compatible(a, b)
    leq = a.incline.leq
    return all(
        leq(x, y) for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb)
    )


def check_power_inequality(a: Matrix, k: int, d: int) -> bool:
    """True iff A^(k+d) <= A^k, for positive integers k and d."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    return mat_leq(mat_pow(a, k + d), mat_pow(a, k))


@dataclass(frozen=True)
class OrderReport:
    """Within-horizon bounds on the order-index and order-period.

    The order-index of A is the least k with A^(k+d) <= A^k for some d >= 1;
    the order-period is the least such d for some k >= 1.  The two minima are
    quantified independently, so they may come from different witness pairs.
    Only pairs with k + d <= horizon are examined: the bounds reported here
    are upper bounds valid within that horizon, and "not found" (None) means
    no witness exists up to the horizon, not that none exists at all.
    """

    horizon: int
    index_bound: int | None
    period_bound: int | None
    witnesses: tuple[tuple[int, int], ...]

    def to_obj(self) -> dict:
        return {
            "horizon": self.horizon,
            "index_bound": self.index_bound,
            "period_bound": self.period_bound,
            "witnesses": [list(w) for w in self.witnesses],
            "scope": "upper bounds within horizon",
        }

    def __str__(self):
        idx = "not found" if self.index_bound is None else str(self.index_bound)
        per = "not found" if self.period_bound is None else str(self.period_bound)
        return (
            f"within horizon {self.horizon}: index bound = {idx}, "
            f"period bound = {per} ({len(self.witnesses)} witness pairs)"
        )


def order_index_period(a: Matrix, horizon: int | None = None) -> OrderReport:
    """Search all (k, d) with k, d >= 1 and k + d <= horizon for A^(k+d) <= A^k.

    The horizon defaults to 11 when n = 3, which is always enough to find
    witnesses over a commutative incline; for other n it must be supplied.
    Powers up to the horizon are computed once and reused.
    """
    if horizon is None:
        if a.n == 3:
            horizon = 11
        else:
            raise ValueError(f"horizon must be given explicitly for n = {a.n}")
    if not isinstance(horizon, int) or horizon < 2:
        raise ValueError(f"horizon must be an integer >= 2, got {horizon!r}")
    powers = [None, a]
    for _ in range(2, horizon + 1):
        powers.append(mat_mul(powers[-1], a))
    witnesses = []
    for k in range(1, horizon):
        for d in range(1, horizon - k + 1):
            if mat_leq(powers[k + d], powers[k]):
                witnesses.append((k, d))
    index_bound = min((k for k, _ in witnesses), default=None)
    period_bound = min((d for _, d in witnesses), default=None)
    return OrderReport(
        horizon=horizon,
        index_bound=index_bound,
        period_bound=period_bound,
        witnesses=tuple(witnesses),
    )


def random_matrix(incline: Incline, n: int, rng: random.Random) -> Matrix:
    """Draw an n x n matrix entrywise from the incline's element sampler."""
    return Matrix(incline, [[incline.sample(rng) for _ in range(n)] for _ in range(n)])


def walk_product(a: Matrix, terms) -> object:
    """Product of matrix entries along a walk given as 1-based vertices.

    For terms v0, v1, ..., vl this is a[v0,v1] * a[v1,v2] * ... evaluated in
    the incline; at least one edge is required.
    """
    terms = list(terms)
    if len(terms) < 2:
        raise ValueError("walk must have at least one edge")
    if any(not 1 <= v <= a.n for v in terms):
        raise ValueError(f"walk vertices must lie in 1..{a.n}")
    inc = a.incline
    acc = a.rows[terms[0] - 1][terms[1] - 1]
    for p, q in zip(terms[1:], terms[2:]):
        acc = inc.mul(acc, a.rows[p - 1][q - 1])
    return acc


def matrix_from_obj(obj, incline: Incline | None = None, base_dir: str | None = None) -> Matrix:
    """Build a matrix from its JSON object form.

    The "incline" member may be an inline spec object or a path to one
    (resolved against ``base_dir``); an explicit ``incline`` argument
    overrides both.
    """
    if not isinstance(obj, dict) or "entries" not in obj:
        raise FormatError(f"matrix document must be an object with 'entries': {obj!r}")
    if incline is None:
        spec = obj.get("incline")
        if spec is None:
            raise FormatError("matrix document has no 'incline' member")
        if isinstance(spec, str):
            path = spec if base_dir is None else os.path.join(base_dir, spec)
            incline = load_incline(path)
        else:
            incline = incline_from_obj(spec)
    entries = obj["entries"]
    rows = [[incline.element_from_obj(v) for v in row] for row in entries]
    matrix = Matrix(incline, rows)
    declared = obj.get("n")
    if declared is not None and declared != matrix.n:
        raise FormatError(f"declared n = {declared} but entries are {matrix.n}x{matrix.n}")
    return matrix


def load_matrix(path) -> Matrix:
    """Read a matrix (and its incline) from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return matrix_from_obj(obj, base_dir=os.path.dirname(os.path.abspath(path)))
