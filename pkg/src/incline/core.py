"""Commutative inclines and their exact element arithmetic.

An incline is a semiring (L, +, *) where + is a semilattice join, * is
associative and distributes over +, and x + x*y = x + y*x = x for all x, y.
The join induces a partial order x <= y  <=>  x + y = y, under which every
product sits below each of its factors.  All carriers here are represented
exactly: Boolean bits, `fractions.Fraction` values, or finite-table indices.
No floating point is used anywhere, so <= is always decided exactly.

Builtin families:

* ``boolean``            -- ({0,1}, or, and)
* ``fuzzy`` (t-norm)     -- ([0,1] rationals, max, T) with T one of
                            min / product / lukasiewicz
* ``tropical``           -- (nonnegative rationals + infinity, min, +)
* ``table``              -- any finite commutative incline given by its
                            operation tables (validated exhaustively)
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from incline.errors import (
    DomainError,
    FormatError,
    InvalidInclineError,
    NoncommutativeError,
)


class _Infinity:
    """The tropical infinity: join-absorbing, hence the order's bottom."""

    __slots__ = ()

    def __repr__(self):
        return "inf"


#: Tropical infinity singleton.  min(INF, x) = x, INF + x = INF.
INF = _Infinity()


def element_display(value) -> str:
    """Render an element payload for messages and JSON ('1/2', 'inf', '0')."""
    if value is INF:
        return "inf"
    return str(value)


# ---------------------------------------------------------------------------
# Incline families


class Incline:
    """A commutative incline: exact add/mul plus the induced order."""

    kind = "abstract"

    def _key(self):
        return (self.kind,)

    def __eq__(self, other):
        return type(other) is type(self) and other._key() == self._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return self.name

    @property
    def name(self) -> str:
        return self.kind

    # -- carrier -----------------------------------------------------------

    def coerce(self, value):
        """Normalize ``value`` into the carrier or raise DomainError."""
        raise NotImplementedError

    def check(self, value):
        """Return ``value`` if it is already a canonical carrier member."""
        raise NotImplementedError

    def sample(self, rng: random.Random):
        """Draw one carrier element from a deterministic generator."""
        raise NotImplementedError

    # -- operations ----------------------------------------------------------

    def add(self, a, b):
        """Join of a and b (idempotent, commutative, associative)."""
        raise NotImplementedError

    def mul(self, a, b):
        """Product of a and b; always <= both factors in the induced order."""
        raise NotImplementedError

    def leq(self, a, b) -> bool:
        """Induced partial order: a <= b iff a + b = b."""
        return self.add(a, b) == b

    # -- serialization -------------------------------------------------------

    def to_obj(self) -> dict:
        raise NotImplementedError

    def element_to_obj(self, value):
        raise NotImplementedError

    def element_from_obj(self, obj):
        raise NotImplementedError


class BooleanIncline(Incline):
    """({0, 1}, or, and)."""

    kind = "boolean"

    def coerce(self, value):
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int) and value in (0, 1):
            return value
        raise DomainError(f"not a Boolean bit: {value!r}")

    def check(self, value):
        if isinstance(value, int) and value in (0, 1):
            return value
        raise DomainError(f"not a Boolean bit: {value!r}")

    def sample(self, rng):
        return rng.randrange(2)

    def add(self, a, b):
        return self.check(a) | self.check(b)

    def mul(self, a, b):
        return self.check(a) & self.check(b)

    def to_obj(self):
        return {"kind": "boolean"}

    def element_to_obj(self, value):
        return self.check(value)

    def element_from_obj(self, obj):
        if obj in (0, 1, True, False):
            return int(obj)
        raise FormatError(f"bad boolean element: {obj!r}")


def _tnorm_min(a: Fraction, b: Fraction) -> Fraction:
    return a if a <= b else b


def _tnorm_product(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def _tnorm_lukasiewicz(a: Fraction, b: Fraction) -> Fraction:
    c = a + b - 1
    return c if c > 0 else Fraction(0)


#: T-norms available for the fuzzy family.  Each must be commutative,
#: associative, monotone and have unit 1; registering a new one here is the
#: supported way to extend the menu.
TNORMS = {
    "min": _tnorm_min,
    "product": _tnorm_product,
    "lukasiewicz": _tnorm_lukasiewicz,
}


class FuzzyIncline(Incline):
    """([0,1] rationals, max, T) for a t-norm T."""

    kind = "fuzzy"

    def __init__(self, tnorm: str = "min"):
        if tnorm not in TNORMS:
            raise FormatError(
                f"unknown t-norm {tnorm!r}; choose one of {sorted(TNORMS)}"
            )
        self.tnorm = tnorm
        self._t = TNORMS[tnorm]

    def _key(self):
        return ("fuzzy", self.tnorm)

    @property
    def name(self):
        return f"fuzzy-{self.tnorm}"

    def coerce(self, value):
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if 0 <= value <= 1:
                return value
            raise DomainError(f"fuzzy element outside [0,1]: {value}")
        raise DomainError(
            f"fuzzy elements must be exact rationals, got {value!r}"
        )

    def check(self, value):
        if isinstance(value, Fraction) and 0 <= value <= 1:
            return value
        raise DomainError(f"not a fuzzy element: {value!r}")

    def sample(self, rng):
        # Bounded denominators keep products exact and small.
        den = rng.randrange(1, 13)
        return Fraction(rng.randrange(den + 1), den)

    def add(self, a, b):
        a, b = self.check(a), self.check(b)
        return a if a >= b else b

    def mul(self, a, b):
        return self._t(self.check(a), self.check(b))

    def to_obj(self):
        return {"kind": "fuzzy", "tnorm": self.tnorm}

    def element_to_obj(self, value):
        return str(self.check(value))

    def element_from_obj(self, obj):
        return self.coerce(_parse_rational(obj))


class TropicalIncline(Incline):
    """(nonnegative rationals with infinity, min, +).

    The join is numeric min, so the induced order is the reverse of the
    numeric one: infinity is the least element and 0 the greatest.
    """

    kind = "tropical"

    def coerce(self, value):
        if value is INF:
            return INF
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value >= 0:
                return value
            raise DomainError(f"tropical element must be >= 0: {value}")
        raise DomainError(
            f"tropical elements must be exact rationals or INF, got {value!r}"
        )

    def check(self, value):
        if value is INF or (isinstance(value, Fraction) and value >= 0):
            return value
        raise DomainError(f"not a tropical element: {value!r}")

    def sample(self, rng):
        if rng.randrange(8) == 0:
            return INF
        num = rng.randrange(25)
        den = rng.randrange(1, 9)
        return Fraction(num, den)

    def add(self, a, b):
        a, b = self.check(a), self.check(b)
        if a is INF:
            return b
        if b is INF:
            return a
        return a if a <= b else b

    def mul(self, a, b):
        a, b = self.check(a), self.check(b)
        if a is INF or b is INF:
            return INF
        return a + b

    def to_obj(self):
        return {"kind": "tropical"}

    def element_to_obj(self, value):
        value = self.check(value)
        return "inf" if value is INF else str(value)

    def element_from_obj(self, obj):
        if obj == "inf":
            return INF
        return self.coerce(_parse_rational(obj))


class TableIncline(Incline):
    """A finite commutative incline given by its operation tables.

    Elements are indices into ``labels``; ``add_table[i][j]`` and
    ``mul_table[i][j]`` give the indices of i+j and i*j.  Construction
    checks the tables exhaustively against every defining law and refuses
    anything that is not a commutative incline, so downstream code can rely
    on any live TableIncline being valid.
    """

    kind = "table"

    def __init__(self, labels, add_table, mul_table):
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise FormatError("table element labels must be distinct")
        m = len(self.labels)
        if m == 0:
            raise FormatError("table incline needs at least one element")
        self.add_table = _check_table(add_table, m, "add")
        self.mul_table = _check_table(mul_table, m, "mul")
        report = validate_table(self.add_table, self.mul_table, self.labels)
        if not report.valid:
            noncomm = [v for v in report.violations if v.law == "mul-commutative"]
            if noncomm:
                raise NoncommutativeError(
                    "multiplication table is not commutative "
                    f"({noncomm[0].detail}); noncommutative inclines are not "
                    "supported",
                    report,
                )
            first = report.violations[0]
            raise InvalidInclineError(
                f"operation tables do not define an incline: {first.detail}",
                report,
            )

    def _key(self):
        return ("table", self.labels, self.add_table, self.mul_table)

    @property
    def name(self):
        return f"table({','.join(self.labels)})"

    def coerce(self, value):
        if isinstance(value, str):
            try:
                return self.labels.index(value)
            except ValueError:
                raise DomainError(f"unknown table element label {value!r}") from None
        return self.check(value)

    def check(self, value):
        if isinstance(value, int) and 0 <= value < len(self.labels):
            return value
        raise DomainError(
            f"not an element index of {self.name}: {value!r}"
        )

    def sample(self, rng):
        return rng.randrange(len(self.labels))

    def add(self, a, b):
        return self.add_table[self.check(a)][self.check(b)]

    def mul(self, a, b):
        return self.mul_table[self.check(a)][self.check(b)]

    def to_obj(self):
        return {
            "kind": "table",
            "elements": list(self.labels),
            "add": [list(row) for row in self.add_table],
            "mul": [list(row) for row in self.mul_table],
        }

    def element_to_obj(self, value):
        return self.check(value)

    def element_from_obj(self, obj):
        if isinstance(obj, (int, str)):
            return self.coerce(obj)
        raise FormatError(f"bad table element: {obj!r}")


def _check_table(table, m, which):
    """Totality/closure check: m x m, every entry an index in range."""
    rows = tuple(tuple(row) for row in table)
    if len(rows) != m or any(len(row) != m for row in rows):
        raise FormatError(f"{which} table must be {m}x{m}")
    for row in rows:
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < m:
                raise FormatError(
                    f"{which} table entry {v!r} is not an element index in 0..{m - 1}"
                )
    return rows


def _parse_rational(obj):
    if isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational {obj!r}: {exc}") from None
    if isinstance(obj, float):
        raise FormatError(
            f"floating-point element {obj!r} rejected; use a 'p/q' string"
        )
    raise FormatError(f"bad rational element: {obj!r}")


# ---------------------------------------------------------------------------
# Law validation


@dataclass(frozen=True)
class Violation:
    """One violated law with a witness triple (x, y, z) from the carrier."""

    law: str
    witness: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking the incline laws.

    ``method`` is "exhaustive" for finite tables, "sampled" for builtin
    families (checked on ``samples`` deterministic pseudo-random triples).
    Violations carry the first witness found for each broken law.
    """

    valid: bool
    method: str
    samples: int
    seed: int | None
    laws: tuple[str, ...]
    violations: tuple[Violation, ...]

    def to_obj(self, display=element_display) -> dict:
        return {
            "valid": self.valid,
            "method": self.method,
            "samples": self.samples,
            "seed": self.seed,
            "laws": list(self.laws),
            "violations": [
                {
                    "law": v.law,
                    "witness": [display(x) for x in v.witness],
                    "detail": v.detail,
                }
                for v in self.violations
            ],
        }


def _law_checks(add, mul, fmt):
    """Build the list of (law name, check) pairs.

    Each check takes a triple (x, y, z) and returns None if the law holds
    there, else a human-readable description of the failure.  The first
    eight are the defining laws of a commutative incline; the last two are
    consequences, checked directly so a violation pinpoints the broken
    behavior rather than only its cause.
    """

    def leq(a, b):
        return add(a, b) == b

    def c_add_idem(x, y, z):
        s = add(x, x)
        if s != x:
            return f"{fmt(x)} + {fmt(x)} = {fmt(s)} != {fmt(x)}"

    def c_add_comm(x, y, z):
        l, r = add(x, y), add(y, x)
        if l != r:
            return f"{fmt(x)} + {fmt(y)} = {fmt(l)} but {fmt(y)} + {fmt(x)} = {fmt(r)}"

    def c_add_assoc(x, y, z):
        l, r = add(add(x, y), z), add(x, add(y, z))
        if l != r:
            return (
                f"({fmt(x)} + {fmt(y)}) + {fmt(z)} = {fmt(l)} != "
                f"{fmt(x)} + ({fmt(y)} + {fmt(z)}) = {fmt(r)}"
            )

    def c_mul_assoc(x, y, z):
        l, r = mul(mul(x, y), z), mul(x, mul(y, z))
        if l != r:
            return (
                f"({fmt(x)}*{fmt(y)})*{fmt(z)} = {fmt(l)} != "
                f"{fmt(x)}*({fmt(y)}*{fmt(z)}) = {fmt(r)}"
            )

    def c_dist_left(x, y, z):
        l, r = mul(x, add(y, z)), add(mul(x, y), mul(x, z))
        if l != r:
            return (
                f"{fmt(x)}*({fmt(y)} + {fmt(z)}) = {fmt(l)} != "
                f"{fmt(x)}*{fmt(y)} + {fmt(x)}*{fmt(z)} = {fmt(r)}"
            )

    def c_dist_right(x, y, z):
        l, r = mul(add(y, z), x), add(mul(y, x), mul(z, x))
        if l != r:
            return (
                f"({fmt(y)} + {fmt(z)})*{fmt(x)} = {fmt(l)} != "
                f"{fmt(y)}*{fmt(x)} + {fmt(z)}*{fmt(x)} = {fmt(r)}"
            )

    def c_absorption(x, y, z):
        l = add(x, mul(x, y))
        if l != x:
            return f"{fmt(x)} + {fmt(x)}*{fmt(y)} = {fmt(l)} != {fmt(x)}"
        r = add(x, mul(y, x))
        if r != x:
            return f"{fmt(x)} + {fmt(y)}*{fmt(x)} = {fmt(r)} != {fmt(x)}"

    def c_mul_comm(x, y, z):
        l, r = mul(x, y), mul(y, x)
        if l != r:
            return f"{fmt(x)}*{fmt(y)} = {fmt(l)} but {fmt(y)}*{fmt(x)} = {fmt(r)}"

    def c_product_below(x, y, z):
        p = mul(x, y)
        if not leq(p, x):
            return f"{fmt(x)}*{fmt(y)} = {fmt(p)} is not <= {fmt(x)}"
        if not leq(p, y):
            return f"{fmt(x)}*{fmt(y)} = {fmt(p)} is not <= {fmt(y)}"

    def c_mul_monotone(x, y, z):
        if leq(y, z):
            l, r = mul(x, y), mul(x, z)
            if not leq(l, r):
                return (
                    f"{fmt(y)} <= {fmt(z)} but {fmt(x)}*{fmt(y)} = {fmt(l)} "
                    f"is not <= {fmt(x)}*{fmt(z)} = {fmt(r)}"
                )

    return [
        ("add-idempotent", c_add_idem),
        ("add-commutative", c_add_comm),
        ("add-associative", c_add_assoc),
        ("mul-associative", c_mul_assoc),
        ("left-distributive", c_dist_left),
        ("right-distributive", c_dist_right),
        ("absorption", c_absorption),
        ("mul-commutative", c_mul_comm),
        ("product-below-factors", c_product_below),
        ("mul-monotone", c_mul_monotone),
    ]


def _run_checks(checks, triples):
    count = 0
    found: dict[str, Violation] = {}
    for x, y, z in triples:
        count += 1
        for law, check in checks:
            if law in found:
                continue
            detail = check(x, y, z)
            if detail is not None:
                found[law] = Violation(law, (x, y, z), f"{law}: {detail}")
    laws = tuple(law for law, _ in checks)
    violations = tuple(found[law] for law in laws if law in found)
    return laws, violations, count


def validate_table(add_table, mul_table, labels=None) -> ValidationReport:
    """Exhaustively check raw operation tables against all incline laws.

    Works on unvalidated data, so it can report on broken tables that
    :class:`TableIncline` would refuse to construct.  Violations are data,
    not errors: the report lists each broken law with a witness triple.
    """
    m = len(add_table)
    add_table = _check_table(add_table, m, "add")
    mul_table = _check_table(mul_table, m, "mul")
    if labels is not None and len(labels) != m:
        raise FormatError("labels do not match table size")

    def fmt(i):
        return labels[i] if labels is not None else str(i)

    checks = _law_checks(
        lambda a, b: add_table[a][b], lambda a, b: mul_table[a][b], fmt
    )
    rng = range(m)
    triples = ((x, y, z) for x in rng for y in rng for z in rng)
    laws, violations, count = _run_checks(checks, triples)
    return ValidationReport(
        valid=not violations,
        method="exhaustive",
        samples=count,
        seed=None,
        laws=laws,
        violations=violations,
    )


def validate_incline(incline: Incline, samples: int = 10000, seed: int = 0) -> ValidationReport:
    """Check every incline law on ``incline``.

    Finite tables are checked exhaustively; builtin families on ``samples``
    deterministic pseudo-random triples drawn with the given seed.
    """
    if isinstance(incline, TableIncline):
        return validate_table(incline.add_table, incline.mul_table, incline.labels)
    checks = _law_checks(incline.add, incline.mul, element_display)
    rng = random.Random(seed)
    triples = (
        (incline.sample(rng), incline.sample(rng), incline.sample(rng))
        for _ in range(samples)
    )
    laws, violations, count = _run_checks(checks, triples)
    return ValidationReport(
        valid=not violations,
        method="sampled",
        samples=count,
        seed=seed,
        laws=laws,
        violations=violations,
    )


# ---------------------------------------------------------------------------
# Builtins and serialization


def two_bit_lattice() -> TableIncline:
    """The four-element distributive lattice {0, a, b, 1} with a, b incomparable.

    Concretely {0,1}^2 under componentwise or/and; join and meet tables make
    it a commutative incline like any distributive lattice.
    """
    return TableIncline(
        labels=("0", "a", "b", "1"),
        add_table=((0, 1, 2, 3), (1, 1, 3, 3), (2, 3, 2, 3), (3, 3, 3, 3)),
        mul_table=((0, 0, 0, 0), (0, 1, 0, 1), (0, 0, 2, 2), (0, 1, 2, 3)),
    )


BUILTIN_INCLINES = {
    "boolean": BooleanIncline,
    "tropical": TropicalIncline,
    "fuzzy-min": lambda: FuzzyIncline("min"),
    "fuzzy-product": lambda: FuzzyIncline("product"),
    "fuzzy-lukasiewicz": lambda: FuzzyIncline("lukasiewicz"),
    "lattice4": two_bit_lattice,
}


def get_builtin(name: str) -> Incline:
    try:
        factory = BUILTIN_INCLINES[name]
    except KeyError:
        raise FormatError(
            f"unknown builtin incline {name!r}; choose one of "
            f"{sorted(BUILTIN_INCLINES)}"
        ) from None
    return factory()


def incline_from_obj(obj) -> Incline:
    """Build an incline from its JSON object form (see package docs)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError(f"incline spec must be an object with 'kind': {obj!r}")
    kind = obj["kind"]
    if kind == "boolean":
        return BooleanIncline()
    if kind == "tropical":
        return TropicalIncline()
    if kind == "fuzzy":
        tnorm = obj.get("tnorm", "min")
        if not isinstance(tnorm, str):
            raise FormatError(f"bad tnorm: {tnorm!r}")
        return FuzzyIncline(tnorm)
    if kind == "table":
        try:
            labels = obj["elements"]
            add_table = obj["add"]
            mul_table = obj["mul"]
        except KeyError as exc:
            raise FormatError(f"table spec missing key {exc}") from None
        return TableIncline(labels, add_table, mul_table)
    raise FormatError(f"unknown incline kind {kind!r}")


def load_incline(path) -> Incline:
    """Read an incline spec from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return incline_from_obj(obj)
