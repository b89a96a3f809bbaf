"""Associated binary band, translation maps, least semilattice congruence.

For a symmetric n-ary band F the binary operation B(x, y) = F(x, ..., x, y)
is a right normal band whose rows are the translation maps.  Grouping
elements by equal rows is the least semilattice congruence; its quotient
is a meet semilattice and the whole decomposition theory hangs off it.
"""

import enum
import itertools
from dataclasses import dataclass

from .errors import ConsistencyError, InputError
from .optable import (
    OpTable,
    check_associative,
    check_idempotent,
    check_symmetric,
    require_band,
)


class Classification(enum.Enum):
    SEMILATTICE_EXTENSION = "semilattice-extension"
    GROUP_EXTENSION = "group-extension"
    GENERAL = "general"


@dataclass(frozen=True)
class LambdaTable:
    """Translation maps of a band: row x sends y to B(x, y)."""

    size: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise InputError(f"need {self.size} rows of length {self.size}")
        for x, row in enumerate(rows):
            if row[x] != x:
                raise ConsistencyError(f"row {x} does not fix {x}; source is not idempotent")
            for y in range(self.size):
                if row[row[y]] != row[y]:
                    raise ConsistencyError(f"row {x} is not idempotent as a map")

    def row(self, x: int) -> tuple[int, ...]:
        return self.rows[x]


@dataclass(frozen=True)
class SigmaPartition:
    """Partition of the carrier into congruence classes.

    classes are sorted internally and listed by least member; class_of maps
    each element to the index of its class.
    """

    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        class_of = tuple(self.class_of)
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "class_of", class_of)
        object.__setattr__(self, "classes", classes)
        seen: list[int] = []
        for i, members in enumerate(classes):
            if not members or list(members) != sorted(members):
                raise InputError(f"class {i} must be nonempty and sorted")
            seen.extend(members)
        if sorted(seen) != list(range(len(class_of))):
            raise InputError("classes do not partition the carrier")
        if [c[0] for c in classes] != sorted(c[0] for c in classes):
            raise InputError("classes must be ordered by least member")
        for i, members in enumerate(classes):
            for x in members:
                if class_of[x] != i:
                    raise InputError(f"class_of[{x}] disagrees with classes")

    @property
    def size(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class QuotientSemilattice:
    """Meet semilattice structure on the congruence classes."""

    meet: OpTable

    def __post_init__(self):
        if self.meet.arity != 2:
            raise InputError("meet table must be binary")
        if check_symmetric(self.meet) is not None:
            raise ConsistencyError("meet table is not commutative")
        if check_idempotent(self.meet) is not None:
            raise ConsistencyError("meet table is not idempotent")
        if check_associative(self.meet, use_symmetry=True) is not None:
            raise ConsistencyError("meet table is not associative")

    @property
    def size(self) -> int:
        return self.meet.size

    def meet_of(self, a: int, b: int) -> int:
        return self.meet.values[a * self.meet.size + b]

    def leq(self, sub: int, sup: int) -> bool:
        return self.meet_of(sup, sub) == sub

    def comparable_pairs(self) -> list[tuple[int, int]]:
        """All (upper, lower) pairs with lower <= upper, including equal."""
        k = self.size
        return [(a, b) for a in range(k) for b in range(k) if self.leq(b, a)]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (upper, lower) with lower < upper and nothing in between."""
        k = self.size
        out = []
        for a in range(k):
            for b in range(k):
                if a == b or not self.leq(b, a):
                    continue
                if not any(
                    c != a and c != b and self.leq(b, c) and self.leq(c, a) for c in range(k)
                ):
                    out.append((a, b))
        return out


def associated_band(t: OpTable, verify: bool = True) -> OpTable:
    """Binary table B(x, y) = t(x, ..., x, y)."""
    if verify:
        require_band(t)
    m, n = t.size, t.arity
    values = []
    for x in range(m):
        head = 0
        for _ in range(n - 1):
            head = head * m + x
        base = head * m
        values.extend(t.values[base : base + m])
    return OpTable(2, m, tuple(values))


def lambda_table(t: OpTable, verify: bool = True) -> LambdaTable:
    """Translation maps of t, one row per element."""
    band = associated_band(t, verify=verify)
    m = t.size
    rows = tuple(tuple(band.values[x * m : (x + 1) * m]) for x in range(m))
    return LambdaTable(m, rows)


def check_right_normal(band: OpTable):
    """None if `band` is an idempotent, associative, right normal binary
    operation; otherwise (law, witness) for the first failing law."""
    if band.arity != 2:
        raise InputError("right normality is a binary law")
    m = band.size
    values = band.values
    idem = check_idempotent(band)
    if idem is not None:
        return ("idempotent", idem)
    assoc = check_associative(band, use_symmetry=False)
    if assoc is not None:
        return ("associative", assoc)
    for x, y, z in itertools.product(range(m), repeat=3):
        if values[values[x * m + y] * m + z] != values[values[y * m + x] * m + z]:
            return ("right-normal", (x, y, z))
    return None


def band_sigma_related(band: OpTable, x: int, y: int) -> bool:
    """Least-semilattice-congruence test valid in any band."""
    m = band.size
    v = band.values
    return v[v[x * m + y] * m + x] == x and v[v[y * m + x] * m + y] == y


def right_normal_sigma_related(band: OpTable, x: int, y: int) -> bool:
    """Simplified congruence test, valid when the band is right normal."""
    m = band.size
    v = band.values
    return v[y * m + x] == x and v[x * m + y] == y


def sigma_partition(t: OpTable, verify: bool = True) -> SigmaPartition:
    """Group elements by equal translation rows; least congruence whose
    quotient is a semilattice."""
    lam = lambda_table(t, verify=verify)
    by_row: dict[tuple[int, ...], list[int]] = {}
    for x in range(t.size):
        by_row.setdefault(lam.rows[x], []).append(x)
    classes = tuple(sorted((tuple(c) for c in by_row.values()), key=lambda c: c[0]))
    class_of = [0] * t.size
    for i, members in enumerate(classes):
        for x in members:
            class_of[x] = i
    return SigmaPartition(tuple(class_of), classes)


def quotient(t: OpTable, partition: SigmaPartition):
    """Class-level tables (t_quotient, band_quotient, semilattice).

    Every combination of representatives is folded through the partition;
    a representative-dependent cell means `partition` is not a congruence
    for t and raises ConsistencyError.
    """
    if len(partition.class_of) != t.size:
        raise InputError("partition size does not match table size")
    k = partition.size
    class_of = partition.class_of

    def classwise(table: OpTable) -> OpTable:
        out = []
        for cls_args in itertools.product(range(k), repeat=table.arity):
            result = None
            for combo in itertools.product(*(partition.classes[c] for c in cls_args)):
                code = 0
                for a in combo:
                    code = code * table.size + a
                got = class_of[table.values[code]]
                if result is None:
                    result = got
                elif got != result:
                    raise ConsistencyError(
                        f"cell {cls_args} depends on representatives; not a congruence"
                    )
            out.append(result)
        return OpTable(table.arity, k, tuple(out))

    t_quotient = classwise(t)
    band_quotient = classwise(associated_band(t, verify=False))
    return t_quotient, band_quotient, QuotientSemilattice(band_quotient)


def classify(t: OpTable, verify: bool = True) -> Classification:
    """Distinguish semilattice extensions (all translation rows distinct)
    from group extensions (all rows trivial) from the general case.

    A one-element table is reported as a group extension.
    """
    lam = lambda_table(t, verify=verify)
    if t.size == 1:
        return Classification.GROUP_EXTENSION
    identity = tuple(range(t.size))
    if all(row == identity for row in lam.rows):
        return Classification.GROUP_EXTENSION
    if len(set(lam.rows)) == t.size:
        return Classification.SEMILATTICE_EXTENSION
    return Classification.GENERAL
