"""Reducibility of a symmetric n-ary band to a binary semigroup.

A band is reducible exactly when its classes admit a coherent choice of
neutral elements: one e per class, mapped onto each other by the
connecting homomorphisms.  Choices are only free at maximal classes;
everything below is forced, so the search is a small DFS with forward
checking.  A brute-force table scan serves as the independent oracle.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, DomainError, InputError, ResourceError, Violation
from .optable import OpTable, check_associative, check_symmetric, extend, table_to_doc
from .structure import StrongSystem, validate_system

REDUCTION_CANDIDATE_BUDGET = 2**21


@dataclass(frozen=True)
class NeutralSelection:
    """One chosen element per class, indexed by class."""

    by_class: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "by_class", tuple(self.by_class))

    def element_for(self, class_index: int) -> int:
        return self.by_class[class_index]


@dataclass(frozen=True)
class Reduction:
    """A coherent neutral selection and the binary semigroup it induces."""

    selection: NeutralSelection
    table: OpTable

    reducible = True


@dataclass(frozen=True)
class Irreducible:
    """Witness that no coherent selection exists: the lowest class whose
    admissible set emptied, the distinct images forced into it, and the
    (class, chosen element) pairs that forced them."""

    witness_class: int
    conflicting_images: tuple[int, ...]
    sources: tuple[tuple[int, int], ...]

    reducible = False


def _strict_uppers(system: StrongSystem) -> list[list[int]]:
    k = system.quotient.size
    return [
        [d for d in range(k) if d != c and system.quotient.leq(c, d)] for c in range(k)
    ]


def build_reduction(
    system: StrongSystem, selection: NeutralSelection, arity: int | None = None
) -> OpTable:
    """Binary table G(x, y): meet the two classes, map both arguments down,
    multiply in the class group re-based at the selected neutral.

    The selection must be coherent (element of each class, preserved by
    every connecting map); violations raise InputError.
    """
    n = system.arity if arity is None else arity
    if not isinstance(n, int) or n < 2:
        raise InputError(f"arity must be an integer >= 2, got {n!r}")
    k = system.quotient.size
    chosen = selection.by_class
    if len(chosen) != k:
        raise InputError(f"selection names {len(chosen)} classes, system has {k}")
    for c in range(k):
        if chosen[c] not in system.partition.classes[c]:
            raise InputError(f"selected element {chosen[c]} is not in class {c}")
    for (a, b), hom in system.homs.items():
        if a != b and hom.apply(chosen[a]) != chosen[b]:
            raise InputError(
                f"selection is not coherent: map ({a}, {b}) sends {chosen[a]} "
                f"to {hom.apply(chosen[a])}, not {chosen[b]}"
            )
    m = system.size
    class_of = system.partition.class_of
    values = []
    for x in range(m):
        cx = class_of[x]
        for y in range(m):
            gamma = system.quotient.meet_of(cx, class_of[y])
            group = system.groups[gamma]
            u = system.homs[(cx, gamma)].apply(x)
            v = system.homs[(class_of[y], gamma)].apply(y)
            r = group.op(u, v)
            for _ in range(n - 2):
                r = group.op(r, chosen[gamma])
            values.append(r)
    return OpTable(2, m, tuple(values))


def decide_reducible(
    system: StrongSystem, arity: int | None = None, verify: bool = True
):
    """Search for a coherent neutral selection; Reduction on success,
    Irreducible with the forced-image conflict otherwise.

    Maximal classes are tried in class order with elements ascending, so
    the reported selection is deterministic; lower classes are forced to
    the intersection of the images of what is already chosen.
    """
    n = system.arity if arity is None else arity
    if verify:
        report = validate_system(system, n)
        if report:
            summary = "; ".join(f"{v.code}: {v.message}" for v in report)
            raise DomainError(f"system fails validation: {summary}")
    k = system.quotient.size
    uppers = _strict_uppers(system)
    order = sorted(range(k), key=lambda c: (len(uppers[c]), c))
    selection: list[int | None] = [None] * k
    failures: dict[int, tuple[set[int], set[tuple[int, int]]]] = {}

    def search(idx: int) -> bool:
        if idx == k:
            return True
        c = order[idx]
        if not uppers[c]:
            for e in system.partition.classes[c]:
                selection[c] = e
                if search(idx + 1):
                    return True
            selection[c] = None
            return False
        images = set()
        sources = []
        for d in uppers[c]:
            image = system.homs[(d, c)].apply(selection[d])
            images.add(image)
            sources.append((d, selection[d]))
        if len(images) == 1:
            selection[c] = images.pop()
            if search(idx + 1):
                return True
            selection[c] = None
            return False
        bucket = failures.setdefault(c, (set(), set()))
        bucket[0].update(images)
        bucket[1].update(sources)
        return False

    if search(0):
        chosen = NeutralSelection(tuple(selection))
        return Reduction(chosen, build_reduction(system, chosen, n))
    witness = min(failures)
    images, sources = failures[witness]
    return Irreducible(witness, tuple(sorted(images)), tuple(sorted(sources)))


def verify_reduction(t: OpTable, reduction: OpTable) -> list[Violation]:
    """All the ways reduction fails to reduce t: the extension must equal t
    cell for cell, and the binary table must be associative, symmetric,
    and surjective.  Empty report means it is a reduction."""
    if reduction.arity != 2:
        raise InputError("a reduction must be a binary table")
    if reduction.size != t.size:
        raise InputError(
            f"size mismatch: table has {t.size} elements, candidate has {reduction.size}"
        )
    out = []
    sym = check_symmetric(reduction)
    if sym is not None:
        out.append(Violation("symmetric", f"not symmetric: {sym.args} vs {sym.swapped}"))
    assoc = check_associative(reduction, use_symmetry=sym is None)
    if assoc is not None:
        out.append(Violation("associative", f"not associative at {assoc.args}"))
    if set(reduction.values) != set(range(t.size)):
        out.append(Violation("surjective", "binary table is not surjective"))
    if extend(reduction, t.arity - 1).values != t.values:
        out.append(Violation("extension", "extension does not reproduce the table"))
    return out


@lru_cache(maxsize=3)
def _reduction_candidates(m: int, symmetric_only: bool):
    if symmetric_only:
        cells = [(x, y) for x in range(m) for y in range(x, m)]
    else:
        cells = [(x, y) for x in range(m) for y in range(m)]
    count = len(cells)
    total = m**count
    codes = np.arange(total, dtype=np.int64)
    cols = [
        ((codes // (m ** (count - 1 - j))) % m).astype(np.int8) for j in range(count)
    ]
    digits = np.stack(cols, axis=1)
    digits.flags.writeable = False
    colmap = np.zeros((m, m), dtype=np.int64)
    for j, (x, y) in enumerate(cells):
        colmap[x, y] = j
        if symmetric_only:
            colmap[y, x] = j
    return digits, colmap


def brute_force_reductions(
    t: OpTable,
    symmetric_only: bool = True,
    max_candidates: int = REDUCTION_CANDIDATE_BUDGET,
) -> list[OpTable]:
    """Every binary table whose (arity-1)-fold extension equals t, by
    exhaustive scan; symmetric tables only unless symmetric_only is False
    (any reduction of a symmetric band is symmetric, so the default loses
    nothing there).  Survivors are re-checked for associativity."""
    m, n = t.size, t.arity
    if n == 2:
        if symmetric_only and check_symmetric(t) is not None:
            return []
        if check_associative(t) is not None:
            return []
        return [t]
    cell_count = m * (m + 1) // 2 if symmetric_only else m * m
    total = m**cell_count
    if total > max_candidates:
        raise ResourceError(
            f"{m}**{cell_count} = {total} candidate tables exceed the budget {max_candidates}"
        )
    digits, colmap = _reduction_candidates(m, symmetric_only)
    cur = digits
    for suffix in itertools.product(range(m), repeat=n - 1):
        vec = cur[:, colmap[suffix[-2], suffix[-1]]]
        for j in range(len(suffix) - 3, -1, -1):
            vec = cur[np.arange(cur.shape[0]), colmap[suffix[j], vec]]
        for first in range(m):
            lhs = cur[np.arange(cur.shape[0]), colmap[first, vec]]
            want = t.eval((first, *suffix))
            keep = lhs == want
            if not bool(keep.all()):
                cur = cur[keep]
                vec = vec[keep]
            if cur.shape[0] == 0:
                return []
    out = []
    for row in cur:
        g = OpTable(2, m, tuple(int(row[colmap[x, y]]) for x in range(m) for y in range(m)))
        if check_associative(g) is not None:
            raise ConsistencyError("a scanned reduction failed the associativity recheck")
        out.append(g)
    out.sort(key=lambda g: g.values)
    return out


def reduction_result_to_doc(result, labels=None) -> dict:
    """JSON-ready document for either outcome of decide_reducible."""
    if isinstance(result, Reduction):
        return {
            "reducible": True,
            "selection": {
                str(c): e for c, e in enumerate(result.selection.by_class)
            },
            "table": table_to_doc(result.table, labels),
        }
    if isinstance(result, Irreducible):
        return {
            "reducible": False,
            "witness": {
                "class": result.witness_class,
                "images": list(result.conflicting_images),
                "sources": [list(pair) for pair in result.sources],
            },
        }
    raise InputError(f"not a reduction result: {result!r}")
