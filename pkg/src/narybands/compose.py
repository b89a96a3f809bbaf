"""Synthesis: the inverse direction of decomposition.

Builds symmetric n-ary bands out of strong-system data, constructs the
Abelian groups and connecting homomorphisms the systems are made of, and
enumerates every symmetric n-ary band on a small carrier, both by
composing systems and by brute force over symmetric idempotent tables.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, DomainError, InputError, ResourceError
from .bandcore import QuotientSemilattice, SigmaPartition
from .optable import (
    OpTable,
    canonical_form,
    check_associative,
    extend,
    relabel,
)
from .structure import (
    ClassGroup,
    HomMap,
    StrongSystem,
    invariant_factors,
    validate_system,
)

ENUMERATE_SIZE_LIMIT = 5
BRUTE_CANDIDATE_BUDGET = 2**24
_BRUTE_SCAN_BUDGET = 2**26
_NP_FILTER_THRESHOLD = 200_000


@dataclass(frozen=True)
class GroupSpec:
    """Abelian group as a product of cyclic factors.

    factors are normalized: sorted ascending, trivial factors dropped, so
    the trivial group is GroupSpec(1, ()).  Which arities admit the group
    is checked by make_group, not here.
    """

    order: int
    factors: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise InputError(f"group order must be a positive integer, got {self.order!r}")
        factors = []
        for f in self.factors:
            if not isinstance(f, int) or f < 1:
                raise InputError(f"cyclic factor {f!r} must be a positive integer")
            if f > 1:
                factors.append(f)
        factors = tuple(sorted(factors))
        object.__setattr__(self, "factors", factors)
        product = 1
        for f in factors:
            product *= f
        if product != self.order:
            raise InputError(f"factors {factors} multiply to {product}, not {self.order}")


def make_group(spec: GroupSpec, arity: int) -> OpTable:
    """Cayley table of the direct product of spec's cyclic factors.

    Identity is element 0; element indices are the mixed-radix encoding of
    factor digit tuples, first factor most significant.  Every factor must
    divide arity-1 so the group fits a class of an arity-ary band.
    """
    if not isinstance(arity, int) or arity < 2:
        raise InputError(f"arity must be an integer >= 2, got {arity!r}")
    for f in spec.factors:
        if (arity - 1) % f != 0:
            raise InputError(f"cyclic factor {f} does not divide {arity - 1}")
    k = spec.order
    factors = spec.factors
    values = []
    for x in range(k):
        for y in range(k):
            # digit-wise sum, first factor most significant
            rx, ry = x, y
            digits = []
            for f in reversed(factors):
                digits.append((rx % f + ry % f) % f)
                rx //= f
                ry //= f
            code = 0
            for f, d in zip(factors, reversed(digits)):
                code = code * f + d
            values.append(code)
    return OpTable(2, k, tuple(values))


def group_homs(g1: OpTable, g2: OpTable) -> tuple[tuple[int, ...], ...]:
    """All multiplicative maps between two group tables, brute-forced.

    A multiplicative map between groups is automatically a group
    homomorphism, so no identity bookkeeping is needed.
    """
    if g1.arity != 2 or g2.arity != 2:
        raise InputError("group tables must be binary")
    k1, k2 = g1.size, g2.size
    out = []
    for candidate in itertools.product(range(k2), repeat=k1):
        if all(
            candidate[g1.values[x * k1 + y]]
            == g2.values[candidate[x] * k2 + candidate[y]]
            for x in range(k1)
            for y in range(k1)
        ):
            out.append(candidate)
    return tuple(out)


def nary_homs(g1: OpTable, g2: OpTable, arity: int) -> list[tuple[int, ...]]:
    """All homomorphisms between the arity-ary extensions of two groups:
    exactly the translates of the group homomorphisms.

    Both groups must be Abelian with exponent dividing arity-1 for the
    characterization to hold.
    """
    k2 = g2.size
    found = set()
    for psi in group_homs(g1, g2):
        for shift in range(k2):
            found.add(tuple(g2.values[shift * k2 + p] for p in psi))
    return sorted(found)


@lru_cache(maxsize=None)
def _cached_nary_homs(g1: OpTable, g2: OpTable, arity: int) -> tuple[tuple[int, ...], ...]:
    return tuple(nary_homs(g1, g2, arity))


@dataclass(frozen=True)
class BandCatalog:
    """Enumeration result: entries plus labeled and iso-class counts.

    entries hold every labeled table (sorted by canonical values, then own
    values) or one canonical representative per iso class, depending on
    how the catalog was requested; both counts are always present.
    """

    size: int
    arity: int
    entries: tuple[OpTable, ...]
    labeled: int
    iso: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for t in self.entries:
            if t.size != self.size or t.arity != self.arity:
                raise InputError("catalog entry has mismatched size or arity")
        if self.labeled < self.iso or self.iso < 0:
            raise InputError("catalog counts are inconsistent")


def _catalog(m: int, n: int, tables, up_to_iso: bool) -> BandCatalog:
    canon: dict[tuple[int, ...], tuple[int, ...]] = {}
    for t in tables:
        canon[t.values] = canonical_form(t).values
    iso = len(set(canon.values()))
    if up_to_iso:
        entries = tuple(OpTable(n, m, v) for v in sorted(set(canon.values())))
    else:
        entries = tuple(sorted(tables, key=lambda t: (canon[t.values], t.values)))
    return BandCatalog(m, n, entries, len(tables), iso)


def _multiset_scaffold(m: int, n: int):
    """(flat index -> multiset id, forced values by id, free multiset ids)."""
    ms_list = list(itertools.combinations_with_replacement(range(m), n))
    ms_index = {ms: i for i, ms in enumerate(ms_list)}
    flat_ms = [
        ms_index[tuple(sorted(args))] for args in itertools.product(range(m), repeat=n)
    ]
    cells = [None] * len(ms_list)
    free = []
    for i, ms in enumerate(ms_list):
        if len(set(ms)) == 1:
            cells[i] = ms[0]
        else:
            free.append(i)
    return flat_ms, cells, free


def _brute_bands_py(m: int, n: int, flat_ms, cells, free) -> list[OpTable]:
    out = []
    for assignment in itertools.product(range(m), repeat=len(free)):
        filled = list(cells)
        for slot, v in zip(free, assignment):
            filled[slot] = v
        t = OpTable(n, m, tuple(filled[j] for j in flat_ms))
        if check_associative(t, use_symmetry=True) is None:
            out.append(t)
    return out


def _brute_bands_binary_np(m: int) -> list[OpTable]:
    # symmetric idempotent binary tables, free cells = pairs x < y;
    # candidates are columns of one big int8 matrix, constants appended so
    # every table cell is some column
    pairs = [(x, y) for x in range(m) for y in range(x + 1, m)]
    free_count = len(pairs)
    total = m**free_count
    codes = np.arange(total, dtype=np.int64)
    cols = [
        ((codes // (m ** (free_count - 1 - j))) % m).astype(np.int8)
        for j in range(free_count)
    ]
    cols.extend(np.full(total, v, dtype=np.int8) for v in range(m))
    cur = np.stack(cols, axis=1)
    del cols, codes
    colmap = np.zeros((m, m), dtype=np.int64)
    for j, (x, y) in enumerate(pairs):
        colmap[x, y] = colmap[y, x] = j
    for v in range(m):
        colmap[v, v] = free_count + v
    for x in range(m):
        for y in range(m):
            for z in range(m):
                rows = np.arange(cur.shape[0])
                v1 = cur[:, colmap[x, y]]
                lhs = cur[rows, colmap[v1, z]]
                v2 = cur[:, colmap[y, z]]
                rhs = cur[rows, colmap[x, v2]]
                keep = lhs == rhs
                if not bool(keep.all()):
                    cur = cur[keep]
                if cur.shape[0] == 0:
                    return []
    out = []
    for row in cur:
        values = tuple(int(row[colmap[x, y]]) for x in range(m) for y in range(m))
        out.append(OpTable(2, m, values))
    return out


def brute_force_bands(m: int, n: int, max_candidates: int = BRUTE_CANDIDATE_BUDGET) -> BandCatalog:
    """Independent oracle: every symmetric idempotent table (one value per
    argument multiset, constants forced) filtered by associativity."""
    if not isinstance(m, int) or m < 1 or not isinstance(n, int) or n < 2:
        raise InputError("need size >= 1 and arity >= 2")
    flat_ms, cells, free = _multiset_scaffold(m, n)
    total = m ** len(free)
    if total > max_candidates:
        raise ResourceError(
            f"{m}**{len(free)} = {total} candidates exceed the budget {max_candidates}"
        )
    if n == 2 and total > _NP_FILTER_THRESHOLD:
        bands = _brute_bands_binary_np(m)
    else:
        if total * m ** (2 * n - 1) > _BRUTE_SCAN_BUDGET:
            raise ResourceError(
                f"scanning {total} candidates of arity {n} exceeds the scan budget"
            )
        bands = _brute_bands_py(m, n, flat_ms, cells, free)
    return _catalog(m, n, bands, up_to_iso=False)


@lru_cache(maxsize=None)
def _semilattice_tables(k: int) -> tuple[OpTable, ...]:
    return brute_force_bands(k, 2).entries


def _factor_multisets(order: int, exponent_cap: int, least: int = 2):
    if order == 1:
        yield ()
        return
    f = least
    while f <= order:
        if order % f == 0 and exponent_cap % f == 0:
            for rest in _factor_multisets(order // f, exponent_cap, f):
                yield (f,) + rest
        f += 1


@lru_cache(maxsize=None)
def _class_structures(size: int, arity: int):
    """Distinct arity-ary group extensions on a class of the given size.

    Each entry is (extension table, one binary group table producing it,
    identity position of that group); extensions from different neutrals
    coincide, so the dictionary keyed by extension values dedupes them.
    """
    found: dict[tuple[int, ...], tuple[OpTable, int]] = {}
    for factors in _factor_multisets(size, arity - 1):
        base = make_group(GroupSpec(size, factors), arity)
        for perm in itertools.permutations(range(size)):
            g = relabel(base, perm)
            ext = extend(g, arity - 1)
            if ext.values not in found:
                ident = next(
                    p
                    for p in range(size)
                    if all(g.values[p * size + q] == q for q in range(size))
                )
                found[ext.values] = (g, ident)
    return tuple(
        (OpTable(arity, size, v), g, ident) for v, (g, ident) in sorted(found.items())
    )


def _set_partitions(m: int):
    """All partitions of {0..m-1}, blocks sorted and ordered by least member."""

    def rec(x, blocks):
        if x == m:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(x)
            yield from rec(x + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(x + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def _hom_systems(q: QuotientSemilattice, bases, arity: int):
    """All coherent systems of position maps for the strict comparable pairs.

    Classes are processed top-down; maps are chosen freely on covering
    pairs and derived along longer chains, pruning when two derivations of
    the same pair disagree.  Checking only factorizations through covers
    is enough: coherence for longer chains follows by induction down the
    processing order.
    """
    k = q.size
    uppers = [[d for d in range(k) if d != c and q.leq(c, d)] for c in range(k)]
    cover_pairs = q.covers()
    cover_ups = [[a for a, b in cover_pairs if b == c] for c in range(k)]
    order = sorted(range(k), key=lambda c: (len(uppers[c]), c))
    phi: dict[tuple[int, int], tuple[int, ...]] = {}

    def rec(idx):
        if idx == k:
            yield dict(phi)
            return
        c = order[idx]
        if not uppers[c]:
            yield from rec(idx + 1)
            return
        choice_lists = [_cached_nary_homs(bases[a], bases[c], arity) for a in cover_ups[c]]
        for combo in itertools.product(*choice_lists):
            assigned = dict(zip(cover_ups[c], combo))
            derived = {}
            ok = True
            for g in uppers[c]:
                candidate = None
                for a in cover_ups[c]:
                    if a == g:
                        via = assigned[a]
                    elif q.leq(a, g):
                        via = tuple(assigned[a][p] for p in phi[(g, a)])
                    else:
                        continue
                    if candidate is None:
                        candidate = via
                    elif candidate != via:
                        ok = False
                        break
                if not ok:
                    break
                derived[g] = candidate
            if not ok:
                continue
            for g in uppers[c]:
                phi[(g, c)] = derived[g]
            yield from rec(idx + 1)
            for g in uppers[c]:
                del phi[(g, c)]

    yield from rec(0)


def _assemble(arity, classes, q, assign, phi) -> StrongSystem:
    size = sum(len(c) for c in classes)
    class_of = [0] * size
    for i, members in enumerate(classes):
        for x in members:
            class_of[x] = i
    partition = SigmaPartition(tuple(class_of), classes)
    groups = []
    for i, (_, base, ident) in enumerate(assign):
        members = classes[i]
        groups.append(
            ClassGroup(i, members, members[ident], base, invariant_factors(base, ident))
        )
    homs = {}
    for (a, b), pmap in phi.items():
        homs[(a, b)] = HomMap(
            a,
            b,
            tuple((classes[a][i], classes[b][pmap[i]]) for i in range(len(classes[a]))),
        )
    for i in range(len(classes)):
        homs[(i, i)] = HomMap(i, i, tuple((x, x) for x in classes[i]))
    return StrongSystem(arity, partition, q, tuple(groups), homs)


def compose(system: StrongSystem, arity: int | None = None, verify: bool = True) -> OpTable:
    """Glue a strong system back into one operation table.

    Each argument tuple is sent into the meet of its classes through the
    connecting maps and folded there through the class group.
    """
    n = system.arity if arity is None else arity
    if not isinstance(n, int) or n < 2:
        raise InputError(f"arity must be an integer >= 2, got {n!r}")
    if verify:
        report = validate_system(system, n)
        if report:
            summary = "; ".join(f"{v.code}: {v.message}" for v in report)
            raise DomainError(f"system fails validation: {summary}")
    m = system.size
    class_of = system.partition.class_of
    meet = system.quotient
    values = []
    for args in itertools.product(range(m), repeat=n):
        alpha = class_of[args[0]]
        for a in args[1:]:
            alpha = meet.meet_of(alpha, class_of[a])
        group = system.groups[alpha]
        pos = None
        for a in args:
            image = system.homs[(class_of[a], alpha)].apply(a)
            p = group.position(image)
            pos = p if pos is None else group.op_position(pos, p)
        values.append(group.members[pos])
    return OpTable(n, m, tuple(values))


def enumerate_bands(m: int, n: int, up_to_iso: bool = False) -> BandCatalog:
    """Every symmetric n-ary band on m labeled elements, built by
    composing systems: partition x semilattice x class groups x coherent
    connecting maps.

    Distinctness of all composed tables is asserted, since a band
    determines its system up to per-class neutral choice.
    """
    if not isinstance(m, int) or m < 1 or not isinstance(n, int) or n < 2:
        raise InputError("need size >= 1 and arity >= 2")
    if m > ENUMERATE_SIZE_LIMIT:
        raise ResourceError(f"enumeration supports at most {ENUMERATE_SIZE_LIMIT} elements")
    tables = []
    seen = set()
    for classes in _set_partitions(m):
        options = [_class_structures(len(c), n) for c in classes]
        if any(not o for o in options):
            continue
        k = len(classes)
        for meet_table in _semilattice_tables(k):
            q = QuotientSemilattice(meet_table)
            for assign in itertools.product(*options):
                bases = [entry[1] for entry in assign]
                for phi in _hom_systems(q, bases, n):
                    system = _assemble(n, classes, q, assign, phi)
                    t = compose(system, n, verify=False)
                    if t.values in seen:
                        raise ConsistencyError("two distinct systems composed equal")
                    seen.add(t.values)
                    tables.append(t)
    return _catalog(m, n, tables, up_to_iso)
