"""Dense tables of finite n-ary operations and their basic laws.

An operation on {0, ..., m-1} with arity n is stored as a flat tuple of
m**n values in lexicographic argument order, first argument most
significant.  Everything downstream (bands, quotients, reductions) is
built out of these tables.
"""

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import InputError, ResourceError

EXTEND_CELL_BUDGET = 2**28
CANONICAL_SIZE_LIMIT = 8
_VECTOR_SCAN_THRESHOLD = 10_000


@lru_cache(maxsize=None)
def _strides(size: int, count: int) -> tuple[int, ...]:
    return tuple(size ** (count - 1 - k) for k in range(count))


@dataclass(frozen=True)
class TupleCodec:
    """Bijection between argument tuples and flat table indices."""

    size: int
    arity: int

    def encode(self, args: Sequence[int]) -> int:
        if len(args) != self.arity:
            raise InputError(f"expected {self.arity} arguments, got {len(args)}")
        code = 0
        for a in args:
            if not isinstance(a, int) or not 0 <= a < self.size:
                raise InputError(f"argument {a!r} outside 0..{self.size - 1}")
            code = code * self.size + a
        return code

    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size**self.arity:
            raise InputError(f"index {index!r} outside table of size {self.size}^{self.arity}")
        out = []
        for stride in _strides(self.size, self.arity):
            out.append(index // stride % self.size)
        return tuple(out)

    def tuples(self) -> Iterator[tuple[int, ...]]:
        """All argument tuples in flat-index (lexicographic) order."""
        return itertools.product(range(self.size), repeat=self.arity)


@dataclass(frozen=True)
class OpTable:
    """A total n-ary operation on {0, ..., size-1}."""

    arity: int
    size: int
    values: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if not isinstance(self.arity, int) or self.arity < 2:
            raise InputError(f"arity must be an integer >= 2, got {self.arity!r}")
        if not isinstance(self.size, int) or self.size < 1:
            raise InputError(f"size must be an integer >= 1, got {self.size!r}")
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != self.size**self.arity:
            raise InputError(
                f"values has length {len(vals)}, expected {self.size}**{self.arity}"
            )
        for v in vals:
            if not isinstance(v, int) or not 0 <= v < self.size:
                raise InputError(f"table value {v!r} outside 0..{self.size - 1}")

    @property
    def codec(self) -> TupleCodec:
        return TupleCodec(self.size, self.arity)

    def eval(self, args: Sequence[int]) -> int:
        return self.values[self.codec.encode(args)]


def table_from_function(arity: int, size: int, fn) -> OpTable:
    """Materialize fn over all argument tuples in lexicographic order."""
    values = tuple(fn(*args) for args in itertools.product(range(size), repeat=arity))
    return OpTable(arity, size, values)


class AssociativityWitness(NamedTuple):
    """Arguments where two adjacent nestings disagree.

    position is 1-based: nesting the inner application at argument offset
    `position` and at `position + 1` give different results.
    """

    args: tuple[int, ...]
    position: int


class SymmetryWitness(NamedTuple):
    """Two argument tuples, equal as multisets, with different values."""

    args: tuple[int, ...]
    swapped: tuple[int, ...]


def _nested_value(values, size, arity, args, start):
    # value of F(args[:start], F(args[start:start+n]), args[start+n:])
    inner = 0
    for k in range(start, start + arity):
        inner = inner * size + args[k]
    code = 0
    for k in range(start):
        code = code * size + args[k]
    code = code * size + values[inner]
    for k in range(start + arity, len(args)):
        code = code * size + args[k]
    return values[code]


def _assoc_scan_py(t: OpTable, starts: Sequence[int]) -> AssociativityWitness | None:
    m, n = t.size, t.arity
    values = t.values
    width = 2 * n - 1
    for s in starts:
        for args in itertools.product(range(m), repeat=width):
            if _nested_value(values, m, n, args, s) != _nested_value(values, m, n, args, s + 1):
                return AssociativityWitness(args, s + 1)
    return None


@lru_cache(maxsize=4)
def _digit_matrix(size: int, width: int) -> "np.ndarray":
    codes = np.arange(size**width, dtype=np.int64)
    cols = [(codes // (size ** (width - 1 - k))) % size for k in range(width)]
    return np.stack(cols, axis=1)


def _assoc_scan_np(t: OpTable, starts: Sequence[int]) -> AssociativityWitness | None:
    m, n = t.size, t.arity
    width = 2 * n - 1
    digits = _digit_matrix(m, width)
    flat = np.asarray(t.values, dtype=np.int64)
    cache: dict[int, "np.ndarray"] = {}

    def nested(s):
        if s not in cache:
            inner = digits[:, s : s + n] @ np.asarray(_strides(m, n), dtype=np.int64)
            outer = flat[inner] * (m ** (n - 1 - s))
            for k in range(s):
                outer = outer + digits[:, k] * (m ** (n - 1 - k))
            for k in range(s + n, width):
                outer = outer + digits[:, k] * (m ** (2 * n - 2 - k))
            cache[s] = flat[outer]
        return cache[s]

    for s in starts:
        mismatch = nested(s) != nested(s + 1)
        if mismatch.any():
            row = int(np.argmax(mismatch))
            return AssociativityWitness(tuple(int(d) for d in digits[row]), s + 1)
    return None


def check_associative(t: OpTable, use_symmetry: bool | None = None) -> AssociativityWitness | None:
    """Return None if t associates, else the first counterexample found.

    The scan compares adjacent nestings over all (2n-1)-argument tuples,
    rightmost nesting pair first (matching the right-nested extension
    recursion), tuples in lexicographic order within each pair.

    For symmetric tables one nesting comparison suffices; use_symmetry=True
    skips the rest (sound only if the table is symmetric), False forces the
    full scan, and None checks symmetry first and decides.
    """
    if use_symmetry is None:
        use_symmetry = check_symmetric(t) is None
    if use_symmetry:
        starts: list[int] = [t.arity - 2]
    else:
        starts = list(range(t.arity - 2, -1, -1))
    if t.size ** (2 * t.arity - 1) >= _VECTOR_SCAN_THRESHOLD:
        return _assoc_scan_np(t, starts)
    return _assoc_scan_py(t, starts)


def check_symmetric(t: OpTable) -> SymmetryWitness | None:
    """Return None if t is invariant under argument permutations.

    Adjacent transpositions generate all permutations, so only they are
    checked: transposition positions left to right, tuples lexicographically
    within each position.
    """
    m, n = t.size, t.arity
    values = t.values
    for pos in range(n - 1):
        for args in itertools.product(range(m), repeat=n):
            if args[pos] == args[pos + 1]:
                continue
            swapped = args[:pos] + (args[pos + 1], args[pos]) + args[pos + 2 :]
            code = 0
            swapped_code = 0
            for a, b in zip(args, swapped):
                code = code * m + a
                swapped_code = swapped_code * m + b
            if values[code] != values[swapped_code]:
                return SymmetryWitness(args, swapped)
    return None


def check_idempotent(t: OpTable) -> int | None:
    """Return None if t(x, ..., x) = x for every x, else the least bad x."""
    diag = sum(_strides(t.size, t.arity))
    for x in range(t.size):
        if t.values[x * diag] != x:
            return x
    return None


def band_violation(t: OpTable):
    """First failing band law as (name, witness), or None if t is a band."""
    sym = check_symmetric(t)
    assoc = check_associative(t, use_symmetry=sym is None)
    if assoc is not None:
        return ("associative", assoc)
    if sym is not None:
        return ("symmetric", sym)
    idem = check_idempotent(t)
    if idem is not None:
        return ("idempotent", idem)
    return None


def require_band(t: OpTable) -> None:
    """Raise DomainError naming the first violated band law."""
    from .errors import DomainError

    found = band_violation(t)
    if found is not None:
        law, witness = found
        raise DomainError(f"operation is not {law}: witness {witness}", axiom=law, witness=witness)


def extend(t: OpTable, times: int, max_cells: int = EXTEND_CELL_BUDGET) -> OpTable:
    """Iterated extension: fold `times` nested applications into one table.

    The result has arity times*(n-1) + 1 and agrees with right-nesting t
    into itself; times=1 returns t unchanged.  Extension preserves
    associativity, symmetry, and idempotency.
    """
    if not isinstance(times, int) or times < 1:
        raise InputError(f"extension count must be a positive integer, got {times!r}")
    m, n = t.size, t.arity
    out_arity = times * (n - 1) + 1
    if m > 1 and m**out_arity > max_cells:
        raise ResourceError(
            f"extension table would need {m}**{out_arity} cells (budget {max_cells})"
        )
    inner = t.values
    current = list(t.values)
    for _ in range(times - 1):
        grown = []
        append = grown.append
        # grown[P * m**n + Q] = current[P * m + inner[Q]]
        for prefix in range(len(current) // m):
            base = prefix * m
            for v in inner:
                append(current[base + v])
        current = grown
    return OpTable(out_arity, m, tuple(current))


def neutral_elements(t: OpTable) -> frozenset[int]:
    """Elements e with t(e, ..., e, x, e, ..., e) = x for x in every slot."""
    m, n = t.size, t.arity
    values = t.values
    strides = _strides(m, n)
    e_all = sum(strides)
    out = []
    for e in range(m):
        base = e * e_all
        if all(
            values[base + (x - e) * strides[slot]] == x
            for slot in range(n)
            for x in range(m)
        ):
            out.append(e)
    return frozenset(out)


def relabel(t: OpTable, perm: Sequence[int]) -> OpTable:
    """Conjugate t by a permutation of the carrier."""
    m = t.size
    if sorted(perm) != list(range(m)):
        raise InputError(f"relabeling {perm!r} is not a permutation of 0..{m - 1}")
    values = [0] * len(t.values)
    for args in itertools.product(range(m), repeat=t.arity):
        code = 0
        new_code = 0
        for a in args:
            code = code * m + a
            new_code = new_code * m + perm[a]
        values[new_code] = perm[t.values[code]]
    return OpTable(t.arity, m, tuple(values))


def canonical_form(t: OpTable, size_limit: int = CANONICAL_SIZE_LIMIT) -> OpTable:
    """Least relabeling of t: the values-lexicographic minimum over all
    carrier permutations.  Two tables are isomorphic iff their canonical
    forms are equal."""
    m = t.size
    if m > size_limit:
        raise ResourceError(f"canonical form scans {m}! relabelings (limit {size_limit}!)")
    if m == 1:
        return t
    values = t.values
    arg_rows = list(itertools.product(range(m), repeat=t.arity))
    best = None
    for perm in itertools.permutations(range(m)):
        inv = [0] * m
        for i, p in enumerate(perm):
            inv[p] = i
        # relabeled[code(args)] = perm[values[code(inv(args))]], compared
        # against the best candidate cell by cell so losers abort early
        cand = []
        undecided = best is not None
        worse = False
        for row in arg_rows:
            code = 0
            for d in row:
                code = code * m + inv[d]
            v = perm[values[code]]
            if undecided:
                b = best[len(cand)]
                if v > b:
                    worse = True
                    break
                if v < b:
                    undecided = False
            cand.append(v)
        if not worse:
            best = cand
    return OpTable(t.arity, m, tuple(best))


def default_labels(size: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(size))


def table_to_doc(t: OpTable, labels: Sequence[str] | None = None) -> dict:
    """JSON-ready document: {"arity", "elements", "values"}."""
    if labels is None:
        labels = default_labels(t.size)
    labels = tuple(labels)
    if len(labels) != t.size:
        raise InputError(f"{len(labels)} labels for {t.size} elements")
    return {"arity": t.arity, "elements": list(labels), "values": list(t.values)}


def table_from_doc(doc) -> tuple[OpTable, tuple[str, ...]]:
    """Parse a table document; returns the table and its element labels."""
    if not isinstance(doc, dict):
        raise InputError("table document must be a JSON object")
    missing = {"arity", "elements", "values"} - doc.keys()
    if missing:
        raise InputError(f"table document missing keys: {sorted(missing)}")
    arity = doc["arity"]
    elements = doc["elements"]
    values = doc["values"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise InputError("elements must be a list of strings")
    if len(set(elements)) != len(elements):
        raise InputError("element labels must be distinct")
    if not isinstance(values, list):
        raise InputError("values must be a list")
    if not isinstance(arity, int) or isinstance(arity, bool):
        raise InputError("arity must be an integer")
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"table value {v!r} is not an integer")
    return OpTable(arity, len(elements), tuple(values)), tuple(elements)


def table_to_json(t: OpTable, labels: Sequence[str] | None = None) -> str:
    return json.dumps(table_to_doc(t, labels), separators=(", ", ": "))


def table_from_json(text: str) -> tuple[OpTable, tuple[str, ...]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return table_from_doc(doc)
