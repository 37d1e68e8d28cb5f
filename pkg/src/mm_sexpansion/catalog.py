"""Exhaustive catalogs of semigroups up to isomorphism (and anti-isomorphism).

Enumeration is an orderly generation: cells are filled depth-first in row-major
order, every assignment is checked against all fully determined associativity
triples it takes part in, and each completed row is compared with its images
under every relabeling (and transposed relabeling). A partial table is dropped as
soon as some image is provably smaller, so only lexicographically minimal
representatives survive to the leaves.
"""

import logging
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import StrEnum, unique
from functools import cached_property
from pathlib import Path

from mm_result import Result

from .cayley import CayleyTable, is_associative, is_commutative
from .errors import FormatError, NotAssociativeError, PreconditionError
from .isomorphism import Permutation, canonical_form, find_anti_isomorphism, find_isomorphism, permutation_pairs

logger = logging.getLogger(__name__)

MAX_ORDER = 6
CATALOG_HEADER = "semigroup-catalog v1"


@unique
class Equivalence(StrEnum):
    """Equivalence used to identify semigroups."""

    ISO = "iso"
    ISO_ANTI = "iso-anti"

    @property
    def include_anti(self) -> bool:
        """True when anti-isomorphic tables are identified."""
        return self is Equivalence.ISO_ANTI


@dataclass(frozen=True)
class CatalogMatch:
    """Result of a catalog lookup: the id and a witness mapping the catalog table onto the query."""

    id: int
    witness: Permutation
    anti: bool = False


@dataclass(frozen=True)
class Catalog:
    """Ordered list of pairwise non-equivalent semigroup tables of one order, each carrying its id."""

    order: int
    equivalence: Equivalence
    tables: tuple[CayleyTable, ...]

    def __post_init__(self) -> None:
        """Check orders and that ids are present and strictly increasing."""
        previous = 0
        for t in self.tables:
            if t.order != self.order:
                raise PreconditionError(f"table of order {t.order} in a catalog of order {self.order}")
            if t.id is None or t.id <= previous:
                raise PreconditionError(f"catalog ids must be strictly increasing, got {t.id} after {previous}")
            previous = t.id

    def __len__(self) -> int:
        """Number of tables."""
        return len(self.tables)

    def __iter__(self) -> Iterator[CayleyTable]:
        """Iterate tables in id order."""
        return iter(self.tables)

    @property
    def ids(self) -> list[int]:
        """Catalog ids in order."""
        return [t.id for t in self.tables if t.id is not None]

    @cached_property
    def _by_id(self) -> dict[int, CayleyTable]:
        return {t.id: t for t in self.tables if t.id is not None}

    @cached_property
    def _by_canonical_form(self) -> dict[tuple[int, ...], CayleyTable]:
        include_anti = self.equivalence.include_anti
        return {canonical_form(t, include_anti).flat(): t for t in self.tables}

    def find_class(self, t: CayleyTable) -> CayleyTable | None:
        """Entry with the same canonical form as t under the catalog equivalence."""
        return self._by_canonical_form.get(canonical_form(t, self.equivalence.include_anti).flat())

    def get(self, id: int) -> CayleyTable:  # noqa: A002
        """Table with the given id."""
        try:
            return self._by_id[id]
        except KeyError:
            raise PreconditionError(f"no semigroup with id {id} in the order-{self.order} catalog") from None


class _OrderlySearch:
    """Depth-first table fill over 0-based labels, -1 marking undetermined cells."""

    def __init__(self, n: int, include_anti: bool, commutative: bool) -> None:
        self.n = n
        self.commutative = commutative
        self.t = [-1] * (n * n)
        if commutative:
            self.positions = [r * n + c for r in range(n) for c in range(r, n)]
        else:
            self.positions = list(range(n * n))
        self.transforms: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        identity = tuple(range(n))
        for sigma, inv in permutation_pairs(n):
            if sigma != identity:
                self.transforms.append((sigma, tuple(inv[q // n] * n + inv[q % n] for q in range(n * n))))
            if include_anti and not commutative:
                self.transforms.append((sigma, tuple(inv[q % n] * n + inv[q // n] for q in range(n * n))))
        self.found: list[tuple[int, ...]] = []

    def _consistent(self, a: int, b: int) -> bool:
        """Check every fully determined associativity triple that uses cell (a, b)."""
        n, t = self.n, self.t
        v = t[a * n + b]
        for z in range(n):
            # (a·b)·z = a·(b·z)
            left = t[v * n + z]
            bz = t[b * n + z]
            if left >= 0 and bz >= 0:
                right = t[a * n + bz]
                if right >= 0 and left != right:
                    return False
            # (z·a)·b = z·(a·b)
            za = t[z * n + a]
            right = t[z * n + v]
            if za >= 0 and right >= 0:
                left = t[za * n + b]
                if left >= 0 and left != right:
                    return False
        for x in range(n):
            for y in range(n):
                # (x·y)·b with x·y = a equals x·(y·b)
                if t[x * n + y] == a:
                    yb = t[y * n + b]
                    if yb >= 0:
                        right = t[x * n + yb]
                        if right >= 0 and right != v:
                            return False
                # a·(x·y) with x·y = b equals (a·x)·y
                if t[x * n + y] == b:
                    ax = t[a * n + x]
                    if ax >= 0:
                        left = t[ax * n + y]
                        if left >= 0 and left != v:
                            return False
        return True

    def _canonical(self, filled: int) -> bool:
        """False iff some relabeling gives a provably smaller table on the first `filled` cells."""
        t = self.t
        for sigma, src in self.transforms:
            for q in range(filled):
                s = t[src[q]]
                if s < 0:
                    break
                image = sigma[s]
                if image != t[q]:
                    if image < t[q]:
                        return False
                    break
        return True

    def _assign(self, a: int, b: int, v: int) -> bool:
        n = self.n
        self.t[a * n + b] = v
        if self.commutative and a != b:
            self.t[b * n + a] = v
            return self._consistent(a, b) and self._consistent(b, a)
        return self._consistent(a, b)

    def _clear(self, a: int, b: int) -> None:
        n = self.n
        self.t[a * n + b] = -1
        if self.commutative:
            self.t[b * n + a] = -1

    def _descend(self, idx: int, stop: int, sink: Callable[[], None]) -> None:
        if idx == stop:
            sink()
            return
        n = self.n
        p = self.positions[idx]
        a, b = divmod(p, n)
        row_end = b == n - 1
        for v in range(n):
            if self._assign(a, b, v) and (not row_end or self._canonical((a + 1) * n)):
                self._descend(idx + 1, stop, sink)
            self._clear(a, b)

    def first_rows(self) -> list[list[int]]:
        """States after the first row is filled, in lexicographic order."""
        states: list[list[int]] = []
        self._descend(0, self.n, lambda: states.append(list(self.t)))
        return states

    def complete(self, state: list[int]) -> list[tuple[int, ...]]:
        """All canonical semigroup tables extending a first-row state."""
        self.t = list(state)
        self.found = []
        self._descend(self.n, len(self.positions), lambda: self.found.append(tuple(self.t)))
        return self.found


def _complete_prefix(args: tuple[int, bool, bool, list[int]]) -> list[tuple[int, ...]]:
    n, include_anti, commutative, state = args
    return _OrderlySearch(n, include_anti, commutative).complete(state)


def enumerate_catalog(
    order: int,
    equivalence: Equivalence = Equivalence.ISO_ANTI,
    *,
    commutative_only: bool = False,
    workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> Catalog:
    """Enumerate every semigroup of the given order up to the chosen equivalence.

    Ids 1..Q follow the lexicographic order of the canonical tables. With
    ``commutative_only`` the search is restricted to symmetric tables and ids
    number the commutative list itself; use ``filter_commutative`` on a full
    catalog to keep full-catalog ids.

    Args:
        order: Semigroup order, 1..6.
        equivalence: Identify isomorphic tables only, or also anti-isomorphic ones.
        commutative_only: Search symmetric tables only.
        workers: Number of processes; first-row prefixes are distributed among them.
        progress: Called with (done, total) after each prefix completes.

    """
    if not 1 <= order <= MAX_ORDER:
        raise PreconditionError(f"catalog order must be in 1..{MAX_ORDER}, got {order}")
    include_anti = equivalence.include_anti
    prefixes = _OrderlySearch(order, include_anti, commutative_only).first_rows()
    logger.debug("order %d: %d canonical first rows", order, len(prefixes))
    tasks = [(order, include_anti, commutative_only, state) for state in prefixes]
    found: list[tuple[int, ...]] = []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            for done, batch in enumerate(executor.map(_complete_prefix, tasks), start=1):
                found.extend(batch)
                if progress:
                    progress(done, len(tasks))
    else:
        for done, task in enumerate(tasks, start=1):
            found.extend(_complete_prefix(task))
            if progress:
                progress(done, len(tasks))
    found.sort()
    tables = tuple(CayleyTable.from_flat(flat, zero_based=True, id=i) for i, flat in enumerate(found, start=1))
    logger.info("order %d (%s%s): %d semigroups", order, equivalence, ", commutative" if commutative_only else "", len(tables))
    return Catalog(order=order, equivalence=equivalence, tables=tables)


def filter_commutative(c: Catalog) -> Catalog:
    """Subcatalog of the commutative tables, keeping their ids."""
    return Catalog(order=c.order, equivalence=c.equivalence, tables=tuple(t for t in c.tables if is_commutative(t)))


def lookup(c: Catalog, t: CayleyTable) -> CatalogMatch | None:
    """Find the catalog entry equivalent to t and a witness σ with permute_table(entry, σ) = t.

    When the equivalence admits anti-isomorphisms and no isomorphism exists, the
    witness maps the transposed entry onto t and ``anti`` is set.
    """
    if t.order != c.order:
        return None
    if not is_associative(t):
        raise NotAssociativeError("only associative tables can be looked up in a catalog")
    entry = c.find_class(t)
    if entry is None or entry.id is None:
        return None
    witness = find_isomorphism(entry, t)
    if witness is not None:
        return CatalogMatch(id=entry.id, witness=witness)
    witness = find_anti_isomorphism(entry, t)
    if witness is None:
        return None
    return CatalogMatch(id=entry.id, witness=witness, anti=True)


def catalog_to_text(c: Catalog) -> str:
    """Serialize to the catalog text format."""
    lines = [CATALOG_HEADER, f"order {c.order} count {len(c)} equivalence {c.equivalence}"]
    for t in c.tables:
        lines.append("")
        lines.append(f"id {t.id}")
        lines.extend(" ".join(str(v) for v in row) for row in t.entries)
    return "\n".join(lines) + "\n"


def catalog_to_dict(c: Catalog) -> dict[str, object]:
    """JSON-ready mirror of the catalog file."""
    return {
        "order": c.order,
        "count": len(c),
        "equivalence": str(c.equivalence),
        "tables": [{"id": t.id, "entries": [list(row) for row in t.entries]} for t in c.tables],
    }


def parse_catalog(text: str) -> Catalog:
    """Parse the catalog text format, reporting the first malformed line."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != CATALOG_HEADER:
        raise FormatError(1, f"expected header '{CATALOG_HEADER}'")
    if len(lines) < 2:
        raise FormatError(2, "missing 'order <n> count <Q> equivalence <iso|iso-anti>' line")
    parts = lines[1].split()
    if len(parts) != 6 or parts[0] != "order" or parts[2] != "count" or parts[4] != "equivalence":
        raise FormatError(2, f"expected 'order <n> count <Q> equivalence <iso|iso-anti>', got '{lines[1]}'")
    try:
        order, count, equivalence = int(parts[1]), int(parts[3]), Equivalence(parts[5])
    except ValueError as e:
        raise FormatError(2, str(e)) from None
    if not 1 <= order <= MAX_ORDER:
        raise FormatError(2, f"order must be in 1..{MAX_ORDER}, got {order}")

    tables: list[CayleyTable] = []
    no = 2
    while no < len(lines):
        line = lines[no].strip()
        no += 1
        if not line:
            continue
        head = line.split()
        if len(head) != 2 or head[0] != "id" or not head[1].isdigit():
            raise FormatError(no, f"expected 'id <a>', got '{line}'")
        rows = []
        for _ in range(order):
            if no >= len(lines):
                raise FormatError(no + 1, f"record id {head[1]} truncated: expected {order} rows")
            row_text = lines[no].strip()
            no += 1
            try:
                row = tuple(int(v) for v in row_text.split())
            except ValueError:
                raise FormatError(no, f"non-integer entry in '{row_text}'") from None
            if len(row) != order or not all(1 <= v <= order for v in row):
                raise FormatError(no, f"expected {order} labels in 1..{order}, got '{row_text}'")
            rows.append(row)
        table = CayleyTable(tuple(rows), id=int(head[1]))
        if tables and table.id is not None and tables[-1].id is not None and table.id <= tables[-1].id:
            raise FormatError(no - order, f"id {table.id} is not greater than the previous id {tables[-1].id}")
        if not is_associative(table):
            raise FormatError(no - order, f"record id {table.id} is not associative")
        tables.append(table)
    if len(tables) != count:
        raise FormatError(len(lines), f"header announces {count} records, found {len(tables)}")
    return Catalog(order=order, equivalence=equivalence, tables=tuple(tables))


def save(c: Catalog, path: Path) -> None:
    """Write the catalog in the text format (UTF-8, LF endings)."""
    path.expanduser().write_text(catalog_to_text(c), encoding="utf-8", newline="\n")


def load(path: Path) -> Result[Catalog]:
    """Read a catalog file."""
    try:
        return Result.ok(parse_catalog(path.expanduser().read_text(encoding="utf-8")))
    except FormatError as e:
        return Result.err(("format_error", e), context={"line": e.line, "cause": e.cause})
    except Exception as e:
        return Result.err(e)
