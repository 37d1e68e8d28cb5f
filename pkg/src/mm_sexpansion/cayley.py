"""Finite magmas as Cayley tables: predicates, selectors and the semigroup metric.

Element labels are 1..n everywhere outside this module's internals; the table
``entries[α-1][β-1]`` holds the label of ``α·β``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Self

from mm_result import Result

from .errors import DimensionMismatchError, FormatError, InvalidTableError, NotAssociativeError


@dataclass(frozen=True, slots=True)
class CayleyTable:
    """Multiplication table of an order-n magma over the labels 1..n.

    ``id`` is an optional catalog identifier and takes no part in equality.
    """

    entries: tuple[tuple[int, ...], ...]
    id: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Normalize rows to tuples and validate shape and labels."""
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise InvalidTableError("table must have at least one row")
        for r, row in enumerate(rows, start=1):
            if len(row) != n:
                raise InvalidTableError(f"row {r} has {len(row)} entries, expected {n}")
            for v in row:
                if not 1 <= v <= n:
                    raise InvalidTableError(f"row {r} has label {v} outside 1..{n}")
        if self.id is not None and self.id < 1:
            raise InvalidTableError(f"catalog id must be positive, got {self.id}")

    @classmethod
    def from_flat(cls, flat: list[int] | tuple[int, ...], *, zero_based: bool = False, id: int | None = None) -> Self:  # noqa: A002
        """Build a table from its row-major flattening."""
        n = round(len(flat) ** 0.5)
        if n * n != len(flat):
            raise InvalidTableError(f"flattened table of length {len(flat)} is not square")
        shift = 1 if zero_based else 0
        return cls(tuple(tuple(v + shift for v in flat[r * n : (r + 1) * n]) for r in range(n)), id=id)

    @property
    def order(self) -> int:
        """Number of elements."""
        return len(self.entries)

    def product(self, a: int, b: int) -> int:
        """Return the label of a·b."""
        return self.entries[a - 1][b - 1]

    def flat(self) -> tuple[int, ...]:
        """Row-major flattening of the labels."""
        return tuple(v for row in self.entries for v in row)

    def zero_based(self) -> list[int]:
        """Row-major flattening with labels shifted to 0..n-1."""
        return [v - 1 for row in self.entries for v in row]

    def transpose(self) -> CayleyTable:
        """Table of the opposite magma, (α·β)ᵒᵖ = β·α."""
        return CayleyTable(tuple(zip(*self.entries, strict=True)), id=self.id)

    def with_id(self, id: int | None) -> CayleyTable:  # noqa: A002
        """Same entries under another catalog id."""
        return CayleyTable(self.entries, id=id)

    def to_text(self) -> str:
        """Serialize to the single-table text format."""
        lines = [f"order {self.order}", *(" ".join(str(v) for v in row) for row in self.entries)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, slots=True)
class Selector:
    """Selector K_ab^c of a table: ``data[a-1][b-1][c-1]`` is 1 iff a·b = c."""

    order: int
    data: tuple[tuple[tuple[int, ...], ...], ...]

    def box(self, a: int) -> tuple[tuple[int, ...], ...]:
        """Adjoint matrix of λ_a: rows b, columns c."""
        return self.data[a - 1]

    def value(self, a: int, b: int, c: int) -> int:
        """Return K_ab^c."""
        return self.data[a - 1][b - 1][c - 1]


@dataclass(frozen=True, slots=True)
class MetricMatrix:
    """Square matrix of exact rationals, used for g^S, Killing metrics and expanded metrics."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        """Normalize entries to Fractions and check squareness."""
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        for row in rows:
            if len(row) != len(rows):
                raise DimensionMismatchError("metric matrix must be square")

    @classmethod
    def zeros(cls, dim: int) -> Self:
        """Zero matrix of the given size."""
        return cls(tuple((Fraction(0),) * dim for _ in range(dim)))

    @classmethod
    def diagonal(cls, values: list[int] | list[Fraction]) -> Self:
        """Diagonal matrix with the given entries."""
        n = len(values)
        return cls(tuple(tuple(Fraction(values[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        """Matrix size."""
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        """Entry at 1-based (i, j)."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def transpose(self) -> MetricMatrix:
        """Transposed matrix."""
        return MetricMatrix(tuple(zip(*self.entries, strict=True)))

    def is_symmetric(self) -> bool:
        """True iff entries[i][j] = entries[j][i] for all i, j."""
        n = self.dim
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i + 1, n))

    def scaled(self, factor: Fraction | int) -> MetricMatrix:
        """Entrywise multiple."""
        return MetricMatrix(tuple(tuple(v * factor for v in row) for row in self.entries))


def kron_metric(outer: MetricMatrix, inner: MetricMatrix) -> MetricMatrix:
    """Kronecker product with the outer index slow: result[(i,a),(j,b)] = outer[i][j]·inner[a][b].

    Flat index of (i, a) is (i-1)·inner.dim + a.
    """
    m = inner.dim
    dim = outer.dim * m
    rows = []
    for p in range(dim):
        i, a = divmod(p, m)
        rows.append(tuple(outer.entries[i][q // m] * inner.entries[a][q % m] for q in range(dim)))
    return MetricMatrix(tuple(rows))


def is_associative(t: CayleyTable) -> bool:
    """True iff (α·β)·γ = α·(β·γ) for all α, β, γ."""
    e = t.entries
    n = t.order
    for a in range(n):
        row_a = e[a]
        for b in range(n):
            ab = row_a[b] - 1
            row_ab = e[ab]
            row_b = e[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c] - 1]:
                    return False
    return True


def is_commutative(t: CayleyTable) -> bool:
    """True iff the table is symmetric."""
    e = t.entries
    return all(e[a][b] == e[b][a] for a in range(t.order) for b in range(a + 1, t.order))


def find_zero(t: CayleyTable) -> int | None:
    """Return the two-sided zero element, or None when there is none."""
    for z in range(1, t.order + 1):
        if all(t.entries[z - 1][x] == z and t.entries[x][z - 1] == z for x in range(t.order)):
            return z
    return None


def tables_equal(a: CayleyTable, b: CayleyTable) -> bool:
    """True iff both tables have the same order and identical entries."""
    return a.entries == b.entries


def get_selector(t: CayleyTable) -> Selector:
    """Selector K_ab^c of the table."""
    n = t.order
    data = tuple(
        tuple(tuple(1 if t.entries[a][b] == c + 1 else 0 for c in range(n)) for b in range(n)) for a in range(n)
    )
    return Selector(order=n, data=data)


def semigroup_metric(t: CayleyTable) -> MetricMatrix:
    """Semigroup metric g^S_αβ = Σ_{γ,λ} K_αγ^λ K_βλ^γ.

    Since K is functional, the double sum counts the γ with β·(α·γ) = γ.
    """
    if not is_associative(t):
        raise NotAssociativeError("semigroup metric requires an associative table")
    e = t.entries
    n = t.order
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            row.append(Fraction(sum(1 for c in range(n) if e[b][e[a][c] - 1] == c + 1)))
        rows.append(tuple(row))
    return MetricMatrix(tuple(rows))


def show_selector(t: CayleyTable) -> str:
    """Render the selector boxes, one adjoint matrix per element."""
    selector = get_selector(t)
    lines = [
        f"For the considered semigroup of order {t.order}, here we print the {t.order} matrices K_{{a,b}}^{{c}}=M_{{b,c}}",
        f"(with a=1,...,{t.order}) which gives the adjoint representation for the elements of the semigroup.",
    ]
    for a in range(1, t.order + 1):
        lines.append("*********")
        lines.append(f"Adj [lambda_{{{a}}}] = ( K_{{{a},b}}^{{c}} ) =")
        lines.extend(" " + " ".join(str(v) for v in row) for row in selector.box(a))
    return "\n".join(lines)


def semigroup_se(n: int) -> CayleyTable:
    """S_E^(N) of order N+2: λ_α·λ_β = λ_{α+β} when α+β ≤ N+1, else λ_{N+1}. Label λ_k is k+1."""
    if n < 0:
        raise InvalidTableError(f"S_E family parameter must be non-negative, got {n}")
    top = n + 1
    return CayleyTable(tuple(tuple(min(a + b, top) + 1 for b in range(top + 1)) for a in range(top + 1)))


def semigroup_sm(n: int) -> CayleyTable:
    """S_M^(N) of order N+1: λ_α·λ_β = λ_{α+β} when α+β ≤ N, else λ_{α+β-N}. Label λ_k is k+1."""
    if n < 1:
        raise InvalidTableError(f"S_M family parameter must be positive, got {n}")

    def mul(a: int, b: int) -> int:
        s = a + b
        return s if s <= n else s - n

    return CayleyTable(tuple(tuple(mul(a, b) + 1 for b in range(n + 1)) for a in range(n + 1)))


def cyclic(n: int) -> CayleyTable:
    """Cyclic group Z_n with identity labelled 1."""
    if n < 1:
        raise InvalidTableError(f"cyclic group order must be positive, got {n}")
    return CayleyTable(tuple(tuple((a + b) % n + 1 for b in range(n)) for a in range(n)))


def family_table(spec: str) -> CayleyTable:
    """Build a family member from ``se:N``, ``sm:N`` or ``z:N``."""
    name, _, param = spec.partition(":")
    builders = {"se": semigroup_se, "sm": semigroup_sm, "z": cyclic}
    if name not in builders or not param.strip().isdigit():
        raise InvalidTableError(f"unknown family '{spec}', expected se:N, sm:N or z:N")
    return builders[name](int(param))


def parse_table(text: str) -> CayleyTable:
    """Parse the single-table text format: ``order <n>`` then n rows of n labels.

    Blank lines and lines starting with ``#`` are ignored.
    """
    lines = [(no, line.strip()) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line and not line.startswith("#")]
    if not lines:
        raise FormatError(1, "empty input, expected 'order <n>'")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "order" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise FormatError(no, f"expected 'order <n>', got '{header}'")
    n = int(parts[1])
    rows = []
    for no, line in lines[1 : n + 1]:
        try:
            row = [int(v) for v in line.split()]
        except ValueError:
            raise FormatError(no, f"non-integer entry in '{line}'") from None
        if len(row) != n or not all(1 <= v <= n for v in row):
            raise FormatError(no, f"expected {n} labels in 1..{n}, got '{line}'")
        rows.append(tuple(row))
    if len(rows) < n:
        last = lines[-1][0]
        raise FormatError(last + 1, f"table truncated: expected {n} rows, got {len(rows)}")
    if len(lines) > n + 1:
        raise FormatError(lines[n + 1][0], "unexpected content after the table")
    return CayleyTable(tuple(rows))


def load_table(path: Path) -> Result[CayleyTable]:
    """Load a table from a single-table text file."""
    try:
        return Result.ok(parse_table(path.expanduser().read_text(encoding="utf-8")))
    except FormatError as e:
        return Result.err(("format_error", e), context={"line": e.line, "cause": e.cause})
    except Exception as e:
        return Result.err(e)
