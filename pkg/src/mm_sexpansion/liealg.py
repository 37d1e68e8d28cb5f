"""Finite-dimensional Lie algebras given by exact structure constants.

Analyses (Jacobi defect, Killing-Cartan metric, determinants, derived and lower
central series) run in exact rational arithmetic; floating point is confined to
``eigen_signature``.
"""

import json
import math
from collections import defaultdict
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Self

import numpy as np
from mm_result import Result
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .cayley import MetricMatrix
from .errors import (
    AntisymmetryError,
    DimensionMismatchError,
    FormatError,
    FrozenAlgebraError,
    GradingError,
    NotLieAlgebraError,
    PreconditionError,
)
from .output import format_matrix
from .resonance import Subset

DEFAULT_TOLERANCE = 1e-9

type Vector = list[Fraction]


class StructureConstants:
    """Structure constants C_ij^k of a Lie algebra, antisymmetric in (i, j).

    Writes go through ``set_bracket`` until ``freeze`` is called; afterwards the
    object is read-only. Indices are 1-based.
    """

    def __init__(self, dim: int, name: str = "") -> None:
        """Create an abelian algebra of the given dimension, open for writes."""
        if dim < 1:
            raise PreconditionError(f"algebra dimension must be positive, got {dim}")
        self._dim = dim
        self.name = name
        # (i, j) -> {k: C_ij^k}, 0-based, both orientations stored
        self._brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._frozen = False

    @property
    def dim(self) -> int:
        """Number of generators."""
        return self._dim

    @property
    def frozen(self) -> bool:
        """True once the builder phase is over."""
        return self._frozen

    def freeze(self) -> Self:
        """End the builder phase."""
        self._frozen = True
        return self

    def _check_index(self, *indices: int) -> None:
        for i in indices:
            if not 1 <= i <= self._dim:
                raise PreconditionError(f"generator index {i} outside 1..{self._dim}")

    def set_bracket(self, i: int, j: int, k: int, value: Fraction | int) -> None:
        """Set C_ij^k = value and C_ji^k = -value."""
        if self._frozen:
            raise FrozenAlgebraError("structure constants are frozen")
        self._check_index(i, j, k)
        value = Fraction(value)
        if i == j:
            if value:
                raise AntisymmetryError(f"C_{i}{i}^{k} must vanish, got {value}")
            return
        for key, v in (((i - 1, j - 1), value), ((j - 1, i - 1), -value)):
            terms = self._brackets.setdefault(key, {})
            if v:
                terms[k - 1] = v
            else:
                terms.pop(k - 1, None)
                if not terms:
                    del self._brackets[key]

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Return C_ij^k."""
        self._check_index(i, j, k)
        return self._brackets.get((i - 1, j - 1), {}).get(k - 1, Fraction(0))

    def terms(self, i: int, j: int) -> dict[int, Fraction]:
        """Nonzero coefficients of [X_i, X_j] keyed by 1-based k."""
        return {k + 1: v for k, v in sorted(self._brackets.get((i - 1, j - 1), {}).items())}

    def independent_brackets(self) -> list[tuple[int, int, int, Fraction]]:
        """Nonzero (i, j, k, C_ij^k) with i < j, sorted."""
        return sorted(
            (i + 1, j + 1, k + 1, v) for (i, j), terms in self._brackets.items() if i < j for k, v in terms.items()
        )

    def is_zero(self) -> bool:
        """True iff every structure constant vanishes."""
        return not self._brackets

    def bracket(self, u: Vector, v: Vector) -> Vector:
        """Bracket of two coordinate vectors."""
        result = [Fraction(0)] * self._dim
        for (i, j), terms in self._brackets.items():
            coef = u[i] * v[j]
            if coef:
                for k, value in terms.items():
                    result[k] += coef * value
        return result

    def bracket_with(self, u: Mapping[int, Fraction], j: int) -> dict[int, Fraction]:
        """Sparse [u, X_j] for u given as {1-based index: coefficient}."""
        result: defaultdict[int, Fraction] = defaultdict(Fraction)
        for i, coef in u.items():
            for k, value in self._brackets.get((i - 1, j - 1), {}).items():
                result[k + 1] += coef * value
        return {k: v for k, v in result.items() if v}

    def __eq__(self, other: object) -> bool:
        """Same dimension and the same structure constants."""
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self._dim == other._dim and self._brackets == other._brackets

    def __hash__(self) -> int:
        """Hash of the independent brackets."""
        return hash((self._dim, tuple(self.independent_brackets())))

    def __repr__(self) -> str:
        """Short description."""
        return f"StructureConstants(dim={self._dim}, name={self.name!r}, brackets={len(self.independent_brackets())})"

    def to_dict(self) -> dict[str, object]:
        """JSON-ready form: dimension and independent brackets."""
        return {"dim": self._dim, "brackets": [[i, j, k, str(v)] for i, j, k, v in self.independent_brackets()]}


@dataclass(frozen=True, slots=True)
class SubspaceDecomposition:
    """Disjoint cover V0 ⊕ V1 of the generator indices."""

    v0: Subset
    v1: Subset

    def __post_init__(self) -> None:
        """Both parts must cover 1..n without overlap."""
        if self.v0.n != self.v1.n:
            raise GradingError("V0 and V1 must live in the same generator range")
        m0, m1 = set(self.v0.members), set(self.v1.members)
        if m0 & m1:
            raise GradingError(f"V0 and V1 overlap in {sorted(m0 & m1)}")
        if len(m0 | m1) != self.v0.n:
            raise GradingError(f"V0 and V1 do not cover 1..{self.v0.n}")

    @classmethod
    def of(cls, dim: int, v0: list[int], v1: list[int]) -> Self:
        """Build from plain index lists."""
        return cls(Subset(dim, tuple(v0)), Subset(dim, tuple(v1)))

    @property
    def dim(self) -> int:
        """Dimension of the graded algebra."""
        return self.v0.n

    def grade(self, i: int) -> int:
        """0 for generators in V0, 1 for generators in V1."""
        return 0 if i in self.v0 else 1


@dataclass(frozen=True, slots=True)
class EigenSignature:
    """Counts of positive, negative and zero eigenvalues."""

    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def dim(self) -> int:
        """Total number of eigenvalues."""
        return self.n_pos + self.n_neg + self.n_zero

    def __str__(self) -> str:
        """Triple notation (pos, neg, zero)."""
        return f"({self.n_pos},{self.n_neg},{self.n_zero})"


def set_bracket(g: StructureConstants, i: int, j: int, k: int, value: Fraction | int) -> None:
    """Set C_ij^k and its antisymmetric partner."""
    g.set_bracket(i, j, k, value)


def jacobi_defect(g: StructureConstants) -> Fraction:
    """Largest |[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]| component; 0 iff g is a Lie algebra."""
    n = g.dim
    worst = Fraction(0)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                total: defaultdict[int, Fraction] = defaultdict(Fraction)
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, value in g.bracket_with(g.terms(a, b), c).items():
                        total[m] += value
                worst = max(worst, *(abs(v) for v in total.values()), Fraction(0))
    return worst


def _adjoint(g: StructureConstants, i: int) -> dict[tuple[int, int], Fraction]:
    """Sparse ad(X_i) over 0-based (row l, column k) with entry C_ik^l."""
    result: dict[tuple[int, int], Fraction] = {}
    for k in range(1, g.dim + 1):
        for l, value in g.terms(i, k).items():  # noqa: E741
            result[(l - 1, k - 1)] = value
    return result


def killing_metric(g: StructureConstants) -> MetricMatrix:
    """Killing-Cartan metric g_ij = Σ_{k,l} C_ik^l C_jl^k = tr(ad X_i ad X_j)."""
    if jacobi_defect(g):
        raise NotLieAlgebraError("Killing metric requires structure constants satisfying the Jacobi identity")
    n = g.dim
    ads = [_adjoint(g, i) for i in range(1, n + 1)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            ad_j = ads[j]
            row.append(sum((v * ad_j.get((k, l), Fraction(0)) for (l, k), v in ads[i].items()), Fraction(0)))
        rows.append(tuple(row))
    return MetricMatrix(tuple(rows))


def determinant(m: MetricMatrix) -> Fraction:
    """Exact determinant by fraction-free elimination over the integers."""
    n = m.dim
    if n == 0:
        return Fraction(1)
    scale = math.lcm(*(v.denominator for row in m.entries for v in row))
    rows = [[ZZ(int(v * scale)) for v in row] for row in m.entries]
    det = DomainMatrix(rows, (n, n), ZZ).det()
    return Fraction(int(det), scale**n)


def _row_basis(vectors: list[Vector], dim: int) -> list[Vector]:
    """Reduced row echelon basis of the span of the vectors."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    matrix = DomainMatrix([[QQ(x.numerator, x.denominator) for x in v] for v in vectors], (len(vectors), dim), QQ)
    reduced, pivots = matrix.rref()
    rows = reduced.to_Matrix()
    return [[Fraction(int(rows[r, c].p), int(rows[r, c].q)) for c in range(dim)] for r in range(len(pivots))]


def rank(m: MetricMatrix) -> int:
    """Exact rank."""
    return len(_row_basis([list(row) for row in m.entries], m.dim))


def derived_series(g: StructureConstants) -> list[int]:
    """Dimensions of g, [g,g], [[g,g],[g,g]], ... until the sequence stabilizes."""
    n = g.dim
    current = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    dims = [n]
    while current:
        nxt = _row_basis([g.bracket(u, v) for idx, u in enumerate(current) for v in current[idx + 1 :]], n)
        if len(nxt) == len(current):
            break
        dims.append(len(nxt))
        current = nxt
    return dims


def lower_central_series(g: StructureConstants) -> list[int]:
    """Dimensions of g, [g,g], [g,[g,g]], ... until the sequence stabilizes."""
    n = g.dim
    basis = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    current = basis
    dims = [n]
    while current:
        nxt = _row_basis([g.bracket(x, v) for x in basis for v in current], n)
        if len(nxt) == len(current):
            break
        dims.append(len(nxt))
        current = nxt
    return dims


def eigenvalues(m: MetricMatrix) -> list[float]:
    """Ascending real spectrum of a symmetric matrix."""
    if m.dim == 0:
        return []
    array = np.array([[float(v) for v in row] for row in m.entries], dtype=np.float64)
    return [float(x) for x in np.linalg.eigvalsh(array)]


def eigen_signature(m: MetricMatrix, tolerance: float = DEFAULT_TOLERANCE) -> EigenSignature:
    """Sign counts of the spectrum; |λ| ≤ tolerance·max|entry| counts as zero."""
    if not m.is_symmetric():
        raise PreconditionError("eigen signature requires a symmetric matrix")
    values = eigenvalues(m)
    scale = max((abs(float(v)) for row in m.entries for v in row), default=0.0)
    tau = tolerance * scale
    n_pos = sum(1 for x in values if x > tau)
    n_neg = sum(1 for x in values if x < -tau)
    return EigenSignature(n_pos=n_pos, n_neg=n_neg, n_zero=len(values) - n_pos - n_neg)


def is_semisimple(g: StructureConstants) -> bool:
    """Cartan criterion: the Killing metric is nondegenerate."""
    return determinant(killing_metric(g)) != 0


def is_compact(g: StructureConstants, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Semisimple with a negative-definite Killing metric."""
    metric = killing_metric(g)
    if determinant(metric) == 0:
        return False
    return eigen_signature(metric, tolerance).n_neg == g.dim


def is_abelian(g: StructureConstants) -> bool:
    """All brackets vanish."""
    return g.is_zero()


def is_solvable(g: StructureConstants) -> bool:
    """The derived series reaches zero."""
    return derived_series(g)[-1] == 0


def is_nilpotent(g: StructureConstants) -> bool:
    """The lower central series reaches zero."""
    return lower_central_series(g)[-1] == 0


def check_subspace_structure(g: StructureConstants, d: SubspaceDecomposition) -> bool:
    """True iff [V0,V0] ⊂ V0, [V0,V1] ⊂ V1 and [V1,V1] ⊂ V0 at the level of structure constants."""
    if d.dim != g.dim:
        raise DimensionMismatchError(f"decomposition of {d.dim} generators for an algebra of dimension {g.dim}")
    for i, j, k, _ in g.independent_brackets():
        if (d.grade(i) + d.grade(j)) % 2 != d.grade(k):
            return False
    return True


def show_adjoint(g: StructureConstants) -> str:
    """Render ad(X_i) for every generator: rows j, columns k, entries C_ij^k."""
    n = g.dim
    lines = [
        f"For the considered Lie algebra of dimension {n}, we print the {n} matrices C_{{ij}}^{{k}}=M_{{jk}}",
        f"(with i=1,...,{n}) which gives the adjoint representation for the elements of the algebra.",
    ]
    for i in range(1, n + 1):
        lines.append("*********")
        lines.append(f"Adj [ X_{{{i}}} ] = ( C_{{{i},j}}^{{k}} ) =")
        box = [[g.c(i, j, k) for k in range(1, n + 1)] for j in range(1, n + 1)]
        lines.extend(" " + line for line in format_matrix(box).splitlines())
    return "\n".join(lines)


def sl2() -> StructureConstants:
    """sl(2) with [X1,X2] = -2X3, [X1,X3] = 2X2, [X2,X3] = 2X1."""
    g = StructureConstants(3, "sl2")
    g.set_bracket(1, 2, 3, -2)
    g.set_bracket(1, 3, 2, 2)
    g.set_bracket(2, 3, 1, 2)
    return g.freeze()


def sl2_chevalley() -> StructureConstants:
    """sl(2) in the Chevalley basis H, E, F: [H,E] = 2E, [H,F] = -2F, [E,F] = H."""
    g = StructureConstants(3, "sl2c")
    g.set_bracket(1, 2, 2, 2)
    g.set_bracket(1, 3, 3, -2)
    g.set_bracket(2, 3, 1, 1)
    return g.freeze()


def so3() -> StructureConstants:
    """so(3) with C_ij^k = ε_ijk."""
    g = StructureConstants(3, "so3")
    g.set_bracket(1, 2, 3, 1)
    g.set_bracket(2, 3, 1, 1)
    g.set_bracket(3, 1, 2, 1)
    return g.freeze()


def solv2() -> StructureConstants:
    """Two-dimensional solvable algebra [X1,X2] = X1."""
    g = StructureConstants(2, "solv2")
    g.set_bracket(1, 2, 1, 1)
    return g.freeze()


def abelian(dim: int) -> StructureConstants:
    """Abelian algebra of the given dimension."""
    return StructureConstants(dim, f"abelian{dim}").freeze()


@dataclass(frozen=True)
class NamedAlgebra:
    """Algebra with a display name and an optional default two-subspace decomposition."""

    name: str
    constants: StructureConstants
    decomposition: SubspaceDecomposition | None = None


BUILTIN_ALGEBRAS: dict[str, tuple[Callable[[], StructureConstants], tuple[list[int], list[int]] | None]] = {
    "sl2": (sl2, ([1], [2, 3])),
    "sl2c": (sl2_chevalley, ([1], [2, 3])),
    "so3": (so3, ([1], [2, 3])),
    "solv2": (solv2, ([2], [1])),
    "abelian2": (lambda: abelian(2), ([1], [2])),
    "abelian3": (lambda: abelian(3), ([1], [2, 3])),
}


def builtin_algebra(name: str) -> NamedAlgebra:
    """Built-in algebra by name."""
    if name not in BUILTIN_ALGEBRAS:
        raise PreconditionError(f"unknown algebra '{name}', built-ins: {', '.join(BUILTIN_ALGEBRAS)}")
    factory, grading = BUILTIN_ALGEBRAS[name]
    constants = factory()
    decomposition = SubspaceDecomposition.of(constants.dim, *grading) if grading else None
    return NamedAlgebra(name=name, constants=constants, decomposition=decomposition)


def _parse_value(text: str, line: int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(line, f"'{text}' is not a rational number") from None


def parse_algebra(text: str, name: str = "") -> NamedAlgebra:
    """Parse the algebra text format.

    ``dim <n>`` followed by ``i j k value`` lines (i < j, value integer or p/q)
    and optional ``v0 ...`` / ``v1 ...`` lines giving a two-subspace decomposition.
    """
    lines = [(no, line.strip()) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, line) for no, line in lines if line and not line.startswith("#")]
    if not lines:
        raise FormatError(1, "empty input, expected 'dim <n>'")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise FormatError(no, f"expected 'dim <n>', got '{header}'")
    g = StructureConstants(int(parts[1]), name)
    grading: dict[str, list[int]] = {}
    for no, line in lines[1:]:
        parts = line.split()
        if parts[0] in {"v0", "v1"}:
            try:
                grading[parts[0]] = [int(v) for v in parts[1:]]
            except ValueError:
                raise FormatError(no, f"non-integer generator index in '{line}'") from None
            continue
        if len(parts) != 4:
            raise FormatError(no, f"expected 'i j k value', got '{line}'")
        try:
            i, j, k = (int(v) for v in parts[:3])
        except ValueError:
            raise FormatError(no, f"non-integer index in '{line}'") from None
        if not i < j:
            raise FormatError(no, f"independent brackets need i < j, got i={i}, j={j}")
        try:
            g.set_bracket(i, j, k, _parse_value(parts[3], no))
        except PreconditionError as e:
            raise FormatError(no, str(e)) from None
    return _finish_algebra(g, name, grading, lines[-1][0])


def parse_algebra_json(text: str, name: str = "") -> NamedAlgebra:
    """Parse the JSON mirror: ``{"dim": n, "brackets": [[i, j, k, "v"], ...], "v0": [...], "v1": [...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.lineno, e.msg) from None
    if not isinstance(data, dict) or not isinstance(data.get("dim"), int) or data["dim"] < 1:
        raise FormatError(1, "expected an object with a positive integer 'dim'")
    g = StructureConstants(data["dim"], name)
    for entry in data.get("brackets", []):
        if not isinstance(entry, list) or len(entry) != 4:
            raise FormatError(1, f"bracket entry {entry!r} is not [i, j, k, value]")
        i, j, k, value = entry
        if not (isinstance(i, int) and isinstance(j, int) and isinstance(k, int)) or not i < j:
            raise FormatError(1, f"bracket entry {entry!r} needs integer indices with i < j")
        try:
            g.set_bracket(i, j, k, _parse_value(str(value), 1))
        except PreconditionError as e:
            raise FormatError(1, str(e)) from None
    grading = {key: data[key] for key in ("v0", "v1") if key in data}
    return _finish_algebra(g, name, grading, 1)


def _finish_algebra(g: StructureConstants, name: str, grading: dict[str, list[int]], line: int) -> NamedAlgebra:
    if jacobi_defect(g):
        raise FormatError(line, "structure constants violate the Jacobi identity")
    decomposition = None
    if grading:
        if set(grading) != {"v0", "v1"}:
            raise FormatError(line, "a decomposition needs both 'v0' and 'v1'")
        try:
            decomposition = SubspaceDecomposition.of(g.dim, grading["v0"], grading["v1"])
        except (GradingError, PreconditionError) as e:
            raise FormatError(line, str(e)) from None
    return NamedAlgebra(name=name, constants=g.freeze(), decomposition=decomposition)


def load_algebra(path: Path) -> Result[NamedAlgebra]:
    """Load an algebra file; ``.json`` files use the JSON mirror."""
    try:
        expanded = path.expanduser()
        text = expanded.read_text(encoding="utf-8")
        if expanded.suffix == ".json":
            return Result.ok(parse_algebra_json(text, expanded.stem))
        return Result.ok(parse_algebra(text, expanded.stem))
    except FormatError as e:
        return Result.err(("format_error", e), context={"line": e.line, "cause": e.cause})
    except Exception as e:
        return Result.err(e)


def resolve_algebra(spec: str) -> Result[NamedAlgebra]:
    """Built-in algebra by name, or an algebra file by path."""
    if spec in BUILTIN_ALGEBRAS:
        return Result.ok(builtin_algebra(spec))
    return load_algebra(Path(spec))
