"""S-expanded algebras, their resonant subalgebras and 0_S-reductions.

A generator of the expansion is a pair (i, a) of a source generator and a
semigroup element; its flat index is p = (i-1)·m + a with m the semigroup order.
"""

import logging
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cached_property
from typing import Self

from .cayley import CayleyTable, MetricMatrix, find_zero, is_associative, is_commutative, kron_metric, semigroup_metric
from .errors import (
    ClosureError,
    DegenerateAlgebraError,
    DimensionMismatchError,
    GradingError,
    NoZeroElementError,
    NotAssociativeError,
    NotCommutativeError,
    NotLieAlgebraError,
    PreconditionError,
    ResonanceError,
)
from .liealg import StructureConstants, SubspaceDecomposition, check_subspace_structure, determinant, jacobi_defect, killing_metric
from .output import format_matrix, format_number
from .resonance import ResonantPair, is_resonant

logger = logging.getLogger(__name__)

type Generator = tuple[int, int]


class Mode(StrEnum):
    """Which part of the expansion is kept."""

    FULL = "full"
    RESONANT = "resonant"
    REDUCED = "reduced"
    RESONANT_REDUCED = "resonant_reduced"

    @classmethod
    def parse(cls, text: str) -> Self:
        """Accept the full names and the short forms full, res, red, resred."""
        key = text.strip().lower()
        aliases = {"res": "resonant", "red": "reduced", "resred": "resonant_reduced"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise PreconditionError(f"unknown mode '{text}', expected full, res, red or resred") from None

    @property
    def short(self) -> str:
        """Short form used on the command line and in reports."""
        return {"full": "full", "resonant": "res", "reduced": "red", "resonant_reduced": "resred"}[self.value]

    @property
    def label(self) -> str:
        """Display name used in listings."""
        return {
            "full": "Expanded algebra",
            "resonant": "Resonant Subalgebra",
            "reduced": "0_S-reduced algebra",
            "resonant_reduced": "Reduction of the Resonant Subalgebra",
        }[self.value]

    @property
    def resonant(self) -> bool:
        """True for the modes that need a resonance and a decomposition."""
        return self in {Mode.RESONANT, Mode.RESONANT_REDUCED}

    @property
    def reduced(self) -> bool:
        """True for the modes that need a zero element."""
        return self in {Mode.REDUCED, Mode.RESONANT_REDUCED}


class Show(StrEnum):
    """Listings produced by ``render``."""

    COMMUTATORS = "commut"
    CONSTANTS = "sc"
    METRIC = "metric"
    ADJOINT = "adjoint"


@dataclass(frozen=True)
class ExpandedAlgebra:
    """Retained generators of S ⊗ g together with how they were selected."""

    source: StructureConstants
    table: CayleyTable
    retained: tuple[Generator, ...]
    mode: Mode
    resonance: ResonantPair | None = None
    decomposition: SubspaceDecomposition | None = None
    zero: int | None = None

    @property
    def base_dim(self) -> int:
        """Dimension n of the source algebra."""
        return self.source.dim

    @property
    def sg_order(self) -> int:
        """Order m of the semigroup."""
        return self.table.order

    @property
    def dim(self) -> int:
        """Number of retained generators."""
        return len(self.retained)

    def flat_index(self, generator: Generator) -> int:
        """Position p = (i-1)·m + a in the full expansion."""
        i, a = generator
        return (i - 1) * self.sg_order + a

    @cached_property
    def positions(self) -> dict[Generator, int]:
        """Generator to 1-based position among the retained ones."""
        return {g: p for p, g in enumerate(self.retained, start=1)}

    @cached_property
    def constants(self) -> StructureConstants:
        """Structure constants re-indexed over the retained generators.

        Brackets landing in the zero sector are dropped in reduced modes; any other
        bracket leaving the retained span raises ClosureError.
        """
        positions = self.positions
        t = self.table
        g = StructureConstants(self.dim, f"{self.source.name}[{self.mode.short}]")
        for p, (i, a) in enumerate(self.retained, start=1):
            for q in range(p + 1, self.dim + 1):
                j, b = self.retained[q - 1]
                c = t.product(a, b)
                for k, value in self.source.terms(i, j).items():
                    target = positions.get((k, c))
                    if target is None:
                        if self.mode.reduced and c == self.zero:
                            continue
                        raise ClosureError(f"[X_({i},{a}), X_({j},{b})] has a component along X_({k},{c})")
                    g.set_bracket(p, q, target, value)
        return g.freeze()


def expand(g: StructureConstants, t: CayleyTable) -> ExpandedAlgebra:
    """Full expansion with C_(i,a)(j,b)^(k,c) = K_ab^c · C_ij^k."""
    if not is_associative(t):
        raise NotAssociativeError("expansion requires an associative table")
    if not is_commutative(t):
        raise NotCommutativeError("expansion requires a commutative table")
    if jacobi_defect(g):
        raise NotLieAlgebraError(f"'{g.name or 'source'}' does not satisfy the Jacobi identity")
    retained = tuple((i, a) for i in range(1, g.dim + 1) for a in range(1, t.order + 1))
    return ExpandedAlgebra(source=g, table=t, retained=retained, mode=Mode.FULL)


def resonant_subalgebra(e: ExpandedAlgebra, p: ResonantPair, d: SubspaceDecomposition) -> ExpandedAlgebra:
    """Keep (S0 ⊗ V0) ⊕ (S1 ⊗ V1); closure is verified on construction."""
    if e.mode is not Mode.FULL:
        raise PreconditionError(f"resonant subalgebra needs a full expansion, got mode {e.mode}")
    if p.n != e.sg_order:
        raise DimensionMismatchError(f"resonance over 1..{p.n} for a semigroup of order {e.sg_order}")
    if d.dim != e.base_dim:
        raise DimensionMismatchError(f"decomposition of {d.dim} generators for an algebra of dimension {e.base_dim}")
    if not is_resonant(e.table, p):
        raise ResonanceError(f"S0 = {{{p.s0}}}, S1 = {{{p.s1}}} is not a resonant decomposition")
    if not check_subspace_structure(e.source, d):
        raise GradingError(f"V0 = {{{d.v0}}}, V1 = {{{d.v1}}} is not respected by the brackets")
    retained = tuple(
        (i, a)
        for i, a in e.retained
        if (a in p.s0 and i in d.v0) or (a in p.s1 and i in d.v1)
    )
    if not retained:
        raise DegenerateAlgebraError("resonant subalgebra has no generators")
    result = ExpandedAlgebra(
        source=e.source, table=e.table, retained=retained, mode=Mode.RESONANT, resonance=p, decomposition=d
    )
    _ = result.constants
    return result


def zero_reduce(e: ExpandedAlgebra) -> ExpandedAlgebra:
    """Drop the 0_S ⊗ g sector."""
    if e.mode not in {Mode.FULL, Mode.RESONANT}:
        raise PreconditionError(f"zero reduction applies to full or resonant algebras, got mode {e.mode}")
    zero = find_zero(e.table)
    if zero is None:
        raise NoZeroElementError("semigroup has no zero element")
    retained = tuple((i, a) for i, a in e.retained if a != zero)
    if not retained:
        raise DegenerateAlgebraError("0_S-reduction removed every generator")
    mode = Mode.REDUCED if e.mode is Mode.FULL else Mode.RESONANT_REDUCED
    return ExpandedAlgebra(
        source=e.source,
        table=e.table,
        retained=retained,
        mode=mode,
        resonance=e.resonance,
        decomposition=e.decomposition,
        zero=zero,
    )


def build(
    g: StructureConstants,
    t: CayleyTable,
    mode: Mode,
    p: ResonantPair | None = None,
    d: SubspaceDecomposition | None = None,
) -> ExpandedAlgebra:
    """Construct the algebra of the given mode in one call."""
    e = expand(g, t)
    if mode.resonant:
        if p is None or d is None:
            raise PreconditionError(f"mode {mode} needs a resonance and a subspace decomposition")
        e = resonant_subalgebra(e, p, d)
    if mode.reduced:
        e = zero_reduce(e)
    return e


def effective_constants(e: ExpandedAlgebra) -> StructureConstants:
    """Structure constants over the retained generators, numbered 1..dim."""
    return e.constants


def kc_metric(e: ExpandedAlgebra) -> MetricMatrix:
    """Killing-Cartan metric of the retained algebra, computed intrinsically."""
    return killing_metric(e.constants)


def kc_metric_kronecker(e: ExpandedAlgebra) -> MetricMatrix:
    """g^S ⊗ g for a full expansion."""
    if e.mode is not Mode.FULL:
        raise PreconditionError("the Kronecker form of the metric holds for full expansions only")
    return kron_metric(killing_metric(e.source), semigroup_metric(e.table))


def _x(generator: Generator) -> str:
    return f"X_{{{generator[0]},{generator[1]}}}"


def _signed(value: Fraction, first: bool) -> str:
    if first:
        return format_number(value)
    return f"+ {format_number(value)}" if value > 0 else f"- {format_number(-value)}"


def _generator_listing(e: ExpandedAlgebra) -> list[str]:
    labels = [f"Y_{{{e.flat_index(g)}}}" for g in e.retained]
    width = max((len(label) for label in labels), default=0)
    return [f" {label.ljust(width)} =  {_x(g)}" for label, g in zip(labels, e.retained, strict=True)]


def _render_commutators(e: ExpandedAlgebra) -> list[str]:
    label = e.mode.label
    lines = [
        f"Non vanishing commutators of the '{label}'",
        "",
        f"n = {e.base_dim} , Dimension of the original Lie algebra.",
        f"m = {e.sg_order} , Order of the semigroup.",
        "",
        "With the notation: X_{i,a}= X_{i} lambda_{a}, the generators of the",
        f"'{label}' are given by:",
        *_generator_listing(e),
        "",
        f"The non vanishing commutators of the '{label}' are given by:",
    ]
    g = e.constants
    for p in range(1, e.dim + 1):
        for q in range(p + 1, e.dim + 1):
            terms = g.terms(p, q)
            if terms:
                rhs = " ".join(
                    f"{_signed(v, n == 0)} {_x(e.retained[k - 1])}" for n, (k, v) in enumerate(terms.items())
                )
                lines.append(f" [ {_x(e.retained[p - 1])} , {_x(e.retained[q - 1])} ] = {rhs}")
    return lines


def _render_constants(e: ExpandedAlgebra) -> list[str]:
    lines = [f"Non vanishing structure constants of the '{e.mode.label}' are given by:"]
    for p, q, k, value in e.constants.independent_brackets():
        (i, a), (j, b), (l, c) = e.retained[p - 1], e.retained[q - 1], e.retained[k - 1]
        lines.append(f" C_{{({i},{a})({j},{b})}}^{{({l},{c})}} = {format_number(value)}")
    return lines


def _render_metric(e: ExpandedAlgebra) -> list[str]:
    metric = kc_metric(e)
    return [
        f"The Killing-Cartan Metric of the '{e.mode.label}' is:",
        "",
        *(" " + line for line in format_matrix(metric.entries).splitlines()),
        "",
        f"The determinant of the Killing-Cartan Metric of the '{e.mode.label}' is:",
        format_number(determinant(metric)),
    ]


def _render_adjoint(e: ExpandedAlgebra) -> list[str]:
    g = e.constants
    lines = [
        f"NOTATION for the '{e.mode.label}':",
        "",
        "To print the structure constants notice that for (i,a) fixed,",
        "the quantities C_{(i,a)(j,b)}^{(k,c)}=M_{A,B} are elements",
        "of a matrix M whose indices have the following values:",
        "A,B = " + ", ".join(str(e.flat_index(x)) for x in e.retained),
        "Or equivalently,",
        "A,B = " + ", ".join(f"({i},{a})" for i, a in e.retained),
    ]
    for i in range(1, e.base_dim + 1):
        generators = [(p, x) for p, x in enumerate(e.retained, start=1) if x[0] == i]
        if not generators:
            continue
        lines.extend(
            [
                "",
                f"Here we print the matrices C_{{({i},a) (j,b)}}^{{(k,c)}}, with the double indices",
                "having the values described above.",
            ]
        )
        for p, (_, a) in generators:
            box = [[g.c(p, q, r) for r in range(1, e.dim + 1)] for q in range(1, e.dim + 1)]
            lines.append("******")
            lines.append(f"C_{{({i},{a}) (j,b)}}^{{(k,c)}}")
            lines.extend(" " + line for line in format_matrix(box).splitlines())
    return lines


def render(e: ExpandedAlgebra, what: Show) -> str:
    """Listing of the retained algebra in double-index notation."""
    if not e.retained:
        return ""
    renderers = {
        Show.COMMUTATORS: _render_commutators,
        Show.CONSTANTS: _render_constants,
        Show.METRIC: _render_metric,
        Show.ADJOINT: _render_adjoint,
    }
    return "\n".join(renderers[what](e))


def to_dict(e: ExpandedAlgebra) -> dict[str, object]:
    """JSON-ready export of the retained algebra, its constants and its metric."""
    metric = kc_metric(e)
    return {
        "mode": e.mode.value,
        "base_dim": e.base_dim,
        "sg_order": e.sg_order,
        "zero": e.zero,
        "resonance": {"s0": e.resonance.s0, "s1": e.resonance.s1} if e.resonance else None,
        "decomposition": {"v0": e.decomposition.v0, "v1": e.decomposition.v1} if e.decomposition else None,
        "generators": [{"index": e.flat_index(x), "i": x[0], "a": x[1]} for x in e.retained],
        "brackets": [
            {"left": list(e.retained[p - 1]), "right": list(e.retained[q - 1]), "target": list(e.retained[k - 1]), "value": v}
            for p, q, k, v in e.constants.independent_brackets()
        ],
        "metric": [list(row) for row in metric.entries],
        "determinant": determinant(metric),
    }
