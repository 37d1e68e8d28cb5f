"""Catalog-wide scans: zero elements, resonances, and semisimplicity of expansions."""

import csv
import io
import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from .catalog import Catalog
from .cayley import CayleyTable, find_zero, is_commutative, semigroup_metric
from .errors import FormatError, SExpansionError
from .expansion import Mode, build, kc_metric
from .liealg import (
    DEFAULT_TOLERANCE,
    EigenSignature,
    StructureConstants,
    SubspaceDecomposition,
    determinant,
    eigen_signature,
    is_abelian,
    is_nilpotent,
    is_solvable,
)
from .resonance import ResonantPair, find_all_resonances

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "id",
    "mode",
    "resonance_index",
    "dim",
    "det_num",
    "det_den",
    "n_pos",
    "n_neg",
    "n_zero",
    "semisimple",
    "compact",
    "abelian",
    "solvable",
    "nilpotent",
    "error",
]

MODE_ORDER = (Mode.FULL, Mode.RESONANT, Mode.REDUCED, Mode.RESONANT_REDUCED)


@dataclass(frozen=True, slots=True)
class SurveyRow:
    """One expansion examined by a census."""

    id: int
    mode: Mode
    resonance_index: int
    dim: int = 0
    det: Fraction | None = None
    signature: EigenSignature | None = None
    semisimple: bool = False
    compact: bool = False
    abelian: bool = False
    solvable: bool = False
    nilpotent: bool = False
    error: str = ""

    @property
    def key(self) -> tuple[int, int, int]:
        """Sort key (id, mode, resonance index)."""
        return (self.id, MODE_ORDER.index(self.mode), self.resonance_index)

    @property
    def failed(self) -> bool:
        """True when the expansion could not be built or analysed."""
        return bool(self.error)

    def to_record(self) -> dict[str, str]:
        """CSV record keyed by column name."""

        def flag(v: bool) -> str:
            return "true" if v else "false"

        sig = self.signature
        return {
            "id": str(self.id),
            "mode": self.mode.value,
            "resonance_index": str(self.resonance_index),
            "dim": str(self.dim),
            "det_num": str(self.det.numerator) if self.det is not None else "",
            "det_den": str(self.det.denominator) if self.det is not None else "",
            "n_pos": str(sig.n_pos) if sig else "",
            "n_neg": str(sig.n_neg) if sig else "",
            "n_zero": str(sig.n_zero) if sig else "",
            "semisimple": flag(self.semisimple),
            "compact": flag(self.compact),
            "abelian": flag(self.abelian),
            "solvable": flag(self.solvable),
            "nilpotent": flag(self.nilpotent),
            "error": self.error,
        }

    @classmethod
    def from_record(cls, record: dict[str, str]) -> SurveyRow:
        """Inverse of ``to_record``."""
        det = Fraction(int(record["det_num"]), int(record["det_den"])) if record["det_num"] else None
        signature = None
        if record["n_pos"]:
            signature = EigenSignature(int(record["n_pos"]), int(record["n_neg"]), int(record["n_zero"]))
        return cls(
            id=int(record["id"]),
            mode=Mode(record["mode"]),
            resonance_index=int(record["resonance_index"]),
            dim=int(record["dim"]),
            det=det,
            signature=signature,
            semisimple=record["semisimple"] == "true",
            compact=record["compact"] == "true",
            abelian=record["abelian"] == "true",
            solvable=record["solvable"] == "true",
            nilpotent=record["nilpotent"] == "true",
            error=record.get("error", ""),
        )

    def to_dict(self) -> dict[str, object]:
        """JSON-ready form."""
        return {
            "id": self.id,
            "mode": self.mode.value,
            "resonance_index": self.resonance_index,
            "dim": self.dim,
            "det": self.det,
            "signature": [self.signature.n_pos, self.signature.n_neg, self.signature.n_zero] if self.signature else None,
            "semisimple": self.semisimple,
            "compact": self.compact,
            "abelian": self.abelian,
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "error": self.error or None,
        }


@dataclass(frozen=True, slots=True)
class ModeSummary:
    """Aggregate counters of one mode."""

    mode: Mode
    semigroups: int
    rows: int
    pss: int
    failed: int


@dataclass(frozen=True)
class SurveyReport:
    """Census rows of one algebra over one catalog, sorted by (id, mode, resonance index)."""

    order: int
    algebra: str
    modes: tuple[Mode, ...]
    rows: tuple[SurveyRow, ...] = field(default=())

    def summary(self) -> list[ModeSummary]:
        """Counters recomputed from the rows, one entry per requested mode."""
        result = []
        for mode in sorted(self.modes, key=MODE_ORDER.index):
            rows = [r for r in self.rows if r.mode is mode]
            result.append(
                ModeSummary(
                    mode=mode,
                    semigroups=len({r.id for r in rows}),
                    rows=len(rows),
                    pss=self.pss(mode),
                    failed=sum(1 for r in rows if r.failed),
                )
            )
        return result

    def pss(self, mode: Mode) -> int:
        """Distinct semigroups whose expansion in the mode is semisimple.

        In the resonant modes a semigroup is judged by its first resonance (resonance index 1,
        the first pair ``find_all_resonances`` returns); the other resonance rows are reported
        but not counted.
        """
        counted = (r for r in self.rows if r.mode is mode and (not mode.resonant or r.resonance_index == 1))
        return len({r.id for r in counted if r.semisimple})

    def to_dict(self) -> dict[str, object]:
        """JSON mirror of the CSV report with the summary attached."""
        return {
            "order": self.order,
            "algebra": self.algebra,
            "modes": [m.value for m in self.modes],
            "summary": [
                {"mode": s.mode.value, "semigroups": s.semigroups, "rows": s.rows, "pss": s.pss, "failed": s.failed}
                for s in self.summary()
            ],
            "rows": [r.to_dict() for r in self.rows],
        }


def _commutative(c: Catalog) -> list[CayleyTable]:
    return [t for t in c if is_commutative(t)]


def _id(t: CayleyTable) -> int:
    if t.id is None:
        raise SExpansionError("catalog entry without an id")
    return t.id


def scan_zero(c: Catalog) -> list[tuple[int, int]]:
    """(id, zero element) for every commutative entry that has one."""
    result = []
    for t in _commutative(c):
        zero = find_zero(t)
        if zero is not None:
            result.append((_id(t), zero))
    return result


def scan_resonances(c: Catalog) -> list[tuple[int, list[ResonantPair]]]:
    """(id, resonances) for every commutative entry with at least one resonance."""
    result = []
    for t in _commutative(c):
        pairs = find_all_resonances(t)
        if pairs:
            result.append((_id(t), pairs))
    return result


def scan_zero_and_resonance(c: Catalog) -> list[tuple[int, int, list[ResonantPair]]]:
    """(id, zero, resonances) for commutative entries with a zero and at least one resonance."""
    result = []
    for t in _commutative(c):
        zero = find_zero(t)
        if zero is None:
            continue
        pairs = find_all_resonances(t)
        if pairs:
            result.append((_id(t), zero, pairs))
    return result


def compactness_profile(c: Catalog, tolerance: float = DEFAULT_TOLERANCE) -> list[tuple[int, EigenSignature]]:
    """Eigen signature of the semigroup metric of every commutative entry."""
    return [(_id(t), eigen_signature(semigroup_metric(t), tolerance)) for t in _commutative(c)]


type _Task = tuple[StructureConstants, SubspaceDecomposition | None, CayleyTable, Mode, int, ResonantPair | None, float]


def _examine(task: _Task) -> SurveyRow:
    g, d, t, mode, index, pair, tolerance = task
    sid = _id(t)
    try:
        e = build(g, t, mode, pair, d)
        metric = kc_metric(e)
        det = determinant(metric)
        signature = eigen_signature(metric, tolerance)
        constants = e.constants
        return SurveyRow(
            id=sid,
            mode=mode,
            resonance_index=index,
            dim=e.dim,
            det=det,
            signature=signature,
            semisimple=det != 0,
            compact=det != 0 and signature.n_neg == e.dim,
            abelian=is_abelian(constants),
            solvable=is_solvable(constants),
            nilpotent=is_nilpotent(constants),
        )
    except SExpansionError as e:
        return SurveyRow(id=sid, mode=mode, resonance_index=index, error=str(e))


def _tasks(
    g: StructureConstants,
    d: SubspaceDecomposition | None,
    tables: Iterable[CayleyTable],
    modes: set[Mode],
    tolerance: float,
) -> list[_Task]:
    tasks: list[_Task] = []
    for t in tables:
        zero = find_zero(t)
        pairs = find_all_resonances(t) if modes & {Mode.RESONANT, Mode.RESONANT_REDUCED} else []
        for mode in MODE_ORDER:
            if mode not in modes or (mode.reduced and zero is None):
                continue
            if mode.resonant:
                tasks.extend((g, d, t, mode, i, p, tolerance) for i, p in enumerate(pairs, start=1))
            else:
                tasks.append((g, d, t, mode, 0, None, tolerance))
    return tasks


def census(
    algebra: StructureConstants,
    d: SubspaceDecomposition | None,
    c: Catalog,
    modes: set[Mode],
    *,
    workers: int = 1,
    tolerance: float = DEFAULT_TOLERANCE,
    skip_ids: set[int] | None = None,
    writer: Callable[[SurveyRow], None] | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> SurveyReport:
    """Expand the algebra by every commutative entry of the catalog in each requested mode.

    Rows are produced in (id, mode, resonance index) order regardless of ``workers``.
    A row whose construction fails carries the error message instead of aborting the scan.

    Args:
        algebra: Source Lie algebra.
        d: Two-subspace decomposition, used by the resonant modes.
        c: Catalog to scan; non-commutative entries are skipped.
        modes: Modes to examine.
        workers: Number of processes.
        tolerance: Relative eigenvalue tolerance for signatures.
        skip_ids: Catalog ids already examined in an earlier run.
        writer: Receives every row as soon as it is produced.
        progress: Called with (done, total) after each row.

    """
    skip = skip_ids or set()
    tables = [t for t in _commutative(c) if _id(t) not in skip]
    tasks = _tasks(algebra, d, tables, modes, tolerance)
    logger.info("census of %s over order %d: %d rows, %d ids skipped", algebra.name, c.order, len(tasks), len(skip))
    rows: list[SurveyRow] = []

    def collect(results: Iterable[SurveyRow]) -> None:
        for done, row in enumerate(results, start=1):
            rows.append(row)
            if row.failed:
                logger.debug("id %d %s #%d failed: %s", row.id, row.mode, row.resonance_index, row.error)
            if writer:
                writer(row)
            if progress:
                progress(done, len(tasks))

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            collect(executor.map(_examine, tasks, chunksize=max(1, len(tasks) // (workers * 8))))
    else:
        collect(_examine(task) for task in tasks)
    return SurveyReport(order=c.order, algebra=algebra.name, modes=tuple(sorted(modes, key=MODE_ORDER.index)), rows=tuple(rows))


class ReportWriter:
    """Streams census rows to a CSV file, one flushed line per row."""

    def __init__(self, path: Path, *, append: bool = False) -> None:
        """Open the file; a header is written unless appending to a non-empty file."""
        self.path = path
        fresh = not append or not path.exists() or path.stat().st_size == 0
        self._file: TextIO = path.open("a" if append else "w", encoding="utf-8", newline="")
        self._writer = csv.DictWriter(self._file, fieldnames=CSV_COLUMNS, lineterminator="\n")
        if fresh:
            self._writer.writeheader()
            self._file.flush()

    def write(self, row: SurveyRow) -> None:
        """Append one row."""
        self._writer.writerow(row.to_record())
        self._file.flush()

    def close(self) -> None:
        """Close the file."""
        self._file.close()

    def __enter__(self) -> ReportWriter:
        """Context manager entry."""
        return self

    def __exit__(self, *_: object) -> None:
        """Close on exit."""
        self.close()


def read_rows(path: Path) -> list[SurveyRow]:
    """Read the rows of a CSV report."""
    with path.open(encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or list(reader.fieldnames) != CSV_COLUMNS:
            raise FormatError(1, f"expected header {','.join(CSV_COLUMNS)}")
        rows = []
        for line, record in enumerate(reader, start=2):
            try:
                rows.append(SurveyRow.from_record(record))
            except (KeyError, TypeError, ValueError) as e:
                raise FormatError(line, f"malformed report row: {e}") from None
        return rows


def prepare_resume(path: Path) -> list[SurveyRow]:
    """Keep the rows of every completed id in the report and return them.

    The last id in the file may have been interrupted, so its rows are dropped and
    the file is rewritten without them.
    """
    if not path.exists() or path.stat().st_size == 0:
        return []
    rows = read_rows(path)
    if not rows:
        return []
    last = rows[-1].id
    kept = [r for r in rows if r.id != last]
    with ReportWriter(path) as writer:
        for row in kept:
            writer.write(row)
    logger.info("resuming %s: %d rows kept, id %d will be recomputed", path, len(kept), last)
    return kept


def merge(report: SurveyReport, previous: list[SurveyRow]) -> SurveyReport:
    """Report with rows from an earlier run added."""
    rows = tuple(sorted([*previous, *report.rows], key=lambda r: r.key))
    return SurveyReport(order=report.order, algebra=report.algebra, modes=report.modes, rows=rows)


def rows_to_csv(rows: Iterable[SurveyRow]) -> str:
    """CSV text of the rows with a header line."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_record())
    return buffer.getvalue()
