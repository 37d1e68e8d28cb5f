"""Tests for catalog scans, the semisimplicity census and the CSV report."""

from fractions import Fraction
from pathlib import Path

import pytest

from mm_sexpansion.catalog import Catalog, enumerate_catalog
from mm_sexpansion.errors import FormatError
from mm_sexpansion.expansion import Mode
from mm_sexpansion.liealg import EigenSignature, SubspaceDecomposition, sl2, sl2_chevalley
from mm_sexpansion.survey import (
    CSV_COLUMNS,
    ReportWriter,
    SurveyReport,
    SurveyRow,
    census,
    compactness_profile,
    merge,
    prepare_resume,
    read_rows,
    rows_to_csv,
    scan_resonances,
    scan_zero,
    scan_zero_and_resonance,
)

SL2_GRADING = SubspaceDecomposition.of(3, [1], [2, 3])
ALL_MODES = set(Mode)


@pytest.fixture(scope="module")
def order3_report(catalogs: dict[int, Catalog]) -> SurveyReport:
    """sl(2) over every commutative semigroup of order 3, all modes."""
    return census(sl2(), SL2_GRADING, catalogs[3], ALL_MODES)


class TestScans:
    """Tests for the catalog-wide scans."""

    @pytest.mark.parametrize(("order", "count"), [(1, 1), (2, 2), (3, 8), (4, 39)])
    def test_scan_zero(self, catalogs: dict[int, Catalog], order: int, count: int) -> None:
        """Commutative semigroups with a zero element."""
        assert len(scan_zero(catalogs[order])) == count

    @pytest.mark.parametrize(("order", "semigroups", "resonances"), [(2, 1, 1), (3, 8, 9), (4, 48, 124)])
    def test_scan_resonances(self, catalogs: dict[int, Catalog], order: int, semigroups: int, resonances: int) -> None:
        """Commutative semigroups with at least one resonance, and the total."""
        found = scan_resonances(catalogs[order])
        assert len(found) == semigroups
        assert sum(len(pairs) for _, pairs in found) == resonances
        assert all(pairs for _, pairs in found)

    @pytest.mark.parametrize(("order", "semigroups", "resonances"), [(2, 0, 0), (3, 5, 6), (4, 32, 92)])
    def test_scan_zero_and_resonance(
        self, catalogs: dict[int, Catalog], order: int, semigroups: int, resonances: int
    ) -> None:
        """Commutative semigroups with both a zero and a resonance."""
        found = scan_zero_and_resonance(catalogs[order])
        assert len(found) == semigroups
        assert sum(len(pairs) for _, _, pairs in found) == resonances

    def test_scan_zero_ids(self, catalogs: dict[int, Catalog]) -> None:
        """Order 2: the null semigroup and the two-element semilattice."""
        assert scan_zero(catalogs[2]) == [(1, 1), (2, 1)]

    def test_compactness_profile(self, catalogs: dict[int, Catalog]) -> None:
        """Semigroup metric signatures of the commutative order-2 entries."""
        assert compactness_profile(catalogs[2]) == [
            (1, EigenSignature(1, 0, 1)),
            (2, EigenSignature(2, 0, 0)),
            (4, EigenSignature(2, 0, 0)),
        ]


class TestCensus:
    """Tests for census."""

    def test_order_two_full(self, catalogs: dict[int, Catalog]) -> None:
        """Two of the three commutative order-2 semigroups give semisimple expansions."""
        report = census(sl2(), SL2_GRADING, catalogs[2], {Mode.FULL})
        assert len(report.rows) == 3
        assert report.pss(Mode.FULL) == 2

    def test_order_three_full(self, order3_report: SurveyReport) -> None:
        """Twelve full rows, five semisimple."""
        full = [r for r in order3_report.rows if r.mode is Mode.FULL]
        assert len(full) == 12
        assert sum(1 for r in full if r.semisimple) == 5

    def test_order_three_pss(self, order3_report: SurveyReport) -> None:
        """Semisimple counts per mode."""
        counts = {m: order3_report.pss(m) for m in Mode}
        assert counts == {Mode.FULL: 5, Mode.REDUCED: 3, Mode.RESONANT: 1, Mode.RESONANT_REDUCED: 1}

    def test_order_four_pss(self, catalogs: dict[int, Catalog]) -> None:
        """Semisimple counts per mode at order 4."""
        report = census(sl2(), SL2_GRADING, catalogs[4], ALL_MODES)
        counts = {m: report.pss(m) for m in Mode}
        assert counts == {Mode.FULL: 16, Mode.REDUCED: 9, Mode.RESONANT: 4, Mode.RESONANT_REDUCED: 1}

    def test_order_two_pss(self, catalogs: dict[int, Catalog]) -> None:
        """Semisimple counts per mode at order 2."""
        report = census(sl2(), SL2_GRADING, catalogs[2], ALL_MODES)
        counts = {m: report.pss(m) for m in Mode}
        assert counts == {Mode.FULL: 2, Mode.REDUCED: 1, Mode.RESONANT: 1, Mode.RESONANT_REDUCED: 0}

    def test_resonant_pss_uses_first_resonance(self) -> None:
        """A semigroup counts in a resonant mode only when its first resonance is semisimple."""
        rows = (
            SurveyRow(id=1, mode=Mode.RESONANT, resonance_index=1, semisimple=False),
            SurveyRow(id=1, mode=Mode.RESONANT, resonance_index=2, semisimple=True),
            SurveyRow(id=2, mode=Mode.RESONANT, resonance_index=1, semisimple=True),
            SurveyRow(id=2, mode=Mode.RESONANT, resonance_index=2, semisimple=False),
            SurveyRow(id=3, mode=Mode.FULL, resonance_index=0, semisimple=True),
        )
        report = SurveyReport(order=4, algebra="sl2", modes=(Mode.FULL, Mode.RESONANT), rows=rows)
        assert report.pss(Mode.RESONANT) == 1
        assert report.pss(Mode.FULL) == 1
        summary = {s.mode: s for s in report.summary()}
        assert (summary[Mode.RESONANT].rows, summary[Mode.RESONANT].pss) == (4, 1)

    def test_chevalley_full_scan_determinant(self, catalogs: dict[int, Catalog]) -> None:
        """The order-3 full scan of sl(2) in the Chevalley basis contains det -134217728."""
        report = census(sl2_chevalley(), None, catalogs[3], {Mode.FULL})
        assert any(r.det == -134217728 for r in report.rows)
        assert report.pss(Mode.FULL) == 5

    def test_summary(self, order3_report: SurveyReport) -> None:
        """Summary counters per mode."""
        summary = {s.mode: s for s in order3_report.summary()}
        assert summary[Mode.FULL].rows == 12
        assert summary[Mode.REDUCED].rows == 8
        assert (summary[Mode.RESONANT].semigroups, summary[Mode.RESONANT].rows) == (8, 9)
        assert (summary[Mode.RESONANT_REDUCED].semigroups, summary[Mode.RESONANT_REDUCED].rows) == (5, 6)
        assert all(s.failed == 0 for s in summary.values())

    def test_rows_sorted(self, order3_report: SurveyReport) -> None:
        """Rows come in (id, mode, resonance index) order."""
        keys = [r.key for r in order3_report.rows]
        assert keys == sorted(keys)

    def test_semisimple_matches_determinant(self, order3_report: SurveyReport) -> None:
        """A row is semisimple exactly when its determinant is nonzero."""
        for r in order3_report.rows:
            assert r.det is not None
            assert r.semisimple == (r.det != 0)
            assert r.signature is not None
            assert r.signature.dim == r.dim

    def test_workers(self, catalogs: dict[int, Catalog], order3_report: SurveyReport) -> None:
        """Parallel runs give the same rows in the same order."""
        report = census(sl2(), SL2_GRADING, catalogs[3], ALL_MODES, workers=2)
        assert report.rows == order3_report.rows

    def test_skip_ids_and_writer(self, catalogs: dict[int, Catalog]) -> None:
        """Skipped ids produce no rows; the writer sees every row."""
        seen: list[SurveyRow] = []
        report = census(sl2(), SL2_GRADING, catalogs[3], {Mode.FULL}, skip_ids={1, 2}, writer=seen.append)
        assert {r.id for r in report.rows}.isdisjoint({1, 2})
        assert list(report.rows) == seen

    def test_missing_decomposition_is_recorded(self, catalogs: dict[int, Catalog]) -> None:
        """Failures become rows with an error instead of aborting."""
        report = census(sl2(), None, catalogs[2], {Mode.RESONANT})
        assert len(report.rows) == 1
        row = report.rows[0]
        assert row.failed
        assert "decomposition" in row.error
        assert report.summary()[0].failed == 1

    def test_non_commutative_entries_skipped(self) -> None:
        """Only commutative entries are examined."""
        report = census(sl2(), SL2_GRADING, enumerate_catalog(2), {Mode.FULL})
        assert [r.id for r in report.rows] == [1, 2, 4]

    def test_to_dict(self, order3_report: SurveyReport) -> None:
        """JSON mirror carries summary and rows."""
        data = order3_report.to_dict()
        assert data["order"] == 3
        assert data["algebra"] == "sl2"
        assert len(data["rows"]) == len(order3_report.rows)  # type: ignore[arg-type]


class TestReport:
    """Tests for the CSV report."""

    def test_record_round_trip(self) -> None:
        """A row survives to_record and from_record."""
        row = SurveyRow(
            id=7,
            mode=Mode.RESONANT,
            resonance_index=2,
            dim=6,
            det=Fraction(-3, 4),
            signature=EigenSignature(3, 2, 1),
            semisimple=True,
            solvable=True,
        )
        record = row.to_record()
        assert record["det_num"] == "-3"
        assert record["det_den"] == "4"
        assert record["semisimple"] == "true"
        assert record["compact"] == "false"
        assert SurveyRow.from_record(record) == row

    def test_rows_to_csv(self, order3_report: SurveyReport) -> None:
        """Header plus one line per row."""
        lines = rows_to_csv(order3_report.rows).splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == len(order3_report.rows) + 1

    def test_writer_and_reader(self, tmp_path: Path, order3_report: SurveyReport) -> None:
        """Rows written by ReportWriter read back unchanged."""
        path = tmp_path / "report.csv"
        with ReportWriter(path) as writer:
            for row in order3_report.rows:
                writer.write(row)
        assert read_rows(path) == list(order3_report.rows)

    def test_append_skips_header(self, tmp_path: Path, order3_report: SurveyReport) -> None:
        """Appending to a non-empty report does not repeat the header."""
        path = tmp_path / "report.csv"
        rows = list(order3_report.rows)
        with ReportWriter(path) as writer:
            writer.write(rows[0])
        with ReportWriter(path, append=True) as writer:
            writer.write(rows[1])
        assert read_rows(path) == rows[:2]

    def test_bad_header(self, tmp_path: Path) -> None:
        """Files with another header are rejected."""
        path = tmp_path / "report.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(FormatError):
            read_rows(path)

    def test_prepare_resume_drops_last_id(self, tmp_path: Path, order3_report: SurveyReport) -> None:
        """The last id may be incomplete, so its rows go."""
        path = tmp_path / "report.csv"
        rows = list(order3_report.rows)
        last = rows[-1].id
        with ReportWriter(path) as writer:
            for row in rows:
                writer.write(row)
        kept = prepare_resume(path)
        assert kept == [r for r in rows if r.id != last]
        assert read_rows(path) == kept

    def test_prepare_resume_missing_file(self, tmp_path: Path) -> None:
        """Nothing to resume from a missing file."""
        assert prepare_resume(tmp_path / "none.csv") == []

    def test_resume_reproduces_full_run(self, tmp_path: Path, catalogs: dict[int, Catalog], order3_report: SurveyReport) -> None:
        """An interrupted run resumed and merged equals an uninterrupted one."""
        path = tmp_path / "report.csv"
        with ReportWriter(path) as writer:
            for row in order3_report.rows:
                if row.id > 5:
                    break
                writer.write(row)
        previous = prepare_resume(path)
        with ReportWriter(path, append=True) as writer:
            report = census(
                sl2(), SL2_GRADING, catalogs[3], ALL_MODES, skip_ids={r.id for r in previous}, writer=writer.write
            )
        merged = merge(report, previous)
        assert merged.rows == order3_report.rows
        assert read_rows(path) == list(order3_report.rows)
