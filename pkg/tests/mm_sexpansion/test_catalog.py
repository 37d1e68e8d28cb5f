"""Tests for catalog enumeration, lookup and the catalog file format."""

import itertools
import random
from pathlib import Path

import pytest

from mm_sexpansion import catalog as catalog_io
from mm_sexpansion.catalog import (
    Catalog,
    Equivalence,
    catalog_to_dict,
    catalog_to_text,
    enumerate_catalog,
    filter_commutative,
    lookup,
    parse_catalog,
)
from mm_sexpansion.cayley import CayleyTable, is_associative, is_commutative
from mm_sexpansion.errors import FormatError, NotAssociativeError, PreconditionError
from mm_sexpansion.isomorphism import Permutation, canonical_form, permute_table

from .tables import S770, S_EX1, S_EX2, S_N3, T42


def brute_force_classes(n: int, include_anti: bool) -> set[tuple[int, ...]]:
    """Canonical forms of every associative table of order n."""
    forms = set()
    for flat in itertools.product(range(1, n + 1), repeat=n * n):
        t = CayleyTable.from_flat(flat)
        if is_associative(t):
            forms.add(canonical_form(t, include_anti).flat())
    return forms


class TestEnumerate:
    """Tests for enumerate_catalog."""

    @pytest.mark.parametrize(("order", "count"), [(1, 1), (2, 4), (3, 18), (4, 126)])
    def test_counts_iso_anti(self, order: int, count: int) -> None:
        """Semigroups up to isomorphism and anti-isomorphism."""
        assert len(enumerate_catalog(order)) == count

    @pytest.mark.parametrize(("order", "count"), [(1, 1), (2, 5), (3, 24), (4, 188)])
    def test_counts_iso(self, order: int, count: int) -> None:
        """Semigroups up to isomorphism only."""
        assert len(enumerate_catalog(order, Equivalence.ISO)) == count

    @pytest.mark.slow
    def test_count_order_five(self) -> None:
        """Order 5 up to isomorphism and anti-isomorphism."""
        assert len(enumerate_catalog(5)) == 1160

    @pytest.mark.parametrize("order", [2, 3])
    @pytest.mark.parametrize("equivalence", list(Equivalence))
    def test_exhaustive(self, order: int, equivalence: Equivalence) -> None:
        """Catalog entries are exactly the classes found by brute force."""
        c = enumerate_catalog(order, equivalence)
        expected = brute_force_classes(order, equivalence.include_anti)
        assert {t.flat() for t in c} == expected

    def test_entries_are_canonical_and_distinct(self, catalogs: dict[int, Catalog]) -> None:
        """Every entry is its own canonical form and no two entries are equivalent."""
        c = catalogs[4]
        forms = [canonical_form(t).flat() for t in c]
        assert forms == [t.flat() for t in c]
        assert len(set(forms)) == len(c)
        assert all(is_associative(t) for t in c)

    def test_ids_follow_lexicographic_order(self, catalogs: dict[int, Catalog]) -> None:
        """Ids are 1..Q over the sorted canonical tables."""
        c = catalogs[3]
        assert c.ids == list(range(1, len(c) + 1))
        assert [t.flat() for t in c] == sorted(t.flat() for t in c)

    def test_order_two_ids(self, catalogs: dict[int, Catalog]) -> None:
        """Order-2 catalog in id order."""
        c = catalogs[2]
        assert [t.entries for t in c] == [
            ((1, 1), (1, 1)),
            ((1, 1), (1, 2)),
            ((1, 1), (2, 2)),
            ((1, 2), (2, 1)),
        ]
        assert not is_commutative(c.get(3))

    @pytest.mark.parametrize(("order", "count"), [(1, 1), (2, 3), (3, 12), (4, 58)])
    def test_commutative_counts(self, catalogs: dict[int, Catalog], order: int, count: int) -> None:
        """Commutative entries, by filtering and by the direct search."""
        assert len(filter_commutative(catalogs[order])) == count
        direct = enumerate_catalog(order, commutative_only=True)
        assert len(direct) == count
        assert direct.ids == list(range(1, count + 1))

    def test_filter_keeps_ids(self, catalogs: dict[int, Catalog]) -> None:
        """Filtering keeps full-catalog ids."""
        assert filter_commutative(catalogs[2]).ids == [1, 2, 4]

    def test_workers_do_not_change_result(self) -> None:
        """Parallel enumeration yields the same catalog."""
        assert enumerate_catalog(3, workers=2).tables == enumerate_catalog(3).tables

    def test_progress(self) -> None:
        """Progress reports reach the total."""
        calls: list[tuple[int, int]] = []
        enumerate_catalog(3, progress=lambda done, total: calls.append((done, total)))
        assert calls
        assert calls[-1][0] == calls[-1][1]

    @pytest.mark.parametrize("order", [0, 7])
    def test_order_out_of_range(self, order: int) -> None:
        """Orders outside 1..6 are rejected."""
        with pytest.raises(PreconditionError):
            enumerate_catalog(order)


class TestCatalog:
    """Tests for the Catalog container."""

    def test_get_missing(self, catalogs: dict[int, Catalog]) -> None:
        """Unknown ids are precondition errors."""
        with pytest.raises(PreconditionError, match="no semigroup with id 99"):
            catalogs[2].get(99)

    def test_ids_must_increase(self) -> None:
        """Ids must be strictly increasing."""
        tables = (CayleyTable(((1,),), id=2), CayleyTable(((1,),), id=2))
        with pytest.raises(PreconditionError):
            Catalog(order=1, equivalence=Equivalence.ISO_ANTI, tables=tables)

    def test_order_must_match(self) -> None:
        """Every table has the catalog's order."""
        with pytest.raises(PreconditionError):
            Catalog(order=2, equivalence=Equivalence.ISO_ANTI, tables=(CayleyTable(((1,),), id=1),))


class TestLookup:
    """Tests for lookup."""

    def test_witness_maps_entry_onto_query(self, catalogs: dict[int, Catalog]) -> None:
        """The witness relabels the catalog entry into the query table."""
        match = lookup(catalogs[4], S_N3)
        assert match is not None
        entry = catalogs[4].get(match.id)
        assert permute_table(entry, match.witness) == S_N3
        assert not match.anti

    def test_relabelings_share_id(self, catalogs: dict[int, Catalog]) -> None:
        """T42 and its relabeling S_N3 land on the same entry."""
        a, b = lookup(catalogs[4], T42), lookup(catalogs[4], S_N3)
        assert a is not None
        assert b is not None
        assert a.id == b.id

    def test_anti_match(self, catalogs: dict[int, Catalog]) -> None:
        """A table found only through its transpose is flagged anti."""
        c = catalogs[3]
        match = lookup(c, S_EX2)
        assert match is not None
        entry = c.get(match.id)
        if match.anti:
            assert permute_table(entry.transpose(), match.witness) == S_EX2
        else:
            assert permute_table(entry, match.witness) == S_EX2
        transposed = lookup(c, S_EX2.transpose())
        assert transposed is not None
        assert transposed.id == match.id
        assert transposed.anti != match.anti

    def test_random_relabelings(self, catalogs: dict[int, Catalog]) -> None:
        """Randomly relabeled order-4 entries are found again with a valid witness."""
        rng = random.Random(1234)
        c = catalogs[4]
        for _ in range(40):
            entry = rng.choice(c.tables)
            image = list(range(1, 5))
            rng.shuffle(image)
            t = permute_table(entry, Permutation(tuple(image)))
            match = lookup(c, t)
            assert match is not None
            assert match.id == entry.id
            assert not match.anti
            assert permute_table(entry, match.witness) == t

    def test_iso_only_catalog_separates_transpose(self) -> None:
        """Up to isomorphism only, a non-commutative table and its transpose differ."""
        c = enumerate_catalog(3, Equivalence.ISO)
        a, b = lookup(c, S_EX2), lookup(c, S_EX2.transpose())
        assert a is not None
        assert b is not None
        assert a.id != b.id
        assert not a.anti
        assert not b.anti

    @pytest.mark.slow
    def test_order_five_round_trip(self) -> None:
        """S770 is found in the order-5 catalog and its witness rebuilds it."""
        c = enumerate_catalog(5)
        match = lookup(c, S770)
        assert match is not None
        entry = c.get(match.id)
        source = entry.transpose() if match.anti else entry
        assert permute_table(source, match.witness) == S770
        again = lookup(c, permute_table(S770, Permutation((5, 3, 1, 2, 4))))
        assert again is not None
        assert again.id == match.id

    def test_other_order(self, catalogs: dict[int, Catalog]) -> None:
        """Tables of another order are not found."""
        assert lookup(catalogs[3], T42) is None

    def test_not_associative(self, catalogs: dict[int, Catalog]) -> None:
        """Only semigroups can be looked up."""
        with pytest.raises(NotAssociativeError):
            lookup(catalogs[3], S_EX1)


class TestCatalogFile:
    """Tests for the catalog text format."""

    def test_save_and_load(self, catalogs: dict[int, Catalog], tmp_path: Path) -> None:
        """A saved catalog loads back with the same tables and ids."""
        path = tmp_path / "order3.txt"
        catalog_io.save(catalogs[3], path)
        result = catalog_io.load(path)
        assert result.is_ok()
        loaded = result.unwrap()
        assert loaded.tables == catalogs[3].tables
        assert loaded.ids == catalogs[3].ids
        assert loaded.equivalence is Equivalence.ISO_ANTI

    def test_text_layout(self, catalogs: dict[int, Catalog]) -> None:
        """Header, summary line and one record per table."""
        lines = catalog_to_text(catalogs[1]).splitlines()
        assert lines == ["semigroup-catalog v1", "order 1 count 1 equivalence iso-anti", "", "id 1", "1"]

    def test_sparse_ids(self) -> None:
        """Ids need not be contiguous."""
        c = parse_catalog("semigroup-catalog v1\norder 4 count 1 equivalence iso-anti\n\nid 42\n" + T42.to_text().split("\n", 1)[1])
        assert c.ids == [42]
        assert c.get(42) == T42

    def test_dict(self, catalogs: dict[int, Catalog]) -> None:
        """JSON mirror carries the same records."""
        data = catalog_to_dict(catalogs[2])
        assert data["count"] == 4
        assert data["equivalence"] == "iso-anti"
        assert data["tables"][3] == {"id": 4, "entries": [[1, 2], [2, 1]]}  # type: ignore[index]

    def test_bad_header(self) -> None:
        """First line must be the format header."""
        with pytest.raises(FormatError) as exc:
            parse_catalog("catalog\norder 1 count 1 equivalence iso\n")
        assert exc.value.line == 1

    def test_count_mismatch(self) -> None:
        """The announced count must match the records."""
        with pytest.raises(FormatError, match="announces 2"):
            parse_catalog("semigroup-catalog v1\norder 1 count 2 equivalence iso\n\nid 1\n1\n")

    def test_non_associative_record(self) -> None:
        """Records must be associative."""
        text = "semigroup-catalog v1\norder 3 count 1 equivalence iso\n\nid 1\n1 2 3\n2 1 2\n3 2 1\n"
        with pytest.raises(FormatError, match="not associative") as exc:
            parse_catalog(text)
        assert exc.value.line == 4

    def test_truncated_record(self) -> None:
        """A record with too few rows is reported."""
        with pytest.raises(FormatError, match="truncated"):
            parse_catalog("semigroup-catalog v1\norder 2 count 1 equivalence iso\n\nid 1\n1 1\n")

    def test_unknown_equivalence(self) -> None:
        """Equivalence must be iso or iso-anti."""
        with pytest.raises(FormatError) as exc:
            parse_catalog("semigroup-catalog v1\norder 1 count 0 equivalence homo\n")
        assert exc.value.line == 2

    def test_load_reports_line(self, tmp_path: Path) -> None:
        """load returns format_error with the offending line."""
        path = tmp_path / "bad.txt"
        path.write_text("semigroup-catalog v1\norder 2 count 1 equivalence iso\n\nid 1\n1 1\n1 3\n")
        result = catalog_io.load(path)
        assert result.is_err()
        assert result.error == "format_error"
        assert result.context
        assert result.context["line"] == 6
